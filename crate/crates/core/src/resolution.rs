//! The topological resolution `Top X` of a finite closure space.
//!
//! Points of `Top X` are pairs `(x, M)` with `M` a minimal neighborhood of
//! `x`, quasiordered by `(x, M) <= (y, N)` iff `N ⊆ M`. The projection
//! `(x, M) ↦ x` is continuous and open, and its image is the set of essential
//! points of `X`.

use std::fmt::Write as _;

use crate::closure::FiniteClosureSpace;
use crate::error::Error;
use crate::maps::SpaceMap;
use crate::setcore::Subset;
use crate::topo::{point_set, FiniteTopology, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TopPoint {
    pub x: usize,
    pub m: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    base: FiniteClosureSpace,
    points: Vec<TopPoint>,
    order: FiniteTopology,
    essential: Subset,
}

impl Resolution {
    pub fn resolve(base: &FiniteClosureSpace) -> Self {
        let points: Vec<TopPoint> = (0..base.len())
            .flat_map(|x| base.minimal_neighborhoods(x).iter().map(move |m| TopPoint { x, m }))
            .collect();
        let len = points.len();
        let up = points
            .iter()
            .map(|p| point_set(len, (0..len).filter(|&j| points[j].m.is_subset_of(p.m))))
            .collect();
        Resolution {
            base: base.clone(),
            order: FiniteTopology::from_up_sets_unchecked(up),
            points,
            essential: base.essential_points(),
        }
    }

    pub fn base(&self) -> &FiniteClosureSpace {
        &self.base
    }

    pub fn points(&self) -> &[TopPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> TopPoint {
        self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn order(&self) -> &FiniteTopology {
        &self.order
    }

    /// Image of the projection: the essential points of the base.
    pub fn essential(&self) -> Subset {
        self.essential
    }

    pub fn is_surjective(&self) -> bool {
        self.essential == self.base.full()
    }

    pub fn index_of(&self, p: TopPoint) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    /// `π(i)`, the base point of resolution point `i`.
    pub fn projection(&self, i: usize) -> usize {
        self.points[i].x
    }

    pub fn projection_assignment(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.x).collect()
    }

    /// `[A]`: all points whose minimal neighborhood lies inside `a`.
    pub fn bracket(&self, a: Subset) -> PointSet {
        point_set(
            self.len(),
            (0..self.len()).filter(|&i| self.points[i].m.is_subset_of(a)),
        )
    }

    pub fn project(&self, pts: &PointSet) -> Subset {
        Subset::from_indices(pts.ones().map(|i| self.points[i].x))
    }

    /// `π⁻¹(x)`.
    pub fn fiber(&self, x: usize) -> PointSet {
        point_set(self.len(), (0..self.len()).filter(|&i| self.points[i].x == x))
    }

    /// The interior of `a` computed as `π([a])`.
    pub fn interior_via_resolution(&self, a: Subset) -> Subset {
        self.project(&self.bracket(a))
    }

    /// `Top X` as a closure space on the point indices.
    pub fn top_space(&self) -> Result<FiniteClosureSpace, Error> {
        self.order.as_closure_space()
    }

    /// `π` as a map of closure spaces out of `top`, which must be
    /// [`Resolution::top_space`].
    pub fn projection_map<'a>(&'a self, top: &'a FiniteClosureSpace) -> Result<SpaceMap<'a>, Error> {
        SpaceMap::new(top, &self.base, self.projection_assignment())
    }

    pub fn point_label(&self, i: usize) -> String {
        let p = self.points[i];
        let g = self.base.ground();
        format!("{}|{}", g.label(p.x), g.format_subset(p.m))
    }

    /// Equivalence classes of mutually comparable points, each sorted, in
    /// order of their smallest member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut classes = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let class: Vec<usize> = (i..self.len())
                .filter(|&j| self.order.leq(i, j) && self.order.leq(j, i))
                .collect();
            for &j in &class {
                seen[j] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Covering pairs `(c, d)` of class indices: `c < d` strictly with
    /// nothing strictly in between.
    fn class_covers(&self, classes: &[Vec<usize>]) -> Vec<(usize, usize)> {
        let rep: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let less = |c: usize, d: usize| {
            c != d && self.order.leq(rep[c], rep[d]) && !self.order.leq(rep[d], rep[c])
        };
        let k = classes.len();
        let mut covers = Vec::new();
        for c in 0..k {
            for d in 0..k {
                if less(c, d) && !(0..k).any(|e| less(c, e) && less(e, d)) {
                    covers.push((c, d));
                }
            }
        }
        covers
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing upward in the
    /// quasiorder.
    ///
    /// Without `collapse`, every point is a node; points of one equivalence
    /// class are chained by `dir=both` edges and strict covers join the
    /// first members of their classes. With `collapse`, each class is one node.
    pub fn export_dot(&self, collapse: bool) -> String {
        let classes = self.equivalence_classes();
        let covers = self.class_covers(&classes);
        let mut out = String::from("digraph resolution {\n  rankdir=BT;\n");
        if collapse {
            for (c, class) in classes.iter().enumerate() {
                let label: Vec<String> = class.iter().map(|&i| self.point_label(i)).collect();
                let _ = writeln!(out, "  c{c} [label=\"{}\"];", escape(&label.join("\\n")));
            }
            for (c, d) in covers {
                let _ = writeln!(out, "  c{c} -> c{d};");
            }
        } else {
            for i in 0..self.len() {
                let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&self.point_label(i)));
            }
            for class in &classes {
                for w in class.windows(2) {
                    let _ = writeln!(out, "  n{} -> n{} [dir=both];", w[0], w[1]);
                }
            }
            for (c, d) in covers {
                let _ = writeln!(out, "  n{} -> n{};", classes[c][0], classes[d][0]);
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(label: &str) -> String {
    // keep the `\n` line breaks, quote everything else
    label.replace('"', "\\\"")
}
