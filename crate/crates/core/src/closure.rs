//! Finite closure spaces.
//!
//! A space is held as its Moore family of closed sets. The closure table
//! (`2^n` entries) and the minimal neighborhoods of every point are derived
//! eagerly at construction, so every query afterwards is a lookup or a scan
//! over plain bit vectors.

use std::fmt;

use crate::error::Error;
use crate::setcore::{GroundSet, SetFamily, Subset};

/// Closed/open status of a subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetClass {
    pub is_closed: bool,
    pub is_open: bool,
}

/// Essentiality and regularity of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointClass {
    pub essential: bool,
    pub regular: bool,
    pub min_nbhd_count: usize,
}

#[derive(Clone)]
pub struct FiniteClosureSpace {
    ground: GroundSet,
    closed: SetFamily,
    open: SetFamily,
    table: Vec<Subset>,
    minimal: Vec<SetFamily>,
}

impl FiniteClosureSpace {
    /// Builds the space whose closed sets are exactly `family`.
    pub fn from_closed_family(ground: GroundSet, family: &SetFamily) -> Result<Self, Error> {
        for a in family {
            ground.check(a)?;
        }
        let full = ground.full();
        if !family.contains(full) {
            return Err(Error::MissingTop);
        }

        let size = ground.subset_count();
        let mut member = vec![false; size];
        for a in family {
            member[a.index()] = true;
        }

        // table[A] = intersection of all members containing A, filled from the
        // top down: a non-member's closed supersets are exactly the closed
        // supersets of its one-point extensions.
        let mut table = vec![Subset::EMPTY; size];
        for bits in (0..size as u32).rev() {
            let a = Subset::from_bits(bits);
            table[a.index()] = if member[a.index()] {
                a
            } else {
                ground
                    .complement(a)
                    .iter()
                    .map(|i| table[a.with(i).index()])
                    .fold(full, Subset::intersection)
            };
        }

        for a in ground.subsets() {
            if !member[table[a.index()].index()] {
                return Err(intersection_witness(family, a, &member));
            }
        }

        Ok(Self::from_parts(ground, family.clone(), table))
    }

    /// Builds a space from an explicit closure operator, validating the three
    /// closure axioms.
    pub fn from_closure_table(ground: GroundSet, table: Vec<Subset>) -> Result<Self, Error> {
        let size = ground.subset_count();
        if table.len() != size {
            return Err(Error::TableSize {
                expected: size,
                found: table.len(),
            });
        }
        for &c in &table {
            ground.check(c)?;
        }
        for a in ground.subsets() {
            if !a.is_subset_of(table[a.index()]) {
                return Err(Error::NotExtensive(a));
            }
        }
        // Monotonicity along one-point extensions implies it everywhere.
        for a in ground.subsets() {
            for i in ground.complement(a).iter() {
                let b = a.with(i);
                if !table[a.index()].is_subset_of(table[b.index()]) {
                    return Err(Error::NotMonotone(a, b));
                }
            }
        }
        for a in ground.subsets() {
            let c = table[a.index()];
            if table[c.index()] != c {
                return Err(Error::NotIdempotent(a));
            }
        }
        let closed: SetFamily = ground.subsets().filter(|a| table[a.index()] == *a).collect();
        Ok(Self::from_parts(ground, closed, table))
    }

    /// Builds the space whose open sets are `family` together with the empty
    /// set, which is adjoined when absent.
    pub fn from_open_family(ground: GroundSet, family: &SetFamily) -> Result<Self, Error> {
        for a in family {
            ground.check(a)?;
        }
        let closed: SetFamily = family
            .iter()
            .chain(std::iter::once(Subset::EMPTY))
            .map(|a| ground.complement(a))
            .collect();
        match Self::from_closed_family(ground.clone(), &closed) {
            Err(Error::NotIntersectionClosed(c1, c2)) => {
                let (u1, u2) = (ground.complement(c1), ground.complement(c2));
                Err(Error::NotUnionClosed(u1.min(u2), u1.max(u2)))
            }
            other => other,
        }
    }

    fn from_parts(ground: GroundSet, closed: SetFamily, table: Vec<Subset>) -> Self {
        let open: SetFamily = closed.iter().map(|c| ground.complement(c)).collect();
        let full = ground.full();
        let mut minimal = vec![Vec::new(); ground.len()];
        // Minimal neighborhoods are the minimal open sets around a point; an
        // open O around x is minimal iff removing any other point y pushes x
        // into the closure of the remaining complement.
        for o in &open {
            for x in o.iter() {
                let is_min = o.without(x).iter().all(|y| {
                    let rest = full.difference(o.without(y));
                    table[rest.index()].contains(x)
                });
                if is_min {
                    minimal[x].push(o);
                }
            }
        }
        let minimal = minimal.into_iter().map(SetFamily::from_sorted_unchecked).collect();
        FiniteClosureSpace {
            ground,
            closed,
            open,
            table,
            minimal,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn closed_sets(&self) -> &SetFamily {
        &self.closed
    }

    pub fn open_sets(&self) -> &SetFamily {
        &self.open
    }

    pub fn closure_table(&self) -> &[Subset] {
        &self.table
    }

    pub fn closure(&self, a: Subset) -> Subset {
        self.table[a.index()]
    }

    pub fn interior(&self, a: Subset) -> Subset {
        let g = &self.ground;
        g.complement(self.closure(g.complement(a)))
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.closure(a) == a
    }

    pub fn is_open(&self, a: Subset) -> bool {
        self.interior(a) == a
    }

    pub fn classify_subset(&self, a: Subset) -> SubsetClass {
        SubsetClass {
            is_closed: self.is_closed(a),
            is_open: self.is_open(a),
        }
    }

    /// Whether `u` is a neighborhood of `x`.
    pub fn is_neighborhood(&self, u: Subset, x: usize) -> bool {
        !self.closure(self.ground.complement(u)).contains(x)
    }

    /// All neighborhoods of `x`, by a scan of the power set.
    pub fn neighborhoods(&self, x: usize) -> SetFamily {
        let members = self
            .ground
            .subsets()
            .filter(|&u| self.is_neighborhood(u, x))
            .collect();
        SetFamily::from_sorted_unchecked(members)
    }

    pub fn minimal_neighborhoods(&self, x: usize) -> &SetFamily {
        &self.minimal[x]
    }

    /// All minimal neighborhoods of all points (without repetition).
    pub fn all_minimal_neighborhoods(&self) -> SetFamily {
        self.minimal.iter().flat_map(|f| f.iter()).collect()
    }

    /// The points outside the closure of the empty set.
    pub fn essential_points(&self) -> Subset {
        self.ground.complement(self.closure(Subset::EMPTY))
    }

    pub fn is_essential(&self, x: usize) -> bool {
        !self.closure(Subset::EMPTY).contains(x)
    }

    pub fn classify_point(&self, x: usize) -> PointClass {
        let by_closure = self.is_essential(x);
        let nbhds = self.neighborhoods(x);
        let by_family = !nbhds.is_empty();
        let by_top = nbhds.contains(self.full());
        assert!(
            by_closure == by_family && by_family == by_top,
            "essentiality criteria disagree at point {x}"
        );
        let count = self.minimal[x].len();
        PointClass {
            essential: by_closure,
            regular: count == 1,
            min_nbhd_count: count,
        }
    }

    /// Whether `a` lies inside some minimal neighborhood of `x`.
    pub fn converges(&self, a: Subset, x: usize) -> bool {
        self.minimal[x].iter().any(|m| a.is_subset_of(m))
    }

    /// Every subset converging to `x`.
    pub fn convergence_complex(&self, x: usize) -> SetFamily {
        self.minimal[x].iter().flat_map(Subset::subsets).collect()
    }

    /// Whether every neighborhood family is a filter.
    pub fn is_topological(&self) -> bool {
        (0..self.len()).all(|x| {
            let mins = &self.minimal[x];
            // The neighborhoods are the up-closure of the minimal ones, so
            // intersections of minimal pairs decide closure under meets.
            !mins.is_empty()
                && mins
                    .iter()
                    .all(|m| mins.iter().all(|n| self.is_neighborhood(m.intersection(n), x)))
        })
    }

    pub fn regular_points(&self) -> Subset {
        Subset::from_indices((0..self.len()).filter(|&x| self.minimal[x].len() == 1))
    }
}

fn intersection_witness(family: &SetFamily, a: Subset, member: &[bool]) -> Error {
    let mut supersets = family.iter().filter(|c| a.is_subset_of(*c));
    let mut running = supersets.next().expect("the full set contains every subset");
    for c in supersets {
        let next = running.intersection(c);
        if !member[next.index()] {
            return Error::NotIntersectionClosed(running, c);
        }
        running = next;
    }
    unreachable!("intersection of the supersets of {a} should have left the family")
}

impl PartialEq for FiniteClosureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.closed == other.closed
    }
}

impl Eq for FiniteClosureSpace {}

impl fmt::Debug for FiniteClosureSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteClosureSpace")
            .field("n", &self.len())
            .field("closed", &self.closed)
            .finish()
    }
}

/// Definitional full-scan computations, kept apart from the optimized paths
/// they are compared against.
pub mod reference {
    use super::*;

    /// Intersection of every closed set containing `a`.
    pub fn closure_by_intersection(s: &FiniteClosureSpace, a: Subset) -> Subset {
        s.closed_sets()
            .iter()
            .filter(|&c| a.is_subset_of(c))
            .fold(s.full(), Subset::intersection)
    }

    /// Inclusion-minimal members of the full neighborhood scan.
    pub fn minimal_neighborhoods_by_scan(s: &FiniteClosureSpace, x: usize) -> SetFamily {
        s.neighborhoods(x).minimal_members()
    }

    /// `{x | a is a neighborhood of x}`.
    pub fn interior_by_neighborhoods(s: &FiniteClosureSpace, a: Subset) -> Subset {
        Subset::from_indices((0..s.len()).filter(|&x| s.neighborhoods(x).contains(a)))
    }

    /// Every neighborhood family is nonempty and closed under pairwise
    /// intersection, checked over the whole family.
    pub fn is_topological_by_scan(s: &FiniteClosureSpace) -> bool {
        (0..s.len()).all(|x| {
            let u = s.neighborhoods(x);
            !u.is_empty()
                && u.iter()
                    .all(|a| u.iter().all(|b| u.contains(a.intersection(b))))
        })
    }
}

/// The small spaces used throughout the tests and documentation.
pub mod fixtures {
    use super::*;

    fn closed(n: usize, names: Option<Vec<&str>>, sets: &[&[usize]]) -> FiniteClosureSpace {
        let ground = match names {
            Some(names) => GroundSet::named(names),
            None => GroundSet::new(n),
        }
        .expect("fixture ground set");
        let family = sets
            .iter()
            .map(|ix| Subset::from_indices(ix.iter().copied()))
            .collect();
        FiniteClosureSpace::from_closed_family(ground, &family).expect("fixture family")
    }

    /// Closed sets `{∅, {a}, {b}, {a,b,c}}`; `c` has two minimal neighborhoods.
    pub fn diamond() -> FiniteClosureSpace {
        closed(3, Some(vec!["a", "b", "c"]), &[&[], &[0], &[1], &[0, 1, 2]])
    }

    /// The Sierpiński space, closed sets `{∅, {0}, {0,1}}`.
    pub fn sierpinski() -> FiniteClosureSpace {
        closed(2, None, &[&[], &[0], &[0, 1]])
    }

    /// Closed sets `{{0}, {0,1}}`; point 0 is inessential.
    pub fn inessential() -> FiniteClosureSpace {
        closed(2, None, &[&[0], &[0, 1]])
    }

    /// Every subset closed.
    pub fn discrete(n: usize) -> FiniteClosureSpace {
        let ground = GroundSet::new(n).expect("fixture ground set");
        let family = ground.subsets().collect();
        FiniteClosureSpace::from_closed_family(ground, &family).expect("fixture family")
    }

    /// A single essential point `p`.
    pub fn point() -> FiniteClosureSpace {
        closed(1, Some(vec!["p"]), &[&[], &[0]])
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::reference::*;
    use super::*;

    fn s(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    fn fam(sets: &[&[usize]]) -> SetFamily {
        sets.iter().map(|ix| s(ix)).collect()
    }

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    #[test]
    fn closed_family_errors() {
        let g2 = GroundSet::new(2).unwrap();
        assert_eq!(
            FiniteClosureSpace::from_closed_family(g2, &fam(&[&[0], &[1], &[0, 1]])),
            Err(Error::NotIntersectionClosed(s(&[0]), s(&[1])))
        );
        let g1 = GroundSet::new(1).unwrap();
        assert_eq!(
            FiniteClosureSpace::from_closed_family(g1, &fam(&[&[]])),
            Err(Error::MissingTop)
        );
        let g1 = GroundSet::new(1).unwrap();
        assert!(matches!(
            FiniteClosureSpace::from_closed_family(g1, &fam(&[&[0], &[3]])),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn witness_pair_is_reported_in_family_order() {
        // {0,1} ∩ {1,2} = {1} is missing; {0,1,2} is only the top.
        let g = GroundSet::new(3).unwrap();
        let f = fam(&[&[0, 1], &[1, 2], &[0, 1, 2]]);
        assert_eq!(
            FiniteClosureSpace::from_closed_family(g, &f),
            Err(Error::NotIntersectionClosed(s(&[0, 1]), s(&[1, 2])))
        );
    }

    #[test]
    fn closure_table_constructor() {
        let g = GroundSet::new(2).unwrap();
        let identity: Vec<Subset> = g.subsets().collect();
        let disc = FiniteClosureSpace::from_closure_table(g.clone(), identity).unwrap();
        assert_eq!(disc, discrete(2));
        assert_eq!(disc.closed_sets().len(), 4);

        let mut t: Vec<Subset> = g.subsets().collect();
        t[s(&[0]).index()] = Subset::EMPTY;
        assert_eq!(
            FiniteClosureSpace::from_closure_table(g.clone(), t),
            Err(Error::NotExtensive(s(&[0])))
        );

        // ∅ ↦ {1} is extensive but not below the closure {0} of {0}.
        let t = vec![s(&[1]), s(&[0]), s(&[1]), s(&[0, 1])];
        assert_eq!(
            FiniteClosureSpace::from_closure_table(g.clone(), t),
            Err(Error::NotMonotone(Subset::EMPTY, s(&[0])))
        );

        let g1 = GroundSet::new(1).unwrap();
        assert!(matches!(
            FiniteClosureSpace::from_closure_table(g1, vec![Subset::EMPTY]),
            Err(Error::TableSize { expected: 2, found: 1 })
        ));

        // Non-idempotent: ∅ ↦ {0}, {0} ↦ {0,1}.
        let t = vec![s(&[0]), s(&[0, 1]), s(&[0, 1]), s(&[0, 1])];
        assert_eq!(
            FiniteClosureSpace::from_closure_table(g, t),
            Err(Error::NotIdempotent(Subset::EMPTY))
        );
    }

    #[test]
    fn diamond_table_round_trips() {
        let d = diamond();
        // intersection oracle, independent of the top-down fill
        let table: Vec<Subset> = d
            .ground()
            .subsets()
            .map(|a| closure_by_intersection(&d, a))
            .collect();
        assert_eq!(table[s(&[C]).index()], s(&[A, B, C]));
        assert_eq!(table[s(&[A]).index()], s(&[A]));
        assert_eq!(d.closure_table(), &table[..]);
        let rebuilt = FiniteClosureSpace::from_closure_table(d.ground().clone(), table).unwrap();
        assert_eq!(rebuilt, d);
    }

    #[test]
    fn open_family_constructor() {
        let g3 = GroundSet::named(vec!["a", "b", "c"]).unwrap();
        let e = fam(&[&[], &[A, C], &[B, C], &[A, B, C]]);
        let d = FiniteClosureSpace::from_open_family(g3, &e).unwrap();
        assert_eq!(d, diamond());
        assert_eq!(d.open_sets(), &e);

        let g2 = GroundSet::new(2).unwrap();
        let iness = FiniteClosureSpace::from_open_family(g2.clone(), &fam(&[&[1]])).unwrap();
        assert_eq!(iness, inessential());
        assert_eq!(iness.open_sets(), &fam(&[&[], &[1]]));

        assert_eq!(
            FiniteClosureSpace::from_open_family(g2, &fam(&[&[0], &[1]])),
            Err(Error::NotUnionClosed(s(&[0]), s(&[1])))
        );
    }

    #[test]
    fn closure_and_interior_examples() {
        let d = diamond();
        assert_eq!(d.closure(s(&[C])), s(&[A, B, C]));
        for sp in [diamond(), sierpinski(), inessential(), discrete(2), point()] {
            assert_eq!(sp.closure(sp.full()), sp.full());
        }
        assert_eq!(inessential().closure(Subset::EMPTY), s(&[0]));

        assert_eq!(d.interior(s(&[A, C])), s(&[A, C]));
        assert_eq!(d.interior(s(&[C])), Subset::EMPTY);
        assert_eq!(inessential().interior(s(&[0, 1])), s(&[1]));
    }

    #[test]
    fn classify_subset_examples() {
        let d = diamond();
        assert_eq!(
            d.classify_subset(s(&[A])),
            SubsetClass { is_closed: true, is_open: false }
        );
        assert_eq!(
            d.classify_subset(Subset::EMPTY),
            SubsetClass { is_closed: true, is_open: true }
        );
        assert_eq!(
            inessential().classify_subset(s(&[0, 1])),
            SubsetClass { is_closed: true, is_open: false }
        );
    }

    #[test]
    fn neighborhood_examples() {
        let d = diamond();
        assert_eq!(
            d.neighborhoods(C),
            fam(&[&[A, C], &[B, C], &[A, B, C]])
        );
        assert!(inessential().neighborhoods(0).is_empty());
        assert_eq!(discrete(2).neighborhoods(0), fam(&[&[0], &[0, 1]]));
    }

    #[test]
    fn minimal_neighborhood_examples() {
        let d = diamond();
        assert_eq!(d.minimal_neighborhoods(C), &fam(&[&[A, C], &[B, C]]));
        assert_eq!(d.minimal_neighborhoods(A), &fam(&[&[A, C]]));
        assert!(inessential().minimal_neighborhoods(0).is_empty());
        for sp in [diamond(), sierpinski(), inessential(), discrete(3), point()] {
            for x in 0..sp.len() {
                assert_eq!(sp.minimal_neighborhoods(x), &minimal_neighborhoods_by_scan(&sp, x));
            }
        }
    }

    #[test]
    fn classify_point_examples() {
        assert_eq!(
            inessential().classify_point(0),
            PointClass { essential: false, regular: false, min_nbhd_count: 0 }
        );
        assert_eq!(
            diamond().classify_point(C),
            PointClass { essential: true, regular: false, min_nbhd_count: 2 }
        );
        assert_eq!(
            diamond().classify_point(A),
            PointClass { essential: true, regular: true, min_nbhd_count: 1 }
        );
    }

    #[test]
    fn convergence_examples() {
        let d = diamond();
        assert!(d.converges(s(&[A]), A));
        assert!(!d.converges(s(&[A, B]), C));
        for sp in [diamond(), inessential(), sierpinski()] {
            for x in 0..sp.len() {
                assert_eq!(sp.converges(Subset::EMPTY, x), sp.is_essential(x));
            }
        }
    }

    #[test]
    fn convergence_complex_examples() {
        assert_eq!(
            diamond().convergence_complex(C),
            fam(&[&[], &[A], &[B], &[C], &[A, C], &[B, C]])
        );
        assert!(inessential().convergence_complex(0).is_empty());
        assert_eq!(sierpinski().convergence_complex(1), fam(&[&[], &[1]]));
    }

    #[test]
    fn topological_examples() {
        assert!(sierpinski().is_topological());
        assert!(!diamond().is_topological());
        assert!(!inessential().is_topological());
        for sp in [diamond(), sierpinski(), inessential(), discrete(3), point()] {
            assert_eq!(sp.is_topological(), is_topological_by_scan(&sp));
        }
    }

    #[test]
    fn empty_ground_set() {
        let g = GroundSet::new(0).unwrap();
        let sp = FiniteClosureSpace::from_closed_family(g, &fam(&[&[]])).unwrap();
        assert_eq!(sp.closure(Subset::EMPTY), Subset::EMPTY);
        assert!(sp.is_topological());
        assert_eq!(sp.open_sets(), &fam(&[&[]]));
    }

    #[test]
    fn interior_matches_neighborhood_definition() {
        for sp in [diamond(), sierpinski(), inessential(), discrete(2), point()] {
            for a in sp.ground().subsets() {
                assert_eq!(sp.interior(a), interior_by_neighborhoods(&sp, a));
            }
        }
    }

    #[test]
    fn sixteen_point_discrete_space_builds() {
        let sp = discrete(16);
        assert_eq!(sp.closed_sets().len(), 1 << 16);
        assert_eq!(sp.minimal_neighborhoods(5), &fam(&[&[5]]));
    }
}
