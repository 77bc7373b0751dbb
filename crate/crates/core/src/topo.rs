//! Finite topological spaces as quasiordered sets.
//!
//! A finite topology is the same thing as a reflexive, transitive relation:
//! `t <= s` iff `t` lies in the closure of `{s}`, and the smallest
//! neighborhood of `t` is its up-set `U_t = {s | s >= t}`.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::closure::FiniteClosureSpace;
use crate::error::Error;
use crate::setcore::{GroundSet, SetFamily, Subset};

/// A set of points of a topology (or of a resolution).
pub type PointSet = FixedBitSet;

/// Largest number of points a [`FiniteTopology`] may have.
pub const MAX_TOPOLOGY_POINTS: usize = 4096;

pub fn point_set<I: IntoIterator<Item = usize>>(len: usize, points: I) -> PointSet {
    let mut set = PointSet::with_capacity(len);
    set.extend(points);
    set
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    // up[t] = { s | t <= s }
    up: Vec<PointSet>,
}

impl FiniteTopology {
    /// Validates `pairs` (each `(t, s)` meaning `t <= s`) as a quasiorder on
    /// `n` points. The relation is taken as given: nothing is added.
    pub fn from_quasiorder(n: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let up = Self::relation(n, pairs)?;
        if let Some(t) = (0..n).find(|&t| !up[t].contains(t)) {
            return Err(Error::NotReflexive(t));
        }
        for t in 0..n {
            for s in up[t].ones() {
                if let Some(r) = up[s].difference(&up[t]).next() {
                    return Err(Error::NotTransitive(t, s, r));
                }
            }
        }
        Ok(FiniteTopology { up })
    }

    /// The reflexive-transitive closure of `pairs`.
    pub fn complete(n: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let mut up = Self::relation(n, pairs)?;
        for (t, row) in up.iter_mut().enumerate() {
            row.insert(t);
        }
        for k in 0..n {
            let via = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        Ok(FiniteTopology { up })
    }

    fn relation(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<PointSet>, Error> {
        if n > MAX_TOPOLOGY_POINTS {
            return Err(Error::TooLarge(format!(
                "{n} points exceed the limit of {MAX_TOPOLOGY_POINTS}"
            )));
        }
        let mut up = vec![PointSet::with_capacity(n); n];
        for &(t, s) in pairs {
            if t >= n || s >= n {
                return Err(Error::OutOfRange(format!("pair ({t}, {s}) on {n} points")));
            }
            up[t].insert(s);
        }
        Ok(up)
    }

    // Caller guarantees reflexivity and transitivity.
    pub(crate) fn from_up_sets_unchecked(up: Vec<PointSet>) -> Self {
        FiniteTopology { up }
    }

    /// The discrete order on `n` points.
    pub fn discrete(n: usize) -> Self {
        FiniteTopology {
            up: (0..n).map(|t| point_set(n, [t])).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, t: usize, s: usize) -> bool {
        self.up[t].contains(s)
    }

    /// `U_p`, the smallest open set containing `p`.
    pub fn up_set(&self, p: usize) -> &PointSet {
        &self.up[p]
    }

    /// All pairs `(t, s)` with `t <= s`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(t, row)| row.ones().map(move |s| (t, s)))
            .collect()
    }

    /// Antisymmetry, i.e. the T0 separation property.
    pub fn is_t0(&self) -> bool {
        (0..self.len()).all(|t| self.up[t].ones().all(|s| s == t || !self.leq(s, t)))
    }

    pub fn is_order_preserving(&self, target: &FiniteTopology, assignment: &[usize]) -> bool {
        assert_eq!(assignment.len(), self.len(), "assignment must be total");
        (0..self.len()).all(|t| {
            self.up[t]
                .ones()
                .all(|s| target.leq(assignment[t], assignment[s]))
        })
    }

    /// Whether `set` is up-closed, i.e. open.
    pub fn is_open(&self, set: &PointSet) -> bool {
        set.ones().all(|t| self.up[t].is_subset(set))
    }

    /// Every open set, generated as unions of up-sets. The count can be
    /// exponential in the number of points.
    pub fn open_sets(&self) -> Vec<PointSet> {
        let mut opens: BTreeSet<PointSet> = BTreeSet::new();
        opens.insert(PointSet::with_capacity(self.len()));
        for u in &self.up {
            let extended: Vec<PointSet> = opens
                .iter()
                .map(|o| {
                    let mut o = o.clone();
                    o.union_with(u);
                    o
                })
                .collect();
            opens.extend(extended);
        }
        opens.into_iter().collect()
    }

    /// The closure space whose open sets are the up-closed subsets.
    pub fn as_closure_space(&self) -> Result<FiniteClosureSpace, Error> {
        self.as_closure_space_on(GroundSet::new(self.len())?)
    }

    /// Same, over a given (possibly named) ground set of matching size.
    pub fn as_closure_space_on(&self, ground: GroundSet) -> Result<FiniteClosureSpace, Error> {
        if ground.len() != self.len() {
            return Err(Error::SpaceMismatch(format!(
                "{} elements for {} points",
                ground.len(),
                self.len()
            )));
        }
        let masks: Vec<Subset> = self
            .up
            .iter()
            .map(|row| Subset::from_indices(row.ones()))
            .collect();
        let opens: SetFamily = ground
            .subsets()
            .filter(|u| u.iter().all(|t| masks[t].is_subset_of(*u)))
            .collect();
        FiniteClosureSpace::from_open_family(ground, &opens)
    }

    /// The specialization order `t <= s` iff `t` is in the closure of `{s}`.
    pub fn specialization_order(space: &FiniteClosureSpace) -> Result<Self, Error> {
        if !space.is_topological() {
            return Err(Error::NotTopological);
        }
        let n = space.len();
        let up = (0..n)
            .map(|t| point_set(n, (0..n).filter(|&s| space.closure(Subset::singleton(s)).contains(t))))
            .collect();
        Ok(FiniteTopology { up })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::fixtures::*;
    use proptest::prelude::*;

    fn sierp_order() -> FiniteTopology {
        FiniteTopology::from_quasiorder(2, &[(0, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn from_quasiorder_examples() {
        let t = sierp_order();
        assert!(t.leq(0, 1) && !t.leq(1, 0));
        assert_eq!(
            FiniteTopology::from_quasiorder(2, &[(0, 0)]),
            Err(Error::NotReflexive(1))
        );
        assert_eq!(
            FiniteTopology::from_quasiorder(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]),
            Err(Error::NotTransitive(0, 1, 2))
        );
        assert!(matches!(
            FiniteTopology::from_quasiorder(2, &[(0, 2)]),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn complete_adds_missing_pairs() {
        let t = FiniteTopology::complete(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(t.leq(0, 2) && t.leq(1, 1));
        assert_eq!(t.pairs().len(), 6);
    }

    #[test]
    fn up_set_examples() {
        let t = sierp_order();
        assert_eq!(t.up_set(0), &point_set(2, [0, 1]));
        assert_eq!(t.up_set(1), &point_set(2, [1]));
        let anti = FiniteTopology::discrete(3);
        for p in 0..3 {
            assert_eq!(anti.up_set(p), &point_set(3, [p]));
        }
    }

    #[test]
    fn as_closure_space_examples() {
        assert_eq!(sierp_order().as_closure_space().unwrap(), sierpinski());
        assert_eq!(
            FiniteTopology::discrete(2).as_closure_space().unwrap(),
            discrete(2)
        );
        let chain = FiniteTopology::complete(3, &[(0, 1), (1, 2)]).unwrap();
        let sp = chain.as_closure_space().unwrap();
        let expected: SetFamily = [0u32, 0b1, 0b11, 0b111]
            .into_iter()
            .map(Subset::from_bits)
            .collect();
        assert_eq!(sp.closed_sets(), &expected);
        assert!(sp.is_topological());
        for p in 0..3 {
            let up = Subset::from_indices(chain.up_set(p).ones());
            assert_eq!(sp.minimal_neighborhoods(p).members(), &[up]);
        }
    }

    #[test]
    fn specialization_order_examples() {
        assert_eq!(
            FiniteTopology::specialization_order(&sierpinski()).unwrap(),
            sierp_order()
        );
        assert_eq!(
            FiniteTopology::specialization_order(&discrete(2)).unwrap(),
            FiniteTopology::discrete(2)
        );
        assert_eq!(
            FiniteTopology::specialization_order(&diamond()),
            Err(Error::NotTopological)
        );
    }

    #[test]
    fn t0_examples() {
        assert!(sierp_order().is_t0());
        let both = FiniteTopology::from_quasiorder(2, &[(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        assert!(!both.is_t0());
    }

    #[test]
    fn order_preserving_examples() {
        let t = sierp_order();
        assert!(t.is_order_preserving(&t, &[0, 1]));
        assert!(!t.is_order_preserving(&FiniteTopology::discrete(2), &[0, 1]));
        assert!(t.is_order_preserving(&FiniteTopology::discrete(3), &[2, 2]));
    }

    #[test]
    fn open_sets_of_sierpinski() {
        let opens = sierp_order().open_sets();
        let expected = vec![point_set(2, []), point_set(2, [0, 1]), point_set(2, [1])];
        let mut expected = expected;
        expected.sort();
        assert_eq!(opens, expected);
        assert!(opens.iter().all(|o| sierp_order().is_open(o)));
    }

    fn arb_quasiorder() -> impl Strategy<Value = FiniteTopology> {
        (0usize..=6).prop_flat_map(|n| {
            proptest::collection::vec((0..n.max(1), 0..n.max(1)), 0..12).prop_map(move |pairs| {
                let pairs: Vec<_> = pairs.into_iter().filter(|&(a, b)| a < n && b < n).collect();
                FiniteTopology::complete(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn dictionary_round_trip(t in arb_quasiorder()) {
            let sp = t.as_closure_space().unwrap();
            prop_assert!(sp.is_topological());
            prop_assert_eq!(FiniteTopology::specialization_order(&sp).unwrap(), t.clone());
            // generated opens agree with the up-closed subsets of the space
            let opens: Vec<Subset> = t.open_sets().iter().map(|o| Subset::from_indices(o.ones())).collect();
            let opens: SetFamily = opens.into_iter().collect();
            prop_assert_eq!(&opens, sp.open_sets());
        }

        #[test]
        fn up_set_characterizes_order(t in arb_quasiorder()) {
            for p in 0..t.len() {
                for q in 0..t.len() {
                    let by_leq = t.leq(p, q);
                    prop_assert_eq!(by_leq, t.up_set(q).is_subset(t.up_set(p)));
                    prop_assert_eq!(by_leq, t.up_set(p).contains(q));
                }
            }
        }
    }
}
