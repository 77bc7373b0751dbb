//! Ground sets, bit-vector subsets and canonically ordered set families.
//!
//! Element `i` of a ground set is bit `i` of a [`Subset`], element 0 being the
//! least significant bit. Every other module speaks in these terms; display
//! names only matter for I/O.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default upper bound on the number of elements of a ground set.
///
/// Closure tables hold `2^n` entries, so at the default cap a table is 65 536
/// subsets (256 KiB).
pub const DEFAULT_MAX_ELEMENTS: usize = 16;

/// Largest cap that can be requested explicitly. A table at this size takes
/// 64 MiB.
pub const HARD_MAX_ELEMENTS: usize = 24;

/// A subset of a ground set, stored as its characteristic bit vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The set `{0, 1, ..., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub const fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    pub const fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    #[must_use]
    pub const fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    #[must_use]
    pub const fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    #[must_use]
    pub const fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub const fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub const fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn meets(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Table position of this subset in bit-vector order.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// All subsets of `self`, in increasing bit-vector order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// The indexed carrier of a closure space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: usize,
    names: Option<Vec<String>>,
}

impl GroundSet {
    /// A ground set of `n` unnamed elements, subject to [`DEFAULT_MAX_ELEMENTS`].
    pub fn new(n: usize) -> Result<Self, Error> {
        Self::with_cap(n, DEFAULT_MAX_ELEMENTS)
    }

    /// Like [`GroundSet::new`] with an explicit cap, itself at most
    /// [`HARD_MAX_ELEMENTS`].
    pub fn with_cap(n: usize, cap: usize) -> Result<Self, Error> {
        let cap = cap.min(HARD_MAX_ELEMENTS);
        if n > cap {
            return Err(Error::TooLarge(format!(
                "ground set of {n} elements exceeds the cap of {cap}"
            )));
        }
        Ok(GroundSet { size: n, names: None })
    }

    pub fn named<S: Into<String>>(names: Vec<S>) -> Result<Self, Error> {
        Self::named_with_cap(names, DEFAULT_MAX_ELEMENTS)
    }

    pub fn named_with_cap<S: Into<String>>(names: Vec<S>, cap: usize) -> Result<Self, Error> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut ground = Self::with_cap(names.len(), cap)?;
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateName(a.clone()));
            }
        }
        ground.names = Some(names);
        Ok(ground)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of element `i`: its name, or the index itself.
    pub fn label(&self, i: usize) -> String {
        match &self.names {
            Some(names) => names[i].clone(),
            None => i.to_string(),
        }
    }

    /// `{a,c}` style rendering using element labels.
    pub fn format_subset(&self, a: Subset) -> String {
        let parts: Vec<String> = a.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size)
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1usize << self.size
    }

    /// Every subset in increasing bit-vector order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.subset_count() as u32).map(Subset::from_bits)
    }

    pub fn contains(&self, a: Subset) -> bool {
        a.is_subset_of(self.full())
    }

    pub fn check(&self, a: Subset) -> Result<Subset, Error> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::OutOfRange(format!(
                "subset {a} is not contained in a ground set of {} elements",
                self.size
            )))
        }
    }

    pub fn complement(&self, a: Subset) -> Subset {
        self.full().difference(a)
    }

    /// All supersets of `a` within the power set, canonically ordered.
    pub fn principal_up_family(&self, a: Subset) -> SetFamily {
        let free = self.complement(a);
        SetFamily::from_sorted_unchecked(free.subsets().map(|s| s.union(a)).collect())
    }
}

/// A duplicate-free family of subsets kept in increasing bit-vector order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SetFamily {
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn new() -> Self {
        Self::default()
    }

    // Caller guarantees strictly increasing order.
    pub(crate) fn from_sorted_unchecked(members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { members }
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Subset) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn insert(&mut self, a: Subset) -> bool {
        match self.members.binary_search(&a) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, a);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    /// Members with no strict subset also in the family.
    pub fn minimal_members(&self) -> SetFamily {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&a| !self.members.iter().any(|&b| b != a && b.is_subset_of(a)))
            .collect();
        SetFamily::from_sorted_unchecked(members)
    }

    /// The family as sorted index lists.
    pub fn to_index_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|a| a.indices()).collect()
    }
}

impl FromIterator<Subset> for SetFamily {
    fn from_iter<I: IntoIterator<Item = Subset>>(iter: I) -> Self {
        let mut members: Vec<Subset> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SetFamily { members }
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = Subset;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Subset>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// Standalone form of [`GroundSet::complement`].
pub fn complement(g: &GroundSet, a: Subset) -> Subset {
    g.complement(a)
}

/// Standalone form of [`GroundSet::principal_up_family`].
pub fn principal_up_family(g: &GroundSet, a: Subset) -> SetFamily {
    g.principal_up_family(a)
}

/// Standalone form of [`SetFamily::minimal_members`].
pub fn minimal_members(f: &SetFamily) -> SetFamily {
    f.minimal_members()
}
