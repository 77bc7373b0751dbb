//! Maps between finite closure spaces.
//!
//! Continuity is measured with minimal neighborhoods: `f` is continuous at `x`
//! when every minimal neighborhood of `x` maps into some minimal neighborhood
//! of `f(x)`. Combinatorial continuity (closed preimages) is a different,
//! stronger-looking notion that only coincides with it on topological spaces.
//! Regular maps are the ones whose minimal neighborhoods pick out a unique
//! minimal neighborhood downstairs; they are exactly the maps with a unique
//! continuous lift between resolutions.

use std::collections::HashSet;
use std::fmt;

use crate::closure::FiniteClosureSpace;
use crate::error::Error;
use crate::resolution::{Resolution, TopPoint};
use crate::setcore::{SetFamily, Subset};

/// A total map between the ground sets of two closure spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct SpaceMap<'a> {
    domain: &'a FiniteClosureSpace,
    codomain: &'a FiniteClosureSpace,
    assignment: Vec<usize>,
}

impl fmt::Debug for SpaceMap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpaceMap")
            .field("domain", &self.domain.len())
            .field("codomain", &self.codomain.len())
            .field("assignment", &self.assignment)
            .finish()
    }
}

impl<'a> SpaceMap<'a> {
    pub fn new(
        domain: &'a FiniteClosureSpace,
        codomain: &'a FiniteClosureSpace,
        assignment: Vec<usize>,
    ) -> Result<Self, Error> {
        if assignment.len() != domain.len() {
            return Err(Error::SpaceMismatch(format!(
                "assignment has {} entries for a domain of {} points",
                assignment.len(),
                domain.len()
            )));
        }
        if let Some((x, &y)) = assignment.iter().enumerate().find(|(_, &y)| y >= codomain.len()) {
            return Err(Error::OutOfRange(format!(
                "point {x} is sent to {y}, but the codomain has {} points",
                codomain.len()
            )));
        }
        Ok(SpaceMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(space: &'a FiniteClosureSpace) -> Self {
        SpaceMap {
            domain: space,
            codomain: space,
            assignment: (0..space.len()).collect(),
        }
    }

    pub fn domain(&self) -> &'a FiniteClosureSpace {
        self.domain
    }

    pub fn codomain(&self) -> &'a FiniteClosureSpace {
        self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self, a: Subset) -> Subset {
        Subset::from_indices(a.iter().map(|x| self.assignment[x]))
    }

    pub fn preimage(&self, b: Subset) -> Subset {
        Subset::from_indices((0..self.assignment.len()).filter(|&x| b.contains(self.assignment[x])))
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len()
            && self.image(self.domain.full()) == self.codomain.full()
    }

    /// The inverse map, when this one is bijective.
    pub fn inverse(&self) -> Option<SpaceMap<'a>> {
        if !self.is_bijective() {
            return None;
        }
        let mut back = vec![0; self.codomain.len()];
        for (x, &y) in self.assignment.iter().enumerate() {
            back[y] = x;
        }
        Some(SpaceMap {
            domain: self.codomain,
            codomain: self.domain,
            assignment: back,
        })
    }

    pub fn is_continuous_at(&self, x: usize) -> bool {
        let targets = self.codomain.minimal_neighborhoods(self.apply(x));
        self.domain.minimal_neighborhoods(x).iter().all(|m| {
            let fm = self.image(m);
            targets.iter().any(|n| fm.is_subset_of(n))
        })
    }

    pub fn is_continuous(&self) -> bool {
        (0..self.domain.len()).all(|x| self.is_continuous_at(x))
    }

    /// Pairs `(x, M)` where `f(M)` fits in no minimal neighborhood of `f(x)`.
    pub fn continuity_failures(&self) -> Vec<(usize, Subset)> {
        let mut out = Vec::new();
        for x in 0..self.domain.len() {
            let targets = self.codomain.minimal_neighborhoods(self.apply(x));
            for m in self.domain.minimal_neighborhoods(x) {
                let fm = self.image(m);
                if !targets.iter().any(|n| fm.is_subset_of(n)) {
                    out.push((x, m));
                }
            }
        }
        out
    }

    /// The five equivalent forms of combinatorial continuity, in order:
    /// neighborhood preimages, the `f(U) ⊆ V` form, open preimages, closed
    /// preimages, and `f(cl A) ⊆ cl f(A)`.
    pub fn comb_conditions(&self) -> [bool; 5] {
        let dom = self.domain;
        let cod = self.codomain;
        let nbhd_preimages = (0..dom.len()).all(|x| {
            cod.ground()
                .subsets()
                .filter(|&v| cod.is_neighborhood(v, self.apply(x)))
                .all(|v| dom.is_neighborhood(self.preimage(v), x))
        });
        let nbhd_images = (0..dom.len()).all(|x| {
            let nbhds = dom.neighborhoods(x);
            cod.ground()
                .subsets()
                .filter(|&v| cod.is_neighborhood(v, self.apply(x)))
                .all(|v| nbhds.iter().any(|u| self.image(u).is_subset_of(v)))
        });
        let open_preimages = cod.open_sets().iter().all(|v| dom.is_open(self.preimage(v)));
        let closed_preimages = cod
            .closed_sets()
            .iter()
            .all(|b| dom.is_closed(self.preimage(b)));
        let closure_images = dom
            .ground()
            .subsets()
            .all(|a| self.image(dom.closure(a)).is_subset_of(cod.closure(self.image(a))));
        [
            nbhd_preimages,
            nbhd_images,
            open_preimages,
            closed_preimages,
            closure_images,
        ]
    }

    /// Combinatorial continuity, evaluated all five ways. Disagreement among
    /// the five is reported as an error and indicates a bug.
    pub fn is_comb_continuous(&self) -> Result<bool, Error> {
        let conds = self.comb_conditions();
        if conds.iter().all(|&c| c == conds[0]) {
            Ok(conds[0])
        } else {
            Err(Error::InternalDisagreement(format!(
                "combinatorial continuity conditions (1)-(5) evaluate to {conds:?}"
            )))
        }
    }

    /// Pairs `(x, V)` with `V` a neighborhood of `f(x)` whose preimage is not
    /// a neighborhood of `x`.
    pub fn comb_failures(&self) -> Vec<(usize, Subset)> {
        let (dom, cod) = (self.domain, self.codomain);
        let mut out = Vec::new();
        for x in 0..dom.len() {
            for v in cod.neighborhoods(self.apply(x)).iter() {
                if !dom.is_neighborhood(self.preimage(v), x) {
                    out.push((x, v));
                }
            }
        }
        out
    }

    /// Openness via minimal neighborhoods: every `f(M)` must be open.
    pub fn is_open_map(&self) -> bool {
        self.open_failures().is_empty()
    }

    /// Pairs `(x, M)` with `f(M)` not open.
    pub fn open_failures(&self) -> Vec<(usize, Subset)> {
        let mut out = Vec::new();
        for x in 0..self.domain.len() {
            for m in self.domain.minimal_neighborhoods(x) {
                if !self.codomain.is_open(self.image(m)) {
                    out.push((x, m));
                }
            }
        }
        out
    }

    /// The minimal neighborhood `K` of `f(x)` selected by `M`, if any.
    ///
    /// The up-family of `f(M)` meets the neighborhoods of `y` in the union
    /// of the up-families of `N ∪ f(M)`, `N ∈ ℳ(y)`; it is the up-family of a
    /// minimal `K` iff `K ⊇ f(M)` and every `N ∪ f(M)` contains `K`.
    pub fn regular_target(&self, x: usize, m: Subset) -> Option<Subset> {
        let fm = self.image(m);
        let targets = self.codomain.minimal_neighborhoods(self.apply(x));
        let k = targets.iter().find(|&n| fm.is_subset_of(n))?;
        targets
            .iter()
            .all(|n| k.is_subset_of(n.union(fm)))
            .then_some(k)
    }

    pub fn is_regular_at(&self, x: usize) -> bool {
        self.domain
            .minimal_neighborhoods(x)
            .iter()
            .all(|m| self.regular_target(x, m).is_some())
    }

    pub fn is_regular(&self) -> bool {
        (0..self.domain.len()).all(|x| self.is_regular_at(x))
    }

    /// Regularity by direct computation of `↑f(M) ∩ 𝒰(f(x))` for every
    /// `x` and `M ∈ ℳ(x)`.
    pub fn regular_witness(&self) -> RegularWitness {
        let mut entries = Vec::new();
        for x in 0..self.domain.len() {
            let y = self.apply(x);
            for m in self.domain.minimal_neighborhoods(x) {
                let fm = self.image(m);
                let family: SetFamily = self
                    .codomain
                    .ground()
                    .principal_up_family(fm)
                    .iter()
                    .filter(|&u| self.codomain.is_neighborhood(u, y))
                    .collect();
                let outcome = if family.is_empty() {
                    Err(RegularFailure::Empty)
                } else {
                    let minimal = family.minimal_members();
                    match minimal.members() {
                        [k] if family == self.codomain.ground().principal_up_family(*k) => {
                            if self.codomain.minimal_neighborhoods(y).contains(*k) {
                                Ok(*k)
                            } else {
                                Err(RegularFailure::NotMinimal(*k))
                            }
                        }
                        _ => Err(RegularFailure::NotPrincipal(minimal)),
                    }
                };
                entries.push(WitnessEntry { x, m, outcome });
            }
        }
        let witness = RegularWitness { entries };
        if witness.is_regular() {
            debug_assert!(self.is_continuous(), "a regular map must be continuous");
        }
        witness
    }

    /// `g ∘ f`, where `self` is `f`.
    pub fn then(&self, g: &SpaceMap<'a>) -> Result<SpaceMap<'a>, Error> {
        compose(g, self)
    }

    pub fn induced_resolution_map<'r>(
        &self,
        rx: &'r Resolution,
        ry: &'r Resolution,
    ) -> Option<ResolutionMap<'r>> {
        let assignment = rx
            .points()
            .iter()
            .map(|p| {
                ry.index_of(TopPoint {
                    x: self.apply(p.x),
                    m: self.image(p.m),
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ResolutionMap {
            source: rx,
            target: ry,
            assignment,
        })
    }
}

/// `g ∘ f`.
pub fn compose<'a>(g: &SpaceMap<'a>, f: &SpaceMap<'a>) -> Result<SpaceMap<'a>, Error> {
    if f.codomain != g.domain {
        return Err(Error::SpaceMismatch(
            "codomain of the first map is not the domain of the second".into(),
        ));
    }
    Ok(SpaceMap {
        domain: f.domain,
        codomain: g.codomain,
        assignment: f.assignment.iter().map(|&y| g.assignment[y]).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularFailure {
    /// `f(x)` is inessential, so it has no neighborhoods at all.
    Empty,
    /// The family has these minimal members, not exactly one.
    NotPrincipal(SetFamily),
    /// The family is principal but its generator is not a minimal neighborhood.
    NotMinimal(Subset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub x: usize,
    pub m: Subset,
    pub outcome: Result<Subset, RegularFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularWitness {
    entries: Vec<WitnessEntry>,
}

impl RegularWitness {
    pub fn entries(&self) -> &[WitnessEntry] {
        &self.entries
    }

    pub fn is_regular(&self) -> bool {
        self.entries.iter().all(|e| e.outcome.is_ok())
    }

    pub fn is_regular_at(&self, x: usize) -> bool {
        self.entries.iter().filter(|e| e.x == x).all(|e| e.outcome.is_ok())
    }

    pub fn first_failure(&self) -> Option<&WitnessEntry> {
        self.entries.iter().find(|e| e.outcome.is_err())
    }

    pub fn target(&self, x: usize, m: Subset) -> Option<Subset> {
        self.entries
            .iter()
            .find(|e| e.x == x && e.m == m)
            .and_then(|e| e.outcome.clone().ok())
    }
}

/// A map between the point sets of two resolutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionMap<'r> {
    source: &'r Resolution,
    target: &'r Resolution,
    assignment: Vec<usize>,
}

impl<'r> ResolutionMap<'r> {
    pub fn new(source: &'r Resolution, target: &'r Resolution, assignment: Vec<usize>) -> Result<Self, Error> {
        if assignment.len() != source.len() || assignment.iter().any(|&t| t >= target.len()) {
            return Err(Error::SpaceMismatch(
                "assignment does not fit the resolutions".into(),
            ));
        }
        Ok(ResolutionMap {
            source,
            target,
            assignment,
        })
    }

    pub fn source(&self) -> &'r Resolution {
        self.source
    }

    pub fn target(&self) -> &'r Resolution {
        self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, t: usize) -> usize {
        self.assignment[t]
    }

    /// Continuity of a map between finite topologies is monotonicity.
    pub fn is_continuous(&self) -> bool {
        self.source
            .order()
            .is_order_preserving(self.target.order(), &self.assignment)
    }

    /// Whether `π ∘ F = f ∘ π`.
    pub fn commutes_with(&self, f: &SpaceMap<'_>) -> bool {
        (0..self.source.len())
            .all(|t| self.target.projection(self.assignment[t]) == f.apply(self.source.projection(t)))
    }
}

fn check_resolutions(f: &SpaceMap<'_>, rx: &Resolution, ry: &Resolution) -> Result<(), Error> {
    if rx.base() != f.domain() || ry.base() != f.codomain() {
        return Err(Error::SpaceMismatch(
            "resolutions are not those of the map's spaces".into(),
        ));
    }
    Ok(())
}

/// The unique continuous `F: Top X → Top Y` with `π ∘ F = f ∘ π`, sending
/// `(x, M)` to `(f(x), K)` for the `K` selected by regularity.
pub fn lift<'r>(f: &SpaceMap<'_>, rx: &'r Resolution, ry: &'r Resolution) -> Result<ResolutionMap<'r>, Error> {
    check_resolutions(f, rx, ry)?;
    let witness = f.regular_witness();
    if let Some(e) = witness.first_failure() {
        return Err(Error::NotRegular { x: e.x, m: e.m });
    }
    let assignment = rx
        .points()
        .iter()
        .map(|p| {
            let k = witness.target(p.x, p.m).expect("regular witness covers every point");
            ry.index_of(TopPoint { x: f.apply(p.x), m: k })
                .expect("K is a minimal neighborhood of f(x)")
        })
        .collect();
    Ok(ResolutionMap {
        source: rx,
        target: ry,
        assignment,
    })
}

/// Number of assignments `Top X → Top Y` that commute with the projections,
/// i.e. the product of the fiber sizes `|π⁻¹(f(π(t)))|`.
pub fn commuting_assignment_count(f: &SpaceMap<'_>, rx: &Resolution, ry: &Resolution) -> u128 {
    rx.points()
        .iter()
        .map(|p| ry.fiber(f.apply(p.x)).count_ones(..) as u128)
        .product()
}

/// Every continuous `F` with `π ∘ F = f ∘ π`, found by running through all
/// commuting assignments. Returns `None` when there are more than `limit`
/// of them.
pub fn continuous_commuting_lifts<'r>(
    f: &SpaceMap<'_>,
    rx: &'r Resolution,
    ry: &'r Resolution,
    limit: u128,
) -> Result<Option<Vec<ResolutionMap<'r>>>, Error> {
    check_resolutions(f, rx, ry)?;
    if commuting_assignment_count(f, rx, ry) > limit {
        return Ok(None);
    }
    let choices: Vec<Vec<usize>> = rx
        .points()
        .iter()
        .map(|p| ry.fiber(f.apply(p.x)).ones().collect())
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Ok(Some(Vec::new()));
    }
    let mut found = Vec::new();
    let mut digits = vec![0usize; choices.len()];
    loop {
        let assignment: Vec<usize> = digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect();
        if rx.order().is_order_preserving(ry.order(), &assignment) {
            found.push(ResolutionMap {
                source: rx,
                target: ry,
                assignment,
            });
        }
        // odometer, last position fastest
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(Some(found));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < choices[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Continuity of `f` decided on the resolutions, two ways: fiberwise
/// containment `f(π(U_t)) ⊆ π(U_s)`, and convergence of `f(π(U_t))` to
/// `f(π(t))` (continuity of `f ∘ π` out of the topological `Top X`). Both must
/// agree with [`SpaceMap::is_continuous`].
pub fn continuity_via_resolution(f: &SpaceMap<'_>, rx: &Resolution, ry: &Resolution) -> Result<bool, Error> {
    check_resolutions(f, rx, ry)?;
    let up_image = |t: usize| f.image(rx.project(rx.order().up_set(t)));
    let fiberwise = (0..f.domain().len()).all(|x| {
        let targets: Vec<Subset> = ry
            .fiber(f.apply(x))
            .ones()
            .map(|s| ry.project(ry.order().up_set(s)))
            .collect();
        rx.fiber(x)
            .ones()
            .all(|t| targets.iter().any(|&n| up_image(t).is_subset_of(n)))
    });
    let through_projection =
        (0..rx.len()).all(|t| f.codomain().converges(up_image(t), f.apply(rx.projection(t))));
    let direct = f.is_continuous();
    if fiberwise != direct || through_projection != direct {
        return Err(Error::InternalDisagreement(format!(
            "continuity: direct {direct}, fiberwise {fiberwise}, through projection {through_projection}"
        )));
    }
    Ok(direct)
}

/// Combinatorial continuity decided on the resolutions: every `f⁻¹(π(P))`,
/// `P` open in `Top Y`, must be `π(O)` for an open `O` of `Top X`. Must agree
/// with [`SpaceMap::is_comb_continuous`].
pub fn comb_continuity_via_resolution(
    f: &SpaceMap<'_>,
    rx: &Resolution,
    ry: &Resolution,
) -> Result<bool, Error> {
    check_resolutions(f, rx, ry)?;
    let mut projected_opens: Option<HashSet<Subset>> = None;
    let via_resolution = ry.order().open_sets().iter().all(|p| {
        let wanted = f.preimage(ry.project(p));
        if rx.project(&rx.bracket(wanted)) == wanted {
            return true;
        }
        projected_opens
            .get_or_insert_with(|| rx.order().open_sets().iter().map(|o| rx.project(o)).collect())
            .contains(&wanted)
    });
    let direct = f.is_comb_continuous()?;
    if via_resolution != direct {
        return Err(Error::InternalDisagreement(format!(
            "combinatorial continuity: direct {direct}, via resolution {via_resolution}"
        )));
    }
    Ok(direct)
}

/// Definitional full-scan forms of the map predicates.
pub mod reference {
    use super::*;

    /// `A → x` implies `f(A) → f(x)`, over every subset `A`.
    pub fn continuous_at_by_convergence(f: &SpaceMap<'_>, x: usize) -> bool {
        let y = f.apply(x);
        f.domain()
            .ground()
            .subsets()
            .filter(|&a| f.domain().converges(a, x))
            .all(|a| f.codomain().converges(f.image(a), y))
    }

    /// The image of every open set is open.
    pub fn open_map_by_scan(f: &SpaceMap<'_>) -> bool {
        f.domain()
            .open_sets()
            .iter()
            .all(|u| f.codomain().is_open(f.image(u)))
    }

    /// Every `f(M)` is itself a minimal neighborhood of `f(x)`.
    pub fn minimal_images_are_minimal(f: &SpaceMap<'_>) -> bool {
        (0..f.domain().len()).all(|x| {
            f.domain()
                .minimal_neighborhoods(x)
                .iter()
                .all(|m| f.codomain().minimal_neighborhoods(f.apply(x)).contains(f.image(m)))
        })
    }

    /// Every assignment `Top X → Top Y` whatsoever that is continuous and
    /// commutes with the projections.
    pub fn commuting_lifts_brute_force(f: &SpaceMap<'_>, rx: &Resolution, ry: &Resolution) -> Vec<Vec<usize>> {
        let (n, k) = (rx.len(), ry.len());
        let total = (k as u64).checked_pow(n as u32).expect("search space fits in u64");
        let mut found = Vec::new();
        for code in 0..total {
            let mut rest = code;
            let assignment: Vec<usize> = (0..n)
                .map(|_| {
                    let d = (rest % k as u64) as usize;
                    rest /= k as u64;
                    d
                })
                .collect();
            let commutes = (0..n).all(|t| ry.projection(assignment[t]) == f.apply(rx.projection(t)));
            if commutes && rx.order().is_order_preserving(ry.order(), &assignment) {
                found.push(assignment);
            }
        }
        found.sort();
        found
    }
}
