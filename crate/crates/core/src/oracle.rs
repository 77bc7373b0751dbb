//! Exhaustive and sampled verification.
//!
//! Small closure spaces are enumerated as Moore families, maps between them
//! as total assignments, and every registered property is checked on every
//! instance. A correct build reports zero counterexamples.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{reference as cref, FiniteClosureSpace};
use crate::error::Error;
use crate::maps::{self, reference as mref, SpaceMap};
use crate::resolution::{Resolution, TopPoint};
use crate::setcore::{GroundSet, SetFamily, Subset};
use crate::topo::{point_set, FiniteTopology, PointSet};

/// Largest ground set for exhaustive space enumeration.
pub const MAX_EXHAUSTIVE_SPACE_N: usize = 4;
/// Largest ground set on either side of the exhaustive map battery.
pub const MAX_EXHAUSTIVE_MAP_N: usize = 3;
/// Largest number of maps [`enumerate_maps`] will produce.
pub const MAP_ENUMERATION_LIMIT: u64 = 1_000_000;
/// Largest number of candidate lifts searched when checking uniqueness.
pub const LIFT_SEARCH_LIMIT: u128 = 1_000_000;
/// Counterexample records kept per property (all are counted).
pub const RECORDED_COUNTEREXAMPLES: usize = 20;

/// Every closure space on `n` points, in increasing order of the family
/// read as a bit vector over the power set.
pub fn enumerate_moore_families(n: usize) -> Result<impl Iterator<Item = FiniteClosureSpace>, Error> {
    if n > MAX_EXHAUSTIVE_SPACE_N {
        return Err(Error::TooLarge(format!(
            "exhaustive enumeration is limited to {MAX_EXHAUSTIVE_SPACE_N} points, got {n}"
        )));
    }
    let ground = GroundSet::new(n)?;
    let subsets = 1u32 << n;
    let top_bit = 1u64 << (subsets - 1);
    let families = (0..1u64 << subsets).filter(move |&fam| {
        fam & top_bit != 0
            && (0..subsets).all(|a| {
                fam >> a & 1 == 0 || (a + 1..subsets).all(|b| fam >> b & 1 == 0 || fam >> (a & b) & 1 == 1)
            })
    });
    Ok(families.map(move |fam| {
        let family: SetFamily = (0..subsets)
            .filter(|&a| fam >> a & 1 == 1)
            .map(Subset::from_bits)
            .collect();
        FiniteClosureSpace::from_closed_family(ground.clone(), &family)
            .expect("enumerated family is a Moore family")
    }))
}

/// Every total map `x → y`, assignments in lexicographic order.
pub fn enumerate_maps<'a>(
    x: &'a FiniteClosureSpace,
    y: &'a FiniteClosureSpace,
) -> Result<impl Iterator<Item = SpaceMap<'a>>, Error> {
    let total = map_count(x.len(), y.len())?;
    let (n, k) = (x.len(), y.len() as u64);
    Ok((0..total).map(move |code| {
        let mut assignment = vec![0; n];
        let mut rest = code;
        for slot in assignment.iter_mut().rev() {
            *slot = (rest % k) as usize;
            rest /= k;
        }
        SpaceMap::new(x, y, assignment).expect("enumerated assignment is in range")
    }))
}

fn map_count(n: usize, k: usize) -> Result<u64, Error> {
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= MAP_ENUMERATION_LIMIT)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "{k}^{n} maps exceed the enumeration limit of {MAP_ENUMERATION_LIMIT}"
            ))
        })?;
    Ok(total)
}

/// A pseudorandom space: a random family closed under intersection, with the
/// full set adjoined. Deterministic in `seed`.
pub fn random_space(n: usize, seed: u64) -> Result<FiniteClosureSpace, Error> {
    let ground = GroundSet::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = ground.full();
    let count = rng.gen_range(0..=2 * n);
    let mut family: BTreeSet<Subset> = (0..count)
        .map(|_| Subset::from_bits(rng.gen::<u32>()).intersection(full))
        .collect();
    family.insert(full);
    loop {
        let members: Vec<Subset> = family.iter().copied().collect();
        let before = family.len();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                family.insert(a.intersection(b));
            }
        }
        if family.len() == before {
            break;
        }
    }
    let family: SetFamily = family.into_iter().collect();
    FiniteClosureSpace::from_closed_family(ground, &family)
}

/// A space together with everything the checks derive from it.
pub struct SpaceCase {
    pub space: FiniteClosureSpace,
    pub resolution: Resolution,
    /// `Top X` as a closure space, when it fits under the ground-set cap.
    pub top: Option<FiniteClosureSpace>,
    /// The specialization order, for topological spaces.
    pub order: Option<FiniteTopology>,
}

impl SpaceCase {
    pub fn new(space: FiniteClosureSpace) -> Self {
        let resolution = Resolution::resolve(&space);
        let top = resolution.top_space().ok();
        let order = FiniteTopology::specialization_order(&space).ok();
        SpaceCase {
            space,
            resolution,
            top,
            order,
        }
    }
}

/// A map between two enumerated spaces.
pub struct MapCase<'a> {
    pub f: SpaceMap<'a>,
    pub x: &'a SpaceCase,
    pub y: &'a SpaceCase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The property's hypothesis does not hold for this instance.
    NotApplicable,
    /// The check was not run, e.g. a search space over its limit.
    Skipped(String),
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn applies(hypothesis: bool, check: impl FnOnce() -> Outcome) -> Outcome {
    if hypothesis {
        check()
    } else {
        Outcome::NotApplicable
    }
}

// First failing item, or Pass.
fn first_failure<I: IntoIterator<Item = Option<String>>>(items: I) -> Outcome {
    items
        .into_iter()
        .flatten()
        .next()
        .map_or(Outcome::Pass, Outcome::Fail)
}

#[derive(Clone, Copy)]
pub enum Checker {
    Space(fn(&SpaceCase) -> Outcome),
    Map(fn(&MapCase<'_>) -> Outcome),
}

/// One machine-checked property.
#[derive(Clone, Copy)]
pub struct TheoremCase {
    pub id: &'static str,
    pub statement: &'static str,
    pub checker: Checker,
}

impl TheoremCase {
    pub fn is_map_level(&self) -> bool {
        matches!(self.checker, Checker::Map(_))
    }
}

macro_rules! space_case {
    ($id:literal, $statement:literal, $f:expr) => {
        TheoremCase {
            id: $id,
            statement: $statement,
            checker: Checker::Space($f),
        }
    };
}

macro_rules! map_case {
    ($id:literal, $statement:literal, $f:expr) => {
        TheoremCase {
            id: $id,
            statement: $statement,
            checker: Checker::Map($f),
        }
    };
}

/// The full registry, space-level properties first.
pub fn registry() -> Vec<TheoremCase> {
    let mut cases = space_cases();
    cases.extend(map_cases());
    cases
}

fn space_cases() -> Vec<TheoremCase> {
    vec![
        space_case!("closure-axioms", "closure is extensive, monotone, idempotent and equals the intersection of closed supersets", |c| {
            let s = &c.space;
            let g = s.ground();
            first_failure(g.subsets().map(|a| {
                let cl = s.closure(a);
                if cl != cref::closure_by_intersection(s, a) {
                    return Some(format!("table disagrees with intersection at {a}"));
                }
                if !a.is_subset_of(cl) {
                    return Some(format!("not extensive at {a}"));
                }
                if s.closure(cl) != cl {
                    return Some(format!("not idempotent at {a}"));
                }
                g.complement(a)
                    .iter()
                    .find(|&i| !cl.is_subset_of(s.closure(a.with(i))))
                    .map(|i| format!("not monotone from {a} to {}", a.with(i)))
            }))
        }),
        space_case!("closure-interior-duality", "int A = X \\ cl(X \\ A) and cl A = X \\ int(X \\ A), interior taken as {x | A is a neighborhood of x}", |c| {
            let s = &c.space;
            let g = s.ground();
            first_failure(g.subsets().map(|a| {
                let int_a = cref::interior_by_neighborhoods(s, a);
                let int_co = cref::interior_by_neighborhoods(s, g.complement(a));
                (int_a != g.complement(s.closure(g.complement(a))) || s.closure(a) != g.complement(int_co))
                    .then(|| format!("duality fails at {a}"))
            }))
        }),
        space_case!("closure-of-empty-is-least-closed", "cl ∅ is contained in every closed set", |c| {
            let bottom = c.space.closure(Subset::EMPTY);
            first_failure(c.space.closed_sets().iter().map(|k| {
                (!bottom.is_subset_of(k)).then(|| format!("cl ∅ = {bottom} not inside closed {k}"))
            }))
        }),
        space_case!("membership-by-neighborhoods", "x ∈ cl A iff every neighborhood of x meets A", |c| {
            let s = &c.space;
            first_failure((0..s.len()).flat_map(|x| {
                let nbhds = s.neighborhoods(x);
                s.ground().subsets().map(move |a| {
                    let by_nbhd = nbhds.iter().all(|u| u.meets(a));
                    (by_nbhd != s.closure(a).contains(x)).then(|| format!("x = {x}, A = {a}"))
                }).collect::<Vec<_>>()
            }))
        }),
        space_case!("inessential-equivalences", "x ∈ cl ∅ iff x has no neighborhoods iff X is not a neighborhood of x", |c| {
            let s = &c.space;
            first_failure((0..s.len()).map(|x| {
                let nbhds = s.neighborhoods(x);
                let a = s.closure(Subset::EMPTY).contains(x);
                (a != nbhds.is_empty() || a == nbhds.contains(s.full())).then(|| format!("x = {x}"))
            }))
        }),
        space_case!("openness-by-neighborhoods", "U is open iff U is a neighborhood of each of its points", |c| {
            let s = &c.space;
            let nbhds: Vec<SetFamily> = (0..s.len()).map(|x| s.neighborhoods(x)).collect();
            first_failure(s.ground().subsets().map(|u| {
                let by_nbhd = u.iter().all(|x| nbhds[x].contains(u));
                (by_nbhd != s.open_sets().contains(u)).then(|| format!("U = {u}"))
            }))
        }),
        space_case!("neighborhoods-upward-closed", "supersets of neighborhoods are neighborhoods", |c| {
            let s = &c.space;
            first_failure((0..s.len()).flat_map(|x| {
                let nbhds = s.neighborhoods(x);
                nbhds
                    .iter()
                    .flat_map(|u| s.ground().principal_up_family(u).members().to_vec())
                    .filter(|v| !nbhds.contains(*v))
                    .map(|v| Some(format!("x = {x}, V = {v}")))
                    .collect::<Vec<_>>()
            }))
        }),
        space_case!("neighborhood-contains-open", "U is a neighborhood of x iff some open W has x ∈ W ⊆ U", |c| {
            let s = &c.space;
            first_failure((0..s.len()).flat_map(|x| {
                let nbhds = s.neighborhoods(x);
                s.ground().subsets().map(move |u| {
                    let by_open = s.open_sets().iter().any(|w| w.contains(x) && w.is_subset_of(u));
                    (by_open != nbhds.contains(u)).then(|| format!("x = {x}, U = {u}"))
                }).collect::<Vec<_>>()
            }))
        }),
        space_case!("topological-characterizations", "neighborhood families are all filters iff the open sets form a topology", |c| {
            let s = &c.space;
            let opens = s.open_sets();
            let open_topology = opens.contains(s.full())
                && opens.iter().all(|a| opens.iter().all(|b| opens.contains(a.intersection(b))));
            let scan = cref::is_topological_by_scan(s);
            verdict(s.is_topological() == scan && scan == open_topology, || {
                format!("optimized {}, scan {scan}, opens {open_topology}", s.is_topological())
            })
        }),
        space_case!("topological-iff-union-convergence", "topological iff no inessential points and A, B → x implies A ∪ B → x", |c| {
            let s = &c.space;
            let unions = (0..s.len()).all(|x| {
                let cx = s.convergence_complex(x);
                let closed = cx.iter().all(|a| cx.iter().all(|b| cx.contains(a.union(b))));
                closed
            });
            let criterion = s.closure(Subset::EMPTY).is_empty() && unions;
            verdict(criterion == s.is_topological(), || format!("criterion {criterion}"))
        }),
        space_case!("neighborhood-contains-minimal", "every neighborhood contains a minimal neighborhood", |c| {
            let s = &c.space;
            first_failure((0..s.len()).flat_map(|x| {
                let mins = s.minimal_neighborhoods(x);
                s.neighborhoods(x)
                    .iter()
                    .filter(|&u| !mins.iter().any(|m| m.is_subset_of(u)))
                    .map(|u| Some(format!("x = {x}, U = {u}")))
                    .collect::<Vec<_>>()
            }))
        }),
        space_case!("neighborhoods-generated-by-minimal", "the neighborhoods of x are the supersets of its minimal neighborhoods", |c| {
            let s = &c.space;
            first_failure((0..s.len()).map(|x| {
                let generated: SetFamily = s
                    .minimal_neighborhoods(x)
                    .iter()
                    .flat_map(|m| s.ground().principal_up_family(m).members().to_vec())
                    .collect();
                (generated != s.neighborhoods(x)).then(|| format!("x = {x}"))
            }))
        }),
        space_case!("minimal-neighborhoods-open", "every minimal neighborhood is open", |c| {
            let s = &c.space;
            first_failure((0..s.len()).flat_map(|x| {
                s.minimal_neighborhoods(x)
                    .iter()
                    .filter(|&m| !s.is_open(m))
                    .map(|m| Some(format!("x = {x}, M = {m}")))
                    .collect::<Vec<_>>()
            }))
        }),
        space_case!("minimal-neighborhoods-scan-agrees", "minimal open sets around x equal the inclusion-minimal members of the full neighborhood scan", |c| {
            let s = &c.space;
            first_failure((0..s.len()).map(|x| {
                (s.minimal_neighborhoods(x) != &cref::minimal_neighborhoods_by_scan(s, x)).then(|| format!("x = {x}"))
            }))
        }),
        space_case!("convergence-complex-closure", "C(x) is downward closed, A → x implies A ∪ {x} → x, and C(x) = {A | A → x}", |c| {
            let s = &c.space;
            first_failure((0..s.len()).map(|x| {
                let cx = s.convergence_complex(x);
                let by_def: SetFamily = s.ground().subsets().filter(|&a| s.converges(a, x)).collect();
                if cx != by_def {
                    return Some(format!("x = {x}: complex differs from convergence"));
                }
                let bad = cx
                    .iter()
                    .find(|&a| !cx.contains(a.with(x)) || a.subsets().any(|b| !cx.contains(b)))
                    .map(|a| format!("x = {x}, A = {a}"));
                bad
            }))
        }),
        space_case!("convergence-essential-equivalences", "x essential iff ∅ → x iff {x} → x iff C(x) is nonempty", |c| {
            let s = &c.space;
            first_failure((0..s.len()).map(|x| {
                let e = s.is_essential(x);
                let all = [
                    s.converges(Subset::EMPTY, x),
                    s.converges(Subset::singleton(x), x),
                    !s.convergence_complex(x).is_empty(),
                ];
                all.iter().any(|&v| v != e).then(|| format!("x = {x}: essential {e}, {all:?}"))
            }))
        }),
        space_case!("convergence-complex-is-simplicial", "for essential x, C(x) is an abstract simplicial complex containing ∅ and {x}", |c| {
            let s = &c.space;
            first_failure((0..s.len()).filter(|&x| s.is_essential(x)).map(|x| {
                let cx = s.convergence_complex(x);
                let ok = cx.contains(Subset::EMPTY)
                    && cx.contains(Subset::singleton(x))
                    && cx.iter().all(|a| a.iter().all(|i| cx.contains(a.without(i))));
                (!ok).then(|| format!("x = {x}"))
            }))
        }),
        space_case!("minimal-neighborhood-exchange", "for M ∈ M(x) and y ∈ M: M ∈ M(y) or M \\ {x} is a neighborhood of y", |c| {
            let s = &c.space;
            first_failure((0..s.len()).flat_map(|x| {
                s.minimal_neighborhoods(x)
                    .iter()
                    .flat_map(|m| m.iter().map(move |y| (m, y)))
                    .filter(|&(m, y)| {
                        !s.minimal_neighborhoods(y).contains(m) && !s.is_neighborhood(m.without(x), y)
                    })
                    .map(|(m, y)| Some(format!("x = {x}, M = {m}, y = {y}")))
                    .collect::<Vec<_>>()
            }))
        }),
        space_case!("regular-point-characterizations", "for essential x: one minimal neighborhood iff neighborhoods closed under meets iff converging sets closed under unions", |c| {
            let s = &c.space;
            first_failure((0..s.len()).filter(|&x| s.is_essential(x)).map(|x| {
                let regular = s.minimal_neighborhoods(x).len() == 1;
                let u = s.neighborhoods(x);
                let meets = u.iter().all(|a| u.iter().all(|b| u.contains(a.intersection(b))));
                let cx = s.convergence_complex(x);
                let joins = cx.iter().all(|a| cx.iter().all(|b| s.converges(a.union(b), x)));
                (regular != meets || meets != joins)
                    .then(|| format!("x = {x}: regular {regular}, meets {meets}, unions {joins}"))
            }))
        }),
        space_case!("specialization-round-trip", "topology ↔ quasiorder round trips are identities, on the space and on its resolution", |c| {
            if let Some(order) = &c.order {
                match order.as_closure_space_on(c.space.ground().clone()) {
                    Ok(back) if back == c.space => {}
                    Ok(_) => return Outcome::Fail("space does not round-trip".into()),
                    Err(e) => return Outcome::Fail(e.to_string()),
                }
            }
            let Some(top) = &c.top else {
                return Outcome::Skipped("resolution exceeds the ground-set cap".into());
            };
            match FiniteTopology::specialization_order(top) {
                Ok(o) if &o == c.resolution.order() => Outcome::Pass,
                Ok(_) => Outcome::Fail("resolution order does not round-trip".into()),
                Err(e) => Outcome::Fail(format!("resolution space: {e}")),
            }
        }),
        space_case!("topological-minimal-neighborhood-is-up-set", "in a topological space M(t) = {U_t} and C(t) is the power set of U_t", |c| {
            let Some(order) = &c.order else { return Outcome::NotApplicable };
            let s = &c.space;
            first_failure((0..s.len()).map(|t| {
                let up = Subset::from_indices(order.up_set(t).ones());
                let complex: SetFamily = up.subsets().collect();
                (s.minimal_neighborhoods(t).members() != [up] || s.convergence_complex(t) != complex)
                    .then(|| format!("t = {t}"))
            }))
        }),
        space_case!("t0-iff-antisymmetric", "a finite topology is T0 iff its quasiorder is antisymmetric", |c| {
            let Some(top) = &c.top else {
                return Outcome::Skipped("resolution exceeds the ground-set cap".into());
            };
            let mut checks = vec![(c.resolution.order().clone(), top.clone())];
            if let Some(order) = &c.order {
                checks.push((order.clone(), c.space.clone()));
            }
            first_failure(checks.into_iter().map(|(order, space)| {
                let families: Vec<SetFamily> = (0..space.len()).map(|t| space.neighborhoods(t)).collect();
                let distinct = (0..families.len()).all(|a| (a + 1..families.len()).all(|b| families[a] != families[b]));
                (distinct != order.is_t0()).then(|| format!("T0 by neighborhoods {distinct}"))
            }))
        }),
        space_case!("resolution-structure", "Top X consists of all (x, M), ordered by reverse inclusion of M, with π onto the essential points", |c| {
            let s = &c.space;
            let r = &c.resolution;
            let expected: Vec<TopPoint> = (0..s.len())
                .flat_map(|x| s.minimal_neighborhoods(x).iter().map(move |m| TopPoint { x, m }))
                .collect();
            if r.points() != expected.as_slice() {
                return Outcome::Fail("point list".into());
            }
            let n = r.len();
            for i in 0..n {
                for j in 0..n {
                    if r.order().leq(i, j) != r.point(j).m.is_subset_of(r.point(i).m) {
                        return Outcome::Fail(format!("order at ({i}, {j})"));
                    }
                }
                if r.order().up_set(i) != &r.bracket(r.point(i).m) {
                    return Outcome::Fail(format!("U_t differs from [M] at {i}"));
                }
            }
            let image = r.project(&point_set(n, 0..n));
            verdict(image == s.essential_points() && image == r.essential(), || "image of π".into())
        }),
        space_case!("interior-via-bracket", "int A = π([A]) for every A", |c| {
            let s = &c.space;
            first_failure(s.ground().subsets().map(|a| {
                (c.resolution.interior_via_resolution(a) != s.interior(a)).then(|| format!("A = {a}"))
            }))
        }),
        space_case!("projection-of-up-set", "π(U_xM) = π([M]) = M", |c| {
            let r = &c.resolution;
            first_failure((0..r.len()).map(|t| {
                let m = r.point(t).m;
                (r.project(r.order().up_set(t)) != m || r.project(&r.bracket(m)) != m)
                    .then(|| format!("t = {t}"))
            }))
        }),
        space_case!("projection-continuous-and-open", "π: Top X → X is continuous and open", |c| {
            let Some(top) = &c.top else {
                return Outcome::Skipped("resolution exceeds the ground-set cap".into());
            };
            let pi = c.resolution.projection_map(top).expect("projection fits");
            let cont = pi.is_continuous();
            let open = pi.is_open_map() && mref::open_map_by_scan(&pi);
            verdict(cont && open, || format!("continuous {cont}, open {open}"))
        }),
        space_case!("projection-homeomorphism-iff-topological", "π is a homeomorphism exactly when X is topological", |c| {
            let Some(top) = &c.top else {
                return Outcome::Skipped("resolution exceeds the ground-set cap".into());
            };
            let pi = c.resolution.projection_map(top).expect("projection fits");
            let homeo = pi.is_continuous()
                && pi.inverse().is_some_and(|inv| inv.is_continuous() && inv.is_comb_continuous() == Ok(true))
                && pi.is_comb_continuous() == Ok(true);
            verdict(homeo == c.space.is_topological(), || format!("homeomorphism {homeo}"))
        }),
        space_case!("bracket-lattice", "[·] is monotone, [A ∩ B] = [A] ∩ [B] and [X] = Top X", |c| {
            let s = &c.space;
            let r = &c.resolution;
            if r.bracket(s.full()) != point_set(r.len(), 0..r.len()) {
                return Outcome::Fail("[X]".into());
            }
            first_failure(s.ground().subsets().flat_map(|a| {
                s.ground().subsets().map(move |b| {
                    let mut meet = r.bracket(a);
                    meet.intersect_with(&r.bracket(b));
                    let mono = !a.is_subset_of(b) || r.bracket(a).is_subset(&r.bracket(b));
                    (!mono || r.bracket(a.intersection(b)) != meet).then(|| format!("A = {a}, B = {b}"))
                }).collect::<Vec<_>>()
            }))
        }),
        space_case!("bracket-basis", "each [A] is open, the brackets of minimal neighborhoods and of all subsets are bases, and they generate the neighborhood filters", |c| {
            let s = &c.space;
            let r = &c.resolution;
            let brackets: Vec<PointSet> = s.ground().subsets().map(|a| r.bracket(a)).collect();
            if let Some(b) = brackets.iter().find(|b| !r.order().is_open(b)) {
                return Outcome::Fail(format!("[A] = {b} not open"));
            }
            let minimal: Vec<PointSet> = s.all_minimal_neighborhoods().iter().map(|m| r.bracket(m)).collect();
            let opens = r.order().open_sets();
            for o in &opens {
                for basis in [&minimal, &brackets] {
                    let mut union = PointSet::with_capacity(r.len());
                    for b in basis.iter().filter(|b| b.is_subset(o)) {
                        union.union_with(b);
                    }
                    if &union != o {
                        return Outcome::Fail(format!("open {o} is not a union of basis sets"));
                    }
                }
            }
            for t in 0..r.len() {
                for o in &opens {
                    // open supersets of U_t are exactly those holding some [A] ∋ t
                    let via_bracket = brackets.iter().any(|b| b.contains(t) && b.is_subset(o));
                    if via_bracket != r.order().up_set(t).is_subset(o) {
                        return Outcome::Fail(format!("neighborhood filter at {t}"));
                    }
                }
            }
            Outcome::Pass
        }),
        space_case!("opens-are-projected-brackets", "W is open iff W = π([A]) for some A", |c| {
            let s = &c.space;
            let r = &c.resolution;
            let projected: SetFamily = s.ground().subsets().map(|a| r.project(&r.bracket(a))).collect();
            verdict(&projected == s.open_sets(), || format!("projected brackets {projected:?}"))
        }),
        space_case!("opens-are-projected-opens", "the open sets of X are exactly the π-images of open sets of Top X", |c| {
            let r = &c.resolution;
            let projected: SetFamily = r.order().open_sets().iter().map(|o| r.project(o)).collect();
            verdict(&projected == c.space.open_sets(), || format!("projected opens {projected:?}"))
        }),
        space_case!("reconstruction-from-resolution", "the union-closed family {π(O)} rebuilds X, with inessential points X \\ π(Top X)", |c| {
            let r = &c.resolution;
            let s = &c.space;
            let family: SetFamily = r.order().open_sets().iter().map(|o| r.project(o)).collect();
            match FiniteClosureSpace::from_open_family(s.ground().clone(), &family) {
                Ok(rebuilt) => {
                    let image = r.project(&point_set(r.len(), 0..r.len()));
                    verdict(rebuilt == *s && rebuilt.closure(Subset::EMPTY) == s.ground().complement(image), || {
                        "rebuilt space differs".into()
                    })
                }
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }),
        space_case!("fiber-recovers-minimal-neighborhoods", "M(x) = {π(U_t) | t ∈ π⁻¹(x)}", |c| {
            let r = &c.resolution;
            first_failure((0..c.space.len()).map(|x| {
                let recovered: SetFamily = r.fiber(x).ones().map(|t| r.project(r.order().up_set(t))).collect();
                (&recovered != c.space.minimal_neighborhoods(x)).then(|| format!("x = {x}"))
            }))
        }),
        space_case!("convergence-via-fibers", "A → x iff A ⊆ π(U_t) for some t over x", |c| {
            let s = &c.space;
            let r = &c.resolution;
            first_failure((0..s.len()).flat_map(|x| {
                let tops: Vec<Subset> = r.fiber(x).ones().map(|t| r.project(r.order().up_set(t))).collect();
                s.ground().subsets().map(move |a| {
                    let via = tops.iter().any(|&m| a.is_subset_of(m));
                    (via != s.converges(a, x)).then(|| format!("x = {x}, A = {a}"))
                }).collect::<Vec<_>>()
            }))
        }),
        space_case!("projection-is-regular", "π: Top X → X is regular", |c| {
            let Some(top) = &c.top else {
                return Outcome::Skipped("resolution exceeds the ground-set cap".into());
            };
            let pi = c.resolution.projection_map(top).expect("projection fits");
            verdict(pi.is_regular() && pi.regular_witness().is_regular(), || "π not regular".into())
        }),
        space_case!("minimal-up-family-inside-neighborhoods", "for M ∈ M(x) the supersets of M are all neighborhoods of x", |c| {
            let s = &c.space;
            first_failure((0..s.len()).flat_map(|x| {
                s.minimal_neighborhoods(x)
                    .iter()
                    .filter(|&m| s.ground().principal_up_family(m).iter().any(|u| !s.is_neighborhood(u, x)))
                    .map(|m| Some(format!("x = {x}, M = {m}")))
                    .collect::<Vec<_>>()
            }))
        }),
        space_case!("identity-lifts-to-identity", "the identity is continuous, open and regular, and lifts to the identity of Top X", |c| {
            let id = SpaceMap::identity(&c.space);
            let r = &c.resolution;
            match maps::lift(&id, r, r) {
                Ok(big) => verdict(
                    id.is_open_map() && big.assignment().iter().enumerate().all(|(i, &j)| i == j),
                    || "lift of identity".into(),
                ),
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }),
    ]
}

fn map_cases() -> Vec<TheoremCase> {
    vec![
        map_case!("continuity-by-convergence", "f is continuous at x iff A → x implies f(A) → f(x)", |m| {
            let f = &m.f;
            first_failure((0..f.domain().len()).map(|x| {
                (f.is_continuous_at(x) != mref::continuous_at_by_convergence(f, x)).then(|| format!("x = {x}"))
            }))
        }),
        map_case!("comb-continuity-conditions", "neighborhood preimages, f(U) ⊆ V, open preimages, closed preimages and f(cl A) ⊆ cl f(A) agree", |m| {
            match m.f.is_comb_continuous() {
                Ok(v) => verdict(v == m.f.comb_failures().is_empty(), || "pointwise failures disagree".into()),
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }),
        map_case!("open-map-by-minimal-neighborhoods", "f is open iff every f(M) is open", |m| {
            let fast = m.f.is_open_map();
            let scan = mref::open_map_by_scan(&m.f);
            verdict(fast == scan, || format!("minimal {fast}, scan {scan}"))
        }),
        map_case!("continuous-open-iff-minimal-images", "f is continuous and open iff f(M) ∈ M(f(x)) for all x and M", |m| {
            let lhs = m.f.is_continuous() && m.f.is_open_map();
            let rhs = mref::minimal_images_are_minimal(&m.f);
            verdict(lhs == rhs, || format!("continuous and open {lhs}, minimal images {rhs}"))
        }),
        map_case!("composition-preserves-continuity", "continuity of f at x and of g at f(x) gives continuity of g ∘ f at x", |m| {
            let f = &m.f;
            let Ok(backs) = enumerate_maps(&m.y.space, &m.x.space) else {
                return Outcome::Skipped("too many maps back".into());
            };
            first_failure(backs.flat_map(|g| {
                let gf = maps::compose(&g, f).expect("spaces match");
                (0..f.domain().len())
                    .filter(|&x| f.is_continuous_at(x) && g.is_continuous_at(f.apply(x)) && !gf.is_continuous_at(x))
                    .map(|x| Some(format!("g = {:?}, x = {x}", g.assignment())))
                    .collect::<Vec<_>>()
            }))
        }),
        map_case!("continuity-via-resolution", "f is continuous iff f ∘ π is continuous iff each f(π(U_t)) lies in some π(U_s) over f(x)", |m| {
            let f = &m.f;
            if let Err(e) = maps::continuity_via_resolution(f, &m.x.resolution, &m.y.resolution) {
                return Outcome::Fail(e.to_string());
            }
            let Some(top) = &m.x.top else {
                return Outcome::Skipped("resolution exceeds the ground-set cap".into());
            };
            let pi = m.x.resolution.projection_map(top).expect("projection fits");
            let f_pi = maps::compose(f, &pi).expect("spaces match");
            verdict(f_pi.is_continuous() == f.is_continuous(), || "f ∘ π".into())
        }),
        map_case!("comb-continuity-via-resolution", "f is combinatorially continuous iff every f⁻¹(π(P)) is π(O) for some open O", |m| {
            match maps::comb_continuity_via_resolution(&m.f, &m.x.resolution, &m.y.resolution) {
                Ok(_) => Outcome::Pass,
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }),
        map_case!("regularity-paths-agree", "the direct computation of ↑f(M) ∩ U(f(x)) and the minimal-neighborhood test agree at every point", |m| {
            let f = &m.f;
            let w = f.regular_witness();
            first_failure((0..f.domain().len()).map(|x| {
                (w.is_regular_at(x) != f.is_regular_at(x)).then(|| format!("x = {x}"))
            }))
        }),
        map_case!("regular-witness-uniqueness", "a selected K contains f(M) and no other minimal neighborhood of f(x) does", |m| {
            let f = &m.f;
            first_failure(f.regular_witness().entries().iter().map(|e| {
                let k = e.outcome.clone().ok()?;
                let fm = f.image(e.m);
                let others = f
                    .codomain()
                    .minimal_neighborhoods(f.apply(e.x))
                    .iter()
                    .filter(|&n| n != k && fm.is_subset_of(n))
                    .count();
                (!fm.is_subset_of(k) || others > 0).then(|| format!("x = {}, M = {}", e.x, e.m))
            }))
        }),
        map_case!("regular-implies-continuous", "regularity at x implies continuity at x", |m| {
            let f = &m.f;
            first_failure((0..f.domain().len()).map(|x| {
                (f.is_regular_at(x) && !f.is_continuous_at(x)).then(|| format!("x = {x}"))
            }))
        }),
        map_case!("continuous-into-regular-point-is-regular", "continuity at x with f(x) a regular point gives regularity at x", |m| {
            let f = &m.f;
            first_failure((0..f.domain().len()).map(|x| {
                let target_regular = f.codomain().minimal_neighborhoods(f.apply(x)).len() == 1;
                (target_regular && f.is_continuous_at(x) && !f.is_regular_at(x)).then(|| format!("x = {x}"))
            }))
        }),
        map_case!("regular-iff-continuous-into-topological", "into a topological space, regular iff continuous", |m| {
            applies(m.y.space.is_topological(), || {
                verdict(m.f.is_regular() == m.f.is_continuous(), || "regular and continuous differ".into())
            })
        }),
        map_case!("continuous-open-implies-regular", "continuous open maps are regular", |m| {
            applies(m.f.is_continuous() && m.f.is_open_map(), || verdict(m.f.is_regular(), || "not regular".into()))
        }),
        map_case!("commuting-lift-forces-continuity", "if some continuous F commutes with the projections over f, then f is continuous", |m| {
            match maps::continuous_commuting_lifts(&m.f, &m.x.resolution, &m.y.resolution, LIFT_SEARCH_LIMIT) {
                Ok(Some(lifts)) => applies(!lifts.is_empty(), || verdict(m.f.is_continuous(), || "f not continuous".into())),
                Ok(None) => Outcome::Skipped("lift search space over the limit".into()),
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }),
        map_case!("lift-exists-and-commutes", "a regular f lifts to a continuous F with π ∘ F = f ∘ π", |m| {
            applies(m.f.is_regular(), || match maps::lift(&m.f, &m.x.resolution, &m.y.resolution) {
                Ok(big) => verdict(big.is_continuous() && big.commutes_with(&m.f), || "lift not continuous or not commuting".into()),
                Err(e) => Outcome::Fail(e.to_string()),
            })
        }),
        map_case!("lift-is-unique", "the lift of a regular f is the only continuous map commuting with the projections", |m| {
            applies(m.f.is_regular(), || {
                let (rx, ry) = (&m.x.resolution, &m.y.resolution);
                let lifted = match maps::lift(&m.f, rx, ry) {
                    Ok(big) => big,
                    Err(e) => return Outcome::Fail(e.to_string()),
                };
                match maps::continuous_commuting_lifts(&m.f, rx, ry, LIFT_SEARCH_LIMIT) {
                    Ok(Some(all)) => verdict(all.len() == 1 && all[0] == lifted, || format!("{} continuous commuting maps", all.len())),
                    Ok(None) => Outcome::Skipped("lift search space over the limit".into()),
                    Err(e) => Outcome::Fail(e.to_string()),
                }
            })
        }),
        map_case!("order-maps-continuity", "between topological spaces, order preserving iff continuous iff combinatorially continuous; out of a topological space, continuity at t iff f(U_t) → f(t)", |m| {
            let f = &m.f;
            let Some(ox) = &m.x.order else { return Outcome::NotApplicable };
            let lemma = (0..f.domain().len()).all(|t| {
                let up = Subset::from_indices(ox.up_set(t).ones());
                f.is_continuous_at(t) == f.codomain().converges(f.image(up), f.apply(t))
            });
            if !lemma {
                return Outcome::Fail("continuity at t differs from f(U_t) → f(t)".into());
            }
            let Some(oy) = &m.y.order else { return Outcome::Pass };
            let monotone = ox.is_order_preserving(oy, f.assignment());
            let comb = f.is_comb_continuous();
            verdict(monotone == f.is_continuous() && comb == Ok(monotone), || {
                format!("monotone {monotone}, continuous {}, comb {comb:?}", f.is_continuous())
            })
        }),
        map_case!("isomorphism-lifts-to-homeomorphism", "an isomorphism sends minimal neighborhoods to minimal neighborhoods and induces a homeomorphism of resolutions", |m| {
            let f = &m.f;
            let Some(inv) = f.inverse() else { return Outcome::NotApplicable };
            applies(f.is_continuous() && inv.is_continuous(), || {
                if !mref::minimal_images_are_minimal(f) {
                    return Outcome::Fail("some f(M) is not minimal".into());
                }
                let (rx, ry) = (&m.x.resolution, &m.y.resolution);
                match (f.induced_resolution_map(rx, ry), inv.induced_resolution_map(ry, rx)) {
                    (Some(big), Some(back)) => {
                        let inverse = (0..rx.len()).all(|t| back.apply(big.apply(t)) == t)
                            && (0..ry.len()).all(|s| big.apply(back.apply(s)) == s);
                        verdict(inverse && big.is_continuous() && back.is_continuous(), || {
                            "induced map is not a homeomorphism".into()
                        })
                    }
                    _ => Outcome::Fail("induced map not well defined".into()),
                }
            })
        }),
    ]
}

/// Which instances [`run_suite`] covers.
#[derive(Clone, Debug, Default)]
pub struct SuiteScope {
    /// Exhaustively enumerated spaces (space-level properties), by size.
    pub space_sizes: Vec<usize>,
    /// Sizes whose spaces enter the map battery; every ordered pair of such
    /// spaces contributes all maps between them.
    pub map_sizes: Vec<usize>,
    /// Random spaces on `n` points for seeds `0..seeds` (space-level).
    pub sample: Option<(usize, u64)>,
    /// Worker threads; `None` uses the default pool.
    pub jobs: Option<usize>,
}

impl SuiteScope {
    /// All spaces and all maps on at most `n` points.
    pub fn exhaustive(n: usize) -> Self {
        SuiteScope {
            space_sizes: (0..=n).collect(),
            map_sizes: (0..=n).collect(),
            ..Default::default()
        }
    }

    /// Space-level properties only, on spaces of exactly `n` points.
    pub fn spaces_only(n: usize) -> Self {
        SuiteScope {
            space_sizes: vec![n],
            ..Default::default()
        }
    }

    pub fn sampled(n: usize, seeds: u64) -> Self {
        SuiteScope {
            sample: Some((n, seeds)),
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if let Some(&n) = self.space_sizes.iter().find(|&&n| n > MAX_EXHAUSTIVE_SPACE_N) {
            return Err(Error::TooLarge(format!(
                "exhaustive space enumeration is limited to {MAX_EXHAUSTIVE_SPACE_N} points, got {n}"
            )));
        }
        if let Some(&n) = self.map_sizes.iter().find(|&&n| n > MAX_EXHAUSTIVE_MAP_N) {
            return Err(Error::TooLarge(format!(
                "the exhaustive map battery is limited to {MAX_EXHAUSTIVE_MAP_N} points, got {n}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceRecord {
    pub n: usize,
    pub closed_sets: Vec<Vec<usize>>,
}

impl SpaceRecord {
    pub fn of(space: &FiniteClosureSpace) -> Self {
        SpaceRecord {
            n: space.len(),
            closed_sets: space.closed_sets().to_index_lists(),
        }
    }
}

/// Enough to replay a failing instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub domain: SpaceRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codomain: Option<SpaceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub instance: usize,
    pub detail: String,
    pub record: InstanceRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub instances: usize,
    pub not_applicable: usize,
    pub skipped: usize,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Counterexample>,
    pub skip_reasons: BTreeSet<String>,
    #[serde(rename = "seconds", serialize_with = "as_seconds")]
    pub time: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CaseReport {
    fn new(case: &TheoremCase) -> Self {
        CaseReport {
            id: case.id,
            statement: case.statement,
            instances: 0,
            not_applicable: 0,
            skipped: 0,
            counterexample_count: 0,
            counterexamples: Vec::new(),
            skip_reasons: BTreeSet::new(),
            time: Duration::ZERO,
        }
    }

    fn record(&mut self, instance: usize, outcome: Outcome, elapsed: Duration, replay: impl FnOnce() -> InstanceRecord) {
        self.instances += 1;
        self.time += elapsed;
        match outcome {
            Outcome::Pass => {}
            Outcome::NotApplicable => self.not_applicable += 1,
            Outcome::Skipped(reason) => {
                self.skipped += 1;
                self.skip_reasons.insert(reason);
            }
            Outcome::Fail(detail) => {
                self.counterexample_count += 1;
                if self.counterexamples.len() < RECORDED_COUNTEREXAMPLES {
                    self.counterexamples.push(Counterexample {
                        instance,
                        detail,
                        record: replay(),
                    });
                }
            }
        }
    }

    fn merge(&mut self, other: CaseReport) {
        self.instances += other.instances;
        self.not_applicable += other.not_applicable;
        self.skipped += other.skipped;
        self.counterexample_count += other.counterexample_count;
        let room = RECORDED_COUNTEREXAMPLES.saturating_sub(self.counterexamples.len());
        self.counterexamples.extend(other.counterexamples.into_iter().take(room));
        self.skip_reasons.extend(other.skip_reasons);
        self.time += other.time;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub spaces: usize,
    pub sampled_spaces: usize,
    pub maps: usize,
    pub cases: Vec<CaseReport>,
    #[serde(rename = "seconds", serialize_with = "as_seconds")]
    pub wall: Duration,
}

impl SuiteReport {
    pub fn counterexample_count(&self) -> usize {
        self.cases.iter().map(|c| c.counterexample_count).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.counterexample_count() == 0
    }

    pub fn case(&self, id: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.id == id)
    }
}

/// Runs every registered property over every instance in `scope`. The
/// report lists properties in registry order; counterexamples are ordered by
/// instance index regardless of parallelism.
pub fn run_suite(scope: &SuiteScope) -> Result<SuiteReport, Error> {
    scope.validate()?;
    match scope.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::TooLarge(format!("cannot start {jobs} workers: {e}")))?
            .install(|| run_suite_inner(scope)),
        None => run_suite_inner(scope),
    }
}

fn run_suite_inner(scope: &SuiteScope) -> Result<SuiteReport, Error> {
    let started = Instant::now();
    let registry = registry();
    let space_checks: Vec<&TheoremCase> = registry.iter().filter(|c| !c.is_map_level()).collect();
    let map_checks: Vec<&TheoremCase> = registry.iter().filter(|c| c.is_map_level()).collect();

    let mut exhaustive = Vec::new();
    for &n in &scope.space_sizes {
        exhaustive.extend(enumerate_moore_families(n)?);
    }
    let mut sampled = Vec::new();
    if let Some((n, seeds)) = scope.sample {
        for seed in 0..seeds {
            sampled.push(random_space(n, seed)?);
        }
    }
    let space_count = exhaustive.len();
    let sampled_count = sampled.len();
    let space_instances: Vec<FiniteClosureSpace> = exhaustive.into_iter().chain(sampled).collect();

    let space_partials: Vec<Vec<CaseReport>> = space_instances
        .par_iter()
        .enumerate()
        .map(|(idx, space)| {
            let case = SpaceCase::new(space.clone());
            space_checks
                .iter()
                .map(|tc| {
                    let Checker::Space(check) = tc.checker else { unreachable!() };
                    let mut report = CaseReport::new(tc);
                    let t0 = Instant::now();
                    let outcome = check(&case);
                    report.record(idx, outcome, t0.elapsed(), || InstanceRecord {
                        domain: SpaceRecord::of(space),
                        codomain: None,
                        assignment: None,
                    });
                    report
                })
                .collect()
        })
        .collect();

    let mut battery = Vec::new();
    for &n in &scope.map_sizes {
        battery.extend(enumerate_moore_families(n)?);
    }
    let battery: Vec<SpaceCase> = battery.into_par_iter().map(SpaceCase::new).collect();
    let pairs: Vec<(usize, usize)> = (0..battery.len())
        .flat_map(|i| (0..battery.len()).map(move |j| (i, j)))
        .collect();
    let mut offsets = Vec::with_capacity(pairs.len());
    let mut map_total = 0usize;
    for &(i, j) in &pairs {
        offsets.push(map_total);
        map_total += map_count(battery[i].space.len(), battery[j].space.len())? as usize;
    }

    let map_partials: Vec<Vec<CaseReport>> = pairs
        .par_iter()
        .zip(offsets.par_iter())
        .map(|(&(i, j), &offset)| {
            let (x, y) = (&battery[i], &battery[j]);
            let mut reports: Vec<CaseReport> = map_checks.iter().map(|tc| CaseReport::new(tc)).collect();
            let maps = enumerate_maps(&x.space, &y.space).expect("counted above");
            for (k, f) in maps.enumerate() {
                let case = MapCase { f, x, y };
                for (tc, report) in map_checks.iter().zip(reports.iter_mut()) {
                    let Checker::Map(check) = tc.checker else { unreachable!() };
                    let t0 = Instant::now();
                    let outcome = check(&case);
                    report.record(offset + k, outcome, t0.elapsed(), || InstanceRecord {
                        domain: SpaceRecord::of(&x.space),
                        codomain: Some(SpaceRecord::of(&y.space)),
                        assignment: Some(case.f.assignment().to_vec()),
                    });
                }
            }
            reports
        })
        .collect();

    let mut cases: Vec<CaseReport> = registry.iter().map(CaseReport::new).collect();
    let space_slots: Vec<usize> = (0..registry.len()).filter(|&k| !registry[k].is_map_level()).collect();
    let map_slots: Vec<usize> = (0..registry.len()).filter(|&k| registry[k].is_map_level()).collect();
    for partial in space_partials {
        for (slot, report) in space_slots.iter().zip(partial) {
            cases[*slot].merge(report);
        }
    }
    for partial in map_partials {
        for (slot, report) in map_slots.iter().zip(partial) {
            cases[*slot].merge(report);
        }
    }

    Ok(SuiteReport {
        spaces: space_count,
        sampled_spaces: sampled_count,
        maps: map_total,
        cases,
        wall: started.elapsed(),
    })
}

/// Ids of every registered property.
pub fn registered_ids() -> HashSet<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_moore_families(0).unwrap().count(), 1);
        assert_eq!(enumerate_moore_families(1).unwrap().count(), 2);
        assert_eq!(enumerate_moore_families(2).unwrap().count(), 7);
        assert!(matches!(enumerate_moore_families(5), Err(Error::TooLarge(_))));
    }

    #[test]
    fn enumeration_order_is_ascending() {
        let fams: Vec<u64> = enumerate_moore_families(2)
            .unwrap()
            .map(|s| s.closed_sets().iter().map(|a| 1u64 << a.bits()).sum())
            .collect();
        assert!(fams.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn map_counts() {
        let g = |n| enumerate_moore_families(n).unwrap().next().unwrap();
        let (one, two, three) = (g(1), g(2), g(3));
        assert_eq!(enumerate_maps(&one, &three).unwrap().count(), 3);
        assert_eq!(enumerate_maps(&three, &two).unwrap().count(), 8);
        assert_eq!(enumerate_maps(&three, &three).unwrap().count(), 27);
        let first: Vec<Vec<usize>> = enumerate_maps(&two, &two)
            .unwrap()
            .map(|f| f.assignment().to_vec())
            .collect();
        assert_eq!(first, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn map_enumeration_limit() {
        let big = random_space(16, 3).unwrap();
        assert!(matches!(enumerate_maps(&big, &big), Err(Error::TooLarge(_))));
    }

    #[test]
    fn random_space_is_deterministic() {
        let a = random_space(5, 1).unwrap();
        assert_eq!(a, random_space(5, 1).unwrap());
        assert_eq!(a.len(), 5);
        let empty = random_space(0, 9).unwrap();
        assert_eq!(empty.len(), 0);
        assert_eq!(empty.closed_sets().len(), 1);
    }

    #[test]
    fn registry_ids_are_unique() {
        let reg = registry();
        assert_eq!(registered_ids().len(), reg.len());
    }

    #[test]
    fn tiny_suite_is_clean() {
        let report = run_suite(&SuiteScope::exhaustive(1)).unwrap();
        assert_eq!(report.spaces, 3);
        // 3 spaces: maps between sizes 0,1,1 → 1 + 1 + 1 + (0 + 1 + 1) * 2
        assert_eq!(report.maps, 7);
        assert!(report.is_clean(), "{:#?}", report.cases.iter().filter(|c| c.counterexample_count > 0).collect::<Vec<_>>());
    }

    #[test]
    fn scope_limits() {
        assert!(matches!(run_suite(&SuiteScope::spaces_only(5)), Err(Error::TooLarge(_))));
        let mut scope = SuiteScope::spaces_only(4);
        scope.map_sizes = vec![4];
        assert!(matches!(run_suite(&scope), Err(Error::TooLarge(_))));
    }
}
