//! Finite closure spaces and their topological resolution.
//!
//! A closure space here is a finite set with an extensive, monotone and
//! idempotent closure operator; no additivity is assumed. Every such space has
//! a topological resolution `Top X`, a finite topological space of pairs
//! `(x, M)` with `M` a minimal neighborhood of `x`, together with a continuous
//! open projection onto `X`. Regular maps between closure spaces lift uniquely
//! to continuous maps between resolutions.
//!
//! Modules:
//! - [`setcore`]: ground sets, bit-vector subsets, set families
//! - [`closure`]: the space type, closure/interior, neighborhoods, convergence
//! - [`topo`]: finite topologies as quasiorders
//! - [`resolution`]: `Top X`, the projection and the bracket operator
//! - [`maps`]: continuity, openness, regularity and lifting
//! - [`oracle`]: exhaustive enumeration and the registry of checked properties

pub mod closure;
pub mod error;
pub mod maps;
pub mod oracle;
pub mod resolution;
pub mod setcore;
pub mod topo;

pub use closure::{FiniteClosureSpace, PointClass, SubsetClass};
pub use error::Error;
pub use maps::{RegularWitness, ResolutionMap, SpaceMap};
pub use resolution::{Resolution, TopPoint};
pub use setcore::{GroundSet, SetFamily, Subset};
pub use topo::{FiniteTopology, PointSet};
