//! JSON documents read and written by the command-line tool.
//!
//! Subsets travel as sorted arrays of element indices, never as bitmasks.

use std::fs;
use std::path::{Path, PathBuf};

use closure_space::{FiniteClosureSpace, FiniteTopology, GroundSet, Resolution, SetFamily, Subset};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A closure space given by exactly one of four representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_sets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_sets: Option<Vec<Vec<usize>>>,
    /// Closure of every subset, keyed by the subset's bit-vector index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_table: Option<Vec<Vec<usize>>>,
    /// Pairs `[t, s]` meaning `t <= s` in the specialization order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preorder: Option<Vec<(usize, usize)>>,
    /// Take the reflexive-transitive closure of `preorder` instead of
    /// requiring it to be a quasiorder already.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub complete: bool,
}

impl SpaceDocument {
    /// The closed-set representation of `space`.
    pub fn from_space(space: &FiniteClosureSpace) -> Self {
        SpaceDocument {
            elements: element_names(space.ground()),
            closed_sets: Some(space.closed_sets().to_index_lists()),
            ..Default::default()
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteClosureSpace, CliError> {
        let ground = GroundSet::named_with_cap(self.elements.clone(), cap)?;
        let n = ground.len();
        let given = [
            self.closed_sets.is_some(),
            self.open_sets.is_some(),
            self.closure_table.is_some(),
            self.preorder.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(CliError::Parse(
                "give exactly one of closed_sets, open_sets, closure_table, preorder".into(),
            ));
        }
        if self.complete && self.preorder.is_none() {
            return Err(CliError::Parse("`complete` only applies to a preorder".into()));
        }
        if let Some(sets) = &self.closed_sets {
            let family = family(sets, n)?;
            return Ok(FiniteClosureSpace::from_closed_family(ground, &family)?);
        }
        if let Some(sets) = &self.open_sets {
            let family = family(sets, n)?;
            return Ok(FiniteClosureSpace::from_open_family(ground, &family)?);
        }
        if let Some(rows) = &self.closure_table {
            let table = rows.iter().map(|r| subset(r, n)).collect::<Result<_, _>>()?;
            return Ok(FiniteClosureSpace::from_closure_table(ground, table)?);
        }
        let pairs = self.preorder.as_deref().unwrap_or_default();
        let order = if self.complete {
            FiniteTopology::complete(n, pairs)?
        } else {
            FiniteTopology::from_quasiorder(n, pairs)?
        };
        Ok(order.as_closure_space_on(ground)?)
    }
}

pub fn element_names(ground: &GroundSet) -> Vec<String> {
    (0..ground.len()).map(|i| ground.label(i)).collect()
}

fn subset(indices: &[usize], n: usize) -> Result<Subset, CliError> {
    if let Some(&i) = indices.iter().find(|&&i| i >= n) {
        return Err(CliError::Parse(format!("element index {i} out of range for {n} elements")));
    }
    Ok(Subset::from_indices(indices.iter().copied()))
}

fn family(sets: &[Vec<usize>], n: usize) -> Result<SetFamily, CliError> {
    sets.iter().map(|s| subset(s, n)).collect()
}

/// Where a map document finds one of its spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceSource {
    /// Relative paths are taken from the map document's directory.
    Path(PathBuf),
    Inline(SpaceDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub domain: SpaceSource,
    pub codomain: SpaceSource,
    pub assignment: Vec<usize>,
}

impl MapDocument {
    /// Loads both spaces; `base` is the directory of the map document.
    pub fn spaces(&self, base: &Path, cap: usize) -> Result<(FiniteClosureSpace, FiniteClosureSpace), CliError> {
        let load = |src: &SpaceSource| match src {
            SpaceSource::Inline(doc) => doc.build(cap),
            SpaceSource::Path(p) => read_space(&base.join(p), cap),
        };
        Ok((load(&self.domain)?, load(&self.codomain)?))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_space(path: &Path, cap: usize) -> Result<FiniteClosureSpace, CliError> {
    read_json::<SpaceDocument>(path)?.build(cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: usize,
    pub m: Vec<usize>,
    pub label: String,
}

/// `Top X` as written by `resolve --json`. `order` lists every pair
/// `[i, j]` with point `i <= j`, reflexive pairs included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDocument {
    pub elements: Vec<String>,
    pub points: Vec<PointRecord>,
    pub order: Vec<(usize, usize)>,
    pub projection: Vec<usize>,
    pub essential: Vec<usize>,
}

pub fn point_records(r: &Resolution) -> Vec<PointRecord> {
    (0..r.len())
        .map(|i| PointRecord {
            x: r.point(i).x,
            m: r.point(i).m.indices(),
            label: r.point_label(i),
        })
        .collect()
}

impl ResolutionDocument {
    pub fn of(r: &Resolution) -> Self {
        ResolutionDocument {
            elements: element_names(r.base().ground()),
            points: point_records(r),
            order: r.order().pairs(),
            projection: r.projection_assignment(),
            essential: r.essential().indices(),
        }
    }

    /// Rebuilds the base space from the quasiorder and the projection alone:
    /// its open sets are the unions of the projected up-sets.
    pub fn reconstruct(&self, cap: usize) -> Result<FiniteClosureSpace, CliError> {
        let ground = GroundSet::named_with_cap(self.elements.clone(), cap)?;
        let k = self.points.len();
        if self.projection.len() != k {
            return Err(CliError::Parse(format!(
                "projection has {} entries for {k} points",
                self.projection.len()
            )));
        }
        if let Some(&x) = self.projection.iter().find(|&&x| x >= ground.len()) {
            return Err(CliError::Parse(format!("projection target {x} out of range")));
        }
        let order = FiniteTopology::from_quasiorder(k, &self.order)?;
        let generators: Vec<Subset> = (0..k)
            .map(|t| Subset::from_indices(order.up_set(t).ones().map(|s| self.projection[s])))
            .collect();
        let mut opens = SetFamily::new();
        opens.insert(Subset::EMPTY);
        for g in generators {
            let grown: Vec<Subset> = opens.iter().map(|o| o.union(g)).collect();
            for o in grown {
                opens.insert(o);
            }
        }
        Ok(FiniteClosureSpace::from_open_family(ground, &opens)?)
    }
}

/// A lifted map `F: Top X → Top Y`, as written by `lift --out`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftDocument {
    pub source: Vec<PointRecord>,
    pub target: Vec<PointRecord>,
    pub assignment: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use closure_space::closure::fixtures;

    fn doc(json: &str) -> SpaceDocument {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn four_representations_agree() {
        let closed = doc(r#"{"elements":["a","b","c"],"closed_sets":[[],[0],[1],[0,1,2]]}"#);
        let open = doc(r#"{"elements":["a","b","c"],"open_sets":[[],[0,2],[1,2],[0,1,2]]}"#);
        let table = doc(
            r#"{"elements":["a","b","c"],"closure_table":[[],[0],[1],[0,1,2],[0,1,2],[0,1,2],[0,1,2],[0,1,2]]}"#,
        );
        let d = closed.build(16).unwrap();
        assert_eq!(d, fixtures::diamond());
        assert_eq!(open.build(16).unwrap(), d);
        assert_eq!(table.build(16).unwrap(), d);

        let pre = doc(r#"{"elements":["0","1"],"preorder":[[0,0],[1,1],[0,1]]}"#);
        let s = pre.build(16).unwrap();
        assert_eq!(s.closed_sets(), fixtures::sierpinski().closed_sets());
        let partial = doc(r#"{"elements":["0","1"],"preorder":[[0,1]],"complete":true}"#);
        assert_eq!(partial.build(16).unwrap(), s);
    }

    #[test]
    fn shape_errors() {
        let none = doc(r#"{"elements":["a"]}"#);
        assert!(matches!(none.build(16), Err(CliError::Parse(_))));
        let two = doc(r#"{"elements":["a"],"closed_sets":[[0]],"open_sets":[[]]}"#);
        assert!(matches!(two.build(16), Err(CliError::Parse(_))));
        let range = doc(r#"{"elements":["a"],"closed_sets":[[0, 1]]}"#);
        assert!(matches!(range.build(16), Err(CliError::Parse(_))));
        assert!(serde_json::from_str::<SpaceDocument>(r#"{"elements":[],"bogus":1}"#).is_err());
    }

    #[test]
    fn document_round_trip() {
        let d = fixtures::diamond();
        let text = serde_json::to_string(&SpaceDocument::from_space(&d)).unwrap();
        assert_eq!(doc(&text).build(16).unwrap(), d);
    }

    #[test]
    fn resolution_document_reconstructs() {
        for space in [fixtures::diamond(), fixtures::inessential(), fixtures::sierpinski(), fixtures::point()] {
            let named = SpaceDocument::from_space(&space).build(16).unwrap();
            let r = Resolution::resolve(&named);
            let text = serde_json::to_string(&ResolutionDocument::of(&r)).unwrap();
            let back: ResolutionDocument = serde_json::from_str(&text).unwrap();
            assert_eq!(back.reconstruct(16).unwrap(), named);
        }
    }
}
