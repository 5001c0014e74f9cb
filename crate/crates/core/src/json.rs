//! JSON documents for matroids and ground maps, shared by the CLI and any
//! external tooling.
//!
//! Matroid document: `{"name": optional, "elements": [labels],
//! "circuits": [[labels]]}`. The element order fixes the canonical
//! iteration order. Parsers reject duplicate labels, circuits referencing
//! unknown labels, and duplicate circuits.
//!
//! Map document: `{"source": <matroid or path>, "target": <matroid or
//! path>, "map": {"srcLabel": "tgtLabel"}}`. The map must cover every
//! source element exactly once, and may not mention unknown labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::maps::{GroundMap, MapError};
use crate::matroid::{GroundSet, Matroid, MatroidError};
use crate::set::ElemSet;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("duplicate circuit [{}]", .0.join(","))]
    DuplicateCircuit(Vec<String>),
    #[error("map is missing an image for source element `{0}`")]
    MissingImage(String),
    #[error("map key `{0}` is not a source element")]
    UnknownMapKey(String),
    #[error("map sends `{src}` to `{tgt}`, which is not a target element")]
    UnknownTargetLabel { src: String, tgt: String },
    #[error("cannot load matroid from `{path}`: {reason}")]
    UnresolvedReference { path: String, reason: String },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatroidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub circuits: Vec<Vec<String>>,
}

impl MatroidDoc {
    pub fn from_matroid(m: &Matroid, name: Option<String>) -> Self {
        MatroidDoc {
            name,
            elements: m.ground().labels().to_vec(),
            circuits: m.circuit_labels(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("matroid documents serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("matroid documents serialize")
    }

    /// Resolve labels without checking the circuit axioms. Rejects
    /// duplicate element labels, unknown labels in circuits, and duplicate
    /// circuits.
    pub fn raw_parts(&self) -> Result<(GroundSet, Vec<ElemSet>), JsonError> {
        let ground = GroundSet::new(self.elements.iter().cloned())?;
        let mut circuits = Vec::with_capacity(self.circuits.len());
        for labels in &self.circuits {
            let set = ground.set_of(labels.iter().map(String::as_str))?;
            if circuits.contains(&set) {
                return Err(JsonError::DuplicateCircuit(labels.clone()));
            }
            circuits.push(set);
        }
        Ok((ground, circuits))
    }

    /// Full validation: label resolution plus the circuit axioms.
    pub fn to_matroid(&self) -> Result<Matroid, JsonError> {
        let (ground, circuits) = self.raw_parts()?;
        Ok(Matroid::from_circuits(ground, circuits)?)
    }
}

/// A matroid given inline or as a path to another matroid document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatroidRef {
    Path(String),
    Inline(MatroidDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: MatroidRef,
    pub target: MatroidRef,
    pub map: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn parse(text: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("map documents serialize")
    }

    /// Build a map document with both matroids inlined.
    pub fn from_parts(f: &GroundMap, m: &Matroid, n: &Matroid) -> Self {
        MapDoc {
            source: MatroidRef::Inline(MatroidDoc::from_matroid(m, None)),
            target: MatroidRef::Inline(MatroidDoc::from_matroid(n, None)),
            map: f
                .assignment()
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    (
                        m.ground().label(i).to_string(),
                        n.ground().label(t).to_string(),
                    )
                })
                .collect(),
        }
    }

    /// Resolve both matroids (through `load` for path references) and the
    /// assignment. The map must be total on the source and mention only
    /// known labels.
    pub fn resolve<F>(&self, mut load: F) -> Result<(Matroid, Matroid, GroundMap), JsonError>
    where
        F: FnMut(&str) -> Result<MatroidDoc, JsonError>,
    {
        let source = match &self.source {
            MatroidRef::Inline(doc) => doc.to_matroid()?,
            MatroidRef::Path(p) => load(p)?.to_matroid()?,
        };
        let target = match &self.target {
            MatroidRef::Inline(doc) => doc.to_matroid()?,
            MatroidRef::Path(p) => load(p)?.to_matroid()?,
        };
        for key in self.map.keys() {
            if source.ground().index_of(key).is_none() {
                return Err(JsonError::UnknownMapKey(key.clone()));
            }
        }
        let mut assignment = Vec::with_capacity(source.num_elements());
        for label in source.ground().labels() {
            let image = self
                .map
                .get(label)
                .ok_or_else(|| JsonError::MissingImage(label.clone()))?;
            let t = target.ground().index_of(image).ok_or_else(|| {
                JsonError::UnknownTargetLabel {
                    src: label.clone(),
                    tgt: image.clone(),
                }
            })?;
            assignment.push(t);
        }
        let map = GroundMap::new(source.ground().clone(), target.ground().clone(), assignment)?;
        Ok((source, target, map))
    }
}

/// Loader for resolving path references that refuses all of them; useful
/// when a document must be self-contained.
pub fn no_external_references(path: &str) -> Result<MatroidDoc, JsonError> {
    Err(JsonError::UnresolvedReference {
        path: path.to_string(),
        reason: "external references are not allowed here".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn matroid_document_round_trip() {
        let theta = fixtures::theta();
        let doc = MatroidDoc::from_matroid(&theta, Some("theta".into()));
        let text = doc.to_json_string();
        let parsed = MatroidDoc::parse(&text).unwrap();
        assert_eq!(parsed.to_matroid().unwrap(), theta);
    }

    #[test]
    fn rejects_duplicate_elements() {
        let doc = MatroidDoc::parse(r#"{"elements": ["a", "a"], "circuits": []}"#).unwrap();
        assert!(matches!(
            doc.to_matroid(),
            Err(JsonError::Matroid(MatroidError::DuplicateLabel(_)))
        ));
    }

    #[test]
    fn rejects_unknown_labels_and_duplicate_circuits() {
        let doc =
            MatroidDoc::parse(r#"{"elements": ["a", "b"], "circuits": [["a", "q"]]}"#).unwrap();
        assert!(matches!(
            doc.to_matroid(),
            Err(JsonError::Matroid(MatroidError::ElementNotInGround(_)))
        ));

        let doc = MatroidDoc::parse(
            r#"{"elements": ["a", "b"], "circuits": [["a", "b"], ["b", "a"]]}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.to_matroid(),
            Err(JsonError::DuplicateCircuit(_))
        ));
    }

    #[test]
    fn map_document_resolves_inline() {
        let (theta, u13, f) = fixtures::theta_collapse();
        let doc = MapDoc::from_parts(&f, &theta, &u13);
        let (m, n, g) = doc.resolve(no_external_references).unwrap();
        assert_eq!(m, theta);
        assert_eq!(n, u13);
        assert_eq!(g, f);
    }

    #[test]
    fn map_document_rejects_partial_and_unknown() {
        let text = r#"{
            "source": {"elements": ["a", "b"], "circuits": [["a", "b"]]},
            "target": {"elements": ["x"], "circuits": [["x"]]},
            "map": {"a": "x"}
        }"#;
        let doc = MapDoc::parse(text).unwrap();
        assert!(matches!(
            doc.resolve(no_external_references),
            Err(JsonError::MissingImage(_))
        ));

        let text = r#"{
            "source": {"elements": ["a"], "circuits": [["a"]]},
            "target": {"elements": ["x"], "circuits": [["x"]]},
            "map": {"a": "x", "zz": "x"}
        }"#;
        let doc = MapDoc::parse(text).unwrap();
        assert!(matches!(
            doc.resolve(no_external_references),
            Err(JsonError::UnknownMapKey(_))
        ));

        let text = r#"{
            "source": {"elements": ["a"], "circuits": [["a"]]},
            "target": {"elements": ["x"], "circuits": [["x"]]},
            "map": {"a": "w"}
        }"#;
        let doc = MapDoc::parse(text).unwrap();
        assert!(matches!(
            doc.resolve(no_external_references),
            Err(JsonError::UnknownTargetLabel { .. })
        ));
    }

    #[test]
    fn path_references_go_through_the_loader() {
        let text = r#"{
            "source": "theta.json",
            "target": {"elements": ["x"], "circuits": [["x"]]},
            "map": {"a": "x"}
        }"#;
        let doc = MapDoc::parse(text).unwrap();
        assert!(matches!(
            doc.resolve(no_external_references),
            Err(JsonError::UnresolvedReference { .. })
        ));
    }
}
