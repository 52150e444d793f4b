use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Complex, ComplexBuilder, ComplexError, FaceSpec, Level};

/// Face reference in a complex document: either a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RecordId {
    Index(u64),
    Name(String),
}

impl fmt::Display for RecordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordId::Index(i) => write!(f, "{i}"),
            RecordId::Name(s) => write!(f, "{s:?}"),
        }
    }
}

impl RecordId {
    fn key(&self) -> String {
        match self {
            RecordId::Index(i) => i.to_string(),
            RecordId::Name(s) => s.clone(),
        }
    }
}

/// One face of a complex document. `facets` may be omitted when
/// `delta_order` is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceRecord {
    pub id: RecordId,
    pub dim: usize,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<RecordId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_order: Option<Vec<RecordId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<Level>,
}

/// Interchange document for complexes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub faces: Vec<FaceRecord>,
}

impl ComplexDocument {
    /// Canonical document: faces in canonical order with integer ids.
    pub fn from_complex(c: &Complex) -> Self {
        let ids = |list: &[super::FaceId]| {
            list.iter()
                .map(|f| RecordId::Index(f.0 as u64))
                .collect::<Vec<_>>()
        };
        let faces = c
            .faces()
            .iter()
            .enumerate()
            .map(|(i, face)| FaceRecord {
                id: RecordId::Index(i as u64),
                dim: face.dim(),
                label: face.label().to_string(),
                facets: Some(ids(face.facets())),
                delta_order: if face.dim() > 0 {
                    face.delta_facets().map(ids)
                } else {
                    None
                },
                level: face.level(),
            })
            .collect();
        ComplexDocument { faces }
    }

    pub fn to_complex(&self) -> Result<Complex, ComplexError> {
        let mut position: HashMap<String, usize> = HashMap::new();
        for (i, record) in self.faces.iter().enumerate() {
            if position.insert(record.id.key(), i).is_some() {
                return Err(ComplexError::DuplicateId(record.id.to_string()));
            }
        }
        let resolve = |record: &FaceRecord, list: &[RecordId]| -> Result<Vec<usize>, ComplexError> {
            list.iter()
                .map(|r| {
                    position
                        .get(&r.key())
                        .copied()
                        .ok_or_else(|| ComplexError::DanglingFace {
                            face: record.id.to_string(),
                            missing: r.to_string(),
                        })
                })
                .collect()
        };
        let mut builder =
            ComplexBuilder::new().with_names(self.faces.iter().map(|r| r.id.to_string()).collect());
        for record in &self.faces {
            let delta = match &record.delta_order {
                Some(list) => Some(resolve(record, list)?),
                None => None,
            };
            let facets = match (&record.facets, &delta) {
                (Some(list), _) => resolve(record, list)?,
                (None, Some(d)) => d.clone(),
                (None, None) => Vec::new(),
            };
            builder.add(FaceSpec {
                label: record.label.clone(),
                dim: record.dim,
                facets,
                delta,
                level: record.level,
            });
        }
        builder.build()
    }
}

impl Complex {
    /// Reads a complex document.
    pub fn from_json(text: &str) -> Result<Complex, ComplexError> {
        let doc: ComplexDocument =
            serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))?;
        doc.to_complex()
    }

    /// Canonical pretty-printed document, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&ComplexDocument::from_complex(self))
            .expect("complex documents serialize");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        for c in [triangle_boundary(), banana(3), octahedron_boundary(), points(2)] {
            let text = c.to_json();
            let back = Complex::from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn string_ids_and_implicit_facets() {
        let text = r#"{"faces": [
            {"id": "e", "dim": 1, "label": "e", "delta_order": ["b", "a"]},
            {"id": "a", "dim": 0, "label": "a"},
            {"id": "b", "dim": 0, "label": "b", "level": 2}
        ]}"#;
        let err = Complex::from_json(text).unwrap_err();
        assert!(matches!(err, ComplexError::BadLevel { .. }), "{err}");
        let text = text.replace(r#", "level": 2"#, "");
        let c = Complex::from_json(&text).unwrap();
        assert_eq!(c.f_vector(), vec![2, 1]);
        assert!(c.has_delta());
    }

    #[test]
    fn document_errors_name_the_face() {
        let dup = r#"{"faces": [{"id": 1, "dim": 0, "label": "a"}, {"id": 1, "dim": 0, "label": "b"}]}"#;
        assert_eq!(
            Complex::from_json(dup).unwrap_err(),
            ComplexError::DuplicateId("1".into())
        );
        let dangling = r#"{"faces": [{"id": "e", "dim": 1, "label": "e", "facets": ["x", "y"]}]}"#;
        match Complex::from_json(dangling).unwrap_err() {
            ComplexError::DanglingFace { face, missing } => {
                assert_eq!(face, "\"e\"");
                assert_eq!(missing, "\"x\"");
            }
            other => panic!("{other}"),
        }
        assert!(matches!(
            Complex::from_json("{"),
            Err(ComplexError::Parse(_))
        ));
    }
}
