use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::SncError;
use crate::complex::{Complex, ComplexBuilder, FaceSpec, Level};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<Level>,
}

/// An irreducible component `Y` of `D_I` for `|I| ≥ 2`. `parents` maps each
/// `i ∈ I` to the label of the component of `D_{I∖i}` containing `Y`; it may
/// be omitted when that component is unique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumRecord {
    pub indices: Vec<usize>,
    pub label: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parents: BTreeMap<usize, String>,
}

/// Strata of a simple normal crossing divisor `D = D₀ + ⋯ + D_{r-1}`,
/// components indexed from 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataDescription {
    pub components: Vec<ComponentRecord>,
    #[serde(default)]
    pub strata: Vec<StratumRecord>,
}

impl StrataDescription {
    pub fn from_json(text: &str) -> Result<Self, SncError> {
        serde_json::from_str(text).map_err(|e| SncError::Parse(e.to_string()))
    }
}

/// Dual complex: a vertex per component and a `(|I|-1)`-simplex per
/// stratum, vertices ordered by component index, facet `p` the parent
/// omitting the `p`-th index. With component levels, a face gets the
/// largest level among its components.
pub fn dual_complex(s: &StrataDescription) -> Result<Complex, SncError> {
    let r = s.components.len();
    let with_levels = s.components.iter().filter(|c| c.level.is_some()).count();
    if with_levels != 0 && with_levels != r {
        return Err(SncError::PartialLevels);
    }

    // label -> (index set, position among strata or None for components)
    let mut by_label: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, c) in s.components.iter().enumerate() {
        if by_label.insert(&c.label, vec![i]).is_some() {
            return Err(SncError::DuplicateLabel(c.label.clone()));
        }
    }
    for st in &s.strata {
        let bad = |reason: &str| SncError::BadIndices {
            stratum: st.label.clone(),
            reason: reason.to_string(),
        };
        if st.indices.len() < 2 {
            return Err(bad("a stratum needs at least two components"));
        }
        if st.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("indices must be strictly increasing"));
        }
        if st.indices.iter().any(|&i| i >= r) {
            return Err(bad("index out of range"));
        }
        if let Some(k) = st.parents.keys().find(|k| !st.indices.contains(k)) {
            return Err(bad(&format!("parent given for index {k}, which is not in the stratum")));
        }
        if by_label.insert(&st.label, st.indices.clone()).is_some() {
            return Err(SncError::DuplicateLabel(st.label.clone()));
        }
    }
    let mut by_set: HashMap<&[usize], Vec<&str>> = HashMap::new();
    for (label, set) in &by_label {
        by_set.entry(set.as_slice()).or_default().push(label);
    }

    // parent labels in vertex-omission order
    let mut parents: HashMap<&str, Vec<String>> = HashMap::new();
    for st in &s.strata {
        let mut list = Vec::with_capacity(st.indices.len());
        for (p, &i) in st.indices.iter().enumerate() {
            let mut rest = st.indices.clone();
            rest.remove(p);
            let parent = match st.parents.get(&i) {
                Some(label) => {
                    let set = by_label.get(label.as_str()).ok_or(SncError::MissingParent {
                        stratum: st.label.clone(),
                        index: i,
                    })?;
                    if *set != rest {
                        return Err(SncError::ParentIncoherent {
                            stratum: st.label.clone(),
                            reason: format!("parent {label} for index {i} has the wrong components"),
                        });
                    }
                    label.clone()
                }
                None => match by_set.get(rest.as_slice()).map(Vec::as_slice) {
                    Some([only]) => only.to_string(),
                    _ => {
                        return Err(SncError::MissingParent {
                            stratum: st.label.clone(),
                            index: i,
                        })
                    }
                },
            };
            list.push(parent);
        }
        parents.insert(&st.label, list);
    }
    // omitting i then j must agree with omitting j then i
    for st in &s.strata {
        let mine = &parents[st.label.as_str()];
        for a in 0..st.indices.len() {
            for b in a + 1..st.indices.len() {
                let via = |first: usize, second: usize| -> &str {
                    let parent = &mine[first];
                    match parents.get(parent.as_str()) {
                        Some(list) => &list[second],
                        // a component parent: the grandparent is the empty set
                        None => "",
                    }
                };
                // after dropping position a, position b moves to b - 1
                if via(a, b - 1) != via(b, a) {
                    return Err(SncError::ParentIncoherent {
                        stratum: st.label.clone(),
                        reason: format!(
                            "omitting components {} and {} in either order gives different strata",
                            st.indices[a], st.indices[b]
                        ),
                    });
                }
            }
        }
    }

    let mut builder = ComplexBuilder::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for c in &s.components {
        index.insert(&c.label, builder.add(FaceSpec::vertex(c.label.clone()).at_level(c.level)));
    }
    let mut order: Vec<&StratumRecord> = s.strata.iter().collect();
    order.sort_by_key(|st| st.indices.len());
    for st in order {
        let delta: Vec<usize> = parents[st.label.as_str()].iter().map(|p| index[p.as_str()]).collect();
        let level = st.indices.iter().map(|&i| s.components[i].level).max().flatten();
        let level = if with_levels == 0 { None } else { level };
        index.insert(&st.label, builder.add(FaceSpec::simplex(st.label.clone(), delta).at_level(level)));
    }
    Ok(builder.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::is_isomorphic;
    use crate::homology::homology;

    fn parse(text: &str) -> StrataDescription {
        StrataDescription::from_json(text).unwrap()
    }

    #[test]
    fn three_lines() {
        let s = parse(
            r#"{"components": [{"label": "L1"}, {"label": "L2"}, {"label": "L3"}],
                "strata": [{"indices": [0, 1], "label": "p12"},
                           {"indices": [0, 2], "label": "p13"},
                           {"indices": [1, 2], "label": "p23"}]}"#,
        );
        let c = dual_complex(&s).unwrap();
        assert!(is_isomorphic(&c, &triangle_boundary()));
        assert!(c.has_delta());
    }

    #[test]
    fn two_conics() {
        let s = parse(
            r#"{"components": [{"label": "C1"}, {"label": "C2"}],
                "strata": [{"indices": [0, 1], "label": "q1"}, {"indices": [0, 1], "label": "q2"},
                           {"indices": [0, 1], "label": "q3"}, {"indices": [0, 1], "label": "q4"}]}"#,
        );
        let c = dual_complex(&s).unwrap();
        assert_eq!(c.f_vector(), vec![2, 4]);
        assert_eq!(homology(&c, false).unwrap().betti_vector(), vec![1, 3]);
    }

    #[test]
    fn single_component() {
        let c = dual_complex(&parse(r#"{"components": [{"label": "D"}]}"#)).unwrap();
        assert_eq!(c.f_vector(), vec![1]);
    }

    #[test]
    fn parents_must_be_named_when_ambiguous() {
        // two conics meeting in two points, plus a line through both points
        let base = r#"{"components": [{"label": "A"}, {"label": "B"}, {"label": "L"}],
            "strata": [{"indices": [0, 1], "label": "x"}, {"indices": [0, 1], "label": "y"},
                       {"indices": [0, 2], "label": "ax"}, {"indices": [0, 2], "label": "ay"},
                       {"indices": [1, 2], "label": "bx"}, {"indices": [1, 2], "label": "by"},
                       {"indices": [0, 1, 2], "label": "X" PARENTS}]}"#;
        let missing = parse(&base.replace("PARENTS", ""));
        assert_eq!(
            dual_complex(&missing),
            Err(SncError::MissingParent {
                stratum: "X".into(),
                index: 0
            })
        );
        let good = parse(&base.replace("PARENTS", r#", "parents": {"0": "bx", "1": "ax", "2": "x"}"#));
        let c = dual_complex(&good).unwrap();
        assert_eq!(c.f_vector(), vec![3, 6, 1]);
        let wrong = parse(&base.replace("PARENTS", r#", "parents": {"0": "ax", "1": "ax", "2": "x"}"#));
        assert!(matches!(dual_complex(&wrong), Err(SncError::ParentIncoherent { .. })));
    }

    #[test]
    fn incoherent_parents() {
        // D0 ∩ D1 has two components x, y; the two triple points through
        // them cannot both bound the quadruple point
        let s = parse(
            r#"{"components": [{"label": "A"}, {"label": "B"}, {"label": "C"}, {"label": "D"}],
                "strata": [{"indices": [0, 1], "label": "x"}, {"indices": [0, 1], "label": "y"},
                           {"indices": [0, 2], "label": "ac"}, {"indices": [0, 3], "label": "ad"},
                           {"indices": [1, 2], "label": "bc"}, {"indices": [1, 3], "label": "bd"},
                           {"indices": [2, 3], "label": "cd"},
                           {"indices": [0, 1, 2], "label": "T2", "parents": {"2": "x"}},
                           {"indices": [0, 1, 3], "label": "T3", "parents": {"3": "y"}},
                           {"indices": [0, 2, 3], "label": "T1"},
                           {"indices": [1, 2, 3], "label": "T0"},
                           {"indices": [0, 1, 2, 3], "label": "Q"}]}"#,
        );
        match dual_complex(&s) {
            Err(SncError::ParentIncoherent { stratum, .. }) => assert_eq!(stratum, "Q"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn levels_take_the_maximum() {
        let s = parse(
            r#"{"components": [{"label": "A", "level": 1}, {"label": "B", "level": 2}],
                "strata": [{"indices": [0, 1], "label": "p"}]}"#,
        );
        let c = dual_complex(&s).unwrap();
        assert_eq!(c.face(c.find_label("p").unwrap()).level(), Some(2));
        assert_eq!(c.level_subcomplex(1).unwrap().f_vector(), vec![1]);
        let partial = parse(r#"{"components": [{"label": "A", "level": 1}, {"label": "B"}]}"#);
        assert_eq!(dual_complex(&partial), Err(SncError::PartialLevels));
    }

    #[test]
    fn label_and_index_errors() {
        let dup = parse(r#"{"components": [{"label": "A"}, {"label": "A"}]}"#);
        assert_eq!(dual_complex(&dup), Err(SncError::DuplicateLabel("A".into())));
        let range = parse(r#"{"components": [{"label": "A"}], "strata": [{"indices": [0, 3], "label": "p"}]}"#);
        assert!(matches!(dual_complex(&range), Err(SncError::BadIndices { .. })));
    }
}
