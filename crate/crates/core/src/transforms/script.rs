use serde::{Deserialize, Serialize};

use super::{apply, StepanovDescriptor, TransformError};
use crate::complex::{Complex, Level};
use crate::homology::{homology, HomologyResult};

/// Sequence of blowup moves, faces named by label. New vertices default to
/// the label `"E{step}"` with steps counted from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlowupScript {
    pub steps: Vec<StepanovDescriptor>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    case: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    face: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    attach: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pivot: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<Level>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScript {
    List(Vec<RawStep>),
    Document { steps: Vec<RawStep> },
}

impl RawStep {
    fn into_descriptor(self, step: usize) -> Result<StepanovDescriptor, TransformError> {
        let missing = |field: &str| {
            TransformError::Parse(format!("step {step}: case {} needs `{field}`", self.case))
        };
        let stray = |field: &str| {
            TransformError::Parse(format!("step {step}: case {} takes no `{field}`", self.case))
        };
        match self.case {
            1 => {
                let extra = [
                    ("face", self.face.is_some()),
                    ("base", self.base.is_some()),
                    ("attach", self.attach.is_some()),
                    ("pivot", self.pivot.is_some()),
                    ("level", self.level.is_some()),
                    ("label", self.label.is_some()),
                ];
                match extra.iter().find(|(_, present)| *present) {
                    Some((field, _)) => Err(stray(field)),
                    None => Ok(StepanovDescriptor::Trivial),
                }
            }
            2 => {
                for (field, present) in [
                    ("base", self.base.is_some()),
                    ("attach", self.attach.is_some()),
                    ("pivot", self.pivot.is_some()),
                ] {
                    if present {
                        return Err(stray(field));
                    }
                }
                Ok(StepanovDescriptor::Stellar {
                    face: self.face.clone().ok_or_else(|| missing("face"))?,
                    level: self.level,
                    label: self.label,
                })
            }
            3 => {
                if self.face.is_some() {
                    return Err(stray("face"));
                }
                Ok(StepanovDescriptor::Cone {
                    base: self.base.clone().ok_or_else(|| missing("base"))?,
                    attach: self.attach.clone().ok_or_else(|| missing("attach"))?,
                    pivot: self.pivot.clone().ok_or_else(|| missing("pivot"))?,
                    level: self.level,
                    label: self.label,
                })
            }
            other => Err(TransformError::Parse(format!(
                "step {step}: unknown case {other}"
            ))),
        }
    }

    fn from_descriptor(d: &StepanovDescriptor) -> Self {
        let mut raw = RawStep {
            case: d.case(),
            face: None,
            base: None,
            attach: None,
            pivot: None,
            level: None,
            label: None,
        };
        match d {
            StepanovDescriptor::Trivial => {}
            StepanovDescriptor::Stellar { face, level, label } => {
                raw.face = Some(face.clone());
                raw.level = *level;
                raw.label = label.clone();
            }
            StepanovDescriptor::Cone {
                base,
                attach,
                pivot,
                level,
                label,
            } => {
                raw.base = Some(base.clone());
                raw.attach = Some(attach.clone());
                raw.pivot = Some(pivot.clone());
                raw.level = *level;
                raw.label = label.clone();
            }
        }
        raw
    }
}

impl BlowupScript {
    /// Reads a list of descriptors, bare or under a `steps` field.
    pub fn from_json(text: &str) -> Result<Self, TransformError> {
        let raw: RawScript =
            serde_json::from_str(text).map_err(|e| TransformError::Parse(e.to_string()))?;
        let steps = match raw {
            RawScript::List(s) | RawScript::Document { steps: s } => s,
        };
        let steps = steps
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.into_descriptor(i + 1))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlowupScript { steps })
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<RawStep> = self.steps.iter().map(RawStep::from_descriptor).collect();
        let mut text = serde_json::to_string_pretty(&raw).expect("scripts serialize");
        text.push('\n');
        text
    }
}

/// Homology of one level subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelHomology {
    pub level: Level,
    pub homology: HomologyResult,
}

/// State after one step; step 0 is the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepLog {
    pub step: usize,
    pub case: Option<u8>,
    pub f_vector: Vec<usize>,
    pub homology: HomologyResult,
    pub levels: Vec<LevelHomology>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScriptRun {
    #[serde(skip)]
    pub complex: Complex,
    pub log: Vec<StepLog>,
}

fn snapshot(c: &Complex, step: usize, case: Option<u8>, levels: &[Level]) -> StepLog {
    let h = |c: &Complex| homology(c, false).expect("chain complex of a valid complex");
    StepLog {
        step,
        case,
        f_vector: c.f_vector(),
        homology: h(c),
        levels: levels
            .iter()
            .map(|&m| LevelHomology {
                level: m,
                homology: h(&c.level_subcomplex(m).expect("filtered")),
            })
            .collect(),
    }
}

/// Applies the steps in order, checking after each that the homology of
/// the complex and of every level subcomplex is unchanged. Errors carry the
/// 1-based index of the failing step.
pub fn run_blowup_script(c: &Complex, script: &BlowupScript) -> Result<ScriptRun, TransformError> {
    let mut current = c.clone();
    let mut log = vec![snapshot(c, 0, None, &c.levels())];
    for (i, d) in script.steps.iter().enumerate() {
        let step = i + 1;
        let next = apply(&current, d, &format!("E{step}")).map_err(|e| TransformError::StepFailed {
            step,
            source: Box::new(e),
        })?;
        let mut levels = current.levels();
        levels.extend(next.levels());
        levels.sort_unstable();
        levels.dedup();
        let before = snapshot(&current, step - 1, None, &levels);
        let after = snapshot(&next, step, Some(d.case()), &levels);
        if !before.homology.same_groups(&after.homology) {
            return Err(TransformError::HomologyChanged { step, level: None });
        }
        for (x, y) in before.levels.iter().zip(&after.levels) {
            if !x.homology.same_groups(&y.homology) {
                return Err(TransformError::HomologyChanged {
                    step,
                    level: Some(x.level),
                });
            }
        }
        let own = next.levels();
        log.push(StepLog {
            levels: after.levels.into_iter().filter(|l| own.contains(&l.level)).collect(),
            ..after
        });
        current = next;
    }
    Ok(ScriptRun {
        complex: current,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::ComplexError;

    #[test]
    fn three_lines_blowup() {
        let script = BlowupScript::from_json(r#"[{"case": 2, "face": "v1v2"}]"#).unwrap();
        let run = run_blowup_script(&triangle_boundary(), &script).unwrap();
        assert_eq!(run.complex.f_vector(), vec![4, 4]);
        assert_eq!(run.log.len(), 2);
        for entry in &run.log {
            assert_eq!(entry.homology.betti_vector(), vec![1, 1]);
        }
        assert!(run.complex.find_label("E1").is_ok());
    }

    #[test]
    fn empty_script_is_identity() {
        let run = run_blowup_script(&banana(3), &BlowupScript::default()).unwrap();
        assert_eq!(run.complex, banana(3));
        assert_eq!(run.log.len(), 1);
    }

    #[test]
    fn stale_reference_fails_at_step_two() {
        let script = BlowupScript::from_json(
            r#"{"steps": [{"case": 2, "face": "v1v2"}, {"case": 2, "face": "v1v2"}]}"#,
        )
        .unwrap();
        match run_blowup_script(&triangle_boundary(), &script).unwrap_err() {
            TransformError::StepFailed { step, source } => {
                assert_eq!(step, 2);
                assert_eq!(
                    *source,
                    TransformError::Complex(ComplexError::NoSuchFace("v1v2".into()))
                );
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn script_round_trip_and_errors() {
        let text = r#"[{"case": 1}, {"case": 3, "base": "v3", "attach": ["v3"], "pivot": "v3", "label": "F"}]"#;
        let script = BlowupScript::from_json(text).unwrap();
        assert_eq!(BlowupScript::from_json(&script.to_json()).unwrap(), script);
        let run = run_blowup_script(&triangle_boundary(), &script).unwrap();
        assert_eq!(run.complex.f_vector(), vec![4, 4]);
        assert!(run.complex.find_label("F").is_ok());
        for bad in [
            r#"[{"case": 4}]"#,
            r#"[{"case": 2}]"#,
            r#"[{"case": 1, "face": "x"}]"#,
            r#"[{"case": 3, "base": "v3", "pivot": "v3"}]"#,
            r#"[{"case": 2, "face": "x", "colour": 1}]"#,
        ] {
            assert!(matches!(BlowupScript::from_json(bad), Err(TransformError::Parse(_))), "{bad}");
        }
    }
}
