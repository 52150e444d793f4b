use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{set_label, SncError};
use crate::complex::{Complex, ComplexBuilder, FaceSpec};

/// Abstract simplicial complex on the ground set `{0, …, ground-1}`, given
/// by its nonempty simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialInput {
    pub ground: usize,
    pub simplices: Vec<Vec<usize>>,
}

impl SimplicialInput {
    pub fn from_json(text: &str) -> Result<Self, SncError> {
        serde_json::from_str(text).map_err(|e| SncError::Parse(e.to_string()))
    }

    /// The complex itself, with vertex `i` labeled `i` and simplices by
    /// dot-joined vertex lists.
    pub fn to_complex(&self) -> Result<Complex, SncError> {
        let sets: Vec<Vec<usize>> = self.validated()?.into_iter().collect();
        Ok(crate::complex::fixtures::from_simplices(&sets))
    }

    /// Sorted simplices after checking they are proper subsets of the
    /// ground set and closed under taking nonempty subsets.
    fn validated(&self) -> Result<BTreeSet<Vec<usize>>, SncError> {
        let mut set = BTreeSet::new();
        for s in &self.simplices {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() {
                continue;
            }
            if sorted.len() >= self.ground || sorted.iter().any(|&x| x >= self.ground) {
                return Err(SncError::NotProperSubset(format!("{s:?}")));
            }
            set.insert(sorted);
        }
        for s in &set {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let mut face = s.clone();
                face.remove(skip);
                if !set.contains(&face) {
                    return Err(SncError::NotSubsetClosed(format!("{s:?}"), format!("{face:?}")));
                }
            }
        }
        Ok(set)
    }
}

/// One blowup of the construction: the center `L_I` for a simplex `I`,
/// whose exceptional divisor becomes the vertex `label`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationStep {
    pub center: Vec<usize>,
    pub label: String,
}

/// Blowups of the linear spaces `L_I`, points first, then lines, and so
/// on. Unlike a blowup script it starts from an empty boundary: every step
/// adds one boundary component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationScript {
    pub steps: Vec<RealizationStep>,
}

impl RealizationScript {
    /// Boundary complex after all steps. The component of step `I` meets
    /// exactly the strata of earlier components `L_J` with `J ⊊ I`, so it
    /// is coned over the chains of such `J`; it comes last in vertex order.
    pub fn replay(&self) -> Complex {
        let mut builder = ComplexBuilder::new();
        // faces as chains of step indices, bottom-up
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let sets: Vec<BTreeSet<usize>> = self
            .steps
            .iter()
            .map(|s| s.center.iter().copied().collect())
            .collect();
        for (k, step) in self.steps.iter().enumerate() {
            let below: Vec<Vec<usize>> = chains
                .iter()
                .filter(|ch| {
                    let top = &sets[*ch.last().unwrap()];
                    top.len() < sets[k].len() && top.is_subset(&sets[k])
                })
                .cloned()
                .collect();
            let v = builder.add(FaceSpec::vertex(step.label.clone()));
            index.insert(vec![k], v);
            chains.push(vec![k]);
            // shorter chains first so that facets exist
            let mut below = below;
            below.sort_by_key(Vec::len);
            for chain in below {
                let mut full = chain.clone();
                full.push(k);
                let delta = (0..full.len())
                    .map(|omit| {
                        let mut rest = full.clone();
                        rest.remove(omit);
                        index[&rest]
                    })
                    .collect();
                let label = full
                    .iter()
                    .map(|&i| self.steps[i].label.as_str())
                    .collect::<Vec<_>>()
                    .join("<");
                index.insert(full.clone(), builder.add(FaceSpec::simplex(label, delta)));
                chains.push(full);
            }
        }
        builder.build().expect("replayed boundary complex is valid")
    }
}

/// Boundary complex of the iterated blowup of `ℙⁿ` along the linear spaces
/// `L_I` for the simplices `I` of `k`: the barycentric subdivision of `k`,
/// with vertices labeled `L0.2` after their simplices. Also returns the
/// blowup order whose replay rebuilds it.
pub fn realize_boundary(k: &SimplicialInput) -> Result<(Complex, RealizationScript), SncError> {
    let simplices = k.validated()?;
    let mut ordered: Vec<&Vec<usize>> = simplices.iter().collect();
    ordered.sort_by_key(|s| (s.len(), s.to_vec()));
    let script = RealizationScript {
        steps: ordered
            .iter()
            .map(|s| RealizationStep {
                center: s.to_vec(),
                label: set_label("L", s),
            })
            .collect(),
    };

    let mut builder = ComplexBuilder::new();
    let mut index: HashMap<&Vec<usize>, usize> = HashMap::new();
    for s in &ordered {
        let label = set_label("L", s);
        let spec = if s.len() == 1 {
            FaceSpec::vertex(label)
        } else {
            let delta = (0..s.len())
                .map(|p| {
                    let mut face = s.to_vec();
                    face.remove(p);
                    index[simplices.get(&face).unwrap()]
                })
                .collect();
            FaceSpec::simplex(label, delta)
        };
        index.insert(s, builder.add(spec));
    }
    let complex = builder.build()?.order_complex();
    Ok((complex, script))
}
