use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{set_label, SncError};
use crate::complex::{Complex, ComplexBuilder, FaceSpec};

/// Rational polyhedral fan given by primitive rays and cones as sets of ray
/// indices. Subsets of a simplicial cone are cones; faces of other cones
/// must be listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fan {
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self, SncError> {
        let fan = Fan { rays, cones };
        fan.validate()?;
        Ok(fan)
    }

    pub fn from_json(text: &str) -> Result<Self, SncError> {
        let fan: Fan = serde_json::from_str(text).map_err(|e| SncError::Parse(e.to_string()))?;
        fan.validate()?;
        Ok(fan)
    }

    fn validate(&self) -> Result<(), SncError> {
        let n = self.rays.first().map_or(0, Vec::len);
        for (i, ray) in self.rays.iter().enumerate() {
            let g = ray.iter().fold(0i64, |g, &x| g.gcd(&x));
            if ray.len() != n || g != 1 {
                return Err(SncError::NonPrimitiveRay(i));
            }
        }
        for (c, cone) in self.cones.iter().enumerate() {
            let bad = |reason: &str| SncError::BadCone {
                cone: c,
                reason: reason.to_string(),
            };
            if cone.is_empty() {
                return Err(bad("cone has no rays"));
            }
            if let Some(r) = cone.iter().find(|&&r| r >= self.rays.len()) {
                return Err(bad(&format!("ray index {r} out of range")));
            }
            if cone.iter().collect::<BTreeSet<_>>().len() != cone.len() {
                return Err(bad("ray listed twice"));
            }
        }
        Ok(())
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// Fan of `ℙⁿ`: rays `e₁, …, eₙ, -(e₁ + ⋯ + eₙ)`, every `n` of them
    /// spanning a cone.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&r| r != skip).collect())
            .collect();
        Fan { rays, cones }
    }

    /// Fan of `(ℙ¹)ⁿ`: rays `±eᵢ` (indices `2i`, `2i+1`), one cone per
    /// orthant.
    pub fn product_of_lines(n: usize) -> Fan {
        let rays = (0..2 * n)
            .map(|r| {
                (0..n)
                    .map(|j| if j == r / 2 { if r % 2 == 0 { 1 } else { -1 } } else { 0 })
                    .collect()
            })
            .collect();
        let cones = (0u64..1 << n)
            .map(|signs| (0..n).map(|i| 2 * i + (signs >> i & 1) as usize).collect())
            .collect();
        Fan { rays, cones }
    }
}

/// Rank of a set of integer vectors.
pub(crate) fn rank(vectors: &[&[i64]]) -> usize {
    let m: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    crate::newton::geometry::rank(&m)
}

/// Link of the origin: one `(d-1)`-cell per `d`-dimensional cone, covering
/// given by codimension-one subcones. With only simplicial cones the link
/// is a Δ-complex with vertices in ray order. Cells are labeled `r0.2.5` by
/// their rays.
pub fn toric_link(f: &Fan) -> Result<Complex, SncError> {
    f.validate()?;
    let mut cones: BTreeSet<Vec<usize>> = (0..f.rays.len()).map(|r| vec![r]).collect();
    for cone in &f.cones {
        let mut sorted = cone.clone();
        sorted.sort_unstable();
        let refs: Vec<&[i64]> = sorted.iter().map(|&r| f.rays[r].as_slice()).collect();
        if rank(&refs) == sorted.len() {
            for mask in 1u64..1 << sorted.len() {
                cones.insert(
                    (0..sorted.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| sorted[i])
                        .collect(),
                );
            }
        } else {
            cones.insert(sorted);
        }
    }
    let dims: BTreeMap<&Vec<usize>, usize> = cones
        .iter()
        .map(|c| {
            let refs: Vec<&[i64]> = c.iter().map(|&r| f.rays[r].as_slice()).collect();
            (c, rank(&refs))
        })
        .collect();
    let simplicial = dims.iter().all(|(c, &d)| c.len() == d);

    let mut order: Vec<&Vec<usize>> = cones.iter().collect();
    order.sort_by_key(|c| (dims[c], c.to_vec()));
    let mut builder = ComplexBuilder::new();
    let mut index: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for cone in order {
        let d = dims[cone];
        let label = set_label("r", cone);
        let spec = if d == 1 {
            FaceSpec::vertex(label)
        } else if simplicial {
            let delta = (0..cone.len())
                .map(|p| {
                    let mut rest = cone.clone();
                    rest.remove(p);
                    index[&rest]
                })
                .collect();
            FaceSpec::simplex(label, delta)
        } else {
            let facets = cones
                .iter()
                .filter(|c| dims[c] + 1 == d && c.iter().all(|r| cone.contains(r)))
                .map(|c| index[c])
                .collect();
            FaceSpec::cell(label, d - 1, facets)
        };
        index.insert(cone, builder.add(spec));
    }
    Ok(builder.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::is_isomorphic;
    use crate::homology::homology;

    #[test]
    fn product_of_three_lines_is_an_octahedron() {
        let c = toric_link(&Fan::product_of_lines(3)).unwrap();
        assert_eq!(c.f_vector(), vec![6, 12, 8]);
        assert!(is_isomorphic(&c, &octahedron_boundary()));
    }

    #[test]
    fn projective_plane_fan() {
        let c = toric_link(&Fan::projective_space(2)).unwrap();
        assert!(is_isomorphic(&c, &triangle_boundary()));
    }

    #[test]
    fn single_ray() {
        let f = Fan::new(vec![vec![1, 0]], vec![vec![0]]).unwrap();
        assert_eq!(toric_link(&f).unwrap().f_vector(), vec![1]);
    }

    #[test]
    fn complete_fans_link_spheres() {
        for n in 1..=4 {
            for f in [Fan::projective_space(n), Fan::product_of_lines(n)] {
                let h = homology(&toric_link(&f).unwrap(), true).unwrap();
                assert_eq!(h.support(), vec![n as i64 - 1]);
                assert_eq!(h.betti(n as i64 - 1), 1);
            }
        }
    }

    #[test]
    fn non_simplicial_square_cone() {
        // cone over a square in ℝ³ with its four 2-faces listed
        let rays = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
        let cones = vec![vec![0, 1, 2, 3], vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
        let c = toric_link(&Fan::new(rays, cones).unwrap()).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4, 1]);
        assert!(!c.has_delta());
        assert!(homology(&c, true).unwrap().support().is_empty());
    }

    #[test]
    fn rays_must_be_primitive() {
        assert_eq!(
            Fan::new(vec![vec![1, 0], vec![2, 2]], vec![vec![0, 1]]),
            Err(SncError::NonPrimitiveRay(1))
        );
        assert!(matches!(
            Fan::from_json(r#"{"rays": [[1, 0]], "cones": [[0, 1]]}"#),
            Err(SncError::BadCone { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[&[1, 2, 3], &[2, 4, 6]]), 1);
        assert_eq!(rank(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]), 3);
        assert_eq!(rank(&[]), 0);
    }
}
