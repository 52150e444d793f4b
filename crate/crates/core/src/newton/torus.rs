use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{face_label, geometry, lattice_length, validated_points, NewtonError};
use crate::complex::{Complex, ComplexBuilder, FaceSpec};
use crate::transforms::pucker;

/// Explicit multiplicity for the cell dual to an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeWeight {
    pub edge: [Vec<i64>; 2],
    pub weight: usize,
}

/// A polytope given by lattice points, optionally with edge weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeInput {
    pub points: Vec<Vec<i64>>,
    #[serde(default)]
    pub weights: Vec<EdgeWeight>,
}

impl PolytopeInput {
    /// Accepts `{"points": [...], "weights": [...]}` or a bare point list.
    pub fn from_json(text: &str) -> Result<Self, NewtonError> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Doc {
            Bare(Vec<Vec<i64>>),
            Full(PolytopeInput),
        }
        match serde_json::from_str(text).map_err(|e| NewtonError::Parse(e.to_string()))? {
            Doc::Bare(points) => Ok(PolytopeInput {
                points,
                weights: Vec::new(),
            }),
            Doc::Full(input) => Ok(input),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeFace {
    pub label: String,
    pub dim: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeEdge {
    pub face: usize,
    pub vertices: [usize; 2],
    pub length: u64,
}

/// Full-dimensional lattice polytope with its proper faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    /// Inner facet normals, primitive.
    pub facet_normals: Vec<Vec<i64>>,
    pub faces: Vec<PolytopeFace>,
    pub edges: Vec<PolytopeEdge>,
}

pub fn lattice_polytope(points: &[Vec<i64>]) -> Result<LatticePolytope, NewtonError> {
    let points = validated_points(points, false)?;
    let d = points[0].len();
    let dim = geometry::affine_dim(&points);
    if dim < d {
        return Err(NewtonError::NotFullDimensional { dim, ambient: d });
    }
    let lattice = geometry::face_lattice(&points, false);
    let vertex_points: Vec<usize> = lattice
        .faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| *f.points.iter().next().unwrap())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vertices: Vec<Vec<i64>> = vertex_points.iter().map(|&p| points[p].clone()).collect();
    let faces: Vec<PolytopeFace> = lattice
        .faces
        .iter()
        .map(|raw| {
            let vs: Vec<usize> = raw
                .points
                .iter()
                .filter_map(|p| vertex_points.binary_search(p).ok())
                .collect();
            let corners: Vec<&Vec<i64>> = vs.iter().map(|&v| &vertices[v]).collect();
            PolytopeFace {
                label: face_label(&corners, &[]),
                dim: raw.dim,
                vertices: vs,
            }
        })
        .collect();
    let edges = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.dim == 1)
        .map(|(i, f)| PolytopeEdge {
            face: i,
            vertices: [f.vertices[0], f.vertices[1]],
            length: lattice_length(&vertices[f.vertices[0]], &vertices[f.vertices[1]]),
        })
        .collect();
    Ok(LatticePolytope {
        dim: d,
        vertices,
        facet_normals: lattice.facets.into_iter().map(|h| h.normal).collect(),
        faces,
        edges,
    })
}

impl LatticePolytope {
    fn cofaces(&self, f: usize) -> Vec<usize> {
        let face = &self.faces[f];
        (0..self.faces.len())
            .filter(|&g| {
                let other = &self.faces[g];
                other.dim == face.dim + 1 && face.vertices.iter().all(|v| other.vertices.contains(v))
            })
            .collect()
    }

    /// Link of the origin in the codimension-one skeleton of the normal fan:
    /// one cell of dimension `dim - 1 - dim F` per proper face `F` of
    /// dimension at least one.
    fn fan_link(&self) -> Complex {
        let keep: Vec<usize> = (0..self.faces.len()).filter(|&i| self.faces[i].dim >= 1).collect();
        let mut builder = ComplexBuilder::new();
        for &i in &keep {
            let face = &self.faces[i];
            let facets = self
                .cofaces(i)
                .into_iter()
                .map(|g| keep.binary_search(&g).unwrap())
                .collect();
            builder.add(FaceSpec::cell(face.label.clone(), self.dim - 1 - face.dim, facets));
        }
        builder.build().expect("normal fan cells form a regular complex")
    }
}

/// Boundary complex of a nondegenerate hypersurface in the torus with Newton
/// polytope spanned by `points`: the fan link puckered at each maximal cell
/// by the lattice length of its dual edge.
pub fn torus_hypersurface_boundary_complex(points: &[Vec<i64>]) -> Result<Complex, NewtonError> {
    torus_hypersurface_boundary_complex_weighted(points, &[])
}

/// As [`torus_hypersurface_boundary_complex`], with the multiplicities of
/// the listed edges replaced by explicit weights.
pub fn torus_hypersurface_boundary_complex_weighted(
    points: &[Vec<i64>],
    weights: &[EdgeWeight],
) -> Result<Complex, NewtonError> {
    let p = lattice_polytope(points)?;
    let mut multiplicity: BTreeMap<usize, usize> =
        p.edges.iter().map(|e| (e.face, e.length as usize)).collect();
    for w in weights {
        let mut ends = w.edge.clone();
        ends.sort();
        let edge = p.edges.iter().find(|e| {
            let mut have = [p.vertices[e.vertices[0]].clone(), p.vertices[e.vertices[1]].clone()];
            have.sort();
            have == ends
        });
        match edge {
            Some(e) => {
                multiplicity.insert(e.face, w.weight);
            }
            None => {
                let corners: Vec<&Vec<i64>> = ends.iter().collect();
                return Err(NewtonError::UnknownEdge(face_label(&corners, &[])));
            }
        }
    }
    let mut c = p.fan_link();
    for (face, d) in multiplicity {
        if d == 1 {
            continue;
        }
        let id = c.find_label(&p.faces[face].label)?;
        c = pucker(&c, id, d)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::transforms::TransformError;

    fn square(s: i64) -> Vec<Vec<i64>> {
        vec![vec![0, 0], vec![s, 0], vec![0, s], vec![s, s]]
    }

    #[test]
    fn squares() {
        let c = torus_hypersurface_boundary_complex(&square(2)).unwrap();
        assert_eq!(c.f_vector(), vec![8]);
        assert_eq!(homology(&c, true).unwrap().betti(0), 7);
        let c = torus_hypersurface_boundary_complex(&square(1)).unwrap();
        assert_eq!(homology(&c, true).unwrap().betti(0), 3);
    }

    #[test]
    fn doubled_cube() {
        let pts: Vec<Vec<i64>> = (0..8).map(|m| (0..3).map(|i| 2 * (m >> i & 1)).collect()).collect();
        let c = torus_hypersurface_boundary_complex(&pts).unwrap();
        assert_eq!(c.f_vector(), vec![6, 24]);
        let h = homology(&c, true).unwrap();
        assert_eq!((h.betti(0), h.betti(1)), (0, 19));
    }

    #[test]
    fn weights_override_lengths() {
        let w = EdgeWeight {
            edge: [vec![0, 0], vec![2, 0]],
            weight: 5,
        };
        let c = torus_hypersurface_boundary_complex_weighted(&square(2), &[w]).unwrap();
        assert_eq!(c.f_vector(), vec![11]);
        let bad = EdgeWeight {
            edge: [vec![0, 0], vec![2, 2]],
            weight: 1,
        };
        assert!(matches!(
            torus_hypersurface_boundary_complex_weighted(&square(2), &[bad]),
            Err(NewtonError::UnknownEdge(_))
        ));
        let zero = EdgeWeight {
            edge: [vec![0, 0], vec![0, 2]],
            weight: 0,
        };
        assert_eq!(
            torus_hypersurface_boundary_complex_weighted(&square(2), &[zero]),
            Err(NewtonError::Transform(TransformError::BadMultiplicity(0)))
        );
    }

    #[test]
    fn degenerate_input() {
        assert_eq!(
            lattice_polytope(&[vec![0, 0], vec![1, 1], vec![2, 2]]),
            Err(NewtonError::NotFullDimensional { dim: 1, ambient: 2 })
        );
        let input = PolytopeInput::from_json("[[0,0],[1,0],[0,1]]").unwrap();
        assert!(input.weights.is_empty());
    }
}
