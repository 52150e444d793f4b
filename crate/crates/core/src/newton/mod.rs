//! Newton polyhedra of monomial supports, the subdivision of the standard
//! simplex induced by their inner normal fan, the resolution-complex model
//! of a nondegenerate isolated hypersurface singularity, and boundary
//! complexes of nondegenerate hypersurfaces in a torus.

pub(crate) mod geometry;
mod torus;

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexBuilder, ComplexError, FaceSpec};
use crate::homology::{
    homology, wedge_certificate, weight_zero_cohomology_rank, HomologyError, HomologyResult,
    WedgeCertificate, WeightZeroMode,
};
use crate::transforms::{pucker, TransformError};

pub use torus::{
    lattice_polytope, torus_hypersurface_boundary_complex,
    torus_hypersurface_boundary_complex_weighted, EdgeWeight, LatticePolytope, PolytopeEdge,
    PolytopeFace, PolytopeInput,
};

/// Largest coordinate accepted; keeps all minors within `i128`.
pub const MAX_COORDINATE: i64 = 1 << 20;
/// Largest ambient dimension accepted.
pub const MAX_AMBIENT_DIM: usize = 4;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NewtonError {
    #[error("no points given")]
    EmptyInput,
    #[error("ambient dimension {0} exceeds {MAX_AMBIENT_DIM}")]
    DimensionTooHigh(usize),
    #[error("ambient dimension {0} is below 2")]
    DimensionTooLow(usize),
    #[error("point {index} has {found} coordinates, expected {expected}")]
    RaggedInput {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {0} has a negative exponent")]
    NegativeExponent(usize),
    #[error("point {0} has a coordinate beyond ±{MAX_COORDINATE}")]
    CoordinateTooLarge(usize),
    #[error("points span a {dim}-dimensional affine space in dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("{0} is not an edge of the polytope")]
    UnknownEdge(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// Label of a face from its vertices and recession directions, e.g.
/// `(1,1,1)(4,0,0)` or `(0,0,2)+e1e2`.
pub(crate) fn face_label(vertices: &[&Vec<i64>], directions: &[usize]) -> String {
    let mut s = String::new();
    for v in vertices {
        let coords: Vec<String> = v.iter().map(i64::to_string).collect();
        s.push_str(&format!("({})", coords.join(",")));
    }
    if !directions.is_empty() {
        s.push('+');
        for d in directions {
            s.push_str(&format!("e{}", d + 1));
        }
    }
    s
}

/// Sorted distinct points after checking shape and coordinate bounds.
pub(crate) fn validated_points(points: &[Vec<i64>], nonnegative: bool) -> Result<Vec<Vec<i64>>, NewtonError> {
    let first = points.first().ok_or(NewtonError::EmptyInput)?;
    let n = first.len();
    for (i, p) in points.iter().enumerate() {
        if p.len() != n {
            return Err(NewtonError::RaggedInput {
                index: i,
                expected: n,
                found: p.len(),
            });
        }
        if nonnegative && p.iter().any(|&x| x < 0) {
            return Err(NewtonError::NegativeExponent(i));
        }
        if p.iter().any(|&x| x.abs() > MAX_COORDINATE) {
            return Err(NewtonError::CoordinateTooLarge(i));
        }
    }
    if n > MAX_AMBIENT_DIM {
        return Err(NewtonError::DimensionTooHigh(n));
    }
    if n < 2 {
        return Err(NewtonError::DimensionTooLow(n));
    }
    let set: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
    Ok(set.into_iter().collect())
}

/// Lattice length of the segment between two lattice points.
pub fn lattice_length(a: &[i64], b: &[i64]) -> u64 {
    a.iter()
        .zip(b)
        .fold(0i64, |g, (&x, &y)| g.gcd(&(x - y)))
        .unsigned_abs()
}

/// Reads a support: a list of exponent vectors, bare or as `{"points": [...]}`.
pub fn parse_support(text: &str) -> Result<Vec<Vec<i64>>, NewtonError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Doc {
        Bare(Vec<Vec<i64>>),
        Wrapped { points: Vec<Vec<i64>> },
    }
    match serde_json::from_str(text).map_err(|e| NewtonError::Parse(e.to_string()))? {
        Doc::Bare(p) | Doc::Wrapped { points: p } => Ok(p),
    }
}

/// Facet `⟨normal, x⟩ ≥ offset` of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub compact: bool,
    pub vertices: Vec<usize>,
}

/// Proper face of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonFace {
    pub label: String,
    pub dim: usize,
    pub vertices: Vec<usize>,
    /// Coordinate directions in the recession cone.
    pub directions: Vec<usize>,
    pub facets: Vec<usize>,
    pub compact: bool,
    /// Contained in no face minimizing a coordinate.
    pub interior: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactEdge {
    pub face: usize,
    pub vertices: [usize; 2],
    pub length: u64,
    pub interior: bool,
}

/// `Γ = conv(points) + ℝ^N_{≥0}` with its face lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolyhedron {
    pub ambient_dim: usize,
    pub points: Vec<Vec<i64>>,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<NewtonFacet>,
    /// Faces sorted by dimension; `Γ` itself is not listed.
    pub faces: Vec<NewtonFace>,
    pub compact_edges: Vec<CompactEdge>,
    /// Minimum of each coordinate over `Γ`.
    pub coordinate_minima: Vec<i64>,
}

pub fn newton_polyhedron(points: &[Vec<i64>]) -> Result<NewtonPolyhedron, NewtonError> {
    let points = validated_points(points, true)?;
    let n = points[0].len();
    let lattice = geometry::face_lattice(&points, true);

    let vertex_points: Vec<usize> = lattice
        .faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| *f.points.iter().next().unwrap())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vertices: Vec<Vec<i64>> = vertex_points.iter().map(|&p| points[p].clone()).collect();
    let vertex_index = |p: usize| vertex_points.binary_search(&p).ok();
    let minima: Vec<i64> = (0..n)
        .map(|i| points.iter().map(|p| p[i]).min().unwrap())
        .collect();

    let mut faces = Vec::with_capacity(lattice.faces.len());
    for raw in &lattice.faces {
        let vs: Vec<usize> = raw.points.iter().filter_map(|&p| vertex_index(p)).collect();
        let mut normal_sum = vec![0i64; n];
        for &f in &raw.facets {
            for (s, w) in normal_sum.iter_mut().zip(&lattice.facets[f].normal) {
                *s += w;
            }
        }
        let compact = normal_sum.iter().all(|&s| s > 0);
        let on_coordinate_face =
            (0..n).any(|i| vs.iter().all(|&v| vertices[v][i] == minima[i]));
        let directions: Vec<usize> = raw.directions.iter().copied().collect();
        let corners: Vec<&Vec<i64>> = vs.iter().map(|&v| &vertices[v]).collect();
        faces.push(NewtonFace {
            label: face_label(&corners, &directions),
            dim: raw.dim,
            vertices: vs,
            directions,
            facets: raw.facets.iter().copied().collect(),
            compact,
            interior: compact && !on_coordinate_face,
        });
    }
    let facets = lattice
        .facets
        .iter()
        .enumerate()
        .map(|(k, h)| {
            let face = faces
                .iter()
                .find(|f| f.facets.len() == 1 && f.facets[0] == k && f.dim == n - 1)
                .expect("every facet is a face");
            NewtonFacet {
                normal: h.normal.clone(),
                offset: h.offset,
                compact: face.compact,
                vertices: face.vertices.clone(),
            }
        })
        .collect();
    let compact_edges = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.dim == 1 && f.compact)
        .map(|(i, f)| CompactEdge {
            face: i,
            vertices: [f.vertices[0], f.vertices[1]],
            length: lattice_length(&vertices[f.vertices[0]], &vertices[f.vertices[1]]),
            interior: f.interior,
        })
        .collect();
    Ok(NewtonPolyhedron {
        ambient_dim: n,
        points,
        vertices,
        facets,
        faces,
        compact_edges,
        coordinate_minima: minima,
    })
}

impl NewtonPolyhedron {
    /// Dimension `n` of the hypersurface in `ℂ^{n+1}`.
    pub fn n(&self) -> usize {
        self.ambient_dim - 1
    }

    /// Face index of a vertex.
    fn vertex_face(&self, v: usize) -> usize {
        self.faces
            .iter()
            .position(|f| f.dim == 0 && f.vertices == [v])
            .expect("vertex face")
    }

    /// Whether vertex `v` lies on a facet that is not compact.
    pub fn vertex_on_unbounded_facet(&self, v: usize) -> bool {
        self.facets.iter().any(|f| !f.compact && f.vertices.contains(&v))
    }

    pub fn vertex_is_interior(&self, v: usize) -> bool {
        self.faces[self.vertex_face(v)].interior
    }

    /// Faces of `F` one dimension up.
    pub fn cofaces(&self, f: usize) -> Vec<usize> {
        let face = &self.faces[f];
        let vs: BTreeSet<usize> = face.vertices.iter().copied().collect();
        let ds: BTreeSet<usize> = face.directions.iter().copied().collect();
        (0..self.faces.len())
            .filter(|&g| {
                let other = &self.faces[g];
                other.dim == face.dim + 1
                    && vs.iter().all(|v| other.vertices.contains(v))
                    && ds.iter().all(|d| other.directions.contains(d))
            })
            .collect()
    }

    /// Whether `x` satisfies every facet inequality.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| {
            let value: i128 = f.normal.iter().zip(x).map(|(&w, &c)| w as i128 * c as i128).sum();
            value >= f.offset as i128
        })
    }
}

/// Cell of the subdivision of the standard simplex cut out by the inner
/// normal fan: the projectivized normal cone of a face of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexCell {
    /// Index of the carrier face in [`NewtonPolyhedron::faces`].
    pub face: usize,
    pub label: String,
    pub dim: usize,
    pub interior: bool,
    /// Indices of the cells one dimension down.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdividedSimplex {
    /// Dimension of the simplex.
    pub dim: usize,
    /// One cell per proper face of `Γ`, in the same order.
    pub cells: Vec<SimplexCell>,
}

pub fn normal_fan(np: &NewtonPolyhedron) -> SubdividedSimplex {
    let n = np.n();
    let cells = np
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| SimplexCell {
            face: i,
            label: f.label.clone(),
            dim: n - f.dim,
            interior: f.interior,
            facets: np.cofaces(i),
        })
        .collect();
    SubdividedSimplex { dim: n, cells }
}

impl SubdividedSimplex {
    /// Nonmaximal cells lying in the interior of the simplex.
    pub fn interior_cells(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].interior && self.cells[i].dim < self.dim)
            .collect()
    }
}

/// The subcomplex `S₀` of nonmaximal interior cells.
pub fn interior_complex(ss: &SubdividedSimplex) -> Complex {
    let keep = ss.interior_cells();
    let mut builder = ComplexBuilder::new();
    for &i in &keep {
        let cell = &ss.cells[i];
        let facets = cell
            .facets
            .iter()
            .map(|f| keep.binary_search(f).expect("facets of interior cells are interior"))
            .collect();
        builder.add(FaceSpec::cell(cell.label.clone(), cell.dim, facets));
    }
    builder.build().expect("cells of the normal fan form a regular complex")
}

/// A maximal cell of `S₀` and the number of copies it is puckered into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Puckering {
    pub cell: String,
    pub multiplicity: u64,
}

/// Puckerings applied to `S₀`: each interior compact edge of lattice length
/// `ℓ > 1`, whose cell has codimension one in the simplex.
pub fn puckerings(np: &NewtonPolyhedron) -> Vec<Puckering> {
    np.compact_edges
        .iter()
        .filter(|e| e.interior && e.length > 1)
        .map(|e| Puckering {
            cell: np.faces[e.face].label.clone(),
            multiplicity: e.length,
        })
        .collect()
}

/// Homotopy model of the resolution complex: `S₀` puckered along the cells
/// of interior compact edges by their lattice lengths.
pub fn resolution_complex(np: &NewtonPolyhedron) -> Result<Complex, NewtonError> {
    let mut c = interior_complex(&normal_fan(np));
    for p in puckerings(np) {
        let id = c.find_label(&p.cell)?;
        c = pucker(&c, id, p.multiplicity as usize)?;
    }
    Ok(c)
}

/// Readings of the sphere-count formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountVariant {
    /// Vertices on no unbounded facet plus `Σ (ℓ-1)` over all compact edges.
    Literal,
    /// Vertices and compact edges on no coordinate-minimizing face only.
    Interior,
}

pub fn predicted_sphere_count(np: &NewtonPolyhedron, variant: CountVariant) -> u64 {
    let (vertices, edges): (usize, u64) = match variant {
        CountVariant::Literal => (
            (0..np.vertices.len()).filter(|&v| !np.vertex_on_unbounded_facet(v)).count(),
            np.compact_edges.iter().map(|e| e.length - 1).sum(),
        ),
        CountVariant::Interior => (
            (0..np.vertices.len()).filter(|&v| np.vertex_is_interior(v)).count(),
            np.compact_edges.iter().filter(|e| e.interior).map(|e| e.length - 1).sum(),
        ),
    };
    vertices as u64 + edges
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedCounts {
    pub literal: u64,
    pub interior: u64,
    /// Reduced Betti number of the resolution complex in degree `n-1`.
    pub computed: u64,
    pub literal_agrees: bool,
    pub interior_agrees: bool,
}

/// Rank of `W₀H̃^k` of the singularity link complement, `H̃^{k-1}(Δ(E))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightZeroRank {
    pub k: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct W0Report {
    pub n: usize,
    pub polyhedron: NewtonPolyhedron,
    pub interior_cells: Vec<String>,
    pub puckerings: Vec<Puckering>,
    pub f_vector: Vec<usize>,
    pub homology: HomologyResult,
    pub predicted: PredictedCounts,
    pub weight_zero: Vec<WeightZeroRank>,
    pub certificate: WedgeCertificate,
}

pub fn w0_report(np: &NewtonPolyhedron) -> Result<W0Report, NewtonError> {
    let n = np.n();
    let ss = normal_fan(np);
    let c = resolution_complex(np)?;
    let h = homology(&c, true)?;
    let computed = h.betti(n as i64 - 1) as u64;
    let literal = predicted_sphere_count(np, CountVariant::Literal);
    let interior = predicted_sphere_count(np, CountVariant::Interior);
    let weight_zero = (0..=n)
        .map(|k| {
            Ok(WeightZeroRank {
                k,
                rank: weight_zero_cohomology_rank(&c, k, WeightZeroMode::Resolution)?,
            })
        })
        .collect::<Result<_, HomologyError>>()?;
    Ok(W0Report {
        n,
        interior_cells: ss.interior_cells().iter().map(|&i| ss.cells[i].label.clone()).collect(),
        puckerings: puckerings(np),
        f_vector: c.f_vector(),
        predicted: PredictedCounts {
            literal,
            interior,
            computed,
            literal_agrees: literal == computed,
            interior_agrees: interior == computed,
        },
        weight_zero,
        certificate: wedge_certificate(&c, n - 1),
        homology: h,
        polyhedron: np.clone(),
    })
}
