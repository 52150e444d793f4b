//! Face-poset model of regular CW complexes, with an optional Δ-structure
//! (ordered facet lists) and optional filtration levels.
//!
//! A [`Complex`] is immutable once built. Faces are stored in canonical
//! order, sorted by `(dimension, label, insertion index)`, and a [`FaceId`]
//! is the position of a face in that order. Every constructor in this crate
//! goes through [`ComplexBuilder::build`], so every complex in circulation
//! has passed validation.

mod iso;
mod json;
mod ops;
mod order;
mod quotient;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use iso::{find_isomorphism, is_isomorphic};
pub use json::{ComplexDocument, FaceRecord};
pub use ops::{cone, cone_with_apex, disjoint_union, join, wedge};
pub use quotient::quotient_free_involution;

/// Index of a face in the canonical order of its complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId(pub usize);

impl FaceId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Filtration level. Levels start at 1.
pub type Level = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("face {face}: covers {facet}, which has dimension {facet_dim} instead of {expected}")]
    GradingViolation {
        face: String,
        facet: String,
        facet_dim: usize,
        expected: usize,
    },
    #[error("face {face}: {reason}")]
    MalformedCell { face: String, reason: String },
    #[error("face {face}: refers to unknown face {missing}")]
    DanglingFace { face: String, missing: String },
    #[error("face {face}: bad Δ-structure: {reason}")]
    BadDeltaStructure { face: String, reason: String },
    #[error("face {face}: level {level} is below the level {facet_level} of its face {facet}")]
    LevelNotDownwardClosed {
        face: String,
        level: Level,
        facet: String,
        facet_level: Level,
    },
    #[error("face {face}: {reason}")]
    BadLevel { face: String, reason: String },
    #[error("face id {0} is used twice")]
    DuplicateId(String),
    #[error("operation requires a Δ-structure, but {0} has none")]
    MissingDeltaStructure(String),
    #[error("operation requires filtration levels, but the complex has none")]
    NoFiltration,
    #[error("{0} is not a vertex")]
    NotAVertex(String),
    #[error("no face {0} in the complex")]
    NoSuchFace(String),
    #[error("label {0} names more than one face")]
    AmbiguousLabel(String),
    #[error("involution fixes face {0}")]
    HasFixedFace(String),
    #[error("map is not an involution at face {0}")]
    NotInvolution(String),
    #[error("map does not preserve the face relation at face {0}")]
    NotOrderPreserving(String),
    #[error("quotient is not regular: the closure of face {0} is not embedded")]
    QuotientNotRegular(String),
    #[error("malformed complex document: {0}")]
    Parse(String),
}

/// One cell of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    dim: usize,
    label: String,
    facets: Vec<FaceId>,
    delta: Option<Vec<FaceId>>,
    level: Option<Level>,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Codimension-one faces, sorted by id.
    pub fn facets(&self) -> &[FaceId] {
        &self.facets
    }

    /// Ordered facet list: entry `i` omits vertex `i`. Empty for vertices.
    pub fn delta_facets(&self) -> Option<&[FaceId]> {
        self.delta.as_deref()
    }

    pub fn level(&self) -> Option<Level> {
        self.level
    }
}

/// A finite regular CW complex presented by its face poset.
#[derive(Clone, Debug)]
pub struct Complex {
    faces: Vec<Face>,
    cofacets: Vec<Vec<FaceId>>,
    vertices: Vec<Vec<FaceId>>,
    has_delta: bool,
    has_levels: bool,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for Complex {}

impl Complex {
    pub fn empty() -> Self {
        Complex {
            faces: Vec::new(),
            cofacets: Vec::new(),
            vertices: Vec::new(),
            has_delta: true,
            has_levels: false,
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).map(FaceId)
    }

    pub fn ids_of_dim(&self, dim: usize) -> impl Iterator<Item = FaceId> + '_ {
        self.ids().filter(move |&id| self.faces[id.0].dim == dim)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.ids_of_dim(0)
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.last().map(|f| f.dim)
    }

    pub fn has_delta(&self) -> bool {
        self.has_delta
    }

    pub fn has_levels(&self) -> bool {
        self.has_levels
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for face in &self.faces {
            if f.len() <= face.dim {
                f.resize(face.dim + 1, 0);
            }
            f[face.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Faces having `id` as a facet, sorted.
    pub fn cofacets(&self, id: FaceId) -> &[FaceId] {
        &self.cofacets[id.0]
    }

    pub fn is_maximal(&self, id: FaceId) -> bool {
        self.cofacets[id.0].is_empty()
    }

    /// Vertices of a face: in Δ-order when the complex has a Δ-structure,
    /// otherwise sorted by id.
    pub fn vertices_of(&self, id: FaceId) -> &[FaceId] {
        &self.vertices[id.0]
    }

    pub fn vertex_set(&self, id: FaceId) -> BTreeSet<FaceId> {
        self.vertices[id.0].iter().copied().collect()
    }

    /// All faces of the closed cell `id` (including `id`), sorted.
    pub fn closure(&self, id: FaceId) -> BTreeSet<FaceId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(f) = stack.pop() {
            if seen.insert(f) {
                stack.extend(self.faces[f.0].facets.iter().copied());
            }
        }
        seen
    }

    /// All faces containing `id` (including `id`), sorted.
    pub fn star(&self, id: FaceId) -> BTreeSet<FaceId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(f) = stack.pop() {
            if seen.insert(f) {
                stack.extend(self.cofacets[f.0].iter().copied());
            }
        }
        seen
    }

    /// Is `lower` a face of `upper` (reflexive)?
    pub fn is_face_of(&self, lower: FaceId, upper: FaceId) -> bool {
        if self.faces[lower.0].dim > self.faces[upper.0].dim {
            return false;
        }
        self.closure(upper).contains(&lower)
    }

    /// The unique face carrying `label`.
    pub fn find_label(&self, label: &str) -> Result<FaceId, ComplexError> {
        let mut hits = self.ids().filter(|&id| self.faces[id.0].label == label);
        match (hits.next(), hits.next()) {
            (Some(id), None) => Ok(id),
            (None, _) => Err(ComplexError::NoSuchFace(label.to_string())),
            (Some(_), Some(_)) => Err(ComplexError::AmbiguousLabel(label.to_string())),
        }
    }

    pub fn max_level(&self) -> Option<Level> {
        self.faces.iter().filter_map(|f| f.level).max()
    }

    /// Distinct levels in increasing order.
    pub fn levels(&self) -> Vec<Level> {
        let set: BTreeSet<Level> = self.faces.iter().filter_map(|f| f.level).collect();
        set.into_iter().collect()
    }

    /// Partition of the faces into connected components, each sorted, ordered
    /// by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<FaceId>> {
        let n = self.faces.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, face) in self.faces.iter().enumerate() {
            for f in &face.facets {
                let (a, b) = (find(&mut parent, i), find(&mut parent, f.0));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<FaceId>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(FaceId(i));
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Faces of dimension at most `k`; Δ-structure and levels are inherited.
    pub fn skeleton(&self, k: usize) -> Complex {
        self.subcomplex(|f| f.dim <= k)
    }

    /// Faces of level at most `m`.
    pub fn level_subcomplex(&self, m: Level) -> Result<Complex, ComplexError> {
        if !self.has_levels {
            return Err(ComplexError::NoFiltration);
        }
        Ok(self.subcomplex(|f| f.level.is_some_and(|l| l <= m)))
    }

    /// Restriction to the faces selected by `keep`. The selection must be
    /// closed under taking faces; this is asserted.
    pub fn subcomplex(&self, keep: impl Fn(&Face) -> bool) -> Complex {
        let selected: Vec<bool> = self.faces.iter().map(&keep).collect();
        self.restrict(&selected)
    }

    /// Restriction to a downward-closed set of faces given as a mask.
    pub(crate) fn restrict(&self, selected: &[bool]) -> Complex {
        let mut builder = ComplexBuilder::new();
        let mut map = vec![usize::MAX; self.faces.len()];
        for (i, face) in self.faces.iter().enumerate() {
            if !selected[i] {
                continue;
            }
            let remap = |ids: &[FaceId]| -> Vec<usize> {
                ids.iter()
                    .map(|f| {
                        assert!(selected[f.0], "subcomplex selection is not downward closed");
                        map[f.0]
                    })
                    .collect()
            };
            map[i] = builder.add(FaceSpec {
                label: face.label.clone(),
                dim: face.dim,
                facets: remap(&face.facets),
                delta: face.delta.as_deref().map(remap),
                level: face.level,
            });
        }
        builder
            .build()
            .expect("restriction of a valid complex is valid")
    }

    /// Copy of the complex with every label passed through `rename`.
    pub fn relabel(&self, rename: impl Fn(FaceId, &str) -> String) -> Complex {
        let mut builder = ComplexBuilder::new();
        for (i, face) in self.faces.iter().enumerate() {
            builder.add(FaceSpec {
                label: rename(FaceId(i), &face.label),
                dim: face.dim,
                facets: face.facets.iter().map(|f| f.0).collect(),
                delta: face.delta.as_ref().map(|d| d.iter().map(|f| f.0).collect()),
                level: face.level,
            });
        }
        builder.build().expect("relabeling preserves validity")
    }

    /// Copy of the complex with levels dropped.
    pub fn without_levels(&self) -> Complex {
        let mut c = self.clone();
        for f in &mut c.faces {
            f.level = None;
        }
        c.has_levels = false;
        c
    }

    /// Copy of the complex with the Δ-structure dropped.
    pub fn without_delta(&self) -> Complex {
        let mut builder = ComplexBuilder::new();
        for face in &self.faces {
            builder.add(FaceSpec {
                label: face.label.clone(),
                dim: face.dim,
                facets: face.facets.iter().map(|f| f.0).collect(),
                delta: None,
                level: face.level,
            });
        }
        builder.build().expect("dropping the Δ-structure preserves validity")
    }

    /// Barycentric subdivision: the simplicial complex of chains of faces.
    pub fn order_complex(&self) -> Complex {
        order::order_complex(self)
    }

    /// The face of Δ-simplex `id` spanned by the vertex positions in `keep`.
    pub fn delta_subface(&self, id: FaceId, keep: &[bool]) -> Option<FaceId> {
        if !keep.contains(&true) {
            return None;
        }
        let mut current = id;
        for pos in (0..keep.len()).rev() {
            if !keep[pos] {
                let delta = self.faces[current.0].delta.as_ref()?;
                current = delta[pos];
            }
        }
        Some(current)
    }

    /// Position set of `lower` inside the Δ-simplex `upper`, if it is a face.
    pub fn delta_positions(&self, lower: FaceId, upper: FaceId) -> Option<Vec<bool>> {
        let upper_vertices = &self.vertices[upper.0];
        let lower_vertices = &self.vertices[lower.0];
        let keep: Vec<bool> = upper_vertices
            .iter()
            .map(|v| lower_vertices.contains(v))
            .collect();
        if keep.iter().filter(|&&b| b).count() != lower_vertices.len() {
            return None;
        }
        (self.delta_subface(upper, &keep)? == lower).then_some(keep)
    }
}

/// Description of one face handed to [`ComplexBuilder`]. Facet references
/// are builder indices (return values of [`ComplexBuilder::add`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    pub label: String,
    pub dim: usize,
    pub facets: Vec<usize>,
    pub delta: Option<Vec<usize>>,
    pub level: Option<Level>,
}

impl FaceSpec {
    pub fn vertex(label: impl Into<String>) -> Self {
        FaceSpec {
            label: label.into(),
            dim: 0,
            facets: Vec::new(),
            delta: Some(Vec::new()),
            level: None,
        }
    }

    /// A Δ-simplex given by its ordered facet list.
    pub fn simplex(label: impl Into<String>, delta: Vec<usize>) -> Self {
        FaceSpec {
            label: label.into(),
            dim: delta.len().saturating_sub(1),
            facets: delta.clone(),
            delta: Some(delta),
            level: None,
        }
    }

    /// A cell without Δ-ordering.
    pub fn cell(label: impl Into<String>, dim: usize, facets: Vec<usize>) -> Self {
        FaceSpec {
            label: label.into(),
            dim,
            facets,
            delta: None,
            level: None,
        }
    }

    pub fn at_level(mut self, level: Option<Level>) -> Self {
        self.level = level;
        self
    }
}

/// Accumulates face specifications and validates them into a [`Complex`].
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    specs: Vec<FaceSpec>,
    names: Option<Vec<String>>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Names used in error messages instead of labels (e.g. document ids).
    pub(crate) fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn add(&mut self, spec: FaceSpec) -> usize {
        self.specs.push(spec);
        self.specs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    fn name(&self, i: usize) -> String {
        match &self.names {
            Some(names) => names[i].clone(),
            None => format!("{:?}", self.specs[i].label),
        }
    }

    pub fn build(self) -> Result<Complex, ComplexError> {
        let n = self.specs.len();
        let specs = &self.specs;

        for (i, spec) in specs.iter().enumerate() {
            for &f in spec.facets.iter().chain(spec.delta.iter().flatten()) {
                if f >= n {
                    return Err(ComplexError::DanglingFace {
                        face: self.name(i),
                        missing: format!("#{f}"),
                    });
                }
            }
        }

        // vertices carry no ordering information; only cells decide
        let cells = specs.iter().filter(|s| s.dim > 0).count();
        let delta_count = specs.iter().filter(|s| s.dim > 0 && s.delta.is_some()).count();
        let has_delta = delta_count == cells;
        if delta_count != 0 && !has_delta {
            let i = specs
                .iter()
                .position(|s| s.dim > 0 && s.delta.is_none())
                .unwrap();
            return Err(ComplexError::BadDeltaStructure {
                face: self.name(i),
                reason: "delta_order missing while other faces carry one".into(),
            });
        }

        for (i, spec) in specs.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &f in &spec.facets {
                if !seen.insert(f) {
                    return Err(ComplexError::BadDeltaStructure {
                        face: self.name(i),
                        reason: format!("lists face {} twice", self.name(f)),
                    });
                }
                if specs[f].dim + 1 != spec.dim {
                    return Err(ComplexError::GradingViolation {
                        face: self.name(i),
                        facet: self.name(f),
                        facet_dim: specs[f].dim,
                        expected: spec.dim.wrapping_sub(1),
                    });
                }
            }
            if spec.dim == 0 && !spec.facets.is_empty() {
                return Err(ComplexError::MalformedCell {
                    face: self.name(i),
                    reason: "a vertex cannot cover other faces".into(),
                });
            }
            if spec.dim >= 1 && spec.facets.len() < 2 {
                return Err(ComplexError::MalformedCell {
                    face: self.name(i),
                    reason: format!(
                        "a {}-cell needs at least two facets, found {}",
                        spec.dim,
                        spec.facets.len()
                    ),
                });
            }
            if let (true, Some(delta)) = (has_delta, &spec.delta) {
                self.check_delta_shape(i, delta)?;
            }
        }

        let level_count = specs.iter().filter(|s| s.level.is_some()).count();
        let has_levels = level_count == n && n > 0;
        if level_count != 0 && level_count != n {
            let i = specs.iter().position(|s| s.level.is_none()).unwrap();
            return Err(ComplexError::BadLevel {
                face: self.name(i),
                reason: "level missing while other faces carry one".into(),
            });
        }
        if has_levels {
            for (i, spec) in specs.iter().enumerate() {
                let level = spec.level.unwrap();
                if level == 0 {
                    return Err(ComplexError::BadLevel {
                        face: self.name(i),
                        reason: "levels start at 1".into(),
                    });
                }
                for &f in &spec.facets {
                    let fl = specs[f].level.unwrap();
                    if fl > level {
                        return Err(ComplexError::LevelNotDownwardClosed {
                            face: self.name(i),
                            level,
                            facet: self.name(f),
                            facet_level: fl,
                        });
                    }
                }
            }
        }

        // canonical order: (dim, label, insertion index)
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            (specs[a].dim, &specs[a].label, a).cmp(&(specs[b].dim, &specs[b].label, b))
        });
        let mut position = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let faces: Vec<Face> = order
            .iter()
            .map(|&old| {
                let spec = &specs[old];
                let mut facets: Vec<FaceId> =
                    spec.facets.iter().map(|&f| FaceId(position[f])).collect();
                facets.sort();
                Face {
                    dim: spec.dim,
                    label: spec.label.clone(),
                    facets,
                    delta: match (has_delta, spec.dim) {
                        (false, _) => None,
                        (true, 0) => Some(Vec::new()),
                        (true, _) => Some(
                            spec.delta
                                .as_ref()
                                .unwrap()
                                .iter()
                                .map(|&f| FaceId(position[f]))
                                .collect(),
                        ),
                    },
                    level: spec.level,
                }
            })
            .collect();

        let mut cofacets = vec![Vec::new(); n];
        for (i, face) in faces.iter().enumerate() {
            for f in &face.facets {
                cofacets[f.0].push(FaceId(i));
            }
        }

        let vertices = if has_delta {
            let vertices = delta_vertices(&faces);
            for (i, face) in faces.iter().enumerate() {
                self.check_delta_identities(&faces, i, &order)?;
                let distinct: BTreeSet<_> = vertices[i].iter().collect();
                if distinct.len() != face.dim + 1 {
                    return Err(ComplexError::BadDeltaStructure {
                        face: self.name(order[i]),
                        reason: "vertices of the simplex are not distinct".into(),
                    });
                }
            }
            vertices
        } else {
            closure_vertices(&faces)
        };

        Ok(Complex {
            faces,
            cofacets,
            vertices,
            has_delta,
            has_levels,
        })
    }

    fn check_delta_shape(&self, i: usize, delta: &[usize]) -> Result<(), ComplexError> {
        let spec = &self.specs[i];
        let expected = if spec.dim == 0 { 0 } else { spec.dim + 1 };
        if delta.len() != expected {
            return Err(ComplexError::BadDeltaStructure {
                face: self.name(i),
                reason: format!(
                    "a {}-face needs {} ordered facets, found {}",
                    spec.dim,
                    expected,
                    delta.len()
                ),
            });
        }
        let mut seen = BTreeSet::new();
        for &f in delta {
            if !seen.insert(f) {
                return Err(ComplexError::BadDeltaStructure {
                    face: self.name(i),
                    reason: format!("lists face {} twice", self.name(f)),
                });
            }
        }
        let covering: BTreeSet<usize> = spec.facets.iter().copied().collect();
        if seen != covering {
            return Err(ComplexError::BadDeltaStructure {
                face: self.name(i),
                reason: "delta_order and facets disagree".into(),
            });
        }
        Ok(())
    }

    fn check_delta_identities(
        &self,
        faces: &[Face],
        i: usize,
        order: &[usize],
    ) -> Result<(), ComplexError> {
        let face = &faces[i];
        let delta = face.delta.as_ref().unwrap();
        // d_i d_j = d_{j-1} d_i for i < j
        if face.dim >= 2 {
            for b in 1..delta.len() {
                for a in 0..b {
                    let lhs = faces[delta[b].0].delta.as_ref().unwrap()[a];
                    let rhs = faces[delta[a].0].delta.as_ref().unwrap()[b - 1];
                    if lhs != rhs {
                        return Err(ComplexError::BadDeltaStructure {
                            face: self.name(order[i]),
                            reason: format!(
                                "simplicial identity fails for omitted vertices {a} and {b}"
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Ordered vertex tuples of a Δ-complex. Faces are in dimension order, so
/// facets are always computed before their cofaces.
fn delta_vertices(faces: &[Face]) -> Vec<Vec<FaceId>> {
    let mut out: Vec<Vec<FaceId>> = Vec::with_capacity(faces.len());
    for (i, face) in faces.iter().enumerate() {
        let v = if face.dim == 0 {
            vec![FaceId(i)]
        } else {
            let delta = face.delta.as_ref().unwrap();
            let mut v = out[delta[face.dim].0].clone();
            v.push(*out[delta[0].0].last().unwrap());
            v
        };
        out.push(v);
    }
    out
}

fn closure_vertices(faces: &[Face]) -> Vec<Vec<FaceId>> {
    let mut out: Vec<Vec<FaceId>> = Vec::with_capacity(faces.len());
    for (i, face) in faces.iter().enumerate() {
        let v = if face.dim == 0 {
            vec![FaceId(i)]
        } else {
            let set: BTreeSet<FaceId> = face
                .facets
                .iter()
                .flat_map(|f| out[f.0].iter().copied())
                .collect();
            set.into_iter().collect()
        };
        out.push(v);
    }
    out
}

/// Common fixtures: small complexes that recur in examples and tests.
pub mod fixtures {
    use super::*;

    /// A single vertex.
    pub fn point(label: &str) -> Complex {
        let mut b = ComplexBuilder::new();
        b.add(FaceSpec::vertex(label));
        b.build().unwrap()
    }

    /// `n` isolated vertices labeled `p0..`.
    pub fn points(n: usize) -> Complex {
        let mut b = ComplexBuilder::new();
        for i in 0..n {
            b.add(FaceSpec::vertex(format!("p{i}")));
        }
        b.build().unwrap()
    }

    /// Boundary of a triangle with vertices `v1, v2, v3`.
    pub fn triangle_boundary() -> Complex {
        cycle(3)
    }

    /// Simplicial `n`-cycle with vertices `v1..vn` and edges `v{i}v{i+1}`.
    pub fn cycle(n: usize) -> Complex {
        assert!(n >= 2);
        let mut b = ComplexBuilder::new();
        let vs: Vec<usize> = (1..=n).map(|i| b.add(FaceSpec::vertex(format!("v{i}")))).collect();
        for i in 0..n {
            let (a, c) = if i + 1 < n { (i, i + 1) } else { (0, n - 1) };
            b.add(FaceSpec::simplex(
                format!("v{}v{}", a + 1, c + 1),
                vec![vs[c], vs[a]],
            ));
        }
        b.build().unwrap()
    }

    /// Two vertices joined by `n` parallel edges.
    pub fn banana(n: usize) -> Complex {
        let mut b = ComplexBuilder::new();
        let c1 = b.add(FaceSpec::vertex("C1"));
        let c2 = b.add(FaceSpec::vertex("C2"));
        for i in 1..=n {
            b.add(FaceSpec::simplex(format!("p{i}"), vec![c2, c1]));
        }
        b.build().unwrap()
    }

    /// The full simplex on `n + 1` vertices `0..=n` with all faces, as a
    /// Δ-complex; labels are the vertex sets, e.g. `"0.2.3"`.
    pub fn full_simplex(n: usize) -> Complex {
        simplicial(n + 1, |_| true)
    }

    /// Boundary of the `n`-simplex.
    pub fn simplex_boundary(n: usize) -> Complex {
        simplicial(n + 1, |s| s.len() <= n)
    }

    /// Simplicial complex on vertices `0..count` whose faces are the nonempty
    /// vertex subsets accepted by `keep` (must be closed under subsets).
    pub fn simplicial(count: usize, keep: impl Fn(&[usize]) -> bool) -> Complex {
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for mask in 1u64..(1u64 << count) {
            let s: Vec<usize> = (0..count).filter(|i| mask >> i & 1 == 1).collect();
            if keep(&s) {
                sets.push(s);
            }
        }
        from_simplices(&sets)
    }

    /// Simplicial complex from a subset-closed family of sorted vertex sets.
    pub fn from_simplices(sets: &[Vec<usize>]) -> Complex {
        let mut sorted: Vec<Vec<usize>> = sets.to_vec();
        sorted.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        sorted.dedup();
        let mut index = std::collections::BTreeMap::new();
        let mut b = ComplexBuilder::new();
        for s in &sorted {
            let label = s
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(".");
            let spec = if s.len() == 1 {
                FaceSpec::vertex(label)
            } else {
                let delta = (0..s.len())
                    .map(|omit| {
                        let mut t = s.clone();
                        t.remove(omit);
                        *index.get(&t).expect("family is not closed under subsets")
                    })
                    .collect();
                FaceSpec::simplex(label, delta)
            };
            index.insert(s.clone(), b.add(spec));
        }
        b.build().unwrap()
    }

    /// Boundary of the octahedron, as the join of three copies of `S⁰`.
    pub fn octahedron_boundary() -> Complex {
        let s0 = points(2);
        join(&s0, &join(&s0, &s0).unwrap()).unwrap()
    }

    /// Octahedron boundary modulo the antipodal map: a Δ-complex model of
    /// the real projective plane with `f = (3, 6, 4)`.
    pub fn projective_plane() -> Complex {
        let oct = octahedron_boundary();
        // the antipode of a vertex is the one vertex it shares no edge with
        let antipode = |v: FaceId| {
            oct.vertex_ids()
                .find(|&w| {
                    w != v && oct.ids_of_dim(1).all(|e| oct.vertex_set(e) != BTreeSet::from([v, w]))
                })
                .unwrap()
        };
        let map: Vec<FaceId> = oct
            .ids()
            .map(|id| {
                let image: BTreeSet<FaceId> = oct.vertex_set(id).into_iter().map(antipode).collect();
                oct.ids()
                    .find(|&g| oct.face(g).dim() == oct.face(id).dim() && oct.vertex_set(g) == image)
                    .unwrap()
            })
            .collect();
        quotient_free_involution(&oct, &map).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn triangle_boundary_is_valid() {
        let c = triangle_boundary();
        assert_eq!(c.f_vector(), vec![3, 3]);
        assert!(c.has_delta());
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.connected_components().len(), 1);
    }

    #[test]
    fn point_complex() {
        let c = point("x");
        assert_eq!(c.f_vector(), vec![1]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn edge_on_one_vertex_twice_is_rejected() {
        let mut b = ComplexBuilder::new();
        let v = b.add(FaceSpec::vertex("v"));
        b.add(FaceSpec::simplex("loop", vec![v, v]));
        assert!(matches!(
            b.build(),
            Err(ComplexError::BadDeltaStructure { .. })
        ));

        let mut b = ComplexBuilder::new();
        let v = b.add(FaceSpec::vertex("v"));
        b.add(FaceSpec::cell("loop", 1, vec![v, v]));
        assert!(matches!(
            b.build(),
            Err(ComplexError::BadDeltaStructure { .. })
        ));
    }

    #[test]
    fn grading_and_dangling_errors_name_the_face() {
        let mut b = ComplexBuilder::new();
        let v = b.add(FaceSpec::vertex("v"));
        let w = b.add(FaceSpec::vertex("w"));
        let e = b.add(FaceSpec::cell("e", 1, vec![v, w]));
        b.add(FaceSpec::cell("bad", 3, vec![e, v]));
        let err = b.build().unwrap_err();
        assert!(matches!(err, ComplexError::GradingViolation { ref face, .. } if face.contains("bad")));

        let mut b = ComplexBuilder::new();
        b.add(FaceSpec::cell("e", 1, vec![4, 5]));
        assert!(matches!(b.build(), Err(ComplexError::DanglingFace { .. })));
    }

    #[test]
    fn simplicial_identity_is_checked() {
        // a 2-simplex whose edges do not fit together
        let mut b = ComplexBuilder::new();
        let v: Vec<usize> = (0..3).map(|i| b.add(FaceSpec::vertex(format!("v{i}")))).collect();
        let e01 = b.add(FaceSpec::simplex("e01", vec![v[1], v[0]]));
        let e02 = b.add(FaceSpec::simplex("e02", vec![v[2], v[0]]));
        let e12 = b.add(FaceSpec::simplex("e12", vec![v[2], v[1]]));
        b.add(FaceSpec::simplex("t", vec![e12, e01, e02]));
        assert!(matches!(
            b.build(),
            Err(ComplexError::BadDeltaStructure { .. })
        ));
    }

    #[test]
    fn levels_must_be_downward_closed() {
        let mut b = ComplexBuilder::new();
        let v = b.add(FaceSpec::vertex("v").at_level(Some(2)));
        let w = b.add(FaceSpec::vertex("w").at_level(Some(1)));
        b.add(FaceSpec::simplex("vw", vec![w, v]).at_level(Some(1)));
        assert!(matches!(
            b.build(),
            Err(ComplexError::LevelNotDownwardClosed { .. })
        ));
    }

    #[test]
    fn components() {
        let c = disjoint_union(&point("t"), &triangle_boundary());
        assert_eq!(c.connected_components().len(), 2);
        assert_eq!(Complex::empty().connected_components().len(), 0);
        assert_eq!(triangle_boundary().connected_components().len(), 1);
    }

    #[test]
    fn skeleton_of_tetrahedron() {
        let c = full_simplex(3);
        assert_eq!(c.skeleton(1).f_vector(), vec![4, 6]);
        assert_eq!(c.skeleton(3), c);
        assert_eq!(c.skeleton(9), c);
    }

    #[test]
    fn level_subcomplexes() {
        let mut b = ComplexBuilder::new();
        let v: Vec<usize> = (1..=3)
            .map(|i| b.add(FaceSpec::vertex(format!("v{i}")).at_level(Some(1))))
            .collect();
        b.add(FaceSpec::simplex("e12", vec![v[1], v[0]]).at_level(Some(1)));
        b.add(FaceSpec::simplex("e23", vec![v[2], v[1]]).at_level(Some(1)));
        b.add(FaceSpec::simplex("e13", vec![v[2], v[0]]).at_level(Some(1)));
        let f = b.add(FaceSpec::vertex("F").at_level(Some(2)));
        b.add(FaceSpec::simplex("e3F", vec![f, v[2]]).at_level(Some(2)));
        let c = b.build().unwrap();
        assert_eq!(c.level_subcomplex(2).unwrap(), c);
        assert_eq!(c.level_subcomplex(1).unwrap().f_vector(), vec![3, 3]);
        assert!(c.level_subcomplex(0).unwrap().is_empty());
        assert_eq!(
            triangle_boundary().level_subcomplex(1),
            Err(ComplexError::NoFiltration)
        );
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(octahedron_boundary().f_vector(), vec![6, 12, 8]);
        assert_eq!(octahedron_boundary().euler_characteristic(), 2);
        assert_eq!(banana(4).euler_characteristic(), -2);
    }

    #[test]
    fn delta_positions_roundtrip() {
        let c = full_simplex(2);
        let t = c.ids_of_dim(2).next().unwrap();
        for f in c.closure(t) {
            let keep = c.delta_positions(f, t).unwrap();
            assert_eq!(c.delta_subface(t, &keep), Some(f));
        }
    }
}
