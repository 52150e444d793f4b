use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{spec_of, TransformError};
use crate::complex::{Complex, ComplexBuilder, ComplexError, FaceId, FaceSpec};

/// Result of flowing a vertex `v_E` onto a vertex `v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseFlow {
    /// The complex with every face through `v_E` removed, plus the images
    /// of unmatched faces under `v_E ↦ v_j`.
    #[serde(skip)]
    pub complex: Complex,
    /// Pairs `(σ, τ)` of the input with `σ ∋ v_E`, `σ ∌ v_j` and `τ` the face
    /// spanned by `σ` and `v_j`.
    pub matching: Vec<(FaceId, FaceId)>,
    /// Indices into `matching` in an order compatible with every gradient
    /// path; its existence certifies acyclicity.
    pub order: Vec<usize>,
    /// Faces through `v_E` left unmatched and carried over by contraction.
    pub carried: Vec<FaceId>,
    /// True when every face through `v_E` is matched.
    pub perfect: bool,
}

/// Discrete Morse flow pairing each face `σ ∋ v_E` not containing `v_j`
/// with the unique cofacet whose vertex set adds `v_j`. `v_E` itself must
/// be matched. The matching must be acyclic; unmatched faces through `v_E`
/// are carried over by contracting `v_E` onto `v_j`, which must not create
/// a face already present.
pub fn morse_flow_ve(c: &Complex, v_e: FaceId, v_j: FaceId) -> Result<MorseFlow, TransformError> {
    for v in [v_e, v_j] {
        if v.0 >= c.len() || c.face(v).dim() != 0 {
            return Err(ComplexError::NotAVertex(v.to_string()).into());
        }
    }
    let name = |id: FaceId| c.face(id).label().to_string();
    if v_e == v_j {
        return Err(TransformError::PairingIncomplete(name(v_e)));
    }
    let through: BTreeSet<FaceId> = c.star(v_e);

    let mut matching: Vec<(FaceId, FaceId)> = Vec::new();
    let mut carried = Vec::new();
    let mut partner_of: BTreeMap<FaceId, FaceId> = BTreeMap::new();
    for &s in through.iter().filter(|&&s| !c.vertex_set(s).contains(&v_j)) {
        let mut want = c.vertex_set(s);
        want.insert(v_j);
        let ups: Vec<FaceId> = c
            .cofacets(s)
            .iter()
            .copied()
            .filter(|&u| c.vertex_set(u) == want)
            .collect();
        match ups.as_slice() {
            [] if s == v_e => return Err(TransformError::PairingIncomplete(name(s))),
            [] => carried.push(s),
            [t] => {
                if partner_of.insert(*t, s).is_some() {
                    return Err(TransformError::PairingNotUnique(name(*t)));
                }
                matching.push((s, *t));
            }
            _ => return Err(TransformError::PairingNotUnique(name(s))),
        }
    }
    for &t in through.iter().filter(|&&t| c.vertex_set(t).contains(&v_j)) {
        if !partner_of.contains_key(&t) {
            return Err(TransformError::PairingIncomplete(name(t)));
        }
    }

    // gradient paths: pair p -> pair q when the upper face of p has the
    // lower face of q as another facet
    let pair_of_lower: BTreeMap<FaceId, usize> =
        matching.iter().enumerate().map(|(i, &(s, _))| (s, i)).collect();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); matching.len()];
    let mut indegree = vec![0usize; matching.len()];
    for (p, &(s, t)) in matching.iter().enumerate() {
        for f in c.face(t).facets() {
            if *f == s {
                continue;
            }
            if let Some(&q) = pair_of_lower.get(f) {
                out_edges[p].push(q);
                indegree[q] += 1;
            }
        }
    }
    let mut ready: VecDeque<usize> = (0..matching.len()).filter(|&p| indegree[p] == 0).collect();
    let mut order = Vec::with_capacity(matching.len());
    while let Some(p) = ready.pop_front() {
        order.push(p);
        for &q in &out_edges[p] {
            indegree[q] -= 1;
            if indegree[q] == 0 {
                ready.push_back(q);
            }
        }
    }
    if order.len() != matching.len() {
        return Err(TransformError::MatchingNotAcyclic);
    }

    let mut builder = ComplexBuilder::new();
    let mut index = vec![usize::MAX; c.len()];
    for id in c.ids().filter(|id| !through.contains(id)) {
        let mut spec = spec_of(c.face(id));
        spec.facets = spec.facets.iter().map(|&f| index[f]).collect();
        spec.delta = spec.delta.map(|d| d.iter().map(|&f| index[f]).collect());
        index[id.0] = builder.add(spec);
    }
    index[v_e.0] = index[v_j.0];
    // boundaries present so far, to detect images landing on an old face
    let mut boundaries: BTreeSet<(usize, Vec<usize>)> = c
        .ids()
        .filter(|id| !through.contains(id) && c.face(*id).dim() > 0)
        .map(|id| {
            let mut b: Vec<usize> = c.face(id).facets().iter().map(|f| index[f.0]).collect();
            b.sort_unstable();
            (c.face(id).dim(), b)
        })
        .collect();
    for &s in &carried {
        let face = c.face(s);
        let image = |f: &FaceId| -> Result<usize, TransformError> {
            match index[f.0] {
                usize::MAX => Err(TransformError::ContractionNotInjective(name(s))),
                i => Ok(i),
            }
        };
        let facets = face.facets().iter().map(image).collect::<Result<Vec<_>, _>>()?;
        let mut key = facets.clone();
        key.sort_unstable();
        key.dedup();
        if key.len() != facets.len() || !boundaries.insert((face.dim(), key)) {
            return Err(TransformError::ContractionNotInjective(name(s)));
        }
        let delta = match face.delta_facets() {
            Some(d) => Some(d.iter().map(image).collect::<Result<Vec<_>, _>>()?),
            None => None,
        };
        index[s.0] = builder.add(FaceSpec {
            label: face.label().to_string(),
            dim: face.dim(),
            facets,
            delta,
            level: face.level(),
        });
    }
    let complex = builder
        .build()
        .map_err(|_| TransformError::ContractionNotInjective(name(v_e)))?;
    Ok(MorseFlow {
        complex,
        perfect: carried.is_empty(),
        matching,
        order,
        carried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::is_isomorphic;
    use crate::homology::homology;
    use crate::transforms::{attach_cone, stellar_subdivide};

    #[test]
    fn undoes_the_pendant_edge() {
        let t = triangle_boundary();
        let v3 = t.find_label("v3").unwrap();
        let out = attach_cone(&t, v3, &[v3], v3, None, "E").unwrap();
        let flow = morse_flow_ve(&out, out.find_label("E").unwrap(), out.find_label("v3").unwrap()).unwrap();
        assert!(flow.perfect);
        assert_eq!(flow.matching.len(), 1);
        assert_eq!(flow.complex, t);
    }

    #[test]
    fn flattens_a_subdivided_edge() {
        let t = triangle_boundary();
        let square = stellar_subdivide(&t, t.find_label("v1v2").unwrap()).unwrap();
        let flow = morse_flow_ve(&square, square.find_label("e").unwrap(), square.find_label("v1").unwrap())
            .unwrap();
        assert!(!flow.perfect);
        assert_eq!(flow.carried.len(), 1);
        assert_eq!(flow.complex.f_vector(), vec![3, 3]);
        assert!(is_isomorphic(&flow.complex, &t));
        assert_eq!(homology(&flow.complex, false).unwrap(), homology(&square, false).unwrap());
    }

    #[test]
    fn pivot_must_be_adjacent() {
        let c = cycle(4);
        let (v1, v3) = (c.find_label("v1").unwrap(), c.find_label("v3").unwrap());
        assert_eq!(
            morse_flow_ve(&c, v1, v3).unwrap_err(),
            TransformError::PairingIncomplete("v1".into())
        );
    }

    #[test]
    fn parallel_edges_are_not_unique() {
        let b = banana(2);
        let (c1, c2) = (b.find_label("C1").unwrap(), b.find_label("C2").unwrap());
        assert_eq!(
            morse_flow_ve(&b, c1, c2).unwrap_err(),
            TransformError::PairingNotUnique("C1".into())
        );
    }

    #[test]
    fn contraction_onto_an_existing_face_is_rejected() {
        // triangle boundary: flowing v1 onto v2 would carry edge v1v3 onto v2v3
        let t = triangle_boundary();
        let err = morse_flow_ve(&t, t.find_label("v1").unwrap(), t.find_label("v2").unwrap()).unwrap_err();
        assert!(matches!(err, TransformError::ContractionNotInjective(_)), "{err}");
    }
}
