use std::collections::BTreeSet;

use super::{Complex, ComplexBuilder, ComplexError, FaceId, FaceSpec};

/// Quotient of `c` by a fixed-point-free involution of its face poset, given
/// as the image of every face. Orbit faces are labeled `"a|b"` after their
/// two members in canonical order.
///
/// The Δ-structure survives when the involution commutes with every ordered
/// facet list, and levels survive when they are constant on orbits. The
/// quotient is rejected unless the closure of every cell maps injectively
/// to orbits.
pub fn quotient_free_involution(c: &Complex, map: &[FaceId]) -> Result<Complex, ComplexError> {
    let name = |id: FaceId| format!("{:?}", c.face(id).label());
    if map.len() != c.len() {
        return Err(ComplexError::NotInvolution(format!(
            "map has {} entries for {} faces",
            map.len(),
            c.len()
        )));
    }
    for id in c.ids() {
        let image = map[id.0];
        if image.0 >= c.len() || map[image.0] != id {
            return Err(ComplexError::NotInvolution(name(id)));
        }
        if image == id {
            return Err(ComplexError::HasFixedFace(name(id)));
        }
        let face = c.face(id);
        let mapped: BTreeSet<FaceId> = face.facets().iter().map(|f| map[f.0]).collect();
        let target: BTreeSet<FaceId> = c.face(image).facets().iter().copied().collect();
        if face.dim() != c.face(image).dim() || mapped != target {
            return Err(ComplexError::NotOrderPreserving(name(id)));
        }
    }

    let orbit = |id: FaceId| id.min(map[id.0]);
    for id in c.ids() {
        let closure = c.closure(id);
        let images: BTreeSet<FaceId> = closure.iter().map(|&f| orbit(f)).collect();
        if images.len() != closure.len() {
            return Err(ComplexError::QuotientNotRegular(name(id)));
        }
    }

    let keep_delta = c.has_delta()
        && c.ids().all(|id| {
            let here = c.face(id).delta_facets().unwrap();
            let there = c.face(map[id.0]).delta_facets().unwrap();
            here.iter().zip(there).all(|(f, g)| map[f.0] == *g)
        });
    let keep_levels =
        c.has_levels() && c.ids().all(|id| c.face(id).level() == c.face(map[id.0]).level());

    let mut builder = ComplexBuilder::new();
    let mut index = vec![usize::MAX; c.len()];
    for id in c.ids().filter(|&id| orbit(id) == id) {
        let face = c.face(id);
        let remap = |ids: &[FaceId]| ids.iter().map(|&f| index[orbit(f).0]).collect::<Vec<_>>();
        index[id.0] = builder.add(FaceSpec {
            label: format!("{}|{}", face.label(), c.face(map[id.0]).label()),
            dim: face.dim(),
            facets: remap(face.facets()),
            delta: if keep_delta {
                face.delta_facets().map(remap)
            } else {
                None
            },
            level: if keep_levels { face.level() } else { None },
        });
    }
    builder.build()
}
