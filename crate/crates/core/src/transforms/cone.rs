use std::collections::{BTreeMap, BTreeSet};

use super::{spec_of, TransformError};
use crate::complex::{Complex, ComplexBuilder, ComplexError, FaceId, FaceSpec, Level};

fn invalid(reason: String) -> TransformError {
    TransformError::DescriptorInvalid(reason)
}

/// Adds a vertex `e` and the cones `γ * e` over every face `γ` in the
/// closure of `attach`, with `e` last in vertex order. The input stays a
/// subcomplex.
///
/// The descriptor must satisfy: `base ∈ attach`; every attached face
/// contains `base`; `pivot` is a vertex of `base`; attached faces are
/// distinct; no two faces of the closure share their whole boundary; and
/// flowing `e` onto `pivot` pairs the new faces perfectly. On a filtered
/// complex `e` gets `level` (default the level of `base`, never less), the
/// cone `γ * e` gets the larger of the levels of `γ` and `e`, and the
/// pairing must stay within each level.
pub fn attach_cone(
    c: &Complex,
    base: FaceId,
    attach: &[FaceId],
    pivot: FaceId,
    level: Option<Level>,
    label: &str,
) -> Result<Complex, TransformError> {
    for &id in attach.iter().chain([&base, &pivot]) {
        if id.0 >= c.len() {
            return Err(ComplexError::NoSuchFace(id.to_string()).into());
        }
    }
    let name = |id: FaceId| c.face(id).label().to_string();
    if !attach.contains(&base) {
        return Err(invalid(format!("attachment set does not contain the base face {}", name(base))));
    }
    for &t in attach {
        if !c.is_face_of(base, t) {
            return Err(invalid(format!(
                "attached face {} does not contain the base face {}",
                name(t),
                name(base)
            )));
        }
    }
    if c.face(pivot).dim() != 0 || !c.vertex_set(base).contains(&pivot) {
        return Err(invalid(format!("pivot {} is not a vertex of the base face", name(pivot))));
    }
    let mut seen = BTreeSet::new();
    for &t in attach {
        if !seen.insert(t) {
            return Err(invalid(format!("face {} is attached twice", name(t))));
        }
    }
    let closure: BTreeSet<FaceId> = attach.iter().flat_map(|&t| c.closure(t)).collect();
    let mut boundaries: BTreeMap<&[FaceId], FaceId> = BTreeMap::new();
    for &g in &closure {
        if c.face(g).dim() == 0 {
            continue;
        }
        if let Some(&other) = boundaries.get(c.face(g).facets()) {
            return Err(invalid(format!(
                "faces {} and {} in the attachment closure have the same boundary",
                name(other),
                name(g)
            )));
        }
        boundaries.insert(c.face(g).facets(), g);
    }

    // pairing of the new faces: γ * e with γ ∌ pivot goes to γ' * e, where
    // γ' ⊃ γ has one more vertex, the pivot; e itself goes to pivot * e
    let mut partner: BTreeMap<Option<FaceId>, FaceId> = BTreeMap::new();
    partner.insert(None, pivot);
    for &g in closure.iter().filter(|&&g| !c.vertex_set(g).contains(&pivot)) {
        let mut want = c.vertex_set(g);
        want.insert(pivot);
        let ups: Vec<FaceId> = c
            .cofacets(g)
            .iter()
            .copied()
            .filter(|u| closure.contains(u) && c.vertex_set(*u) == want)
            .collect();
        if ups.len() != 1 {
            return Err(invalid(format!(
                "flowing onto the pivot gives face {} {} partners",
                name(g),
                ups.len()
            )));
        }
        partner.insert(Some(g), ups[0]);
    }
    let hit: BTreeSet<FaceId> = partner.values().copied().collect();
    let upper: BTreeSet<FaceId> = closure
        .iter()
        .copied()
        .filter(|&g| c.vertex_set(g).contains(&pivot))
        .collect();
    if hit.len() != partner.len() || hit != upper {
        let stray = upper.symmetric_difference(&hit).next().copied().unwrap_or(pivot);
        return Err(invalid(format!(
            "flowing onto the pivot does not pair face {} exactly once",
            name(stray)
        )));
    }

    let e_level = match (c.has_levels(), level) {
        (false, None) => None,
        (false, Some(_)) => {
            return Err(invalid("a level was given for an unfiltered complex".into()));
        }
        (true, l) => {
            let floor = c.face(base).level().unwrap();
            let l = l.unwrap_or(floor);
            if l < floor {
                return Err(invalid(format!(
                    "level {l} of the new vertex is below the level {floor} of the base face"
                )));
            }
            Some(l)
        }
    };
    let cone_level = |g: Option<FaceId>| match (e_level, g) {
        (Some(l), Some(g)) => Some(l.max(c.face(g).level().unwrap())),
        (l, _) => l,
    };
    for (&g, &up) in &partner {
        if cone_level(g) != cone_level(Some(up)) {
            let lower = g.map_or(label.to_string(), &name);
            return Err(invalid(format!(
                "flowing onto the pivot pairs {} with {} across levels",
                lower,
                name(up)
            )));
        }
    }

    let mut builder = ComplexBuilder::new();
    for f in c.faces() {
        builder.add(spec_of(f));
    }
    let e = builder.add(FaceSpec::vertex(label).at_level(e_level));
    let mut coned: BTreeMap<FaceId, usize> = BTreeMap::new();
    for &g in &closure {
        let face = c.face(g);
        let over = |f: &FaceId| coned[f];
        let facets: Vec<usize> = if face.dim() == 0 {
            vec![g.0, e]
        } else {
            face.facets().iter().map(over).chain([g.0]).collect()
        };
        let delta = c.has_delta().then(|| {
            if face.dim() == 0 {
                vec![e, g.0]
            } else {
                face.delta_facets().unwrap().iter().map(over).chain([g.0]).collect()
            }
        });
        let idx = builder.add(FaceSpec {
            label: format!("{}*{label}", face.label()),
            dim: face.dim() + 1,
            facets,
            delta,
            level: cone_level(Some(g)),
        });
        coned.insert(g, idx);
    }
    Ok(builder.build()?)
}
