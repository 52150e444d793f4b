use std::collections::{BTreeMap, HashMap};

use super::{spec_of, TransformError};
use crate::complex::{Complex, ComplexBuilder, ComplexError, FaceId, FaceSpec, Level};

/// Stellar subdivision along `sigma` with the new vertex labeled `"e"`.
pub fn stellar_subdivide(c: &Complex, sigma: FaceId) -> Result<Complex, TransformError> {
    stellar_subdivide_with(c, sigma, "e", None)
}

/// Stellar subdivision of a Δ-complex along `sigma`.
///
/// Every face `τ ≥ σ` splits as `τ = σ * β` by vertex positions. It is
/// removed and replaced by the faces `e * α * β` for the proper subfaces
/// `α` of `σ` inside `τ`, with `e` first in vertex order. The new face is
/// labeled `"{e}*{γ}"` after its old facet `γ = α * β`, with `"@{τ}"`
/// appended when several `τ` share that `γ`.
///
/// On a filtered complex `e` gets `level`, which must lie between the
/// least level of a vertex of `σ` and the level of `σ` (default the
/// latter), and `e * γ` gets the larger of the levels of `e` and `γ`.
pub fn stellar_subdivide_with(
    c: &Complex,
    sigma: FaceId,
    label: &str,
    level: Option<Level>,
) -> Result<Complex, TransformError> {
    if sigma.0 >= c.len() {
        return Err(ComplexError::NoSuchFace(sigma.to_string()).into());
    }
    if !c.has_delta() {
        return Err(ComplexError::MissingDeltaStructure("the complex".into()).into());
    }
    let e_level = match (c.face(sigma).level(), level) {
        (None, _) => None,
        (Some(top), None) => Some(top),
        (Some(top), Some(l)) => {
            let low = c
                .vertices_of(sigma)
                .iter()
                .filter_map(|&v| c.face(v).level())
                .min()
                .unwrap_or(top);
            if l < low || l > top {
                return Err(TransformError::DescriptorInvalid(format!(
                    "level {l} of the new vertex lies outside {low}..={top}"
                )));
            }
            Some(l)
        }
    };

    let star = c.star(sigma);
    let mut builder = ComplexBuilder::new();
    let mut old = vec![usize::MAX; c.len()];
    for id in c.ids().filter(|id| !star.contains(id)) {
        let mut spec = spec_of(c.face(id));
        spec.facets = spec.facets.iter().map(|&f| old[f]).collect();
        spec.delta = spec.delta.map(|d| d.iter().map(|&f| old[f]).collect());
        old[id.0] = builder.add(spec);
    }

    // new faces keyed by (τ, positions of α inside τ); α ranges over proper
    // subsets of the positions of σ
    struct New {
        tau: FaceId,
        alpha: Vec<bool>,
        gamma: Option<FaceId>,
    }
    let mut faces: Vec<New> = Vec::new();
    for &tau in &star {
        let positions = c.delta_positions(sigma, tau).expect("σ is a face of τ");
        let sigma_pos: Vec<usize> = (0..positions.len()).filter(|&i| positions[i]).collect();
        for subset in 0u64..(1 << sigma_pos.len()) - 1 {
            let mut alpha = vec![false; positions.len()];
            for (bit, &p) in sigma_pos.iter().enumerate() {
                alpha[p] = subset >> bit & 1 == 1;
            }
            let keep: Vec<bool> = (0..positions.len()).map(|i| alpha[i] || !positions[i]).collect();
            faces.push(New {
                tau,
                alpha,
                gamma: c.delta_subface(tau, &keep),
            });
        }
    }
    let mut sharing: BTreeMap<FaceId, usize> = BTreeMap::new();
    for f in &faces {
        if let Some(g) = f.gamma {
            *sharing.entry(g).or_default() += 1;
        }
    }
    let mut order: Vec<usize> = (0..faces.len()).collect();
    let size = |f: &New| f.gamma.map_or(0, |g| c.face(g).dim() + 1);
    order.sort_by_key(|&i| (size(&faces[i]), i));

    let mut index: HashMap<(FaceId, Vec<bool>), usize> = HashMap::new();
    for i in order {
        let f = &faces[i];
        let Some(gamma) = f.gamma else {
            let e = builder.add(FaceSpec::vertex(label).at_level(e_level));
            index.insert((f.tau, f.alpha.clone()), e);
            continue;
        };
        let positions = c.delta_positions(sigma, f.tau).unwrap();
        let tau_delta = c.face(f.tau).delta_facets();
        let mut delta = vec![old[gamma.0]];
        for p in 0..positions.len() {
            if positions[p] && !f.alpha[p] {
                continue;
            }
            let key = if f.alpha[p] {
                let mut smaller = f.alpha.clone();
                smaller[p] = false;
                (f.tau, smaller)
            } else {
                // drop position p of τ, which lies outside σ
                let facet = tau_delta.expect("Δ-structure")[p];
                let mut alpha = f.alpha.clone();
                alpha.remove(p);
                (facet, alpha)
            };
            delta.push(index[&key]);
        }
        let mut name = format!("{label}*{}", c.face(gamma).label());
        if sharing[&gamma] > 1 {
            name = format!("{name}@{}", c.face(f.tau).label());
        }
        let level = e_level.map(|l| l.max(c.face(gamma).level().unwrap()));
        let idx = builder.add(FaceSpec::simplex(name, delta).at_level(level));
        index.insert((f.tau, f.alpha.clone()), idx);
    }
    Ok(builder.build()?)
}
