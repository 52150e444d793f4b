use std::collections::HashMap;

use super::{Complex, ComplexBuilder, FaceSpec};

/// Simplicial complex whose `k`-simplices are the chains `f₀ < ⋯ < f_k` of
/// the face poset. Chain vertices are ordered bottom-up, so facet `i` drops
/// the `i`-th face of the chain. A chain is labeled by its members joined
/// with `<`, and a filtered input gives each chain the level of its top.
pub(super) fn order_complex(c: &Complex) -> Complex {
    let n = c.len();
    // chains grouped by length; each chain is increasing in canonical order
    let mut by_length: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|i| vec![i]).collect()];
    loop {
        let last = by_length.last().unwrap();
        let mut next = Vec::new();
        for chain in last {
            let top = *chain.last().unwrap();
            for up in c.star(super::FaceId(top)) {
                if up.0 != top {
                    let mut longer = chain.clone();
                    longer.push(up.0);
                    next.push(longer);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        by_length.push(next);
    }

    let mut builder = ComplexBuilder::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for chains in &by_length {
        for chain in chains {
            let label = chain
                .iter()
                .map(|&f| c.faces()[f].label())
                .collect::<Vec<_>>()
                .join("<");
            let level = c.faces()[*chain.last().unwrap()].level();
            let spec = if chain.len() == 1 {
                FaceSpec::vertex(label)
            } else {
                let delta = (0..chain.len())
                    .map(|omit| {
                        let mut shorter = chain.clone();
                        shorter.remove(omit);
                        index[&shorter]
                    })
                    .collect();
                FaceSpec::simplex(label, delta)
            };
            let idx = builder.add(spec.at_level(level));
            index.insert(chain.clone(), idx);
        }
    }
    builder.build().expect("order complex of a valid complex")
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;

    #[test]
    fn subdivided_interval() {
        let c = full_simplex(1).order_complex();
        assert_eq!(c.f_vector(), vec![3, 2]);
    }

    #[test]
    fn subdivided_triangle_boundary_is_a_hexagon() {
        assert_eq!(triangle_boundary().order_complex().f_vector(), vec![6, 6]);
    }

    #[test]
    fn subdivided_two_conics() {
        assert_eq!(banana(4).order_complex().f_vector(), vec![6, 8]);
    }

    #[test]
    fn subdivided_two_simplex() {
        // 7 barycenters, 12 edges, 6 triangles
        assert_eq!(full_simplex(2).order_complex().f_vector(), vec![7, 12, 6]);
    }
}
