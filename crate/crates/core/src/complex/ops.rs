use super::{Complex, ComplexBuilder, ComplexError, FaceId, FaceSpec, Level};

/// Copies every face of `c` into `b`, remapping `replace` entries. Returns the
/// builder index of each face of `c`.
fn copy_into(
    b: &mut ComplexBuilder,
    c: &Complex,
    keep_delta: bool,
    keep_levels: bool,
    replace: Option<(FaceId, usize)>,
) -> Vec<usize> {
    let mut map = Vec::with_capacity(c.len());
    for (i, face) in c.faces().iter().enumerate() {
        if let Some((from, to)) = replace {
            if from.0 == i {
                map.push(to);
                continue;
            }
        }
        let remap = |ids: &[FaceId]| ids.iter().map(|f| map[f.0]).collect::<Vec<usize>>();
        let idx = b.add(FaceSpec {
            label: face.label().to_string(),
            dim: face.dim(),
            facets: remap(face.facets()),
            delta: if keep_delta {
                face.delta_facets().map(remap)
            } else {
                None
            },
            level: if keep_levels { face.level() } else { None },
        });
        map.push(idx);
    }
    map
}

/// Disjoint union. The Δ-structure (levels) survive only if both inputs
/// carry one.
pub fn disjoint_union(a: &Complex, b: &Complex) -> Complex {
    let keep_delta = a.has_delta() && b.has_delta();
    let keep_levels = a.has_levels() && b.has_levels();
    let mut builder = ComplexBuilder::new();
    copy_into(&mut builder, a, keep_delta, keep_levels, None);
    copy_into(&mut builder, b, keep_delta, keep_levels, None);
    builder.build().expect("disjoint union of valid complexes")
}

/// One-point union identifying vertex `vb` of `b` with vertex `va` of `a`;
/// the identified vertex keeps the label of `va`.
pub fn wedge(a: &Complex, va: FaceId, b: &Complex, vb: FaceId) -> Result<Complex, ComplexError> {
    for (c, v) in [(a, va), (b, vb)] {
        if v.0 >= c.len() || c.face(v).dim() != 0 {
            return Err(ComplexError::NotAVertex(v.to_string()));
        }
    }
    let keep_delta = a.has_delta() && b.has_delta();
    let keep_levels = a.has_levels() && b.has_levels();
    let mut builder = ComplexBuilder::new();
    let map_a = copy_into(&mut builder, a, keep_delta, keep_levels, None);
    copy_into(&mut builder, b, keep_delta, keep_levels, Some((vb, map_a[va.0])));
    builder.build()
}

/// Cone over `c` with apex labeled `"apex"`.
pub fn cone(c: &Complex) -> Complex {
    cone_with_apex(c, "apex")
}

/// Cone over `c`. With a Δ-structure the apex is the last vertex of every
/// new simplex, matching `join(c, point)`. A filtered input gives the apex
/// the lowest level present and each `apex * f` the level of `f`.
pub fn cone_with_apex(c: &Complex, apex_label: &str) -> Complex {
    let delta = c.has_delta();
    let mut builder = ComplexBuilder::new();
    let base = copy_into(&mut builder, c, delta, true, None);
    let apex_level: Option<Level> = c.levels().first().copied();
    let apex = builder.add(FaceSpec {
        label: apex_label.to_string(),
        dim: 0,
        facets: Vec::new(),
        delta: Some(Vec::new()),
        level: apex_level,
    });
    let mut coned = Vec::with_capacity(c.len());
    for (i, face) in c.faces().iter().enumerate() {
        let over = |f: &FaceId| coned[f.0];
        let facets: Vec<usize> = if face.dim() == 0 {
            vec![base[i], apex]
        } else {
            face.facets().iter().map(over).chain([base[i]]).collect()
        };
        let delta_list = delta.then(|| {
            if face.dim() == 0 {
                vec![apex, base[i]]
            } else {
                face.delta_facets()
                    .unwrap()
                    .iter()
                    .map(over)
                    .chain([base[i]])
                    .collect()
            }
        });
        coned.push(builder.add(FaceSpec {
            label: format!("{}*{}", face.label(), apex_label),
            dim: face.dim() + 1,
            facets,
            delta: delta_list,
            level: face.level(),
        }));
    }
    builder.build().expect("cone over a valid complex")
}

/// Join of two Δ-complexes. The faces are the pairs `(α, β)` with at most one
/// side empty; in a joint simplex the vertices of `a` precede those of `b`.
pub fn join(a: &Complex, b: &Complex) -> Result<Complex, ComplexError> {
    if !a.has_delta() {
        return Err(ComplexError::MissingDeltaStructure("the left factor".into()));
    }
    if !b.has_delta() {
        return Err(ComplexError::MissingDeltaStructure("the right factor".into()));
    }
    let keep_levels = a.has_levels() && b.has_levels();
    let mut builder = ComplexBuilder::new();
    let left = copy_into(&mut builder, a, true, keep_levels, None);
    let right = copy_into(&mut builder, b, true, keep_levels, None);

    // joint[(i, j)] for faces i of a and j of b, built in dimension order so
    // that facets exist before their cofaces
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..a.len() {
        for j in 0..b.len() {
            pairs.push((i, j));
        }
    }
    pairs.sort_by_key(|&(i, j)| (a.faces()[i].dim() + b.faces()[j].dim(), i, j));
    let mut joint = vec![usize::MAX; a.len() * b.len()];
    let key = |i: usize, j: usize| i * b.len() + j;
    for (i, j) in pairs {
        let fa = &a.faces()[i];
        let fb = &b.faces()[j];
        let (da, db) = (fa.dim(), fb.dim());
        let mut delta = Vec::with_capacity(da + db + 2);
        for pos in 0..=da {
            delta.push(if da == 0 {
                right[j]
            } else {
                joint[key(fa.delta_facets().unwrap()[pos].0, j)]
            });
        }
        for pos in 0..=db {
            delta.push(if db == 0 {
                left[i]
            } else {
                joint[key(i, fb.delta_facets().unwrap()[pos].0)]
            });
        }
        let level = match (keep_levels, fa.level(), fb.level()) {
            (true, Some(x), Some(y)) => Some(x.max(y)),
            _ => None,
        };
        joint[key(i, j)] = builder.add(FaceSpec {
            label: format!("{}*{}", fa.label(), fb.label()),
            dim: da + db + 1,
            facets: delta.clone(),
            delta: Some(delta),
            level,
        });
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn join_of_zero_spheres_is_a_square() {
        let s0 = points(2);
        let c = join(&s0, &s0).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4]);
        assert!(c.is_connected());
    }

    #[test]
    fn octahedron_from_three_zero_spheres() {
        let s0 = points(2);
        let c = join(&s0, &join(&s0, &s0).unwrap()).unwrap();
        assert_eq!(c.f_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn join_f_vector_is_a_convolution() {
        let a = triangle_boundary();
        let b = banana(3);
        let c = join(&a, &b).unwrap();
        let (fa, fb) = (a.f_vector(), b.f_vector());
        let mut expected = vec![0usize; fa.len() + fb.len()];
        for (k, e) in expected.iter_mut().enumerate() {
            if k < fa.len() {
                *e += fa[k];
            }
            if k < fb.len() {
                *e += fb[k];
            }
            for (i, &x) in fa.iter().enumerate() {
                for (j, &y) in fb.iter().enumerate() {
                    if i + j + 1 == k {
                        *e += x * y;
                    }
                }
            }
        }
        assert_eq!(c.f_vector(), expected);
    }

    #[test]
    fn join_needs_delta_structure() {
        let plain = triangle_boundary().without_delta();
        assert!(matches!(
            join(&plain, &points(1)),
            Err(ComplexError::MissingDeltaStructure(_))
        ));
    }

    #[test]
    fn cone_over_triangle_boundary() {
        let c = cone(&triangle_boundary());
        assert_eq!(c.f_vector(), vec![4, 6, 3]);
        assert!(c.has_delta());
        // cone on a complex without Δ-structure still works
        let plain = cone(&triangle_boundary().without_delta());
        assert_eq!(plain.f_vector(), vec![4, 6, 3]);
        assert!(!plain.has_delta());
        assert_eq!(cone(&Complex::empty()).f_vector(), vec![1]);
    }

    #[test]
    fn wedge_counts() {
        let a = triangle_boundary();
        let v = a.vertex_ids().next().unwrap();
        let c = wedge(&a, v, &a, v).unwrap();
        assert_eq!(c.f_vector(), vec![5, 6]);
        let e = a.ids_of_dim(1).next().unwrap();
        assert_eq!(
            wedge(&a, e, &a, v),
            Err(ComplexError::NotAVertex(e.to_string()))
        );
    }

    #[test]
    fn disjoint_union_adds_f_vectors() {
        let c = disjoint_union(&point("t"), &triangle_boundary());
        assert_eq!(c.f_vector(), vec![4, 3]);
        assert_eq!(c.connected_components().len(), 2);
    }
}
