use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Complex, FaceId};

/// Joint color refinement of the Hasse diagrams of `a` and `b`; colors are
/// comparable across the two complexes.
fn refine(a: &Complex, b: &Complex) -> (Vec<usize>, Vec<usize>) {
    let mut ca: Vec<usize> = a.faces().iter().map(|f| f.dim()).collect();
    let mut cb: Vec<usize> = b.faces().iter().map(|f| f.dim()).collect();
    let mut classes = usize::MAX;
    loop {
        type Sig = (usize, Vec<usize>, Vec<usize>);
        let sig = |c: &Complex, col: &[usize], id: FaceId| -> Sig {
            let mut down: Vec<usize> = c.face(id).facets().iter().map(|f| col[f.0]).collect();
            let mut up: Vec<usize> = c.cofacets(id).iter().map(|f| col[f.0]).collect();
            down.sort_unstable();
            up.sort_unstable();
            (col[id.0], down, up)
        };
        let sa: Vec<Sig> = a.ids().map(|id| sig(a, &ca, id)).collect();
        let sb: Vec<Sig> = b.ids().map(|id| sig(b, &cb, id)).collect();
        let table: BTreeMap<&Sig, usize> = sa
            .iter()
            .chain(&sb)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let count = table.len();
        ca = sa.iter().map(|s| table[s]).collect();
        cb = sb.iter().map(|s| table[s]).collect();
        if count == classes {
            return (ca, cb);
        }
        classes = count;
    }
}

/// Search order: vertices in breadth-first order along edges, each other
/// face right after the last of its facets.
fn search_order(c: &Complex) -> Vec<FaceId> {
    let mut order = Vec::with_capacity(c.len());
    let mut placed = vec![false; c.len()];
    let mut missing: Vec<usize> = c.faces().iter().map(|f| f.facets().len()).collect();
    let mut place = |start: FaceId, order: &mut Vec<FaceId>, placed: &mut Vec<bool>| {
        let mut ready = VecDeque::from([start]);
        while let Some(id) = ready.pop_front() {
            placed[id.0] = true;
            order.push(id);
            for &up in c.cofacets(id) {
                missing[up.0] -= 1;
                if missing[up.0] == 0 {
                    ready.push_back(up);
                }
            }
        }
    };
    let mut queue = VecDeque::new();
    for root in c.vertex_ids() {
        if placed[root.0] {
            continue;
        }
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if placed[v.0] {
                continue;
            }
            place(v, &mut order, &mut placed);
            for &e in c.cofacets(v) {
                for &w in c.face(e).facets() {
                    if !placed[w.0] {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

/// An isomorphism of face posets from `a` to `b`, ignoring labels, levels
/// and Δ-orderings. The result maps each face of `a` to its image.
pub fn find_isomorphism(a: &Complex, b: &Complex) -> Option<Vec<FaceId>> {
    if a.f_vector() != b.f_vector() {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let histogram = |cols: &[usize]| {
        let mut h = cols.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&ca) != histogram(&cb) {
        return None;
    }
    let order = search_order(a);
    let mut image = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    if extend(a, b, &ca, &cb, &order, 0, &mut image, &mut used) {
        Some(image.into_iter().map(FaceId).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Complex,
    b: &Complex,
    ca: &[usize],
    cb: &[usize],
    order: &[FaceId],
    step: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&id) = order.get(step) else {
        return true;
    };
    let face = a.face(id);
    let wanted: BTreeSet<usize> = face.facets().iter().map(|f| image[f.0]).collect();
    let candidates: Vec<FaceId> = if face.dim() == 0 {
        b.vertex_ids().collect()
    } else {
        // any image shares the image of its first facet
        b.cofacets(FaceId(image[face.facets()[0].0])).to_vec()
    };
    for cand in candidates {
        if used[cand.0] || cb[cand.0] != ca[id.0] {
            continue;
        }
        let facets: BTreeSet<usize> = b.face(cand).facets().iter().map(|f| f.0).collect();
        if facets != wanted {
            continue;
        }
        image[id.0] = cand.0;
        used[cand.0] = true;
        if extend(a, b, ca, cb, order, step + 1, image, used) {
            return true;
        }
        used[cand.0] = false;
        image[id.0] = usize::MAX;
    }
    false
}

pub fn is_isomorphic(a: &Complex, b: &Complex) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{disjoint_union, join};
    use super::*;

    fn check(a: &Complex, b: &Complex, map: &[FaceId]) {
        let mut seen = BTreeSet::new();
        for id in a.ids() {
            assert!(seen.insert(map[id.0]));
            let facets: BTreeSet<FaceId> = a.face(id).facets().iter().map(|f| map[f.0]).collect();
            let target: BTreeSet<FaceId> = b.face(map[id.0]).facets().iter().copied().collect();
            assert_eq!(facets, target);
        }
    }

    #[test]
    fn relabeled_copies_are_isomorphic() {
        let a = octahedron_boundary();
        let b = a.relabel(|id, _| format!("x{}", a.len() - id.0));
        let map = find_isomorphism(&a, &b).unwrap();
        check(&a, &b, &map);
    }

    #[test]
    fn square_is_the_four_cycle() {
        let s0 = points(2);
        let square = join(&s0, &s0).unwrap();
        assert!(is_isomorphic(&square, &cycle(4)));
        assert!(!is_isomorphic(&square, &cycle(3)));
    }

    #[test]
    fn same_f_vector_different_poset() {
        // hexagon versus two disjoint triangles
        let two = disjoint_union(&cycle(3), &cycle(3));
        assert_eq!(two.f_vector(), cycle(6).f_vector());
        assert!(!is_isomorphic(&two, &cycle(6)));
        assert!(is_isomorphic(&banana(2), &cycle(2)));
    }

    #[test]
    fn empty_complexes() {
        assert!(is_isomorphic(&Complex::empty(), &Complex::empty()));
        assert!(!is_isomorphic(&Complex::empty(), &point("a")));
    }
}
