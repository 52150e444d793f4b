//! Exact face lattices of small lattice polyhedra: either a polytope
//! `conv(points)` or a Newton polyhedron `conv(points) + ℝ^N_{≥0}`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

/// A supporting hyperplane `⟨normal, x⟩ = offset` with the polyhedron on the
/// side `⟨normal, x⟩ ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Halfspace {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// A nonempty face, given by the input points on it and the coordinate
/// directions in its recession cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawFace {
    pub points: BTreeSet<usize>,
    pub directions: BTreeSet<usize>,
    pub dim: usize,
    /// Indices of the facets containing this face.
    pub facets: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct FaceLattice {
    pub facets: Vec<Halfspace>,
    /// Proper faces (the polyhedron itself excluded), sorted by dimension
    /// and then by point and direction sets. Facets come first among
    /// faces of their dimension in the same order as `facets`.
    pub faces: Vec<RawFace>,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Rank of integer vectors by fraction-free elimination.
pub(crate) fn rank(vectors: &[Vec<i128>]) -> usize {
    let mut m = vectors.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest {
            let (a, b) = (pivot[c], row[c]);
            for (x, &y) in row.iter_mut().zip(pivot) {
                *x = *x * a - y * b;
            }
            let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| [&row[..j], &row[j + 1..]].concat())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Vector orthogonal to `N-1` vectors in `ℤ^N`, by signed maximal minors;
/// zero when they are dependent.
fn orthogonal(rows: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| [&r[..j], &r[j + 1..]].concat())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * det(&minor)
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn unit(n: usize, i: usize) -> Vec<i128> {
    (0..n).map(|j| i128::from(i == j)).collect()
}

fn face_dim(points: &[Vec<i64>], on: &BTreeSet<usize>, directions: &BTreeSet<usize>, n: usize) -> usize {
    let base = &points[*on.iter().next().unwrap()];
    let mut vectors: Vec<Vec<i128>> = on
        .iter()
        .map(|&p| points[p].iter().zip(base).map(|(&x, &y)| (x - y) as i128).collect())
        .collect();
    vectors.extend(directions.iter().map(|&i| unit(n, i)));
    rank(&vectors)
}

/// Dimension of the affine hull of the points.
pub(crate) fn affine_dim(points: &[Vec<i64>]) -> usize {
    let all: BTreeSet<usize> = (0..points.len()).collect();
    if all.is_empty() {
        return 0;
    }
    face_dim(points, &all, &BTreeSet::new(), points[0].len())
}

/// Face lattice of `conv(points)`, plus the positive orthant when
/// `orthant` holds. The polyhedron must be full-dimensional and the points
/// distinct.
pub(crate) fn face_lattice(points: &[Vec<i64>], orthant: bool) -> FaceLattice {
    let n = points[0].len();
    let dirs: Vec<usize> = if orthant { (0..n).collect() } else { Vec::new() };
    let mut normals: BTreeMap<Vec<i64>, (i64, BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    let lowest = if orthant { 1 } else { n };
    for a in lowest..=n.min(points.len()) {
        for chosen in subsets(points.len(), a) {
            for extra in subsets(dirs.len(), n - a) {
                let p0 = &points[chosen[0]];
                let mut rows: Vec<Vec<i128>> = chosen[1..]
                    .iter()
                    .map(|&p| points[p].iter().zip(p0).map(|(&x, &y)| (x - y) as i128).collect())
                    .collect();
                rows.extend(extra.iter().map(|&d| unit(n, dirs[d])));
                let w = orthogonal(&rows, n);
                let g = w.iter().fold(0i128, |g, &x| g.gcd(&x));
                if g == 0 {
                    continue;
                }
                for sign in [1i128, -1] {
                    let w: Vec<i64> = w.iter().map(|&x| (sign * x / g) as i64).collect();
                    if orthant && w.iter().any(|&x| x < 0) {
                        continue;
                    }
                    if normals.contains_key(&w) {
                        continue;
                    }
                    let values: Vec<i128> = points.iter().map(|p| dot(&w, p)).collect();
                    let m = *values.iter().min().unwrap();
                    let on: BTreeSet<usize> = (0..points.len()).filter(|&i| values[i] == m).collect();
                    let rec: BTreeSet<usize> = dirs.iter().copied().filter(|&i| w[i] == 0).collect();
                    if face_dim(points, &on, &rec, n) == n - 1 {
                        normals.insert(w, (m as i64, on, rec));
                    }
                }
            }
        }
    }
    let facets: Vec<Halfspace> = normals
        .iter()
        .map(|(w, (m, _, _))| Halfspace {
            normal: w.clone(),
            offset: *m,
        })
        .collect();

    type Key = (BTreeSet<usize>, BTreeSet<usize>);
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    let mut list: Vec<Key> = Vec::new();
    for (_, on, rec) in normals.values() {
        if seen.insert((on.clone(), rec.clone())) {
            list.push((on.clone(), rec.clone()));
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let points_meet: BTreeSet<usize> = list[i].0.intersection(&list[j].0).copied().collect();
            if points_meet.is_empty() {
                continue;
            }
            let dirs_meet: BTreeSet<usize> = list[i].1.intersection(&list[j].1).copied().collect();
            let key = (points_meet, dirs_meet);
            if seen.insert(key.clone()) {
                list.push(key);
            }
        }
        i += 1;
    }
    let facet_sets: Vec<&(i64, BTreeSet<usize>, BTreeSet<usize>)> = normals.values().collect();
    let mut faces: Vec<RawFace> = list
        .into_iter()
        .map(|(on, rec)| {
            let containing = facet_sets
                .iter()
                .enumerate()
                .filter(|(_, (_, fp, fr))| on.is_subset(fp) && rec.is_subset(fr))
                .map(|(k, _)| k)
                .collect();
            RawFace {
                dim: face_dim(points, &on, &rec, n),
                points: on,
                directions: rec,
                facets: containing,
            }
        })
        .collect();
    faces.sort_by(|a, b| {
        (a.dim, a.facets.len() != 1, &a.points, &a.directions)
            .cmp(&(b.dim, b.facets.len() != 1, &b.points, &b.directions))
    });
    FaceLattice { facets, faces }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_lattice() {
        let pts = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let l = face_lattice(&pts, false);
        assert_eq!(l.facets.len(), 4);
        let dims: Vec<usize> = l.faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 0, 0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn cube_counts() {
        let pts: Vec<Vec<i64>> = (0..8).map(|m| (0..3).map(|i| 2 * (m >> i & 1)).collect()).collect();
        let l = face_lattice(&pts, false);
        let count = |d| l.faces.iter().filter(|f| f.dim == d).count();
        assert_eq!((count(0), count(1), count(2)), (8, 12, 6));
    }

    #[test]
    fn quadric_polyhedron() {
        let pts = vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]];
        let l = face_lattice(&pts, true);
        // the compact triangle and the three coordinate planes
        let normals: Vec<&Vec<i64>> = l.facets.iter().map(|h| &h.normal).collect();
        assert_eq!(normals, vec![&vec![0, 0, 1], &vec![0, 1, 0], &vec![1, 0, 0], &vec![1, 1, 1]]);
    }

    #[test]
    fn ranks_and_minors() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(orthogonal(&[vec![1, 0, 0], vec![0, 1, 0]], 3), vec![0, 0, 1]);
        assert_eq!(affine_dim(&[vec![0, 0], vec![1, 1], vec![2, 2]]), 1);
    }
}
