//! Oracles shared by the integration tests. They recompute everything from
//! face data with their own arithmetic and never call the library's
//! homology code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use sncx::complex::Complex;

const PRIME: i64 = 2_147_483_647;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1i64;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as i128 * b as i128 % PRIME as i128) as i64;
        }
        b = (b as i128 * b as i128 % PRIME as i128) as i64;
        e >>= 1;
    }
    r
}

/// Rank over `F_p` of a dense matrix.
pub fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    for row in &mut m {
        for x in row.iter_mut() {
            *x = x.rem_euclid(PRIME);
        }
    }
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = pow_mod(m[r][c], PRIME - 2);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = (row[c] as i128 * inv as i128 % PRIME as i128) as i64;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    let v = *x as i128 - f as i128 * y as i128;
                    *x = v.rem_euclid(PRIME as i128) as i64;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rational Betti numbers in degrees `0..=dim`, from the Δ-structure or,
/// without one, from the order complex. Reduced numbers subtract one in
/// degree zero; the empty complex gives an empty vector.
pub fn oracle_betti(c: &Complex, reduced: bool) -> Vec<i64> {
    let c = if c.has_delta() { c.clone() } else { c.order_complex() };
    let Some(top) = c.dim() else {
        return Vec::new();
    };
    let by_dim: Vec<Vec<usize>> = (0..=top)
        .map(|k| (0..c.len()).filter(|&i| c.faces()[i].dim() == k).collect())
        .collect();
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|k| {
            if k == 0 || k > top {
                return 0;
            }
            let rows = &by_dim[k - 1];
            let cols = &by_dim[k];
            let mut m = vec![vec![0i64; cols.len()]; rows.len()];
            for (j, &f) in cols.iter().enumerate() {
                for (i, g) in c.faces()[f].delta_facets().unwrap().iter().enumerate() {
                    let row = rows.iter().position(|&r| r == g.0).unwrap();
                    m[row][j] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
            rank_mod_p(m)
        })
        .collect();
    (0..=top)
        .map(|k| {
            let b = by_dim[k].len() as i64 - ranks[k] as i64 - ranks[k + 1] as i64;
            if reduced && k == 0 {
                b - 1
            } else {
                b
            }
        })
        .collect()
}

/// Random subset-closed family of proper subsets of `0..ground`, as sorted
/// vertex lists; never empty.
pub fn random_family(rng: &mut impl Rng, ground: usize) -> Vec<Vec<usize>> {
    let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
    let tops = rng.gen_range(1..=4);
    for _ in 0..tops {
        let size = rng.gen_range(1..ground.max(2));
        let mut s: Vec<usize> = (0..ground).collect();
        while s.len() > size {
            let i = rng.gen_range(0..s.len());
            s.remove(i);
        }
        for mask in 1u32..(1 << s.len()) {
            let sub: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            family.insert(sub);
        }
    }
    family.into_iter().collect()
}

/// Number of lattice points on the boundary of the convex hull of planar
/// points, by the monotone chain.
pub fn hull_boundary_points(points: &[(i64, i64)]) -> u64 {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let gcd = |mut a: i64, mut b: i64| {
        a = a.abs();
        b = b.abs();
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    (0..hull.len())
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            gcd(a.0 - b.0, a.1 - b.1) as u64
        })
        .sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
