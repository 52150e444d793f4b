use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        self.entries[row].get(&col).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.entries[row].remove(&col);
        } else {
            self.entries[row].insert(col, value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &BigInt) {
        let sum = self.get(row, col) + value;
        self.set(row, col, sum);
    }

    /// Non-zero entries of a row, by increasing column.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.entries[row].iter().map(|(&c, v)| (c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            for (&j, v) in row {
                t.entries[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&k, a) in row {
                for (&j, b) in &other.entries[k] {
                    *acc.entry(j).or_default() += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.entries[i] = acc;
        }
        out
    }
}

/// Invariant factors `d₁ | d₂ | ⋯` (all positive) and rank of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Working copy with a column index for column operations.
struct Reducer {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl Reducer {
    fn new(m: &IntMatrix) -> Self {
        let mut cols = vec![BTreeSet::new(); m.cols];
        for (i, row) in m.entries.iter().enumerate() {
            for &j in row.keys() {
                cols[j].insert(i);
            }
        }
        Reducer {
            rows: m.entries.clone(),
            cols,
        }
    }

    fn update(&mut self, i: usize, j: usize, delta: &BigInt) {
        let entry = self.rows[i].entry(j).or_default();
        *entry += delta;
        if entry.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i);
        }
    }

    /// row_i -= q·row_p
    fn row_op(&mut self, i: usize, p: usize, q: &BigInt) {
        let pivot_row: Vec<(usize, BigInt)> =
            self.rows[p].iter().map(|(&j, v)| (j, v.clone())).collect();
        for (j, v) in pivot_row {
            self.update(i, j, &-(q * v));
        }
    }

    /// col_j -= q·col_p
    fn col_op(&mut self, j: usize, p: usize, q: &BigInt) {
        let pivot_col: Vec<usize> = self.cols[p].iter().copied().collect();
        for i in pivot_col {
            let v = self.rows[i][&p].clone();
            self.update(i, j, &-(q * v));
        }
    }

    /// Smallest-magnitude entry, first in row-major order; a unit ends the
    /// search at once.
    fn find_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                if v.abs().is_one() {
                    return Some((i, j));
                }
                if best.is_none_or(|(_, _, b)| v.abs() < b.abs()) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row `r` and column `c` around the pivot; returns the final
    /// pivot value.
    fn eliminate(&mut self, mut r: usize, mut c: usize) -> BigInt {
        loop {
            let p = self.rows[r][&c].clone();
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let q = rounded_div(&self.rows[i][&c], &p);
                self.row_op(i, r, &q);
            }
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
            for j in others {
                let q = rounded_div(&self.rows[r][&j], &p);
                self.col_op(j, c, &q);
            }
            if self.cols[c].len() == 1 && self.rows[r].len() == 1 {
                self.rows[r].clear();
                self.cols[c].clear();
                return p.abs();
            }
            // a remainder smaller than the pivot is left behind; move to it
            let mut next = (r, c, p.abs());
            for (&j, v) in &self.rows[r] {
                if v.abs() < next.2 {
                    next = (r, j, v.abs());
                }
            }
            for &i in &self.cols[c] {
                let v = self.rows[i][&c].abs();
                if v < next.2 {
                    next = (i, c, v);
                }
            }
            r = next.0;
            c = next.1;
        }
    }
}

/// Quotient rounded to the nearest integer, so the remainder is at most
/// half the divisor in magnitude.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    let twice = r.abs() * 2u32;
    if twice > b.abs() {
        if r.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Smith normal form of an integer matrix, in exact arithmetic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut work = Reducer::new(m);
    let mut diagonal = Vec::new();
    while let Some((r, c)) = work.find_pivot() {
        diagonal.push(work.eliminate(r, c));
    }
    let rank = diagonal.len();
    // the diagonal is equivalent to its gcd/lcm normalization; units are
    // already in place
    let mut rest: Vec<BigInt> = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = rest[i].lcm(&rest[j]);
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let units = rank - rest.len();
    let mut factors = vec![BigInt::one(); units];
    factors.extend(rest);
    SmithForm { factors, rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_dense(m))
            .factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    /// Determinant by cofactor expansion, for the minors oracle.
    fn det(m: &[Vec<i128>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| [&row[..j], &row[j + 1..]].concat())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    /// Invariant factors from determinantal divisors `g_k = gcd of k×k minors`.
    fn oracle(m: &[Vec<i64>]) -> Vec<i64> {
        let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
        let mut out = Vec::new();
        let mut prev: i128 = 1;
        for k in 1..=r.min(c) {
            let mut g: i128 = 0;
            for rows in subsets(r, k) {
                for cols in subsets(c, k) {
                    let sub: Vec<Vec<i128>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect())
                        .collect();
                    g = num_integer::gcd(g, det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push((g / prev) as i64);
            prev = g;
        }
        out
    }

    #[test]
    fn diagonal_two_three() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let f = smith_normal_form(&IntMatrix::zeros(3, 4));
        assert!(f.factors.is_empty());
        assert_eq!(f.rank, 0);
    }

    #[test]
    fn non_diagonal_examples() {
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[vec![4, 6]]), vec![2]);
        assert_eq!(factors(&[vec![6, 10], vec![10, 15], vec![0, 0]]), vec![1, 10]);
    }

    #[test]
    fn big_entries_stay_exact() {
        let big = BigInt::from(2).pow(200);
        let mut m = IntMatrix::zeros(2, 2);
        m.set(0, 0, big.clone());
        m.set(1, 1, big.clone() * 3);
        let f = smith_normal_form(&m);
        assert_eq!(f.factors, vec![big.clone(), big * 3]);
    }

    #[test]
    fn rounded_division() {
        let d = |a: i64, b: i64| i64::try_from(rounded_div(&a.into(), &b.into())).unwrap();
        assert_eq!(d(7, 2), 3);
        assert_eq!(d(8, 3), 3);
        assert_eq!(d(-8, 3), -3);
        assert_eq!(d(7, -3), -2);
    }

    fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
        })
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(m in matrix(4, 4)) {
            prop_assert_eq!(factors(&m), oracle(&m));
        }

        #[test]
        fn invariant_under_permutations(m in matrix(5, 6), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rows: Vec<usize> = (0..m.len()).collect();
            let mut cols: Vec<usize> = (0..m[0].len()).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            let shuffled: Vec<Vec<i64>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                .collect();
            prop_assert_eq!(factors(&m), factors(&shuffled));
        }

        #[test]
        fn factors_divide_successively(m in matrix(6, 6)) {
            let f = factors(&m);
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
