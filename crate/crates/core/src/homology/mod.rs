//! Integral homology of complexes: chain complexes, Smith normal form,
//! fundamental-group presentations and wedge-of-spheres certificates.

mod certify;
mod pi1;
mod snf;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::Complex;

pub use certify::{
    collapse_to_point, wedge_certificate, CollapseResult, Verdict, WedgeCertificate, Witness,
};
pub use pi1::{
    fundamental_group_presentation, tietze_simplify, GroupPresentation, TietzeResult,
    TietzeStatus,
};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary maps do not compose to zero in degree {degree}")]
    BoundaryNotSquareZero { degree: usize },
    #[error("complex is not connected")]
    NotConnected,
}

/// Cellular chain complex: `boundaries[k-1]` is `∂_k`, mapping `k`-chains to
/// `(k-1)`-chains, with bases in canonical face order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checks `∂_k ∂_{k+1} = 0` for every `k`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, HomologyError> {
        assert_eq!(boundaries.len() + 1, ranks.len().max(1), "one boundary per positive degree");
        for (k, d) in boundaries.iter().enumerate() {
            assert_eq!((d.rows(), d.cols()), (ranks[k], ranks[k + 1]), "boundary shape");
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(HomologyError::BoundaryNotSquareZero { degree: k });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// Number of cells in each degree.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_k` for `k ≥ 1`.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Integral homology; SNF of the boundary maps runs in parallel.
    pub fn homology(&self, reduced: bool) -> HomologyResult {
        let forms: Vec<SmithForm> = self.boundaries.par_iter().map(smith_normal_form).collect();
        let rank = |k: usize| k.checked_sub(1).and_then(|i| forms.get(i)).map_or(0, |f| f.rank);
        let mut degrees: Vec<DegreeHomology> = (0..self.ranks.len())
            .map(|k| DegreeHomology {
                degree: k as i64,
                betti: self.ranks[k] - rank(k) - rank(k + 1),
                torsion: forms.get(k).map_or_else(Vec::new, SmithForm::torsion),
            })
            .collect();
        if reduced {
            match degrees.first_mut() {
                Some(h0) => h0.betti -= 1,
                None => degrees.push(DegreeHomology {
                    degree: -1,
                    betti: 1,
                    torsion: Vec::new(),
                }),
            }
        }
        HomologyResult { reduced, degrees }
    }
}

/// Cellular chain complex of `c`. With a Δ-structure the boundary of a
/// `k`-face is the alternating sum of its ordered facets; otherwise the
/// chain complex of the order complex is used.
pub fn chain_complex(c: &Complex) -> Result<ChainComplex, HomologyError> {
    if !c.has_delta() {
        return chain_complex(&c.order_complex());
    }
    let ranks = c.f_vector();
    // position of each face within its degree
    let mut offset = vec![0usize; ranks.len()];
    let mut within = vec![0usize; c.len()];
    for id in c.ids() {
        let k = c.face(id).dim();
        within[id.0] = offset[k];
        offset[k] += 1;
    }
    let mut boundaries: Vec<IntMatrix> =
        (1..ranks.len()).map(|k| IntMatrix::zeros(ranks[k - 1], ranks[k])).collect();
    for id in c.ids() {
        let face = c.face(id);
        if face.dim() == 0 {
            continue;
        }
        let d = &mut boundaries[face.dim() - 1];
        for (i, f) in face.delta_facets().unwrap().iter().enumerate() {
            let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            d.add_to(within[f.0], within[id.0], &sign);
        }
    }
    ChainComplex::new(ranks, boundaries)
}

/// Homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

/// Factors that fit in 64 bits serialize as numbers, larger ones as strings.
fn serialize_factors<S: Serializer>(factors: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let values: Vec<serde_json::Value> = factors
        .iter()
        .map(|d| match d.to_u64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(d.to_string()),
        })
        .collect();
    values.serialize(s)
}

/// Homology in degrees `0..=dim` (degree `-1` appears only for the reduced
/// homology of the empty complex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn betti(&self, k: i64) -> usize {
        self.get(k).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, k: i64) -> &[BigInt] {
        self.get(k).map_or(&[], |h| &h.torsion)
    }

    pub fn get(&self, k: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| h.degree == k)
    }

    /// Betti numbers of degrees `0..=dim`.
    pub fn betti_vector(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|h| h.degree >= 0)
            .map(|h| h.betti)
            .collect()
    }

    /// Same groups in every degree, ignoring how many zero degrees each
    /// result lists.
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        let mut degrees = self.degrees.iter().chain(&other.degrees).map(|h| h.degree);
        degrees.all(|k| self.betti(k) == other.betti(k) && self.torsion(k) == other.torsion(k))
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|h| h.torsion.is_empty())
    }

    /// Alternating sum of Betti numbers; for reduced homology this is the
    /// Euler characteristic minus one.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|h| if h.degree.rem_euclid(2) == 0 { 1 } else { -1 } * h.betti as i64)
            .sum()
    }

    /// Degrees with non-zero Betti number or torsion.
    pub fn support(&self) -> Vec<i64> {
        self.degrees
            .iter()
            .filter(|h| h.betti > 0 || !h.torsion.is_empty())
            .map(|h| h.degree)
            .collect()
    }
}

pub fn homology(c: &Complex, reduced: bool) -> Result<HomologyResult, HomologyError> {
    Ok(chain_complex(c)?.homology(reduced))
}

/// Rank of `H^k(C; ℚ)`, equal to the rank of `H_k`.
pub fn cohomology_rank(c: &Complex, k: usize) -> Result<usize, HomologyError> {
    Ok(homology(c, false)?.betti(k as i64))
}

/// How a dual complex relates to weight-zero cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightZeroMode {
    /// `C = Δ(D)`: `W₀H^j(D) ≅ H^j(C)`.
    Divisor,
    /// `C = Δ(E)` for a resolution: `W₀H̃^j(X) ≅ H̃^{j-1}(C)`.
    Resolution,
}

/// Rational rank of the weight-zero part of `H^j` read off from the dual
/// complex `c`.
pub fn weight_zero_cohomology_rank(
    c: &Complex,
    j: usize,
    mode: WeightZeroMode,
) -> Result<usize, HomologyError> {
    match mode {
        WeightZeroMode::Divisor => cohomology_rank(c, j),
        WeightZeroMode::Resolution => Ok(homology(c, true)?.betti(j as i64 - 1)),
    }
}

/// `Gr^W_{2n} H^{2n-k}` has the rank of `H̃_{k-1}` of the boundary complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopWeightRank {
    pub k: usize,
    pub weight: usize,
    pub cohomological_degree: usize,
    pub rank: usize,
}

/// Top-weight ranks for `k = 0..=2n`, where `n` is the dimension of the
/// variety whose boundary complex is `c`.
pub fn top_weight_ranks(c: &Complex, n: usize) -> Result<Vec<TopWeightRank>, HomologyError> {
    let h = homology(c, true)?;
    Ok((0..=2 * n)
        .map(|k| TopWeightRank {
            k,
            weight: 2 * n,
            cohomological_degree: 2 * n - k,
            rank: h.betti(k as i64 - 1),
        })
        .collect())
}
