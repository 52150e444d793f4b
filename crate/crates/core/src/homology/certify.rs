use std::fmt;

use serde::Serialize;

use super::{
    fundamental_group_presentation, homology, tietze_simplify, GroupPresentation, HomologyResult,
    TietzeStatus,
};
use crate::complex::{Complex, FaceId};

pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;
pub const DEFAULT_COLLAPSE_BUDGET: usize = 100_000;

/// Outcome of a collapse search. `sequence` lists the elementary collapses
/// `(free face, coface)` in order when `success` holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseResult {
    pub success: bool,
    pub exhausted: bool,
    pub sequence: Vec<(FaceId, FaceId)>,
}

struct Search<'a> {
    c: &'a Complex,
    alive: Vec<bool>,
    up: Vec<usize>,
    remaining: usize,
    moves: Vec<(FaceId, FaceId)>,
    budget: usize,
}

impl Search<'_> {
    /// Free pairs, highest coface dimension first.
    fn free_pairs(&self) -> Vec<(FaceId, FaceId)> {
        let mut pairs: Vec<(FaceId, FaceId)> = self
            .c
            .ids()
            .filter(|&s| self.alive[s.0] && self.up[s.0] == 1)
            .filter_map(|s| {
                let t = *self.c.cofacets(s).iter().find(|t| self.alive[t.0])?;
                (self.up[t.0] == 0).then_some((s, t))
            })
            .collect();
        pairs.sort_by_key(|&(s, t)| (std::cmp::Reverse(self.c.face(t).dim()), s, t));
        pairs
    }

    fn set(&mut self, id: FaceId, alive: bool) {
        self.alive[id.0] = alive;
        for f in self.c.face(id).facets() {
            if alive {
                self.up[f.0] += 1;
            } else {
                self.up[f.0] -= 1;
            }
        }
        if alive {
            self.remaining += 1;
        } else {
            self.remaining -= 1;
        }
    }

    fn run(&mut self) -> bool {
        if self.remaining == 1 {
            return true;
        }
        for (s, t) in self.free_pairs() {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            self.set(t, false);
            self.set(s, false);
            self.moves.push((s, t));
            if self.run() {
                return true;
            }
            self.moves.pop();
            self.set(s, true);
            self.set(t, true);
        }
        false
    }
}

/// Searches for a sequence of elementary collapses down to a single
/// vertex: depth-first over free pairs in a fixed order, undoing moves on
/// dead ends, with at most `budget` moves tried. Failure does not show
/// that the complex is not contractible.
pub fn collapse_to_point(c: &Complex, budget: usize) -> CollapseResult {
    if c.is_empty() {
        return CollapseResult {
            success: false,
            exhausted: false,
            sequence: Vec::new(),
        };
    }
    let mut search = Search {
        c,
        alive: vec![true; c.len()],
        up: c.ids().map(|id| c.cofacets(id).len()).collect(),
        remaining: c.len(),
        moves: Vec::new(),
        budget,
    };
    let success = search.run();
    CollapseResult {
        success,
        exhausted: !success && search.budget == 0,
        sequence: if success { search.moves } else { Vec::new() },
    }
}

/// Verdict of [`wedge_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// Homotopy equivalent to a wedge of `spheres` spheres.
    CertifiedWedge { spheres: usize },
    /// Homology of a wedge of spheres, with the fundamental group left open.
    RationalHomologyWedge { spheres: usize },
    /// Homology rules out a wedge of spheres of the requested dimension.
    Refuted { reason: String },
    /// The search for a certificate ran out of budget.
    Inconclusive { reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CertifiedWedge { spheres } => write!(f, "certified-wedge({spheres})"),
            Verdict::RationalHomologyWedge { spheres } => {
                write!(f, "rational-homology-wedge({spheres})")
            }
            Verdict::Refuted { reason } => write!(f, "refuted: {reason}"),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// Evidence behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    None,
    /// A connected graph is a wedge of circles.
    Graph,
    Collapse {
        sequence: Vec<(FaceId, FaceId)>,
    },
    Presentation {
        presentation: GroupPresentation,
        status: TietzeStatus,
        trace: Vec<String>,
    },
    Components {
        witnesses: Vec<Witness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeCertificate {
    pub sphere_dim: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub homology: HomologyResult,
    pub witness: Witness,
}

enum Check {
    Certified(Witness),
    Open(Witness),
    Exhausted(Witness),
}

/// Certificate for a contractible connected complex: a graph, a collapse,
/// or a presentation of a trivial group (with acyclic homology).
fn contractible(c: &Complex, tietze_budget: usize, collapse_budget: usize) -> Check {
    if c.dim().unwrap_or(0) <= 1 {
        return Check::Certified(Witness::Graph);
    }
    let collapse = collapse_to_point(c, collapse_budget);
    if collapse.success {
        return Check::Certified(Witness::Collapse {
            sequence: collapse.sequence,
        });
    }
    let p = fundamental_group_presentation(c).expect("connected");
    let r = tietze_simplify(&p, tietze_budget);
    let witness = Witness::Presentation {
        presentation: r.presentation,
        status: r.status,
        trace: r.trace,
    };
    match r.status {
        TietzeStatus::Trivial => Check::Certified(witness),
        TietzeStatus::BudgetExhausted => Check::Exhausted(witness),
        TietzeStatus::Reduced if collapse.exhausted => Check::Exhausted(witness),
        TietzeStatus::Reduced => Check::Open(witness),
    }
}

/// Decides whether `c` is homotopy equivalent to a wedge of `d`-spheres,
/// with default search budgets.
pub fn wedge_certificate(c: &Complex, d: usize) -> WedgeCertificate {
    wedge_certificate_with_budget(c, d, DEFAULT_TIETZE_BUDGET, DEFAULT_COLLAPSE_BUDGET)
}

/// Reduced integral homology must be free of rank `m` in degree `d` and
/// vanish elsewhere. The homotopy type is then certified by a simply
/// connected witness for `d ≥ 2` (trivial presentation or collapse), a free
/// presentation of rank `m` for `d = 1`, and contractible components for
/// `d = 0`.
pub fn wedge_certificate_with_budget(
    c: &Complex,
    d: usize,
    tietze_budget: usize,
    collapse_budget: usize,
) -> WedgeCertificate {
    let h = homology(c, true).expect("chain complex of a valid complex");
    let done = |verdict: Verdict, witness: Witness, h: HomologyResult| WedgeCertificate {
        sphere_dim: d,
        verdict,
        homology: h,
        witness,
    };
    if let Some(t) = h.degrees.iter().find(|t| !t.torsion.is_empty()) {
        let reason = format!("torsion in degree {}", t.degree);
        return done(Verdict::Refuted { reason }, Witness::None, h);
    }
    if let Some(&k) = h.support().iter().find(|&&k| k != d as i64) {
        let reason = format!("reduced homology in degree {k}");
        return done(Verdict::Refuted { reason }, Witness::None, h);
    }
    let m = h.betti(d as i64);

    let check = if d == 0 {
        let mut witnesses = Vec::new();
        let mut outcome = 0; // 0 certified, 1 open, 2 exhausted
        for component in c.connected_components() {
            let mut keep = vec![false; c.len()];
            for id in component {
                keep[id.0] = true;
            }
            match contractible(&c.restrict(&keep), tietze_budget, collapse_budget) {
                Check::Certified(w) => witnesses.push(w),
                Check::Open(w) => {
                    outcome = outcome.max(1);
                    witnesses.push(w);
                }
                Check::Exhausted(w) => {
                    outcome = 2;
                    witnesses.push(w);
                }
            }
        }
        let w = Witness::Components { witnesses };
        match outcome {
            0 => Check::Certified(w),
            1 => Check::Open(w),
            _ => Check::Exhausted(w),
        }
    } else if d == 1 {
        if c.dim() == Some(1) {
            Check::Certified(Witness::Graph)
        } else {
            let p = fundamental_group_presentation(c).expect("connected");
            let r = tietze_simplify(&p, tietze_budget);
            let free = r.presentation.generators == m && r.presentation.relators.is_empty();
            let status = r.status;
            let w = Witness::Presentation {
                presentation: r.presentation,
                status,
                trace: r.trace,
            };
            match status {
                _ if free => Check::Certified(w),
                TietzeStatus::BudgetExhausted => Check::Exhausted(w),
                _ => Check::Open(w),
            }
        }
    } else {
        let p = fundamental_group_presentation(c).expect("connected");
        let r = tietze_simplify(&p, tietze_budget);
        let w = Witness::Presentation {
            presentation: r.presentation,
            status: r.status,
            trace: r.trace,
        };
        match r.status {
            TietzeStatus::Trivial => Check::Certified(w),
            status => {
                let collapse = if m == 0 {
                    collapse_to_point(c, collapse_budget)
                } else {
                    CollapseResult {
                        success: false,
                        exhausted: false,
                        sequence: Vec::new(),
                    }
                };
                if collapse.success {
                    Check::Certified(Witness::Collapse {
                        sequence: collapse.sequence,
                    })
                } else if status == TietzeStatus::BudgetExhausted {
                    Check::Exhausted(w)
                } else {
                    Check::Open(w)
                }
            }
        }
    };
    match check {
        Check::Certified(w) => done(Verdict::CertifiedWedge { spheres: m }, w, h),
        Check::Open(w) => done(Verdict::RationalHomologyWedge { spheres: m }, w, h),
        Check::Exhausted(w) => {
            let reason = "simplification budget exhausted".to_string();
            done(Verdict::Inconclusive { reason }, w, h)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::{cone, disjoint_union};

    #[test]
    fn collapses() {
        let r = collapse_to_point(&cone(&triangle_boundary()), 1000);
        assert!(r.success);
        assert_eq!(r.sequence.len(), 6);
        assert!(!collapse_to_point(&triangle_boundary(), 1000).success);
        let p = collapse_to_point(&point("p"), 10);
        assert!(p.success && p.sequence.is_empty());
        assert!(collapse_to_point(&full_simplex(3), 1000).success);
        assert!(!collapse_to_point(&Complex::empty(), 10).success);
    }

    #[test]
    fn collapse_sequence_is_valid() {
        let c = cone(&octahedron_boundary());
        let r = collapse_to_point(&c, 10_000);
        assert!(r.success);
        let mut alive = vec![true; c.len()];
        for (s, t) in r.sequence {
            let cofaces: Vec<FaceId> = c.star(s).into_iter().filter(|&f| f != s && alive[f.0]).collect();
            assert_eq!(cofaces, vec![t]);
            alive[s.0] = false;
            alive[t.0] = false;
        }
        assert_eq!(alive.iter().filter(|&&a| a).count(), 1);
    }

    #[test]
    fn verdicts() {
        let v = |c: &Complex, d| wedge_certificate(c, d).verdict;
        assert_eq!(v(&triangle_boundary(), 1), Verdict::CertifiedWedge { spheres: 1 });
        assert_eq!(v(&banana(4), 1), Verdict::CertifiedWedge { spheres: 3 });
        assert!(matches!(v(&projective_plane(), 1), Verdict::Refuted { .. }));
        assert_eq!(v(&octahedron_boundary(), 2), Verdict::CertifiedWedge { spheres: 1 });
        assert!(matches!(v(&octahedron_boundary(), 1), Verdict::Refuted { .. }));
        assert_eq!(v(&points(8), 0), Verdict::CertifiedWedge { spheres: 7 });
        assert_eq!(v(&point("p"), 2), Verdict::CertifiedWedge { spheres: 0 });
        assert!(matches!(v(&Complex::empty(), 1), Verdict::Refuted { .. }));
        let two = disjoint_union(&cone(&triangle_boundary()), &point("q"));
        assert_eq!(v(&two, 0), Verdict::CertifiedWedge { spheres: 1 });
        assert!(matches!(v(&disjoint_union(&point("a"), &cycle(3)), 1), Verdict::Refuted { .. }));
    }

    #[test]
    fn exhausted_budget_is_inconclusive() {
        let cert = wedge_certificate_with_budget(&octahedron_boundary(), 2, 0, 0);
        assert!(matches!(cert.verdict, Verdict::Inconclusive { .. }));
    }

    #[test]
    fn certificate_serializes_flat() {
        let text = serde_json::to_string(&wedge_certificate(&triangle_boundary(), 1)).unwrap();
        assert!(text.contains("\"verdict\":\"certified-wedge\",\"spheres\":1"), "{text}");
    }
}
