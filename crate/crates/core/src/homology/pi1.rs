use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::HomologyError;
use crate::complex::{Complex, FaceId};

/// Group presentation. A letter `±(g+1)` stands for generator `g` or its
/// inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    /// Panics on a letter naming a missing generator.
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Self {
        for &x in relators.iter().flatten() {
            assert!(
                x != 0 && x.unsigned_abs() as usize <= generators,
                "letter {x} names no generator"
            );
        }
        GroupPresentation {
            generators,
            relators,
        }
    }

    /// Readable form such as `<a, b | a b A B>`, lowercase letters for
    /// generators and uppercase for inverses (`x12` past the alphabet).
    pub fn display(&self) -> String {
        let gens: Vec<String> = (1..=self.generators as i32).map(letter_name).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.iter().map(|&x| letter_name(x)).collect::<Vec<_>>().join(" "))
            .collect();
        format!("<{} | {}>", gens.join(", "), rels.join(", "))
    }

    /// Relation matrix of the abelianization: one row per relator, one
    /// column per generator, entries are exponent sums.
    pub fn abelianization(&self) -> super::IntMatrix {
        let mut m = super::IntMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for &x in r {
                let g = x.unsigned_abs() as usize - 1;
                m.add_to(i, g, &num_bigint::BigInt::from(x.signum()));
            }
        }
        m
    }
}

fn letter_name(x: i32) -> String {
    let g = x.unsigned_abs() - 1;
    let base = if g < 26 {
        char::from(b'a' + g as u8).to_string()
    } else {
        format!("x{g}")
    };
    if x < 0 {
        base.to_uppercase()
    } else {
        base
    }
}

/// Edge-path presentation of `π₁` from the 2-skeleton of the order complex:
/// vertices are faces, edges are pairs `a < b` oriented upward, and every
/// chain `a < b < c` contributes the relator `(ab)(bc)(ac)⁻¹`. Edges of a
/// breadth-first spanning tree are set to the identity.
pub fn fundamental_group_presentation(c: &Complex) -> Result<GroupPresentation, HomologyError> {
    if !c.is_connected() {
        return Err(HomologyError::NotConnected);
    }
    let below: Vec<Vec<usize>> = c
        .ids()
        .map(|id| {
            c.closure(id)
                .into_iter()
                .filter(|&f| f != id)
                .map(FaceId::index)
                .collect()
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (b, lower) in below.iter().enumerate() {
        edges.extend(lower.iter().map(|&a| (a, b)));
    }
    edges.sort_unstable();
    let edge_index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); c.len()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; c.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            let (a, b) = edges[e];
            let w = if a == v { b } else { a };
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }

    let mut generator = vec![0i32; edges.len()];
    let mut count = 0;
    for (e, tree) in in_tree.iter().enumerate() {
        if !tree {
            count += 1;
            generator[e] = count;
        }
    }
    let letter = |a: usize, b: usize| generator[edge_index[&(a, b)]];
    let mut relators = Vec::new();
    for (top, lower) in below.iter().enumerate() {
        for &mid in lower {
            for &bottom in &below[mid] {
                let word: Vec<i32> = [
                    letter(bottom, mid),
                    letter(mid, top),
                    -letter(bottom, top),
                ]
                .into_iter()
                .filter(|&x| x != 0)
                .collect();
                let word = free_reduce(&word);
                if !word.is_empty() {
                    relators.push(word);
                }
            }
        }
    }
    Ok(GroupPresentation::new(count as usize, relators))
}

fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(word: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn inverse(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&x| -x).collect()
}

fn rotate(word: &[i32], start: usize) -> Vec<i32> {
    [&word[start..], &word[..start]].concat()
}

/// Least cyclic conjugate of the word or its inverse; equal for relators
/// that define the same normal closure trivially.
fn canonical(word: &[i32]) -> Vec<i32> {
    let inv = inverse(word);
    (0..word.len())
        .flat_map(|i| [rotate(word, i), rotate(&inv, i)])
        .min()
        .unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TietzeStatus {
    Trivial,
    Reduced,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TietzeResult {
    pub presentation: GroupPresentation,
    pub status: TietzeStatus,
    pub trace: Vec<String>,
}

/// Simplifies a presentation by Tietze moves: free and cyclic reduction,
/// removal of trivial and duplicate relators, elimination of a generator
/// occurring exactly once in some relator, and substitutions that shorten
/// a relator. Each elimination or substitution spends one unit of budget.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> TietzeResult {
    let mut gens = p.generators;
    let mut rels: Vec<Vec<i32>> = p.relators.clone();
    let mut trace = Vec::new();
    let mut spent = 0;
    loop {
        let before = rels.len();
        let mut seen = BTreeSet::new();
        rels = rels
            .iter()
            .map(|r| cyclic_reduce(r))
            .filter(|r| !r.is_empty() && seen.insert(canonical(r)))
            .collect();
        if rels.len() < before {
            trace.push(format!("dropped {} trivial or repeated relators", before - rels.len()));
        }
        if gens == 0 {
            return finish(gens, rels, TietzeStatus::Trivial, trace);
        }
        if spent >= budget {
            return finish(gens, rels, TietzeStatus::BudgetExhausted, trace);
        }
        spent += 1;
        if let Some(step) = eliminate(&mut gens, &mut rels) {
            trace.push(step);
            continue;
        }
        if let Some(step) = shorten(&mut rels) {
            trace.push(step);
            continue;
        }
        return finish(gens, rels, TietzeStatus::Reduced, trace);
    }
}

fn finish(gens: usize, rels: Vec<Vec<i32>>, status: TietzeStatus, trace: Vec<String>) -> TietzeResult {
    TietzeResult {
        presentation: GroupPresentation::new(gens, rels),
        status,
        trace,
    }
}

/// Removes a generator that occurs exactly once in some relator, shortest
/// relator first.
fn eliminate(gens: &mut usize, rels: &mut Vec<Vec<i32>>) -> Option<String> {
    let mut order: Vec<usize> = (0..rels.len()).collect();
    order.sort_by_key(|&i| (rels[i].len(), i));
    for i in order {
        let r = &rels[i];
        for (pos, &x) in r.iter().enumerate() {
            let g = x.abs();
            if r.iter().filter(|y| y.abs() == g).count() != 1 {
                continue;
            }
            // x·w = 1, so x = w⁻¹
            let w: Vec<i32> = rotate(r, pos)[1..].to_vec();
            let image = if x > 0 { inverse(&w) } else { w };
            let image_inv = inverse(&image);
            let step = format!(
                "eliminated {} using relator {}",
                letter_name(g),
                r.iter().map(|&y| letter_name(y)).collect::<String>()
            );
            rels.remove(i);
            for rel in rels.iter_mut() {
                let mut out = Vec::with_capacity(rel.len());
                for &y in rel.iter() {
                    if y == g {
                        out.extend_from_slice(&image);
                    } else if y == -g {
                        out.extend_from_slice(&image_inv);
                    } else {
                        out.push(y);
                    }
                }
                // renumber generators above the eliminated one
                *rel = out
                    .into_iter()
                    .map(|y| if y.abs() > g { y - y.signum() } else { y })
                    .collect();
            }
            *gens -= 1;
            return Some(step);
        }
    }
    None
}

/// Replaces, inside some relator `s`, a cyclic subword equal to more than
/// half of a cyclic conjugate of another relator `r^{±1}`.
fn shorten(rels: &mut [Vec<i32>]) -> Option<String> {
    let mut order: Vec<usize> = (0..rels.len()).collect();
    order.sort_by_key(|&i| (rels[i].len(), i));
    for &ri in &order {
        let r = rels[ri].clone();
        let conjugates: Vec<Vec<i32>> = (0..r.len())
            .flat_map(|i| [rotate(&r, i), rotate(&inverse(&r), i)])
            .collect();
        for (si, s) in rels.iter_mut().enumerate() {
            if si == ri {
                continue;
            }
            for c in &conjugates {
                for len in (c.len() / 2 + 1..=c.len()).rev() {
                    if len > s.len() {
                        continue;
                    }
                    let (head, tail) = c.split_at(len);
                    for start in 0..s.len() {
                        let turned = rotate(s.as_slice(), start);
                        if turned[..len] == *head {
                            let mut next = inverse(tail);
                            next.extend_from_slice(&turned[len..]);
                            let next = cyclic_reduce(&next);
                            let step = format!(
                                "shortened relator {} from {} to {} letters",
                                si,
                                s.len(),
                                next.len()
                            );
                            *s = next;
                            return Some(step);
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::Complex;
    use crate::homology::{homology, smith_normal_form};

    fn simplify(gens: usize, rels: Vec<Vec<i32>>) -> TietzeResult {
        tietze_simplify(&GroupPresentation::new(gens, rels), 1000)
    }

    #[test]
    fn small_presentations() {
        assert_eq!(simplify(1, vec![vec![1]]).status, TietzeStatus::Trivial);
        assert_eq!(simplify(2, vec![vec![1, 2], vec![2]]).status, TietzeStatus::Trivial);
        let z2 = simplify(1, vec![vec![1, 1]]);
        assert_eq!(z2.status, TietzeStatus::Reduced);
        assert_eq!(z2.presentation, GroupPresentation::new(1, vec![vec![1, 1]]));
        // a b a⁻¹ b⁻¹ stays: Z²
        let z2z = simplify(2, vec![vec![1, 2, -1, -2]]);
        assert_eq!(z2z.status, TietzeStatus::Reduced);
        assert_eq!(z2z.presentation.generators, 2);
    }

    #[test]
    fn budget_is_respected() {
        let r = tietze_simplify(&GroupPresentation::new(2, vec![vec![1, 2], vec![2]]), 0);
        assert_eq!(r.status, TietzeStatus::BudgetExhausted);
    }

    #[test]
    fn circle_presentation() {
        let p = fundamental_group_presentation(&triangle_boundary()).unwrap();
        assert_eq!(p.generators, 1);
        assert!(p.relators.is_empty());
    }

    #[test]
    fn sphere_is_simply_connected() {
        let p = fundamental_group_presentation(&octahedron_boundary()).unwrap();
        assert_eq!(tietze_simplify(&p, 10_000).status, TietzeStatus::Trivial);
    }

    #[test]
    fn disconnected_is_rejected() {
        assert_eq!(
            fundamental_group_presentation(&points(2)),
            Err(HomologyError::NotConnected)
        );
        assert_eq!(
            fundamental_group_presentation(&Complex::empty()),
            Err(HomologyError::NotConnected)
        );
    }

    #[test]
    fn projective_plane_group() {
        let rp2 = projective_plane();
        let p = fundamental_group_presentation(&rp2).unwrap();
        let r = tietze_simplify(&p, 10_000);
        assert_eq!(r.status, TietzeStatus::Reduced);
        assert_eq!(r.presentation.generators, 1);
        assert_eq!(r.presentation.relators.len(), 1);
        assert_eq!(r.presentation.relators[0].len(), 2);
        assert_eq!(r.presentation.relators[0][0], r.presentation.relators[0][1]);
    }

    #[test]
    fn abelianization_matches_first_homology() {
        for c in [triangle_boundary(), banana(4), octahedron_boundary(), projective_plane()] {
            let p = fundamental_group_presentation(&c).unwrap();
            let snf = smith_normal_form(&p.abelianization());
            let h = homology(&c, false).unwrap();
            assert_eq!(p.generators - snf.rank, h.betti(1));
            assert_eq!(snf.torsion(), h.torsion(1).to_vec());
        }
    }

    #[test]
    fn display_form() {
        let p = GroupPresentation::new(2, vec![vec![1, 2, -1, -2]]);
        assert_eq!(p.display(), "<a, b | a b A B>");
    }
}
