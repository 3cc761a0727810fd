//! The symmetric group generated by virtual crossings: canonical reduced
//! words, parabolic coset decomposition, and rewrite paths between reduced
//! words using only the virtual braid and commutation relations.

use crate::perm::Perm;
use crate::rewrite::ProofPath;
use crate::search::{bidirectional, MoveSystem, Outcome};
use crate::word::{letters_perm, Generator, Kind};

/// Right multiplication by the adjacent transposition `v_j` (1-based).
pub(crate) fn times(p: &Perm, j: usize) -> Perm {
    p.then(&Perm::adjacent(p.len(), j - 1))
}

pub(crate) fn is_descent(p: &Perm, j: usize) -> bool {
    // v_j shortens p exactly when the strands at positions j, j+1 are inverted
    let inv = p.inverse();
    inv.apply(j - 1) > inv.apply(j)
}

/// Permutation of a word over virtual letters; other letters are ignored.
pub(crate) fn virtual_perm(n: usize, letters: &[Generator]) -> Perm {
    let only_v: Vec<Generator> = letters.iter().copied().filter(|g| g.kind == Kind::V).collect();
    letters_perm(n, &only_v)
}

/// Canonical reduced word: peel the smallest right descent last.
pub(crate) fn canonical(p: &Perm) -> Vec<Generator> {
    let mut out = Vec::with_capacity(p.inversions());
    let mut q = p.clone();
    while let Some(j) = (1..q.len()).find(|&j| is_descent(&q, j)) {
        out.push(Generator::v(j));
        q = times(&q, j);
    }
    out.reverse();
    out
}

/// Splits `p = tau * h` with `h` in the subgroup generated by `v_j`, `j` in
/// `allowed`, and `tau` the shortest element of its coset. Returns `tau` and a
/// reduced word for `h`.
pub(crate) fn coset_split(p: &Perm, allowed: impl Fn(usize) -> bool) -> (Perm, Vec<Generator>) {
    let mut tau = p.clone();
    let mut h = Vec::new();
    while let Some(j) = (1..tau.len()).find(|&j| allowed(j) && is_descent(&tau, j)) {
        h.push(Generator::v(j));
        tau = times(&tau, j);
    }
    h.reverse();
    (tau, h)
}

#[derive(Clone, Copy)]
struct VMove {
    pos: u8,
}

/// Braid and commutation moves between reduced words of one permutation.
struct ReducedWords;

impl MoveSystem for ReducedWords {
    type State = Vec<u8>;
    type Move = VMove;

    fn successors(&self, w: &Vec<u8>, out: &mut Vec<(VMove, Vec<u8>)>) {
        for k in 0..w.len().saturating_sub(1) {
            if w[k].abs_diff(w[k + 1]) >= 2 {
                let mut next = w.clone();
                next.swap(k, k + 1);
                out.push((VMove { pos: k as u8 }, next));
            } else if k + 2 < w.len() && w[k] == w[k + 2] && w[k].abs_diff(w[k + 1]) == 1 {
                let mut next = w.clone();
                next[k] = w[k + 1];
                next[k + 1] = w[k];
                next[k + 2] = w[k + 1];
                out.push((VMove { pos: k as u8 }, next));
            }
        }
    }
}

fn codes(letters: &[Generator]) -> Vec<u8> {
    letters
        .iter()
        .map(|g| {
            debug_assert_eq!(g.kind, Kind::V);
            g.index as u8
        })
        .collect()
}

/// Records the braid or commutation step that starts at `pos` of `path`'s
/// current word.
fn record(path: &mut ProofPath, pos: usize) {
    let w = path.end().to_vec();
    let (a, b) = (w[pos].index, w[pos + 1].index);
    if a.abs_diff(b) >= 2 {
        let (i, j) = (a.min(b), a.max(b));
        path.apply(&format!("virtual.commute[{i},{j}]"), pos, &w[pos..pos + 2], &[w[pos + 1], w[pos]]);
    } else {
        let i = a.min(b);
        path.apply(&format!("virtual.braid[{i}]"), pos, &w[pos..pos + 3], &[w[pos + 1], w[pos], w[pos + 1]]);
    }
}

/// A path of virtual braid and commutation steps from `from` to `to`, two
/// reduced words of the same permutation. Such a path always exists.
pub(crate) fn reduced_word_path(from: &[Generator], to: &[Generator]) -> ProofPath {
    let mut path = ProofPath::empty(from.to_vec());
    if from == to {
        return path;
    }
    match bidirectional(&ReducedWords, codes(from), codes(to), usize::MAX) {
        Outcome::Met(m) => {
            for (mv, _) in &m.from_start {
                record(&mut path, mv.pos as usize);
            }
            let mut back = ProofPath::empty(to.to_vec());
            for (mv, _) in &m.from_goal {
                record(&mut back, mv.pos as usize);
            }
            path.then(back.reversed())
        }
        Outcome::Exhausted { .. } => panic!(
            "reduced words {} and {} are not connected",
            crate::word::letters_to_string(from),
            crate::word::letters_to_string(to)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vw(idx: &[usize]) -> Vec<Generator> {
        idx.iter().map(|&i| Generator::v(i)).collect()
    }

    #[test]
    fn canonical_words_are_reduced_and_faithful() {
        for n in 1..=5 {
            for p in Perm::all(n) {
                let w = canonical(&p);
                assert_eq!(w.len(), p.inversions());
                assert_eq!(letters_perm(n, &w), p);
            }
        }
    }

    #[test]
    fn coset_split_recomposes() {
        for p in Perm::all(5) {
            let (tau, h) = coset_split(&p, |j| j >= 3);
            let mut word = canonical(&tau);
            word.extend_from_slice(&h);
            assert_eq!(letters_perm(5, &word), p);
            assert_eq!(word.len(), p.inversions());
            assert!(!is_descent(&tau, 3) && !is_descent(&tau, 4));
        }
    }

    #[test]
    fn longest_element_words_connect() {
        let a = vw(&[1, 2, 1, 3, 2, 1]);
        let b = vw(&[3, 2, 3, 1, 2, 3]);
        let path = reduced_word_path(&a, &b);
        assert_eq!(path.end(), b.as_slice());
        assert!(path.steps.iter().all(|s| s.rule.starts_with("virtual.")));
    }
}
