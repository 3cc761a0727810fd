//! Expansion of full generators into the reduced generating set
//! `{σ1 or c1, b1, v1, .., v(n-1)}` and machine checking of derived relations.
//!
//! Relations are proved through a conjugate normal form. Mapping every
//! virtual letter to its transposition and every other letter to the identity
//! is a homomorphism onto the symmetric group, whose kernel is generated by
//! conjugates `T g T^-1` of the non-virtual generators. Any word is rewritten
//! to a product of such conjugates followed by a canonical virtual word, with
//! `T` chosen as the shortest representative of its coset modulo the
//! stabilizer of `g`. Two normal forms are then connected by searching over
//! conjugated relations of the presentation, and every step is expanded back
//! into primitive rewrites that replay under the reduced presentation.

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::Perm;
use crate::presentation::{reduced_presentation, Family, Presentation, Relation};
use crate::rewrite::{search_letters, ProofPath, SearchBounds, Verdict, CANCEL, INSERT};
use crate::search::{bidirectional, MoveSystem, Outcome};
use crate::symmetric::{canonical, coset_split, is_descent, reduced_word_path, times, virtual_perm};
use crate::word::{BraidWord, Category, Generator, Kind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("{letter} has no expansion on {n} strands")]
    IndexOutOfRange { letter: Generator, n: usize },
    #[error("zigzag index {i} needs 1 <= i <= n-1 for n = {n}")]
    BadZigzag { i: usize, n: usize },
}

fn descending(from: usize, to: usize) -> impl Iterator<Item = Generator> {
    (to..=from).rev().map(Generator::v)
}

fn ascending(from: usize, to: usize) -> impl Iterator<Item = Generator> {
    (from..=to).map(Generator::v)
}

fn expand_crossing(j: usize, n: usize, core: Generator) -> Result<BraidWord, ExpansionError> {
    let letter = Generator::new(core.kind, j);
    if j < 2 || j + 1 > n {
        return Err(ExpansionError::IndexOutOfRange { letter, n });
    }
    let mut w: Vec<Generator> = descending(j - 1, 1).chain(descending(j, 2)).collect();
    w.push(core);
    w.extend(ascending(2, j).chain(ascending(1, j - 1)));
    let category = if core.kind == Kind::C { Category::FlatTwisted } else { Category::Twisted };
    Ok(BraidWord::from_parts(n, category, w))
}

/// `σ_j = (v_{j-1}..v_1)(v_j..v_2) σ_1 (v_2..v_j)(v_1..v_{j-1})` for `2 <= j <= n-1`.
pub fn expand_sigma(j: usize, n: usize) -> Result<BraidWord, ExpansionError> {
    expand_crossing(j, n, Generator::sigma(1))
}

/// `c_j`, shaped like [`expand_sigma`] around `c_1`.
pub fn expand_flat(j: usize, n: usize) -> Result<BraidWord, ExpansionError> {
    expand_crossing(j, n, Generator::c(1))
}

/// `b_i = (v_{i-1}..v_1) b_1 (v_1..v_{i-1})` for `2 <= i <= n`.
pub fn expand_bar(i: usize, n: usize) -> Result<BraidWord, ExpansionError> {
    if i < 2 || i > n {
        return Err(ExpansionError::IndexOutOfRange { letter: Generator::b(i), n });
    }
    let mut w: Vec<Generator> = descending(i - 1, 1).collect();
    w.push(Generator::b(1));
    w.extend(ascending(1, i - 1));
    Ok(BraidWord::from_parts(n, Category::Twisted, w))
}

fn expansion(g: Generator, n: usize) -> Vec<Generator> {
    match g.kind {
        Kind::Sigma if g.index >= 2 => expand_crossing(g.index, n, Generator::sigma(1)).unwrap().letters().to_vec(),
        Kind::SigmaInv if g.index >= 2 => {
            expand_crossing(g.index, n, Generator::sigma(1)).unwrap().invert().letters().to_vec()
        }
        Kind::C if g.index >= 2 => expand_crossing(g.index, n, Generator::c(1)).unwrap().letters().to_vec(),
        Kind::B if g.index >= 2 => expand_bar(g.index, n).unwrap().letters().to_vec(),
        _ => vec![g],
    }
}

/// Letter-by-letter substitution without cancellation.
pub(crate) fn substitute(letters: &[Generator], n: usize) -> Vec<Generator> {
    letters.iter().flat_map(|&g| expansion(g, n)).collect()
}

/// Rewrites every letter outside the reduced generating set by its expansion
/// and freely reduces the result.
pub fn expand_word(w: &BraidWord) -> BraidWord {
    let letters = crate::word::free_reduce_letters(&substitute(w.letters(), w.n()));
    BraidWord::from_parts(w.n(), w.category(), letters)
}

/// Proves `v_i..v_2 v_1 v_2..v_i = v_1 v_2..v_i..v_2 v_1` with virtual braid
/// and commutation relations only.
pub fn check_zigzag_identity(i: usize, n: usize) -> Result<Verdict, ExpansionError> {
    if i < 1 || i >= n {
        return Err(ExpansionError::BadZigzag { i, n });
    }
    let lhs: Vec<Generator> = descending(i, 2).chain(ascending(1, i)).collect();
    let rhs: Vec<Generator> = ascending(1, i).chain(descending(i - 1, 1)).collect();
    let virt = reduced_presentation(Family::VbReduced, n)
        .expect("n >= 2")
        .restricted(|r| r.name.starts_with("virtual."));
    let bounds = SearchBounds { max_length: lhs.len(), max_nodes: SearchBounds::DEFAULT_MAX_NODES };
    Ok(search_letters(&lhs, &rhs, &virt, bounds, false))
}

/// A conjugate `T g T^-1` with `T` the canonical word of `tau`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct KLetter {
    gen: Generator,
    tau: Perm,
}

impl KLetter {
    fn inverse(&self) -> KLetter {
        KLetter { gen: self.gen.inverse(), tau: self.tau.clone() }
    }

    fn letters(&self) -> Vec<Generator> {
        let t = canonical(&self.tau);
        let mut out = t.clone();
        out.push(self.gen);
        out.extend(t.iter().rev());
        out
    }
}

fn expand_k(ks: &[KLetter]) -> Vec<Generator> {
    ks.iter().flat_map(KLetter::letters).collect()
}

/// Result of normalizing a word: the path to `E(kword) C(rho)`.
struct Normal {
    path: ProofPath,
    kword: Vec<KLetter>,
    rho: Perm,
}

struct Normalizer {
    n: usize,
}

impl Normalizer {
    fn stabilizes(&self, g: Generator, j: usize) -> bool {
        match g.kind {
            Kind::B => j >= 2,
            _ => j >= 3,
        }
    }

    /// Moves `g` at `pos` left past the virtual letter just before it.
    fn commute_left(&self, path: &mut ProofPath, pos: usize, g: Generator) {
        let vj = path.end()[pos - 1];
        let j = vj.index;
        match g.kind {
            Kind::Sigma | Kind::C => {
                path.apply(&format!("reduced.crossing-virtual[{j}]"), pos - 1, &[vj, g], &[g, vj]);
            }
            Kind::B => {
                path.apply(&format!("reduced.bar-virtual[{j}]"), pos - 1, &[vj, g], &[g, vj]);
            }
            Kind::SigmaInv => {
                let s = g.inverse();
                path.apply(INSERT, pos - 1, &[], &[g, s]);
                path.apply(&format!("reduced.crossing-virtual[{j}]"), pos, &[s, vj], &[vj, s]);
                path.apply(CANCEL, pos + 1, &[s, g], &[]);
            }
            Kind::V => unreachable!("only non-virtual letters are commuted"),
        }
    }

    fn normalize(&self, word: &[Generator]) -> Normal {
        let mut path = ProofPath::empty(word.to_vec());
        let mut kword: Vec<KLetter> = Vec::new();
        let mut rho = Perm::identity(self.n);
        let mut base = 0;
        loop {
            let current = path.end().to_vec();
            let c = canonical(&rho);
            let at = base + c.len();
            if at == current.len() {
                break;
            }
            let g = current[at];
            let suffix = current[at + 1..].to_vec();
            if g.kind == Kind::V {
                let next = times(&rho, g.index);
                let prefix = current[..base].to_vec();
                if is_descent(&rho, g.index) {
                    let mut target = canonical(&next);
                    target.push(g);
                    let mut tail = suffix.clone();
                    tail.insert(0, g);
                    path.extend_embedded(&reduced_word_path(&c, &target), &prefix, &tail);
                    path.apply(CANCEL, at - 1, &[g, g], &[]);
                } else {
                    let mut seg = c.clone();
                    seg.push(g);
                    path.extend_embedded(&reduced_word_path(&seg, &canonical(&next)), &prefix, &suffix);
                }
                rho = next;
                continue;
            }
            let (tau, h) = coset_split(&rho, |j| self.stabilizes(g, j));
            let t = canonical(&tau);
            let mut th = t.clone();
            th.extend_from_slice(&h);
            let prefix = current[..base].to_vec();
            let mut tail = suffix.clone();
            tail.insert(0, g);
            path.extend_embedded(&reduced_word_path(&c, &th), &prefix, &tail);
            let mut pos = at;
            for _ in 0..h.len() {
                self.commute_left(&mut path, pos, g);
                pos -= 1;
            }
            debug_assert_eq!(pos, base + t.len());
            let ins = pos + 1;
            for k in (0..t.len()).rev() {
                let tk = t[k];
                path.apply(INSERT, ins + (t.len() - 1 - k), &[], &[tk, tk]);
            }
            let new_base = base + 2 * t.len() + 1;
            let current = path.end().to_vec();
            let prefix = current[..new_base].to_vec();
            let after = current[new_base + th.len()..].to_vec();
            path.extend_embedded(&reduced_word_path(&th, &c), &prefix, &after);
            kword.push(KLetter { gen: g, tau });
            base = new_base;
        }
        Normal { path, kword, rho }
    }
}

/// A relation of the kernel: a reduced relation conjugated by `y`.
struct KRel {
    y: Perm,
    rel: usize,
    lhs: Vec<u32>,
    rhs: Vec<u32>,
}

#[derive(Clone, Copy)]
enum KMove {
    Rel { k: u32, forward: bool, pos: u32 },
    Cancel { pos: u32 },
    Insert { letter: u32, pos: u32 },
}

struct Kernel<'p> {
    presentation: &'p Presentation,
    norm: Normalizer,
    letters: Vec<KLetter>,
    ids: HashMap<KLetter, u32>,
    inverse: Vec<u32>,
    rels: Vec<KRel>,
    by_first: HashMap<u32, Vec<(u32, bool)>>,
    max_length: usize,
}

impl<'p> Kernel<'p> {
    fn new(presentation: &'p Presentation) -> Self {
        let n = presentation.n();
        let mut kernel = Kernel {
            presentation,
            norm: Normalizer { n },
            letters: Vec::new(),
            ids: HashMap::new(),
            inverse: Vec::new(),
            rels: Vec::new(),
            by_first: HashMap::new(),
            max_length: 0,
        };
        let mut cores = presentation.generators();
        cores.retain(|g| g.kind != Kind::V);
        for tau in Perm::all(n) {
            for &g in &cores {
                kernel.intern(&KLetter { gen: g, tau: tau.clone() });
            }
        }
        for y in Perm::all(n) {
            let yw = canonical(&y);
            for (idx, rel) in presentation.relations().iter().enumerate() {
                if rel.lhs.iter().chain(&rel.rhs).all(|g| g.kind == Kind::V) {
                    continue;
                }
                if !virtual_perm(n, &rel.lhs).is_identity() {
                    continue;
                }
                let lhs = kernel.conj_kword(&yw, &rel.lhs);
                let rhs = kernel.conj_kword(&yw, &rel.rhs);
                if lhs != rhs {
                    kernel.rels.push(KRel { y: y.clone(), rel: idx, lhs, rhs });
                }
            }
        }
        for (k, r) in kernel.rels.iter().enumerate() {
            for forward in [true, false] {
                let from = if forward { &r.lhs } else { &r.rhs };
                if let Some(&first) = from.first() {
                    kernel.by_first.entry(first).or_default().push((k as u32, forward));
                }
            }
        }
        kernel
    }

    fn intern(&mut self, k: &KLetter) -> u32 {
        if let Some(&id) = self.ids.get(k) {
            return id;
        }
        let id = self.letters.len() as u32;
        self.letters.push(k.clone());
        self.ids.insert(k.clone(), id);
        self.inverse.push(u32::MAX);
        let inv = k.inverse();
        let inv_id = if inv == *k { id } else { self.intern(&inv) };
        self.inverse[id as usize] = inv_id;
        self.inverse[inv_id as usize] = id;
        id
    }

    fn conj_word(yw: &[Generator], core: &[Generator]) -> Vec<Generator> {
        let mut w = yw.to_vec();
        w.extend_from_slice(core);
        w.extend(yw.iter().rev());
        w
    }

    fn conj_kword(&self, yw: &[Generator], core: &[Generator]) -> Vec<u32> {
        let normal = self.norm.normalize(&Self::conj_word(yw, core));
        debug_assert!(normal.rho.is_identity());
        normal.kword.iter().map(|k| self.ids[k]).collect()
    }

    fn to_ids(&self, ks: &[KLetter]) -> Vec<u32> {
        ks.iter().map(|k| self.ids[k]).collect()
    }

    fn letters_of(&self, ids: &[u32]) -> Vec<KLetter> {
        ids.iter().map(|&i| self.letters[i as usize].clone()).collect()
    }

    /// The primitive steps realizing one kernel move inside the word
    /// `E(state) C(rho)`.
    fn expand_move(&self, state: &[u32], mv: KMove, rho_word: &[Generator]) -> ProofPath {
        let (pos, removed, inner) = match mv {
            KMove::Rel { k, forward, pos } => {
                let r = &self.rels[k as usize];
                let rel = &self.presentation.relations()[r.rel];
                let (from, to) = rel.sides(forward);
                let yw = canonical(&r.y);
                let before = self.norm.normalize(&Self::conj_word(&yw, from)).path.reversed();
                let mut middle = before;
                middle.apply(&rel.name, yw.len(), from, to);
                let after = self.norm.normalize(middle.end()).path;
                let len = if forward { r.lhs.len() } else { r.rhs.len() };
                (pos as usize, len, middle.then(after))
            }
            KMove::Cancel { pos } => {
                let p = pos as usize;
                let mut inner = ProofPath::empty(expand_k(&self.letters_of(&state[p..p + 2])));
                inner.free_reduce();
                (p, 2, inner)
            }
            KMove::Insert { letter, pos } => {
                let pair = [letter, self.inverse[letter as usize]];
                let mut inner = ProofPath::empty(expand_k(&self.letters_of(&pair)));
                inner.free_reduce();
                (pos as usize, 0, inner.reversed())
            }
        };
        let prefix = expand_k(&self.letters_of(&state[..pos]));
        let mut suffix = expand_k(&self.letters_of(&state[pos + removed..]));
        suffix.extend_from_slice(rho_word);
        let mut start = prefix.clone();
        start.extend_from_slice(&inner.start);
        start.extend_from_slice(&suffix);
        let mut path = ProofPath::empty(start);
        path.extend_embedded(&inner, &prefix, &suffix);
        path
    }
}

impl MoveSystem for Kernel<'_> {
    type State = Vec<u32>;
    type Move = KMove;

    fn successors(&self, w: &Vec<u32>, out: &mut Vec<(KMove, Vec<u32>)>) {
        for pos in 0..w.len() {
            if let Some(cands) = self.by_first.get(&w[pos]) {
                for &(k, forward) in cands {
                    let r = &self.rels[k as usize];
                    let (from, to) = if forward { (&r.lhs, &r.rhs) } else { (&r.rhs, &r.lhs) };
                    if w[pos..].starts_with(from) && w.len() - from.len() + to.len() <= self.max_length {
                        let mut next = w[..pos].to_vec();
                        next.extend_from_slice(to);
                        next.extend_from_slice(&w[pos + from.len()..]);
                        out.push((KMove::Rel { k, forward, pos: pos as u32 }, next));
                    }
                }
            }
            if pos + 1 < w.len() && self.inverse[w[pos] as usize] == w[pos + 1] {
                let mut next = w.clone();
                next.drain(pos..pos + 2);
                out.push((KMove::Cancel { pos: pos as u32 }, next));
            }
        }
        if w.len() + 2 <= self.max_length {
            for pos in 0..=w.len() {
                for letter in 0..self.letters.len() as u32 {
                    let mut next = w.clone();
                    next.splice(pos..pos, [letter, self.inverse[letter as usize]]);
                    out.push((KMove::Insert { letter, pos: pos as u32 }, next));
                }
            }
        }
    }
}

/// Outcome of checking one full relation against a reduced presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivedVerdict {
    /// A path from the substituted left side to the substituted right side.
    Proved(ProofPath),
    Unknown,
}

impl DerivedVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, DerivedVerdict::Proved(_))
    }

    pub fn path(&self) -> Option<&ProofPath> {
        match self {
            DerivedVerdict::Proved(p) => Some(p),
            DerivedVerdict::Unknown => None,
        }
    }
}

/// Shared state for checking many relations against one reduced presentation.
pub struct DerivationChecker<'p> {
    kernel: Kernel<'p>,
    bounds: SearchBounds,
}

impl<'p> DerivationChecker<'p> {
    pub fn new(reduced: &'p Presentation, bounds: SearchBounds) -> Self {
        DerivationChecker { kernel: Kernel::new(reduced), bounds }
    }

    pub fn presentation(&self) -> &Presentation {
        self.kernel.presentation
    }

    /// Substitutes both sides of `r`, then connects them inside the reduced
    /// presentation. The returned path starts at the substituted left side
    /// and ends at the substituted right side.
    pub fn verify(&mut self, r: &Relation) -> DerivedVerdict {
        let n = self.kernel.presentation.n();
        let lhs = substitute(&r.lhs, n);
        let rhs = substitute(&r.rhs, n);
        let mut left = ProofPath::empty(lhs.clone());
        left.free_reduce();
        let mut right = ProofPath::empty(rhs.clone());
        right.free_reduce();
        if left.end() == right.end() {
            return DerivedVerdict::Proved(left.then(right.reversed()));
        }
        let nl = self.kernel.norm.normalize(left.end());
        let nr = self.kernel.norm.normalize(right.end());
        if nl.rho == nr.rho {
            let from = self.kernel.to_ids(&nl.kword);
            let to = self.kernel.to_ids(&nr.kword);
            self.kernel.max_length = from.len() + to.len() + 4;
            if let Outcome::Met(m) = bidirectional(&self.kernel, from.clone(), to.clone(), self.bounds.max_nodes) {
                let rho_word = canonical(&nl.rho);
                let mut middle = ProofPath::empty(nl.path.end().to_vec());
                let mut state = from;
                for (mv, next) in &m.from_start {
                    middle = middle.then(self.kernel.expand_move(&state, *mv, &rho_word));
                    state = next.clone();
                }
                let mut back = ProofPath::empty(nr.path.end().to_vec());
                let mut state = to;
                for (mv, next) in &m.from_goal {
                    back = back.then(self.kernel.expand_move(&state, *mv, &rho_word));
                    state = next.clone();
                }
                let path = left
                    .then(nl.path)
                    .then(middle)
                    .then(back.reversed())
                    .then(nr.path.reversed())
                    .then(right.reversed());
                return DerivedVerdict::Proved(path);
            }
        }
        let bounds = SearchBounds {
            max_length: self.bounds.max_length.max(left.end().len() + right.end().len() + 8),
            max_nodes: self.bounds.max_nodes,
        };
        match search_letters(left.end(), right.end(), self.kernel.presentation, bounds, true) {
            Verdict::Equal(p) => DerivedVerdict::Proved(left.then(p).then(right.reversed())),
            Verdict::Unknown { .. } => DerivedVerdict::Unknown,
        }
    }
}

/// One-shot form of [`DerivationChecker::verify`].
pub fn verify_derived_relation(r: &Relation, p_reduced: &Presentation, bounds: SearchBounds) -> DerivedVerdict {
    DerivationChecker::new(p_reduced, bounds).verify(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::full_presentation;
    use crate::rewrite::replay_to;

    fn tw(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n, Category::Twisted).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_sigma(2, 3).unwrap().to_string(), "v1 v2 s1 v2 v1");
        assert_eq!(expand_sigma(3, 4).unwrap().to_string(), "v2 v1 v3 v2 s1 v2 v3 v1 v2");
        assert!(expand_sigma(2, 2).is_err());
        assert_eq!(expand_bar(2, 2).unwrap().to_string(), "v1 b1 v1");
        assert_eq!(expand_bar(3, 3).unwrap().to_string(), "v2 v1 b1 v1 v2");
        assert!(expand_bar(4, 3).is_err());
        assert_eq!(expand_flat(2, 3).unwrap().to_string(), "v1 v2 c1 v2 v1");
        assert_eq!(expand_flat(3, 4).unwrap().to_string(), "v2 v1 v3 v2 c1 v2 v3 v1 v2");
        assert!(expand_flat(2, 2).is_err());
    }

    #[test]
    fn expand_word_examples() {
        assert_eq!(expand_word(&tw("s2", 3)).to_string(), "v1 v2 s1 v2 v1");
        assert_eq!(expand_word(&tw("b1", 3)).to_string(), "b1");
        let inv = expand_sigma(2, 3).unwrap().invert().free_reduce();
        assert_eq!(expand_word(&tw("S2", 3)), inv);
        assert_eq!(inv.to_string(), "v1 v2 S1 v2 v1");
    }

    #[test]
    fn flat_recursion_matches_closed_form() {
        // c_{i+1} = v_i v_{i+1} c_i v_{i+1} v_i
        for n in 3..=6 {
            for i in 2..n - 1 {
                let mut rec = vec![Generator::v(i), Generator::v(i + 1)];
                rec.extend_from_slice(expand_flat(i, n).unwrap().letters());
                rec.extend([Generator::v(i + 1), Generator::v(i)]);
                let direct = expand_flat(i + 1, n).unwrap();
                assert_eq!(virtual_perm(n, &rec), virtual_perm(n, direct.letters()));
            }
        }
    }

    #[test]
    fn zigzag_small_cases() {
        assert!(check_zigzag_identity(1, 2).unwrap().is_equal());
        let v = check_zigzag_identity(2, 3).unwrap();
        assert_eq!(v.path().unwrap().relation_steps(), 1);
        assert!(check_zigzag_identity(3, 4).unwrap().path().unwrap().len() <= 6);
        assert!(check_zigzag_identity(0, 3).is_err());
        assert!(check_zigzag_identity(3, 3).is_err());
    }

    #[test]
    fn normal_form_of_conjugates() {
        let norm = Normalizer { n: 3 };
        let w = tw("v1 b1 v1", 3);
        let nf = norm.normalize(w.letters());
        assert_eq!(nf.kword.len(), 1);
        assert!(nf.rho.is_identity());
        // b1 commutes with v2, so v2 b1 v2 normalizes to b1
        let nf = norm.normalize(tw("v2 b1 v2", 3).letters());
        assert_eq!(nf.path.end(), &[Generator::b(1)]);
        let red = reduced_presentation(Family::TbReduced, 3).unwrap();
        let nf = norm.normalize(tw("v2 S1 v1 v2 b1 v1", 3).letters());
        crate::rewrite::replay(&nf.path, &red).unwrap();
    }

    #[test]
    fn bar_square_mirrors_cancellation_chain() {
        let full = full_presentation(Family::TbFull, 3).unwrap();
        let red = reduced_presentation(Family::TbReduced, 3).unwrap();
        let r = full.relation("twisted.inv[2]").unwrap();
        let verdict = verify_derived_relation(r, &red, SearchBounds::for_pair(&[], &[]));
        let path = verdict.path().unwrap();
        let words: Vec<String> = path.steps.iter().map(|s| crate::word::letters_to_string(&s.result)).collect();
        assert_eq!(words, vec!["v1 b1 b1 v1", "v1 v1", ""]);
        replay_to(path, &red, &[]).unwrap();
    }

    #[test]
    fn slide_relation_needs_no_steps_after_cancellation() {
        let full = full_presentation(Family::TbFull, 2).unwrap();
        let red = reduced_presentation(Family::TbReduced, 2).unwrap();
        let r = full.relation("mixed.bar-slide[1]").unwrap();
        let path = verify_derived_relation(r, &red, SearchBounds::for_pair(&[], &[])).path().cloned().unwrap();
        assert_eq!(path.relation_steps(), 0);
        replay_to(&path, &red, &substitute(&r.rhs, 2)).unwrap();
    }

    #[test]
    fn every_relation_proved_small_n() {
        for (full_family, red_family) in [(Family::TbFull, Family::TbReduced), (Family::FtFull, Family::FtReduced)] {
            for n in 2..=4 {
                let full = full_presentation(full_family, n).unwrap();
                let red = reduced_presentation(red_family, n).unwrap();
                let mut checker = DerivationChecker::new(&red, SearchBounds { max_length: 0, max_nodes: 200_000 });
                for r in full.relations() {
                    let verdict = checker.verify(r);
                    let path = verdict.path().unwrap_or_else(|| panic!("{} n={n}: {r}", full_family));
                    replay_to(path, &red, &substitute(&r.rhs, n)).unwrap_or_else(|e| panic!("{r}: {e}"));
                    assert_eq!(path.start, substitute(&r.lhs, n));
                }
            }
        }
    }
}
