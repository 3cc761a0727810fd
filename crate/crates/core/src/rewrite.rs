//! One-step relation application, replayable proof paths and bounded
//! word-equivalence search inside a single presentation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::presentation::{Presentation, Relation};
use crate::search::{bidirectional, MoveSystem, Outcome};
use crate::word::{cancels, letters_to_string, BraidWord, Generator};

/// Name recorded for deleting an adjacent cancelling pair.
pub const CANCEL: &str = "cancel";
/// Name recorded for inserting an adjacent cancelling pair.
pub const INSERT: &str = "insert";

/// One primitive rewrite: at `position` (0-based letter offset) the subword
/// `removed` is replaced by `inserted`, producing `result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub position: usize,
    pub removed: Vec<Generator>,
    pub inserted: Vec<Generator>,
    pub result: Vec<Generator>,
}

impl Step {
    fn apply_to(&self, word: &[Generator]) -> Option<Vec<Generator>> {
        let end = self.position.checked_add(self.removed.len())?;
        if end > word.len() || word[self.position..end] != self.removed[..] {
            return None;
        }
        Some(splice(word, self.position, self.removed.len(), &self.inserted))
    }

    /// The step undoing this one, given the word it was applied to.
    fn reversed(&self, before: &[Generator]) -> Step {
        let rule = match self.rule.as_str() {
            CANCEL => INSERT.to_string(),
            INSERT => CANCEL.to_string(),
            other => other.to_string(),
        };
        Step {
            rule,
            position: self.position,
            removed: self.inserted.clone(),
            inserted: self.removed.clone(),
            result: before.to_vec(),
        }
    }

    /// The same step inside a longer word framed by `prefix` and `suffix`.
    pub(crate) fn embedded(&self, prefix: &[Generator], suffix: &[Generator]) -> Step {
        let mut result = prefix.to_vec();
        result.extend_from_slice(&self.result);
        result.extend_from_slice(suffix);
        Step {
            rule: self.rule.clone(),
            position: self.position + prefix.len(),
            removed: self.removed.clone(),
            inserted: self.inserted.clone(),
            result,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {} : {}", self.rule, self.position, letters_to_string(&self.result))
    }
}

pub(crate) fn splice(word: &[Generator], at: usize, len: usize, with: &[Generator]) -> Vec<Generator> {
    let mut out = Vec::with_capacity(word.len() + with.len() - len.min(word.len()));
    out.extend_from_slice(&word[..at]);
    out.extend_from_slice(with);
    out.extend_from_slice(&word[at + len..]);
    out
}

/// A certificate that `start` rewrites to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofPath {
    pub start: Vec<Generator>,
    pub steps: Vec<Step>,
}

impl ProofPath {
    pub fn empty(start: Vec<Generator>) -> Self {
        ProofPath { start, steps: Vec::new() }
    }

    pub fn end(&self) -> &[Generator] {
        self.steps.last().map(|s| s.result.as_slice()).unwrap_or(&self.start)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Steps that apply a presentation relation, as opposed to pair
    /// insertions and cancellations.
    pub fn relation_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.rule != CANCEL && s.rule != INSERT).count()
    }

    /// The same proof read from `end` back to `start`.
    pub fn reversed(&self) -> ProofPath {
        let mut before = Vec::with_capacity(self.steps.len());
        let mut word = self.start.clone();
        for s in &self.steps {
            before.push(word);
            word = s.result.clone();
        }
        let steps = self
            .steps
            .iter()
            .zip(before)
            .rev()
            .map(|(s, b)| s.reversed(&b))
            .collect();
        ProofPath { start: word, steps }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn then(mut self, other: ProofPath) -> ProofPath {
        debug_assert_eq!(self.end(), other.start.as_slice());
        self.steps.extend(other.steps);
        self
    }

    /// Applies one primitive replacement at `position` and records it.
    pub(crate) fn apply(&mut self, rule: &str, position: usize, removed: &[Generator], inserted: &[Generator]) {
        let current = self.end().to_vec();
        debug_assert_eq!(&current[position..position + removed.len()], removed, "rule {rule}");
        let result = splice(&current, position, removed.len(), inserted);
        self.steps.push(Step {
            rule: rule.to_string(),
            position,
            removed: removed.to_vec(),
            inserted: inserted.to_vec(),
            result,
        });
    }

    /// Appends `inner` as applied to the subword between `prefix` and `suffix`.
    pub(crate) fn extend_embedded(&mut self, inner: &ProofPath, prefix: &[Generator], suffix: &[Generator]) {
        for s in &inner.steps {
            self.steps.push(s.embedded(prefix, suffix));
        }
    }

    /// Deletes adjacent cancelling pairs, leftmost first, until none remain.
    pub(crate) fn free_reduce(&mut self) {
        loop {
            let word = self.end();
            let Some(k) = (0..word.len().saturating_sub(1)).find(|&k| cancels(word[k], word[k + 1])) else {
                return;
            };
            let pair = [word[k], word[k + 1]];
            self.apply(CANCEL, k, &pair, &[]);
        }
    }

    /// One line per step: `<rule> @ <position> : <resulting word>`.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {index}: {rule:?} does not apply at position {position}")]
    DoesNotApply { index: usize, rule: String, position: usize },
    #[error("step {index}: {rule:?} is not a relation of the presentation")]
    UnknownRule { index: usize, rule: String },
    #[error("step {index}: replacement does not match relation {rule:?}")]
    WrongSides { index: usize, rule: String },
    #[error("step {index}: recorded result differs from the replayed word")]
    ResultMismatch { index: usize },
    #[error("path ends at {found} instead of {expected}")]
    WrongEnd { found: String, expected: String },
}

/// Re-applies every step of `path` under `presentation`, checking each one
/// is a legal relation application, and returns the final word.
pub fn replay(path: &ProofPath, presentation: &Presentation) -> Result<Vec<Generator>, ReplayError> {
    let mut word = path.start.clone();
    for (index, step) in path.steps.iter().enumerate() {
        check_rule(index, step, presentation)?;
        let next = step.apply_to(&word).ok_or_else(|| ReplayError::DoesNotApply {
            index,
            rule: step.rule.clone(),
            position: step.position,
        })?;
        if next != step.result {
            return Err(ReplayError::ResultMismatch { index });
        }
        word = next;
    }
    Ok(word)
}

/// Replays and additionally checks the path ends at `expected`.
pub fn replay_to(path: &ProofPath, presentation: &Presentation, expected: &[Generator]) -> Result<(), ReplayError> {
    let end = replay(path, presentation)?;
    if end != expected {
        return Err(ReplayError::WrongEnd {
            found: letters_to_string(&end),
            expected: letters_to_string(expected),
        });
    }
    Ok(())
}

fn check_rule(index: usize, step: &Step, presentation: &Presentation) -> Result<(), ReplayError> {
    let gens = presentation.generators();
    let is_pair = |w: &[Generator]| w.len() == 2 && cancels(w[0], w[1]) && w.iter().all(|g| gens.contains(&g.inverse()) || gens.contains(g));
    match step.rule.as_str() {
        CANCEL if is_pair(&step.removed) && step.inserted.is_empty() => Ok(()),
        INSERT if is_pair(&step.inserted) && step.removed.is_empty() => Ok(()),
        CANCEL | INSERT => Err(ReplayError::WrongSides { index, rule: step.rule.clone() }),
        name => {
            let rel = presentation
                .relation(name)
                .ok_or_else(|| ReplayError::UnknownRule { index, rule: name.to_string() })?;
            let forward = rel.lhs == step.removed && rel.rhs == step.inserted;
            let backward = rel.rhs == step.removed && rel.lhs == step.inserted;
            if forward || backward {
                Ok(())
            } else {
                Err(ReplayError::WrongSides { index, rule: name.to_string() })
            }
        }
    }
}

/// Compact move descriptor stored in search trees; expanded into steps once a
/// path is found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum WordMove {
    /// Relation `rel` applied at `pos`, lhs to rhs when `forward`, then free reduction.
    Replace { rel: u32, forward: bool, pos: u32 },
    /// Insert `g g^-1` before letter `pos`.
    Insert { gen: Generator, pos: u32 },
}

/// Relation side lookup keyed by first letter.
pub(crate) struct RuleIndex<'p> {
    presentation: &'p Presentation,
    by_first: HashMap<Generator, Vec<(u32, bool)>>,
    inserts: Vec<Generator>,
}

impl<'p> RuleIndex<'p> {
    pub(crate) fn new(presentation: &'p Presentation) -> Self {
        let mut by_first: HashMap<Generator, Vec<(u32, bool)>> = HashMap::new();
        for (k, rel) in presentation.relations().iter().enumerate() {
            for forward in [true, false] {
                let (from, _) = rel.sides(forward);
                if let Some(&first) = from.first() {
                    by_first.entry(first).or_default().push((k as u32, forward));
                }
            }
        }
        let mut inserts = presentation.generators();
        inserts.sort();
        RuleIndex { presentation, by_first, inserts }
    }

    fn relation(&self, k: u32) -> &Relation {
        &self.presentation.relations()[k as usize]
    }

    /// Every relation-side occurrence in `word`, as (relation, forward, position).
    pub(crate) fn matches(&self, word: &[Generator], out: &mut Vec<(u32, bool, usize)>) {
        for pos in 0..word.len() {
            let Some(cands) = self.by_first.get(&word[pos]) else { continue };
            for &(k, forward) in cands {
                let (from, _) = self.relation(k).sides(forward);
                if word[pos..].starts_with(from) {
                    out.push((k, forward, pos));
                }
            }
        }
    }

    /// Performs `mv` on `word`, returning the result and the primitive steps.
    pub(crate) fn expand(&self, word: &[Generator], mv: WordMove) -> ProofPath {
        let mut path = ProofPath::empty(word.to_vec());
        match mv {
            WordMove::Replace { rel, forward, pos } => {
                let r = self.relation(rel);
                let (from, to) = r.sides(forward);
                path.apply(&r.name, pos as usize, from, to);
                path.free_reduce();
            }
            WordMove::Insert { gen, pos } => {
                path.apply(INSERT, pos as usize, &[], &[gen, gen.inverse()]);
            }
        }
        path
    }
}

/// Neighbor generator used by the bounded search.
struct WordSystem<'a, 'p> {
    rules: &'a RuleIndex<'p>,
    max_length: usize,
    insertions: bool,
}

impl MoveSystem for WordSystem<'_, '_> {
    type State = Vec<Generator>;
    type Move = WordMove;

    fn successors(&self, word: &Vec<Generator>, out: &mut Vec<(WordMove, Vec<Generator>)>) {
        let mut found = Vec::new();
        self.rules.matches(word, &mut found);
        let mut seen = BTreeSet::new();
        for (rel, forward, pos) in found {
            let (from, to) = self.rules.relation(rel).sides(forward);
            let raw = splice(word, pos, from.len(), to);
            let next = crate::word::free_reduce_letters(&raw);
            if next.len() <= self.max_length && seen.insert(next.clone()) {
                out.push((WordMove::Replace { rel, forward, pos: pos as u32 }, next));
            }
        }
        if self.insertions && word.len() + 2 <= self.max_length {
            for pos in 0..=word.len() {
                for &gen in &self.rules.inserts {
                    let next = splice(word, pos, 0, &[gen, gen.inverse()]);
                    if seen.insert(next.clone()) {
                        out.push((WordMove::Insert { gen, pos: pos as u32 }, next));
                    }
                }
            }
        }
    }
}

fn check_matches(w: &BraidWord, p: &Presentation) -> Result<(), SearchError> {
    if w.n() != p.n() || w.category() != p.category() {
        return Err(SearchError::Mismatch {
            word_n: w.n(),
            word_category: w.category().to_string(),
            presentation: format!("{} on {} strands", p.family(), p.n()),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("word on {word_n} strands ({word_category}) does not fit presentation {presentation}")]
    Mismatch { word_n: usize, word_category: String, presentation: String },
}

/// Words one relation application away (each freely reduced afterwards),
/// plus every single insertion of a cancelling generator pair.
pub fn rewrite_neighbors(w: &BraidWord, p: &Presentation) -> Result<BTreeSet<BraidWord>, SearchError> {
    check_matches(w, p)?;
    let rules = RuleIndex::new(p);
    let sys = WordSystem { rules: &rules, max_length: usize::MAX, insertions: true };
    let mut out = Vec::new();
    sys.successors(&w.letters().to_vec(), &mut out);
    Ok(out
        .into_iter()
        .map(|(_, letters)| BraidWord::from_parts(w.n(), w.category(), letters))
        .collect())
}

/// The unreduced one-step graph: raw relation replacements, pair insertions
/// and pair deletions. Every edge here has its reverse edge.
pub fn raw_neighbors(w: &BraidWord, p: &Presentation) -> Result<BTreeSet<BraidWord>, SearchError> {
    check_matches(w, p)?;
    let rules = RuleIndex::new(p);
    let letters = w.letters();
    let mut found = Vec::new();
    rules.matches(letters, &mut found);
    let mut out = BTreeSet::new();
    let mut push = |l: Vec<Generator>| {
        out.insert(BraidWord::from_parts(w.n(), w.category(), l));
    };
    for (rel, forward, pos) in found {
        let (from, to) = rules.relation(rel).sides(forward);
        push(splice(letters, pos, from.len(), to));
    }
    for pos in 0..=letters.len() {
        for &g in &rules.inserts {
            push(splice(letters, pos, 0, &[g, g.inverse()]));
        }
    }
    for k in 0..letters.len().saturating_sub(1) {
        if cancels(letters[k], letters[k + 1]) {
            push(splice(letters, k, 2, &[]));
        }
    }
    Ok(out)
}

/// Limits for [`equivalent_bounded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_length: usize,
    pub max_nodes: usize,
}

impl SearchBounds {
    pub const DEFAULT_MAX_NODES: usize = 1_000_000;

    /// Default bounds for a pair of words: `|w1| + |w2| + 8` letters and a
    /// million visited words per side.
    pub fn for_pair(w1: &[Generator], w2: &[Generator]) -> Self {
        SearchBounds { max_length: w1.len() + w2.len() + 8, max_nodes: Self::DEFAULT_MAX_NODES }
    }
}

/// Outcome of a bounded equivalence query. `Unknown` never claims inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(ProofPath),
    Unknown { explored: usize },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }

    pub fn path(&self) -> Option<&ProofPath> {
        match self {
            Verdict::Equal(p) => Some(p),
            Verdict::Unknown { .. } => None,
        }
    }
}

/// Bidirectional breadth-first search for a rewrite path from `w1` to `w2`.
pub fn equivalent_bounded(
    w1: &BraidWord,
    w2: &BraidWord,
    p: &Presentation,
    bounds: SearchBounds,
) -> Result<Verdict, SearchError> {
    check_matches(w1, p)?;
    check_matches(w2, p)?;
    Ok(search_letters(w1.letters(), w2.letters(), p, bounds, true))
}

pub(crate) fn search_letters(
    w1: &[Generator],
    w2: &[Generator],
    p: &Presentation,
    bounds: SearchBounds,
    insertions: bool,
) -> Verdict {
    let rules = RuleIndex::new(p);
    let sys = WordSystem { rules: &rules, max_length: bounds.max_length, insertions };
    match bidirectional(&sys, w1.to_vec(), w2.to_vec(), bounds.max_nodes) {
        Outcome::Exhausted { explored } => Verdict::Unknown { explored },
        Outcome::Met(meeting) => {
            let mut path = ProofPath::empty(w1.to_vec());
            let mut at = w1.to_vec();
            for (mv, state) in &meeting.from_start {
                let piece = rules.expand(&at, *mv);
                debug_assert_eq!(piece.end(), state.as_slice());
                path = path.then(piece);
                at = state.clone();
            }
            let mut back = ProofPath::empty(w2.to_vec());
            let mut at = w2.to_vec();
            for (mv, state) in &meeting.from_goal {
                let piece = rules.expand(&at, *mv);
                back = back.then(piece);
                at = state.clone();
            }
            Verdict::Equal(path.then(back.reversed()))
        }
    }
}
