//! Algebraic Markov moves on twisted and flat twisted braid words and a
//! bounded search for Markov equivalence.
//!
//! Search states are freely reduced words. Every move maps reduced words to
//! reduced words and has an exact inverse, so a path found from either end
//! can be turned around and replayed.

use std::fmt;

use thiserror::Error;

use crate::presentation::{full_presentation, Family, Presentation};
use crate::rewrite::{replay, ProofPath, RuleIndex, WordMove};
use crate::search::{bidirectional, MoveSystem, Outcome};
use crate::word::{free_reduce_letters, letters_to_string, BraidWord, Category, Generator, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    VirtualConj,
    RealConj,
    TwistedConj,
    FlatConj,
    RightVirtualStab,
    RightRealStab,
    RightFlatStab,
    RightUnderThread,
    LeftUnderThread,
    RightFlatThread,
    LeftFlatThread,
    BraidRelation,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::VirtualConj => "VirtualConj",
            MoveKind::RealConj => "RealConj",
            MoveKind::TwistedConj => "TwistedConj",
            MoveKind::FlatConj => "FlatConj",
            MoveKind::RightVirtualStab => "RightVirtualStab",
            MoveKind::RightRealStab => "RightRealStab",
            MoveKind::RightFlatStab => "RightFlatStab",
            MoveKind::RightUnderThread => "RightUnderThread",
            MoveKind::LeftUnderThread => "LeftUnderThread",
            MoveKind::RightFlatThread => "RightFlatThread",
            MoveKind::LeftFlatThread => "LeftFlatThread",
            MoveKind::BraidRelation => "BraidRelation",
        }
    }

    pub fn is_conjugation(self) -> bool {
        matches!(self, MoveKind::VirtualConj | MoveKind::RealConj | MoveKind::TwistedConj | MoveKind::FlatConj)
    }

    /// Stabilizations and threadings: forward adds a strand, inverse removes one.
    pub fn changes_strands(self) -> bool {
        !self.is_conjugation() && self != MoveKind::BraidRelation
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveParam {
    None,
    /// Conjugating generator index.
    Index(usize),
    /// Exponent of the stabilizing crossing.
    Sign(i8),
    /// Primitive rewrite steps inside the full presentation.
    Rewrite(ProofPath),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovMove {
    pub kind: MoveKind,
    pub direction: Direction,
    pub param: MoveParam,
}

impl MarkovMove {
    fn new(kind: MoveKind, direction: Direction, param: MoveParam) -> Self {
        MarkovMove { kind, direction, param }
    }

    /// The move taking the result of `self` back to its source.
    pub fn inverse(&self) -> MarkovMove {
        match (&self.kind, &self.param) {
            (MoveKind::BraidRelation, MoveParam::Rewrite(p)) => {
                MarkovMove::new(MoveKind::BraidRelation, self.direction.flipped(), MoveParam::Rewrite(p.reversed()))
            }
            (MoveKind::VirtualConj | MoveKind::TwistedConj | MoveKind::FlatConj, _) => self.clone(),
            _ => MarkovMove::new(self.kind, self.direction.flipped(), self.param.clone()),
        }
    }
}

impl fmt::Display for MarkovMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Forward => "forward",
            Direction::Inverse => "inverse",
        };
        match &self.param {
            MoveParam::None => write!(f, "{} {dir}", self.kind),
            MoveParam::Index(i) => write!(f, "{}[{i}] {dir}", self.kind),
            MoveParam::Sign(s) => write!(f, "{}[{}] {dir}", self.kind, if *s > 0 { '+' } else { '-' }),
            MoveParam::Rewrite(p) => {
                let rules: Vec<&str> = p.steps.iter().map(|s| s.rule.as_str()).collect();
                write!(f, "{} [{}]", self.kind, rules.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("Markov moves are defined for twisted and flat twisted words, not {0}")]
    UnsupportedCategory(Category),
    #[error("words belong to different categories ({0} and {1})")]
    CategoryMismatch(Category, Category),
    #[error("step {index}: {reason}")]
    Replay { index: usize, reason: String },
}

fn check_category(c: Category) -> Result<(), MarkovError> {
    match c {
        Category::Twisted | Category::FlatTwisted => Ok(()),
        other => Err(MarkovError::UnsupportedCategory(other)),
    }
}

fn full_family(c: Category) -> Family {
    if c.is_flat() {
        Family::FtFull
    } else {
        Family::TbFull
    }
}

/// Conjugating letters `(left, right)` for a conjugation on `n` strands.
fn conjugators(kind: MoveKind, direction: Direction, i: usize) -> (Generator, Generator) {
    match (kind, direction) {
        (MoveKind::VirtualConj, _) => (Generator::v(i), Generator::v(i)),
        (MoveKind::TwistedConj, _) => (Generator::b(i), Generator::b(i)),
        (MoveKind::FlatConj, _) => (Generator::c(i), Generator::c(i)),
        (MoveKind::RealConj, Direction::Forward) => (Generator::sigma_inv(i), Generator::sigma(i)),
        (MoveKind::RealConj, Direction::Inverse) => (Generator::sigma(i), Generator::sigma_inv(i)),
        _ => unreachable!("not a conjugation"),
    }
}

/// Letters appended to a word on `n` strands, living on `n + 1` strands.
fn suffix(kind: MoveKind, param: &MoveParam, n: usize) -> Vec<Generator> {
    let (v, s, si, c) = (Generator::v, Generator::sigma, Generator::sigma_inv, Generator::c);
    match kind {
        MoveKind::RightVirtualStab => vec![v(n)],
        MoveKind::RightRealStab => match param {
            MoveParam::Sign(x) if *x < 0 => vec![si(n)],
            _ => vec![s(n)],
        },
        MoveKind::RightFlatStab => vec![c(n)],
        MoveKind::RightUnderThread => vec![si(n), v(n - 1), s(n)],
        MoveKind::LeftUnderThread => vec![v(n), v(n - 1), s(n - 1), v(n), si(n - 1), v(n - 1), v(n)],
        MoveKind::RightFlatThread => vec![c(n), v(n - 1), c(n)],
        MoveKind::LeftFlatThread => vec![v(n), v(n - 1), c(n - 1), v(n), c(n - 1), v(n - 1), v(n)],
        _ => unreachable!("not a stabilization or threading"),
    }
}

fn is_threading(kind: MoveKind) -> bool {
    matches!(
        kind,
        MoveKind::RightUnderThread | MoveKind::LeftUnderThread | MoveKind::RightFlatThread | MoveKind::LeftFlatThread
    )
}

/// Whether `g` acts on strand `strand` (1-based).
fn touches(g: Generator, strand: usize) -> bool {
    match g.kind {
        Kind::B => g.index == strand,
        _ => g.index == strand || g.index + 1 == strand,
    }
}

fn kinds_for(category: Category) -> (Vec<MoveKind>, Vec<(MoveKind, MoveParam)>) {
    if category.is_flat() {
        (
            vec![MoveKind::VirtualConj, MoveKind::FlatConj, MoveKind::TwistedConj],
            vec![
                (MoveKind::RightVirtualStab, MoveParam::None),
                (MoveKind::RightFlatStab, MoveParam::None),
                (MoveKind::RightFlatThread, MoveParam::None),
                (MoveKind::LeftFlatThread, MoveParam::None),
            ],
        )
    } else {
        (
            vec![MoveKind::VirtualConj, MoveKind::RealConj, MoveKind::TwistedConj],
            vec![
                (MoveKind::RightVirtualStab, MoveParam::None),
                (MoveKind::RightRealStab, MoveParam::Sign(1)),
                (MoveKind::RightRealStab, MoveParam::Sign(-1)),
                (MoveKind::RightUnderThread, MoveParam::None),
                (MoveKind::LeftUnderThread, MoveParam::None),
            ],
        )
    }
}

/// The result of a conjugation, stabilization or threading, or `None` if the
/// move does not apply. `letters` must be freely reduced.
fn apply_template(n: usize, letters: &[Generator], mv: &MarkovMove) -> Option<(usize, Vec<Generator>)> {
    if mv.kind.is_conjugation() {
        let MoveParam::Index(i) = mv.param else { return None };
        let limit = if mv.kind == MoveKind::TwistedConj { n } else { n - 1 };
        if i == 0 || i > limit {
            return None;
        }
        let (l, r) = conjugators(mv.kind, mv.direction, i);
        let mut out = Vec::with_capacity(letters.len() + 2);
        out.push(l);
        out.extend_from_slice(letters);
        out.push(r);
        return Some((n, free_reduce_letters(&out)));
    }
    let min_base = if is_threading(mv.kind) { 2 } else { 1 };
    match mv.direction {
        Direction::Forward => {
            if n < min_base {
                return None;
            }
            let mut out = letters.to_vec();
            out.extend(suffix(mv.kind, &mv.param, n));
            Some((n + 1, out))
        }
        Direction::Inverse => {
            if n < min_base + 1 {
                return None;
            }
            let base = n - 1;
            let tail = suffix(mv.kind, &mv.param, base);
            let head = letters.strip_suffix(tail.as_slice())?;
            if head.iter().any(|&g| touches(g, n)) {
                return None;
            }
            Some((base, head.to_vec()))
        }
    }
}

/// Every conjugation, stabilization and threading of `w` in both directions,
/// each result freely reduced. Braid relation moves are not included.
pub fn markov_neighbors(w: &BraidWord) -> Result<Vec<(MarkovMove, BraidWord)>, MarkovError> {
    check_category(w.category())?;
    let letters = free_reduce_letters(w.letters());
    let mut out = Vec::new();
    for_each_template(w.n(), &letters, w.category(), |mv, n, l| {
        out.push((mv, BraidWord::from_parts(n, w.category(), l)));
    });
    Ok(out)
}

fn for_each_template(n: usize, letters: &[Generator], category: Category, mut f: impl FnMut(MarkovMove, usize, Vec<Generator>)) {
    let (conjs, others) = kinds_for(category);
    for kind in conjs {
        let limit = if kind == MoveKind::TwistedConj { n } else { n.saturating_sub(1) };
        let dirs: &[Direction] =
            if kind == MoveKind::RealConj { &[Direction::Forward, Direction::Inverse] } else { &[Direction::Forward] };
        for i in 1..=limit {
            for &d in dirs {
                let mv = MarkovMove::new(kind, d, MoveParam::Index(i));
                if let Some((m, l)) = apply_template(n, letters, &mv) {
                    f(mv, m, l);
                }
            }
        }
    }
    for (kind, param) in others {
        for d in [Direction::Forward, Direction::Inverse] {
            let mv = MarkovMove::new(kind, d, param.clone());
            if let Some((m, l)) = apply_template(n, letters, &mv) {
                f(mv, m, l);
            }
        }
    }
}

/// Applies `mv` to `w`. Template moves require `w` to be freely reduced.
pub fn apply_move(w: &BraidWord, mv: &MarkovMove) -> Result<BraidWord, String> {
    check_category(w.category()).map_err(|e| e.to_string())?;
    if let MoveParam::Rewrite(path) = &mv.param {
        if mv.kind != MoveKind::BraidRelation {
            return Err("rewrite steps attached to a non-relation move".into());
        }
        if path.start != w.letters() {
            return Err("rewrite path starts at a different word".into());
        }
        // one strand has no relations beyond free reduction
        let p = full_presentation(full_family(w.category()), w.n().max(2)).map_err(|e| e.to_string())?;
        if path.steps.iter().any(|s| s.result.iter().any(|g| !g.is_valid_for(w.n()))) {
            return Err("rewrite path leaves the strand count".into());
        }
        let end = replay(path, &p).map_err(|e| e.to_string())?;
        return Ok(BraidWord::from_parts(w.n(), w.category(), end));
    }
    if mv.kind == MoveKind::BraidRelation {
        return Err("relation move without rewrite steps".into());
    }
    let (kinds, others) = kinds_for(w.category());
    if !kinds.contains(&mv.kind) && !others.iter().any(|(k, _)| *k == mv.kind) {
        return Err(format!("{} is not a move of this category", mv.kind));
    }
    if free_reduce_letters(w.letters()) != w.letters() {
        return Err("word is not freely reduced".into());
    }
    apply_template(w.n(), w.letters(), mv)
        .map(|(n, l)| BraidWord::from_parts(n, w.category(), l))
        .ok_or_else(|| format!("{mv} does not apply to {w}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovStep {
    pub mv: MarkovMove,
    pub result: BraidWord,
}

/// A certificate that `start` is Markov equivalent to the path's end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovPath {
    pub start: BraidWord,
    pub steps: Vec<MarkovStep>,
}

impl MarkovPath {
    pub fn end(&self) -> &BraidWord {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> MarkovPath {
        let mut before = vec![self.start.clone()];
        before.extend(self.steps.iter().map(|s| s.result.clone()));
        before.pop();
        let steps = self
            .steps
            .iter()
            .zip(before)
            .rev()
            .map(|(s, b)| MarkovStep { mv: s.mv.inverse(), result: b })
            .collect();
        MarkovPath { start: self.end().clone(), steps }
    }

    /// One line per move: `<move> : n=<strands> <word>`.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!("{} : n={} {}\n", s.mv, s.result.n(), s.result));
        }
        out
    }
}

/// Re-applies every move and returns the final word.
pub fn replay_markov(path: &MarkovPath) -> Result<BraidWord, MarkovError> {
    let mut at = path.start.clone();
    for (index, step) in path.steps.iter().enumerate() {
        let next = apply_move(&at, &step.mv).map_err(|reason| MarkovError::Replay { index, reason })?;
        if next != step.result {
            return Err(MarkovError::Replay { index, reason: format!("expected {}, replay gives {next}", step.result) });
        }
        at = next;
    }
    Ok(at)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkovBounds {
    pub max_strands: usize,
    pub max_length: usize,
    pub max_nodes: usize,
}

impl MarkovBounds {
    pub const DEFAULT_MAX_NODES: usize = 1_000_000;

    /// `max(n1, n2) + 2` strands, `|w1| + |w2| + 8` letters, a million words per side.
    pub fn for_pair(w1: &BraidWord, w2: &BraidWord) -> Self {
        MarkovBounds {
            max_strands: w1.n().max(w2.n()) + 2,
            max_length: w1.len() + w2.len() + 8,
            max_nodes: Self::DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkovVerdict {
    Equal(MarkovPath),
    Unknown { explored: usize },
}

impl MarkovVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, MarkovVerdict::Equal(_))
    }

    pub fn path(&self) -> Option<&MarkovPath> {
        match self {
            MarkovVerdict::Equal(p) => Some(p),
            MarkovVerdict::Unknown { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    n: usize,
    letters: Vec<Generator>,
}

#[derive(Debug, Clone)]
enum SearchMove {
    Template(MarkovMove),
    Relation(WordMove),
}

struct MarkovSystem<'a, 'p> {
    category: Category,
    /// Rule index for each strand count from 2 upward.
    rules: &'a [RuleIndex<'p>],
    bounds: MarkovBounds,
}

impl MoveSystem for MarkovSystem<'_, '_> {
    type State = State;
    type Move = SearchMove;

    fn successors(&self, s: &State, out: &mut Vec<(SearchMove, State)>) {
        let bounds = self.bounds;
        for_each_template(s.n, &s.letters, self.category, |mv, n, letters| {
            if n <= bounds.max_strands && letters.len() <= bounds.max_length && letters != s.letters {
                out.push((SearchMove::Template(mv), State { n, letters }));
            }
        });
        if s.n < 2 {
            return;
        }
        let rules = &self.rules[s.n - 2];
        let mut found = Vec::new();
        rules.matches(&s.letters, &mut found);
        for (rel, forward, pos) in found {
            let mv = WordMove::Replace { rel, forward, pos: pos as u32 };
            let letters = rules.expand(&s.letters, mv).end().to_vec();
            if letters.len() <= bounds.max_length && letters != s.letters {
                out.push((SearchMove::Relation(mv), State { n: s.n, letters }));
            }
        }
    }
}

/// Bidirectional search over Markov moves and braid relations of the full
/// presentation at the current strand count, within `bounds`.
pub fn markov_equivalent_bounded(
    w1: &BraidWord,
    w2: &BraidWord,
    bounds: MarkovBounds,
) -> Result<MarkovVerdict, MarkovError> {
    check_category(w1.category())?;
    if w1.category() != w2.category() {
        return Err(MarkovError::CategoryMismatch(w1.category(), w2.category()));
    }
    let category = w1.category();
    let top = bounds.max_strands.max(w1.n()).max(w2.n());
    let presentations: Vec<Presentation> = (2..=top.max(2))
        .map(|n| full_presentation(full_family(category), n).expect("full presentations exist for every n"))
        .collect();
    let rules: Vec<RuleIndex> = presentations.iter().map(RuleIndex::new).collect();
    let sys = MarkovSystem { category, rules: &rules, bounds };

    let reduce = |w: &BraidWord| State { n: w.n(), letters: free_reduce_letters(w.letters()) };
    let (a, b) = (reduce(w1), reduce(w2));
    let mut head = ProofPath::empty(w1.letters().to_vec());
    head.free_reduce();
    let mut tail = ProofPath::empty(w2.letters().to_vec());
    tail.free_reduce();

    match bidirectional(&sys, a.clone(), b.clone(), bounds.max_nodes) {
        Outcome::Exhausted { explored } => Ok(MarkovVerdict::Unknown { explored }),
        Outcome::Met(meeting) => {
            let expand = |start: &State, trail: &[(SearchMove, State)]| {
                let word = |s: &State| BraidWord::from_parts(s.n, category, s.letters.clone());
                let mut path = MarkovPath { start: word(start), steps: Vec::new() };
                let mut at = start.clone();
                for (mv, next) in trail {
                    let mv = match mv {
                        SearchMove::Template(m) => m.clone(),
                        SearchMove::Relation(wm) => MarkovMove::new(
                            MoveKind::BraidRelation,
                            Direction::Forward,
                            MoveParam::Rewrite(rules[at.n - 2].expand(&at.letters, *wm)),
                        ),
                    };
                    path.steps.push(MarkovStep { mv, result: word(next) });
                    at = next.clone();
                }
                path
            };
            let forward = expand(&a, &meeting.from_start);
            let backward = expand(&b, &meeting.from_goal).reversed();
            let mut steps = Vec::new();
            let relation = |p: ProofPath, dir| MarkovStep {
                result: BraidWord::from_parts(w1.n(), category, p.end().to_vec()),
                mv: MarkovMove::new(MoveKind::BraidRelation, dir, MoveParam::Rewrite(p)),
            };
            if !head.is_empty() {
                steps.push(relation(head, Direction::Forward));
            }
            steps.extend(forward.steps);
            steps.extend(backward.steps);
            if !tail.is_empty() {
                let back = tail.reversed();
                steps.push(MarkovStep {
                    result: w2.clone(),
                    mv: MarkovMove::new(MoveKind::BraidRelation, Direction::Inverse, MoveParam::Rewrite(back)),
                });
            }
            Ok(MarkovVerdict::Equal(MarkovPath { start: w1.clone(), steps }))
        }
    }
}

impl fmt::Display for MarkovPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start : n={} {}", self.start.n(), letters_to_string(self.start.letters()))?;
        f.write_str(&self.export())
    }
}
