//! Braid words over classical, virtual, bar and flat generators.
//!
//! Words are read left to right, which is top to bottom in the braid picture.
//! Every operation returns a fresh word; words are never mutated in place.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Perm;

/// The five letter kinds that may appear in a braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// Positive classical crossing.
    Sigma,
    /// Negative classical crossing.
    SigmaInv,
    /// Virtual crossing.
    V,
    /// Bar on a single strand.
    B,
    /// Flat crossing.
    C,
}

impl Kind {
    /// Token prefix used by the text format.
    pub fn prefix(self) -> char {
        match self {
            Kind::Sigma => 's',
            Kind::SigmaInv => 'S',
            Kind::V => 'v',
            Kind::B => 'b',
            Kind::C => 'c',
        }
    }

    /// Bars live on strands, everything else between two adjacent strands.
    pub fn max_index(self, n: usize) -> usize {
        match self {
            Kind::B => n,
            _ => n.saturating_sub(1),
        }
    }

    /// Whether the letter transposes two adjacent strand positions.
    pub fn permutes(self) -> bool {
        !matches!(self, Kind::B)
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Kind::Sigma | Kind::SigmaInv)
    }
}

/// One letter of a braid word. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub kind: Kind,
    pub index: usize,
}

impl Generator {
    pub const fn new(kind: Kind, index: usize) -> Self {
        Generator { kind, index }
    }

    pub const fn sigma(i: usize) -> Self {
        Generator::new(Kind::Sigma, i)
    }

    pub const fn sigma_inv(i: usize) -> Self {
        Generator::new(Kind::SigmaInv, i)
    }

    pub const fn v(i: usize) -> Self {
        Generator::new(Kind::V, i)
    }

    pub const fn b(i: usize) -> Self {
        Generator::new(Kind::B, i)
    }

    pub const fn c(i: usize) -> Self {
        Generator::new(Kind::C, i)
    }

    /// Group inverse of the letter. Only classical crossings are not involutions.
    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            Kind::Sigma => Kind::SigmaInv,
            Kind::SigmaInv => Kind::Sigma,
            k => k,
        };
        Generator::new(kind, self.index)
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        self.index >= 1 && self.index <= self.kind.max_index(n)
    }

    /// Same letter with the index shifted by `delta` strands.
    pub fn shifted(self, delta: isize) -> Self {
        Generator::new(self.kind, (self.index as isize + delta) as usize)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

impl FromStr for Generator {
    type Err = WordError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let mut chars = token.chars();
        let kind = match chars.next() {
            Some('s') => Kind::Sigma,
            Some('S') => Kind::SigmaInv,
            Some('v') => Kind::V,
            Some('b') => Kind::B,
            Some('c') => Kind::C,
            _ => return Err(WordError::UnknownToken(token.to_string())),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(WordError::UnknownToken(token.to_string()));
        }
        let index = digits
            .parse::<usize>()
            .map_err(|_| WordError::UnknownToken(token.to_string()))?;
        Ok(Generator::new(kind, index))
    }
}

/// Which braid category a word lives in. The category fixes the allowed letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    Twisted,
    FlatTwisted,
    Virtual,
    FlatVirtual,
    Classical,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Twisted,
        Category::FlatTwisted,
        Category::Virtual,
        Category::FlatVirtual,
        Category::Classical,
    ];

    pub fn allows(self, kind: Kind) -> bool {
        use Kind::*;
        match self {
            Category::Twisted => matches!(kind, Sigma | SigmaInv | V | B),
            Category::FlatTwisted => matches!(kind, C | V | B),
            Category::Virtual => matches!(kind, Sigma | SigmaInv | V),
            Category::FlatVirtual => matches!(kind, C | V),
            Category::Classical => matches!(kind, Sigma | SigmaInv),
        }
    }

    pub fn is_flat(self) -> bool {
        matches!(self, Category::FlatTwisted | Category::FlatVirtual)
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Twisted => "twisted",
            Category::FlatTwisted => "flat-twisted",
            Category::Virtual => "virtual",
            Category::FlatVirtual => "flat-virtual",
            Category::Classical => "classical",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| WordError::UnknownCategory(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("letter {letter} is out of range for {n} strands")]
    IndexOutOfRange { letter: Generator, n: usize },
    #[error("letter {letter} is not allowed in the {category} category")]
    CategoryViolation { letter: Generator, category: Category },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("categories differ: {0} vs {1}")]
    CategoryMismatch(Category, Category),
    #[error("strand count must be at least 1")]
    ZeroStrands,
    #[error("unknown category {0:?}")]
    UnknownCategory(String),
    #[error("malformed word file: {0}")]
    Malformed(String),
}

/// A braid word on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    category: Category,
    letters: Vec<Generator>,
}

impl BraidWord {
    /// Builds a word after checking every letter against `n` and the category.
    pub fn new(n: usize, category: Category, letters: Vec<Generator>) -> Result<Self, WordError> {
        if n == 0 {
            return Err(WordError::ZeroStrands);
        }
        for &letter in &letters {
            if !letter.is_valid_for(n) {
                return Err(WordError::IndexOutOfRange { letter, n });
            }
            if !category.allows(letter.kind) {
                return Err(WordError::CategoryViolation { letter, category });
            }
        }
        Ok(BraidWord { n, category, letters })
    }

    /// Internal constructor for letter sequences that are known to be valid.
    pub(crate) fn from_parts(n: usize, category: Category, letters: Vec<Generator>) -> Self {
        debug_assert!(letters.iter().all(|g| g.is_valid_for(n) && category.allows(g.kind)));
        BraidWord { n, category, letters }
    }

    pub fn identity(n: usize, category: Category) -> Self {
        BraidWord::from_parts(n.max(1), category, Vec::new())
    }

    /// Parses whitespace-separated tokens such as `s1 S2 v1 b3 c1`.
    pub fn parse(text: &str, n: usize, category: Category) -> Result<Self, WordError> {
        let letters = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Generator>, _>>()?;
        BraidWord::new(n, category, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters viewed on a different strand count, if they fit.
    pub fn with_strands(&self, n: usize) -> Result<Self, WordError> {
        BraidWord::new(n, self.category, self.letters.clone())
    }

    /// Same strand count and category with a different letter sequence.
    pub fn with_letters(&self, letters: Vec<Generator>) -> Result<Self, WordError> {
        BraidWord::new(self.n, self.category, letters)
    }

    pub fn invert(&self) -> Self {
        let letters = self.letters.iter().rev().map(|g| g.inverse()).collect();
        BraidWord::from_parts(self.n, self.category, letters)
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self, WordError> {
        if self.n != other.n {
            return Err(WordError::StrandMismatch(self.n, other.n));
        }
        if self.category != other.category {
            return Err(WordError::CategoryMismatch(self.category, other.category));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord::from_parts(self.n, self.category, letters))
    }

    pub fn free_reduce(&self) -> Self {
        BraidWord::from_parts(self.n, self.category, free_reduce_letters(&self.letters))
    }

    /// Positions permutation of the closure: strand starting at top position
    /// `i` ends at bottom position `perm[i]` (0-based internally).
    pub fn closure_permutation(&self) -> ClosurePermutation {
        ClosurePermutation::new(self.position_perm())
    }

    pub(crate) fn position_perm(&self) -> Perm {
        letters_perm(self.n, &self.letters)
    }

    pub fn sigma_count(&self) -> usize {
        self.letters.iter().filter(|g| g.kind.is_classical()).count()
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.letters.iter().filter(|g| g.kind == kind).count()
    }

    /// Renders the two-line word file: `n=<n> category=<name>` then the tokens.
    pub fn to_file_string(&self) -> String {
        format!("n={} category={}\n{}\n", self.n, self.category, self)
    }

    /// Parses the two-line word file format.
    pub fn from_file_str(text: &str) -> Result<Self, WordError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| WordError::Malformed("missing header line".into()))?;
        let mut n = None;
        let mut category = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => {
                    n = Some(v.parse::<usize>().map_err(|_| {
                        WordError::Malformed(format!("bad strand count {v:?}"))
                    })?)
                }
                Some(("category", v)) => category = Some(v.parse::<Category>()?),
                _ => return Err(WordError::Malformed(format!("unexpected header field {field:?}"))),
            }
        }
        let n = n.ok_or_else(|| WordError::Malformed("header lacks n=".into()))?;
        let category = category.ok_or_else(|| WordError::Malformed("header lacks category=".into()))?;
        let body = lines.next().unwrap_or("");
        if let Some(extra) = lines.next() {
            return Err(WordError::Malformed(format!("unexpected extra line {extra:?}")));
        }
        BraidWord::parse(body, n, category)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_letters(f, &self.letters)
    }
}

pub(crate) fn format_letters(f: &mut impl fmt::Write, letters: &[Generator]) -> fmt::Result {
    for (k, g) in letters.iter().enumerate() {
        if k > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}

/// Space separated rendering of a bare letter slice.
pub fn letters_to_string(letters: &[Generator]) -> String {
    let mut s = String::new();
    format_letters(&mut s, letters).expect("writing to a String cannot fail");
    s
}

/// Whether `a` immediately followed by `b` cancels.
pub fn cancels(a: Generator, b: Generator) -> bool {
    a.inverse() == b
}

/// Stack-based cancellation of adjacent inverse pairs. The rule set has no
/// overlaps that could disagree, so the result is the unique normal form.
pub fn free_reduce_letters(letters: &[Generator]) -> Vec<Generator> {
    let mut out: Vec<Generator> = Vec::with_capacity(letters.len());
    for &g in letters {
        match out.last() {
            Some(&top) if cancels(top, g) => {
                out.pop();
            }
            _ => out.push(g),
        }
    }
    out
}

pub(crate) fn letters_perm(n: usize, letters: &[Generator]) -> Perm {
    // at[p] = top strand currently sitting at position p
    let mut at: Vec<usize> = (0..n).collect();
    for g in letters {
        if g.kind.permutes() {
            at.swap(g.index - 1, g.index);
        }
    }
    let mut image = vec![0; n];
    for (p, &s) in at.iter().enumerate() {
        image[s] = p;
    }
    Perm::from_images(image)
}

/// Strand permutation of a closed braid together with its cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosurePermutation {
    perm: Perm,
    cycles: Vec<Vec<usize>>,
}

impl ClosurePermutation {
    fn new(perm: Perm) -> Self {
        let cycles = perm.cycles();
        ClosurePermutation { perm, cycles }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    /// Bottom position (1-based) reached by the strand that starts at top position `i` (1-based).
    pub fn image(&self, i: usize) -> usize {
        self.perm.apply(i - 1) + 1
    }

    /// Cycles as 1-based strand positions, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles
            .iter()
            .map(|c| c.iter().map(|&p| p + 1).collect())
            .collect()
    }

    pub(crate) fn cycles0(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Number of link components of the closure.
    pub fn component_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n, Category::Twisted).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(w("", 3).is_empty());
        let sigma2 = w("v1 v2 s1 v2 v1", 3);
        assert_eq!(sigma2.len(), 5);
        assert_eq!(sigma2.to_string(), "v1 v2 s1 v2 v1");
        assert!(matches!(
            BraidWord::parse("b4", 3, Category::Twisted),
            Err(WordError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BraidWord::parse("s3", 3, Category::Twisted),
            Err(WordError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BraidWord::parse("x1", 3, Category::Twisted),
            Err(WordError::UnknownToken(_))
        ));
        assert!(matches!(
            BraidWord::parse("s", 3, Category::Twisted),
            Err(WordError::UnknownToken(_))
        ));
        assert!(matches!(
            BraidWord::parse("c1", 3, Category::Twisted),
            Err(WordError::CategoryViolation { .. })
        ));
        assert!(matches!(
            BraidWord::parse("b1", 3, Category::Virtual),
            Err(WordError::CategoryViolation { .. })
        ));
        assert!(matches!(
            BraidWord::parse("s1", 2, Category::FlatTwisted),
            Err(WordError::CategoryViolation { .. })
        ));
        assert_eq!(BraidWord::parse("", 0, Category::Twisted), Err(WordError::ZeroStrands));
    }

    #[test]
    fn invert_examples() {
        assert!(w("", 2).invert().is_empty());
        assert_eq!(w("s1 v2", 3).invert().to_string(), "v2 S1");
        let x = w("b1 s2 v1", 3);
        assert!(x.concat(&x.invert()).unwrap().free_reduce().is_empty());
    }

    #[test]
    fn concat_examples() {
        let e = w("", 2);
        let x = w("s1 b2", 2);
        assert_eq!(e.concat(&x).unwrap(), x);
        assert_eq!(w("s1", 2).concat(&w("S1", 2)).unwrap().to_string(), "s1 S1");
        assert_eq!(w("v1", 2).concat(&w("v1", 2)).unwrap().len(), 2);
        assert_eq!(w("s1", 2).concat(&w("s1", 3)), Err(WordError::StrandMismatch(2, 3)));
        let flat = BraidWord::parse("v1", 2, Category::FlatTwisted).unwrap();
        assert!(matches!(w("v1", 2).concat(&flat), Err(WordError::CategoryMismatch(..))));
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w("v1 v1", 2).free_reduce().is_empty());
        assert!(w("b1 v2 v2 b1", 3).free_reduce().is_empty());
        assert_eq!(w("v1 v2 v1", 3).free_reduce().to_string(), "v1 v2 v1");
        assert_eq!(w("s1 S1 S1 b2", 2).free_reduce().to_string(), "S1 b2");
        assert_eq!(w("S1 s1 s1", 2).free_reduce().to_string(), "s1");
    }

    /// Naive oracle: delete the first cancelling pair until none is left.
    fn naive_reduce(letters: &[Generator]) -> Vec<Generator> {
        let mut cur = letters.to_vec();
        loop {
            let hit = (0..cur.len().saturating_sub(1)).find(|&k| cancels(cur[k], cur[k + 1]));
            match hit {
                Some(k) => {
                    cur.drain(k..k + 2);
                }
                None => return cur,
            }
        }
    }

    #[test]
    fn stack_reduction_matches_naive_oracle() {
        for text in ["b1 v2 v2 b1", "s1 v1 v1 S1 b1", "v1 s2 S2 v1 v2", "b1 b1 b1"] {
            let x = w(text, 3);
            assert_eq!(x.free_reduce().letters(), naive_reduce(x.letters()).as_slice());
        }
    }

    #[test]
    fn closure_permutation_examples() {
        let id = w("", 3).closure_permutation();
        assert!(id.is_identity());
        assert_eq!(id.component_count(), 3);

        let p = w("v1 s2", 3).closure_permutation();
        assert_eq!(p.component_count(), 1);
        assert_eq!((p.image(1), p.image(2), p.image(3)), (3, 1, 2));

        let bars = w("b1 b2", 2).closure_permutation();
        assert!(bars.is_identity());
        assert_eq!(bars.component_count(), 2);
    }

    #[test]
    fn word_file_round_trip() {
        let x = w("s1 b2 v1", 3);
        let text = x.to_file_string();
        assert_eq!(text, "n=3 category=twisted\ns1 b2 v1\n");
        assert_eq!(BraidWord::from_file_str(&text).unwrap(), x);
        let empty = BraidWord::from_file_str("n=1 category=twisted\n").unwrap();
        assert!(empty.is_empty());
        assert!(BraidWord::from_file_str("n=2 kind=twisted\ns1\n").is_err());
    }
}
