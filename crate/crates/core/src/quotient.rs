//! Homomorphic invariants of braid words.
//!
//! The hyperoctahedral image sends crossings of every kind to the transposition
//! of their two positions and a bar to a sign flip of the strand it sits on.
//! Signs travel with strands, which is what makes `b_i v_i = v_i b_{i+1}` hold
//! exactly in the image.

use std::fmt;

use crate::perm::Perm;
use crate::word::{BraidWord, Generator, Kind};

/// Element of the wreath product of sign flips with the symmetric group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    /// Strand starting at top position `i` ends at bottom position `perm[i]`.
    perm: Perm,
    /// Sign carried by the strand starting at top position `i`.
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: Perm::identity(n), signs: vec![1; n] }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `self` followed by `other`, matching word concatenation.
    pub fn then(&self, other: &SignedPermutation) -> SignedPermutation {
        let perm = self.perm.then(&other.perm);
        let signs = (0..self.signs.len())
            .map(|s| self.signs[s] * other.signs[self.perm.apply(s)])
            .collect();
        SignedPermutation { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.signs.iter().all(|&s| s == 1)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.perm.images().iter().map(|p| (p + 1).to_string()).collect();
        let signs: String = self.signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
        write!(f, "perm=[{}] signs={}", images.join(" "), signs)
    }
}

pub fn hyperoctahedral_image(w: &BraidWord) -> SignedPermutation {
    letters_image(w.n(), w.letters())
}

pub(crate) fn letters_image(n: usize, letters: &[Generator]) -> SignedPermutation {
    let mut at: Vec<usize> = (0..n).collect();
    let mut signs = vec![1i8; n];
    for g in letters {
        match g.kind {
            Kind::B => signs[at[g.index - 1]] *= -1,
            _ => at.swap(g.index - 1, g.index),
        }
    }
    let mut image = vec![0; n];
    for (p, &s) in at.iter().enumerate() {
        image[s] = p;
    }
    SignedPermutation { perm: Perm::from_images(image), signs }
}

/// Number of positive minus number of negative classical crossings.
pub fn sigma_exponent_sum(w: &BraidWord) -> i64 {
    letters_exponent_sum(w.letters())
}

pub(crate) fn letters_exponent_sum(letters: &[Generator]) -> i64 {
    letters
        .iter()
        .map(|g| match g.kind {
            Kind::Sigma => 1,
            Kind::SigmaInv => -1,
            _ => 0,
        })
        .sum()
}

/// Bar parity of one closure component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentParity {
    /// 1-based top positions of the strands forming the component.
    pub strands: Vec<usize>,
    pub parity: u8,
    pub bars: usize,
}

/// Parity of the number of bars on each closure component, components ordered
/// by their smallest strand.
pub fn bar_parity_per_component(w: &BraidWord) -> Vec<ComponentParity> {
    let n = w.n();
    let mut at: Vec<usize> = (0..n).collect();
    let mut bars = vec![0usize; n];
    for g in w.letters() {
        match g.kind {
            Kind::B => bars[at[g.index - 1]] += 1,
            _ => at.swap(g.index - 1, g.index),
        }
    }
    w.closure_permutation()
        .cycles0()
        .iter()
        .map(|cycle| {
            let total: usize = cycle.iter().map(|&s| bars[s]).sum();
            ComponentParity {
                strands: cycle.iter().map(|s| s + 1).collect(),
                parity: (total % 2) as u8,
                bars: total,
            }
        })
        .collect()
}

/// Sorted parities, comparable across words whose components are numbered differently.
pub fn parity_multiset(w: &BraidWord) -> Vec<u8> {
    let mut p: Vec<u8> = bar_parity_per_component(w).iter().map(|c| c.parity).collect();
    p.sort_unstable();
    p
}

/// All three invariants at once; equal for any two equivalent words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSignature {
    pub image: SignedPermutation,
    pub exponent_sum: i64,
    pub parities: Vec<u8>,
}

impl QuotientSignature {
    pub fn of(w: &BraidWord) -> Self {
        QuotientSignature {
            image: hyperoctahedral_image(w),
            exponent_sum: sigma_exponent_sum(w),
            parities: bar_parity_per_component(w).iter().map(|c| c.parity).collect(),
        }
    }
}
