//! Twisted and flat twisted braids: words, presentations, quotient
//! invariants, Morse diagrams, braiding and Markov equivalence search.

pub mod braiding;
pub mod diagram;
pub mod markov;
pub mod perm;
pub mod presentation;
pub mod quotient;
pub mod reduced;
pub mod rewrite;
mod search;
mod symmetric;
pub mod word;

pub use perm::Perm;
pub use presentation::{full_presentation, presentation, reduced_presentation, Family, Presentation, PresentationError, Relation};
pub use quotient::{
    bar_parity_per_component, hyperoctahedral_image, parity_multiset, sigma_exponent_sum, ComponentParity,
    QuotientSignature, SignedPermutation,
};
pub use rewrite::{
    equivalent_bounded, raw_neighbors, replay, replay_to, rewrite_neighbors, ProofPath, ReplayError, SearchBounds,
    SearchError, Step, Verdict,
};
pub use word::{BraidWord, Category, ClosurePermutation, Generator, Kind, WordError};
pub use reduced::{
    check_zigzag_identity, expand_bar, expand_flat, expand_sigma, expand_word, verify_derived_relation, DerivationChecker,
    DerivedVerdict, ExpansionError,
};
pub use diagram::{
    closure_diagram, gauss_code, gauss_equivalent, gauss_equivalent_reduced, gauss_irreducibles, gauss_reductions,
    DiagramError, Event, MorseDiagram, Orientation, Role, Symbol, TwistedGaussCode,
};
pub use braiding::{
    braid, braid_with_trace, find_up_arcs, normalize_bars_off_up_arcs, Braiding, FreeUpArc, TraceStep, UpArcDecomposition,
    ValidCrossing,
};
pub use markov::{
    apply_move, markov_equivalent_bounded, markov_neighbors, replay_markov, Direction, MarkovBounds, MarkovError, MarkovMove,
    MarkovPath, MarkovStep, MarkovVerdict, MoveKind, MoveParam,
};
