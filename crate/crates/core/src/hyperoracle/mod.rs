//! Bounded-horizon brute-force semantics.
//!
//! Time is cut at a horizon `h`; a temporal valuation is `h` bits followed
//! by a repetition of the last one. Every operator is then a finite
//! enumeration and every set-theoretic law holds verbatim.
//!
//! Verdicts on sentences whose matrix uses `X` only, nested fewer than `h`
//! times, coincide with the unbounded semantics; others are approximations.

mod eval;
mod evolve;
mod functor;
mod hyper;
mod set;
mod space;

pub use eval::{eval_alternating, eval_tarski, Evaluator};
pub use evolve::{evolve, EvolveMode};
pub use functor::{enumerate_functors, Functor};
pub use hyper::Hyperassignment;
pub use set::{AsgSet, CAPACITY};
pub use space::{
    spec_equiv, wrd, wrd_inverse, Assignment, Space, TemporalValuation, ValuationLetter,
    MAX_BITS, MAX_HORIZON,
};

use crate::formula::{GeneralFormula, QuantKind};

/// Alternation flag: which player picks the set and which the assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    /// Eloise picks a set, Abelard an assignment in it.
    EA,
    /// Abelard picks a set, Eloise an assignment in it.
    AE,
}

impl Flag {
    pub fn dual(self) -> Flag {
        match self {
            Flag::EA => Flag::AE,
            Flag::AE => Flag::EA,
        }
    }

    /// The flag coherent with a quantifier kind.
    pub fn of(kind: QuantKind) -> Flag {
        match kind {
            QuantKind::Exists => Flag::EA,
            QuantKind::Forall => Flag::AE,
        }
    }
}

/// How to dualize. `Minimal` keeps only the minimal transversals, which is
/// equivalent under `⊑` in both directions and hence satisfies the same
/// formulae.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DualMode {
    #[default]
    Exact,
    Minimal,
}

/// Enumeration guards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest assignment space a total functor may be enumerated over.
    pub functor_assignments: usize,
    /// Largest number of functors (or functor restrictions) enumerated.
    pub functors: u64,
    /// Largest number of choice functions for exact dualization.
    pub choice_functions: u128,
    /// Largest family split into partitions.
    pub partition_sets: usize,
    /// Largest number of selection maps for normal evolution.
    pub selection_maps: u128,
    /// Largest family produced by extension or minimal dualization.
    pub sets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            functor_assignments: 256,
            functors: 1 << 20,
            choice_functions: 1_000_000,
            partition_sets: 16,
            selection_maps: 1_000_000,
            sets: 1 << 21,
        }
    }
}

/// True when the oracle's verdict on `φ` is exact at horizon `h`.
pub fn is_exact_at(phi: &GeneralFormula, h: usize) -> bool {
    match phi {
        GeneralFormula::Ltl(l) => l.is_x_bounded(h),
        GeneralFormula::Not(a) | GeneralFormula::Quant(_, a) => is_exact_at(a, h),
        GeneralFormula::And(a, b) | GeneralFormula::Or(a, b) => {
            is_exact_at(a, h) && is_exact_at(b, h)
        }
    }
}
