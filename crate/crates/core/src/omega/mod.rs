//! ω-automata over valuation alphabets.

mod alphabet;
mod bits;
mod dpa;
mod elim;
pub mod graph;
mod hoa;
mod lasso;
mod ltl2nba;
mod nba;
mod safra;

pub use alphabet::{Alphabet, Letter, MAX_PROPS};
pub use lasso::{eval_ltl, eval_positions, LassoWord};
pub use ltl2nba::ltl_to_nba;
pub use nba::BuchiAutomaton;
pub use dpa::ParityAutomaton;
pub use safra::{determinize, determinize_with_budget, DEFAULT_BUDGET};
pub use elim::{
    eliminate_quantifier, eliminate_quantifier_with_budget, vanilla_to_nba,
    vanilla_to_nba_with_budget,
};
pub use hoa::{dpa_to_dot, dpa_to_hoa, nba_to_dot, nba_to_hoa, parse_hoa, HoaAutomaton};
