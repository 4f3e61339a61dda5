//! Finite automata, weighted automata and the string-property builders.

pub mod builders;
pub mod counters;
mod dfa;
pub mod text;
mod weighted;

pub use counters::{unfold_counters, Counter, CounterDfa, CounterExpr};
pub(crate) use dfa::explore;
pub use dfa::{Dfa, StateId, Symbol};
pub use weighted::{CostMatrices, ResourceCosts, ResourceId, WeightedDfa};
