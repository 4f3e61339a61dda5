//! Finite-domain store with trailing, propagation to fixpoint and
//! depth-first search.

mod domain;
mod lex;
mod search;
mod store;

pub use domain::{Domain, DC_WIDTH};
pub use lex::{post_lex_chain, LexLeq};
pub use search::{solve, solve_all, Outcome, SearchConfig, SearchResult};
pub use store::{Conflict, Domains, PropId, PropResult, Priority, Propagator, Stats, Store, VarId};
