//! Propagation machinery for the RegularGcc matrix constraint.
//!
//! A RegularGcc instance is an `R x K` matrix of decision variables where every
//! row must spell a word of a (weighted) automaton and every column obeys a
//! global cardinality constraint. Propagating the whole matrix constraint is
//! intractable, so this crate provides the classic decomposition (row automata
//! plus column Gcc) and strengthens it with implied constraints that relate
//! string properties extracted from the rows by weighted automata to bounds
//! derived from the column cardinalities.
//!
//! Module map:
//!
//! * [`automata`]: DFAs, weighted DFAs with resource costs, products, counter
//!   unfolding and the property-extracting builders.
//! * [`engine`]: domains, trailing store, propagation fixpoint and DFS.
//! * [`propagators`]: Regular, multicostRegular, Gcc, linear sums, min/max.
//! * [`model`]: matrix models and the DECOMP / WA / CWA decompositions.
//! * [`oracle`]: brute-force solving and the single-DFA matrix encoding.
//! * [`generators`]: hardness reductions and random instances.
//! * [`nsp`]: roster instances, file formats, benchmark runner.

pub mod automata;
pub mod engine;
pub mod error;
pub mod generators;
pub mod interval;
pub mod model;
pub mod nsp;
pub mod oracle;
pub mod propagators;

pub use error::{Error, Result};
pub use interval::Interval;
