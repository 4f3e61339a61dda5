//! Exact reference machinery for tiny instances: brute-force enumeration and
//! the encoding of a whole matrix as one automaton.

mod brute;
mod encode;

pub use brute::{
    brute_dc, brute_dc_from, brute_satisfiable, brute_solve, brute_solve_capped, row_candidates, DEFAULT_CAP,
};
pub use encode::{encode_matrix_dfa, encoded_dc, ENCODE_CAP};
