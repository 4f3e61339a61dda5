//! Instance generators: the hardness reductions (3-SAT, exact cover, 3D
//! matching, hitting set), seeded random models and toy rosters.

mod random;
mod reductions;
mod roster;

pub use random::{gen_random, gen_random_regular2, random_dfa, RandomParams};
pub use reductions::{
    gen_3dm_bc, gen_3dm_dc, gen_3sat, gen_exact_cover, gen_hitting_set, no_mix_dfa, CloneOrder, Cnf, Hypergraph,
    HittingVariant, Matching3d,
};
pub use roster::gen_roster;
