//! Filtering algorithms: Regular / multicostRegular on layered graphs,
//! counting Gcc with cardinality variables, linear sums and min/max.

mod cost_regular;
mod gcc;
mod linear;
mod minmax;

pub use cost_regular::{CostRegular, ResourceSlot};
pub use gcc::GccCount;
pub use linear::LinearSum;
pub use minmax::Extremum;
