//! Commensurability growth toolkit.
//!
//! The crate covers four connected pieces:
//!
//! * [`arith`]: exact arithmetic functions and the rank-1 growth series
//!   `c_n = 2^ω(n)` for subgroups of `ℝ` commensurable with `ℤ`.
//! * [`comgraph`]: the commensurability graph over cyclic subgroups of `ℚ` and
//!   full-rank lattices in `ℚ^d`, with its metric, geodesics and balls.
//! * [`rootsys`] and [`chevalley`]: root systems of every split simple type and
//!   the orders of the associated Chevalley groups over finite rings.
//! * [`parahoric`]: the cocharacter counts and the chain of inequalities that
//!   bound the number of maximal lattices containing a congruence subgroup.
//!
//! Every bound check returns a [`BoundReport`], an exact `lhs <= rhs` record.

pub mod arith;
pub mod chevalley;
pub mod comgraph;
mod error;
pub mod parahoric;
mod report;
pub mod rootsys;

pub use error::{Error, Result};
pub use report::BoundReport;
