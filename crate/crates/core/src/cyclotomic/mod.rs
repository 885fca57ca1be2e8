//! Exact arithmetic in Q(ζ_p) and exact rational linear solving, used to
//! recover structure constants from evaluations at roots of unity.

mod equations;
mod linear;
mod modular;
mod number;

pub use equations::{
    equation_rows, eval_fibers_at, root_point, solve_pair, GroupRingValues, TupleSchedule,
};
pub use linear::{
    solve_exact, IncrementalSolver, LinearEquation, RationalMatrixSystem, SolutionOperator,
};
pub use modular::{ModularOperator, ModularSolver};
pub use number::CycNumber;

/// ζ_p^e.
pub fn cyc_from_root_power(p: u64, e: i64) -> CycNumber {
    CycNumber::from_root_power(p, e)
}
