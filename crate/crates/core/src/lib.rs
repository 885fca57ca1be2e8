//! Fibers of multiplicative characters over finite fields, their
//! characteristic polynomials in Z[x_1..x_m]/⟨x_i^p − 1⟩, and the structure
//! constants of the algebra those polynomials span.

pub mod cyclotomic;
pub mod error;
pub mod fibers;
pub mod field;
pub mod format;
pub mod residue_poly;
pub mod ring;
pub mod structure;
pub mod sweep;

pub use error::{Error, Result};
pub use fibers::{partition, Fiber, FiberPartition};
pub use field::{
    build_field, build_field_with_limit, find_primitive_poly, FieldElement, FieldParams,
    FieldTable, DEFAULT_MAX_FIELD,
};
pub use format::Format;
pub use residue_poly::{char_poly, char_polys, sum_identity_check, ResiduePoly};
pub use structure::{
    classify_c0, constants_bruteforce, constants_cyclotomic, constants_direct, perron_check,
    perron_quadratic_general, verify_algebra, Method, PerronReport, StructureRow, StructureTable,
    VerificationReport,
};
pub use sweep::{run_sweep, SweepConfig, SweepReport};
