//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use charfib_core::{build_field, find_primitive_poly, partition, FiberPartition, Result};

/// The character partition of order `n` on F_{p^m}, using the first
/// primitive modulus in lexicographic order.
pub fn fixture(p: u64, m: u32, n: usize) -> Result<FiberPartition> {
    let field = build_field(find_primitive_poly(p, m)?)?;
    partition(Arc::new(field), n)
}
