use super::{Method, StructureRow, StructureTable};
use crate::error::Result;
use crate::fibers::FiberPartition;

/// Counts representations directly: c_{ijk} is the number of ordered pairs
/// (a, b) ∈ A_i × A_j with a + b = γ^{k-1}, and c_{ij0} the number with
/// a + b = 0.
///
/// The representative of A_k is its minimal-exponent member. For fixed i
/// every a ∈ A_i and target t is visited once, and b = t − a is charged to
/// the fiber that contains it.
pub fn constants_bruteforce(partition: &FiberPartition) -> Result<StructureTable> {
    let n = partition.n();
    let field = partition.field();
    let mut table =
        StructureTable::new(field.params().clone(), n, partition.s(), Method::Bruteforce);
    // targets[0] is zero, targets[k] the representative of A_k.
    let mut targets = vec![Some(0)];
    targets.extend(
        partition
            .fibers()
            .iter()
            .map(|f| f.members().first().copied()),
    );
    // counts[(j - 1) * (n + 1) + k] = c_{ijk} for the current i.
    let mut counts = vec![0u64; n * (n + 1)];
    for i in 1..=n {
        counts.iter_mut().for_each(|c| *c = 0);
        for &a in partition.fiber(i)?.members() {
            for (k, target) in targets.iter().enumerate() {
                let Some(t) = *target else { continue };
                if let Some(j) = partition.fiber_of_idx(field.sub_idx(t, a)) {
                    counts[(j - 1) * (n + 1) + k] += 1;
                }
            }
        }
        for j in i..=n {
            let row = &counts[(j - 1) * (n + 1)..j * (n + 1)];
            table.insert(i, j, StructureRow::from_dense(row));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::partition;
    use crate::field::{build_field, find_primitive_poly, FieldParams};
    use std::sync::Arc;

    #[test]
    fn f9_and_prime_fields() {
        let f = build_field(FieldParams::new(3, 2, vec![2, 1]).unwrap()).unwrap();
        let t = constants_bruteforce(&partition(Arc::new(f), 2).unwrap()).unwrap();
        assert_eq!(t.coeff(1, 2, 1), 2);
        assert_eq!(t.row(1, 1), vec![4, 1, 2]);

        for (p, c111) in [(5, 0), (7, 1)] {
            let f = build_field(find_primitive_poly(p, 1).unwrap()).unwrap();
            let t = constants_bruteforce(&partition(Arc::new(f), 2).unwrap()).unwrap();
            assert_eq!(t.coeff(1, 1, 1), c111);
        }
    }
}
