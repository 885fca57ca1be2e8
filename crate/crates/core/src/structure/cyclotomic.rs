use num_bigint::BigInt;
use num_rational::BigRational;

use super::{classify_c0, Method, StructureRow, StructureTable};
use crate::cyclotomic::{
    GroupRingValues, IncrementalSolver, ModularSolver, SolutionOperator, TupleSchedule,
};
use crate::error::{Error, Result};
use crate::fibers::FiberPartition;

/// Recovers the constants from evaluations at points of p-th roots of unity.
///
/// The constant terms come from [`classify_c0`]. For the rest, every pair
/// shares the same coefficient matrix (the values q_k(u)), so points are
/// taken along [`TupleSchedule`] until that matrix reaches rank n and it is
/// factored once; each pair then only supplies its right-hand side
/// q_i(u) q_j(u) − c_{ij0}. Rows beyond the rank must hold as well.
///
/// Factoring and solving run modulo a large prime with each solution
/// certified over Z. Any pair that fails certification, or a matrix that
/// stays singular modulo the prime, is redone in exact rational arithmetic.
pub fn constants_cyclotomic(partition: &FiberPartition) -> Result<StructureTable> {
    let n = partition.n();
    let p = partition.p();
    let c0 = classify_c0(partition)?;

    let mut modular = ModularSolver::new(n);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut points = Vec::new();
    for u in TupleSchedule::new(p, partition.m()) {
        let values = GroupRingValues::at(partition, &u);
        let coords: Vec<Vec<i64>> = (1..=n).map(|k| values.coords(k)).collect();
        for t in 0..coords[0].len() {
            let row: Vec<i64> = coords.iter().map(|c| c[t]).collect();
            modular.offer(&row);
            rows.push(row);
        }
        points.push(values);
        if modular.is_full_rank() {
            break;
        }
    }
    let modular = modular.finish();
    let mut exact: Option<SolutionOperator> = None;

    let mut table = StructureTable::new(
        partition.field().params().clone(),
        n,
        partition.s(),
        Method::Cyclotomic,
    );
    let mut scratch = vec![0i64; p as usize];
    let mut rhs = Vec::with_capacity(rows.len());
    let mut dense = Vec::with_capacity(n + 1);
    for i in 1..=n {
        for j in i..=n {
            let constant = c0[&(i, j)];
            rhs.clear();
            for values in &points {
                let start = rhs.len();
                values.product_coords_into(i, j, &mut scratch, &mut rhs);
                rhs[start] -= constant as i64;
            }
            let certified = modular.as_ref().and_then(|op| op.solve(&rhs));
            let solution = match certified {
                Some(x) => x,
                None => {
                    if exact.is_none() {
                        exact = Some(exact_operator(n, &rows)?);
                    }
                    let op = exact.as_ref().expect("just built");
                    match op.solve_integral(&rhs)? {
                        Ok(x) => x,
                        Err((k, value)) => {
                            return Err(Error::NonIntegralSolution {
                                i,
                                j,
                                k: k + 1,
                                value: value.to_string(),
                            })
                        }
                    }
                }
            };
            dense.clear();
            dense.push(constant);
            for (k, &c) in solution.iter().enumerate() {
                if c < 0 {
                    return Err(Error::NonIntegralSolution {
                        i,
                        j,
                        k: k + 1,
                        value: c.to_string(),
                    });
                }
                dense.push(c as u64);
            }
            table.insert(i, j, StructureRow::from_dense(&dense));
        }
    }
    Ok(table)
}

fn exact_operator(n: usize, rows: &[Vec<i64>]) -> Result<SolutionOperator> {
    let mut solver = IncrementalSolver::new(n);
    for row in rows {
        let q: Vec<BigRational> = row
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        solver.offer(&q)?;
    }
    solver.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::partition;
    use crate::field::{build_field, FieldElement, FieldParams};
    use crate::structure::constants_direct;
    use std::sync::Arc;

    fn part(p: u64, m: u32, modulus: &[u64], n: usize) -> FiberPartition {
        let f = build_field(FieldParams::new(p, m, modulus.to_vec()).unwrap()).unwrap();
        partition(Arc::new(f), n).unwrap()
    }

    #[test]
    fn matches_direct_on_examples() {
        for (p, m, modulus, n) in [
            (3, 2, vec![2, 1], 2),
            (3, 2, vec![2, 1], 4),
            (3, 2, vec![2, 1], 8),
            (2, 4, vec![1, 1, 0, 0], 3),
            (2, 4, vec![1, 1, 0, 0], 15),
        ] {
            let part = part(p, m, &modulus, n);
            let cyc = constants_cyclotomic(&part).unwrap();
            assert!(cyc.same_constants(&constants_direct(&part).unwrap()));
            assert_eq!(cyc.method(), Method::Cyclotomic);
        }
    }

    #[test]
    fn non_character_family_is_rejected() {
        let good = part(3, 2, &[2, 1], 2);
        let field = good.field_arc().clone();
        let mut sets: Vec<Vec<FieldElement>> = good
            .fibers()
            .iter()
            .map(|fb| fb.elements(&field).collect())
            .collect();
        let moved = sets[0].pop().unwrap();
        sets[1].push(moved);
        let bad = FiberPartition::from_sets(field, sets).unwrap();
        assert!(matches!(
            constants_cyclotomic(&bad),
            Err(Error::Inconsistent { .. } | Error::NonIntegralSolution { .. })
        ));
    }
}
