use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Method, StructureRow, StructureTable};
use crate::error::{Error, Result};
use crate::fibers::FiberPartition;
use crate::residue_poly::char_polys;

/// Expands every product q_i q_j and reads the constants off the monomials.
///
/// The coefficient of q_k is taken from the product's coefficients on the
/// monomials of q_k, which must all agree; the product minus
/// `c_{ij0} + Σ c_{ijk} q_k` must then vanish identically. Either failure
/// means the fibers do not come from a character.
pub fn constants_direct(partition: &FiberPartition) -> Result<StructureTable> {
    let n = partition.n();
    let polys = char_polys(partition)?;
    let mut table = StructureTable::new(
        partition.field().params().clone(),
        n,
        partition.s(),
        Method::Direct,
    );
    for i in 1..=n {
        for j in i..=n {
            let product = polys[i].mul_mod(&polys[j])?;
            let row = read_row(partition, &product.packed_terms().collect::<Vec<_>>(), i, j)?;
            table.insert(i, j, row);
        }
    }
    Ok(table)
}

fn read_row(
    partition: &FiberPartition,
    product: &[(u64, &BigInt)],
    i: usize,
    j: usize,
) -> Result<StructureRow> {
    let n = partition.n();
    let to_u64 = |c: &BigInt, k: usize| {
        c.to_u64()
            .ok_or(Error::NonUniformFiberCoefficients { i, j, k })
    };

    // Coefficient seen on the first monomial of each fiber, and how many
    // of the fiber's monomials carried it.
    let mut seen: Vec<Option<(BigInt, usize)>> = vec![None; n + 1];
    let mut c0 = BigInt::zero();
    for &(key, c) in product {
        if key == 0 {
            c0 = c.clone();
            continue;
        }
        let Some(k) = partition.fiber_of_idx(key as usize) else {
            return Err(Error::NonzeroResidual { i, j });
        };
        match &mut seen[k] {
            None => seen[k] = Some((c.clone(), 1)),
            Some((first, count)) if first == c => *count += 1,
            Some(_) => return Err(Error::NonUniformFiberCoefficients { i, j, k }),
        }
    }

    let mut terms = Vec::new();
    terms.push((0, to_u64(&c0, 0)?));
    for (k, entry) in seen.iter().enumerate().skip(1) {
        let Some((c, count)) = entry else { continue };
        // Present on some monomials of q_k but absent (zero) on others.
        if *count != partition.fibers()[k - 1].len() {
            return Err(Error::NonUniformFiberCoefficients { i, j, k });
        }
        terms.push((k, to_u64(c, k)?));
    }
    let row = StructureRow::from_terms(terms);

    // Residual product − c_{ij0} − Σ c_{ijk} q_k, monomial by monomial.
    let mut residual: HashMap<u64, BigInt> =
        product.iter().map(|&(key, c)| (key, c.clone())).collect();
    *residual.entry(0).or_default() -= BigInt::from(row.get(0));
    for (k, c) in row.terms().filter(|&(k, _)| k != 0) {
        for &idx in partition.fibers()[k - 1].members() {
            *residual.entry(idx as u64).or_default() -= BigInt::from(c);
        }
    }
    if residual.values().any(|c| !c.is_zero()) {
        return Err(Error::NonzeroResidual { i, j });
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::partition;
    use crate::field::{build_field, FieldElement, FieldParams};
    use std::sync::Arc;

    fn part(p: u64, m: u32, modulus: &[u64], n: usize) -> FiberPartition {
        let f = build_field(FieldParams::new(p, m, modulus.to_vec()).unwrap()).unwrap();
        partition(Arc::new(f), n).unwrap()
    }

    #[test]
    fn quadratic_f9() {
        let t = constants_direct(&part(3, 2, &[2, 1], 2)).unwrap();
        assert_eq!(t.row(1, 1), vec![4, 1, 2]);
        assert_eq!(t.row(1, 2), vec![0, 2, 2]);
        assert_eq!(t.row(2, 2), vec![4, 2, 1]);
        assert_eq!(t.method(), Method::Direct);
    }

    #[test]
    fn cubic_f16() {
        let t = constants_direct(&part(2, 4, &[1, 1, 0, 0], 3)).unwrap();
        assert_eq!(t.row(1, 1), vec![5, 0, 2, 2]);
        assert_eq!(t.row(2, 3), vec![0, 1, 2, 2]);
        assert_eq!(t.row(3, 3), vec![5, 2, 2, 0]);
    }

    #[test]
    fn quartic_f9_diagonal() {
        let t = constants_direct(&part(3, 2, &[2, 1], 4)).unwrap();
        assert_eq!(t.row(3, 3), vec![2, 0, 0, 1, 0]);
        assert_eq!(t.row(1, 2), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn detects_moved_element() {
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
            constants_direct(&bad),
            Err(Error::NonUniformFiberCoefficients { .. } | Error::NonzeroResidual { .. })
        ));
    }
}
