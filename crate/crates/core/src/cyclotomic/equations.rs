//! Linear equations for the structure constants obtained by evaluating
//! q_i q_j = c_{ij0} + Σ c_{ijk} q_k at points whose coordinates are p-th
//! roots of unity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::linear::{solve_exact, LinearEquation, RationalMatrixSystem};
use super::number::CycNumber;
use crate::error::{Error, Result};
use crate::fibers::FiberPartition;
use crate::residue_poly::{char_polys, ResiduePoly};
use crate::ring::CyclotomicField;

/// The point (ζ^{u_1}, ..., ζ^{u_m}).
pub fn root_point(p: u64, u: &[u32]) -> Vec<CycNumber> {
    u.iter()
        .map(|&e| CycNumber::from_root_power(p, e as i64))
        .collect()
}

/// Exponent tuples over Z/p in lexicographic order, last coordinate fastest:
/// (0,…,0), (0,…,0,1), …, (p-1,…,p-1).
#[derive(Debug, Clone)]
pub struct TupleSchedule {
    p: u64,
    m: usize,
    next: u64,
    total: u64,
}

impl TupleSchedule {
    pub fn new(p: u64, m: usize) -> Self {
        Self {
            p,
            m,
            next: 0,
            total: p.pow(m as u32),
        }
    }
}

impl Iterator for TupleSchedule {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.next >= self.total {
            return None;
        }
        let mut code = self.next;
        self.next += 1;
        let mut u = vec![0u32; self.m];
        for slot in u.iter_mut().rev() {
            *slot = (code % self.p) as u32;
            code /= self.p;
        }
        Some(u)
    }
}

/// Evaluates every fiber polynomial at `u` through [`ResiduePoly::eval`].
pub fn eval_fibers_at(polys: &[ResiduePoly], p: u64, u: &[u32]) -> Result<Vec<CycNumber>> {
    let ring = CyclotomicField::new(p);
    let point = root_point(p, u);
    polys.iter().map(|q| q.eval(&point, &ring)).collect()
}

/// Equations from one evaluation point for the unknowns c_{ij1}, ..., c_{ijn}.
///
/// Each power-basis coordinate of
/// `c_{ij0} + Σ c_{ijk} q_k(u) = q_i(u) q_j(u)` gives one equation; those that
/// carry no information (`0 = 0`) are dropped.
pub fn equation_rows(
    partition: &FiberPartition,
    i: usize,
    j: usize,
    u: &[u32],
    c0: &BigInt,
) -> Result<Vec<LinearEquation>> {
    partition.fiber(i)?;
    partition.fiber(j)?;
    let polys = char_polys(partition)?;
    equation_rows_with(&polys, partition.p(), i, j, u, c0)
}

fn equation_rows_with(
    polys: &[ResiduePoly],
    p: u64,
    i: usize,
    j: usize,
    u: &[u32],
    c0: &BigInt,
) -> Result<Vec<LinearEquation>> {
    let m = polys[0].m();
    if u.len() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            got: u.len(),
        });
    }
    let values = eval_fibers_at(&polys[1..], p, u)?;
    let product = values[i - 1].checked_mul(&values[j - 1])?;
    let rows = (0..product.coords().len())
        .map(|t| LinearEquation {
            coeffs: values.iter().map(|v| v.coords()[t].clone()).collect(),
            constant: if t == 0 {
                BigRational::from_integer(c0.clone())
            } else {
                BigRational::zero()
            },
            value: product.coords()[t].clone(),
        })
        .filter(|eq| !eq.is_trivial())
        .collect();
    Ok(rows)
}

/// c_{ij1}, ..., c_{ijn} for a single pair: equations are gathered point by
/// point along [`TupleSchedule`] and re-solved until the system determines
/// a unique solution.
pub fn solve_pair(
    partition: &FiberPartition,
    i: usize,
    j: usize,
    c0: &BigInt,
) -> Result<Vec<BigRational>> {
    partition.fiber(i)?;
    partition.fiber(j)?;
    let polys = char_polys(partition)?;
    let mut system = RationalMatrixSystem::new(partition.n());
    let mut last = Error::RankDeficient {
        rank: 0,
        unknowns: partition.n(),
    };
    for u in TupleSchedule::new(partition.p(), partition.m()) {
        let rows = equation_rows_with(&polys, partition.p(), i, j, &u, c0)?;
        if rows.is_empty() {
            continue;
        }
        for eq in &rows {
            system.push_equation(eq)?;
        }
        match solve_exact(&system) {
            Ok(sol) => return Ok(sol),
            Err(e @ Error::RankDeficient { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Fiber polynomials evaluated at a root-of-unity point, kept in the group
/// ring of the p-th roots of unity as sparse `(exponent, count)` lists.
///
/// This is the bulk route: q_k(u) = Σ_{β ∈ A_k} ζ^{⟨b, u⟩}, so evaluating
/// needs only inner products of coordinate vectors with `u`, and products of
/// evaluations are convolutions of counts.
#[derive(Debug, Clone)]
pub struct GroupRingValues {
    p: u64,
    /// `fibers[k-1]` lists (t, count) with count > 0, sorted by t.
    fibers: Vec<Vec<(u32, i64)>>,
}

impl GroupRingValues {
    pub fn at(partition: &FiberPartition, u: &[u32]) -> Self {
        let field = partition.field();
        let p = field.p();
        let phase = |idx: usize| -> usize {
            field
                .digits(idx)
                .zip(u)
                .map(|(b, &e)| b as u64 * e as u64)
                .sum::<u64>() as usize
                % p as usize
        };
        let mut hist = vec![0i64; p as usize];
        let fibers = partition
            .fibers()
            .iter()
            .map(|fiber| {
                for &idx in fiber.members() {
                    hist[phase(idx)] += 1;
                }
                let sparse: Vec<(u32, i64)> = hist
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(t, &c)| (t as u32, c))
                    .collect();
                hist.iter_mut().for_each(|c| *c = 0);
                sparse
            })
            .collect();
        Self { p, fibers }
    }

    /// Power-basis coordinates of q_k(u), k = 1..n.
    pub fn coords(&self, k: usize) -> Vec<i64> {
        let mut dense = vec![0i64; self.p as usize];
        for &(t, c) in &self.fibers[k - 1] {
            dense[t as usize] += c;
        }
        reduce(&mut dense)
    }

    pub fn value(&self, k: usize) -> CycNumber {
        to_cyc(self.p, &self.coords(k))
    }

    /// Power-basis coordinates of q_i(u) q_j(u), computed in `scratch`
    /// (length p) and returned as a fresh vector of length max(p-1, 1).
    pub fn product_coords(&self, i: usize, j: usize, scratch: &mut [i64]) -> Vec<i64> {
        let mut out = Vec::new();
        self.product_coords_into(i, j, scratch, &mut out);
        out
    }

    /// Like [`product_coords`](Self::product_coords), appending to `out`.
    pub fn product_coords_into(&self, i: usize, j: usize, scratch: &mut [i64], out: &mut Vec<i64>) {
        let p = self.p as usize;
        scratch.iter_mut().for_each(|c| *c = 0);
        for &(a, ca) in &self.fibers[i - 1] {
            for &(b, cb) in &self.fibers[j - 1] {
                let t = (a + b) as usize;
                scratch[if t >= p { t - p } else { t }] += ca * cb;
            }
        }
        let top = scratch[p - 1];
        if p == 2 {
            out.push(scratch[0] - top);
        } else {
            out.extend(scratch[..p - 1].iter().map(|&c| c - top));
        }
    }
}

/// Folds a group-ring vector of length p onto the power basis.
fn reduce(dense: &mut [i64]) -> Vec<i64> {
    let p = dense.len();
    let top = dense[p - 1];
    if p == 2 {
        return vec![dense[0] - top];
    }
    dense[..p - 1].iter().map(|&c| c - top).collect()
}

fn to_cyc(p: u64, coords: &[i64]) -> CycNumber {
    CycNumber::from_coords(
        p,
        coords
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect(),
    )
    .expect("coordinate count matches degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::partition;
    use crate::field::{build_field, find_primitive_poly, FieldParams};
    use std::sync::Arc;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn f9(n: usize) -> FiberPartition {
        let f = build_field(FieldParams::new(3, 2, vec![2, 1]).unwrap()).unwrap();
        partition(Arc::new(f), n).unwrap()
    }

    #[test]
    fn schedule_order() {
        let tuples: Vec<_> = TupleSchedule::new(3, 2).take(4).collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]);
        assert_eq!(TupleSchedule::new(2, 4).count(), 16);
    }

    #[test]
    fn worked_example_equations() {
        let part = f9(2);
        let c0 = BigInt::from(4);
        let rows = equation_rows(&part, 1, 1, &[0, 0], &c0).unwrap();
        assert_eq!(
            rows,
            vec![LinearEquation {
                coeffs: vec![r(4), r(4)],
                constant: r(4),
                value: r(16),
            }]
        );
        let rows = equation_rows(&part, 1, 1, &[0, 1], &c0).unwrap();
        assert_eq!(
            rows,
            vec![LinearEquation {
                coeffs: vec![r(1), r(-2)],
                constant: r(4),
                value: r(1),
            }]
        );
        let mut sys = RationalMatrixSystem::new(2);
        for u in [[0, 0], [0, 1]] {
            for eq in equation_rows(&part, 1, 1, &u, &c0).unwrap() {
                sys.push_equation(&eq).unwrap();
            }
        }
        assert_eq!(solve_exact(&sys).unwrap(), vec![r(1), r(2)]);
        assert_eq!(solve_pair(&part, 1, 1, &c0).unwrap(), vec![r(1), r(2)]);
    }

    #[test]
    fn characteristic_two_equations() {
        let f = build_field(FieldParams::new(2, 4, vec![1, 1, 0, 0]).unwrap()).unwrap();
        let part = partition(Arc::new(f), 3).unwrap();
        let sol = solve_pair(&part, 2, 3, &BigInt::zero()).unwrap();
        assert_eq!(sol, vec![r(1), r(2), r(2)]);
    }

    #[test]
    fn degenerate_point_gives_no_rows() {
        // A fiber polynomial vanishing at u with q_i(u) q_j(u) = c_{ij0}.
        let zero_only = vec![
            ResiduePoly::one(3, 2).unwrap(),
            ResiduePoly::zero(3, 2).unwrap(),
        ];
        let rows = equation_rows_with(&zero_only, 3, 1, 1, &[0, 1], &BigInt::zero()).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn two_evaluation_routes_agree() {
        for (p, m) in [(3u64, 2u32), (2, 4), (5, 2), (7, 1), (3, 3), (13, 1)] {
            let f = Arc::new(build_field(find_primitive_poly(p, m).unwrap()).unwrap());
            for n in (2..=f.order()).filter(|n| f.order().is_multiple_of(*n)) {
                let part = partition(f.clone(), n).unwrap();
                let polys = char_polys(&part).unwrap();
                for u in TupleSchedule::new(p, m as usize).step_by(3) {
                    let slow = eval_fibers_at(&polys[1..], p, &u).unwrap();
                    let fast = GroupRingValues::at(&part, &u);
                    let mut scratch = vec![0; p as usize];
                    for k in 1..=n {
                        assert_eq!(fast.value(k), slow[k - 1]);
                    }
                    for (i, j) in [(1, 1), (1, n), (n, n)] {
                        let prod = slow[i - 1].checked_mul(&slow[j - 1]).unwrap();
                        let fast_prod = to_cyc(p, &fast.product_coords(i, j, &mut scratch));
                        assert_eq!(fast_prod, prod);
                    }
                }
            }
        }
    }
}
