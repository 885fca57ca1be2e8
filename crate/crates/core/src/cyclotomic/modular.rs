//! The same row-by-row elimination as [`IncrementalSolver`], carried out
//! modulo the prime 2^61 − 1, with every solution certified over Z before it
//! is returned.
//!
//! Full rank modulo a prime implies full rank over Q, so a certified integral
//! solution is the unique rational one. When certification fails the caller
//! falls back to exact rational elimination, which also reports why.
//!
//! [`IncrementalSolver`]: super::IncrementalSolver

const P: u64 = (1 << 61) - 1;

fn reduce(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let r = lo + (hi & P) + (hi >> 61);
    let r = (r & P) + (r >> 61);
    if r >= P {
        r - P
    } else {
        r
    }
}

fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn from_i64(v: i64) -> u64 {
    v.rem_euclid(P as i64) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

/// Lifts a residue to the symmetric range (−P/2, P/2].
fn lift(r: u64) -> i64 {
    if r > P / 2 {
        r as i64 - P as i64
    } else {
        r as i64
    }
}

struct Pivot {
    col: usize,
    coeffs: Vec<u64>,
    /// Combination of accepted rows equal to this row, by acceptance slot.
    comb: Vec<u64>,
}

/// Accepts integer rows until their rank modulo P reaches the number of
/// unknowns.
pub struct ModularSolver {
    unknowns: usize,
    pivots: Vec<Pivot>,
    accepted: Vec<usize>,
    rows: Vec<Vec<(u32, i64)>>,
}

impl ModularSolver {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            pivots: Vec::new(),
            accepted: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.unknowns
    }

    /// Offers the next row; returns whether it raised the rank.
    pub fn offer(&mut self, coeffs: &[i64]) -> bool {
        assert_eq!(coeffs.len(), self.unknowns, "row width");
        let id = self.rows.len();
        self.rows.push(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k as u32, c))
                .collect(),
        );
        if self.is_full_rank() || self.rows[id].is_empty() {
            return false;
        }
        let slot = self.accepted.len();
        let mut v: Vec<u64> = coeffs.iter().map(|&c| from_i64(c)).collect();
        let mut comb = vec![0u64; slot + 1];
        comb[slot] = 1;
        for pivot in &self.pivots {
            let f = v[pivot.col];
            if f == 0 {
                continue;
            }
            for (x, &pc) in v.iter_mut().zip(&pivot.coeffs) {
                if pc != 0 {
                    *x = sub(*x, mul(f, pc));
                }
            }
            for (x, &pc) in comb.iter_mut().zip(&pivot.comb) {
                if pc != 0 {
                    *x = sub(*x, mul(f, pc));
                }
            }
        }
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = inv(v[col]);
        for x in v.iter_mut().chain(comb.iter_mut()) {
            *x = mul(*x, scale);
        }
        self.pivots.push(Pivot {
            col,
            coeffs: v,
            comb,
        });
        self.accepted.push(id);
        true
    }

    /// Back-substitutes into the inverse of the accepted rows; `None` below
    /// full rank.
    pub fn finish(mut self) -> Option<ModularOperator> {
        let n = self.unknowns;
        if !self.is_full_rank() {
            return None;
        }
        for pivot in self.pivots.iter_mut() {
            pivot.comb.resize(n, 0);
        }
        for k in (0..n).rev() {
            let (head, tail) = self.pivots.split_at_mut(k);
            let pivot = &tail[0];
            for other in head.iter_mut() {
                let f = other.coeffs[pivot.col];
                if f == 0 {
                    continue;
                }
                for (x, &pc) in other.coeffs.iter_mut().zip(&pivot.coeffs) {
                    if pc != 0 {
                        *x = sub(*x, mul(f, pc));
                    }
                }
                for (x, &pc) in other.comb.iter_mut().zip(&pivot.comb) {
                    if pc != 0 {
                        *x = sub(*x, mul(f, pc));
                    }
                }
            }
        }
        let mut inverse = vec![Vec::new(); n];
        for pivot in &self.pivots {
            inverse[pivot.col] = pivot
                .comb
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != 0)
                .map(|(slot, &w)| (slot as u32, w))
                .collect();
        }
        let mut is_accepted = vec![false; self.rows.len()];
        for &id in &self.accepted {
            is_accepted[id] = true;
        }
        let max_coeff = self
            .accepted
            .iter()
            .flat_map(|&id| self.rows[id].iter().map(|&(_, c)| c.unsigned_abs()))
            .max()
            .unwrap_or(0);
        let dependent = self
            .rows
            .into_iter()
            .enumerate()
            .filter(|(id, _)| !is_accepted[*id])
            .collect();
        Some(ModularOperator {
            accepted: self.accepted,
            inverse,
            dependent,
            max_coeff,
        })
    }
}

/// Solves for many right-hand sides against the accepted rows.
pub struct ModularOperator {
    accepted: Vec<usize>,
    /// Row k: weights of the accepted right-hand sides giving unknown k.
    inverse: Vec<Vec<(u32, u64)>>,
    dependent: Vec<(usize, Vec<(u32, i64)>)>,
    max_coeff: u64,
}

impl ModularOperator {
    pub fn accepted_rows(&self) -> &[usize] {
        &self.accepted
    }

    /// The integral solution of every offered row, if one exists with all
    /// |x_k| small enough to certify; `None` otherwise.
    ///
    /// The candidate x satisfies the accepted rows modulo P. Each accepted
    /// row has |row · x − rhs| ≤ max|a| · Σ|x_k| + |rhs| < P/2, so the
    /// congruence is an equality. Dependent rows are checked exactly.
    pub fn solve(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        if rhs.iter().any(|v| v.unsigned_abs() >= 1 << 40) {
            return None;
        }
        let mut x = Vec::with_capacity(self.inverse.len());
        for weights in &self.inverse {
            let mut acc: i128 = 0;
            for &(slot, w) in weights {
                acc += w as i128 * rhs[self.accepted[slot as usize]] as i128;
            }
            x.push(lift(acc.rem_euclid(P as i128) as u64));
        }
        let l1: u128 = x.iter().map(|v| v.unsigned_abs() as u128).sum();
        let max_rhs = self
            .accepted
            .iter()
            .map(|&id| rhs[id].unsigned_abs() as u128)
            .max()
            .unwrap_or(0);
        let bound = (self.max_coeff as u128)
            .checked_mul(l1)?
            .checked_add(max_rhs)?;
        if bound >= (P / 2) as u128 {
            return None;
        }
        for (id, row) in &self.dependent {
            let dot: i128 = row
                .iter()
                .map(|&(k, c)| c as i128 * x[k as usize] as i128)
                .sum();
            if dot != rhs[*id] as i128 {
                return None;
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::IncrementalSolver;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul(P - 1, P - 1), 1);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(from_i64(-1), P - 1);
        assert_eq!(lift(P - 3), -3);
        assert_eq!(reduce(u128::from(P) * u128::from(P)), 0);
    }

    #[test]
    fn solves_and_certifies() {
        let rows: [&[i64]; 4] = [&[4, 4], &[1, -2], &[0, 0], &[2, 2]];
        let mut solver = ModularSolver::new(2);
        for r in rows {
            solver.offer(r);
        }
        let op = solver.finish().unwrap();
        assert_eq!(op.accepted_rows(), &[0, 1]);
        assert_eq!(op.solve(&[12, -3, 0, 6]), Some(vec![1, 2]));
        // Dependent row violated.
        assert_eq!(op.solve(&[12, -3, 0, 7]), None);
        assert_eq!(op.solve(&[12, -3, 1, 6]), None);
        // Non-integral solution (1/2, 1/2).
        assert_eq!(op.solve(&[4, -1, 0, 2]), None);
    }

    #[test]
    fn rank_deficient() {
        let mut solver = ModularSolver::new(2);
        solver.offer(&[1, 1]);
        solver.offer(&[2, 2]);
        assert!(solver.finish().is_none());
    }

    proptest! {
        #[test]
        fn agrees_with_exact(
            rows in prop::collection::vec(prop::collection::vec(-4i64..5, 3), 3..7),
            x in prop::collection::vec(-20i64..21, 3),
        ) {
            let mut modular = ModularSolver::new(3);
            let mut exact = IncrementalSolver::new(3);
            for r in &rows {
                modular.offer(r);
                let q: Vec<BigRational> = r.iter().map(|&v| BigRational::from_integer(v.into())).collect();
                exact.offer(&q).unwrap();
            }
            let rhs: Vec<i64> = rows.iter().map(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
            match (modular.finish(), exact.finish()) {
                (Some(m), Ok(e)) => {
                    prop_assert_eq!(m.solve(&rhs), Some(x.clone()));
                    prop_assert_eq!(e.solve_integral(&rhs).unwrap().unwrap(), x);
                }
                (None, Err(_)) => {}
                (m, e) => prop_assert!(false, "rank disagreement {} {}", m.is_some(), e.is_ok()),
            }
        }
    }
}
