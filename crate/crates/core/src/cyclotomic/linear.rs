//! Exact linear algebra over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `constant + Σ coeffs[k] x_k = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEquation {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
    pub value: BigRational,
}

impl LinearEquation {
    /// Right-hand side once the constant is moved across.
    pub fn rhs(&self) -> BigRational {
        &self.value - &self.constant
    }

    /// Coefficients and constants are all zero and value equals constant.
    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && self.value == self.constant
    }
}

/// Rows `coeffs · x = rhs` in a fixed number of unknowns.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RationalMatrixSystem {
    unknowns: usize,
    rows: Vec<(Vec<BigRational>, BigRational)>,
}

impl RationalMatrixSystem {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rows(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> Result<()> {
        if coeffs.len() != self.unknowns {
            return Err(Error::EquationWidth {
                expected: self.unknowns,
                got: coeffs.len(),
            });
        }
        self.rows.push((coeffs, rhs));
        Ok(())
    }

    pub fn push_equation(&mut self, eq: &LinearEquation) -> Result<()> {
        self.push(eq.coeffs.clone(), eq.rhs())
    }
}

/// Gaussian elimination with rational pivots.
///
/// Fails with `Inconsistent` if some row reduces to `0 = c` with `c != 0`,
/// otherwise with `RankDeficient` if the solution is not unique.
pub fn solve_exact(system: &RationalMatrixSystem) -> Result<Vec<BigRational>> {
    let n = system.unknowns;
    let mut rows: Vec<(Vec<BigRational>, BigRational, usize)> = system
        .rows
        .iter()
        .enumerate()
        .map(|(i, (c, r))| (c.clone(), r.clone(), i))
        .collect();

    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank].0[col].recip();
        for c in rows[rank].0.iter_mut() {
            *c *= &inv;
        }
        rows[rank].1 *= &inv;
        let (head, rest) = rows.split_at_mut(rank);
        let (pivot_row, tail) = rest.split_first_mut().expect("pivot row exists");
        let pivot_row = &*pivot_row;
        for other in head.iter_mut().chain(tail.iter_mut()) {
            let f = other.0[col].clone();
            if f.is_zero() {
                continue;
            }
            for (c, pc) in other.0.iter_mut().zip(&pivot_row.0).skip(col) {
                if !pc.is_zero() {
                    *c -= &f * pc;
                }
            }
            other.1 -= &f * &pivot_row.1;
        }
        rank += 1;
    }
    if let Some((_, _, row)) = rows[rank..].iter().find(|(_, r, _)| !r.is_zero()) {
        return Err(Error::Inconsistent { row: *row });
    }
    if rank < n {
        return Err(Error::RankDeficient { rank, unknowns: n });
    }
    // Reduced row echelon form with unit pivots in columns 0..n.
    Ok(rows.into_iter().take(n).map(|(_, r, _)| r).collect())
}

/// Linear functional `Σ_r weights[r] · rhs[r]` over accepted rows, with the
/// weights scaled to integers over a common denominator when they fit.
#[derive(Debug, Clone)]
struct Functional {
    exact: Vec<(usize, BigRational)>,
    scaled: Option<(Vec<(usize, i64)>, i64)>,
}

impl Functional {
    fn new(weights: &[BigRational]) -> Self {
        let exact: Vec<(usize, BigRational)> = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| (i, w.clone()))
            .collect();
        let denom = exact
            .iter()
            .fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()));
        let scaled = denom.to_i64().and_then(|d| {
            let nums: Option<Vec<(usize, i64)>> = exact
                .iter()
                .map(|(i, w)| (w.numer() * (&denom / w.denom())).to_i64().map(|v| (*i, v)))
                .collect();
            nums.map(|v| (v, d))
        });
        Self { exact, scaled }
    }

    /// Evaluates on an integral right-hand side as `(numerator, denominator)`.
    fn apply_scaled(&self, rhs: &[i64]) -> Option<(i128, i64)> {
        let (nums, d) = self.scaled.as_ref()?;
        let mut acc: i128 = 0;
        for &(i, w) in nums {
            acc = acc.checked_add((w as i128).checked_mul(rhs[i] as i128)?)?;
        }
        Some((acc, *d))
    }

    fn apply_exact(&self, rhs: &[i64]) -> BigRational {
        self.exact.iter().fold(BigRational::zero(), |acc, (i, w)| {
            acc + w * BigInt::from(rhs[*i])
        })
    }

    fn apply(&self, rhs: &[i64]) -> BigRational {
        match self.apply_scaled(rhs) {
            Some((num, d)) => BigRational::new(BigInt::from(num), BigInt::from(d)),
            None => self.apply_exact(rhs),
        }
    }

    /// The value if it is an integer, `Err` with the exact value otherwise.
    fn apply_integral(&self, rhs: &[i64]) -> std::result::Result<i64, BigRational> {
        if let Some((num, d)) = self.apply_scaled(rhs) {
            if num % d as i128 == 0 {
                if let Ok(v) = i64::try_from(num / d as i128) {
                    return Ok(v);
                }
            }
        }
        let v = self.apply_exact(rhs);
        match (v.is_integer(), v.to_integer().to_i64()) {
            (true, Some(x)) => Ok(x),
            _ => Err(v),
        }
    }
}

struct Pivot {
    col: usize,
    coeffs: Vec<BigRational>,
    /// Combination of accepted rows equal to this row, indexed by
    /// acceptance order.
    comb: Vec<BigRational>,
}

/// Row-by-row elimination for many right-hand sides sharing one matrix.
///
/// Rows are offered one at a time. Independent rows are accepted until the
/// rank reaches the number of unknowns; dependent rows are kept as linear
/// relations among accepted rows, which every right-hand side must satisfy.
pub struct IncrementalSolver {
    unknowns: usize,
    pivots: Vec<Pivot>,
    /// Offered-row id of each accepted row.
    accepted: Vec<usize>,
    /// (offered-row id, combination of accepted rows it equals).
    dependent: Vec<(usize, Vec<BigRational>)>,
    offered: usize,
}

impl IncrementalSolver {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            pivots: Vec::new(),
            accepted: Vec::new(),
            dependent: Vec::new(),
            offered: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.unknowns
    }

    pub fn offered(&self) -> usize {
        self.offered
    }

    /// Offers the next row; returns whether it raised the rank.
    pub fn offer(&mut self, coeffs: &[BigRational]) -> Result<bool> {
        if coeffs.len() != self.unknowns {
            return Err(Error::EquationWidth {
                expected: self.unknowns,
                got: coeffs.len(),
            });
        }
        let id = self.offered;
        self.offered += 1;
        let slot = self.accepted.len();
        let mut v = coeffs.to_vec();
        let mut comb = vec![BigRational::zero(); slot + 1];
        comb[slot] = BigRational::one();
        for pivot in &self.pivots {
            let f = v[pivot.col].clone();
            if f.is_zero() {
                continue;
            }
            for (x, pc) in v.iter_mut().zip(&pivot.coeffs) {
                if !pc.is_zero() {
                    *x -= &f * pc;
                }
            }
            for (x, pc) in comb.iter_mut().zip(&pivot.comb) {
                if !pc.is_zero() {
                    *x -= &f * pc;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                // 0 = row_id - Σ (...) accepted rows, so row_id = -comb[..slot].
                comb.truncate(slot);
                let relation = comb.into_iter().map(|c| -c).collect();
                self.dependent.push((id, relation));
                Ok(false)
            }
            Some(col) => {
                let inv = v[col].recip();
                for x in v.iter_mut().chain(comb.iter_mut()) {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
                self.pivots.push(Pivot {
                    col,
                    coeffs: v,
                    comb,
                });
                self.accepted.push(id);
                Ok(true)
            }
        }
    }

    /// Back-substitutes into a reusable solution operator.
    pub fn finish(mut self) -> Result<SolutionOperator> {
        let n = self.unknowns;
        if self.rank() < n {
            return Err(Error::RankDeficient {
                rank: self.rank(),
                unknowns: n,
            });
        }
        for c in self.pivots.iter_mut() {
            c.comb.resize(n, BigRational::zero());
        }
        for k in (0..n).rev() {
            let (head, tail) = self.pivots.split_at_mut(k);
            let pivot = &tail[0];
            for other in head.iter_mut() {
                let f = other.coeffs[pivot.col].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, pc) in other.coeffs.iter_mut().zip(&pivot.coeffs) {
                    if !pc.is_zero() {
                        *x -= &f * pc;
                    }
                }
                for (x, pc) in other.comb.iter_mut().zip(&pivot.comb) {
                    if !pc.is_zero() {
                        *x -= &f * pc;
                    }
                }
            }
        }
        let mut solution = vec![None; n];
        for pivot in &self.pivots {
            solution[pivot.col] = Some(Functional::new(&pivot.comb));
        }
        let relations = self
            .dependent
            .iter()
            .map(|(id, rel)| {
                let mut w = rel.clone();
                w.resize(n, BigRational::zero());
                (*id, Functional::new(&w))
            })
            .collect();
        Ok(SolutionOperator {
            accepted: self.accepted,
            solution: solution
                .into_iter()
                .map(|f| f.expect("full rank"))
                .collect(),
            relations,
        })
    }
}

/// Maps a right-hand side over the offered rows to the unique solution.
pub struct SolutionOperator {
    accepted: Vec<usize>,
    solution: Vec<Functional>,
    relations: Vec<(usize, Functional)>,
}

impl SolutionOperator {
    /// Offered-row ids of the accepted rows, in acceptance order.
    pub fn accepted_rows(&self) -> &[usize] {
        &self.accepted
    }

    /// Offered-row ids of the dependent rows.
    pub fn dependent_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.relations.iter().map(|(id, _)| *id)
    }

    /// Number of unknowns.
    pub fn unknowns(&self) -> usize {
        self.solution.len()
    }

    /// Gathers the accepted rows' values out of a full right-hand side.
    fn gather(&self, rhs: &[i64]) -> Vec<i64> {
        self.accepted.iter().map(|&id| rhs[id]).collect()
    }

    fn check_relations(&self, rhs: &[i64], accepted: &[i64]) -> Result<()> {
        for (id, rel) in &self.relations {
            let holds = match rel.apply_scaled(accepted) {
                Some((num, d)) => (rhs[*id] as i128).checked_mul(d as i128) == Some(num),
                None => rel.apply_exact(accepted) == BigRational::from_integer(rhs[*id].into()),
            };
            if !holds {
                return Err(Error::Inconsistent { row: *id });
            }
        }
        Ok(())
    }

    /// Exact solution for an integral right-hand side indexed by offered-row id.
    pub fn solve(&self, rhs: &[i64]) -> Result<Vec<BigRational>> {
        let accepted = self.gather(rhs);
        self.check_relations(rhs, &accepted)?;
        Ok(self.solution.iter().map(|f| f.apply(&accepted)).collect())
    }

    /// Like [`solve`](Self::solve) but insists on an integral solution,
    /// reporting the first non-integral coordinate as `(k, value)`.
    pub fn solve_integral(
        &self,
        rhs: &[i64],
    ) -> Result<std::result::Result<Vec<i64>, (usize, BigRational)>> {
        let accepted = self.gather(rhs);
        self.check_relations(rhs, &accepted)?;
        let mut out = Vec::with_capacity(self.solution.len());
        for (k, f) in self.solution.iter().enumerate() {
            match f.apply_integral(&accepted) {
                Ok(v) => out.push(v),
                Err(v) => return Ok(Err((k, v))),
            }
        }
        Ok(Ok(out))
    }
}
