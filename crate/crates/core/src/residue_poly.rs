//! Exact arithmetic in Z[x_1, ..., x_m] / ⟨x_1^p - 1, ..., x_m^p - 1⟩.
//!
//! A monomial x_1^{e_1} ... x_m^{e_m} with every e_i < p is keyed by the
//! packed integer Σ e_i p^{m-i}, which coincides with the packed index of
//! the field element whose coordinates are (e_1, ..., e_m). Multiplying
//! monomials is then adding field elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fibers::{Fiber, FiberPartition};
use crate::ring::EvalRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduePoly {
    p: u64,
    m: usize,
    terms: BTreeMap<u64, BigInt>,
}

impl ResiduePoly {
    pub fn zero(p: u64, m: usize) -> Result<Self> {
        // Keys must fit in u64.
        if p < 2 || m == 0 || p.checked_pow(m as u32).is_none() {
            return Err(Error::RingTooLarge { p, m: m as u32 });
        }
        Ok(Self {
            p,
            m,
            terms: BTreeMap::new(),
        })
    }

    /// The constant 1, which is also q_0, the polynomial of {0}.
    pub fn one(p: u64, m: usize) -> Result<Self> {
        Self::constant(p, m, BigInt::one())
    }

    pub fn constant(p: u64, m: usize, c: BigInt) -> Result<Self> {
        let mut poly = Self::zero(p, m)?;
        poly.insert(0, c);
        Ok(poly)
    }

    /// `coeff * x_1^{e_1} ... x_m^{e_m}`, exponents reduced mod p.
    pub fn monomial(p: u64, m: usize, exponents: &[u32], coeff: BigInt) -> Result<Self> {
        let mut poly = Self::zero(p, m)?;
        if exponents.len() != m {
            return Err(Error::ArityMismatch {
                expected: m,
                got: exponents.len(),
            });
        }
        let key = exponents
            .iter()
            .fold(0u64, |acc, &e| acc * p + (e as u64 % p));
        poly.insert(key, coeff);
        Ok(poly)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Packed monomial keys and coefficients in lexicographic exponent order.
    pub fn packed_terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// Exponent vectors and coefficients in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (self.unpack(k), c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        let key = exponents
            .iter()
            .fold(0u64, |acc, &e| acc * self.p + (e as u64 % self.p));
        self.coeff_packed(key)
    }

    pub fn coeff_packed(&self, key: u64) -> BigInt {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn unpack(&self, mut key: u64) -> Vec<u32> {
        let mut e = vec![0u32; self.m];
        for slot in e.iter_mut().rev() {
            *slot = (key % self.p) as u32;
            key /= self.p;
        }
        e
    }

    fn insert(&mut self, key: u64, c: BigInt) {
        if c.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.m != other.m {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    fn add_keys(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut w) = (a, b, 0u64, 1u64);
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            let sum = out.coeff_packed(k) + c;
            out.insert(k, sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self {
            p: self.p,
            m: self.m,
            terms: BTreeMap::new(),
        };
        for (&k, v) in &self.terms {
            out.insert(k, v * c);
        }
        out
    }

    /// Product in the residue ring: exponents add mod p coordinatewise.
    pub fn mul_mod(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut acc: HashMap<u64, BigInt> = HashMap::with_capacity(
            self.terms
                .len()
                .saturating_mul(other.terms.len())
                .min(1 << 16),
        );
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                *acc.entry(self.add_keys(ka, kb)).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self {
            p: self.p,
            m: self.m,
            terms,
        })
    }

    /// Substitutes `point` and evaluates in `ring`.
    pub fn eval<R: EvalRing>(&self, point: &[R::Elem], ring: &R) -> Result<R::Elem> {
        if point.len() != self.m {
            return Err(Error::ArityMismatch {
                expected: self.m,
                got: point.len(),
            });
        }
        // powers[i][e] = point[i]^e for e < p
        let mut powers = Vec::with_capacity(self.m);
        for x in point {
            let mut row = vec![ring.one()];
            for e in 1..self.p as usize {
                let next = ring.mul(&row[e - 1], x)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut total = ring.zero();
        for (exps, c) in self.terms() {
            let mut term = ring.integer(c);
            for (i, &e) in exps.iter().enumerate() {
                if e != 0 {
                    term = ring.mul(&term, &powers[i][e as usize])?;
                }
            }
            total = ring.add(&total, &term)?;
        }
        Ok(total)
    }
}

impl fmt::Display for ResiduePoly {
    /// `x1 + x1*x2^2 + 2*x1^2 - x2`, monomials in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (exps, c)) in self.terms().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// q_k: one monomial with coefficient 1 per element of the fiber.
pub fn char_poly(fiber: &Fiber, p: u64, m: usize) -> Result<ResiduePoly> {
    let mut poly = ResiduePoly::zero(p, m)?;
    for &idx in fiber.members() {
        let key = idx as u64;
        let c = poly.coeff_packed(key) + 1;
        poly.insert(key, c);
    }
    Ok(poly)
}

/// q_0, q_1, ..., q_n for a partition.
pub fn char_polys(partition: &FiberPartition) -> Result<Vec<ResiduePoly>> {
    let (p, m) = (partition.p(), partition.m());
    let mut out = vec![ResiduePoly::one(p, m)?];
    for fiber in partition.fibers() {
        out.push(char_poly(fiber, p, m)?);
    }
    Ok(out)
}

/// Whether 1 + q_1 + ... + q_n equals ∏ (1 + x_i + ... + x_i^{p-1}).
pub fn sum_identity_check(partition: &FiberPartition) -> Result<bool> {
    let (p, m) = (partition.p(), partition.m());
    let mut lhs = ResiduePoly::zero(p, m)?;
    for q in char_polys(partition)? {
        lhs = lhs.add(&q)?;
    }
    let mut rhs = ResiduePoly::one(p, m)?;
    for i in 0..m {
        let mut geometric = ResiduePoly::zero(p, m)?;
        for e in 0..p as u32 {
            let mut exps = vec![0u32; m];
            exps[i] = e;
            geometric = geometric.add(&ResiduePoly::monomial(p, m, &exps, BigInt::one())?)?;
        }
        rhs = rhs.mul_mod(&geometric)?;
    }
    Ok(lhs == rhs)
}
