use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of Q(ζ_p) in the power basis 1, ζ, ..., ζ^{p-2}.
///
/// For p = 2 the field is Q itself with ζ = -1 and the basis is {1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    p: u64,
    coeffs: Vec<BigRational>,
}

/// Dimension of Q(ζ_p) over Q.
fn degree(p: u64) -> usize {
    (p as usize - 1).max(1)
}

impl CycNumber {
    pub fn zero(p: u64) -> Self {
        Self {
            p,
            coeffs: vec![BigRational::zero(); degree(p)],
        }
    }

    pub fn one(p: u64) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_integer(p: u64, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(p: u64, r: BigRational) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = r;
        out
    }

    /// Takes power-basis coordinates directly.
    pub fn from_coords(p: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != degree(p) {
            return Err(Error::MixedFields);
        }
        Ok(Self { p, coeffs })
    }

    /// ζ_p^e, with ζ^{p-1} rewritten as -(1 + ζ + ... + ζ^{p-2}).
    pub fn from_root_power(p: u64, e: i64) -> Self {
        let r = e.rem_euclid(p as i64) as usize;
        let mut out = Self::zero(p);
        if r + 1 == p as usize {
            for c in out.coeffs.iter_mut() {
                *c = -BigRational::one();
            }
        } else {
            out.coeffs[r] = BigRational::one();
        }
        out
    }

    /// Reduces Σ counts[t] ζ^t over t in 0..p (an element of the group ring
    /// of the p-th roots of unity) to the power basis.
    pub fn from_group_ring(p: u64, counts: &[BigInt]) -> Result<Self> {
        if counts.len() != p as usize {
            return Err(Error::MixedFields);
        }
        let top = &counts[p as usize - 1];
        let coeffs = (0..degree(p))
            .map(|t| BigRational::from_integer(&counts[t] - top))
            .collect();
        Ok(Self { p, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { p: self.p, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let p = self.p as usize;
        if p == 2 {
            return Ok(Self::from_rational(2, &self.coeffs[0] * &other.coeffs[0]));
        }
        // Multiply in Q[x]/(x^p - 1), then fold the ζ^{p-1} coordinate.
        let mut wide = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                wide[(i + j) % p] += a * b;
            }
        }
        let top = wide.pop().expect("p >= 3");
        if !top.is_zero() {
            for c in wide.iter_mut() {
                *c -= &top;
            }
        }
        Ok(Self {
            p: self.p,
            coeffs: wide,
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycNumber {
    /// `1 - 2ζ + ζ^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => "ζ".to_string(),
                i => format!("ζ^{i}"),
            };
            if root.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{mag}{root}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
