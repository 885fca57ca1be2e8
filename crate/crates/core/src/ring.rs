//! Coefficient rings that residue polynomials can be evaluated in.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycNumber;
use crate::error::Result;

/// A commutative ring with exact arithmetic, passed by handle so that
/// context such as the prime of Q(ζ_p) travels with it.
pub trait EvalRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn integer(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// Z.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl EvalRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        Ok(a + b)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        Ok(a * b)
    }
}

/// Q.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl EvalRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn integer(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        Ok(a + b)
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        Ok(a * b)
    }
}

/// Q(ζ_p).
#[derive(Debug, Clone, Copy)]
pub struct CyclotomicField {
    p: u64,
}

impl CyclotomicField {
    pub fn new(p: u64) -> Self {
        Self { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// ζ_p^e.
    pub fn root_power(&self, e: i64) -> CycNumber {
        CycNumber::from_root_power(self.p, e)
    }
}

impl EvalRing for CyclotomicField {
    type Elem = CycNumber;

    fn zero(&self) -> CycNumber {
        CycNumber::zero(self.p)
    }
    fn one(&self) -> CycNumber {
        CycNumber::one(self.p)
    }
    fn integer(&self, n: &BigInt) -> CycNumber {
        CycNumber::from_rational(self.p, BigRational::from_integer(n.clone()))
    }
    fn add(&self, a: &CycNumber, b: &CycNumber) -> Result<CycNumber> {
        a.checked_add(b)
    }
    fn mul(&self, a: &CycNumber, b: &CycNumber) -> Result<CycNumber> {
        a.checked_mul(b)
    }
}
