use std::sync::Arc;

use super::verify::{CheckResult, VerificationReport};
use super::{constants_bruteforce, verify_algebra, StructureTable};
use crate::error::{Error, Result};
use crate::fibers::partition;
use crate::field::{build_field, find_primitive_poly, is_prime, FieldTable};

/// d_p = (p−1)/4 for p ≡ 1 mod 4 and (p+1)/4 for p ≡ 3 mod 4.
pub fn perron_constant(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    Ok(if p % 4 == 1 { (p - 1) / 4 } else { (p + 1) / 4 })
}

/// Number of ways an element of class `source` is a sum of an ordered pair
/// from class `pair` × `pair` ("R" squares, "N" non-squares).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerronCount {
    pub source: &'static str,
    pub pair: &'static str,
    pub count: u64,
    pub expected: u64,
}

impl PerronCount {
    pub fn matches(&self) -> bool {
        self.count == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerronReport {
    pub p: u64,
    pub field_size: u64,
    pub d: u64,
    pub counts: Vec<PerronCount>,
    pub pass: bool,
}

/// Squares and non-squares of F_p: each class is a sum of two elements of
/// the same class in d_p − 1 ways and of the other class in d_p ways.
pub fn perron_check(p: u64) -> Result<PerronReport> {
    let d = perron_constant(p)?;
    let field = Arc::new(build_field(find_primitive_poly(p, 1)?)?);
    let table = constants_bruteforce(&partition(field, 2)?)?;
    let count = |source, pair, i, k, expected| PerronCount {
        source,
        pair,
        count: table.coeff(i, i, k),
        expected,
    };
    let counts = vec![
        count("R", "R+R", 1, 1, d - 1),
        count("N", "N+N", 2, 2, d - 1),
        count("N", "R+R", 1, 2, d),
        count("R", "N+N", 2, 1, d),
    ];
    let pass = counts.iter().all(PerronCount::matches);
    Ok(PerronReport {
        p,
        field_size: p,
        d,
        counts,
        pass,
    })
}

/// The quadratic character on F_{p^m}, p odd: the constant terms of
/// q_R², q_R q_N and q_N² follow the parity of s = (p^m − 1)/2.
#[derive(Debug, Clone)]
pub struct QuadraticReport {
    pub table: StructureTable,
    pub report: VerificationReport,
    /// q_R(−1, ..., −1) and q_N(−1, ..., −1): signed counts of squares and
    /// non-squares by the parity of their coordinate sum. Diagnostic only.
    pub t_squares: i64,
    pub t_nonsquares: i64,
}

pub const QUADRATIC_PATTERN: &str = "quadratic_constant_terms";

pub fn perron_quadratic_general(field: Arc<FieldTable>) -> Result<QuadraticReport> {
    if field.p() == 2 {
        return Err(Error::NotOddCharacteristic);
    }
    let part = partition(field.clone(), 2)?;
    let table = constants_bruteforce(&part)?;
    let s = part.s() as u64;
    let (diag, cross) = if s % 2 == 1 { (0, s) } else { (s, 0) };
    let mut failure = None;
    for (i, j, expected) in [(1, 1, diag), (1, 2, cross), (2, 2, diag)] {
        let got = table.coeff(i, j, 0);
        if got != expected {
            failure = Some(format!("c({i},{j},0) = {got}, expected {expected}"));
            break;
        }
    }

    let signed = |k: usize| -> i64 {
        part.fibers()[k - 1]
            .members()
            .iter()
            .map(|&idx| {
                let weight: u64 = field.digits(idx).map(u64::from).sum();
                if weight.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .sum()
    };
    let t_squares = signed(1);
    let t_nonsquares = signed(2);

    let mut report = verify_algebra(&table);
    report.checks.push(CheckResult {
        name: QUADRATIC_PATTERN,
        passed: failure.is_none(),
        counterexample: failure,
    });
    report.notes.push(format!("q_R(-1,...,-1) = {t_squares}"));
    report
        .notes
        .push(format!("q_N(-1,...,-1) = {t_nonsquares}"));
    Ok(QuadraticReport {
        table,
        report,
        t_squares,
        t_nonsquares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;

    #[test]
    fn perron_small_primes() {
        for (p, d) in [(3, 1), (5, 1), (7, 2), (13, 3)] {
            let r = perron_check(p).unwrap();
            assert_eq!(r.d, d);
            assert!(r.pass, "{r:?}");
            assert_eq!(r.counts[0].count, d - 1);
            assert_eq!(r.counts[2].count, d);
        }
        assert_eq!(perron_check(2), Err(Error::EvenPrime(2)));
        assert_eq!(perron_check(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn quadratic_general() {
        let f9 = Arc::new(build_field(FieldParams::new(3, 2, vec![2, 1]).unwrap()).unwrap());
        let q = perron_quadratic_general(f9).unwrap();
        assert!(q.report.passed());
        assert_eq!(q.table.coeff(1, 1, 0), 4);
        assert_eq!(q.table.coeff(1, 2, 0), 0);

        let f3 = Arc::new(build_field(FieldParams::new(3, 1, vec![1]).unwrap()).unwrap());
        let q = perron_quadratic_general(f3).unwrap();
        assert!(q.report.passed());
        assert_eq!(q.table.coeff(1, 1, 0), 0);
        assert_eq!(q.table.coeff(1, 2, 0), 1);
        // Squares {1}, non-squares {2}: weights 1 and 2.
        assert_eq!((q.t_squares, q.t_nonsquares), (-1, 1));

        let f25 = Arc::new(build_field(find_primitive_poly(5, 2).unwrap()).unwrap());
        let q = perron_quadratic_general(f25).unwrap();
        assert!(q.report.passed());
        assert_eq!(q.table.coeff(2, 2, 0), 12);
        assert_eq!(q.table.coeff(1, 2, 0), 0);

        let f16 = Arc::new(build_field(FieldParams::new(2, 4, vec![1, 1, 0, 0]).unwrap()).unwrap());
        assert!(matches!(
            perron_quadratic_general(f16),
            Err(Error::NotOddCharacteristic)
        ));
    }
}
