//! The field F_{p^m}, seen at once as the cyclic group generated by a root
//! γ of a primitive polynomial and as the vector space F_p^m with basis
//! 1, γ, ..., γ^{m-1}.
//!
//! Elements are addressed internally by a packed index: the coordinate
//! vector (b_1, ..., b_m) read as base-p digits with b_1 most significant.
//! Numeric order on indices is therefore lexicographic order on vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field (number of elements) tables are built for by default.
pub const DEFAULT_MAX_FIELD: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Characteristic, degree and monic modulus `x^m + a_{m-1} x^{m-1} + ... + a_0`.
///
/// The modulus is stored low-to-high (`a_0` first) without the leading 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    p: u64,
    m: u32,
    modulus: Vec<u64>,
}

impl FieldParams {
    /// Validates everything except primitivity, which [`build_field`] checks.
    pub fn new(p: u64, m: u32, modulus: Vec<u64>) -> Result<Self> {
        check_characteristic(p, m)?;
        if modulus.len() != m as usize || modulus.iter().any(|&a| a >= p) {
            return Err(Error::InvalidModulus {
                p,
                expected: m as usize,
                got: modulus,
            });
        }
        Ok(Self { p, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of field elements, `p^m`, or `None` on overflow.
    pub fn field_size(&self) -> Option<u64> {
        self.p.checked_pow(self.m)
    }
}

impl fmt::Display for FieldParams {
    /// Renders the modulus as a polynomial in `z`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{}", self.m)?;
        for (deg, &a) in self.modulus.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            match (deg, a) {
                (0, a) => write!(f, " + {a}")?,
                (1, 1) => write!(f, " + z")?,
                (1, a) => write!(f, " + {a}z")?,
                (d, 1) => write!(f, " + z^{d}")?,
                (d, a) => write!(f, " + {a}z^{d}")?,
            }
        }
        Ok(())
    }
}

fn check_characteristic(p: u64, m: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if p == 2 && m == 1 {
        return Err(Error::BinaryDegreeOne);
    }
    Ok(())
}

/// Coordinates `b_1, ..., b_m` of an element in the basis `1, γ, ..., γ^{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(Vec<u32>);

impl FieldElement {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn zero(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Basis rendering in the style `1 + 2α`, `α^2 + α^3`, `0`.
    pub fn basis_string(&self) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| match (i, b) {
                (0, b) => b.to_string(),
                (1, 1) => "α".to_string(),
                (1, b) => format!("{b}α"),
                (i, 1) => format!("α^{i}"),
                (i, b) => format!("{b}α^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Componentwise sum mod `p`.
pub fn add(a: &FieldElement, b: &FieldElement, p: u64) -> FieldElement {
    let p = p as u32;
    FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
}

/// Componentwise negation mod `p`.
pub fn neg(a: &FieldElement, p: u64) -> FieldElement {
    let p = p as u32;
    FieldElement(a.0.iter().map(|&x| (p - x) % p).collect())
}

/// Product through the logarithm tables; zero absorbs.
pub fn mul(table: &FieldTable, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    let ia = table.index_of(a)?;
    let ib = table.index_of(b)?;
    Ok(table.element(table.mul_idx(ia, ib)))
}

/// Complete power and logarithm tables of F_{p^m}.
#[derive(Debug, Clone)]
pub struct FieldTable {
    params: FieldParams,
    size: usize,
    /// `powers[h]` is the packed index of γ^h.
    powers: Vec<u32>,
    /// Indexed by packed index; `NO_LOG` at zero.
    dlog: Vec<u32>,
    /// `place[i]` is `p^(m-1-i)`, the weight of coordinate `b_{i+1}`.
    place: Vec<u32>,
}

/// Builds the field with the default size limit.
pub fn build_field(params: FieldParams) -> Result<FieldTable> {
    build_field_with_limit(params, DEFAULT_MAX_FIELD)
}

/// Builds the field, rejecting fields with more than `limit` elements.
pub fn build_field_with_limit(params: FieldParams, limit: u64) -> Result<FieldTable> {
    let (p, m) = (params.p, params.m);
    let size = params
        .field_size()
        .filter(|&q| q <= limit && q <= u32::MAX as u64)
        .ok_or(Error::FieldTooLarge { p, m, limit })?;
    let order = size as usize - 1;

    let place: Vec<u32> = (0..m).map(|i| p.pow(m - 1 - i) as u32).collect();
    let mut powers = Vec::with_capacity(order);
    let mut dlog = vec![NO_LOG; size as usize];

    let mut cur = vec![0u64; m as usize];
    cur[0] = 1;
    for h in 0..order {
        let idx = pack(&cur, &place);
        if dlog[idx] != NO_LOG || idx == 0 {
            return Err(Error::NotPrimitive(params.modulus.clone()));
        }
        dlog[idx] = h as u32;
        powers.push(idx as u32);
        times_gamma(&mut cur, &params);
    }
    // γ^(p^m - 1) must close the cycle.
    if pack(&cur, &place) != powers[0] as usize {
        return Err(Error::NotPrimitive(params.modulus.clone()));
    }

    Ok(FieldTable {
        params,
        size: size as usize,
        powers,
        dlog,
        place,
    })
}

/// Multiplies `cur` (coefficients of 1..γ^{m-1}) by γ and reduces.
fn times_gamma(cur: &mut [u64], params: &FieldParams) {
    let p = params.p;
    let top = cur[cur.len() - 1];
    for i in (1..cur.len()).rev() {
        cur[i] = (cur[i - 1] + (p - params.modulus[i]) * top) % p;
    }
    cur[0] = ((p - params.modulus[0]) * top) % p;
}

fn pack(coords: &[u64], place: &[u32]) -> usize {
    coords
        .iter()
        .zip(place)
        .map(|(&b, &w)| b as usize * w as usize)
        .sum()
}

/// Multiplicative order of the residue class of `x` modulo the given monic
/// polynomial, or `None` when `x` is not a unit.
fn gamma_order(params: &FieldParams) -> Option<u64> {
    if params.modulus[0] == 0 {
        return None;
    }
    let mut cur = vec![0u64; params.m as usize];
    cur[0] = 1;
    let start = cur.clone();
    let mut k = 0u64;
    loop {
        times_gamma(&mut cur, params);
        k += 1;
        if cur == start {
            return Some(k);
        }
    }
}

/// Lexicographically smallest primitive modulus, comparing `a_0` first.
pub fn find_primitive_poly(p: u64, m: u32) -> Result<FieldParams> {
    check_characteristic(p, m)?;
    let size = p
        .checked_pow(m)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or(Error::FieldTooLarge {
            p,
            m,
            limit: u32::MAX as u64,
        })?;
    let target = size - 1;
    let mut modulus = vec![0u64; m as usize];
    loop {
        let params = FieldParams {
            p,
            m,
            modulus: modulus.clone(),
        };
        if gamma_order(&params) == Some(target) {
            return Ok(params);
        }
        // Odometer with a_0 as the most significant digit.
        let mut pos = m as usize;
        loop {
            if pos == 0 {
                unreachable!("every finite field has a primitive polynomial");
            }
            pos -= 1;
            modulus[pos] += 1;
            if modulus[pos] < p {
                break;
            }
            modulus[pos] = 0;
        }
    }
}

impl FieldTable {
    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn m(&self) -> usize {
        self.params.m as usize
    }

    /// `p^m`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `p^m - 1`, the order of γ.
    pub fn order(&self) -> usize {
        self.size - 1
    }

    /// γ^h for any integer `h` (reduced mod `p^m - 1`).
    pub fn power(&self, h: i64) -> FieldElement {
        self.element(self.power_idx(h))
    }

    pub fn power_idx(&self, h: i64) -> usize {
        self.powers[h.rem_euclid(self.order() as i64) as usize] as usize
    }

    /// All powers γ^0, ..., γ^{p^m-2}.
    pub fn powers(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.powers.iter().map(|&i| self.element(i as usize))
    }

    pub fn dlog(&self, a: &FieldElement) -> Result<usize> {
        self.dlog_idx(self.index_of(a)?)
    }

    pub fn dlog_idx(&self, idx: usize) -> Result<usize> {
        match self.dlog[idx] {
            NO_LOG => Err(Error::ZeroHasNoLog),
            h => Ok(h as usize),
        }
    }

    pub fn index_of(&self, a: &FieldElement) -> Result<usize> {
        let p = self.params.p as u32;
        if a.0.len() != self.m() || a.0.iter().any(|&b| b >= p) {
            return Err(Error::ForeignElement);
        }
        Ok(a.0
            .iter()
            .zip(&self.place)
            .map(|(&b, &w)| b as usize * w as usize)
            .sum())
    }

    pub fn element(&self, idx: usize) -> FieldElement {
        FieldElement(self.digits(idx).collect())
    }

    /// Coordinates of a packed index, `b_1` first.
    pub fn digits(&self, idx: usize) -> impl Iterator<Item = u32> + '_ {
        let p = self.params.p as usize;
        self.place
            .iter()
            .map(move |&w| ((idx / w as usize) % p) as u32)
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let p = self.params.p as usize;
        if p == 2 {
            return a ^ b;
        }
        if self.place.len() == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
        for _ in 0..self.place.len() {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        let p = self.params.p as usize;
        if p == 2 {
            return a;
        }
        if self.place.len() == 1 {
            return (p - a) % p;
        }
        let (mut a, mut out, mut w) = (a, 0, 1);
        for _ in 0..self.place.len() {
            out += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        out
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let h = self.dlog[a] as usize + self.dlog[b] as usize;
        self.powers[h % self.order()] as usize
    }

    /// Packed index of the multiplicative identity.
    pub fn one_idx(&self) -> usize {
        self.powers[0] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldTable {
        build_field(FieldParams::new(3, 2, vec![2, 1]).unwrap()).unwrap()
    }

    fn f16() -> FieldTable {
        build_field(FieldParams::new(2, 4, vec![1, 1, 0, 0]).unwrap()).unwrap()
    }

    fn el(c: &[u32]) -> FieldElement {
        FieldElement::new(c.to_vec())
    }

    #[test]
    fn primes_by_trial_division() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(1 << 20));
        assert!(is_prime(1_048_573));
    }

    #[test]
    fn f9_power_table() {
        let t = f9();
        let expect: [&[u32]; 8] = [
            &[1, 0],
            &[0, 1],
            &[1, 2],
            &[2, 2],
            &[2, 0],
            &[0, 2],
            &[2, 1],
            &[1, 1],
        ];
        for (h, e) in expect.iter().enumerate() {
            assert_eq!(t.power(h as i64), el(e), "γ^{h}");
        }
    }

    #[test]
    fn f16_power_table() {
        let t = f16();
        assert_eq!(t.power(4), el(&[1, 1, 0, 0]));
        assert_eq!(t.power(7), el(&[1, 1, 0, 1]));
        assert_eq!(t.power(14), el(&[1, 0, 0, 1]));
    }

    #[test]
    fn prime_field_powers() {
        let t = build_field(FieldParams::new(5, 1, vec![3]).unwrap()).unwrap();
        // Oracle: successive powers of 2 mod 5.
        let mut x = 1u32;
        for h in 0..4 {
            assert_eq!(t.power(h), el(&[x]));
            x = x * 2 % 5;
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldParams::new(4, 1, vec![1]), Err(Error::NotPrime(4)));
        assert_eq!(FieldParams::new(2, 1, vec![1]), Err(Error::BinaryDegreeOne));
        assert!(matches!(
            FieldParams::new(3, 2, vec![2]),
            Err(Error::InvalidModulus { .. })
        ));
        // x^2 + 1 is irreducible over F_3 but its root has order 4.
        let not_prim = FieldParams::new(3, 2, vec![1, 0]).unwrap();
        assert_eq!(
            build_field(not_prim).err(),
            Some(Error::NotPrimitive(vec![1, 0]))
        );
        // x^2 + x is reducible with a zero root.
        let reducible = FieldParams::new(3, 2, vec![0, 1]).unwrap();
        assert!(matches!(
            build_field(reducible),
            Err(Error::NotPrimitive(_))
        ));
        let big = FieldParams::new(2, 21, vec![1; 21]).unwrap();
        assert!(matches!(build_field(big), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn primitive_search() {
        assert_eq!(find_primitive_poly(3, 1).unwrap().modulus(), &[1]);
        // z^4 + z^3 + 1 precedes z^4 + z + 1 when a_0 is compared first.
        assert_eq!(find_primitive_poly(2, 4).unwrap().modulus(), &[1, 0, 0, 1]);
        build_field(FieldParams::new(2, 4, vec![1, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!(find_primitive_poly(2, 1), Err(Error::BinaryDegreeOne));
        for (p, m) in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 3), (2, 9), (23, 2)] {
            let params = find_primitive_poly(p, m).unwrap();
            build_field(params).unwrap();
        }
    }

    #[test]
    fn primitive_search_is_lexicographically_minimal() {
        // Brute force: every smaller modulus in (a_0, a_1, ...) order fails.
        for (p, m) in [(3u64, 2u32), (5, 2), (2, 5), (3, 3)] {
            let found = find_primitive_poly(p, m).unwrap();
            let total = p.pow(m);
            for code in 0..total {
                let mut digits = vec![0u64; m as usize];
                let mut c = code;
                for d in digits.iter_mut().rev() {
                    *d = c % p;
                    c /= p;
                }
                if digits.as_slice() >= found.modulus() {
                    break;
                }
                let params = FieldParams::new(p, m, digits).unwrap();
                assert!(build_field(params).is_err());
            }
        }
    }

    #[test]
    fn elementwise_arithmetic() {
        assert_eq!(add(&el(&[1, 2]), &el(&[2, 1]), 3), el(&[0, 0]));
        assert_eq!(neg(&el(&[1, 0, 1, 0]), 2), el(&[1, 0, 1, 0]));
        let t = f9();
        assert_eq!(mul(&t, &el(&[0, 1]), &el(&[0, 1])).unwrap(), el(&[1, 2]));
        assert_eq!(mul(&t, &el(&[0, 0]), &el(&[2, 1])).unwrap(), el(&[0, 0]));
        assert_eq!(t.dlog(&el(&[0, 0])), Err(Error::ZeroHasNoLog));
        assert_eq!(t.index_of(&el(&[3, 0])), Err(Error::ForeignElement));
    }

    #[test]
    fn exhaustive_small_field_laws() {
        for (p, m) in [
            (2, 2),
            (2, 3),
            (3, 2),
            (5, 1),
            (2, 8),
            (3, 3),
            (5, 3),
            (7, 2),
        ] {
            let t = build_field(find_primitive_poly(p, m).unwrap()).unwrap();
            let q = t.order() as i64;
            for h in 0..q {
                let x = t.power(h);
                assert_eq!(t.dlog(&x).unwrap(), h as usize);
            }
            for a in 0..q {
                for b in 0..q {
                    let prod = mul(&t, &t.power(a), &t.power(b)).unwrap();
                    assert_eq!(prod, t.power(a + b));
                }
            }
            for a in 0..t.size() {
                let ea = t.element(a);
                assert_eq!(t.index_of(&ea).unwrap(), a);
                assert!(add(&ea, &neg(&ea, p), p).is_zero());
                assert_eq!(t.neg_idx(a), t.index_of(&neg(&ea, p)).unwrap());
                for b in 0..t.size() {
                    let eb = t.element(b);
                    let ab = add(&ea, &eb, p);
                    assert_eq!(ab, add(&eb, &ea, p));
                    assert_eq!(t.add_idx(a, b), t.index_of(&ab).unwrap());
                }
            }
        }
    }

    #[test]
    fn addition_is_associative() {
        let t = build_field(find_primitive_poly(3, 2).unwrap()).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    let (ea, eb, ec) = (t.element(a), t.element(b), t.element(c));
                    assert_eq!(
                        add(&add(&ea, &eb, 3), &ec, 3),
                        add(&ea, &add(&eb, &ec, 3), 3)
                    );
                }
            }
        }
    }

    #[test]
    fn renders() {
        let t = f16();
        assert_eq!(t.power(7).basis_string(), "1 + α + α^3");
        assert_eq!(f9().power(3).basis_string(), "2 + 2α");
        assert_eq!(FieldElement::zero(2).basis_string(), "0");
        let params = FieldParams::new(3, 2, vec![2, 1]).unwrap();
        assert_eq!(params.to_string(), "z^2 + z + 2");
    }
}
