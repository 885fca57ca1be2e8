//! Structure constants of the algebra spanned by q_0 = 1, q_1, ..., q_n:
//!
//! ```text
//! q_i q_j = c_{ij0} + Σ_{k=1}^n c_{ijk} q_k   in Z[x]/⟨x_1^p - 1, ..., x_m^p - 1⟩
//! ```
//!
//! Three independent routes compute them: expanding the polynomial product
//! ([`constants_direct`]), solving linear systems from evaluations at roots
//! of unity ([`constants_cyclotomic`]), and counting representations of
//! field elements as sums ([`constants_bruteforce`]).

mod bruteforce;
mod classify;
mod cyclotomic;
mod direct;
mod perron;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::FieldParams;

pub use bruteforce::constants_bruteforce;
pub use classify::classify_c0;
pub use cyclotomic::constants_cyclotomic;
pub use direct::constants_direct;
pub use perron::{
    perron_check, perron_constant, perron_quadratic_general, PerronCount, PerronReport,
    QuadraticReport,
};
pub use verify::{verify_algebra, CheckResult, VerificationReport};

/// Which solver produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Cyclotomic,
    Bruteforce,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Direct, Method::Cyclotomic, Method::Bruteforce];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Cyclotomic => "cyclotomic",
            Method::Bruteforce => "bruteforce",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "direct" => Ok(Method::Direct),
            "cyclotomic" => Ok(Method::Cyclotomic),
            "bruteforce" => Ok(Method::Bruteforce),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

/// Coefficients (c_{ij0}, ..., c_{ijn}) of one product, stored sparsely:
/// at most s + 1 of them are nonzero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct StructureRow {
    /// (k, c_{ijk}) with c_{ijk} > 0, increasing in k.
    terms: Vec<(u32, u64)>,
}

impl StructureRow {
    pub fn from_dense(coeffs: &[u64]) -> Self {
        Self {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k as u32, c))
                .collect(),
        }
    }

    /// Builds from (k, c) pairs in any order; zeros are dropped and repeated
    /// indices summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k as u32).or_insert(0u64) += c;
        }
        Self {
            terms: map.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    /// c_{ijk}; index 0 is the constant term.
    pub fn get(&self, k: usize) -> u64 {
        self.terms
            .binary_search_by_key(&(k as u32), |&(t, _)| t)
            .map(|pos| self.terms[pos].1)
            .unwrap_or(0)
    }

    pub fn constant(&self) -> u64 {
        self.get(0)
    }

    /// Nonzero (k, c) pairs, increasing in k.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.terms.iter().map(|&(k, c)| (k as usize, c))
    }

    /// Σ_{k ≥ 1} c_{ijk}.
    pub fn nonconstant_sum(&self) -> u64 {
        self.terms
            .iter()
            .filter(|&&(k, _)| k != 0)
            .map(|&(_, c)| c)
            .sum()
    }

    pub fn max_index(&self) -> usize {
        self.terms.last().map_or(0, |&(k, _)| k as usize)
    }

    /// (c_0, ..., c_n).
    pub fn to_dense(&self, n: usize) -> Vec<u64> {
        let mut out = vec![0; n + 1];
        for &(k, c) in &self.terms {
            out[k as usize] = c;
        }
        out
    }
}

/// The constants c_{ijk} for 1 ≤ i ≤ j ≤ n, 0 ≤ k ≤ n.
///
/// Only i ≤ j is stored; lookups of (j, i) are redirected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    field: FieldParams,
    n: usize,
    s: usize,
    method: Method,
    entries: BTreeMap<(usize, usize), StructureRow>,
}

impl StructureTable {
    pub fn new(field: FieldParams, n: usize, s: usize, method: Method) -> Self {
        Self {
            field,
            n,
            s,
            method,
            entries: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn m(&self) -> u32 {
        self.field.m()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Stores the row for the product q_i q_j under (min, max).
    pub fn insert(&mut self, i: usize, j: usize, row: StructureRow) {
        self.entries.insert((i.min(j), i.max(j)), row);
    }

    /// Stores a row under exactly (i, j), without normalizing the order.
    /// Used when reading tables from outside, so that asymmetric input can
    /// be detected rather than silently merged.
    pub fn insert_raw(&mut self, i: usize, j: usize, row: StructureRow) {
        self.entries.insert((i, j), row);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&StructureRow> {
        self.entries
            .get(&(i, j))
            .or_else(|| self.entries.get(&(j, i)))
    }

    /// Dense (c_{ij0}, ..., c_{ijn}); all zeros for a missing entry.
    pub fn row(&self, i: usize, j: usize) -> Vec<u64> {
        self.get(i, j)
            .map(|r| r.to_dense(self.n))
            .unwrap_or_else(|| vec![0; self.n + 1])
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u64 {
        self.get(i, j).map_or(0, |r| r.get(k))
    }

    /// Stored entries in (i, j) order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &StructureRow)> {
        self.entries.iter().map(|(&key, row)| (key, row))
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> Option<&mut StructureRow> {
        let key = if self.entries.contains_key(&(i, j)) {
            (i, j)
        } else {
            (j, i)
        };
        self.entries.get_mut(&key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First pair (i, j) whose constants differ from `other`'s, ignoring
    /// which method produced each table.
    pub fn first_difference(&self, other: &StructureTable) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        for i in 1..=self.n {
            for j in i..=self.n {
                if self.get(i, j) != other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn same_constants(&self, other: &StructureTable) -> bool {
        self.first_difference(other).is_none()
    }
}

impl StructureRow {
    /// Adds `delta` to c_k, which must not go negative.
    pub fn bump(&mut self, k: usize, delta: i64) {
        let cur = self.get(k) as i64 + delta;
        assert!(cur >= 0, "structure constant would become negative");
        let mut dense: BTreeMap<u32, u64> = self.terms.iter().copied().collect();
        dense.insert(k as u32, cur as u64);
        self.terms = dense.into_iter().filter(|&(_, c)| c != 0).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_rows() {
        let row = StructureRow::from_dense(&[4, 1, 2]);
        assert_eq!(row.get(0), 4);
        assert_eq!(row.get(2), 2);
        assert_eq!(row.get(7), 0);
        assert_eq!(row.nonconstant_sum(), 3);
        assert_eq!(row.to_dense(3), vec![4, 1, 2, 0]);
        assert_eq!(
            StructureRow::from_terms([(2, 1), (0, 4), (2, 1), (1, 0), (1, 1)]),
            row
        );
        let mut bumped = row.clone();
        bumped.bump(1, 1);
        assert_eq!(bumped.to_dense(2), vec![4, 2, 2]);
        bumped.bump(0, -4);
        assert_eq!(bumped.terms().collect::<Vec<_>>(), vec![(1, 2), (2, 2)]);
    }

    #[test]
    fn lookups_are_symmetric() {
        let field = FieldParams::new(3, 2, vec![2, 1]).unwrap();
        let mut t = StructureTable::new(field, 2, 4, Method::Direct);
        t.insert(2, 1, StructureRow::from_dense(&[0, 2, 2]));
        assert_eq!(t.row(1, 2), vec![0, 2, 2]);
        assert_eq!(t.row(2, 1), vec![0, 2, 2]);
        assert_eq!(t.entries().next().unwrap().0, (1, 2));
        assert_eq!("cyclotomic".parse::<Method>().unwrap(), Method::Cyclotomic);
        assert!("fast".parse::<Method>().is_err());
    }
}
