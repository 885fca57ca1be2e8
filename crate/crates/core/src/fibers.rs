//! Partition of F*_{p^m} into the fibers A_1, ..., A_n of the character of
//! order n that sends γ to a primitive n-th root of unity.
//!
//! A_1 is the subgroup of n-th powers and A_k = γ^{k-1} A_1, so fiber k
//! holds exactly the powers γ^h with h ≡ k-1 (mod n).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable};

/// Sentinel in the membership table for the zero element.
const NO_FIBER: u32 = u32::MAX;

/// One fiber A_k, stored as packed element indices sorted by discrete log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    index: usize,
    members: Vec<usize>,
    exponents: Vec<usize>,
}

impl Fiber {
    /// The fiber number k, starting at 1.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Packed field indices of the members, in increasing discrete-log order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Discrete logarithms of the members, increasing.
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn elements<'a>(
        &'a self,
        field: &'a FieldTable,
    ) -> impl Iterator<Item = FieldElement> + 'a {
        self.members.iter().map(move |&i| field.element(i))
    }
}

/// The fibers of F*_{p^m} under a character of order `n`.
///
/// Partitions produced by [`partition`] are genuine character partitions.
/// [`FiberPartition::from_sets`] accepts arbitrary families of nonzero
/// elements so that the verification machinery can be pointed at inputs
/// that are not.
#[derive(Debug, Clone)]
pub struct FiberPartition {
    field: Arc<FieldTable>,
    n: usize,
    s: usize,
    fibers: Vec<Fiber>,
    /// Fiber number (1-based) of each packed index; `NO_FIBER` if none.
    owner: Vec<u32>,
}

/// Splits F*_{p^m} into the `n` fibers of the order-`n` character.
pub fn partition(field: Arc<FieldTable>, n: usize) -> Result<FiberPartition> {
    let order = field.order();
    if n < 2 {
        return Err(Error::TrivialOrder(n as u64));
    }
    if !order.is_multiple_of(n) {
        return Err(Error::OrderDoesNotDivide {
            n: n as u64,
            order: order as u64,
        });
    }
    let s = order / n;
    let mut fibers: Vec<Fiber> = (0..n)
        .map(|k| Fiber {
            index: k + 1,
            members: Vec::with_capacity(s),
            exponents: Vec::with_capacity(s),
        })
        .collect();
    let mut owner = vec![NO_FIBER; field.size()];
    for h in 0..order {
        let idx = field.power_idx(h as i64);
        let fiber = &mut fibers[h % n];
        fiber.members.push(idx);
        fiber.exponents.push(h);
        owner[idx] = (h % n + 1) as u32;
    }
    Ok(FiberPartition {
        field,
        n,
        s,
        fibers,
        owner,
    })
}

impl FiberPartition {
    /// Builds a family of `sets.len()` fibers from explicit element lists.
    ///
    /// Elements must be nonzero members of the field. Overlaps and gaps are
    /// allowed; when an element appears in several sets, membership lookups
    /// report the last one. `s` is the nominal size `(p^m-1)/n`, rounded down.
    pub fn from_sets(field: Arc<FieldTable>, sets: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = sets.len();
        if n < 2 {
            return Err(Error::TrivialOrder(n as u64));
        }
        let s = field.order() / n;
        let mut owner = vec![NO_FIBER; field.size()];
        let mut fibers = Vec::with_capacity(n);
        for (k, set) in sets.into_iter().enumerate() {
            let mut pairs = Vec::with_capacity(set.len());
            for e in &set {
                let idx = field.index_of(e)?;
                let h = field.dlog_idx(idx)?;
                pairs.push((h, idx));
                owner[idx] = (k + 1) as u32;
            }
            pairs.sort_unstable();
            fibers.push(Fiber {
                index: k + 1,
                exponents: pairs.iter().map(|&(h, _)| h).collect(),
                members: pairs.into_iter().map(|(_, i)| i).collect(),
            });
        }
        Ok(Self {
            field,
            n,
            s,
            fibers,
            owner,
        })
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    /// Character order, the number of fibers.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nominal fiber size `(p^m - 1) / n`.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    /// Fiber `k`, 1-based.
    pub fn fiber(&self, k: usize) -> Result<&Fiber> {
        if k == 0 || k > self.n {
            return Err(Error::FiberIndex {
                index: k,
                n: self.n,
            });
        }
        Ok(&self.fibers[k - 1])
    }

    /// The fiber holding a packed element index, `None` for zero or strays.
    pub fn fiber_of_idx(&self, idx: usize) -> Option<usize> {
        match self.owner[idx] {
            NO_FIBER => None,
            k => Some(k as usize),
        }
    }

    pub fn fiber_of(&self, e: &FieldElement) -> Result<Option<usize>> {
        Ok(self.fiber_of_idx(self.field.index_of(e)?))
    }

    /// Index j with −A_k = A_j, found by locating the negative of one member.
    ///
    /// In characteristic 2 every element is its own negative, so this is k.
    pub fn negation_fiber(&self, k: usize) -> Result<usize> {
        let fiber = self.fiber(k)?;
        if self.p() == 2 {
            return Ok(k);
        }
        let first = *fiber.members.first().ok_or(Error::FiberIndex {
            index: k,
            n: self.n,
        })?;
        self.fiber_of_idx(self.field.neg_idx(first))
            .ok_or(Error::ForeignElement)
    }

    /// Number of ordered pairs (a, b) in A_i × A_j with a + b = `target`.
    pub fn pair_count(&self, i: usize, j: usize, target: &FieldElement) -> Result<usize> {
        let t = self.field.index_of(target)?;
        self.fiber(j)?;
        Ok(self.pair_count_idx(i, j, t))
    }

    /// [`pair_count`](Self::pair_count) on a packed target index.
    pub fn pair_count_idx(&self, i: usize, j: usize, target: usize) -> usize {
        let j = j as u32;
        self.fibers[i - 1]
            .members
            .iter()
            .filter(|&&a| self.owner[self.field.sub_idx(target, a)] == j)
            .count()
    }
}
