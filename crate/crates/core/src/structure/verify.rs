use std::fmt;

use super::{StructureRow, StructureTable};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// First offending coordinates, when the check failed.
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn from(name: &'static str, failure: Option<String>) -> Self {
        Self {
            name,
            passed: failure.is_none(),
            counterexample: failure,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: PASS", self.name),
            Some(c) => write!(f, "{}: FAIL ({c})", self.name),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    /// Informational values with no pass/fail meaning.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const SYMMETRY: &str = "symmetry";
pub const ROW_SUMS: &str = "row_sums";
pub const CONSTANT_TERMS: &str = "constant_terms";
pub const ASSOCIATIVITY: &str = "associativity";

/// Checks the algebra axioms using the constants alone.
pub fn verify_algebra(table: &StructureTable) -> VerificationReport {
    let n = table.n();
    let lookup = Lookup::new(table);
    let mut checks = vec![CheckResult::from(SYMMETRY, symmetry(table))];
    checks.push(CheckResult::from(ROW_SUMS, row_sums(table, &lookup)));
    checks.push(CheckResult::from(
        CONSTANT_TERMS,
        constant_terms(table, &lookup),
    ));
    let assoc = if n > 0 && checks[0].passed {
        associativity(n, &lookup)
    } else if n > 0 {
        Some("skipped: table is not symmetric".into())
    } else {
        None
    };
    checks.push(CheckResult::from(ASSOCIATIVITY, assoc));
    VerificationReport {
        checks,
        notes: Vec::new(),
    }
}

/// Dense (i, j) → row access for 1 ≤ i, j ≤ n.
struct Lookup<'a> {
    n: usize,
    rows: Vec<Option<&'a StructureRow>>,
}

impl<'a> Lookup<'a> {
    fn new(table: &'a StructureTable) -> Self {
        let n = table.n();
        let mut rows = vec![None; n * n];
        for i in 1..=n {
            for j in 1..=n {
                rows[(i - 1) * n + (j - 1)] = table.get(i, j);
            }
        }
        Self { n, rows }
    }

    fn get(&self, i: usize, j: usize) -> Option<&'a StructureRow> {
        self.rows[(i - 1) * self.n + (j - 1)]
    }
}

fn symmetry(table: &StructureTable) -> Option<String> {
    let n = table.n();
    for ((i, j), row) in table.entries() {
        if i == 0 || j == 0 || i > n || j > n {
            return Some(format!("entry ({i},{j}) out of range"));
        }
        if row.max_index() > n {
            return Some(format!("entry ({i},{j}) has index {} > n", row.max_index()));
        }
        if i > j {
            if let Some(other) = table.get(j, i) {
                if other != row {
                    let k = (0..=n).find(|&k| row.get(k) != other.get(k)).unwrap_or(0);
                    return Some(format!("c({i},{j},{k}) != c({j},{i},{k})"));
                }
            }
        }
    }
    for i in 1..=n {
        for j in i..=n {
            if table.get(i, j).is_none() {
                return Some(format!("entry ({i},{j}) missing"));
            }
        }
    }
    None
}

fn row_sums(table: &StructureTable, lookup: &Lookup) -> Option<String> {
    let n = table.n();
    let s = table.s() as u128;
    for i in 1..=n {
        for j in i..=n {
            let Some(row) = lookup.get(i, j) else {
                continue;
            };
            let total = row.constant() as u128 + s * row.nonconstant_sum() as u128;
            if total != s * s {
                return Some(format!(
                    "({i},{j}): c0 + s*sum = {total}, expected s^2 = {}",
                    s * s
                ));
            }
        }
    }
    None
}

fn constant_terms(table: &StructureTable, lookup: &Lookup) -> Option<String> {
    let n = table.n();
    let s = table.s() as u64;
    let c0 = |i, j| lookup.get(i, j).map_or(0, |r: &StructureRow| r.constant());
    if table.p() == 2 || s.is_multiple_of(2) {
        for i in 1..=n {
            for j in 1..=n {
                let expected = if i == j { s } else { 0 };
                if c0(i, j) != expected {
                    return Some(format!("c({i},{j},0) = {}, expected {expected}", c0(i, j)));
                }
            }
        }
    } else {
        for i in 1..=n {
            if c0(i, i) != 0 {
                return Some(format!("c({i},{i},0) = {}, expected 0", c0(i, i)));
            }
            let mut partners = 0;
            for j in 1..=n {
                match c0(i, j) {
                    0 => {}
                    c if c == s => partners += 1,
                    c => return Some(format!("c({i},{j},0) = {c}, expected 0 or {s}")),
                }
            }
            if partners != 1 {
                return Some(format!("row {i} has {partners} constant terms equal to s"));
            }
        }
    }
    None
}

/// Compares (q_i q_j) q_k, (q_j q_k) q_i and (q_i q_k) q_j for i ≤ j ≤ k.
/// With commutativity these cover every bracketing and ordering.
fn associativity(n: usize, lookup: &Lookup) -> Option<String> {
    let packed = Packed::new(n, lookup);
    let mut acc = [vec![0i128; n + 1], vec![0i128; n + 1], vec![0i128; n + 1]];
    let mut touched: Vec<usize> = Vec::new();
    let mut mark = vec![false; n + 1];
    for i in 1..=n {
        for j in i..=n {
            for k in j..=n {
                for (slot, (a, b, c)) in [(i, j, k), (j, k, i), (i, k, j)].into_iter().enumerate() {
                    let acc = &mut acc[slot];
                    for &(t, x) in packed.row(a, b) {
                        let x = x as i128;
                        if t == 0 {
                            add(acc, &mut touched, &mut mark, c, x);
                            continue;
                        }
                        for &(l, y) in packed.row(t as usize, c) {
                            add(acc, &mut touched, &mut mark, l as usize, x * y as i128);
                        }
                    }
                }
                let bad = touched
                    .iter()
                    .copied()
                    .find(|&l| acc[0][l] != acc[1][l] || acc[0][l] != acc[2][l]);
                if let Some(l) = bad {
                    return Some(format!(
                        "(q{i} q{j}) q{k} differs from q{i} (q{j} q{k}) at basis index {l}"
                    ));
                }
                for &l in &touched {
                    mark[l] = false;
                    for v in acc.iter_mut() {
                        v[l] = 0;
                    }
                }
                touched.clear();
            }
        }
    }
    None
}

/// All n² rows in one contiguous buffer; missing rows are empty.
struct Packed {
    n: usize,
    offsets: Vec<usize>,
    terms: Vec<(u32, u64)>,
}

impl Packed {
    fn new(n: usize, lookup: &Lookup) -> Self {
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut terms = Vec::new();
        offsets.push(0);
        for i in 1..=n {
            for j in 1..=n {
                if let Some(row) = lookup.get(i, j) {
                    terms.extend(row.terms().map(|(k, c)| (k as u32, c)));
                }
                offsets.push(terms.len());
            }
        }
        Self { n, offsets, terms }
    }

    fn row(&self, i: usize, j: usize) -> &[(u32, u64)] {
        let at = (i - 1) * self.n + (j - 1);
        &self.terms[self.offsets[at]..self.offsets[at + 1]]
    }
}

fn add(acc: &mut [i128], touched: &mut Vec<usize>, mark: &mut [bool], l: usize, v: i128) {
    if !mark[l] {
        mark[l] = true;
        touched.push(l);
    }
    acc[l] += v;
}
