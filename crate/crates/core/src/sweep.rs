//! Exhaustive cross-checking over every small field and every character
//! order.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibers::{partition, FiberPartition};
use crate::field::{build_field, find_primitive_poly, is_prime, FieldParams, FieldTable};
use crate::format::Format;
use crate::residue_poly::sum_identity_check;
use crate::structure::{
    classify_c0, constants_bruteforce, constants_cyclotomic, constants_direct, verify_algebra,
    Method, StructureTable,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    max_field_size: u64,
    methods: Vec<Method>,
    emit: Format,
}

impl SweepConfig {
    pub fn new(max_field_size: u64, methods: Vec<Method>, emit: Format) -> Result<Self> {
        if max_field_size < 4 {
            return Err(Error::Parse(format!(
                "sweep bound must be at least 4, got {max_field_size}"
            )));
        }
        let mut methods = methods;
        methods.sort();
        methods.dedup();
        if methods.is_empty() {
            return Err(Error::Parse("sweep needs at least one method".into()));
        }
        Ok(Self {
            max_field_size,
            methods,
            emit,
        })
    }

    pub fn max_field_size(&self) -> u64 {
        self.max_field_size
    }

    pub fn methods(&self) -> &[Method] {
        &self.methods
    }

    pub fn emit(&self) -> Format {
        self.emit
    }
}

/// Every (p, m) with p^m ≤ `max`, excluding (2, 1), ordered by p then m.
pub fn sweep_fields(max: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (2..=max).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut m = 1;
        while q <= max {
            if (p, m) != (2, 1) {
                out.push((p, m));
            }
            m += 1;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out
}

/// Divisors n ≥ 2 of `order`.
pub fn character_orders(order: u64) -> Vec<usize> {
    (2..=order)
        .filter(|n| order.is_multiple_of(*n))
        .map(|n| n as usize)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleOutcome {
    pub p: u64,
    pub m: u32,
    pub n: usize,
    pub s: usize,
    /// Every failed check; empty when everything passed.
    pub failures: Vec<CheckFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    /// A method name, "agreement", a [`verify_algebra`] check name,
    /// "classification", "sum_identity" or "negation".
    pub check: String,
    pub detail: String,
}

impl CheckFailure {
    fn new(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

impl TripleOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldOutcome {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
    pub triples: Vec<TripleOutcome>,
}

impl FieldOutcome {
    pub fn passed(&self) -> bool {
        self.triples.iter().all(TripleOutcome::passed)
    }
}

/// Runs the chosen methods on one partition and every consistency check:
/// agreement between methods, the algebra axioms, the constant-term
/// classification, the sum identity and negation parity.
pub fn check_partition(
    part: &FiberPartition,
    methods: &[Method],
) -> (Vec<StructureTable>, Vec<CheckFailure>) {
    let mut failures = Vec::new();
    let mut tables = Vec::new();
    for &method in methods {
        let result = match method {
            Method::Direct => constants_direct(part),
            Method::Cyclotomic => constants_cyclotomic(part),
            Method::Bruteforce => constants_bruteforce(part),
        };
        match result {
            Ok(t) => tables.push(t),
            Err(e) => failures.push(CheckFailure::new(method.name(), e.to_string())),
        }
    }
    if let Some(first) = tables.first() {
        for other in &tables[1..] {
            if let Some((i, j)) = first.first_difference(other) {
                failures.push(CheckFailure::new(
                    "agreement",
                    format!(
                        "{} and {} differ at ({i},{j}): {:?} vs {:?}",
                        first.method(),
                        other.method(),
                        first.row(i, j),
                        other.row(i, j)
                    ),
                ));
            }
        }
        for failure in verify_algebra(first).failures() {
            failures.push(CheckFailure::new(
                failure.name,
                failure.counterexample.clone().unwrap_or_default(),
            ));
        }
        match classify_c0(part) {
            Ok(c0) => {
                if let Some((&(i, j), &c)) =
                    c0.iter().find(|&(&(i, j), &c)| first.coeff(i, j, 0) != c)
                {
                    failures.push(CheckFailure::new(
                        "classification",
                        format!("c({i},{j},0) = {}, predicted {c}", first.coeff(i, j, 0)),
                    ));
                }
            }
            Err(e) => failures.push(CheckFailure::new("classification", e.to_string())),
        }
    }
    match sum_identity_check(part) {
        Ok(true) => {}
        Ok(false) => failures.push(CheckFailure::new("sum_identity", "sum of q_k differs")),
        Err(e) => failures.push(CheckFailure::new("sum_identity", e.to_string())),
    }
    if let Some(msg) = negation_parity(part) {
        failures.push(msg);
    }
    (tables, failures)
}

/// −A_k = A_k exactly when p = 2 or s is even.
fn negation_parity(part: &FiberPartition) -> Option<CheckFailure> {
    let closed = part.p() == 2 || part.s().is_multiple_of(2);
    for k in 1..=part.n() {
        match part.negation_fiber(k) {
            Ok(j) if (j == k) == closed => {}
            Ok(j) => return Some(CheckFailure::new("negation", format!("-A_{k} = A_{j}"))),
            Err(e) => return Some(CheckFailure::new("negation", e.to_string())),
        }
    }
    None
}

pub fn run_field(field: Arc<FieldTable>, methods: &[Method]) -> FieldOutcome {
    let params = field.params().clone();
    let triples = character_orders(field.order() as u64)
        .into_iter()
        .map(|n| {
            let mut outcome = TripleOutcome {
                p: params.p(),
                m: params.m(),
                n,
                s: field.order() / n,
                failures: Vec::new(),
            };
            match partition(field.clone(), n) {
                Ok(part) => outcome.failures = check_partition(&part, methods).1,
                Err(e) => outcome
                    .failures
                    .push(CheckFailure::new("partition", e.to_string())),
            }
            outcome
        })
        .collect();
    FieldOutcome {
        p: params.p(),
        m: params.m(),
        modulus: params.modulus().to_vec(),
        triples,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub fields: Vec<FieldOutcome>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.fields.iter().all(FieldOutcome::passed)
    }

    pub fn triple_count(&self) -> usize {
        self.fields.iter().map(|f| f.triples.len()).sum()
    }

    pub fn first_failure(&self) -> Option<&TripleOutcome> {
        self.fields
            .iter()
            .flat_map(|f| &f.triples)
            .find(|t| !t.passed())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(self).expect("plain data serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = String::from("p,m,n,s,status\n");
                for t in self.fields.iter().flat_map(|f| &f.triples) {
                    let status = if t.passed() { "PASS" } else { "FAIL" };
                    writeln!(out, "{},{},{},{},{status}", t.p, t.m, t.n, t.s).unwrap();
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                for f in &self.fields {
                    let ns: Vec<String> = f.triples.iter().map(|t| t.n.to_string()).collect();
                    let status = if f.passed() { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{status} p={} m={} q={} n={{{}}}",
                        f.p,
                        f.m,
                        f.p.pow(f.m),
                        ns.join(",")
                    )
                    .unwrap();
                    for t in f.triples.iter().filter(|t| !t.passed()) {
                        for msg in &t.failures {
                            writeln!(out, "  n={}: {msg}", t.n).unwrap();
                        }
                    }
                }
                let status = if self.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status}: {} fields, {} (p,m,n) triples",
                    self.fields.len(),
                    self.triple_count()
                )
                .unwrap();
                out
            }
        }
    }
}

/// Runs every field concurrently; results come back in field order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let fields = sweep_fields(config.max_field_size)
        .into_iter()
        .map(|(p, m)| {
            let params: FieldParams = find_primitive_poly(p, m)?;
            Ok(Arc::new(build_field(params)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let fields = fields
        .into_par_iter()
        .map(|f| run_field(f, &config.methods))
        .collect();
    Ok(SweepReport { fields })
}
