//! Text, CSV and JSON renderings of structure tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::structure::{Method, StructureRow, StructureTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    i: usize,
    j: usize,
    c: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    p: u64,
    m: u32,
    n: usize,
    s: usize,
    modulus: Vec<u64>,
    entries: Vec<JsonEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    method: Option<Method>,
}

/// `{"p","m","n","s","modulus","entries":[{"i","j","c"}],"method"}` with
/// entries in (i, j) order. Single line, no trailing newline.
pub fn to_json(table: &StructureTable) -> String {
    let doc = JsonTable {
        p: table.p(),
        m: table.m(),
        n: table.n(),
        s: table.s(),
        modulus: table.field().modulus().to_vec(),
        entries: table
            .entries()
            .map(|((i, j), row)| JsonEntry {
                i,
                j,
                c: row.to_dense(table.n()),
            })
            .collect(),
        method: Some(table.method()),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// Parses [`to_json`] output. A missing "method" reads as direct.
pub fn from_json(text: &str) -> Result<StructureTable> {
    let doc: JsonTable = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let field = FieldParams::new(doc.p, doc.m, doc.modulus)?;
    let mut table = StructureTable::new(field, doc.n, doc.s, doc.method.unwrap_or(Method::Direct));
    for e in doc.entries {
        if e.c.len() != doc.n + 1 {
            return Err(Error::Parse(format!(
                "entry ({},{}) has {} constants, expected {}",
                e.i,
                e.j,
                e.c.len(),
                doc.n + 1
            )));
        }
        table.insert_raw(e.i, e.j, StructureRow::from_dense(&e.c));
    }
    Ok(table)
}

/// Header `i,j,c0,...,cn` and one row per stored pair.
pub fn to_csv(table: &StructureTable) -> String {
    let n = table.n();
    let mut out = String::from("i,j");
    for k in 0..=n {
        write!(out, ",c{k}").unwrap();
    }
    out.push('\n');
    for ((i, j), row) in table.entries() {
        write!(out, "{i},{j}").unwrap();
        for c in row.to_dense(n) {
            write!(out, ",{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses [`to_csv`] output; field metadata is not part of the CSV.
pub fn from_csv(
    text: &str,
    field: FieldParams,
    s: usize,
    method: Method,
) -> Result<StructureTable> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty csv".into()))?;
    let width = header.split(',').count();
    if width < 3 || !header.starts_with("i,j,c0") {
        return Err(Error::Parse(format!("bad csv header {header:?}")));
    }
    let n = width - 3;
    let mut table = StructureTable::new(field, n, s, method);
    for line in lines {
        let cells: Vec<u64> = line
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("{line:?}: {e}")))?;
        if cells.len() != width {
            return Err(Error::Parse(format!("{line:?}: expected {width} cells")));
        }
        table.insert_raw(
            cells[0] as usize,
            cells[1] as usize,
            StructureRow::from_dense(&cells[2..]),
        );
    }
    Ok(table)
}

/// Aligned multiplication table, one line per product.
pub fn to_text(table: &StructureTable) -> String {
    let n = table.n();
    let mut out = format!(
        "p={} m={} n={} s={} modulus {} ({})\n",
        table.p(),
        table.m(),
        n,
        table.s(),
        table.field(),
        table.method()
    );
    let label_width = format!("q{n}q{n}").len();
    let rows: Vec<(String, Vec<u64>)> = table
        .entries()
        .map(|((i, j), row)| (format!("q{i}q{j}"), row.to_dense(n)))
        .collect();
    let width = rows
        .iter()
        .flat_map(|(_, c)| c.iter())
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        .max(format!("c{n}").len());
    write!(out, "{:label_width$}", "").unwrap();
    for k in 0..=n {
        write!(out, " {:>width$}", format!("c{k}")).unwrap();
    }
    out.push('\n');
    for (label, coeffs) in rows {
        write!(out, "{label:label_width$}").unwrap();
        for c in coeffs {
            write!(out, " {c:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn render(table: &StructureTable, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = to_json(table);
            s.push('\n');
            s
        }
        Format::Csv => to_csv(table),
        Format::Text => to_text(table),
    }
}
