//! Report documents and their JSON/CSV encodings.
//!
//! JSON documents are objects with keys `command`, `n`, `payload`,
//! `schema_version` and `weights`. Object keys are sorted, subsets are
//! ascending arrays of 1-based points and every rational is a `"p/q"` string.
//!
//! CSV documents are a single table whose header depends on the command; in
//! CSV a subset is written as its points separated by spaces.

use std::collections::BTreeMap;

use m0n_core::rational::{parse_fraction, to_fraction_string};
use m0n_core::{DivisorClass, GroundSet, Rational, Subset};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Command name and the flags that determine the output.
    pub command: String,
    pub flags: BTreeMap<String, Value>,
    pub n: usize,
    pub weights: Option<Vec<Rational>>,
    pub payload: Value,
    pub table: Table,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": { "name": self.command, "flags": Map::from_iter(self.flags.clone()) },
            "n": self.n,
            "weights": self.weights.as_deref().map(rationals),
            "payload": self.payload,
        })
    }

    pub fn emit(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => {
                let mut text =
                    serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
                text.push('\n');
                text.into_bytes()
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                w.write_record(&self.table.header).expect("in-memory write");
                for row in &self.table.rows {
                    w.write_record(row).expect("in-memory write");
                }
                w.into_inner().expect("in-memory flush")
            }
        }
    }
}

pub fn rational(value: &Rational) -> Value {
    Value::String(to_fraction_string(value))
}

pub fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational).collect())
}

pub fn subset(s: Subset) -> Value {
    Value::Array(s.points().map(Value::from).collect())
}

pub fn subsets(items: impl IntoIterator<Item = Subset>) -> Value {
    Value::Array(items.into_iter().map(subset).collect())
}

/// Points joined by spaces, the CSV form of a subset.
pub fn subset_cell(s: Subset) -> String {
    s.points()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn rational_cells(values: &[Rational]) -> String {
    values
        .iter()
        .map(to_fraction_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reads a `"p/q"` string back.
pub fn read_rational(value: &Value) -> Option<Rational> {
    parse_fraction(value.as_str()?)
}

pub fn read_subset(value: &Value) -> Option<Subset> {
    let points: Option<Vec<usize>> = value
        .as_array()?
        .iter()
        .map(|p| p.as_u64().map(|p| p as usize))
        .collect();
    Subset::from_points(&points?).ok()
}

/// Reads the weights of an emitted document.
pub fn read_weights(doc: &Value) -> Option<Vec<Rational>> {
    doc.get("weights")?
        .as_array()?
        .iter()
        .map(read_rational)
        .collect()
}

/// Rebuilds the class of an emitted class document (`delta`, `pullback`,
/// `difference`, `delta-prime`, `pushforward`).
pub fn read_class(doc: &Value) -> Option<DivisorClass> {
    let ground = GroundSet::new(doc.get("n")?.as_u64()? as usize).ok()?;
    let mut class = DivisorClass::zero(ground);
    for term in doc.pointer("/payload/terms")?.as_array()? {
        let s = read_subset(term.get("subset")?)?;
        class.add_term(s, read_rational(term.get("coefficient")?)?);
    }
    Some(class)
}
