//! One function per subcommand, each producing a [`Report`].

use std::collections::BTreeMap;

use m0n_core::combinatorics::{partition4_count, Partitions4};
use m0n_core::divisor::{delta, delta_prime, difference, pullback_pushforward, pushforward};
use m0n_core::rational::to_fraction_string;
use m0n_core::verifier::{
    model_descriptor, run_suite, sample_weights, structured_cases, Check, CheckOutcome,
    ModelDescriptor, SuiteOptions, SymmetricChamber, SymmetricInfo,
};
use m0n_core::vital::{
    delta_prime_pairing, expected_picard_rank, map_partition_chunks, picard_rank, CurveRecord,
    TableRow,
};
use m0n_core::{
    CanonicalSubset, DivisorClass, Error, GroundSet, Rational, Regime, Result, Subset, VitalCurve,
    WeightDatum,
};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::report::{
    rational, rational_cells, rationals, subset, subset_cell, subsets, Report, Table,
};

/// A finished command: its report and whether every check it ran passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report,
            passed: true,
        }
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Interior => "interior",
        Regime::Boundary => "boundary",
    }
}

fn base(command: &str, n: usize, weights: Option<&WeightDatum>, header: &[&'static str]) -> Report {
    Report {
        command: command.to_string(),
        flags: BTreeMap::new(),
        n,
        weights: weights.map(|d| d.weights().to_vec()),
        payload: Value::Null,
        table: Table::new(header),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Delta,
    Pushforward,
    Pullback,
    Difference,
    DeltaPrime,
}

impl ClassKind {
    pub fn command(self) -> &'static str {
        match self {
            ClassKind::Delta => "delta",
            ClassKind::Pushforward => "pushforward",
            ClassKind::Pullback => "pullback",
            ClassKind::Difference => "difference",
            ClassKind::DeltaPrime => "delta-prime",
        }
    }
}

/// Coefficients of a class on boundary divisors, one term per nonzero
/// coefficient, keyed by the representative chosen for the datum.
pub fn class(kind: ClassKind, datum: &WeightDatum) -> Result<Outcome> {
    let mut contracted: Option<Vec<CanonicalSubset>> = None;
    let class: DivisorClass = match kind {
        ClassKind::Delta => delta(datum),
        ClassKind::Pushforward => {
            let h = pushforward(&delta(datum), datum)?;
            contracted = Some(h.contracted().to_vec());
            h.into_class()
        }
        ClassKind::Pullback => pullback_pushforward(datum)?,
        ClassKind::Difference => difference(datum)?,
        ClassKind::DeltaPrime => delta_prime(datum)?,
    };
    let mut report = base(
        kind.command(),
        datum.n(),
        Some(datum),
        &["subset", "weight", "coefficient"],
    );
    let mut terms = Vec::new();
    for (rep, c) in class.terms_for(datum) {
        report.table.push(vec![
            subset_cell(rep.members()),
            to_fraction_string(rep.weight()),
            to_fraction_string(&c),
        ]);
        terms.push(json!({
            "subset": subset(rep.members()),
            "weight": rational(rep.weight()),
            "coefficient": rational(&c),
        }));
    }
    let mut payload = Map::new();
    payload.insert("class".into(), json!(kind.command()));
    payload.insert("regime".into(), json!(regime_name(datum.regime())));
    payload.insert("nonzero".into(), json!(terms.len()));
    payload.insert("terms".into(), Value::Array(terms));
    if let Some(c) = contracted {
        payload.insert(
            "contracted".into(),
            subsets(c.iter().map(CanonicalSubset::members)),
        );
    }
    report.payload = Value::Object(payload);
    Ok(Outcome::ok(report))
}

#[derive(Debug, Default)]
struct CurveSummary {
    curves: u64,
    contracted: u64,
    checked: u64,
    mismatches: u64,
    types: BTreeMap<String, u64>,
    rows: Vec<(Value, Vec<String>)>,
}

impl CurveSummary {
    fn merge(&mut self, other: CurveSummary) {
        self.curves += other.curves;
        self.contracted += other.contracted;
        self.checked += other.checked;
        self.mismatches += other.mismatches;
        for (t, k) in other.types {
            *self.types.entry(t).or_default() += k;
        }
        self.rows.extend(other.rows);
    }
}

const CURVE_HEADER: [&str; 12] = [
    "s1",
    "s2",
    "s3",
    "s4",
    "w1",
    "w2",
    "w3",
    "w4",
    "type",
    "table_value",
    "direct_value",
    "match",
];

/// Every F-curve with its weight-ordered blocks and type; with
/// `table_check`, also the closed-form and direct intersection numbers.
/// `summary_only` drops the per-curve rows.
pub fn curves(datum: &WeightDatum, table_check: bool, summary_only: bool) -> Result<Outcome> {
    let target = match (table_check, datum.regime()) {
        (false, _) => None,
        (true, Regime::Interior) => Some(pullback_pushforward(datum)?),
        (true, Regime::Boundary) => Some(delta_prime(datum)?),
    };
    let table = datum.subset_weights();
    let chunks = map_partition_chunks(datum.ground(), |parts| {
        curve_chunk(datum, &table, target.as_ref(), summary_only, parts)
    });
    let mut summary = CurveSummary::default();
    for c in chunks {
        summary.merge(c);
    }

    let header = if table_check {
        &CURVE_HEADER[..]
    } else {
        &CURVE_HEADER[..9]
    };
    let mut report = base("curves", datum.n(), Some(datum), header);
    report.flags.insert("summary".into(), json!(summary_only));
    report
        .flags
        .insert("table_check".into(), json!(table_check));
    let mut rows = Vec::with_capacity(summary.rows.len());
    for (value, cells) in std::mem::take(&mut summary.rows) {
        rows.push(value);
        report.table.push(cells);
    }
    let mut payload = Map::new();
    payload.insert("regime".into(), json!(regime_name(datum.regime())));
    if !summary_only {
        payload.insert("curves".into(), Value::Array(rows));
    }
    let mut s = json!({
        "curves": summary.curves,
        "contracted": summary.contracted,
        "types": summary.types,
    });
    if table_check {
        s["checked"] = json!(summary.checked);
        s["mismatches"] = json!(summary.mismatches);
    }
    payload.insert("summary".into(), s);
    report.payload = Value::Object(payload);
    Ok(Outcome {
        report,
        passed: summary.mismatches == 0,
    })
}

fn curve_chunk(
    datum: &WeightDatum,
    table: &[Rational],
    target: Option<&DivisorClass>,
    summary_only: bool,
    parts: Partitions4,
) -> CurveSummary {
    let mut s = CurveSummary::default();
    for p in parts {
        let curve = VitalCurve::with_weight_table(p, datum.n(), table, datum.total());
        let record = CurveRecord::new(curve, datum);
        s.curves += 1;
        s.contracted += record.contracted as u64;
        let type_text = match (&record.curve_type, record.contracted) {
            (_, true) => Some("contracted".to_string()),
            (Some(t), false) => {
                *s.types.entry(t.compact()).or_default() += 1;
                Some(t.to_string())
            }
            (None, false) => None,
        };
        let values = target.map(|d| {
            let direct = record.curve.pair(d).expect("same ground set");
            let expected = closed_form(&record, datum);
            let matched = expected.as_ref() == Some(&direct);
            s.checked += 1;
            s.mismatches += !matched as u64;
            (expected, direct, matched)
        });
        if summary_only {
            continue;
        }
        s.rows.push(curve_row(&record.curve, type_text, values));
    }
    s
}

/// The value a curve is predicted to take: zero if contracted, the table row
/// if typed, the piecewise formula in the boundary regime.
fn closed_form(record: &CurveRecord, datum: &WeightDatum) -> Option<Rational> {
    if record.contracted {
        return Some(Rational::zero());
    }
    match &record.curve_type {
        Some(t) => TableRow::for_type(t).map(|row| row.value(&record.curve)),
        None => delta_prime_pairing(&record.curve, datum).ok(),
    }
}

fn curve_row(
    c: &VitalCurve,
    type_text: Option<String>,
    values: Option<(Option<Rational>, Rational, bool)>,
) -> (Value, Vec<String>) {
    let mut obj = Map::new();
    obj.insert(
        "partition".into(),
        subsets(c.partition().blocks().iter().copied()),
    );
    obj.insert("blocks".into(), subsets(c.blocks().iter().copied()));
    obj.insert("block_weights".into(), rationals(c.weights()));
    obj.insert(
        "type".into(),
        type_text.clone().map_or(Value::Null, Value::String),
    );
    let mut cells: Vec<String> = c.blocks().iter().map(|&b| subset_cell(b)).collect();
    cells.extend(c.weights().iter().map(to_fraction_string));
    cells.push(type_text.unwrap_or_default());
    if let Some((expected, direct, matched)) = values {
        obj.insert(
            "table_value".into(),
            expected.as_ref().map_or(Value::Null, rational),
        );
        obj.insert("direct_value".into(), rational(&direct));
        obj.insert("match".into(), json!(matched));
        cells.push(
            expected
                .as_ref()
                .map(to_fraction_string)
                .unwrap_or_default(),
        );
        cells.push(to_fraction_string(&direct));
        cells.push(matched.to_string());
    }
    (Value::Object(obj), cells)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub max_denominator: u64,
    pub timings: bool,
}

/// Seeded Interior and Boundary samples plus the structured cases for `n`,
/// run through the full suite.
pub fn verify(n: usize, opts: &VerifyOptions) -> Result<Outcome> {
    let interior = sample_weights(
        n,
        Regime::Interior,
        opts.samples,
        opts.seed,
        opts.max_denominator,
    )?
    .entries;
    let boundary = sample_weights(
        n,
        Regime::Boundary,
        opts.samples,
        opts.seed,
        opts.max_denominator,
    )?
    .entries;
    let structured = structured_cases(n);
    let data: Vec<WeightDatum> = interior
        .iter()
        .chain(&boundary)
        .chain(&structured)
        .cloned()
        .collect();
    let suite = run_suite(n, &data, &SuiteOptions::default())?;

    let mut report = base(
        "verify",
        n,
        None,
        &["check", "status", "checked", "failures"],
    );
    report
        .flags
        .insert("max_denominator".into(), json!(opts.max_denominator));
    report.flags.insert("samples".into(), json!(opts.samples));
    report.flags.insert("seed".into(), json!(opts.seed));
    let mut checks = Map::new();
    for check in Check::ALL {
        let default = CheckOutcome::default();
        let outcome = suite.outcome(check).unwrap_or(&default);
        let status = outcome.status().as_str();
        report.table.push(vec![
            check.name().to_string(),
            status.to_string(),
            outcome.checked.to_string(),
            outcome.failures.to_string(),
        ]);
        let examples: Vec<Value> = outcome
            .counterexamples
            .iter()
            .map(|c| {
                json!({
                    "n": c.n,
                    "weights": c.weights.as_deref().map(rationals),
                    "locus": c.locus,
                    "expected": c.expected,
                    "actual": c.actual,
                })
            })
            .collect();
        checks.insert(
            check.name().into(),
            json!({
                "status": status,
                "checked": outcome.checked,
                "failures": outcome.failures,
                "counterexamples": examples,
            }),
        );
    }
    let unwitnessed: Vec<String> = suite
        .unwitnessed_rows()
        .iter()
        .map(|r| r.curve_type().to_string())
        .collect();
    let mut payload = json!({
        "all_passed": suite.all_passed(),
        "corpus": { "interior": interior.len(), "boundary": boundary.len(), "structured": structured.len() },
        "data": suite.data,
        "curves": suite.curves,
        "contracted": suite.contracted,
        "checks": checks,
        "types_witnessed": suite.types_witnessed,
        "unwitnessed_rows": unwitnessed,
    });
    if opts.timings {
        payload["elapsed_ms"] = json!(suite.elapsed.as_millis() as u64);
    }
    report.payload = payload;
    Ok(Outcome {
        report,
        passed: suite.all_passed(),
    })
}

fn symmetric_json(info: &Option<SymmetricInfo>) -> Value {
    let Some(info) = info else { return Value::Null };
    let chamber = match &info.chamber {
        SymmetricChamber::Hassett {
            k,
            epsilon_lower,
            epsilon_upper,
        } => json!({
            "kind": "hassett",
            "k": k,
            "epsilon_lower": rational(epsilon_lower),
            "epsilon_upper": rational(epsilon_upper),
        }),
        SymmetricChamber::Git => json!({ "kind": "git" }),
        SymmetricChamber::Unlisted => json!({ "kind": "unlisted" }),
    };
    json!({
        "alpha": rational(&info.alpha),
        "beta": rational(&info.beta),
        "m": info.m,
        "chamber": chamber,
    })
}

pub fn descriptor_json(d: &ModelDescriptor) -> Value {
    match d {
        ModelDescriptor::Hassett(h) => json!({
            "kind": "hassett",
            "collisions": h.collisions.iter().map(|c| json!({
                "subset": subset(c.members()),
                "weight": rational(c.weight()),
            })).collect::<Vec<_>>(),
            "contracted_divisors": h.contracted_divisors,
            "contracted_curves": h.contracted_curves,
            "total_curves": h.total_curves,
            "verified_ample": h.verified_ample,
            "symmetric": symmetric_json(&h.symmetric),
        }),
        ModelDescriptor::Git(g) => json!({
            "kind": "git",
            "linearization": rationals(&g.linearization),
            "walls": subsets(g.walls.iter().copied()),
            "typical": g.typical,
            "symmetric": symmetric_json(&g.symmetric),
        }),
    }
}

/// The subsets that tell chambers apart: collisions for a weighted space,
/// walls for a quotient.
fn signature(d: &ModelDescriptor) -> Vec<Subset> {
    match d {
        ModelDescriptor::Hassett(h) => h.collisions.iter().map(CanonicalSubset::members).collect(),
        ModelDescriptor::Git(g) => g.walls.clone(),
    }
}

fn signature_cell(d: &ModelDescriptor) -> String {
    signature(d)
        .into_iter()
        .map(subset_cell)
        .collect::<Vec<_>>()
        .join(";")
}

pub fn model(datum: &WeightDatum) -> Result<Outcome> {
    let d = model_descriptor(datum);
    let mut report = base(
        "model",
        datum.n(),
        Some(datum),
        &["kind", "regime", "signature", "flag"],
    );
    let (kind, flag) = match &d {
        ModelDescriptor::Hassett(h) => ("hassett", h.verified_ample),
        ModelDescriptor::Git(g) => ("git", g.typical),
    };
    report.table.push(vec![
        kind.to_string(),
        regime_name(datum.regime()).to_string(),
        signature_cell(&d),
        flag.to_string(),
    ]);
    report.payload = descriptor_json(&d);
    Ok(Outcome::ok(report))
}

pub fn rank(n: usize) -> Result<Outcome> {
    let ground = GroundSet::new(n)?;
    let rank = picard_rank(ground);
    let expected = expected_picard_rank(n);
    let mut report = base("rank", n, None, &["n", "rank", "expected", "matches"]);
    report.table.push(vec![
        n.to_string(),
        rank.to_string(),
        expected.to_string(),
        (rank == expected).to_string(),
    ]);
    report.payload = json!({
        "rank": rank,
        "expected": expected,
        "matches": rank == expected,
        "divisors": m0n_core::combinatorics::boundary_pair_count(n),
        "curves": partition4_count(n) as u64,
    });
    Ok(Outcome {
        report,
        passed: rank == expected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanInput {
    /// Nondecreasing weight vectors with entries `k/g`, `1 ≤ k ≤ g`.
    Grid(u64),
    /// Seeded samples, half Interior (rounded up) and half Boundary.
    Samples {
        count: usize,
        seed: u64,
        max_denominator: u64,
    },
}

fn grid_points(n: usize, g: u64) -> Vec<WeightDatum> {
    fn extend(n: usize, g: u64, from: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in from..=g {
            prefix.push(k);
            extend(n, g, k, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    extend(n, g, 1, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .filter_map(|ks| {
            let w = ks
                .iter()
                .map(|&k| Rational::new((k as i64).into(), (g as i64).into()))
                .collect();
            WeightDatum::new(w).ok()
        })
        .collect()
}

/// Model descriptors across a slice of weight space for fixed `n`, with a
/// tally of chambers and of the walls `w_I = 1` the samples straddle.
pub fn scan(n: usize, input: ScanInput) -> Result<Outcome> {
    let data = match input {
        ScanInput::Grid(g) => {
            if g == 0 {
                return Err(Error::InfeasibleSampling {
                    what: "grid",
                    n,
                    bound: g,
                });
            }
            grid_points(n, g)
        }
        ScanInput::Samples {
            count,
            seed,
            max_denominator,
        } => {
            let mut d = sample_weights(
                n,
                Regime::Interior,
                count.div_ceil(2),
                seed,
                max_denominator,
            )?
            .entries;
            d.extend(
                sample_weights(n, Regime::Boundary, count / 2, seed, max_denominator)?.entries,
            );
            d
        }
    };
    let descriptors: Vec<ModelDescriptor> = data.par_iter().map(model_descriptor).collect();

    let mut report = base("scan", n, None, &["weights", "regime", "kind", "signature"]);
    match input {
        ScanInput::Grid(g) => {
            report.flags.insert("grid".into(), json!(g));
        }
        ScanInput::Samples {
            count,
            seed,
            max_denominator,
        } => {
            report
                .flags
                .insert("max_denominator".into(), json!(max_denominator));
            report.flags.insert("samples".into(), json!(count));
            report.flags.insert("seed".into(), json!(seed));
        }
    }

    let mut samples = Vec::with_capacity(data.len());
    let mut chambers: BTreeMap<(Regime, Vec<Vec<usize>>), u64> = BTreeMap::new();
    for (datum, d) in data.iter().zip(&descriptors) {
        let regime = regime_name(datum.regime());
        let kind = if matches!(d, ModelDescriptor::Hassett(_)) {
            "hassett"
        } else {
            "git"
        };
        report.table.push(vec![
            rational_cells(datum.weights()),
            regime.into(),
            kind.into(),
            signature_cell(d),
        ]);
        samples.push(json!({ "weights": rationals(datum.weights()), "regime": regime, "model": descriptor_json(d) }));
        let sig = signature(d).into_iter().map(Subset::to_points).collect();
        *chambers.entry((datum.regime(), sig)).or_default() += 1;
    }

    let chamber_list: Vec<Value> = chambers
        .iter()
        .map(|((regime, sig), count)| json!({ "regime": regime_name(*regime), "signature": sig, "count": count }))
        .collect();
    report.payload = json!({
        "samples": samples,
        "summary": {
            "samples": data.len(),
            "distinct_chambers": chambers.len(),
            "chambers": chamber_list,
            "walls": wall_tally(n, &data),
        },
    });
    Ok(Outcome::ok(report))
}

/// For each `I` with `2 ≤ |I| ≤ n-2`, how many samples have `w_I` below, on
/// and above 1; only walls some sample lies on or straddles are listed.
fn wall_tally(n: usize, data: &[WeightDatum]) -> Vec<Value> {
    let full = (1u32 << n) - 1;
    let one = Rational::one();
    let tables: Vec<Vec<Rational>> = data.iter().map(WeightDatum::subset_weights).collect();
    let mut walls: Vec<Subset> = (1..full)
        .map(Subset::from_bits)
        .filter(|s| s.len() >= 2 && s.len() <= n - 2)
        .collect();
    walls.sort_by_key(|s| (s.len(), s.to_points()));
    walls
        .into_iter()
        .filter_map(|s| {
            let (mut below, mut on, mut above) = (0u64, 0u64, 0u64);
            for t in &tables {
                match t[s.bits() as usize].cmp(&one) {
                    std::cmp::Ordering::Less => below += 1,
                    std::cmp::Ordering::Equal => on += 1,
                    std::cmp::Ordering::Greater => above += 1,
                }
            }
            (on > 0 || (below > 0 && above > 0))
                .then(|| json!({ "subset": subset(s), "below": below, "on": on, "above": above }))
        })
        .collect()
}
