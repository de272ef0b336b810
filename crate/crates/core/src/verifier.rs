//! Seeded property suites over weight data and the model descriptor.
//!
//! Each check compares two independent computations of the same quantity
//! (a closed form against an expansion, a table row against a direct
//! pairing, ...). Failures never abort a run; they are counted and the first
//! few are kept as counterexamples that carry everything needed to replay
//! them: `n`, the weight datum and the subset or partition involved.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    boundary_pair_count, boundary_pairs, partitions4, GroundSet, Partitions4, Subset,
};
use crate::divisor::{
    canonical_class, delta, delta_from_psi, delta_prime, difference, exceptional_part,
    pullback_pushforward, pullback_pushforward_by_pairs, total_boundary, total_psi, DivisorClass,
};
use crate::error::{Error, Result};
use crate::rational::{int, rat, to_fraction_string, Rational};
use crate::vital::{
    delta_prime_pairing, expected_picard_rank, map_partition_chunks, picard_rank, CurveRecord,
    TableRow, VitalCurve,
};
use crate::weights::{CanonicalSubset, Regime, WeightDatum};

/// How a [`Corpus`] was generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SamplingSpec {
    pub regime: Regime,
    pub count: usize,
    pub max_denominator: u64,
}

/// Seeded random weight data for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub n: usize,
    pub seed: u64,
    pub spec: SamplingSpec,
    pub entries: Vec<WeightDatum>,
}

impl Corpus {
    /// Rebuilds the corpus from `(n, seed, spec)`.
    pub fn regenerate(&self) -> Result<Corpus> {
        sample_weights(
            self.n,
            self.spec.regime,
            self.spec.count,
            self.seed,
            self.spec.max_denominator,
        )
    }
}

const MAX_ATTEMPTS: usize = 100_000;

/// Samples `count` weight data on `n` points with every `aᵢ = k/d`,
/// `1 ≤ k ≤ d ≤ max_denominator`.
///
/// Interior data are rejection-sampled until `Σaᵢ > 2`. Boundary data pick a
/// common denominator `d ≥ n/2` and a random composition of `2d` into `n`
/// parts in `[1, d]`, so `Σaᵢ = 2` holds exactly.
pub fn sample_weights(
    n: usize,
    regime: Regime,
    count: usize,
    seed: u64,
    max_denominator: u64,
) -> Result<Corpus> {
    GroundSet::new(n)?;
    let what = match regime {
        Regime::Interior => "interior",
        Regime::Boundary => "boundary",
    };
    let infeasible = Error::InfeasibleSampling {
        what,
        n,
        bound: max_denominator,
    };
    let min_boundary_denominator = (n as u64).div_ceil(2).max(2);
    if max_denominator < 2
        || (regime == Regime::Boundary && max_denominator < min_boundary_denominator)
    {
        return Err(infeasible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let datum = match regime {
            Regime::Interior => sample_interior(&mut rng, n, max_denominator),
            Regime::Boundary => Some(sample_boundary(
                &mut rng,
                n,
                min_boundary_denominator,
                max_denominator,
            )),
        };
        entries.push(datum.ok_or_else(|| infeasible.clone())?);
    }
    Ok(Corpus {
        n,
        seed,
        spec: SamplingSpec {
            regime,
            count,
            max_denominator,
        },
        entries,
    })
}

fn sample_interior(rng: &mut ChaCha8Rng, n: usize, bound: u64) -> Option<WeightDatum> {
    for _ in 0..MAX_ATTEMPTS {
        let weights: Vec<Rational> = (0..n)
            .map(|_| {
                let d = rng.random_range(1..=bound) as i64;
                let k = rng.random_range(1..=d);
                rat(k, d)
            })
            .collect();
        if let Ok(datum) = WeightDatum::new(weights) {
            if datum.regime() == Regime::Interior {
                return Some(datum);
            }
        }
    }
    None
}

fn sample_boundary(rng: &mut ChaCha8Rng, n: usize, min_d: u64, max_d: u64) -> WeightDatum {
    let d = rng.random_range(min_d..=max_d) as usize;
    let mut parts = vec![1usize; n];
    for _ in 0..(2 * d - n) {
        let open: Vec<usize> = (0..n).filter(|&i| parts[i] < d).collect();
        let pick = open[rng.random_range(0..open.len())];
        parts[pick] += 1;
    }
    let weights = parts.iter().map(|&k| rat(k as i64, d as i64)).collect();
    WeightDatum::new(weights).expect("composition of 2d into parts in [1, d]")
}

/// Hand-picked data that sit on or next to walls and chamber boundaries.
pub fn structured_cases(n: usize) -> Vec<WeightDatum> {
    let mut out = Vec::new();
    let mut push = |w: Vec<Rational>| {
        if let Ok(d) = WeightDatum::new(w) {
            if !out.contains(&d) {
                out.push(d);
            }
        }
    };
    let ones = |k: usize| vec![int(1); k];
    let cat = |mut a: Vec<Rational>, b: Vec<Rational>| {
        a.extend(b);
        a
    };
    // Interior.
    push(ones(n));
    push(cat(ones(n - 2), vec![rat(1, 2); 2]));
    push(cat(ones(n - 2), vec![rat(2, 5); 2]));
    if n >= 6 {
        push(cat(ones(n - 3), vec![rat(1, 3); 3]));
        push(cat(ones(3), vec![rat(9, 10 * (n as i64 - 3)); n - 3]));
        push(cat(ones(3), vec![rat(1, 10); n - 3]));
    }
    push(cat(
        vec![rat(1, 10)],
        cat(vec![rat(9, 10); n - 3], vec![rat(9, 20); 2]),
    ));
    let m = n / 2;
    for k in 1..m.saturating_sub(1) {
        // Upper end of each symmetric chamber, ε = 1/(m - k).
        push(vec![rat(1, (m - k) as i64); n]);
    }
    // Boundary.
    push(vec![rat(2, n as i64); n]);
    push(cat(vec![rat(1, 2); 2], vec![rat(1, n as i64 - 2); n - 2]));
    push(cat(vec![int(1)], vec![rat(1, n as i64 - 1); n - 1]));
    out
}

/// Symmetric weights `α = p/q` with `q ≤ max_denominator` and `2/n < α ≤ 1`,
/// in increasing order.
pub fn symmetric_alphas(n: usize, max_denominator: i64) -> Vec<Rational> {
    let lower = rat(2, n as i64);
    let mut out: Vec<Rational> = (1..=max_denominator)
        .flat_map(|q| (1..=q).map(move |p| rat(p, q)))
        .filter(|a| a > &lower)
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// `K + Σ aᵢψᵢ` in closed form equals the sum of its pieces.
    DeltaPsiExpansion,
    /// Closed form and 2-subset expansion of the contracted coordinates agree.
    PullbackCollapse,
    /// The divisor minus the pullback of its pushforward has the closed form.
    DifferenceIdentity,
    /// That difference is effective and supported on contracted subsets.
    DifferenceEffective,
    /// Table row value equals the direct pairing on non-contracted curves.
    TableAgreement,
    /// Those values are strictly positive.
    TablePositivity,
    /// Every summand of the row is nonnegative and the last one positive.
    TableTermSigns,
    /// Contracted curves pair to zero with the pullback of the pushforward.
    ContractedPairingZero,
    /// Table values do not depend on the order of equal-weight blocks.
    TieRobustness,
    /// Every observed type is a table row.
    TypeClosure,
    /// Boundary regime: the divisor minus the boundary-weight divisor has the
    /// same closed form as in the interior regime.
    BoundaryDifferenceIdentity,
    /// Boundary regime: piecewise pairing formula equals the direct pairing.
    DeltaPrimePairing,
    /// Rank of the boundary × F-curve pairing matrix is the Picard number.
    PicardRank,
    /// Partition enumeration count equals S(n, 4).
    PartitionCount,
    /// Number of boundary pairs equals `2^(n-1) - n - 1`.
    BoundaryPairCount,
    /// `ψ = K + 2D`.
    TotalPsiIdentity,
    /// `K + αψ = (1 + α)(K + 2α/(1+α) D)` for symmetric weights.
    SymmetricFactorization,
}

impl Check {
    pub const ALL: [Check; 17] = [
        Check::DeltaPsiExpansion,
        Check::PullbackCollapse,
        Check::DifferenceIdentity,
        Check::DifferenceEffective,
        Check::TableAgreement,
        Check::TablePositivity,
        Check::TableTermSigns,
        Check::ContractedPairingZero,
        Check::TieRobustness,
        Check::TypeClosure,
        Check::BoundaryDifferenceIdentity,
        Check::DeltaPrimePairing,
        Check::PicardRank,
        Check::PartitionCount,
        Check::BoundaryPairCount,
        Check::TotalPsiIdentity,
        Check::SymmetricFactorization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::DeltaPsiExpansion => "delta_psi_expansion",
            Check::PullbackCollapse => "pullback_collapse",
            Check::DifferenceIdentity => "difference_identity",
            Check::DifferenceEffective => "difference_effective",
            Check::TableAgreement => "table_agreement",
            Check::TablePositivity => "table_positivity",
            Check::TableTermSigns => "table_term_signs",
            Check::ContractedPairingZero => "contracted_pairing_zero",
            Check::TieRobustness => "tie_robustness",
            Check::TypeClosure => "type_closure",
            Check::BoundaryDifferenceIdentity => "boundary_difference_identity",
            Check::DeltaPrimePairing => "delta_prime_pairing",
            Check::PicardRank => "picard_rank",
            Check::PartitionCount => "partition_count",
            Check::BoundaryPairCount => "boundary_pair_count",
            Check::TotalPsiIdentity => "total_psi_identity",
            Check::SymmetricFactorization => "symmetric_factorization",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// A reproducible failure. `expected` and `actual` are exact values written
/// as `p/q` (or a short label for non-numeric checks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub weights: Option<Vec<Rational>>,
    pub locus: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckOutcome {
    pub fn status(&self) -> Status {
        if self.failures > 0 {
            Status::Fail
        } else if self.checked == 0 {
            Status::Skipped
        } else {
            Status::Pass
        }
    }

    fn merge(&mut self, other: CheckOutcome, cap: usize) {
        self.checked += other.checked;
        self.failures += other.failures;
        for c in other.counterexamples {
            if self.counterexamples.len() < cap {
                self.counterexamples.push(c);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Counterexamples kept per check.
    pub max_counterexamples: usize,
    /// Largest `n` for which the Picard rank is computed.
    pub max_rank_n: usize,
    /// Denominator bound for the symmetric factorization sweep.
    pub symmetric_max_denominator: i64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            max_counterexamples: 5,
            max_rank_n: 8,
            symmetric_max_denominator: 12,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub data: u64,
    pub checks: BTreeMap<Check, CheckOutcome>,
    pub curves: u64,
    pub contracted: u64,
    /// Observed curve types (compact form) and how often each occurred.
    pub types_witnessed: BTreeMap<String, u64>,
    /// Wall-clock time; not part of report equality for determinism checks.
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.checks.get(&check)
    }

    pub fn status(&self, check: Check) -> Status {
        self.checks
            .get(&check)
            .map_or(Status::Skipped, CheckOutcome::status)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|c| c.failures == 0)
    }

    /// Table rows never observed in this report.
    pub fn unwitnessed_rows(&self) -> Vec<TableRow> {
        TableRow::all()
            .filter(|r| !self.types_witnessed.contains_key(&r.curve_type().compact()))
            .collect()
    }

    /// The report with timing zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }

    fn record(&mut self, check: Check, outcome: CheckOutcome, cap: usize) {
        self.checks.entry(check).or_default().merge(outcome, cap);
    }

    fn merge(&mut self, other: VerificationReport, cap: usize) {
        self.data += other.data;
        self.curves += other.curves;
        self.contracted += other.contracted;
        for (t, k) in other.types_witnessed {
            *self.types_witnessed.entry(t).or_default() += k;
        }
        for (check, outcome) in other.checks {
            self.record(check, outcome, cap);
        }
    }
}

/// Accumulates one check's results with a counterexample cap.
struct Tally<'a> {
    outcome: CheckOutcome,
    cap: usize,
    n: usize,
    weights: Option<&'a [Rational]>,
}

impl<'a> Tally<'a> {
    fn new(cap: usize, n: usize, weights: Option<&'a [Rational]>) -> Self {
        Self {
            outcome: CheckOutcome::default(),
            cap,
            n,
            weights,
        }
    }

    fn pass(&mut self) {
        self.outcome.checked += 1;
    }

    fn fail(
        &mut self,
        locus: impl fmt::Display,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) {
        self.outcome.checked += 1;
        self.outcome.failures += 1;
        if self.outcome.counterexamples.len() < self.cap {
            self.outcome.counterexamples.push(Counterexample {
                n: self.n,
                weights: self.weights.map(<[Rational]>::to_vec),
                locus: locus.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn expect_eq(&mut self, locus: impl fmt::Display, expected: &Rational, actual: &Rational) {
        if expected == actual {
            self.pass();
        } else {
            self.fail(
                locus,
                to_fraction_string(expected),
                to_fraction_string(actual),
            );
        }
    }

    /// Coordinatewise equality of two classes; one check per pair of classes,
    /// reporting the first differing coordinate.
    fn expect_class_eq(&mut self, expected: &DivisorClass, actual: &DivisorClass) {
        if expected == actual {
            return self.pass();
        }
        let ground = expected.ground();
        let key = boundary_pairs(ground)
            .map(|p| p.first)
            .find(|&k| expected.coefficient(k) != actual.coefficient(k))
            .expect("unequal classes differ somewhere");
        self.fail(
            key,
            to_fraction_string(&expected.coefficient(key)),
            to_fraction_string(&actual.coefficient(key)),
        );
    }

    fn finish(self) -> CheckOutcome {
        self.outcome
    }
}

/// Runs every per-datum check for `data` and the per-`n` checks once.
/// Data are processed in parallel on the current rayon pool; the report is
/// assembled in input order and does not depend on the thread count.
pub fn run_suite(
    n: usize,
    data: &[WeightDatum],
    options: &SuiteOptions,
) -> Result<VerificationReport> {
    use rayon::prelude::*;

    let start = Instant::now();
    let ground = GroundSet::new(n)?;
    if let Some(bad) = data.iter().find(|d| d.n() != n) {
        return Err(Error::GroundMismatch {
            left: n,
            right: bad.n(),
        });
    }
    let mut report = per_n_checks(ground, options);
    let per_datum: Vec<VerificationReport> = data
        .par_iter()
        .map(|d| verify_datum_untimed(d, options))
        .collect();
    for r in per_datum {
        report.merge(r, options.max_counterexamples);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// The per-datum checks for a single weight datum.
pub fn verify_datum(datum: &WeightDatum, options: &SuiteOptions) -> VerificationReport {
    let start = Instant::now();
    let mut report = verify_datum_untimed(datum, options);
    report.elapsed = start.elapsed();
    report
}

fn verify_datum_untimed(datum: &WeightDatum, options: &SuiteOptions) -> VerificationReport {
    let n = datum.n();
    let cap = options.max_counterexamples;
    let tally = || Tally::new(cap, n, Some(datum.weights()));
    let mut report = VerificationReport::new(n);
    report.data = 1;

    let d = delta(datum);
    let mut t = tally();
    t.expect_class_eq(&d, &delta_from_psi(datum));
    report.record(Check::DeltaPsiExpansion, t.finish(), cap);

    match datum.regime() {
        Regime::Interior => {
            let pp = pullback_pushforward(datum).expect("interior");
            let mut t = tally();
            t.expect_class_eq(
                &pp,
                &pullback_pushforward_by_pairs(datum).expect("interior"),
            );
            report.record(Check::PullbackCollapse, t.finish(), cap);

            let diff = difference(datum).expect("interior");
            let mut t = tally();
            t.expect_class_eq(&diff, &(&d - &pp));
            report.record(Check::DifferenceIdentity, t.finish(), cap);

            let mut t = tally();
            effectivity(datum, &diff, &mut t);
            report.record(Check::DifferenceEffective, t.finish(), cap);

            let chunks = map_partition_chunks(datum.ground(), |parts| {
                interior_curves(datum, &pp, parts, options)
            });
            for chunk in chunks {
                report.merge(chunk, cap);
            }
        }
        Regime::Boundary => {
            let dp = delta_prime(datum).expect("boundary");
            let mut t = tally();
            t.expect_class_eq(&exceptional_part(datum), &(&d - &dp));
            report.record(Check::BoundaryDifferenceIdentity, t.finish(), cap);

            let chunks = map_partition_chunks(datum.ground(), |parts| {
                boundary_curves(datum, &dp, parts, options)
            });
            for chunk in chunks {
                report.merge(chunk, cap);
            }
        }
    }
    report
}

fn effectivity(datum: &WeightDatum, diff: &DivisorClass, t: &mut Tally<'_>) {
    let one = Rational::one();
    for (key, c) in diff.iter() {
        let rep = datum.canonicalize(key);
        if c.is_negative() {
            t.fail(rep.members(), ">= 0", to_fraction_string(c));
        } else if rep.weight() > &one {
            t.fail(
                rep.members(),
                "support in w_I <= 1",
                to_fraction_string(rep.weight()),
            );
        } else {
            t.pass();
        }
    }
    // A zero difference is trivially effective.
    if diff.is_zero() {
        t.pass();
    }
}

fn interior_curves(
    datum: &WeightDatum,
    pp: &DivisorClass,
    parts: Partitions4,
    options: &SuiteOptions,
) -> VerificationReport {
    let n = datum.n();
    let cap = options.max_counterexamples;
    let table = datum.subset_weights();
    let tally = || Tally::new(cap, n, Some(datum.weights()));
    let (mut agree, mut positive, mut signs, mut zero, mut ties, mut closure) =
        (tally(), tally(), tally(), tally(), tally(), tally());
    let mut report = VerificationReport::new(n);
    for p in parts {
        let curve = VitalCurve::with_weight_table(p, n, &table, datum.total());
        let record = CurveRecord::new(curve, datum);
        let curve = &record.curve;
        let direct = curve.pair(pp).expect("same ground set");
        report.curves += 1;
        if record.contracted {
            report.contracted += 1;
            zero.expect_eq(p, &Rational::zero(), &direct);
            continue;
        }
        let ty = record.curve_type.expect("non-contracted curves are typed");
        *report.types_witnessed.entry(ty.compact()).or_default() += 1;
        let Some(row) = TableRow::for_type(&ty) else {
            closure.fail(p, "one of the 13 table rows", ty);
            continue;
        };
        closure.pass();
        let terms = row.terms(curve);
        let value: Rational = terms.iter().sum();
        agree.expect_eq(format!("{p} type {ty}"), &value, &direct);
        if direct.is_positive() {
            positive.pass();
        } else {
            positive.fail(p, "> 0", to_fraction_string(&direct));
        }
        let (last, rest) = terms.split_last().expect("rows have at least one term");
        match rest.iter().position(|x| x.is_negative()) {
            Some(k) => signs.fail(
                format!("{p} term {}", k + 1),
                ">= 0",
                to_fraction_string(&rest[k]),
            ),
            None if !last.is_positive() => {
                signs.fail(format!("{p} last term"), "> 0", to_fraction_string(last))
            }
            None => signs.pass(),
        }
        let orderings = curve.admissible_orderings();
        if orderings.len() > 1 {
            let mismatch = orderings.iter().skip(1).find_map(|alt| {
                let alt_ty = CurveRecord::new(alt.clone(), datum).curve_type?;
                let alt_value = TableRow::for_type(&alt_ty).map(|r| r.value(alt));
                (alt_value.as_ref() != Some(&value))
                    .then(|| (alt.blocks().map(|b| b.to_string()), alt_value))
            });
            match mismatch {
                None => ties.pass(),
                Some((blocks, alt_value)) => ties.fail(
                    format!("{p} reordered as {}", blocks.join(" ")),
                    to_fraction_string(&value),
                    alt_value.map_or("unlisted type".to_string(), |v| to_fraction_string(&v)),
                ),
            }
        }
    }
    report.record(Check::TableAgreement, agree.finish(), cap);
    report.record(Check::TablePositivity, positive.finish(), cap);
    report.record(Check::TableTermSigns, signs.finish(), cap);
    report.record(Check::ContractedPairingZero, zero.finish(), cap);
    report.record(Check::TieRobustness, ties.finish(), cap);
    report.record(Check::TypeClosure, closure.finish(), cap);
    report
}

fn boundary_curves(
    datum: &WeightDatum,
    dp: &DivisorClass,
    parts: Partitions4,
    options: &SuiteOptions,
) -> VerificationReport {
    let n = datum.n();
    let cap = options.max_counterexamples;
    let table = datum.subset_weights();
    let mut t = Tally::new(cap, n, Some(datum.weights()));
    let mut report = VerificationReport::new(n);
    for p in parts {
        let curve = VitalCurve::with_weight_table(p, n, &table, datum.total());
        let piecewise = delta_prime_pairing(&curve, datum).expect("boundary");
        let direct = curve.pair(dp).expect("same ground set");
        t.expect_eq(p, &piecewise, &direct);
        report.curves += 1;
    }
    report.record(Check::DeltaPrimePairing, t.finish(), cap);
    report
}

/// Number of set partitions of an `n`-set into `k` blocks, by the recurrence
/// `S(n, k) = k·S(n-1, k) + S(n-1, k-1)`.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

fn per_n_checks(ground: GroundSet, options: &SuiteOptions) -> VerificationReport {
    let n = ground.n();
    let cap = options.max_counterexamples;
    let tally = || Tally::new(cap, n, None);
    let mut report = VerificationReport::new(n);

    let mut t = tally();
    let count = partitions4(ground).count() as u128;
    let want = stirling2(n, 4);
    if count == want {
        t.pass();
    } else {
        t.fail("partitions into 4 blocks", want, count);
    }
    report.record(Check::PartitionCount, t.finish(), cap);

    let mut t = tally();
    let count = boundary_pairs(ground).count() as u64;
    if count == boundary_pair_count(n) {
        t.pass();
    } else {
        t.fail("boundary pairs", boundary_pair_count(n), count);
    }
    report.record(Check::BoundaryPairCount, t.finish(), cap);

    let k = canonical_class(ground);
    let d = total_boundary(ground);
    let mut t = tally();
    t.expect_class_eq(&total_psi(ground), &(&k + &d.scale(&int(2))));
    report.record(Check::TotalPsiIdentity, t.finish(), cap);

    let mut t = tally();
    for alpha in symmetric_alphas(n, options.symmetric_max_denominator) {
        let datum = WeightDatum::symmetric(n, alpha.clone()).expect("2/n < α ≤ 1");
        let one_plus = &alpha + Rational::one();
        let beta = (int(2) * &alpha) / &one_plus;
        let factored = (&k + &d.scale(&beta)).scale(&one_plus);
        let mut sub = Tally::new(cap, n, Some(datum.weights()));
        sub.expect_class_eq(&factored, &delta(&datum));
        t.outcome.merge(sub.finish(), cap);
    }
    report.record(Check::SymmetricFactorization, t.finish(), cap);

    let mut t = tally();
    if n <= options.max_rank_n {
        let rank = picard_rank(ground);
        let want = expected_picard_rank(n);
        if rank == want {
            t.pass();
        } else {
            t.fail("pairing matrix rank", want, rank);
        }
    }
    report.record(Check::PicardRank, t.finish(), cap);
    report
}

/// Where a symmetric weight `α` lands among the chambers of `K + βD`,
/// `β = 2α/(1+α)`, with `m = ⌊n/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetricChamber {
    /// `2/(m-k+2) < β ≤ 2/(m-k+1)`: the weighted space with symmetric weight
    /// `ε ∈ (1/(m+1-k), 1/(m-k)]`.
    Hassett {
        k: usize,
        epsilon_lower: Rational,
        epsilon_upper: Rational,
    },
    /// `2/(n-1) < β ≤ 2/(m+1)`: the GIT quotient with `O(1, …, 1)`.
    Git,
    /// Outside the listed ranges.
    Unlisted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricInfo {
    pub alpha: Rational,
    pub beta: Rational,
    pub m: usize,
    pub chamber: SymmetricChamber,
}

pub fn symmetric_chamber(n: usize, alpha: &Rational) -> SymmetricInfo {
    let beta = (int(2) * alpha) / (alpha + Rational::one());
    let m = n / 2;
    let two_over = |d: usize| rat(2, d as i64);
    let mut chamber = SymmetricChamber::Unlisted;
    for k in 1..m.saturating_sub(1) {
        if beta > two_over(m - k + 2) && beta <= two_over(m - k + 1) {
            chamber = SymmetricChamber::Hassett {
                k,
                epsilon_lower: rat(1, (m + 1 - k) as i64),
                epsilon_upper: rat(1, (m - k) as i64),
            };
        }
    }
    if chamber == SymmetricChamber::Unlisted && beta > two_over(n - 1) && beta <= two_over(m + 1) {
        chamber = SymmetricChamber::Git;
    }
    SymmetricInfo {
        alpha: alpha.clone(),
        beta,
        m,
        chamber,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HassettDescriptor {
    /// Representatives `I` with `|I| ≥ 2` and `w_I ≤ 1`.
    pub collisions: Vec<CanonicalSubset>,
    pub contracted_divisors: usize,
    pub contracted_curves: u64,
    pub total_curves: u64,
    /// Positivity on every non-contracted F-curve and zero on every
    /// contracted one. Ampleness follows only if F-curves span the cone of
    /// curves (the F-conjecture).
    pub verified_ample: bool,
    pub symmetric: Option<SymmetricInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GitDescriptor {
    pub linearization: Vec<Rational>,
    /// Every nonempty proper `I` with `w_I = 1`.
    pub walls: Vec<Subset>,
    pub typical: bool,
    pub symmetric: Option<SymmetricInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelDescriptor {
    Hassett(HassettDescriptor),
    Git(GitDescriptor),
}

/// The birational model selected by `K + Σ aᵢψᵢ`.
pub fn model_descriptor(datum: &WeightDatum) -> ModelDescriptor {
    let symmetric = datum
        .symmetric_value()
        .map(|a| symmetric_chamber(datum.n(), a));
    match datum.regime() {
        Regime::Interior => {
            let collisions: Vec<_> = datum
                .contracted_collection()
                .into_iter()
                .filter(|c| c.size() >= 2)
                .collect();
            let report = verify_datum_untimed(datum, &SuiteOptions::default());
            let ample_checks = [
                Check::TableAgreement,
                Check::TablePositivity,
                Check::ContractedPairingZero,
            ];
            let verified_ample = ample_checks
                .iter()
                .all(|&c| report.status(c) != Status::Fail)
                && report.status(Check::TablePositivity) != Status::Skipped;
            let contracted_divisors = collisions
                .iter()
                .filter(|c| datum.ground().is_boundary(c.members()))
                .count();
            ModelDescriptor::Hassett(HassettDescriptor {
                contracted_divisors,
                collisions,
                contracted_curves: report.contracted,
                total_curves: report.curves,
                verified_ample,
                symmetric,
            })
        }
        Regime::Boundary => {
            let one = Rational::one();
            let table = datum.subset_weights();
            let full = datum.ground().full().bits();
            let walls: Vec<Subset> = (1..full)
                .filter(|&b| table[b as usize] == one)
                .map(Subset::from_bits)
                .collect();
            ModelDescriptor::Git(GitDescriptor {
                linearization: datum.weights().to_vec(),
                typical: walls.is_empty(),
                walls,
                symmetric,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 4), 1);
        assert_eq!(stirling2(5, 4), 10);
        assert_eq!(stirling2(8, 4), 1701);
        assert_eq!(stirling2(12, 4), 611_501);
        assert_eq!(stirling2(3, 4), 0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_weights(5, Regime::Interior, 3, 42, 20).unwrap();
        let b = sample_weights(5, Regime::Interior, 3, 42, 20).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.regenerate().unwrap(), a);
        let c = sample_weights(5, Regime::Interior, 3, 43, 20).unwrap();
        assert_ne!(a.entries, c.entries);
    }

    #[test]
    fn sampled_data_respect_their_regime() {
        let corpus = sample_weights(4, Regime::Boundary, 50, 1, 30).unwrap();
        for d in &corpus.entries {
            assert_eq!(d.total(), &int(2));
            assert!(d.weights().iter().all(|a| a.is_positive() && a <= &int(1)));
        }
        let corpus = sample_weights(5, Regime::Interior, 50, 1, 30).unwrap();
        for d in &corpus.entries {
            assert!(d.total() > &int(2));
            assert!(d.weights().iter().all(|a| a.is_positive() && a <= &int(1)));
            assert!(d.weights().iter().all(|a| a.denom() <= &30.into()));
        }
        let corpus = sample_weights(8, Regime::Boundary, 20, 9, 12).unwrap();
        assert!(corpus.entries.iter().all(|d| d.total() == &int(2)));
    }

    #[test]
    fn infeasible_sampling() {
        assert!(matches!(
            sample_weights(10, Regime::Boundary, 1, 0, 4),
            Err(Error::InfeasibleSampling { .. })
        ));
        assert!(matches!(
            sample_weights(5, Regime::Interior, 1, 0, 1),
            Err(Error::InfeasibleSampling { .. })
        ));
        assert!(matches!(
            sample_weights(3, Regime::Interior, 1, 0, 10),
            Err(Error::TooFewPoints(3))
        ));
    }

    #[test]
    fn all_ones_suite_n5() {
        let data = vec![WeightDatum::symmetric(5, int(1)).unwrap()];
        let report = run_suite(5, &data, &SuiteOptions::default()).unwrap();
        assert!(report.all_passed(), "{report:#?}");
        assert_eq!(report.curves, 10);
        assert_eq!(report.contracted, 0);
        assert_eq!(report.status(Check::PicardRank), Status::Pass);
        assert_eq!(report.status(Check::TableAgreement), Status::Pass);
        assert_eq!(report.types_witnessed.get("---++++"), Some(&10));
    }

    #[test]
    fn support_without_value() {
        // C contains {4,5} but its difference coefficient is (2-2)(1-4/5) = 0.
        let a = WeightDatum::new(vec![int(1), int(1), int(1), rat(2, 5), rat(2, 5)]).unwrap();
        assert!(a
            .contracted_collection()
            .iter()
            .any(|c| c.members() == Subset::from_points(&[4, 5]).unwrap()));
        assert!(difference(&a).unwrap().is_zero());
        let report = verify_datum(&a, &SuiteOptions::default());
        assert!(report.all_passed());
        assert_eq!(report.status(Check::DifferenceEffective), Status::Pass);
    }

    #[test]
    fn chambers() {
        let info = symmetric_chamber(8, &rat(1, 2));
        assert_eq!(info.beta, rat(2, 3));
        assert_eq!(info.m, 4);
        assert_eq!(
            info.chamber,
            SymmetricChamber::Hassett {
                k: 2,
                epsilon_lower: rat(1, 3),
                epsilon_upper: rat(1, 2)
            }
        );
        assert_eq!(
            symmetric_chamber(8, &rat(1, 4)).chamber,
            SymmetricChamber::Git
        );
        assert_eq!(
            symmetric_chamber(8, &int(1)).chamber,
            SymmetricChamber::Unlisted
        );
    }

    #[test]
    fn descriptors() {
        let ModelDescriptor::Hassett(h) =
            model_descriptor(&WeightDatum::symmetric(5, int(1)).unwrap())
        else {
            panic!("interior datum");
        };
        assert!(h.collisions.is_empty());
        assert!(h.verified_ample);
        assert_eq!(h.total_curves, 10);

        let ModelDescriptor::Git(g) =
            model_descriptor(&WeightDatum::symmetric(4, rat(1, 2)).unwrap())
        else {
            panic!("boundary datum");
        };
        assert_eq!(g.walls.len(), 6);
        assert!(g.walls.iter().all(|w| w.len() == 2));
        assert!(!g.typical);
    }

    #[test]
    fn structured_cases_are_valid() {
        for n in 4..=9 {
            let cases = structured_cases(n);
            assert!(cases.iter().any(|d| d.regime() == Regime::Boundary));
            assert!(cases.iter().any(|d| d.regime() == Regime::Interior));
            assert!(cases.iter().all(|d| d.n() == n));
        }
    }
}
