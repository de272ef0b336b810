//! F-curves ("vital curves") and their intersection numbers.
//!
//! The F-curve attached to a partition `S₁ ⊔ S₂ ⊔ S₃ ⊔ S₄ = [n]` meets a
//! boundary divisor `D_I` with multiplicity
//!
//! - `-1` if `I` or `I^c` is one of the blocks,
//! - `+1` if `I` or `I^c` is a union of exactly two blocks,
//! - `0` otherwise.
//!
//! So a curve sees at most seven boundary coordinates of a class, and pairing
//! a class with all `S(n, 4)` curves is linear in the number of curves.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::{
    partition4_prefixes, partitions4, GroundSet, Partition4, Partitions4, Subset,
};
use crate::divisor::DivisorClass;
use crate::error::{Error, Result};
use crate::rank::rank_over_rationals;
use crate::rational::{int, Rational};
use crate::weights::{Regime, WeightDatum};

/// An F-curve with its blocks ordered by weight for a fixed weight datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VitalCurve {
    partition: Partition4,
    n: usize,
    blocks: [Subset; 4],
    sizes: [usize; 4],
    weights: [Rational; 4],
    total: Rational,
}

impl VitalCurve {
    /// Orders the blocks by weight, breaking ties by smallest member.
    pub fn new(partition: Partition4, datum: &WeightDatum) -> Result<Self> {
        if partition.ground_bits() != datum.ground().full().bits() {
            return Err(Error::GroundMismatch {
                left: partition.ground_bits().count_ones() as usize,
                right: datum.n(),
            });
        }
        let weights = partition.blocks().map(|b| datum.weight_of(b));
        Ok(Self::from_parts(
            partition,
            datum.n(),
            weights,
            datum.total().clone(),
        ))
    }

    /// Same as [`VitalCurve::new`] with block weights read from a dense
    /// table (see [`WeightDatum::subset_weights`]).
    pub fn with_weight_table(
        partition: Partition4,
        n: usize,
        table: &[Rational],
        total: &Rational,
    ) -> Self {
        let weights = partition.blocks().map(|b| table[b.bits() as usize].clone());
        Self::from_parts(partition, n, weights, total.clone())
    }

    fn from_parts(
        partition: Partition4,
        n: usize,
        weights: [Rational; 4],
        total: Rational,
    ) -> Self {
        let blocks = *partition.blocks();
        // Blocks arrive sorted by minimum element, so a stable sort by weight
        // breaks ties by minimum element.
        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&x, &y| weights[x].cmp(&weights[y]));
        Self {
            partition,
            n,
            blocks: order.map(|k| blocks[k]),
            sizes: order.map(|k| blocks[k].len()),
            weights: order.map(|k| weights[k].clone()),
            total,
        }
    }

    pub fn partition(&self) -> &Partition4 {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks in weight order `w₁ ≤ w₂ ≤ w₃ ≤ w₄`.
    pub fn blocks(&self) -> &[Subset; 4] {
        &self.blocks
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn weights(&self) -> &[Rational; 4] {
        &self.weights
    }

    pub fn total(&self) -> &Rational {
        &self.total
    }

    /// Every block ordering compatible with `w₁ ≤ w₂ ≤ w₃ ≤ w₄`, i.e. all
    /// permutations within groups of equal weight. The first entry is `self`.
    pub fn admissible_orderings(&self) -> Vec<VitalCurve> {
        let mut out = Vec::new();
        for perm in PERMUTATIONS_4 {
            let sorted = perm
                .windows(2)
                .all(|w| self.weights[w[0]] <= self.weights[w[1]]);
            if sorted {
                out.push(Self {
                    partition: self.partition,
                    n: self.n,
                    blocks: perm.map(|k| self.blocks[k]),
                    sizes: perm.map(|k| self.sizes[k]),
                    weights: perm.map(|k| self.weights[k].clone()),
                    total: self.total.clone(),
                });
            }
        }
        out
    }

    /// `D_I · C` for this curve.
    pub fn pair_boundary(&self, s: Subset) -> i8 {
        pair_boundary(s, &self.partition, ground_of(self.n))
    }

    /// `d · C`, reading only the seven coordinates the curve can see.
    pub fn pair(&self, d: &DivisorClass) -> Result<Rational> {
        pair(d, &self.partition, ground_of(self.n))
    }
}

fn ground_of(n: usize) -> GroundSet {
    GroundSet::new(n).expect("curve built over a valid ground set")
}

const PERMUTATIONS_4: [[usize; 4]; 24] = [
    [0, 1, 2, 3],
    [0, 1, 3, 2],
    [0, 2, 1, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [0, 3, 2, 1],
    [1, 0, 2, 3],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 2, 3, 0],
    [1, 3, 0, 2],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 0, 3, 1],
    [2, 1, 0, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [2, 3, 1, 0],
    [3, 0, 1, 2],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 1, 2, 0],
    [3, 2, 0, 1],
    [3, 2, 1, 0],
];

/// `D_I · C(S₁, S₂, S₃, S₄) ∈ {-1, 0, 1}`.
pub fn pair_boundary(s: Subset, partition: &Partition4, ground: GroundSet) -> i8 {
    if !ground.is_boundary(s) {
        return 0;
    }
    let key = ground.pair_key(s);
    let blocks = partition.blocks();
    if blocks.iter().any(|&b| ground.pair_key(b) == key) {
        return -1;
    }
    if (1..4).any(|j| ground.pair_key(blocks[0].union(blocks[j])) == key) {
        return 1;
    }
    0
}

/// `d · C`: minus the coordinates of the four blocks plus the coordinates of
/// the three two-block unions.
pub fn pair(d: &DivisorClass, partition: &Partition4, ground: GroundSet) -> Result<Rational> {
    if d.ground() != ground {
        return Err(Error::GroundMismatch {
            left: d.ground().n(),
            right: ground.n(),
        });
    }
    let blocks = partition.blocks();
    let mut sum = Rational::zero();
    for b in blocks {
        if let Some(c) = d.coefficient_ref(*b) {
            sum -= c;
        }
    }
    for j in 1..4 {
        if let Some(c) = d.coefficient_ref(blocks[0].union(blocks[j])) {
            sum += c;
        }
    }
    Ok(sum)
}

/// A curve is contracted by the reduction morphism iff the three lightest
/// blocks weigh at most 1 together (`w - w₄ ≤ 1`).
pub fn is_contracted(c: &VitalCurve) -> bool {
    &c.total - &c.weights[3] <= Rational::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `x ≤ 1`
    Minus,
    /// `1 < x < w - 1`
    Plus,
    /// `x ≥ w - 1`
    Star,
}

impl Symbol {
    fn of(x: &Rational, total: &Rational) -> Self {
        if x <= &Rational::one() {
            Symbol::Minus
        } else if x >= &(total - Rational::one()) {
            Symbol::Star
        } else {
            Symbol::Plus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Minus => '-',
            Symbol::Plus => '+',
            Symbol::Star => '*',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            '-' => Some(Symbol::Minus),
            '+' => Some(Symbol::Plus),
            '*' => Some(Symbol::Star),
            _ => None,
        }
    }
}

/// The symbols `(s₁, s₂, s₃, s₄, s₁₂, s₁₃, s₁₄)` of a curve: each block
/// weight `wᵢ` and each sum `w₁ + wⱼ` compared against 1 and `w - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveType(pub [Symbol; 7]);

impl CurveType {
    pub fn symbols(&self) -> &[Symbol; 7] {
        &self.0
    }

    /// The seven symbols without separators, e.g. `---++++`.
    pub fn compact(&self) -> String {
        self.0.iter().map(|s| s.as_char()).collect()
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s.as_char())?;
        }
        f.write_str(")")
    }
}

impl FromStr for CurveType {
    type Err = String;

    /// Accepts `(-,-,-,+,+,+,+)` or the compact `---++++`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let symbols: Vec<Symbol> = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .map(|c| Symbol::from_char(c).ok_or_else(|| format!("bad symbol {c:?} in {s:?}")))
            .collect::<std::result::Result<_, _>>()?;
        let symbols: [Symbol; 7] = symbols
            .try_into()
            .map_err(|_| format!("expected 7 symbols in {s:?}"))?;
        Ok(CurveType(symbols))
    }
}

/// Classifies a curve that the reduction morphism does not contract.
pub fn classify(c: &VitalCurve, datum: &WeightDatum) -> Result<CurveType> {
    if datum.regime() != Regime::Interior {
        return Err(Error::RequiresInterior);
    }
    if is_contracted(c) {
        return Err(Error::ContractedCurve);
    }
    Ok(symbols_of(c))
}

fn symbols_of(c: &VitalCurve) -> CurveType {
    let w = &c.weights;
    let t = &c.total;
    CurveType([
        Symbol::of(&w[0], t),
        Symbol::of(&w[1], t),
        Symbol::of(&w[2], t),
        Symbol::of(&w[3], t),
        Symbol::of(&(&w[0] + &w[1]), t),
        Symbol::of(&(&w[0] + &w[2]), t),
        Symbol::of(&(&w[0] + &w[3]), t),
    ])
}

/// One row of the table of intersection numbers of non-contracted curves
/// with the pullback of the pushforward of `K + Σ aᵢψᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableRow(u8);

const ROW_TYPES: [&str; 13] = [
    "-------", "------+", "-----++", "----+++", "---+--+", "---+-++", "---++++", "--++-++",
    "--+++++", "-++++++", "+++++++", "------*", "---+--*",
];

impl TableRow {
    pub fn all() -> impl Iterator<Item = TableRow> {
        (0..ROW_TYPES.len() as u8).map(TableRow)
    }

    pub fn for_type(t: &CurveType) -> Option<TableRow> {
        let compact = t.compact();
        ROW_TYPES
            .iter()
            .position(|r| *r == compact)
            .map(|k| TableRow(k as u8))
    }

    pub fn curve_type(self) -> CurveType {
        ROW_TYPES[self.0 as usize]
            .parse()
            .expect("row types are well formed")
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The summands of this row's formula, in the order written, evaluated
    /// on the curve's block sizes `Tⱼ` and weights `wⱼ`.
    pub fn terms(self, c: &VitalCurve) -> Vec<Rational> {
        let one = Rational::one();
        let n = int(c.n as i64);
        let t = c.sizes.map(|s| int(s as i64));
        let [w1, w2, w3, w4] = &c.weights;
        let w = &c.total;
        let tm1 = |k: usize| &t[k] - &one;
        let light3 = w1 + w2 + w3 - &one;
        let w_minus_2 = w - int(2);
        match self.0 {
            0 => vec![(&n - int(4)) * w1, &t[0] * &w_minus_2],
            1 => vec![
                tm1(0) * &light3,
                (&t[1] + &t[2] - int(2)) * w1,
                tm1(3) * (&one - w4),
                w_minus_2,
            ],
            2 => vec![
                tm1(1) * w1,
                tm1(0) * w2,
                tm1(2) * (&one - w3),
                tm1(3) * (&one - w4),
                w_minus_2,
            ],
            3 => vec![
                tm1(0) * (&one - w1),
                tm1(1) * (&one - w2),
                tm1(2) * (&one - w3),
                tm1(3) * (&one - w4),
                w_minus_2,
            ],
            4 => vec![(&t[1] + &t[2] - int(2)) * w1, &t[0] * &light3],
            5 => vec![tm1(1) * w1, tm1(0) * w2, tm1(2) * (&one - w3), light3],
            6 => vec![
                tm1(0) * (&one - w1),
                tm1(1) * (&one - w2),
                tm1(2) * (&one - w3),
                light3,
            ],
            7 => vec![&t[1] * w1, &t[0] * w2],
            8 => vec![
                tm1(0) * (&one - w1),
                tm1(1) * (&one - w2),
                w1.clone(),
                w2.clone(),
            ],
            9 => vec![tm1(0) * (&one - w1), w1.clone(), one.clone()],
            10 => vec![int(2)],
            11 => vec![
                (&t[0] + &t[1] + &t[2] - int(3)) * &light3,
                tm1(3) * (&one - w4),
                w_minus_2,
            ],
            12 => vec![(&t[0] + &t[1] + &t[2] - int(2)) * &light3],
            _ => unreachable!("TableRow index out of range"),
        }
    }

    pub fn value(self, c: &VitalCurve) -> Rational {
        self.terms(c).into_iter().sum()
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.curve_type())
    }
}

/// The table's closed-form intersection number for a curve of type `t`.
pub fn table_value(t: &CurveType, c: &VitalCurve) -> Result<Rational> {
    TableRow::for_type(t)
        .map(|row| row.value(c))
        .ok_or_else(|| Error::UnlistedType(t.to_string()))
}

/// The boundary-regime piecewise intersection number with the divisor of
/// [`crate::divisor::delta_prime`].
pub fn delta_prime_pairing(c: &VitalCurve, datum: &WeightDatum) -> Result<Rational> {
    if datum.regime() != Regime::Boundary {
        return Err(Error::RequiresBoundary);
    }
    let one = Rational::one();
    let [w1, _, _, w4] = &c.weights;
    let factor = int(c.n as i64 - 4);
    Ok(if w4 >= &one {
        Rational::zero()
    } else if w1 + w4 >= one {
        factor * (&one - w4)
    } else {
        factor * w1
    })
}

/// A curve together with its contraction status and, when not contracted in
/// the interior regime, its type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRecord {
    pub curve: VitalCurve,
    pub contracted: bool,
    pub curve_type: Option<CurveType>,
}

impl CurveRecord {
    pub fn new(curve: VitalCurve, datum: &WeightDatum) -> Self {
        let interior = datum.regime() == Regime::Interior;
        let contracted = interior && is_contracted(&curve);
        let curve_type = (interior && !contracted).then(|| symbols_of(&curve));
        Self {
            curve,
            contracted,
            curve_type,
        }
    }
}

/// Every F-curve for `datum`, in partition enumeration order. In the
/// boundary regime no curve is marked contracted and none is typed.
pub fn enumerate_curves(datum: &WeightDatum) -> impl Iterator<Item = CurveRecord> + '_ {
    let table = datum.subset_weights();
    let n = datum.n();
    partitions4(datum.ground()).map(move |p| {
        CurveRecord::new(
            VitalCurve::with_weight_table(p, n, &table, datum.total()),
            datum,
        )
    })
}

/// Splits the partition stream into contiguous chunks, applies `f` to each
/// chunk on the current rayon pool and returns the results in stream order.
pub fn map_partition_chunks<R, F>(ground: GroundSet, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Partitions4) -> R + Sync,
{
    let n = ground.n();
    let mut depth = 1;
    while depth < n && partition4_prefixes(ground, depth).len() < 256 {
        depth += 1;
    }
    partition4_prefixes(ground, depth)
        .par_iter()
        .map(|prefix| f(Partitions4::with_prefix(ground, prefix).expect("enumerated prefix")))
        .collect()
}

/// Rows: boundary pairs in [`crate::combinatorics::boundary_pairs`] order.
/// Columns: partitions in enumeration order.
pub fn pairing_matrix(ground: GroundSet) -> Vec<Vec<i64>> {
    let parts: Vec<Partition4> = partitions4(ground).collect();
    crate::combinatorics::boundary_pairs(ground)
        .map(|pair| {
            parts
                .iter()
                .map(|p| pair_boundary(pair.first, p, ground) as i64)
                .collect()
        })
        .collect()
}

/// Rank of the boundary-divisor × F-curve intersection matrix.
pub fn picard_rank(ground: GroundSet) -> usize {
    rank_over_rationals(&pairing_matrix(ground))
}

/// `2^(n-1) - C(n, 2) - 1`, the Picard number of the moduli space.
pub fn expected_picard_rank(n: usize) -> usize {
    (1usize << (n - 1)) - n * (n - 1) / 2 - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{delta, delta_prime, pullback_pushforward, total_boundary};
    use crate::rational::rat;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn s(points: &[usize]) -> Subset {
        Subset::from_points(points).unwrap()
    }

    fn part(n: usize, blocks: [&[usize]; 4]) -> Partition4 {
        Partition4::new(g(n), blocks.map(s)).unwrap()
    }

    fn datum(w: &[(i64, i64)]) -> WeightDatum {
        WeightDatum::new(w.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    fn ones(n: usize) -> WeightDatum {
        WeightDatum::symmetric(n, int(1)).unwrap()
    }

    #[test]
    fn pair_boundary_examples() {
        let c = part(5, [&[1], &[2], &[3], &[4, 5]]);
        assert_eq!(pair_boundary(s(&[4, 5]), &c, g(5)), -1);
        assert_eq!(pair_boundary(s(&[1, 2, 3]), &c, g(5)), -1);
        assert_eq!(pair_boundary(s(&[1, 2]), &c, g(5)), 1);
        assert_eq!(pair_boundary(s(&[3, 4, 5]), &c, g(5)), 1);
        assert_eq!(pair_boundary(s(&[1, 4]), &c, g(5)), 0);
        assert_eq!(pair_boundary(s(&[1]), &c, g(5)), 0);
    }

    #[test]
    fn pair_examples() {
        let c = part(5, [&[1], &[2], &[3], &[4, 5]]);
        assert_eq!(pair(&DivisorClass::zero(g(5)), &c, g(5)).unwrap(), int(0));
        // Three two-block unions of size 2, one block of size 2.
        assert_eq!(pair(&total_boundary(g(5)), &c, g(5)).unwrap(), int(2));
        assert_eq!(pair(&delta(&ones(5)), &c, g(5)).unwrap(), int(2));
        assert!(pair(&DivisorClass::zero(g(6)), &c, g(5)).is_err());
    }

    #[test]
    fn contraction_examples() {
        for r in enumerate_curves(&ones(5)) {
            assert!(!r.contracted);
        }
        let a = datum(&[(1, 1), (1, 1), (9, 10), (1, 10), (1, 10)]);
        let c = VitalCurve::new(part(5, [&[3], &[4], &[5], &[1, 2]]), &a).unwrap();
        assert!(!is_contracted(&c));
        let c = VitalCurve::new(part(5, [&[1], &[2], &[3], &[4, 5]]), &a).unwrap();
        assert!(!is_contracted(&c));
        let b = datum(&[(1, 1), (1, 1), (1, 1), (1, 10), (1, 10), (1, 10)]);
        let c = VitalCurve::new(part(6, [&[4], &[5], &[6], &[1, 2, 3]]), &b).unwrap();
        assert!(is_contracted(&c));
        assert_eq!(classify(&c, &b), Err(Error::ContractedCurve));
    }

    #[test]
    fn classify_examples() {
        let eight = ones(8);
        let c = VitalCurve::new(part(8, [&[1, 2], &[3, 4], &[5, 6], &[7, 8]]), &eight).unwrap();
        assert_eq!(classify(&c, &eight).unwrap().to_string(), "(+,+,+,+,+,+,+)");

        let a = datum(&[(1, 10), (9, 10), (9, 10), (9, 20), (9, 20)]);
        let c = VitalCurve::new(part(5, [&[1], &[2], &[3], &[4, 5]]), &a).unwrap();
        assert_eq!(c.blocks(), &[s(&[1]), s(&[2]), s(&[3]), s(&[4, 5])]);
        let t = classify(&c, &a).unwrap();
        assert_eq!(t.to_string(), "(-,-,-,-,-,-,-)");
        assert_eq!(table_value(&t, &c).unwrap(), rat(9, 10));
        assert_eq!(
            c.pair(&pullback_pushforward(&a).unwrap()).unwrap(),
            rat(9, 10)
        );

        let five = ones(5);
        let c = VitalCurve::new(part(5, [&[1], &[2], &[3], &[4, 5]]), &five).unwrap();
        let t = classify(&c, &five).unwrap();
        assert_eq!(t.to_string(), "(-,-,-,+,+,+,+)");
        assert_eq!(table_value(&t, &c).unwrap(), int(2));

        let boundary = WeightDatum::symmetric(4, rat(1, 2)).unwrap();
        let c = VitalCurve::new(part(4, [&[1], &[2], &[3], &[4]]), &boundary).unwrap();
        assert_eq!(classify(&c, &boundary), Err(Error::RequiresInterior));
    }

    #[test]
    fn unlisted_type_is_an_error() {
        let c = VitalCurve::new(part(5, [&[1], &[2], &[3], &[4, 5]]), &ones(5)).unwrap();
        let t: CurveType = "(-,-,-,*,-,-,*)".parse().unwrap();
        assert_eq!(
            table_value(&t, &c),
            Err(Error::UnlistedType("(-,-,-,*,-,-,*)".into()))
        );
    }

    #[test]
    fn row_two_is_constant() {
        let a = datum(&[
            (1, 1),
            (2, 3),
            (1, 2),
            (3, 4),
            (5, 6),
            (1, 1),
            (2, 3),
            (1, 2),
        ]);
        let c = VitalCurve::new(part(8, [&[1, 2], &[3, 4], &[5, 6], &[7, 8]]), &a).unwrap();
        let t: CurveType = "+++++++".parse().unwrap();
        assert_eq!(table_value(&t, &c).unwrap(), int(2));
    }

    #[test]
    fn curve_type_parsing() {
        let t: CurveType = "(-,-,-,+,-,-,*)".parse().unwrap();
        assert_eq!(t.compact(), "---+--*");
        assert_eq!(TableRow::for_type(&t).unwrap().index(), 12);
        assert!("(-,-,-)".parse::<CurveType>().is_err());
        assert!("-------x".parse::<CurveType>().is_err());
        assert_eq!(TableRow::all().count(), 13);
        for row in TableRow::all() {
            assert_eq!(TableRow::for_type(&row.curve_type()), Some(row));
        }
    }

    #[test]
    fn delta_prime_pairing_examples() {
        let six = WeightDatum::symmetric(6, rat(1, 3)).unwrap();
        let dp = delta_prime(&six).unwrap();
        let c = VitalCurve::new(part(6, [&[1], &[2], &[3], &[4, 5, 6]]), &six).unwrap();
        assert_eq!(delta_prime_pairing(&c, &six).unwrap(), int(0));
        assert_eq!(c.pair(&dp).unwrap(), int(0));
        let c = VitalCurve::new(part(6, [&[1], &[2], &[3, 4], &[5, 6]]), &six).unwrap();
        assert_eq!(delta_prime_pairing(&c, &six).unwrap(), rat(2, 3));
        assert_eq!(c.pair(&dp).unwrap(), rat(2, 3));
        assert_eq!(
            delta_prime_pairing(&c, &ones(6)),
            Err(Error::RequiresBoundary)
        );
    }

    #[test]
    fn enumeration_examples() {
        let records: Vec<_> = enumerate_curves(&ones(5)).collect();
        assert_eq!(records.len(), 10);
        assert!(records
            .iter()
            .all(|r| !r.contracted && r.curve_type.is_some()));

        let b = datum(&[(1, 1), (1, 1), (1, 1), (1, 10), (1, 10), (1, 10)]);
        let records: Vec<_> = enumerate_curves(&b).collect();
        assert_eq!(records.len(), 65);
        for r in &records {
            let heavy = &r.curve.weights()[3];
            assert_eq!(r.contracted, b.total() - heavy <= int(1));
            assert_eq!(r.contracted, r.curve_type.is_none());
        }
    }

    #[test]
    fn tied_blocks_sort_by_minimum() {
        let a = ones(6);
        let c = VitalCurve::new(part(6, [&[1, 4], &[2], &[3], &[5, 6]]), &a).unwrap();
        assert_eq!(c.blocks(), &[s(&[2]), s(&[3]), s(&[1, 4]), s(&[5, 6])]);
        assert_eq!(c.admissible_orderings().len(), 4);
        assert_eq!(c.admissible_orderings()[0], c);
    }

    #[test]
    fn picard_rank_small() {
        assert_eq!(expected_picard_rank(4), 1);
        assert_eq!(picard_rank(g(4)), 1);
        assert_eq!(picard_rank(g(5)), 5);
    }

    #[test]
    fn chunked_map_preserves_order() {
        let whole: Vec<Partition4> = partitions4(g(7)).collect();
        let chunked: Vec<Partition4> = map_partition_chunks(g(7), |it| it.collect::<Vec<_>>())
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(whole, chunked);
    }
}
