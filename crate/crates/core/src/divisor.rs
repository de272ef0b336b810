//! Divisor classes in the boundary basis.
//!
//! A [`DivisorClass`] is a sparse vector with one coordinate per boundary
//! divisor `D_I`, that is per complementary pair `{I, I^c}` with both sides of
//! size at least 2. Pairs with a singleton side carry no coordinate: their
//! `D_I` is zero. Coordinates are keyed by the side containing point 1, so
//! classes built from different weight data can be added and compared.
//!
//! Equality here is equality of coefficient vectors. Equality of numerical
//! classes (modulo the linear relations among boundary divisors) is detected
//! by pairing against every F-curve, see [`crate::vital`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::{boundary_pairs, GroundSet, Subset};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::weights::{CanonicalSubset, Regime, WeightDatum};

#[derive(Clone, PartialEq, Eq)]
pub struct DivisorClass {
    ground: GroundSet,
    coeffs: BTreeMap<Subset, Rational>,
}

impl DivisorClass {
    pub fn zero(ground: GroundSet) -> Self {
        Self {
            ground,
            coeffs: BTreeMap::new(),
        }
    }

    /// `D_I` itself (zero if `{I, I^c}` has a singleton side).
    pub fn boundary(ground: GroundSet, s: Subset) -> Self {
        let mut d = Self::zero(ground);
        d.add_term(s, Rational::one());
        d
    }

    /// Builds a class by evaluating `coeff` on every boundary pair. The
    /// closure receives the side containing point 1.
    pub fn from_fn(ground: GroundSet, mut coeff: impl FnMut(Subset) -> Rational) -> Self {
        let mut d = Self::zero(ground);
        for pair in boundary_pairs(ground) {
            let c = coeff(pair.first);
            if !c.is_zero() {
                d.coeffs.insert(pair.first, c);
            }
        }
        d
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Adds `c · D_I`; a no-op for pairs without a boundary divisor.
    pub fn add_term(&mut self, s: Subset, c: Rational) {
        if !self.ground.is_boundary(s) {
            return;
        }
        let key = self.ground.pair_key(s);
        let entry = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Coefficient of `D_I`, looked up from either side of the pair.
    pub fn coefficient(&self, s: Subset) -> Rational {
        self.coefficient_ref(s)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn coefficient_ref(&self, s: Subset) -> Option<&Rational> {
        self.coeffs.get(&self.ground.pair_key(s))
    }

    /// Nonzero coordinates, keyed by the side containing point 1.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    /// Nonzero coordinates keyed by their weight-canonical representative,
    /// sorted by (size, members).
    pub fn terms_for(&self, datum: &WeightDatum) -> Vec<(CanonicalSubset, Rational)> {
        let mut out: Vec<_> = self
            .coeffs
            .iter()
            .map(|(k, v)| (datum.canonicalize(*k), v.clone()))
            .collect();
        out.sort_by(|(a, _), (b, _)| {
            (a.size(), a.members().to_points()).cmp(&(b.size(), b.members().to_points()))
        });
        out
    }

    pub fn support(&self) -> impl Iterator<Item = Subset> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.ground);
        }
        Self {
            ground: self.ground,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * factor)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(*k, v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    fn same_ground(&self, other: &Self) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch {
                left: self.ground.n(),
                right: other.ground.n(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coeffs.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass {
            ground: self.ground,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

/// Panics on ground-set mismatch; use [`DivisorClass::checked_add`] otherwise.
impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs)
            .expect("divisor classes over different ground sets")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs)
            .expect("divisor classes over different ground sets")
    }
}

/// A class on the weighted space, kept in the ambient boundary coordinates
/// with every contracted coordinate zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HassettClass {
    class: DivisorClass,
    contracted: Vec<CanonicalSubset>,
}

impl HassettClass {
    pub fn class(&self) -> &DivisorClass {
        &self.class
    }

    /// The contracted collection `{I : w_I ≤ 1}` this class is relative to.
    pub fn contracted(&self) -> &[CanonicalSubset] {
        &self.contracted
    }

    pub fn into_class(self) -> DivisorClass {
        self.class
    }
}

// Coefficient formulas, in terms of s = |I| and the weights of I and I^c.

fn canonical_coefficient(n: usize, s: usize) -> Rational {
    rat((s * (n - s)) as i64, (n - 1) as i64) - int(2)
}

fn psi_denominator(n: usize) -> i64 {
    ((n - 1) * (n - 2)) as i64
}

/// The psi coefficient when the marked point lies in a side of size `s`.
fn psi_coefficient_inside(n: usize, s: usize) -> Rational {
    rat(((n - s) * (n - s - 1)) as i64, psi_denominator(n))
}

fn delta_coefficient(n: usize, s: usize, w: &Rational, w_comp: &Rational) -> Rational {
    canonical_coefficient(n, s)
        + psi_coefficient_inside(n, s) * w
        + psi_coefficient_inside(n, n - s) * w_comp
}

/// Coefficient of a contracted `D_I` in the pullback of the pushforward,
/// in closed form.
fn contracted_coefficient(n: usize, s: usize, w: &Rational, w_comp: &Rational) -> Rational {
    let (ni, si) = (n as i64, s as i64);
    let choose2 = si * (si - 1) / 2;
    int(choose2) * (rat(2 * (ni - 2), ni - 1) - int(2))
        + rat((ni - 3) * (si - 1), ni - 1) * w
        + rat((si - 1) * (si - 2), psi_denominator(n)) * w
        + rat(si * (si - 1), psi_denominator(n)) * w_comp
}

/// The same coefficient as a sum over the 2-element subsets `J ⊂ I`, each
/// contributing the `|J| = 2` coefficient of `K + Σ aᵢψᵢ`.
fn contracted_coefficient_by_pairs(
    n: usize,
    members: Subset,
    weights: &[Rational],
    total: &Rational,
) -> Rational {
    let (ni, den) = (n as i64, psi_denominator(n));
    let base = rat(2 * (ni - 2), ni - 1) - int(2);
    let points = members.to_points();
    let mut sum = Rational::zero();
    for (x, &i) in points.iter().enumerate() {
        for &j in &points[x + 1..] {
            let w_j = &weights[i - 1] + &weights[j - 1];
            let w_jc = total - &w_j;
            sum += &base + rat((ni - 2) * (ni - 3), den) * w_j + rat(2, den) * w_jc;
        }
    }
    sum
}

fn require(datum: &WeightDatum, regime: Regime) -> Result<()> {
    match (regime, datum.regime()) {
        (Regime::Interior, Regime::Boundary) => Err(Error::RequiresInterior),
        (Regime::Boundary, Regime::Interior) => Err(Error::RequiresBoundary),
        _ => Ok(()),
    }
}

/// `ψᵢ` expanded in boundary divisors.
pub fn psi_class(point: usize, ground: GroundSet) -> Result<DivisorClass> {
    let n = ground.n();
    if point == 0 || point > n {
        return Err(Error::PointOutOfRange { index: point, n });
    }
    Ok(DivisorClass::from_fn(ground, |key| {
        let side = if key.contains(point) {
            key
        } else {
            ground.complement_of(key)
        };
        psi_coefficient_inside(n, side.len())
    }))
}

/// The canonical class `K`.
pub fn canonical_class(ground: GroundSet) -> DivisorClass {
    let n = ground.n();
    DivisorClass::from_fn(ground, |key| canonical_coefficient(n, key.len()))
}

/// The total boundary `D = Σ D_I`.
pub fn total_boundary(ground: GroundSet) -> DivisorClass {
    DivisorClass::from_fn(ground, |_| Rational::one())
}

/// The total psi class `ψ = Σᵢ ψᵢ`, with coefficient `|I|(n-|I|)/(n-1)`.
pub fn total_psi(ground: GroundSet) -> DivisorClass {
    let n = ground.n();
    DivisorClass::from_fn(ground, |key| {
        let s = key.len();
        rat((s * (n - s)) as i64, (n - 1) as i64)
    })
}

/// `K + Σ aᵢψᵢ` in boundary coordinates.
pub fn delta(datum: &WeightDatum) -> DivisorClass {
    let n = datum.n();
    let w = datum.subset_weights();
    let full = datum.ground().full().bits() as usize;
    DivisorClass::from_fn(datum.ground(), |key| {
        let bits = key.bits() as usize;
        delta_coefficient(n, key.len(), &w[bits], &w[full ^ bits])
    })
}

/// `Σᵢ aᵢψᵢ + K`, assembled term by term from [`psi_class`] and
/// [`canonical_class`].
pub fn delta_from_psi(datum: &WeightDatum) -> DivisorClass {
    let ground = datum.ground();
    let mut out = canonical_class(ground);
    for (k, a) in datum.weights().iter().enumerate() {
        let psi = psi_class(k + 1, ground).expect("index in range");
        out = &out + &psi.scale(a);
    }
    out
}

/// Pushforward along the reduction morphism: the coordinates of `class` on
/// contracted subsets (`w_I ≤ 1`) are dropped.
pub fn pushforward(class: &DivisorClass, datum: &WeightDatum) -> Result<HassettClass> {
    require(datum, Regime::Interior)?;
    if class.ground() != datum.ground() {
        return Err(Error::GroundMismatch {
            left: class.ground().n(),
            right: datum.n(),
        });
    }
    let contracted = datum.contracted_collection();
    let mut out = class.clone();
    for c in &contracted {
        out.coeffs.remove(&datum.ground().pair_key(c.members()));
    }
    Ok(HassettClass {
        class: out,
        contracted,
    })
}

/// The pullback of the pushforward of `K + Σ aᵢψᵢ`, in closed form.
pub fn pullback_pushforward(datum: &WeightDatum) -> Result<DivisorClass> {
    require(datum, Regime::Interior)?;
    Ok(pullback_pushforward_with(datum, |rep, w, w_comp| {
        contracted_coefficient(datum.n(), rep.len(), w, w_comp)
    }))
}

/// [`pullback_pushforward`] with the contracted coordinates expanded as sums
/// over 2-subsets instead of the collapsed closed form.
pub fn pullback_pushforward_by_pairs(datum: &WeightDatum) -> Result<DivisorClass> {
    require(datum, Regime::Interior)?;
    Ok(pullback_pushforward_with(datum, |rep, _, _| {
        contracted_coefficient_by_pairs(datum.n(), rep, datum.weights(), datum.total())
    }))
}

fn pullback_pushforward_with(
    datum: &WeightDatum,
    contracted: impl Fn(Subset, &Rational, &Rational) -> Rational,
) -> DivisorClass {
    let n = datum.n();
    let w = datum.subset_weights();
    let ground = datum.ground();
    let full = ground.full().bits() as usize;
    let one = Rational::one();
    DivisorClass::from_fn(ground, |key| {
        let bits = key.bits() as usize;
        let rep = datum.canonicalize_with_weight(key, w[bits].clone());
        let (w_rep, w_comp) = (rep.weight(), &w[full ^ rep.members().bits() as usize]);
        if w_rep <= &one {
            contracted(rep.members(), w_rep, w_comp)
        } else {
            delta_coefficient(n, rep.size(), w_rep, w_comp)
        }
    })
}

/// `Σ_{I∈C} (|I| - 2)(1 - w_I) D_I`: the closed form of `K + Σ aᵢψᵢ` minus
/// the pullback of its pushforward. Defined for both regimes; in the
/// boundary regime every representative has `w_I ≤ 1`.
pub fn exceptional_part(datum: &WeightDatum) -> DivisorClass {
    let w = datum.subset_weights();
    let one = Rational::one();
    DivisorClass::from_fn(datum.ground(), |key| {
        let rep = datum.canonicalize_with_weight(key, w[key.bits() as usize].clone());
        if rep.weight() <= &one {
            int(rep.size() as i64 - 2) * (&one - rep.weight())
        } else {
            Rational::zero()
        }
    })
}

/// The difference `K + Σ aᵢψᵢ - φ*φ_*(K + Σ aᵢψᵢ)` in closed form.
pub fn difference(datum: &WeightDatum) -> Result<DivisorClass> {
    require(datum, Regime::Interior)?;
    Ok(exceptional_part(datum))
}

/// The boundary-regime divisor
/// `(n-4) Σ_I (-C(|I|,2)·2/((n-1)(n-2)) + (|I|-1)/(n-2)·w_I) D_I`, with `I`
/// the weight-canonical representative. Zero when `n = 4`.
pub fn delta_prime(datum: &WeightDatum) -> Result<DivisorClass> {
    require(datum, Regime::Boundary)?;
    let n = datum.n() as i64;
    let w = datum.subset_weights();
    let factor = int(n - 4);
    Ok(DivisorClass::from_fn(datum.ground(), |key| {
        let rep = datum.canonicalize_with_weight(key, w[key.bits() as usize].clone());
        let s = rep.size() as i64;
        let inner = -rat(s * (s - 1), (n - 1) * (n - 2)) + rat(s - 1, n - 2) * rep.weight();
        &factor * inner
    }))
}
