//! Weight data `(a₁, …, aₙ)`, subset weights and the complement tie-break
//! that picks one representative out of every pair `{I, I^c}`.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{subset_pairs, GroundSet, Subset};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Which side of the total-weight threshold a datum sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// `Σaᵢ > 2`: the model is a weighted (Hassett) space.
    Interior,
    /// `Σaᵢ = 2`: the model is a GIT quotient of `(P¹)ⁿ`.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightDatum {
    ground: GroundSet,
    weights: Vec<Rational>,
    total: Rational,
    regime: Regime,
}

impl WeightDatum {
    /// Validates `0 < aᵢ ≤ 1`, `n ≥ 4` and `Σaᵢ ≥ 2`.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        let ground = GroundSet::new(weights.len())?;
        for (k, a) in weights.iter().enumerate() {
            if !a.is_positive() {
                return Err(Error::NonPositiveWeight {
                    index: k + 1,
                    value: a.clone(),
                });
            }
            if a > &Rational::one() {
                return Err(Error::WeightAboveOne {
                    index: k + 1,
                    value: a.clone(),
                });
            }
        }
        let total: Rational = weights.iter().sum();
        let regime = match total.cmp(&int(2)) {
            Ordering::Greater => Regime::Interior,
            Ordering::Equal => Regime::Boundary,
            Ordering::Less => return Err(Error::TotalBelowTwo { total }),
        };
        Ok(Self {
            ground,
            weights,
            total,
            regime,
        })
    }

    /// The datum `(α, …, α)` on `n` points.
    pub fn symmetric(n: usize, alpha: Rational) -> Result<Self> {
        Self::new(vec![alpha; n])
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `aᵢ` for a 1-based index.
    pub fn weight(&self, point: usize) -> &Rational {
        &self.weights[point - 1]
    }

    pub fn total(&self) -> &Rational {
        &self.total
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// The common value if every weight is equal.
    pub fn symmetric_value(&self) -> Option<&Rational> {
        let first = &self.weights[0];
        self.weights.iter().all(|a| a == first).then_some(first)
    }

    /// `w_I = Σ_{i∈I} aᵢ`.
    pub fn weight_of(&self, s: Subset) -> Rational {
        s.points()
            .filter(|&p| p <= self.n())
            .map(|p| &self.weights[p - 1])
            .fold(Rational::zero(), |acc, a| acc + a)
    }

    /// Picks the representative of `{s, s^c}`: the lighter side, then the
    /// smaller side, then the side containing point 1.
    pub fn canonicalize(&self, s: Subset) -> CanonicalSubset {
        let weight = self.weight_of(s);
        self.canonicalize_with_weight(s, weight)
    }

    pub(crate) fn canonicalize_with_weight(&self, s: Subset, weight: Rational) -> CanonicalSubset {
        let comp = self.ground.complement_of(s);
        let comp_weight = &self.total - &weight;
        let (size, comp_size) = (s.len(), comp.len());
        let keep = match weight.cmp(&comp_weight) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match size.cmp(&comp_size) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => s.contains(1),
            },
        };
        if keep {
            CanonicalSubset {
                members: s,
                weight,
                size,
            }
        } else {
            CanonicalSubset {
                members: comp,
                weight: comp_weight,
                size: comp_size,
            }
        }
    }

    /// Every representative `I` with `w_I ≤ 1`, ordered by bit pattern. These
    /// are the subsets whose points may collide on the weighted space.
    pub fn contracted_collection(&self) -> Vec<CanonicalSubset> {
        let mut out: Vec<_> = subset_pairs(self.ground)
            .map(|pair| self.canonicalize(pair.first))
            .filter(|c| c.weight <= Rational::one())
            .collect();
        out.sort_by_key(|c| c.members);
        out
    }

    /// Dense table of `w_I` indexed by `I.bits()`, of length `2ⁿ`.
    pub fn subset_weights(&self) -> Vec<Rational> {
        let size = 1usize << self.n();
        let mut table = Vec::with_capacity(size);
        table.push(Rational::zero());
        for bits in 1..size {
            let low = bits.trailing_zeros() as usize;
            let rest = &table[bits & (bits - 1)];
            table.push(rest + &self.weights[low]);
        }
        table
    }
}

/// The chosen representative of a pair `{I, I^c}` with its cached weight and
/// size. Identity is the member set alone.
#[derive(Debug, Clone)]
pub struct CanonicalSubset {
    members: Subset,
    weight: Rational,
    size: usize,
}

impl CanonicalSubset {
    pub fn members(&self) -> Subset {
        self.members
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

impl PartialEq for CanonicalSubset {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for CanonicalSubset {}

impl Hash for CanonicalSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for CanonicalSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}
