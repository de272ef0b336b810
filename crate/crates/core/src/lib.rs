//! Exact intersection theory on the moduli space of `n`-pointed stable
//! rational curves.
//!
//! The crate works entirely in the boundary-divisor basis and with the
//! F-curves (vital curves) indexed by partitions of the marked points into
//! four blocks. Everything is computed over exact rationals:
//!
//! - [`combinatorics`]: ground sets, bit-set subsets and 4-block partitions.
//! - [`weights`]: weight data, subset weights, complement canonicalization and
//!   the collection of subsets that a reduction morphism contracts.
//! - [`divisor`]: divisor classes, psi and canonical classes, the log canonical
//!   divisor `K + Σ aᵢψᵢ`, its pushforward to the weighted space, the pullback of
//!   that pushforward and the boundary-weight divisor.
//! - [`vital`]: pairing with F-curves, curve types and their closed-form
//!   intersection numbers.
//! - [`verifier`]: seeded corpora, property suites and model descriptors.

pub mod combinatorics;
pub mod divisor;
mod error;
pub mod rank;
pub mod rational;
pub mod verifier;
pub mod vital;
pub mod weights;

pub use combinatorics::{GroundSet, Partition4, Subset};
pub use divisor::{DivisorClass, HassettClass};
pub use error::{Error, Result};
pub use rational::Rational;
pub use vital::{CurveType, Symbol, TableRow, VitalCurve};
pub use weights::{CanonicalSubset, Regime, WeightDatum};
