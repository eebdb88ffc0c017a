//! Exact combinatorics of Mirković–Vilonen polytopes under Dynkin diagram
//! folding.
//!
//! The crate builds root data and Weyl groups of finite type, transports
//! Lusztig data along braid moves, recovers MV polytopes as vertex maps,
//! folds σ-invariant polytopes of a simply-laced group onto polytopes of the
//! folded group, and checks the twining character identity by counting.
//!
//! Lattice coordinates are integers throughout. The rational side (weights,
//! the Weyl vector, the invariant form used by Freudenthal's recursion) is
//! generic over [`Scalar`]; the aliases below fix the usual choices.

pub mod characters;
pub mod error;
pub mod folding;
pub mod lusztig;
pub mod polytope;
pub mod root_datum;
pub mod scalar;
pub mod weyl;

pub use characters::{CharacterSystem, FormalCharacter, TwiningReport};
pub use error::{Error, Result};
pub use folding::{FoldedSystem, FoldingData, LiftConvention};
pub use lusztig::LusztigDatum;
pub use polytope::MVPolytope;
pub use root_datum::{CartanType, Coweight, Family, RootDatum, WeightVector};
pub use scalar::Scalar;
pub use weyl::{BraidMove, ReducedWord, WeylElement, WeylGroup};

/// Exact rationals with machine-word numerator and denominator.
pub type Rational = num_rational::Ratio<i64>;
/// Arbitrary-precision rationals.
pub type BigRational = num_rational::BigRational;

/// Weights with exact rational coordinates.
pub type Weight = WeightVector<Rational>;
/// Character computations in exact arithmetic.
pub type ExactCharacters = CharacterSystem<Rational>;
/// Character computations in arbitrary-precision arithmetic.
pub type BigCharacters = CharacterSystem<BigRational>;
/// Character computations in floating point (approximate cross-checks only).
pub type FloatCharacters = CharacterSystem<f64>;
