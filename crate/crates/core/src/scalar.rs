//! Scalar abstraction for the rational side of the engine.
//!
//! Lattice coordinates are always integers. Weights, the Weyl vector and the
//! invariant form live in a field; any type implementing [`Scalar`] can be
//! used there. Exact types give exact multiplicities, `f64` gives a fast
//! approximate check.

use std::fmt::Debug;

use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub trait Scalar: Clone + Debug + PartialOrd + Signed + FromPrimitive + Send + Sync {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type represents small integers")
    }

    /// Largest magnitude treated as zero; zero for exact types.
    fn tolerance() -> Self {
        Self::zero()
    }

    /// The value as an exact integer, if it is one.
    fn to_integer(&self) -> Option<i64>;
}

impl Scalar for Ratio<i64> {
    fn to_integer(&self) -> Option<i64> {
        // Ratios are kept reduced, so an integer has denominator one.
        self.is_integer().then(|| *self.numer())
    }
}

impl Scalar for BigRational {
    fn to_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-6
    }

    fn to_integer(&self) -> Option<i64> {
        let r = self.round();
        ((self - r).abs() < 1e-6).then_some(r as i64)
    }
}
