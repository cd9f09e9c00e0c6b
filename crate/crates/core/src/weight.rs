//! Scalar edge weights and extended distances.
//!
//! Every algorithm in the crate is generic over a [`Weight`] type. Floating
//! point weights (`f32`, `f64`) are the common case; unsigned integers give
//! exact arithmetic for tests and for inputs that are naturally integral.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_traits::{NumCast, ToPrimitive, Zero};

/// A non-negative edge weight.
pub trait Weight:
    Copy
    + Debug
    + Display
    + FromStr
    + PartialOrd
    + Zero
    + Add<Output = Self>
    + Mul<Output = Self>
    + NumCast
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Finite and `>= 0`.
    fn is_admissible(&self) -> bool;

    /// `factor` converted into the weight type. Stretch factors are small
    /// integers, so this never fails for the provided implementations.
    fn from_factor(factor: usize) -> Self {
        <Self as NumCast>::from(factor).expect("stretch factor representable in weight type")
    }

    /// Total order on admissible weights.
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("admissible weights are totally ordered")
    }
}

macro_rules! float_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            fn is_admissible(&self) -> bool {
                self.is_finite() && *self >= 0.0
            }
        }
    )*};
}

macro_rules! uint_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            fn is_admissible(&self) -> bool {
                true
            }
        }
    )*};
}

float_weight!(f32, f64);
uint_weight!(u32, u64);

/// A shortest-path length: finite, or the distinguished unreachable value.
///
/// The derived order places `Infinite` above every finite distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distance<W> {
    Finite(W),
    Infinite,
}

impl<W: Weight> Distance<W> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<W> {
        match self {
            Distance::Finite(w) => Some(w),
            Distance::Infinite => None,
        }
    }

    /// Strictly greater than the finite bound `bound`.
    pub fn exceeds(&self, bound: W) -> bool {
        match self {
            Distance::Finite(d) => d.total_cmp(&bound) == Ordering::Greater,
            Distance::Infinite => true,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Finite(d) => d.to_f64().unwrap_or(f64::INFINITY),
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl<W: Weight> PartialOrd for Distance<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Distance::Infinite, Distance::Infinite) => Ordering::Equal,
            (Distance::Infinite, _) => Ordering::Greater,
            (_, Distance::Infinite) => Ordering::Less,
            (Distance::Finite(a), Distance::Finite(b)) => a.total_cmp(b),
        })
    }
}

impl<W: Display> Display for Distance<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(w) => write!(f, "{w}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// The stretch bound `(2k - 1) * w`.
pub fn stretch_bound<W: Weight>(k: usize, w: W) -> W {
    W::from_factor(2 * k - 1) * w
}
