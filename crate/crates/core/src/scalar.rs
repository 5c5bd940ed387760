//! Exact scalar abstraction.
//!
//! Every computation in this crate is carried out over an exact ordered
//! field. [`Scalar`] captures the operations the algorithms need on top of
//! the `num-traits` hierarchy: integer embedding, numerator/denominator
//! access (to canonicalize rays), and floor/ceiling. It is implemented for
//! every [`Ratio<T>`] over a signed integer type, so callers can pick
//! `Ratio<i64>` for speed on small inputs or [`BigRational`] when
//! intermediate values may grow.
//!
//! Floating-point types are deliberately not supported: equality of
//! jumping numbers is a semantic test.
//!
//! [`BigRational`]: num_rational::BigRational

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Num + Signed + FromStr + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// Numerator as an integer-valued scalar (sign carried here).
    fn numer_part(&self) -> Self;

    /// Denominator as a positive integer-valued scalar.
    fn denom_part(&self) -> Self;

    fn floor_part(&self) -> Self;

    fn ceil_part(&self) -> Self;

    fn is_integral(&self) -> bool;

    /// Converts an integer-valued scalar, `None` if not integral or out of range.
    fn to_i64_exact(&self) -> Option<i64>;

    fn frac(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer fits scalar backing type"))
    }

    fn numer_part(&self) -> Self {
        Ratio::from_integer(self.numer().clone())
    }

    fn denom_part(&self) -> Self {
        Ratio::from_integer(self.denom().clone())
    }

    fn floor_part(&self) -> Self {
        self.floor()
    }

    fn ceil_part(&self) -> Self {
        self.ceil()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

/// Greatest common divisor of two integer-valued scalars (nonnegative result).
pub fn gcd<S: Scalar>(a: &S, b: &S) -> S {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = x.clone() % y.clone();
        x = y;
        y = r;
    }
    x
}

pub fn lcm<S: Scalar>(a: &S, b: &S) -> S {
    if a.is_zero() || b.is_zero() {
        return S::zero();
    }
    (a.clone() / gcd(a, b) * b.clone()).abs()
}

pub fn min_of<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> Option<S> {
    it.into_iter().min()
}
