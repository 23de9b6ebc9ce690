//! Scalar abstraction for exact integer arithmetic.
//!
//! Everything in this crate computes over an arbitrary signed integer type:
//! `i64` is fine for desk-scale experiments, `num_bigint::BigInt` (the
//! [`crate::Coord`] alias) never overflows and is what the CLI uses.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer scalar. Blanket-implemented; never implement by hand.
pub trait Scalar:
    Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Clone
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Clone
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// gcd of all entries; zero for the zero vector.
pub fn vec_gcd<S: Scalar>(v: &[S]) -> S {
    let mut g = S::zero();
    for x in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Dot product.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn gcd_of_vector() {
        assert_eq!(vec_gcd(&[6i64, -4, 10]), 2);
        assert_eq!(vec_gcd(&[0i64, 0]), 0);
        assert_eq!(vec_gcd(&[7i64]), 7);
        let big: Vec<BigInt> = [12, 18, 30].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(vec_gcd(&big), BigInt::from(6));
    }

    #[test]
    fn dot_product() {
        assert_eq!(dot(&[1i64, 2, 3], &[4, -5, 6]), 12);
    }
}
