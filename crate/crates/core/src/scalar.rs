//! Integer scalar abstraction shared by exchange matrices, c-matrices and
//! boundary matrices.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer type usable as a matrix entry.
///
/// Implemented for every primitive signed integer and for
/// [`num_bigint::BigInt`], so the same mutation and Smith normal form code
/// runs on `i32`, `i64`, `i128` or arbitrary precision.
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("value fits the scalar type")
    }

    /// `max(self, 0)`.
    fn positive_part(&self) -> Self {
        if self.is_positive() {
            self.clone()
        } else {
            Self::zero()
        }
    }
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn positive_part_clamps() {
        assert_eq!(5i64.positive_part(), 5);
        assert_eq!((-3i32).positive_part(), 0);
        assert_eq!(BigInt::from(-7).positive_part(), BigInt::from(0));
    }
}
