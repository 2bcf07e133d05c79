use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// A commutative ring whose elements may or may not be invertible.
///
/// Every engine is generic over this trait, so the same code runs on
/// symbolic rational functions, on rationals at a sample point, and on the
/// truncated series types used for marker and jet computations.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(&BigRational::new(num.into(), den.into())))
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }

    /// Integer power; negative exponents require an invertible base.
    fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(pow_u(&base, e.unsigned_abs()))
    }

    /// `1 - self`.
    fn one_minus(&self) -> Self {
        Self::one().sub(self)
    }
}

pub(crate) fn pow_u<F: Scalar>(base: &F, mut e: u64) -> F {
    let mut acc = F::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b);
        }
    }
    acc
}

/// Sum of an iterator of scalars.
pub fn sum<'a, F: Scalar, I: IntoIterator<Item = &'a F>>(items: I) -> F {
    items.into_iter().fold(F::zero(), |acc, x| acc.add(x))
}

/// Product of an iterator of scalars.
pub fn product<'a, F: Scalar, I: IntoIterator<Item = &'a F>>(items: I) -> F {
    items.into_iter().fold(F::one(), |acc, x| acc.mul(x))
}
