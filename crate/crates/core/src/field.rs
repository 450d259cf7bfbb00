//! The scalar abstraction shared by graphs, period matrices and the pipeline.

use std::fmt::{Debug, Display};
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ratfunc::{Factored, RationalFunction};

/// An exact field of weights.
///
/// Arithmetic comes from the std operator traits; division by zero panics,
/// so callers check [`Zero::is_zero`] first wherever a nonzero cell-factor
/// is required.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// Canonical symbolic value.
    fn to_rf(&self) -> RationalFunction;

    /// The value of a symbolic expression in this field, if representable
    /// (numeric fields accept only constants).
    fn from_rf(f: &RationalFunction) -> Option<Self>;

    /// Exact square root, `None` if the value is not a perfect square.
    fn sqrt_exact(&self) -> Option<Self>;

    fn pow_i(&self, e: i64) -> Self {
        if e < 0 {
            return (Self::one() / self.clone()).pow_i(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn to_rf(&self) -> RationalFunction {
        RationalFunction::from_rational(self)
    }
    fn from_rf(f: &RationalFunction) -> Option<Self> {
        f.as_rational()
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.numer().sqrt(), self.denom().sqrt());
        (&(&n * &n) == self.numer() && &(&d * &d) == self.denom()).then(|| BigRational::new(n, d))
    }
}

impl Field for RationalFunction {
    fn from_i64(v: i64) -> Self {
        RationalFunction::from_i64(v)
    }
    fn from_rational(q: &BigRational) -> Self {
        RationalFunction::from_rational(q)
    }
    fn to_rf(&self) -> RationalFunction {
        self.clone()
    }
    fn from_rf(f: &RationalFunction) -> Option<Self> {
        Some(f.clone())
    }
    fn sqrt_exact(&self) -> Option<Self> {
        self.sqrt()
    }
    fn pow_i(&self, e: i64) -> Self {
        self.pow(e).expect("power of zero with negative exponent")
    }
}

impl Field for Factored {
    fn from_i64(v: i64) -> Self {
        Factored::from_i64(v)
    }
    fn from_rational(q: &BigRational) -> Self {
        Factored::from_rational(q.clone())
    }
    fn to_rf(&self) -> RationalFunction {
        Factored::to_rf(self)
    }
    fn from_rf(f: &RationalFunction) -> Option<Self> {
        Some(Factored::from_rf(f))
    }
    fn sqrt_exact(&self) -> Option<Self> {
        self.sqrt()
    }
    fn pow_i(&self, e: i64) -> Self {
        self.pow(e).expect("power of zero with negative exponent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_agrees_across_fields() {
        let q = BigRational::new(BigInt::from(3), BigInt::from(2));
        let r = RationalFunction::from_rational(&q);
        let f = Factored::from_rational(q.clone());
        assert_eq!(q.pow_i(5).to_rf(), r.pow_i(5));
        assert_eq!(f.pow_i(-3).to_rf(), r.pow_i(-3));
    }

    #[test]
    fn sqrt_exact_on_each_field() {
        let q = BigRational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(q.sqrt_exact(), Some(BigRational::new(BigInt::from(3), BigInt::from(2))));
        assert_eq!(BigRational::from_i64(2).sqrt_exact(), None);
        assert_eq!(BigRational::from_i64(-4).sqrt_exact(), None);
        let r = crate::parse("(x^2+2*x*y+y^2)/(4*z^2)").unwrap();
        assert_eq!(r.sqrt_exact(), Some(crate::parse("(x+y)/(2*z)").unwrap()));
        let f = Factored::from_rf(&r);
        assert_eq!(f.sqrt_exact().map(|v| v.to_rf()), r.sqrt_exact());
        assert_eq!(crate::parse("x^2+y^2").unwrap().sqrt_exact(), None);
    }
}
