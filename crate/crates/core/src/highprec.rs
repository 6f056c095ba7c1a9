//! Fixed-point reals with a few hundred fractional bits, used to evaluate nested radicals.
//!
//! A [`Real`] stores `round(v · 2^PREC)` as a big integer. Every operation is correct to within
//! a few units in the last place, so values are accurate to roughly 90 decimal digits — well
//! beyond the 50 guard digits needed before rounding to `f64`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Fractional bits.
pub const PREC: u32 = 320;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Real(BigInt);

fn one_scaled() -> BigInt {
    BigInt::from(1) << PREC
}

/// Integer division rounding to nearest.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = r * 2;
    let dd = d.abs();
    let cmp = if d.is_negative() { -twice } else { twice };
    if cmp >= dd {
        q + 1
    } else {
        q
    }
}

impl Real {
    pub fn zero() -> Self {
        Real(BigInt::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Real(BigInt::from(n) << PREC)
    }

    pub fn from_rational(q: &Rational) -> Self {
        Real(div_round(&(q.numer() << PREC), q.denom()))
    }

    /// Exact dyadic value of the fixed-point number.
    pub fn to_rational(&self) -> Rational {
        BigRational::new(self.0.clone(), one_scaled())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Square root; tiny negative inputs (below `2^-(PREC/2)`) are treated as zero rounding noise.
    pub fn sqrt(&self) -> Result<Real> {
        if self.0.is_negative() {
            if self.0.bits() as u32 <= PREC / 2 {
                return Ok(Real::zero());
            }
            return Err(Error::Precondition(format!("square root of negative value {}", self.to_f64())));
        }
        Ok(Real((&self.0 << PREC).sqrt()))
    }

    /// Real cube root (odd, defined for negative inputs).
    pub fn cbrt(&self) -> Real {
        let neg = self.0.is_negative();
        let r = (self.0.abs() << (2 * PREC)).cbrt();
        Real(if neg { -r } else { r })
    }

    pub fn powi(&self, n: u32) -> Real {
        let mut acc = Real::from_int(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Absolute difference is at most `2^-bits`.
    pub fn close_to(&self, other: &Real, bits: u32) -> bool {
        let d = (&self.0 - &other.0).abs();
        d.bits() as u32 <= PREC.saturating_sub(bits)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}", self.to_f64())
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        Real(&self.0 + &o.0)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        Real(&self.0 - &o.0)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        Real(div_round(&(&self.0 * &o.0), &one_scaled()))
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, o: &Real) -> Real {
        assert!(!o.0.is_zero(), "division by zero");
        Real(div_round(&(&self.0 << PREC), &o.0))
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-&self.0)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                (&self).$m(o)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn radicals_are_accurate() {
        let two = Real::from_int(2);
        let s = two.sqrt().unwrap();
        assert!((&s * &s).close_to(&two, 300));
        let c = Real::from_int(-12).cbrt();
        assert!((&(&c * &c) * &c).close_to(&Real::from_int(-12), 300));
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-16);
        assert!(Real::from_int(-1).sqrt().is_err());
    }

    #[test]
    fn rational_round_trip() {
        let q = rat(73, 192);
        let r = Real::from_rational(&q);
        assert!((r.to_f64() - 73.0 / 192.0).abs() < 1e-17);
        assert!(Real::from_rational(&(r.to_rational() - q)).abs().close_to(&Real::zero(), 300));
        assert_eq!((Real::from_int(3) / Real::from_int(4)).to_f64(), 0.75);
    }
}
