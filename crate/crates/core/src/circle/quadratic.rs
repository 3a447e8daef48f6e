//! Exact arithmetic in `Q(δ)` with `δ² = c² - 1`, the field generated by a
//! unit-circle point `c + δ` with rational real part.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::sign;

/// A point `c + δ` on the unit circle with `δ² = c² - 1 ≤ 0` and `δ` on the
/// upper half plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoint {
    c: BigRational,
    d2: BigRational,
}

impl QuadPoint {
    pub fn from_cos(c: BigRational) -> Result<Self> {
        if c.abs() > BigRational::one() {
            return Err(Error::CosineOutOfRange(c.to_string()));
        }
        let d2 = &c * &c - BigRational::one();
        Ok(QuadPoint { c, d2 })
    }

    pub fn cos(&self) -> &BigRational {
        &self.c
    }

    pub fn d_squared(&self) -> &BigRational {
        &self.d2
    }

    pub fn field(&self) -> QuadField {
        QuadField { d2: self.d2.clone() }
    }

    /// The point itself as a field element.
    pub fn value(&self) -> QuadElem {
        self.field()
            .elem(self.c.clone(), BigRational::one())
    }
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + sqrt({})", self.c, self.d2)
    }
}

/// `re + im·δ`. When `δ² = 0` (the points ±1) the `im` part is kept at zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub re: BigRational,
    pub im: BigRational,
}

impl QuadElem {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the element is a real number. `δ` is purely imaginary, so
    /// this is exactly `im = 0`.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Sign of the real part.
    pub fn real_sign(&self) -> i32 {
        sign(&self.re)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}δ", self.re, self.im)
        }
    }
}

impl Serialize for QuadElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    d2: BigRational,
}

impl QuadField {
    pub fn d_squared(&self) -> &BigRational {
        &self.d2
    }

    fn degenerate(&self) -> bool {
        self.d2.is_zero()
    }

    pub fn elem(&self, re: BigRational, im: BigRational) -> QuadElem {
        let im = if self.degenerate() { BigRational::zero() } else { im };
        QuadElem { re, im }
    }

    pub fn rational(&self, re: BigRational) -> QuadElem {
        QuadElem {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero(&self) -> QuadElem {
        self.rational(BigRational::zero())
    }

    pub fn one(&self) -> QuadElem {
        self.rational(BigRational::one())
    }

    pub fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }

    pub fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem {
            re: &a.re - &b.re,
            im: &a.im - &b.im,
        }
    }

    pub fn neg(&self, a: &QuadElem) -> QuadElem {
        QuadElem {
            re: -&a.re,
            im: -&a.im,
        }
    }

    pub fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        let re = &a.re * &b.re + &a.im * &b.im * &self.d2;
        let im = &a.re * &b.im + &a.im * &b.re;
        self.elem(re, im)
    }

    pub fn scale(&self, a: &QuadElem, c: &BigRational) -> QuadElem {
        QuadElem {
            re: &a.re * c,
            im: &a.im * c,
        }
    }

    /// Complex conjugation `δ ↦ -δ`.
    pub fn conj(&self, a: &QuadElem) -> QuadElem {
        QuadElem {
            re: a.re.clone(),
            im: -&a.im,
        }
    }

    pub fn inv(&self, a: &QuadElem) -> Result<QuadElem> {
        // (re + im δ)(re - im δ) = re² - im² δ², positive unless a = 0.
        let norm = &a.re * &a.re - &a.im * &a.im * &self.d2;
        if norm.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let ninv = norm.recip();
        Ok(self.elem(&a.re * &ninv, -(&a.im * &ninv)))
    }

    pub fn pow(&self, a: &QuadElem, mut e: u64) -> QuadElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn point_lies_on_circle() {
        let z = QuadPoint::from_cos(ratio(3, 5)).unwrap();
        let k = z.field();
        let w = z.value();
        let norm = k.mul(&w, &k.conj(&w));
        assert_eq!(norm, k.one());
        assert_eq!(k.inv(&w).unwrap(), k.conj(&w));
    }

    #[test]
    fn rejects_cosine_outside_unit_interval() {
        assert!(QuadPoint::from_cos(ratio(3, 2)).is_err());
    }

    #[test]
    fn degenerate_field_at_minus_one() {
        let z = QuadPoint::from_cos(ratio(-1, 1)).unwrap();
        let w = z.value();
        assert!(w.is_real());
        assert_eq!(w.re, ratio(-1, 1));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let z = QuadPoint::from_cos(ratio(0, 1)).unwrap();
        let k = z.field();
        assert_eq!(k.mul(&z.value(), &z.value()), k.rational(ratio(-1, 1)));
    }
}
