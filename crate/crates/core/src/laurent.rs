//! Laurent polynomials `Q[t, t^-1]`.
//!
//! A [`LaurentPoly`] is an exact value: arithmetic never discards units.
//! [`LaurentPoly::canonical`] picks the representative of the class modulo
//! the units `c·t^k` (integer coefficients with unit content, nonzero
//! constant term, positive leading coefficient); Alexander polynomials and
//! invariant factors are always reported in that form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::circle::quadratic::{QuadElem, QuadField, QuadPoint};
use crate::error::{Error, Result};
use crate::poly::{rat, term, UPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// Coefficients starting at `t^low`; the constant term of `poly` is
    /// nonzero unless the whole polynomial is zero.
    poly: UPoly,
    low: i64,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<BigRational>) -> Self {
        Self::from_upoly(UPoly::new(coeffs), low)
    }

    /// `t^low · poly(t)`.
    pub fn from_upoly(poly: UPoly, low: i64) -> Self {
        if poly.is_zero() {
            return Self::zero();
        }
        let (k, poly) = poly.strip_low();
        LaurentPoly {
            poly,
            low: low + k as i64,
        }
    }

    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_upoly(UPoly::from_ints(coeffs), low)
    }

    /// Polynomial with integer coefficients, constant term first.
    pub fn poly(coeffs: &[i64]) -> Self {
        Self::from_ints(0, coeffs)
    }

    pub fn zero() -> Self {
        LaurentPoly {
            poly: UPoly::zero(),
            low: 0,
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_upoly(UPoly::constant(c), 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, k: i64) -> Self {
        Self::from_upoly(UPoly::constant(c), k)
    }

    /// `t - 1`, `t + 1`.
    pub fn t_minus_one() -> Self {
        Self::poly(&[-1, 1])
    }

    pub fn t_plus_one() -> Self {
        Self::poly(&[1, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Lowest exponent (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent.
    pub fn high(&self) -> i64 {
        self.low + self.poly.degree().unwrap_or(0) as i64
    }

    /// Width of the exponent range, `high - low`; zero for units and zero.
    pub fn span(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// A unit of the Laurent ring, `c·t^k` with `c ≠ 0`.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.span() == 0
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        if k < self.low {
            return BigRational::zero();
        }
        self.poly.coeff((k - self.low) as usize)
    }

    /// Coefficients from `t^low` upwards.
    pub fn coeffs(&self) -> &[BigRational] {
        self.poly.coeffs()
    }

    /// The polynomial part `t^-low · self`, with nonzero constant term.
    pub fn stripped(&self) -> &UPoly {
        &self.poly
    }

    /// Convert to an ordinary polynomial if no negative exponents occur.
    pub fn to_upoly(&self) -> Option<UPoly> {
        (self.low >= 0).then(|| self.poly.shift(self.low as usize))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_upoly(self.poly.scale(c), self.low)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            poly: self.poly.clone(),
            low: self.low + k,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `t ↦ t^k` for `k ≥ 1`.
    pub fn substitute_power(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let k = k as usize;
        let mut coeffs = vec![BigRational::zero(); self.span() * k + 1];
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(self.low * k as i64, coeffs)
    }

    /// Canonical representative modulo units `c·t^k`.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            poly: self.poly.primitive(),
            low: 0,
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Equal up to a unit `c·t^k`.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        LaurentPoly {
            poly: self.poly.gcd(&other.poly),
            low: 0,
        }
        .canonical()
    }

    /// Exact quotient in the Laurent ring, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        self.poly
            .div_exact(&d.poly)
            .map(|q| Self::from_upoly(q, self.low - d.low))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Largest `e` with `f^e | self`.
    pub fn multiplicity(&self, f: &Self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_zero() || f.is_unit() {
            return Err(Error::UnitFactor);
        }
        let mut e = 0;
        let mut cur = self.poly.clone();
        while let Some(q) = cur.div_exact(&f.poly) {
            cur = q;
            e += 1;
        }
        Ok(e)
    }

    /// Divide out every factor of `f`, returning the cofactor and the count.
    pub fn remove_factor(&self, f: &Self) -> Result<(Self, u32)> {
        let e = self.multiplicity(f)?;
        let q = self
            .div_exact(&f.pow(e))
            .ok_or_else(|| Error::Internal("factor power does not divide".into()))?;
        Ok((q, e))
    }

    /// The exact image under the involution `t ↦ t^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::from_upoly(self.poly.reversed(), -self.high())
    }

    /// `canonical(p(t^-1))`.
    pub fn bar_conjugate(&self) -> Self {
        self.bar().canonical()
    }

    /// Fixed by the bar involution exactly (not just up to units).
    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// Evaluate at an element of a quadratic field. Negative exponents need
    /// `z` to be invertible.
    pub fn eval_in(&self, field: &QuadField, z: &QuadElem) -> Result<QuadElem> {
        if self.is_zero() {
            return Ok(field.zero());
        }
        let mut acc = field.zero();
        for c in self.poly.coeffs().iter().rev() {
            acc = field.add(&field.mul(&acc, z), &field.rational(c.clone()));
        }
        let zk = if self.low >= 0 {
            field.pow(z, self.low as u64)
        } else {
            let zi = field.inv(z)?;
            field.pow(&zi, self.low.unsigned_abs())
        };
        Ok(field.mul(&acc, &zk))
    }

    /// Exact value at a unit-circle point with rational cosine.
    pub fn eval(&self, z: &QuadPoint) -> QuadElem {
        self.eval_in(&z.field(), &z.value())
            .expect("unit-circle points are invertible")
    }

    /// `p(t) = t^d q(t + t^-1)` lift of a polynomial `q` in `x = t + t^-1`,
    /// returned as the exact Laurent polynomial `q(t + t^-1)`.
    pub fn from_trace_polynomial(q: &UPoly) -> Self {
        let x = &Self::t() + &Self::t().bar();
        let mut acc = Self::zero();
        for c in q.coeffs().iter().rev() {
            acc = &(&acc * &x) + &Self::constant(c.clone());
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            f.write_str(&term(&c.abs(), "t", k))?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn align(a: &LaurentPoly, b: &LaurentPoly) -> (UPoly, UPoly, i64) {
    let low = a.low.min(b.low);
    (
        a.poly.shift((a.low - low) as usize),
        b.poly.shift((b.low - low) as usize),
        low,
    )
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, low) = align(self, rhs);
        LaurentPoly::from_upoly(&a + &b, low)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_upoly(&self.poly * &rhs.poly, self.low + rhs.low)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            poly: -&self.poly,
            low: self.low,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
