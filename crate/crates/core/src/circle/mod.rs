//! Points of the upper unit semicircle and the unit-circle roots of Laurent
//! polynomials.
//!
//! Points are identified by their cosine. Circle roots of a real polynomial
//! all live in its self-reciprocal part `gcd(p, p̄)`; writing that part as
//! `t^m q(t + t^-1)` turns them into the real roots of the trace polynomial
//! `q` inside `(-2, 2)`, which are isolated with Sturm sequences. Everything
//! below works in the trace coordinate `x = t + t^-1 = 2 cos θ`.

pub mod quadratic;
pub mod sturm;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::{rat, UPoly};
pub use quadratic::{QuadElem, QuadField, QuadPoint};
use sturm::{bisect, isolate, RootLoc, SturmChain};

/// A real algebraic value `x = 2 cos θ ∈ (-2, 2)`: the unique root of
/// `poly` in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicCos {
    poly: UPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicCos {
    pub fn new(poly: UPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        let bad = |why: &str| Err(Error::Internal(format!("invalid algebraic point {poly} in ({lo}, {hi}): {why}")));
        if lo >= hi || lo < rat(-2) || hi > rat(2) {
            return bad("interval must be a proper subinterval of [-2, 2]");
        }
        if poly.gcd(&poly.derivative()).degree().unwrap_or(0) > 0 {
            return bad("polynomial is not square-free");
        }
        if poly.eval(&lo).is_zero() || poly.eval(&hi).is_zero() {
            return bad("endpoint is a root");
        }
        if SturmChain::new(&poly).count(&lo, &hi) != 1 {
            return bad("interval does not isolate exactly one root");
        }
        Ok(AlgebraicCos {
            poly: poly.primitive(),
            lo,
            hi,
        })
    }

    /// Defining polynomial in `x = 2 cos θ`.
    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Halve the isolating interval; returns the value if it turns out rational.
    fn refine(&mut self) -> Option<BigRational> {
        match bisect(&self.poly, &self.lo, &self.hi) {
            RootLoc::Exact(x) => Some(x),
            RootLoc::Interval(lo, hi) => {
                self.lo = lo;
                self.hi = hi;
                None
            }
        }
    }

    /// Whether this value is a root of `p`.
    pub fn is_root_of(&self, p: &UPoly) -> bool {
        if p.is_zero() {
            return true;
        }
        let g = p.gcd(&self.poly);
        g.degree().unwrap_or(0) > 0 && SturmChain::new(&g).count(&self.lo, &self.hi) > 0
    }

    fn approx(&self) -> f64 {
        let mut a = self.clone();
        let tol = BigRational::new(BigInt::one(), BigInt::one() << 40);
        while &a.hi - &a.lo > tol {
            if let Some(x) = a.refine() {
                return x.to_f64().unwrap_or(0.0);
            }
        }
        ((&a.lo + &a.hi) / rat(2)).to_f64().unwrap_or(0.0)
    }
}

/// A point `ω = e^{iθ}` with `θ ∈ [0, π]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CirclePoint {
    One,
    MinusOne,
    /// `cos θ = c` with `-1 < c < 1`.
    RationalCos(BigRational),
    AlgebraicCos(AlgebraicCos),
}

impl CirclePoint {
    /// The point with rational cosine `c ∈ [-1, 1]`.
    pub fn from_cos(c: BigRational) -> Result<Self> {
        if c == rat(1) {
            Ok(CirclePoint::One)
        } else if c == rat(-1) {
            Ok(CirclePoint::MinusOne)
        } else if c.abs() < rat(1) {
            Ok(CirclePoint::RationalCos(c))
        } else {
            Err(Error::CosineOutOfRange(c.to_string()))
        }
    }

    pub fn is_interior(&self) -> bool {
        !matches!(self, CirclePoint::One | CirclePoint::MinusOne)
    }

    /// Exact cosine when it is rational.
    pub fn exact_cos(&self) -> Option<BigRational> {
        match self {
            CirclePoint::One => Some(rat(1)),
            CirclePoint::MinusOne => Some(rat(-1)),
            CirclePoint::RationalCos(c) => Some(c.clone()),
            CirclePoint::AlgebraicCos(_) => None,
        }
    }

    /// Exact coordinates, available for rational cosines.
    pub fn quad_point(&self) -> Option<QuadPoint> {
        self.exact_cos()
            .map(|c| QuadPoint::from_cos(c).expect("cosine in range"))
    }

    /// The bar-invariant prime `f_ρ` vanishing at this point, in canonical
    /// form: `t ∓ 1` at `±1`, `t² - 2c t + 1` for rational `c`, and the lift
    /// `t^m q(t + t^-1)` of the defining polynomial otherwise.
    pub fn trace_factor(&self) -> LaurentPoly {
        match self {
            CirclePoint::One => LaurentPoly::t_minus_one(),
            CirclePoint::MinusOne => LaurentPoly::t_plus_one(),
            CirclePoint::RationalCos(c) => {
                LaurentPoly::new(0, vec![rat(1), -(c * rat(2)), rat(1)]).canonical()
            }
            CirclePoint::AlgebraicCos(a) => LaurentPoly::from_trace_polynomial(&a.poly).canonical(),
        }
    }

    fn x_value(&self) -> XValue {
        match self {
            CirclePoint::AlgebraicCos(a) => XValue::Alg(a.clone()),
            other => XValue::Exact(other.exact_cos().expect("rational point") * rat(2)),
        }
    }

    /// Order by angle `θ`, i.e. by decreasing cosine.
    pub fn cmp_angle(&self, other: &CirclePoint) -> Ordering {
        cmp_x(self.x_value(), other.x_value()).reverse()
    }

    pub fn approx_cos(&self) -> f64 {
        match self {
            CirclePoint::AlgebraicCos(a) => a.approx() / 2.0,
            other => other.exact_cos().and_then(|c| c.to_f64()).unwrap_or(0.0),
        }
    }

    /// `θ / π` as a float, for plotting.
    pub fn approx_theta_over_pi(&self) -> f64 {
        self.approx_cos().clamp(-1.0, 1.0).acos() / std::f64::consts::PI
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePoint::One => f.write_str("θ = 0"),
            CirclePoint::MinusOne => f.write_str("θ = π"),
            CirclePoint::RationalCos(c) => write!(f, "cos θ = {c}"),
            CirclePoint::AlgebraicCos(a) => {
                write!(f, "cos θ root of {} in ({},{})", a.poly, a.lo, a.hi)
            }
        }
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn trace_factor_of(p: &CirclePoint) -> LaurentPoly {
    p.trace_factor()
}

#[derive(Clone, Debug)]
enum XValue {
    Exact(BigRational),
    Alg(AlgebraicCos),
}

impl XValue {
    /// Rational bounds `lower ≤ x ≤ upper`, strict when the value is irrational.
    fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            XValue::Exact(x) => (x.clone(), x.clone()),
            XValue::Alg(a) => (a.lo.clone(), a.hi.clone()),
        }
    }

    fn refine(&mut self) {
        if let XValue::Alg(a) = self {
            if let Some(x) = a.refine() {
                *self = XValue::Exact(x);
            }
        }
    }
}

fn cmp_x(mut a: XValue, mut b: XValue) -> Ordering {
    loop {
        match (&a, &b) {
            (XValue::Exact(x), XValue::Exact(y)) => return x.cmp(y),
            (XValue::Exact(x), XValue::Alg(al)) | (XValue::Alg(al), XValue::Exact(x))
                if x > &al.lo && x < &al.hi && al.poly.eval(x).is_zero() =>
            {
                return Ordering::Equal;
            }
            (XValue::Alg(p), XValue::Alg(q)) => {
                let lo = (&p.lo).max(&q.lo);
                let hi = (&p.hi).min(&q.hi);
                if lo < hi {
                    let g = p.poly.gcd(&q.poly);
                    if g.degree().unwrap_or(0) > 0 && SturmChain::new(&g).count(lo, hi) > 0 {
                        return Ordering::Equal;
                    }
                }
            }
            _ => {}
        }
        let (alo, ahi) = a.bounds();
        let (blo, bhi) = b.bounds();
        if ahi < blo || (ahi == blo && !(matches!(a, XValue::Exact(_)) && matches!(b, XValue::Exact(_)))) {
            return Ordering::Less;
        }
        if bhi < alo || (bhi == alo && !(matches!(a, XValue::Exact(_)) && matches!(b, XValue::Exact(_)))) {
            return Ordering::Greater;
        }
        a.refine();
        b.refine();
    }
}

/// Simplest rational (smallest denominator, then numerator) in the open
/// interval `(a, b)`, `a < b`.
pub fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    assert!(a < b, "empty interval");
    if a.is_negative() && b.is_positive() {
        return BigRational::zero();
    }
    if !b.is_positive() {
        return -simplest_nonneg(&-b, Some(&-a));
    }
    simplest_nonneg(a, Some(b))
}

fn simplest_nonneg(a: &BigRational, b: Option<&BigRational>) -> BigRational {
    let fl = a.floor();
    let next = &fl + rat(1);
    if b.is_none_or(|b| &next < b) {
        return next;
    }
    let a_frac = a - &fl;
    let b_frac = b.expect("bounded") - &fl;
    let inner = if a_frac.is_zero() {
        simplest_nonneg(&b_frac.recip(), None)
    } else {
        simplest_nonneg(&b_frac.recip(), Some(&a_frac.recip()))
    };
    fl + inner.recip()
}

/// Rational bounds `(u, l)` with `x_b ≤ u < l ≤ x_a`, where `a` precedes
/// `b` in angle (so `x_a > x_b`).
fn separating_bounds(a: &CirclePoint, b: &CirclePoint) -> Result<(BigRational, BigRational)> {
    let (a, b) = match a.cmp_angle(b) {
        Ordering::Equal => return Err(Error::CoincidentPoints(a.to_string(), b.to_string())),
        Ordering::Less => (a, b),
        Ordering::Greater => (b, a),
    };
    let mut xa = a.x_value();
    let mut xb = b.x_value();
    loop {
        let (l, _) = xa.bounds();
        let (_, u) = xb.bounds();
        if u < l {
            return Ok((u, l));
        }
        xa.refine();
        xb.refine();
    }
}

/// A rational-cosine point strictly between two distinct points (in either
/// order). Boundary `θ = 0` and `θ = π` are the points `One` and `MinusOne`.
pub fn rational_sample_between(a: &CirclePoint, b: &CirclePoint) -> Result<QuadPoint> {
    let (u, l) = separating_bounds(a, b)?;
    QuadPoint::from_cos(simplest_between(&u, &l) / rat(2))
}

/// `n` distinct rational cosines strictly between two points, in decreasing
/// order. The first is the simplest rational available.
pub fn rational_samples_between(a: &CirclePoint, b: &CirclePoint, n: usize) -> Result<Vec<BigRational>> {
    let (u, l) = separating_bounds(a, b)?;
    if n <= 1 {
        return Ok(vec![simplest_between(&u, &l) / rat(2)]);
    }
    let step = (&l - &u) / rat(n as i64 + 1);
    Ok((1..=n)
        .rev()
        .map(|j| (&u + &step * rat(j as i64)) / rat(2))
        .collect())
}

/// For a palindromic polynomial `r` of degree `2m`, the polynomial `q` of
/// degree `m` with `r(t) = t^m q(t + t^-1)`.
pub fn trace_polynomial(r: &UPoly) -> Option<UPoly> {
    let d = r.degree()?;
    if d % 2 == 1 || *r != r.reversed() {
        return None;
    }
    let m = d / 2;
    // P_k(x) = t^k + t^-k: P_0 = 2, P_1 = x, P_{k+1} = x P_k - P_{k-1}
    let x = UPoly::x();
    let mut prev = UPoly::constant(rat(2));
    let mut cur = x.clone();
    let mut q = UPoly::constant(r.coeff(m));
    for k in 1..=m {
        if k > 1 {
            let next = &(&x * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        q = &q + &cur.scale(&r.coeff(m + k));
    }
    Some(q)
}

/// Remove `t ± 1` factors and return the self-reciprocal part of the rest,
/// as an ordinary palindromic polynomial.
fn reciprocal_core(p: &LaurentPoly) -> Result<(u32, u32, UPoly)> {
    let c = p.canonical();
    let (rest, at_one) = c.remove_factor(&LaurentPoly::t_minus_one())?;
    let (rest, at_minus_one) = rest.remove_factor(&LaurentPoly::t_plus_one())?;
    let r = rest.gcd(&rest.bar());
    Ok((at_one, at_minus_one, r.stripped().clone()))
}

/// Multiplicity of a circle point as a root of `p`.
pub fn root_multiplicity(p: &LaurentPoly, point: &CirclePoint) -> Result<u32> {
    match point {
        CirclePoint::AlgebraicCos(a) => {
            let (_, _, r) = reciprocal_core(p)?;
            if r.degree().unwrap_or(0) == 0 {
                return Ok(0);
            }
            let mut cur = trace_polynomial(&r)
                .ok_or_else(|| Error::Internal(format!("reciprocal part {r} is not palindromic")))?;
            let mut e = 0;
            while !cur.is_zero() && a.is_root_of(&cur) {
                e += 1;
                cur = cur.derivative();
            }
            Ok(e)
        }
        _ => p.multiplicity(&point.trace_factor()),
    }
}

/// All roots of `p` on the closed upper semicircle with multiplicities,
/// ordered by angle from `θ = 0` to `θ = π`.
pub fn circle_roots(p: &LaurentPoly) -> Result<Vec<(CirclePoint, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (at_one, at_minus_one, r) = reciprocal_core(p)?;
    let mut roots = Vec::new();
    if at_one > 0 {
        roots.push((CirclePoint::One, at_one));
    }
    if r.degree().unwrap_or(0) > 0 {
        let q = trace_polynomial(&r)
            .ok_or_else(|| Error::Internal(format!("reciprocal part {r} is not palindromic")))?;
        for (s, k) in q.square_free_decomposition() {
            for point in trace_roots(&s)? {
                roots.push((point, k as u32));
            }
        }
    }
    if at_minus_one > 0 {
        roots.push((CirclePoint::MinusOne, at_minus_one));
    }
    roots.sort_by(|a, b| a.0.cmp_angle(&b.0));
    Ok(roots)
}

/// Roots of the square-free trace polynomial `s` inside `(-2, 2)`.
fn trace_roots(s: &UPoly) -> Result<Vec<CirclePoint>> {
    let lc = s.primitive().lc().expect("nonzero").to_integer().abs();
    let lcr = BigRational::from_integer(lc.clone());
    let mut rational = Vec::new();
    let mut irrational = Vec::new();
    for loc in isolate(s, &rat(-2), &rat(2), &rat(1)) {
        match rational_value(s, loc, &lcr) {
            Ok(x) => rational.push(x),
            Err((lo, hi)) => irrational.push((lo, hi)),
        }
    }
    // Split off the linear factors of rational roots so algebraic points
    // carry a polynomial with no rational roots in the circle range.
    let mut core = s.clone();
    for x in &rational {
        let lin = UPoly::new(vec![-(x * &lcr), lcr.clone()]);
        core = core
            .div_exact(&lin)
            .ok_or_else(|| Error::Internal("rational root factor does not divide".into()))?;
    }
    let mut out: Vec<CirclePoint> = rational
        .into_iter()
        .map(|x| CirclePoint::from_cos(x / rat(2)))
        .collect::<Result<_>>()?;
    for (lo, hi) in irrational {
        out.push(CirclePoint::AlgebraicCos(AlgebraicCos::new(core.clone(), lo, hi)?));
    }
    Ok(out)
}

/// A root `a/b` (lowest terms) of a primitive integer polynomial has `b | lc`,
/// so `lc · x` is an integer. Shrink the interval below width `1 / lc` and
/// test the at most one candidate.
fn rational_value(
    s: &UPoly,
    loc: RootLoc,
    lc: &BigRational,
) -> std::result::Result<BigRational, (BigRational, BigRational)> {
    let (mut lo, mut hi) = match loc {
        RootLoc::Exact(x) => return Ok(x),
        RootLoc::Interval(lo, hi) => (lo, hi),
    };
    let (ilo, ihi) = (lo.clone(), hi.clone());
    while (&hi - &lo) * lc >= rat(1) {
        match bisect(s, &lo, &hi) {
            RootLoc::Exact(x) => return Ok(x),
            RootLoc::Interval(a, b) => {
                lo = a;
                hi = b;
            }
        }
    }
    let first = (&lo * lc).ceil().to_integer();
    let last = (&hi * lc).floor().to_integer();
    let mut m = first;
    while m <= last {
        let x = BigRational::new(m.clone(), lc.to_integer());
        if s.eval(&x).is_zero() {
            return Ok(x);
        }
        m.inc();
    }
    Err((ilo, ihi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::poly(c)
    }

    #[test]
    fn trace_factor_examples() {
        assert_eq!(CirclePoint::One.trace_factor(), p(&[-1, 1]));
        assert_eq!(CirclePoint::RationalCos(ratio(1, 2)).trace_factor(), p(&[1, -1, 1]));
        assert_eq!(CirclePoint::RationalCos(ratio(3, 4)).trace_factor(), p(&[2, -3, 2]));
    }

    #[test]
    fn roots_of_cube_at_one() {
        let r = circle_roots(&p(&[-1, 1]).pow(3)).unwrap();
        assert_eq!(r, vec![(CirclePoint::One, 3)]);
    }

    #[test]
    fn roots_with_sixth_roots_of_unity() {
        let a = &LaurentPoly::t_plus_one().pow(2) * &p(&[1, -1, 1]);
        let r = circle_roots(&a).unwrap();
        assert_eq!(
            r,
            vec![
                (CirclePoint::RationalCos(ratio(1, 2)), 1),
                (CirclePoint::MinusOne, 2)
            ]
        );
    }

    #[test]
    fn roots_of_t4_plus_1_are_algebraic() {
        let r = circle_roots(&p(&[1, 0, 0, 0, 1])).unwrap();
        let x2m2 = UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(
            r,
            vec![
                (
                    CirclePoint::AlgebraicCos(AlgebraicCos::new(x2m2.clone(), rat(1), rat(2)).unwrap()),
                    1
                ),
                (
                    CirclePoint::AlgebraicCos(AlgebraicCos::new(x2m2, rat(-2), rat(-1)).unwrap()),
                    1
                ),
            ]
        );
        assert_eq!(r[0].0.to_string(), "cos θ root of x^2-2 in (1,2)");
    }

    #[test]
    fn zero_has_no_root_list() {
        assert!(matches!(circle_roots(&LaurentPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn non_circle_factors_are_ignored() {
        // (2t^2 - 5t + 2) has roots 2, 1/2 on the real line
        let a = &p(&[2, -5, 2]) * &p(&[1, 1, 1]);
        let r = circle_roots(&a).unwrap();
        assert_eq!(r, vec![(CirclePoint::RationalCos(ratio(-1, 2)), 1)]);
    }

    #[test]
    fn sample_between_rational_points() {
        let z = rational_sample_between(&CirclePoint::RationalCos(ratio(1, 2)), &CirclePoint::One).unwrap();
        assert!(z.cos() > &ratio(1, 2) && z.cos() < &rat(1));
    }

    #[test]
    fn sample_between_algebraic_and_minus_one() {
        let a = CirclePoint::AlgebraicCos(
            AlgebraicCos::new(UPoly::from_ints(&[-2, 0, 1]), rat(-2), rat(-1)).unwrap(),
        );
        let z = rational_sample_between(&CirclePoint::MinusOne, &a).unwrap();
        let c = z.cos().clone();
        assert!(c > rat(-1));
        // c < -√2/2  ⟺  (2c)^2 - 2 > 0 with c negative
        let x = &c * rat(2);
        assert!(c.is_negative() && (&x * &x - rat(2)).is_positive());
    }

    #[test]
    fn sample_below_first_root_of_family() {
        // single root of 2x - 3 in trace coordinate, cos θ = 3/4
        let z = rational_sample_between(&CirclePoint::One, &CirclePoint::RationalCos(ratio(3, 4))).unwrap();
        assert!(z.cos() > &ratio(3, 4) && z.cos() < &rat(1));
    }

    #[test]
    fn coincident_points_are_rejected() {
        let a = CirclePoint::RationalCos(ratio(1, 3));
        assert!(matches!(
            rational_sample_between(&a, &a.clone()),
            Err(Error::CoincidentPoints(..))
        ));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&ratio(1, 2), &rat(1)), ratio(2, 3));
        assert_eq!(simplest_between(&ratio(-1, 3), &ratio(1, 3)), rat(0));
        assert_eq!(simplest_between(&ratio(3, 4), &rat(1)), ratio(4, 5));
        assert_eq!(simplest_between(&rat(-2), &ratio(-3, 2)), ratio(-5, 3));
        assert_eq!(simplest_between(&rat(1), &rat(3)), rat(2));
    }

    #[test]
    fn ordering_by_angle() {
        let alg = CirclePoint::AlgebraicCos(
            AlgebraicCos::new(UPoly::from_ints(&[-2, 0, 1]), rat(1), rat(2)).unwrap(),
        );
        assert_eq!(CirclePoint::One.cmp_angle(&alg), Ordering::Less);
        assert_eq!(alg.cmp_angle(&CirclePoint::RationalCos(ratio(7, 10))), Ordering::Less);
        assert_eq!(alg.cmp_angle(&CirclePoint::RationalCos(ratio(71, 100))), Ordering::Greater);
        assert_eq!(alg.cmp_angle(&alg.clone()), Ordering::Equal);
    }

    #[test]
    fn algebraic_root_multiplicity() {
        let f = p(&[1, 0, 0, 0, 1]);
        let a = &(&f.pow(3) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        let roots = circle_roots(&a).unwrap();
        for (pt, m) in &roots {
            assert_eq!(root_multiplicity(&a, pt).unwrap(), *m);
        }
        assert_eq!(roots.iter().filter(|(_, m)| *m == 3).count(), 2);
    }
}
