//! Sturm sequences and bisection for real root isolation with rational
//! endpoints.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::{rat, sign, UPoly};

/// Location of one real root of a square-free polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLoc {
    /// The root is this rational number.
    Exact(BigRational),
    /// Exactly one root lies in the open interval; the polynomial is nonzero
    /// at both endpoints.
    Interval(BigRational, BigRational),
}

/// Rescale by a positive rational so coefficients become coprime integers
/// without changing signs.
fn shrink(p: UPoly) -> UPoly {
    let (c, prim) = p.primitive_part();
    if c.is_negative() {
        -&prim
    } else {
        prim
    }
}

#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UPoly>,
}

impl SturmChain {
    pub fn new(q: &UPoly) -> Self {
        let mut chain = vec![shrink(q.clone())];
        let d = q.derivative();
        if !d.is_zero() {
            chain.push(shrink(d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(shrink(-&r));
        }
        SturmChain { chain }
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| p.sign_at(x))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Isolate the real roots of the square-free polynomial `q` in `(lo, hi]`,
/// in increasing order. Intervals are bisected until their width is at most
/// `max_width`.
pub fn isolate(q: &UPoly, lo: &BigRational, hi: &BigRational, max_width: &BigRational) -> Vec<RootLoc> {
    let chain = SturmChain::new(q);
    let mut out = Vec::new();
    isolate_rec(q, &chain, lo.clone(), hi.clone(), max_width, &mut out);
    out
}

fn isolate_rec(
    q: &UPoly,
    chain: &SturmChain,
    lo: BigRational,
    hi: BigRational,
    max_width: &BigRational,
    out: &mut Vec<RootLoc>,
) {
    let n = chain.count(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        if q.eval(&hi).is_zero() {
            out.push(RootLoc::Exact(hi));
            return;
        }
        if &(&hi - &lo) <= max_width && !q.eval(&lo).is_zero() {
            out.push(RootLoc::Interval(lo, hi));
            return;
        }
    }
    let mid = (&lo + &hi) / rat(2);
    isolate_rec(q, chain, lo, mid.clone(), max_width, out);
    isolate_rec(q, chain, mid, hi, max_width, out);
}

/// Halve an isolating interval of a simple root of `q`.
pub fn bisect(q: &UPoly, lo: &BigRational, hi: &BigRational) -> RootLoc {
    let mid = (lo + hi) / rat(2);
    let sm = q.sign_at(&mid);
    if sm == 0 {
        return RootLoc::Exact(mid);
    }
    if sm == q.sign_at(lo) {
        RootLoc::Interval(mid, hi.clone())
    } else {
        RootLoc::Interval(lo.clone(), mid)
    }
}

/// Sign of `q` just to the right of `x` (`q(x) ≠ 0` assumed by callers
/// that need it; otherwise the derivative chain decides).
pub fn sign_right_of(q: &UPoly, x: &BigRational) -> i32 {
    let mut p = q.clone();
    while !p.is_zero() {
        let s = sign(&p.eval(x));
        if s != 0 {
            return s;
        }
        p = p.derivative();
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn sturm_counts_match_known_roots() {
        // (x-1)(x+1)(x-1/2) scaled
        let q = UPoly::from_ints(&[1, -2, -2, 4]);
        let c = SturmChain::new(&q);
        assert_eq!(c.count(&rat(-2), &rat(2)), 3);
        assert_eq!(c.count(&rat(0), &rat(2)), 2);
        assert_eq!(c.count(&ratio(1, 2), &rat(2)), 1);
    }

    #[test]
    fn isolates_sqrt_two() {
        let q = UPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate(&q, &rat(-2), &rat(2), &rat(1));
        assert_eq!(
            roots,
            vec![
                RootLoc::Interval(rat(-2), rat(-1)),
                RootLoc::Interval(rat(1), rat(2))
            ]
        );
    }

    #[test]
    fn exact_roots_are_reported_exactly() {
        let q = UPoly::from_ints(&[0, -1, 0, 1]); // x^3 - x
        let roots = isolate(&q, &rat(-2), &rat(2), &rat(4));
        assert_eq!(
            roots,
            vec![
                RootLoc::Exact(rat(-1)),
                RootLoc::Exact(rat(0)),
                RootLoc::Exact(rat(1))
            ]
        );
    }
}
