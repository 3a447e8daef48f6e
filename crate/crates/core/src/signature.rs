//! Exact signatures of `W(ω) = (1 - ω)V + (1 - ω̄)Vᵀ` and the signature step
//! function on the upper semicircle.
//!
//! At a point with rational cosine the matrix lives over `Q(δ)`. Its
//! characteristic polynomial is computed division-free (Berkowitz); for a
//! Hermitian matrix it has rational coefficients and only real roots, so
//! Descartes' rule of signs counts positive and negative eigenvalues exactly.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::circle::{
    circle_roots, rational_samples_between, root_multiplicity, CirclePoint, QuadElem, QuadField,
    QuadPoint,
};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::{rat, sign};
use crate::seifert::{link_invariants, LinkInvariants, SeifertMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureValue {
    pub signature: i64,
    pub nullity: usize,
}

impl SignatureValue {
    /// `|σ| + ν ≤ n` and `σ ≡ n - ν (mod 2)`.
    pub fn is_consistent(&self, n: usize) -> bool {
        let s = self.signature.unsigned_abs() as usize;
        s + self.nullity <= n && (s + n - self.nullity.min(n)) % 2 == 0
    }
}

/// `W` at `z = c + δ`: entry `(j, k)` is `(1-c)(V_jk + V_kj) - δ(V_jk - V_kj)`.
pub fn hermitian_at(s: &SeifertMatrix, z: &QuadPoint) -> Vec<Vec<QuadElem>> {
    let k = z.field();
    let one_minus_c = rat(1) - z.cos();
    let n = s.size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b) = (s.get(i, j), s.get(j, i));
                    k.elem(&one_minus_c * rat(a + b), rat(b - a))
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `det(xI - A)`, leading coefficient first.
fn char_poly(k: &QuadField, a: &[Vec<QuadElem>]) -> Vec<QuadElem> {
    let n = a.len();
    let mut p = vec![k.one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C
        let mut col = vec![k.one(), k.neg(&a[r][r])];
        let mut v: Vec<QuadElem> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rv = (0..r).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(&a[r][j], &v[j])));
            col.push(k.neg(&rv));
            v = (0..r)
                .map(|i| (0..r).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(&a[i][j], &v[j]))))
                .collect();
        }
        let next: Vec<QuadElem> = (0..r + 2)
            .map(|i| {
                (0..=r.min(i)).fold(k.zero(), |acc, j| {
                    if i - j < col.len() {
                        k.add(&acc, &k.mul(&col[i - j], &p[j]))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        p = next;
    }
    p
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let s: Vec<i32> = signs.filter(|&x| x != 0).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Signature and nullity of a Hermitian matrix over `Q(δ)`.
pub fn hermitian_signature(k: &QuadField, a: &[Vec<QuadElem>]) -> Result<SignatureValue> {
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] != k.conj(&a[j][i]) {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    let cp = char_poly(k, a);
    if let Some(e) = cp.iter().find(|e| !e.is_real()) {
        return Err(Error::Internal(format!(
            "characteristic polynomial coefficient {e} is not rational"
        )));
    }
    let coeffs: Vec<&BigRational> = cp.iter().map(|e| &e.re).collect();
    let nullity = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    let live = &coeffs[..=n - nullity];
    let pos = sign_variations(live.iter().map(|c| sign(c)));
    let neg = sign_variations(
        live.iter()
            .enumerate()
            .map(|(i, c)| if (n - i) % 2 == 1 { -sign(c) } else { sign(c) }),
    );
    if pos + neg + nullity != n {
        return Err(Error::Internal(format!(
            "characteristic polynomial is not real-rooted: {pos} + {neg} + {nullity} != {n}"
        )));
    }
    Ok(SignatureValue {
        signature: pos as i64 - neg as i64,
        nullity,
    })
}

/// Exact signature at a point with rational cosine.
pub fn signature_at_quad(s: &SeifertMatrix, z: &QuadPoint) -> Result<SignatureValue> {
    hermitian_signature(&z.field(), &hermitian_at(s, z))
}

/// Exact signature at a circle point. Algebraic points are rejected with the
/// exact nullity and the one-sided jump bound there.
pub fn signature_at(s: &SeifertMatrix, p: &CirclePoint) -> Result<SignatureValue> {
    match p.quad_point() {
        Some(z) => signature_at_quad(s, &z),
        None => {
            let (nullity, jump_bound) = unresolved_bounds(&link_invariants(s), p)?;
            Err(Error::Unresolved {
                point: p.to_string(),
                nullity,
                jump_bound,
            })
        }
    }
}

/// Nullity of `W(ω)` for `ω ≠ 1` and the bound on `|σ±(ω) - σ(ω)|`, from the
/// invariant factors: the rank drops by one for each `d_i` vanishing at `ω`.
pub fn unresolved_bounds(inv: &LinkInvariants, p: &CirclePoint) -> Result<(usize, usize)> {
    let mut vanishing = 0;
    for d in &inv.factors {
        if root_multiplicity(d, p)? > 0 {
            vanishing += 1;
        }
    }
    Ok((inv.free_rank + vanishing, vanishing))
}

/// Signature of `W` at `cos θ = c` in double precision, via the real
/// symmetric embedding `[[X, -Y], [Y, X]]` of `X + iY`. Returns the
/// signature and the smallest absolute eigenvalue.
pub fn shadow_signature(s: &SeifertMatrix, c: f64) -> (i64, f64) {
    let n = s.size();
    if n == 0 {
        return (0, f64::INFINITY);
    }
    let d = (1.0 - c * c).max(0.0).sqrt();
    let m = DMatrix::from_fn(2 * n, 2 * n, |r, col| {
        let (i, j) = (r % n, col % n);
        let (a, b) = (s.get(i, j) as f64, s.get(j, i) as f64);
        let x = (1.0 - c) * (a + b);
        let y = d * (b - a);
        match (r < n, col < n) {
            (true, true) | (false, false) => x,
            (true, false) => -y,
            (false, true) => y,
        }
    });
    let eig = m.symmetric_eigen().eigenvalues;
    let pos = eig.iter().filter(|&&e| e > 0.0).count() as i64;
    let neg = eig.iter().filter(|&&e| e < 0.0).count() as i64;
    let min = eig.iter().map(|e| e.abs()).fold(f64::INFINITY, f64::min);
    ((pos - neg) / 2, min)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointValue {
    Exact(SignatureValue),
    /// Algebraic point: the value lies within `jump_bound` of both adjacent
    /// arc values.
    Unresolved {
        before: i64,
        after: i64,
        nullity: usize,
        jump_bound: usize,
    },
}

impl PointValue {
    pub fn exact(&self) -> Option<SignatureValue> {
        match self {
            PointValue::Exact(v) => Some(*v),
            PointValue::Unresolved { .. } => None,
        }
    }
}

/// `ju⁻ = σ - σ⁻`, `ju⁺ = σ⁺ - σ`, `total = σ⁺ - σ⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Jumps {
    pub minus: i64,
    pub plus: i64,
    pub total: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepPoint {
    pub point: CirclePoint,
    /// Multiplicity as a root of `A_L`.
    pub multiplicity: u32,
    /// Root of `(t - 1) A_L`. `θ = π` is always listed as the boundary.
    pub critical: bool,
    pub value: PointValue,
    pub jumps: Option<Jumps>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Arc {
    pub start: CirclePoint,
    pub end: CirclePoint,
    #[serde(serialize_with = "ser_rationals")]
    pub samples: Vec<BigRational>,
    pub value: i64,
    pub nullity: usize,
}

impl Arc {
    pub fn signature_value(&self) -> SignatureValue {
        SignatureValue {
            signature: self.value,
            nullity: self.nullity,
        }
    }
}

fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// `σ_L` on `θ ∈ [0, π]`: points ordered by angle from `θ = 0` to `θ = π`,
/// with `arcs[i]` the open arc between `points[i]` and `points[i + 1]`.
#[derive(Clone, Debug, Serialize)]
pub struct StepFunction {
    pub size: usize,
    pub points: Vec<StepPoint>,
    pub arcs: Vec<Arc>,
}

impl StepFunction {
    /// `σ⁻` and `σ⁺` at `points[i]`. At `θ = 0` and `θ = π` conjugation
    /// symmetry makes both sides equal to the single adjacent arc.
    pub fn one_sided(&self, i: usize) -> (i64, i64) {
        let last = self.arcs.len();
        let before = if i == 0 { self.arcs[0].value } else { self.arcs[i - 1].value };
        let after = if i == last { self.arcs[last - 1].value } else { self.arcs[i].value };
        (before, after)
    }

    pub fn index_of(&self, p: &CirclePoint) -> Option<usize> {
        self.points
            .iter()
            .position(|q| q.point.cmp_angle(p) == Ordering::Equal)
    }

    /// Value at an arbitrary rational-cosine point, read off the step
    /// function.
    pub fn value_at_cos(&self, c: &BigRational) -> Result<i64> {
        let p = CirclePoint::from_cos(c.clone())?;
        if let Some(i) = self.index_of(&p) {
            return self.points[i]
                .value
                .exact()
                .map(|v| v.signature)
                .ok_or_else(|| Error::Internal("rational point stored as unresolved".into()));
        }
        let i = self
            .points
            .iter()
            .position(|q| q.point.cmp_angle(&p) == Ordering::Greater)
            .ok_or_else(|| Error::Internal(format!("{p} beyond θ = π")))?;
        Ok(self.arcs[i - 1].value)
    }

    /// Murasugi signature `σ_L(-1)`.
    pub fn murasugi(&self) -> i64 {
        self.points
            .last()
            .and_then(|p| p.value.exact())
            .map_or(0, |v| v.signature)
    }

    pub fn arc_values(&self) -> Vec<i64> {
        self.arcs.iter().map(|a| a.value).collect()
    }
}

pub fn signature_function(s: &SeifertMatrix) -> Result<StepFunction> {
    signature_function_with(s, &link_invariants(s), 1)
}

/// Build the step function from the invariants of `s`, with
/// `samples_per_arc` exact samples in every arc (all must agree).
pub fn signature_function_with(
    s: &SeifertMatrix,
    inv: &LinkInvariants,
    samples_per_arc: usize,
) -> Result<StepFunction> {
    let candidates = &LaurentPoly::t_minus_one() * &inv.a_poly;
    let mut roots = circle_roots(&candidates)?;
    if !matches!(roots.last(), Some((CirclePoint::MinusOne, _))) {
        roots.push((CirclePoint::MinusOne, 0));
    }
    let bounds: Vec<(CirclePoint, CirclePoint)> = roots
        .windows(2)
        .map(|w| (w[0].0.clone(), w[1].0.clone()))
        .collect();
    let arcs = bounds
        .into_par_iter()
        .map(|(start, end)| {
            let samples = rational_samples_between(&start, &end, samples_per_arc.max(1))?;
            let values = samples
                .iter()
                .map(|c| signature_at_quad(s, &QuadPoint::from_cos(c.clone())?))
                .collect::<Result<Vec<SignatureValue>>>()?;
            if values.iter().any(|v| *v != values[0]) {
                return Err(Error::InconsistentArc {
                    start: start.to_string(),
                    end: end.to_string(),
                    values: values.iter().map(|v| v.signature).collect(),
                });
            }
            Ok(Arc {
                value: values[0].signature,
                nullity: values[0].nullity,
                start,
                end,
                samples,
            })
        })
        .collect::<Result<Vec<Arc>>>()?;

    let mut sf = StepFunction {
        size: s.size(),
        points: Vec::with_capacity(roots.len()),
        arcs,
    };
    for (i, (point, m)) in roots.into_iter().enumerate() {
        let critical = m > 0;
        let multiplicity = if point == CirclePoint::One { m - 1 } else { m };
        let value = match point.quad_point() {
            Some(z) => PointValue::Exact(signature_at_quad(s, &z)?),
            None => {
                let (nullity, jump_bound) = unresolved_bounds(inv, &point)?;
                let (before, after) = sf.one_sided(i);
                PointValue::Unresolved {
                    before,
                    after,
                    nullity,
                    jump_bound,
                }
            }
        };
        let jumps = value.exact().map(|v| {
            let (before, after) = sf.one_sided(i);
            Jumps {
                minus: v.signature - before,
                plus: after - v.signature,
                total: after - before,
            }
        });
        sf.points.push(StepPoint {
            point,
            multiplicity,
            critical,
            value,
            jumps,
        });
    }
    Ok(sf)
}

/// One-sided and total jumps at a critical point with an exact value.
pub fn jumps_at(sf: &StepFunction, p: &CirclePoint) -> Result<Jumps> {
    let i = sf
        .index_of(p)
        .filter(|&i| sf.points[i].critical)
        .ok_or_else(|| Error::NotCritical(p.to_string()))?;
    let sp = &sf.points[i];
    match (&sp.value, sp.jumps) {
        (_, Some(j)) => Ok(j),
        (PointValue::Unresolved { nullity, jump_bound, .. }, None) => Err(Error::Unresolved {
            point: p.to_string(),
            nullity: *nullity,
            jump_bound: *jump_bound,
        }),
        _ => Err(Error::Internal("exact point without jumps".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn m(rows: &[&[i64]]) -> SeifertMatrix {
        SeifertMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn family(n: i64) -> SeifertMatrix {
        m(&[&[-1, 1, 0, 0], &[0, -1, 1, 0], &[0, 1, n, 0], &[0, 0, 0, 0]])
    }

    fn counterexample() -> SeifertMatrix {
        m(&[&[1, -1, 1, 1], &[0, 0, 0, -1], &[1, 0, 0, 2], &[1, -1, 2, 0]])
    }

    fn trefoil() -> SeifertMatrix {
        m(&[&[-1, 1], &[0, -1]])
    }

    #[test]
    fn hermitian_examples() {
        let z = QuadPoint::from_cos(rat(-1)).unwrap();
        let w = hermitian_at(&trefoil(), &z);
        let k = z.field();
        assert_eq!(w[0][0], k.rational(rat(-4)));
        assert_eq!(w[0][1], k.rational(rat(2)));
        let one = QuadPoint::from_cos(rat(1)).unwrap();
        assert!(hermitian_at(&family(3), &one).iter().flatten().all(QuadElem::is_zero));
        let z = QuadPoint::from_cos(ratio(1, 3)).unwrap();
        let w = hermitian_at(&m(&[&[-1]]), &z);
        assert_eq!(w[0][0], z.field().rational(ratio(-4, 3)));
    }

    #[test]
    fn berkowitz_matches_known_polynomial() {
        let k = QuadPoint::from_cos(rat(1)).unwrap().field();
        let a: Vec<Vec<QuadElem>> = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| k.rational(rat(x))).collect())
            .collect();
        let cp: Vec<BigRational> = char_poly(&k, &a).into_iter().map(|e| e.re).collect();
        // det(xI - A) = x^3 - 9x^2 + 24x - 18
        assert_eq!(cp, vec![rat(1), rat(-9), rat(24), rat(-18)]);
    }

    #[test]
    fn signature_examples() {
        let v = signature_at(&trefoil(), &CirclePoint::MinusOne).unwrap();
        assert_eq!(v, SignatureValue { signature: -2, nullity: 0 });
        let v = signature_at(&counterexample(), &CirclePoint::RationalCos(rat(0))).unwrap();
        assert_eq!(v, SignatureValue { signature: 0, nullity: 0 });
        // zero last row gives one null direction everywhere, the root one more
        let v = signature_at(&family(1), &CirclePoint::RationalCos(ratio(3, 4))).unwrap();
        assert_eq!(v, SignatureValue { signature: 0, nullity: 2 });
        assert!(v.is_consistent(4));
    }

    #[test]
    fn algebraic_points_are_unresolved() {
        let p = crate::circle::circle_roots(&LaurentPoly::poly(&[1, 0, 0, 0, 1]))
            .unwrap()
            .remove(0)
            .0;
        let s = m(&[&[-1]]);
        assert!(matches!(
            signature_at(&s, &p),
            Err(Error::Unresolved { nullity: 0, jump_bound: 0, .. })
        ));
    }

    #[test]
    fn family_step_functions() {
        let sf = signature_function(&family(0)).unwrap();
        assert_eq!(sf.arc_values(), vec![-1]);
        assert_eq!(sf.points[0].value.exact().unwrap().signature, 0);
        assert_eq!(sf.murasugi(), -1);

        let sf = signature_function(&family(-2)).unwrap();
        assert_eq!(sf.arc_values(), vec![-1, -3]);
        assert_eq!(sf.points[1].point, CirclePoint::RationalCos(rat(0)));
        assert_eq!(sf.points[1].value.exact().unwrap().signature, -2);
        let j = jumps_at(&sf, &CirclePoint::One).unwrap();
        assert_eq!(j.plus, -1);

        let sf = signature_function(&family(1)).unwrap();
        let j = jumps_at(&sf, &CirclePoint::RationalCos(ratio(3, 4))).unwrap();
        assert_eq!(j, Jumps { minus: -1, plus: -1, total: -2 });
    }

    #[test]
    fn counterexample_is_identically_zero() {
        let sf = signature_function_with(&counterexample(), &link_invariants(&counterexample()), 3).unwrap();
        assert_eq!(sf.arc_values(), vec![0]);
        assert_eq!(sf.murasugi(), 0);
        let j = jumps_at(&sf, &CirclePoint::MinusOne).unwrap();
        assert_eq!(j, Jumps { minus: 0, plus: 0, total: 0 });
    }

    #[test]
    fn jumps_at_rejects_non_critical_points() {
        let sf = signature_function(&family(0)).unwrap();
        assert!(matches!(
            jumps_at(&sf, &CirclePoint::RationalCos(ratio(1, 2))),
            Err(Error::NotCritical(_))
        ));
    }

    #[test]
    fn shadow_agrees_on_trefoil() {
        let (sig, min) = shadow_signature(&trefoil(), -1.0);
        assert_eq!(sig, -2);
        assert!(min > 1.0);
    }
}
