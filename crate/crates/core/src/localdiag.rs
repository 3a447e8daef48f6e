//! Diagonalization of Hermitian Laurent matrices over the local ring at a
//! circle point `ρ = c + δ`, `|c| < 1`, by simultaneous row and column
//! operations, and the jump predictions read off the diagonal.
//!
//! Scalars are kept as `(num / den) · f^e` with `f = t + t^-1 - 2c`. This `f`
//! is fixed by `t ↦ t^-1`, so units of Hermitian diagonal entries are real at
//! `ρ` and their signs are decidable in `Q(δ)`.

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::circle::{CirclePoint, QuadPoint};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::rat;
use crate::seifert::{link_invariants, SeifertMatrix};

/// `(num / den) · f^f_exp` with `f` dividing neither `num` nor `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedScalar {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
    pub f_exp: u32,
}

impl LocalizedScalar {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.f_exp == 0
    }
}

impl Serialize for LocalizedScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = if self.den == LaurentPoly::one() {
            format!("({})", self.num)
        } else {
            format!("({}) / ({})", self.num, self.den)
        };
        s.serialize_str(&text)
    }
}

/// Arithmetic in the local ring `Λ_(f)`.
#[derive(Clone, Debug)]
struct Local {
    f: LaurentPoly,
    rho: QuadPoint,
}

impl Local {
    fn zero(&self) -> LocalizedScalar {
        LocalizedScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
            f_exp: 0,
        }
    }

    fn make(&self, num: LaurentPoly, den: LaurentPoly, e: u32) -> Result<LocalizedScalar> {
        if num.is_zero() {
            return Ok(self.zero());
        }
        let (num, k) = num.remove_factor(&self.f)?;
        let g = num.gcd(&den);
        let div = |p: &LaurentPoly, d: &LaurentPoly| {
            p.div_exact(d)
                .ok_or_else(|| Error::Internal("gcd does not divide".into()))
        };
        let (num, den) = (div(&num, &g)?, div(&den, &g)?);
        // leave the denominator canonical
        let unit = div(&den, &den.canonical())?;
        Ok(LocalizedScalar {
            num: div(&num, &unit)?,
            den: den.canonical(),
            f_exp: e + k,
        })
    }
}

/// One simultaneous row and column operation, or bookkeeping step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    /// Divide the remaining block by `f^power`.
    FactorOut { start: usize, power: u32 },
    /// Swap rows `a, b` and columns `a, b`.
    Swap { a: usize, b: usize },
    /// Clear row and column `index` using its diagonal unit.
    Pivot { index: usize, epsilon: u32, sign: i32 },
    /// Row `target` += α · row `source`, column `target` += ᾱ · column `source`.
    AlphaTrick { target: usize, source: usize, alpha: String },
    /// The remaining block is zero.
    ZeroBlock { start: usize, size: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagEntry {
    pub unit: LocalizedScalar,
    pub epsilon: u32,
    /// Sign of the unit at `ρ`.
    pub sign: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalForm {
    pub entries: Vec<DiagEntry>,
    pub zero_count: usize,
    /// Canonical `t² - 2c t + 1`.
    pub factor: LaurentPoly,
    #[serde(serialize_with = "ser_rational")]
    pub cos: BigRational,
    pub ops: Vec<Op>,
}

fn ser_rational<S: Serializer>(c: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

impl DiagonalForm {
    pub fn total_exponent(&self) -> u32 {
        self.entries.iter().map(|e| e.epsilon).sum()
    }

    pub fn odd_count(&self) -> usize {
        self.entries.iter().filter(|e| e.epsilon % 2 == 1).count()
    }

    /// Audit log of the operations, as JSON.
    pub fn ops_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.ops)?)
    }
}

/// The cosine `c` of a factor associate to `t² - 2ct + 1` with `|c| < 1`.
pub fn localizing_cos(f: &LaurentPoly) -> Result<BigRational> {
    let g = f.canonical();
    let bad = || Error::FactorNotApplicable(f.to_string());
    if g.span() != 2 {
        return Err(bad());
    }
    let (a, b, a2) = (g.coeff(2), g.coeff(1), g.coeff(0));
    if a != a2 || b.clone() * b.clone() >= rat(4) * &a * &a {
        return Err(bad());
    }
    Ok(-b / (rat(2) * a))
}

/// Diagonalize the Hermitian matrix `w` over `Λ_(f)`.
///
/// Elimination is fraction-free: the remaining block is kept as polynomials
/// `m` with the Schur complement equal to `f^e · m / prev`, where `prev` is
/// the previous pivot. Each elimination step divides exactly by `prev`.
pub fn diagonalize_localized(w: &[Vec<LaurentPoly>], f: &LaurentPoly) -> Result<DiagonalForm> {
    let c = localizing_cos(f)?;
    let n = w.len();
    for (i, row) in w.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: i,
                len: row.len(),
                expected: n,
            });
        }
        for j in 0..n {
            if row[j].bar() != w[j][i] {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    let tr = LaurentPoly::t() + LaurentPoly::t().bar();
    let loc = Local {
        f: &tr - &LaurentPoly::constant(rat(2) * &c),
        rho: QuadPoint::from_cos(c.clone())?,
    };
    let is_unit = |p: &LaurentPoly| !p.is_zero() && !p.eval(&loc.rho).is_zero();
    let mut m = w.to_vec();
    let mut prev = LaurentPoly::one();
    let mut e = 0u32;
    let mut ops = Vec::new();
    let mut entries = Vec::new();
    let mut zero_count = 0;
    let mut start = 0;

    let swap = |m: &mut Vec<Vec<LaurentPoly>>, ops: &mut Vec<Op>, a: usize, b: usize| {
        if a != b {
            m.swap(a, b);
            for row in m.iter_mut() {
                row.swap(a, b);
            }
            ops.push(Op::Swap { a, b });
        }
    };

    while start < n {
        let mut min_exp: Option<u32> = None;
        for i in start..n {
            for j in i..n {
                if !m[i][j].is_zero() {
                    let v = m[i][j].multiplicity(&loc.f)?;
                    min_exp = Some(min_exp.map_or(v, |x| x.min(v)));
                }
            }
        }
        let Some(power) = min_exp else {
            ops.push(Op::ZeroBlock {
                start,
                size: n - start,
            });
            zero_count = n - start;
            break;
        };
        if power > 0 {
            let fp = loc.f.pow(power);
            for row in m.iter_mut().skip(start) {
                for x in row.iter_mut().skip(start) {
                    if !x.is_zero() {
                        *x = x
                            .div_exact(&fp)
                            .ok_or_else(|| Error::Internal("f^power does not divide the block".into()))?;
                    }
                }
            }
            e += power;
            ops.push(Op::FactorOut { start, power });
        }
        if let Some(p) = (start..n).find(|&i| is_unit(&m[i][i])) {
            swap(&mut m, &mut ops, start, p);
        } else {
            let (i, j) = (start..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| is_unit(&m[i][j]))
                .ok_or_else(|| Error::Internal("no unit entry after factoring out f".into()))?;
            swap(&mut m, &mut ops, start, i);
            swap(&mut m, &mut ops, start + 1, j);
            let (p, q) = (start, start + 1);
            let alpha = if m[p][q].eval(&loc.rho).real_sign() != 0 {
                LaurentPoly::one()
            } else {
                LaurentPoly::t()
            };
            let alpha_bar = alpha.bar();
            // row p += α row q, then column p += ᾱ column q
            for k in start..n {
                let add = &alpha * &m[q][k];
                m[p][k] = &m[p][k] + &add;
            }
            for k in start..n {
                let add = &alpha_bar * &m[k][q];
                m[k][p] = &m[k][p] + &add;
            }
            ops.push(Op::AlphaTrick {
                target: p,
                source: q,
                alpha: alpha.to_string(),
            });
            if !is_unit(&m[p][p]) {
                return Err(Error::Internal("alpha trick did not produce a unit".into()));
            }
        }
        let piv = m[start][start].clone();
        let val = piv.eval(&loc.rho);
        if !val.is_real() {
            return Err(Error::Internal(format!("diagonal unit has non-real value {val}")));
        }
        let sgn = val.real_sign() * prev.eval(&loc.rho).real_sign();
        for i in start + 1..n {
            for j in i..n {
                let x = &(&piv * &m[i][j]) - &(&m[i][start] * &m[start][j]);
                let x = x
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("elimination step is not exact".into()))?;
                m[j][i] = x.bar();
                m[i][j] = x;
            }
        }
        for k in start + 1..n {
            m[k][start] = LaurentPoly::zero();
            m[start][k] = LaurentPoly::zero();
        }
        ops.push(Op::Pivot {
            index: start,
            epsilon: e,
            sign: sgn,
        });
        entries.push(DiagEntry {
            unit: loc.make(piv.clone(), prev, 0)?,
            epsilon: e,
            sign: sgn,
        });
        prev = piv;
        start += 1;
    }
    Ok(DiagonalForm {
        entries,
        zero_count,
        factor: f.canonical(),
        cos: c,
        ops,
    })
}

/// Jumps predicted by a diagonal form. An entry `u f^ε` with `ε > 0` has the
/// sign of `u` just before `ρ`, vanishes at `ρ`, and has sign `u(ρ)(-1)^ε`
/// just after, since `f = 2cos θ - 2c` changes sign at `ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedJumps {
    pub minus: i64,
    pub plus: i64,
    pub total: i64,
    /// `2 · #{odd ε} mod 4`.
    pub class: u8,
}

pub fn predicted_jumps(d: &DiagonalForm) -> PredictedJumps {
    let mut minus = 0;
    let mut plus = 0;
    for e in d.entries.iter().filter(|e| e.epsilon > 0) {
        let s = i64::from(e.sign);
        minus -= s;
        plus += if e.epsilon % 2 == 1 { -s } else { s };
    }
    PredictedJumps {
        minus,
        plus,
        total: minus + plus,
        class: ((2 * d.odd_count()) % 4) as u8,
    }
}

/// [`predicted_jumps`] at a rational-cosine point, which must be the point
/// the form was localized at.
pub fn jump_from_diagonal(d: &DiagonalForm, p: &CirclePoint) -> Result<PredictedJumps> {
    match p {
        CirclePoint::RationalCos(c) if *c == d.cos => Ok(predicted_jumps(d)),
        _ => Err(Error::PointMismatch {
            point: p.to_string(),
            factor: d.factor.to_string(),
        }),
    }
}

/// Entry counts of the diagonalization of `W(t²)` at `ρ = i`: units, then odd
/// exponent with positive / negative sign, then even positive exponent with
/// positive / negative sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Bcde {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinusOneReport {
    pub counts: Bcde,
    /// `|D - E|`, bounding `|ju±(-1)|`.
    pub bound: usize,
    /// Predicted `ju⁻(-1)` and `ju⁺(-1)`.
    pub minus: i64,
    pub plus: i64,
    /// `Σ ε`, which must equal `mult₋₁(A_L)`.
    pub total_exponent: u32,
    pub expected_exponent: u32,
    pub form: DiagonalForm,
}

impl MinusOneReport {
    pub fn balanced(&self) -> bool {
        self.counts.b == self.counts.c
    }

    pub fn exponent_matches(&self) -> bool {
        self.total_exponent == self.expected_exponent
    }
}

fn classify(d: &DiagonalForm) -> Bcde {
    let mut k = Bcde::default();
    for e in &d.entries {
        let slot = match (e.epsilon, e.epsilon % 2, e.sign > 0) {
            (0, _, _) => &mut k.a,
            (_, 1, true) => &mut k.b,
            (_, 1, false) => &mut k.c,
            (_, _, true) => &mut k.d,
            (_, _, false) => &mut k.e,
        };
        *slot += 1;
    }
    k
}

/// Jumps of `σ` at `-1` from `W(t²)` diagonalized at `ρ = i`. Arriving at
/// `i` corresponds to arriving at `-1`; leaving `i` maps onto the conjugate
/// of the arriving side, so `ju⁺(-1) = -ju⁻(-1)`. The unit factor `1 - t²`
/// of `W(t²)` contributes nothing at `t² + 1`.
pub fn jump_at_minus_one(s: &SeifertMatrix) -> Result<MinusOneReport> {
    let form = diagonalize_localized(&s.hermitian_form(2), &LaurentPoly::poly(&[1, 0, 1]))?;
    let counts = classify(&form);
    let inv = link_invariants(s);
    let expected_exponent = if inv.a_poly.is_zero() {
        0
    } else {
        inv.a_poly.multiplicity(&LaurentPoly::t_plus_one())?
    };
    let dme = counts.d as i64 - counts.e as i64;
    Ok(MinusOneReport {
        counts,
        bound: dme.unsigned_abs() as usize,
        minus: -dme,
        plus: dme,
        total_exponent: form.total_exponent(),
        expected_exponent,
        form,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EvennessReport {
    /// `e_{t + t^-1}(W(t⁴))`.
    pub exponent: u32,
    /// `mult₁(A_L) + 2g + μ - h`.
    pub expected: u32,
    pub even: bool,
    pub matches: bool,
}

/// `e_{t + t^-1}(W(t⁴)) = e_{t-1}(W)`, which must be even.
pub fn evenness_witness(s: &SeifertMatrix) -> Result<EvennessReport> {
    let form = diagonalize_localized(&s.hermitian_form(4), &LaurentPoly::poly(&[1, 0, 1]))?;
    let inv = link_invariants(s);
    let mult1 = inv.a_poly.multiplicity(&LaurentPoly::t_minus_one())? as usize;
    let expected = (mult1 + 2 * s.genus() + s.components()) - inv.h_index;
    let exponent = form.total_exponent();
    Ok(EvennessReport {
        exponent,
        expected: expected as u32,
        even: exponent % 2 == 0,
        matches: exponent as usize == expected,
    })
}
