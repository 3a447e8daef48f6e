//! Theorem checkers over one Seifert matrix, and the report types shared by
//! the CLI and the random campaign.

pub mod campaign;
pub mod io;
pub mod plot;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::circle::{circle_roots, root_multiplicity, CirclePoint};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::localdiag::{
    diagonalize_localized, evenness_witness, jump_at_minus_one, predicted_jumps, DiagonalForm,
    EvennessReport, MinusOneReport,
};
use crate::seifert::{higher_alexander_by_minors, link_invariants, phi_counts_at, LinkInvariants, SeifertMatrix};
use crate::signature::{shadow_signature, signature_function_with, PointValue, StepFunction};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Main,
    Bound,
    Bound2,
    Cong,
    Even,
    Estmult,
    Remark,
    Module7,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Main,
        TheoremId::Bound,
        TheoremId::Bound2,
        TheoremId::Cong,
        TheoremId::Even,
        TheoremId::Estmult,
        TheoremId::Remark,
        TheoremId::Module7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Main => "main",
            TheoremId::Bound => "bound",
            TheoremId::Bound2 => "bound2",
            TheoremId::Cong => "cong",
            TheoremId::Even => "even",
            TheoremId::Estmult => "estmult",
            TheoremId::Remark => "remark",
            TheoremId::Module7 => "module7",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

/// An exact value on either side of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Int(i64),
    Poly(LaurentPoly),
}

impl From<i64> for Quantity {
    fn from(v: i64) -> Self {
        Quantity::Int(v)
    }
}

impl From<LaurentPoly> for Quantity {
    fn from(p: LaurentPoly) -> Self {
        Quantity::Poly(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
    EqMod(i64),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Le => f.write_str("<="),
            Relation::Ge => f.write_str(">="),
            Relation::Eq => f.write_str("=="),
            Relation::EqMod(m) => write!(f, "== (mod {m})"),
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub description: String,
    pub lhs: Quantity,
    pub relation: Relation,
    pub rhs: Quantity,
    pub pass: bool,
    /// Checked through the nullity bound at a point whose exact value was
    /// not computed.
    pub weakened: bool,
    pub point: Option<String>,
}

impl Check {
    fn ints(description: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        let pass = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
            Relation::EqMod(m) => (lhs - rhs).rem_euclid(m) == 0,
        };
        Check {
            description: description.into(),
            lhs: lhs.into(),
            relation,
            rhs: rhs.into(),
            pass,
            weakened: false,
            point: None,
        }
    }

    fn polys(description: impl Into<String>, lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        Check {
            description: description.into(),
            pass: lhs == rhs,
            lhs: lhs.into(),
            relation: Relation::Eq,
            rhs: rhs.into(),
            weakened: false,
            point: None,
        }
    }

    fn at(mut self, p: &CirclePoint) -> Self {
        self.point = Some(p.to_string());
        self
    }

    fn weakened(mut self) -> Self {
        self.weakened = true;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub theorem: String,
    pub applicable: bool,
    pub checks: Vec<Check>,
    pub overall: bool,
    pub witness: Witness,
}

impl TheoremReport {
    fn new(theorem: impl Into<String>, a: &Analysis, applicable: bool, checks: Vec<Check>) -> Self {
        TheoremReport {
            schema: SCHEMA,
            theorem: theorem.into(),
            applicable,
            overall: checks.iter().all(|c| c.pass),
            checks,
            witness: Witness {
                name: a.name.clone(),
                matrix: a.matrix.entries().to_vec(),
            },
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub samples_per_arc: usize,
    /// Tighten the `|ju±(1)| ≤ μ - 1` bound by one, so that the harness can
    /// be seen to report failures.
    pub inject_fault: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            samples_per_arc: 1,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalPoint {
    pub point: CirclePoint,
    pub form: DiagonalForm,
}

/// Everything the checkers read, computed once.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub name: String,
    pub matrix: SeifertMatrix,
    pub inv: LinkInvariants,
    pub sf: StepFunction,
    pub minus_one: MinusOneReport,
    pub evenness: EvennessReport,
    /// Localized diagonal forms of `W` at interior critical points with
    /// rational cosine.
    pub local: Vec<LocalPoint>,
    pub options: Options,
}

pub fn analyze(name: &str, s: &SeifertMatrix, options: Options) -> Result<Analysis> {
    let inv = link_invariants(s);
    let sf = signature_function_with(s, &inv, options.samples_per_arc)?;
    let w = s.hermitian_form(1);
    let mut local = Vec::new();
    for p in &sf.points {
        if let CirclePoint::RationalCos(_) = p.point {
            local.push(LocalPoint {
                point: p.point.clone(),
                form: diagonalize_localized(&w, &p.point.trace_factor())?,
            });
        }
    }
    Ok(Analysis {
        name: name.to_string(),
        matrix: s.clone(),
        minus_one: jump_at_minus_one(s)?,
        evenness: evenness_witness(s)?,
        inv,
        sf,
        local,
        options,
    })
}

fn mult(p: &LaurentPoly, point: &CirclePoint) -> i64 {
    if p.is_zero() {
        return 0;
    }
    i64::from(root_multiplicity(p, point).expect("nonzero polynomial"))
}

/// Roots of `p` on the whole circle other than `1`, with multiplicity:
/// interior points of the upper semicircle stand for a conjugate pair.
fn roots_away_from_one(p: &LaurentPoly) -> i64 {
    circle_roots(p)
        .expect("nonzero polynomial")
        .into_iter()
        .map(|(pt, m)| match pt {
            CirclePoint::One => 0,
            CirclePoint::MinusOne => i64::from(m),
            _ => 2 * i64::from(m),
        })
        .sum()
}

fn jump_bounds_at(a: &Analysis, bound: impl Fn(&CirclePoint) -> i64, what: &str) -> Vec<Check> {
    let mut checks = Vec::new();
    for sp in a.sf.points.iter().filter(|sp| sp.point.is_interior()) {
        let b = bound(&sp.point);
        match (&sp.value, sp.jumps) {
            (_, Some(j)) => {
                checks.push(Check::ints(format!("|ju-| <= {what}"), j.minus.abs(), Relation::Le, b).at(&sp.point));
                checks.push(Check::ints(format!("|ju+| <= {what}"), j.plus.abs(), Relation::Le, b).at(&sp.point));
            }
            (PointValue::Unresolved { before, after, .. }, None) => {
                checks.push(
                    Check::ints(format!("|σ+ - σ-| <= 2 {what}"), (after - before).abs(), Relation::Le, 2 * b)
                        .at(&sp.point)
                        .weakened(),
                );
            }
            _ => {}
        }
    }
    checks
}

fn at_boundary(a: &Analysis, p: CirclePoint) -> Option<&crate::signature::StepPoint> {
    a.sf.points.iter().find(|sp| sp.point == p)
}

pub fn check_main(a: &Analysis) -> TheoremReport {
    let mut checks = Vec::new();
    let mu = a.matrix.components() as i64;
    // (a) no jumps away from the candidate set
    for sp in a.sf.points.iter().filter(|sp| !sp.critical) {
        let j = sp.jumps.expect("boundary points are rational");
        checks.push(Check::ints("ju- at a non-root of (t-1)A_L", j.minus, Relation::Eq, 0).at(&sp.point));
        checks.push(Check::ints("ju+ at a non-root of (t-1)A_L", j.plus, Relation::Eq, 0).at(&sp.point));
    }
    let one = at_boundary(a, CirclePoint::One).expect("θ = 0 is always listed");
    let v1 = one.value.exact().expect("exact at θ = 0").signature;
    checks.push(Check::ints("σ(1)", v1, Relation::Eq, 0).at(&CirclePoint::One));
    // (b)
    checks.extend(jump_bounds_at(a, |p| mult(&a.inv.a_poly, p), "mult_ω(A_L)"));
    // (c), (d)
    let m1 = mult(&a.inv.a_poly, &CirclePoint::MinusOne);
    checks.push(Check::ints("mult_-1(A_L)", m1, Relation::EqMod(2), 0));
    let last = a.sf.points.last().expect("θ = π is always listed");
    let jm = last.jumps.expect("exact at θ = π");
    checks.push(Check::ints("2|ju-(-1)| <= mult_-1(A_L)", 2 * jm.minus.abs(), Relation::Le, m1).at(&last.point));
    checks.push(Check::ints("2|ju+(-1)| <= mult_-1(A_L)", 2 * jm.plus.abs(), Relation::Le, m1).at(&last.point));
    // (e)
    let bound = if a.options.inject_fault { mu - 2 } else { mu - 1 };
    let j1 = one.jumps.expect("exact at θ = 0");
    let label = if a.options.inject_fault { "μ - 2 (injected fault)" } else { "μ - 1" };
    checks.push(Check::ints(format!("|ju-(1)| <= {label}"), j1.minus.abs(), Relation::Le, bound).at(&one.point));
    checks.push(Check::ints(format!("|ju+(1)| <= {label}"), j1.plus.abs(), Relation::Le, bound).at(&one.point));
    TheoremReport::new("main", a, true, checks)
}

pub fn check_bound(a: &Analysis) -> TheoremReport {
    let sigma = a.sf.murasugi().abs();
    let mu = a.matrix.components() as i64;
    let m1 = mult(&a.inv.a_poly, &CirclePoint::MinusOne);
    let roots = roots_away_from_one(&a.inv.a_poly);
    let checks = vec![Check::ints(
        "2(|σ_L| + 1 - μ) + mult_-1(A_L) <= 2 #{roots of A_L on the circle away from 1}",
        2 * (sigma + 1 - mu) + m1,
        Relation::Le,
        2 * roots,
    )];
    TheoremReport::new("bound", a, true, checks)
}

pub fn check_bound2(a: &Analysis) -> TheoremReport {
    let delta = a.inv.delta(1);
    if delta.is_zero() {
        return TheoremReport::new("bound2", a, false, vec![]);
    }
    let mut checks = Vec::new();
    for sp in &a.sf.points {
        if mult(&delta, &sp.point) > 0 {
            continue;
        }
        let jumped = match (&sp.value, sp.jumps) {
            (_, Some(j)) => j.minus.abs() + j.plus.abs(),
            (PointValue::Unresolved { before, after, .. }, None) => (after - before).abs(),
            _ => 0,
        };
        checks.push(Check::ints("jump at a non-root of Δ_L", jumped, Relation::Eq, 0).at(&sp.point));
    }
    let sigma = a.sf.murasugi().abs();
    let m1 = mult(&delta, &CirclePoint::MinusOne);
    let m_one = mult(&delta, &CirclePoint::One);
    let roots = roots_away_from_one(&delta) + m_one;
    checks.push(Check::ints(
        "2|σ_L| + mult_-1(Δ_L) <= 2 #{roots of Δ_L on the circle}",
        2 * sigma + m1,
        Relation::Le,
        2 * roots,
    ));
    TheoremReport::new("bound2", a, true, checks)
}

pub fn check_cong(a: &Analysis) -> TheoremReport {
    let mut checks = Vec::new();
    for sp in a.sf.points.iter().filter(|sp| sp.point.is_interior()) {
        let m = mult(&a.inv.a_poly, &sp.point);
        let (before, after) = match &sp.value {
            PointValue::Exact(_) => {
                let j = sp.jumps.expect("exact point");
                (j.minus, j.plus)
            }
            PointValue::Unresolved { before, after, jump_bound, .. } => {
                let total = after - before;
                checks.push(Check::ints("ju", total, Relation::EqMod(4), 2 * m).at(&sp.point));
                if m == 1 {
                    // one vanishing factor: |ju±| <= 1 and |ju| = 2 pin ju± = ±1
                    checks.push(Check::ints("one-sided jump bound", *jump_bound as i64, Relation::Le, 1).at(&sp.point).weakened());
                    checks.push(Check::ints("|ju|", total.abs(), Relation::Eq, 2).at(&sp.point).weakened());
                }
                continue;
            }
        };
        checks.push(Check::ints("ju", before + after, Relation::EqMod(4), 2 * m).at(&sp.point));
        if m == 1 {
            checks.push(Check::ints("ju+ - ju-", after - before, Relation::Eq, 0).at(&sp.point));
            checks.push(Check::ints("|ju+|", after.abs(), Relation::Eq, 1).at(&sp.point));
        }
    }
    TheoremReport::new("cong", a, true, checks)
}

pub fn check_even(a: &Analysis) -> TheoremReport {
    let m1 = mult(&a.inv.a_poly, &CirclePoint::One);
    let mu = a.matrix.components() as i64;
    let h = a.inv.h_index as i64;
    let e = &a.evenness;
    let checks = vec![
        Check::ints("mult_1(A_L) + μ + h", m1 + mu + h, Relation::EqMod(2), 0),
        Check::ints("e_{t+1/t}(W(t^4))", i64::from(e.exponent), Relation::EqMod(2), 0),
        Check::ints(
            "e_{t+1/t}(W(t^4)) against mult_1(A_L) + 2g + μ - h",
            i64::from(e.exponent),
            Relation::Eq,
            i64::from(e.expected),
        ),
    ];
    TheoremReport::new("even", a, true, checks)
}

pub fn check_estmult(a: &Analysis) -> TheoremReport {
    let delta = a.inv.delta(1);
    if delta.is_zero() {
        return TheoremReport::new("estmult", a, false, vec![]);
    }
    let mu = a.matrix.components() as i64;
    let checks = vec![Check::ints(
        "mult_1(Δ_L) >= μ - 1",
        mult(&delta, &CirclePoint::One),
        Relation::Ge,
        mu - 1,
    )];
    TheoremReport::new("estmult", a, true, checks)
}

pub fn check_remark(a: &Analysis) -> TheoremReport {
    let m1 = mult(&a.inv.a_poly, &CirclePoint::One);
    let rhs = a.matrix.components() as i64 - a.inv.h_index as i64;
    let checks = vec![
        Check::ints("mult_1(A_L) >= μ - h", m1, Relation::Ge, rhs),
        Check::ints("mult_1(A_L)", m1, Relation::EqMod(2), rhs),
    ];
    TheoremReport::new("remark", a, true, checks)
}

pub fn check_module7(a: &Analysis) -> TheoremReport {
    let mut checks = Vec::new();
    let mut sum_odd = 0i64;
    for sp in a.sf.points.iter().filter(|sp| sp.point.is_interior()) {
        let (odd, _) = phi_counts_at(&a.inv, &sp.point).expect("invariant factors are nonzero");
        let odd = odd as i64;
        sum_odd += 2 * odd;
        let total = match (&sp.value, sp.jumps) {
            (_, Some(j)) => j.total,
            (PointValue::Unresolved { before, after, .. }, None) => after - before,
            _ => continue,
        };
        checks.push(Check::ints("|ju| <= 2 φ_o", total.abs(), Relation::Le, 2 * odd).at(&sp.point));
        checks.push(Check::ints("|ju|", total.abs(), Relation::EqMod(4), 2 * odd).at(&sp.point));
    }
    let last = a.sf.points.last().expect("θ = π is always listed");
    let (_, even) = phi_counts_at(&a.inv, &CirclePoint::MinusOne).expect("invariant factors are nonzero");
    let even = even as i64;
    let j = last.jumps.expect("exact at θ = π");
    for (label, v) in [("|ju-(-1)|", j.minus.abs()), ("|ju+(-1)|", j.plus.abs())] {
        checks.push(Check::ints(format!("{label} <= φ_e(-1)"), v, Relation::Le, even).at(&last.point));
        checks.push(Check::ints(label, v, Relation::EqMod(2), even).at(&last.point));
    }
    let (_, after_one) = a.sf.one_sided(0);
    checks.push(Check::ints(
        "|σ_L - σ+(1)| <= φ_e(-1) + Σ φ_o over the circle",
        (a.sf.murasugi() - after_one).abs(),
        Relation::Le,
        even + sum_odd,
    ));
    TheoremReport::new("module7", a, true, checks)
}

pub fn check(a: &Analysis, id: TheoremId) -> TheoremReport {
    match id {
        TheoremId::Main => check_main(a),
        TheoremId::Bound => check_bound(a),
        TheoremId::Bound2 => check_bound2(a),
        TheoremId::Cong => check_cong(a),
        TheoremId::Even => check_even(a),
        TheoremId::Estmult => check_estmult(a),
        TheoremId::Remark => check_remark(a),
        TheoremId::Module7 => check_module7(a),
    }
}

pub fn check_all(a: &Analysis, ids: &[TheoremId]) -> Vec<TheoremReport> {
    ids.iter().map(|&id| check(a, id)).collect()
}

/// Cross-checks between independent computations of the same quantity.
pub fn oracle_report(a: &Analysis, minors_size_limit: usize) -> Result<TheoremReport> {
    let mut checks = Vec::new();
    let n = a.matrix.size();
    if n <= minors_size_limit {
        for i in 1..=n + 1 {
            checks.push(Check::polys(
                format!("Δ_{i} by minors against invariant factors"),
                higher_alexander_by_minors(&a.matrix, i)?,
                a.inv.delta(i),
            ));
        }
    }
    let det = crate::seifert::laurent_determinant(&a.matrix.hermitian_form(1));
    for lp in &a.local {
        let sp = a
            .sf
            .points
            .iter()
            .find(|sp| sp.point == lp.point)
            .ok_or_else(|| Error::Internal("localized point missing from step function".into()))?;
        let j = sp.jumps.ok_or_else(|| Error::Internal("rational point without jumps".into()))?;
        let p = predicted_jumps(&lp.form);
        checks.push(Check::ints("diagonal ju- against sampled ju-", p.minus, Relation::Eq, j.minus).at(&lp.point));
        checks.push(Check::ints("diagonal ju+ against sampled ju+", p.plus, Relation::Eq, j.plus).at(&lp.point));
        checks.push(Check::ints(
            "|ju±| <= Σε",
            j.minus.abs().max(j.plus.abs()),
            Relation::Le,
            i64::from(lp.form.total_exponent()),
        ).at(&lp.point));
        if lp.form.zero_count == 0 {
            let e = det.multiplicity(&lp.form.factor)?;
            checks.push(Check::ints(
                "Σε against the multiplicity of f in det W",
                i64::from(lp.form.total_exponent()),
                Relation::Eq,
                i64::from(e),
            ).at(&lp.point));
        }
    }
    let mo = &a.minus_one;
    let last = a.sf.points.last().expect("θ = π is always listed");
    let j = last.jumps.expect("exact at θ = π");
    checks.push(Check::ints("B", mo.counts.b as i64, Relation::Eq, mo.counts.c as i64).at(&last.point));
    checks.push(Check::ints("|ju-(-1)| <= |D - E|", j.minus.abs(), Relation::Le, mo.bound as i64).at(&last.point));
    checks.push(Check::ints("|ju+(-1)| <= |D - E|", j.plus.abs(), Relation::Le, mo.bound as i64).at(&last.point));
    checks.push(Check::ints("E - D against sampled ju-(-1)", mo.minus, Relation::Eq, j.minus).at(&last.point));
    checks.push(Check::ints("D - E against sampled ju+(-1)", mo.plus, Relation::Eq, j.plus).at(&last.point));
    checks.push(Check::ints(
        "e_{t+1/t}(W(t^2)) against mult_-1(A_L)",
        i64::from(mo.total_exponent),
        Relation::Eq,
        i64::from(mo.expected_exponent),
    ));
    Ok(TheoremReport::new("oracles", a, true, checks))
}

/// Checks on every exactly evaluated signature: `σ(1) = 0` and parity.
pub fn structural_report(a: &Analysis) -> TheoremReport {
    let n = a.matrix.size() as i64;
    let mut checks = Vec::new();
    let one = a.sf.points.first().and_then(|sp| sp.value.exact());
    checks.push(
        Check::ints("σ(1)", one.map_or(i64::MIN, |v| v.signature), Relation::Eq, 0).at(&CirclePoint::One),
    );
    let mut values: Vec<(String, crate::signature::SignatureValue)> = a
        .sf
        .points
        .iter()
        .filter_map(|sp| sp.value.exact().map(|v| (sp.point.to_string(), v)))
        .collect();
    for arc in &a.sf.arcs {
        values.push((format!("arc ({}, {})", arc.start, arc.end), arc.signature_value()));
    }
    for (at, v) in values {
        let mut c = Check::ints("|σ| + ν <= n", v.signature.abs() + v.nullity as i64, Relation::Le, n);
        c.point = Some(at.clone());
        checks.push(c);
        let mut c = Check::ints("σ", v.signature, Relation::EqMod(2), n - v.nullity as i64);
        c.point = Some(at);
        checks.push(c);
    }
    TheoremReport::new("structure", a, true, checks)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShadowTally {
    pub samples: usize,
    pub compared: usize,
    pub agreed: usize,
}

/// Compare exact arc values with a double-precision eigenvalue computation
/// at each arc sample, skipping samples within `1e-6` of singular.
pub fn shadow_report(a: &Analysis) -> (ShadowTally, Vec<Check>) {
    let mut tally = ShadowTally::default();
    let mut mismatches = Vec::new();
    for arc in &a.sf.arcs {
        for c in &arc.samples {
            tally.samples += 1;
            let cf = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
            let (sig, min) = shadow_signature(&a.matrix, cf);
            if min > 1e-6 {
                tally.compared += 1;
                if sig == arc.value {
                    tally.agreed += 1;
                } else {
                    let mut chk = Check::ints("float shadow signature", sig, Relation::Eq, arc.value);
                    chk.point = Some(format!("cos θ = {c}"));
                    mismatches.push(chk);
                }
            }
        }
    }
    (tally, mismatches)
}
