//! Seifert matrices and the Alexander module they present.
//!
//! The module `M` is presented by `tV - Vᵀ` over `Λ = Q[t, t^-1]`. Higher
//! Alexander polynomials are computed from its invariant factors; the
//! all-minors definition is kept as an independent cross-check.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circle::{root_multiplicity, CirclePoint};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::{rat, UPoly};
use crate::smith::smith_form;

pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

/// A square integer matrix whose skew part `V - Vᵀ` is integrally congruent
/// to `g` hyperbolic blocks plus a `(μ-1)`-dimensional zero block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
    genus: usize,
    components: usize,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        validate_seifert(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of link components `μ`.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn presentation_matrix(&self) -> LaurentMatrix {
        presentation_matrix(self)
    }

    /// `(1 - t^k) V + (1 - t^-k) Vᵀ`, Hermitian under `t ↦ t^-1`.
    /// `k = 1` is the form whose signatures give the signature function.
    pub fn hermitian_form(&self, k: u32) -> LaurentMatrix {
        let n = self.size();
        let tk = LaurentPoly::t().substitute_power(k);
        let a = &LaurentPoly::one() - &tk;
        let b = &LaurentPoly::one() - &tk.bar();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        &a.scale(&rat(self.entries[i][j])) + &b.scale(&rat(self.entries[j][i]))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Check the skew part and derive genus and number of components.
pub fn validate_seifert(entries: Vec<Vec<i64>>) -> Result<SeifertMatrix> {
    let n = entries.len();
    for (row, r) in entries.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
    }
    let skew: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(entries[i][j]) - BigInt::from(entries[j][i]))
                .collect()
        })
        .collect();
    let sf = smith_form(skew);
    if let Some(d) = sf.diagonal.iter().find(|d| d.abs() != BigInt::from(1)) {
        return Err(Error::InvalidSeifert {
            divisor: d.abs().to_string(),
        });
    }
    let rank = sf.diagonal.len();
    Ok(SeifertMatrix {
        genus: rank / 2,
        components: n - rank + 1,
        entries,
    })
}

/// `tV - Vᵀ`.
pub fn presentation_matrix(s: &SeifertMatrix) -> LaurentMatrix {
    let n = s.size();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| LaurentPoly::from_ints(0, &[-s.get(k, j), s.get(j, k)]))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFactors {
    /// Canonical nonzero diagonal entries `d_1 | d_2 | ... | d_k`.
    pub factors: Vec<LaurentPoly>,
    /// Number of zero diagonal entries.
    pub free_rank: usize,
}

/// Invariant factors over `Q[t, t^-1]`. Each row is first multiplied by the
/// unit power of `t` that makes it polynomial; the Smith form is then taken
/// over `Q[t]` and the result canonicalized, which strips the `t`-powers
/// that are units of the Laurent ring.
pub fn invariant_factors(m: &[Vec<LaurentPoly>]) -> InvariantFactors {
    let cols = m.first().map_or(0, Vec::len);
    let rows: Vec<Vec<UPoly>> = m
        .iter()
        .map(|row| {
            let low = row
                .iter()
                .filter(|p| !p.is_zero())
                .map(LaurentPoly::low)
                .min()
                .unwrap_or(0);
            row.iter()
                .map(|p| p.shift(-low).to_upoly().expect("row shifted to polynomial"))
                .collect()
        })
        .collect();
    let sf = smith_form(rows);
    let factors: Vec<LaurentPoly> = sf
        .diagonal
        .into_iter()
        .map(|d| LaurentPoly::from_upoly(d, 0).canonical())
        .collect();
    InvariantFactors {
        free_rank: cols - factors.len(),
        factors,
    }
}

fn determinant(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut negate = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Determinant of a square Laurent matrix.
pub fn laurent_determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let mut shift = 0;
    let rows: Vec<Vec<UPoly>> = m
        .iter()
        .map(|row| {
            let low = row
                .iter()
                .filter(|p| !p.is_zero())
                .map(LaurentPoly::low)
                .min()
                .unwrap_or(0);
            shift += low;
            row.iter()
                .map(|p| p.shift(-low).to_upoly().expect("row shifted to polynomial"))
                .collect()
        })
        .collect();
    LaurentPoly::from_upoly(determinant(rows), shift)
}

/// `Δ_i` as the gcd of all `(n + 1 - i)`-minors of `tV - Vᵀ`, where
/// `n + 1 = 2g + μ`. Exponential in `n`; meant for small matrices.
pub fn higher_alexander_by_minors(s: &SeifertMatrix, i: usize) -> Result<LaurentPoly> {
    let n = s.size();
    if i == 0 || i > n + 1 {
        return Err(Error::IndexOutOfRange { index: i, max: n + 1 });
    }
    let r = n + 1 - i;
    if r == 0 {
        return Ok(LaurentPoly::one());
    }
    let m: Vec<Vec<UPoly>> = presentation_matrix(s)
        .iter()
        .map(|row| row.iter().map(|p| p.to_upoly().expect("polynomial entries")).collect())
        .collect();
    let mut g = UPoly::zero();
    for rows in (0..n).combinations(r) {
        for cols in (0..n).combinations(r) {
            let minor = rows
                .iter()
                .map(|&a| cols.iter().map(|&b| m[a][b].clone()).collect())
                .collect();
            g = g.gcd(&determinant(minor));
            if g.degree() == Some(0) {
                return Ok(LaurentPoly::one());
            }
        }
    }
    Ok(LaurentPoly::from_upoly(g, 0).canonical())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkInvariants {
    /// Matrix size `n = 2g + μ - 1`.
    pub size: usize,
    /// `Δ_1, Δ_2, ...` up to and including the first that equals 1.
    pub deltas: Vec<LaurentPoly>,
    /// First nonzero `Δ_i`.
    pub a_poly: LaurentPoly,
    /// Its index `h`.
    pub h_index: usize,
    pub factors: Vec<LaurentPoly>,
    pub free_rank: usize,
}

impl LinkInvariants {
    /// `Δ_i` for any `i ≥ 1`: the product of the first `n + 1 - i` diagonal
    /// entries of `[d_1, ..., d_k, 0, ..., 0]`.
    pub fn delta(&self, i: usize) -> LaurentPoly {
        assert!(i >= 1, "Alexander polynomials are indexed from 1");
        let r = (self.size + 1).saturating_sub(i);
        if r > self.factors.len() {
            return LaurentPoly::zero();
        }
        self.factors[..r]
            .iter()
            .fold(LaurentPoly::one(), |acc, d| &acc * d)
            .canonical()
    }

    /// The Alexander polynomial `Δ_1`.
    pub fn alexander(&self) -> LaurentPoly {
        self.delta(1)
    }
}

pub fn link_invariants(s: &SeifertMatrix) -> LinkInvariants {
    let InvariantFactors { factors, free_rank } = invariant_factors(&presentation_matrix(s));
    let mut inv = LinkInvariants {
        size: s.size(),
        deltas: Vec::new(),
        a_poly: LaurentPoly::one(),
        h_index: free_rank + 1,
        factors,
        free_rank,
    };
    inv.a_poly = inv.delta(inv.h_index);
    let one = LaurentPoly::one();
    for i in 1.. {
        let d = inv.delta(i);
        let done = d == one;
        inv.deltas.push(d);
        if done {
            break;
        }
    }
    inv
}

/// `(φ_o, φ_e)`: how many invariant factors contain `f` to a positive odd
/// or positive even power.
pub fn phi_counts(inv: &LinkInvariants, f: &LaurentPoly) -> Result<(usize, usize)> {
    let mut odd = 0;
    let mut even = 0;
    for d in &inv.factors {
        match d.multiplicity(f)? {
            0 => {}
            m if m % 2 == 1 => odd += 1,
            _ => even += 1,
        }
    }
    Ok((odd, even))
}

/// [`phi_counts`] for the prime of a circle point, valid for algebraic
/// points too.
pub fn phi_counts_at(inv: &LinkInvariants, point: &CirclePoint) -> Result<(usize, usize)> {
    let mut odd = 0;
    let mut even = 0;
    for d in &inv.factors {
        match root_multiplicity(d, point)? {
            0 => {}
            m if m % 2 == 1 => odd += 1,
            _ => even += 1,
        }
    }
    Ok((odd, even))
}

/// Random Seifert matrix with genus `g` and `mu` components: a random
/// symmetric matrix with entries in `[-bound, bound]` plus the fixed upper
/// triangular matrix whose skew part is the standard form.
pub fn random_seifert(g: usize, mu: usize, bound: i64, seed: u64) -> SeifertMatrix {
    random_seifert_with(g, mu, bound, seed, false)
}

/// As [`random_seifert`], optionally followed by a congruence `P V Pᵀ` with a
/// random unimodular `P`.
pub fn random_seifert_with(g: usize, mu: usize, bound: i64, seed: u64, congruence: bool) -> SeifertMatrix {
    assert!(mu >= 1 && bound >= 1, "need mu >= 1 and bound >= 1");
    let n = 2 * g + mu - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let a = rng.gen_range(-bound..=bound);
            v[i][j] = a;
            v[j][i] = a;
        }
    }
    for b in 0..g {
        v[2 * b][2 * b + 1] += 1;
    }
    if congruence && n >= 2 {
        let mut p: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            for k in 0..n {
                p[i][k] += c * p[j][k];
            }
        }
        let pv: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| p[i][k] * v[k][j]).sum()).collect())
            .collect();
        v = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| pv[i][k] * p[j][k]).sum()).collect())
            .collect();
    }
    let s = validate_seifert(v).expect("construction yields a valid Seifert matrix");
    debug_assert_eq!((s.genus(), s.components()), (g, mu));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::poly(c)
    }

    fn family(n: i64) -> SeifertMatrix {
        SeifertMatrix::new(vec![
            vec![-1, 1, 0, 0],
            vec![0, -1, 1, 0],
            vec![0, 1, n, 0],
            vec![0, 0, 0, 0],
        ])
        .unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let hopf = SeifertMatrix::new(vec![vec![-1]]).unwrap();
        assert_eq!((hopf.genus(), hopf.components()), (0, 2));
        let v = family(1);
        assert_eq!((v.genus(), v.components()), (1, 3));
        let unknot = SeifertMatrix::new(vec![]).unwrap();
        assert_eq!((unknot.genus(), unknot.components()), (0, 1));
    }

    #[test]
    fn rejects_non_unimodular_skew_part() {
        let r = SeifertMatrix::new(vec![vec![0, 2], vec![0, 0]]);
        assert!(matches!(r, Err(Error::InvalidSeifert { divisor }) if divisor == "2"));
        assert!(matches!(
            SeifertMatrix::new(vec![vec![0, 1], vec![0]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn presentation_examples() {
        let hopf = SeifertMatrix::new(vec![vec![-1]]).unwrap();
        assert_eq!(hopf.presentation_matrix(), vec![vec![p(&[1, -1])]]);
        assert_eq!(
            trefoil().presentation_matrix(),
            vec![vec![p(&[1, -1]), p(&[0, 1])], vec![p(&[-1]), p(&[1, -1])]]
        );
        assert!(SeifertMatrix::new(vec![]).unwrap().presentation_matrix().is_empty());
    }

    #[test]
    fn trefoil_invariant_factors() {
        let f = invariant_factors(&trefoil().presentation_matrix());
        assert_eq!(f.factors, vec![LaurentPoly::one(), p(&[1, -1, 1])]);
        assert_eq!(f.free_rank, 0);
    }

    #[test]
    fn hopf_invariant_factors() {
        let f = invariant_factors(&SeifertMatrix::new(vec![vec![-1]]).unwrap().presentation_matrix());
        assert_eq!(f.factors, vec![p(&[-1, 1])]);
        assert_eq!(f.free_rank, 0);
    }

    #[test]
    fn family_zero_factors_multiply_to_cube() {
        let f = invariant_factors(&family(0).presentation_matrix());
        assert_eq!(f.free_rank, 1);
        let prod = f.factors.iter().fold(LaurentPoly::one(), |a, d| &a * d);
        assert_eq!(prod.canonical(), p(&[-1, 1]).pow(3));
    }

    #[test]
    fn family_minors() {
        for n in [-3i64, 1, 2] {
            let v = family(n);
            assert_eq!(higher_alexander_by_minors(&v, 1).unwrap(), LaurentPoly::zero());
            let expect = (&p(&[-1, 1]) * &p(&[n + 1, -(n + 2), n + 1])).canonical();
            assert_eq!(higher_alexander_by_minors(&v, 2).unwrap(), expect);
        }
        let unknot = SeifertMatrix::new(vec![]).unwrap();
        assert_eq!(higher_alexander_by_minors(&unknot, 1).unwrap(), LaurentPoly::one());
        assert!(higher_alexander_by_minors(&unknot, 2).is_err());
    }

    #[test]
    fn link_invariants_examples() {
        let inv = link_invariants(&family(2));
        assert_eq!(inv.h_index, 2);
        assert_eq!(inv.a_poly, (&p(&[-1, 1]) * &p(&[3, -4, 3])).canonical());
        let hopf = link_invariants(&SeifertMatrix::new(vec![vec![-1]]).unwrap());
        assert_eq!((hopf.h_index, hopf.a_poly.clone()), (1, p(&[-1, 1])));
        assert_eq!(hopf.deltas, vec![p(&[-1, 1]), LaurentPoly::one()]);
        let unknot = link_invariants(&SeifertMatrix::new(vec![]).unwrap());
        assert_eq!(unknot.deltas, vec![LaurentPoly::one()]);
        assert_eq!(unknot.a_poly, LaurentPoly::one());
    }

    #[test]
    fn phi_count_examples() {
        let tp1 = LaurentPoly::t_plus_one();
        let hopf = link_invariants(&SeifertMatrix::new(vec![vec![-1]]).unwrap());
        assert_eq!(phi_counts(&hopf, &tp1).unwrap(), (0, 0));
        let built = LinkInvariants {
            size: 1,
            deltas: vec![],
            a_poly: tp1.pow(2),
            h_index: 1,
            factors: vec![tp1.pow(2)],
            free_rank: 0,
        };
        assert_eq!(phi_counts(&built, &tp1).unwrap(), (0, 1));
    }

    #[test]
    fn random_matrices() {
        let a = random_seifert(2, 1, 3, 7);
        assert_eq!(a.size(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let skew = a.get(i, j) - a.get(j, i);
                let want = match (i, j) {
                    (0, 1) | (2, 3) => 1,
                    (1, 0) | (3, 2) => -1,
                    _ => 0,
                };
                assert_eq!(skew, want);
            }
        }
        let b = random_seifert(0, 3, 5, 1);
        assert_eq!(b.size(), 2);
        assert_eq!(b.get(0, 1), b.get(1, 0));
        assert_eq!(random_seifert(1, 2, 2, 99), random_seifert(1, 2, 2, 99));
        let c = random_seifert_with(2, 3, 2, 5, true);
        assert_eq!((c.genus(), c.components()), (2, 3));
    }
}
