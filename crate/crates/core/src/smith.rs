//! Diagonalization over a Euclidean domain by independent row and column
//! operations (Smith normal form). Used over the integers for the skew part
//! of a Seifert matrix and over `Q[t]` for the Alexander module.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::UPoly;

pub trait Euclidean: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// Compare Euclidean sizes (degree, absolute value).
    fn size_cmp(&self, other: &Self) -> Ordering;
    fn div_rem(&self, d: &Self) -> (Self, Self);
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// A unit that makes a line of entries smaller to store, if any.
    fn line_normalizer(_line: &[&Self]) -> Option<Self> {
        None
    }
}

impl Euclidean for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        num_integer::Integer::div_rem(self, d)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Euclidean for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree())
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        UPoly::div_rem(self, d)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    /// Rescale a row or column so its entries have integer coefficients with
    /// unit content; nonzero rational constants are units of `Q[t]`.
    fn line_normalizer(line: &[&Self]) -> Option<Self> {
        let joined: Vec<BigRational> = line
            .iter()
            .flat_map(|p| p.coeffs().iter().cloned())
            .collect();
        let (content, _) = UPoly::new(joined).primitive_part();
        if content.is_zero() || content.abs().is_one() {
            return None;
        }
        Some(UPoly::constant(content.abs().recip()))
    }
}

/// Result of diagonalizing an `r x c` matrix: the nonzero diagonal entries
/// `d_1 | d_2 | ... | d_k` (unnormalized) and the number of rows and columns.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub diagonal: Vec<T>,
    pub rows: usize,
    pub cols: usize,
}

pub fn smith_form<T: Euclidean>(mut a: Vec<Vec<T>>) -> SmithForm<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry in the trailing block; ties go to the
            // first in row-major order.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].size_cmp(&a[bi][bj]) == Ordering::Less) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { diagonal, rows, cols };
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }

            let mut clean = true;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, _) = a[i][k].div_rem(&a[k][k]);
                for j in k..cols {
                    a[i][j] = a[i][j].sub(&q.mul(&a[k][j]));
                }
                normalize_row(&mut a, i, k);
                clean &= a[i][k].is_zero();
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, _) = a[k][j].div_rem(&a[k][k]);
                for i in k..rows {
                    a[i][j] = a[i][j].sub(&q.mul(&a[i][k]));
                }
                normalize_col(&mut a, j, k);
                clean &= a[k][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row into the pivot row and go again.
            let offender = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !a[i][j].div_rem(&a[k][k]).1.is_zero())
            });
            match offender {
                Some(i) => {
                    for j in k..cols {
                        a[k][j] = a[k][j].add(&a[i][j]);
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[k][k].clone());
    }
    SmithForm { diagonal, rows, cols }
}

fn normalize_row<T: Euclidean>(a: &mut [Vec<T>], i: usize, from: usize) {
    let line: Vec<&T> = a[i][from..].iter().collect();
    if let Some(u) = T::line_normalizer(&line) {
        for x in a[i][from..].iter_mut() {
            *x = x.mul(&u);
        }
    }
}

fn normalize_col<T: Euclidean>(a: &mut [Vec<T>], j: usize, from: usize) {
    let line: Vec<&T> = a[from..].iter().map(|r| &r[j]).collect();
    if let Some(u) = T::line_normalizer(&line) {
        for row in a[from..].iter_mut() {
            row[j] = row[j].mul(&u);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn integer_smith_form() {
        let sf = smith_form(ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        let d: Vec<BigInt> = sf.diagonal.iter().map(|x| x.abs()).collect();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn skew_symplectic_block_has_unit_divisors() {
        let sf = smith_form(ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        assert_eq!(sf.diagonal.len(), 2);
        assert!(sf.diagonal.iter().all(|x| x.abs().is_one()));
    }

    #[test]
    fn polynomial_smith_form_divisibility() {
        let x = |c: &[i64]| UPoly::from_ints(c);
        // det = x (x-1)^2, gcd of entries x-1
        let m = vec![
            vec![x(&[-1, 1]), x(&[-1, 1])],
            vec![x(&[-1, 1]), x(&[-1, 0, 1])],
        ];
        let sf = smith_form(m);
        assert_eq!(sf.diagonal.len(), 2);
        assert_eq!(sf.diagonal[0].primitive(), x(&[-1, 1]));
        assert_eq!(sf.diagonal[1].primitive(), x(&[0, -1, 1]));
    }
}
