//! Dense determinants and linear solves over any [`Scalar`].
//!
//! Exact scalars use fraction-free (Bareiss) elimination on an integer
//! matrix obtained by clearing row denominators. Floating scalars use
//! Gaussian elimination with partial pivoting and report a pivot-spread
//! condition indicator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A determinant value and, for floating modes, `max|pivot| / min|pivot|`
/// from the elimination (`inf` when a pivot vanished).
#[derive(Debug, Clone, PartialEq)]
pub struct Determinant<T> {
    pub value: T,
    pub condition: Option<f64>,
}

/// Determinant of a square matrix given as rows. The empty matrix has
/// determinant one.
pub fn determinant<T: Scalar>(rows: &[Vec<T>], ctx: T::Context) -> Determinant<T> {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
    if n == 0 {
        return Determinant {
            value: T::one(ctx),
            condition: None,
        };
    }
    if T::EXACT {
        let q = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_rational().expect("exact scalars are finite"))
                    .collect()
            })
            .collect::<Vec<Vec<BigRational>>>();
        Determinant {
            value: T::from_rational(&rational_determinant(&q), ctx),
            condition: None,
        }
    } else {
        pivoted_determinant(rows, ctx)
    }
}

/// Exact determinant of a rational matrix by Bareiss elimination.
pub fn rational_determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    BigRational::new(bareiss(&mut m), scale)
}

/// Fraction-free elimination on an integer matrix; destroys `m`.
pub fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn pivoted_determinant<T: Scalar>(rows: &[Vec<T>], ctx: T::Context) -> Determinant<T> {
    let n = rows.len();
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let mut value = T::one(ctx);
    let mut max_pivot = 0.0f64;
    let mut min_pivot = f64::INFINITY;
    for k in 0..n {
        let p = argmax_abs(&a, k);
        if a[p][k].is_zero() {
            return Determinant {
                value: T::zero(ctx),
                condition: Some(f64::INFINITY),
            };
        }
        if p != k {
            a.swap(p, k);
            value = -value;
        }
        let pivot = a[k][k].clone();
        let mag = pivot.abs().to_f64();
        max_pivot = max_pivot.max(mag);
        min_pivot = min_pivot.min(mag);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone() / pivot.clone();
            for (x, p) in row.iter_mut().zip(pivot_row).skip(k + 1) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        value = value * pivot;
    }
    Determinant {
        value,
        condition: Some(max_pivot / min_pivot),
    }
}

fn argmax_abs<T: Scalar>(a: &[Vec<T>], col: usize) -> usize {
    let mut best = col;
    for i in col + 1..a.len() {
        if a[i][col].abs() > a[best][col].abs() {
            best = i;
        }
    }
    best
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting (exact for
/// rationals). A zero pivot is reported as [`Error::Singular`].
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = a.len();
    assert!(
        a.iter().all(|r| r.len() == n) && b.len() == n,
        "shape mismatch"
    );
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for k in 0..n {
        let p = argmax_abs(&m, k);
        if m[p][k].is_zero() {
            return Err(Error::Singular(format!("zero pivot in column {k}")));
        }
        m.swap(p, k);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone() / pivot_row[k].clone();
            for (x, p) in row.iter_mut().zip(pivot_row).skip(k) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
    }
    let mut x: Vec<T> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let mut acc = m[i][n].clone();
        for (j, xj) in (i + 1..n).zip(x.iter().rev()) {
            acc = acc - m[i][j].clone() * xj.clone();
        }
        x.push(acc / m[i][i].clone());
    }
    x.reverse();
    Ok(x)
}
