//! Exact determinants and Pfaffians.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{BigInt, Rational};
use crate::{Error, Result};

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::Input(format!(
            "matrix with {n} rows has a row of length {}",
            row.len()
        )));
    }
    Ok(n)
}

/// Determinant of a square rational matrix. Rows are scaled to integers and
/// the integer determinant is taken with Bareiss elimination.
pub fn determinant(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = check_square(m)?;
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for row in m {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale *= l;
    }
    Ok(Rational::new(determinant_int(&rows)?, scale))
}

/// Determinant of a square integer matrix (fraction-free Bareiss). Small
/// inputs run in `i128` and fall back to big integers on overflow.
pub fn determinant_int(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(m)?;
    let small: Option<Vec<Vec<i128>>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect())
        .collect();
    if let Some(mut a) = small {
        if let Some(d) = bareiss_i128(&mut a) {
            return Ok(BigInt::from(d));
        }
    }
    let mut a = m.to_vec();
    Ok(bareiss_big(&mut a, n))
}

fn bareiss_i128(a: &mut [Vec<i128>]) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return Some(1);
    }
    a[n - 1][n - 1].checked_mul(sign)
}

fn bareiss_big(a: &mut [Vec<BigInt>], n: usize) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 {
        BigInt::one()
    } else {
        a[n - 1][n - 1].clone()
    };
    if negate {
        -d
    } else {
        d
    }
}

fn check_skew(m: &[Vec<Rational>]) -> Result<()> {
    let n = m.len();
    for i in 0..n {
        for j in i..n {
            if m[i][j] != -m[j][i].clone() {
                return Err(Error::Input(format!(
                    "matrix is not skew-symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Pfaffian of a skew-symmetric rational matrix by skew elimination: pivot
/// on `A[k][k+1]` (swapping index `k+1` with a later one when it is zero),
/// then reduce the trailing block by the Schur complement. Odd dimension
/// gives zero.
pub fn pfaffian(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = check_square(m)?;
    check_skew(m)?;
    if n % 2 == 1 {
        return Ok(Rational::zero());
    }
    let mut a = m.to_vec();
    let mut pf = Rational::one();
    for k in (0..n).step_by(2) {
        if a[k][k + 1].is_zero() {
            let Some(j) = (k + 2..n).find(|&j| !a[k][j].is_zero()) else {
                return Ok(Rational::zero());
            };
            a.swap(k + 1, j);
            for row in a.iter_mut() {
                row.swap(k + 1, j);
            }
            pf = -pf;
        }
        let p = a[k][k + 1].clone();
        pf *= &p;
        for i in k + 2..n {
            for j in i + 1..n {
                let t = (&a[k + 1][i] * &a[k][j] - &a[k][i] * &a[k + 1][j]) / &p;
                if !t.is_zero() {
                    a[i][j] += &t;
                    a[j][i] -= t;
                }
            }
        }
    }
    Ok(pf)
}

/// [`pfaffian`] on an integer matrix.
pub fn pfaffian_int(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let q: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let pf = pfaffian(&q)?;
    debug_assert!(pf.is_integer());
    Ok(pf.to_integer())
}
