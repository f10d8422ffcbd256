use std::fmt;

use num_traits::{One, Zero};

use super::{factorial, BigInt, Rational};
use crate::{Error, Result};

/// Dense univariate polynomial over the rationals, index = degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * y + c)
    }

    fn mul_linear(&self, root: &Rational) -> Self {
        // (Y - root) * self
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * root;
        }
        Self::from_coeffs(out)
    }

    fn add_constant(mut self, c: &Rational) -> Self {
        if self.coeffs.is_empty() {
            self.coeffs.push(Rational::zero());
        }
        self.coeffs[0] += c;
        Self::from_coeffs(self.coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*Y")?,
                _ => write!(f, "({c})*Y^{k}")?,
            }
        }
        Ok(())
    }
}

/// Unique polynomial of degree below `samples.len()` through every sample,
/// computed with Newton divided differences.
pub fn interpolate_univariate(samples: &[(BigInt, Rational)]) -> Result<UniPoly> {
    let points: Vec<Rational> = samples
        .iter()
        .map(|(x, _)| Rational::from_integer(x.clone()))
        .collect();
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::Input(format!(
                    "duplicate interpolation point {}",
                    samples[i].0
                )));
            }
        }
    }

    // In-place divided-difference table; afterwards table[k] = f[x_0..x_k].
    let mut table: Vec<Rational> = samples.iter().map(|(_, v)| v.clone()).collect();
    let k = table.len();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &points[i] - &points[i - level];
            table[i] = num / den;
        }
    }

    // Horner on the Newton form.
    let mut poly = UniPoly::zero();
    for i in (0..k).rev() {
        poly = poly.mul_linear(&points[i]).add_constant(&table[i]);
    }
    Ok(poly)
}

/// Coefficient of `Y^l` of the polynomial of degree at most `l` whose values at
/// `l + 1` consecutive integers are `values`.
///
/// Computed as the `l`-th forward difference divided by `l!`, which does not
/// depend on where the run of consecutive points starts. The result is zero
/// exactly when the degree is below `l`.
pub fn leading_coefficient_if_degree(values: &[Rational], l: usize) -> Result<Rational> {
    if values.len() != l + 1 {
        return Err(Error::Input(format!(
            "degree {l} test needs {} samples, got {}",
            l + 1,
            values.len()
        )));
    }
    let mut diffs = values.to_vec();
    for level in 0..l {
        for i in 0..(l - level) {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    let lead = diffs.swap_remove(0);
    if lead.is_zero() {
        return Ok(lead);
    }
    Ok(lead / Rational::from_integer(factorial(l)))
}

impl From<Vec<i64>> for UniPoly {
    fn from(coeffs: Vec<i64>) -> Self {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }
}

impl UniPoly {
    /// `Y^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self { coeffs }
    }
}
