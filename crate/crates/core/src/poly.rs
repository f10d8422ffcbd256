//! Explicit sparse polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{BigInt, Rational};
use crate::blackbox::SupportSet;
use crate::{Error, Result};

/// `coefficient * X^exponents` with a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coefficient: Rational,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(coefficient: Rational, exponents: Vec<u32>) -> Result<Self> {
        if coefficient.is_zero() {
            return Err(Error::Input("monomial with zero coefficient".into()));
        }
        Ok(Self {
            coefficient,
            exponents,
        })
    }

    /// `coefficient * X^L`, the multilinear term of support `L`.
    pub fn multilinear(coefficient: Rational, support: &SupportSet) -> Result<Self> {
        let mut exponents = vec![0; support.universe()];
        for i in support.iter() {
            exponents[i] = 1;
        }
        Self::new(coefficient, exponents)
    }

    pub fn vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn support(&self) -> SupportSet {
        SupportSet::from_indices(
            self.exponents.len(),
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i),
        )
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn eval(&self, point: &[BigInt]) -> Rational {
        let mut acc = BigInt::one();
        for (x, &e) in point.iter().zip(&self.exponents) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        &self.coefficient * Rational::from_integer(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "*X{}", i + 1)?,
                _ => write!(f, "*X{}^{e}", i + 1)?,
            }
        }
        Ok(())
    }
}

/// Finite map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparsePolynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SparsePolynomial {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; like terms are merged and cancellations dropped.
    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            if e.len() != vars {
                return Err(Error::Input(format!(
                    "exponent vector of length {} in a {vars}-variable polynomial",
                    e.len()
                )));
            }
            p.add_term(c, e);
        }
        Ok(p)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn contains_exponents(&self, exponents: &[u32]) -> bool {
        self.terms.contains_key(exponents)
    }

    fn add_term(&mut self, c: Rational, e: Vec<u32>) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `m` to the polynomial.
    pub fn add_monomial(&mut self, m: &Monomial) -> Result<()> {
        if m.vars() != self.vars {
            return Err(Error::Input(format!(
                "monomial over {} variables added to a {}-variable polynomial",
                m.vars(),
                self.vars
            )));
        }
        self.add_term(m.coefficient.clone(), m.exponents.clone());
        Ok(())
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(e, c)| Monomial {
            coefficient: c.clone(),
            exponents: e.clone(),
        })
    }

    pub fn supports(&self) -> std::collections::BTreeSet<SupportSet> {
        self.monomials().map(|m| m.support()).collect()
    }

    pub fn eval(&self, point: &[BigInt]) -> Rational {
        // Integer coefficients are summed without normalising fractions.
        let mut integral = BigInt::zero();
        let mut fractional = Rational::zero();
        'terms: for (exps, c) in &self.terms {
            let mut v = BigInt::one();
            for (x, &e) in point.iter().zip(exps) {
                if e == 0 {
                    continue;
                }
                if x.is_zero() {
                    continue 'terms;
                }
                v *= num_traits::pow(x.clone(), e as usize);
            }
            if c.is_integer() {
                integral += c.numer() * v;
            } else {
                fractional += c * Rational::from_integer(v);
            }
        }
        fractional + Rational::from_integer(integral)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest exponent of any single variable.
    pub fn max_var_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.max_var_degree() <= 1
    }

    pub fn has_distinct_supports(&self) -> bool {
        self.supports().len() == self.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.vars])
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Smallest `C` with `|c| < 2^C` for every coefficient, when all
    /// coefficients are integers.
    pub fn coefficient_bits(&self) -> Option<u64> {
        if !self.is_integral() {
            return None;
        }
        Some(
            self.terms
                .values()
                .map(|c| c.numer().abs().bits())
                .max()
                .unwrap_or(0)
                .max(1),
        )
    }

    /// All coefficients strictly positive, or all strictly negative.
    pub fn is_monotone(&self) -> bool {
        self.terms.values().all(|c| c.is_positive()) || self.terms.values().all(|c| c.is_negative())
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, m) in self.monomials().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn like_terms_merge_and_cancel() {
        let p = SparsePolynomial::from_terms(
            2,
            [(q(2), vec![1, 1]), (q(3), vec![1, 0]), (q(-2), vec![1, 1])],
        )
        .unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coefficient(&[1, 0]), q(3));
    }

    #[test]
    fn evaluation_and_degrees() {
        let p = SparsePolynomial::from_terms(2, [(q(3), vec![2, 1]), (q(-1), vec![0, 1])]).unwrap();
        let x = [BigInt::from(2), BigInt::from(5)];
        assert_eq!(p.eval(&x), q(3 * 4 * 5 - 5));
        assert_eq!(p.total_degree(), 3);
        assert_eq!(p.max_var_degree(), 2);
        assert!(!p.is_multilinear());
        assert!(p.has_distinct_supports());
        assert!(!p.is_monotone());
        assert_eq!(p.coefficient_bits(), Some(2));
    }

    #[test]
    fn wrong_arity_rejected() {
        assert!(SparsePolynomial::from_terms(2, [(q(1), vec![1])]).is_err());
    }

    #[test]
    fn display() {
        let m = Monomial::new(q(-5), vec![0, 1, 2]).unwrap();
        assert_eq!(m.to_string(), "-5*X2*X3^2");
    }
}
