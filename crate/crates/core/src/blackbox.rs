//! Oracle handles and the wrappers the algorithms are assembled from.
//!
//! Every [`BlackBox`] derived from another one (restriction, subtraction,
//! constant stripping, the degree-two quotient) forwards each evaluation to
//! its parent exactly once, so the [`OracleStats`] of the root box count
//! calls to the real oracle no matter how deeply wrappers are nested.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};

use crate::arith::{BigInt, Rational};
use crate::poly::SparsePolynomial;
use crate::{Error, Result};

/// Subset of `{0, .., universe - 1}` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet {
    universe: usize,
    words: Vec<u64>,
}

impl SupportSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        assert!(
            i < self.universe,
            "index {i} outside universe {}",
            self.universe
        );
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_disjoint(&self, other: &SupportSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        s
    }

    pub fn difference(&self, other: &SupportSet) -> SupportSet {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s
    }

    /// Ascending iteration.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Call accounting shared by a root box and everything derived from it.
#[derive(Debug, Default)]
pub struct OracleStats {
    total_calls: AtomicU64,
    calls_at_last_output: AtomicU64,
    max_point_bits: AtomicU64,
    max_coordinate: Mutex<BigInt>,
}

impl OracleStats {
    pub fn total_calls(&self) -> u64 {
        self.total_calls.load(Ordering::SeqCst)
    }

    pub fn calls_at_last_output(&self) -> u64 {
        self.calls_at_last_output.load(Ordering::SeqCst)
    }

    /// Snapshots the call counter and returns the calls made since the
    /// previous snapshot.
    pub fn mark_output(&self) -> u64 {
        let now = self.total_calls();
        let before = self.calls_at_last_output.swap(now, Ordering::SeqCst);
        now.saturating_sub(before)
    }

    /// Bit length of the largest coordinate magnitude seen so far.
    pub fn max_point_bits(&self) -> u64 {
        self.max_point_bits.load(Ordering::SeqCst)
    }

    /// Largest coordinate magnitude seen so far.
    pub fn max_coordinate(&self) -> BigInt {
        self.max_coordinate.lock().unwrap().clone()
    }

    fn record(&self, point: &[BigInt]) {
        self.total_calls.fetch_add(1, Ordering::SeqCst);
        let Some(largest) = point.iter().map(|x| x.abs()).max() else {
            return;
        };
        let bits = largest.bits();
        if bits >= self.max_point_bits.load(Ordering::SeqCst) {
            self.max_point_bits.fetch_max(bits, Ordering::SeqCst);
            let mut max = self.max_coordinate.lock().unwrap();
            if largest > *max {
                *max = largest;
            }
        }
    }
}

type EvalFn = dyn Fn(&[BigInt]) -> Result<Rational> + Send + Sync;

/// Evaluation oracle for a hidden polynomial in `vars` variables.
///
/// The constructor takes the caller's promise that the hidden polynomial has
/// total degree at most `total_degree`. Optional metadata (per-variable
/// degree, coefficient bit size, monotonicity) unlocks specific procedures.
#[derive(Clone)]
pub struct BlackBox {
    vars: usize,
    total_degree: u32,
    var_degree: Option<u32>,
    coeff_bits: Option<u64>,
    monotone: bool,
    positive_only: bool,
    eval: Arc<EvalFn>,
    stats: Arc<OracleStats>,
}

impl fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBox")
            .field("vars", &self.vars)
            .field("total_degree", &self.total_degree)
            .field("var_degree", &self.var_degree)
            .field("coeff_bits", &self.coeff_bits)
            .field("monotone", &self.monotone)
            .field("calls", &self.stats.total_calls())
            .finish()
    }
}

impl BlackBox {
    /// Root box around an infallible evaluation function. A total degree of 0
    /// is stored as 1 so that sampling ranges `[1, 2D]` are never empty.
    pub fn new<F>(vars: usize, total_degree: u32, f: F) -> Self
    where
        F: Fn(&[BigInt]) -> Rational + Send + Sync + 'static,
    {
        Self::try_new(vars, total_degree, move |x| Ok(f(x)))
    }

    /// Root box around a fallible evaluation function.
    pub fn try_new<F>(vars: usize, total_degree: u32, f: F) -> Self
    where
        F: Fn(&[BigInt]) -> Result<Rational> + Send + Sync + 'static,
    {
        let stats = Arc::new(OracleStats::default());
        let counter = Arc::clone(&stats);
        Self {
            vars,
            total_degree: total_degree.max(1),
            var_degree: None,
            coeff_bits: None,
            monotone: false,
            positive_only: false,
            eval: Arc::new(move |x: &[BigInt]| {
                counter.record(x);
                f(x)
            }),
            stats,
        }
    }

    /// Multilinear root box; the total degree defaults to the variable count.
    pub fn multilinear<F>(vars: usize, f: F) -> Self
    where
        F: Fn(&[BigInt]) -> Rational + Send + Sync + 'static,
    {
        Self::new(vars, vars as u32, f).with_var_degree(1)
    }

    pub fn with_var_degree(mut self, d: u32) -> Self {
        self.var_degree = Some(d);
        self
    }

    pub fn with_coeff_bits(mut self, c: u64) -> Self {
        self.coeff_bits = Some(c);
        self
    }

    pub fn with_monotone(mut self, monotone: bool) -> Self {
        self.monotone = monotone;
        self
    }

    pub fn with_total_degree(mut self, d: u32) -> Self {
        self.total_degree = d.max(1);
        self
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }

    pub fn var_degree(&self) -> Option<u32> {
        self.var_degree
    }

    pub fn coeff_bits(&self) -> Option<u64> {
        self.coeff_bits
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// True for derived boxes that may only be evaluated where every
    /// coordinate they divide by is nonzero.
    pub fn positive_only(&self) -> bool {
        self.positive_only
    }

    pub fn stats(&self) -> &Arc<OracleStats> {
        &self.stats
    }

    pub fn evaluate(&self, x: &[BigInt]) -> Result<Rational> {
        if x.len() != self.vars {
            return Err(Error::Input(format!(
                "point of length {} for a {}-variable black box",
                x.len(),
                self.vars
            )));
        }
        (self.eval)(x)
    }

    fn derive<F>(&self, f: F) -> BlackBox
    where
        F: Fn(&[BigInt]) -> Result<Rational> + Send + Sync + 'static,
    {
        BlackBox {
            eval: Arc::new(f),
            ..self.clone()
        }
    }

    /// Wraps every evaluation with `gate`, which runs before the parent is
    /// called and may refuse the call.
    pub fn gated<G>(&self, gate: G) -> BlackBox
    where
        G: Fn() -> Result<()> + Send + Sync + 'static,
    {
        let parent = Arc::clone(&self.eval);
        self.derive(move |x| {
            gate()?;
            parent(x)
        })
    }

    /// `P_L`: every coordinate outside `keep` is replaced by zero.
    pub fn restrict(&self, keep: &SupportSet) -> BlackBox {
        let parent = Arc::clone(&self.eval);
        let keep = keep.clone();
        self.derive(move |x| {
            let masked: Vec<BigInt> = x
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    if keep.contains(i) {
                        v.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            parent(&masked)
        })
    }

    /// Box for `P - q`; `q` is evaluated term by term, `P` once per call.
    pub fn subtract(&self, q: &SparsePolynomial) -> Result<BlackBox> {
        if q.vars() != self.vars {
            return Err(Error::Input(format!(
                "cannot subtract a {}-variable polynomial from a {}-variable box",
                q.vars(),
                self.vars
            )));
        }
        if q.is_zero() {
            return Ok(self.clone());
        }
        let parent = Arc::clone(&self.eval);
        let q = Arc::new(q.clone());
        Ok(self.derive(move |x| Ok(parent(x)? - q.eval(x))))
    }

    /// Splits off the constant term with a single call at the origin.
    pub fn strip_constant(&self) -> Result<(BlackBox, Rational)> {
        let origin = vec![BigInt::zero(); self.vars];
        let constant = self.evaluate(&origin)?;
        if constant.is_zero() {
            return Ok((self.clone(), constant));
        }
        let parent = Arc::clone(&self.eval);
        let c = constant.clone();
        Ok((self.derive(move |x| Ok(parent(x)? - &c)), constant))
    }

    /// `Q = P_L / X^L`, usable when every monomial of `P_L` is divisible by
    /// `X^L`. Evaluating at a point with a zero coordinate in `L` is an error.
    pub fn divide_by_support(&self, support: &SupportSet) -> BlackBox {
        let restricted = self.restrict(support);
        let parent = Arc::clone(&restricted.eval);
        let support_for_eval = support.clone();
        let l = support.len() as u32;
        let quotient_degree = l.min(self.total_degree.saturating_sub(l));
        let mut q = restricted.derive(move |x| {
            let mut denom = BigInt::from(1u32);
            for i in support_for_eval.iter() {
                denom *= &x[i];
            }
            if denom.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(parent(x)? / Rational::from_integer(denom))
        });
        q.total_degree = quotient_degree.max(1);
        q.var_degree = Some(1);
        q.positive_only = true;
        q
    }

    /// `H(Y)`: coordinates in `fixed` take the given values, coordinates in
    /// `along` are set to `Y`, everything else to zero.
    pub fn collapse_to_univariate(
        &self,
        fixed: &[(usize, BigInt)],
        along: &SupportSet,
    ) -> Result<Univariate<'_>> {
        let mut base = vec![BigInt::zero(); self.vars];
        for (i, v) in fixed {
            if *i >= self.vars {
                return Err(Error::Input(format!("variable index {i} out of range")));
            }
            if along.contains(*i) {
                return Err(Error::Input(format!(
                    "variable {i} is both fixed and collapsed"
                )));
            }
            base[*i] = v.clone();
        }
        Ok(Univariate {
            parent: self,
            base,
            along: along.iter().collect(),
        })
    }
}

/// Univariate restriction `Y -> P(base with Y on the collapsed coordinates)`.
pub struct Univariate<'a> {
    parent: &'a BlackBox,
    base: Vec<BigInt>,
    along: Vec<usize>,
}

impl Univariate<'_> {
    /// One oracle call.
    pub fn eval(&self, y: &BigInt) -> Result<Rational> {
        let mut x = self.base.clone();
        for &i in &self.along {
            x[i] = y.clone();
        }
        self.parent.evaluate(&x)
    }

    pub fn degree_bound(&self) -> usize {
        self.along.len()
    }
}
