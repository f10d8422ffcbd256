//! Concrete black boxes: explicit sparse polynomials, and determinants or
//! Pfaffians of matrices whose entries are linear in the variables.
//!
//! Graph types are 0-based; vertex `v` is printed as `v + 1`. Edge `e` of the
//! input list is variable `e`.

mod graphs;
pub mod linalg;

use std::sync::Arc;

use num_traits::Zero;

pub use graphs::{Digraph, Hypergraph3, OrientedGraph};
pub use linalg::{determinant, pfaffian};

use crate::arith::{BigInt, Rational};
use crate::blackbox::BlackBox;
use crate::poly::SparsePolynomial;
use crate::{Error, Result};

/// `constant + Σ coeff · x_var` with small integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineExpr {
    pub constant: i64,
    pub terms: Vec<(usize, i64)>,
}

impl AffineExpr {
    pub fn var(v: usize, coeff: i64) -> Self {
        Self {
            constant: 0,
            terms: vec![(v, coeff)],
        }
    }

    pub fn add_term(&mut self, v: usize, coeff: i64) {
        match self.terms.iter_mut().find(|(w, _)| *w == v) {
            Some((_, c)) => *c += coeff,
            None => self.terms.push((v, coeff)),
        }
        self.terms.retain(|&(_, c)| c != 0);
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut acc = BigInt::from(self.constant);
        for &(v, c) in &self.terms {
            acc += &x[v] * c;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.terms.is_empty()
    }
}

/// Square matrix of affine expressions over `vars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMatrix {
    vars: usize,
    entries: Vec<Vec<AffineExpr>>,
}

impl VarMatrix {
    pub fn zeros(vars: usize, size: usize) -> Self {
        Self {
            vars,
            entries: vec![vec![AffineExpr::default(); size]; size],
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &AffineExpr {
        &self.entries[i][j]
    }

    pub fn add(&mut self, i: usize, j: usize, v: usize, coeff: i64) {
        self.entries[i][j].add_term(v, coeff);
    }

    /// The matrix with row `row` and column `col` removed.
    pub fn minor(&self, row: usize, col: usize) -> VarMatrix {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != row)
            .map(|(_, r)| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        VarMatrix {
            vars: self.vars,
            entries,
        }
    }

    pub fn is_skew(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (a, b) = (&self.entries[i][j], &self.entries[j][i]);
                let mut neg = b.clone();
                neg.constant = -neg.constant;
                neg.terms.iter_mut().for_each(|t| t.1 = -t.1);
                let mut sa = a.terms.clone();
                let mut sb = neg.terms.clone();
                sa.sort_unstable();
                sb.sort_unstable();
                a.constant == neg.constant && sa == sb
            })
        })
    }

    pub fn eval(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval(x)).collect())
            .collect()
    }
}

/// Oracle for an explicit polynomial. The per-variable degree, coefficient
/// bit size and monotone flag are read off `s`.
pub fn explicit_blackbox(s: &SparsePolynomial, total_degree: u32) -> BlackBox {
    let poly = s.clone();
    let mut b = BlackBox::new(s.vars(), total_degree.max(s.total_degree()), move |x| {
        poly.eval(x)
    })
    .with_var_degree(s.max_var_degree().max(1))
    .with_monotone(!s.is_zero() && s.is_monotone());
    if let Some(c) = s.coefficient_bits() {
        b = b.with_coeff_bits(c);
    }
    b
}

fn determinant_box(m: VarMatrix, total_degree: u32, sign: i64) -> BlackBox {
    let m = Arc::new(m);
    BlackBox::try_new(m.vars(), total_degree, move |x| {
        let d = linalg::determinant_int(&m.eval(x))?;
        Ok(Rational::from_integer(d * sign))
    })
    .with_var_degree(1)
    .with_coeff_bits(1)
}

fn pfaffian_box(m: VarMatrix, total_degree: u32) -> BlackBox {
    let m = Arc::new(m);
    BlackBox::try_new(m.vars(), total_degree, move |x| {
        Ok(Rational::from_integer(linalg::pfaffian_int(&m.eval(x))?))
    })
    .with_var_degree(1)
    .with_coeff_bits(1)
}

/// Adjacency matrix with `A[u][v] = x_e` for edge `e = (u, v)`.
pub fn adjacency_matrix(g: &Digraph) -> VarMatrix {
    let mut m = VarMatrix::zeros(g.edges().len(), g.vertices());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        m.add(u, v, e, 1);
    }
    m
}

/// `det` of the adjacency matrix: one signed monomial per cycle cover.
pub fn cycle_cover_blackbox(g: &Digraph) -> BlackBox {
    determinant_box(adjacency_matrix(g), g.vertices() as u32, 1)
}

/// Laplacian indexed by heads: for an edge `i -> j`, `L[j][i] = -x` and
/// `L[j][j] += x`. Every row sums to zero; self-loops cancel.
pub fn laplacian(g: &Digraph) -> VarMatrix {
    let mut m = VarMatrix::zeros(g.edges().len(), g.vertices());
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        m.add(j, i, e, -1);
        m.add(j, j, e, 1);
    }
    m
}

/// `(-1)^(s+t) det L_{s,t}`: one `+1` monomial per spanning arborescence
/// rooted at `s` with edges pointing away from it, for any column `t`.
pub fn arborescence_blackbox(g: &Digraph, s: usize, t: usize) -> Result<BlackBox> {
    let n = g.vertices();
    if s >= n || t >= n {
        return Err(Error::Input(format!(
            "root {} / column {} outside a {n}-vertex graph",
            s + 1,
            t + 1
        )));
    }
    let sign = if (s + t) % 2 == 0 { 1 } else { -1 };
    let degree = n.saturating_sub(1) as u32;
    Ok(determinant_box(laplacian(g).minor(s, t), degree, sign).with_monotone(true))
}

/// Skew adjacency matrix with `A[u][v] = x_e`, `A[v][u] = -x_e` for the
/// oriented edge `e = (u, v)`.
pub fn skew_adjacency(g: &OrientedGraph) -> VarMatrix {
    let mut m = VarMatrix::zeros(g.edges().len(), g.vertices());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        m.add(u, v, e, 1);
        m.add(v, u, e, -1);
    }
    m
}

/// Pfaffian of the skew adjacency matrix. Under a Pfaffian orientation its
/// monomials are the perfect matchings, all with the same sign; the box is
/// flagged monotone when that sign is `+`.
pub fn matching_blackbox(g: &OrientedGraph) -> BlackBox {
    let m = skew_adjacency(g);
    let ones = vec![BigInt::from(1); m.vars()];
    let positive = linalg::pfaffian_int(&m.eval(&ones)).is_ok_and(|pf| pf > BigInt::zero());
    let degree = (g.vertices() / 2) as u32;
    pfaffian_box(m, degree).with_monotone(positive)
}

/// The `n x n` skew matrix `Λ`: for each edge `{a < b < c}` with variable
/// `y`, `Λ_ab += y`, `Λ_bc += y`, `Λ_ac -= y`.
pub fn hypertree_matrix(h: &Hypergraph3) -> VarMatrix {
    let mut m = VarMatrix::zeros(h.edges().len(), h.vertices());
    for (e, &[a, b, c]) in h.edges().iter().enumerate() {
        for (i, j, s) in [(a, b, 1), (b, c, 1), (a, c, -1)] {
            m.add(i, j, e, s);
            m.add(j, i, e, -s);
        }
    }
    m
}

/// Pfaffian of `Λ` without its last row and column: one `±1` monomial per
/// spanning hypertree.
pub fn hypertree_blackbox(h: &Hypergraph3) -> BlackBox {
    let n = h.vertices();
    let m = if n == 0 {
        hypertree_matrix(h)
    } else {
        hypertree_matrix(h).minor(n - 1, n - 1)
    };
    pfaffian_box(m, (n.saturating_sub(1) / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn pt(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn explicit_examples() {
        let s = SparsePolynomial::from_terms(2, [(q(3), vec![1, 1])]).unwrap();
        let b = explicit_blackbox(&s, 2);
        assert_eq!(b.evaluate(&pt(&[2, 3])).unwrap(), q(18));
        assert!(b.is_monotone());
        assert_eq!(b.coeff_bits(), Some(2));

        let z = explicit_blackbox(&SparsePolynomial::zero(3), 1);
        assert_eq!(z.evaluate(&pt(&[4, 5, 6])).unwrap(), q(0));
        assert!(!z.is_monotone());

        let d = SparsePolynomial::from_terms(2, [(q(1), vec![1, 0]), (q(-1), vec![0, 1])]).unwrap();
        let b = explicit_blackbox(&d, 1);
        assert_eq!(b.evaluate(&pt(&[5, 5])).unwrap(), q(0));
        assert!(!b.is_monotone());
    }

    #[test]
    fn cycle_cover_two_vertices() {
        // Edges (1,1), (2,2), (1,2), (2,1): det = x0 x1 - x2 x3.
        let g = Digraph::new(2, vec![(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        let b = cycle_cover_blackbox(&g);
        assert_eq!(b.total_degree(), 2);
        assert_eq!(b.evaluate(&pt(&[2, 3, 5, 7])).unwrap(), q(6 - 35));
    }

    #[test]
    fn arborescence_triangle() {
        // 1->2, 2->3, 1->3 rooted at 1: x0 (x1 + x2).
        let g = Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        for t in 0..3 {
            let b = arborescence_blackbox(&g, 0, t).unwrap();
            assert_eq!(b.evaluate(&pt(&[2, 3, 5])).unwrap(), q(16), "column {t}");
        }
        let b = arborescence_blackbox(&g, 1, 1).unwrap();
        assert_eq!(b.evaluate(&pt(&[2, 3, 5])).unwrap(), q(0));
        assert!(arborescence_blackbox(&g, 3, 0).is_err());
    }

    #[test]
    fn arborescence_single_edge() {
        let g = Digraph::new(2, vec![(0, 1)]).unwrap();
        let b = arborescence_blackbox(&g, 0, 0).unwrap();
        assert_eq!(b.evaluate(&pt(&[9])).unwrap(), q(9));
    }

    #[test]
    fn matching_examples() {
        let g = OrientedGraph::new(2, vec![(0, 1)]).unwrap();
        let b = matching_blackbox(&g);
        assert_eq!(b.evaluate(&pt(&[4])).unwrap(), q(4));
        assert!(b.is_monotone());

        // 4-cycle 1-2-3-4 with one edge reversed: x0 x2 + x1 x3.
        let g = OrientedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let b = matching_blackbox(&g);
        assert_eq!(b.evaluate(&pt(&[2, 3, 5, 7])).unwrap(), q(10 + 21));

        let path = OrientedGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            matching_blackbox(&path).evaluate(&pt(&[2, 3])).unwrap(),
            q(0)
        );
    }

    #[test]
    fn hypertree_single_edge() {
        let h = Hypergraph3::new(3, vec![[0, 1, 2]]).unwrap();
        let b = hypertree_blackbox(&h);
        assert!(hypertree_matrix(&h).is_skew());
        let v = b.evaluate(&pt(&[5])).unwrap();
        assert!(v == q(5) || v == q(-5));
        assert_eq!(b.total_degree(), 1);
    }

    #[test]
    fn zoo_boxes_are_linear_in_each_variable() {
        let g = Digraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0), (0, 0), (1, 1), (2, 2), (1, 0)],
        )
        .unwrap();
        let h = Hypergraph3::new(5, vec![[0, 1, 2], [2, 3, 4], [0, 3, 4], [1, 2, 4]]).unwrap();
        let o = OrientedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let boxes = [
            cycle_cover_blackbox(&g),
            arborescence_blackbox(&g, 0, 2).unwrap(),
            matching_blackbox(&o),
            hypertree_blackbox(&h),
        ];
        for b in boxes {
            let n = b.vars();
            let base: Vec<BigInt> = (0..n).map(|i| BigInt::from(i as i64 + 2)).collect();
            for i in 0..n {
                let at = |v: i64| {
                    let mut x = base.clone();
                    x[i] = BigInt::from(v);
                    b.evaluate(&x).unwrap()
                };
                assert_eq!(at(2) - at(1), at(1) - at(0));
            }
        }
    }
}
