//! Fixtures shared by the benchmarks.

use blackpoly::polyzoo::{Digraph, Hypergraph3};
use blackpoly::{BigInt, BlackBox, Monomial, RandomStream, Rational, SparsePolynomial, SupportSet};
use std::sync::Arc;

/// `terms` distinct multilinear monomials in `vars` variables with
/// coefficients in `[-1000, 1000] \ {0}`.
pub fn random_multilinear(vars: usize, terms: usize, seed: u64) -> SparsePolynomial {
    let mut rng = RandomStream::new(seed);
    let mut p = SparsePolynomial::zero(vars);
    while p.len() < terms.min(1 << vars) {
        let s = SupportSet::from_indices(vars, (0..vars).filter(|_| rng.uniform_u64(2) == 1));
        let c = rng.uniform_u64(2000) as i64 - 1000;
        let c = Rational::from_integer(BigInt::from(if c == 0 { 1 } else { c }));
        let m = Monomial::multilinear(c, &s).expect("support fits");
        if p.coefficient(&m.exponents) == Rational::from_integer(BigInt::from(0)) {
            p.add_monomial(&m).expect("same arity");
        }
    }
    p
}

pub fn explicit(p: SparsePolynomial) -> BlackBox {
    let d = p.total_degree().max(1);
    let coeff_bits = p.coefficient_bits().unwrap_or(1);
    let p = Arc::new(p);
    let n = p.vars();
    BlackBox::multilinear(n, move |x| p.eval(x))
        .with_total_degree(d)
        .with_coeff_bits(coeff_bits)
}

pub fn complete_digraph(n: usize) -> Digraph {
    let edges = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    Digraph::new(n, edges).expect("simple digraph")
}

pub fn complete_hypergraph(n: usize) -> Hypergraph3 {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                edges.push([a, b, c]);
            }
        }
    }
    Hypergraph3::new(n, edges).expect("simple hypergraph")
}

/// Random skew-symmetric integer matrix with entries in `[-50, 50]`.
pub fn skew_matrix(n: usize, seed: u64) -> Vec<Vec<BigInt>> {
    let mut rng = RandomStream::new(seed);
    let mut a = vec![vec![BigInt::from(0); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = BigInt::from(rng.uniform_u64(101) as i64 - 50);
            a[j][i] = -v.clone();
            a[i][j] = v;
        }
    }
    a
}
