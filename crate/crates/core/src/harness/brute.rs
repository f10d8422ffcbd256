use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{interpolate_univariate, BigInt, Rational};
use crate::blackbox::{BlackBox, SupportSet};
use crate::poly::SparsePolynomial;
use crate::polyzoo::{linalg, skew_adjacency, Digraph, Hypergraph3, OrientedGraph};
use crate::{Error, Result};

pub const DEFAULT_EVAL_BUDGET: u64 = 1 << 20;
pub const MAX_STRUCTURE_VERTICES: usize = 8;

/// Dense interpolation on the grid `{0..d}^n`, at most
/// [`DEFAULT_EVAL_BUDGET`] evaluations.
pub fn brute_force_interpolate(p: &BlackBox, d: u32) -> Result<SparsePolynomial> {
    brute_force_interpolate_with_budget(p, d, DEFAULT_EVAL_BUDGET)
}

pub fn brute_force_interpolate_with_budget(
    p: &BlackBox,
    d: u32,
    budget: u64,
) -> Result<SparsePolynomial> {
    let n = p.vars();
    let side = u64::from(d) + 1;
    let points = side
        .checked_pow(n as u32)
        .filter(|&m| m <= budget)
        .ok_or_else(|| {
            Error::Budget(format!(
                "{side}^{n} evaluations exceed the budget of {budget}"
            ))
        })?;
    let side = side as usize;

    // values[k] with k read in base `side`, digit i being coordinate i.
    let mut values = Vec::with_capacity(points as usize);
    let mut x = vec![BigInt::zero(); n];
    for k in 0..points as usize {
        let mut r = k;
        for xi in x.iter_mut() {
            *xi = BigInt::from(r % side);
            r /= side;
        }
        values.push(p.evaluate(&x)?);
    }

    if d == 1 {
        mobius(&mut values, n);
    } else {
        tensor_interpolate(&mut values, n, side)?;
    }

    let mut out = SparsePolynomial::zero(n);
    for (k, c) in values.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut r = k;
        let exps = (0..n)
            .map(|_| {
                let e = (r % side) as u32;
                r /= side;
                e
            })
            .collect();
        out.add_monomial(&crate::poly::Monomial::new(c, exps)?)?;
    }
    Ok(out)
}

/// Applies the inverse Vandermonde matrix of the nodes `0..side` along every
/// axis. The values are brought to a common denominator first so the
/// transform runs on integers.
fn tensor_interpolate(values: &mut [Rational], n: usize, side: usize) -> Result<()> {
    let mut inverse = vec![vec![Rational::zero(); side]; side];
    for j in 0..side {
        let unit: Vec<(BigInt, Rational)> = (0..side)
            .map(|k| {
                (
                    BigInt::from(k),
                    Rational::from_integer(BigInt::from(u8::from(k == j))),
                )
            })
            .collect();
        let basis = interpolate_univariate(&unit)?;
        for (k, row) in inverse.iter_mut().enumerate() {
            row[j] = basis.coeff(k);
        }
    }
    let den = inverse
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let matrix: Vec<Vec<BigInt>> = inverse
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();

    let common = values
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|x| x.numer() * (&common / x.denom()))
        .collect();
    let mut line = vec![BigInt::zero(); side];
    let mut stride = 1;
    for _ in 0..n {
        for base in 0..ints.len() {
            if (base / stride) % side != 0 {
                continue;
            }
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = std::mem::take(&mut ints[base + j * stride]);
            }
            for (k, row) in matrix.iter().enumerate() {
                let mut acc = BigInt::zero();
                for (m, v) in row.iter().zip(&line) {
                    if !m.is_zero() && !v.is_zero() {
                        acc += m * v;
                    }
                }
                ints[base + k * stride] = acc;
            }
        }
        stride *= side;
    }
    let scale = common * num_traits::pow(den, n);
    for (v, x) in values.iter_mut().zip(ints) {
        *v = Rational::new(x, scale.clone());
    }
    Ok(())
}

/// In-place subset Möbius inversion: `coeff(S) = Σ_{T ⊆ S} (-1)^{|S \ T|} P(χ_T)`.
fn mobius(values: &mut [Rational], n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for s in 0..values.len() {
            if s & bit != 0 {
                let lower = values[s ^ bit].clone();
                values[s] -= lower;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    CycleCovers,
    Arborescences,
    Matchings,
    Hypertrees,
}

/// A combinatorial instance together with the family to enumerate.
#[derive(Clone, Copy, Debug)]
pub enum Instance<'a> {
    CycleCovers(&'a Digraph),
    Arborescences { graph: &'a Digraph, root: usize },
    Matchings(&'a OrientedGraph),
    Hypertrees(&'a Hypergraph3),
}

impl Instance<'_> {
    pub fn family(&self) -> Family {
        match self {
            Instance::CycleCovers(_) => Family::CycleCovers,
            Instance::Arborescences { .. } => Family::Arborescences,
            Instance::Matchings(_) => Family::Matchings,
            Instance::Hypertrees(_) => Family::Hypertrees,
        }
    }

    fn size(&self) -> (usize, usize) {
        match self {
            Instance::CycleCovers(g) | Instance::Arborescences { graph: g, .. } => {
                (g.vertices(), g.edges().len())
            }
            Instance::Matchings(g) => (g.vertices(), g.edges().len()),
            Instance::Hypertrees(h) => (h.vertices(), h.edges().len()),
        }
    }
}

/// Every structure of the instance's family, as a set of edge indices.
pub fn brute_force_structures(instance: Instance<'_>) -> Result<BTreeSet<SupportSet>> {
    let (n, m) = instance.size();
    if n > MAX_STRUCTURE_VERTICES {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the exhaustive limit of {MAX_STRUCTURE_VERTICES}"
        )));
    }
    let mut out = BTreeSet::new();
    match instance {
        Instance::CycleCovers(g) => cycle_covers(g, 0, 0, &mut SupportSet::empty(m), &mut out),
        Instance::Arborescences { graph, root } => {
            if root >= n {
                return Err(Error::Input(format!("root {} outside the graph", root + 1)));
            }
            arborescences(graph, root, &mut out)
        }
        Instance::Matchings(g) => matchings(g, 0, &mut SupportSet::empty(m), &mut out),
        Instance::Hypertrees(h) => hypertrees(h, &mut out),
    }
    Ok(out)
}

/// Permutations `σ` with every edge `(i, σ(i))` present.
fn cycle_covers(
    g: &Digraph,
    i: usize,
    used: u64,
    chosen: &mut SupportSet,
    out: &mut BTreeSet<SupportSet>,
) {
    if i == g.vertices() {
        out.insert(chosen.clone());
        return;
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u == i && used >> v & 1 == 0 {
            chosen.insert(e);
            cycle_covers(g, i + 1, used | 1 << v, chosen, out);
            chosen.remove(e);
        }
    }
}

/// Edge sets of size `n - 1` in which every non-root vertex has exactly one
/// incoming edge and following those edges backwards always reaches the
/// root. Enumerated by choosing the incoming edge of each vertex.
fn arborescences(g: &Digraph, root: usize, out: &mut BTreeSet<SupportSet>) {
    let n = g.vertices();
    let incoming: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|v| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| b == v && a != b)
                .map(|(e, &(a, _))| (e, a))
                .collect()
        })
        .collect();
    let mut parent = vec![usize::MAX; n];
    let mut edge = vec![usize::MAX; n];
    choose_parents(g, root, 0, &incoming, &mut parent, &mut edge, out);
}

fn choose_parents(
    g: &Digraph,
    root: usize,
    v: usize,
    incoming: &[Vec<(usize, usize)>],
    parent: &mut [usize],
    edge: &mut [usize],
    out: &mut BTreeSet<SupportSet>,
) {
    let n = g.vertices();
    if v == n {
        let reaches_root = (0..n).all(|mut u| {
            for _ in 0..n {
                if u == root {
                    return true;
                }
                u = parent[u];
            }
            u == root
        });
        if reaches_root {
            let set = (0..n).filter(|&u| u != root).map(|u| edge[u]);
            out.insert(SupportSet::from_indices(g.edges().len(), set));
        }
        return;
    }
    if v == root {
        choose_parents(g, root, v + 1, incoming, parent, edge, out);
        return;
    }
    for &(e, a) in &incoming[v] {
        parent[v] = a;
        edge[v] = e;
        choose_parents(g, root, v + 1, incoming, parent, edge, out);
    }
}

/// Match the lowest unmatched vertex with each free neighbour in turn.
fn matchings(
    g: &OrientedGraph,
    matched: u64,
    chosen: &mut SupportSet,
    out: &mut BTreeSet<SupportSet>,
) {
    let n = g.vertices();
    let Some(v) = (0..n).find(|&v| matched >> v & 1 == 0) else {
        out.insert(chosen.clone());
        return;
    };
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let w = if a == v {
            b
        } else if b == v {
            a
        } else {
            continue;
        };
        if matched >> w & 1 == 0 {
            chosen.insert(e);
            matchings(g, matched | 1 << v | 1 << w, chosen, out);
            chosen.remove(e);
        }
    }
}

/// `(n - 1) / 2`-edge subsets whose vertex-edge incidence graph is a tree.
/// With that many edges the incidence graph has exactly one edge fewer than
/// nodes, so connectivity is enough.
fn hypertrees(h: &Hypergraph3, out: &mut BTreeSet<SupportSet>) {
    let n = h.vertices();
    if n % 2 == 0 {
        return;
    }
    let k = (n - 1) / 2;
    let m = h.edges().len();
    let mut pick = Vec::with_capacity(k);
    subsets(m, k, 0, &mut pick, &mut |edges| {
        if incidence_connected(h, edges) {
            out.insert(SupportSet::from_indices(m, edges.iter().copied()));
        }
    });
}

fn subsets(m: usize, k: usize, from: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for e in from..m {
        if m - e < k - pick.len() {
            break;
        }
        pick.push(e);
        subsets(m, k, e + 1, pick, f);
        pick.pop();
    }
}

fn incidence_connected(h: &Hypergraph3, edges: &[usize]) -> bool {
    let n = h.vertices();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    for &e in edges {
        let [a, b, c] = h.edges()[e];
        for w in [b, c] {
            let (ra, rw) = (find(&mut root, a), find(&mut root, w));
            root[ra] = rw;
        }
    }
    let r0 = find(&mut root, 0);
    (0..n).all(|v| find(&mut root, v) == r0)
}

/// Searches the orientations of `g` for one under which every perfect
/// matching contributes with the same sign to the Pfaffian. Edges of a
/// spanning forest keep their orientation, since reversing all edges at a
/// vertex preserves the property. Returns `None` when no orientation works
/// or the search exceeds `2^20` candidates.
pub fn find_pfaffian_orientation(g: &OrientedGraph) -> Result<Option<OrientedGraph>> {
    let n = g.vertices();
    let count = brute_force_structures(Instance::Matchings(g))?.len();
    if count == 0 {
        return Ok(Some(g.clone()));
    }

    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            v = root[v];
        }
        v
    }
    let mut free = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (ru, rv) = (find(&mut root, u), find(&mut root, v));
        if ru == rv {
            free.push(e);
        } else {
            root[ru] = rv;
        }
    }
    if free.len() > 20 {
        return Ok(None);
    }

    let ones = vec![BigInt::from(1); g.edges().len()];
    for bits in 0u64..1 << free.len() {
        let flips = free
            .iter()
            .enumerate()
            .filter(|&(k, _)| bits >> k & 1 == 1)
            .fold(0u64, |acc, (_, &e)| acc | 1 << e);
        let candidate = g.reoriented(flips);
        let pf = linalg::pfaffian_int(&skew_adjacency(&candidate).eval(&ones))?;
        if pf.abs() == BigInt::from(count) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}
