//! Text formats: a header line naming the kind of instance, then one item
//! per line. `#` starts a comment; vertices are 1-based.
//!
//! ```text
//! poly n [D] [C]        then: coefficient e1 .. en
//! digraph n             then: u v
//! graph n               then: u v      (oriented u -> v)
//! hypergraph3 n         then: a b c
//! ```

use std::str::FromStr;

use blackpoly::polyzoo::{Digraph, Hypergraph3, OrientedGraph};
use blackpoly::{BigInt, Rational, SparsePolynomial};

#[derive(Debug, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug)]
pub enum Instance {
    Poly {
        poly: SparsePolynomial,
        total_degree: Option<u32>,
        coeff_bits: Option<u64>,
    },
    Digraph(Digraph),
    Graph(OrientedGraph),
    Hypergraph(Hypergraph3),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Poly { .. } => "poly",
            Instance::Digraph(_) => "digraph",
            Instance::Graph(_) => "graph",
            Instance::Hypergraph(_) => "hypergraph3",
        }
    }
}

fn number<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .or_else(|_| err(line, format!("expected {what}, found `{token}`")))
}

fn vertex(line: usize, token: &str, n: usize) -> Result<usize, ParseError> {
    let v: usize = number(line, token, "a vertex")?;
    if v == 0 || v > n {
        return err(line, format!("vertex {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

/// Coefficients are integers or fractions `p/q`.
fn coefficient(line: usize, token: &str) -> Result<Rational, ParseError> {
    let parsed = match token.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = number(line, p, "a coefficient")?;
            let q: BigInt = number(line, q, "a denominator")?;
            if q == BigInt::from(0) {
                return err(line, "zero denominator");
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(number(line, token, "a coefficient")?),
    };
    Ok(parsed)
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let Some((hline, header)) = lines.next() else {
        return err(1, "empty input");
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    let n: usize = match head.get(1) {
        Some(t) => number(hline, t, "a size")?,
        None => return err(hline, "header needs a size"),
    };
    let arity = |want: usize, tokens: &[&str], line: usize| {
        if tokens.len() != want {
            return err(
                line,
                format!("expected {want} fields, found {}", tokens.len()),
            );
        }
        Ok(())
    };

    match head[0] {
        "poly" => {
            if head.len() > 4 {
                return err(hline, "poly header is `poly n [D] [C]`");
            }
            let total_degree = head
                .get(2)
                .map(|t| number(hline, t, "a degree bound"))
                .transpose()?;
            let coeff_bits = head
                .get(3)
                .map(|t| number(hline, t, "a bit bound"))
                .transpose()?;
            let mut poly = SparsePolynomial::zero(n);
            for (line, l) in lines {
                let tokens: Vec<&str> = l.split_whitespace().collect();
                arity(n + 1, &tokens, line)?;
                let c = coefficient(line, tokens[0])?;
                let exps = tokens[1..]
                    .iter()
                    .map(|t| number(line, t, "an exponent"))
                    .collect::<Result<Vec<u32>, _>>()?;
                if poly.contains_exponents(&exps) {
                    return err(line, "repeated exponent vector");
                }
                if c != Rational::from_integer(BigInt::from(0)) {
                    let m =
                        blackpoly::Monomial::new(c, exps).or_else(|e| err(line, e.to_string()))?;
                    poly.add_monomial(&m)
                        .or_else(|e| err(line, e.to_string()))?;
                }
            }
            if let Some(d) = total_degree {
                if d < poly.total_degree() {
                    return err(
                        hline,
                        format!(
                            "degree bound {d} below the total degree {}",
                            poly.total_degree()
                        ),
                    );
                }
            }
            Ok(Instance::Poly {
                poly,
                total_degree,
                coeff_bits,
            })
        }
        "digraph" | "graph" => {
            arity(2, &head, hline)?;
            let mut edges = Vec::new();
            let mut last = hline;
            for (line, l) in lines {
                let tokens: Vec<&str> = l.split_whitespace().collect();
                arity(2, &tokens, line)?;
                edges.push((vertex(line, tokens[0], n)?, vertex(line, tokens[1], n)?));
                last = line;
            }
            if head[0] == "digraph" {
                Digraph::new(n, edges).map(Instance::Digraph)
            } else {
                OrientedGraph::new(n, edges).map(Instance::Graph)
            }
            .or_else(|e| err(last, e.to_string()))
        }
        "hypergraph3" => {
            arity(2, &head, hline)?;
            let mut edges = Vec::new();
            let mut last = hline;
            for (line, l) in lines {
                let tokens: Vec<&str> = l.split_whitespace().collect();
                arity(3, &tokens, line)?;
                edges.push([
                    vertex(line, tokens[0], n)?,
                    vertex(line, tokens[1], n)?,
                    vertex(line, tokens[2], n)?,
                ]);
                last = line;
            }
            Hypergraph3::new(n, edges)
                .map(Instance::Hypergraph)
                .or_else(|e| err(last, e.to_string()))
        }
        other => err(hline, format!("unknown header `{other}`")),
    }
}
