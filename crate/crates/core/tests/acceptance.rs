//! Acceptance suite. Each test covers one criterion and prints a single
//! `criterion N: PASS|FAIL` line with its measurements.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::sync::OnceLock;
use std::time::Instant;

use blackpoly::algorithms::{
    amplified_enumerate, ledger, AnotherSolution, Collector, EnumeratorConfig,
};
use blackpoly::harness::{
    brute_force_interpolate, brute_force_structures, find_pfaffian_orientation, run_with_metrics,
    Instance,
};
use blackpoly::polyzoo::{
    arborescence_blackbox, cycle_cover_blackbox, determinant, explicit_blackbox,
    hypertree_blackbox, matching_blackbox, pfaffian, Digraph, Hypergraph3, OrientedGraph,
};
use blackpoly::{
    Algorithm, BigInt, BlackBox, Enumerator, ErrorBudget, Mode, Monomial, OutputEvent,
    RandomStream, Rational, SparsePolynomial, SupportSet, ZeroTestVariant,
};
use num_traits::{One, Signed, Zero};

fn report(criterion: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} ({detail})");
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Uniform nonzero integer in `[-2^64, 2^64]`.
fn big_coefficient(r: &mut RandomStream) -> Rational {
    let half = BigInt::one() << 64;
    let width: BigInt = &half * 2 + 1;
    loop {
        let c: BigInt = r.uniform_int(&width) - 1 - &half;
        if !c.is_zero() {
            return Rational::from_integer(c);
        }
    }
}

/// `t` distinct exponent vectors drawn by `draw`, each with a big coefficient.
fn random_poly(
    r: &mut RandomStream,
    n: usize,
    t: usize,
    mut draw: impl FnMut(&mut RandomStream) -> Vec<u32>,
    key: impl Fn(&[u32]) -> Vec<u32>,
) -> SparsePolynomial {
    let mut keys = HashSet::new();
    let mut terms = Vec::new();
    while terms.len() < t {
        let e = draw(r);
        if keys.insert(key(&e)) {
            terms.push((big_coefficient(r), e));
        }
    }
    SparsePolynomial::from_terms(n, terms).unwrap()
}

fn random_subset(r: &mut RandomStream, n: usize) -> Vec<u32> {
    (0..n).map(|_| r.uniform_u64(2) as u32 - 1).collect()
}

fn support_key(e: &[u32]) -> Vec<u32> {
    e.iter().map(|&x| u32::from(x > 0)).collect()
}

fn multilinear_instance(r: &mut RandomStream) -> SparsePolynomial {
    let n = r.uniform_u64(12) as usize;
    let t = (r.uniform_u64(31) as usize - 1).min(1 << n);
    random_poly(r, n, t, |r| random_subset(r, n), |e| e.to_vec())
}

/// Distinct supports; exponents up to 3 for `n <= 7`, up to 2 above, so the
/// dense check stays within its evaluation budget.
fn distinct_support_instance(r: &mut RandomStream) -> (SparsePolynomial, u32) {
    let n = r.uniform_u64(10) as usize;
    let cap = if n <= 7 { 3 } else { 2 };
    let t = (r.uniform_u64(31) as usize - 1).min(1 << n);
    let p = random_poly(
        r,
        n,
        t,
        |r| {
            random_subset(r, n)
                .into_iter()
                .map(|x| {
                    if x == 0 {
                        0
                    } else {
                        r.uniform_u64(u64::from(cap)) as u32
                    }
                })
                .collect()
        },
        support_key,
    );
    (p, cap)
}

fn degree2_instance(r: &mut RandomStream) -> SparsePolynomial {
    let n = r.uniform_u64(8) as usize;
    let t = (r.uniform_u64(21) as usize - 1).min(3usize.pow(n as u32));
    random_poly(
        r,
        n,
        t,
        |r| (0..n).map(|_| r.uniform_u64(3) as u32 - 1).collect(),
        |e| e.to_vec(),
    )
}

struct RunCheck {
    label: String,
    exact: bool,
    max_gap: u64,
    gap_bound: u64,
    max_coordinate: BigInt,
    point_bound: BigInt,
}

fn check_run(
    label: String,
    algorithm: Algorithm,
    truth: &SparsePolynomial,
    oracle: SparsePolynomial,
    seed: u64,
) -> RunCheck {
    let eps = ErrorBudget(40);
    let d = truth.total_degree().max(1);
    let b = explicit_blackbox(truth, d);
    let config = EnumeratorConfig {
        seed,
        ..Default::default()
    };
    let (found, metrics) = run_with_metrics(algorithm, &b, eps, &config).unwrap();
    let n = truth.vars();
    RunCheck {
        label,
        exact: found == oracle && found == *truth,
        max_gap: metrics.max_gap_calls(),
        gap_bound: ledger::gap_bound(algorithm, n, b.total_degree(), eps),
        max_coordinate: b.stats().max_coordinate(),
        point_bound: BigInt::from((2 * u64::from(b.total_degree())).max(n as u64)),
    }
}

/// The runs of criteria 1-3, shared with the ledger and point-size checks.
fn exactness_runs() -> &'static [Vec<RunCheck>; 3] {
    static RUNS: OnceLock<[Vec<RunCheck>; 3]> = OnceLock::new();
    RUNS.get_or_init(|| {
        let mut r = RandomStream::new(0xacce_0001);
        let multilinear = (0..100)
            .map(|k| {
                let p = multilinear_instance(&mut r);
                let oracle =
                    brute_force_interpolate(&explicit_blackbox(&p, p.total_degree()), 1).unwrap();
                check_run(
                    format!("multilinear #{k}"),
                    Algorithm::Multilinear,
                    &p,
                    oracle,
                    k,
                )
            })
            .collect();
        let incremental = (0..100)
            .map(|k| {
                let (p, cap) = distinct_support_instance(&mut r);
                let oracle =
                    brute_force_interpolate(&explicit_blackbox(&p, p.total_degree()), cap).unwrap();
                check_run(
                    format!("incremental #{k}"),
                    Algorithm::Incremental,
                    &p,
                    oracle,
                    k,
                )
            })
            .collect();
        let degree2 = (0..100)
            .map(|k| {
                let p = degree2_instance(&mut r);
                let oracle =
                    brute_force_interpolate(&explicit_blackbox(&p, p.total_degree()), 2).unwrap();
                check_run(format!("degree2 #{k}"), Algorithm::Degree2, &p, oracle, k)
            })
            .collect();
        [multilinear, incremental, degree2]
    })
}

fn exactness(criterion: u32, runs: &[RunCheck]) {
    let exact = runs.iter().filter(|c| c.exact).count();
    let wrong: Vec<_> = runs
        .iter()
        .filter(|c| !c.exact)
        .map(|c| c.label.as_str())
        .collect();
    report(
        criterion,
        exact == runs.len(),
        &format!("{exact}/{} exact {wrong:?}", runs.len()),
    );
}

#[test]
fn criterion_01_multilinear_exact() {
    exactness(1, &exactness_runs()[0]);
}

#[test]
fn criterion_02_distinct_supports_exact() {
    exactness(2, &exactness_runs()[1]);
}

#[test]
fn criterion_03_degree_two_exact() {
    exactness(3, &exactness_runs()[2]);
}

#[test]
fn criterion_04_call_ledgers() {
    let mut violations = Vec::new();
    let mut worst = 0.0f64;
    for c in exactness_runs().iter().flatten() {
        worst = worst.max(c.max_gap as f64 / c.gap_bound as f64);
        if c.max_gap > c.gap_bound {
            violations.push(format!("{}: {} > {}", c.label, c.max_gap, c.gap_bound));
        }
    }
    report(
        4,
        violations.is_empty(),
        &format!("300 runs, worst gap/bound {worst:.3}, violations {violations:?}"),
    );
}

#[test]
fn criterion_05_point_size() {
    let mut violations = Vec::new();
    for c in exactness_runs().iter().flatten() {
        if c.max_coordinate > c.point_bound {
            violations.push(format!(
                "{}: {} > {}",
                c.label, c.max_coordinate, c.point_bound
            ));
        }
    }

    // A bare randomized zero test stays within [1, 2D].
    let mut r = RandomStream::new(0xacce_0005);
    for k in 0..100 {
        let p = multilinear_instance(&mut r);
        let b = explicit_blackbox(&p, p.total_degree());
        let mut e = Enumerator::new(&EnumeratorConfig {
            seed: k,
            ..Default::default()
        });
        e.not_zero(&b, ErrorBudget(40)).unwrap();
        let bound = BigInt::from(2 * b.total_degree());
        if b.stats().max_coordinate() > bound {
            violations.push(format!(
                "not_zero #{k}: {} > {bound}",
                b.stats().max_coordinate()
            ));
        }
    }
    report(
        5,
        violations.is_empty(),
        &format!("300 runs + 100 zero tests, violations {violations:?}"),
    );
}

#[test]
fn criterion_06_one_sided() {
    let zero = explicit_blackbox(&SparsePolynomial::zero(4), 3).with_coeff_bits(1);
    let l1 = SupportSet::from_indices(4, [0, 1]);
    let l2 = SupportSet::from_indices(4, [2, 3]);
    let mut false_counts = [0u32; 3];
    for seed in 0..1000 {
        let mut e = Enumerator::new(&EnumeratorConfig {
            seed,
            ..Default::default()
        });
        let answers = [
            e.not_zero(&zero, ErrorBudget(20)).unwrap(),
            e.not_zero_improved(&zero, &l1, &l2, ErrorBudget(20))
                .unwrap(),
            e.not_zero_onecall(&zero, &l1, &l2, ErrorBudget(20))
                .unwrap(),
        ];
        for (count, answer) in false_counts.iter_mut().zip(answers) {
            *count += u32::from(!answer);
        }
    }
    report(
        6,
        false_counts == [1000; 3],
        &format!("false answers not_zero/improved/onecall = {false_counts:?} of 1000"),
    );
}

#[test]
fn criterion_07_false_negative_rate() {
    // P = X1 X3 - X2 X3 on [1, 4]^3: count the zeros exhaustively.
    let p =
        SparsePolynomial::from_terms(3, [(q(1), vec![1, 0, 1]), (q(-1), vec![0, 1, 1])]).unwrap();
    let mut zeros = 0;
    for x in 1..=4i64 {
        for y in 1..=4i64 {
            for z in 1..=4i64 {
                let v = p.eval(&[BigInt::from(x), BigInt::from(y), BigInt::from(z)]);
                zeros += u32::from(v.is_zero());
            }
        }
    }
    let exact = f64::from(zeros) / 64.0;

    let b = explicit_blackbox(&p, 2);
    let trials = 10_000;
    let mut misses = 0;
    for seed in 0..trials {
        let mut e = Enumerator::new(&EnumeratorConfig {
            seed,
            ..Default::default()
        });
        misses += u32::from(!e.not_zero(&b, ErrorBudget(1)).unwrap());
    }
    let rate = f64::from(misses) / trials as f64;
    report(
        7,
        exact == 0.25 && (rate - 0.25).abs() <= 0.02,
        &format!("exhaustive rate {exact}, measured {rate:.4} over {trials} seeds"),
    );
}

fn enumerate_supports(b: &BlackBox, variant: ZeroTestVariant, seed: u64) -> SparsePolynomial {
    let mut c = Collector::new();
    let config = EnumeratorConfig {
        variant,
        seed,
        ..Default::default()
    };
    Enumerator::new(&config)
        .enumerate_multilinear(b, ErrorBudget(30), &mut c)
        .unwrap();
    c.polynomial(b.vars()).unwrap()
}

fn digraph_from_mask(n: usize, mask: u64) -> Digraph {
    let edges = (0..n * n)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| (k / n, k % n))
        .collect();
    Digraph::new(n, edges).unwrap()
}

fn random_digraph(r: &mut RandomStream, n: usize, loops: bool, per_mille: u64) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if (u != v || loops) && r.uniform_u64(1000) <= per_mille {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges).unwrap()
}

fn random_graph(r: &mut RandomStream, n: usize, per_mille: u64) -> OrientedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.uniform_u64(1000) <= per_mille {
                edges.push((u, v));
            }
        }
    }
    OrientedGraph::new(n, edges).unwrap()
}

fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

#[derive(Default)]
struct BijectionTally {
    instances: usize,
    mismatches: Vec<String>,
    bad_hypertree_coefficients: usize,
}

impl BijectionTally {
    fn compare(&mut self, label: String, found: &SparsePolynomial, truth: BTreeSet<SupportSet>) {
        self.instances += 1;
        if found.supports() != truth || found.len() != truth.len() {
            self.mismatches.push(label);
        }
    }
}

fn matching_instance(
    g: &OrientedGraph,
    label: String,
    seed: u64,
    tally: &mut BijectionTally,
) -> bool {
    let Some(oriented) = find_pfaffian_orientation(g).unwrap() else {
        return false;
    };
    let b = matching_blackbox(&oriented);
    let truth = brute_force_structures(Instance::Matchings(&oriented)).unwrap();
    tally.compare(
        label,
        &enumerate_supports(&b, ZeroTestVariant::Interpolation, seed),
        truth,
    );
    true
}

fn hypertree_instance(h: &Hypergraph3, label: String, seed: u64, tally: &mut BijectionTally) {
    let b = hypertree_blackbox(h);
    let found = enumerate_supports(&b, ZeroTestVariant::Interpolation, seed);
    tally.bad_hypertree_coefficients += found
        .monomials()
        .filter(|m| m.coefficient.abs() != Rational::one())
        .count();
    tally.compare(
        label,
        &found,
        brute_force_structures(Instance::Hypertrees(h)).unwrap(),
    );
}

#[test]
fn criterion_08_combinatorial_bijections() {
    let start = Instant::now();
    let mut tally = BijectionTally::default();

    // Every digraph (self-loops included) on at most four vertices, with the
    // one-call node test; the remaining instances use interpolation.
    let sweep = ZeroTestVariant::OneCall;
    for n in 1..=4usize {
        for mask in 0..1u64 << (n * n) {
            let g = digraph_from_mask(n, mask);
            let seed = mask;
            let b = cycle_cover_blackbox(&g);
            let truth = brute_force_structures(Instance::CycleCovers(&g)).unwrap();
            tally.compare(
                format!("cycle covers n={n} mask={mask:#x}"),
                &enumerate_supports(&b, sweep, seed),
                truth,
            );

            let root = (mask as usize) % n;
            let col = (mask as usize / n) % n;
            let b = arborescence_blackbox(&g, root, col).unwrap();
            let truth =
                brute_force_structures(Instance::Arborescences { graph: &g, root }).unwrap();
            tally.compare(
                format!("arborescences n={n} mask={mask:#x} root={}", root + 1),
                &enumerate_supports(&b, sweep, seed),
                truth,
            );
        }
    }
    let exhaustive_digraphs = tally.instances;

    // Every simple graph on at most four vertices and every 3-uniform
    // hypergraph on at most five.
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0..1u64 << pairs.len() {
            let edges = (0..pairs.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| pairs[k])
                .collect();
            let g = OrientedGraph::new(n, edges).unwrap();
            matching_instance(
                &g,
                format!("matchings n={n} mask={mask:#x}"),
                mask,
                &mut tally,
            );
        }
    }
    for n in 1..=5usize {
        let all = triples(n);
        for mask in 0..1u64 << all.len() {
            let edges = (0..all.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| all[k])
                .collect();
            let h = Hypergraph3::new(n, edges).unwrap();
            hypertree_instance(
                &h,
                format!("hypertrees n={n} mask={mask:#x}"),
                mask,
                &mut tally,
            );
        }
    }
    let exhaustive = tally.instances;

    // 50 random instances per family on five to seven vertices.
    let mut r = RandomStream::new(0xacce_0008);
    for k in 0..50u64 {
        let n = 4 + r.uniform_u64(3) as usize;
        let g = random_digraph(&mut r, n, true, 300);
        let b = cycle_cover_blackbox(&g);
        let truth = brute_force_structures(Instance::CycleCovers(&g)).unwrap();
        tally.compare(
            format!("random cycle covers #{k}"),
            &enumerate_supports(&b, ZeroTestVariant::Interpolation, k),
            truth,
        );

        let g = random_digraph(&mut r, n, false, 350);
        let root = r.uniform_u64(n as u64) as usize - 1;
        let col = r.uniform_u64(n as u64) as usize - 1;
        let b = arborescence_blackbox(&g, root, col).unwrap();
        let truth = brute_force_structures(Instance::Arborescences { graph: &g, root }).unwrap();
        tally.compare(
            format!("random arborescences #{k}"),
            &enumerate_supports(&b, ZeroTestVariant::Interpolation, k),
            truth,
        );

        loop {
            let n = 4 + r.uniform_u64(3) as usize;
            let g = random_graph(&mut r, n, 450);
            if matching_instance(&g, format!("random matchings #{k}"), k, &mut tally) {
                break;
            }
        }

        let n = [5, 7][r.uniform_u64(2) as usize - 1];
        let edges: Vec<[usize; 3]> = triples(n)
            .into_iter()
            .filter(|_| r.uniform_u64(1000) <= 250)
            .collect();
        let h = Hypergraph3::new(n, edges).unwrap();
        hypertree_instance(&h, format!("random hypertrees #{k}"), k, &mut tally);
    }

    report(
        8,
        tally.mismatches.is_empty() && tally.bad_hypertree_coefficients == 0,
        &format!(
            "{} instances ({exhaustive_digraphs} exhaustive digraph runs, {} other exhaustive, {} random), \
             mismatches {:?}, non-unit hypertree coefficients {}, {:.1}s",
            tally.instances,
            exhaustive - exhaustive_digraphs,
            tally.instances - exhaustive,
            tally.mismatches,
            tally.bad_hypertree_coefficients,
            start.elapsed().as_secs_f64()
        ),
    );
}

/// The stream a consumer would see: everything but wall-clock time.
fn stream_text(
    algorithm: Algorithm,
    b: &BlackBox,
    seed: u64,
    variant: ZeroTestVariant,
) -> (String, u64) {
    let mut text = String::new();
    let mut sink = |e: &OutputEvent| {
        writeln!(
            text,
            "{} {} {:?} {} {}",
            e.index,
            e.monomial.coefficient,
            e.monomial.exponents,
            e.calls_since_previous,
            e.random_bits
        )
        .unwrap();
        ControlFlow::Continue(())
    };
    let config = EnumeratorConfig {
        mode: Mode::MonotoneDeterministic,
        variant,
        seed,
    };
    let mut e = Enumerator::new(&config);
    e.enumerate(algorithm, b, ErrorBudget(30), &mut sink)
        .unwrap();
    (text, e.random_bits())
}

#[test]
fn criterion_09_monotone_determinism() {
    let mut r = RandomStream::new(0xacce_0009);
    let mut cases: Vec<(String, Algorithm, BlackBox)> = Vec::new();
    for k in 0..20 {
        let n = r.uniform_u64(8) as usize;
        let mut p = multilinear_instance(&mut r);
        p = SparsePolynomial::from_terms(
            p.vars(),
            p.monomials().map(|m| (m.coefficient.abs(), m.exponents)),
        )
        .unwrap();
        cases.push((
            format!("explicit multilinear #{k}"),
            Algorithm::Multilinear,
            explicit_blackbox(&p, p.total_degree()),
        ));
        cases.push((
            format!("explicit incremental #{k}"),
            Algorithm::Incremental,
            explicit_blackbox(&p, p.total_degree()),
        ));
        let d2 = degree2_instance(&mut r);
        let d2 = SparsePolynomial::from_terms(
            d2.vars(),
            d2.monomials().map(|m| (m.coefficient.abs(), m.exponents)),
        )
        .unwrap();
        cases.push((
            format!("explicit degree2 #{k}"),
            Algorithm::Degree2,
            explicit_blackbox(&d2, d2.total_degree()),
        ));
        let g = random_digraph(&mut r, 2 + n % 5, false, 400);
        cases.push((
            format!("arborescences #{k}"),
            Algorithm::Multilinear,
            arborescence_blackbox(&g, 0, 0).unwrap(),
        ));
    }
    let c4 = OrientedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    cases.push((
        "4-cycle matchings".into(),
        Algorithm::Multilinear,
        matching_blackbox(&c4),
    ));

    let mut failures = Vec::new();
    let mut checked = 0;
    for (label, algorithm, b) in &cases {
        if !b.is_monotone() {
            continue;
        }
        checked += 1;
        let (a, bits_a) = stream_text(*algorithm, b, 1, ZeroTestVariant::Interpolation);
        let (c, bits_c) = stream_text(*algorithm, b, 2, ZeroTestVariant::Interpolation);
        if a != c || bits_a != 0 || bits_c != 0 {
            failures.push(label.clone());
        }
    }
    report(
        9,
        failures.is_empty() && checked > 40,
        &format!("{checked} monotone boxes, failures {failures:?}"),
    );
}

#[test]
fn criterion_10_pfaffian_identity() {
    let mut r = RandomStream::new(0xacce_0010);
    let mut failures = 0;
    for _ in 0..100 {
        let n = r.uniform_u64(10) as usize;
        let mut m = vec![vec![q(0); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let num = BigInt::from(r.uniform_u64(1 << 33)) - (1i64 << 32);
                let den = BigInt::from(r.uniform_u64(5));
                let v = if r.uniform_u64(4) == 1 {
                    Rational::zero()
                } else {
                    Rational::new(num, den)
                };
                m[j][i] = -v.clone();
                m[i][j] = v;
            }
        }
        let pf = pfaffian(&m).unwrap();
        if &pf * &pf != determinant(&m).unwrap() {
            failures += 1;
        }
    }
    report(10, failures == 0, &format!("{failures}/100 mismatches"));
}

#[test]
fn criterion_11_another_solution_and_amplification() {
    let mut r = RandomStream::new(0xacce_0011);
    let mut wrong = Vec::new();
    for k in 0..100u64 {
        let (p, algorithm) = if k % 2 == 0 {
            (multilinear_instance(&mut r), Algorithm::Multilinear)
        } else {
            (distinct_support_instance(&mut r).0, Algorithm::Incremental)
        };
        let known: Vec<Monomial> = p.monomials().filter(|_| r.uniform_u64(3) > 1).collect();
        let known = {
            let mut s = SparsePolynomial::zero(p.vars());
            for m in &known {
                s.add_monomial(m).unwrap();
            }
            s
        };
        let b = explicit_blackbox(&p, p.total_degree());
        let mut e = Enumerator::new(&EnumeratorConfig {
            seed: k,
            ..Default::default()
        });
        let ok = match e
            .another_solution(algorithm, &b, ErrorBudget(40), &known)
            .unwrap()
        {
            AnotherSolution::Found(m) => {
                !known.contains_exponents(&m.exponents)
                    && p.coefficient(&m.exponents) == m.coefficient
            }
            AnotherSolution::Exhausted => known.len() == p.len(),
        };
        if !ok {
            wrong.push(k);
        }
    }

    let per_run = ErrorBudget(12);
    let mut compared = 0;
    let mut amplification_failures = Vec::new();
    let mut duplicates = 0;
    for k in 0..40u64 {
        let (p, algorithm) = if k % 2 == 0 {
            (multilinear_instance(&mut r), Algorithm::Multilinear)
        } else {
            (distinct_support_instance(&mut r).0, Algorithm::Incremental)
        };
        let b = explicit_blackbox(&p, p.total_degree());
        let config = EnumeratorConfig {
            seed: k,
            ..Default::default()
        };

        let mut single = Collector::new();
        let single_ok =
            Enumerator::with_stream(config.mode, config.variant, RandomStream::new(k).split(0))
                .enumerate(algorithm, &b, per_run, &mut single)
                .is_ok_and(|_| single.polynomial(p.vars()).is_ok_and(|s| s == p));

        let mut seen = HashSet::new();
        let mut amplified = SparsePolynomial::zero(p.vars());
        let mut sink = |e: &OutputEvent| {
            if !seen.insert(e.monomial.exponents.clone()) {
                duplicates += 1;
            }
            let _ = amplified.add_monomial(&e.monomial);
            ControlFlow::Continue(())
        };
        amplified_enumerate(algorithm, &b, per_run, 3, &config, &mut sink).unwrap();
        if single_ok {
            compared += 1;
            if amplified != p {
                amplification_failures.push(k);
            }
        }
    }

    report(
        11,
        wrong.is_empty() && amplification_failures.is_empty() && duplicates == 0 && compared > 0,
        &format!(
            "another_solution wrong on {wrong:?} of 100; amplified k=3 compared on {compared}/40, \
             failures {amplification_failures:?}, duplicates {duplicates}"
        ),
    );
}
