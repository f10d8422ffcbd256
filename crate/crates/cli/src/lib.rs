//! Command-line driver: reads an instance file, builds the matching black
//! box and streams its monomials as JSON lines.

pub mod input;

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;

use blackpoly::algorithms::RunSummary;
use blackpoly::harness::{
    brute_force_interpolate, brute_force_structures, Instance as Structures, MetricsRecorder,
};
use blackpoly::polyzoo::{
    arborescence_blackbox, cycle_cover_blackbox, explicit_blackbox, hypertree_blackbox,
    matching_blackbox,
};
use blackpoly::{
    Algorithm, BlackBox, EnumerationSink, Enumerator, EnumeratorConfig, Error, ErrorBudget, Mode,
    OutputEvent, SparsePolynomial, SupportSet, ZeroTestVariant,
};
use clap::{Parser, ValueEnum};
use num_traits::{One, Signed};

use crate::input::Instance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_ABORTED: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Incremental,
    Multilinear,
    Degree2,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Incremental => Algorithm::Incremental,
            AlgorithmArg::Multilinear => Algorithm::Multilinear,
            AlgorithmArg::Degree2 => Algorithm::Degree2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Explicit,
    CycleCovers,
    Arborescences,
    Matchings,
    Hypertrees,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[default]
    Interp,
    Onecall,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "blackpoly",
    version,
    about = "Enumerate the monomials of a black-box polynomial"
)]
pub struct Cli {
    /// Instance file, or `-` for standard input.
    pub input: PathBuf,

    /// Enumeration algorithm. Defaults to the most specific one that applies.
    #[arg(long, value_enum)]
    pub algorithm: Option<AlgorithmArg>,

    /// What the instance encodes. Defaults from the file header: explicit for
    /// `poly`, cycle-covers for `digraph`, matchings for `graph`, hypertrees
    /// for `hypergraph3`.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,

    /// Failure probability 2^-b.
    #[arg(long, default_value_t = 20)]
    pub epsilon_exp: u32,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t)]
    pub variant: VariantArg,

    /// Deterministic mode for boxes with no cancellations.
    #[arg(long)]
    pub monotone: bool,

    /// Search multilinear subtrees concurrently.
    #[arg(long)]
    pub parallel: bool,

    /// Arborescence root (1-based).
    #[arg(long, default_value_t = 1)]
    pub root: usize,

    /// Deleted Laplacian column (1-based); defaults to the root.
    #[arg(long)]
    pub col: Option<usize>,

    /// Coefficient bit bound for explicit polynomials (one-call variant).
    #[arg(long)]
    pub coeff_bits: Option<u64>,

    /// Write per-output metrics and a summary as JSON lines.
    #[arg(long, value_name = "PATH")]
    pub metrics_out: Option<PathBuf>,

    /// Check the output against a brute-force oracle, or against the
    /// polynomial in EXPECTED when given.
    #[arg(long, value_name = "EXPECTED", num_args = 0..=1)]
    pub verify: Option<Option<PathBuf>>,
}

/// Error carrying the exit code it maps to.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, message)
    }

    fn config(message: impl Into<String>) -> Self {
        Self::new(EXIT_CONFIG, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::Input(_) => EXIT_CONFIG,
            _ => EXIT_ABORTED,
        };
        Failure::new(code, e.to_string())
    }
}

/// The oracle a run is checked against with `--verify`.
enum Expected {
    Polynomial(SparsePolynomial),
    Structures(BTreeSet<SupportSet>),
}

/// A built black box with everything needed to run and check it.
pub struct Setup {
    pub blackbox: BlackBox,
    pub algorithm: Algorithm,
    /// Human-readable meaning of each variable.
    pub labels: Vec<String>,
    instance: Instance,
    family: FamilyArg,
}

fn default_family(instance: &Instance) -> FamilyArg {
    match instance {
        Instance::Poly { .. } => FamilyArg::Explicit,
        Instance::Digraph(_) => FamilyArg::CycleCovers,
        Instance::Graph(_) => FamilyArg::Matchings,
        Instance::Hypergraph(_) => FamilyArg::Hypertrees,
    }
}

fn vertex_pair_labels(edges: &[(usize, usize)], arrow: &str) -> Vec<String> {
    edges
        .iter()
        .map(|(u, v)| format!("{}{arrow}{}", u + 1, v + 1))
        .collect()
}

pub fn setup(cli: &Cli, instance: Instance) -> Result<Setup, Failure> {
    let family = cli.family.unwrap_or_else(|| default_family(&instance));
    let mismatch = || {
        Failure::config(format!(
            "family {family:?} does not apply to a `{}` file",
            instance.kind()
        ))
    };

    let (blackbox, labels) = match (&instance, family) {
        (
            Instance::Poly {
                poly,
                total_degree,
                coeff_bits,
            },
            FamilyArg::Explicit,
        ) => {
            let d = total_degree.unwrap_or(poly.total_degree());
            let mut b = explicit_blackbox(poly, d);
            match cli.coeff_bits.or(*coeff_bits) {
                Some(c) => b = b.with_coeff_bits(c),
                None if cli.variant == VariantArg::Onecall => return Err(Failure::config(
                    "the one-call variant needs a coefficient bit bound (header or --coeff-bits)",
                )),
                None => {}
            }
            let labels = (1..=poly.vars()).map(|i| format!("X{i}")).collect();
            (b, labels)
        }
        (Instance::Digraph(g), FamilyArg::CycleCovers) => {
            (cycle_cover_blackbox(g), vertex_pair_labels(g.edges(), "->"))
        }
        (Instance::Digraph(g), FamilyArg::Arborescences) => {
            let n = g.vertices();
            let col = cli.col.unwrap_or(cli.root);
            for (what, v) in [("root", cli.root), ("column", col)] {
                if v == 0 || v > n {
                    return Err(Failure::config(format!("{what} {v} outside 1..={n}")));
                }
            }
            let b = arborescence_blackbox(g, cli.root - 1, col - 1)?;
            (b, vertex_pair_labels(g.edges(), "->"))
        }
        (Instance::Graph(g), FamilyArg::Matchings) => {
            (matching_blackbox(g), vertex_pair_labels(g.edges(), "->"))
        }
        (Instance::Hypergraph(h), FamilyArg::Hypertrees) => {
            let labels = h
                .edges()
                .iter()
                .map(|[a, b, c]| format!("{{{},{},{}}}", a + 1, b + 1, c + 1))
                .collect();
            (hypertree_blackbox(h), labels)
        }
        _ => return Err(mismatch()),
    };

    let algorithm = match cli.algorithm {
        Some(a) => a.into(),
        None => match &instance {
            Instance::Poly { poly, .. } if !poly.is_multilinear() => {
                if poly.has_distinct_supports() {
                    Algorithm::Incremental
                } else {
                    Algorithm::Degree2
                }
            }
            _ => Algorithm::Multilinear,
        },
    };
    if let Instance::Poly { poly, .. } = &instance {
        let fits = match algorithm {
            Algorithm::Multilinear => poly.is_multilinear(),
            Algorithm::Incremental => poly.has_distinct_supports(),
            Algorithm::Degree2 => poly.max_var_degree() <= 2,
        };
        if !fits {
            return Err(Failure::config(format!(
                "the polynomial is outside the class of {algorithm}"
            )));
        }
    }
    if cli.variant == VariantArg::Onecall && algorithm == Algorithm::Incremental {
        return Err(Failure::config(
            "the incremental algorithm has no one-call variant",
        ));
    }
    if cli.parallel && algorithm != Algorithm::Multilinear {
        return Err(Failure::config(
            "--parallel applies to the multilinear algorithm only",
        ));
    }
    Ok(Setup {
        blackbox,
        algorithm,
        labels,
        instance,
        family,
    })
}

/// Writes one JSON object per monomial and flushes it immediately.
pub struct RecordWriter<W: Write> {
    out: W,
    pub error: Option<io::Error>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W) -> Self {
        Self { out, error: None }
    }

    fn write(&mut self, e: &OutputEvent) -> io::Result<()> {
        let coefficient = serde_json::to_string(&e.monomial.coefficient.to_string())?;
        let exponents = serde_json::to_string(&e.monomial.exponents)?;
        writeln!(
            self.out,
            "{{\"index\":{},\"coefficient\":{coefficient},\"exponents\":{exponents},\"calls_since_previous\":{}}}",
            e.index, e.calls_since_previous
        )?;
        self.out.flush()
    }
}

impl<W: Write> EnumerationSink for RecordWriter<W> {
    fn emit(&mut self, event: &OutputEvent) -> ControlFlow<()> {
        match self.write(event) {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                self.error = Some(e);
                ControlFlow::Break(())
            }
        }
    }
}

fn enumerator(cli: &Cli) -> Enumerator {
    Enumerator::new(&EnumeratorConfig {
        mode: if cli.monotone {
            Mode::MonotoneDeterministic
        } else {
            Mode::Randomized
        },
        variant: match cli.variant {
            VariantArg::Interp => ZeroTestVariant::Interpolation,
            VariantArg::Onecall => ZeroTestVariant::OneCall,
        },
        seed: cli.seed,
    })
}

/// Runs the configured enumeration, streaming records into `sink`.
pub fn enumerate(
    cli: &Cli,
    setup: &Setup,
    sink: &mut dyn EnumerationSink,
) -> Result<RunSummary, Failure> {
    let mut e = enumerator(cli);
    let eps = ErrorBudget(cli.epsilon_exp);
    let run = if cli.parallel {
        e.enumerate_multilinear_parallel(&setup.blackbox, eps, sink)?
    } else {
        e.enumerate(setup.algorithm, &setup.blackbox, eps, sink)?
    };
    Ok(run)
}

fn expected(cli: &Cli, setup: &Setup) -> Result<Expected, Failure> {
    if let Some(Some(path)) = &cli.verify {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
        return match input::parse(&text)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?
        {
            Instance::Poly { poly, .. } => Ok(Expected::Polynomial(poly)),
            other => Err(Failure::config(format!(
                "expected-output file must be a `poly` file, found `{}`",
                other.kind()
            ))),
        };
    }
    let structures = match (&setup.instance, setup.family) {
        (Instance::Poly { poly, .. }, _) => {
            let d = poly.max_var_degree().max(1);
            return Ok(Expected::Polynomial(brute_force_interpolate(
                &fresh(setup)?,
                d,
            )?));
        }
        (Instance::Digraph(g), FamilyArg::CycleCovers) => Structures::CycleCovers(g),
        (Instance::Digraph(g), _) => Structures::Arborescences {
            graph: g,
            root: cli.root - 1,
        },
        (Instance::Graph(g), _) => Structures::Matchings(g),
        (Instance::Hypergraph(h), _) => Structures::Hypertrees(h),
    };
    Ok(Expected::Structures(brute_force_structures(structures)?))
}

/// The same box without the calls made by the run, for the dense oracle.
fn fresh(setup: &Setup) -> Result<BlackBox, Failure> {
    match &setup.instance {
        Instance::Poly { poly, .. } => Ok(explicit_blackbox(poly, poly.total_degree())),
        _ => Ok(setup.blackbox.clone()),
    }
}

/// Differences between the run's output and the oracle, one line each.
fn diff(found: &SparsePolynomial, expected: &Expected, labels: &[String]) -> Vec<String> {
    let mut lines = Vec::new();
    match expected {
        Expected::Polynomial(want) => {
            for m in want.monomials() {
                if found.coefficient(&m.exponents) != m.coefficient {
                    lines.push(format!("- {m}"));
                }
            }
            for m in found.monomials() {
                if want.coefficient(&m.exponents) != m.coefficient {
                    lines.push(format!("+ {m}"));
                }
            }
        }
        Expected::Structures(want) => {
            let name = |s: &SupportSet| {
                let parts: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
                format!("{{{}}}", parts.join(", "))
            };
            let got = found.supports();
            for s in want.difference(&got) {
                lines.push(format!("- {}", name(s)));
            }
            for s in got.difference(want) {
                lines.push(format!("+ {}", name(s)));
            }
            for m in found.monomials() {
                if !m.coefficient.abs().is_one() {
                    lines.push(format!(
                        "! coefficient {} on {}",
                        m.coefficient,
                        name(&m.support())
                    ));
                }
            }
        }
    }
    lines
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

/// Everything `main` does; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match try_run(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn try_run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let text = read_input(&cli.input)?;
    let instance =
        input::parse(&text).map_err(|e| Failure::parse(format!("{}: {e}", cli.input.display())))?;
    let setup = setup(cli, instance)?;
    // Checked before the run so a bad fixture does not waste it.
    let expected = cli
        .verify
        .as_ref()
        .map(|_| expected(cli, &setup))
        .transpose()?;

    if !matches!(setup.instance, Instance::Poly { .. }) {
        for (i, label) in setup.labels.iter().enumerate() {
            let _ = writeln!(err, "# X{} = {label}", i + 1);
        }
    }

    let mut found = SparsePolynomial::zero(setup.blackbox.vars());
    let mut writer = RecordWriter::new(&mut *out);
    let report = {
        let mut collect = |e: &OutputEvent| {
            let _ = found.add_monomial(&e.monomial);
            writer.emit(e)
        };
        let mut recorder = MetricsRecorder::forwarding(&mut collect);
        let summary = enumerate(cli, &setup, &mut recorder)?;
        recorder.finish(&summary, &setup.blackbox)
    };
    if let Some(e) = writer.error.take() {
        return Err(Failure::new(EXIT_ABORTED, format!("writing output: {e}")));
    }

    if let Some(path) = &cli.metrics_out {
        fs::File::create(path)
            .and_then(|f| report.write_json_lines(io::BufWriter::new(f)))
            .map_err(|e| Failure::new(EXIT_ABORTED, format!("{}: {e}", path.display())))?;
    }

    if let Some(expected) = expected {
        let lines = diff(&found, &expected, &setup.labels);
        if !lines.is_empty() {
            let _ = writeln!(err, "verification failed: {} difference(s)", lines.len());
            for l in lines {
                let _ = writeln!(err, "{l}");
            }
            return Ok(EXIT_MISMATCH);
        }
        let _ = writeln!(err, "verification passed");
    }
    Ok(EXIT_OK)
}
