//! Command-line front end: argument parsing, dispatch to the library, and
//! text or JSON reports.
//!
//! Exit codes: 0 for success and for checks that verify true, 1 for checks
//! that verify false, 2 for malformed input or bound violations.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use twistpoly::corpus;
use twistpoly::ribbon::{bouquet_exchange, bouquet_slide, partial_dual_polynomial, PolynomialMode};
use twistpoly::sweep::{run_sweep, SweepKind, SweepReport};
use twistpoly::{
    binary_witness, exchange_ends, four_term_report, from_matrix, handle_slide, parse_set_system,
    quadrant_mismatch, quadrant_polynomial, slide_exchange, tutte_check, tutte_consistent,
    tutte_solve, twist_polynomial, Bouquet, Gf2SymMatrix, GroundSet, IntPolynomial, MovePair,
    QuadrantSelector, RibbonGraph, SetSystem, TutteScalars, TutteTriple,
};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "TWISTPOLY_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "twistpoly",
    version,
    about = "Twist polynomials, delta-matroid moves and ribbon graphs"
)]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Read the input from a file.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "inline")]
    pub path: Option<PathBuf>,
    /// Take the input from the command line.
    #[arg(long, value_name = "TEXT")]
    pub inline: Option<String>,
}

impl Input {
    fn is_given(&self) -> bool {
        self.path.is_some() || self.inline.is_some()
    }

    fn read(&self) -> anyhow::Result<String> {
        match (&self.path, &self.inline) {
            (Some(p), _) => {
                fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
            }
            (None, Some(t)) => Ok(t.clone()),
            (None, None) => bail!("no input: pass --in PATH or --inline TEXT"),
        }
    }

    fn set_system(&self) -> anyhow::Result<SetSystem> {
        Ok(parse_set_system(&self.read()?)?)
    }

    fn ribbon(&self) -> anyhow::Result<RibbonGraph> {
        Ok(RibbonGraph::parse(&self.read()?)?)
    }

    fn bouquet(&self) -> anyhow::Result<Bouquet> {
        Ok(Bouquet::parse(&self.read()?)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub input: Input,
    /// The ordered pair (a, b).
    #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
    pub pair: Vec<String>,
}

impl PairArgs {
    fn resolve(&self) -> anyhow::Result<(SetSystem, MovePair)> {
        let d = self.input.set_system()?;
        let m = MovePair::new(d.ground(), &self.pair[0], &self.pair[1])?;
        Ok((d, m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Direct,
    Dm,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Twist polynomial of a set system.
    Poly(Input),
    /// Smallest and largest feasible-set sizes and their difference.
    Width(Input),
    /// Twist by a subset, given as comma-separated labels.
    Twist {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "LABELS", allow_hyphen_values = true)]
        set: String,
    },
    /// Handle slide of a over b.
    Slide(PairArgs),
    /// Exchange of the ends of a and b.
    Exchange(PairArgs),
    /// Slide followed by exchange, from the closed formula.
    Slidex(PairArgs),
    /// Four-term relation for one pair, or for every system on N elements.
    Check4t {
        #[command(flatten)]
        input: Input,
        #[arg(long, num_args = 2, value_names = ["A", "B"], required_unless_present = "exhaustive")]
        pair: Vec<String>,
        #[arg(long, value_name = "N", conflicts_with = "pair")]
        exhaustive: Option<usize>,
    },
    /// Quadrant polynomials and the mask-level width equalities.
    Quadrants(PairArgs),
    /// Symmetric exchange axiom.
    IsDm(Input),
    /// Whether a twist of the system comes from a symmetric GF(2) matrix.
    IsBinary(Input),
    /// Set system of the non-singular principal minors of a matrix.
    FromGf2 {
        #[command(flatten)]
        input: Input,
        /// Ground labels (default a, b, c, ...).
        #[arg(long, num_args = 1..)]
        labels: Option<Vec<String>>,
    },
    /// Delta-matroid of a ribbon graph.
    RibbonDm(Input),
    /// Partial-dual Euler-genus polynomial of a ribbon graph.
    PdPoly {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
    },
    /// Slide on a bouquet.
    BouquetSlide(PairArgs),
    /// Exchange of ends on a bouquet.
    BouquetExchange(PairArgs),
    /// Tutte-relation triples; systems in the input are separated by `---`.
    Tutte {
        #[command(flatten)]
        input: Input,
        /// Element per system; a single element applies to all.
        #[arg(long = "element", num_args = 1.., required = true)]
        elements: Vec<String>,
        /// Rational weights x y p q to test, e.g. `1 1 1/2 3`.
        #[arg(long, num_args = 4, value_names = ["X", "Y", "P", "Q"], allow_hyphen_values = true)]
        scalars: Option<Vec<String>>,
    },
    /// Exhaustive verification sweep.
    Sweep {
        #[command(flatten)]
        kind: SweepFlags,
        #[arg(long, value_name = "N")]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct SweepFlags {
    #[arg(long)]
    pub four_term: bool,
    #[arg(long)]
    pub quadrants: bool,
    #[arg(long)]
    pub involutions: bool,
    #[arg(long)]
    pub binary_closure: bool,
    #[arg(long)]
    pub ribbon_lemma: bool,
}

impl SweepFlags {
    fn kind(self) -> SweepKind {
        match self {
            SweepFlags {
                four_term: true, ..
            } => SweepKind::FourTerm,
            SweepFlags {
                quadrants: true, ..
            } => SweepKind::Quadrants,
            SweepFlags {
                involutions: true, ..
            } => SweepKind::Involutions,
            SweepFlags {
                binary_closure: true,
                ..
            } => SweepKind::BinaryClosure,
            _ => SweepKind::RibbonLemma,
        }
    }
}

/// Subcommand name and the library operation it exposes.
pub const DISPATCH: &[(&str, &str)] = &[
    ("poly", "weight::twist_polynomial"),
    ("width", "setsystem::SetSystem::width"),
    ("twist", "setsystem::SetSystem::twist"),
    ("slide", "moves::handle_slide"),
    ("exchange", "moves::exchange_ends"),
    ("slidex", "moves::slide_exchange"),
    ("check4t", "weight::four_term_report"),
    ("quadrants", "weight::quadrant_polynomial"),
    ("is-dm", "setsystem::SetSystem::is_delta_matroid"),
    ("is-binary", "gf2::is_binary"),
    ("from-gf2", "gf2::from_matrix"),
    ("ribbon-dm", "ribbon::RibbonGraph::delta_matroid"),
    ("pd-poly", "ribbon::partial_dual_polynomial"),
    ("bouquet-slide", "ribbon::bouquet_slide"),
    ("bouquet-exchange", "ribbon::bouquet_exchange"),
    ("tutte", "weight::tutte_check"),
    ("sweep", "sweep::run_sweep"),
];

/// Names of all subcommands known to the parser.
pub fn subcommand_names() -> Vec<String> {
    Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect()
}

/// A finished report: its text and JSON forms and whether it verified.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub verified: bool,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Report {
        Report {
            text: text.into(),
            json,
            verified: true,
        }
    }

    fn check(verified: bool, text: impl Into<String>, json: Value) -> Report {
        Report {
            text: text.into(),
            json,
            verified,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            1
        }
    }
}

fn system_report(d: &SetSystem) -> Report {
    Report::ok(d.to_string(), d.to_json())
}

fn poly_json(p: &IntPolynomial) -> Value {
    Value::String(p.to_string())
}

fn parse_labels(set: &str) -> Vec<&str> {
    set.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

fn sweep_report(r: &SweepReport) -> Report {
    let json = json!({
        "kind": r.kind.name(),
        "size": r.size,
        "instances": r.instances,
        "checks": r.checks,
        "summary": r.summary,
        "counterexamples": r.counterexamples,
    });
    Report::check(r.passed(), r.to_string(), json)
}

fn four_term_text(d: &SetSystem, m: MovePair) -> anyhow::Result<Report> {
    let r = four_term_report(d, m)?;
    let names = twistpoly::FourTermReport::NAMES;
    let mut lines: Vec<String> = names
        .iter()
        .zip(&r.polynomials)
        .map(|(n, p)| format!("{n}: {p}"))
        .collect();
    lines.push(format!("defect: {}", r.defect));
    let systems: Vec<Value> = names
        .iter()
        .zip(&r.systems)
        .zip(&r.polynomials)
        .map(|((n, s), p)| json!({"name": n, "system": s.to_json(), "polynomial": poly_json(p)}))
        .collect();
    let json = json!({"systems": systems, "defect": poly_json(&r.defect)});
    let text = if r.holds() {
        lines.join("\n")
    } else {
        format!(
            "{}\n\ncounterexample:\n{d}\npair: {} {}",
            lines.join("\n"),
            d.ground().label(m.a),
            d.ground().label(m.b)
        )
    };
    Ok(Report::check(r.holds(), text, json))
}

fn quadrants(d: &SetSystem, m: MovePair) -> anyhow::Result<Report> {
    let mut lines = Vec::new();
    let mut polys = serde_json::Map::new();
    for q in QuadrantSelector::ALL {
        let p = quadrant_polynomial(d, m, q)?;
        lines.push(format!("{}: {p}", q.code()));
        polys.insert(q.code().to_string(), poly_json(&p));
    }
    let mismatch = quadrant_mismatch(d, m)?;
    match mismatch {
        None => lines.push("width equalities: hold".into()),
        Some(a) => lines.push(format!(
            "width equalities: fail at {}",
            d.ground().format_mask(a)
        )),
    }
    let json = json!({
        "quadrants": polys,
        "equalities_hold": mismatch.is_none(),
        "mismatch": mismatch.map(|a| d.ground().format_mask(a)),
    });
    Ok(Report::check(mismatch.is_none(), lines.join("\n"), json))
}

fn is_binary_report(d: &SetSystem) -> anyhow::Result<Report> {
    Ok(match binary_witness(d)? {
        Some(w) => {
            let twist = d.ground().format_mask(w.twist);
            Report::ok(
                format!("binary: true\ntwist: {twist}\nmatrix:\n{}", w.matrix),
                json!({"binary": true, "twist": twist, "matrix": w.matrix.to_string()}),
            )
        }
        None => Report::check(false, "binary: false", json!({"binary": false})),
    })
}

fn from_gf2(text: &str, labels: &Option<Vec<String>>) -> anyhow::Result<Report> {
    let c = Gf2SymMatrix::parse(text)?;
    let ground = match labels {
        Some(l) => GroundSet::new(l.iter().cloned())?,
        None => corpus::letters(c.dim()),
    };
    Ok(system_report(&from_matrix(&ground, &c)?))
}

fn pd_poly(g: &RibbonGraph, mode: ModeArg) -> anyhow::Result<Report> {
    let direct = matches!(mode, ModeArg::Direct | ModeArg::Both)
        .then(|| partial_dual_polynomial(g, PolynomialMode::Direct))
        .transpose()?;
    let via = matches!(mode, ModeArg::Dm | ModeArg::Both)
        .then(|| partial_dual_polynomial(g, PolynomialMode::ViaDeltaMatroid))
        .transpose()?;
    Ok(match (direct, via) {
        (Some(p), None) | (None, Some(p)) => {
            Report::ok(p.to_string(), json!({"polynomial": poly_json(&p)}))
        }
        (Some(p), Some(q)) => Report::check(
            p == q,
            format!("direct: {p}\nvia delta-matroid: {q}\nagree: {}", p == q),
            json!({"direct": poly_json(&p), "via_dm": poly_json(&q), "agree": p == q}),
        ),
        (None, None) => unreachable!("every mode selects at least one computation"),
    })
}

fn bouquet_report(b: &Bouquet) -> Report {
    let twisted: Vec<&str> = (0..b.labels().len())
        .filter(|&e| b.signs()[e] == twistpoly::ribbon::Sign::Minus)
        .map(|e| b.labels().label(e))
        .collect();
    Report::ok(
        b.to_string(),
        json!({"bouquet": b.word(), "twisted": twisted}),
    )
}

fn parse_rational(s: &str) -> anyhow::Result<BigRational> {
    s.parse().with_context(|| format!("bad rational {s:?}"))
}

fn tutte(text: &str, elements: &[String], scalars: &Option<Vec<String>>) -> anyhow::Result<Report> {
    let chunks: Vec<&str> = text
        .split("\n---")
        .map(|c| c.trim_start_matches('-'))
        .collect();
    if elements.len() != 1 && elements.len() != chunks.len() {
        bail!("{} systems but {} elements", chunks.len(), elements.len());
    }
    let mut triples: Vec<TutteTriple> = Vec::new();
    let mut lines = Vec::new();
    let mut json_triples = Vec::new();
    for (i, chunk) in chunks.iter().enumerate() {
        let d = parse_set_system(chunk).with_context(|| format!("system {}", i + 1))?;
        let e = &elements[if elements.len() == 1 { 0 } else { i }];
        let t = tutte_check(&d, e)?;
        lines.push(format!(
            "{e} ({}): f(D) = {}, f(D\\{e}) = {}, f(D/{e}) = {}",
            t.case.name(),
            t.whole,
            t.deletion,
            t.contraction
        ));
        json_triples.push(json!({
            "element": e,
            "case": t.case.name(),
            "whole": poly_json(&t.whole),
            "deletion": poly_json(&t.deletion),
            "contraction": poly_json(&t.contraction),
        }));
        triples.push(t);
    }
    if let Some(s) = scalars {
        let [x, y, p, q] = [0, 1, 2, 3].map(|i| parse_rational(&s[i]));
        let s = TutteScalars {
            x: x?,
            y: y?,
            p: p?,
            q: q?,
        };
        let ok = tutte_consistent(&triples, &s);
        lines.push(format!(
            "consistent at x={} y={} p={} q={}: {ok}",
            s.x, s.y, s.p, s.q
        ));
        return Ok(Report::check(
            ok,
            lines.join("\n"),
            json!({"triples": json_triples, "consistent": ok}),
        ));
    }
    let solution = tutte_solve(&triples);
    match &solution {
        Some(s) => lines.push(format!("solvable: x={} y={} p={} q={}", s.x, s.y, s.p, s.q)),
        None => lines.push("solvable: no rational (x, y, p, q)".into()),
    }
    let sol_json = solution.map(|s| [s.x, s.y, s.p, s.q].map(|v| v.to_string()));
    Ok(Report::ok(
        lines.join("\n"),
        json!({"triples": json_triples, "solution": sol_json}),
    ))
}

/// Runs one parsed command.
pub fn execute(command: &Command) -> anyhow::Result<Report> {
    match command {
        Command::Poly(input) => {
            let p = twist_polynomial(&input.set_system()?);
            Ok(Report::ok(
                p.to_string(),
                json!({"polynomial": poly_json(&p)}),
            ))
        }
        Command::Width(input) => {
            let w = input.set_system()?.width();
            Ok(Report::ok(
                format!("r_min: {}\nr_max: {}\nwidth: {}", w.r_min, w.r_max, w.width),
                json!({"r_min": w.r_min, "r_max": w.r_max, "width": w.width}),
            ))
        }
        Command::Twist { input, set } => {
            let d = input.set_system()?;
            Ok(system_report(&d.twist_labels(&parse_labels(set))?))
        }
        Command::Slide(p) => {
            let (d, m) = p.resolve()?;
            Ok(system_report(&handle_slide(&d, m)?))
        }
        Command::Exchange(p) => {
            let (d, m) = p.resolve()?;
            Ok(system_report(&exchange_ends(&d, m)?))
        }
        Command::Slidex(p) => {
            let (d, m) = p.resolve()?;
            Ok(system_report(&slide_exchange(&d, m)?))
        }
        Command::Check4t {
            input,
            pair,
            exhaustive,
        } => match exhaustive {
            Some(n) => {
                if input.is_given() {
                    bail!("--exhaustive takes no input system");
                }
                Ok(sweep_report(&run_sweep(SweepKind::FourTerm, *n)?))
            }
            None => {
                let d = input.set_system()?;
                let m = MovePair::new(d.ground(), &pair[0], &pair[1])?;
                four_term_text(&d, m)
            }
        },
        Command::Quadrants(p) => {
            let (d, m) = p.resolve()?;
            quadrants(&d, m)
        }
        Command::IsDm(input) => {
            let ok = input.set_system()?.is_delta_matroid();
            Ok(Report::check(
                ok,
                format!("delta-matroid: {ok}"),
                json!({"delta_matroid": ok}),
            ))
        }
        Command::IsBinary(input) => is_binary_report(&input.set_system()?),
        Command::FromGf2 { input, labels } => from_gf2(&input.read()?, labels),
        Command::RibbonDm(input) => Ok(system_report(&input.ribbon()?.delta_matroid()?)),
        Command::PdPoly { input, mode } => pd_poly(&input.ribbon()?, *mode),
        Command::BouquetSlide(p) => Ok(bouquet_report(&bouquet_slide(
            &p.input.bouquet()?,
            &p.pair[0],
            &p.pair[1],
        )?)),
        Command::BouquetExchange(p) => Ok(bouquet_report(&bouquet_exchange(
            &p.input.bouquet()?,
            &p.pair[0],
            &p.pair[1],
        )?)),
        Command::Tutte {
            input,
            elements,
            scalars,
        } => tutte(&input.read()?, elements, scalars),
        Command::Sweep { kind, n } => Ok(sweep_report(&run_sweep(kind.kind(), *n)?)),
    }
}

/// Parses `args` (program name first), runs the command on a pool of the
/// requested size, and returns the exit code with stdout and stderr text.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return (
                2,
                String::new(),
                "error: --threads must be at least 1\n".into(),
            );
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return (2, String::new(), format!("error: {e}\n")),
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(report) => {
            let mut out = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("JSON values serialise")
            } else {
                report.text.clone()
            };
            out.push('\n');
            (report.exit_code(), out, String::new())
        }
        Err(e) => (2, String::new(), format!("error: {e:#}\n")),
    }
}
