//! The `springer` command line: parsing, dispatch and output formatting.

pub mod cache;
pub mod render;

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use springer_core::action::{calibrate_gamma, character_table_check, derive_chart, ActionEngine, GammaRoute};
use springer_core::checks::{criteria, CheckConfig};
use springer_core::diagram::{compatible, glue, ArrowGraph, End, Step, TieBreak};
use springer_core::homology::{betti, presentation_betti, relation_instances, rewrite_reduce, HomClass, Reducer};
use springer_core::matching::enumerate;
use springer_core::skein::{calibrate, flatten, resolve_terms, SkeinEvaluator};
use springer_core::sphere::{subspace_of, Variant};
use springer_core::tableau::{matching_of, tableau_of, StandardTableau};
use springer_core::{DottedMatching, Matching, Perm};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] springer_core::Error),
    #[error("verification failed")]
    Verification,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) | CliError::Io(_) | CliError::Json(_) => 2,
            CliError::Verification => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "springer", version, about = "Two-row Springer varieties: matchings, homology and the symmetric group action")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct TypeArgs {
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'k')]
    k: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct OptionalType {
    /// Checked against the class when given.
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'k')]
    k: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct Pair {
    a: String,
    b: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Tie {
    LexMin,
    LexMax,
    Seeded,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Zeta,
    Gamma,
    Skein,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all matchings of type (n-k, k).
    Enumerate {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Check a (dotted) matching and report its type.
    Validate { matching: String },
    /// Close every ray into an arc on new vertices at the left.
    Complete { matching: String },
    /// Inverse of `complete`: keep k arcs, the outer ones become rays.
    Restrict {
        matching: String,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Standard tableau of a standard dotted matching.
    Tableau { matching: String },
    /// Standard dotted matching of the tableau with the given bottom row.
    Matching {
        #[command(flatten)]
        ty: TypeArgs,
        /// Bottom row entries, e.g. "2 4".
        #[arg(long, allow_hyphen_values = true)]
        bottom: String,
    },
    /// Components of the closed diagram a w(b).
    Glue(Pair),
    /// Length of a shortest path of arrow moves between two matchings of the same type.
    Distance {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        json: bool,
    },
    /// A linear extension of the arrow order.
    Order {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "lex-min")]
        tie: Tie,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// A minimal move sequence from a to b.
    Sequence(Pair),
    /// A meet element c below a and b on a geodesic.
    Meet(Pair),
    /// The intersection of the two components as a subspace of (S²)^n.
    Intersect {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        primed: bool,
    },
    /// Betti numbers rank H_0, rank H_2, ...
    Betti {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
        /// Compute from the presentation cokernel rather than the standard basis.
        #[arg(long)]
        cokernel: bool,
    },
    /// Write a class in the standard basis.
    Reduce {
        #[arg(long)]
        class: String,
        /// Use the randomized local rewriting procedure.
        #[arg(long)]
        rewrite: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// All local relation instances in grading m.
    Relations {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Apply a permutation to a class.
    Act {
        #[command(flatten)]
        ty: OptionalType,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long)]
        class: String,
        #[arg(long, value_enum, default_value = "zeta")]
        route: Route,
        #[arg(long)]
        json: bool,
    },
    /// Representation matrix of a permutation on the grading-m standard basis.
    Matrix {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_cache: bool,
        /// Overrides SPRINGER_CACHE_DIR.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Traces of the representation matrices against the irreducible characters.
    Character {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Action of each s_i on each standard generator, by local case.
    Chart {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Apply a permutation through the calibrated skein evaluation.
    Skein {
        #[command(flatten)]
        ty: OptionalType,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long)]
        class: String,
        /// Largest n used for calibration.
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// Also print the unreduced resolution terms.
        #[arg(long)]
        terms: bool,
    },
    /// Calibrate the skein and γ-route conventions against the oracle.
    Calibrate {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long)]
        all: bool,
        /// Run only these suites (by number).
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Draw a matching or class.
    Render {
        class: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Accepts single-dash long flags such as `-nmax` as well.
fn normalize(arg: String) -> String {
    match arg.as_str() {
        "-nmax" | "-seed" | "-all" => format!("-{arg}"),
        _ => arg,
    }
}

pub fn execute<I, S>(argv: I) -> Execution
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(|s| normalize(s.into())).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { code: 1, stdout: String::new(), stderr: text }
            } else {
                Execution { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(()) => Execution { code: 0, stdout: out, stderr: String::new() },
        Err(CliError::Verification) => Execution { code: 3, stdout: out, stderr: "verification failed\n".into() },
        Err(e) => Execution { code: e.exit_code(), stdout: out, stderr: format!("error: {e}\n") },
    }
}

fn matching(s: &str) -> Result<Matching, CliError> {
    Ok(s.parse()?)
}

fn pair(p: &Pair) -> Result<(Matching, Matching), CliError> {
    Ok((matching(&p.a)?, matching(&p.b)?))
}

fn class(s: &str, ty: OptionalType) -> Result<HomClass, CliError> {
    let x = HomClass::parse(s)?;
    let want = (ty.n.unwrap_or(x.n()), ty.k.unwrap_or(x.k()));
    if want != (x.n(), x.k()) {
        return Err(springer_core::Error::TypeMismatch(want.0, want.1, x.n(), x.k()).into());
    }
    Ok(x)
}

fn coefficient_terms(x: &HomClass) -> serde_json::Value {
    x.terms().iter().map(|(g, c)| json!({ "matching": g.to_string(), "coefficient": c.to_string() })).collect()
}

fn line(out: &mut String, s: impl std::fmt::Display) {
    let _ = writeln!(out, "{s}");
}

fn run(command: Command, out: &mut String) -> Result<(), CliError> {
    match command {
        Command::Enumerate { ty, json } => {
            let all = enumerate(ty.n, ty.k)?;
            if json {
                let codes: Vec<String> = all.iter().map(ToString::to_string).collect();
                line(out, json!({ "n": ty.n, "k": ty.k, "count": all.len(), "matchings": codes }));
            } else {
                for a in all {
                    line(out, a);
                }
            }
        }
        Command::Validate { matching } => {
            let x: DottedMatching = matching.parse()?;
            let kind = if x.is_standard() { "standard" } else { "not standard" };
            line(out, format!("{x}: type ({},{}), grading {}, {kind}", x.n() - x.k(), x.k(), x.grading()));
        }
        Command::Complete { matching } => {
            let x: DottedMatching = matching.parse()?;
            line(out, x.complete());
        }
        Command::Restrict { matching: m, k } => line(out, matching(&m)?.restrict(k)?),
        Command::Tableau { matching } => line(out, tableau_of(&matching.parse()?)?),
        Command::Matching { ty, bottom } => {
            let entries = bottom
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad bottom-row entry '{s}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            let t = StandardTableau::from_bottom(ty.n, &entries)?;
            line(out, matching_of(&t, ty.k)?);
        }
        Command::Glue(p) => {
            let (a, b) = pair(&p)?;
            let g = glue(&a, &b)?;
            let verdict = if g.is_compatible() { "compatible" } else { "not compatible" };
            line(out, format!("{} components, {verdict}", g.len()));
            for c in &g.components {
                let path = c.path.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                match c.ends {
                    None => line(out, format!("circle: {path}")),
                    Some((s, e)) => line(out, format!("line {}{}: {path}", end_mark(s), end_mark(e))),
                }
            }
        }
        Command::Distance { pair: p, json } => {
            let (a, b) = pair(&p)?;
            let d = ArrowGraph::new(a.n(), a.k())?.distance(&a, &b)?;
            match (json, d) {
                (true, d) => line(out, json!({ "distance": d })),
                (false, Some(d)) => line(out, d),
                (false, None) => line(out, "incompatible"),
            }
        }
        Command::Order { ty, tie, seed } => {
            let g = ArrowGraph::new(ty.n, ty.k)?;
            let tie = match tie {
                Tie::LexMin => TieBreak::LexMin,
                Tie::LexMax => TieBreak::LexMax,
                Tie::Seeded => TieBreak::Seeded(seed),
            };
            for (pos, x) in g.linear_order(tie)?.into_iter().enumerate() {
                line(out, format!("{pos:>3}  {}", g.nodes[x]));
            }
        }
        Command::Sequence(p) => {
            let (a, b) = pair(&p)?;
            let g = ArrowGraph::new(a.n(), a.k())?;
            let seq = g.minimal_sequence(&a, &b)?;
            line(out, format!("{} steps, certified {}", seq.len(), seq.certified));
            line(out, &seq.matchings[0]);
            for (step, x) in seq.steps.iter().zip(&seq.matchings[1..]) {
                let arrow = if *step == Step::Forward { "→" } else { "←" };
                line(out, format!("{arrow} {x}"));
            }
        }
        Command::Meet(p) => {
            let (a, b) = pair(&p)?;
            line(out, ArrowGraph::new(a.n(), a.k())?.meet(&a, &b)?);
        }
        Command::Intersect { pair: p, primed } => {
            let (a, b) = pair(&p)?;
            let v = if primed { Variant::Primed } else { Variant::Plain };
            let s = subspace_of(&a, v).intersect(&subspace_of(&b, v))?;
            let dim = s.dimension().map_or("empty".to_string(), |d| format!("dimension {d}"));
            line(out, format!("{s}  {dim}, compatible {}", compatible(&a, &b)?));
        }
        Command::Betti { ty, json, cokernel } => {
            let ranks = if cokernel { presentation_betti(ty.n, ty.k)? } else { betti(ty.n, ty.k)? };
            if json {
                line(out, json!({ "ranks": ranks }));
            } else {
                for (m, r) in ranks.iter().enumerate() {
                    line(out, format!("H_{} = {r}", 2 * m));
                }
            }
        }
        Command::Reduce { class: c, rewrite, seed } => {
            let x = HomClass::parse(&c)?;
            let y = if rewrite {
                rewrite_reduce(&x, &mut ChaCha8Rng::seed_from_u64(seed))?
            } else {
                Reducer::new(x.n(), x.k(), x.grading(), None)?.reduce(&x)?
            };
            line(out, y);
        }
        Command::Relations { ty, m } => {
            for r in relation_instances(ty.n, ty.k, m)? {
                line(out, format!("{:?}: {} = 0", r.kind, r.class));
            }
        }
        Command::Act { ty, sigma, class: c, route, json } => {
            let x = class(&c, ty)?;
            let sigma = Perm::parse(&sigma, x.n())?;
            let y = match route {
                Route::Zeta => ActionEngine::new(x.n(), x.k())?.act(&sigma, &x)?,
                Route::Gamma => {
                    let conv = calibrate_gamma(x.n().min(5))?.chosen;
                    GammaRoute::new(x.n(), x.k(), conv)?.act(&sigma, &x)?
                }
                Route::Skein => skein_apply(&sigma, &x, 3)?,
            };
            if json {
                line(out, json!({ "terms": coefficient_terms(&y) }));
            } else {
                line(out, y);
            }
        }
        Command::Matrix { ty, m, sigma, json, no_cache, cache_dir } => {
            let engine = ActionEngine::new(ty.n, ty.k)?;
            let sigma = Perm::parse(&sigma, ty.n)?;
            if m > ty.k {
                return Err(springer_core::Error::Domain(format!("grading {m} exceeds k = {}", ty.k)).into());
            }
            let rec = if no_cache {
                cache::MatrixRecord::new(&engine, &sigma, m)?
            } else {
                let root = cache_dir.unwrap_or_else(cache::default_root);
                cache::load_or_compute(&root, &engine, &sigma, m)?.0
            };
            if json {
                line(out, serde_json::to_string(&rec)?);
            } else {
                for (i, b) in rec.basis.iter().enumerate() {
                    line(out, format!("e{i} = {b}"));
                }
                let w = rec.matrix.iter().flatten().map(String::len).max().unwrap_or(1);
                for row in &rec.matrix {
                    line(out, row.iter().map(|e| format!("{e:>w$}")).collect::<Vec<_>>().join(" "));
                }
            }
        }
        Command::Character { ty, json } => {
            let report = character_table_check(ty.n, ty.k)?;
            if json {
                let rows: Vec<_> = report
                    .rows
                    .iter()
                    .map(|r| json!({ "m": r.m, "class": r.class, "trace": r.trace.to_string(), "expected": r.expected.to_string() }))
                    .collect();
                line(out, json!({ "rows": rows, "failures": report.failures }));
            } else {
                for r in &report.rows {
                    let mark = if r.trace == BigInt::from(r.expected) { "" } else { "  MISMATCH" };
                    line(out, format!("m={} class {:?}: trace {} character {}{mark}", r.m, r.class, r.trace, r.expected));
                }
                for f in &report.failures {
                    line(out, format!("failure: {f}"));
                }
            }
            if !report.passed() {
                return Err(CliError::Verification);
            }
        }
        Command::Chart { ty } => {
            for r in derive_chart(ty.n, ty.k)? {
                line(out, format!("case {} ({}) s{}·({}) = {}", r.case.number(), r.case.description(), r.i, r.input, r.output));
            }
        }
        Command::Skein { ty, sigma, class: c, nmax, terms } => {
            let x = class(&c, ty)?;
            let sigma = Perm::parse(&sigma, x.n())?;
            let conv = calibrate(nmax)?.chosen;
            line(out, format!("convention: {conv}"));
            if terms {
                let tangle = flatten(x.n(), &sigma.reduced_word())?;
                for (g, coeff) in x.terms() {
                    for (t, v) in resolve_terms(g, &tangle, &conv)? {
                        line(out, format!("  {coeff}·({g}) → {v}·({t})"));
                    }
                }
            }
            line(out, skein_apply_with(&sigma, &x, &conv)?);
        }
        Command::Calibrate { nmax } => {
            let cal = calibrate(nmax)?;
            line(out, format!("skein: {} of the family fit for n ≤ {nmax}", cal.fits.len()));
            for c in &cal.fits {
                line(out, format!("  fits: {c}"));
            }
            line(out, format!("  chosen: {}", cal.chosen));
            let gamma = calibrate_gamma(nmax.min(5))?;
            line(out, format!("gamma: chosen {} for n ≤ {}", gamma.chosen, gamma.n_max));
            for ch in &gamma.checks {
                let fail = ch.first_failure.as_deref().map(|f| format!(", first failure {f}")).unwrap_or_default();
                line(out, format!("  {}: kills relations {}, agrees {}{fail}", ch.convention, ch.kills_relations, ch.agrees));
            }
        }
        Command::Verify { all, criteria: only, nmax, seed } => {
            if !all && only.is_empty() {
                return Err(CliError::Usage("verify needs --all or at least one --criterion".into()));
            }
            let cfg = CheckConfig { n_cap: nmax, seed };
            let mut failed = 0;
            let mut ran = 0;
            for c in criteria().into_iter().filter(|c| all || only.contains(&c.id)) {
                ran += 1;
                let r = c.run(&cfg);
                let status = if r.passed() { "PASS" } else { "FAIL" };
                line(out, format!("[{status}] {:>2} {}: {}", r.id, r.title, r.outcome.summary));
                for f in &r.outcome.failures {
                    line(out, format!("       {f}"));
                }
                if !r.passed() {
                    failed += 1;
                }
            }
            line(out, format!("{} of {ran} suites passed", ran - failed));
            if failed > 0 {
                return Err(CliError::Verification);
            }
        }
        Command::Render { class: c, format } => {
            let x = HomClass::parse(&c)?;
            out.push_str(&match format {
                Format::Ascii => render::ascii_class(&x),
                Format::Svg => render::svg_class(&x),
            });
        }
    }
    Ok(())
}

fn end_mark(e: End) -> &'static str {
    match e {
        End::Up => "↑",
        End::Down => "↓",
    }
}

fn skein_apply(sigma: &Perm, x: &HomClass, nmax: usize) -> Result<HomClass, CliError> {
    skein_apply_with(sigma, x, &calibrate(nmax)?.chosen)
}

fn skein_apply_with(
    sigma: &Perm,
    x: &HomClass,
    conv: &springer_core::skein::ResolutionConvention,
) -> Result<HomClass, CliError> {
    let eval = SkeinEvaluator::new(x.n(), x.k())?;
    let mut total = HomClass::zero(x.n(), x.k(), x.grading());
    for (g, c) in x.terms() {
        total.add(&eval.act(sigma, g, conv)?, c)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let e = execute(std::iter::once("springer").chain(args.iter().copied()));
        assert_eq!(e.code, 0, "{args:?}: {}", e.stderr);
        e.stdout
    }

    #[test]
    fn routes_agree() {
        let base = ["act", "--sigma", "s1 s2", "--class", "3: u1-2 r3"];
        let zeta = run_ok(&base);
        for route in ["gamma", "skein"] {
            let mut args = base.to_vec();
            args.extend(["--route", route]);
            assert_eq!(run_ok(&args), zeta, "{route}");
        }
    }

    #[test]
    fn single_dash_long_flags() {
        assert_eq!(normalize("-nmax".into()), "--nmax");
        assert_eq!(normalize("-n".into()), "-n");
    }
}
