//! `schub` — exact Schubert calculus from the command line.
//!
//! Subcommands map one-to-one onto library entry points:
//!
//! | subcommand   | computes                                                    |
//! |--------------|-------------------------------------------------------------|
//! | `roots`      | Cartan pairings, positive roots, highest root θ and θ∨      |
//! | `cd-coeff`   | the `c`/`d` coefficient tables of one affine Weyl element   |
//! | `pontryagin` | a Pontryagin product `ℑ_x · ℑ_y` in loop-group homology     |
//! | `qprod`      | a quantum product `σ^u ⋆ σ^v` on the flag variety `G/B`     |
//! | `gw`         | one 3-pointed genus-zero Gromov–Witten invariant            |
//! | `chevalley`  | the closed-form divisor product `σ^{s_i} ⋆ σ^u`             |
//! | `selftest`   | the acceptance suite, one pass/fail line per criterion      |
//!
//! Elements are entered as whitespace-separated reflection indices (`"1 2"`;
//! the empty string is the identity).  Affine elements may instead be given
//! as JSON, either `{"word": [...]}` over the affine alphabet `0..n` or the
//! canonical split `{"w": [...], "lambda": [...]}`.
//!
//! Exit codes: `0` success, `1` failed self-test criteria, `2` invalid
//! input, `3` length bound exceeded, `4` internal inconsistency (a value
//! violated an invariant the theory guarantees — reported with a diagnostic
//! dump, never returned as data).
//!
//! Output on stdout is byte-deterministic for a given command line and
//! library version, whatever the thread count; timing and warnings go to
//! stderr.

mod cache;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use render::{elem_json, elem_label, ivec, padded, poly_json, qrow_json, qrow_text, rf_json, word_label};
use schub::affine::{AffineWeyl, AffineWeylElement};
use schub::coeffs::Engine;
use schub::pontryagin::pontryagin_constants;
use schub::quantum::{
    choose_translations, equivariant_qconstants_with, equivariant_quantum_chevalley,
    gromov_witten, QuantumSum, TranslationChoice,
};
use schub::root_system::{CorootVec, FiniteWeylElement, RootSystem};
use schub::selftest::{self, Profile};
use schub::Error as LibError;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

/// Exact Schubert calculus: Pontryagin products on loop-group homology,
/// quantum products of Schubert classes on complete flag varieties, and
/// Gromov-Witten invariants, for every simple Lie type.
#[derive(Parser)]
#[command(name = "schub", version)]
struct Cli {
    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// JSON-lines cache for quantum products.  The SCHUB_CACHE environment
    /// variable overrides this flag; an empty value disables caching.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Ceiling on the affine length of any element a computation may touch;
    /// exceeding it is a clean refusal (exit 3), never an out-of-memory.
    #[arg(long, global = true, default_value_t = 24,
          value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,

    /// Worker threads for the coefficient engine; parallelism is opt-in and
    /// does not change any output byte.
    #[arg(long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the root system: Cartan pairings, positive roots, theta.
    Roots {
        /// Lie type: a family letter and rank, e.g. A2, B3, g2.
        #[arg(long = "type", value_name = "TYPE")]
        lie_type: String,
    },
    /// Print the c- and d-coefficient tables of one affine Weyl element.
    #[command(name = "cd-coeff")]
    CdCoeff {
        #[arg(long = "type", value_name = "TYPE")]
        lie_type: String,
        /// The element: a word over 0..n (composed as written), or a JSON
        /// element.
        #[arg(long, value_name = "ELEMENT")]
        u: String,
    },
    /// Pontryagin product of two loop-homology classes.
    Pontryagin {
        #[arg(long = "type", value_name = "TYPE")]
        lie_type: String,
        /// Left factor, a minimal coset representative (word over 0..n or
        /// JSON element).
        #[arg(long, value_name = "ELEMENT")]
        u: String,
        /// Right factor, a minimal coset representative.
        #[arg(long, value_name = "ELEMENT")]
        v: String,
    },
    /// Quantum product of two Schubert classes on G/B.
    Qprod {
        #[arg(long = "type", value_name = "TYPE")]
        lie_type: String,
        /// Left factor u, a word over 1..n ("" is the identity).
        #[arg(long, value_name = "WORD")]
        u: String,
        /// Right factor v.
        #[arg(long, value_name = "WORD")]
        v: String,
        /// Emit the torus-equivariant coefficients (polynomials in the
        /// simple roots) instead of their specialization at alpha = 0.
        #[arg(long)]
        equivariant: bool,
    },
    /// One 3-pointed genus-zero Gromov-Witten invariant of G/B.
    Gw {
        #[arg(long = "type", value_name = "TYPE")]
        lie_type: String,
        /// First insertion, a word over 1..n.
        #[arg(long, value_name = "WORD")]
        u: String,
        /// Second insertion.
        #[arg(long, value_name = "WORD")]
        v: String,
        /// Third insertion.
        #[arg(long, value_name = "WORD")]
        w: String,
        /// Curve degree: integer coroot coordinates, e.g. "0 2 1".
        #[arg(long, value_name = "COORDS")]
        lambda: String,
    },
    /// Closed-form divisor product (equivariant quantum Chevalley rule).
    Chevalley {
        #[arg(long = "type", value_name = "TYPE")]
        lie_type: String,
        /// The divisor: a single simple reflection, e.g. "1".
        #[arg(long, value_name = "WORD")]
        u: String,
        /// The other factor, a word over 1..n.
        #[arg(long, value_name = "WORD")]
        v: String,
    },
    /// Run the acceptance suite, one pass/fail line per criterion.
    Selftest {
        /// Scale profile: quick or full.
        #[arg(value_name = "PROFILE", default_value = "quick")]
        profile: String,
    },
}

/// A failed run, already classified by exit code.
enum Failure {
    /// Invalid input or an unusable cache file (exit 2).
    Input(String),
    /// The computation would exceed the configured length bound (exit 3).
    Bound(String),
    /// An internal invariant failed; theory guarantees this never happens,
    /// so it is a bug, reported with a diagnostic dump (exit 4).
    Internal(String),
}

impl Failure {
    fn report(self, context: &str) -> ExitCode {
        match self {
            Failure::Input(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Bound(msg) => {
                eprintln!("error: {msg}");
                eprintln!("raise --bound to admit longer elements");
                ExitCode::from(3)
            }
            Failure::Internal(msg) => {
                eprintln!("internal inconsistency: {msg}");
                eprintln!("while executing: schub {context}");
                eprintln!("a computed value violated an invariant the theory guarantees;");
                eprintln!("this is a bug in the engine, not a property of the input");
                ExitCode::from(4)
            }
        }
    }
}

/// Classifies a library error: bound refusals and internal inconsistencies
/// keep their own exit codes, everything else is an input mistake.
fn lib_err(err: LibError) -> Failure {
    match err {
        LibError::BoundExceeded { .. } => Failure::Bound(err.to_string()),
        LibError::Inconsistency(_) => Failure::Internal(err.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let context: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build_global()
        .ok();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => failure.report(&context),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let format = cli.format;
    let bound = cli.bound as usize;
    let cache_path: Option<PathBuf> = match std::env::var_os("SCHUB_CACHE") {
        Some(v) if v.is_empty() => None,
        Some(v) => Some(PathBuf::from(v)),
        None => cli.cache,
    };

    match cli.command {
        Command::Roots { lie_type } => {
            let rs = build_system(&lie_type)?;
            print!("{}", cmd_roots(&rs, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::CdCoeff { lie_type, u } => {
            let rs = build_system(&lie_type)?;
            let eng = Engine::new(rs.clone()).with_length_bound(bound);
            let x = parse_affine(&rs, &u, "--u")?;
            print!("{}", cmd_cd_coeff(&rs, &eng, &x, format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Pontryagin { lie_type, u, v } => {
            let rs = build_system(&lie_type)?;
            let eng = Engine::new(rs.clone()).with_length_bound(bound);
            let x = parse_affine(&rs, &u, "--u")?;
            let y = parse_affine(&rs, &v, "--v")?;
            print!("{}", cmd_pontryagin(&rs, &eng, &x, &y, format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Qprod { lie_type, u, v, equivariant } => {
            let rs = build_system(&lie_type)?;
            let eng = Engine::new(rs.clone()).with_length_bound(bound);
            let u = parse_finite(&rs, &u, "--u")?;
            let v = parse_finite(&rs, &v, "--v")?;
            print!("{}", cmd_qprod(&rs, &eng, &u, &v, equivariant, cache_path.as_deref(), format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gw { lie_type, u, v, w, lambda } => {
            let rs = build_system(&lie_type)?;
            let eng = Engine::new(rs.clone()).with_length_bound(bound);
            let u = parse_finite(&rs, &u, "--u")?;
            let v = parse_finite(&rs, &v, "--v")?;
            let w = parse_finite(&rs, &w, "--w")?;
            let lam = parse_lambda(&rs, &lambda)?;
            print!("{}", cmd_gw(&rs, &eng, &u, &v, &w, &lam, format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Chevalley { lie_type, u, v } => {
            let rs = build_system(&lie_type)?;
            let word = parse_word(&u, "--u")?;
            if word.len() != 1 {
                return Err(Failure::Input(
                    "--u must be a single simple reflection, e.g. \"1\"".to_string(),
                ));
            }
            let v = parse_finite(&rs, &v, "--v")?;
            print!("{}", cmd_chevalley(&rs, word[0], &v, format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { profile } => cmd_selftest(&profile, format),
    }
}

// ---------------------------------------------------------------------------
// argument parsing against the root system

fn build_system(lie_type: &str) -> Result<Arc<RootSystem>, Failure> {
    let t = lie_type.parse().map_err(lib_err)?;
    Ok(Arc::new(RootSystem::build(t).map_err(lib_err)?))
}

fn parse_word(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Failure::Input(format!("{what}: `{tok}` is not a reflection index")))
        })
        .collect()
}

fn parse_finite(rs: &RootSystem, s: &str, what: &str) -> Result<FiniteWeylElement, Failure> {
    let word = parse_word(s, what)?;
    rs.weyl_from_word(&word)
        .map_err(|e| Failure::Input(format!("{what}: {e}")))
}

fn parse_lambda(rs: &RootSystem, s: &str) -> Result<CorootVec, Failure> {
    let coords: Vec<i64> = s
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Failure::Input(format!("--lambda: `{tok}` is not an integer")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != rs.rank() {
        return Err(Failure::Input(format!(
            "--lambda needs {} coordinates for type {}, got {}",
            rs.rank(),
            rs.lie_type(),
            coords.len()
        )));
    }
    Ok(CorootVec(coords))
}

/// Affine-element input: either of the two serialized forms.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum ElemInput {
    Word { word: Vec<usize> },
    Split { w: Vec<usize>, lambda: Vec<i64> },
}

fn parse_affine(rs: &RootSystem, s: &str, what: &str) -> Result<AffineWeylElement, Failure> {
    let af = AffineWeyl::new(rs);
    let trimmed = s.trim();
    if !trimmed.starts_with('{') {
        let word = parse_word(trimmed, what)?;
        return af
            .from_word(&word)
            .map_err(|e| Failure::Input(format!("{what}: {e}")));
    }
    let parsed: ElemInput = serde_json::from_str(trimmed).map_err(|e| {
        Failure::Input(format!(
            "{what}: not a valid element (expected {{\"word\": [...]}} or {{\"w\": [...], \"lambda\": [...]}}): {e}"
        ))
    })?;
    match parsed {
        ElemInput::Word { word } => af
            .from_word(&word)
            .map_err(|e| Failure::Input(format!("{what}: {e}"))),
        ElemInput::Split { w, lambda } => {
            let w = rs
                .weyl_from_word(&w)
                .map_err(|e| Failure::Input(format!("{what}: {e}")))?;
            if lambda.len() != rs.rank() {
                return Err(Failure::Input(format!(
                    "{what}: lambda needs {} coordinates, got {}",
                    rs.rank(),
                    lambda.len()
                )));
            }
            Ok(AffineWeylElement { w, lam: CorootVec(lambda) })
        }
    }
}

// ---------------------------------------------------------------------------
// subcommands

fn json_page(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn cmd_roots(rs: &RootSystem, format: Format) -> String {
    let order = rs.lie_type().weyl_order();
    let order_str = if order == u128::MAX { "(beyond u128)".to_string() } else { order.to_string() };
    match format {
        Format::Json => {
            let positive: Vec<Value> = rs
                .positive_roots()
                .iter()
                .map(|gamma| {
                    let coroot = rs.coroot_of(gamma).expect("positive root has a coroot");
                    json!({ "root": gamma.0, "coroot": coroot.0 })
                })
                .collect();
            json_page(&json!({
                "type": rs.lie_type().to_string(),
                "rank": rs.rank(),
                "weyl_order": order_str,
                "cartan": rs.cartan(),
                "positive_roots": positive,
                "theta": { "root": rs.theta().0, "coroot": rs.theta_vee().0 },
            }))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "type {}: rank {}, |W| = {}", rs.lie_type(), rs.rank(), order_str);
            let _ = writeln!(out, "cartan pairings <a_i^, a_j> (row i, column j):");
            for row in rs.cartan() {
                let _ = writeln!(out, "  {row:?}");
            }
            let _ = writeln!(out, "positive roots (simple-root coordinates, coroot in simple-coroot coordinates):");
            for gamma in rs.positive_roots() {
                let coroot = rs.coroot_of(gamma).expect("positive root has a coroot");
                let _ = writeln!(out, "  {:<12} coroot {}", ivec(&gamma.0), ivec(&coroot.0));
            }
            let _ = writeln!(out, "theta = {}, theta^ = {}", ivec(&rs.theta().0), ivec(&rs.theta_vee().0));
            out
        }
    }
}

fn cmd_cd_coeff(
    rs: &RootSystem,
    eng: &Engine,
    x: &AffineWeylElement,
    format: Format,
) -> Result<String, Failure> {
    let af = AffineWeyl::new(rs);
    let word = af.reduced_word(x);
    let c = eng.c_all(x).map_err(lib_err)?;
    let d = eng.d_column(&word, 0).map_err(lib_err)?;
    match format {
        Format::Json => {
            let c_entries: Vec<Value> = c
                .entries()
                .map(|(y, value)| json!({ "y": elem_json(rs, y), "value": rf_json(value) }))
                .collect();
            let brackets: Vec<Value> = c
                .brackets()
                .map(|(coset, value)| json!({ "coset": coset.0, "value": rf_json(value) }))
                .collect();
            let d_entries: Vec<Value> = d
                .iter()
                .map(|(y, value)| json!({ "y": elem_json(rs, y), "value": poly_json(value) }))
                .collect();
            Ok(json_page(&json!({
                "type": rs.lie_type().to_string(),
                "x": elem_json(rs, x),
                "word": word,
                "length": word.len(),
                "c": c_entries,
                "c_brackets": brackets,
                "d": d_entries,
            })))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "x = {}  =  w[{}] t{}   (length {})",
                word_label(&word),
                word_label(&rs.reduced_word(&x.w)),
                ivec(&x.lam.0),
                word.len()
            );
            let labels: Vec<String> = c.entries().map(|(y, _)| elem_label(rs, y)).collect();
            let pad = labels.iter().map(String::len).max().unwrap_or(1);
            let _ = writeln!(out, "c-coefficients c_{{x,y}}:");
            for ((_, value), label) in c.entries().zip(&labels) {
                let _ = writeln!(out, "  {} : {}", padded(label, pad), value);
            }
            let _ = writeln!(out, "c-bracket sums over translation cosets [t_s]:");
            for (coset, value) in c.brackets() {
                let _ = writeln!(out, "  s = {} : {}", ivec(&coset.0), value);
            }
            let d_labels: Vec<String> = d.keys().map(|y| elem_label(rs, y)).collect();
            let pad = d_labels.iter().map(String::len).max().unwrap_or(1);
            let _ = writeln!(out, "d-coefficients d_{{y,x}}:");
            for ((_, value), label) in d.iter().zip(&d_labels) {
                let _ = writeln!(out, "  {} : {}", padded(label, pad), value);
            }
            Ok(out)
        }
    }
}

fn cmd_pontryagin(
    rs: &RootSystem,
    eng: &Engine,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    format: Format,
) -> Result<String, Failure> {
    let sum = pontryagin_constants(eng, x, y).map_err(lib_err)?;
    match format {
        Format::Json => {
            let terms: Vec<Value> = sum
                .terms()
                .map(|(z, coef)| json!({ "z": elem_json(rs, z), "coef": poly_json(coef) }))
                .collect();
            Ok(json_page(&json!({
                "type": rs.lie_type().to_string(),
                "x": elem_json(rs, x),
                "y": elem_json(rs, y),
                "terms": terms,
            })))
        }
        Format::Text => {
            if sum.is_empty() {
                return Ok("0\n".to_string());
            }
            let mut out = String::new();
            for (z, coef) in sum.terms() {
                let _ = writeln!(out, "I[{}] : {}", elem_label(rs, z), coef);
            }
            Ok(out)
        }
    }
}

/// Computes the full equivariant quantum sum, going through the JSON-lines
/// cache when one is configured.  A cache hit reconstructs the identical
/// value, so downstream rendering cannot tell the difference.
fn quantum_sum_cached(
    rs: &Arc<RootSystem>,
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
    choice: &TranslationChoice,
    cache_path: Option<&std::path::Path>,
) -> Result<QuantumSum, Failure> {
    let key = cache::Key {
        lie_type: rs.lie_type().to_string(),
        u: rs.reduced_word(u),
        v: rs.reduced_word(v),
    };
    if let Some(path) = cache_path {
        if let Some(sum) = cache::lookup(path, rs, &key) {
            return Ok(sum);
        }
        let sum = equivariant_qconstants_with(eng, u, v, choice).map_err(lib_err)?;
        cache::store(path, rs, &key, &sum).map_err(|e| {
            Failure::Input(format!("cannot write cache {}: {e}", path.display()))
        })?;
        Ok(sum)
    } else {
        equivariant_qconstants_with(eng, u, v, choice).map_err(lib_err)
    }
}

fn cmd_qprod(
    rs: &Arc<RootSystem>,
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
    equivariant: bool,
    cache_path: Option<&std::path::Path>,
    format: Format,
) -> Result<String, Failure> {
    let zero = CorootVec::zero(rs.rank());
    let choice = choose_translations(rs, u, v, &zero).map_err(lib_err)?;
    let full = quantum_sum_cached(rs, eng, u, v, &choice, cache_path)?;
    let shown = if equivariant { full } else { full.at_equivariant_zero() };
    match format {
        Format::Json => {
            let rows: Vec<Value> = shown.rows(rs).iter().map(qrow_json).collect();
            Ok(json_page(&json!({
                "type": rs.lie_type().to_string(),
                "u": rs.reduced_word(u),
                "v": rs.reduced_word(v),
                "equivariant": equivariant,
                "translation": { "eta": choice.eta.0, "kappa": choice.kappa.0, "mu": choice.mu.0 },
                "rows": rows,
            })))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "translation: eta = {}, kappa = {}, mu = {}",
                ivec(&choice.eta.0),
                ivec(&choice.kappa.0),
                ivec(&choice.mu.0)
            );
            if shown.is_empty() {
                let _ = writeln!(out, "0");
            }
            for row in shown.rows(rs) {
                let _ = writeln!(out, "{}", qrow_text(&row));
            }
            Ok(out)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gw(
    rs: &Arc<RootSystem>,
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
    w: &FiniteWeylElement,
    lam: &CorootVec,
    format: Format,
) -> Result<String, Failure> {
    let value = gromov_witten(eng, u, v, w, lam).map_err(lib_err)?;
    match format {
        Format::Json => Ok(json_page(&json!({
            "type": rs.lie_type().to_string(),
            "u": rs.reduced_word(u),
            "v": rs.reduced_word(v),
            "w": rs.reduced_word(w),
            "lambda": lam.0,
            "value": value.to_string(),
        }))),
        Format::Text => Ok(format!("{value}\n")),
    }
}

fn cmd_chevalley(
    rs: &Arc<RootSystem>,
    i: usize,
    v: &FiniteWeylElement,
    format: Format,
) -> Result<String, Failure> {
    let sum = equivariant_quantum_chevalley(rs, i, v).map_err(lib_err)?;
    match format {
        Format::Json => {
            let rows: Vec<Value> = sum.rows(rs).iter().map(qrow_json).collect();
            Ok(json_page(&json!({
                "type": rs.lie_type().to_string(),
                "u": [i],
                "v": rs.reduced_word(v),
                "rows": rows,
            })))
        }
        Format::Text => {
            if sum.is_empty() {
                return Ok("0\n".to_string());
            }
            let mut out = String::new();
            for row in sum.rows(rs) {
                let _ = writeln!(out, "{}", qrow_text(&row));
            }
            Ok(out)
        }
    }
}

fn cmd_selftest(profile: &str, format: Format) -> Result<ExitCode, Failure> {
    let profile: Profile = profile.parse().map_err(lib_err)?;
    let mut failed = 0usize;
    let mut reports = Vec::new();
    for number in 1..=selftest::CRITERIA {
        let report = selftest::run(number, profile).expect("criterion numbers are exhaustive");
        if !report.passed {
            failed += 1;
        }
        match format {
            Format::Text => {
                // Durations vary run to run, so they go to stderr; stdout
                // stays byte-deterministic.
                println!(
                    "criterion {} {} {}: {}",
                    report.number,
                    if report.passed { "PASS" } else { "FAIL" },
                    report.name,
                    report.details
                );
                let _ = std::io::stdout().flush();
                eprintln!(
                    "criterion {} finished in {:.2}s",
                    report.number,
                    report.duration.as_secs_f64()
                );
            }
            Format::Json => reports.push(report),
        }
    }
    match format {
        Format::Text => {
            if failed == 0 {
                println!("all {} criteria passed", selftest::CRITERIA);
            } else {
                println!("{failed} of {} criteria failed", selftest::CRITERIA);
            }
        }
        Format::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "criterion": r.number,
                        "name": r.name,
                        "passed": r.passed,
                        "details": r.details,
                    })
                })
                .collect();
            print!("{}", json_page(&Value::Array(rows)));
        }
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
