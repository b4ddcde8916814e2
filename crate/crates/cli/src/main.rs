//! `blochjac`: spectral analysis of periodic block Jacobi operators from
//! the command line. Every command reads one JSON document (file or stdin)
//! and writes one JSON document to stdout; diagnostics go to stderr.

mod document;
mod error;
mod payload;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process;

use blochjac::fixtures;
use blochjac::inverse::{default_kappas, forward_spectral_data, recover_determinant, SubsetRule};
use blochjac::operator::PeriodicOperator;
use blochjac::spectral::{
    band_structure, band_structure_from, verify_identities, BandOptions, CharDeterminant, SurfacePoly,
};
use blochjac::{CFloat, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use document::{parse_input, parse_rational, OperatorDocument, ResultDocument, SpectralDataDocument, SCHEMA};
use error::{CliError, ExitCode};

#[derive(Parser, Debug)]
#[command(name = "blochjac", version, about = "Spectral analysis of periodic matrix-valued Jacobi operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArg {
    /// Input document; `-` or omitted reads stdin.
    #[arg(default_value = "-")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral bands, edges and gaps.
    Bands {
        #[command(flatten)]
        input: InputArg,
        /// Floquet cross-check grid on [0, pi]; 0 disables it.
        #[arg(long, default_value_t = 257)]
        grid: usize,
        /// Edge deduplication tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Resonance polynomial and its zeros.
    Resonances {
        #[command(flatten)]
        input: InputArg,
    },
    /// Lyapunov branches and multipliers at spectral parameters.
    Lyapunov {
        #[command(flatten)]
        input: InputArg,
        /// A point `re,im` (repeatable).
        #[arg(long = "z", value_parser = parse_point, allow_hyphen_values = true)]
        z: Vec<CFloat>,
        /// Real grid `lo:hi:n`.
        #[arg(long = "z-grid", value_parser = parse_grid, allow_hyphen_values = true)]
        z_grid: Option<Grid>,
    },
    /// The characteristic determinant and its Lyapunov form.
    Determinant {
        #[command(flatten)]
        input: InputArg,
    },
    /// Forward spectral data at quasi-momenta.
    SpectralData {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated quasi-momenta (m + 1 of them); defaults to 0, pi, pi/2, pi/3, ...
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        kappas: Option<Vec<f64>>,
        /// Which eigenvalues go into the partial sets.
        #[arg(long, value_enum, default_value_t = Rule::Ascending)]
        rule: Rule,
        /// Seed for `--rule random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recover the characteristic determinant from spectral data.
    Recover {
        #[command(flatten)]
        input: InputArg,
        /// Snap the result to rationals and recompute the bands.
        #[arg(long)]
        snap: bool,
        /// Largest denominator allowed when snapping.
        #[arg(long, default_value_t = 1000)]
        max_den: u64,
        /// Relative snapping tolerance.
        #[arg(long, default_value_t = 1e-6)]
        snap_tol: f64,
    },
    /// Run the identity battery; exits 5 if a required check fails.
    Verify {
        #[command(flatten)]
        input: InputArg,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Floquet grid used for the band structure.
        #[arg(long, default_value_t = 257)]
        grid: usize,
    },
    /// Print a ready-made operator document.
    Example {
        #[command(subcommand)]
        which: Fixture,
    },
}

#[derive(Subcommand, Debug)]
enum Fixture {
    /// Diagonal family member: all beta = 0.
    Example1Diag {
        #[arg(long, value_delimiter = ',', default_value = "1,0,-1,0", allow_hyphen_values = true)]
        alpha: Vec<String>,
    },
    /// Constant family member: alpha = 0, beta_n = beta.
    Example2Const {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
    },
    /// alpha = (1, 0, -1, 0), beta = (t, 0, 0, 0).
    Example3 {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
    },
    /// alpha = (0, 1, 0, 1), beta = (t, 0, 0, 0).
    Example4 {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        t: String,
    },
    /// The general two-period 2x2 family.
    Family {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Vec<String>,
    },
    /// a_n = I, b_n = 0.
    Free {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// A random operator with unimodular unit-triangular a_n.
    Random {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Rule {
    Ascending,
    Descending,
    Random,
}

fn parse_point(s: &str) -> Result<CFloat, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(CFloat::new(f(re)?, f(im)?))
}

/// Evenly spaced real points.
#[derive(Clone, Debug)]
struct Grid(Vec<CFloat>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err("expected lo:hi:n".into());
    };
    let lo: f64 = lo.parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: f64 = hi.parse().map_err(|e| format!("{hi:?}: {e}"))?;
    let n: usize = n.parse().map_err(|e| format!("{n:?}: {e}"))?;
    if n == 0 || !(lo.is_finite() && hi.is_finite()) {
        return Err("grid needs n >= 1 and finite bounds".into());
    }
    Ok(Grid(
        (0..n)
            .map(|k| {
                let t = if n == 1 { 0.0 } else { k as f64 / (n - 1) as f64 };
                CFloat::new(lo + (hi - lo) * t, 0.0)
            })
            .collect(),
    ))
}

/// Input text plus its digest.
struct Input {
    text: String,
    digest: String,
}

fn read_input(arg: &InputArg) -> Result<Input, CliError> {
    let mut bytes = Vec::new();
    if arg.input.as_os_str() == "-" {
        std::io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| CliError::invalid(format!("cannot read stdin: {e}")))?;
    } else {
        bytes = std::fs::read(&arg.input)
            .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", arg.input.display())))?;
    }
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| CliError::invalid("input is not UTF-8"))?;
    Ok(Input { text, digest })
}

fn load_operator(input: &Input) -> Result<PeriodicOperator<Rational>, CliError> {
    parse_input::<OperatorDocument>(&input.text, "operator")?.to_operator()
}

fn analyse(op: &PeriodicOperator<Rational>) -> Result<(CharDeterminant, SurfacePoly), CliError> {
    let cd = CharDeterminant::new(op)?;
    let sp = SurfacePoly::new(&cd)?;
    Ok((cd, sp))
}

fn rationals(list: &[String], n: usize, what: &str) -> Result<Vec<Rational>, CliError> {
    if list.len() != n {
        return Err(CliError::invalid(format!("--{what} needs {n} values, got {}", list.len())));
    }
    list.iter().map(|s| parse_rational(s)).collect()
}

fn four(list: &[String], what: &str) -> Result<[Rational; 4], CliError> {
    let v = rationals(list, 4, what)?;
    Ok(v.try_into().expect("length checked"))
}

fn example(which: &Fixture) -> Result<PeriodicOperator<Rational>, CliError> {
    Ok(match which {
        Fixture::Example1Diag { alpha } => fixtures::example1_diag(four(alpha, "alpha")?),
        Fixture::Example2Const { beta } => fixtures::example2_const(parse_rational(beta)?),
        Fixture::Example3 { t } => fixtures::example3(parse_rational(t)?),
        Fixture::Example4 { t } => fixtures::example4(parse_rational(t)?),
        Fixture::Family { alpha, beta } => fixtures::family(four(alpha, "alpha")?, four(beta, "beta")?),
        Fixture::Free { p, m } => {
            if *p == 0 || *m == 0 {
                return Err(CliError::invalid("p and m must be positive"));
            }
            fixtures::free(*p, *m)
        }
        Fixture::Random { p, m, seed } => {
            if *p == 0 || *m == 0 {
                return Err(CliError::invalid("p and m must be positive"));
            }
            fixtures::random_unit_triangular_operator(&mut StdRng::seed_from_u64(*seed), *p, *m)
        }
    })
}

/// What a command produced: the payload and the exit code to use.
struct Outcome {
    payload: Value,
    code: ExitCode,
}

impl From<Value> for Outcome {
    fn from(payload: Value) -> Self {
        Outcome { payload, code: ExitCode::Ok }
    }
}

fn run(command: &Command, input: &Input) -> Result<Outcome, CliError> {
    match command {
        Command::Bands { grid, tol, .. } => {
            let op = load_operator(input)?;
            let (cd, sp) = analyse(&op)?;
            let opts = BandOptions { grid: *grid, tol: *tol, ..BandOptions::default() };
            let bs = band_structure(&op, &cd, &sp, &opts)?;
            Ok(payload::bands(&bs).into())
        }
        Command::Resonances { .. } => {
            let op = load_operator(input)?;
            let (_, sp) = analyse(&op)?;
            Ok(payload::resonances(&sp.resonances()?).into())
        }
        Command::Lyapunov { z, z_grid, .. } => {
            let op = load_operator(input)?;
            let (_, sp) = analyse(&op)?;
            let points: Vec<CFloat> = z.iter().copied().chain(z_grid.iter().flat_map(|g| g.0.iter().copied())).collect();
            if points.is_empty() {
                return Err(CliError::invalid("give at least one --z or a --z-grid"));
            }
            let out = points
                .iter()
                .map(|&z| {
                    let deltas = sp.lyapunov_at(z)?;
                    let mults: Vec<_> = deltas.iter().map(|&d| blochjac::spectral::multipliers_for(d)).collect();
                    Ok(payload::lyapunov_point(z, &deltas, &mults))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(json!({ "points": out }).into())
        }
        Command::Determinant { .. } => {
            let op = load_operator(input)?;
            let (cd, sp) = analyse(&op)?;
            Ok(payload::determinant(&cd, &sp).into())
        }
        Command::SpectralData { kappas, rule, seed, .. } => {
            let op = load_operator(input)?;
            let kappas = kappas.clone().unwrap_or_else(|| default_kappas(op.block_size()));
            let rule = match rule {
                Rule::Ascending => SubsetRule::Ascending,
                Rule::Descending => SubsetRule::Descending,
                Rule::Random => SubsetRule::Random(*seed),
            };
            let sd = forward_spectral_data(&op, &kappas, rule)?;
            let doc = SpectralDataDocument::from_data(&sd);
            Ok(serde_json::to_value(doc).map_err(|e| CliError::internal(e.to_string()))?.into())
        }
        Command::Recover { snap, max_den, snap_tol, .. } => {
            let sd = parse_input::<SpectralDataDocument>(&input.text, "spectral-data")?.to_data()?;
            let rec = recover_determinant(&sd)?;
            let exact = if *snap {
                let cd = rec.snap(*max_den, *snap_tol)?;
                let sp = SurfacePoly::new(&cd)?;
                let opts = BandOptions { grid: 0, ..BandOptions::default() };
                let bs = band_structure_from(&cd, &sp, &opts)?;
                Some((cd, payload::bands(&bs)))
            } else {
                None
            };
            Ok(payload::recovery(&rec, exact.as_ref().map(|(cd, b)| (cd, b.clone()))).into())
        }
        Command::Verify { seed, grid, .. } => {
            let op = load_operator(input)?;
            let (cd, sp) = analyse(&op)?;
            let opts = BandOptions { grid: *grid, ..BandOptions::default() };
            let bs = band_structure(&op, &cd, &sp, &opts)?;
            let report = verify_identities(&op, &cd, &sp, &bs, *seed)?;
            let code = if report.all_passed() { ExitCode::Ok } else { ExitCode::VerificationFailed };
            Ok(Outcome { payload: payload::report(&report), code })
        }
        Command::Example { .. } => unreachable!("handled before reading input"),
    }
}

fn command_echo(cli: &Cli) -> Value {
    let (name, args) = match &cli.command {
        Command::Bands { grid, tol, .. } => ("bands", json!({ "grid": grid, "tol": tol })),
        Command::Resonances { .. } => ("resonances", json!({})),
        Command::Lyapunov { z, z_grid, .. } => (
            "lyapunov",
            json!({
                "z": z.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
                "z_grid_points": z_grid.as_ref().map(|g| g.0.len()),
            }),
        ),
        Command::Determinant { .. } => ("determinant", json!({})),
        Command::SpectralData { kappas, rule, seed, .. } => (
            "spectral-data",
            json!({ "kappas": kappas, "rule": format!("{rule:?}").to_lowercase(), "seed": seed }),
        ),
        Command::Recover { snap, max_den, snap_tol, .. } => {
            ("recover", json!({ "snap": snap, "max_den": max_den, "snap_tol": snap_tol }))
        }
        Command::Verify { seed, grid, .. } => ("verify", json!({ "seed": seed, "grid": grid })),
        Command::Example { .. } => ("example", json!({})),
    };
    json!({ "name": name, "args": args })
}

fn input_arg(command: &Command) -> Option<&InputArg> {
    match command {
        Command::Bands { input, .. }
        | Command::Resonances { input }
        | Command::Lyapunov { input, .. }
        | Command::Determinant { input }
        | Command::SpectralData { input, .. }
        | Command::Recover { input, .. }
        | Command::Verify { input, .. } => Some(input),
        Command::Example { .. } => None,
    }
}

fn emit(value: &impl serde::Serialize) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth reporting
    let _ = serde_json::to_writer_pretty(&mut out, value);
    let _ = writeln!(out);
}

fn main() {
    let cli = Cli::parse();

    let Some(arg) = input_arg(&cli.command) else {
        let Command::Example { which } = &cli.command else { unreachable!() };
        match example(which) {
            Ok(op) => emit(&OperatorDocument::from_operator(&op)),
            Err(e) => {
                eprintln!("blochjac: {e}");
                process::exit(e.code as i32);
            }
        }
        return;
    };

    let (digest, result) = match read_input(arg) {
        Ok(input) => {
            let result = run(&cli.command, &input);
            (input.digest, result)
        }
        Err(e) => (String::new(), Err(e)),
    };
    let mut doc = ResultDocument {
        schema: SCHEMA,
        kind: "result",
        command: command_echo(&cli),
        input_digest: digest,
        tool_version: env!("CARGO_PKG_VERSION"),
        payload: Value::Null,
        error: None,
    };
    let code = match result {
        Ok(outcome) => {
            doc.payload = outcome.payload;
            if outcome.code != ExitCode::Ok {
                eprintln!("blochjac: verification failed");
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("blochjac: {e}");
            doc.error = Some(json!({ "code": e.code as i32, "message": e.message, "details": e.details }));
            e.code
        }
    };
    emit(&doc);
    process::exit(code as i32);
}
