//! Command-line frontend: JSON in, JSON out, deterministic under a
//! fixed seed. Exit codes: 0 success, 2 malformed input, 3 form not in
//! the scheme's span, 4 internal bound violation (a bug), 1 otherwise.

use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use curvirank::rat::binomial;
use curvirank::ternary;
use curvirank::{
    binary_decompose, binary_rank, decompose_via_curvilinear, fit_rational_curve,
    generate_instance, BinaryFormDivided, CurvilinearScheme, Error, Form,
};

#[derive(Parser)]
#[command(name = "curvirank", version, about = "Exact power-sum decompositions through curvilinear schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NumericFlags {
    /// Working precision for complex root finding, in bits.
    #[arg(long, default_value_t = 256)]
    precision: u32,
    /// Residual tolerance as a power-of-two exponent, scaled by the
    /// input norm.
    #[arg(long, default_value_t = -128, allow_hyphen_values = true)]
    tol: i32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a form through a curvilinear scheme.
    Decompose {
        /// Form JSON file, or '-' for stdin.
        #[arg(long)]
        form: String,
        /// Scheme JSON file, or '-' for stdin.
        #[arg(long)]
        scheme: String,
        #[command(flatten)]
        num: NumericFlags,
    },
    /// Generate a seeded random (form, scheme) instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate, decompose and verify a batch of instances.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Comma-separated list of ambient dimensions.
        #[arg(long, default_value = "2,3")]
        n: String,
        /// Inclusive degree range "lo,hi".
        #[arg(long, default_value = "3,6")]
        d: String,
        /// Inclusive scheme-degree range "lo,hi".
        #[arg(long, default_value = "2,4")]
        k: String,
        #[command(flatten)]
        num: NumericFlags,
    },
    /// Reference bound table row for (n, d).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Rank certificate and decomposition of a binary form.
    BinaryRank {
        /// Form JSON file (2 variables), or '-' for stdin.
        #[arg(long)]
        form: String,
        #[command(flatten)]
        num: NumericFlags,
    },
    /// Fit a rational curve through a curvilinear scheme.
    FitCurve {
        #[arg(long)]
        scheme: String,
    },
    /// Plane-scheme linear system tools.
    Ternary {
        #[command(subcommand)]
        command: TernaryCommand,
    },
}

#[derive(Subcommand)]
enum TernaryCommand {
    /// Integral curve of degree k-1 through a degree-k plane scheme.
    Curve {
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 128)]
        budget: usize,
    },
    /// Randomized checks of the base-point and full-rank claims.
    Claims {
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smooth-conic dichotomy for a degree-3 plane scheme.
    Conic {
        #[arg(long)]
        scheme: String,
    },
    /// Span-dimension bound for the Veronese image of a plane curve.
    Bound {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    });
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Malformed(_) | Error::DimensionMismatch(_) => 2,
        Error::NotInSpan => 3,
        Error::BoundViolation { .. } => 4,
        _ => 1,
    }
}

fn read_json(path: &str) -> Result<Value, Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Malformed(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{path}: {e}")))
}

fn parse_range(s: &str, what: &str) -> Result<(usize, usize), Error> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| Error::Malformed(format!("bad {what} range {s:?}")))
    };
    match parts.as_slice() {
        [a] => {
            let a = parse(a)?;
            Ok((a, a))
        }
        [a, b] => Ok((parse(a)?, parse(b)?)),
        _ => Err(Error::Malformed(format!("bad {what} range {s:?}"))),
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Malformed(format!("bad {what} list {s:?}")))
        })
        .collect()
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn big_usize(n: u64, k: u64) -> u64 {
    binomial(n, k).to_string().parse().unwrap()
}

fn reference_bounds(n: usize, d: usize) -> Value {
    let lt = big_usize((n + d) as u64, d as u64) - n as u64;
    let known_max = match (n, d) {
        (2, 3) => Some(5),
        (2, 4) => Some(7),
        _ => None,
    };
    json!({"n": n, "d": d, "lt_bound": lt, "known_max_rank": known_max})
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Decompose { form, scheme, num } => {
            let p = Form::from_json(&read_json(&form)?)?;
            let z = CurvilinearScheme::from_json(&read_json(&scheme)?)?;
            let (dec, report) =
                decompose_via_curvilinear(&p, &z, num.precision, num.tol, num.seed)?;
            emit(&json!({
                "decomposition": dec.to_json(),
                "bound_report": report.to_json(),
            }));
            Ok(0)
        }
        Command::Generate { n, d, k, seed } => {
            if n < 1 || d < 2 || k < 1 {
                return Err(Error::OutOfRange(
                    "generate needs n >= 1, d >= 2, k >= 1".into(),
                ));
            }
            let (p, z) = generate_instance(n.max(2), d, k, seed)?;
            emit(&json!({"form": p.to_json(), "scheme": z.to_json()}));
            Ok(0)
        }
        Command::Verify { trials, n, d, k, num } => {
            let ns = parse_list(&n, "n")?;
            let (dlo, dhi) = parse_range(&d, "d")?;
            let (klo, khi) = parse_range(&k, "k")?;
            if ns.iter().any(|&n| n < 2 || n > 3) || dhi > 8 || khi > 5 || dlo < 2 || klo < 1 {
                return Err(Error::OutOfRange(
                    "supported ranges: n in {2,3}, 2 <= d <= 8, 1 <= k <= 5".into(),
                ));
            }
            let mut combos = Vec::new();
            for &nn in &ns {
                for dd in dlo..=dhi {
                    for kk in klo..=khi {
                        combos.push((nn, dd, kk));
                    }
                }
            }
            let started = Instant::now();
            let mut reports = Vec::new();
            let mut failures = Vec::new();
            for i in 0..trials {
                let (nn, dd, kk) = combos[i % combos.len()];
                let seed = num.seed.wrapping_add(i as u64);
                let outcome = generate_instance(nn, dd, kk, seed).and_then(|(p, z)| {
                    decompose_via_curvilinear(&p, &z, num.precision, num.tol, seed)
                });
                match outcome {
                    Ok((_, rep)) => reports.push(json!({
                        "trial": i, "n": nn, "d": dd, "k": kk, "seed": seed,
                        "report": rep.to_json(),
                    })),
                    Err(e) => failures.push(json!({
                        "trial": i, "n": nn, "d": dd, "k": kk, "seed": seed,
                        "error": e.to_string(),
                    })),
                }
            }
            let pass = reports.len();
            let fail = failures.len();
            let mut reference = Vec::new();
            for &nn in &ns {
                for dd in dlo..=dhi {
                    reference.push(reference_bounds(nn, dd));
                }
            }
            emit(&json!({
                "trials": trials,
                "pass": pass,
                "fail": fail,
                "elapsed_ms": started.elapsed().as_millis() as u64,
                "reference_context": reference,
                "bound_reports": reports,
                "failures": failures,
            }));
            Ok(if fail == 0 { 0 } else { 1 })
        }
        Command::Bounds { n, d } => {
            if n < 1 || d < 2 {
                return Err(Error::OutOfRange("bounds needs n >= 1, d >= 2".into()));
            }
            emit(&reference_bounds(n, d));
            Ok(0)
        }
        Command::BinaryRank { form, num } => {
            let f = Form::from_json(&read_json(&form)?)?;
            let bf = BinaryFormDivided::from_form(&f)?;
            let cert = binary_rank(&bf, num.seed)?;
            let (dec, _, res) = binary_decompose(&bf, num.precision, num.seed)?;
            emit(&json!({
                "border_rank": cert.border_rank,
                "rank": cert.rank,
                "branch": cert.branch.as_str(),
                "apolar": cert
                    .apolar
                    .coeffs()
                    .iter()
                    .map(curvirank::rat::rat_to_string)
                    .collect::<Vec<_>>(),
                "squarefree": cert.squarefree,
                "decomposition": dec.to_json(),
                "residual": res.display(),
            }));
            Ok(0)
        }
        Command::FitCurve { scheme } => {
            let z = CurvilinearScheme::from_json(&read_json(&scheme)?)?;
            let fit = fit_rational_curve(&z)?;
            emit(&json!({
                "curve": fit.curve.to_json(),
                "degree": fit.curve.degree(),
                "params": fit
                    .params
                    .iter()
                    .map(|(t, e)| json!([curvirank::rat::rat_to_string(t), e]))
                    .collect::<Vec<_>>(),
                "jets_match": fit.jets_match,
            }));
            Ok(0)
        }
        Command::Ternary { command } => run_ternary(command),
    }
}

fn run_ternary(cmd: TernaryCommand) -> Result<i32, Error> {
    match cmd {
        TernaryCommand::Curve { scheme, seed, budget } => {
            let z = ternary::PlaneScheme::from_json(&read_json(&scheme)?)?;
            let rep = ternary::curve_through_scheme(&z, seed, budget)?;
            emit(&rep.to_json());
            Ok(0)
        }
        TernaryCommand::Claims { scheme, trials, seed } => {
            let z = ternary::PlaneScheme::from_json(&read_json(&scheme)?)?;
            let rep = ternary::claim_checks(&z, trials, seed)?;
            emit(&rep.to_json());
            Ok(if rep.ok() { 0 } else { 1 })
        }
        TernaryCommand::Conic { scheme } => {
            let z = ternary::PlaneScheme::from_json(&read_json(&scheme)?)?;
            let verdict = ternary::conic_dichotomy(&z)?;
            emit(&verdict.to_json());
            Ok(0)
        }
        TernaryCommand::Bound { d, k } => {
            let rep = ternary::span_bound_report(d, k)?;
            emit(&rep.to_json());
            Ok(if rep.ok && rep.crosscheck_ok { 0 } else { 1 })
        }
    }
}
