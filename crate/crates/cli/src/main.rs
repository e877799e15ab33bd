use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qjoin_cli::{
    render_text, run_suite, write_json_atomic, CliError, RunConfig, Suite, EXIT_FAILED, EXIT_OK, EXIT_USAGE,
};
use qjoin_core::classic::{
    build_join, build_join_prime, check_map_eq6, group_by_name, iterated_join_sphere_census, parse_grid, FiniteGSpace,
};
use qjoin_core::corep::fundamental_u;
use qjoin_core::hopfalg::su_q2;
use qjoin_core::index::{certified_index, convergence_sweep, parse_rational, Precision, TorusHalf};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "qjoin", version, about = "Exact and numerical checks for quantum SU(2) joins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: hopf, corep, join, idempotent, index, classic or all.
    Check {
        suite: String,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "0,0.5,1")]
        grid: String,
        /// Print per-suite wall-clock times (never written to the JSON).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certified Fredholm index of a compressed unitary.
    Index {
        #[command(flatten)]
        params: Params,
        /// Comma-separated sizes N = K for a convergence sweep.
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = Unitary::Ustar)]
        unitary: Unitary,
        #[arg(long, value_enum, default_value_t = Half::Negative)]
        half: Half,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Finite joins of G-spaces.
    Classic {
        #[arg(long, default_value = "z2")]
        group: String,
        #[arg(long, value_enum, default_value_t = Op::Join)]
        op: Op,
        #[arg(long, default_value = "0,0.5,1")]
        grid: String,
        /// Depth of the iterated join for `--op census`.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Params {
    #[arg(long, default_value = "0.5")]
    q: String,
    #[arg(long, default_value_t = 40)]
    n: u32,
    #[arg(long, default_value_t = 40)]
    k: i64,
    #[arg(long, default_value_t = 1e-8)]
    threshold: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Unitary {
    #[value(name = "U")]
    U,
    #[value(name = "Ustar")]
    Ustar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Half {
    Negative,
    Nonnegative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Join,
    Joinprime,
    #[value(name = "eq6")]
    Identify,
    Census,
}

fn precision_from_env() -> Result<Precision, CliError> {
    match std::env::var("QJOIN_PRECISION") {
        Ok(s) => s.parse().map_err(|e| CliError::Config(format!("QJOIN_PRECISION: {e}"))),
        Err(_) => Ok(Precision::F64),
    }
}

fn emit(v: &Value, path: Option<&PathBuf>) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    if let Some(p) = path {
        write_json_atomic(p, &s)?;
    }
    print!("{s}");
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Check { suite, params, samples, seed, grid, timings, json } => {
            let mut config = RunConfig::new(suite.parse::<Suite>()?);
            config.q = params.q;
            config.n = params.n;
            config.k = params.k;
            config.threshold = params.threshold;
            config.samples = samples;
            config.seed = seed;
            config.grid = grid;
            config.precision = precision_from_env()?.to_string();
            let report = run_suite(&config)?;
            let text = render_text(&report, timings)?;
            if let Some(p) = &json {
                write_json_atomic(p, &report.to_json_string())?;
            }
            print!("{text}");
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Index { params, sweep, unitary, half, json } => {
            let q0 = parse_rational(&params.q).map_err(|e| CliError::Config(e.to_string()))?;
            let precision = precision_from_env()?;
            let u = fundamental_u(&su_q2()).map_err(|e| CliError::Config(e.to_string()))?;
            let u = match unitary {
                Unitary::U => u,
                Unitary::Ustar => u.adjoint(),
            };
            let half = match half {
                Half::Negative => TorusHalf::Negative,
                Half::Nonnegative => TorusHalf::NonNegative,
            };
            let result = match sweep {
                Some(sizes) => {
                    convergence_sweep(&u, &q0, &sizes, half, params.threshold, precision).map(|r| r.to_json())
                }
                None => {
                    certified_index(&u, &q0, params.n, params.k, half, params.threshold, precision).map(|r| r.to_json())
                }
            };
            match result {
                Ok(v) => {
                    emit(&v, json.as_ref())?;
                    Ok(EXIT_OK)
                }
                Err(
                    e @ (qjoin_core::index::IndexError::IllSeparated { .. }
                    | qjoin_core::index::IndexError::Unstable(_)),
                ) => {
                    eprintln!("qjoin: certification refused: {e}");
                    Ok(EXIT_FAILED)
                }
                Err(e) => Err(CliError::Config(e.to_string())),
            }
        }
        Command::Classic { group, op, grid, depth, json } => {
            let cfg = |e: qjoin_core::classic::ClassicError| CliError::Config(e.to_string());
            let g = group_by_name(&group).map_err(cfg)?;
            let grid = parse_grid(&grid).map_err(cfg)?;
            let x = FiniteGSpace::regular(&g);
            let (v, ok) = match op {
                Op::Join => {
                    let j = build_join(&x, &x, &grid).map_err(cfg)?;
                    (j.to_json(), true)
                }
                Op::Joinprime => {
                    let j = build_join_prime(&x, &grid).map_err(cfg)?;
                    (j.to_json(), true)
                }
                Op::Identify => {
                    let r = check_map_eq6(&x, &grid).map_err(cfg)?;
                    (r.to_json(), r.passed())
                }
                Op::Census => {
                    let r = iterated_join_sphere_census(depth, &grid).map_err(cfg)?;
                    let ok = r.all_free();
                    (serde_json::to_value(r).expect("plain data"), ok)
                }
            };
            emit(&v, json.as_ref())?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qjoin: {e}");
            EXIT_USAGE
        }
    };
    ExitCode::from(code as u8)
}
