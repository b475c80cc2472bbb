//! Command-line front door for the exact counting / asymptotics library.
//!
//! Exit codes: 0 success, 2 usage error (argument parsing), 1 computation
//! error (capacity, domain, contract) with a one-line diagnostic naming the
//! failing contract.

mod format;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use format::{fmt15, Format, Table};
use primepart_core::asymptotics::{
    corollary1_logP, hardy_ramanujan_logp, lemma31_residual, lemma44_coeffs,
    lemma44_residual, theorem1_logM_from_logx, weak_logM, ExpansionCoefficients,
};
use primepart_core::constants;
use primepart_core::counting::{
    big_ln, count_M2m, enumerate_Am, partition_sum_exact, LambdaSystem,
};
use primepart_core::matula;
use primepart_core::primes::{self, build_prime_table, PrimeTable};

#[derive(Parser)]
#[command(
    name = "primepart",
    version,
    about = "Exact counting, Matula tree coding, and strong asymptotics \
             for integers whose prime factors come from the subsequence p_{m^k}"
)]
struct Cli {
    /// Sieve limit for the prime table (integer, scientific notation accepted)
    #[arg(
        long,
        global = true,
        env = "PRIMEPART_SIEVE_LIMIT",
        default_value = "1073741824",
        value_parser = parse_u64_arg
    )]
    sieve_limit: u64,

    /// Target tolerance for computed constants
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Output format for record-shaped results
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact count of integers in A_m up to x
    Count(MxArgs),
    /// List the members of A_m up to x (oracle scale)
    Enumerate(MxArgs),
    /// Asymptotic log-count at x: strong formula and weak leading term
    Asym(MxArgs),
    /// Computed constants for modulus m (gamma, gamma_1, C_2m, D_m, K_m, ...)
    Constants {
        #[arg(long)]
        m: u64,
    },
    /// Matula coding between rooted trees and positive integers
    Matula {
        #[command(subcommand)]
        cmd: MatulaCmd,
    },
    /// Numeric verification of the supporting lemmas and the engine check
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Exact count vs asymptotic formulas across a list of x values
    Compare {
        #[arg(long)]
        m: u64,
        /// Comma-separated x values (scientific notation accepted)
        #[arg(long, value_delimiter = ',', value_parser = parse_u128_arg)]
        xs: Vec<u128>,
    },
    /// Prime table queries
    Primes {
        #[command(subcommand)]
        cmd: PrimesCmd,
    },
}

#[derive(Args)]
struct MxArgs {
    #[arg(long)]
    m: u64,
    /// Threshold (integer, scientific notation accepted)
    #[arg(long, value_parser = parse_u128_arg)]
    x: u128,
}

#[derive(Subcommand)]
enum MatulaCmd {
    /// Tree text "(...)" to its Matula number
    Encode { tree: String },
    /// Matula number to canonical tree text
    Decode {
        #[arg(value_parser = parse_u128_arg)]
        n: u128,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Laplace-side residual f(sigma) - main terms, against D'_m
    Lemma31 {
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',')]
        sigmas: Vec<f64>,
    },
    /// Averaged-integral residual against D_m
    Lemma44 {
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',')]
        us: Vec<f64>,
    },
    /// Partition-sum oracle vs the alpha=1 corollary at u
    Hr {
        #[arg(long)]
        u: u64,
    },
}

#[derive(Subcommand)]
enum PrimesCmd {
    /// The n-th prime (1-based), resolved beyond the sieve when needed
    Nth {
        #[arg(value_parser = parse_u64_arg)]
        n: u64,
    },
    /// The prime-counting function pi(x)
    Pi {
        #[arg(value_parser = parse_u64_arg)]
        x: u64,
    },
}

/// Exact integer parsing with optional scientific notation: "1e9" is the
/// exact integer 10^9, "2.5e3" is 2500; a fractional remainder is an error.
fn parse_u128_sci(s: &str) -> Result<u128, String> {
    let s = s.trim();
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| format!("bad exponent in {s:?}"))?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("empty number {s:?}"));
    }
    let digits = format!("{int_part}{frac_part}");
    if digits.chars().any(|c| !c.is_ascii_digit()) {
        return Err(format!("{s:?} is not a nonnegative number"));
    }
    let shift = exp - frac_part.len() as i32;
    let mut v: u128 = digits.parse().map_err(|_| format!("{s:?} out of range"))?;
    if shift >= 0 {
        for _ in 0..shift {
            v = v.checked_mul(10).ok_or_else(|| format!("{s:?} out of range"))?;
        }
    } else {
        for _ in 0..-shift {
            if v % 10 != 0 {
                return Err(format!("{s:?} is not an integer"));
            }
            v /= 10;
        }
    }
    Ok(v)
}

fn parse_u128_arg(s: &str) -> Result<u128, String> {
    parse_u128_sci(s)
}

fn parse_u64_arg(s: &str) -> Result<u64, String> {
    let v = parse_u128_sci(s)?;
    u64::try_from(v).map_err(|_| format!("{s:?} exceeds 64 bits"))
}

/// JSON number when it fits 64 bits, decimal string beyond.
fn u128_json(v: u128) -> serde_json::Value {
    u64::try_from(v)
        .map(serde_json::Value::from)
        .unwrap_or_else(|_| serde_json::Value::String(v.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> primepart_core::Result<String> {
    let table = build_prime_table(cli.sieve_limit)?;
    match &cli.cmd {
        Cmd::Count(a) => {
            let r = count_M2m(a.m, a.x, &table)?;
            Ok(match cli.format {
                Format::Csv => format!("{}\n", r.value),
                Format::Json => format::emit_json(&serde_json::json!({
                    "m": a.m,
                    "x": u128_json(a.x),
                    "count": u128_json(r.value),
                })),
            })
        }
        Cmd::Enumerate(a) => {
            let members = enumerate_Am(a.m, a.x, &table)?;
            let rows = members.iter().map(|n| vec![n.to_string()]).collect();
            Ok(Table { columns: &["n"], rows }.emit(cli.format))
        }
        Cmd::Asym(a) => {
            let xf = a.x as f64;
            let log_asym = theorem1_logM_from_logx(a.m, xf.ln(), &table)?;
            let log_weak = weak_logM(a.m, xf)?;
            let rows = vec![vec![a.x.to_string(), fmt15(log_asym), fmt15(log_weak)]];
            Ok(Table { columns: &["x", "log_asym", "log_weak"], rows }.emit(cli.format))
        }
        Cmd::Constants { m } => {
            let mut reports = vec![
                constants::ConstantReport {
                    name: "gamma".into(),
                    value: constants::euler_gamma(),
                    error_bound: 1e-15,
                    method: "Euler-Maclaurin harmonic acceleration".into(),
                },
                constants::ConstantReport {
                    name: "gamma_1".into(),
                    value: constants::stieltjes_gamma1(),
                    error_bound: 1e-14,
                    method: "Euler-Maclaurin on log k / k".into(),
                },
            ];
            let c = constants::C2m(*m, cli.tol, &table)?;
            let d = constants::Dm(*m, &table)?;
            let k = constants::Km(*m, &table)?;
            let coeffs = lemma44_coeffs(*m, &table)?;
            let dp = constants::Dprime(&coeffs);
            let (kk, kp) = constants::finite_part_constants();
            reports.push(c.clone());
            reports.push(d.clone());
            reports.push(k);
            reports.push(constants::ConstantReport {
                name: format!("D'_{m}"),
                value: dp,
                error_bound: c.error_bound,
                method: "D + (pi^2/6 - 2 gamma_1 - gamma^2) B".into(),
            });
            reports.push(constants::ConstantReport {
                name: "K".into(),
                value: kk,
                error_bound: 0.0,
                method: "finite part (exact)".into(),
            });
            reports.push(constants::ConstantReport {
                name: "K'".into(),
                value: kp,
                error_bound: 1e-14,
                method: "pi^2/12 - gamma_1 - gamma^2/2".into(),
            });
            let rows = reports
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        fmt15(r.value),
                        fmt15(r.error_bound),
                        r.method.clone(),
                    ]
                })
                .collect();
            Ok(Table {
                columns: &["name", "value", "error_bound", "method"],
                rows,
            }
            .emit(cli.format))
        }
        Cmd::Matula { cmd } => match cmd {
            MatulaCmd::Encode { tree } => {
                let t = matula::parse_tree(tree)?;
                let code = matula::encode(&t, &table)?;
                Ok(format!("{code}\n"))
            }
            MatulaCmd::Decode { n } => {
                let t = matula::decode_u128(*n, &table)?;
                Ok(format!("{}\n", matula::format_tree(&t)))
            }
        },
        Cmd::Verify { cmd } => verify(cmd, cli, &table),
        Cmd::Compare { m, xs } => {
            let mut xs = xs.clone();
            xs.sort_unstable();
            let mut rows = Vec::new();
            for &x in &xs {
                let exact = count_M2m(*m, x, &table)?.value;
                if exact == 0 {
                    return Err(primepart_core::Error::Domain(format!(
                        "x = {x} gives an empty count; log comparison undefined"
                    )));
                }
                let log_exact = (exact as f64).ln();
                let log_asym = theorem1_logM_from_logx(*m, (x as f64).ln(), &table)?;
                let log_weak = weak_logM(*m, x as f64)?;
                rows.push(vec![
                    x.to_string(),
                    exact.to_string(),
                    fmt15(log_exact),
                    fmt15(log_asym),
                    fmt15(log_weak),
                    fmt15((log_exact - log_asym).abs()),
                ]);
            }
            Ok(Table {
                columns: &["x", "exact", "log_exact", "log_asym", "log_weak", "abs_log_residual"],
                rows,
            }
            .emit(cli.format))
        }
        Cmd::Primes { cmd } => match cmd {
            PrimesCmd::Nth { n } => {
                let p = primes::nth_prime_ext(*n, &table)?;
                Ok(format!("{p}\n"))
            }
            PrimesCmd::Pi { x } => {
                let v = if *x <= table.limit() {
                    table.prime_pi(*x)?
                } else {
                    primes::prime_pi_big(*x)
                };
                Ok(format!("{v}\n"))
            }
        },
    }
}

fn verify(cmd: &VerifyCmd, cli: &Cli, table: &PrimeTable) -> primepart_core::Result<String> {
    match cmd {
        VerifyCmd::Lemma31 { m, sigmas } => {
            let sys = LambdaSystem::new(*m, table)?;
            let coeffs = lemma44_coeffs(*m, table)?;
            let dprime = constants::Dprime(&coeffs);
            let mut rows = Vec::new();
            for &sigma in sigmas {
                let r = lemma31_residual(&sys, sigma, table)?;
                rows.push(vec![
                    fmt15(sigma),
                    fmt15(r),
                    fmt15(dprime),
                    fmt15((r - dprime).abs()),
                ]);
            }
            Ok(Table {
                columns: &["sigma", "residual", "dprime", "abs_gap"],
                rows,
            }
            .emit(cli.format))
        }
        VerifyCmd::Lemma44 { m, us } => {
            let sys = LambdaSystem::new(*m, table)?;
            let dm = constants::Dm(*m, table)?.value;
            let mut rows = Vec::new();
            for &u in us {
                let (r, exact) = lemma44_residual(&sys, u)?;
                rows.push(vec![
                    fmt15(u),
                    fmt15(r),
                    fmt15(dm),
                    fmt15((r - dm).abs()),
                    exact.to_string(),
                ]);
            }
            Ok(Table {
                columns: &["u", "residual", "d_m", "abs_gap", "lambda_exact"],
                rows,
            }
            .emit(cli.format))
        }
        VerifyCmd::Hr { u } => {
            let exact = partition_sum_exact(*u)?;
            let log_exact = big_ln(&exact)?;
            // The classical lambda_k = k system.
            let coeffs = ExpansionCoefficients::new(
                1.0,
                1.0,
                0.0,
                -0.5,
                -(2.0 * std::f64::consts::PI).sqrt().ln(),
            )?;
            let log_asym = corollary1_logP(&coeffs, *u as f64)?;
            let hr_point = hardy_ramanujan_logp(*u)?;
            let rows = vec![vec![
                u.to_string(),
                exact.to_string(),
                fmt15(log_exact),
                fmt15(log_asym),
                fmt15((log_exact - log_asym).exp()),
                fmt15(hr_point),
            ]];
            Ok(Table {
                columns: &["u", "exact", "log_exact", "log_asym", "ratio", "hr_log_p"],
                rows,
            }
            .emit(cli.format))
        }
    }
}
