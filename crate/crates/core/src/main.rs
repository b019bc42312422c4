use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64 as C64;

use fracfloquet::cli::{self, exit, report_exit_code, Scenario, Tier, VerifyOptions};

#[derive(Parser)]
#[command(name = "fracfloquet", version, about = "Fractional Floquet synthesis and verification")]
struct Args {
    /// Reserved; nothing is stochastic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a special function or the subordination kernel.
    Eval {
        #[command(subcommand)]
        what: EvalTarget,
    },
    /// Run a scenario: solve, synthesize, check, write CSV and JSON.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "fast")]
        tier: Tier,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Negate the Mittag-Leffler argument in every synthesis (mutation control).
        #[arg(long)]
        flip_sign: bool,
    },
    /// Sweep the truncation listed in `solve.sweep`.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EvalTarget {
    /// E_{alpha,beta}(z)
    Mlf {
        alpha: f64,
        beta: f64,
        #[arg(allow_hyphen_values = true)]
        re: f64,
        #[arg(default_value_t = 0.0, allow_hyphen_values = true)]
        im: f64,
    },
    /// J_n(z)
    Bessel {
        #[arg(allow_hyphen_values = true)]
        n: i32,
        #[arg(allow_hyphen_values = true)]
        re: f64,
        #[arg(default_value_t = 0.0, allow_hyphen_values = true)]
        im: f64,
    },
    /// K(xi, t) on a midpoint grid
    Kernel {
        t: f64,
        alpha: f64,
        #[arg(long, default_value_t = 30.0)]
        xi_max: f64,
        #[arg(long, default_value_t = 300)]
        n_xi: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let _ = args.seed;
    ExitCode::from(run(args.command) as u8)
}

fn run(cmd: Command) -> i32 {
    match cmd {
        Command::Eval { what } => {
            let out = match what {
                EvalTarget::Mlf { alpha, beta, re, im } => cli::eval::eval_mlf(alpha, beta, C64::new(re, im)),
                EvalTarget::Bessel { n, re, im } => cli::eval::eval_bessel(n, C64::new(re, im)),
                EvalTarget::Kernel { t, alpha, xi_max, n_xi } => cli::eval::eval_kernel(t, alpha, xi_max, n_xi),
            };
            match out {
                Ok(s) => {
                    println!("{}", s.trim_end());
                    exit::OK
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit::INVALID
                }
            }
        }
        Command::Run { config, out } => scenario(&config, out, cli::run_scenario),
        Command::Sweep { config, out } => scenario(&config, out, cli::run_sweep),
        Command::Verify { tier, out, flip_sign } => {
            let (report, results) = cli::run_verification_suite(VerifyOptions { tier, flip_sign });
            for c in &results {
                if c.id > 0 {
                    println!("{}", c.line());
                } else {
                    for check in &c.checks {
                        println!("{}", check.line());
                    }
                }
            }
            if let Some(dir) = out {
                let files = results.iter().flat_map(|c| c.files.iter());
                for (name, body) in files {
                    if let Err(e) = cli::csv::write_atomic(&dir.join(name), body.as_bytes()) {
                        eprintln!("error: {e}");
                        return exit::OTHER;
                    }
                }
                if let Err(e) = report.write(&dir.join("report.json")) {
                    eprintln!("error: {e}");
                    return exit::OTHER;
                }
            }
            report_exit_code(&report)
        }
    }
}

fn scenario(config: &std::path::Path, out: Option<PathBuf>, f: fn(&cli::Plan) -> cli::RunReport) -> i32 {
    let plan = match Scenario::load(config).and_then(|s| s.validate(out.as_deref())) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let report = f(&plan);
    for c in &report.checks {
        println!("{}", c.line());
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    println!("report: {}", plan.out_dir.join("report.json").display());
    report_exit_code(&report)
}
