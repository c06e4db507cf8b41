use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use crossed_cli::expr::ExprContext;
use crossed_cli::run::{parse_suites, run_suite, RunConfig, UsageError};
use crossed_core::entwine::InstanceParams;
use crossed_core::instances::mutations::MUTATIONS;
use crossed_core::instances::{catalog, eq2};
use crossed_core::kernel::{SampleSpec, Status};
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "crossed", version, about = "Exact crossed products of an algebra by a coalgebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites on an instance.
    Check {
        instance: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Total number of random samples per check.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// `all` or a comma-separated subset of the suites.
        #[arg(long, default_value = "all")]
        suites: String,
        /// Number of gauge transformations in the gauge suite.
        #[arg(long, default_value_t = 20)]
        gauges: usize,
        /// Write the JSON report to PATH, or to stdout when PATH is omitted or `-`.
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Inject a fault before checking (see list-instances).
        #[arg(long, value_name = "FAULT")]
        mutate: Option<String>,
    },
    /// Normalize an element of the E_q(2) algebra.
    Eval {
        instance: String,
        expr: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Multiply two elements `x # c_p` of the crossed product.
    CrossMul {
        instance: String,
        a: String,
        b: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// List instances and fault injections.
    ListInstances,
}

fn rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|_| format!("'{s}' is not an integer or a/b rational"))
}

#[derive(Args)]
struct ParamArgs {
    /// Numeric value for q; symbolic when omitted.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    q: Option<BigRational>,
    #[arg(long, default_value = "3", value_parser = rational, allow_hyphen_values = true)]
    mu: BigRational,
    #[arg(long, default_value = "5", value_parser = rational, allow_hyphen_values = true)]
    nu: BigRational,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    s: i64,
    #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
    p_min: i64,
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    p_max: i64,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
}

impl ParamArgs {
    fn params(&self) -> InstanceParams {
        InstanceParams { q: self.q.clone(), mu: self.mu.clone(), nu: self.nu.clone(), s: self.s }
    }

    fn spec(&self) -> SampleSpec {
        SampleSpec { p_window: (self.p_min, self.p_max), max_degree: self.max_degree, ..SampleSpec::default() }
    }
}

fn eq2_only(instance: &str, params: &InstanceParams) -> Result<eq2::Eq2, UsageError> {
    if instance != "eq2" {
        return Err(UsageError(format!("element syntax is only defined for eq2, not {instance}")));
    }
    Ok(eq2::make(params)?)
}

fn run(cmd: Cmd) -> Result<ExitCode, UsageError> {
    match cmd {
        Cmd::Check { instance, params, samples, seed, suites, gauges, json, jobs, mutate } => {
            let cfg = RunConfig {
                instance,
                params: params.params(),
                spec: SampleSpec { seed, trials: samples, ..params.spec() },
                suites: parse_suites(&suites).map_err(UsageError)?,
                mutate,
                gauges,
                jobs,
            };
            let report = run_suite(&cfg)?;
            let to_stdout = json.as_deref() == Some("-");
            for c in &report.checks {
                if to_stdout {
                    if c.status == Status::Fail {
                        eprintln!("{c}");
                    }
                } else {
                    println!("{c}");
                }
            }
            let failed = report.checks.iter().filter(|c| c.status == Status::Fail).count();
            let summary = format!("{} checks, {failed} failed, {} ms", report.checks.len(), report.wall_time_ms);
            match json.as_deref() {
                Some("-") => {
                    print!("{}", report.to_json());
                    eprintln!("{summary}");
                }
                Some(path) => {
                    std::fs::write(path, report.to_json()).map_err(|e| UsageError(format!("{path}: {e}")))?;
                    println!("{summary}");
                }
                None => println!("{summary}"),
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Cmd::Eval { instance, expr, params } => {
            let p = params.params();
            let e = eq2_only(&instance, &p)?;
            let cx = ExprContext::eq2(e.ent.p.clone(), &p)?;
            let v = cx.parse(&expr).map_err(|err| UsageError(err.to_string()))?;
            println!("{v}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CrossMul { instance, a, b, params } => {
            let p = params.params();
            let e = eq2_only(&instance, &p)?;
            let cx = ExprContext::eq2(e.ent.p.clone(), &p)?;
            let a = cx.parse_tensor(&a).map_err(|err| UsageError(err.to_string()))?;
            let b = cx.parse_tensor(&b).map_err(|err| UsageError(err.to_string()))?;
            match e.data.mul(&a, &b) {
                Ok(v) => {
                    println!("{v}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::ListInstances => {
            println!("instances:");
            for (name, about) in catalog() {
                println!("  {name:<28} {about}");
            }
            println!("faults (--mutate):");
            for (name, about) in MUTATIONS {
                println!("  {name:<28} {about}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
