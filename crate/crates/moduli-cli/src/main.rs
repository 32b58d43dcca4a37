use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moduli_cli::{describe, run, verify, write_outputs, ExperimentConfig};

#[derive(Parser)]
#[command(name = "moduli", about = "Batch experiment runner for deformation-slice backends")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a JSON config file
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
    },
    /// List experiments and default tolerances
    Describe,
    /// Run the full invariant suite at default settings
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
    },
}

fn init_threads() {
    if let Ok(threads) = std::env::var("MODULI_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Describe => {
            print!("{}", describe());
            ExitCode::SUCCESS
        }
        Command::Run { config, seed, out, tol_scale } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read config {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let mut cfg: ExperimentConfig = match serde_json::from_str(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("malformed config: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cfg.tol_scale *= tol_scale;
            let out_dir = out.unwrap_or_else(|| PathBuf::from(&cfg.output_dir));
            match run(&cfg) {
                Ok((report, elapsed)) => {
                    if let Err(e) = write_outputs(&report, elapsed, &out_dir) {
                        eprintln!("cannot write outputs: {e}");
                        return ExitCode::from(2);
                    }
                    for f in &report.flags {
                        println!("{} {} (value {:e})", if f.passed { "pass" } else { "FAIL" }, f.name, f.value);
                    }
                    println!("report: {}", out_dir.join(format!("{}-report.json", report.experiment)).display());
                    if let Some(fail) = report.first_failure() {
                        eprintln!("invariant failed: {}", fail.name);
                        ExitCode::from(1)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(moduli_cli::RunError::Usage(msg)) => {
                    eprintln!("usage error: {msg}");
                    ExitCode::from(2)
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Verify { seed, out, tol_scale } => {
            let start = std::time::Instant::now();
            let reports = verify(seed, tol_scale);
            let out_dir = out.unwrap_or_else(|| PathBuf::from("moduli-out"));
            if std::fs::create_dir_all(&out_dir).is_err() {
                eprintln!("cannot create {}", out_dir.display());
                return ExitCode::from(2);
            }
            let json = serde_json::to_string_pretty(&reports).expect("serializable");
            let path = out_dir.join("verify-report.json");
            if std::fs::write(&path, &json).is_err() {
                eprintln!("cannot write {}", path.display());
                return ExitCode::from(2);
            }
            let mut failed: Option<String> = None;
            for r in &reports {
                for f in &r.flags {
                    println!(
                        "{} [{}] {} (value {:e})",
                        if f.passed { "pass" } else { "FAIL" },
                        r.experiment,
                        f.name,
                        f.value
                    );
                    if !f.passed && failed.is_none() {
                        failed = Some(format!("{}/{}", r.experiment, f.name));
                    }
                }
            }
            println!("report: {} ({} experiments, {:.1}s)", path.display(), reports.len(), start.elapsed().as_secs_f64());
            match failed {
                Some(name) => {
                    eprintln!("invariant failed: {name}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
    }
}
