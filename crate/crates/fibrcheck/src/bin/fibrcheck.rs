use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fibrcheck::groups::TargetGroup;
use fibrcheck::run::{exit_code, run_analyze, Mode, RunConfig};

#[derive(Parser)]
#[command(
    name = "fibrcheck",
    about = "Twisted-polynomial degree tests for 0-surgery presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a presentation file against a set of finite quotients.
    Analyze {
        /// Presentation JSON (generators, relators, longitude, genus).
        presentation: PathBuf,
        /// Target groups, e.g. S3,S4,S5,A4.
        #[arg(long, value_delimiter = ',', required = true)]
        groups: Vec<String>,
        /// Twisting primes, e.g. 5,7,11,13.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u32>,
        /// Report wording: symplectic or fibered.
        #[arg(long, default_value = "symplectic")]
        mode: String,
        /// Stop each epimorphism search after this many raw hits.
        #[arg(long, default_value_t = 10_000)]
        max_homs: usize,
        /// Worker threads; 0 = one per core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Epimorphism cache file.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Report output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest group order for which the regular representation runs.
        #[arg(long, default_value_t = 24)]
        regular_max_order: u64,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("FIBRCHECK_LOG")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            presentation,
            groups,
            primes,
            mode,
            max_homs,
            workers,
            cache,
            out,
            regular_max_order,
        } => {
            let mut parsed_groups = Vec::new();
            for g in &groups {
                match TargetGroup::parse(g) {
                    Some(t) => parsed_groups.push(t),
                    None => {
                        eprintln!("error: unknown group `{}` (expected S2..S9 or A3..A9)", g);
                        return ExitCode::from(2);
                    }
                }
            }
            let Some(mode) = Mode::parse(&mode) else {
                eprintln!("error: unknown mode `{}` (expected symplectic or fibered)", mode);
                return ExitCode::from(2);
            };
            let config = RunConfig {
                input_path: presentation,
                groups: parsed_groups,
                primes,
                mode,
                max_homs,
                workers,
                cache_path: cache,
                out_path: out.clone(),
                regular_max_order,
            };
            match run_analyze(&config) {
                Ok(report) => {
                    if out.is_none() {
                        println!("{}", report.to_json());
                    } else {
                        println!(
                            "{}: {} ({})",
                            report.presentation.name,
                            report.aggregate.status,
                            report.aggregate.note
                        );
                    }
                    ExitCode::from(exit_code(&report) as u8)
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    ExitCode::from(2)
                }
            }
        }
    }
}
