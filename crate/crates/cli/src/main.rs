use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rectcover::bench::{
    gnuplot_script, run_bench, verify_suite, BenchConfig, VerifyOptions, DEFAULT_SIMPLICIAL_CAP,
    DESK_SCALE_MAX_N,
};
use rectcover::io::{read_instance, write_instance, SolveReport};
use rectcover::{generate_instance, Algorithm, Error, Region};

#[derive(Parser)]
#[command(
    name = "rectcover",
    version,
    about = "Greedy clique cover and independent set heuristics for random rectangles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// x_min,x_max,y_min,y_max
        #[arg(long, default_value = "0,1,0,1")]
        region: Region,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one heuristic on an instance file.
    Solve {
        instance: PathBuf,
        #[arg(long, value_parser = parse_algo)]
        algo: Algorithm,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Seed recorded in the report, if the instance came from `gen`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean solution sizes over seeded random instances, as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [500usize, 1000, 5000])]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', value_parser = parse_algo,
              default_values = ["gcc", "gcc-i", "mis", "mis-i"])]
        algo: Vec<Algorithm>,
        #[arg(long, default_value = "0,1,0,1")]
        region: Region,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-run records CSV.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Append mean wall-clock columns (makes the CSV non-reproducible).
        #[arg(long)]
        timings: bool,
        /// Write a gnuplot script for the output CSV to this path.
        #[arg(long, requires = "out")]
        gnuplot: Option<PathBuf>,
        /// Permit n above the desk-scale limit.
        #[arg(long)]
        allow_large: bool,
        /// Skip simplicial-based algorithms above this n.
        #[arg(long, default_value_t = DEFAULT_SIMPLICIAL_CAP)]
        simplicial_cap: usize,
        /// Run trials on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// Cross-check heuristics against exact oracles on small instances.
    Verify {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 15)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_invalid_cover: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unverified { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            n,
            seed,
            region,
            out,
        } => {
            let instance = generate_instance(n, region, seed);
            let mut buf = Vec::new();
            write_instance(&mut buf, &instance)?;
            emit(out.as_deref(), &String::from_utf8_lossy(&buf))?;
        }
        Command::Solve {
            instance,
            algo,
            format,
            seed,
            out,
        } => {
            let file = fs::File::open(&instance)
                .map_err(|e| Failure::Usage(format!("{}: {e}", instance.display())))?;
            let inst = read_instance(BufReader::new(file))?;
            let report = SolveReport::run(&inst, algo, seed);
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Csv => format!("{}\n{}\n", SolveReport::CSV_HEADER, report.csv_row()),
            };
            emit(out.as_deref(), &text)?;
            if !report.verified {
                return Err(Failure::Verification(format!(
                    "{algo} produced an invalid result"
                )));
            }
        }
        Command::Bench {
            n_list,
            trials,
            seed,
            algo,
            region,
            out,
            records,
            timings,
            gnuplot,
            allow_large,
            simplicial_cap,
            serial,
        } => {
            if allow_large && n_list.iter().any(|&n| n > DESK_SCALE_MAX_N) {
                eprintln!(
                    "warning: n above {DESK_SCALE_MAX_N} can take many minutes; \
                     simplicial-based algorithms are skipped above n = {simplicial_cap}"
                );
            }
            let cfg = BenchConfig {
                n_list,
                trials,
                base_seed: seed,
                algos: algo,
                region,
                allow_large,
                simplicial_cap,
                timings,
                parallel: !serial,
            };
            let outcome = run_bench(&cfg)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &outcome.to_csv(timings))?;
            if let Some(path) = records {
                fs::write(path, outcome.records_csv())?;
            }
            if let (Some(script), Some(csv)) = (gnuplot, out) {
                fs::write(script, gnuplot_script(&csv.display().to_string()))?;
            }
        }
        Command::Verify {
            count,
            n,
            seed,
            inject_invalid_cover,
        } => {
            let opts = VerifyOptions {
                inject_invalid_cover,
                ..VerifyOptions::default()
            };
            let report = verify_suite(count, n, seed, opts)?;
            println!(
                "{} instances, {} checks, {} violations",
                report.instances,
                report.checks,
                report.violations.len()
            );
            if let Some(first) = report.violations.first() {
                for v in &report.violations {
                    eprintln!("violation: {} (seed {}, n {})", v.check, v.seed, v.n);
                }
                return Err(Failure::Verification(format!(
                    "reproduce with: verify --count 1 --n {} --seed {}",
                    first.n, first.seed
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
