use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use ecp::analyzers::{parameter_report, Budgets};
use ecp::dispatch::{
    bench_csv, bench_text, cmd_bench, dispatch_portfolio, dispatch_with, read_manifest, Answer, BenchOptions, Strategy,
    Thresholds,
};
use ecp::gen::{
    binpacking_provenance, gen_random_instance, parse_binpacking, random_provenance, reduce_binpacking, RandomFamily,
    RandomSize,
};
use ecp::graph::{parse_instance, parse_solution, serialize_instance, serialize_solution, Solution};
use ecp::{verify_partition, Error, SearchLimits, Verdict};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "ecp", version, about = "Equitable connected partition solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print a report.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// `auto` or one of oracle, clique, cograph, treewidth, nd, mw,
        /// dclique, dcluster, vi, 3pvc.
        #[arg(long, default_value = "auto")]
        algo: String,
        #[command(flatten)]
        run: RunArgs,
        /// Write the solution file here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check a solution file against an instance.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Print structural parameters.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Override a search budget, e.g. `vc=10`.
        #[arg(long = "budget", value_name = "NAME=K")]
        budgets: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated instance.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Solve every instance in a manifest and write a CSV table.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value = "auto")]
        algo: String,
        #[command(flatten)]
        run: RunArgs,
        /// Write 0 in the millis column.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Reduce a unary bin packing instance.
    Ubp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// A seeded random instance.
    Random {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        modulator: Option<usize>,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Race the oracle against the automatic pick.
    #[arg(long)]
    portfolio: bool,
    #[arg(long, default_value_t = Thresholds::default().diversity)]
    max_diversity: usize,
    #[arg(long, default_value_t = Thresholds::default().modulator)]
    max_modulator: usize,
    #[arg(long, default_value_t = Thresholds::default().cover)]
    max_cover: usize,
    #[arg(long, default_value_t = Thresholds::default().integrity)]
    max_integrity: usize,
    #[arg(long, default_value_t = Thresholds::default().width)]
    max_width: usize,
    #[arg(long, default_value_t = Thresholds::default().oracle_vertices)]
    max_oracle_vertices: usize,
}

impl RunArgs {
    fn limits(&self) -> Result<SearchLimits, Error> {
        let mut limits = SearchLimits::default();
        if let Some(nodes) = self.node_limit {
            limits.node_budget = nodes;
        }
        if let Some(seconds) = self.time_limit {
            let budget = Duration::try_from_secs_f64(seconds)
                .map_err(|_| Error::InvalidArgument(format!("bad time limit {seconds}")))?;
            limits = limits.with_time(budget);
        }
        Ok(limits)
    }

    fn thresholds(&self) -> Thresholds {
        Thresholds {
            diversity: self.max_diversity,
            modulator: self.max_modulator,
            cover: self.max_cover,
            integrity: self.max_integrity,
            width: self.max_width,
            oracle_vertices: self.max_oracle_vertices,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::InvalidArgument(_) => EXIT_USAGE,
                _ => EXIT_DATA,
            };
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn answer_code(answer: Answer) -> u8 {
    match answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Unknown => 2,
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Solve { input, algo, run, output, json } => {
            let instance = parse_instance(&read(&input)?)?;
            let strategy: Strategy = algo.parse()?;
            let limits = run.limits()?;
            let report = if run.portfolio && strategy == Strategy::Auto {
                dispatch_portfolio(&instance, &limits, &run.thresholds())?
            } else {
                dispatch_with(&instance, strategy, &limits, &run.thresholds())?
            };
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if let Some(output) = output {
                let solution = match (&report.answer, &report.certificate) {
                    (Answer::Yes, Some(partition)) => Some(Solution::Yes(partition.clone())),
                    (Answer::No, _) => Some(Solution::No),
                    _ => None,
                };
                if let Some(solution) = solution {
                    write(&output, &serialize_solution(&solution))?;
                }
            }
            Ok(answer_code(report.answer))
        }
        Command::Verify { input, solution } => {
            let instance = parse_instance(&read(&input)?)?;
            match parse_solution(&read(&solution)?, instance.vertex_count())? {
                Solution::Yes(partition) => match verify_partition(&instance, &partition) {
                    Ok(Verdict::Valid) => {
                        println!("valid");
                        Ok(0)
                    }
                    Ok(Verdict::Invalid(violations)) => {
                        println!("invalid");
                        for violation in violations {
                            println!("  {violation}");
                        }
                        Ok(1)
                    }
                    Err(err) => {
                        println!("invalid\n  {err}");
                        Ok(1)
                    }
                },
                // A no claim is checked by solving.
                Solution::No => {
                    let report =
                        dispatch_with(&instance, Strategy::Auto, &SearchLimits::default(), &Thresholds::default())?;
                    let (verdict, code) = match report.answer {
                        Answer::No => ("valid", 0),
                        Answer::Yes => ("invalid: the instance has a solution", 1),
                        Answer::Unknown => ("unknown: could not decide the instance", 2),
                    };
                    println!("{verdict}");
                    Ok(code)
                }
            }
        }
        Command::Analyze { input, budgets: overrides, json } => {
            let instance = parse_instance(&read(&input)?)?;
            let mut budgets = Budgets::default();
            for spec in &overrides {
                budgets.set(spec)?;
            }
            let report = parameter_report(instance.graph(), &budgets);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", report.to_text());
            }
            Ok(0)
        }
        Command::Generate { kind: GenerateKind::Ubp { input, output } } => {
            let ubp = parse_binpacking(&read(&input)?)?;
            let instance = reduce_binpacking(&ubp);
            write(&output, &serialize_instance(&instance, &binpacking_provenance(&ubp)))?;
            Ok(0)
        }
        Command::Generate { kind: GenerateKind::Random { kind, seed, n, p, rows, cols, modulator, output } } => {
            let family: RandomFamily = kind.parse()?;
            let size = RandomSize { n, p, rows, cols, modulator };
            let instance = gen_random_instance(family, seed, &size)?;
            write(&output, &serialize_instance(&instance, &random_provenance(family, seed, &size)))?;
            Ok(0)
        }
        Command::Bench { manifest, csv, algo, run, no_timing } => {
            let paths = read_manifest(&manifest)?;
            let options = BenchOptions {
                strategy: algo.parse()?,
                limits: run.limits()?,
                thresholds: run.thresholds(),
                portfolio: run.portfolio,
                timing: !no_timing,
            };
            let rows = cmd_bench(&paths, &options);
            write(&csv, &bench_csv(&rows))?;
            print!("{}", bench_text(&rows));
            Ok(0)
        }
    }
}
