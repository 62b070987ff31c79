use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use corrdyn::job::{parse_job, run_job, stream_seed, CorrSpec, Job, Output, Param};
use corrdyn::Error;
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "corrdyn", version, about = "Dynamics of correspondences on the projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one job file.
    Run {
        job: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build a job from flags and run it.
    Quick {
        /// `Q`, `Fp:<p>` or `Fp:<p>^<k>`.
        #[arg(long)]
        field: String,
        /// Rational map defining the correspondence y = f(x).
        #[arg(long, conflicts_with = "poly")]
        f: Option<String>,
        /// Bivariate polynomial F(x, y).
        #[arg(long = "F", id = "poly")]
        poly: Option<String>,
        #[arg(long)]
        cmd: String,
        #[arg(long)]
        seed: Option<String>,
        /// Extra command parameters as key=value.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        rng: u64,
        /// Print the job file instead of running it.
        #[arg(long)]
        print_job: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run several job files in parallel.
    Batch {
        jobs: Vec<PathBuf>,
        /// Batch seed; job i runs with a stream derived from (seed, i).
        #[arg(long)]
        seed: Option<u64>,
        /// Write `<name>.json` and `<name>.dot` here instead of stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OutArgs {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))
}

fn emit(out: &Output, args: &OutArgs) -> Result<(), Failure> {
    match &args.json {
        Some(p) => write(p, &out.json_text())?,
        None => print!("{}", out.json_text()),
    }
    if let Some(p) = &args.dot {
        let dot = out
            .dot
            .as_deref()
            .ok_or_else(|| Failure::Precondition("command produces no graph".into()))?;
        write(p, dot)?;
    }
    Ok(())
}

fn param(text: &str) -> Result<(String, Param), Failure> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| Failure::Input(format!("expected KEY=VALUE, got {text:?}")))?;
    let v = v.trim();
    let value = if let Ok(n) = v.parse::<i64>() {
        Param::Int(n)
    } else if let Ok(b) = v.parse::<bool>() {
        Param::Bool(b)
    } else {
        Param::Str(v.to_string())
    };
    Ok((k.trim().to_string(), value))
}

fn run_batch(jobs: &[PathBuf], seed: Option<u64>, out_dir: Option<&Path>) -> Result<(), Failure> {
    let results: Vec<Result<Output, Failure>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, path)| {
            let mut job = parse_job(&read(path)?)?;
            if let Some(s) = seed {
                job.rng = stream_seed(s, i as u64);
            }
            Ok(run_job(&job)?)
        })
        .collect();
    let mut worst: Option<Failure> = None;
    for (path, r) in jobs.iter().zip(results) {
        match r {
            Ok(out) => match out_dir {
                Some(dir) => {
                    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
                    write(&dir.join(format!("{stem}.json")), &out.json_text())?;
                    if let Some(d) = &out.dot {
                        write(&dir.join(format!("{stem}.dot")), d)?;
                    }
                }
                None => print!("{}", out.json_text()),
            },
            Err(f) => {
                eprintln!("{}: {}", path.display(), f.message());
                if worst.as_ref().map_or(true, |w| f.code() > w.code()) {
                    worst = Some(f);
                }
            }
        }
    }
    worst.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { job, out } => read(&job)
            .and_then(|t| Ok(parse_job(&t)?))
            .and_then(|j| Ok(run_job(&j)?))
            .and_then(|o| emit(&o, &out)),
        Command::Quick {
            field,
            f,
            poly,
            cmd,
            seed,
            params,
            rng,
            print_job,
            out,
        } => (|| {
            let corr = match (f, poly) {
                (Some(t), _) => Some(CorrSpec::Map(t)),
                (None, Some(t)) => Some(CorrSpec::Poly(t)),
                (None, None) => None,
            };
            let mut job = Job::new(&field, corr, cmd.parse()?);
            job.rng = rng;
            if let Some(s) = seed {
                job = job.with_param("seed", Param::Str(s));
            }
            for p in &params {
                let (k, v) = param(p)?;
                job = job.with_param(&k, v);
            }
            job.validate()?;
            if print_job {
                print!("{}", job.to_text());
                return Ok(());
            }
            emit(&run_job(&job)?, &out)
        })(),
        Command::Batch { jobs, seed, out_dir } => run_batch(&jobs, seed, out_dir.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
