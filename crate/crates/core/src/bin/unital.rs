use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail};
use clap::{Parser, Subcommand};

use unital::cli::{
    cmd_bounds_batch, cmd_build, cmd_census, cmd_verify_theorem, parse_bins, parse_sizes, with_workers, BuildKind,
    CensusRequest, Family, ModeSpec, PivotSpec, RunReport, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "unital", version, about = "Hermitian varieties over GF(q^2) and their intersection numbers")]
struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a point set and save it in PGPS format.
    Build {
        /// hermitian, fermat or poly
        #[arg(long)]
        kind: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value_t = 0)]
        t: usize,
        /// Polynomial JSON for `--kind poly`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Expected cardinality, overriding the closed form.
        #[arg(long)]
        expect: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Intersection census of a PGPS point set against a family of flats.
    Census {
        #[arg(long)]
        input: PathBuf,
        /// lines, planes, solids, 4spaces, 5spaces or hyperplanes
        #[arg(long)]
        family: String,
        /// full, through or sample
        #[arg(long)]
        mode: String,
        /// point:I, span:I,J,..., random-point, generator or generator-perp
        #[arg(long)]
        pivot: Option<String>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Expected bins as size:count,size:count
        #[arg(long)]
        expect: Option<String>,
        /// Allowed intersection sizes as a,b,c
        #[arg(long)]
        expect_sizes: Option<String>,
        /// Output prefix for the CSV and JSON histograms.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check polynomial JSON lines of plane curves against the point-count bounds.
    BoundsBatch {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every countable property of H(6, q^2).
    VerifyTheorem {
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        skip_hyperplane_census: bool,
        /// PGPS point set to test in place of the constructed variety.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        allow_other_q: bool,
    },
}

fn run(cmd: Command) -> anyhow::Result<RunReport> {
    match cmd {
        Command::Build { kind, r, q, t, input, expect, out } => {
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--kind {kind} needs --{name}"));
            let kind = match kind.as_str() {
                "hermitian" => BuildKind::Hermitian {
                    r: need(r, "r")?,
                    q: q.ok_or_else(|| anyhow!("--kind hermitian needs --q"))?,
                    t,
                },
                "fermat" => BuildKind::Fermat {
                    r: need(r, "r")?,
                    q: q.ok_or_else(|| anyhow!("--kind fermat needs --q"))?,
                },
                "poly" => BuildKind::Poly(input.ok_or_else(|| anyhow!("--kind poly needs --input"))?),
                other => bail!("unknown kind {other:?}"),
            };
            cmd_build(&kind, &out, expect)
        }
        Command::Census { input, family, mode, pivot, samples, seed, expect, expect_sizes, out } => {
            let mode = match mode.as_str() {
                "full" => ModeSpec::Full,
                "through" => ModeSpec::Through(PivotSpec::parse(
                    &pivot.ok_or_else(|| anyhow!("--mode through needs --pivot"))?,
                )?),
                "sample" => ModeSpec::Sample { count: samples.ok_or_else(|| anyhow!("--mode sample needs --samples"))? },
                other => bail!("unknown mode {other:?}"),
            };
            let req = CensusRequest {
                input,
                family: Family::parse(&family)?,
                mode,
                seed,
                expect: expect.as_deref().map(parse_bins).transpose()?,
                expect_sizes: expect_sizes.as_deref().map(parse_sizes).transpose()?,
                out,
            };
            let (hist, report) = cmd_census(&req)?;
            eprint!("{}", hist.to_csv());
            Ok(report)
        }
        Command::BoundsBatch { input, q, out } => {
            let (csv, report) = cmd_bounds_batch(&input, q, out.as_deref())?;
            if out.is_none() {
                eprint!("{csv}");
            }
            Ok(report)
        }
        Command::VerifyTheorem { q, seed, skip_hyperplane_census, input, allow_other_q } => {
            cmd_verify_theorem(&VerifyOptions { q, seed, skip_hyperplane_census, input, allow_other_q })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let result = with_workers(workers, || run(cli.command)).and_then(|r| r);
    match result {
        Ok(report) => {
            let json = report.to_json();
            println!("{json}");
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
