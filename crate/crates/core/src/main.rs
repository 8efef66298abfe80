use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use maxarc::io::{self, load_arc};
use maxarc::suite::{
    certificates_csv, certificates_table, sweep_csv, sweep_pairs, sweep_row, tally, Certificate,
    Suite, Target,
};
use maxarc::FieldTower;

/// Denniston maximal arcs and their two-weight codes, with exhaustive certificates.
#[derive(Parser)]
#[command(name = "maxarc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the field, arc, partition, group, codes and designs to the output directory.
    Construct(RunConfig),
    /// Recompute every certificate for the requested targets.
    Verify {
        #[command(flatten)]
        cfg: RunConfig,
        /// Any of arc, partition, group, code, designs, all.
        #[arg(value_enum, default_values_t = [TargetArg::All])]
        targets: Vec<TargetArg>,
    },
    /// Run the full suite for every (m, k) with 2km <= max-bits.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=24))]
        max_bits: u32,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct RunConfig {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    m: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    k: u32,
    /// Defining polynomial of GF(2^(2km)) as a bitmask (decimal, 0x.. or 0b..).
    #[arg(long, value_parser = parse_modulus)]
    modulus: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Arc,
    Partition,
    Group,
    Code,
    Designs,
    All,
}

fn parse_modulus(s: &str) -> Result<u64, String> {
    let parsed = if let Some(h) = s.strip_prefix("0x") {
        u64::from_str_radix(h, 16)
    } else if let Some(b) = s.strip_prefix("0b") {
        u64::from_str_radix(b, 2)
    } else {
        s.parse()
    };
    parsed.map_err(|e| format!("invalid modulus {s:?}: {e}"))
}

fn targets(args: &[TargetArg]) -> BTreeSet<Target> {
    if args.contains(&TargetArg::All) {
        return Target::ALL.into_iter().collect();
    }
    args.iter()
        .map(|t| match t {
            TargetArg::Arc => Target::Arc,
            TargetArg::Partition => Target::Partition,
            TargetArg::Group => Target::Group,
            TargetArg::Code => Target::Code,
            TargetArg::Designs => Target::Designs,
            TargetArg::All => unreachable!(),
        })
        .collect()
}

fn set_jobs(jobs: Option<usize>) -> Result<()> {
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

fn tower(cfg: &RunConfig) -> Result<FieldTower> {
    Ok(FieldTower::with_modulus(cfg.m, cfg.k, cfg.modulus)?)
}

fn write_certificates(dir: &Path, format: Format, certs: &[Certificate]) -> Result<PathBuf> {
    let path = match format {
        Format::Json => {
            let p = dir.join("certificates.json");
            io::write_json(&p, &certs)?;
            p
        }
        Format::Csv => {
            let p = dir.join("certificates.csv");
            io::write_atomic(&p, certificates_csv(certs).as_bytes())?;
            p
        }
    };
    Ok(path)
}

fn construct(cfg: &RunConfig) -> Result<ExitCode> {
    let t = tower(cfg)?;
    for p in io::construct(&t, &cfg.out)? {
        println!("{}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(cfg: &RunConfig, requested: &[TargetArg]) -> Result<ExitCode> {
    let t = tower(cfg)?;
    let mut suite = Suite::new(&t);
    if let Some(arc) = load_arc(&t, &cfg.out)? {
        suite = suite.with_arc(arc);
    }
    let certs = suite.run(&targets(requested));
    print!("{}", certificates_table(&certs));
    let summary = tally(&certs);
    let path = write_certificates(&cfg.out, cfg.format, &certs)?;
    println!(
        "{} passed, {} failed, {} skipped; wrote {}",
        summary.passed,
        summary.failed,
        summary.skipped,
        path.display()
    );
    Ok(if summary.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn sweep(max_bits: u32, out: &Path) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for (m, k) in sweep_pairs(max_bits) {
        let t = FieldTower::new(m, k)?;
        let certs = Suite::new(&t).run_all();
        rows.push(sweep_row(&t, &certs));
    }
    let csv = sweep_csv(&rows);
    print!("{csv}");
    io::write_atomic(&out.join("sweep.csv"), csv.as_bytes())?;
    Ok(if rows.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(cfg) => {
            set_jobs(cfg.jobs)?;
            construct(&cfg)
        }
        Command::Verify { cfg, targets } => {
            set_jobs(cfg.jobs)?;
            verify(&cfg, &targets)
        }
        Command::Sweep {
            max_bits,
            out,
            jobs,
        } => {
            set_jobs(jobs)?;
            sweep(max_bits, &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
