//! `qconv`: build the GRS and Reed-Muller quantum convolutional code
//! families, verify their claims, and re-check code descriptors.

mod render;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qconv::grs::{self, GrsFamilyParams};
use qconv::polymat::{dual_window_distance, free_distance_bruteforce, FreeDistanceOptions, PolyGeneratorMatrix};
use qconv::report::{self, MemberOutcome, VerifyOptions};
use qconv::rm::{self, RmFamilyParams};
use qconv::stabilizer::singleton_bound;

#[derive(Parser, Debug)]
#[command(name = "qconv", version, about = "Quantum convolutional stabilizer codes from GRS and Reed-Muller codes")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest window depth for stabilizer checks and message degree for
    /// the free-distance enumeration.
    #[arg(long, global = true, default_value_t = 3)]
    t_max: usize,
    /// Weight at which the free-distance state search stops.
    #[arg(long, global = true, default_value_t = 4096)]
    w_cap: usize,
    /// Wall-time cap in seconds for each search; exhausted searches report
    /// `bounded`.
    #[arg(long, global = true)]
    time_cap_secs: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 24301)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate and verify the GRS family.
    Grs {
        #[arg(long, default_value_t = 8)]
        q_max: u32,
        /// A single member `q,n,t` instead of the enumeration.
        #[arg(long, value_parser = parse_triple, conflicts_with = "q_max")]
        member: Option<(usize, usize, usize)>,
    },
    /// Enumerate and verify the Reed-Muller family.
    Rm {
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        /// A single member `m,l,r`; parameters outside the orthogonality
        /// range are accepted and reported as failures.
        #[arg(long, value_parser = parse_triple, conflicts_with = "m_max")]
        member: Option<(usize, usize, usize)>,
    },
    /// Re-verify code descriptors from a JSON file (`-` for stdin).
    Verify { input: PathBuf },
    /// Quantum Singleton bound for `n`, `k`, `delta`.
    Bound { n: usize, k: usize, delta: usize },
    /// Free distance of a generator matrix, and of its Euclidean dual.
    Distance { input: PathBuf },
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(format!("expected three comma-separated integers, got {s:?}")),
    }
}

impl RunConfig {
    fn validate(&self) -> anyhow::Result<()> {
        if self.w_cap == 0 {
            bail!("--w-cap must be positive");
        }
        if self.time_cap_secs == Some(0) {
            bail!("--time-cap-secs must be positive");
        }
        if self.jobs == Some(0) {
            bail!("--jobs must be positive");
        }
        Ok(())
    }

    fn verify_options(&self) -> VerifyOptions {
        let mut opts = VerifyOptions {
            t_max: self.t_max,
            seed: self.seed,
            ..VerifyOptions::default()
        };
        opts.free.t_max = self.t_max;
        opts.free.w_cap = self.w_cap;
        opts.quantum.t = self.t_max;
        match self.time_cap_secs {
            Some(s) => opts.with_time_cap(Duration::from_secs(s)),
            None => opts,
        }
    }

    fn free_options(&self) -> FreeDistanceOptions {
        self.verify_options().free
    }
}

const Q_MAX_CAP: u32 = 256;
const M_MAX_CAP: usize = rm::MAX_M;

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(run: &RunConfig, text: &str) -> anyhow::Result<()> {
    match &run.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Members are verified in parallel; output keeps the input order.
fn run_members<T: Sync>(items: &[T], f: impl Fn(&T) -> MemberOutcome + Sync + Send) -> Vec<MemberOutcome> {
    items.par_iter().map(f).collect()
}

fn execute(cli: Cli) -> anyhow::Result<i32> {
    let run = &cli.run;
    run.validate()?;
    match cli.command {
        Command::Grs { q_max, member } => {
            let members = match member {
                Some((q, n, t)) => vec![GrsFamilyParams { q: q as u32, n, t }],
                None => {
                    if q_max > Q_MAX_CAP {
                        bail!("--q-max {q_max} exceeds the cap of {Q_MAX_CAP}");
                    }
                    grs::enumerate_family(q_max)
                }
            };
            let opts = run.verify_options();
            let outcomes = run_members(&members, |p| report::verify_grs(*p, &opts));
            emit(run, &render::members(run.format, &outcomes)?)?;
            Ok(report::exit_code(outcomes.iter().map(|o| &o.report)))
        }
        Command::Rm { m_max, member } => {
            let members = match member {
                Some((m, l, r)) => vec![RmFamilyParams { m, l, r }],
                None => {
                    if m_max > M_MAX_CAP {
                        bail!("--m-max {m_max} exceeds the cap of {M_MAX_CAP}");
                    }
                    rm::enumerate_family(m_max)
                }
            };
            let opts = run.verify_options();
            let outcomes = run_members(&members, |p| report::verify_rm(*p, &opts));
            emit(run, &render::members(run.format, &outcomes)?)?;
            Ok(report::exit_code(outcomes.iter().map(|o| &o.report)))
        }
        Command::Verify { input } => {
            let codes = report::load_descriptors(&read_input(&input)?)?;
            let opts = run.verify_options();
            let outcomes = run_members(&codes, |c| report::verify_descriptor(c, &opts));
            emit(run, &render::members(run.format, &outcomes)?)?;
            Ok(report::exit_code(outcomes.iter().map(|o| &o.report)))
        }
        Command::Bound { n, k, delta } => {
            let b = singleton_bound(n, k, delta)?;
            emit(run, &render::bound(run.format, n, k, delta, b)?)?;
            Ok(0)
        }
        Command::Distance { input } => {
            let g = load_generator(&read_input(&input)?)?;
            let opts = run.free_options();
            let free = free_distance_bruteforce(&g, &opts);
            let dual = dual_window_distance(&g, run.t_max, &opts.budget);
            emit(run, &render::distances(run.format, &free, &dual)?)?;
            Ok(if free.exact && dual.exact { 0 } else { 2 })
        }
    }
}

/// A generator matrix, given directly or as the `generator` of a
/// descriptor.
fn load_generator(text: &str) -> anyhow::Result<PolyGeneratorMatrix> {
    let mut value: serde_json::Value = serde_json::from_str(text).context("parsing JSON")?;
    if let Some(g) = value.get_mut("generator") {
        value = g.take();
    }
    serde_json::from_value(value).context("reading generator matrix")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            // exit code 2 is reserved for bounded results
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    if let Some(j) = cli.run.jobs.filter(|&j| j > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
