use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use tkk_core::catalog::{resolve, save, AlgebraSpec, Source};
use tkk_core::verify::{
    build, cross_check_report, dims_report, shipped_sources, tkk_report, verify_source, Batch, Report, TkkChoice,
};
use tkk_core::Error;

#[derive(Parser)]
#[command(name = "tkk", version, about = "Exact checks for Jordan superalgebras and their TKK Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Refuse inputs of larger dimension.
    #[arg(long, value_name = "N", global = true)]
    max_dim: Option<usize>,

    /// Shuffle the order in which independent checks run. Output does not depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for `verify all` (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Attach wall-clock timings. Makes output nondeterministic.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Structure and derivation algebra dimensions, and the inclusion chain.
    Dims { source: String },
    /// Build one construction and check it.
    Tkk {
        source: String,
        #[arg(value_parser = parse_choice)]
        construction: TkkChoice,
    },
    /// Run the full check suite on a source, or on the whole catalog with `all`.
    Verify { source: String },
    /// Write a constructed Lie superalgebra as a spec file.
    Export {
        source: String,
        #[arg(value_parser = parse_choice)]
        construction: TkkChoice,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_choice(s: &str) -> Result<TkkChoice, String> {
    s.parse().map_err(|_| format!("expected one of kan, ko, kotilde, ti-inn, ti-der; got {s:?}"))
}

fn load_source(name: &str, max_dim: Option<usize>) -> tkk_core::Result<Source> {
    let src = resolve(name)?;
    if let Some(m) = max_dim {
        if src.dim() > m {
            return Err(Error::OutOfRange(format!("{} has dimension {} > --max-dim {m}", src.name(), src.dim())));
        }
    }
    Ok(src)
}

fn jordan(name: &str, max_dim: Option<usize>) -> tkk_core::Result<tkk_core::jordan::JordanAlgebra> {
    match load_source(name, max_dim)? {
        Source::Jordan(v) => Ok(v),
        Source::Lie(g) => {
            Err(Error::UnknownName(format!("{} is a Lie superalgebra; this command needs a Jordan one", g.name())))
        }
        Source::Plain(g) => Err(Error::UnknownName(format!("{} is not a Jordan superalgebra; try `verify`", g.name()))),
    }
}

fn timed<T>(on: bool, f: impl FnOnce() -> tkk_core::Result<T>) -> tkk_core::Result<(T, Option<u64>)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, on.then(|| start.elapsed().as_millis() as u64)))
}

fn stamp(mut r: Report, ms: Option<u64>) -> Report {
    if let Some(ms) = ms {
        r.timings_ms = Some([("total".to_string(), ms)].into_iter().collect());
    }
    r
}

/// Runs every shipped source plus the cross-checks. Work is handed out in
/// seed-shuffled order to a thread pool and reassembled in catalog order.
fn verify_all(cli: &Cli) -> tkk_core::Result<Vec<Report>> {
    let mut names = shipped_sources();
    names.push(String::new()); // the cross-check report
    let mut order: Vec<usize> = (0..names.len()).collect();
    if let Some(seed) = cli.seed {
        order.shuffle(&mut StdRng::seed_from_u64(seed));
    }
    let slots: Mutex<Vec<Option<tkk_core::Result<Report>>>> = Mutex::new(names.iter().map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);
    std::thread::scope(|s| {
        for _ in 0..jobs.min(names.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&i) = order.get(k) else { break };
                let name = &names[i];
                let r = timed(cli.timings, || {
                    if name.is_empty() {
                        cross_check_report()
                    } else {
                        verify_source(&load_source(name, cli.max_dim)?)
                    }
                })
                .map(|(r, ms)| stamp(r, ms));
                slots.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every slot filled")).collect()
}

fn run(cli: &Cli) -> tkk_core::Result<Option<Batch>> {
    let t = cli.timings;
    let batch = match &cli.command {
        Command::Dims { source } => {
            let v = jordan(source, cli.max_dim)?;
            let (r, ms) = timed(t, || dims_report(&v))?;
            Batch::new(format!("dims {source}"), vec![stamp(r, ms)])
        }
        Command::Tkk { source, construction } => {
            let v = jordan(source, cli.max_dim)?;
            let ((r, _), ms) = timed(t, || tkk_report(&v, *construction))?;
            Batch::new(format!("tkk {source} {construction}"), vec![stamp(r, ms)])
        }
        Command::Verify { source } if source == "all" => Batch::new("verify all", verify_all(cli)?),
        Command::Verify { source } => {
            let src = load_source(source, cli.max_dim)?;
            let (r, ms) = timed(t, || verify_source(&src))?;
            Batch::new(format!("verify {source}"), vec![stamp(r, ms)])
        }
        Command::Export { source, construction, output } => {
            let v = jordan(source, cli.max_dim)?;
            let g = build(&v, *construction)?;
            let text = save(&AlgebraSpec::from_algebra(g.lie()));
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            return Ok(None);
        }
    };
    Ok(Some(batch))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(batch)) => {
            match cli.format {
                Format::Human => print!("{}", batch.to_human()),
                Format::Machine => print!("{}", batch.to_machine()),
            }
            if batch.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
