use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use weightsmith_cli::cache::{Cache, DEFAULT_DIR};
use weightsmith_cli::corpus::corpus_run;
use weightsmith_cli::spec::{parse_corpus, parse_group_spec};
use weightsmith_cli::{exit_code, pretty, run, CacheMode, Command, BUNDLED_CORPUS};
use weightsmith_core::group::{Caps, DEFAULT_MAX_ORDER};

/// Weights, blocks and the Clifford theory of weights for permutation groups.
#[derive(Parser)]
#[command(name = "weightsmith", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Cache directory (default: $WEIGHTSMITH_CACHE, then .weightsmith-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Recompute cached results and compare them byte for byte.
    #[arg(long, global = true)]
    verify_cache: bool,
    /// Do not read or write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest group order any computation may build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
}

#[derive(Args)]
struct Single {
    /// Group specification (JSON).
    spec: PathBuf,
    /// The prime p.
    #[arg(short)]
    p: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Character table.
    Table {
        /// Group specification (JSON).
        spec: PathBuf,
    },
    /// p-blocks with defects and Brauer character counts.
    Blocks(Single),
    /// Weight orbits with blocks and the blockwise counts.
    Weights(Single),
    /// Number of weights against the number of p-regular classes.
    Alperin(Single),
    /// Covering of weights for a normal pair.
    Cover(Single),
    /// Correspondent contexts and their counting checks for a normal pair.
    Dgn(Single),
    /// Audit of the sufficient conditions for a normal pair.
    Audit(Single),
    /// Every check on a corpus file (the bundled corpus by default).
    Corpus {
        file: Option<PathBuf>,
        /// Restrict to these primes.
        #[arg(short, value_delimiter = ',')]
        p: Vec<u64>,
    },
}

fn cache_mode(flags: &Flags) -> CacheMode {
    if flags.no_cache {
        return CacheMode::default();
    }
    let dir = flags
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("WEIGHTSMITH_CACHE").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
    CacheMode {
        cache: Some(Cache::new(dir)),
        verify: flags.verify_cache,
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let caps = Caps {
        max_order: cli.flags.max_order,
        ..Caps::default()
    };
    let mode = cache_mode(&cli.flags);
    let single = |cmd: Command, path: &PathBuf, p: u64| -> Result<(Value, bool)> {
        let spec = parse_group_spec(&read(path)?, caps.max_order).with_context(|| path.display().to_string())?;
        let out = run(cmd, &spec, p, &caps, &mode)?;
        Ok((out.value, out.failed))
    };
    match &cli.command {
        Cmd::Table { spec } => single(Command::Table, spec, 2),
        Cmd::Blocks(a) => single(Command::Blocks, &a.spec, a.p),
        Cmd::Weights(a) => single(Command::Weights, &a.spec, a.p),
        Cmd::Alperin(a) => single(Command::Alperin, &a.spec, a.p),
        Cmd::Cover(a) => single(Command::Cover, &a.spec, a.p),
        Cmd::Dgn(a) => single(Command::Dgn, &a.spec, a.p),
        Cmd::Audit(a) => single(Command::Audit, &a.spec, a.p),
        Cmd::Corpus { file, p } => {
            let text = match file {
                Some(f) => read(f)?,
                None => BUNDLED_CORPUS.to_string(),
            };
            for &q in p {
                weightsmith_cli::commands::check_prime(q)?;
            }
            let entries = parse_corpus(&text, caps.max_order)?;
            let primes = (!p.is_empty()).then_some(p.as_slice());
            let report = corpus_run(&entries, primes, &caps, &mode);
            let failed = report.failed();
            Ok((serde_json::to_value(report)?, failed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok((value, failed)) => {
            let json = value.to_string();
            if let Some(path) = &cli.flags.json_out {
                if let Err(e) = fs::write(path, format!("{json}\n")) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            let text = if cli.flags.pretty { pretty::render(&value) } else { format!("{json}\n") };
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: writing output: {e}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(if failed { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
