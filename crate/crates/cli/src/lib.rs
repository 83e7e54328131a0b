//! Command-line front end for weightsmith: specifications, caching, commands
//! and the bundled corpus.

pub mod cache;
pub mod commands;
pub mod corpus;
pub mod pretty;
pub mod spec;

use std::fmt;

use anyhow::Result;
use serde_json::json;
use weightsmith_core::group::Caps;

use crate::cache::{cache_key, Cache};
use crate::commands::Outcome;
use crate::spec::{canonical_encoding, Parsed};

pub const BUNDLED_CORPUS: &str = include_str!("../corpus/corpus.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Table,
    Blocks,
    Weights,
    Alperin,
    Cover,
    Dgn,
    Audit,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Blocks => "blocks",
            Command::Weights => "weights",
            Command::Alperin => "alperin",
            Command::Cover => "cover",
            Command::Dgn => "dgn",
            Command::Audit => "audit",
        }
    }
}

/// Cache usage for one run.
#[derive(Clone, Debug, Default)]
pub struct CacheMode {
    pub cache: Option<Cache>,
    /// Recompute and compare against the stored entry.
    pub verify: bool,
}

/// A cached result differing from a fresh computation.
#[derive(Debug)]
pub struct CacheMismatch(pub String);

impl fmt::Display for CacheMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cache entry {} differs from a fresh computation", self.0)
    }
}

impl std::error::Error for CacheMismatch {}

fn compute(cmd: Command, spec: &Parsed, p: u64, caps: &Caps) -> Result<Outcome> {
    match cmd {
        Command::Table => commands::table(spec),
        Command::Blocks => commands::blocks(spec, p),
        Command::Weights => commands::weights(spec, p, caps),
        Command::Alperin => commands::alperin(spec, p, caps),
        Command::Cover => commands::cover(spec, p, caps),
        Command::Dgn => commands::dgn(spec, p, caps),
        Command::Audit => commands::audit(spec, p, caps),
    }
}

/// Runs a command through the cache.
pub fn run(cmd: Command, spec: &Parsed, p: u64, caps: &Caps, mode: &CacheMode) -> Result<Outcome> {
    let Some(cache) = &mode.cache else {
        return compute(cmd, spec, p, caps);
    };
    let params = match cmd {
        Command::Table => json!({"max_order": caps.max_order}),
        _ => json!({"p": p, "max_order": caps.max_order, "max_sylow": caps.max_sylow}),
    };
    let key = cache_key(&canonical_encoding(spec), cmd.name(), &params);
    let hit = cache.get(&key);
    if let Some(entry) = &hit {
        if !mode.verify {
            return Ok(Outcome {
                value: entry.value.clone(),
                failed: entry.failed,
            });
        }
    }
    let fresh = compute(cmd, spec, p, caps)?;
    match hit {
        Some(entry) if entry.value != fresh.value || entry.failed != fresh.failed => {
            Err(CacheMismatch(key).into())
        }
        Some(_) => Ok(fresh),
        None => {
            cache.put(&key, cmd.name(), fresh.failed, &fresh.value)?;
            Ok(fresh)
        }
    }
}

/// Process exit code for an error: 3 when a cap was exceeded, 2 for failed
/// consistency checks, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<weightsmith_core::Error>() {
            return match e {
                weightsmith_core::Error::CapExceeded { .. } => 3,
                weightsmith_core::Error::Internal(_) => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<CacheMismatch>().is_some() {
            return 2;
        }
    }
    1
}
