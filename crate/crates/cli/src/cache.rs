//! Content-addressed result cache on disk.

use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Stamped into every key; bump when results change.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+1");

pub const DEFAULT_DIR: &str = ".weightsmith-cache";
const LOCK_FILE: &str = "write.lock";
const STALE_LOCK: Duration = Duration::from_secs(60);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub command: String,
    /// Whether some check in the output failed.
    pub failed: bool,
    pub value: Value,
    pub timestamp: u64,
}

pub fn cache_key(encoding: &Value, command: &str, params: &Value) -> String {
    let material = serde_json::json!({
        "engine": ENGINE_VERSION,
        "command": command,
        "group": encoding,
        "params": params,
    });
    let digest = Sha256::digest(material.to_string().as_bytes());
    hex::encode(digest)
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

struct WriteLock(PathBuf);

impl Drop for WriteLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Missing or unreadable entries are treated as misses.
    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry)
    }

    fn lock(&self) -> Result<WriteLock> {
        let path = self.dir.join(LOCK_FILE);
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(WriteLock(path)),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    let stale = fs::metadata(&path)
                        .and_then(|m| m.modified())
                        .map(|t| t.elapsed().unwrap_or_default() > STALE_LOCK)
                        .unwrap_or(false);
                    if stale {
                        let _ = fs::remove_file(&path);
                    } else {
                        thread::sleep(Duration::from_millis(10));
                    }
                }
                Err(e) => return Err(e).with_context(|| format!("locking {}", path.display())),
            }
        }
    }

    pub fn put(&self, key: &str, command: &str, failed: bool, value: &Value) -> Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let entry = CacheEntry {
            key: key.to_string(),
            command: command.to_string(),
            failed,
            value: value.clone(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let _guard = self.lock()?;
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}
