//! On-disk cache of computed reports, keyed by a hash of everything that
//! determines the result.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

pub fn key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    for p in parts {
        h.update([0u8]);
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Returns the cached value for `key`, or computes and stores it. Unreadable
/// entries are recomputed and overwritten.
pub fn cached<T, F>(dir: Option<&Path>, key: &str, compute: F) -> Result<T, CliError>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T, CliError>,
{
    let Some(dir) = dir else {
        return compute();
    };
    let file = path(dir, key);
    if let Ok(bytes) = fs::read(&file) {
        if let Ok(value) = serde_json::from_slice(&bytes) {
            return Ok(value);
        }
    }
    let value = compute()?;
    fs::create_dir_all(dir)?;
    // write then rename so concurrent readers never see a partial file
    let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&value)?)?;
    fs::rename(&tmp, &file)?;
    Ok(value)
}
