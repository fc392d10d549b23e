//! On-disk result cache: one JSON file per entry, keyed by a SHA-256 of the
//! operation, its arguments, the precision spec and the crate version.

use crate::error::{Error, Result};
use crate::eta::PrecisionSpec;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Bumped whenever cached payloads could change for the same key.
pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), "/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub payload: serde_json::Value,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Serialize)]
struct KeyMaterial<'a> {
    op: &'a str,
    args: &'a serde_json::Value,
    spec: Option<&'a PrecisionSpec>,
    version: &'a str,
}

pub fn cache_key(op: &str, args: &serde_json::Value, spec: Option<&PrecisionSpec>) -> String {
    let material = KeyMaterial {
        op,
        args,
        spec,
        version: ARTIFACT_VERSION,
    };
    let bytes = serde_json::to_vec(&material).expect("key material serializes");
    hex::encode(Sha256::digest(&bytes))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)
            .map_err(|e| Error::Io(format!("cache dir {}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> Option<CacheEntry> {
        let text = std::fs::read(self.path(key)).ok()?;
        match serde_json::from_slice::<CacheEntry>(&text) {
            Ok(e) if e.key == key => Some(e),
            Ok(_) => None,
            Err(err) => {
                log::warn!("ignoring unreadable cache entry {key}: {err}");
                None
            }
        }
    }

    /// Writes to a temporary file in the cache directory, then renames it into place.
    pub fn store(&self, key: &str, payload: serde_json::Value) -> Result<()> {
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = CacheEntry {
            key: key.to_string(),
            payload,
            created_at,
        };
        let bytes = serde_json::to_vec(&entry).map_err(|e| Error::Io(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key))
            .map_err(|e| Error::Io(format!("cache rename: {}", e.error)))?;
        Ok(())
    }

    /// Returns the cached result for the key, or computes and stores it.
    pub fn get_or_compute<T, F>(
        &self,
        op: &str,
        args: &serde_json::Value,
        spec: Option<&PrecisionSpec>,
        compute: F,
    ) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        let key = cache_key(op, args, spec);
        if let Some(entry) = self.load(&key) {
            match serde_json::from_value(entry.payload) {
                Ok(v) => {
                    log::debug!("cache hit {op} {key}");
                    return Ok(v);
                }
                Err(err) => log::warn!("cache entry {key} has the wrong shape: {err}"),
            }
        }
        let value = compute()?;
        let payload = serde_json::to_value(&value).map_err(|e| Error::Io(e.to_string()))?;
        if let Err(err) = self.store(&key, payload) {
            log::warn!("could not write cache entry {key}: {err}");
        }
        Ok(value)
    }
}

/// Runs `compute` through `cache` when one is configured.
pub fn cached<T, F>(
    cache: Option<&Cache>,
    op: &str,
    args: &serde_json::Value,
    spec: Option<&PrecisionSpec>,
    compute: F,
) -> Result<T>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T>,
{
    match cache {
        Some(c) => c.get_or_compute(op, args, spec, compute),
        None => compute(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn key_depends_on_every_part() {
        let spec = PrecisionSpec::default();
        let a = cache_key("family", &json!({"t": [1, 2, 3]}), Some(&spec));
        assert_eq!(a.len(), 64);
        assert_eq!(a, cache_key("family", &json!({"t": [1, 2, 3]}), Some(&spec)));
        assert_ne!(a, cache_key("string", &json!({"t": [1, 2, 3]}), Some(&spec)));
        assert_ne!(a, cache_key("family", &json!({"t": [1, 2, 4]}), Some(&spec)));
        assert_ne!(a, cache_key("family", &json!({"t": [1, 2, 3]}), Some(&PrecisionSpec::accelerated(7.0))));
    }

    #[test]
    fn hit_returns_identical_floats() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let vals = vec![0.1 + 0.2, std::f64::consts::PI, -1.6212257e-8, 5e-324, 1.7976931348623157e308];
        let args = json!({"n": 5});
        let mut calls = 0;
        let first: Vec<f64> = cache
            .get_or_compute("x", &args, None, || {
                calls += 1;
                Ok(vals.clone())
            })
            .unwrap();
        let second: Vec<f64> = cache
            .get_or_compute("x", &args, None, || {
                calls += 1;
                Ok(vec![])
            })
            .unwrap();
        assert_eq!(calls, 1);
        assert_eq!(first, vals);
        for (a, b) in second.iter().zip(&vals) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let args = json!(1);
        let key = cache_key("y", &args, None);
        std::fs::write(dir.path().join(format!("{key}.json")), b"{not json").unwrap();
        let v: u32 = cache.get_or_compute("y", &args, None, || Ok(7)).unwrap();
        assert_eq!(v, 7);
        assert!(cache.load(&key).is_some());
    }
}
