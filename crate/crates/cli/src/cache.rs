//! Optional on-disk result cache.
//!
//! A single JSON document with `"version": 1`. Documents with any other
//! version are ignored and left untouched on disk.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PrimeEntry {
    /// Klein zeta numerator, decimal coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<Vec<String>>,
    /// `a_p(f_0), a_p(f_1), a_p(f_2)` as coefficient vectors in `Z[ω]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ap: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    /// `"curve,q"` to point count.
    #[serde(default)]
    pub counts: BTreeMap<String, u64>,
    /// `"p"` to per-prime data.
    #[serde(default)]
    pub primes: BTreeMap<String, PrimeEntry>,
}

impl Default for CacheFile {
    fn default() -> Self {
        CacheFile {
            version: CACHE_VERSION,
            counts: BTreeMap::new(),
            primes: BTreeMap::new(),
        }
    }
}

/// A loaded cache plus the path it is written back to.
pub struct Cache {
    path: Option<PathBuf>,
    pub doc: CacheFile,
    pub verify: bool,
    writable: bool,
    dirty: bool,
}

#[derive(Debug)]
pub struct CacheMismatch(pub String);

impl Cache {
    pub fn disabled() -> Self {
        Cache {
            path: None,
            doc: CacheFile::default(),
            verify: false,
            writable: false,
            dirty: false,
        }
    }

    pub fn open(path: &Path, verify: bool) -> Result<Self, String> {
        let mut cache = Cache {
            path: Some(path.to_path_buf()),
            doc: CacheFile::default(),
            verify,
            writable: true,
            dirty: false,
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(format!("cannot read cache {}: {e}", path.display())),
        };
        let raw: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| format!("cache {} is not JSON: {e}", path.display()))?;
        let version = raw.get("version").and_then(|v| v.as_u64());
        if version != Some(CACHE_VERSION as u64) {
            eprintln!(
                "note: ignoring cache {} (version {:?}, expected {CACHE_VERSION})",
                path.display(),
                version
            );
            cache.writable = false;
            return Ok(cache);
        }
        cache.doc = serde_json::from_value(raw).map_err(|e| format!("malformed cache {}: {e}", path.display()))?;
        Ok(cache)
    }

    pub fn count_key(curve: &str, q: u64) -> String {
        format!("{curve},{q}")
    }

    pub fn count(&self, key: &str) -> Option<u64> {
        self.doc.counts.get(key).copied()
    }

    /// Stores a freshly computed count, checking it against any cached value.
    pub fn put_count(&mut self, key: String, value: u64) -> Result<(), CacheMismatch> {
        if let Some(old) = self.doc.counts.get(&key) {
            if *old != value {
                return Err(CacheMismatch(format!("count {key}: cached {old}, computed {value}")));
            }
            return Ok(());
        }
        self.doc.counts.insert(key, value);
        self.dirty = true;
        Ok(())
    }

    pub fn prime(&self, p: u64) -> Option<&PrimeEntry> {
        self.doc.primes.get(&p.to_string())
    }

    /// Merges fields into the entry for `p`; a conflicting field is a mismatch.
    pub fn merge_prime(&mut self, p: u64, update: PrimeEntry) -> Result<(), CacheMismatch> {
        let entry = self.doc.primes.entry(p.to_string()).or_default();
        fn merge<T: PartialEq + Clone + std::fmt::Debug>(
            slot: &mut Option<T>,
            new: Option<T>,
            what: &str,
            p: u64,
            dirty: &mut bool,
        ) -> Result<(), CacheMismatch> {
            match (slot.as_ref(), new) {
                (Some(old), Some(new)) if *old != new => Err(CacheMismatch(format!(
                    "{what} at p={p}: cached {old:?}, computed {new:?}"
                ))),
                (None, Some(new)) => {
                    *slot = Some(new);
                    *dirty = true;
                    Ok(())
                }
                _ => Ok(()),
            }
        }
        merge(&mut entry.numerator, update.numerator, "numerator", p, &mut self.dirty)?;
        merge(&mut entry.ap, update.ap, "a_p", p, &mut self.dirty)?;
        merge(&mut entry.verified, update.verified, "verified", p, &mut self.dirty)?;
        Ok(())
    }

    /// Writes the document back when something new was added.
    pub fn save(&self) -> Result<(), String> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.writable || !self.dirty {
            return Ok(());
        }
        let text = serde_json::to_string_pretty(&self.doc).expect("cache serializes");
        fs::write(path, text + "\n").map_err(|e| format!("cannot write cache {}: {e}", path.display()))
    }
}
