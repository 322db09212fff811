//! Persistent memo table shared by the ψ and Hodge engines.
//!
//! File layout (line oriented, UTF-8):
//!
//! ```text
//! version 1
//! 1:1 1/24
//! 2:4 1/1152
//! H:1:1:psi=0:lam=1 1/24
//! ```
//!
//! Lines after the header are `<key> <value>` sorted by key. Pure ψ keys are
//! `g:d1,d2,...`; Hodge keys live in the `H:` namespace. Values use the
//! canonical `p/q` form.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::RwLock;

use crate::algebra::ExactRational;
use crate::error::{Error, Result};
use crate::hodge::HodgeKey;
use crate::psi::PsiKey;

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub psi_keys: usize,
    pub hodge_keys: usize,
}

/// Concurrent, insert-only table. Inserting an existing key with the same
/// value is a no-op; with a different value it is a [`Error::CacheConflict`].
#[derive(Default)]
pub struct IntegralCache {
    psi: RwLock<HashMap<PsiKey, ExactRational>>,
    hodge: RwLock<HashMap<HodgeKey, ExactRational>>,
}

fn insert_checked<K>(
    map: &RwLock<HashMap<K, ExactRational>>,
    key: K,
    value: ExactRational,
) -> Result<()>
where
    K: std::hash::Hash + Eq + std::fmt::Display,
{
    let mut guard = map.write().expect("cache lock poisoned");
    if let Some(stored) = guard.get(&key) {
        if *stored != value {
            return Err(Error::CacheConflict {
                key: key.to_string(),
                stored: stored.to_string(),
                new: value.to_string(),
            });
        }
        return Ok(());
    }
    guard.insert(key, value);
    Ok(())
}

enum Entry {
    Psi(PsiKey),
    Hodge(HodgeKey),
}

fn parse_entry(line: &str, lineno: usize) -> Result<(Entry, ExactRational)> {
    let bad = |why: &str| Error::CacheFormat(format!("line {lineno}: {why}: {line:?}"));
    let (key, value) = line.split_once(' ').ok_or_else(|| bad("expected `<key> <value>`"))?;
    let value: ExactRational = value.parse().map_err(|_| bad("non-canonical value"))?;
    let entry = if key.starts_with("H:") {
        Entry::Hodge(key.parse().map_err(|_| bad("malformed Hodge key"))?)
    } else {
        Entry::Psi(key.parse().map_err(|_| bad("malformed psi key"))?)
    };
    Ok((entry, value))
}

impl IntegralCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_psi(&self, key: &PsiKey) -> Option<ExactRational> {
        self.psi.read().expect("cache lock poisoned").get(key).cloned()
    }

    pub fn insert_psi(&self, key: PsiKey, value: ExactRational) -> Result<()> {
        insert_checked(&self.psi, key, value)
    }

    pub fn get_hodge(&self, key: &HodgeKey) -> Option<ExactRational> {
        self.hodge.read().expect("cache lock poisoned").get(key).cloned()
    }

    pub fn insert_hodge(&self, key: HodgeKey, value: ExactRational) -> Result<()> {
        insert_checked(&self.hodge, key, value)
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            psi_keys: self.psi.read().expect("cache lock poisoned").len(),
            hodge_keys: self.hodge.read().expect("cache lock poisoned").len(),
        }
    }

    pub fn clear(&self) {
        self.psi.write().expect("cache lock poisoned").clear();
        self.hodge.write().expect("cache lock poisoned").clear();
    }

    /// Deterministic text form: header, then entries sorted by key string.
    pub fn to_text(&self) -> String {
        let mut lines: BTreeMap<String, String> = BTreeMap::new();
        for (k, v) in self.psi.read().expect("cache lock poisoned").iter() {
            lines.insert(k.to_string(), v.to_string());
        }
        for (k, v) in self.hodge.read().expect("cache lock poisoned").iter() {
            lines.insert(k.to_string(), v.to_string());
        }
        let mut out = format!("version {CACHE_VERSION}\n");
        for (k, v) in lines {
            out.push_str(&k);
            out.push(' ');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    /// Parses a cache file into a fresh table. Any malformed line, version
    /// mismatch or self-conflicting key rejects the whole file.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::CacheFormat("empty file".into()))?;
        let version = header
            .strip_prefix("version ")
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(|| Error::CacheFormat(format!("bad header {header:?}")))?;
        if version != CACHE_VERSION {
            return Err(Error::CacheFormat(format!(
                "unsupported cache version {version} (expected {CACHE_VERSION})"
            )));
        }
        let cache = Self::new();
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            match parse_entry(line, i + 2)? {
                (Entry::Psi(k), v) => cache.insert_psi(k, v)?,
                (Entry::Hodge(k), v) => cache.insert_hodge(k, v)?,
            }
        }
        Ok(cache)
    }

    /// Merges `other` into `self`. Conflicts are detected before anything is
    /// written, so a failed merge leaves `self` untouched.
    pub fn merge(&self, other: &IntegralCache) -> Result<()> {
        let other_psi = other.psi.read().expect("cache lock poisoned");
        let other_hodge = other.hodge.read().expect("cache lock poisoned");
        let mut psi = self.psi.write().expect("cache lock poisoned");
        let mut hodge = self.hodge.write().expect("cache lock poisoned");
        for (k, v) in other_psi.iter() {
            if let Some(stored) = psi.get(k).filter(|s| *s != v) {
                return Err(Error::CacheConflict {
                    key: k.to_string(),
                    stored: stored.to_string(),
                    new: v.to_string(),
                });
            }
        }
        for (k, v) in other_hodge.iter() {
            if let Some(stored) = hodge.get(k).filter(|s| *s != v) {
                return Err(Error::CacheConflict {
                    key: k.to_string(),
                    stored: stored.to_string(),
                    new: v.to_string(),
                });
            }
        }
        for (k, v) in other_psi.iter() {
            psi.entry(k.clone()).or_insert_with(|| v.clone());
        }
        for (k, v) in other_hodge.iter() {
            hodge.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&fs::read_to_string(path)?)
    }

    /// Writes to a sibling temp file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_text().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
