//! On-disk result cache: one JSON record per key.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::record::ResultRecord;

pub const ENV_VAR: &str = "MAXCLASS_CACHE";

/// Everything that determines a record.
#[derive(Debug, Clone, Serialize)]
pub struct CacheKey<'a> {
    pub command: &'a str,
    pub algebra: String,
    pub mode: String,
    pub degree: usize,
    pub grade: i64,
    pub cap: Option<u32>,
}

impl CacheKey<'_> {
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("keys serialize");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

pub enum Lookup {
    Hit(ResultRecord),
    Miss,
    /// The file exists but does not hold a valid record.
    Corrupt(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `MAXCLASS_CACHE` wins over the flag; no directory means no caching.
    pub fn resolve(flag: Option<&Path>) -> Option<Cache> {
        let dir = std::env::var_os(ENV_VAR)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| flag.map(Path::to_path_buf))?;
        Some(Cache { dir })
    }

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    pub fn load(&self, key: &CacheKey) -> Lookup {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match ResultRecord::from_json(&text) {
            Ok(r) => Lookup::Hit(r),
            Err(e) => Lookup::Corrupt(e),
        }
    }

    /// Writes through a temporary file and renames, so readers never see a
    /// partial record.
    pub fn store(&self, key: &CacheKey, record: &ResultRecord) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(key);
        let tmp = self.dir.join(format!(".{}.{}.tmp", key.digest(), std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(record.to_json().as_bytes())?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Dimension;

    fn key(cap: Option<u32>) -> CacheKey<'static> {
        CacheKey {
            command: "dims",
            algebra: "m0".into(),
            mode: "trivial".into(),
            degree: 2,
            grade: 7,
            cap,
        }
    }

    #[test]
    fn cap_changes_the_key() {
        assert_ne!(key(Some(30)).digest(), key(Some(31)).digest());
        assert_ne!(key(None).digest(), key(Some(30)).digest());
        assert_eq!(key(Some(30)).digest(), key(Some(30)).digest());
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let record = ResultRecord {
            algebra: "m0".into(),
            mode: "trivial".into(),
            degree: 2,
            grade: 7,
            cap: None,
            dimension: Dimension::Finite(0),
            basis: vec![],
        };
        assert!(matches!(cache.load(&key(None)), Lookup::Miss));
        cache.store(&key(None), &record).unwrap();
        match cache.load(&key(None)) {
            Lookup::Hit(r) => assert_eq!(r, record),
            _ => panic!("expected a hit"),
        }
        fs::write(cache.path(&key(None)), "{ not json").unwrap();
        assert!(matches!(cache.load(&key(None)), Lookup::Corrupt(_)));
    }
}
