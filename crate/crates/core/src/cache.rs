//! On-disk cache of plethysm decompositions.
//!
//! One file per (λ,μ) pair:
//! ```text
//! plethysm-cache v1
//! [4,2] [3,1]
//! η<TAB>multiplicity          (one line per constituent, sorted)
//! ```
//! Writes go through a temp file in the same directory followed by an
//! atomic rename, so concurrent readers never observe a partial file.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::partitions::Partition;
use crate::symfunc::{self, SymFuncError};

pub const CACHE_FORMAT: &str = "plethysm-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("io error at {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed cache file {0}")]
    Malformed(PathBuf),
    #[error(transparent)]
    SymFunc(#[from] SymFuncError),
}

pub struct PlethysmCache {
    dir: PathBuf,
}

impl PlethysmCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PlethysmCache { dir: dir.into() }
    }

    pub fn path_for(&self, lam: &Partition, mu: &Partition) -> PathBuf {
        self.dir.join(format!("pleth_{lam}_{mu}.txt"))
    }

    pub fn load(
        &self,
        lam: &Partition,
        mu: &Partition,
    ) -> Result<Option<Vec<(Partition, u64)>>, CacheError> {
        let path = self.path_for(lam, mu);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CacheError::Io { path, source: e }),
        };
        let mut lines = text.lines();
        if lines.next() != Some(CACHE_FORMAT) {
            return Err(CacheError::Malformed(path));
        }
        if lines.next() != Some(&format!("{lam} {mu}")) {
            return Err(CacheError::Malformed(path));
        }
        let mut out = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let (eta, mult) = line
                .split_once('\t')
                .ok_or_else(|| CacheError::Malformed(path.clone()))?;
            let eta =
                Partition::from_str(eta).map_err(|_| CacheError::Malformed(path.clone()))?;
            let mult: u64 = mult
                .parse()
                .map_err(|_| CacheError::Malformed(path.clone()))?;
            out.push((eta, mult));
        }
        Ok(Some(out))
    }

    pub fn store(
        &self,
        lam: &Partition,
        mu: &Partition,
        constituents: &[(Partition, u64)],
    ) -> Result<(), CacheError> {
        fs::create_dir_all(&self.dir).map_err(|e| CacheError::Io {
            path: self.dir.clone(),
            source: e,
        })?;
        let path = self.path_for(lam, mu);
        let render = render_cache(lam, mu, constituents);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CacheError::Io {
            path: self.dir.clone(),
            source: e,
        })?;
        tmp.write_all(render.as_bytes()).map_err(|e| CacheError::Io {
            path: path.clone(),
            source: e,
        })?;
        tmp.persist(&path).map_err(|e| CacheError::Io {
            path,
            source: e.error,
        })?;
        Ok(())
    }

    /// Cached plethysm: hit returns the stored decomposition, miss computes,
    /// stores, and returns it.
    pub fn plethysm(
        &self,
        lam: &Partition,
        mu: &Partition,
    ) -> Result<Vec<(Partition, u64)>, CacheError> {
        if let Some(hit) = self.load(lam, mu)? {
            return Ok(hit);
        }
        let fresh = symfunc::plethysm(lam, mu)?;
        self.store(lam, mu, &fresh)?;
        Ok(fresh)
    }
}

pub fn render_cache(lam: &Partition, mu: &Partition, constituents: &[(Partition, u64)]) -> String {
    let mut s = String::new();
    s.push_str(CACHE_FORMAT);
    s.push('\n');
    s.push_str(&format!("{lam} {mu}\n"));
    for (eta, mult) in constituents {
        s.push_str(&format!("{eta}\t{mult}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn roundtrip_and_byte_identity() {
        let dir = tempfile::tempdir().unwrap();
        let cache = PlethysmCache::new(dir.path());
        let (lam, mu) = (p(&[2, 1]), p(&[1, 1]));
        assert!(cache.load(&lam, &mu).unwrap().is_none());
        let first = cache.plethysm(&lam, &mu).unwrap();
        let bytes1 = fs::read(cache.path_for(&lam, &mu)).unwrap();
        // hit path returns identical data; re-render is byte-identical
        let second = cache.plethysm(&lam, &mu).unwrap();
        assert_eq!(first, second);
        assert_eq!(bytes1, render_cache(&lam, &mu, &second).into_bytes());
    }

    #[test]
    fn malformed_file_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = PlethysmCache::new(dir.path());
        let (lam, mu) = (p(&[2]), p(&[2]));
        fs::create_dir_all(dir.path()).unwrap();
        fs::write(cache.path_for(&lam, &mu), "bogus\n").unwrap();
        assert!(matches!(
            cache.load(&lam, &mu),
            Err(CacheError::Malformed(_))
        ));
    }
}
