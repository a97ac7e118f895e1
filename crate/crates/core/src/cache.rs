//! Append-only JSONL cache of oracle results.
//!
//! One record per line; re-queries hit the cache by (parts, r, k) with the
//! last matching line winning, so recomputed records simply append.

use crate::error::{Error, Result};
use crate::graph::MultipartiteGraph;
use crate::oracle::ExtremalResult;
use crate::text;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable overriding the default cache location.
pub const CACHE_ENV_VAR: &str = "TURAN_CACHE";

/// Default cache file name, relative to the working directory.
pub const DEFAULT_CACHE_FILE: &str = "turan-cache.jsonl";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheRecord {
    pub parts: Vec<usize>,
    pub r: usize,
    pub k: u64,
    pub max_edges: u64,
    /// Witness graph in the text exchange format.
    pub witness: String,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

impl CacheRecord {
    pub fn from_result(res: &ExtremalResult) -> Self {
        CacheRecord {
            parts: res.parts.sizes().to_vec(),
            r: res.r,
            k: res.k,
            max_edges: res.max_edges,
            witness: text::write_graph(&res.witness),
            nodes: res.nodes_explored,
            elapsed_ms: res.elapsed.as_millis() as u64,
        }
    }

    pub fn witness_graph(&self) -> Result<MultipartiteGraph> {
        text::parse_graph(&self.witness)
    }
}

/// Handle on a cache file. The file need not exist until the first append.
#[derive(Debug, Clone)]
pub struct OracleCache {
    path: PathBuf,
}

impl OracleCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        OracleCache { path: path.into() }
    }

    /// Resolve the cache path: explicit override, else `TURAN_CACHE`,
    /// else the default file in the working directory.
    pub fn resolve(explicit: Option<&Path>) -> Self {
        let path = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE));
        OracleCache { path }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Last stored record for (parts, r, k), if any. Parts are compared
    /// sorted, matching how results are stored. Unparseable lines are an
    /// error: a corrupt cache should be noticed, not skipped.
    pub fn lookup(&self, parts: &[usize], r: usize, k: u64) -> Result<Option<CacheRecord>> {
        let content = match std::fs::read_to_string(&self.path) {
            Ok(c) => c,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut sorted = parts.to_vec();
        sorted.sort_unstable();
        let mut hit = None;
        for (lineno, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: CacheRecord = serde_json::from_str(line).map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad cache record: {e}"),
            })?;
            if rec.parts == sorted && rec.r == r && rec.k == k {
                hit = Some(rec);
            }
        }
        Ok(hit)
    }

    pub fn append(&self, rec: &CacheRecord) -> Result<()> {
        let line = serde_json::to_string(rec)
            .map_err(|e| Error::Io(format!("cannot encode cache record: {e}")))?;
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{line}")?;
        Ok(())
    }
}
