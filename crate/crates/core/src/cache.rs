//! On-disk cache of [`GroupCensus`] results.
//!
//! One JSON file per dimension, carrying a header that names the file
//! format, the crate version and the generator set. A file whose header does
//! not match, or that fails to parse, is ignored with a warning and
//! overwritten by a fresh computation.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::synthesis::{enumerate_group, GroupCensus, SearchConfig, GENERATOR_SET_VERSION};
use crate::VERSION;

pub const CACHE_FORMAT: &str = "qudit-swap/group-census";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: String,
    generators: String,
    d: u32,
    census: GroupCensus,
}

#[derive(Clone, Debug)]
pub struct CensusCache {
    dir: PathBuf,
}

impl CensusCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CensusCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, d: u32) -> PathBuf {
        self.dir.join(format!("census-d{d}.json"))
    }

    /// Returns the cached census, or `None` if absent, corrupt or stale.
    pub fn load(&self, d: u32) -> Option<GroupCensus> {
        let path = self.path_for(d);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("ignoring unreadable cache {}: {e}", path.display());
                return None;
            }
        };
        let file: CacheFile = match serde_json::from_str(&text) {
            Ok(file) => file,
            Err(e) => {
                log::warn!("ignoring corrupt cache {}: {e}", path.display());
                return None;
            }
        };
        if file.format != CACHE_FORMAT
            || file.version != VERSION
            || file.generators != GENERATOR_SET_VERSION
            || file.d != d
            || file.census.d != d
        {
            log::warn!(
                "ignoring cache {} written for {} {} ({}, d = {})",
                path.display(),
                file.format,
                file.version,
                file.generators,
                file.d
            );
            return None;
        }
        Some(file.census)
    }

    pub fn store(&self, census: &GroupCensus) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            format: CACHE_FORMAT.to_string(),
            version: VERSION.to_string(),
            generators: GENERATOR_SET_VERSION.to_string(),
            d: census.d,
            census: census.clone(),
        };
        let value = serde_json::to_value(&file).map_err(io::Error::other)?;
        let mut text = serde_json::to_string_pretty(&value).map_err(io::Error::other)?;
        text.push('\n');
        fs::write(self.path_for(census.d), text)
    }
}

/// [`enumerate_group`], reading from and writing to `cache` when given.
pub fn enumerate_group_cached(
    d: u32,
    config: &SearchConfig,
    cache: Option<&CensusCache>,
) -> Result<GroupCensus> {
    if let Some(census) = cache.and_then(|c| c.load(d)) {
        return Ok(census);
    }
    let census = enumerate_group(d, config)?;
    if let Some(cache) = cache {
        if let Err(e) = cache.store(&census) {
            log::warn!("could not write cache {}: {e}", cache.path_for(d).display());
        }
    }
    Ok(census)
}
