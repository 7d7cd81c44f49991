use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// What a cached result depends on.
#[derive(Debug, Clone, Serialize)]
pub struct CacheKey<'a> {
    pub engine: &'a str,
    pub lie_type: &'a str,
    pub spec: String,
    pub gamma: Option<Vec<u32>>,
    pub parameters: serde_json::Value,
}

impl CacheKey<'_> {
    pub fn digest(&self) -> String {
        let text = serde_json::to_string(self).expect("cache keys serialize");
        format!("{:x}", Sha256::digest(text.as_bytes()))
    }
}

/// Results stored as `<dir>/<sha256 of key>.json`; disabled without a directory.
#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> CliResult<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d)
                .map_err(|e| CliError::Usage(format!("cache directory {}: {e}", d.display())))?;
        }
        Ok(Cache { dir })
    }

    fn path(&self, key: &CacheKey<'_>) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", key.digest())))
    }

    pub fn get_or_compute<T, F>(&self, key: &CacheKey<'_>, compute: F) -> CliResult<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> CliResult<T>,
    {
        let Some(path) = self.path(key) else {
            return compute();
        };
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(v) = serde_json::from_str(&text) {
                return Ok(v);
            }
        }
        let value = compute()?;
        store(
            &path,
            &serde_json::to_string(&value).expect("results serialize"),
        )?;
        Ok(value)
    }
}

fn store(path: &Path, text: &str) -> CliResult<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
