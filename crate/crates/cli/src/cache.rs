use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use swd_core::hom::{CacheKey, HomCache};

/// Content-addressed JSON blobs under one directory. Entries are written to
/// a temporary file and renamed into place, so readers never see partial
/// writes.
pub struct DirCache {
    dir: PathBuf,
}

impl DirCache {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    fn canonical(key: &CacheKey) -> String {
        serde_json::to_string(key).expect("key serializes")
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        let digest = Sha256::digest(Self::canonical(key).as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }
}

impl HomCache for DirCache {
    fn load(&self, key: &CacheKey) -> Option<Value> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        let parsed: Option<Value> = serde_json::from_str::<Value>(&text)
            .ok()
            .filter(|v| v.get("key") == Some(&serde_json::to_value(key).expect("key serializes")))
            .and_then(|mut v| v.get_mut("value").map(Value::take));
        if parsed.is_none() {
            log::warn!("corrupt cache entry {}, recomputing", path.display());
        }
        parsed
    }

    fn store(&self, key: &CacheKey, value: &Value) {
        let path = self.path(key);
        let blob = json!({ "key": key, "value": value });
        let result = (|| -> std::io::Result<()> {
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            tmp.write_all(serde_json::to_string(&blob).expect("blob serializes").as_bytes())?;
            tmp.persist(&path).map_err(|e| e.error)?;
            Ok(())
        })();
        if let Err(err) = result {
            log::warn!("could not write cache entry {}: {err}", path.display());
        }
    }

    fn reject(&self, key: &CacheKey) {
        log::warn!("cache entry {} failed validation, recomputing", self.path(key).display());
    }
}
