//! Content-addressed JSON cache.
//!
//! Each entry is stored under the SHA-256 digest of its key and carries a
//! digest of its own payload; entries that fail to parse or whose digest does
//! not match are ignored and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    digest: String,
    payload: Value,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Canonical key text for `(module, operation, arguments)`.
    pub fn key(module: &str, operation: &str, args: &[(&str, String)]) -> String {
        let mut parts = vec![format!("module={module}"), format!("op={operation}")];
        let mut args: Vec<String> = args.iter().map(|(k, v)| format!("{k}={v}")).collect();
        args.sort();
        parts.extend(args);
        parts.join(";")
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", sha256_hex(key.as_bytes()))))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        let payload_text = serde_json::to_string(&entry.payload).ok()?;
        if entry.key != key || entry.digest != sha256_hex(payload_text.as_bytes()) {
            return None;
        }
        serde_json::from_value(entry.payload).ok()
    }

    /// Best-effort write; a failed write only costs a recomputation later.
    pub fn put<T: Serialize>(&self, key: &str, value: &T) {
        let Some(path) = self.path(key) else { return };
        let Ok(payload) = serde_json::to_value(value) else { return };
        let Ok(payload_text) = serde_json::to_string(&payload) else { return };
        let entry = Entry {
            key: key.to_string(),
            digest: sha256_hex(payload_text.as_bytes()),
            payload,
        };
        if let Some(parent) = path.parent() {
            let _ = fs::create_dir_all(parent);
        }
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, serde_json::to_vec(&entry).unwrap_or_default()).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }

    /// Cached value for `key`, computing and storing it on a miss.
    pub fn get_or_compute<T, E>(&self, key: &str, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(hit) = self.get(key) {
            return Ok(hit);
        }
        let value = compute()?;
        self.put(key, &value);
        Ok(value)
    }
}
