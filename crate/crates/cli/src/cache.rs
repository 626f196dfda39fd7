//! On-disk memo of per-level dimension tables, keyed by a hash of
//! (algebra, charges, weight, level range).

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub struct DimCache {
    dir: PathBuf,
}

impl DimCache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(DimCache {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn get(&self, key: &str) -> Option<Vec<usize>> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let entry: (String, Vec<usize>) = serde_json::from_str(&text).ok()?;
        (entry.0 == key).then_some(entry.1)
    }

    pub fn put(&self, key: &str, dims: &[usize]) -> std::io::Result<()> {
        let text = serde_json::to_string(&(key, dims)).expect("plain values serialize");
        std::fs::write(self.path(key), text)
    }
}
