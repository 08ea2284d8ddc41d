//! Enumeration results, one JSON object per line, keyed by search parameters.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::PathBuf;

use mpl_core::classify::EnumerationResult;
use serde::{Deserialize, Serialize};

const FILE: &str = "enumerations.jsonl";

#[derive(Serialize, Deserialize)]
struct Line {
    key: String,
    result: EnumerationResult,
}

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Cache {
        Cache { path: dir.join(FILE) }
    }

    /// Latest stored result for `key`. Unreadable lines are skipped.
    pub fn get(&self, key: &str) -> Option<EnumerationResult> {
        let text = fs::read_to_string(&self.path).ok()?;
        text.lines()
            .filter_map(|l| serde_json::from_str::<Line>(l).ok())
            .rfind(|l| l.key == key)
            .map(|l| l.result)
    }

    pub fn put(&self, key: &str, result: &EnumerationResult) -> std::io::Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let line = serde_json::to_string(&Line {
            key: key.to_owned(),
            result: result.clone(),
        })?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")
    }
}
