use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

/// Run record written next to every output set.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub out_dir: String,
    pub format: &'static str,
    pub parameters: serde_json::Value,
    pub files: Vec<String>,
}

/// Files staged in memory and written together once computation succeeds.
#[derive(Debug, Default)]
pub struct Staged {
    files: Vec<(String, String)>,
}

impl Staged {
    pub fn add(&mut self, name: impl Into<String>, contents: impl Into<String>) {
        self.files.push((name.into(), contents.into()));
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) {
        let mut text = serde_json::to_string_pretty(value).expect("serializable");
        text.push('\n');
        self.add(name, text);
    }

    pub fn names(&self) -> Vec<String> {
        self.files.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Appends `manifest.json` and writes everything under `dir`.
    pub fn commit(mut self, dir: &Path, mut manifest: RunManifest) -> Result<Vec<String>> {
        manifest.files = self.names();
        manifest.files.push("manifest.json".into());
        self.add_json("manifest.json", &manifest);
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, contents) in &self.files {
            let path = dir.join(name);
            fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(manifest.files)
    }
}
