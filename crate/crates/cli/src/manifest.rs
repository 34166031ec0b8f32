use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Provenance record attached to every artifact a command writes.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub versions: BTreeMap<&'static str, &'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub outputs: Vec<String>,
}

pub struct Run {
    command: String,
    parameters: Value,
    seed: u64,
    started: Instant,
    outputs: Vec<String>,
}

impl Run {
    pub fn new(command: &str, parameters: &impl Serialize, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            parameters: serde_json::to_value(parameters).unwrap_or(Value::Null),
            seed,
            started: Instant::now(),
            outputs: Vec::new(),
        }
    }

    /// Registers a file that this run will write.
    pub fn declare_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.started.elapsed().as_millis() as u64
    }

    fn manifest(&self, timed: bool) -> RunManifest {
        let mut versions = BTreeMap::new();
        versions.insert("hyperdom", hyperdom_version());
        versions.insert("hyperdom-cli", env!("CARGO_PKG_VERSION"));
        RunManifest {
            command: self.command.clone(),
            parameters: self.parameters.clone(),
            seed: self.seed,
            versions,
            elapsed_ms: timed.then(|| self.elapsed_ms()),
            outputs: self.outputs.clone(),
        }
    }

    /// One `#` comment line; timing is left out so text artifacts are reproducible byte for byte.
    pub fn comment_header(&self) -> String {
        let m = serde_json::to_string(&self.manifest(false)).expect("manifest serializes");
        format!("# manifest: {m}\n")
    }

    /// Wraps a JSON report: adds the schema tag, elapsed time and the manifest.
    pub fn finish_json(&self, schema: &str, body: Value) -> Value {
        let mut obj = match body {
            Value::Object(map) => map,
            other => {
                let mut map = serde_json::Map::new();
                map.insert("result".into(), other);
                map
            }
        };
        obj.insert("schema".into(), json!(schema));
        obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
        obj.insert("elapsed_ms".into(), json!(self.elapsed_ms()));
        obj.insert(
            "manifest".into(),
            serde_json::to_value(self.manifest(true)).expect("manifest serializes"),
        );
        Value::Object(obj)
    }
}

fn hyperdom_version() -> &'static str {
    // both crates are versioned in lockstep
    env!("CARGO_PKG_VERSION")
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn emit_json(path: Option<&PathBuf>, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(path, &text)
}
