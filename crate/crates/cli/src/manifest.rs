//! Run manifests: enough to re-run a sample command and prove the output
//! is bit-identical.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::commands::{run_recorded, Output};
use crate::error::{status, CliError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Command line after the program name, without `--manifest`.
    pub arguments: Vec<String>,
    pub seed: u64,
    pub samples: u64,
    pub version: String,
    /// SHA-256 of the polygon document.
    pub input_digest: String,
    /// SHA-256 of everything written to standard output.
    pub output_digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(
        command: &str,
        arguments: Vec<String>,
        seed: u64,
        samples: u64,
        input: &str,
        output: &[u8],
    ) -> Self {
        Self {
            command: command.into(),
            arguments,
            seed,
            samples,
            version: env!("CARGO_PKG_VERSION").into(),
            input_digest: sha256_hex(input.as_bytes()),
            output_digest: sha256_hex(output),
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("manifest: {e}")))
    }
}

/// Drops `--manifest <path>` and `--manifest=<path>` from a command line.
pub fn strip_manifest_flag(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--manifest" {
            it.next();
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn replay(path: &Path, json: bool) -> Result<Output, CliError> {
    let m = RunManifest::read(path)?;
    let rerun = run_recorded(&m.arguments)?;
    let actual = sha256_hex(&rerun.bytes);
    let reproduced = rerun.status == status::SUCCESS && actual == m.output_digest;
    let text = if reproduced {
        format!("reproduced {actual}\n")
    } else {
        format!("mismatch expected {} got {actual}\n", m.output_digest)
    };
    let doc = json!({
        "reproduced": reproduced,
        "expected_digest": m.output_digest,
        "actual_digest": actual,
        "recorded_version": m.version,
    });
    let bytes = if json { format!("{doc}\n") } else { text }.into_bytes();
    Ok(Output {
        bytes,
        status: if reproduced {
            status::SUCCESS
        } else {
            status::VERIFICATION
        },
    })
}
