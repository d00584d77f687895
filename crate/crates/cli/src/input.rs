//! Polygon documents and sample streams.

use std::io::Read;
use std::path::Path;

use polycauchy::{LscParams, PlanePoint, PlanePolygon};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LscDoc {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub rho: f64,
}

/// `{"vertices": [[x1, x2], ...], "lsc": {"a1": .., "a2": .., "b1": .., "b2": .., "rho": ..}}`
/// with `lsc` optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    pub vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lsc: Option<LscDoc>,
}

impl PolygonFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("polygon document: {e}")))?;
        if doc.vertices.len() < 3 {
            return Err(CliError::Usage(format!(
                "polygon document needs at least 3 vertices, got {}",
                doc.vertices.len()
            )));
        }
        Ok(doc)
    }

    pub fn polygon(&self) -> Result<PlanePolygon, CliError> {
        let coords: Vec<(f64, f64)> = self.vertices.iter().map(|v| (v[0], v[1])).collect();
        Ok(PlanePolygon::from_coords(&coords)?)
    }

    /// The command-line parameters win over the document's.
    pub fn params(&self, flag: Option<[f64; 5]>) -> Result<Option<LscParams>, CliError> {
        let raw = flag.or(self.lsc.map(|d| [d.a1, d.a2, d.b1, d.b2, d.rho]));
        Ok(match raw {
            Some([a1, a2, b1, b2, rho]) => Some(LscParams::new(a1, a2, b1, b2, rho)?),
            None => None,
        })
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
    }
}

/// Parses header-less `x1,x2` rows; blank lines are skipped.
pub fn parse_samples(text: &str) -> Result<Vec<PlanePoint>, CliError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let bad = |why: String| CliError::Usage(format!("sample line {}: {why}", i + 1));
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| bad("expected `x1,x2`".into()))?;
            let x1 = a.trim().parse::<f64>().map_err(|e| bad(e.to_string()))?;
            let x2 = b.trim().parse::<f64>().map_err(|e| bad(e.to_string()))?;
            PlanePoint::new(x1, x2).map_err(|e| bad(e.to_string()))
        })
        .collect()
}
