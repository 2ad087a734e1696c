//! JSON reading and writing for families, point lists and hypergraphs.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Point;

/// `{"points": [[rat, ...], ...]}`, the candidate sets fed to escape checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointList {
    pub points: Vec<Point>,
}

impl PointList {
    /// Fails unless every point has `dim` coordinates.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        match self.points.iter().find(|p| p.dim() != dim) {
            Some(p) => Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            }),
            None => Ok(()),
        }
    }
}

pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    from_json_str(&text)
}

/// Pretty JSON with a trailing newline. Object keys of free-form values are
/// sorted, so equal values always print the same bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}
