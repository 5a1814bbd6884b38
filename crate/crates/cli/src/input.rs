//! Reading spaces from disk.
//!
//! An input reference is a path, optionally followed by `#name` to pick a
//! space or subset out of a file written by `ghdist fixture`.

use std::fs;

use ghdist::{
    CombinatorialJson, CombinatorialSpace, FiniteMetricSpace, FormatError, Norm, SpaceJson,
};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn hex_digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// A parsed input file with its digest.
pub struct Source {
    pub reference: String,
    pub path: String,
    pub json: Value,
    pub digest: InputDigest,
}

impl Source {
    pub fn read(reference: &str) -> Result<Self, CliError> {
        let (path, _) = split_reference(reference);
        let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        let mut json: Value =
            serde_json::from_slice(&bytes).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
        // A saved `ghdist fixture` report carries the fixture under "results".
        if json.pointer("/results/spaces").is_some() {
            json = json["results"].take();
        }
        Ok(Source {
            reference: reference.to_string(),
            path: path.to_string(),
            digest: InputDigest {
                path: path.to_string(),
                sha256: hex_digest(&bytes),
            },
            json,
        })
    }

    fn name(&self) -> Option<&str> {
        split_reference(&self.reference).1
    }

    fn is_fixture(&self) -> bool {
        self.json.get("spaces").is_some()
    }

    fn fixture_entry(&self, list: &str) -> Result<Option<&Value>, CliError> {
        let name = self.name().ok_or_else(|| {
            CliError::Usage(format!(
                "{} holds a fixture; pick a space with {}#<name>",
                self.path, self.path
            ))
        })?;
        Ok(self
            .json
            .get(list)
            .and_then(Value::as_array)
            .and_then(|items| items.iter().find(|item| item["name"] == name)))
    }

    /// The input as a model, and whether the file listed edges. Plain
    /// spaces come back edgeless.
    pub fn model(&self, tolerance: f64) -> Result<(CombinatorialSpace, bool), CliError> {
        if self.is_fixture() {
            let entry = self.fixture_entry("spaces")?.ok_or_else(|| {
                CliError::Usage(format!(
                    "no space named {:?} in {}",
                    self.name().unwrap_or(""),
                    self.path
                ))
            })?;
            return Ok((self.combinatorial(&entry["space"], tolerance)?, true));
        }
        if self.json.get("metric").is_some() {
            return Ok((self.combinatorial(&self.json, tolerance)?, true));
        }
        let space = self.space_json(&self.json)?;
        let space = space
            .build_with_tolerance(tolerance)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", self.path)))?;
        Ok((CombinatorialSpace::edgeless(space), false))
    }

    pub fn space(&self, tolerance: f64) -> Result<FiniteMetricSpace, CliError> {
        Ok(self.model(tolerance)?.0.metric().clone())
    }

    fn space_json(&self, value: &Value) -> Result<SpaceJson, CliError> {
        serde_json::from_value(value.clone())
            .map_err(|e| CliError::Parse(format!("{}: {e}", self.path)))
    }

    fn combinatorial(&self, value: &Value, tolerance: f64) -> Result<CombinatorialSpace, CliError> {
        let json: CombinatorialJson = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Parse(format!("{}: {e}", self.path)))?;
        json.build_with_tolerance(tolerance).map_err(|e| match e {
            FormatError::Json(e) => CliError::Parse(format!("{}: {e}", self.path)),
            other => CliError::Invalid(format!("{}: {other}", self.path)),
        })
    }

    /// The input as a set of points inside some ambient space, for
    /// Hausdorff distances.
    pub fn placed(&self) -> Result<Placed, CliError> {
        if self.is_fixture() {
            let entry = self.fixture_entry("subsets")?.ok_or_else(|| {
                CliError::Usage(format!(
                    "no subset named {:?} in {}",
                    self.name().unwrap_or(""),
                    self.path
                ))
            })?;
            let points = serde_json::from_value(entry["points"].clone())
                .map_err(|e| CliError::Parse(format!("{}: {e}", self.path)))?;
            let of = entry["of"].as_str().unwrap_or_default().to_string();
            return Ok(Placed::Subset {
                file: self.path.clone(),
                of,
                points,
            });
        }
        match self.space_json(&self.json)? {
            SpaceJson::Points { points, norm, .. } => Ok(Placed::Cloud { points, norm }),
            SpaceJson::Matrix { .. } => Err(CliError::Usage(format!(
                "{}: a distance matrix has no ambient space; use a point cloud or a fixture subset",
                self.path
            ))),
        }
    }

    /// The ambient model a fixture subset lives in.
    pub fn ambient(&self, of: &str, tolerance: f64) -> Result<CombinatorialSpace, CliError> {
        let renamed = Source {
            reference: format!("{}#{of}", self.path),
            path: self.path.clone(),
            json: self.json.clone(),
            digest: self.digest.clone(),
        };
        Ok(renamed.model(tolerance)?.0)
    }
}

pub enum Placed {
    Cloud {
        points: Vec<Vec<f64>>,
        norm: Norm,
    },
    Subset {
        file: String,
        of: String,
        points: Vec<usize>,
    },
}

fn split_reference(reference: &str) -> (&str, Option<&str>) {
    match reference.rsplit_once('#') {
        Some((path, name)) => (path, Some(name)),
        None => (reference, None),
    }
}
