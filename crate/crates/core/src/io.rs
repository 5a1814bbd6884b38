//! JSON file formats for spaces and combinatorial models.
//!
//! A space is either a distance matrix or a point cloud:
//!
//! ```json
//! {"labels": ["a", "b"], "dist": [[0, 1], [1, 0]]}
//! {"points": [[0, 0], [3, 4]], "norm": "l2"}
//! ```
//!
//! A combinatorial model wraps a space and lists its edges:
//!
//! ```json
//! {"metric": {"dist": [[0, 1], [1, 0]]}, "edges": [[0, 1]]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::{FiniteMetricSpace, MetricError, Norm};
use crate::topo::{CombinatorialSpace, TopoError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Topo(#[from] TopoError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceJson {
    Matrix {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        dist: Vec<Vec<f64>>,
    },
    Points {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        points: Vec<Vec<f64>>,
        #[serde(default)]
        norm: Norm,
    },
}

impl SpaceJson {
    pub fn build(self) -> Result<FiniteMetricSpace, MetricError> {
        self.build_with_tolerance(crate::metric::TOLERANCE)
    }

    pub fn build_with_tolerance(self, tolerance: f64) -> Result<FiniteMetricSpace, MetricError> {
        let (space, labels) = match self {
            SpaceJson::Matrix { labels, dist } => (
                FiniteMetricSpace::validate_with_tolerance(dist, tolerance)?,
                labels,
            ),
            SpaceJson::Points {
                labels,
                points,
                norm,
            } => (FiniteMetricSpace::from_points(&points, norm)?, labels),
        };
        match labels {
            Some(labels) => space.with_labels(labels),
            None => Ok(space),
        }
    }
}

impl From<&FiniteMetricSpace> for SpaceJson {
    fn from(space: &FiniteMetricSpace) -> Self {
        SpaceJson::Matrix {
            labels: space.labels().map(<[String]>::to_vec),
            dist: space.to_matrix(),
        }
    }
}

impl Serialize for FiniteMetricSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpaceJson::from(self).serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinatorialJson {
    pub metric: SpaceJson,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

impl CombinatorialJson {
    pub fn build(self) -> Result<CombinatorialSpace, FormatError> {
        self.build_with_tolerance(crate::metric::TOLERANCE)
    }

    pub fn build_with_tolerance(self, tolerance: f64) -> Result<CombinatorialSpace, FormatError> {
        let metric = self.metric.build_with_tolerance(tolerance)?;
        Ok(CombinatorialSpace::new(
            metric,
            self.edges.into_iter().map(|[i, j]| (i, j)),
        )?)
    }
}

impl From<&CombinatorialSpace> for CombinatorialJson {
    fn from(space: &CombinatorialSpace) -> Self {
        CombinatorialJson {
            metric: space.metric().into(),
            edges: space.edges().iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl Serialize for CombinatorialSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CombinatorialJson::from(self).serialize(serializer)
    }
}

/// Parses a space from JSON text.
pub fn parse_space(text: &str) -> Result<FiniteMetricSpace, FormatError> {
    Ok(serde_json::from_str::<SpaceJson>(text)?.build()?)
}

/// Parses a combinatorial model from JSON text.
pub fn parse_combinatorial(text: &str) -> Result<CombinatorialSpace, FormatError> {
    serde_json::from_str::<CombinatorialJson>(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"labels":["a","b"],"dist":[[0.0,1.0],[1.0,0.0]]}"#;
        let space = parse_space(text).unwrap();
        assert_eq!(space.label(1), "b");
        assert_eq!(serde_json::to_string(&space).unwrap(), text);
    }

    #[test]
    fn point_cloud() {
        let space = parse_space(r#"{"points":[[0,0],[3,4]]}"#).unwrap();
        assert_eq!(space.d(0, 1), 5.0);
        let space = parse_space(r#"{"points":[[0,0],[3,4]],"norm":"l1"}"#).unwrap();
        assert_eq!(space.d(0, 1), 7.0);
    }

    #[test]
    fn invalid_matrix_reports_axiom() {
        let err = parse_space(r#"{"dist":[[0,1],[2,0]]}"#).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Metric(MetricError::Asymmetric(0, 1))
        ));
        assert!(matches!(parse_space("{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn combinatorial_round_trip() {
        let text = r#"{"metric":{"dist":[[0.0,1.0],[1.0,0.0]]},"edges":[[0,1]]}"#;
        let model = parse_combinatorial(text).unwrap();
        assert!(model.adjacent(1, 0));
        assert_eq!(serde_json::to_string(&model).unwrap(), text);
        let bad = parse_combinatorial(r#"{"metric":{"dist":[[0,1],[1,0]]},"edges":[[0,5]]}"#);
        assert!(matches!(
            bad,
            Err(FormatError::Topo(TopoError::EdgeOutOfRange(0, 5, 2)))
        ));
    }
}
