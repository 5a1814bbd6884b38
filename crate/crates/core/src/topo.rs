//! Combinatorial models of topology: a metric plus an adjacency graph.
//!
//! A map between models is admissible when every edge is sent to an edge
//! or collapsed to a point. Admissible maps stand in for continuous maps;
//! in particular they are constant on connected components whenever the
//! target is edgeless.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::bounds;
use crate::gh::{solve, DistanceResult, Instance, SearchConfig, SearchError};
use crate::metric::FiniteMetricSpace;
use crate::relations::{MapPair, RelationError};
use crate::search::Topology;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopoError {
    #[error("edge ({0}, {1}) is out of range for {2} points")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("self-loop at point {0}")]
    SelfLoop(usize),
    #[error("epsilon must be non-negative, got {0}")]
    NegativeEpsilon(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombinatorialSpace {
    metric: FiniteMetricSpace,
    adjacency: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

/// A connected component with its metric diameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub points: Vec<usize>,
    pub diameter: f64,
}

impl CombinatorialSpace {
    /// Edges are undirected; duplicates and either orientation are accepted.
    pub fn new(
        metric: FiniteMetricSpace,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TopoError> {
        let n = metric.len();
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(TopoError::EdgeOutOfRange(i, j, n));
            }
            if i == j {
                return Err(TopoError::SelfLoop(i));
            }
            set.insert((i.min(j), i.max(j)));
        }
        let mut adjacency = vec![false; n * n];
        for &(i, j) in &set {
            adjacency[i * n + j] = true;
            adjacency[j * n + i] = true;
        }
        Ok(CombinatorialSpace {
            metric,
            adjacency,
            edges: set.into_iter().collect(),
        })
    }

    /// The discrete model: no edges at all.
    pub fn edgeless(metric: FiniteMetricSpace) -> Self {
        CombinatorialSpace::new(metric, []).expect("no edges to check")
    }

    /// Path through the points in index order.
    pub fn path(metric: FiniteMetricSpace) -> Self {
        let n = metric.len();
        CombinatorialSpace::new(metric, (1..n).map(|i| (i - 1, i))).expect("consecutive indices")
    }

    pub fn metric(&self) -> &FiniteMetricSpace {
        &self.metric
    }

    pub fn len(&self) -> usize {
        self.metric.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sorted edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.len() + j]
    }

    pub(crate) fn adjacency(&self) -> &[bool] {
        &self.adjacency
    }

    /// Connected components ordered by smallest point.
    pub fn components(&self) -> Vec<Component> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut points = vec![start];
            while let Some(p) = stack.pop() {
                for q in 0..n {
                    if !seen[q] && self.adjacent(p, q) {
                        seen[q] = true;
                        stack.push(q);
                        points.push(q);
                    }
                }
            }
            points.sort_unstable();
            let diameter = set_diameter(&self.metric, &points);
            out.push(Component { points, diameter });
        }
        out
    }

    pub fn is_totally_disconnected(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Restriction to a subset of points, keeping edges inside it.
    pub fn subspace(&self, points: &[usize]) -> Result<Self, crate::metric::MetricError> {
        let metric = self.metric.subspace(points)?;
        let edges: Vec<(usize, usize)> = (0..points.len())
            .flat_map(|a| (a + 1..points.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adjacent(points[a], points[b]))
            .collect();
        Ok(CombinatorialSpace::new(metric, edges).expect("indices come from a valid subset"))
    }
}

pub(crate) fn set_diameter(metric: &FiniteMetricSpace, points: &[usize]) -> f64 {
    let mut diam: f64 = 0.0;
    for (k, &a) in points.iter().enumerate() {
        for &b in &points[k + 1..] {
            diam = diam.max(metric.d(a, b));
        }
    }
    diam
}

/// Graph joining distinct points at distance at most `epsilon`.
pub fn eps_graph(x: &FiniteMetricSpace, epsilon: f64) -> Result<CombinatorialSpace, TopoError> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(TopoError::NegativeEpsilon(epsilon));
    }
    let n = x.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| x.d(i, j) <= epsilon)
        .collect();
    CombinatorialSpace::new(x.clone(), edges)
}

/// Whether `f` sends every edge of `xc` to an edge of `yc` or to a point.
pub fn is_admissible(
    f: &[usize],
    xc: &CombinatorialSpace,
    yc: &CombinatorialSpace,
) -> Result<bool, RelationError> {
    if f.len() != xc.len() {
        return Err(RelationError::SizeMismatch(format!(
            "map is defined on {} points, domain has {}",
            f.len(),
            xc.len()
        )));
    }
    if let Some((position, &value)) = f.iter().enumerate().find(|(_, &v)| v >= yc.len()) {
        return Err(RelationError::MapOutOfRange {
            position,
            value,
            size: yc.len(),
        });
    }
    Ok(xc
        .edges()
        .iter()
        .all(|&(i, j)| f[i] == f[j] || yc.adjacent(f[i], f[j])))
}

/// Whether every admissible map `xc -> yc` is constant.
///
/// A non-constant admissible map exists exactly when both spaces have at
/// least two points and either `yc` has an edge (send everything onto its
/// two ends) or `xc` is disconnected (send two components to different
/// points), so the answer needs no enumeration.
pub fn is_incomparable(xc: &CombinatorialSpace, yc: &CombinatorialSpace) -> bool {
    xc.len() == 1 || yc.len() == 1 || (yc.is_totally_disconnected() && xc.is_connected())
}

/// Exact continuous distance between two models with the default
/// configuration.
pub fn ghc_exact(
    xc: &CombinatorialSpace,
    yc: &CombinatorialSpace,
) -> Result<DistanceResult, SearchError> {
    ghc_exact_with(xc, yc, &SearchConfig::default())
}

/// Minimum of `½·dis_map_pair` over pairs of admissible maps.
pub fn ghc_exact_with(
    xc: &CombinatorialSpace,
    yc: &CombinatorialSpace,
    config: &SearchConfig,
) -> Result<DistanceResult, SearchError> {
    let lower = bounds::ghc_lower_bounds(xc, yc);
    let admissible = |p: &MapPair| {
        is_admissible(&p.f, xc, yc).unwrap_or(false) && is_admissible(&p.g, yc, xc).unwrap_or(false)
    };
    solve(
        &Instance {
            x: xc.metric(),
            y: yc.metric(),
            topology: Some(Topology {
                x_adj: xc.adjacency(),
                y_adj: yc.adjacency(),
            }),
            seed_ok: &admissible,
        },
        &lower,
        config,
    )
}
