//! Finite metric spaces and their numeric invariants.
//!
//! A [`FiniteMetricSpace`] is a validated square distance matrix. Every other
//! module in the crate consumes it. Construction goes through
//! [`FiniteMetricSpace::validate`] (or one of the ingestion helpers), so the
//! metric axioms can be relied upon everywhere downstream.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Comparison tolerance used for the triangle inequality and other
/// approximate equalities throughout the crate.
pub const TOLERANCE: f64 = 1e-9;

/// Violations reported when building a metric space.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("a metric space needs at least one point")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({0}, {1}) is not a finite number")]
    NonFinite(usize, usize),
    #[error("diagonal entry ({0}, {0}) is not zero")]
    NonzeroDiagonal(usize),
    #[error("entries ({0}, {1}) and ({1}, {0}) differ")]
    Asymmetric(usize, usize),
    #[error("off-diagonal entry ({0}, {1}) is not positive")]
    NegativeOrZeroOffDiagonal(usize, usize),
    #[error("triangle inequality fails: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),
    #[error("got {got} labels for {points} points")]
    LabelCount { got: usize, points: usize },
    #[error("scale factor {0} is negative")]
    NegativeScale(f64),
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("subset is empty")]
    EmptySubset,
    #[error("point index {index} out of range for a space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("point index {0} listed twice")]
    DuplicateIndex(usize),
}

/// Norm used by [`FiniteMetricSpace::from_points`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    #[default]
    L2,
    Linf,
}

impl Norm {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(p, q)| (p - q).abs());
        match self {
            Norm::L1 => diffs.sum(),
            Norm::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Linf => diffs.fold(0.0, f64::max),
        }
    }
}

/// A finite metric space stored as a dense row-major distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl FiniteMetricSpace {
    /// Validates `matrix` against the metric axioms.
    ///
    /// Checks run in a fixed order (shape, finiteness, diagonal, symmetry,
    /// positivity, triangle inequality) and the first failure is reported
    /// together with the indices that witness it.
    pub fn validate(matrix: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        Self::validate_with_tolerance(matrix, TOLERANCE)
    }

    /// Same as [`validate`](Self::validate) with a caller-chosen slack for
    /// the triangle inequality.
    pub fn validate_with_tolerance(
        matrix: Vec<Vec<f64>>,
        tolerance: f64,
    ) -> Result<Self, MetricError> {
        let n = matrix.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        let mut dist = Vec::with_capacity(n * n);
        for (row, values) in matrix.into_iter().enumerate() {
            if values.len() != n {
                return Err(MetricError::NotSquare {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            dist.extend(values);
        }
        Self::from_flat(n, dist, tolerance)
    }

    pub(crate) fn from_flat(n: usize, dist: Vec<f64>, tolerance: f64) -> Result<Self, MetricError> {
        debug_assert_eq!(dist.len(), n * n);
        let at = |i: usize, j: usize| dist[i * n + j];
        for i in 0..n {
            for j in 0..n {
                if !at(i, j).is_finite() {
                    return Err(MetricError::NonFinite(i, j));
                }
            }
        }
        for i in 0..n {
            if at(i, i) != 0.0 {
                return Err(MetricError::NonzeroDiagonal(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if at(i, j) != at(j, i) {
                    return Err(MetricError::Asymmetric(i, j));
                }
                if at(i, j) <= 0.0 {
                    return Err(MetricError::NegativeOrZeroOffDiagonal(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let direct = at(i, k);
                    if direct > at(i, j) + at(j, k) + tolerance * (1.0 + direct) {
                        return Err(MetricError::TriangleViolation(i, j, k));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace {
            n,
            dist,
            labels: None,
        })
    }

    /// The one-point space.
    pub fn one_point() -> Self {
        FiniteMetricSpace {
            n: 1,
            dist: vec![0.0],
            labels: None,
        }
    }

    /// Pairwise distances of a point cloud under `norm`.
    pub fn from_points(coords: &[Vec<f64>], norm: Norm) -> Result<Self, MetricError> {
        let first = coords.first().ok_or(MetricError::Empty)?;
        let dim = first.len();
        for (index, p) in coords.iter().enumerate() {
            if p.len() != dim {
                return Err(MetricError::DimensionMismatch {
                    index,
                    got: p.len(),
                    expected: dim,
                });
            }
            if let Some(j) = p.iter().position(|c| !c.is_finite()) {
                return Err(MetricError::NonFinite(index, j));
            }
        }
        let n = coords.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                if coords[i] == coords[j] {
                    return Err(MetricError::DuplicatePoint(i, j));
                }
                let d = norm.distance(&coords[i], &coords[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Self::from_flat(n, dist, TOLERANCE)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, MetricError> {
        if labels.len() != self.n {
            return Err(MetricError::LabelCount {
                got: labels.len(),
                points: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a metric space has at least one point.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of point `i`, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest distance from point `i` (the circumscribed radius at `i`).
    pub fn eccentricity(&self, i: usize) -> f64 {
        self.row(i).iter().copied().fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Chebyshev radius: the smallest eccentricity.
    pub fn chebyshev_radius(&self) -> f64 {
        (0..self.n)
            .map(|i| self.eccentricity(i))
            .fold(f64::INFINITY, f64::min)
    }

    /// Nearest-neighbour distance of `i`; `None` for the one-point space.
    pub fn inscribed_radius(&self, i: usize) -> Option<f64> {
        (0..self.n)
            .filter(|&j| j != i)
            .map(|j| self.d(i, j))
            .reduce(f64::min)
    }

    pub fn invariants(&self) -> SpaceInvariants {
        if self.n == 1 {
            return SpaceInvariants::default();
        }
        let radii: Vec<f64> = (0..self.n)
            .filter_map(|i| self.inscribed_radius(i))
            .collect();
        SpaceInvariants {
            diam: self.diameter(),
            chebyshev_radius: self.chebyshev_radius(),
            d_val: radii.iter().copied().fold(0.0, f64::max),
            s_val: radii.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    /// Smallest positive distance (0 for the one-point space).
    pub fn separation(&self) -> f64 {
        self.invariants().s_val
    }

    pub fn dist_spectrum(&self) -> DistSpectrum {
        let mut values = self.dist.clone();
        values.sort_by(f64::total_cmp);
        values.dedup();
        DistSpectrum { values }
    }

    /// Hausdorff distance between two non-empty subsets of points.
    pub fn hausdorff(&self, a: &[usize], b: &[usize]) -> Result<f64, MetricError> {
        self.check_subset(a, false)?;
        self.check_subset(b, false)?;
        let one_sided = |from: &[usize], to: &[usize]| {
            from.iter()
                .map(|&p| {
                    to.iter()
                        .map(|&q| self.d(p, q))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        };
        Ok(one_sided(a, b).max(one_sided(b, a)))
    }

    /// Distance from point `p` to a non-empty set of points.
    pub fn point_to_set(&self, p: usize, set: &[usize]) -> f64 {
        set.iter()
            .map(|&q| self.d(p, q))
            .fold(f64::INFINITY, f64::min)
    }

    /// Multiplies every distance by `lambda`; `lambda == 0` collapses the
    /// space to a single point.
    pub fn scale(&self, lambda: f64) -> Result<Self, MetricError> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(MetricError::NegativeScale(lambda));
        }
        if !lambda.is_finite() {
            return Err(MetricError::NonFinite(0, 0));
        }
        if lambda == 0.0 {
            return Ok(Self::one_point());
        }
        Ok(FiniteMetricSpace {
            n: self.n,
            dist: self.dist.iter().map(|d| lambda * d).collect(),
            labels: self.labels.clone(),
        })
    }

    /// Restriction of the metric to the listed points, in the listed order.
    pub fn subspace(&self, points: &[usize]) -> Result<Self, MetricError> {
        self.check_subset(points, true)?;
        let m = points.len();
        let mut dist = Vec::with_capacity(m * m);
        for &i in points {
            dist.extend(points.iter().map(|&j| self.d(i, j)));
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| points.iter().map(|&i| l[i].clone()).collect());
        Ok(FiniteMetricSpace { n: m, dist, labels })
    }

    fn check_subset(&self, points: &[usize], distinct: bool) -> Result<(), MetricError> {
        if points.is_empty() {
            return Err(MetricError::EmptySubset);
        }
        let mut seen = vec![false; self.n];
        for &p in points {
            if p >= self.n {
                return Err(MetricError::IndexOutOfRange {
                    index: p,
                    size: self.n,
                });
            }
            if distinct && std::mem::replace(&mut seen[p], true) {
                return Err(MetricError::DuplicateIndex(p));
            }
        }
        Ok(())
    }
}

/// Diameter, Chebyshev radius, largest and smallest nearest-neighbour
/// distance. All four vanish on the one-point space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpaceInvariants {
    pub diam: f64,
    pub chebyshev_radius: f64,
    pub d_val: f64,
    pub s_val: f64,
}

/// The set of all distances realized in a space, sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistSpectrum {
    values: Vec<f64>,
}

impl DistSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("spectrum contains 0")
    }

    /// Smallest positive value.
    pub fn min_positive(&self) -> Option<f64> {
        self.values.iter().copied().find(|&v| v > 0.0)
    }

    /// Smallest gap between consecutive values, treating values closer than
    /// `tolerance` as the same value. `None` when only one distinct value
    /// remains.
    pub fn min_gap(&self, tolerance: f64) -> Option<f64> {
        let mut gap: Option<f64> = None;
        let mut last = self.values[0];
        for &v in &self.values[1..] {
            if v - last > tolerance {
                let g = v - last;
                gap = Some(gap.map_or(g, |m| m.min(g)));
                last = v;
            }
        }
        gap
    }

    /// Whether `value` occurs in the spectrum up to `tolerance`.
    pub fn contains(&self, value: f64, tolerance: f64) -> bool {
        self.values.iter().any(|v| (v - value).abs() <= tolerance)
    }

    /// Hausdorff distance between two spectra viewed as subsets of the line.
    pub fn hausdorff(&self, other: &DistSpectrum) -> f64 {
        let mut all: Vec<f64> = self.values.iter().chain(&other.values).copied().collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        let line = FiniteMetricSpace::from_points(
            &all.iter().map(|&v| vec![v]).collect::<Vec<_>>(),
            Norm::L1,
        )
        .expect("distinct finite reals form a metric space");
        let index = |v: f64| all.binary_search_by(|p| p.total_cmp(&v)).unwrap();
        let a: Vec<usize> = self.values.iter().map(|&v| index(v)).collect();
        let b: Vec<usize> = other.values.iter().map(|&v| index(v)).collect();
        line.hausdorff(&a, &b).expect("spectra are non-empty")
    }
}
