//! Curves of interpolated spaces between two metric spaces.
//!
//! A correspondence `R` between `X` and `Y` becomes a metric space `R_t`
//! for each `t` in `(0, 1)` under
//! `d_t((x, y), (x', y')) = (1 - t)|xx'| + t|yy'|`, with `R_0 = X` and
//! `R_1 = Y`. Consecutive members are at distance at most
//! `½|t - s|·dis R`.

use serde::Serialize;
use thiserror::Error;

use crate::gh::{gh_exact_with, SearchConfig, SearchError};
use crate::metric::{FiniteMetricSpace, MetricError, TOLERANCE};
use crate::relations::{distortion_rel, MapPair, Relation, RelationError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeodesicError {
    #[error("parameter {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("partition values must be non-decreasing")]
    Unsorted,
    #[error("the relation does not cover every point of both spaces")]
    NotCorrespondence,
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone)]
pub struct InterpolantFamily {
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    relation: Relation,
    pairs: Vec<(usize, usize)>,
    dis_r: f64,
}

/// Bound and measured distance between two members of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Defect {
    pub t: f64,
    pub s: f64,
    pub bound: f64,
    pub measured: f64,
    pub holds: bool,
}

impl InterpolantFamily {
    pub fn new(
        x: FiniteMetricSpace,
        y: FiniteMetricSpace,
        relation: Relation,
    ) -> Result<Self, GeodesicError> {
        let dis_r = distortion_rel(&relation, &x, &y)?;
        if !relation.is_correspondence() {
            return Err(GeodesicError::NotCorrespondence);
        }
        let pairs = relation.pairs().collect();
        Ok(InterpolantFamily {
            x,
            y,
            relation,
            pairs,
            dis_r,
        })
    }

    /// Family built on `R_{f,g}` of a map pair, typically an optimal
    /// certificate.
    pub fn from_certificate(
        x: FiniteMetricSpace,
        y: FiniteMetricSpace,
        p: &MapPair,
    ) -> Result<Self, GeodesicError> {
        if p.x_size() != x.len() || p.y_size() != y.len() {
            return Err(RelationError::SizeMismatch(format!(
                "maps are defined on {} and {} points, spaces have {} and {}",
                p.x_size(),
                p.y_size(),
                x.len(),
                y.len()
            ))
            .into());
        }
        let relation = MapPair::new(p.f.clone(), p.g.clone())?.correspondence();
        InterpolantFamily::new(x, y, relation)
    }

    pub fn x(&self) -> &FiniteMetricSpace {
        &self.x
    }

    pub fn y(&self) -> &FiniteMetricSpace {
        &self.y
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn dis_r(&self) -> f64 {
        self.dis_r
    }

    /// The member `R_t`; interior members have one point per pair of `R`,
    /// in the relation's sorted order.
    pub fn interpolate(&self, t: f64) -> Result<FiniteMetricSpace, GeodesicError> {
        check_parameter(t)?;
        if t == 0.0 {
            return Ok(self.x.clone());
        }
        if t == 1.0 {
            return Ok(self.y.clone());
        }
        let n = self.pairs.len();
        let mut dist = Vec::with_capacity(n * n);
        for &(a, b) in &self.pairs {
            for &(a2, b2) in &self.pairs {
                dist.push((1.0 - t) * self.x.d(a, a2) + t * self.y.d(b, b2));
            }
        }
        Ok(FiniteMetricSpace::from_flat(n, dist, TOLERANCE)?)
    }

    /// A pair of maps between `R_t` and `R_s` whose distortion is at most
    /// `|t - s|·dis R`: identity on pairs between interior members,
    /// projections and sections at the ends.
    pub fn transfer_maps(&self, t: f64, s: f64) -> Result<MapPair, GeodesicError> {
        check_parameter(t)?;
        check_parameter(s)?;
        Ok(MapPair {
            f: self.transfer(t, s),
            g: self.transfer(s, t),
        })
    }

    fn size_at(&self, t: f64) -> usize {
        if t == 0.0 {
            self.x.len()
        } else if t == 1.0 {
            self.y.len()
        } else {
            self.pairs.len()
        }
    }

    fn transfer(&self, from: f64, to: f64) -> Vec<usize> {
        (0..self.size_at(from))
            .map(|p| {
                let k = if from == 0.0 {
                    self.pairs.iter().position(|&(a, _)| a == p)
                } else if from == 1.0 {
                    self.pairs.iter().position(|&(_, b)| b == p)
                } else {
                    Some(p)
                }
                .expect("R is a correspondence");
                if to == 0.0 {
                    self.pairs[k].0
                } else if to == 1.0 {
                    self.pairs[k].1
                } else {
                    k
                }
            })
            .collect()
    }

    /// Exact distance between `R_t` and `R_s` against the bound
    /// `½|t - s|·dis R`.
    pub fn geodesic_defect(&self, t: f64, s: f64) -> Result<Defect, GeodesicError> {
        self.geodesic_defect_with(t, s, &SearchConfig::default())
    }

    pub fn geodesic_defect_with(
        &self,
        t: f64,
        s: f64,
        config: &SearchConfig,
    ) -> Result<Defect, GeodesicError> {
        let measured = self.measure(t, s, config)?;
        let bound = 0.5 * (t - s).abs() * self.dis_r;
        Ok(Defect {
            t,
            s,
            bound,
            measured,
            holds: measured <= bound + TOLERANCE,
        })
    }

    fn measure(&self, t: f64, s: f64, config: &SearchConfig) -> Result<f64, GeodesicError> {
        let a = self.interpolate(t)?;
        let b = self.interpolate(s)?;
        let config = config.clone().with_seed(self.transfer_maps(t, s)?);
        Ok(gh_exact_with(&a, &b, &config)?.value)
    }

    /// Sum of exact distances between consecutive members along
    /// `partition`.
    pub fn polyline_length(&self, partition: &[f64]) -> Result<f64, GeodesicError> {
        self.polyline_length_with(partition, &SearchConfig::default())
    }

    pub fn polyline_length_with(
        &self,
        partition: &[f64],
        config: &SearchConfig,
    ) -> Result<f64, GeodesicError> {
        for &t in partition {
            check_parameter(t)?;
        }
        if partition.windows(2).any(|w| w[1] < w[0]) {
            return Err(GeodesicError::Unsorted);
        }
        partition
            .windows(2)
            .map(|w| self.measure(w[0], w[1], config))
            .sum()
    }
}

fn check_parameter(t: f64) -> Result<(), GeodesicError> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(GeodesicError::OutOfRange(t))
    }
}
