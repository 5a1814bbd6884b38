//! Cheap lower and upper bounds on both distances.
//!
//! All values are in distance units, i.e. half of a distortion.

use serde::Serialize;
use thiserror::Error;

use crate::metric::{FiniteMetricSpace, MetricError};
use crate::relations::{dis_map_pair, MapPair};
use crate::topo::{is_incomparable, CombinatorialSpace, Component};

/// Component assignments enumerated by [`ghc_lower_components`] before it
/// falls back to the per-component diameter bound.
pub const COMPONENT_ASSIGNMENT_CAP: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    /// Recorded for reference; not a bound on the distance.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTerm {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub provenance: Vec<BoundTerm>,
}

impl BoundReport {
    fn from_terms(provenance: Vec<BoundTerm>) -> Self {
        let pick = |kind| {
            provenance
                .iter()
                .filter(move |t| t.kind == kind)
                .map(|t| t.value)
        };
        BoundReport {
            lower: pick(BoundKind::Lower).fold(0.0, f64::max),
            upper: pick(BoundKind::Upper).fold(f64::INFINITY, f64::min),
            provenance,
        }
    }

    /// Name of the first lower bound attaining `lower`.
    pub fn strongest_lower(&self) -> &str {
        self.provenance
            .iter()
            .find(|t| t.kind == BoundKind::Lower && t.value == self.lower)
            .map_or("none", |t| t.name.as_str())
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.provenance
            .iter()
            .find(|t| t.name == name)
            .map(|t| t.value)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("the model of the subset must be edgeless")]
    ModelHasEdges,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

fn term(name: &str, kind: BoundKind, value: f64) -> BoundTerm {
    BoundTerm {
        name: name.to_string(),
        kind,
        value,
    }
}

fn metric_terms(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Vec<BoundTerm> {
    let (sx, sy) = (x.separation(), y.separation());
    let separation = if sy > sx {
        sx.min(sy - sx)
    } else if sx > sy {
        sy.min(sx - sy)
    } else {
        0.0
    };
    vec![
        term(
            "diameter",
            BoundKind::Lower,
            0.5 * (x.diameter() - y.diameter()).abs(),
        ),
        term(
            "spectrum",
            BoundKind::Lower,
            0.5 * x.dist_spectrum().hausdorff(&y.dist_spectrum()),
        ),
        term("separation", BoundKind::Lower, 0.5 * separation),
        term("separation-difference", BoundKind::Info, (sx - sy).abs()),
        term(
            "half-max-diameter",
            BoundKind::Upper,
            upper_bound_diam(x, y),
        ),
    ]
}

/// Lower bounds on `d_GH` from diameters, distance spectra and separations,
/// together with the diameter upper bound.
pub fn lower_bounds(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> BoundReport {
    BoundReport::from_terms(metric_terms(x, y))
}

/// `½·max{diam X, diam Y}`, an upper bound for both distances.
pub fn upper_bound_diam(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    0.5 * x.diameter().max(y.diameter())
}

fn max_component_diameter(xc: &CombinatorialSpace) -> f64 {
    xc.components()
        .iter()
        .map(|c| c.diameter)
        .fold(0.0, f64::max)
}

/// Lower bound on the continuous distance from connectedness alone.
///
/// An admissible map into an edgeless model is constant on components, so
/// its distortion is at least the largest component diameter. When every
/// admissible map is constant the codistortion also reaches both Chebyshev
/// radii.
pub fn ghc_lower_connectivity(xc: &CombinatorialSpace, yc: &CombinatorialSpace) -> f64 {
    let (x, y) = (xc.metric(), yc.metric());
    let mut dis: f64 = 0.0;
    if yc.is_totally_disconnected() {
        dis = dis.max(max_component_diameter(xc));
    }
    if xc.is_totally_disconnected() {
        dis = dis.max(max_component_diameter(yc));
    }
    let radii = x.chebyshev_radius().max(y.chebyshev_radius());
    if is_incomparable(xc, yc) {
        dis = dis.max(x.diameter().max(radii));
    }
    if is_incomparable(yc, xc) {
        dis = dis.max(y.diameter().max(radii));
    }
    0.5 * dis
}

/// Lower bound on the continuous distance from where components can go.
///
/// Every component of the source lands inside a single component of the
/// target. If a component `K` lands in `C`, the map distorts by at least
/// `diam K - diam C`; and every target point `b` lies at distance at least
/// `|b, image|` from the image, which bounds the codistortion. The bound is
/// the minimum over all component assignments, taken in both directions.
pub fn ghc_lower_components(xc: &CombinatorialSpace, yc: &CombinatorialSpace) -> f64 {
    0.5 * component_floor(xc, yc).max(component_floor(yc, xc))
}

fn component_floor(from: &CombinatorialSpace, to: &CombinatorialSpace) -> f64 {
    let source = from.components();
    let target = to.components();
    let shrink = |k: &Component, c: &Component| (k.diameter - c.diameter).max(0.0);

    let count = (target.len() as f64).powi(source.len() as i32);
    if count > COMPONENT_ASSIGNMENT_CAP {
        return source
            .iter()
            .map(|k| {
                target
                    .iter()
                    .map(|c| shrink(k, c))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
    }

    let metric = to.metric();
    let gap: Vec<Vec<f64>> = (0..to.len())
        .map(|b| {
            target
                .iter()
                .map(|c| {
                    c.points
                        .iter()
                        .map(|&p| metric.d(b, p))
                        .fold(f64::INFINITY, f64::min)
                })
                .collect()
        })
        .collect();

    let mut best = f64::INFINITY;
    let mut choice = vec![0usize; source.len()];
    loop {
        let mut value = source
            .iter()
            .zip(&choice)
            .map(|(k, &c)| shrink(k, &target[c]))
            .fold(0.0, f64::max);
        if value < best {
            for row in &gap {
                let reach = choice.iter().map(|&c| row[c]).fold(f64::INFINITY, f64::min);
                value = value.max(reach);
            }
            best = best.min(value);
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < target.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            return best;
        }
    }
}

/// Every lower bound available for the continuous distance.
pub fn ghc_lower_bounds(xc: &CombinatorialSpace, yc: &CombinatorialSpace) -> BoundReport {
    let mut terms = metric_terms(xc.metric(), yc.metric());
    terms.push(term(
        "connectivity",
        BoundKind::Lower,
        ghc_lower_connectivity(xc, yc),
    ));
    terms.push(term(
        "components",
        BoundKind::Lower,
        ghc_lower_components(xc, yc),
    ));
    BoundReport::from_terms(terms)
}

/// Upper bound on the continuous distance between a subset `A` of `Y` and
/// `Y` itself.
///
/// `xc` is the edgeless model of `A` (its metric must be the restriction of
/// `Y` to `a`). The inclusion `A -> Y` is paired with the map sending each
/// point of `Y` to its nearest point of `A` (lowest index on ties); the
/// result is half the distortion of that pair and never exceeds the
/// Hausdorff distance between `A` and `Y`.
pub fn ghc_upper_partition(
    xc: &CombinatorialSpace,
    y: &FiniteMetricSpace,
    a: &[usize],
) -> Result<f64, BoundsError> {
    if !xc.is_totally_disconnected() {
        return Err(BoundsError::ModelHasEdges);
    }
    let restricted = y.subspace(a)?;
    if restricted.to_matrix() != xc.metric().to_matrix() {
        return Err(BoundsError::SizeMismatch(
            "the model's metric is not the restriction of Y to the subset".into(),
        ));
    }
    let g: Vec<usize> = (0..y.len())
        .map(|p| {
            (0..a.len())
                .min_by(|&i, &j| y.d(p, a[i]).total_cmp(&y.d(p, a[j])).then(i.cmp(&j)))
                .expect("subset is non-empty")
        })
        .collect();
    let pair = MapPair { f: a.to_vec(), g };
    Ok(0.5 * dis_map_pair(&pair, xc.metric(), y).expect("maps are in range"))
}
