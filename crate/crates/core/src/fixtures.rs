//! Deterministic example spaces with closed-form reference values.
//!
//! Every constructor returns a [`Fixture`]: named combinatorial models,
//! named map pairs between them, named point subsets of an ambient model,
//! and the reference values the library is expected to reproduce.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{ghc_lower_components, ghc_lower_connectivity};
use crate::gh::{gh_exact, SearchError};
use crate::metric::{FiniteMetricSpace, MetricError, Norm};
use crate::relations::{codistortion, distortion_map, MapPair};
use crate::topo::{ghc_exact, set_diameter, CombinatorialSpace};

pub const DEFAULT_OMEGA_N: usize = 8;
pub const DEFAULT_STACK_K: usize = 5;
pub const DEFAULT_TRIODE_GRID: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixtureError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("grid {grid} is not a multiple of {required}")]
    BadGrid { grid: usize, required: usize },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedSpace {
    pub name: String,
    pub space: CombinatorialSpace,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedMaps {
    pub name: String,
    pub from: String,
    pub to: String,
    pub maps: MapPair,
}

/// Indices of the points of one model inside another.
#[derive(Debug, Clone, Serialize)]
pub struct NamedSubset {
    pub name: String,
    pub of: String,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceValue {
    pub name: String,
    pub value: f64,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fixture {
    pub name: String,
    pub spaces: Vec<NamedSpace>,
    pub maps: Vec<NamedMaps>,
    pub subsets: Vec<NamedSubset>,
    pub reference_values: Vec<ReferenceValue>,
}

impl Fixture {
    fn new(name: &str) -> Self {
        Fixture {
            name: name.to_string(),
            spaces: Vec::new(),
            maps: Vec::new(),
            subsets: Vec::new(),
            reference_values: Vec::new(),
        }
    }

    pub fn space(&self, name: &str) -> Option<&CombinatorialSpace> {
        self.spaces
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.space)
    }

    pub fn maps(&self, name: &str) -> Option<&MapPair> {
        self.maps.iter().find(|m| m.name == name).map(|m| &m.maps)
    }

    pub fn subset(&self, name: &str) -> Option<&[usize]> {
        self.subsets
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.points.as_slice())
    }

    pub fn reference(&self, name: &str) -> Option<f64> {
        self.reference_values
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.value)
    }

    fn add_space(&mut self, name: &str, space: CombinatorialSpace) {
        self.spaces.push(NamedSpace {
            name: name.to_string(),
            space,
        });
    }

    fn add_reference(&mut self, name: &str, value: f64, note: &str) {
        self.reference_values.push(ReferenceValue {
            name: name.to_string(),
            value,
            note: note.to_string(),
        });
    }
}

fn labelled(matrix: Vec<Vec<f64>>, labels: Vec<String>) -> Result<FiniteMetricSpace, MetricError> {
    FiniteMetricSpace::validate(matrix)?.with_labels(labels)
}

/// `X_N = {0} ⊔ {1..N} ⊔ {∞}` and `Y_{N+1} = {0} ⊔ {1..N+1}`.
///
/// Distinct non-zero points are 2 apart, `|0 n| = 1 + 1/(2n)` and
/// `|0 ∞| = 1`. The maps `h_m` (`1 <= m <= N`) fix `0` and every `n < m`,
/// shift `m..=N` up by one and send `∞` to `m`; each is a bijection with
/// distortion `1/(2m)` although the spaces are not isometric.
pub fn build_omega_space(n: usize) -> Result<Fixture, FixtureError> {
    if n == 0 {
        return Err(FixtureError::BadParameters("N must be at least 1".into()));
    }
    let zero_to = |k: usize| 1.0 + 1.0 / (2.0 * k as f64);

    // X: index 0 is the point 0, 1..=n the naturals, n + 1 the point ∞.
    let size = n + 2;
    let mut dx = vec![vec![2.0; size]; size];
    let mut dy = vec![vec![2.0; size]; size];
    for i in 0..size {
        dx[i][i] = 0.0;
        dy[i][i] = 0.0;
    }
    for k in 1..size {
        let to_x = if k == n + 1 { 1.0 } else { zero_to(k) };
        dx[0][k] = to_x;
        dx[k][0] = to_x;
        dy[0][k] = zero_to(k);
        dy[k][0] = zero_to(k);
    }
    let mut x_labels: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    x_labels.push("inf".into());
    let y_labels: Vec<String> = (0..=n + 1).map(|k| k.to_string()).collect();
    let x = labelled(dx, x_labels)?;
    let y = labelled(dy, y_labels)?;

    let mut fixture = Fixture::new("omega");
    for m in 1..=n {
        let f: Vec<usize> = (0..size)
            .map(|p| match p {
                0 => 0,
                p if p < m => p,
                p if p <= n => p + 1,
                _ => m,
            })
            .collect();
        let mut g = vec![0; size];
        for (p, &q) in f.iter().enumerate() {
            g[q] = p;
        }
        fixture.maps.push(NamedMaps {
            name: format!("h_{m}"),
            from: "X".into(),
            to: "Y".into(),
            maps: MapPair { f, g },
        });
        fixture.add_reference(
            &format!("dis h_{m}"),
            1.0 / (2.0 * m as f64),
            "distortion of the bijection h_m",
        );
    }
    fixture.add_reference("diam X", 2.0, "largest distance, between non-zero points");
    fixture.add_reference("diam Y", 2.0, "largest distance, between non-zero points");
    fixture.add_reference("s X", 1.0, "realized by |0 inf|");
    fixture.add_reference(
        "s Y",
        zero_to(n + 1),
        "realized by the last natural; Y has no distance 1",
    );
    fixture.add_space("X", CombinatorialSpace::edgeless(x));
    fixture.add_space("Y", CombinatorialSpace::edgeless(y));
    Ok(fixture)
}

/// The `2N` points `n ± 1/(6n)` on the line, `n = 1..=N`; edgeless.
pub fn build_shifted_pairs(n: usize) -> Result<Fixture, FixtureError> {
    if n == 0 {
        return Err(FixtureError::BadParameters("N must be at least 1".into()));
    }
    let points: Vec<Vec<f64>> = (1..=n)
        .flat_map(|k| {
            let k = k as f64;
            let shift = 1.0 / (6.0 * k);
            [vec![k - shift], vec![k + shift]]
        })
        .collect();
    let x = FiniteMetricSpace::from_points(&points, Norm::L1)?;
    let mut fixture = Fixture::new("shifted-pairs");
    fixture.add_reference("s X", 1.0 / (3.0 * n as f64), "gap inside the last pair");
    fixture.add_space("X", CombinatorialSpace::edgeless(x));
    Ok(fixture)
}

/// `K` unit intervals at mutual distance 1.
///
/// The ambient model samples interval `k` (`1 <= k <= K`) at step
/// `2^-grid_exp` with path edges. `X_inf` keeps the dyadic points
/// `S_k = {i/2^k}` of every interval and has no edges; `X_n` keeps `S_k`
/// for `k < n` and the whole sampled interval (with its path) for
/// `k >= n`.
pub fn build_interval_stack(k: usize, n: usize, grid_exp: usize) -> Result<Fixture, FixtureError> {
    if k == 0 || n == 0 || n > k {
        return Err(FixtureError::BadParameters(format!(
            "need 1 <= n <= K, got n = {n}, K = {k}"
        )));
    }
    if grid_exp < k + 2 || grid_exp > 20 {
        return Err(FixtureError::BadParameters(format!(
            "grid exponent must lie in [K + 2, 20], got {grid_exp}"
        )));
    }
    let steps = 1usize << grid_exp;
    let scale = steps as f64;
    // (interval, step) for every ambient point, in order.
    let points: Vec<(usize, usize)> = (1..=k)
        .flat_map(|interval| (0..=steps).map(move |i| (interval, i)))
        .collect();
    let total = points.len();
    let mut dist = vec![vec![0.0; total]; total];
    for (a, &(ka, ia)) in points.iter().enumerate() {
        for (b, &(kb, ib)) in points.iter().enumerate() {
            if a != b {
                dist[a][b] = if ka == kb {
                    ia.abs_diff(ib) as f64 / scale
                } else {
                    1.0
                };
            }
        }
    }
    let labels = points
        .iter()
        .map(|&(kk, i)| format!("I{kk}:{i}/{steps}"))
        .collect();
    let ambient_metric = labelled(dist, labels)?;

    let dyadic = |interval: usize, i: usize| i % (steps >> interval) == 0;
    let x_inf: Vec<usize> = (0..total)
        .filter(|&p| dyadic(points[p].0, points[p].1))
        .collect();
    let x_n: Vec<usize> = (0..total)
        .filter(|&p| points[p].0 >= n || dyadic(points[p].0, points[p].1))
        .collect();
    let path_edges: Vec<(usize, usize)> = (1..total)
        .filter(|&p| points[p].0 == points[p - 1].0)
        .map(|p| (p - 1, p))
        .collect();

    let ambient = CombinatorialSpace::new(ambient_metric, path_edges).expect("edges in range");
    let x_inf_model = CombinatorialSpace::edgeless(ambient.metric().subspace(&x_inf)?);
    let x_n_model = {
        let sub = ambient.subspace(&x_n)?;
        let keep: Vec<(usize, usize)> = sub
            .edges()
            .iter()
            .copied()
            .filter(|&(a, _)| points[x_n[a]].0 >= n)
            .collect();
        CombinatorialSpace::new(sub.metric().clone(), keep).expect("edges in range")
    };

    let mut fixture = Fixture::new("interval-stack");
    fixture.add_reference(
        "hausdorff(X_inf, X_n)",
        0.5f64.powi(n as i32 + 1),
        "half the dyadic step of S_n, inside the ambient model",
    );
    fixture.add_reference(
        "ghc_lower_connectivity(X_inf, X_n)",
        0.5,
        "X_n contains a connected interval of diameter 1, X_inf is edgeless",
    );
    fixture.add_space("ambient", ambient);
    fixture.add_space("X_inf", x_inf_model);
    fixture.add_space("X_n", x_n_model);
    fixture.subsets.push(NamedSubset {
        name: "X_inf".into(),
        of: "ambient".into(),
        points: x_inf,
    });
    fixture.subsets.push(NamedSubset {
        name: "X_n".into(),
        of: "ambient".into(),
        points: x_n,
    });
    Ok(fixture)
}

/// Sample of the triode: a vertical segment `J` from `(0, -1)` to `(0, 1)`
/// and a horizontal arm `I` from the origin to `(1, 0)`, at step `1/grid`,
/// under the path metric through the origin. Index `0..=2·grid` runs up
/// `J`; the following `grid` indices run out along `I`.
struct Triode {
    grid: usize,
    /// `(on_j, signed step)`: on `J` the step is the height, on `I` the
    /// distance from the origin.
    points: Vec<(bool, i64)>,
}

impl Triode {
    fn new(grid: usize, arm_start: usize) -> Self {
        let g = grid as i64;
        let points = (-g..=g)
            .map(|i| (true, i))
            .chain((arm_start.max(1) as i64..=g).map(|i| (false, i)))
            .collect();
        Triode { grid, points }
    }

    fn steps(&self, a: usize, b: usize) -> u64 {
        match (self.points[a], self.points[b]) {
            ((true, y), (true, y2)) => y.abs_diff(y2),
            ((false, x), (false, x2)) => x.abs_diff(x2),
            ((true, y), (false, x)) | ((false, x), (true, y)) => y.unsigned_abs() + x as u64,
        }
    }

    fn model(&self) -> Result<CombinatorialSpace, MetricError> {
        let n = self.points.len();
        let scale = self.grid as f64;
        let dist = (0..n)
            .map(|a| (0..n).map(|b| self.steps(a, b) as f64 / scale).collect())
            .collect();
        let labels = self
            .points
            .iter()
            .map(|&(on_j, i)| match on_j {
                true => format!("J{i}/{}", self.grid),
                false => format!("I{i}/{}", self.grid),
            })
            .collect();
        let metric = labelled(dist, labels)?;
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.steps(a, b) == 1)
            .collect();
        Ok(CombinatorialSpace::new(metric, edges).expect("edges in range"))
    }
}

/// Full triode `X` and the truncation `X_n = J ∪ I_n`, where `I_n` keeps
/// the arm from `1/n` on. `grid` must be a multiple of `2n` so that both
/// `1/n` and `1/(2n)` are sample points.
pub fn build_triode(n: usize, grid: usize) -> Result<Fixture, FixtureError> {
    if n == 0 {
        return Err(FixtureError::BadParameters("n must be at least 1".into()));
    }
    if grid == 0 || grid % (2 * n) != 0 {
        return Err(FixtureError::BadGrid {
            grid,
            required: 2 * n,
        });
    }
    let full = Triode::new(grid, 1);
    let truncated = Triode::new(grid, grid / n);
    let subset: Vec<usize> = (0..full.points.len())
        .filter(|&p| truncated.points.contains(&full.points[p]))
        .collect();

    let mut fixture = Fixture::new("triode");
    fixture.add_reference(
        "hausdorff(X, X_n)",
        1.0 / (2.0 * n as f64),
        "attained at the middle of the removed piece of the arm",
    );
    fixture.add_reference("diam J", 2.0, "component of X_n through the origin");
    fixture.add_reference(
        "diam I_n",
        1.0 - 1.0 / n as f64,
        "the detached piece of the arm",
    );
    fixture.add_space("X", full.model()?);
    fixture.add_space("X_n", truncated.model()?);
    fixture.subsets.push(NamedSubset {
        name: "X_n".into(),
        of: "X".into(),
        points: subset,
    });
    Ok(fixture)
}

/// Maps between the truncations `X_m` and `X_n` (`m >= n`) of the triode:
/// `f` fixes `J` and pushes the arm points closer than `1/n` out to `1/n`,
/// `g` is the inclusion. Both preserve edges and the pair has distortion
/// `1/n - 1/m`.
pub fn triode_retraction(m: usize, n: usize, grid: usize) -> Result<MapPair, FixtureError> {
    if n == 0 || m < n {
        return Err(FixtureError::BadParameters(format!(
            "need 1 <= n <= m, got m = {m}, n = {n}"
        )));
    }
    for k in [m, n] {
        if grid == 0 || grid % (2 * k) != 0 {
            return Err(FixtureError::BadGrid {
                grid,
                required: 2 * k,
            });
        }
    }
    let big = Triode::new(grid, grid / m);
    let small = Triode::new(grid, grid / n);
    let index_in_small = |p: (bool, i64)| {
        small
            .points
            .iter()
            .position(|&q| q == p)
            .expect("point of the smaller truncation")
    };
    let cut = (grid / n) as i64;
    let f = big
        .points
        .iter()
        .map(|&(on_j, i)| index_in_small(if on_j { (true, i) } else { (false, i.max(cut)) }))
        .collect();
    let g = small
        .points
        .iter()
        .map(|q| big.points.iter().position(|p| p == q).expect("inclusion"))
        .collect();
    Ok(MapPair { f, g })
}

/// One verified inequality or equality.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// `"<="`, `">="` or `"="`.
    pub relation: String,
    pub target: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    fn push(&mut self, name: String, value: f64, relation: &str, target: f64) {
        let holds = match relation {
            "<=" => value <= target + crate::metric::TOLERANCE,
            ">=" => value >= target - crate::metric::TOLERANCE,
            _ => (value - target).abs() <= crate::metric::TOLERANCE,
        };
        self.checks.push(Check {
            name,
            value,
            relation: relation.to_string(),
            target,
            holds,
        });
    }
}

fn uniform_grid(n: usize) -> FiniteMetricSpace {
    let points: Vec<Vec<f64>> = (0..=n).map(|i| vec![i as f64 / n as f64]).collect();
    FiniteMetricSpace::from_points(&points, Norm::L1).expect("distinct grid points")
}

/// Finite witnesses that distinguish the two distances.
///
/// * Uniform grids `{i/n}` of the unit interval are close to each other in
///   the plain distance (bounded by their Hausdorff distance inside the
///   finer grid).
/// * Each grid, without edges, stays at continuous distance exactly ½ from
///   the connected sampled interval.
/// * On triode samples, the diameter and codistortion floors of the
///   component argument are checked on explicit maps, and the resulting
///   lower bounds keep the truncations away from the connected triode and
///   from the triode with a point removed.
pub fn build_counterexample_checks() -> Result<CheckReport, SearchError> {
    let mut report = CheckReport { checks: Vec::new() };

    for (a, b) in [(2usize, 4usize), (4, 8), (2, 8)] {
        let value = gh_exact(&uniform_grid(a), &uniform_grid(b))?.value;
        report.push(
            format!("gh(grid {a}, grid {b})"),
            value,
            "<=",
            0.5 / a as f64,
        );
    }

    let interval = CombinatorialSpace::path(uniform_grid(16));
    for n in [2usize, 4, 8] {
        let dots = CombinatorialSpace::edgeless(uniform_grid(n));
        let value = ghc_exact(&dots, &interval)?.value;
        report.push(
            format!("ghc(grid {n} edgeless, path interval)"),
            value,
            "=",
            0.5,
        );
    }

    let grid = 12;
    for (m, n) in [(3usize, 2usize), (6, 3), (6, 2)] {
        let xm = truncated_triode(m, grid);
        let xn = truncated_triode(n, grid);
        for (label, pair) in triode_sample_maps(&xm, &xn, m, n, grid) {
            component_floor_checks(&mut report, &label, &xm, &xn, &pair);
        }
    }

    let grid = DEFAULT_TRIODE_GRID;
    for n in [2usize, 3, 4] {
        let fixture = build_triode(n, grid).expect("grid fits");
        let (x, xn) = (fixture.space("X").unwrap(), fixture.space("X_n").unwrap());
        report.push(
            format!("ghc lower bound(X_{n}, triode)"),
            ghc_lower_components(xn, x).max(ghc_lower_connectivity(xn, x)),
            ">=",
            0.5 * (1.0 - 1.0 / n as f64),
        );
        // Removing a point of the arm at distance r from the origin leaves a
        // piece of diameter 1 - r; removing the origin leaves three unit
        // pieces.
        for r_steps in [0, grid / 2, 3 * grid / 4] {
            let full = fixture.space("X").unwrap();
            let removed = if r_steps == 0 {
                grid
            } else {
                2 * grid + r_steps
            };
            let keep: Vec<usize> = (0..full.len()).filter(|&p| p != removed).collect();
            let punctured = full.subspace(&keep).expect("non-empty");
            let r = r_steps as f64 / grid as f64;
            let floor = if r_steps == 0 {
                0.5
            } else {
                0.5 * (1.0 + r).min(r - 1.0 / n as f64).min(1.0 - r).max(0.0)
            };
            report.push(
                format!("component bound(X_{n}, triode minus r = {r})"),
                ghc_lower_components(xn, &punctured),
                ">=",
                floor,
            );
        }
    }
    Ok(report)
}

fn truncated_triode(n: usize, grid: usize) -> CombinatorialSpace {
    build_triode(n, grid)
        .expect("grid fits")
        .space("X_n")
        .expect("fixture has X_n")
        .clone()
}

fn triode_sample_maps(
    xm: &CombinatorialSpace,
    xn: &CombinatorialSpace,
    m: usize,
    n: usize,
    grid: usize,
) -> Vec<(String, MapPair)> {
    let (a, b) = (xm.len(), xn.len());
    let mut out = vec![(
        format!("retraction X_{m} -> X_{n}"),
        triode_retraction(m, n, grid).expect("valid parameters"),
    )];
    for (mul, add) in [(1usize, 0usize), (5, 3), (7, 1)] {
        out.push((
            format!("affine {mul}i+{add} X_{m} -> X_{n}"),
            MapPair {
                f: (0..a).map(|i| (mul * i + add) % b).collect(),
                g: (0..b).map(|i| (mul * i + add) % a).collect(),
            },
        ));
    }
    out
}

/// Diameter floor on every component and the codistortion floor at every
/// target point.
fn component_floor_checks(
    report: &mut CheckReport,
    label: &str,
    x: &CombinatorialSpace,
    y: &CombinatorialSpace,
    pair: &MapPair,
) {
    let dis_f = distortion_map(&pair.f, x.metric(), y.metric()).expect("sizes match");
    let codis = codistortion(pair, x.metric(), y.metric()).expect("sizes match");
    let mut diameter_floor: f64 = 0.0;
    for component in x.components() {
        let image: Vec<usize> = component.points.iter().map(|&p| pair.f[p]).collect();
        let image_diam = set_diameter(y.metric(), &image);
        diameter_floor = diameter_floor.max((image_diam - component.diameter).abs());
    }
    report.push(
        format!("dis f >= |diam f(K) - diam K|, {label}"),
        dis_f,
        ">=",
        diameter_floor,
    );

    let mut image: Vec<usize> = pair.f.clone();
    image.sort_unstable();
    image.dedup();
    let reach = (0..y.len())
        .map(|p| y.metric().point_to_set(p, &image))
        .fold(0.0, f64::max);
    report.push(format!("codis >= |y0 f(X)|, {label}"), codis, ">=", reach);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::dis_map_pair;
    use crate::topo::is_admissible;

    #[test]
    fn omega_invariants_and_spectra() {
        let fx = build_omega_space(4).unwrap();
        let x = fx.space("X").unwrap().metric();
        let y = fx.space("Y").unwrap().metric();
        assert_eq!(x.len(), 6);
        assert_eq!(y.len(), 6);
        for s in [x, y] {
            assert_eq!(s.diameter(), 2.0);
        }
        assert_eq!(x.separation(), 1.0);
        assert!(x.dist_spectrum().contains(1.0, 0.0));
        assert!(!y.dist_spectrum().contains(1.0, 0.0));
        assert_eq!(x.label(5), "inf");
    }

    #[test]
    fn omega_maps_are_inverse_bijections() {
        let fx = build_omega_space(5).unwrap();
        for m in 1..=5 {
            let h = fx.maps(&format!("h_{m}")).unwrap();
            assert!(h.g_after_f_is_identity());
            assert!(h.f_after_g_is_identity());
        }
        assert!(build_omega_space(0).is_err());
    }

    #[test]
    fn shifted_pairs_separation() {
        let mut last = f64::INFINITY;
        for n in 1..=10 {
            let fx = build_shifted_pairs(n).unwrap();
            let s = fx.space("X").unwrap().metric().separation();
            assert!((s - fx.reference("s X").unwrap()).abs() <= 1e-12);
            assert!(s < last);
            last = s;
        }
    }

    #[test]
    fn interval_stack_shapes() {
        let fx = build_interval_stack(3, 2, 5).unwrap();
        let x_inf = fx.space("X_inf").unwrap();
        assert!(x_inf.is_totally_disconnected());
        assert_eq!(x_inf.len(), 3 + 5 + 9);
        let x_n = fx.space("X_n").unwrap();
        let big: Vec<_> = x_n
            .components()
            .into_iter()
            .filter(|c| c.points.len() > 1)
            .collect();
        assert_eq!(big.len(), 2);
        assert!(big.iter().all(|c| c.diameter == 1.0));
        assert!(matches!(
            build_interval_stack(3, 4, 5),
            Err(FixtureError::BadParameters(_))
        ));
        assert!(build_interval_stack(3, 1, 4).is_err());
    }

    #[test]
    fn triode_components() {
        let fx = build_triode(3, 12).unwrap();
        let comps = fx.space("X_n").unwrap().components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].diameter, 2.0);
        assert!((comps[1].diameter - 2.0 / 3.0).abs() <= 1e-15);
        assert!(fx.space("X").unwrap().is_connected());
        assert_eq!(
            build_triode(3, 10).unwrap_err(),
            FixtureError::BadGrid {
                grid: 10,
                required: 6
            }
        );
    }

    #[test]
    fn triode_subset_matches_model() {
        let fx = build_triode(2, 8).unwrap();
        let x = fx.space("X").unwrap();
        let sub = x.subspace(fx.subset("X_n").unwrap()).unwrap();
        assert_eq!(&sub, fx.space("X_n").unwrap());
    }

    #[test]
    fn retraction_is_admissible_with_expected_distortion() {
        let grid = 12;
        let xm = truncated_triode(3, grid);
        let xn = truncated_triode(2, grid);
        let p = triode_retraction(3, 2, grid).unwrap();
        assert!(is_admissible(&p.f, &xm, &xn).unwrap());
        assert!(is_admissible(&p.g, &xn, &xm).unwrap());
        let dis = dis_map_pair(&p, xm.metric(), xn.metric()).unwrap();
        assert!((dis - 1.0 / 6.0).abs() <= 1e-12);
    }
}
