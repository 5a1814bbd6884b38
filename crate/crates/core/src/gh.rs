//! Exact Gromov-Hausdorff distance, a brute-force oracle, and ε-isometries.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundReport};
use crate::metric::{FiniteMetricSpace, TOLERANCE};
use crate::relations::{codistortion, dis_map_pair, distortion_map, MapPair, RelationError};
use crate::search::{self, Limits, Problem, Topology};

/// An incumbent within this distance of the best lower bound counts as
/// optimal.
pub const OPTIMALITY_TOLERANCE: f64 = 1e-12;

/// Default node cap for one search.
pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

/// Default cap on the number of map pairs [`gh_bruteforce`] will enumerate.
pub const BRUTEFORCE_CAP: f64 = 1e7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Optimal,
    BudgetExceeded,
}

/// Result of an exact search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceResult {
    /// Half the distortion of `certificate`.
    pub value: f64,
    pub certificate: MapPair,
    /// Best lower bound known before the search started.
    pub lower_bound: f64,
    pub nodes_explored: u64,
    /// What proves `value` optimal: `"exhaustive"`, the name of a lower
    /// bound, or `"none"` when the budget ran out first.
    pub bound_used: String,
    pub status: SearchStatus,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("node budget exhausted after {} nodes; best value so far {}", .0.nodes_explored, .0.value)]
    BudgetExceeded(Box<DistanceResult>),
    #[error("node budget exhausted after {nodes} nodes without a decision")]
    Inconclusive { nodes: u64 },
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("{pairs:e} map pairs exceed the enumeration cap of {cap:e}")]
    TooLarge { pairs: f64, cap: f64 },
    #[error("epsilon {epsilon} is not below {limit}; bijectivity is not guaranteed")]
    EpsilonTooLarge { epsilon: f64, limit: f64 },
    #[error("no map pair with distortion at most {0}")]
    NotFound(f64),
    #[error(transparent)]
    Relation(#[from] RelationError),
}

impl SearchError {
    /// Best incumbent carried by a budget failure.
    pub fn partial(&self) -> Option<&DistanceResult> {
        match self {
            SearchError::BudgetExceeded(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub node_limit: u64,
    pub threads: usize,
    /// A starting incumbent; its distortion caps the search.
    pub seed: Option<MapPair>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_limit: DEFAULT_NODE_LIMIT,
            threads: 1,
            seed: None,
        }
    }
}

impl SearchConfig {
    pub fn with_node_limit(mut self, node_limit: u64) -> Self {
        self.node_limit = node_limit;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_seed(mut self, seed: MapPair) -> Self {
        self.seed = Some(seed);
        self
    }
}

pub(crate) struct Instance<'a> {
    pub x: &'a FiniteMetricSpace,
    pub y: &'a FiniteMetricSpace,
    pub topology: Option<Topology<'a>>,
    /// Validity check for seeds (admissibility for the continuous variant).
    pub seed_ok: &'a dyn Fn(&MapPair) -> bool,
}

/// Minimizes `dis_map_pair` over all map pairs accepted by the instance.
pub(crate) fn solve(
    inst: &Instance<'_>,
    lower: &BoundReport,
    config: &SearchConfig,
) -> Result<DistanceResult, SearchError> {
    let (x, y) = (inst.x, inst.y);
    let constant = MapPair::constant(x.len(), y.len(), 0, 0);
    let mut fallback = (dis_map_pair(&constant, x, y)?, constant);
    if let Some(seed) = &config.seed {
        let value = dis_map_pair(seed, x, y)?;
        if !(inst.seed_ok)(seed) {
            return Err(SearchError::InvalidSeed(
                "the seed maps do not preserve edges".into(),
            ));
        }
        if value < fallback.0 {
            fallback = (value, seed.clone());
        }
    }

    let lower_dis = 2.0 * lower.lower;
    let accept = lower_dis + 2.0 * OPTIMALITY_TOLERANCE;
    let finish =
        |dis: f64, certificate: MapPair, nodes: u64, bound_used: String, status| DistanceResult {
            value: 0.5 * dis,
            certificate,
            lower_bound: lower.lower,
            nodes_explored: nodes,
            bound_used,
            status,
        };

    if fallback.0 <= accept {
        return Ok(finish(
            fallback.0,
            fallback.1,
            0,
            lower.strongest_lower().to_string(),
            SearchStatus::Optimal,
        ));
    }

    let problem = Problem {
        x,
        y,
        topology: inst.topology,
    };
    let outcome = search::run(
        &problem,
        &Limits {
            cap: fallback.0,
            accept,
            node_limit: config.node_limit,
            threads: config.threads.max(1),
        },
    );
    let certificate = match outcome.best {
        Some((dis, pair)) if dis <= fallback.0 => pair,
        _ => fallback.1,
    };
    let dis = dis_map_pair(&certificate, x, y)?;

    if outcome.accepted || dis <= accept {
        Ok(finish(
            dis,
            certificate,
            outcome.nodes,
            lower.strongest_lower().to_string(),
            SearchStatus::Optimal,
        ))
    } else if outcome.budget_exceeded {
        Err(SearchError::BudgetExceeded(Box::new(finish(
            dis,
            certificate,
            outcome.nodes,
            "none".into(),
            SearchStatus::BudgetExceeded,
        ))))
    } else {
        Ok(finish(
            dis,
            certificate,
            outcome.nodes,
            "exhaustive".into(),
            SearchStatus::Optimal,
        ))
    }
}

/// Exact `d_GH(X, Y)` with the default configuration.
pub fn gh_exact(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<DistanceResult, SearchError> {
    gh_exact_with(x, y, &SearchConfig::default())
}

pub fn gh_exact_with(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    config: &SearchConfig,
) -> Result<DistanceResult, SearchError> {
    let lower = bounds::lower_bounds(x, y);
    solve(
        &Instance {
            x,
            y,
            topology: None,
            seed_ok: &|_| true,
        },
        &lower,
        config,
    )
}

/// Exhaustive minimum of `½·dis_map_pair` over all map pairs, without any
/// pruning. Refuses inputs with more than [`BRUTEFORCE_CAP`] pairs.
pub fn gh_bruteforce(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<f64, SearchError> {
    gh_bruteforce_capped(x, y, BRUTEFORCE_CAP)
}

pub fn gh_bruteforce_capped(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    cap: f64,
) -> Result<f64, SearchError> {
    let (nx, ny) = (x.len(), y.len());
    let pairs = (ny as f64).powi(nx as i32) * (nx as f64).powi(ny as i32);
    if pairs > cap {
        return Err(SearchError::TooLarge { pairs, cap });
    }
    let fs = all_maps(nx, ny);
    let gs = all_maps(ny, nx);
    let dis_f: Vec<f64> = fs
        .iter()
        .map(|f| distortion_map(f, x, y))
        .collect::<Result<_, _>>()?;
    let dis_g: Vec<f64> = gs
        .iter()
        .map(|g| distortion_map(g, y, x))
        .collect::<Result<_, _>>()?;
    let mut pair = MapPair::constant(nx, ny, 0, 0);
    let mut best = f64::INFINITY;
    for (f, df) in fs.iter().zip(&dis_f) {
        pair.f.clone_from(f);
        for (g, dg) in gs.iter().zip(&dis_g) {
            pair.g.clone_from(g);
            let value = df.max(*dg).max(codistortion(&pair, x, y)?);
            best = best.min(value);
        }
    }
    Ok(0.5 * best)
}

fn all_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut maps = Vec::new();
    let mut current = vec![0; from];
    loop {
        maps.push(current.clone());
        let mut i = 0;
        while i < from {
            current[i] += 1;
            if current[i] < to {
                break;
            }
            current[i] = 0;
            i += 1;
        }
        if i == from {
            return maps;
        }
    }
}

/// Finds a map pair with `dis_map_pair <= epsilon`.
///
/// For `epsilon` below the separation of both spaces any such pair consists
/// of mutually inverse bijections, so a pair is only possible when the
/// spaces have the same size.
pub fn find_eps_isometry(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    epsilon: f64,
) -> Result<MapPair, SearchError> {
    find_eps_isometry_with(x, y, epsilon, &SearchConfig::default())
}

pub fn find_eps_isometry_with(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    epsilon: f64,
    config: &SearchConfig,
) -> Result<MapPair, SearchError> {
    let limit = match (x.len(), y.len()) {
        (1, 1) => f64::INFINITY,
        (1, _) => y.separation(),
        (_, 1) => x.separation(),
        _ => x.separation().min(y.separation()),
    };
    if epsilon.is_nan() || epsilon >= limit {
        return Err(SearchError::EpsilonTooLarge { epsilon, limit });
    }
    if x.len() != y.len() {
        return Err(SearchError::NotFound(epsilon));
    }
    let outcome = search::run(
        &Problem {
            x,
            y,
            topology: None,
        },
        &Limits {
            cap: epsilon,
            accept: epsilon,
            node_limit: config.node_limit,
            threads: config.threads.max(1),
        },
    );
    match outcome.best {
        Some((_, pair)) if outcome.accepted => {
            debug_assert!(pair.g_after_f_is_identity() && pair.f_after_g_is_identity());
            Ok(pair)
        }
        _ if outcome.budget_exceeded => Err(SearchError::Inconclusive {
            nodes: outcome.nodes,
        }),
        _ => Err(SearchError::NotFound(epsilon)),
    }
}

/// Outcome of [`check_isometry_rigidity`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Rigidity {
    /// `dis f <= ε` and every distance is preserved, or `dis f > ε`.
    Holds,
    /// `dis f <= ε` yet the distance between `x` and `x2` changes.
    Fails { x: usize, x2: usize },
    /// The spectrum of `X` has gaps not exceeding `ε`.
    Skipped { reason: String },
}

impl Rigidity {
    pub fn holds(&self) -> bool {
        matches!(self, Rigidity::Holds)
    }
}

/// Checks that an ε-isometry `p.f: X -> Y` is an exact isometry onto its
/// image, which is forced once distinct distances of `X` are more than `ε`
/// apart and `Y` realizes the same distances.
pub fn check_isometry_rigidity(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    p: &MapPair,
    epsilon: f64,
) -> Result<Rigidity, SearchError> {
    let gap = x
        .dist_spectrum()
        .min_gap(TOLERANCE)
        .unwrap_or(f64::INFINITY);
    if gap <= epsilon {
        return Ok(Rigidity::Skipped {
            reason: format!("spectrum gap {gap} does not exceed epsilon {epsilon}"),
        });
    }
    if distortion_map(&p.f, x, y)? > epsilon {
        return Ok(Rigidity::Holds);
    }
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if (x.d(i, j) - y.d(p.f[i], p.f[j])).abs() > TOLERANCE {
                return Ok(Rigidity::Fails { x: i, x2: j });
            }
        }
    }
    Ok(Rigidity::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Norm;

    fn line(points: &[f64]) -> FiniteMetricSpace {
        FiniteMetricSpace::from_points(
            &points.iter().map(|&p| vec![p]).collect::<Vec<_>>(),
            Norm::L1,
        )
        .unwrap()
    }

    #[test]
    fn self_distance_is_zero_with_identity() {
        let x = line(&[0.0, 1.0, 3.0]);
        let r = gh_exact(&x, &x).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.certificate.f, vec![0, 1, 2]);
        assert_eq!(r.certificate.g, vec![0, 1, 2]);
        assert_eq!(r.status, SearchStatus::Optimal);
    }

    #[test]
    fn one_point_law() {
        let x = line(&[0.0, 1.0, 3.0]);
        let p = FiniteMetricSpace::one_point();
        assert_eq!(gh_exact(&p, &x).unwrap().value, 1.5);
        assert_eq!(gh_exact(&x, &p).unwrap().value, 1.5);
    }

    #[test]
    fn bruteforce_two_points() {
        let a = line(&[0.0, 1.0]);
        let b = line(&[0.0, 2.0]);
        assert_eq!(gh_bruteforce(&a, &b).unwrap(), 0.5);
        assert_eq!(gh_bruteforce(&a, &a).unwrap(), 0.0);
        assert_eq!(gh_exact(&a, &b).unwrap().value, 0.5);
    }

    #[test]
    fn bruteforce_refuses_large_inputs() {
        let x = line(&(0..8).map(f64::from).collect::<Vec<_>>());
        assert!(matches!(
            gh_bruteforce(&x, &x),
            Err(SearchError::TooLarge { .. })
        ));
    }

    #[test]
    fn exact_matches_bruteforce_on_lines() {
        let x = line(&[0.0, 1.0, 3.0, 7.0]);
        let y = line(&[0.0, 2.0, 3.0]);
        let exact = gh_exact(&x, &y).unwrap();
        assert_eq!(exact.value, gh_bruteforce(&x, &y).unwrap());
        assert_eq!(
            exact.value,
            0.5 * dis_map_pair(&exact.certificate, &x, &y).unwrap()
        );
    }

    #[test]
    fn tiny_budget_reports_incumbent() {
        let x = line(&[0.0, 1.0, 3.0, 7.0]);
        let y = line(&[0.0, 2.0, 3.0, 4.5]);
        let err = gh_exact_with(&x, &y, &SearchConfig::default().with_node_limit(2)).unwrap_err();
        let partial = err.partial().unwrap();
        assert_eq!(partial.status, SearchStatus::BudgetExceeded);
        assert!(partial.value >= gh_exact(&x, &y).unwrap().value);
    }

    #[test]
    fn seed_proven_by_lower_bound_is_returned() {
        let x = line(&[0.0, 1.0]);
        let y = line(&[0.0, 2.0]);
        let seed = MapPair::new(vec![1, 0], vec![1, 0]).unwrap();
        let r = gh_exact_with(&x, &y, &SearchConfig::default().with_seed(seed.clone())).unwrap();
        assert_eq!(r.certificate, seed);
        assert_eq!(r.nodes_explored, 0);
    }

    #[test]
    fn eps_isometry_on_equal_spaces() {
        let x = line(&[0.0, 1.0, 3.0]);
        let p = find_eps_isometry(&x, &x, 0.5).unwrap();
        assert_eq!(p.f, vec![0, 1, 2]);
        assert!(p.g_after_f_is_identity());
    }

    #[test]
    fn eps_isometry_errors() {
        let x = line(&[0.0, 1.0, 3.0]);
        let y = line(&[0.0, 1.0, 3.5]);
        assert!(matches!(
            find_eps_isometry(&x, &y, 1.0),
            Err(SearchError::EpsilonTooLarge { .. })
        ));
        assert!(matches!(
            find_eps_isometry(&x, &y, 0.25),
            Err(SearchError::NotFound(_))
        ));
        assert!(find_eps_isometry(&x, &y, 0.5).is_ok());
        let z = line(&[0.0, 1.0]);
        assert!(matches!(
            find_eps_isometry(&x, &z, 0.5),
            Err(SearchError::NotFound(_))
        ));
    }

    #[test]
    fn rigidity() {
        let x = line(&[0.0, 1.0, 2.0]);
        let y = line(&[0.0, 1.3, 2.0]);
        let id = MapPair::new(vec![0, 1, 2], vec![0, 1, 2]).unwrap();
        assert!(check_isometry_rigidity(&x, &x, &id, 0.4).unwrap().holds());
        assert_eq!(
            check_isometry_rigidity(&x, &y, &id, 0.4).unwrap(),
            Rigidity::Fails { x: 0, x2: 1 }
        );
        assert!(matches!(
            check_isometry_rigidity(&x, &x, &id, 1.0).unwrap(),
            Rigidity::Skipped { .. }
        ));
    }
}
