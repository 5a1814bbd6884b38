//! Gromov-Hausdorff distance and its continuous variant on finite metric
//! spaces.
//!
//! The plain distance `d_GH(X, Y)` is half the smallest distortion of a
//! correspondence between `X` and `Y`; equivalently, half the smallest value
//! of `max{dis f, dis g, codis(f, g)}` over pairs of maps `f: X -> Y`,
//! `g: Y -> X`. The continuous variant restricts both maps to continuous
//! ones. Here topology is carried by a graph on the points (a
//! [`CombinatorialSpace`]) and "continuous" means "sends edges to edges or
//! collapses them".
//!
//! ```
//! use ghdist::{gh_exact, FiniteMetricSpace};
//!
//! let x = FiniteMetricSpace::validate(vec![vec![0.0, 1.0], vec![1.0, 0.0]])?;
//! let y = FiniteMetricSpace::validate(vec![vec![0.0, 2.0], vec![2.0, 0.0]])?;
//! assert_eq!(gh_exact(&x, &y)?.value, 0.5);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bounds;
pub mod fixtures;
pub mod geodesic;
pub mod gh;
pub mod io;
pub mod metric;
pub mod relations;
mod search;
pub mod topo;

pub use bounds::{
    ghc_lower_bounds, ghc_lower_components, ghc_lower_connectivity, ghc_upper_partition,
    lower_bounds, upper_bound_diam, BoundKind, BoundReport, BoundTerm, BoundsError,
};
pub use geodesic::{Defect, GeodesicError, InterpolantFamily};
pub use gh::{
    check_isometry_rigidity, find_eps_isometry, find_eps_isometry_with, gh_bruteforce,
    gh_bruteforce_capped, gh_exact, gh_exact_with, DistanceResult, Rigidity, SearchConfig,
    SearchError, SearchStatus,
};
pub use io::{CombinatorialJson, FormatError, SpaceJson};
pub use metric::{DistSpectrum, FiniteMetricSpace, MetricError, Norm, SpaceInvariants, TOLERANCE};
pub use relations::{
    codistortion, corr_from_maps, dis_map_pair, distortion_map, distortion_rel, MapPair, Relation,
    RelationError, RelationJson,
};
pub use topo::{
    eps_graph, ghc_exact, ghc_exact_with, is_admissible, is_incomparable, CombinatorialSpace,
    Component, TopoError,
};
