//! Relations between finite spaces, map pairs, and the distortion functionals.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::FiniteMetricSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("a relation needs at least one pair")]
    EmptyRelation,
    #[error("pair ({0}, {1}) is out of range for sizes {2} x {3}")]
    IndexOutOfRange(usize, usize, usize, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("the composition of the two relations is empty")]
    EmptyComposition,
    #[error(
        "map value {value} at position {position} is out of range for a codomain of {size} points"
    )]
    MapOutOfRange {
        position: usize,
        value: usize,
        size: usize,
    },
}

/// A non-empty subset of `X x Y`, stored as sorted index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    domain_size: usize,
    codomain_size: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(
        domain_size: usize,
        codomain_size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RelationError> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(RelationError::EmptyRelation);
        }
        if let Some(&(i, j)) = pairs
            .iter()
            .find(|&&(i, j)| i >= domain_size || j >= codomain_size)
        {
            return Err(RelationError::IndexOutOfRange(
                i,
                j,
                domain_size,
                codomain_size,
            ));
        }
        Ok(Relation {
            domain_size,
            codomain_size,
            pairs,
        })
    }

    pub fn identity(n: usize) -> Self {
        Relation::new(n, n, (0..n).map(|i| (i, i))).expect("n > 0")
    }

    /// Graph of a total map given as an index array.
    pub fn graph(map: &[usize], codomain_size: usize) -> Result<Self, RelationError> {
        Relation::new(map.len(), codomain_size, map.iter().copied().enumerate())
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn pairs(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn inverse(&self) -> Relation {
        Relation {
            domain_size: self.codomain_size,
            codomain_size: self.domain_size,
            pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// True iff every point of both sides occurs in some pair.
    pub fn is_correspondence(&self) -> bool {
        let mut left = vec![false; self.domain_size];
        let mut right = vec![false; self.codomain_size];
        for &(i, j) in &self.pairs {
            left[i] = true;
            right[j] = true;
        }
        left.into_iter().chain(right).all(|b| b)
    }

    /// Relational composition `tau ∘ self`.
    pub fn compose(&self, tau: &Relation) -> Result<Relation, RelationError> {
        if self.codomain_size != tau.domain_size {
            return Err(RelationError::SizeMismatch(format!(
                "cannot compose a relation into {} points with one out of {} points",
                self.codomain_size, tau.domain_size
            )));
        }
        let pairs: BTreeSet<_> = self
            .pairs
            .iter()
            .flat_map(|&(x, y)| {
                tau.pairs
                    .range((y, 0)..(y + 1, 0))
                    .map(move |&(_, z)| (x, z))
            })
            .collect();
        if pairs.is_empty() {
            return Err(RelationError::EmptyComposition);
        }
        Ok(Relation {
            domain_size: self.domain_size,
            codomain_size: tau.codomain_size,
            pairs,
        })
    }

    fn check_spaces(
        &self,
        x: &FiniteMetricSpace,
        y: &FiniteMetricSpace,
    ) -> Result<(), RelationError> {
        if x.len() != self.domain_size || y.len() != self.codomain_size {
            return Err(RelationError::SizeMismatch(format!(
                "relation is {} x {}, spaces have {} and {} points",
                self.domain_size,
                self.codomain_size,
                x.len(),
                y.len()
            )));
        }
        Ok(())
    }
}

/// Pairs list as it appears in JSON; sizes come from the spaces it is used with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub pairs: Vec<[usize; 2]>,
}

impl From<&Relation> for RelationJson {
    fn from(r: &Relation) -> Self {
        RelationJson {
            pairs: r.pairs().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl RelationJson {
    pub fn bind(
        &self,
        domain_size: usize,
        codomain_size: usize,
    ) -> Result<Relation, RelationError> {
        Relation::new(
            domain_size,
            codomain_size,
            self.pairs.iter().map(|p| (p[0], p[1])),
        )
    }
}

/// A pair of total maps `f: X -> Y`, `g: Y -> X` as dense index arrays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MapPair {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

impl MapPair {
    pub fn new(f: Vec<usize>, g: Vec<usize>) -> Result<Self, RelationError> {
        let pair = MapPair { f, g };
        pair.check_ranges()?;
        Ok(pair)
    }

    /// Constant maps `f ≡ y`, `g ≡ x`.
    pub fn constant(x_size: usize, y_size: usize, x: usize, y: usize) -> Self {
        MapPair {
            f: vec![y; x_size],
            g: vec![x; y_size],
        }
    }

    pub fn x_size(&self) -> usize {
        self.f.len()
    }

    pub fn y_size(&self) -> usize {
        self.g.len()
    }

    /// The same pair viewed from `Y` to `X`.
    pub fn swapped(&self) -> MapPair {
        MapPair {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    fn check_ranges(&self) -> Result<(), RelationError> {
        for (map, size) in [(&self.f, self.g.len()), (&self.g, self.f.len())] {
            if let Some((position, &value)) = map.iter().enumerate().find(|(_, &v)| v >= size) {
                return Err(RelationError::MapOutOfRange {
                    position,
                    value,
                    size,
                });
            }
        }
        if self.f.is_empty() || self.g.is_empty() {
            return Err(RelationError::EmptyRelation);
        }
        Ok(())
    }

    fn check_spaces(
        &self,
        x: &FiniteMetricSpace,
        y: &FiniteMetricSpace,
    ) -> Result<(), RelationError> {
        if self.f.len() != x.len() || self.g.len() != y.len() {
            return Err(RelationError::SizeMismatch(format!(
                "maps are defined on {} and {} points, spaces have {} and {}",
                self.f.len(),
                self.g.len(),
                x.len(),
                y.len()
            )));
        }
        self.check_ranges()
    }

    /// `R_{f,g}`: the graph of `f` together with the inverse graph of `g`.
    pub fn correspondence(&self) -> Relation {
        let pairs = self
            .f
            .iter()
            .copied()
            .enumerate()
            .chain(self.g.iter().enumerate().map(|(y, &x)| (x, y)));
        Relation::new(self.f.len(), self.g.len(), pairs).expect("maps are total and in range")
    }

    /// `(g ∘ f)(x) == x` for every `x`.
    pub fn g_after_f_is_identity(&self) -> bool {
        self.f.iter().enumerate().all(|(x, &y)| self.g[y] == x)
    }

    /// `(f ∘ g)(y) == y` for every `y`.
    pub fn f_after_g_is_identity(&self) -> bool {
        self.g.iter().enumerate().all(|(y, &x)| self.f[x] == y)
    }
}

/// `max | |xx'| - |yy'| |` over pairs of pairs of `sigma`.
pub fn distortion_rel(
    sigma: &Relation,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, RelationError> {
    sigma.check_spaces(x, y)?;
    let pairs: Vec<_> = sigma.pairs().collect();
    let mut dis: f64 = 0.0;
    for (k, &(a, b)) in pairs.iter().enumerate() {
        for &(a2, b2) in &pairs[k + 1..] {
            dis = dis.max((x.d(a, a2) - y.d(b, b2)).abs());
        }
    }
    Ok(dis)
}

/// Distortion of the graph of `f`.
pub fn distortion_map(
    f: &[usize],
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, RelationError> {
    if f.len() != x.len() {
        return Err(RelationError::SizeMismatch(format!(
            "map is defined on {} points, domain has {}",
            f.len(),
            x.len()
        )));
    }
    if let Some((position, &value)) = f.iter().enumerate().find(|(_, &v)| v >= y.len()) {
        return Err(RelationError::MapOutOfRange {
            position,
            value,
            size: y.len(),
        });
    }
    let mut dis: f64 = 0.0;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            dis = dis.max((x.d(i, j) - y.d(f[i], f[j])).abs());
        }
    }
    Ok(dis)
}

/// `max | |x g(y)| - |f(x) y| |` over `x ∈ X`, `y ∈ Y`.
pub fn codistortion(
    p: &MapPair,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, RelationError> {
    p.check_spaces(x, y)?;
    let mut codis: f64 = 0.0;
    for (xi, &fx) in p.f.iter().enumerate() {
        for (yi, &gy) in p.g.iter().enumerate() {
            codis = codis.max((x.d(xi, gy) - y.d(fx, yi)).abs());
        }
    }
    Ok(codis)
}

/// Distortion of `R_{f,g}` computed as `max{dis f, dis g, codis(f, g)}`.
pub fn dis_map_pair(
    p: &MapPair,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, RelationError> {
    let codis = codistortion(p, x, y)?;
    Ok(distortion_map(&p.f, x, y)?
        .max(distortion_map(&p.g, y, x)?)
        .max(codis))
}

/// Relation built from the graph of a map pair; alias of
/// [`MapPair::correspondence`].
pub fn corr_from_maps(p: &MapPair) -> Relation {
    p.correspondence()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Norm;

    fn two(d: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::validate(vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn isometry_graph_has_zero_distortion() {
        let x = two(1.0);
        let swap = Relation::new(2, 2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(distortion_rel(&swap, &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn full_relation_to_a_point() {
        let x = two(1.0);
        let p = FiniteMetricSpace::one_point();
        let full = Relation::new(2, 1, [(0, 0), (1, 0)]).unwrap();
        assert_eq!(distortion_rel(&full, &x, &p).unwrap(), 1.0);
        let single = Relation::new(2, 1, [(0, 0)]).unwrap();
        assert_eq!(distortion_rel(&single, &x, &p).unwrap(), 0.0);
    }

    #[test]
    fn relation_construction_errors() {
        assert_eq!(
            Relation::new(2, 2, []).unwrap_err(),
            RelationError::EmptyRelation
        );
        assert_eq!(
            Relation::new(2, 2, [(0, 2)]).unwrap_err(),
            RelationError::IndexOutOfRange(0, 2, 2, 2)
        );
        let r = Relation::identity(3);
        assert!(matches!(
            distortion_rel(&r, &two(1.0), &two(1.0)),
            Err(RelationError::SizeMismatch(_))
        ));
    }

    #[test]
    fn map_distortion() {
        let x =
            FiniteMetricSpace::from_points(&[vec![0.0], vec![1.0], vec![3.0]], Norm::L1).unwrap();
        assert_eq!(distortion_map(&[0, 1, 2], &x, &x).unwrap(), 0.0);
        assert_eq!(distortion_map(&[1, 1, 1], &x, &x).unwrap(), x.diameter());
        assert!(distortion_map(&[0, 1], &x, &x).is_err());
        assert!(matches!(
            distortion_map(&[0, 1, 5], &x, &x),
            Err(RelationError::MapOutOfRange {
                position: 2,
                value: 5,
                size: 3
            })
        ));
    }

    #[test]
    fn codistortion_examples() {
        let x = two(1.0);
        let id_swap = MapPair::new(vec![0, 1], vec![1, 0]).unwrap();
        // (x, y) = (0, 0): |0 g(0)| = |01| = 1, |f(0) 0| = 0.
        assert_eq!(codistortion(&id_swap, &x, &x).unwrap(), 1.0);
        let iso = MapPair::new(vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!(codistortion(&iso, &x, &x).unwrap(), 0.0);

        let p = FiniteMetricSpace::one_point();
        let y =
            FiniteMetricSpace::from_points(&[vec![0.0], vec![2.0], vec![5.0]], Norm::L1).unwrap();
        for target in 0..3 {
            let pair = MapPair::new(vec![target], vec![0, 0, 0]).unwrap();
            let expected = y.eccentricity(target);
            assert_eq!(codistortion(&pair, &p, &y).unwrap(), expected);
            assert_eq!(dis_map_pair(&pair, &p, &y).unwrap(), y.diameter());
        }
    }

    #[test]
    fn correspondence_from_maps() {
        let id = MapPair::new(vec![0, 1, 2], vec![0, 1, 2]).unwrap();
        assert_eq!(id.correspondence(), Relation::identity(3));

        let to_point = MapPair::new(vec![0, 0], vec![1]).unwrap();
        assert_eq!(
            to_point.correspondence(),
            Relation::new(2, 1, [(0, 0), (1, 0)]).unwrap()
        );

        let constant = MapPair::constant(3, 2, 0, 1);
        let r = constant.correspondence();
        let expected: Vec<_> = vec![(0, 0), (0, 1), (1, 1), (2, 1)];
        assert_eq!(r.pairs().collect::<Vec<_>>(), expected);
        assert!(r.is_correspondence());
    }

    #[test]
    fn correspondence_check() {
        assert!(Relation::identity(2).is_correspondence());
        assert!(!Relation::new(2, 1, [(0, 0)]).unwrap().is_correspondence());
    }

    #[test]
    fn composition() {
        let id = Relation::identity(3);
        assert_eq!(id.compose(&id).unwrap(), id);

        let f = [1, 2, 0];
        let h = [2, 2, 1];
        let hf: Vec<usize> = f.iter().map(|&i| h[i]).collect();
        let composed = Relation::graph(&f, 3)
            .unwrap()
            .compose(&Relation::graph(&h, 3).unwrap())
            .unwrap();
        assert_eq!(composed, Relation::graph(&hf, 3).unwrap());

        let a = Relation::new(2, 2, [(0, 0)]).unwrap();
        let b = Relation::new(2, 2, [(1, 1)]).unwrap();
        assert_eq!(a.compose(&b).unwrap_err(), RelationError::EmptyComposition);
        assert!(matches!(
            a.compose(&Relation::identity(3)),
            Err(RelationError::SizeMismatch(_))
        ));
    }

    #[test]
    fn map_pair_validation() {
        assert!(matches!(
            MapPair::new(vec![0, 3], vec![0]),
            Err(RelationError::MapOutOfRange { .. })
        ));
        let p = MapPair::new(vec![1, 0], vec![1, 0]).unwrap();
        assert!(p.g_after_f_is_identity());
        assert!(p.f_after_g_is_identity());
        assert_eq!(p.swapped(), p);
    }

    #[test]
    fn relation_json_round_trip() {
        let r = Relation::new(3, 2, [(0, 1), (2, 0)]).unwrap();
        let json = serde_json::to_string(&RelationJson::from(&r)).unwrap();
        assert_eq!(json, r#"{"pairs":[[0,1],[2,0]]}"#);
        let back: RelationJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.bind(3, 2).unwrap(), r);
        assert!(back.bind(2, 2).is_err());
    }
}
