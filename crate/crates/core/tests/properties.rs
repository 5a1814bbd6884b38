mod common;

use common::*;
use ghdist::fixtures::{build_counterexample_checks, build_omega_space};
use ghdist::{
    check_isometry_rigidity, codistortion, dis_map_pair, distortion_rel, find_eps_isometry,
    gh_exact, gh_exact_with, ghc_exact, ghc_lower_bounds, ghc_lower_connectivity, is_incomparable,
    lower_bounds, CombinatorialSpace, FiniteMetricSpace, MapPair, Relation, SearchConfig,
    TOLERANCE,
};
use proptest::prelude::*;

fn space_strategy(max_points: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    any::<u64>().prop_map(move |seed| random_space(&mut rng(seed), max_points))
}

fn model_strategy(max_points: usize) -> impl Strategy<Value = CombinatorialSpace> {
    any::<u64>().prop_map(move |seed| random_model(&mut rng(seed), max_points))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_chains_hold(x in space_strategy(7)) {
        let inv = x.invariants();
        prop_assert!(0.0 <= inv.s_val && inv.s_val <= inv.d_val);
        prop_assert!(inv.d_val <= inv.diam && inv.diam <= 2.0 * inv.chebyshev_radius);
        prop_assert!(inv.s_val <= inv.chebyshev_radius && inv.chebyshev_radius <= inv.diam);
        let spectrum = x.dist_spectrum();
        prop_assert_eq!(spectrum.max(), inv.diam);
        prop_assert_eq!(spectrum.min_positive().unwrap_or(0.0), inv.s_val);
    }

    #[test]
    fn hausdorff_is_a_pseudometric(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_space(&mut rng, 6);
        let n = x.len();
        let mut subset = || {
            let s: Vec<usize> = (0..n).filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
            if s.is_empty() { vec![0] } else { s }
        };
        let (a, b, c) = (subset(), subset(), subset());
        let ab = x.hausdorff(&a, &b).unwrap();
        prop_assert_eq!(ab, x.hausdorff(&b, &a).unwrap());
        prop_assert_eq!(x.hausdorff(&a, &a).unwrap(), 0.0);
        prop_assert!(x.hausdorff(&a, &c).unwrap() <= ab + x.hausdorff(&b, &c).unwrap() + TOLERANCE);
        let all: Vec<usize> = (0..n).collect();
        prop_assert_eq!(x.hausdorff(&a, &all).unwrap() == 0.0, a.len() == n);
    }

    #[test]
    fn spectrum_scales(x in space_strategy(5), k in 1u32..8) {
        let lambda = k as f64 / 4.0;
        let scaled: Vec<f64> = x.dist_spectrum().values().iter().map(|v| lambda * v).collect();
        let rescaled = x.scale(lambda).unwrap().dist_spectrum();
        prop_assert_eq!(rescaled.values(), &scaled[..]);
    }

    #[test]
    fn pairs_inside_a_correspondence_distort_less(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_space(&mut rng, 4);
        let y = random_space(&mut rng, 4);
        let p = random_pair(&mut rng, x.len(), y.len());
        let mut pairs: Vec<(usize, usize)> = p.correspondence().pairs().collect();
        for _ in 0..3 {
            pairs.push((rand::Rng::gen_range(&mut rng, 0..x.len()), rand::Rng::gen_range(&mut rng, 0..y.len())));
        }
        let r = Relation::new(x.len(), y.len(), pairs).unwrap();
        prop_assert!(dis_map_pair(&p, &x, &y).unwrap() <= distortion_rel(&r, &x, &y).unwrap());
    }

    #[test]
    fn composition_is_subadditive(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_space(&mut rng, 4);
        let y = random_space(&mut rng, 4);
        let z = random_space(&mut rng, 4);
        let p = random_pair(&mut rng, x.len(), y.len());
        let q = random_pair(&mut rng, y.len(), z.len());
        let (s, t) = (p.correspondence(), q.correspondence());
        let st = s.compose(&t).unwrap();
        prop_assert!(
            distortion_rel(&st, &x, &z).unwrap()
                <= distortion_rel(&s, &x, &y).unwrap() + distortion_rel(&t, &y, &z).unwrap() + TOLERANCE
        );
        // codis(h∘f, g∘k) <= codis(f, g) + codis(h, k)
        let chained = MapPair {
            f: p.f.iter().map(|&b| q.f[b]).collect(),
            g: q.g.iter().map(|&b| p.g[b]).collect(),
        };
        prop_assert!(
            codistortion(&chained, &x, &z).unwrap()
                <= codistortion(&p, &x, &y).unwrap() + codistortion(&q, &y, &z).unwrap() + TOLERANCE
        );
    }

    #[test]
    fn gh_is_a_pseudometric(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_space(&mut rng, 4);
        let y = random_space(&mut rng, 4);
        let z = random_space(&mut rng, 4);
        let xy = gh_exact(&x, &y).unwrap().value;
        prop_assert_eq!(xy, gh_exact(&y, &x).unwrap().value);
        prop_assert_eq!(gh_exact(&x, &x).unwrap().value, 0.0);
        let xz = gh_exact(&x, &z).unwrap().value;
        prop_assert!(xz <= xy + gh_exact(&y, &z).unwrap().value + TOLERANCE);
        let spectrum = 0.5 * x.dist_spectrum().hausdorff(&y.dist_spectrum());
        prop_assert!(spectrum <= xy + TOLERANCE);
        if xy == 0.0 {
            prop_assert_eq!(x.dist_spectrum(), y.dist_spectrum());
            prop_assert_eq!(x.separation(), y.separation());
        }
    }

    #[test]
    fn separation_disjunctions(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_space(&mut rng, 4);
        let y = random_space(&mut rng, 4);
        let d = 2.0 * gh_exact(&x, &y).unwrap().value;
        let (sx, sy) = (x.separation(), y.separation());
        let spectra = x.dist_spectrum().hausdorff(&y.dist_spectrum());
        prop_assert!(sx <= d + TOLERANCE || sy <= sx + d + TOLERANCE);
        prop_assert!(2.0 * sx < sy || sy - sx <= spectra + TOLERANCE);
    }

    #[test]
    fn result_value_matches_certificate(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_space(&mut rng, 5);
        let y = random_space(&mut rng, 5);
        let r = gh_exact(&x, &y).unwrap();
        prop_assert_eq!(r.value, 0.5 * dis_map_pair(&r.certificate, &x, &y).unwrap());
        prop_assert!(r.value >= lower_bounds(&x, &y).lower);
    }

    #[test]
    fn threads_do_not_change_results(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_space(&mut rng, 6);
        let y = random_space(&mut rng, 6);
        let one = gh_exact_with(&x, &y, &SearchConfig::default()).unwrap();
        let four = gh_exact_with(&x, &y, &SearchConfig::default().with_threads(4)).unwrap();
        prop_assert_eq!(one.value, four.value);
        prop_assert_eq!(one.certificate, four.certificate);
    }

    #[test]
    fn bounds_scale(seed in any::<u64>(), k in 1u32..8) {
        let mut rng = rng(seed);
        let xc = random_model(&mut rng, 4);
        let yc = random_model(&mut rng, 4);
        let lambda = k as f64 / 4.0;
        let scale = |m: &CombinatorialSpace| {
            CombinatorialSpace::new(m.metric().scale(lambda).unwrap(), m.edges().to_vec()).unwrap()
        };
        let plain = ghc_lower_bounds(&xc, &yc);
        let scaled = ghc_lower_bounds(&scale(&xc), &scale(&yc));
        for (a, b) in plain.provenance.iter().zip(&scaled.provenance) {
            prop_assert!((lambda * a.value - b.value).abs() <= 1e-12, "{} {} {}", a.name, a.value, b.value);
        }
        prop_assert!((lambda * ghc_exact(&xc, &yc).unwrap().value
            - ghc_exact(&scale(&xc), &scale(&yc)).unwrap().value).abs() <= 1e-12);
    }

    #[test]
    fn continuous_distance_dominates(xc in model_strategy(4), yc in model_strategy(4)) {
        let gh = gh_exact(xc.metric(), yc.metric()).unwrap().value;
        let ghc = ghc_exact(&xc, &yc).unwrap().value;
        prop_assert!(gh <= ghc + TOLERANCE);
        prop_assert!(ghc_lower_connectivity(&xc, &yc) <= ghc + TOLERANCE);
        prop_assert!(ghc_lower_bounds(&xc, &yc).lower <= ghc + TOLERANCE);
        let upper = 0.5 * xc.metric().diameter().max(yc.metric().diameter());
        if is_incomparable(&xc, &yc) && is_incomparable(&yc, &xc) {
            prop_assert!((ghc - upper).abs() <= 1e-12);
        }
    }

    #[test]
    fn edgeless_models_agree(x in space_strategy(4), y in space_strategy(4)) {
        let gh = gh_exact(&x, &y).unwrap().value;
        let ghc = ghc_exact(&CombinatorialSpace::edgeless(x.clone()), &CombinatorialSpace::edgeless(y.clone()))
            .unwrap()
            .value;
        prop_assert_eq!(gh, ghc);
        if 2.0 * gh < x.separation() {
            prop_assert_eq!(gh, ghc);
        }
    }
}

#[test]
fn incomparability_matches_enumeration() {
    let mut rng = rng(77);
    for _ in 0..200 {
        let xc = random_model(&mut rng, 4);
        let yc = random_model(&mut rng, 3);
        let mut f = vec![0; xc.len()];
        let mut only_constant = true;
        loop {
            let constant = f.iter().all(|&v| v == f[0]);
            if !constant && ghdist::is_admissible(&f, &xc, &yc).unwrap() {
                only_constant = false;
            }
            let mut i = 0;
            while i < f.len() {
                f[i] += 1;
                if f[i] < yc.len() {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
            if i == f.len() {
                break;
            }
        }
        assert_eq!(is_incomparable(&xc, &yc), only_constant);
    }
}

#[test]
fn eps_isometries_are_inverse_bijections() {
    let fx = build_omega_space(8).unwrap();
    let x = fx.space("X").unwrap().metric();
    let y = fx.space("Y").unwrap().metric();
    for m in 1..=8 {
        let p = find_eps_isometry(x, y, 1.0 / (2.0 * m as f64)).unwrap();
        assert!(p.g_after_f_is_identity() && p.f_after_g_is_identity());
        // X and Y are not isometric, so no map pair can pass as one.
        assert!(!check_isometry_rigidity(x, y, &p, 1.0 / (2.0 * m as f64))
            .unwrap()
            .holds());
    }
    let too_tight = find_eps_isometry(x, y, 1.0 / 40.0);
    assert!(too_tight.is_err());
}

#[test]
fn counterexample_checks_hold() {
    let report = build_counterexample_checks().unwrap();
    for check in &report.checks {
        assert!(check.holds, "{check:?}");
    }
    assert!(report.checks.len() > 20);
}
