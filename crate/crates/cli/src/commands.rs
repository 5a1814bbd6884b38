use ghdist::fixtures::{
    build_counterexample_checks, build_interval_stack, build_omega_space, build_shifted_pairs,
    build_triode, DEFAULT_OMEGA_N, DEFAULT_STACK_K, DEFAULT_TRIODE_GRID,
};
use ghdist::{
    gh_exact_with, ghc_exact_with, ghc_lower_bounds, lower_bounds, Defect, DistanceResult,
    FiniteMetricSpace, GeodesicError, InterpolantFamily, SearchConfig, SearchError, SearchStatus,
};
use serde_json::{json, Value};

use crate::input::{Placed, Source};
use crate::{Budget, CliError, Command, DistKind, FixtureName, Options, Outcome};

pub fn run(command: &Command, options: &Options) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { input } => validate(input, options),
        Command::Dist {
            kind: DistKind::Hausdorff,
            a,
            b,
            ..
        } => hausdorff(a, b, options),
        Command::Dist {
            kind,
            a,
            b,
            bounds_only,
        } => dist(*kind, a, b, *bounds_only, options),
        Command::Bounds { a, b } => bounds(a, b, options),
        Command::Geodesic { a, b, steps, t } => geodesic(a, b, *steps, t, options),
        Command::Fixture {
            name,
            n,
            k,
            grid,
            grid_exp,
        } => fixture(*name, *n, *k, *grid, *grid_exp),
    }
}

fn config(options: &Options) -> SearchConfig {
    SearchConfig::default()
        .with_node_limit(options.budget)
        .with_threads(options.threads)
}

fn outcome(inputs: Vec<&Source>, results: Value, budget: Budget, summary: String) -> Outcome {
    let code = if budget.exceeded { 3 } else { 0 };
    Outcome {
        inputs: inputs.into_iter().map(|s| s.digest.clone()).collect(),
        results,
        budget,
        summary,
        code,
    }
}

fn validate(input: &str, options: &Options) -> Result<Outcome, CliError> {
    let source = Source::read(input)?;
    let (model, has_edges) = source.model(options.tolerance)?;
    let space = model.metric();
    let results = json!({
        "valid": true,
        "points": space.len(),
        "edges": has_edges.then(|| model.edges().len()),
        "invariants": space.invariants(),
    });
    let summary = format!("{}: valid, {} points", source.path, space.len());
    Ok(outcome(vec![&source], results, Budget::default(), summary))
}

/// Runs a search and folds a budget failure into its partial result.
fn searched(result: Result<DistanceResult, SearchError>) -> Result<DistanceResult, CliError> {
    match result {
        Ok(r) => Ok(r),
        Err(SearchError::BudgetExceeded(partial)) => Ok(*partial),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn budget_of(r: &DistanceResult, options: &Options) -> Budget {
    Budget {
        node_limit: options.budget,
        nodes_explored: r.nodes_explored,
        exceeded: r.status == SearchStatus::BudgetExceeded,
    }
}

fn dist(
    kind: DistKind,
    a: &str,
    b: &str,
    bounds_only: bool,
    options: &Options,
) -> Result<Outcome, CliError> {
    let (sa, sb) = (Source::read(a)?, Source::read(b)?);
    let (xc, has_a) = sa.model(options.tolerance)?;
    let (yc, has_b) = sb.model(options.tolerance)?;
    let continuous = matches!(kind, DistKind::Ghc);
    if continuous && !(has_a && has_b) {
        return Err(CliError::Usage(
            "ghc needs both inputs as models with an \"edges\" list".into(),
        ));
    }
    let (name, report) = if continuous {
        ("ghc", ghc_lower_bounds(&xc, &yc))
    } else {
        ("gh", lower_bounds(xc.metric(), yc.metric()))
    };
    if bounds_only {
        let summary = format!("{name} in [{}, {}]", report.lower, report.upper);
        let results = json!({ "kind": name, "bounds": report });
        return Ok(outcome(vec![&sa, &sb], results, Budget::default(), summary));
    }
    let r = searched(if continuous {
        ghc_exact_with(&xc, &yc, &config(options))
    } else {
        gh_exact_with(xc.metric(), yc.metric(), &config(options))
    })?;
    let summary = match r.status {
        SearchStatus::Optimal => format!(
            "{name} = {} (optimal by {}), {} nodes",
            r.value, r.bound_used, r.nodes_explored
        ),
        SearchStatus::BudgetExceeded => format!(
            "{name} <= {} (budget exhausted after {} nodes; lower bound {})",
            r.value, r.nodes_explored, r.lower_bound
        ),
    };
    let results = json!({
        "kind": name,
        "value": r.value,
        "f": r.certificate.f,
        "g": r.certificate.g,
        "nodes": r.nodes_explored,
        "lower_bound": r.lower_bound,
        "bound_used": r.bound_used,
        "status": r.status,
        "bounds": report,
    });
    Ok(outcome(
        vec![&sa, &sb],
        results,
        budget_of(&r, options),
        summary,
    ))
}

fn hausdorff(a: &str, b: &str, options: &Options) -> Result<Outcome, CliError> {
    let (sa, sb) = (Source::read(a)?, Source::read(b)?);
    let (ambient, pa, pb) = match (sa.placed()?, sb.placed()?) {
        (
            Placed::Cloud {
                points: ca,
                norm: na,
            },
            Placed::Cloud {
                points: cb,
                norm: nb,
            },
        ) => {
            if na != nb {
                return Err(CliError::Usage(
                    "the two point clouds use different norms".into(),
                ));
            }
            let mut union: Vec<Vec<f64>> = Vec::new();
            let mut place = |cloud: Vec<Vec<f64>>| -> Vec<usize> {
                cloud
                    .into_iter()
                    .map(|p| match union.iter().position(|q| *q == p) {
                        Some(i) => i,
                        None => {
                            union.push(p);
                            union.len() - 1
                        }
                    })
                    .collect()
            };
            let (pa, pb) = (place(ca), place(cb));
            let ambient = FiniteMetricSpace::from_points(&union, na)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            (ambient, pa, pb)
        }
        (
            Placed::Subset {
                file: fa,
                of: oa,
                points: pa,
            },
            Placed::Subset {
                file: fb,
                of: ob,
                points: pb,
            },
        ) if fa == fb && oa == ob => {
            let ambient = sa.ambient(&oa, options.tolerance)?.metric().clone();
            (ambient, pa, pb)
        }
        _ => {
            return Err(CliError::Usage(
                "hausdorff needs two point clouds or two subsets of one fixture space".into(),
            ))
        }
    };
    let value = ambient
        .hausdorff(&pa, &pb)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let results = json!({
        "kind": "hausdorff",
        "value": value,
        "points_a": pa,
        "points_b": pb,
    });
    let summary = format!("hausdorff = {value}");
    Ok(outcome(vec![&sa, &sb], results, Budget::default(), summary))
}

fn bounds(a: &str, b: &str, options: &Options) -> Result<Outcome, CliError> {
    let (sa, sb) = (Source::read(a)?, Source::read(b)?);
    let (xc, has_a) = sa.model(options.tolerance)?;
    let (yc, has_b) = sb.model(options.tolerance)?;
    let gh = lower_bounds(xc.metric(), yc.metric());
    let mut summary = format!(
        "gh in [{}, {}] ({})",
        gh.lower,
        gh.upper,
        gh.strongest_lower()
    );
    let ghc = (has_a && has_b).then(|| ghc_lower_bounds(&xc, &yc));
    if let Some(ghc) = &ghc {
        summary += &format!(
            "; ghc in [{}, {}] ({})",
            ghc.lower,
            ghc.upper,
            ghc.strongest_lower()
        );
    }
    let results = json!({ "gh": gh, "ghc": ghc });
    Ok(outcome(vec![&sa, &sb], results, Budget::default(), summary))
}

fn geodesic(
    a: &str,
    b: &str,
    steps: usize,
    members: &[f64],
    options: &Options,
) -> Result<Outcome, CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let (sa, sb) = (Source::read(a)?, Source::read(b)?);
    let (x, y) = (sa.space(options.tolerance)?, sb.space(options.tolerance)?);
    let config = config(options);
    let r = searched(gh_exact_with(&x, &y, &config))?;
    let mut budget = budget_of(&r, options);
    let family = InterpolantFamily::from_certificate(x, y, &r.certificate).map_err(usage)?;

    let mut measure = |t: f64, s: f64| -> Result<Option<Defect>, CliError> {
        match family.geodesic_defect_with(t, s, &config) {
            Ok(d) => Ok(Some(d)),
            Err(GeodesicError::Search(SearchError::BudgetExceeded(_))) => {
                budget.exceeded = true;
                Ok(None)
            }
            Err(e) => Err(usage(e)),
        }
    };
    let mut rows = Vec::with_capacity(steps + 1);
    let mut length = Some(0.0);
    for k in 0..=steps {
        let t = k as f64 / steps as f64;
        let member = family.interpolate(t).map_err(usage)?;
        let from_start = measure(0.0, t)?;
        let step = if k == 0 {
            None
        } else {
            measure((k - 1) as f64 / steps as f64, t)?
        };
        if k > 0 {
            length = length.zip(step).map(|(l, d)| l + d.measured);
        }
        rows.push(json!({
            "t": t,
            "points": member.len(),
            "diameter": member.diameter(),
            "from_start": from_start.map(|d| d.measured),
            "from_start_bound": from_start.map(|d| d.bound),
            "step": step.map(|d| d.measured),
            "step_bound": step.map(|d| d.bound),
        }));
    }
    let mut picked = Vec::new();
    for &t in members {
        let member = family.interpolate(t).map_err(usage)?;
        picked.push(json!({ "t": t, "space": member }));
    }
    let results = json!({
        "distance": r.value,
        "status": r.status,
        "dis_r": family.dis_r(),
        "f": r.certificate.f,
        "g": r.certificate.g,
        "steps": rows,
        "length": length,
        "members": picked,
    });
    let summary = match length {
        Some(l) => format!("gh = {}, polyline length over {steps} steps = {l}", r.value),
        None => format!("gh <= {}, budget exhausted", r.value),
    };
    Ok(outcome(vec![&sa, &sb], results, budget, summary))
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn fixture(
    name: FixtureName,
    n: Option<usize>,
    k: Option<usize>,
    grid: Option<usize>,
    grid_exp: Option<usize>,
) -> Result<Outcome, CliError> {
    let (results, summary) = match name {
        FixtureName::Checks => {
            let report = build_counterexample_checks().map_err(usage)?;
            let failing = report.checks.iter().filter(|c| !c.holds).count();
            let summary = format!("{} checks, {failing} failing", report.checks.len());
            (
                serde_json::to_value(&report).expect("report serializes"),
                summary,
            )
        }
        _ => {
            let built = match name {
                FixtureName::Omega => build_omega_space(n.unwrap_or(DEFAULT_OMEGA_N)),
                FixtureName::Shifted => build_shifted_pairs(n.unwrap_or(DEFAULT_OMEGA_N)),
                FixtureName::IntervalStack => {
                    let k = k.unwrap_or(DEFAULT_STACK_K);
                    build_interval_stack(k, n.unwrap_or(2), grid_exp.unwrap_or(k + 2))
                }
                FixtureName::Triode => {
                    build_triode(n.unwrap_or(2), grid.unwrap_or(DEFAULT_TRIODE_GRID))
                }
                FixtureName::Checks => unreachable!(),
            }
            .map_err(usage)?;
            let names: Vec<&str> = built.spaces.iter().map(|s| s.name.as_str()).collect();
            let summary = format!("fixture {}: spaces {}", built.name, names.join(", "));
            (
                serde_json::to_value(&built).expect("fixture serializes"),
                summary,
            )
        }
    };
    Ok(Outcome {
        inputs: Vec::new(),
        results,
        budget: Budget::default(),
        summary,
        code: 0,
    })
}
