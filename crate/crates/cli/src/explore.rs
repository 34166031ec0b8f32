//! Exploration presets. Each row is an empirical data point: exact when the
//! orientation space fits under the cap, otherwise a search value (a lower
//! bound on the upper domination number, attained by an explicit witness).

use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::anyhow;
use hyperdom::bounds::{first_moment_lower_bound, upper_bound_thm2i};
use hyperdom::coloring::independence_number;
use hyperdom::extremal::{gamma_upper_exact, gamma_upper_search, EnumerationOptions, SearchConfig};
use hyperdom::{binomial, Hypergraph, Orientation};

use crate::manifest::{emit, Run};
use crate::{ExploreArgs, Failure, Outcome, Preset};

struct Point {
    n: usize,
    r: usize,
    p: usize,
    edges: usize,
    value: usize,
    exact: bool,
    heuristic: bool,
    examined: u64,
    upper: Option<f64>,
    lower: Option<usize>,
    scale: f64,
}

fn mix(seed: u64, n: usize, p: usize) -> u64 {
    let mut z = seed ^ ((n as u64) << 32) ^ (p as u64);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn evaluate(
    a: &ExploreArgs,
    h: Arc<Hypergraph>,
    p: usize,
    seed: u64,
) -> Result<(usize, bool, bool, u64), Failure> {
    let fits = Orientation::count(&h).is_some_and(|c| c <= a.cap);
    if fits {
        let opts = EnumerationOptions {
            cap: a.cap,
            fix_first_edge: h.is_complete() && h.edge_count() > 0,
        };
        let res = gamma_upper_exact(&h, p, opts)?;
        return Ok((res.value, true, false, res.orientations_examined));
    }
    let cfg = SearchConfig {
        restarts: a.restarts,
        max_steps: a.max_steps,
        seed,
        plateau_limit: a.plateau,
        node_budget: Some(a.node_budget),
    };
    let (res, _) = gamma_upper_search(&h, p, &cfg)?;
    Ok((res.value, false, res.heuristic, res.orientations_examined))
}

fn complete_point(
    a: &ExploreArgs,
    n: usize,
    r: usize,
    p: usize,
    seed: u64,
    scale: f64,
) -> Result<Point, Failure> {
    let h = Arc::new(Hypergraph::complete(n, r)?);
    let (value, exact, heuristic, examined) = evaluate(a, h.clone(), p, mix(seed, n, p))?;
    let lower = if p + 1 == r {
        first_moment_lower_bound(n, r)?.map(|c| c.certified_lower())
    } else {
        None
    };
    Ok(Point {
        n,
        r,
        p,
        edges: h.edge_count(),
        value,
        exact,
        heuristic,
        examined,
        upper: Some(upper_bound_thm2i(n, r)?),
        lower,
        scale,
    })
}

pub fn run(a: &ExploreArgs, seed: u64) -> Outcome {
    if a.n_min == 0 || a.n_min > a.n_max {
        return Err(Failure::Usage(anyhow!("need 1 <= n-min <= n-max")));
    }
    if !(0.0..=1.0).contains(&a.density) {
        return Err(Failure::Usage(anyhow!("density must lie in [0, 1]")));
    }
    let mut points = Vec::new();
    for n in a.n_min..=a.n_max {
        let ln = (n as f64).ln();
        match a.preset {
            Preset::CompleteGrowth => {
                for p in 1..a.r.max(1) {
                    points.push(complete_point(a, n, a.r, p, seed, ln)?);
                }
            }
            Preset::PairPrefix => points.push(complete_point(a, n, 3, 2, seed, ln.sqrt())?),
            Preset::SinglePrefix => points.push(complete_point(a, n, 3, 1, seed, ln)?),
            Preset::AlphaRatio => {
                let total = binomial(n as u64, a.r as u64);
                let m = (a.density * total as f64).round() as usize;
                let h = Arc::new(Hypergraph::random(n, a.r, m, mix(seed, n, 0))?);
                let alpha = independence_number(&h, 64)?;
                let (value, exact, heuristic, examined) = evaluate(a, h, a.p, mix(seed, n, a.p))?;
                points.push(Point {
                    n,
                    r: a.r,
                    p: a.p,
                    edges: m,
                    value,
                    exact,
                    heuristic,
                    examined,
                    upper: None,
                    lower: None,
                    scale: alpha as f64 * ln,
                });
            }
        }
    }

    let mut run = Run::new("explore", a, seed);
    if let Some(path) = &a.out {
        run.declare_output(path);
    }
    let preset = serde_json::to_value(a.preset).expect("preset serializes");
    let preset = preset.as_str().unwrap_or_default();
    let mut csv = run.comment_header();
    csv.push_str("preset,n,r,p,edges,value,exact,heuristic,orientations_examined,thm2i_upper,certified_lower,scale,ratio\n");
    for pt in &points {
        let ratio = if pt.scale > 0.0 {
            (pt.value as f64 / pt.scale).to_string()
        } else {
            String::new()
        };
        writeln!(
            csv,
            "{preset},{},{},{},{},{},{},{},{},{},{},{},{}",
            pt.n,
            pt.r,
            pt.p,
            pt.edges,
            pt.value,
            pt.exact,
            pt.heuristic,
            pt.examined,
            pt.upper.map(|u| u.to_string()).unwrap_or_default(),
            pt.lower.map(|l| l.to_string()).unwrap_or_default(),
            pt.scale,
            ratio
        )
        .expect("string write");
    }
    emit(a.out.as_ref(), &csv)?;
    Ok(true)
}
