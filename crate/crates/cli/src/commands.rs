use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use hyperdom::bounds::{bounds_row, chi_bound_thm3, BoundsRow};
use hyperdom::coloring::{
    chromatic_number_exact, clique_number, greedy_complement_coloring, independence_number,
};
use hyperdom::domination::{greedy_gpl, min_directed_dominating};
use hyperdom::extremal::{gamma_upper_exact, gamma_upper_search, EnumerationOptions, SearchConfig};
use hyperdom::verify::{run_suite, VerifyParams, SUITES};
use hyperdom::{Error, Hypergraph, Orientation};
use serde_json::{json, Value};

use crate::manifest::{emit, emit_json, Run};
use crate::{
    BoundsArgs, ColorArgs, Failure, Format, GammaUpperArgs, GenArgs, GenKind, OrientArgs, Outcome,
    SolveArgs, VerifyArgs,
};

/// Reads a hypergraph in the text format, or its JSON mirror when the file
/// starts with `{`.
pub fn load_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)?;
    let parsed = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(Error::from)?;
        let inner = v.get("hypergraph").cloned().unwrap_or(v);
        serde_json::from_value(inner).map_err(Error::from)
    } else {
        Hypergraph::from_text(&text)
    };
    parsed
        .with_context(|| format!("in {}", path.display()))
        .map_err(Failure::from)
}

fn load_orientation(h: Arc<Hypergraph>, path: &Path) -> Result<Orientation, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)?;
    Orientation::from_text(h, &text)
        .with_context(|| format!("in {}", path.display()))
        .map_err(Failure::from)
}

fn orders(d: &Orientation) -> Vec<Vec<usize>> {
    d.ordered_edges().map(|oe| oe.order.to_vec()).collect()
}

pub fn gen(a: &GenArgs, seed: u64) -> Outcome {
    let h = match a.kind {
        GenKind::Complete => Hypergraph::complete(a.n, a.r)?,
        GenKind::Random => Hypergraph::random(a.n, a.r, a.m.expect("clap requires -m"), seed)?,
    };
    let mut run = Run::new("gen", a, seed);
    if let Some(p) = &a.out {
        run.declare_output(p);
    }
    if a.json {
        let body = json!({ "hypergraph": h });
        emit_json(
            a.out.as_ref(),
            &run.finish_json("hyperdom.hypergraph", body),
        )?;
    } else {
        emit(
            a.out.as_ref(),
            &format!("{}{}", run.comment_header(), h.to_text()),
        )?;
    }
    Ok(true)
}

pub fn orient(a: &OrientArgs, seed: u64) -> Outcome {
    let h = Arc::new(load_hypergraph(&a.hypergraph)?);
    let d = Orientation::random(h, seed);
    let mut run = Run::new("orient", a, seed);
    if let Some(p) = &a.out {
        run.declare_output(p);
    }
    emit(
        a.out.as_ref(),
        &format!("{}{}", run.comment_header(), d.to_text()),
    )?;
    Ok(true)
}

pub fn solve(a: &SolveArgs, seed: u64) -> Outcome {
    let h = Arc::new(load_hypergraph(&a.hypergraph)?);
    let d = match &a.orientation {
        Some(path) => load_orientation(h, path)?,
        None => Orientation::random(h, seed),
    };
    let mut run = Run::new("solve", a, seed);
    if let Some(p) = &a.out {
        run.declare_output(p);
    }
    let (cert, nodes, proven, method) = if a.greedy {
        (greedy_gpl(&d, a.p)?, 0, false, "greedy")
    } else {
        let (cert, stats) = min_directed_dominating(&d, a.p, a.budget)?;
        (cert, stats.nodes_explored, stats.proven_optimal, "exact")
    };
    let valid = cert.verify(&d);
    if !valid {
        return Err(Failure::Usage(anyhow!(
            "internal error: certificate failed verification"
        )));
    }
    let body = json!({
        "p": a.p,
        "method": method,
        "gamma": cert.size(),
        "set": cert.dominating_set,
        "witnesses": cert.witnesses,
        "proven_optimal": proven,
        "nodes_explored": nodes,
        "certificate_verified": valid,
    });
    emit_json(a.out.as_ref(), &run.finish_json("hyperdom.solve", body))?;
    Ok(true)
}

pub fn gamma_upper(a: &GammaUpperArgs, seed: u64) -> Outcome {
    let h = Arc::new(load_hypergraph(&a.hypergraph)?);
    let mut run = Run::new("gamma-upper", a, seed);
    for p in [&a.witness_out, &a.trace_out, &a.out].into_iter().flatten() {
        run.declare_output(p);
    }
    let (result, trace) = if a.search {
        let cfg = SearchConfig {
            restarts: a.restarts,
            max_steps: a.max_steps,
            seed,
            plateau_limit: a.plateau,
            node_budget: Some(a.node_budget),
        };
        let (res, trace) = gamma_upper_search(&h, a.p, &cfg)?;
        (res, Some(trace))
    } else {
        let opts = EnumerationOptions {
            cap: a.cap,
            fix_first_edge: a.fix_first_edge,
        };
        let res = gamma_upper_exact(&h, a.p, opts).map_err(|e| match e {
            Error::CapExceeded { required, cap } => Failure::Usage(anyhow!(
                "refused: exact enumeration needs {required} orientations, cap is {cap}"
            )),
            other => other.into(),
        })?;
        (res, None)
    };
    if let Some(path) = &a.witness_out {
        let text = format!("{}{}", run.comment_header(), result.witness.to_text());
        emit(Some(path), &text)?;
    }
    if let (Some(path), Some(rows)) = (&a.trace_out, &trace) {
        let mut csv = run.comment_header();
        csv.push_str("restart,step,value\n");
        for row in rows {
            writeln!(csv, "{},{},{}", row.restart, row.step, row.value).expect("string write");
        }
        emit(Some(path), &csv)?;
    }
    let body = json!({
        "p": a.p,
        "mode": if a.search { "search" } else { "exact" },
        "value": result.value,
        "exact": result.exact,
        "heuristic": result.heuristic,
        "orientations_examined": result.orientations_examined,
        "witness": orders(&result.witness),
    });
    emit_json(
        a.out.as_ref(),
        &run.finish_json("hyperdom.gamma-upper", body),
    )?;
    Ok(true)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut s = String::from(
        "n,r,p,thm2i_upper,gpl_closed,t_star,certified_lower,asymptotic_informational\n",
    );
    for row in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            row.n,
            row.r,
            row.p,
            row.thm2i_upper,
            opt(row.gpl_closed),
            opt(row.t_star),
            opt(row.certified_lower),
            row.asymptotic_informational
        )
        .expect("string write");
    }
    s
}

pub fn bounds(a: &BoundsArgs, seed: u64) -> Outcome {
    if a.n_min == 0 || a.n_min > a.n_max || a.n_step == 0 {
        return Err(Failure::Usage(anyhow!(
            "need 1 <= n-min <= n-max and a positive step"
        )));
    }
    if a.r < 2 {
        return Err(Failure::Usage(anyhow!("r must be at least 2")));
    }
    let p = a.p.unwrap_or(a.r - 1);
    let rows = (a.n_min..=a.n_max)
        .step_by(a.n_step)
        .map(|n| bounds_row(n, a.r, p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut run = Run::new("bounds", a, seed);
    if let Some(path) = &a.out {
        run.declare_output(path);
    }
    match a.format {
        Format::Csv => emit(
            a.out.as_ref(),
            &format!("{}{}", run.comment_header(), bounds_csv(&rows)),
        )?,
        Format::Json => {
            let body = json!({ "r": a.r, "p": p, "rows": rows });
            emit_json(a.out.as_ref(), &run.finish_json("hyperdom.bounds", body))?
        }
    }
    Ok(true)
}

pub fn color(a: &ColorArgs, seed: u64) -> Outcome {
    let h = load_hypergraph(&a.hypergraph)?;
    let mut run = Run::new("color", a, seed);
    if let Some(path) = &a.out {
        run.declare_output(path);
    }
    let coloring = greedy_complement_coloring(&h);
    let chi = chi_bound_thm3(&h, &coloring, a.p)?;
    let exact = h.n() <= a.cap;
    let body = json!({
        "p": a.p,
        "coloring": coloring.assignment,
        "classes": coloring.classes(),
        "chi_bound": chi,
        "complement_chromatic_number": if exact { Some(chromatic_number_exact(&h.complement(), a.cap)?) } else { None },
        "independence_number": if exact { Some(independence_number(&h, a.cap)?) } else { None },
        "clique_number": if exact { Some(clique_number(&h, a.cap)?) } else { None },
    });
    emit_json(a.out.as_ref(), &run.finish_json("hyperdom.color", body))?;
    Ok(true)
}

pub fn verify(a: &VerifyArgs, seed: u64) -> Outcome {
    let params = VerifyParams {
        n: a.n,
        r: a.r,
        budget: a.budget,
        seed,
        cap: a.cap,
    };
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else {
        vec![a.suite.as_str()]
    };
    let mut run = Run::new("verify", a, seed);
    if let Some(path) = &a.out {
        run.declare_output(path);
    }
    let reports = names
        .iter()
        .map(|name| run_suite(name, &params))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let body = json!({ "suites": reports, "passed": passed });
    emit_json(a.out.as_ref(), &run.finish_json("hyperdom.verify", body))?;
    Ok(passed)
}
