//! Named invariant suites. Each suite counts checks and failures and keeps
//! the first few counterexamples.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    chi_bound_thm3, cover_bound, first_moment_certify, first_moment_expectation_log,
    first_moment_lower_bound, upper_bound_thm2i,
};
use crate::coloring::{
    chromatic_number_exact, greedy_complement_coloring, independence_number, Coloring,
};
use crate::combinatorics::{binomial, for_each_combination};
use crate::domination::{greedy_gpl, is_directed_p_dominating, min_directed_dominating};
use crate::error::{Error, Result};
use crate::extremal::{gamma_upper_exact, verify_eq1_monotonicity, EnumerationOptions};
use crate::{Hypergraph, Orientation, VertexSet};

pub const SUITES: &[&str] = &[
    "eq1",
    "prefix-identity",
    "averaging",
    "greedy-bound",
    "oracle",
    "first-moment",
    "sandwich",
    "cover",
    "jensen",
    "alpha-chi",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyParams {
    pub n: Option<usize>,
    pub r: Option<usize>,
    /// Number of random samples where a suite samples.
    pub budget: u64,
    pub seed: u64,
    /// Limit on exhaustive enumeration sizes.
    pub cap: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            n: None,
            r: None,
            budget: 1000,
            seed: 0,
            cap: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

struct Tally {
    suite: &'static str,
    checks: u64,
    failures: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally {
            suite,
            checks: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < 10 {
                self.counterexamples.push(what());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite.to_string(),
            checks: self.checks,
            failures: self.failures,
            counterexamples: self.counterexamples,
            passed: self.failures == 0 && self.checks > 0,
        }
    }
}

pub fn run_suite(name: &str, params: &VerifyParams) -> Result<SuiteReport> {
    match name {
        "eq1" => eq1(params),
        "prefix-identity" => prefix_identity(params),
        "averaging" => averaging(params),
        "greedy-bound" => greedy_bound(params),
        "oracle" => oracle(params),
        "first-moment" => first_moment(params),
        "sandwich" => sandwich(params),
        "cover" => cover(params),
        "jensen" => jensen(params),
        "alpha-chi" => alpha_chi(params),
        other => Err(Error::Invalid(format!(
            "unknown suite {other:?}; known suites: {}",
            SUITES.join(", ")
        ))),
    }
}

fn complete(n: usize, r: usize) -> Result<Arc<Hypergraph>> {
    Ok(Arc::new(Hypergraph::complete(n, r)?))
}

/// Calls `f` on every orientation of `h` when there are at most `cap` of
/// them, otherwise on `samples` random ones.
fn for_orientations(
    h: &Arc<Hypergraph>,
    cap: u64,
    samples: u64,
    seed: u64,
    mut f: impl FnMut(&Orientation) -> Result<()>,
) -> Result<()> {
    match Orientation::count(h).filter(|&c| c <= cap) {
        Some(total) => {
            let radix = crate::combinatorics::factorial(h.r());
            let mut ranks = vec![0usize; h.edge_count()];
            for _ in 0..total {
                f(&Orientation::from_ranks(Arc::clone(h), &ranks)?)?;
                for slot in ranks.iter_mut().rev() {
                    *slot += 1;
                    if (*slot as u64) < radix {
                        break;
                    }
                    *slot = 0;
                }
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                f(&Orientation::random(Arc::clone(h), rng.gen()))?;
            }
        }
    }
    Ok(())
}

fn eq1(params: &VerifyParams) -> Result<SuiteReport> {
    let (n, r) = (params.n.unwrap_or(4), params.r.unwrap_or(3));
    let mut t = Tally::new("eq1");
    let opts = EnumerationOptions {
        cap: params.cap.max(1),
        fix_first_edge: false,
    };
    let rep = verify_eq1_monotonicity(&complete(n, r)?, opts)?;
    t.check(rep.holds, || format!("H({n},{r}): {:?}", rep.values));
    Ok(t.finish())
}

/// Σ_{|A|=p} deg⃗_D(A) = e(H): every ordered edge has exactly one p-prefix set.
fn prefix_identity(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("prefix-identity");
    let max_n = params.n.unwrap_or(6);
    let max_r = params.r.unwrap_or(4);
    for r in 2..=max_r {
        for n in 0..=max_n {
            let h = complete(n, r)?;
            for_orientations(&h, params.cap, params.budget.min(200), params.seed, |d| {
                for p in 1..r {
                    let mut total = 0;
                    for_each_combination(n, p, |a| {
                        let a = VertexSet::from_members(n, a.iter().copied());
                        total += d.directed_degree(&a).expect("valid size");
                    });
                    t.check(total == h.edge_count(), || {
                        format!("H({n},{r}) p={p}: sum {total} != {}", h.edge_count())
                    });
                }
                Ok(())
            })?;
        }
    }
    Ok(t.finish())
}

/// Δ⃗_{r−1}(D) ≥ (n − r + 1)/r on complete hypergraphs.
fn averaging(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("averaging");
    let cases = match (params.n, params.r) {
        (Some(n), Some(r)) => vec![(n, r)],
        _ => vec![(4, 3), (5, 2), (8, 3)],
    };
    for (n, r) in cases {
        let h = complete(n, r)?;
        for_orientations(&h, params.cap, params.budget, params.seed, |d| {
            let (_, delta) = d.max_directed_degree(r - 1)?;
            t.check(delta * r + r > n, || {
                format!("H({n},{r}): Δ = {delta}\n{}", d.to_text())
            });
            Ok(())
        })?;
    }
    Ok(t.finish())
}

/// Greedy output dominates and stays below r(1 + ln(n + (r−1)^2)).
fn greedy_bound(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("greedy-bound");
    let max_n = params.n.unwrap_or(30);
    let rs: Vec<usize> = params.r.map_or(vec![2, 3, 4], |r| vec![r]);
    let samples = params.budget.min(100);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for &r in &rs {
        for n in r..=max_n {
            let h = complete(n, r)?;
            let bound = upper_bound_thm2i(n, r)?;
            for _ in 0..samples {
                let d = Orientation::random(Arc::clone(&h), rng.gen());
                for p in 1..r {
                    let g = greedy_gpl(&d, p)?;
                    let ok = g.verify(&d)
                        && is_directed_p_dominating(&d, &g.dominating_set, p)?
                        && (g.size() as f64) < bound;
                    t.check(ok, || {
                        format!("H({n},{r}) p={p}: |S| = {} vs {bound}", g.size())
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

/// Smallest directed p-dominating set by scanning subsets in increasing size.
pub fn naive_min_dominating(d: &Orientation, p: usize) -> Result<usize> {
    let n = d.n();
    for k in 0..=n {
        let mut found = false;
        for_each_combination(n, k, |c| {
            if !found {
                let s = VertexSet::from_members(n, c.iter().copied());
                found = is_directed_p_dominating(d, &s, p).expect("p checked");
            }
        });
        if found {
            return Ok(k);
        }
    }
    unreachable!("V dominates")
}

/// A random small (H, D, p): n ≤ max_n, r ≤ 4.
pub fn random_instance(rng: &mut impl Rng, max_n: usize) -> Result<(Orientation, usize)> {
    let n = rng.gen_range(1..=max_n);
    let r = rng.gen_range(2..=4);
    let available = binomial(n as u64, r as u64) as usize;
    let m = rng.gen_range(0..=available);
    let h = Arc::new(Hypergraph::random(n, r, m, rng.gen())?);
    let p = rng.gen_range(1..r);
    Ok((Orientation::random(h, rng.gen()), p))
}

fn oracle(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let max_n = params.n.unwrap_or(8);
    for _ in 0..params.budget.min(200) {
        let (d, p) = random_instance(&mut rng, max_n)?;
        let (cert, stats) = min_directed_dominating(&d, p, None)?;
        let naive = naive_min_dominating(&d, p)?;
        t.check(
            stats.proven_optimal && cert.size() == naive && cert.verify(&d),
            || {
                format!(
                    "p={p} solver {} naive {naive}\n{}",
                    cert.size(),
                    d.to_text()
                )
            },
        );
    }
    Ok(t.finish())
}

/// Integer certificate and float ln E[x] agree whenever |ln E| > 1e-6.
fn first_moment(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("first-moment");
    let max_n = params.n.unwrap_or(1000);
    let rs: Vec<usize> = params.r.map_or(vec![2, 3, 4], |r| vec![r]);
    for &r in &rs {
        for tt in r - 1..=30 {
            for n in tt.max(r)..=max_n {
                let log_e = first_moment_expectation_log(n, r, tt)?;
                if log_e.abs() <= 1e-6 {
                    continue;
                }
                let exact = first_moment_certify(n, r, tt)?.is_some();
                t.check(exact == (log_e < 0.0), || {
                    format!("n={n} r={r} t={tt}: ln E = {log_e}, integer certifies = {exact}")
                });
            }
        }
    }
    Ok(t.finish())
}

/// certified_lower ≤ Γ⃗_exact < upper on enumerable complete hypergraphs.
fn sandwich(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("sandwich");
    let opts = EnumerationOptions {
        cap: params.cap.max(1),
        fix_first_edge: false,
    };
    for r in 2..=4 {
        for n in r..=8 {
            let h = complete(n, r)?;
            if Orientation::count(&h).is_none_or(|c| c > opts.cap) {
                continue;
            }
            let upper = upper_bound_thm2i(n, r)?;
            let lower = first_moment_lower_bound(n, r)?.map(|c| c.certified_lower());
            for p in 1..r {
                let exact = gamma_upper_exact(&h, p, opts)?.value;
                t.check((exact as f64) < upper, || {
                    format!("H({n},{r}) p={p}: {exact} vs {upper}")
                });
                if p + 1 == r {
                    if let Some(lo) = lower {
                        t.check(lo <= exact, || {
                            format!("H({n},{r}): lower {lo} > exact {exact}")
                        });
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

/// Exact per-part values summed over a cover bound Γ⃗_p from above.
fn cover(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("cover");
    let (n, r) = (params.n.unwrap_or(4), params.r.unwrap_or(3));
    let h = complete(n, r)?;
    let opts = EnumerationOptions {
        cap: params.cap.max(1),
        fix_first_edge: false,
    };
    let exact_part = |part: &Hypergraph, p: usize| -> Result<f64> {
        Ok(gamma_upper_exact(&Arc::new(part.clone()), p, opts)?.value as f64)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut covers: Vec<Vec<VertexSet>> = vec![
        vec![VertexSet::full(n)],
        (0..n).map(|v| VertexSet::from_members(n, [v])).collect(),
    ];
    while covers.len() < 8 {
        let k = rng.gen_range(2..=3);
        let mut parts: Vec<VertexSet> = (0..k)
            .map(|_| VertexSet::from_members(n, (0..n).filter(|_| rng.gen_bool(0.6))))
            .collect();
        for v in 0..n {
            if !parts.iter().any(|s| s.contains(v)) {
                let i = rng.gen_range(0..k);
                parts[i].insert(v);
            }
        }
        covers.push(parts);
    }
    for p in 1..r {
        let whole = gamma_upper_exact(&h, p, opts)?.value as f64;
        for c in &covers {
            let b = cover_bound(&h, c, p, exact_part)?;
            t.check(b >= whole, || format!("p={p} cover {c:?}: {b} < {whole}"));
        }
    }
    Ok(t.finish())
}

/// A random proper coloring of the complement: random classes, each split
/// until it is a clique of `h` or smaller than r.
pub fn random_complement_coloring(h: &Hypergraph, rng: &mut impl Rng) -> Coloring {
    let n = h.n();
    let k = rng.gen_range(1..=n.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &v in &order {
        classes[rng.gen_range(0..k)].push(v);
    }
    let mut assignment = vec![0; n];
    let mut next = 0;
    for class in classes.into_iter().filter(|c| !c.is_empty()) {
        let sub = h.induced(&VertexSet::from_members(n, class.iter().copied()));
        let g = greedy_complement_coloring(&sub.hypergraph);
        for (local, &c) in g.assignment.iter().enumerate() {
            assignment[sub.to_original(local)] = next + c;
        }
        next += g.num_colors;
    }
    Coloring::new(assignment)
}

/// Σ r(1 + ln(q_i + (r−1)^2)) ≤ r t (1 + ln(n/t + (r−1)^2)).
fn jensen(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("jensen");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..params.budget {
        let n = rng.gen_range(1..=params.n.unwrap_or(12));
        let r = params.r.unwrap_or_else(|| rng.gen_range(2..=4));
        let m = rng.gen_range(0..=binomial(n as u64, r as u64) as usize);
        let h = Hypergraph::random(n, r, m, rng.gen())?;
        let c = random_complement_coloring(&h, &mut rng);
        let b = chi_bound_thm3(&h, &c, 1)?;
        t.check(b.sum_form <= b.jensen_form * (1.0 + 1e-12), || {
            format!("{:?}: {} > {}", b.class_sizes, b.sum_form, b.jensen_form)
        });
    }
    Ok(t.finish())
}

/// α(H) ≥ n / χ(H).
fn alpha_chi(params: &VerifyParams) -> Result<SuiteReport> {
    let mut t = Tally::new("alpha-chi");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..params.budget.min(200) {
        let n = rng.gen_range(1..=params.n.unwrap_or(9));
        let r = params.r.unwrap_or_else(|| rng.gen_range(2..=4));
        let m = rng.gen_range(0..=binomial(n as u64, r as u64) as usize);
        let h = Hypergraph::random(n, r, m, rng.gen())?;
        let alpha = independence_number(&h, 32)?;
        let chi = chromatic_number_exact(&h, 32)?;
        t.check(alpha * chi >= n, || {
            format!("n={n} alpha={alpha} chi={chi}\n{}", h.to_text())
        });
    }
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyParams {
        VerifyParams {
            budget: 20,
            ..Default::default()
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", &quick()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        for name in [
            "eq1",
            "averaging",
            "oracle",
            "sandwich",
            "cover",
            "jensen",
            "alpha-chi",
        ] {
            let rep = run_suite(name, &quick()).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        let rep = run_suite(
            "prefix-identity",
            &VerifyParams {
                n: Some(5),
                r: Some(3),
                budget: 5,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn random_complement_colorings_are_proper() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let h = Hypergraph::random(8, 3, 30, rng.gen()).unwrap();
            let c = random_complement_coloring(&h, &mut rng);
            assert!(crate::coloring::check_complement_proper(&h, &c).is_ok());
        }
    }
}
