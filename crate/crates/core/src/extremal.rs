//! Upper directed p-domination number Γ⃗_p(H): exact value by enumerating
//! every orientation, and witness-backed lower bounds by hill climbing.

use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{factorial, masks_of_size, permutations};
use crate::domination::{
    greedy_gpl, min_directed_dominating, min_directed_dominating_indexed, PrefixIndex,
};
use crate::error::{Error, Result};
use crate::orientation::check_prefix_length;
use crate::{Hypergraph, Orientation};

#[derive(Clone, Debug)]
pub struct ExtremalResult {
    pub value: usize,
    pub witness: Orientation,
    /// Every orientation was examined.
    pub exact: bool,
    pub orientations_examined: u64,
    /// The witness value comes from a budget-limited evaluation and is not a
    /// certified lower bound.
    pub heuristic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationOptions {
    /// Refuse when (r!)^e exceeds this.
    pub cap: u64,
    /// Pin edge 0 to its canonical order. Only sound for vertex-transitive
    /// hypergraphs such as H(n, r); divides the work by r!.
    pub fix_first_edge: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            cap: 100_000_000,
            fix_first_edge: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub plateau_limit: usize,
    /// Node budget per exact evaluation; `None` means unbounded.
    pub node_budget: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_steps: 200,
            seed: 0,
            plateau_limit: 20,
            node_budget: Some(200_000),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub restart: usize,
    pub step: usize,
    pub value: usize,
}

/// (r!)^e as an exact integer.
pub fn orientation_count(h: &Hypergraph) -> BigUint {
    BigUint::from(factorial(h.r())).pow(h.edge_count() as u32)
}

/// Γ⃗_p(H) by enumerating every orientation in mixed-radix order (one digit
/// per edge, radix r!, edge 0 most significant). Ties keep the smallest
/// counter index, so the witness does not depend on the thread count.
pub fn gamma_upper_exact(
    h: &Arc<Hypergraph>,
    p: usize,
    opts: EnumerationOptions,
) -> Result<ExtremalResult> {
    check_prefix_length(p, h.r())?;
    let required = orientation_count(h);
    let total = Orientation::count(h)
        .filter(|&t| t <= opts.cap)
        .ok_or_else(|| Error::CapExceeded {
            required: required.to_string(),
            cap: opts.cap,
        })?;
    if h.n() > 63 {
        return Err(Error::Unsupported(format!(
            "exhaustive search over {} vertices",
            h.n()
        )));
    }
    let engine = Engine::new(h, p);
    let radix = factorial(h.r());
    let pinned = opts.fix_first_edge && h.edge_count() > 0;
    let span = if pinned { total / radix } else { total };

    let chunks = span.clamp(1, 4096);
    let per = span.div_ceil(chunks);
    let (value, index) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * per;
            let hi = ((c + 1) * per).min(span);
            engine.scan(lo, hi)
        })
        .reduce(
            || (0, u64::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let index = if index == u64::MAX { 0 } else { index };
    let witness = Orientation::from_ranks(Arc::clone(h), &engine.digits(index))?;

    let (cert, stats) = min_directed_dominating(&witness, p, None)?;
    debug_assert!(stats.proven_optimal);
    assert_eq!(cert.size(), value, "enumeration and exact solver disagree");
    Ok(ExtremalResult {
        value,
        witness,
        exact: true,
        orientations_examined: span,
        heuristic: false,
    })
}

/// Bitmask evaluator for tiny hypergraphs: each edge/permutation pair is
/// reduced to (prefix mask, suffix mask).
struct Engine {
    n: usize,
    edges: usize,
    radix: u64,
    // table[e * radix + k] = (prefix, suffix) for permutation rank k of edge e
    table: Vec<(u64, u64)>,
}

impl Engine {
    fn new(h: &Hypergraph, p: usize) -> Self {
        let perms = permutations(h.r());
        let mut table = Vec::with_capacity(h.edge_count() * perms.len());
        for e in h.edges() {
            for perm in &perms {
                let order: Vec<usize> = perm.iter().map(|&i| e.vertices()[i]).collect();
                let mask = |vs: &[usize]| vs.iter().fold(0u64, |m, &v| m | 1 << v);
                table.push((mask(&order[..p]), mask(&order[p..])));
            }
        }
        Engine {
            n: h.n(),
            edges: h.edge_count(),
            radix: perms.len() as u64,
            table,
        }
    }

    fn digits(&self, mut index: u64) -> Vec<usize> {
        let mut d = vec![0; self.edges];
        for slot in d.iter_mut().rev() {
            *slot = (index % self.radix) as usize;
            index /= self.radix;
        }
        d
    }

    /// Max γ⃗ over counter indices `lo..hi` and the first index attaining it.
    fn scan(&self, lo: u64, hi: u64) -> (usize, u64) {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let m = self.edges;
        let radix = self.radix as usize;
        let mut digits = self.digits(lo);
        let mut pre: Vec<u64> = (0..m)
            .map(|e| self.table[e * radix + digits[e]].0)
            .collect();
        let mut suf: Vec<u64> = (0..m)
            .map(|e| self.table[e * radix + digits[e]].1)
            .collect();

        let dominates = |pre: &[u64], suf: &[u64], s: u64| {
            let mut cov = s;
            for i in 0..pre.len() {
                if pre[i] & !s == 0 {
                    cov |= suf[i];
                }
            }
            cov == full
        };
        let some_dominates = |pre: &[u64], suf: &[u64], k: usize| {
            masks_of_size(self.n, k).any(|s| dominates(pre, suf, s))
        };

        let mut best: Option<(usize, u64)> = None;
        for index in lo..hi {
            let floor = best.map_or(0, |(b, _)| b);
            let improves = match best {
                None => true,
                Some((b, _)) => b < self.n && !some_dominates(&pre, &suf, b),
            };
            if improves {
                let start = if best.is_some() { floor + 1 } else { 0 };
                let gamma = (start..=self.n)
                    .find(|&k| some_dominates(&pre, &suf, k))
                    .unwrap_or(self.n);
                best = Some((gamma, index));
            }
            // odometer step, patching only the edges whose digit moved
            let mut j = m;
            while j > 0 {
                j -= 1;
                digits[j] += 1;
                if digits[j] == radix {
                    digits[j] = 0;
                }
                (pre[j], suf[j]) = self.table[j * radix + digits[j]];
                if digits[j] != 0 {
                    break;
                }
            }
        }
        best.unwrap_or((0, u64::MAX))
    }
}

fn restart_seed(seed: u64, restart: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = seed
        ^ (restart as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Evaluation {
    value: usize,
    heuristic: bool,
}

fn evaluate(d: &Orientation, idx: &PrefixIndex, budget: Option<u64>) -> Result<Evaluation> {
    let (_, stats) = min_directed_dominating_indexed(d, idx, budget)?;
    if stats.proven_optimal {
        Ok(Evaluation {
            value: stats.best_found,
            heuristic: false,
        })
    } else {
        Ok(Evaluation {
            value: greedy_gpl(d, idx.p())?.size(),
            heuristic: true,
        })
    }
}

struct RestartOutcome {
    best: Option<(usize, Orientation)>,
    best_heuristic: Option<(usize, Orientation)>,
    evaluations: u64,
    trace: Vec<TraceRow>,
}

fn climb(
    h: &Arc<Hypergraph>,
    p: usize,
    cfg: &SearchConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, restart));
    let perms = permutations(h.r());
    let mut d = Orientation::random(Arc::clone(h), rng.gen());
    let mut idx = PrefixIndex::new(&d, p)?;
    let mut out = RestartOutcome {
        best: None,
        best_heuristic: None,
        evaluations: 1,
        trace: Vec::new(),
    };
    let record = |out: &mut RestartOutcome, ev: &Evaluation, d: &Orientation| {
        let slot = if ev.heuristic {
            &mut out.best_heuristic
        } else {
            &mut out.best
        };
        if slot.as_ref().is_none_or(|(v, _)| ev.value > *v) {
            *slot = Some((ev.value, d.clone()));
        }
    };

    let first = evaluate(&d, &idx, cfg.node_budget)?;
    record(&mut out, &first, &d);
    let mut current = first.value;
    let mut plateau = 0;
    out.trace.push(TraceRow {
        restart,
        step: 0,
        value: current,
    });

    for step in 1..=cfg.max_steps {
        if h.edge_count() == 0 || perms.len() < 2 {
            break;
        }
        let e = rng.gen_range(0..h.edge_count());
        let old = d.order(e).to_vec();
        let shift = rng.gen_range(1..perms.len());
        let rank = (d.rank(e) + shift) % perms.len();
        let canon = h.edge(e).vertices();
        let order: Vec<usize> = perms[rank].iter().map(|&i| canon[i]).collect();
        d.set_order(e, &order)?;
        idx.patch(&d, e);

        let ev = evaluate(&d, &idx, cfg.node_budget)?;
        out.evaluations += 1;
        record(&mut out, &ev, &d);
        if ev.value > current {
            current = ev.value;
            plateau = 0;
        } else if ev.value == current && plateau < cfg.plateau_limit {
            plateau += 1;
        } else {
            d.set_order(e, &old)?;
            idx.patch(&d, e);
        }
        out.trace.push(TraceRow {
            restart,
            step,
            value: current,
        });
    }
    Ok(out)
}

/// Hill climbing over orientations. Restarts run in parallel with seeds
/// derived from `cfg.seed`; the reduction keeps the largest certified value
/// and, on ties, the lowest restart index.
pub fn gamma_upper_search(
    h: &Arc<Hypergraph>,
    p: usize,
    cfg: &SearchConfig,
) -> Result<(ExtremalResult, Vec<TraceRow>)> {
    check_prefix_length(p, h.r())?;
    if cfg.restarts == 0 {
        return Err(Error::Invalid("restarts must be positive".into()));
    }
    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| climb(h, p, cfg, i))
        .collect::<Result<_>>()?;

    let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
    let pick = |f: fn(&RestartOutcome) -> &Option<(usize, Orientation)>| {
        outcomes
            .iter()
            .filter_map(|o| f(o).as_ref())
            .fold(None::<&(usize, Orientation)>, |acc, b| match acc {
                Some(a) if a.0 >= b.0 => Some(a),
                _ => Some(b),
            })
            .cloned()
    };
    let (value, witness, heuristic) = match pick(|o| &o.best) {
        Some((v, w)) => (v, w, false),
        None => {
            let (v, w) = pick(|o| &o.best_heuristic).expect("every restart evaluates once");
            (v, w, true)
        }
    };
    let trace = outcomes.into_iter().flat_map(|o| o.trace).collect();
    Ok((
        ExtremalResult {
            value,
            witness,
            exact: false,
            orientations_examined: evaluations,
            heuristic,
        },
        trace,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    /// (p, Γ⃗_p(H)) for p = 1..r-1.
    pub values: Vec<(usize, usize)>,
    pub holds: bool,
}

/// Checks Γ⃗_i(H) ≤ Γ⃗_j(H) for all i < j by exhaustive enumeration.
pub fn verify_eq1_monotonicity(
    h: &Arc<Hypergraph>,
    opts: EnumerationOptions,
) -> Result<MonotonicityReport> {
    let values = (1..h.r())
        .map(|p| Ok((p, gamma_upper_exact(h, p, opts)?.value)))
        .collect::<Result<Vec<_>>>()?;
    let holds = values.windows(2).all(|w| w[0].1 <= w[1].1);
    Ok(MonotonicityReport { values, holds })
}
