//! Directed p-domination: checking with witnesses, the forced-vertex core,
//! the greedy partition algorithm, and an exact branch-and-bound solver.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{for_each_combination, BinomialTable};
use crate::error::{Error, Result};
use crate::orientation::check_prefix_length;
use crate::{Hypergraph, Orientation, VertexId, VertexSet};

/// A dominating set plus, for each vertex outside it, the index of an edge
/// whose first `p` vertices lie in the set and which contains the vertex
/// after that prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationCertificate {
    pub p: usize,
    pub dominating_set: VertexSet,
    pub witnesses: BTreeMap<VertexId, usize>,
}

impl DominationCertificate {
    pub fn size(&self) -> usize {
        self.dominating_set.len()
    }

    /// Re-checks every witness against `d` from scratch.
    pub fn verify(&self, d: &Orientation) -> bool {
        let s = &self.dominating_set;
        if s.universe() != d.n() || check_prefix_length(self.p, d.r()).is_err() {
            return false;
        }
        (0..d.n()).filter(|&u| !s.contains(u)).all(|u| {
            let Some(&e) = self.witnesses.get(&u) else {
                return false;
            };
            e < d.edge_count() && {
                let order = d.order(e);
                order[..self.p].iter().all(|&v| s.contains(v)) && order[self.p..].contains(&u)
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes_explored: u64,
    pub best_found: usize,
    /// False when the node budget ran out before the search space was closed.
    pub proven_optimal: bool,
}

fn witness_edge(d: &Orientation, s: &VertexSet, p: usize, u: VertexId) -> Option<usize> {
    d.hypergraph().incident(u).iter().copied().find(|&e| {
        let order = d.order(e);
        order[..p].iter().all(|&v| s.contains(v)) && order[p..].contains(&u)
    })
}

/// Checks `s` and returns a certificate when it is directed p-dominating.
pub fn certify(d: &Orientation, s: &VertexSet, p: usize) -> Result<Option<DominationCertificate>> {
    check_prefix_length(p, d.r())?;
    let s = s.with_universe(d.n());
    let mut witnesses = BTreeMap::new();
    for u in (0..d.n()).filter(|&u| !s.contains(u)) {
        match witness_edge(d, &s, p, u) {
            Some(e) => {
                witnesses.insert(u, e);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(DominationCertificate {
        p,
        dominating_set: s,
        witnesses,
    }))
}

pub fn is_directed_p_dominating(d: &Orientation, s: &VertexSet, p: usize) -> Result<bool> {
    check_prefix_length(p, d.r())?;
    let s = s.with_universe(d.n());
    Ok((0..d.n())
        .filter(|&u| !s.contains(u))
        .all(|u| witness_edge(d, &s, p, u).is_some()))
}

/// Vertices never placed after the first `p` positions of any edge. They
/// belong to every directed p-dominating set.
pub fn undominatable_core(d: &Orientation, p: usize) -> Result<VertexSet> {
    check_prefix_length(p, d.r())?;
    let mut core = VertexSet::full(d.n());
    for oe in d.ordered_edges() {
        for &v in oe.suffix(p) {
            core.remove(v);
        }
    }
    Ok(core)
}

/// Greedy partition algorithm.
///
/// While at least `2r - 1` vertices remain, pick the p-set whose directed
/// neighborhood inside the residual orientation is largest (ties broken
/// lexicographically), put it in the dominating set and delete it together
/// with its neighborhood. Whatever is left at the end joins the set.
pub fn greedy_gpl(d: &Orientation, p: usize) -> Result<DominationCertificate> {
    check_prefix_length(p, d.r())?;
    let n = d.n();
    let r = d.r();

    // global prefix-set table; combination ranks sort like the sets themselves
    let pascal = BinomialTable::new(n, p);
    let mut buf = Vec::with_capacity(p);
    let edge_keys: Vec<u128> = d
        .ordered_edges()
        .map(|oe| {
            buf.clear();
            buf.extend_from_slice(oe.prefix(p));
            buf.sort_unstable();
            pascal
                .rank(n, &buf)
                .ok_or_else(|| Error::Unsupported(format!("C({n}, {p}) overflows u128")))
        })
        .collect::<Result<_>>()?;
    let total = pascal.get(n, p);
    let (prefix_id, id_count): (Vec<usize>, usize) =
        if total <= (1 << 16).max(4 * edge_keys.len() as u128) {
            (
                edge_keys.iter().map(|&k| k as usize).collect(),
                total as usize,
            )
        } else {
            let mut keys = edge_keys.clone();
            keys.sort_unstable();
            keys.dedup();
            let ids = edge_keys
                .iter()
                .map(|k| keys.binary_search(k).expect("key present"))
                .collect();
            (ids, keys.len())
        };
    let mut edge_of_key = vec![0; id_count];
    for (e, &id) in prefix_id.iter().enumerate().rev() {
        edge_of_key[id] = e;
    }
    let prefix_of = |id: usize| -> &[VertexId] {
        let e = edge_of_key[id];
        &d.order(e)[..p]
    };
    let mut residual = VertexSet::full(n);
    let mut chosen = VertexSet::new(n);
    let mut live: Vec<usize> = (0..d.edge_count()).collect();
    // per-prefix neighborhood bitsets, `words` u64 per prefix id
    let words = n.div_ceil(64).max(1);
    let mut acc = vec![0u64; id_count * words];
    let mut touched: Vec<usize> = Vec::new();

    while residual.len() >= 2 * r - 1 {
        live.retain(|&e| d.order(e).iter().all(|&v| residual.contains(v)));
        for &id in &touched {
            acc[id * words..(id + 1) * words].fill(0);
        }
        touched.clear();
        for &e in &live {
            let id = prefix_id[e];
            touched.push(id);
            for &v in d.ordered_edge(e).suffix(p) {
                acc[id * words + v / 64] |= 1 << (v % 64);
            }
        }
        touched.sort_unstable();
        touched.dedup();

        let gain = |id: usize| -> usize {
            acc[id * words..(id + 1) * words]
                .iter()
                .map(|w| w.count_ones() as usize)
                .sum()
        };
        let mut best: Option<(usize, usize)> = None;
        for &id in &touched {
            let g = gain(id);
            if best.is_none_or(|(_, b)| g > b) {
                best = Some((id, g));
            }
        }
        let Some((id, _)) = best else { break };
        for &v in prefix_of(id) {
            chosen.insert(v);
            residual.remove(v);
        }
        for (w, &bits) in acc[id * words..(id + 1) * words].iter().enumerate() {
            let mut bits = bits;
            while bits != 0 {
                residual.remove(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
    }
    chosen.union_with(&residual);
    Ok(certify(d, &chosen, p)?.expect("greedy output dominates"))
}

fn sorted(xs: &[VertexId]) -> Vec<VertexId> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

/// Prefix-set tables for one orientation and prefix length.
///
/// Re-orienting one edge only touches the two prefix sets involved and the
/// covering lists of that edge's vertices, so the index can be patched in
/// place instead of rebuilt.
#[derive(Clone, Debug)]
pub struct PrefixIndex {
    p: usize,
    n: usize,
    ids: HashMap<Vec<VertexId>, usize>,
    prefixes: Vec<VertexSet>,
    edges_of: Vec<Vec<usize>>,
    /// N⃗(P) for every prefix id.
    rest: Vec<VertexSet>,
    /// Prefix ids that can dominate each vertex.
    covering: Vec<Vec<usize>>,
    /// Prefix ids containing each vertex.
    by_member: Vec<Vec<usize>>,
    edge_prefix: Vec<usize>,
}

impl PrefixIndex {
    pub fn new(d: &Orientation, p: usize) -> Result<Self> {
        check_prefix_length(p, d.r())?;
        let n = d.n();
        let mut idx = PrefixIndex {
            p,
            n,
            ids: HashMap::new(),
            prefixes: Vec::new(),
            edges_of: Vec::new(),
            rest: Vec::new(),
            covering: vec![Vec::new(); n],
            by_member: vec![Vec::new(); n],
            edge_prefix: vec![0; d.edge_count()],
        };
        for e in 0..d.edge_count() {
            let id = idx.intern(d.order(e));
            idx.edge_prefix[e] = id;
            idx.edges_of[id].push(e);
            for &v in &d.order(e)[p..] {
                idx.rest[id].insert(v);
            }
        }
        for u in 0..n {
            idx.rebuild_covering(d, u);
        }
        Ok(idx)
    }

    fn intern(&mut self, order: &[VertexId]) -> usize {
        let key = sorted(&order[..self.p]);
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.prefixes.len();
        for &v in &key {
            self.by_member[v].push(id);
        }
        self.prefixes
            .push(VertexSet::from_members(self.n, key.iter().copied()));
        self.edges_of.push(Vec::new());
        self.rest.push(VertexSet::new(self.n));
        self.ids.insert(key, id);
        id
    }

    fn rebuild_covering(&mut self, d: &Orientation, u: VertexId) {
        let mut cov: Vec<usize> = d
            .hypergraph()
            .incident(u)
            .iter()
            .filter(|&&e| d.order(e)[self.p..].contains(&u))
            .map(|&e| self.edge_prefix[e])
            .collect();
        cov.sort_unstable();
        cov.dedup();
        self.covering[u] = cov;
    }

    fn rebuild_rest(&mut self, d: &Orientation, id: usize) {
        let mut rest = VertexSet::new(self.n);
        for &e in &self.edges_of[id] {
            for &v in &d.order(e)[self.p..] {
                rest.insert(v);
            }
        }
        self.rest[id] = rest;
    }

    /// Updates the index after `d`'s order of `edge` has changed.
    pub fn patch(&mut self, d: &Orientation, edge: usize) {
        let old = self.edge_prefix[edge];
        let new = self.intern(d.order(edge));
        self.edge_prefix[edge] = new;
        if old != new {
            self.edges_of[old].retain(|&e| e != edge);
            self.edges_of[new].push(edge);
            self.rebuild_rest(d, old);
        }
        self.rebuild_rest(d, new);
        for i in 0..d.r() {
            let v = d.order(edge)[i];
            self.rebuild_covering(d, v);
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Closure of `s`: `s` plus every vertex it dominates.
    pub fn dominated_by(&self, s: &VertexSet) -> VertexSet {
        let mut covered = s.clone();
        for (id, pre) in self.prefixes.iter().enumerate() {
            if pre.is_subset(s) {
                covered.union_with(&self.rest[id]);
            }
        }
        covered
    }

    fn extend_closure(&self, s: &VertexSet, covered: &mut VertexSet, added: &VertexSet) {
        covered.union_with(added);
        for v in added.iter() {
            for &id in &self.by_member[v] {
                if self.prefixes[id].is_subset(s) {
                    covered.union_with(&self.rest[id]);
                }
            }
        }
    }
}

struct Search<'a> {
    index: &'a PrefixIndex,
    budget: Option<u64>,
    nodes: u64,
    aborted: bool,
    best: VertexSet,
}

impl Search<'_> {
    fn dfs(&mut self, s: &VertexSet, covered: &VertexSet) {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
            return;
        }
        let Some(u) = covered.first_missing() else {
            if s.len() < self.best.len() {
                self.best = s.clone();
            }
            return;
        };
        if s.len() + 1 >= self.best.len() {
            return;
        }

        // u ends up either in S or dominated by one of its covering prefixes
        let mut options: Vec<VertexSet> = Vec::new();
        for &id in &self.index.covering[u] {
            let mut add = self.index.prefixes[id].clone();
            add.difference_with(s);
            options.push(add);
        }
        options.push(VertexSet::from_members(self.index.n, [u]));
        options.sort_by_cached_key(|a| (a.len(), a.to_vec()));
        options.dedup();

        for add in options {
            if s.len() + add.len() >= self.best.len() {
                continue;
            }
            let mut next = s.clone();
            next.union_with(&add);
            let mut cov = covered.clone();
            self.index.extend_closure(&next, &mut cov, &add);
            self.dfs(&next, &cov);
            if self.aborted {
                return;
            }
        }
    }
}

/// Minimum directed p-dominating set by branch and bound.
///
/// The incumbent starts at the greedy solution and the forced core is put in
/// `S` up front. Each node branches on the smallest undominated vertex: it is
/// either added itself or one of the prefix sets that could dominate it is
/// added. When `budget` nodes are exhausted the best set so far is returned
/// with `proven_optimal = false`.
pub fn min_directed_dominating(
    d: &Orientation,
    p: usize,
    budget: Option<u64>,
) -> Result<(DominationCertificate, SolveStats)> {
    let index = PrefixIndex::new(d, p)?;
    min_directed_dominating_indexed(d, &index, budget)
}

/// As [`min_directed_dominating`], reusing a prebuilt (possibly patched) index.
pub fn min_directed_dominating_indexed(
    d: &Orientation,
    index: &PrefixIndex,
    budget: Option<u64>,
) -> Result<(DominationCertificate, SolveStats)> {
    let p = index.p();
    let greedy = greedy_gpl(d, p)?;
    let core = undominatable_core(d, p)?;
    let mut search = Search {
        index,
        budget,
        nodes: 0,
        aborted: false,
        best: greedy.dominating_set.clone(),
    };
    let covered = index.dominated_by(&core);
    search.dfs(&core, &covered);

    let cert = certify(d, &search.best, p)?.expect("solver output dominates");
    let stats = SolveStats {
        nodes_explored: search.nodes,
        best_found: cert.size(),
        proven_optimal: !search.aborted,
    };
    Ok((cert, stats))
}

/// Undirected p-domination: every vertex outside `s` lies in an edge meeting
/// `s` in at least `p` vertices.
pub fn is_p_dominating_undirected(h: &Hypergraph, s: &VertexSet, p: usize) -> Result<bool> {
    check_prefix_length(p, h.r())?;
    let s = s.with_universe(h.n());
    Ok((0..h.n()).filter(|&u| !s.contains(u)).all(|u| {
        h.incident(u).iter().any(|&e| {
            h.edge(e)
                .vertices()
                .iter()
                .filter(|&&v| s.contains(v))
                .count()
                >= p
        })
    }))
}

/// γ_p(H) by subset search in increasing size. Isolated vertices are forced.
pub fn gamma_p_undirected(h: &Hypergraph, p: usize) -> Result<usize> {
    check_prefix_length(p, h.r())?;
    let forced: Vec<VertexId> = (0..h.n()).filter(|&v| h.degree(v) == 0).collect();
    let free: Vec<VertexId> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    if free.len() > 40 {
        return Err(Error::Unsupported(format!(
            "subset search over {} vertices",
            free.len()
        )));
    }
    for k in 0..=free.len() {
        let mut found = false;
        for_each_combination(free.len(), k, |c| {
            if found {
                return;
            }
            let s = VertexSet::from_members(
                h.n(),
                forced.iter().copied().chain(c.iter().map(|&i| free[i])),
            );
            found = is_p_dominating_undirected(h, &s, p).expect("p checked");
        });
        if found {
            return Ok(forced.len() + k);
        }
    }
    unreachable!("the full vertex set dominates")
}
