//! Orientations: one linear order per edge, and the directed quantities
//! derived from them (prefix edge sets, directed neighborhoods, Δ⃗_p).

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{factorial, permutation_rank, permutations};
use crate::error::{Error, Result};
use crate::hypergraph::{parse_numbers, write_ids};
use crate::{Hypergraph, VertexId, VertexSet};

/// Borrowed view of one oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderedEdge<'a> {
    pub edge_index: usize,
    pub order: &'a [VertexId],
}

impl OrderedEdge<'_> {
    /// The first `p` vertices of the order.
    pub fn prefix(&self, p: usize) -> &[VertexId] {
        &self.order[..p]
    }

    pub fn suffix(&self, p: usize) -> &[VertexId] {
        &self.order[p..]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    hypergraph: Arc<Hypergraph>,
    // edge i occupies orders[i * r .. (i + 1) * r]
    orders: Vec<VertexId>,
}

impl Orientation {
    pub fn new(hypergraph: Arc<Hypergraph>, orders: Vec<Vec<VertexId>>) -> Result<Self> {
        if orders.len() != hypergraph.edge_count() {
            return Err(Error::Mismatch(format!(
                "{} orders for {} edges",
                orders.len(),
                hypergraph.edge_count()
            )));
        }
        let mut flat = Vec::with_capacity(orders.len() * hypergraph.r());
        for (i, o) in orders.iter().enumerate() {
            check_permutes(&hypergraph, i, o)?;
            flat.extend_from_slice(o);
        }
        Ok(Orientation {
            hypergraph,
            orders: flat,
        })
    }

    /// Every edge ordered ascending.
    pub fn sorted(hypergraph: Arc<Hypergraph>) -> Self {
        let orders = hypergraph
            .edges()
            .iter()
            .flat_map(|e| e.vertices().iter().copied())
            .collect();
        Orientation { hypergraph, orders }
    }

    /// Each edge independently gets a uniform random order.
    pub fn random(hypergraph: Arc<Hypergraph>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut o = Self::sorted(hypergraph);
        let r = o.hypergraph.r();
        for chunk in o.orders.chunks_mut(r) {
            chunk.shuffle(&mut rng);
        }
        o
    }

    /// Builds the orientation whose edge `i` uses the `ranks[i]`-th permutation
    /// (lexicographic over positions) of the canonical edge.
    pub fn from_ranks(hypergraph: Arc<Hypergraph>, ranks: &[usize]) -> Result<Self> {
        let r = hypergraph.r();
        let perms = permutations(r);
        if ranks.len() != hypergraph.edge_count() {
            return Err(Error::Mismatch(format!(
                "{} ranks for {} edges",
                ranks.len(),
                hypergraph.edge_count()
            )));
        }
        let mut orders = Vec::with_capacity(ranks.len() * r);
        for (e, &k) in hypergraph.edges().iter().zip(ranks) {
            let perm = perms
                .get(k)
                .ok_or_else(|| Error::Invalid(format!("permutation rank {k} >= {}!", r)))?;
            orders.extend(perm.iter().map(|&i| e.vertices()[i]));
        }
        Ok(Orientation { hypergraph, orders })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn shared_hypergraph(&self) -> Arc<Hypergraph> {
        Arc::clone(&self.hypergraph)
    }

    pub fn r(&self) -> usize {
        self.hypergraph.r()
    }

    pub fn n(&self) -> usize {
        self.hypergraph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.hypergraph.edge_count()
    }

    pub fn order(&self, edge: usize) -> &[VertexId] {
        let r = self.r();
        &self.orders[edge * r..(edge + 1) * r]
    }

    pub fn ordered_edge(&self, edge: usize) -> OrderedEdge<'_> {
        OrderedEdge {
            edge_index: edge,
            order: self.order(edge),
        }
    }

    pub fn ordered_edges(&self) -> impl Iterator<Item = OrderedEdge<'_>> {
        (0..self.edge_count()).map(|i| self.ordered_edge(i))
    }

    /// Lexicographic permutation rank of edge `edge`'s order.
    pub fn rank(&self, edge: usize) -> usize {
        let canon = self.hypergraph.edge(edge).vertices();
        let pos: Vec<usize> = self
            .order(edge)
            .iter()
            .map(|v| canon.binary_search(v).expect("order permutes its edge"))
            .collect();
        permutation_rank(&pos)
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.edge_count()).map(|e| self.rank(e)).collect()
    }

    /// Replaces the order of one edge.
    pub fn set_order(&mut self, edge: usize, order: &[VertexId]) -> Result<()> {
        check_permutes(&self.hypergraph, edge, order)?;
        let r = self.r();
        self.orders[edge * r..(edge + 1) * r].copy_from_slice(order);
        Ok(())
    }

    /// Copy of `self` with one edge re-ordered.
    pub fn with_order(&self, edge: usize, order: &[VertexId]) -> Result<Self> {
        let mut o = self.clone();
        o.set_order(edge, order)?;
        Ok(o)
    }

    fn check_set_size(&self, a: &VertexSet) -> Result<()> {
        let max = self.r() - 1;
        if a.is_empty() || a.len() > max {
            return Err(Error::SetSize { size: a.len(), max });
        }
        Ok(())
    }

    /// True iff the first |A| entries of `edge`'s order are exactly A.
    pub fn has_prefix_set(&self, edge: usize, a: &VertexSet) -> bool {
        let k = a.len();
        k <= self.r() && self.order(edge)[..k].iter().all(|&v| a.contains(v))
    }

    /// E⃗_D(A): edges whose first |A| positions are occupied by A, as a set.
    pub fn directed_edge_set(&self, a: &VertexSet) -> Result<Vec<usize>> {
        self.check_set_size(a)?;
        let anchor = a
            .iter()
            .filter(|&v| v < self.n())
            .min_by_key(|&v| self.hypergraph.degree(v));
        let Some(anchor) = anchor else {
            return Ok(Vec::new());
        };
        Ok(self
            .hypergraph
            .incident(anchor)
            .iter()
            .copied()
            .filter(|&e| self.has_prefix_set(e, a))
            .collect())
    }

    /// N⃗_D(A): union of E \ A over E ∈ E⃗_D(A).
    pub fn directed_neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        let k = a.len();
        let mut out = VertexSet::new(self.n());
        for e in self.directed_edge_set(a)? {
            for &v in &self.order(e)[k..] {
                out.insert(v);
            }
        }
        Ok(out)
    }

    /// deg⃗_D(A).
    pub fn directed_degree(&self, a: &VertexSet) -> Result<usize> {
        Ok(self.directed_edge_set(a)?.len())
    }

    /// n⃗_D(A).
    pub fn n_arrow(&self, a: &VertexSet) -> Result<usize> {
        Ok(self.directed_neighborhood(a)?.len())
    }

    /// Directed degree of every p-set that is a prefix of some edge, keyed by
    /// the sorted member list. Sets absent from the map have degree 0.
    pub fn prefix_degrees(&self, p: usize) -> Result<BTreeMap<Vec<VertexId>, usize>> {
        check_prefix_length(p, self.r())?;
        let mut map = BTreeMap::new();
        for oe in self.ordered_edges() {
            let mut key = oe.prefix(p).to_vec();
            key.sort_unstable();
            *map.entry(key).or_insert(0) += 1;
        }
        Ok(map)
    }

    /// Δ⃗_p(D) and the lexicographically smallest p-set attaining it.
    ///
    /// Only prefix sets can have positive degree, so those are the only
    /// candidates scanned; when every degree is zero the answer is
    /// `{0, .., p-1}`.
    pub fn max_directed_degree(&self, p: usize) -> Result<(VertexSet, usize)> {
        let degrees = self.prefix_degrees(p)?;
        let mut best: Option<(&Vec<VertexId>, usize)> = None;
        for (set, &d) in &degrees {
            if best.is_none_or(|(_, b)| d > b) {
                best = Some((set, d));
            }
        }
        match best {
            Some((set, d)) => Ok((VertexSet::from_members(self.n(), set.iter().copied()), d)),
            None if self.n() >= p => Ok((VertexSet::from_members(self.n(), 0..p), 0)),
            None => Err(Error::Invalid(format!(
                "no {p}-subsets of {} vertices",
                self.n()
            ))),
        }
    }

    /// Parses the orientation text format against a known hypergraph.
    pub fn from_text(hypergraph: Arc<Hypergraph>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let header = parse_numbers(hline, header)?;
        let expected = [hypergraph.n(), hypergraph.r(), hypergraph.edge_count()];
        if header[..] != expected[..] {
            return Err(Error::Mismatch(format!(
                "header {header:?} but hypergraph is {expected:?}"
            )));
        }
        let mut orders = Vec::with_capacity(hypergraph.edge_count());
        for (line, l) in lines.by_ref() {
            let o = parse_numbers(line, l)?;
            let i = orders.len();
            if i >= hypergraph.edge_count() {
                return Err(Error::Mismatch(format!("extra order on line {line}")));
            }
            check_permutes(&hypergraph, i, &o).map_err(|e| match e {
                Error::Mismatch(msg) => Error::Mismatch(format!("line {line}: {msg}")),
                other => other,
            })?;
            orders.push(o);
        }
        Self::new(hypergraph, orders)
    }

    pub fn to_text(&self) -> String {
        let h = &self.hypergraph;
        let mut s = format!("{} {} {}\n", h.n(), h.r(), h.edge_count());
        for oe in self.ordered_edges() {
            write_ids(&mut s, oe.order);
        }
        s
    }

    /// Number of distinct orientations, (r!)^e, or `None` on u64 overflow.
    pub fn count(hypergraph: &Hypergraph) -> Option<u64> {
        let per = factorial(hypergraph.r());
        (0..hypergraph.edge_count()).try_fold(1u64, |acc, _| acc.checked_mul(per))
    }
}

pub(crate) fn check_prefix_length(p: usize, r: usize) -> Result<()> {
    if p == 0 || p + 1 > r {
        return Err(Error::PrefixLength { p, max: r - 1 });
    }
    Ok(())
}

fn check_permutes(h: &Hypergraph, edge: usize, order: &[VertexId]) -> Result<()> {
    if edge >= h.edge_count() {
        return Err(Error::Mismatch(format!("edge index {edge} out of range")));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != h.edge(edge).vertices() {
        return Err(Error::Mismatch(format!(
            "{order:?} does not permute edge {edge} = {:?}",
            h.edge(edge).vertices()
        )));
    }
    Ok(())
}
