//! Uniform hypergraphs with canonically ordered edges.
//!
//! Edges are stored as strictly increasing vertex lists and the edge list is
//! sorted lexicographically, so an edge index is a stable handle that
//! orientations and certificates can refer to.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::index;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, for_each_combination, unrank_combination};
use crate::error::{Error, Result};
use crate::{VertexId, VertexSet};

/// An r-subset of the vertex set in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    /// Canonicalizes `vertices`; fails on duplicates.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge {
                edge: vertices,
                reason: "repeated vertex",
            });
        }
        Ok(Edge(vertices))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<VertexId>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.r, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            n: h.n,
            r: h.r,
            edges: h.edges.into_iter().map(|e| e.0).collect(),
        }
    }
}

/// An induced subhypergraph together with its vertex relabeling.
#[derive(Clone, Debug)]
pub struct InducedSubhypergraph {
    pub hypergraph: Hypergraph,
    /// `original[new_id]` is the vertex id in the parent.
    pub original: Vec<VertexId>,
}

impl InducedSubhypergraph {
    pub fn to_original(&self, v: VertexId) -> VertexId {
        self.original[v]
    }

    pub fn to_local(&self, v: VertexId) -> Option<VertexId> {
        self.original.binary_search(&v).ok()
    }
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary-order vertex lists.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<VertexId>>,
    {
        if r < 2 {
            return Err(Error::Uniformity(r));
        }
        let mut out = Vec::new();
        for e in edges {
            let e = Edge::new(e.into())?;
            if e.len() != r {
                return Err(Error::InvalidEdge {
                    edge: e.0,
                    reason: "wrong number of vertices",
                });
            }
            if let Some(&v) = e.0.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            out.push(e);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge {
                edge: w[0].0.clone(),
                reason: "duplicate edge",
            });
        }
        Ok(Self::from_sorted(n, r, out))
    }

    fn from_sorted(n: usize, r: usize, edges: Vec<Edge>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e.vertices() {
                incidence[v].push(i);
            }
        }
        Hypergraph {
            n,
            r,
            edges,
            incidence,
        }
    }

    /// Edgeless hypergraph on `n` vertices.
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, Vec::<Vec<VertexId>>::new())
    }

    /// The complete r-uniform hypergraph H(n, r).
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::Uniformity(r));
        }
        let mut edges = Vec::new();
        for_each_combination(n, r, |c| edges.push(Edge(c.to_vec())));
        Ok(Self::from_sorted(n, r, edges))
    }

    /// `m` distinct edges drawn uniformly without replacement.
    pub fn random(n: usize, r: usize, m: usize, seed: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::Uniformity(r));
        }
        let available = binomial(n as u64, r as u64);
        if m as u128 > available {
            return Err(Error::TooManyEdges {
                requested: m as u128,
                available,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::with_capacity(m);
        if available <= 1 << 22 {
            for i in index::sample(&mut rng, available as usize, m) {
                edges.push(Edge(unrank_combination(n, r, i as u128)));
            }
        } else {
            let mut seen = HashSet::with_capacity(m);
            while edges.len() < m {
                let mut e = index::sample(&mut rng, n, r).into_vec();
                e.sort_unstable();
                if seen.insert(e.clone()) {
                    edges.push(Edge(e));
                }
            }
        }
        edges.sort_unstable();
        Ok(Self::from_sorted(n, r, edges))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Indices of the edges containing `v`.
    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// Index of the edge with exactly these vertices, in any order.
    pub fn edge_index(&self, vertices: &[VertexId]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.edges
            .binary_search_by(|e| e.0.as_slice().cmp(&key))
            .ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() as u128 == binomial(self.n as u64, self.r as u64)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// H[U] with vertices relabeled `0..|U|` in their original order.
    pub fn induced(&self, subset: &VertexSet) -> InducedSubhypergraph {
        let original = subset.to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.0.iter().all(|&v| subset.contains(v)))
            .map(|e| Edge(e.0.iter().map(|&v| local[v]).collect()))
            .collect();
        // relabeling is monotone, so the lexicographic order survives
        InducedSubhypergraph {
            hypergraph: Self::from_sorted(original.len(), self.r, edges),
            original,
        }
    }

    /// All r-subsets that are not edges.
    pub fn complement(&self) -> Hypergraph {
        let mut edges = Vec::new();
        let mut it = self.edges.iter().peekable();
        for_each_combination(self.n, self.r, |c| {
            if it.peek().is_some_and(|e| e.0 == c) {
                it.next();
            } else {
                edges.push(Edge(c.to_vec()));
            }
        });
        Self::from_sorted(self.n, self.r, edges)
    }

    /// Parses the `n r m` text format. Lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
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
        let [n, r, m] = header[..] else {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be `n r m`".into(),
            });
        };
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines.by_ref().take(m) {
            let e = parse_numbers(line, l)?;
            if e.len() != r {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {r} vertex ids, found {}", e.len()),
                });
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: "trailing data after last edge".into(),
            });
        }
        Self::new(n, r, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.r, self.edges.len());
        for e in &self.edges {
            write_ids(&mut s, e.vertices());
        }
        s
    }
}

pub(crate) fn parse_numbers(line: usize, l: &str) -> Result<Vec<usize>> {
    l.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("not a non-negative integer: {t:?}"),
            })
        })
        .collect()
}

pub(crate) fn write_ids(s: &mut String, ids: &[VertexId]) {
    for (i, v) in ids.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> Hypergraph {
        Hypergraph::new(4, 3, [vec![2, 0, 1]]).unwrap()
    }

    #[test]
    fn complete_edge_counts() {
        assert_eq!(
            Hypergraph::complete(3, 3).unwrap().edges()[0].vertices(),
            &[0, 1, 2]
        );
        assert_eq!(Hypergraph::complete(5, 3).unwrap().edge_count(), 10);
        let h = Hypergraph::complete(2, 3).unwrap();
        assert_eq!((h.n(), h.edge_count()), (2, 0));
        assert!(matches!(
            Hypergraph::complete(4, 1),
            Err(Error::Uniformity(1))
        ));
        for n in 0..=12 {
            for r in 2..=5 {
                let h = Hypergraph::complete(n, r).unwrap();
                assert_eq!(h.edge_count() as u128, binomial(n as u64, r as u64));
            }
        }
    }

    #[test]
    fn induced_examples() {
        let h = Hypergraph::complete(4, 3).unwrap();
        let sub = h.induced(&VertexSet::from_members(4, [0, 1, 2]));
        assert_eq!(sub.hypergraph, Hypergraph::complete(3, 3).unwrap());

        let h = Hypergraph::complete(4, 2).unwrap();
        assert_eq!(
            h.induced(&VertexSet::from_members(4, [0, 1]))
                .hypergraph
                .edge_count(),
            1
        );

        let sub = single_edge().induced(&VertexSet::from_members(4, [0, 1]));
        assert_eq!((sub.hypergraph.n(), sub.hypergraph.edge_count()), (2, 0));

        let h = single_edge();
        let sub = h.induced(&VertexSet::from_members(4, [1, 2, 3]));
        assert_eq!(sub.original, vec![1, 2, 3]);
        assert_eq!(sub.to_local(3), Some(2));
        assert_eq!(sub.to_local(0), None);
        assert_eq!(sub.to_original(0), 1);
    }

    #[test]
    fn complement_examples() {
        let c = Hypergraph::complete(5, 3).unwrap().complement();
        assert_eq!((c.n(), c.edge_count()), (5, 0));
        let e = Hypergraph::empty(4, 2).unwrap();
        assert_eq!(e.complement(), Hypergraph::complete(4, 2).unwrap());
        let c = single_edge().complement();
        let got: Vec<_> = c.edges().iter().map(|e| e.vertices().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn random_examples() {
        assert_eq!(
            Hypergraph::random(5, 3, 10, 99).unwrap(),
            Hypergraph::complete(5, 3).unwrap()
        );
        assert_eq!(Hypergraph::random(5, 3, 0, 1).unwrap().edge_count(), 0);
        assert_eq!(
            Hypergraph::random(9, 4, 30, 7).unwrap(),
            Hypergraph::random(9, 4, 30, 7).unwrap()
        );
        assert!(matches!(
            Hypergraph::random(5, 3, 11, 0),
            Err(Error::TooManyEdges {
                requested: 11,
                available: 10
            })
        ));
        // rejection-sampling path
        let big = Hypergraph::random(200, 5, 50, 3).unwrap();
        assert_eq!(big.edge_count(), 50);
    }

    #[test]
    fn degrees() {
        let h = Hypergraph::complete(5, 3).unwrap();
        assert!((0..5).all(|v| h.degree(v) == 6));
        let e = Hypergraph::empty(3, 2).unwrap();
        assert!((0..3).all(|v| e.degree(v) == 0));
        assert_eq!(single_edge().degree(3), 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(4, 3, [vec![0, 1]]).is_err());
        assert!(Hypergraph::new(4, 3, [vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(4, 3, [vec![0, 1, 4]]).is_err());
        assert!(Hypergraph::new(4, 3, [vec![0, 1, 2], vec![2, 1, 0]]).is_err());
    }

    #[test]
    fn text_format() {
        let h = Hypergraph::from_text("# comment\n4 3 2\n3 1 0\n0 2 1\n").unwrap();
        assert_eq!(h.edges()[0].vertices(), &[0, 1, 2]);
        assert_eq!(h.edges()[1].vertices(), &[0, 1, 3]);
        assert_eq!(h.to_text(), "4 3 2\n0 1 2\n0 1 3\n");
        assert!(Hypergraph::from_text("4 3 2\n0 1 2\n").is_err());
        assert!(Hypergraph::from_text("4 3 1\n0 1\n").is_err());
        assert!(Hypergraph::from_text("4 3\n").is_err());
        assert!(Hypergraph::from_text("4 3 1\n0 1 x\n").is_err());
    }

    #[test]
    fn json_mirror() {
        let h = single_edge();
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"n":4,"r":3,"edges":[[0,1,2]]}"#);
        let back: Hypergraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":2,"r":3,"edges":[[0,1,2]]}"#).is_err());
    }
}
