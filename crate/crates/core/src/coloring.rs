//! Proper hypergraph colorings, exact chromatic number, and the independence
//! and clique numbers for small instances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::{Hypergraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub num_colors: usize,
    pub assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(assignment: Vec<usize>) -> Self {
        let mut distinct = assignment.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Coloring {
            num_colors: distinct.len(),
            assignment,
        }
    }

    /// Color classes ordered by color id; empty colors are skipped.
    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut by_color: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (v, &c) in self.assignment.iter().enumerate() {
            by_color.entry(c).or_default().push(v);
        }
        by_color.into_values().collect()
    }
}

fn check_len(h: &Hypergraph, c: &Coloring) -> Result<()> {
    if c.assignment.len() != h.n() {
        return Err(Error::ColoringLength {
            got: c.assignment.len(),
            expected: h.n(),
        });
    }
    Ok(())
}

/// No edge is monochromatic.
pub fn is_proper(h: &Hypergraph, c: &Coloring) -> Result<bool> {
    check_len(h, c)?;
    Ok(monochromatic_edge(h, c).is_none())
}

fn monochromatic_edge<'a>(h: &'a Hypergraph, c: &Coloring) -> Option<&'a [VertexId]> {
    h.edges().iter().map(|e| e.vertices()).find(|vs| {
        let first = c.assignment[vs[0]];
        vs.iter().all(|&v| c.assignment[v] == first)
    })
}

/// Checks that `c` properly colors the complement of `h`, i.e. every class
/// is a clique of `h` or has fewer than r vertices. Does not build the
/// complement.
pub(crate) fn check_complement_proper(h: &Hypergraph, c: &Coloring) -> Result<()> {
    check_len(h, c)?;
    let r = h.r();
    let mut inside: BTreeMap<usize, u128> = BTreeMap::new();
    for e in h.edges() {
        let vs = e.vertices();
        let first = c.assignment[vs[0]];
        if vs.iter().all(|&v| c.assignment[v] == first) {
            *inside.entry(first).or_default() += 1;
        }
    }
    for class in c.classes() {
        let color = c.assignment[class[0]];
        let need = binomial(class.len() as u64, r as u64);
        if inside.get(&color).copied().unwrap_or(0) < need {
            let mut missing = None;
            for_each_combination(class.len(), r, |idx| {
                if missing.is_none() {
                    let vs: Vec<VertexId> = idx.iter().map(|&i| class[i]).collect();
                    if h.edge_index(&vs).is_none() {
                        missing = Some(vs);
                    }
                }
            });
            return Err(Error::ImproperColoring(missing.expect("a non-edge exists")));
        }
    }
    Ok(())
}

fn check_cap(h: &Hypergraph, cap: usize) -> Result<()> {
    if h.n() > cap {
        return Err(Error::CapExceeded {
            required: format!("search over {} vertices", h.n()),
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Edge lists grouped by their largest vertex.
fn edges_by_max(h: &Hypergraph) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        out[*e.vertices().last().expect("r >= 2")].push(i);
    }
    out
}

/// χ(H) by trying k = 1, 2, ... with a backtracking k-coloring.
pub fn chromatic_number_exact(h: &Hypergraph, cap: usize) -> Result<usize> {
    check_cap(h, cap)?;
    if h.n() == 0 {
        return Ok(0);
    }
    let closing = edges_by_max(h);
    let mut colors = vec![usize::MAX; h.n()];

    fn extend(
        h: &Hypergraph,
        closing: &[Vec<usize>],
        colors: &mut [usize],
        v: usize,
        used: usize,
        k: usize,
    ) -> bool {
        if v == colors.len() {
            return true;
        }
        // new colors are interchangeable, so only the first unused one is tried
        for c in 0..k.min(used + 1) {
            colors[v] = c;
            let ok = closing[v]
                .iter()
                .all(|&e| h.edge(e).vertices().iter().any(|&u| colors[u] != c));
            if ok && extend(h, closing, colors, v + 1, used.max(c + 1), k) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }

    for k in 1..=h.n() {
        if extend(h, &closing, &mut colors, 0, 0, k) {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}

/// A proper coloring of the complement of `h`, built greedily in vertex
/// order: each vertex joins the first class that stays a clique of `h` (or
/// stays below r vertices).
pub fn greedy_complement_coloring(h: &Hypergraph) -> Coloring {
    let r = h.r();
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    let mut assignment = vec![0; h.n()];
    let mut probe = Vec::with_capacity(r);
    for (v, color) in assignment.iter_mut().enumerate() {
        let slot = classes.iter().position(|class| {
            let mut fits = true;
            for_each_combination(class.len(), r - 1, |idx| {
                if fits {
                    probe.clear();
                    probe.extend(idx.iter().map(|&i| class[i]));
                    probe.push(v);
                    fits = h.edge_index(&probe).is_some();
                }
            });
            fits
        });
        let slot = slot.unwrap_or_else(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(v);
        *color = slot;
    }
    Coloring::new(assignment)
}

struct SubsetSearch<'a> {
    h: &'a Hypergraph,
    closing: Vec<Vec<usize>>,
    chosen: Vec<bool>,
    size: usize,
    best: usize,
}

impl SubsetSearch<'_> {
    /// Edges closed by `v` whose other vertices are all chosen.
    fn closed_edges(&self, v: VertexId) -> u128 {
        self.closing[v]
            .iter()
            .filter(|&&e| {
                self.h
                    .edge(e)
                    .vertices()
                    .iter()
                    .all(|&u| u == v || self.chosen[u])
            })
            .count() as u128
    }

    fn run(&mut self, v: VertexId, clique: bool) {
        let n = self.h.n();
        if self.size > self.best {
            self.best = self.size;
        }
        if v == n || self.size + (n - v) <= self.best {
            return;
        }
        let r = self.h.r() as u64;
        let closed = self.closed_edges(v);
        let allowed = if clique {
            closed == binomial(self.size as u64, r - 1)
        } else {
            closed == 0
        };
        if allowed {
            self.chosen[v] = true;
            self.size += 1;
            self.run(v + 1, clique);
            self.size -= 1;
            self.chosen[v] = false;
        }
        self.run(v + 1, clique);
    }
}

fn largest(h: &Hypergraph, cap: usize, clique: bool) -> Result<usize> {
    check_cap(h, cap)?;
    let mut s = SubsetSearch {
        h,
        closing: edges_by_max(h),
        chosen: vec![false; h.n()],
        size: 0,
        best: 0,
    };
    s.run(0, clique);
    Ok(s.best)
}

/// α(H): largest set containing no edge.
pub fn independence_number(h: &Hypergraph, cap: usize) -> Result<usize> {
    largest(h, cap, false)
}

/// ω(H): largest set all of whose r-subsets are edges.
pub fn clique_number(h: &Hypergraph, cap: usize) -> Result<usize> {
    largest(h, cap, true)
}
