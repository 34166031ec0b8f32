use std::sync::Arc;

use hyperdom::coloring::{chromatic_number_exact, is_proper, Coloring};
use hyperdom::domination::min_directed_dominating;
use hyperdom::extremal::{gamma_upper_exact, gamma_upper_search, EnumerationOptions, SearchConfig};
use hyperdom::{Hypergraph, Orientation};

/// Smallest k admitting a proper k-coloring, by trying all k^n assignments.
fn brute_chromatic(h: &Hypergraph) -> usize {
    let n = h.n();
    for k in 1..=n {
        let total = k.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let x = c % k;
                    c /= k;
                    x
                })
                .collect();
            let mono = h.edges().iter().any(|e| {
                e.vertices()
                    .iter()
                    .all(|&v| colors[v] == colors[e.vertices()[0]])
            });
            if !mono {
                return k;
            }
        }
    }
    n
}

#[test]
fn chromatic_number_of_complete_hypergraphs_matches_brute_force() {
    for r in 2..=4 {
        for n in r..=7 {
            let h = Hypergraph::complete(n, r).unwrap();
            let exact = chromatic_number_exact(&h, 16).unwrap();
            assert_eq!(exact, brute_chromatic(&h), "H({n},{r})");
            // each color class holds at most r - 1 vertices
            assert_eq!(exact, n.div_ceil(r - 1), "H({n},{r})");
        }
    }
}

#[test]
fn chromatic_number_on_random_hypergraphs_matches_brute_force() {
    for seed in 0..40u64 {
        let n = 3 + (seed % 5) as usize;
        let r = 2 + (seed % 2) as usize;
        let m = (seed as usize * 7) % (hyperdom::binomial(n as u64, r as u64) as usize + 1);
        let h = Hypergraph::random(n, r, m, seed).unwrap();
        let k = chromatic_number_exact(&h, 16).unwrap();
        assert_eq!(k, brute_chromatic(&h), "seed {seed}");
        let all_distinct = Coloring::new((0..n).collect());
        assert!(is_proper(&h, &all_distinct).unwrap());
    }
}

#[test]
fn seven_vertex_tournaments() {
    let h = Arc::new(Hypergraph::complete(7, 2).unwrap());
    // quadratic residues mod 7: i beats j when j - i is 1, 2 or 4
    let orders: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            if [1, 2, 4].contains(&((b + 7 - a) % 7)) {
                vec![a, b]
            } else {
                vec![b, a]
            }
        })
        .collect();
    let paley = Orientation::new(h.clone(), orders).unwrap();
    let (cert, _) = min_directed_dominating(&paley, 1, None).unwrap();
    // no pair dominates: checked by hand over all 21 pairs below
    for a in 0..7 {
        for b in a + 1..7 {
            let covered = (0..7).all(|u| {
                u == a
                    || u == b
                    || [a, b]
                        .iter()
                        .any(|&s| [1, 2, 4].contains(&((u + 7 - s) % 7)))
            });
            assert!(!covered, "pair {a},{b} dominates");
        }
    }
    assert_eq!(cert.size(), 3);

    let exact = gamma_upper_exact(&h, 1, EnumerationOptions::default()).unwrap();
    assert_eq!(exact.value, 3);
    assert!(exact.exact);

    let cfg = SearchConfig {
        restarts: 8,
        max_steps: 400,
        seed: 1,
        plateau_limit: 40,
        node_budget: None,
    };
    let (found, _) = gamma_upper_search(&h, 1, &cfg).unwrap();
    assert!((2..=3).contains(&found.value));
    assert!(found.value <= exact.value);
    assert_eq!(
        min_directed_dominating(&found.witness, 1, None)
            .unwrap()
            .0
            .size(),
        found.value
    );
}
