use std::sync::Arc;
use std::time::Instant;

use hyperdom::extremal::{gamma_upper_exact, EnumerationOptions};
use hyperdom::Hypergraph;

fn main() {
    let h = Arc::new(Hypergraph::complete(5, 3).unwrap());
    for p in 1..3 {
        let t = Instant::now();
        let opts = EnumerationOptions {
            cap: u64::MAX,
            fix_first_edge: false,
        };
        let res = gamma_upper_exact(&h, p, opts).unwrap();
        println!(
            "p={p} value={} examined={} in {:?}",
            res.value,
            res.orientations_examined,
            t.elapsed()
        );
    }
}
