//! Stabilizer dimension of the distinguished point for p > 1, measured
//! against the predicted p·n − 1.

use jetinv::orbit::report::{p1_probe_conjecture, DEFAULT_RESOURCE_LIMIT};

fn main() {
    for (p, k) in [(1, 3), (2, 1), (2, 2), (3, 1)] {
        let r = p1_probe_conjecture(p, k, 1, DEFAULT_RESOURCE_LIMIT).unwrap();
        println!("p={p} k={k} n={} K={}: measured {}, predicted {}", r.n, r.twist, r.measured, r.predicted);
    }
    println!("p=2 k=3: {}", p1_probe_conjecture(2, 3, 1, DEFAULT_RESOURCE_LIMIT).unwrap_err());
}
