use std::time::Instant;

use jetinv::invariants::generator_set;

fn main() {
    for (n, k) in [(2, 2), (3, 3), (2, 4), (4, 4)] {
        let t = Instant::now();
        let g = generator_set(n, k, 1).unwrap();
        let built = t.elapsed();
        let report = g.verify(100, 7, 20);
        println!(
            "n={n} k={k}: {} generators {:?}, built {:?}, verified {:?}, passed {}",
            g.len(),
            g.counts_by_columns(),
            built,
            t.elapsed(),
            report.passed()
        );
    }
}
