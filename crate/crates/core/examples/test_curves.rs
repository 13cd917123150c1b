//! Test curves through a jet: the linear system has rank N·dim Sym^{≤k}(p)
//! and its solution space is the annihilator of the flag.

use jetinv::invariants::{solution_space_equals_perp, test_curve_system};
use jetinv::random::Sampler;
use jetinv::sym::sym_le_dim;

fn main() {
    let mut s = Sampler::new(5, 20);
    for (p, k, n, big_n) in [(1, 2, 2, 1), (1, 3, 3, 2), (1, 4, 4, 1), (2, 2, 3, 1)] {
        let gamma = s.regular_jet(p, n, k);
        let sys = test_curve_system(&gamma, big_n).unwrap();
        println!(
            "p={p} k={k} n={n} N={big_n}: rank {} (expected {}), perp {}",
            sys.matrix.rank(),
            big_n * sym_le_dim(p, k),
            solution_space_equals_perp(&gamma, big_n).unwrap()
        );
    }
}
