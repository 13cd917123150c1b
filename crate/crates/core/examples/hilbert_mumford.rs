//! Torus stability from the convex hull of weights.

use jetinv::orbit::hm::hilbert_mumford_torus;

fn main() {
    let cases: [&[Vec<i64>]; 5] = [
        &[vec![1], vec![-1]],
        &[vec![1], vec![2]],
        &[vec![0]],
        &[vec![1, 0], vec![0, 1], vec![-1, -1]],
        &[vec![1, 0], vec![-1, 0], vec![0, 1]],
    ];
    for w in cases {
        println!("{w:?}: {:?}", hilbert_mumford_torus(w).unwrap());
    }
}
