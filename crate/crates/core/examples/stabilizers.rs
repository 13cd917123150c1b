//! Infinitesimal stabilizers of p_k ⊗ e1^K and of the boundary candidates.

use jetinv::flag::p_point;
use jetinv::orbit::lie::{full_tensor_stabilizer, infinitesimal_stabilizer, same_algebra, Algebra, Mode, Twist};
use jetinv::orbit::report::{codim_report, twist_power, DEFAULT_RESOURCE_LIMIT};

fn main() {
    for m in [1, 2] {
        for k in 2..=4 {
            let twist = Twist::e1(twist_power(k, m));
            let s = infinitesimal_stabilizer(&p_point(1, k), Some(&twist), Algebra::Sl, Mode::Affine).unwrap();
            println!("M={m} k={k} K={}: affine stabilizer dimension {}", twist.b, s.dimension);
        }
    }

    let p = p_point(1, 2);
    let reduced = infinitesimal_stabilizer(&p, Some(&Twist::e1(2)), Algebra::Sl, Mode::Affine).unwrap();
    let full = full_tensor_stabilizer(&p, 2, Algebra::Sl).unwrap();
    println!("k=2 K=2: twist reduction agrees with the full tensor: {}", same_algebra(&reduced, &full, 2));

    let r = codim_report(4, 1, DEFAULT_RESOURCE_LIMIT).unwrap();
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
}
