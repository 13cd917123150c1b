//! Limits of p_k under the one-parameter subgroups λ^σ and μ^σ, compared with
//! the closed form.

use jetinv::flag::p_point;
use jetinv::orbit::weights::{limit_point, z_closed_form, Kind};

fn main() {
    for k in 2..=5 {
        let p = p_point(1, k);
        for sigma in 2..=k {
            for kind in [Kind::Lambda, Kind::Mu] {
                if kind == Kind::Mu && sigma == k {
                    continue;
                }
                let lambda = kind.subgroup(sigma, k).unwrap();
                let z = limit_point(&p, &lambda).unwrap();
                let same = z == z_closed_form(sigma, k, kind).unwrap();
                println!("k={k} {kind:?}^{sigma}: closed form agrees: {same}");
                if k == 4 {
                    println!("    {z}");
                }
            }
        }
    }
}
