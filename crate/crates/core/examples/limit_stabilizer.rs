//! The limit group G^σ fixing z_{λ^σ} and the extra transformation outside it.

use jetinv::exact::rational::int;
use jetinv::orbit::limit::{
    extra_stabilizer, fixes_projectively, independent_of, limit_stabilizer_matrix, torus_directions,
};
use jetinv::orbit::weights::{z_closed_form_columns, Kind};

fn main() {
    for k in 2..=5 {
        for sigma in 2..=k {
            let g = limit_stabilizer_matrix(sigma, k).unwrap();
            let cols = z_closed_form_columns(sigma, k, Kind::Lambda).unwrap();
            let beta: Vec<_> = (0..k).map(|i| int(i as i64 + 2)).collect();
            let fixes = fixes_projectively(&g.at(&beta), &cols, k);
            print!("k={k} σ={sigma}: G^σ fixes z: {fixes}");
            let mut known = g.first_order_directions();
            known.extend(torus_directions(sigma, k));
            match extra_stabilizer(sigma, k) {
                Ok(e) => println!(
                    ", extra {:?} fixes z: {}, independent: {}",
                    e.case,
                    fixes_projectively(&e.at(&int(3)), &cols, k),
                    independent_of(&e.direction(), &known)
                ),
                Err(_) => println!(", no extra transformation"),
            }
        }
    }
    let g = limit_stabilizer_matrix(2, 4).unwrap();
    println!("G^2 for k=4:");
    for row in g.entries.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }
}
