//! The matrix of a reparametrization acting on jet coefficients, symbolic and
//! numeric, with the group law checked on a random pair.

use jetinv::jet::{group_matrix, group_product, invert, symbolic_reparam};
use jetinv::random::Sampler;

fn main() {
    let (psi, _) = symbolic_reparam(1, 4);
    let g = group_matrix(&psi).unwrap();
    println!("G_4 for the generic element:");
    for row in g.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }

    let mut s = Sampler::new(3, 20);
    let (a, b) = (s.reparam(2, 3), s.reparam(2, 3));
    let ab = group_product(&a, &b).unwrap();
    let lhs = group_matrix(&ab).unwrap();
    let rhs = group_matrix(&a).unwrap().mul(&group_matrix(&b).unwrap()).unwrap();
    println!("p=2 k=3: matrix of a product is the product of matrices: {}", lhs == rhs);
    let e = group_product(&a, &invert(&a).unwrap()).unwrap();
    println!("a composed with its inverse is the identity jet: {}", e == jetinv::jet::JetMap::identity(2, 3, e.zero_entry().clone()));
}
