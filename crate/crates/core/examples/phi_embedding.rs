//! φ of a jet: its columns span the flag of osculating spaces in Sym^{≤k}.

use jetinv::flag::{flag_spans, p_point, phi, wedge_columns};
use jetinv::jet::symbolic_jet;
use jetinv::random::Sampler;

fn main() {
    let (jet, _) = symbolic_jet(1, 2, 3);
    let f = phi(&jet);
    println!("symbolic φ for n=2, k=3:");
    for (i, row) in f.matrix.to_rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  {:<8} [{}]", f.rows.elems()[i].to_string(), cells.join(", "));
    }

    let gamma = Sampler::new(11, 20).regular_jet(1, 3, 3);
    let m = phi(&gamma);
    let dims: Vec<usize> = flag_spans(&m).iter().map(Vec::len).collect();
    println!("flag dimensions for a random regular jet: {dims:?}");
    let w = wedge_columns(&m, &[0, 1, 2]).unwrap();
    println!("wedge of all columns has {} Plücker terms", w.len());
    println!("p_3 = {}", p_point(1, 3));
}
