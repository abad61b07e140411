//! Monodromy weight filtration of a polarized nilpotent and its graded pairings.

use periodbench::perioddomain::{
    graded_pairing, polarized_nilpotent, primitive_decomposition, primitive_pairings,
    weight_filtration, weight_filtration_by_kernels, FormSymmetry, NilpotentEndo,
};

pub fn run() {
    let (n, b) = polarized_nilpotent(&[3, 2, 2, 1], FormSymmetry::Symmetric).unwrap();
    let n = NilpotentEndo::new(n).unwrap();
    let w = weight_filtration(&n);
    assert_eq!(w, weight_filtration_by_kernels(&n));
    assert!(w.check(&n).ok());
    let gr: Vec<_> = w
        .graded_dims()
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .collect();
    println!("Gr dims: {gr:?}");

    let prim = primitive_decomposition(&n, &w);
    for (l, basis) in &prim.pieces {
        println!("P_{l}: dim {}", basis.len());
    }
    for k in 0..=w.max_index() {
        if w.gr_dim(k as i64) > 0 {
            let gp = graded_pairing(&n, &b, k).unwrap();
            println!("B_{k} on Gr_{k}: nondegenerate = {}", gp.nondegenerate);
        }
    }
    for p in primitive_pairings(&n, &b).unwrap() {
        println!("primitive pairing on P_{}: inertia {:?}", p.l, p.inertia);
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
