//! Isotropy groups, the adjoint Hodge structure and adapted complex structures.

use periodbench::bwb::{alpha_pi, FlagDomainSpec};
use periodbench::perioddomain::{
    adapted_complex_structures, hodge_structure_on_g, isotropy_group, HodgeNumbers,
};
use periodbench::rootsys::{CartanType, RootSystem};

pub fn run() {
    for (n, h) in [
        (1, vec![3, 3]),
        (2, vec![1, 19, 1]),
        (2, vec![2, 3, 2]),
        (3, vec![1, 1, 1, 1]),
    ] {
        let hn = HodgeNumbers::new(n, h.clone()).unwrap();
        let iso = isotropy_group(&hn);
        println!(
            "h = {h:?}: H = {iso}, dim D = {}, g^(r,-r) = {:?}",
            iso.domain_complex_dimension,
            hodge_structure_on_g(&hn)
        );
    }

    let a2 = RootSystem::new(CartanType::A, 2).unwrap();
    let sets = adapted_complex_structures(&a2, &[], 1 << 16).unwrap();
    let closed = sets.iter().filter(|s| s.closed()).count();
    println!("A2 full flag: {} sign choices, {closed} closed", sets.len());

    let lambda = a2.from_fundamental_i64(&[1, -2]).unwrap();
    let spec = FlagDomainSpec::new(a2, vec![], Some(lambda)).unwrap();
    println!(
        "alpha(pi) for lambda = (1, -2): {:?}",
        alpha_pi(&spec).unwrap()
    );
}

#[allow(dead_code)]
fn main() {
    run();
}
