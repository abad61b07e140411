//! Forms over F_p that become isomorphic over F_{p^2}, classified by H^1.

use periodbench::nonab::twisted_forms;

pub fn run() {
    for (name, form) in [
        ("x^2 + y^2", vec![vec![1, 0], vec![0, 1]]),
        ("xy", vec![vec![0, 1], vec![1, 0]]),
    ] {
        let r = twisted_forms(3, 2, &[form], 1 << 22).unwrap();
        println!(
            "{name} over F_3: |Aut| over F_9 = {}, {} twisted forms in {} classes, |H^1| = {}, bijection = {}",
            r.automorphism_group_order,
            r.twisted_forms,
            r.k_classes,
            r.h1_classes,
            r.bijective()
        );
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
