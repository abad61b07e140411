//! Non-abelian H^0 and H^1 of finite groups and the six-term exact sequence.

use periodbench::nonab::{
    h0, h1, pointed_exact_sequence_check, FiniteGroup, GroupAction, DEFAULT_GUARD,
};

pub fn run() {
    let inv = GroupAction::inversion(FiniteGroup::cyclic(3)).unwrap();
    println!(
        "H^1(Z/2, Z/3 by inversion): {} class",
        h1(&inv, DEFAULT_GUARD).unwrap().len()
    );

    let triv = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    println!(
        "H^1(Z/2, Z/2 trivial): {} classes",
        h1(&triv, DEFAULT_GUARD).unwrap().len()
    );

    let s3 = FiniteGroup::symmetric(3).unwrap();
    let act = GroupAction::trivial(FiniteGroup::cyclic(2), s3);
    let r = h1(&act, DEFAULT_GUARD).unwrap();
    println!(
        "H^1(Z/2, S3 trivial): {} cocycles in {} classes, H^0 of order {}",
        r.cocycles.len(),
        r.len(),
        h0(&act).len()
    );

    let z4 = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    let seq = pointed_exact_sequence_check(&z4, &[0, 2], DEFAULT_GUARD).unwrap();
    println!(
        "0 -> Z/2 -> Z/4 -> Z/2 -> 0: H^1 sizes {:?}, exact = {}",
        seq.h1_sizes, seq.exact
    );
}

#[allow(dead_code)]
fn main() {
    run();
}
