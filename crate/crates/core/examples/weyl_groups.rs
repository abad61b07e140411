//! Weyl group orders, dominant forms and the Weyl dimension formula.

use periodbench::rational::{fmt_q, frac};
use periodbench::rootsys::{CartanType, RootSystem};

pub fn run() {
    for (t, r) in [
        (CartanType::A, 3),
        (CartanType::B, 3),
        (CartanType::C, 3),
        (CartanType::D, 4),
    ] {
        let rs = RootSystem::new(t, r).unwrap();
        println!(
            "{t:?}{r}: |W| = {}, {} positive roots",
            rs.weyl_group_order(),
            rs.positive_roots().len()
        );
    }

    let b2 = RootSystem::new(CartanType::B, 2).unwrap();
    let mu = b2.from_fundamental(&[frac(-3, 2), frac(1, 3)]).unwrap();
    let d = b2.to_dominant(&mu);
    assert_eq!(d.element.apply(&mu), d.dominant);
    assert_eq!(b2.inversion_count(&d.element), d.element.length());
    let show = |v: &[_]| v.iter().map(fmt_q).collect::<Vec<_>>().join(", ");
    println!(
        "B2: mu = ({}) -> dominant ({}) by word {:?}",
        show(mu.coords()),
        show(d.dominant.coords()),
        d.element.word()
    );

    let a2 = RootSystem::new(CartanType::A, 2).unwrap();
    let adjoint = a2.from_fundamental_i64(&[1, 1]).unwrap();
    assert_eq!(a2.weyl_dimension(&adjoint).unwrap(), 8);
    println!("A2: dim V(rho) = 8");
}

#[allow(dead_code)]
fn main() {
    run();
}
