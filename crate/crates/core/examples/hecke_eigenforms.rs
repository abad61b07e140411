//! Exact q-expansions, Hecke operators and the discriminant as an eigenform.

use periodbench::modforms::{cusp_basis, delta, eisenstein, hecke, hecke_matrix, ramanujan_tau};
use periodbench::rational::{fmt_q, int};

pub fn run() {
    let e4 = eisenstein(4, 8).unwrap();
    println!(
        "E4 = {:?} + ...",
        e4.coeffs().iter().map(fmt_q).collect::<Vec<_>>()
    );

    let prec = 200;
    let d = delta(prec).unwrap();
    let tau = ramanujan_tau(prec).unwrap();
    for n in [2u64, 3, 5, 7, 11] {
        let t = hecke(&d, n).unwrap();
        let lambda = int(i64::try_from(&tau[n as usize]).unwrap());
        assert_eq!(t, d.truncate(t.precision()).scale(&lambda));
        println!("T({n}) Delta = {} Delta", tau[n as usize]);
    }

    let basis = cusp_basis(24, 60).unwrap();
    let m = hecke_matrix(&basis, 2).unwrap();
    let show: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
    println!("T(2) on S_24 in echelon basis: {show:?}");
}

#[allow(dead_code)]
fn main() {
    run();
}
