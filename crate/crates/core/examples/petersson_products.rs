//! Petersson products by quadrature over the standard fundamental domain.

use periodbench::modforms::{
    cusp_basis, delta, gram, hecke_self_adjointness_report, petersson, QuadratureParams,
};

pub fn run() {
    let params = QuadratureParams::default();
    let d = delta(60).unwrap();
    let r = petersson(&d, &d, params).unwrap();
    println!(
        "<Delta, Delta> = {:.12e} (error estimate {:.1e})",
        r.value.re, r.estimated_error
    );

    let basis = cusp_basis(24, 60).unwrap();
    let g = gram(&basis.iter().collect::<Vec<_>>(), 24, params).unwrap();
    for row in &g.values {
        println!("  [{:.6e}, {:.6e}]", row[0].re, row[1].re);
    }

    let rep = hecke_self_adjointness_report(24, 2, 120, params).unwrap();
    println!(
        "T(2) on S_24: normalized self-adjointness residual {:.2e}",
        rep.residual
    );
}

#[allow(dead_code)]
fn main() {
    run();
}
