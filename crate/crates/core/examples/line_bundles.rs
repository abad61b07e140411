//! Cohomology of line bundles on flag varieties via dominant forms of mu + rho.

use periodbench::bwb::line_bundle_cohomology;
use periodbench::rootsys::{CartanType, RootSystem};

pub fn run() {
    let p1 = RootSystem::new(CartanType::A, 1).unwrap();
    for n in -4..=3 {
        let mu = p1.from_fundamental_i64(&[n]).unwrap();
        let c = line_bundle_cohomology(&p1, &mu).unwrap();
        println!(
            "O({n:>2}) on P^1: h0 = {}, h1 = {}",
            c.dim_in_degree(0),
            c.dim_in_degree(1)
        );
    }

    let a2 = RootSystem::new(CartanType::A, 2).unwrap();
    for coeffs in [[1, 0], [-2, 1], [-3, 0], [-4, -1]] {
        let mu = a2.from_fundamental_i64(&coeffs).unwrap();
        let rec = line_bundle_cohomology(&a2, &mu).unwrap().record(&a2);
        match rec.degree {
            Some(k) => println!(
                "A2 mu = {coeffs:?}: H^{k} of dim {}, highest weight {:?}",
                rec.dimension,
                rec.highest_weight_fundamental.unwrap()
            ),
            None => println!("A2 mu = {coeffs:?}: mu + rho singular, all cohomology vanishes"),
        }
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
