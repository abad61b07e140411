//! Parabolic degree, stability against candidate sub-bundles and admissibility.

use num_complex::Complex64;
use periodbench::parabolic::{
    admissibility_check, par_degree, slope, stability_verdict, LocalMonodromy, ParabolicBundle,
    ParabolicPoint, SubBundleCandidate, UnitaryRepData,
};
use periodbench::rational::{fmt_q, frac};

pub fn run() {
    let pts = vec![
        ParabolicPoint::new("0", vec![2, 1], vec![frac(1, 4), frac(3, 4)]).unwrap(),
        ParabolicPoint::new("1", vec![2, 1], vec![frac(1, 4), frac(3, 4)]).unwrap(),
    ];
    let e = ParabolicBundle::new(2, -2, pts).unwrap();
    println!(
        "par deg = {}, slope = {}",
        fmt_q(&par_degree(&e)),
        fmt_q(&slope(&e))
    );

    // Levels are dim(L ∩ E_{s,i}) at each point.
    let generic = SubBundleCandidate::from_levels(&e, 1, -1, &[vec![1, 0], vec![1, 0]]).unwrap();
    let special = SubBundleCandidate::from_levels(&e, 1, -1, &[vec![1, 1], vec![1, 1]]).unwrap();
    for cands in [vec![generic.clone()], vec![generic, special]] {
        let report = stability_verdict(&e, &cands);
        let slopes: Vec<_> = cands.iter().map(|c| fmt_q(&slope(c))).collect();
        println!("candidate slopes {slopes:?}: {:?}", report.verdict);
    }

    let turn = |x: f64| Complex64::from_polar(1.0, std::f64::consts::TAU * x);
    let m = vec![
        vec![turn(0.25), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), turn(0.75)],
    ];
    let rep = UnitaryRepData {
        local: vec![
            ("0".into(), LocalMonodromy::Matrix(m.clone())),
            ("1".into(), LocalMonodromy::Matrix(m)),
        ],
    };
    let adm = admissibility_check(&rep, &e, 1e-9).unwrap();
    println!(
        "admissible: {}, max deviation {:.1e}",
        adm.admissible, adm.points[0].max_deviation
    );
}

#[allow(dead_code)]
fn main() {
    run();
}
