mod common;

use common::*;
use num_bigint::BigInt;
use periodbench::bwb::line_bundle_cohomology;
use periodbench::modforms::{
    cusp_basis, delta, eisenstein, gram, hecke, hecke_matrix, petersson, ramanujan_tau, QSeries,
    QuadratureParams,
};
use periodbench::nonab::{h1, twisted_forms, FiniteGroup, GroupAction, DEFAULT_GUARD};
use periodbench::perioddomain::{isotropy_group, HodgeNumbers};
use periodbench::rational::int;
use periodbench::rootsys::{CartanType, RootSystem};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn tau_matches_product_expansion() {
    let ours = ramanujan_tau(200).unwrap();
    let oracle = tau_oracle(200);
    for n in 0..200 {
        assert_eq!(ours[n], BigInt::from(oracle[n]), "tau({n})");
    }
    assert_eq!(oracle[1..8], [1, -24, 252, -1472, 4830, -6048, -16744]);
}

#[test]
fn eisenstein_identities() {
    let p = 40;
    let e4 = eisenstein(4, p).unwrap();
    let e6 = eisenstein(6, p).unwrap();
    assert_eq!(eisenstein(8, p).unwrap(), e4.pow(2));
    assert_eq!(eisenstein(10, p).unwrap(), e4.mul(&e6));
    assert_eq!(eisenstein(14, p).unwrap(), e4.pow(2).mul(&e6));
    let d = e4
        .pow(3)
        .sub(&e6.pow(2))
        .scale(&periodbench::rational::frac(1, 1728));
    assert_eq!(d.coeffs(), delta(p).unwrap().coeffs());
}

#[test]
fn hecke_on_e4_is_sigma3() {
    let e4 = eisenstein(4, 120).unwrap();
    for (k, s) in [(2u64, 9i64), (3, 28), (5, 126), (7, 344)] {
        let t = hecke(&e4, k).unwrap();
        assert_eq!(t, e4.truncate(t.precision()).scale(&int(s)));
    }
}

#[test]
fn hecke_matrix_on_s24_has_known_trace() {
    // Tr T(2) on S_24 is 1080 and det is -20468736 (eigenvalues 540 ± 12 sqrt(144169)).
    let basis = cusp_basis(24, 80).unwrap();
    let m = hecke_matrix(&basis, 2).unwrap();
    assert_eq!(&m[0][0] + &m[1][1], int(1080));
    assert_eq!(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0], int(-20468736));
}

#[test]
fn petersson_matches_independent_quadrature() {
    let p = QuadratureParams::default();
    let d = delta(60).unwrap();
    let de4 = d.mul(&eisenstein(4, 60).unwrap());
    let d2 = d.pow(2);
    let de43 = d.mul(&eisenstein(4, 60).unwrap().pow(3));
    let cases: [(&QSeries, &QSeries, f64); 5] = [
        (&d, &d, PETERSSON_DELTA),
        (&de4, &de4, PETERSSON_DELTA_E4),
        (&d2, &d2, PETERSSON_DELTA2),
        (&d2, &de43, PETERSSON_DELTA2_DELTA_E4_CUBED),
        (&de43, &de43, PETERSSON_DELTA_E4_CUBED),
    ];
    for (f, g, want) in cases {
        let r = petersson(f, g, p).unwrap();
        assert!(rel(r.value.re, want) < 1e-8, "{} vs {want}", r.value.re);
        assert!(r.value.im.abs() < 1e-8 * want.abs());
    }
}

#[test]
fn petersson_is_conjugate_symmetric() {
    let p = QuadratureParams::default().with_grid(128);
    let basis = cusp_basis(24, 60).unwrap();
    let refs: Vec<&QSeries> = basis.iter().collect();
    let g = gram(&refs, 24, p).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let diff = (g.values[i][j] - g.values[j][i].conj()).norm();
            assert!(diff <= g.errors[i][j] + g.errors[j][i] + 1e-30);
        }
    }
}

#[test]
fn projective_line_cohomology() {
    let a1 = RootSystem::new(CartanType::A, 1).unwrap();
    for n in -30..=30 {
        let c = line_bundle_cohomology(&a1, &a1.from_fundamental_i64(&[n]).unwrap()).unwrap();
        assert_eq!(
            (c.dim_in_degree(0), c.dim_in_degree(1)),
            p1_oracle(n),
            "O({n})"
        );
    }
}

#[test]
fn projective_plane_top_cohomology() {
    // H^2(P^2, O(-3-m)) has dimension binom(m+2, 2), realised on the flag
    // variety by pulling back along the projection.
    let a2 = RootSystem::new(CartanType::A, 2).unwrap();
    for m in 0..6i64 {
        let mu = a2.from_fundamental_i64(&[-3 - m, 0]).unwrap();
        let c = line_bundle_cohomology(&a2, &mu).unwrap();
        let want = ((m + 1) * (m + 2) / 2) as u128;
        assert_eq!((c.degree, c.dimension), (Some(2), want));
    }
}

#[test]
fn weyl_orders() {
    for (t, c, r) in [
        (CartanType::A, 'A', 1),
        (CartanType::A, 'A', 2),
        (CartanType::A, 'A', 3),
        (CartanType::B, 'B', 2),
        (CartanType::B, 'B', 3),
        (CartanType::C, 'C', 3),
        (CartanType::D, 'D', 4),
    ] {
        let rs = RootSystem::new(t, r as usize).unwrap();
        let all = rs.weyl_group_elements(100_000).unwrap();
        assert_eq!(all.len() as u128, weyl_order_oracle(c, r), "{c}{r}");
        assert_eq!(rs.weyl_group_order(), weyl_order_oracle(c, r));
    }
}

#[test]
fn isotropy_dimensions() {
    for g in 1..=5u64 {
        let h = HodgeNumbers::new(1, vec![g, g]).unwrap();
        assert_eq!(isotropy_group(&h).domain_complex_dimension, g * (g + 1) / 2);
    }
    for k in 1..=20u64 {
        let h = HodgeNumbers::new(2, vec![1, k, 1]).unwrap();
        assert_eq!(isotropy_group(&h).domain_complex_dimension, k);
    }
}

#[test]
fn small_h1_values() {
    let inv = GroupAction::inversion(FiniteGroup::cyclic(3)).unwrap();
    assert_eq!(h1(&inv, DEFAULT_GUARD).unwrap().len(), 1);
    let triv = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    assert_eq!(h1(&triv, DEFAULT_GUARD).unwrap().len(), 2);
    // Hom(Z/2, S3) up to conjugacy: trivial and the transposition class.
    let s3 = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::symmetric(3).unwrap());
    let r = h1(&s3, DEFAULT_GUARD).unwrap();
    assert_eq!((r.cocycles.len(), r.len()), (4, 2));
}

#[test]
fn twisted_symmetric_forms_over_f3() {
    let (forms, classes) = f3_symmetric_forms();
    let r = twisted_forms(3, 2, &[vec![vec![1, 0], vec![0, 1]]], DEFAULT_GUARD).unwrap();
    assert_eq!(r.automorphism_group_order, f9_orthogonal_count());
    assert_eq!(r.twisted_forms, forms);
    assert_eq!(r.k_classes, classes);
    assert_eq!(r.h1_classes, classes);
    assert!(r.bijective());
}
