mod common;

use common::*;
use num_integer::Integer;
use periodbench::bwb::{alpha_pi, line_bundle_cohomology, FlagDomainSpec};
use periodbench::modforms::{cusp_basis, delta, hecke, hecke_matrix, QSeries};
use periodbench::nonab::{
    self, h1, is_cocycle, pointed_exact_sequence_check, twist_cocycle, FiniteGroup, GroupAction,
};
use periodbench::parabolic::{admissibility_check, par_degree, ParabolicBundle};
use periodbench::perioddomain::{
    check_compatible, graded_pairing, jordan_block_sizes, polarized_nilpotent,
    primitive_decomposition, weight_filtration, weight_filtration_by_kernels, FormSymmetry,
    NilpotentEndo,
};
use periodbench::rational::{frac, int, Q};
use periodbench::rootsys::{CartanType, RootSystem};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn root_system() -> impl Strategy<Value = RootSystem> {
    prop_oneof![
        (1usize..=4).prop_map(|r| (CartanType::A, r)),
        (2usize..=4).prop_map(|r| (CartanType::B, r)),
        (2usize..=4).prop_map(|r| (CartanType::C, r)),
        (3usize..=4).prop_map(|r| (CartanType::D, r)),
    ]
    .prop_map(|(t, r)| RootSystem::new(t, r).unwrap())
}

fn rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| frac(n, d))
}

fn with_weight() -> impl Strategy<Value = (RootSystem, Vec<Q>)> {
    root_system().prop_flat_map(|rs| {
        let r = rs.rank();
        (Just(rs), proptest::collection::vec(rational(), r))
    })
}

fn with_integral_weight() -> impl Strategy<Value = (RootSystem, Vec<i64>)> {
    root_system().prop_flat_map(|rs| {
        let r = rs.rank();
        (Just(rs), proptest::collection::vec(-6i64..=6, r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn to_dominant_round_trips((rs, c) in with_weight()) {
        let mu = rs.from_fundamental(&c).unwrap();
        let d = rs.to_dominant(&mu);
        prop_assert!(rs.is_dominant(&d.dominant));
        prop_assert_eq!(d.element.apply(&mu), d.dominant.clone());
        prop_assert_eq!(d.element.inverse().apply(&d.dominant), mu);
    }

    #[test]
    fn inversion_count_is_length((rs, c) in with_weight()) {
        let d = rs.to_dominant(&rs.from_fundamental(&c).unwrap());
        prop_assert_eq!(rs.inversion_count(&d.element), d.element.length());
    }

    #[test]
    fn bwb_degree_and_dimension((rs, c) in with_integral_weight()) {
        let mu = rs.from_fundamental_i64(&c).unwrap();
        let rep = line_bundle_cohomology(&rs, &mu).unwrap();
        let shifted = rs.weight(mu.coords().iter().zip(rs.rho().coords()).map(|(a, b)| a + b).collect()).unwrap();
        prop_assert_eq!(rep.singular, rs.is_singular(&shifted));
        if let (Some(k), Some(hw)) = (rep.degree, rep.highest_weight.as_ref()) {
            prop_assert_eq!(rep.dimension, rs.weyl_dimension(hw).unwrap());
            prop_assert!(k <= rs.positive_roots().len());
        }
        if rs.is_dominant(&mu) {
            prop_assert_eq!(rep.degree, Some(0));
            prop_assert_eq!(rep.dimension, rs.weyl_dimension(&mu).unwrap());
        }
    }

    #[test]
    fn p1_euler_characteristic_and_serre_duality(n in -300i64..300) {
        let a1 = RootSystem::new(CartanType::A, 1).unwrap();
        let coh = |n: i64| line_bundle_cohomology(&a1, &a1.from_fundamental_i64(&[n]).unwrap()).unwrap();
        let (c, dual) = (coh(n), coh(-2 - n));
        prop_assert_eq!(c.dim_in_degree(0) as i64 - c.dim_in_degree(1) as i64, n + 1);
        prop_assert_eq!(c.dim_in_degree(0), dual.dim_in_degree(1));
        prop_assert_eq!(c.dim_in_degree(1), dual.dim_in_degree(0));
    }

    #[test]
    fn alpha_pi_is_even((rs, c) in with_integral_weight(), mask in any::<u8>()) {
        let simple: Vec<usize> = (0..rs.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let mut iso = rs.levi_roots(&simple).unwrap();
        iso.extend(iso.clone().into_iter().map(|i| rs.negative_index(i)));
        let lam = rs.from_fundamental_i64(&c).unwrap();
        let neg = lam.scale(&int(-1));
        let a = alpha_pi(&FlagDomainSpec::new(rs.clone(), iso.clone(), Some(lam)).unwrap()).unwrap();
        let b = alpha_pi(&FlagDomainSpec::new(rs, iso, Some(neg)).unwrap()).unwrap();
        prop_assert_eq!(a.total, b.total);
        prop_assert_eq!((a.positive, a.negative), (b.negative, b.positive));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn filtration_algorithms_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, mut blocks) = random_nilpotent(&mut rng, 8);
        let n = NilpotentEndo::new(m).unwrap();
        let mut sizes = jordan_block_sizes(&n);
        sizes.sort_unstable();
        blocks.sort_unstable();
        prop_assert_eq!(sizes, blocks);
        let w = weight_filtration(&n);
        prop_assert_eq!(&w, &weight_filtration_by_kernels(&n));
        prop_assert!(w.check(&n).ok());
        let prim = primitive_decomposition(&n, &w);
        prop_assert!(prim.lefschetz);
    }

    #[test]
    fn conjugated_polarizations_stay_nondegenerate(seed in any::<u64>(), symmetric in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = random_polarizable_blocks(&mut rng, 8, symmetric);
        let sym = if symmetric { FormSymmetry::Symmetric } else { FormSymmetry::Antisymmetric };
        let (n0, b0) = polarized_nilpotent(&blocks, sym).unwrap();
        let (p, inv) = random_invertible(&mut rng, n0.rows());
        let n = NilpotentEndo::new(p.mul(&n0).mul(&inv)).unwrap();
        let b = inv.transpose().mul(&b0).mul(&inv);
        prop_assert_eq!(check_compatible(&n, &b).unwrap(), sym);
        let w = weight_filtration(&n);
        for k in 0..=w.max_index() {
            if w.gr_dim(k as i64) > 0 {
                prop_assert!(graded_pairing(&n, &b, k).unwrap().nondegenerate, "k = {}", k);
            }
        }
    }
}

fn hecke_compose(f: &QSeries, m: u64, n: u64) -> (QSeries, QSeries) {
    let lhs = hecke(&hecke(f, n).unwrap(), m).unwrap();
    let rhs = hecke(f, m * n).unwrap();
    let p = lhs.precision().min(rhs.precision());
    (lhs.truncate(p), rhs.truncate(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hecke_multiplicative_weight_12(m in 1u64..=9, n in 1u64..=9) {
        prop_assume!(m.gcd(&n) == 1);
        let (a, b) = hecke_compose(&delta(400).unwrap(), m, n);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hecke_multiplicative_weight_16(m in 1u64..=9, n in 1u64..=9) {
        prop_assume!(m.gcd(&n) == 1);
        let f = cusp_basis(16, 400).unwrap().remove(0);
        let (a, b) = hecke_compose(&f, m, n);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hecke_prime_square_relation(p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        // T(p)^2 = T(p^2) + p^(w-1) on weight-12 forms.
        let d = delta(400).unwrap();
        let (tt, tp2) = hecke_compose(&d, p, p);
        let pw = int(p as i64).pow(11);
        let rhs = tp2.add(&d.truncate(tp2.precision()).scale(&pw));
        prop_assert_eq!(tt, rhs);
    }
}

#[test]
fn hecke_matrices_commute_on_s24() {
    let basis = cusp_basis(24, 200).unwrap();
    let mul = |a: &Vec<Vec<Q>>, b: &Vec<Vec<Q>>| -> Vec<Vec<Q>> {
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let t2 = hecke_matrix(&basis, 2).unwrap();
    let t3 = hecke_matrix(&basis, 3).unwrap();
    assert_eq!(mul(&t2, &t3), mul(&t3, &t2));
    assert_eq!(mul(&t2, &t3), hecke_matrix(&basis, 6).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn par_degree_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e, f) = (random_bundle(&mut rng), random_bundle(&mut rng));
        prop_assert_eq!(par_degree(&e.direct_sum(&f)), par_degree(&e) + par_degree(&f));
    }

    #[test]
    fn dual_twist_shifts_par_degree(seed in any::<u64>(), d in -5i64..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_bundle(&mut rng);
        let twisted = ParabolicBundle::new(e.rank(), e.degree() + d * e.rank() as i64, e.points().to_vec()).unwrap();
        prop_assert_eq!(par_degree(&twisted) - par_degree(&e), int(d * e.rank() as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn admissibility_invariant_under_unitary_conjugation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_bundle(&mut rng);
        prop_assume!(!e.points().is_empty());
        let good = monodromy_for(&mut rng, &e, 0.0, true);
        prop_assert!(admissibility_check(&good, &e, 1e-9).unwrap().admissible);
        let bad = monodromy_for(&mut rng, &e, 0.01, true);
        prop_assert!(!admissibility_check(&bad, &e, 1e-9).unwrap().admissible);
    }
}

/// `Z/m` acting on `Z/n` through multiplication by `u`, `u^m = 1 mod n`.
fn cyclic_action(m: usize, n: usize, u: usize) -> GroupAction {
    let act = (0..m)
        .map(|k| {
            let uk = (0..k).fold(1 % n, |acc, _| acc * u % n);
            (0..n).map(|x| x * uk % n).collect()
        })
        .collect();
    GroupAction::new(FiniteGroup::cyclic(m), FiniteGroup::cyclic(n), act).unwrap()
}

/// |ker(1 + u + ... + u^(m-1))| / |im(u - 1)| on Z/n, the cohomology of the
/// periodic resolution for a cyclic group.
fn cyclic_h1_oracle(m: usize, n: usize, u: usize) -> usize {
    let norm: usize = (0..m)
        .fold((0, 1 % n), |(s, p), _| ((s + p) % n, p * u % n))
        .0;
    let ker = (0..n).filter(|&x| (x * norm).is_multiple_of(n)).count();
    let img: std::collections::BTreeSet<usize> = (0..n).map(|x| (x * u + n - x) % n).collect();
    ker / img.len()
}

fn unit_of_order_dividing(m: usize, n: usize, pick: usize) -> Option<usize> {
    let units: Vec<usize> = (1..=n.max(1))
        .map(|x| x % n)
        .filter(|&x| x.gcd(&n) == 1 || n == 1)
        .filter(|&x| (0..m).fold(1 % n, |acc, _| acc * x % n) == 1 % n)
        .collect();
    (!units.is_empty()).then(|| units[pick % units.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn abelian_h1_matches_cochain_oracle(m in 1usize..=4, n in 1usize..=12, pick in any::<usize>()) {
        let u = unit_of_order_dividing(m, n, pick).unwrap();
        let act = cyclic_action(m, n, u);
        let r = h1(&act, nonab::DEFAULT_GUARD).unwrap();
        prop_assert_eq!(r.len(), cyclic_h1_oracle(m, n, u));
        for c in &r.cocycles {
            prop_assert!(is_cocycle(&act, c));
            for x in 0..n {
                let t = twist_cocycle(&act, x, c);
                prop_assert_eq!(r.class_of(&t), r.class_of(c));
            }
        }
    }

    #[test]
    fn exact_sequence_for_cyclic_modules(n in 1usize..=12, d in 1usize..=12, pick in any::<usize>()) {
        prop_assume!(n % d == 0);
        let u = unit_of_order_dividing(2, n, pick).unwrap();
        let act = cyclic_action(2, n, u);
        let normal: Vec<usize> = (0..n).filter(|x| x % d == 0).collect();
        let r = pointed_exact_sequence_check(&act, &normal, nonab::DEFAULT_GUARD).unwrap();
        prop_assert!(r.exact, "{:?}", r.joints);
    }
}

#[test]
fn exact_sequence_nonabelian_kernel() {
    // A3 inside S3 with Z/2 acting by conjugation through a transposition.
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = (0..s3.order())
        .find(|&x| x != s3.identity() && s3.mul(x, x) == s3.identity())
        .unwrap();
    let act: Vec<Vec<usize>> = [s3.identity(), t]
        .iter()
        .map(|&g| {
            (0..s3.order())
                .map(|x| s3.mul(s3.mul(g, x), s3.inv(g)))
                .collect()
        })
        .collect();
    let action = GroupAction::new(FiniteGroup::cyclic(2), s3.clone(), act).unwrap();
    let a3: Vec<usize> = (0..s3.order())
        .filter(|&x| s3.mul(s3.mul(x, x), x) == s3.identity())
        .collect();
    assert_eq!(a3.len(), 3);
    let r = pointed_exact_sequence_check(&action, &a3, nonab::DEFAULT_GUARD).unwrap();
    assert!(r.exact, "{:?}", r.joints);
    let _ = rng.gen::<u8>();
}
