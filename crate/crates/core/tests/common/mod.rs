//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use periodbench::linalg::Matrix;
use periodbench::parabolic::{LocalMonodromy, ParabolicBundle, ParabolicPoint, UnitaryRepData};
use periodbench::rational::{frac, int, Q};
use rand::seq::SliceRandom;
use rand::Rng;

/// Ramanujan tau from the product q ∏ (1 - q^m)^24, coefficients 0..prec.
pub fn tau_oracle(prec: usize) -> Vec<i128> {
    let mut p = vec![0i128; prec];
    if prec > 1 {
        p[1] = 1;
    }
    for m in 1..prec {
        for _ in 0..24 {
            for i in (m..prec).rev() {
                p[i] -= p[i - m];
            }
        }
    }
    p
}

/// Classical Weyl group orders.
pub fn weyl_order_oracle(t: char, r: u32) -> u128 {
    let fact = |n: u32| (1..=n as u128).product::<u128>();
    match t {
        'A' => fact(r + 1),
        'B' | 'C' => (1u128 << r) * fact(r),
        'D' => (1u128 << (r - 1)) * fact(r),
        _ => unreachable!(),
    }
}

/// Dimensions of H^0 and H^1 of O(n) on the projective line.
pub fn p1_oracle(n: i64) -> (u128, u128) {
    if n >= 0 {
        ((n + 1) as u128, 0)
    } else if n <= -2 {
        (0, (-n - 1) as u128)
    } else {
        (0, 0)
    }
}

/// Petersson products over the standard fundamental domain, computed
/// separately by adaptive double quadrature (scipy dblquad, relative
/// tolerance 1e-12, cut off at y = 30). ⟨Δ,Δ⟩ agrees with the literature
/// value 1.03536205680432e-6.
pub const PETERSSON_DELTA: f64 = 1.0353620568043212e-06;
pub const PETERSSON_DELTA_E4: f64 = 2.1690613475906346e-06;
pub const PETERSSON_DELTA2: f64 = 2.8519450002566757e-12;
pub const PETERSSON_DELTA2_DELTA_E4_CUBED: f64 = 1.6057147185772824e-09;
pub const PETERSSON_DELTA_E4_CUBED: f64 = 5.9638914517518544e-05;

/// F_9 = F_3[i], i^2 = -1, as pairs (a, b) = a + b i.
pub fn f9_orthogonal_count() -> usize {
    type F9 = (i64, i64);
    let add = |x: F9, y: F9| ((x.0 + y.0).rem_euclid(3), (x.1 + y.1).rem_euclid(3));
    let mul = |x: F9, y: F9| {
        (
            (x.0 * y.0 - x.1 * y.1).rem_euclid(3),
            (x.0 * y.1 + x.1 * y.0).rem_euclid(3),
        )
    };
    let elems: Vec<F9> = (0..9).map(|k| (k % 3, k / 3)).collect();
    let mut count = 0;
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    // g = [[a, b], [c, d]], g^T g = I
                    let e00 = add(mul(a, a), mul(c, c));
                    let e01 = add(mul(a, b), mul(c, d));
                    let e11 = add(mul(b, b), mul(d, d));
                    if e00 == (1, 0) && e01 == (0, 0) && e11 == (1, 0) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Nondegenerate symmetric 2x2 forms over F_3, and their isometry classes
/// (determined by the square class of the determinant).
pub fn f3_symmetric_forms() -> (usize, usize) {
    let mut forms = 0;
    let mut classes = std::collections::BTreeSet::new();
    for a in 0..3i64 {
        for b in 0..3i64 {
            for c in 0..3i64 {
                let det = (a * c - b * b).rem_euclid(3);
                if det != 0 {
                    forms += 1;
                    classes.insert(det == 1);
                }
            }
        }
    }
    (forms, classes.len())
}

pub fn random_q<R: Rng>(rng: &mut R, num: i64, den: i64) -> Q {
    frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_partition<R: Rng>(rng: &mut R, d: usize) -> Vec<usize> {
    let mut left = d;
    let mut parts = Vec::new();
    while left > 0 {
        let s = rng.gen_range(1..=left);
        parts.push(s);
        left -= s;
    }
    parts
}

/// A random invertible integer matrix with small entries.
pub fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> (Matrix, Matrix) {
    loop {
        let rows: Vec<Vec<Q>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let base = if i == j { 1 } else { 0 };
                        int(base + rng.gen_range(-2..=2))
                    })
                    .collect()
            })
            .collect();
        let p = Matrix::from_rows(rows).unwrap();
        if let Some(inv) = p.inverse() {
            return (p, inv);
        }
    }
}

/// Jordan blocks for a random partition of a dimension in 1..=max_dim,
/// conjugated by a random invertible matrix.
pub fn random_nilpotent<R: Rng>(rng: &mut R, max_dim: usize) -> (Matrix, Vec<usize>) {
    let d = rng.gen_range(1..=max_dim);
    let mut blocks = random_partition(rng, d);
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    let mut j = Matrix::zeros(d, d);
    let mut off = 0;
    for &s in &blocks {
        for i in 0..s - 1 {
            j[(off + i + 1, off + i)] = int(1);
        }
        off += s;
    }
    let (p, inv) = random_invertible(rng, d);
    (p.mul(&j).mul(&inv), blocks)
}

/// Block sizes admitting a form of the given parity: native sizes appear
/// freely, the others in pairs.
pub fn random_polarizable_blocks<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    symmetric: bool,
) -> Vec<usize> {
    let native = |s: usize| (s % 2 == 1) == symmetric;
    loop {
        let mut blocks = Vec::new();
        let mut dim = 0;
        let target = rng.gen_range(1..=max_dim);
        while dim < target {
            let s = rng.gen_range(1..=(target - dim).max(1));
            if native(s) {
                blocks.push(s);
                dim += s;
            } else if dim + 2 * s <= max_dim {
                blocks.push(s);
                blocks.push(s);
                dim += 2 * s;
            } else {
                break;
            }
        }
        if !blocks.is_empty() {
            return blocks;
        }
    }
}

const LABELS: [&str; 4] = ["0", "1", "inf", "t"];

pub fn random_point<R: Rng>(rng: &mut R, label: &str, rank: usize) -> ParabolicPoint {
    let mut dims: Vec<usize> = (1..rank).filter(|_| rng.gen_bool(0.5)).collect();
    dims.push(rank);
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let den = 12;
    let mut pool: Vec<i64> = (0..den).collect();
    pool.shuffle(rng);
    let mut nums: Vec<i64> = pool[..dims.len()].to_vec();
    nums.sort_unstable();
    let weights = nums.iter().map(|&n| frac(n, den)).collect();
    ParabolicPoint::new(label, dims, weights).unwrap()
}

pub fn random_bundle<R: Rng>(rng: &mut R) -> ParabolicBundle {
    let rank = rng.gen_range(1..=4);
    let mut points = Vec::new();
    for l in LABELS {
        if rng.gen_bool(0.6) {
            points.push(random_point(rng, l, rank));
        }
    }
    ParabolicBundle::new(rank, rng.gen_range(-6..=6), points).unwrap()
}

/// Haar-ish unitary from the QR factor of a random complex matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    m.qr().q()
}

fn turn(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * x)
}

/// Local monodromy whose eigenvalue arguments are the weight multisets of
/// `e`, each shifted by `shift` turns, conjugated by `conj`.
pub fn monodromy_for<R: Rng>(
    rng: &mut R,
    e: &ParabolicBundle,
    shift: f64,
    conjugate: bool,
) -> UnitaryRepData {
    let local = e
        .points()
        .iter()
        .map(|p| {
            let args: Vec<f64> = p
                .weight_multiset()
                .iter()
                .map(periodbench::rational::to_f64)
                .collect();
            let n = args.len();
            let diag = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    turn(args[i] + if i == 0 { shift } else { 0.0 })
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let m = if conjugate {
                let u = random_unitary(rng, n);
                &u * diag * u.adjoint()
            } else {
                diag
            };
            let rows = (0..n)
                .map(|i| (0..n).map(|j| m[(i, j)]).collect())
                .collect();
            (p.label().to_string(), LocalMonodromy::Matrix(rows))
        })
        .collect();
    UnitaryRepData { local }
}
