//! Level-one modular forms as truncated q-expansions with exact rational
//! coefficients, Hecke operators, and numerical Petersson products over the
//! standard fundamental domain.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rational::{fmt_q, int, parse_q, to_f64, Q};

pub const QSERIES_SCHEMA: &str = "periodbench.qseries/1";

/// `Σ_{n < precision} a_n q^n` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    weight: i64,
    coeffs: Vec<Q>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QSeriesDoc {
    pub schema: String,
    pub weight: i64,
    pub precision: usize,
    pub coefficients: Vec<String>,
}

impl QSeries {
    pub fn new(weight: i64, coeffs: Vec<Q>) -> Self {
        QSeries { weight, coeffs }
    }

    pub fn from_i64(weight: i64, coeffs: &[i64]) -> Self {
        Self::new(weight, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(weight: i64, precision: usize) -> Self {
        Self::new(weight, vec![Q::zero(); precision])
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Number of known coefficients `a_0 .. a_{N-1}`.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Q {
        &self.coeffs[n]
    }

    pub fn is_cusp(&self) -> bool {
        self.coeffs.first().is_none_or(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, precision: usize) -> QSeries {
        QSeries::new(
            self.weight,
            self.coeffs[..precision.min(self.precision())].to_vec(),
        )
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.precision().min(other.precision());
        QSeries::new(
            self.weight,
            (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        )
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.precision().min(other.precision());
        QSeries::new(
            self.weight,
            (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        )
    }

    pub fn scale(&self, s: &Q) -> QSeries {
        QSeries::new(self.weight, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Product; weights add and precision is the smaller of the two.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.precision().min(other.precision());
        let (a, da) = integer_coeffs(&self.coeffs[..n]);
        let (b, db) = integer_coeffs(&other.coeffs[..n]);
        let mut acc = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..n - i].iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let out = acc.into_iter().map(|c| Q::new(c, den.clone())).collect();
        QSeries::new(self.weight + other.weight, out)
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut one = vec![Q::zero(); self.precision()];
        if let Some(c) = one.first_mut() {
            *c = Q::one();
        }
        let mut out = QSeries::new(0, one);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn to_doc(&self) -> QSeriesDoc {
        QSeriesDoc {
            schema: QSERIES_SCHEMA.into(),
            weight: self.weight,
            precision: self.precision(),
            coefficients: self.coeffs.iter().map(fmt_q).collect(),
        }
    }

    pub fn from_doc(doc: &QSeriesDoc) -> Result<Self> {
        if doc.schema != QSERIES_SCHEMA {
            return Err(Error::Parse(format!(
                "expected schema {QSERIES_SCHEMA:?}, got {:?}",
                doc.schema
            )));
        }
        if doc.coefficients.len() != doc.precision {
            return Err(invalid(format!(
                "precision {} but {} coefficients",
                doc.precision,
                doc.coefficients.len()
            )));
        }
        let coeffs = doc
            .coefficients
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<_>>()?;
        Ok(QSeries::new(doc.weight, coeffs))
    }

    fn f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

/// Coefficients times their common denominator, and that denominator.
fn integer_coeffs(c: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (ints, den)
}

/// Bernoulli numbers `B_0 .. B_m` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(m: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(m + 1);
    b.push(Q::one());
    for n in 1..=m {
        // Σ_{j<=n} C(n+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Q::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Q::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// Normalised Eisenstein series `E_k = 1 - (2k / B_k) Σ σ_{k-1}(n) q^n`
/// for even `k >= 4`.
pub fn eisenstein(k: u32, precision: usize) -> Result<QSeries> {
    if k < 4 || k % 2 == 1 {
        return Err(invalid(format!(
            "Eisenstein series need even weight >= 4, got {k}"
        )));
    }
    let bk = bernoulli_numbers(k as usize).pop().unwrap();
    let factor = -int(2 * k as i64) / bk;
    let mut coeffs = Vec::with_capacity(precision);
    for n in 0..precision {
        if n == 0 {
            coeffs.push(Q::one());
        } else {
            coeffs.push(&factor * Q::from_integer(sigma(n as u64, k - 1)));
        }
    }
    Ok(QSeries::new(k as i64, coeffs))
}

/// The discriminant `Δ = (E_4^3 - E_6^2) / 1728`.
pub fn delta(precision: usize) -> Result<QSeries> {
    if precision == 0 {
        return Err(invalid("precision must be at least 1"));
    }
    let e4 = eisenstein(4, precision)?;
    let e6 = eisenstein(6, precision)?;
    Ok(e4
        .pow(3)
        .sub(&e6.pow(2))
        .scale(&Q::new(BigInt::one(), BigInt::from(1728))))
}

/// `T(k) f` with `a_m(T(k) f) = Σ_{d | gcd(k, m)} d^{w-1} a_{km/d^2}(f)`,
/// to precision `floor(precision(f) / k)`.
pub fn hecke(f: &QSeries, k: u64) -> Result<QSeries> {
    let out = f.precision() / k.max(1) as usize;
    hecke_to(f, k, out.max(1))
}

/// `T(k) f` to a requested output precision; `f` needs `k · out_precision`
/// coefficients.
pub fn hecke_to(f: &QSeries, k: u64, out_precision: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(invalid("Hecke index must be positive"));
    }
    let required = k as usize * out_precision;
    if f.precision() < required {
        return Err(Error::InsufficientPrecision {
            required,
            available: f.precision(),
        });
    }
    let w = f.weight();
    if w < 1 {
        return Err(invalid("Hecke operators need weight >= 1"));
    }
    let mut coeffs = Vec::with_capacity(out_precision);
    for m in 0..out_precision as u64 {
        let g = k.gcd(&m);
        let mut acc = Q::zero();
        for d in 1..=g {
            if g % d != 0 {
                continue;
            }
            let idx = (k * m / (d * d)) as usize;
            let c = &f.coeffs[idx];
            if !c.is_zero() {
                acc += Q::from_integer(BigInt::from(d).pow((w - 1) as u32)) * c;
            }
        }
        coeffs.push(acc);
    }
    Ok(QSeries::new(w, coeffs))
}

/// Exponents `(a, b, c)` with `Δ^a E_4^b E_6^c` of weight `w` and `a >= 1`.
pub fn cusp_monomials(w: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    let mut a = 1;
    while 12 * a <= w {
        let rest = w - 12 * a;
        for c in 0..=rest / 6 {
            let r = rest - 6 * c;
            if r.is_multiple_of(4) {
                out.push((a, r / 4, c));
            }
        }
        a += 1;
    }
    out
}

/// Echelon basis of the weight-`w` cusp forms built from the monomials
/// `Δ^a E_4^b E_6^c`; basis element `i` starts `q^{p_i} + ...` and has zero
/// coefficient at every other pivot.
pub fn cusp_basis(w: u32, precision: usize) -> Result<Vec<QSeries>> {
    let d = delta(precision)?;
    let e4 = eisenstein(4, precision)?;
    let e6 = eisenstein(6, precision)?;
    let rows: Vec<QSeries> = cusp_monomials(w)
        .into_iter()
        .map(|(a, b, c)| d.pow(a).mul(&e4.pow(b)).mul(&e6.pow(c)))
        .collect();
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let m = crate::linalg::Matrix::from_rows(rows.iter().map(|r| r.coeffs.clone()).collect())?;
    let (r, pivots) = m.rref();
    let basis: Vec<QSeries> = (0..pivots.len())
        .map(|i| QSeries::new(w as i64, r.row(i).to_vec()))
        .collect();
    if pivots.last().is_some_and(|&p| p + 1 >= precision) {
        return Err(Error::InsufficientPrecision {
            required: pivots.len() + 2,
            available: precision,
        });
    }
    Ok(basis)
}

/// Leading-coefficient positions of an echelon basis.
fn pivots_of(basis: &[QSeries]) -> Vec<usize> {
    basis
        .iter()
        .map(|f| {
            f.coeffs
                .iter()
                .position(|c| !c.is_zero())
                .expect("nonzero basis element")
        })
        .collect()
}

/// Matrix `M` with `T(k) f_i = Σ_j M_ij f_j` on an echelon basis. Fails if
/// the images are not in the span to the available precision.
pub fn hecke_matrix(basis: &[QSeries], k: u64) -> Result<Vec<Vec<Q>>> {
    let pivots = pivots_of(basis);
    basis
        .iter()
        .map(|f| {
            let tf = hecke(f, k)?;
            let need = pivots.iter().max().map_or(1, |p| p + 1);
            if tf.precision() < need {
                return Err(Error::InsufficientPrecision {
                    required: need * k as usize,
                    available: f.precision(),
                });
            }
            let row: Vec<Q> = pivots.iter().map(|&p| tf.coeffs[p].clone()).collect();
            let mut rest = tf.clone();
            for (c, g) in row.iter().zip(basis) {
                rest = rest.sub(&g.scale(c));
            }
            if !rest.is_zero() {
                return Err(Error::Incompatible(
                    "Hecke image leaves the span of the basis".into(),
                ));
            }
            Ok(row)
        })
        .collect()
}

/// Ramanujan `τ(n)` for `1 <= n < precision` read off `Δ`.
pub fn ramanujan_tau(precision: usize) -> Result<Vec<BigInt>> {
    Ok(delta(precision)?
        .coeffs
        .iter()
        .map(|c| c.to_integer())
        .collect())
}

/// Primes `p` below `bound` with `|τ(p)| >= 2 p^{11/2}`; always empty in
/// practice, reported as a diagnostic.
pub fn ramanujan_bound_violations(bound: u64) -> Result<Vec<u64>> {
    let tau = ramanujan_tau(bound as usize)?;
    Ok((2..bound)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .filter(|&p| {
            let t = tau[p as usize].to_f64().unwrap_or(f64::INFINITY).abs();
            t >= 2.0 * (p as f64).powf(5.5)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Petersson products

/// Numerical parameters for integrals over the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureParams {
    /// Nodes per axis; a multiple of 8.
    pub grid: usize,
    pub y_max: f64,
    /// Allowed relative size of the q-series truncation error at the lowest
    /// point of the domain.
    pub tail_tol: f64,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        QuadratureParams {
            grid: 512,
            y_max: 8.0,
            tail_tol: 1e-12,
        }
    }
}

impl QuadratureParams {
    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
    fn validate(&self) -> Result<()> {
        if self.grid < 8 || !self.grid.is_multiple_of(8) {
            return Err(invalid(format!(
                "grid must be a positive multiple of 8, got {}",
                self.grid
            )));
        }
        if !(self.y_max > 1.0) || !self.y_max.is_finite() {
            return Err(invalid("y_max must be finite and > 1"));
        }
        if !(self.tail_tol > 0.0) {
            return Err(invalid("tail_tol must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeterssonResult {
    pub value: Complex64,
    pub estimated_error: f64,
    pub params: QuadratureParams,
}

/// Pairwise integrals `∫ f_i conj(f_j) y^{w-2} dx dy` over the fundamental
/// domain, with per-entry error estimates.
#[derive(Debug, Clone)]
pub struct GramResult {
    pub values: Vec<Vec<Complex64>>,
    pub errors: Vec<Vec<f64>>,
    pub params: QuadratureParams,
}

const GL4_NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL4_WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];

/// Composite 4-point Gauss-Legendre rule on `[a, b]` with `n` nodes.
fn composite_gl(a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    let panels = n / 4;
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(n);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in GL4_NODES.iter().zip(GL4_WEIGHTS) {
            out.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

/// Deterministic pairwise summation.
fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

fn horner(c: &[f64], q: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * q + a)
}

/// Integrals over `{|x| <= 1/2, x^2 + y^2 >= 1, y <= y_max}` with `n` nodes
/// per axis, using the boundary-fitted map `y = y0(x) + t (y_max - y0(x))`.
fn quadrature(coeffs: &[Vec<f64>], exponent: f64, n: usize, y_max: f64) -> Vec<Complex64> {
    let m = coeffs.len();
    let xs = composite_gl(-0.5, 0.5, n);
    let ts = composite_gl(0.0, 1.0, n);
    let two_pi = 2.0 * std::f64::consts::PI;
    let columns: Vec<Vec<Complex64>> = xs
        .par_iter()
        .map(|&(x, wx)| {
            let y0 = (1.0 - x * x).sqrt();
            let span = y_max - y0;
            let phase = Complex64::from_polar(1.0, two_pi * x);
            let mut acc = vec![Complex64::new(0.0, 0.0); m * m];
            let mut vals = vec![Complex64::new(0.0, 0.0); m];
            for &(t, wt) in &ts {
                let y = y0 + t * span;
                let q = phase * (-two_pi * y).exp();
                for (v, c) in vals.iter_mut().zip(coeffs) {
                    *v = horner(c, q);
                }
                let weight = wx * wt * span * y.powf(exponent - 2.0);
                for i in 0..m {
                    for j in 0..m {
                        acc[i * m + j] += vals[i] * vals[j].conj() * weight;
                    }
                }
            }
            acc
        })
        .collect();
    (0..m * m)
        .map(|idx| {
            let col: Vec<Complex64> = columns.iter().map(|c| c[idx]).collect();
            pairwise_sum(&col)
        })
        .collect()
}

/// `∫_Y^∞ y^m e^{-c y} dy` for integer `m`; for negative `m` an upper bound.
fn upper_incomplete(m: i64, c: f64, y: f64) -> f64 {
    if m < 0 {
        return y.powi(m as i32) * (-c * y).exp() / c;
    }
    let mut total = 0.0;
    // Σ_j m!/(m-j)! y^{m-j} / c^{j+1}
    let mut falling = 1.0;
    for j in 0..=m {
        total += falling * y.powi((m - j) as i32) / c.powi((j + 1) as i32);
        falling *= (m - j) as f64;
    }
    total * (-c * y).exp()
}

struct SeriesBounds {
    /// bound on |f - f_N| at y = √3/2
    trunc: f64,
    /// bound on |f| at y = √3/2
    magnitude: f64,
    /// |f(z)| <= tail_const e^{-2π y} for y >= y_max
    tail_const: f64,
    precision: usize,
}

fn series_bounds(f: &QSeries, y_max: f64) -> SeriesBounds {
    let two_pi = 2.0 * std::f64::consts::PI;
    let y_min = 3f64.sqrt() / 2.0;
    let c = f.f64_coeffs();
    let p = c.len();
    // coefficient growth envelope |a_n| <= C n^{w/2 + 1}
    let e = f.weight().max(0) as f64 / 2.0 + 1.0;
    let envelope = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, a)| a.abs() / (n as f64).powf(e))
        .fold(0.0, f64::max);
    let tail_sum = |y: f64, shift: f64| -> f64 {
        let r = (-two_pi * y).exp();
        let mut total = 0.0;
        let mut n = p.max(1);
        loop {
            let term = envelope * (n as f64).powf(e) * r.powf(n as f64 - shift);
            total += term;
            if term <= total * 1e-17 || term == 0.0 || n > p + 100_000 {
                break;
            }
            n += 1;
        }
        total
    };
    let r_min = (-two_pi * y_min).exp();
    let trunc = tail_sum(y_min, 0.0);
    let magnitude = c
        .iter()
        .enumerate()
        .map(|(n, a)| a.abs() * r_min.powi(n as i32))
        .sum::<f64>()
        + trunc;
    let r_max = (-two_pi * y_max).exp();
    let tail_const = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, a)| a.abs() * r_max.powi(n as i32 - 1))
        .sum::<f64>()
        + tail_sum(y_max, 1.0);
    SeriesBounds {
        trunc,
        magnitude,
        tail_const,
        precision: p,
    }
}

/// Smallest precision that would meet the truncation tolerance; used in
/// error messages.
fn required_precision(f: &QSeries, tol: f64, y_max: f64) -> usize {
    let mut p = f.precision().max(2);
    while p < 100_000 {
        p *= 2;
        let probe = QSeries::new(f.weight(), {
            let mut c = f.coeffs.clone();
            c.resize(p, Q::zero());
            c
        });
        let b = series_bounds(&probe, y_max);
        // the envelope is taken from the known coefficients only
        let b0 = series_bounds(f, y_max);
        let scale = b0.magnitude.max(f64::MIN_POSITIVE);
        if b.trunc <= tol * scale {
            return p;
        }
    }
    p
}

/// Gram matrix of cusp forms under `∫ f conj(g) y^{weight-2} dx dy`.
///
/// The value is the composite Gauss-Legendre integral at `params.grid`
/// nodes per axis. The error estimate adds the difference to the same rule
/// at half the nodes, an analytic bound for the region above `y_max`, and a
/// bound on the q-series truncation.
pub fn gram(series: &[&QSeries], weight: i64, params: QuadratureParams) -> Result<GramResult> {
    params.validate()?;
    for f in series {
        if !f.is_cusp() {
            return Err(Error::NotCuspForm(fmt_q(f.coeff(0))));
        }
    }
    let bounds: Vec<SeriesBounds> = series
        .iter()
        .map(|f| series_bounds(f, params.y_max))
        .collect();
    for (f, b) in series.iter().zip(&bounds) {
        if b.trunc > params.tail_tol * b.magnitude && b.magnitude > 0.0 {
            return Err(Error::InsufficientPrecision {
                required: required_precision(f, params.tail_tol, params.y_max),
                available: b.precision,
            });
        }
    }
    let coeffs: Vec<Vec<f64>> = series.iter().map(|f| f.f64_coeffs()).collect();
    let fine = quadrature(&coeffs, weight as f64, params.grid, params.y_max);
    let coarse = quadrature(&coeffs, weight as f64, params.grid / 2, params.y_max);

    let two_pi = 2.0 * std::f64::consts::PI;
    let y_min = 3f64.sqrt() / 2.0;
    let m = series.len();
    let mut values = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    let mut errors = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let (bi, bj) = (&bounds[i], &bounds[j]);
            let tail = bi.tail_const
                * bj.tail_const
                * upper_incomplete(weight - 2, 2.0 * two_pi, params.y_max);
            // truncation error decays at least like e^{-2π N (y - y_min)}
            let decay = two_pi * (bi.precision.min(bj.precision) as f64 + 1.0);
            let trunc = (bi.trunc * bj.magnitude + bi.magnitude * bj.trunc + bi.trunc * bj.trunc)
                * (decay * y_min).exp()
                * upper_incomplete(weight - 2, decay, y_min);
            let idx = i * m + j;
            values[i][j] = fine[idx];
            errors[i][j] = (fine[idx] - coarse[idx]).norm() + tail + trunc;
        }
    }
    Ok(GramResult {
        values,
        errors,
        params,
    })
}

/// `<f, g> = ∫_{Γ\H} f(z) conj(g(z)) y^{w-2} dx dy` for cusp forms of equal
/// weight `w`.
pub fn petersson(f: &QSeries, g: &QSeries, params: QuadratureParams) -> Result<PeterssonResult> {
    if f.weight() != g.weight() {
        return Err(Error::Incompatible(format!(
            "weights differ: {} vs {}",
            f.weight(),
            g.weight()
        )));
    }
    let r = gram(&[f, g], f.weight(), params)?;
    Ok(PeterssonResult {
        value: r.values[0][1],
        estimated_error: r.errors[0][1],
        params,
    })
}

/// `∫ tr(F(z) G(z)^*) y^{p+q-2} dx dy` for square matrices of cusp forms.
pub fn matrix_valued_pairing(
    f: &[Vec<QSeries>],
    g: &[Vec<QSeries>],
    p: i64,
    q: i64,
    params: QuadratureParams,
) -> Result<PeterssonResult> {
    let size = f.len();
    let square = |m: &[Vec<QSeries>]| m.iter().all(|row| row.len() == m.len());
    if !square(f) || !square(g) || g.len() != size {
        return Err(Error::Incompatible("matrix sizes do not match".into()));
    }
    // tr(F G^*) = Σ_ij F_ij conj(G_ij)
    let mut entries: Vec<&QSeries> = f.iter().flatten().collect();
    entries.extend(g.iter().flatten());
    let r = gram(&entries, p + q, params)?;
    let offset = size * size;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for idx in 0..offset {
        value += r.values[idx][offset + idx];
        err += r.errors[idx][offset + idx];
    }
    Ok(PeterssonResult {
        value,
        estimated_error: err,
        params,
    })
}

/// Self-adjointness of `T(k)` on weight-`w` cusp forms.
#[derive(Debug, Clone, Serialize)]
pub struct SelfAdjointnessReport {
    pub weight: u32,
    pub k: u64,
    pub dimension: usize,
    /// `max_ij |<T f_i, f_j> - <f_i, T f_j>| / (|f_i| |f_j| k^{w-1})`.
    pub residual: f64,
    pub unnormalized_residual: f64,
    pub gram: Vec<Vec<Complex64>>,
    pub gram_error: f64,
    /// `T(k) f_i = Σ_j hecke[i][j] f_j`, as `"p/q"` strings.
    pub hecke: Vec<Vec<String>>,
    pub params: QuadratureParams,
}

pub fn hecke_self_adjointness_report(
    w: u32,
    k: u64,
    precision: usize,
    params: QuadratureParams,
) -> Result<SelfAdjointnessReport> {
    let basis = cusp_basis(w, precision)?;
    if basis.is_empty() {
        return Err(invalid(format!("no cusp forms of weight {w}")));
    }
    let hecke_rows = hecke_matrix(&basis, k)?;
    let images = basis
        .iter()
        .map(|f| hecke(f, k))
        .collect::<Result<Vec<_>>>()?;
    let d = basis.len();
    let mut all: Vec<&QSeries> = basis.iter().collect();
    all.extend(images.iter());
    let r = gram(&all, w as i64, params)?;
    let norm = |i: usize| r.values[i][i].re.max(0.0).sqrt();
    let scale = (k as f64).powi(w as i32 - 1);
    let mut residual: f64 = 0.0;
    let mut raw: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let diff = (r.values[d + i][j] - r.values[i][d + j]).norm();
            raw = raw.max(diff);
            residual = residual.max(diff / (norm(i) * norm(j) * scale));
        }
    }
    let gram_error = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| r.errors[i][j])
        .fold(0.0, f64::max);
    Ok(SelfAdjointnessReport {
        weight: w,
        k,
        dimension: d,
        residual,
        unnormalized_residual: raw,
        gram: (0..d).map(|i| r.values[i][..d].to_vec()).collect(),
        gram_error,
        hecke: hecke_rows
            .iter()
            .map(|row| row.iter().map(fmt_q).collect())
            .collect(),
        params,
    })
}

/// Largest absolute coefficient, as a float; handy for scaling checks.
pub fn max_abs_coeff(f: &QSeries) -> f64 {
    f.coeffs
        .iter()
        .map(|c| to_f64(&c.abs()))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], crate::rational::frac(-1, 2));
        assert_eq!(b[4], crate::rational::frac(-1, 30));
        assert_eq!(b[6], crate::rational::frac(1, 42));
        assert_eq!(b[12], crate::rational::frac(-691, 2730));
        assert!(b[3].is_zero() && b[11].is_zero());
    }

    #[test]
    fn eisenstein_examples() {
        let e4 = eisenstein(4, 5).unwrap();
        assert_eq!(e4, QSeries::from_i64(4, &[1, 240, 2160, 6720, 17520]));
        let e6 = eisenstein(6, 3).unwrap();
        assert_eq!(e6, QSeries::from_i64(6, &[1, -504, -16632]));
        assert_eq!(eisenstein(4, 1).unwrap(), QSeries::from_i64(4, &[1]));
        assert!(eisenstein(5, 3).is_err());
        assert!(eisenstein(2, 3).is_err());
    }

    #[test]
    fn eisenstein_monomial_identities() {
        let p = 30;
        let e = |k| eisenstein(k, p).unwrap();
        assert_eq!(e(8), e(4).pow(2));
        assert_eq!(e(10), e(4).mul(&e(6)));
        assert_eq!(e(14), e(4).pow(2).mul(&e(6)));
    }

    #[test]
    fn delta_examples() {
        let d = delta(5).unwrap();
        assert!(d.is_cusp());
        assert_eq!(d, QSeries::from_i64(12, &[0, 1, -24, 252, -1472]));
        assert!(delta(0).is_err());
    }

    #[test]
    fn hecke_examples() {
        let d = delta(60).unwrap();
        assert_eq!(hecke(&d, 1).unwrap(), d);
        let t2 = hecke(&d, 2).unwrap();
        assert_eq!(t2, d.truncate(30).scale(&int(-24)));
        let lhs = hecke(&hecke(&d, 3).unwrap(), 2).unwrap();
        let rhs = hecke(&d, 6).unwrap();
        assert_eq!(lhs, rhs.truncate(lhs.precision()));
    }

    #[test]
    fn hecke_precision_error() {
        let d = delta(10).unwrap();
        let err = hecke_to(&d, 3, 5).unwrap_err();
        assert_eq!(
            err,
            Error::InsufficientPrecision {
                required: 15,
                available: 10
            }
        );
    }

    #[test]
    fn cusp_basis_dimensions() {
        assert_eq!(cusp_basis(12, 10).unwrap().len(), 1);
        assert_eq!(cusp_basis(16, 10).unwrap().len(), 1);
        assert_eq!(cusp_basis(24, 10).unwrap().len(), 2);
        assert!(cusp_basis(14, 10).unwrap().is_empty());
        assert_eq!(cusp_monomials(24), vec![(1, 3, 0), (1, 0, 2), (2, 0, 0)]);
    }

    #[test]
    fn non_cusp_rejected() {
        let e4 = eisenstein(4, 20).unwrap();
        assert!(matches!(
            petersson(&e4, &e4, QuadratureParams::default()),
            Err(Error::NotCuspForm(_))
        ));
    }

    #[test]
    fn doc_round_trip() {
        let d = delta(8).unwrap().scale(&crate::rational::frac(1, 3));
        let doc = d.to_doc();
        assert_eq!(QSeries::from_doc(&doc).unwrap(), d);
        let mut bad = doc.clone();
        bad.schema = "other".into();
        assert!(QSeries::from_doc(&bad).is_err());
    }

    #[test]
    fn incomplete_gamma_closed_form() {
        // ∫_1^∞ y e^{-y} dy = 2/e
        assert!((upper_incomplete(1, 1.0, 1.0) - 2.0 / std::f64::consts::E).abs() < 1e-15);
    }
}
