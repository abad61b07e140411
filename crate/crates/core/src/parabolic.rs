//! Parabolic bundles on a curve with marked points: parabolic degree,
//! stability against a supplied list of sub-bundles, and admissibility of
//! unitary local monodromy.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::rational::{fmt_q, int, to_f64, Q};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Flag `E_s = E_{s,1} ⊋ E_{s,2} ⊋ ... ⊋ E_{s,l} ⊋ 0` at a marked point,
/// with weights `0 <= α_1 < ... < α_l < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicPoint {
    label: String,
    dims: Vec<usize>,
    weights: Vec<Q>,
}

impl ParabolicPoint {
    pub fn new(label: impl Into<String>, dims: Vec<usize>, weights: Vec<Q>) -> Result<Self> {
        let label = label.into();
        if dims.is_empty() || dims.len() != weights.len() {
            return Err(invalid(format!(
                "point {label}: need equally many dims and weights, at least one"
            )));
        }
        if dims.windows(2).any(|w| w[0] <= w[1]) || *dims.last().unwrap() == 0 {
            return Err(invalid(format!(
                "point {label}: dims must be strictly decreasing and positive"
            )));
        }
        if weights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!(
                "point {label}: weights must be strictly increasing"
            )));
        }
        if weights[0].is_negative() || *weights.last().unwrap() >= int(1) {
            return Err(invalid(format!(
                "point {label}: weights must lie in [0, 1)"
            )));
        }
        Ok(ParabolicPoint {
            label,
            dims,
            weights,
        })
    }

    /// Trivial flag of the given rank with weight 0.
    pub fn trivial(label: impl Into<String>, rank: usize) -> Result<Self> {
        Self::new(label, vec![rank], vec![Q::zero()])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.dims[0]
    }

    /// `dim E_{s,i} / E_{s,i+1}` for each level.
    pub fn jumps(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| self.dims[i] - self.dims.get(i + 1).copied().unwrap_or(0))
            .collect()
    }

    /// Σ α_i · jump_i.
    pub fn weight_contribution(&self) -> Q {
        self.weights
            .iter()
            .zip(self.jumps())
            .map(|(a, j)| a * int(j as i64))
            .sum()
    }

    /// Weights repeated with multiplicity, ascending.
    pub fn weight_multiset(&self) -> Vec<Q> {
        self.weights
            .iter()
            .zip(self.jumps())
            .flat_map(|(a, j)| std::iter::repeat_n(a.clone(), j))
            .collect()
    }

    /// Dimension of the part of the flag with weight `>= a`.
    fn dim_at_least(&self, a: &Q) -> usize {
        self.weights
            .iter()
            .position(|w| w >= a)
            .map_or(0, |i| self.dims[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicBundle {
    rank: usize,
    degree: i64,
    points: Vec<ParabolicPoint>,
}

impl ParabolicBundle {
    pub fn new(rank: usize, degree: i64, points: Vec<ParabolicPoint>) -> Result<Self> {
        if rank == 0 {
            return Err(invalid("rank must be positive"));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if p.rank() != rank {
                return Err(invalid(format!(
                    "point {}: top dimension {} differs from rank {rank}",
                    p.label,
                    p.rank()
                )));
            }
            if !seen.insert(p.label.clone()) {
                return Err(invalid(format!("duplicate point label {}", p.label)));
            }
        }
        Ok(ParabolicBundle {
            rank,
            degree,
            points,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn points(&self) -> &[ParabolicPoint] {
        &self.points
    }

    pub fn point(&self, label: &str) -> Option<&ParabolicPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    /// `E ⊕ F`. A point marked on only one summand carries the trivial
    /// weight-0 flag on the other.
    pub fn direct_sum(&self, other: &ParabolicBundle) -> ParabolicBundle {
        let mut labels: Vec<&str> = self.points.iter().map(|p| p.label.as_str()).collect();
        for p in &other.points {
            if !labels.contains(&p.label.as_str()) {
                labels.push(&p.label);
            }
        }
        let lookup = |b: &ParabolicBundle, l: &str| {
            b.point(l)
                .cloned()
                .unwrap_or_else(|| ParabolicPoint::trivial(l, b.rank).expect("rank is positive"))
        };
        let points = labels
            .into_iter()
            .map(|l| {
                let (p, q) = (lookup(self, l), lookup(other, l));
                let weights: BTreeSet<Q> = p.weights.iter().chain(&q.weights).cloned().collect();
                let weights: Vec<Q> = weights.into_iter().collect();
                let dims = weights
                    .iter()
                    .map(|a| p.dim_at_least(a) + q.dim_at_least(a))
                    .collect();
                ParabolicPoint {
                    label: l.to_string(),
                    dims,
                    weights,
                }
            })
            .collect();
        ParabolicBundle {
            rank: self.rank + other.rank,
            degree: self.degree + other.degree,
            points,
        }
    }
}

/// A sub-bundle offered for the stability test, carrying the induced
/// parabolic structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubBundleCandidate {
    rank: usize,
    degree: i64,
    points: Vec<ParabolicPoint>,
}

impl SubBundleCandidate {
    /// Explicit induced flags; every weight must be a weight of the parent at
    /// that point and every parent point must be present.
    pub fn new(
        parent: &ParabolicBundle,
        rank: usize,
        degree: i64,
        points: Vec<ParabolicPoint>,
    ) -> Result<Self> {
        if rank == 0 || rank >= parent.rank {
            return Err(invalid(format!(
                "candidate rank {rank} must be in 1..{}",
                parent.rank
            )));
        }
        for pp in &parent.points {
            let p = points
                .iter()
                .find(|p| p.label == pp.label)
                .ok_or_else(|| invalid(format!("candidate misses point {}", pp.label)))?;
            if p.rank() != rank {
                return Err(invalid(format!(
                    "candidate point {}: top dimension differs from rank {rank}",
                    p.label
                )));
            }
            if let Some(w) = p.weights.iter().find(|w| !pp.weights.contains(w)) {
                return Err(invalid(format!(
                    "candidate point {}: weight {} is not a parent weight",
                    p.label,
                    fmt_q(w)
                )));
            }
        }
        if points.len() != parent.points.len() {
            return Err(invalid("candidate has points the parent does not"));
        }
        Ok(SubBundleCandidate {
            rank,
            degree,
            points,
        })
    }

    /// Induced structure from `dim (F ∩ E_{s,i})` for every parent level;
    /// a vector entering at level `i` inherits `α_i`.
    pub fn from_levels(
        parent: &ParabolicBundle,
        rank: usize,
        degree: i64,
        levels: &[Vec<usize>],
    ) -> Result<Self> {
        if levels.len() != parent.points.len() {
            return Err(invalid("need one level list per parent point"));
        }
        let mut points = Vec::with_capacity(levels.len());
        for (pp, lv) in parent.points.iter().zip(levels) {
            if lv.len() != pp.dims.len() {
                return Err(invalid(format!(
                    "point {}: expected {} levels",
                    pp.label,
                    pp.dims.len()
                )));
            }
            if lv[0] != rank || lv.windows(2).any(|w| w[0] < w[1]) {
                return Err(invalid(format!(
                    "point {}: levels must start at the rank and not increase",
                    pp.label
                )));
            }
            if lv.iter().zip(&pp.dims).any(|(a, b)| a > b) {
                return Err(invalid(format!(
                    "point {}: levels exceed the parent flag",
                    pp.label
                )));
            }
            let mut dims = Vec::new();
            let mut weights = Vec::new();
            for i in 0..lv.len() {
                let next = lv.get(i + 1).copied().unwrap_or(0);
                if lv[i] > next {
                    dims.push(lv[i]);
                    weights.push(pp.weights[i].clone());
                }
            }
            points.push(ParabolicPoint::new(pp.label.clone(), dims, weights)?);
        }
        Self::new(parent, rank, degree, points)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn points(&self) -> &[ParabolicPoint] {
        &self.points
    }
}

/// Anything with a degree, a rank and parabolic points.
pub trait Parabolic {
    fn rank(&self) -> usize;
    fn degree(&self) -> i64;
    fn points(&self) -> &[ParabolicPoint];
}

impl Parabolic for ParabolicBundle {
    fn rank(&self) -> usize {
        self.rank
    }
    fn degree(&self) -> i64 {
        self.degree
    }
    fn points(&self) -> &[ParabolicPoint] {
        &self.points
    }
}

impl Parabolic for SubBundleCandidate {
    fn rank(&self) -> usize {
        self.rank
    }
    fn degree(&self) -> i64 {
        self.degree
    }
    fn points(&self) -> &[ParabolicPoint] {
        &self.points
    }
}

/// `deg E + Σ_s Σ_i α_i(s) dim(E_{s,i} / E_{s,i+1})`.
pub fn par_degree(e: &impl Parabolic) -> Q {
    int(e.degree())
        + e.points()
            .iter()
            .map(|p| p.weight_contribution())
            .sum::<Q>()
}

pub fn slope(e: &impl Parabolic) -> Q {
    par_degree(e) / int(e.rank() as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every candidate has strictly smaller slope.
    StableRelativeToCandidates,
    /// No candidate has larger slope, some has equal slope.
    SemistableRelativeToCandidates,
    Unstable,
    /// No candidates were supplied.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub bundle_slope: Q,
    /// Index of the first candidate of maximal slope.
    pub witness: Option<usize>,
    pub max_candidate_slope: Option<Q>,
}

pub fn stability_verdict(
    e: &ParabolicBundle,
    candidates: &[SubBundleCandidate],
) -> StabilityReport {
    let mu = slope(e);
    let mut best: Option<(usize, Q)> = None;
    for (i, c) in candidates.iter().enumerate() {
        let s = slope(c);
        if best.as_ref().is_none_or(|(_, b)| s > *b) {
            best = Some((i, s));
        }
    }
    let verdict = match &best {
        None => Verdict::Undetermined,
        Some((_, s)) if *s > mu => Verdict::Unstable,
        Some((_, s)) if *s == mu => Verdict::SemistableRelativeToCandidates,
        Some(_) => Verdict::StableRelativeToCandidates,
    };
    StabilityReport {
        verdict,
        bundle_slope: mu,
        witness: best.as_ref().map(|(i, _)| *i),
        max_candidate_slope: best.map(|(_, s)| s),
    }
}

/// `α_i` for the 1-based level `index` at the named point.
pub fn metric_exponent(e: &ParabolicBundle, point: &str, index: usize) -> Result<Q> {
    let p = e
        .point(point)
        .ok_or_else(|| invalid(format!("no point labelled {point}")))?;
    if index == 0 || index > p.weights.len() {
        return Err(invalid(format!(
            "level {index} out of range 1..={} at point {point}",
            p.weights.len()
        )));
    }
    Ok(p.weights[index - 1].clone())
}

/// Local monodromy at one marked point.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalMonodromy {
    Matrix(Vec<Vec<Complex64>>),
    /// Eigenvalue arguments as fractions of a full turn.
    EigenArgs(Vec<Q>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryRepData {
    pub local: Vec<(String, LocalMonodromy)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointMatch {
    pub label: String,
    pub expected: Vec<String>,
    pub observed: Vec<f64>,
    /// Indices into `expected` whose partner in `observed` is off by more
    /// than the tolerance.
    pub unmatched: Vec<usize>,
    pub max_deviation: f64,
    pub unitarity_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub points: Vec<PointMatch>,
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// `arg λ / 2π` in `[0, 1)` for the eigenvalues of `m`, plus `‖m^* m - 1‖`.
fn eigen_arguments(m: &[Vec<Complex64>], rank: usize) -> Result<(Vec<f64>, f64)> {
    if m.len() != rank || m.iter().any(|r| r.len() != rank) {
        return Err(Error::Incompatible(format!(
            "monodromy matrix must be {rank}x{rank}"
        )));
    }
    let a = DMatrix::from_fn(rank, rank, |i, j| m[i][j]);
    let defect = a.adjoint() * &a - DMatrix::identity(rank, rank);
    let unitarity = defect.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // Clustered eigenvalues can stall deflation at machine epsilon; a looser
    // threshold only moves eigenvalues of a unitary matrix by that much.
    let schur = [f64::EPSILON, 1e-14, 1e-12]
        .iter()
        .find_map(|&eps| nalgebra::Schur::try_new(a.clone(), eps, 10_000))
        .ok_or_else(|| invalid("Schur decomposition did not converge"))?;
    let eig = schur
        .eigenvalues()
        .ok_or_else(|| invalid("eigenvalues unavailable"))?;
    let mut args: Vec<f64> = eig
        .iter()
        .map(|z| (z.arg() / std::f64::consts::TAU).rem_euclid(1.0))
        .map(|t| if t >= 1.0 { 0.0 } else { t })
        .collect();
    args.sort_by(f64::total_cmp);
    Ok((args, unitarity))
}

/// Best matching of two sorted multisets on the circle `R/Z`: among cyclic
/// shifts, the one minimising the largest distance.
fn circular_match(expected: &[f64], observed: &[f64]) -> (usize, Vec<f64>) {
    let n = expected.len();
    let mut best = (0, vec![f64::INFINITY; n]);
    let mut best_max = f64::INFINITY;
    for shift in 0..n {
        let d: Vec<f64> = (0..n)
            .map(|i| circle_distance(expected[i], observed[(i + shift) % n]))
            .collect();
        let m = d.iter().copied().fold(0.0, f64::max);
        if m < best_max {
            best_max = m;
            best = (shift, d);
        }
    }
    best
}

/// Whether the eigenvalue arguments of each `ρ(S_i)` reproduce the weights
/// of `E` at that point with multiplicity.
pub fn admissibility_check(
    rep: &UnitaryRepData,
    e: &ParabolicBundle,
    tol: f64,
) -> Result<AdmissibilityReport> {
    let mut points = Vec::new();
    for (label, _) in &rep.local {
        if e.point(label).is_none() {
            return Err(Error::Incompatible(format!("no marked point {label}")));
        }
    }
    for p in &e.points {
        let local = rep
            .local
            .iter()
            .find(|(l, _)| *l == p.label)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Incompatible(format!("no monodromy at point {}", p.label)))?;
        let expected_q = p.weight_multiset();
        let expected: Vec<f64> = expected_q.iter().map(to_f64).collect();
        let (observed, unitarity) = match local {
            LocalMonodromy::Matrix(m) => {
                let (args, u) = eigen_arguments(m, e.rank)?;
                if u > tol {
                    return Err(Error::ToleranceExceeded(format!(
                        "monodromy at {} is not unitary (defect {u:.3e})",
                        p.label
                    )));
                }
                (args, u)
            }
            LocalMonodromy::EigenArgs(args) => {
                if args.len() != e.rank {
                    return Err(Error::Incompatible(format!(
                        "expected {} eigenvalue arguments at {}",
                        e.rank, p.label
                    )));
                }
                let mut v: Vec<f64> = args
                    .iter()
                    .map(|a| {
                        let t = a - Q::from_integer(a.floor().to_integer());
                        to_f64(&t)
                    })
                    .collect();
                v.sort_by(f64::total_cmp);
                (v, 0.0)
            }
        };
        let (shift, dist) = circular_match(&expected, &observed);
        let observed: Vec<f64> = (0..observed.len())
            .map(|i| observed[(i + shift) % observed.len()])
            .collect();
        let unmatched = (0..dist.len()).filter(|&i| dist[i] > tol).collect();
        points.push(PointMatch {
            label: p.label.clone(),
            expected: expected_q.iter().map(fmt_q).collect(),
            observed,
            unmatched,
            max_deviation: dist.iter().copied().fold(0.0, f64::max),
            unitarity_error: unitarity,
        });
    }
    Ok(AdmissibilityReport {
        admissible: points.iter().all(|p| p.unmatched.is_empty()),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn point(dims: &[usize], w: &[(i64, i64)]) -> ParabolicPoint {
        ParabolicPoint::new(
            "s",
            dims.to_vec(),
            w.iter().map(|&(a, b)| frac(a, b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn par_degree_examples() {
        let e = ParabolicBundle::new(2, -1, vec![point(&[2], &[(1, 2)])]).unwrap();
        assert_eq!(par_degree(&e), int(0));
        let e = ParabolicBundle::new(4, 3, vec![]).unwrap();
        assert_eq!(par_degree(&e), int(3));
        let e =
            ParabolicBundle::new(3, 0, vec![point(&[3, 2, 1], &[(1, 6), (1, 3), (1, 2)])]).unwrap();
        assert_eq!(par_degree(&e), int(1));
        assert_eq!(metric_exponent(&e, "s", 1).unwrap(), frac(1, 6));
        assert_eq!(metric_exponent(&e, "s", 2).unwrap(), frac(1, 3));
        assert_eq!(metric_exponent(&e, "s", 3).unwrap(), frac(1, 2));
        assert!(metric_exponent(&e, "s", 4).is_err());
        assert!(metric_exponent(&e, "s", 0).is_err());
        assert!(metric_exponent(&e, "t", 1).is_err());
    }

    #[test]
    fn invalid_points() {
        assert!(ParabolicPoint::new("s", vec![2, 2], vec![int(0), frac(1, 2)]).is_err());
        assert!(ParabolicPoint::new("s", vec![2, 1], vec![frac(1, 2), frac(1, 2)]).is_err());
        assert!(ParabolicPoint::new("s", vec![2], vec![int(1)]).is_err());
        assert!(ParabolicPoint::new("s", vec![2], vec![frac(-1, 2)]).is_err());
        assert!(ParabolicBundle::new(3, 0, vec![point(&[2], &[(0, 1)])]).is_err());
    }

    #[test]
    fn direct_sum_merges_flags() {
        let e = ParabolicBundle::new(1, 0, vec![point(&[1], &[(1, 3)])]).unwrap();
        let f = ParabolicBundle::new(2, 1, vec![point(&[2, 1], &[(1, 4), (1, 2)])]).unwrap();
        let s = e.direct_sum(&f);
        assert_eq!(s.points()[0].dims(), &[3, 2, 1]);
        assert_eq!(par_degree(&s), par_degree(&e) + par_degree(&f));
    }

    #[test]
    fn stability_examples() {
        let e = ParabolicBundle::new(2, -1, vec![point(&[2], &[(1, 2)])]).unwrap();
        assert_eq!(stability_verdict(&e, &[]).verdict, Verdict::Undetermined);
        let up = SubBundleCandidate::from_levels(&e, 1, 0, &[vec![1]]).unwrap();
        let r = stability_verdict(&e, &[up]);
        assert_eq!(r.verdict, Verdict::Unstable);
        assert_eq!(
            (r.witness, r.max_candidate_slope),
            (Some(0), Some(frac(1, 2)))
        );
        let down = SubBundleCandidate::from_levels(&e, 1, -1, &[vec![1]]).unwrap();
        assert_eq!(
            stability_verdict(&e, &[down]).verdict,
            Verdict::StableRelativeToCandidates
        );
        assert!(SubBundleCandidate::from_levels(&e, 2, 0, &[vec![2]]).is_err());
    }

    #[test]
    fn inherited_weights() {
        let e =
            ParabolicBundle::new(3, 0, vec![point(&[3, 2, 1], &[(1, 6), (1, 3), (1, 2)])]).unwrap();
        // F ∩ E_2 = F ∩ E_3 = a line: that line sits in E_3 and gets α_3
        let c = SubBundleCandidate::from_levels(&e, 2, 0, &[vec![2, 1, 1]]).unwrap();
        assert_eq!(c.points()[0].weights(), &[frac(1, 6), frac(1, 2)]);
        assert_eq!(par_degree(&c), frac(2, 3));
        let bad = ParabolicPoint::new("s", vec![1], vec![frac(1, 5)]).unwrap();
        assert!(SubBundleCandidate::new(&e, 1, 0, vec![bad]).is_err());
    }

    fn rep(m: LocalMonodromy) -> UnitaryRepData {
        UnitaryRepData {
            local: vec![("s".into(), m)],
        }
    }

    #[test]
    fn admissibility_examples() {
        let e = ParabolicBundle::new(1, 0, vec![point(&[1], &[(1, 3)])]).unwrap();
        let third = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let r =
            admissibility_check(&rep(LocalMonodromy::Matrix(vec![vec![third]])), &e, 1e-9).unwrap();
        assert!(r.admissible);
        let minus = Complex64::new(-1.0, 0.0);
        let r =
            admissibility_check(&rep(LocalMonodromy::Matrix(vec![vec![minus]])), &e, 1e-9).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.points[0].unmatched, vec![0]);
        let r = admissibility_check(&rep(LocalMonodromy::EigenArgs(vec![frac(4, 3)])), &e, 0.0)
            .unwrap();
        assert!(r.admissible);
    }

    #[test]
    fn admissibility_conjugated() {
        let e = ParabolicBundle::new(2, 0, vec![point(&[2, 1], &[(0, 1), (1, 2)])]).unwrap();
        let (c, s) = (0.6, 0.8);
        let i = Complex64::i();
        // U = [[c, i s], [i s, c]], U diag(1,-1) U^*
        let u = [[Complex64::from(c), i * s], [i * s, Complex64::from(c)]];
        let d = [1.0, -1.0];
        let m: Vec<Vec<Complex64>> = (0..2)
            .map(|a| {
                (0..2)
                    .map(|b| (0..2).map(|k| u[a][k] * d[k] * u[b][k].conj()).sum())
                    .collect()
            })
            .collect();
        let r = admissibility_check(&rep(LocalMonodromy::Matrix(m)), &e, 1e-9).unwrap();
        assert!(r.admissible, "{r:?}");
    }

    #[test]
    fn non_unitary_rejected() {
        let e = ParabolicBundle::new(1, 0, vec![point(&[1], &[(0, 1)])]).unwrap();
        let m = LocalMonodromy::Matrix(vec![vec![Complex64::new(2.0, 0.0)]]);
        assert!(admissibility_check(&rep(m), &e, 1e-9).is_err());
    }

    #[test]
    fn wraparound_near_one() {
        let e = ParabolicBundle::new(1, 0, vec![point(&[1], &[(0, 1)])]).unwrap();
        let z = Complex64::from_polar(1.0, -1e-12);
        let r = admissibility_check(&rep(LocalMonodromy::Matrix(vec![vec![z]])), &e, 1e-9).unwrap();
        assert!(r.admissible);
    }

    #[test]
    fn rank_one_degree_zero() {
        // weight 0 at the only point: only the trivial monodromy is admissible
        let e = ParabolicBundle::new(1, 0, vec![point(&[1], &[(0, 1)])]).unwrap();
        assert_eq!(par_degree(&e), int(0));
        for k in 0..12 {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 12.0);
            let r =
                admissibility_check(&rep(LocalMonodromy::Matrix(vec![vec![z]])), &e, 1e-9).unwrap();
            assert_eq!(r.admissible, k == 0);
        }
    }
}
