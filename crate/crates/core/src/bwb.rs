//! Cohomology of homogeneous line bundles on flag domains.
//!
//! For an integral weight `μ`, either `μ + ρ` is singular and every
//! cohomology group vanishes, or there is a unique Weyl element `w` moving
//! `μ + ρ` into the dominant chamber; cohomology is then concentrated in
//! degree `ℓ(w)` and equals the irreducible representation with highest
//! weight `w(μ + ρ) - ρ`.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::{dot, Vector};
use crate::rational::fmt_q;
use crate::rootsys::{RootSystem, Weight, WeylElement};

#[derive(Debug, Clone)]
pub struct CohomologyReport {
    pub singular: bool,
    pub degree: Option<usize>,
    pub dimension: u128,
    pub weyl_element: Option<WeylElement>,
    pub highest_weight: Option<Weight>,
}

/// Flat record form of a [`CohomologyReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyRecord {
    pub singular: bool,
    pub degree: Option<usize>,
    pub dimension: String,
    pub weyl_word: Option<Vec<usize>>,
    pub highest_weight: Option<Vec<String>>,
    pub highest_weight_fundamental: Option<Vec<String>>,
}

impl CohomologyReport {
    pub fn record(&self, rs: &RootSystem) -> CohomologyRecord {
        CohomologyRecord {
            singular: self.singular,
            degree: self.degree,
            dimension: self.dimension.to_string(),
            weyl_word: self.weyl_element.as_ref().map(|w| w.word().to_vec()),
            highest_weight: self
                .highest_weight
                .as_ref()
                .map(|w| w.coords().iter().map(fmt_q).collect()),
            highest_weight_fundamental: self
                .highest_weight
                .as_ref()
                .map(|w| rs.to_fundamental(w).iter().map(fmt_q).collect()),
        }
    }

    /// Dimension of `H^k`.
    pub fn dim_in_degree(&self, k: usize) -> u128 {
        if self.degree == Some(k) {
            self.dimension
        } else {
            0
        }
    }
}

pub fn line_bundle_cohomology(rs: &RootSystem, mu: &Weight) -> Result<CohomologyReport> {
    if !rs.is_integral(mu) {
        return Err(invalid("weight is not integral"));
    }
    let shifted = mu + &rs.rho();
    let dom = rs.to_dominant(&shifted);
    if dom.singular {
        return Ok(CohomologyReport {
            singular: true,
            degree: None,
            dimension: 0,
            weyl_element: None,
            highest_weight: None,
        });
    }
    let highest = &dom.dominant - &rs.rho();
    let dimension = rs.weyl_dimension(&highest)?;
    Ok(CohomologyReport {
        singular: false,
        degree: Some(dom.element.length()),
        dimension,
        weyl_element: Some(dom.element),
        highest_weight: Some(highest),
    })
}

/// Flag domain data: a root system, the root set of the isotropy
/// subalgebra, and an optional weight λ for the α(π) count.
#[derive(Debug, Clone)]
pub struct FlagDomainSpec {
    root_system: RootSystem,
    isotropy: Vec<usize>,
    highest_weight: Option<Weight>,
}

impl FlagDomainSpec {
    /// `isotropy` lists root indices; it must be closed under negation and
    /// under addition inside the root set. An empty set gives the full flag
    /// domain `G/T`.
    pub fn new(
        root_system: RootSystem,
        isotropy: Vec<usize>,
        highest_weight: Option<Weight>,
    ) -> Result<Self> {
        validate_isotropy(&root_system, &isotropy)?;
        let mut iso = isotropy;
        iso.sort_unstable();
        iso.dedup();
        Ok(FlagDomainSpec {
            root_system,
            isotropy: iso,
            highest_weight,
        })
    }

    /// Isotropy roots given as coordinate vectors.
    pub fn from_root_vectors(
        root_system: RootSystem,
        roots: &[Vector],
        highest_weight: Option<Weight>,
    ) -> Result<Self> {
        let idx = roots
            .iter()
            .map(|r| {
                root_system
                    .root_index(r)
                    .ok_or_else(|| invalid("isotropy vector is not a root"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(root_system, idx, highest_weight)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn isotropy(&self) -> &[usize] {
        &self.isotropy
    }

    pub fn highest_weight(&self) -> Option<&Weight> {
        self.highest_weight.as_ref()
    }

    pub fn with_highest_weight(mut self, w: Weight) -> Self {
        self.highest_weight = Some(w);
        self
    }
}

pub(crate) fn validate_isotropy(rs: &RootSystem, iso: &[usize]) -> Result<()> {
    let n = rs.roots().len();
    if iso.iter().any(|&i| i >= n) {
        return Err(invalid("isotropy root index out of range"));
    }
    for &i in iso {
        if !iso.contains(&rs.negative_index(i)) {
            return Err(invalid("isotropy roots are not closed under negation"));
        }
        for &j in iso {
            let sum: Vec<_> = rs.roots()[i]
                .iter()
                .zip(&rs.roots()[j])
                .map(|(a, b)| a + b)
                .collect();
            if let Some(k) = rs.root_index(&sum) {
                if !iso.contains(&k) {
                    return Err(invalid("isotropy roots are not closed under root addition"));
                }
            }
        }
    }
    Ok(())
}

/// The two counts over positive non-isotropy roots: pairing with λ
/// positive, and pairing negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlphaPi {
    pub positive: usize,
    pub negative: usize,
    pub total: usize,
}

pub fn alpha_pi(spec: &FlagDomainSpec) -> Result<AlphaPi> {
    let lambda = spec
        .highest_weight
        .as_ref()
        .ok_or_else(|| invalid("α(π) needs a weight λ"))?;
    let rs = &spec.root_system;
    let (mut positive, mut negative) = (0, 0);
    for (i, a) in rs.positive_roots().iter().enumerate() {
        if spec.isotropy.contains(&i) {
            continue;
        }
        let p = dot(lambda.coords(), a);
        if p.is_positive() {
            positive += 1;
        } else if p.is_negative() {
            negative += 1;
        }
    }
    Ok(AlphaPi {
        positive,
        negative,
        total: positive + negative,
    })
}

/// `dim E_{w(μ+ρ)-ρ}`, or 0 when `μ + ρ` is singular.
pub fn automorphic_dimension_factor(spec: &FlagDomainSpec, mu: &Weight) -> Result<u128> {
    Ok(line_bundle_cohomology(&spec.root_system, mu)?.dimension)
}
