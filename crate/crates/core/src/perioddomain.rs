//! Linear algebra of period domains.
//!
//! - isotropy groups and domain dimensions from Hodge numbers;
//! - the weight-0 Hodge decomposition of the Lie algebra `g = Lie Aut(V, Q)`;
//! - monodromy weight filtrations `W(N)` of nilpotent endomorphisms, with two
//!   independent constructions, graded pairings and primitive decompositions;
//! - enumeration of invariant almost-complex structures on flag domains in
//!   terms of root subsets.
//!
//! Everything here is exact rational arithmetic.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::bwb::validate_isotropy;
use crate::error::{invalid, Error, Result};
use crate::linalg::{bilinear, inertia, Matrix, Subspace, Vector};
use crate::rational::{int, Q};
use crate::rootsys::RootSystem;

/// Hodge numbers of a weight-`n` structure, listed as
/// `h^{n,0}, h^{n-1,1}, ..., h^{0,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeNumbers {
    weight: u32,
    h: Vec<u64>,
}

impl HodgeNumbers {
    pub fn new(weight: u32, h: Vec<u64>) -> Result<Self> {
        if h.len() != weight as usize + 1 {
            return Err(invalid(format!(
                "weight {weight} needs {} Hodge numbers, got {}",
                weight + 1,
                h.len()
            )));
        }
        if h.contains(&0) {
            return Err(invalid("Hodge numbers must be positive"));
        }
        if h.iter().ne(h.iter().rev()) {
            return Err(invalid(
                "Hodge numbers are not symmetric (h^{p,q} != h^{q,p})",
            ));
        }
        Ok(HodgeNumbers { weight, h })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn numbers(&self) -> &[u64] {
        &self.h
    }

    /// `h^{p, n-p}`.
    pub fn h_p(&self, p: u32) -> u64 {
        self.h[(self.weight - p) as usize]
    }

    pub fn total(&self) -> u64 {
        self.h.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    U,
    O,
}

impl GroupKind {
    pub fn real_dimension(self, size: u64) -> u64 {
        match self {
            GroupKind::U => size * size,
            GroupKind::O => size * size.saturating_sub(1) / 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyDescription {
    pub factors: Vec<(GroupKind, u64)>,
    pub real_dimension: u64,
    /// `Sp(2g, R)` or `O(a, b)`.
    pub ambient_group: String,
    pub ambient_real_dimension: u64,
    pub domain_complex_dimension: u64,
}

impl fmt::Display for IsotropyDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(k, s)| format!("{k:?}({s})"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Isotropy group `H` of a reference Hodge structure and the dimension of
/// the period domain `G/H`. The factors are `U(h^{n,0}), U(h^{n-1,1}), ...`
/// down to the middle, with an `O(h^{m,m})` factor for even weight `2m`.
pub fn isotropy_group(h: &HodgeNumbers) -> IsotropyDescription {
    let n = h.weight();
    let mut factors = Vec::new();
    // p runs from n down to the first index above the middle
    let mut p = n;
    while 2 * p > n {
        factors.push((GroupKind::U, h.h_p(p)));
        p -= 1;
    }
    if n.is_multiple_of(2) {
        factors.push((GroupKind::O, h.h_p(n / 2)));
    }
    let real_dimension = factors.iter().map(|&(k, s)| k.real_dimension(s)).sum();
    let total = h.total();
    let (ambient_group, ambient_real_dimension) = if n % 2 == 1 {
        let g = total / 2;
        (format!("Sp({total}, R)"), g * (2 * g + 1))
    } else {
        let a: u64 = (0..=n).filter(|p| p % 2 == 0).map(|p| h.h_p(p)).sum();
        let b = total - a;
        (format!("O({a}, {b})"), total * (total - 1) / 2)
    };
    let diff = ambient_real_dimension - real_dimension;
    debug_assert_eq!(diff % 2, 0);
    IsotropyDescription {
        factors,
        real_dimension,
        ambient_group,
        ambient_real_dimension,
        domain_complex_dimension: diff / 2,
    }
}

/// Dimensions of `g^{r,-r}` for `r = -n..=n`, returned as `(r, dim)`.
///
/// Through `Q`, `g ⊗ C` is `Sym^2 V` for odd weight and `Λ^2 V` for even
/// weight; `V^{p} ⊗ V^{p'}` lands in `g^{r,-r}` with `r = p + p' - n`.
pub fn hodge_structure_on_g(h: &HodgeNumbers) -> Vec<(i64, u64)> {
    let n = h.weight() as i64;
    let symmetric = n % 2 == 1;
    (0..=2 * n)
        .map(|s| {
            let mut d = 0u64;
            for p in 0..=n {
                let q = s - p;
                if q < 0 || q > n || q < p {
                    continue;
                }
                let (hp, hq) = (h.h_p(p as u32), h.h_p(q as u32));
                if p < q {
                    d += hp * hq;
                } else if symmetric {
                    d += hp * (hp + 1) / 2;
                } else {
                    d += hp * (hp - 1) / 2;
                }
            }
            (s - n, d)
        })
        .collect()
}

/// A nilpotent endomorphism `N` with `N^{k+1} = 0`, `N^k != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentEndo {
    matrix: Matrix,
    // k, the largest power with N^k != 0 (0 for N = 0)
    order: usize,
}

impl NilpotentEndo {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(invalid("nilpotent endomorphism must be square"));
        }
        let d = matrix.rows();
        let mut power = Matrix::identity(d);
        for k in 0..=d {
            if power.is_zero() {
                return Ok(NilpotentEndo {
                    matrix,
                    order: k.saturating_sub(1),
                });
            }
            power = power.mul(&matrix);
        }
        Err(Error::NotNilpotent)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Largest `k` with `N^k != 0`.
    pub fn order(&self) -> usize {
        if self.dim() == 0 {
            0
        } else {
            self.order
        }
    }

    pub fn power(&self, k: usize) -> Matrix {
        self.matrix.pow(k as u32)
    }

    fn kernel_of_power(&self, k: usize) -> Subspace {
        Subspace::span(self.dim(), &self.power(k).kernel())
    }

    fn image_of_power(&self, k: usize) -> Subspace {
        Subspace::full(self.dim()).image(&self.power(k))
    }
}

/// A Jordan chain `v, Nv, ..., N^{len-1} v` with `N^len v = 0`.
#[derive(Debug, Clone)]
pub struct JordanChain {
    pub head: Vector,
    pub length: usize,
}

/// A Jordan basis of `N`, longest chains first.
pub fn jordan_chains(n: &NilpotentEndo) -> Vec<JordanChain> {
    let d = n.dim();
    let k = n.order();
    let kernels: Vec<Subspace> = (0..=k + 2).map(|j| n.kernel_of_power(j)).collect();
    let mut chains = Vec::new();
    for s in (1..=k + 1).rev() {
        // heads of chains of length exactly s complement K_{s-1} + N(K_{s+1}) in K_s
        let lower = kernels[s - 1].sum(&kernels[s + 1].image(n.matrix()));
        for head in lower.complement_in(&kernels[s]) {
            chains.push(JordanChain { head, length: s });
        }
    }
    debug_assert_eq!(chains.iter().map(|c| c.length).sum::<usize>(), d);
    chains
}

pub fn jordan_block_sizes(n: &NilpotentEndo) -> Vec<usize> {
    jordan_chains(n).iter().map(|c| c.length).collect()
}

/// An increasing filtration `W_{-k} ⊂ ... ⊂ W_k = V`, centered at 0, with
/// `W_{-k-1} = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    dim: usize,
    k: usize,
    // spaces[j + k] = W_j
    spaces: Vec<Subspace>,
}

impl fmt::Debug for WeightFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightFiltration(gr dims {:?})", self.graded_dims())
    }
}

/// Outcome of checking the defining properties of `W(N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiltrationCheck {
    pub shift: bool,
    pub hard_lefschetz: bool,
}

impl FiltrationCheck {
    pub fn ok(&self) -> bool {
        self.shift && self.hard_lefschetz
    }
}

impl WeightFiltration {
    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Largest index with a possibly nonzero graded piece.
    pub fn max_index(&self) -> usize {
        self.k
    }

    pub fn w(&self, j: i64) -> Subspace {
        let k = self.k as i64;
        if j < -k {
            Subspace::zero(self.dim)
        } else if j >= k {
            Subspace::full(self.dim)
        } else {
            self.spaces[(j + k) as usize].clone()
        }
    }

    pub fn gr_dim(&self, j: i64) -> usize {
        self.w(j).dim() - self.w(j - 1).dim()
    }

    /// `(j, dim Gr_j)` for `j = -k..=k`.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        let k = self.k as i64;
        (-k..=k).map(|j| (j, self.gr_dim(j))).collect()
    }

    /// Lifts of a basis of `Gr_j`.
    pub fn graded_basis(&self, j: i64) -> Vec<Vector> {
        self.w(j - 1).complement_in(&self.w(j))
    }

    /// Verifies `N W_j ⊆ W_{j-2}` and that `N^j : Gr_j → Gr_{-j}` is an
    /// isomorphism for all `j >= 0`.
    pub fn check(&self, n: &NilpotentEndo) -> FiltrationCheck {
        let k = self.k as i64;
        let shift =
            (-k - 1..=k + 1).all(|j| self.w(j - 2).contains_space(&self.w(j).image(n.matrix())));
        let hard_lefschetz = (0..=k).all(|j| {
            if self.gr_dim(j) != self.gr_dim(-j) {
                return false;
            }
            let nj = n.power(j as usize);
            // injective on Gr_j: {x in W_j : N^j x in W_{-j-1}} = W_{j-1}
            let pre = self.w(j).intersect(&self.w(-j - 1).preimage(&nj));
            pre == self.w(j - 1)
        });
        FiltrationCheck {
            shift,
            hard_lefschetz,
        }
    }
}

/// `W(N)` from a Jordan basis: `N^i v` for a chain of length `s` has weight
/// `s - 1 - 2i`.
pub fn weight_filtration(n: &NilpotentEndo) -> WeightFiltration {
    let d = n.dim();
    let k = n.order();
    let mut weighted: Vec<(i64, Vector)> = Vec::with_capacity(d);
    for chain in jordan_chains(n) {
        let mut v = chain.head.clone();
        for i in 0..chain.length {
            weighted.push((chain.length as i64 - 1 - 2 * i as i64, v.clone()));
            v = n.matrix().mul_vec(&v);
        }
    }
    let spaces = (-(k as i64)..=k as i64)
        .map(|j| {
            let vs: Vec<Vector> = weighted
                .iter()
                .filter(|(w, _)| *w <= j)
                .map(|(_, v)| v.clone())
                .collect();
            Subspace::span(d, &vs)
        })
        .collect();
    WeightFiltration { dim: d, k, spaces }
}

/// `W(N)` from kernels and images only:
/// `W_j = Σ_{i >= max(0, -j)} ker N^{j+i+1} ∩ im N^i`.
pub fn weight_filtration_by_kernels(n: &NilpotentEndo) -> WeightFiltration {
    let d = n.dim();
    let k = n.order() as i64;
    let kernels: Vec<Subspace> = (0..=2 * k as usize + 2)
        .map(|j| n.kernel_of_power(j))
        .collect();
    let images: Vec<Subspace> = (0..=k as usize).map(|j| n.image_of_power(j)).collect();
    let spaces = (-k..=k)
        .map(|j| {
            let mut acc = Subspace::zero(d);
            for i in 0.max(-j)..=k {
                let ker = &kernels[(j + i + 1) as usize];
                acc = acc.sum(&ker.intersect(&images[i as usize]));
            }
            acc
        })
        .collect();
    WeightFiltration {
        dim: d,
        k: k as usize,
        spaces,
    }
}

/// Matrix of `(u, v) ↦ B(u, N^k v)` on lifts of a basis of `Gr_k`.
#[derive(Debug, Clone)]
pub struct GradedPairing {
    pub k: usize,
    pub matrix: Matrix,
    pub nondegenerate: bool,
    /// `B_k(v, u) = sign · B_k(u, v)`.
    pub sign: i32,
}

/// Symmetry type of a bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormSymmetry {
    Symmetric,
    Antisymmetric,
}

impl FormSymmetry {
    pub fn sign(self) -> i32 {
        match self {
            FormSymmetry::Symmetric => 1,
            FormSymmetry::Antisymmetric => -1,
        }
    }
}

/// Checks that `B` is nondegenerate, symmetric or antisymmetric, and that
/// `N` is infinitesimally `B`-skew.
pub fn check_compatible(n: &NilpotentEndo, b: &Matrix) -> Result<FormSymmetry> {
    if !b.is_square() || b.rows() != n.dim() {
        return Err(Error::Incompatible(
            "form and endomorphism sizes differ".into(),
        ));
    }
    let symmetry = if b.is_symmetric() {
        FormSymmetry::Symmetric
    } else if b.is_antisymmetric() {
        FormSymmetry::Antisymmetric
    } else {
        return Err(Error::Incompatible(
            "form is neither symmetric nor antisymmetric".into(),
        ));
    };
    if b.rank() != b.rows() {
        return Err(Error::Incompatible("form is degenerate".into()));
    }
    let skew = n.matrix().transpose().mul(b).add(&b.mul(n.matrix()));
    if !skew.is_zero() {
        return Err(Error::Incompatible(
            "N is not skew for the form: B(Nx, y) + B(x, Ny) != 0".into(),
        ));
    }
    Ok(symmetry)
}

pub fn graded_pairing(n: &NilpotentEndo, b: &Matrix, k: usize) -> Result<GradedPairing> {
    let symmetry = check_compatible(n, b)?;
    let filt = weight_filtration(n);
    Ok(pairing_on(&filt.graded_basis(k as i64), n, b, k, symmetry))
}

fn pairing_on(
    basis: &[Vector],
    n: &NilpotentEndo,
    b: &Matrix,
    k: usize,
    symmetry: FormSymmetry,
) -> GradedPairing {
    let nk = n.power(k);
    let m = basis.len();
    let mut matrix = Matrix::zeros(m, m);
    for (a, u) in basis.iter().enumerate() {
        for (c, v) in basis.iter().enumerate() {
            matrix[(a, c)] = bilinear(b, u, &nk.mul_vec(v));
        }
    }
    let nondegenerate = matrix.rank() == m;
    let parity = if k.is_multiple_of(2) { 1 } else { -1 };
    GradedPairing {
        k,
        matrix,
        nondegenerate,
        sign: symmetry.sign() * parity,
    }
}

/// `P_l = ker(N^{l+1} : Gr_l → Gr_{-l-2})` for each `l >= 0`.
#[derive(Debug, Clone)]
pub struct PrimitiveDecomposition {
    /// `(l, lifts of a basis of P_l)`.
    pub pieces: Vec<(usize, Vec<Vector>)>,
    /// Whether `Gr_j = ⊕_i N^i P_{j+2i}` holds for every `j`.
    pub lefschetz: bool,
}

impl PrimitiveDecomposition {
    pub fn dim(&self, l: usize) -> usize {
        self.pieces
            .iter()
            .find(|(level, _)| *level == l)
            .map_or(0, |(_, b)| b.len())
    }
}

pub fn primitive_decomposition(
    n: &NilpotentEndo,
    filt: &WeightFiltration,
) -> PrimitiveDecomposition {
    let k = filt.max_index();
    let pieces: Vec<(usize, Vec<Vector>)> = (0..=k)
        .map(|l| {
            let li = l as i64;
            let np = n.power(l + 1);
            let s = filt.w(li).intersect(&filt.w(-li - 3).preimage(&np));
            let lower = filt.w(li - 1);
            (l, lower.complement_in(&s.sum(&lower)))
        })
        .collect();

    let lefschetz = (-(k as i64)..=k as i64).all(|j| {
        let mut vs: Vec<Vector> = filt.w(j - 1).basis().to_vec();
        let lower_dim = vs.len();
        let mut count = 0;
        for (l, basis) in &pieces {
            let l = *l as i64;
            // N^i P_l sits in Gr_{l-2i}
            if (l - j) % 2 != 0 || l < j.abs() {
                continue;
            }
            let np = n.power(((l - j) / 2) as usize);
            for p in basis {
                vs.push(np.mul_vec(p));
                count += 1;
            }
        }
        count == filt.gr_dim(j) && Subspace::span(n.dim(), &vs).dim() == lower_dim + count
    });
    PrimitiveDecomposition { pieces, lefschetz }
}

/// The pairing `B(u, N^l v)` restricted to `P_l`, with its inertia when it
/// is symmetric.
#[derive(Debug, Clone)]
pub struct PrimitivePairing {
    pub l: usize,
    pub pairing: GradedPairing,
    pub inertia: Option<(usize, usize, usize)>,
}

impl PrimitivePairing {
    /// Definite up to one global sign.
    pub fn is_definite(&self) -> bool {
        match self.inertia {
            Some((p, n, 0)) => p == 0 || n == 0,
            _ => false,
        }
    }
}

pub fn primitive_pairings(n: &NilpotentEndo, b: &Matrix) -> Result<Vec<PrimitivePairing>> {
    let symmetry = check_compatible(n, b)?;
    let filt = weight_filtration(n);
    let prim = primitive_decomposition(n, &filt);
    Ok(prim
        .pieces
        .iter()
        .filter(|(_, basis)| !basis.is_empty())
        .map(|(l, basis)| {
            let pairing = pairing_on(basis, n, b, *l, symmetry);
            let inertia = (pairing.sign == 1).then(|| inertia(&pairing.matrix));
            PrimitivePairing {
                l: *l,
                pairing,
                inertia,
            }
        })
        .collect())
}

/// Standard nilpotent with the given Jordan block sizes together with a
/// compatible form of the requested symmetry.
///
/// On a single block `e_0 → e_1 → ... → e_{s-1} → 0` the form
/// `B(e_i, e_j) = (-1)^i δ_{i+j, s-1}` is skew for `N` and has symmetry
/// `(-1)^{s-1}`. Blocks of the other parity are paired off two at a time.
pub fn polarized_nilpotent(blocks: &[usize], symmetry: FormSymmetry) -> Result<(Matrix, Matrix)> {
    if blocks.contains(&0) {
        return Err(invalid("Jordan block sizes must be positive"));
    }
    let native = |s: usize| match symmetry {
        FormSymmetry::Symmetric => s % 2 == 1,
        FormSymmetry::Antisymmetric => s.is_multiple_of(2),
    };
    let mut singles: Vec<usize> = Vec::new();
    let mut pairs: Vec<usize> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    for &s in blocks {
        if native(s) {
            singles.push(s);
        } else if let Some(pos) = pending.iter().position(|&p| p == s) {
            pending.remove(pos);
            pairs.push(s);
        } else {
            pending.push(s);
        }
    }
    if !pending.is_empty() {
        return Err(invalid(format!(
            "blocks {pending:?} need a partner of equal size for a {symmetry:?} form"
        )));
    }
    let d: usize = blocks.iter().sum();
    let mut n = Matrix::zeros(d, d);
    let mut b = Matrix::zeros(d, d);
    let sgn = |i: usize| if i.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut offset = 0;
    let chain = |n: &mut Matrix, start: usize, s: usize| {
        for i in 0..s - 1 {
            n[(start + i + 1, start + i)] = Q::one();
        }
    };
    for &s in &singles {
        chain(&mut n, offset, s);
        for i in 0..s {
            b[(offset + i, offset + s - 1 - i)] = sgn(i);
        }
        offset += s;
    }
    let eps = int(symmetry.sign() as i64);
    for &s in &pairs {
        let (e, f) = (offset, offset + s);
        chain(&mut n, e, s);
        chain(&mut n, f, s);
        for i in 0..s {
            b[(e + i, f + s - 1 - i)] = sgn(i);
            b[(f + s - 1 - i, e + i)] = &eps * sgn(i);
        }
        offset += 2 * s;
    }
    debug_assert!(b.rank() == d);
    Ok((n, b))
}

/// A choice `C` of one root out of each pair `±α` of non-isotropy roots,
/// with its flags. Flags are computed at construction and the set is
/// immutable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdaptedSet {
    roots: Vec<usize>,
    one_of_pm: bool,
    positively_adapted: bool,
    closed: bool,
}

impl AdaptedSet {
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn one_of_pm(&self) -> bool {
        self.one_of_pm
    }

    pub fn positively_adapted(&self) -> bool {
        self.positively_adapted
    }

    pub fn closed(&self) -> bool {
        self.closed
    }
}

pub const DEFAULT_ADAPTED_GUARD: u128 = 1 << 16;

/// Enumerates all `2^m` choices over the `m` pairs `±α` of non-isotropy roots.
pub fn adapted_complex_structures(
    rs: &RootSystem,
    isotropy: &[usize],
    guard: u128,
) -> Result<Vec<AdaptedSet>> {
    validate_isotropy(rs, isotropy)?;
    let pairs: Vec<usize> = (0..rs.positive_roots().len())
        .filter(|i| !isotropy.contains(i))
        .collect();
    let count = 1u128.checked_shl(pairs.len() as u32).unwrap_or(u128::MAX);
    if count > guard {
        return Err(Error::GuardExceeded {
            what: "adapted complex structures".into(),
            required: count,
            guard,
        });
    }
    let positive_systems: Vec<Vec<bool>> = rs
        .weyl_group_elements(crate::rootsys::DEFAULT_ORDER_GUARD)?
        .iter()
        .map(|w| {
            let mut member = vec![false; rs.roots().len()];
            for a in rs.positive_roots() {
                member[rs.root_index(&w.apply_vec(a)).expect("W permutes roots")] = true;
            }
            member
        })
        .collect();
    let non_isotropy: Vec<bool> = (0..rs.roots().len())
        .map(|i| !isotropy.contains(&i))
        .collect();
    let sum_index: Vec<Vec<Option<usize>>> = rs
        .roots()
        .iter()
        .map(|a| {
            rs.roots()
                .iter()
                .map(|b| {
                    let s: Vector = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    rs.root_index(&s)
                })
                .collect()
        })
        .collect();

    let out = (0..count as u64)
        .map(|mask| {
            let mut roots: Vec<usize> = pairs
                .iter()
                .enumerate()
                .map(|(bit, &i)| {
                    if mask >> bit & 1 == 0 {
                        i
                    } else {
                        rs.negative_index(i)
                    }
                })
                .collect();
            roots.sort_unstable();
            let one_of_pm = roots
                .iter()
                .all(|&i| !roots.contains(&rs.negative_index(i)))
                && roots.len() == pairs.len();
            let positively_adapted = positive_systems
                .iter()
                .any(|member| roots.iter().all(|&i| member[i]));
            let closed = roots.iter().all(|&a| {
                roots.iter().all(|&b| match sum_index[a][b] {
                    Some(s) if non_isotropy[s] => roots.contains(&s),
                    _ => true,
                })
            });
            AdaptedSet {
                roots,
                one_of_pm,
                positively_adapted,
                closed,
            }
        })
        .collect();
    Ok(out)
}
