//! Classical root systems, their Weyl groups and weights, in exact arithmetic.
//!
//! Coordinate models are fixed per type so that every pairing is rational:
//!
//! - `A_n` lives in the sum-zero hyperplane of `Q^{n+1}`, roots `e_i - e_j`;
//! - `B_n`, `C_n`, `D_n` live in `Q^n` with roots `±e_i ± e_j` plus `±e_i`
//!   (type B) or `±2e_i` (type C).
//!
//! Positive roots are stored first; `roots[i + |Φ+|] = -roots[i]`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{dot, Matrix, Vector};
use crate::rational::{fmt_q, frac, int, Q};

pub const MAX_RANK: usize = 8;
pub const DEFAULT_ORDER_GUARD: u128 = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            other => Err(invalid(format!(
                "unsupported Cartan type {other:?} (expected A, B, C or D)"
            ))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A weight in the coordinate model of its root system.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vector);

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "Weight({})", parts.join(", "))
    }
}

impl Weight {
    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A Weyl group element: a reduced word in the simple reflections and its
/// matrix on the coordinate model. The word `[i1, ..., ik]` stands for
/// `s_{i1} ∘ ... ∘ s_{ik}`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Matrix,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement{:?}", self.word)
    }
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(self.matrix.mul_vec(&w.0))
    }

    pub fn apply_vec(&self, v: &[Q]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// Weyl group matrices are orthogonal, so the inverse is the transpose.
    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            matrix: self.matrix.transpose(),
        }
    }
}

/// Result of moving a weight into the closed dominant chamber.
#[derive(Debug, Clone)]
pub struct DominantForm {
    pub element: WeylElement,
    pub dominant: Weight,
    pub singular: bool,
}

#[derive(Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    ambient: usize,
    roots: Vec<Vector>,
    n_positive: usize,
    simple: Vec<usize>,
    // fundamental weights as coordinate vectors
    fundamental: Vec<Vector>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}{})", self.cartan_type, self.rank)
    }
}

fn unit(dim: usize, i: usize, scale: i64) -> Vector {
    let mut v = vec![Q::zero(); dim];
    v[i] = int(scale);
    v
}

fn combo(dim: usize, terms: &[(usize, i64)]) -> Vector {
    let mut v = vec![Q::zero(); dim];
    for &(i, c) in terms {
        v[i] += int(c);
    }
    v
}

impl RootSystem {
    /// Builds the root system of the given classical type and rank
    /// (`1 <= rank <= 8`; type D needs rank at least 2, with `D_2 = A_1 × A_1`).
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(invalid(format!(
                "rank {rank} outside supported range 1..={MAX_RANK}"
            )));
        }
        if cartan_type == CartanType::D && rank < 2 {
            return Err(invalid("type D requires rank >= 2"));
        }
        let n = rank;
        let ambient = if cartan_type == CartanType::A {
            n + 1
        } else {
            n
        };
        let mut positive: Vec<Vector> = Vec::new();
        let mut simple_vecs: Vec<Vector> = Vec::new();
        match cartan_type {
            CartanType::A => {
                for i in 0..=n {
                    for j in i + 1..=n {
                        positive.push(combo(ambient, &[(i, 1), (j, -1)]));
                    }
                }
                for i in 0..n {
                    simple_vecs.push(combo(ambient, &[(i, 1), (i + 1, -1)]));
                }
            }
            CartanType::B | CartanType::C | CartanType::D => {
                for i in 0..n {
                    for j in i + 1..n {
                        positive.push(combo(ambient, &[(i, 1), (j, -1)]));
                        positive.push(combo(ambient, &[(i, 1), (j, 1)]));
                    }
                }
                for i in 0..n - 1 {
                    simple_vecs.push(combo(ambient, &[(i, 1), (i + 1, -1)]));
                }
                match cartan_type {
                    CartanType::B => {
                        positive.extend((0..n).map(|i| unit(ambient, i, 1)));
                        simple_vecs.push(unit(ambient, n - 1, 1));
                    }
                    CartanType::C => {
                        positive.extend((0..n).map(|i| unit(ambient, i, 2)));
                        simple_vecs.push(unit(ambient, n - 1, 2));
                    }
                    _ => simple_vecs.push(combo(ambient, &[(n - 2, 1), (n - 1, 1)])),
                }
            }
        }
        let n_positive = positive.len();
        let mut roots = positive.clone();
        roots.extend(
            positive
                .iter()
                .map(|r| r.iter().map(|x| -x).collect::<Vector>()),
        );
        let simple = simple_vecs
            .iter()
            .map(|s| {
                roots
                    .iter()
                    .position(|r| r == s)
                    .expect("simple root is a root")
            })
            .collect();

        let mut rs = RootSystem {
            cartan_type,
            rank,
            ambient,
            roots,
            n_positive,
            simple,
            fundamental: Vec::new(),
        };
        // fundamental weights: ω_i = Σ_j (A^{-1})_{ij} α_j with A_{kj} = <α_k, α_j^∨>
        let mut cartan = Matrix::zeros(rank, rank);
        for k in 0..rank {
            for j in 0..rank {
                cartan[(k, j)] = rs.coroot_pairing(rs.simple_root(k), rs.simple_root(j));
            }
        }
        let inv = cartan.inverse().expect("Cartan matrix is invertible");
        rs.fundamental = (0..rank)
            .map(|i| {
                let mut w = vec![Q::zero(); ambient];
                for j in 0..rank {
                    for (c, a) in w.iter_mut().zip(rs.simple_root(j)) {
                        *c += &inv[(i, j)] * a;
                    }
                }
                w
            })
            .collect();
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vector] {
        &self.roots[..self.n_positive]
    }

    pub fn simple_root(&self, i: usize) -> &Vector {
        &self.roots[self.simple[i]]
    }

    pub fn simple_roots(&self) -> Vec<&Vector> {
        self.simple.iter().map(|&i| &self.roots[i]).collect()
    }

    pub fn root_index(&self, v: &[Q]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == v)
    }

    pub fn is_positive_index(&self, idx: usize) -> bool {
        idx < self.n_positive
    }

    /// Index of `-roots[idx]`.
    pub fn negative_index(&self, idx: usize) -> usize {
        if idx < self.n_positive {
            idx + self.n_positive
        } else {
            idx - self.n_positive
        }
    }

    /// `<v, α^∨> = 2 (v, α) / (α, α)`.
    pub fn coroot_pairing(&self, v: &[Q], alpha: &[Q]) -> Q {
        dot(v, alpha) * int(2) / dot(alpha, alpha)
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight(self.fundamental[i].clone())
    }

    /// Validates coordinates against the model (length, and the sum-zero
    /// hyperplane for type A).
    pub fn weight(&self, coords: Vector) -> Result<Weight> {
        if coords.len() != self.ambient {
            return Err(invalid(format!(
                "weight has {} coordinates, model needs {}",
                coords.len(),
                self.ambient
            )));
        }
        if self.cartan_type == CartanType::A
            && !coords.iter().fold(Q::zero(), |a, b| a + b).is_zero()
        {
            return Err(invalid(
                "type A weights must lie in the sum-zero hyperplane",
            ));
        }
        Ok(Weight(coords))
    }

    /// Weight with the given coordinates in the fundamental-weight basis.
    pub fn from_fundamental(&self, coeffs: &[Q]) -> Result<Weight> {
        if coeffs.len() != self.rank {
            return Err(invalid(format!(
                "expected {} fundamental coordinates, got {}",
                self.rank,
                coeffs.len()
            )));
        }
        let mut w = vec![Q::zero(); self.ambient];
        for (c, fw) in coeffs.iter().zip(&self.fundamental) {
            for (x, f) in w.iter_mut().zip(fw) {
                *x += c * f;
            }
        }
        Ok(Weight(w))
    }

    pub fn from_fundamental_i64(&self, coeffs: &[i64]) -> Result<Weight> {
        let q: Vec<Q> = coeffs.iter().map(|&c| int(c)).collect();
        self.from_fundamental(&q)
    }

    /// Coordinates `<λ, α_i^∨>` in the fundamental-weight basis.
    pub fn to_fundamental(&self, w: &Weight) -> Vector {
        (0..self.rank)
            .map(|i| self.coroot_pairing(&w.0, self.simple_root(i)))
            .collect()
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Weight {
        let mut s = vec![Q::zero(); self.ambient];
        for r in self.positive_roots() {
            for (x, y) in s.iter_mut().zip(r) {
                *x += y;
            }
        }
        Weight(s).scale(&frac(1, 2))
    }

    pub fn is_integral(&self, w: &Weight) -> bool {
        self.to_fundamental(w).iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.to_fundamental(w).iter().all(|c| !c.is_negative())
    }

    /// True when `w` is orthogonal to some root.
    pub fn is_singular(&self, w: &Weight) -> bool {
        self.positive_roots().iter().any(|a| dot(&w.0, a).is_zero())
    }

    fn reflect(&self, i: usize, v: &[Q]) -> Vector {
        let a = self.simple_root(i);
        let c = self.coroot_pairing(v, a);
        v.iter().zip(a).map(|(x, y)| x - &c * y).collect()
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let mut m = Matrix::zeros(self.ambient, self.ambient);
        for j in 0..self.ambient {
            let col = self.reflect(i, &unit(self.ambient, j, 1));
            for (r, x) in col.into_iter().enumerate() {
                m[(r, j)] = x;
            }
        }
        WeylElement {
            word: vec![i],
            matrix: m,
        }
    }

    pub fn identity_element(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            matrix: Matrix::identity(self.ambient),
        }
    }

    /// Element with the given word (not checked for reducedness).
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut m = Matrix::identity(self.ambient);
        for &i in word {
            if i >= self.rank {
                return Err(invalid(format!("simple reflection index {i} out of range")));
            }
            m = m.mul(self.simple_reflection(i).matrix());
        }
        Ok(WeylElement {
            word: word.to_vec(),
            matrix: m,
        })
    }

    /// Root indices of the Levi subsystem spanned by the given simple roots.
    pub fn levi_roots(&self, simple: &[usize]) -> Result<Vec<usize>> {
        if let Some(&i) = simple.iter().find(|&&i| i >= self.rank) {
            return Err(invalid(format!("simple root index {i} out of range")));
        }
        let mut found: Vec<usize> = Vec::new();
        let mut frontier: Vec<Vector> = simple
            .iter()
            .map(|&i| self.simple_root(i).clone())
            .collect();
        while let Some(v) = frontier.pop() {
            let idx = self.root_index(&v).expect("reflections permute roots");
            if found.contains(&idx) {
                continue;
            }
            found.push(idx);
            frontier.extend(simple.iter().map(|&i| self.reflect(i, &v)));
        }
        found.sort_unstable();
        Ok(found)
    }

    /// Classical Weyl group order.
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.cartan_type {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1u128 << n) * fact(n),
            CartanType::D => (1u128 << (n - 1)) * fact(n),
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.positive_roots()
            .iter()
            .filter(|a| {
                let img = w.apply_vec(a);
                self.root_index(&img)
                    .map(|i| !self.is_positive_index(i))
                    .expect("Weyl group permutes roots")
            })
            .count()
    }

    /// Enumerates `W` breadth-first over reduced words, so each element
    /// carries a reduced word of minimal length.
    pub fn weyl_group_elements(&self, max_order_guard: u128) -> Result<Vec<WeylElement>> {
        let order = self.weyl_group_order();
        if order > max_order_guard {
            return Err(Error::GuardExceeded {
                what: format!("Weyl group of {}{}", self.cartan_type, self.rank),
                required: order,
                guard: max_order_guard,
            });
        }
        let reflections: Vec<WeylElement> =
            (0..self.rank).map(|i| self.simple_reflection(i)).collect();
        // ρ is regular, so w is determined by w(ρ)
        let rho = self.rho().0;
        let mut seen: HashMap<Vector, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        let id = self.identity_element();
        seen.insert(rho.clone(), ());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            for (i, s) in reflections.iter().enumerate() {
                let matrix = s.matrix.mul(&w.matrix);
                let key = matrix.mul_vec(&rho);
                if seen.contains_key(&key) {
                    continue;
                }
                seen.insert(key, ());
                let mut word = Vec::with_capacity(w.word.len() + 1);
                word.push(i);
                word.extend_from_slice(&w.word);
                queue.push_back(WeylElement { word, matrix });
            }
            out.push(w);
        }
        debug_assert_eq!(out.len() as u128, order);
        Ok(out)
    }

    /// Moves `mu` into the closed dominant chamber by repeatedly reflecting
    /// in the first simple root with negative pairing. Each step lengthens
    /// the word, and the result is the unique shortest `w` with `w(mu)`
    /// dominant, which is also the first one met in breadth-first order.
    pub fn to_dominant(&self, mu: &Weight) -> DominantForm {
        let mut v = mu.0.clone();
        let mut applied: Vec<usize> = Vec::new();
        let mut matrix = Matrix::identity(self.ambient);
        while let Some(i) =
            (0..self.rank).find(|&i| self.coroot_pairing(&v, self.simple_root(i)).is_negative())
        {
            v = self.reflect(i, &v);
            matrix = self.simple_reflection(i).matrix.mul(&matrix);
            applied.push(i);
        }
        applied.reverse();
        let dominant = Weight(v);
        let singular = self.is_singular(&dominant);
        DominantForm {
            element: WeylElement {
                word: applied,
                matrix,
            },
            dominant,
            singular,
        }
    }

    /// Dimension of the irreducible representation with dominant integral
    /// highest weight `lambda`, via `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u128> {
        let fund = self.to_fundamental(lambda);
        if fund.iter().any(|c| !c.is_integer()) {
            return Err(invalid("highest weight is not integral"));
        }
        if fund.iter().any(Signed::is_negative) {
            return Err(invalid("highest weight is not dominant"));
        }
        let rho = self.rho();
        let shifted = lambda + &rho;
        let mut prod = Q::one();
        for a in self.positive_roots() {
            prod *= dot(&shifted.0, a) / dot(&rho.0, a);
        }
        if !prod.is_integer() || !prod.is_positive() {
            return Err(invalid(format!(
                "Weyl dimension product {} is not a positive integer",
                fmt_q(&prod)
            )));
        }
        let n: BigInt = prod.to_integer();
        n.to_u128()
            .ok_or_else(|| invalid("Weyl dimension exceeds u128"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: CartanType, n: usize) -> RootSystem {
        RootSystem::new(t, n).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(rs(CartanType::A, 1).roots().len(), 2);
        assert_eq!(rs(CartanType::B, 2).roots().len(), 8);
        let a2 = rs(CartanType::A, 2);
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.positive_roots().len(), 3);
        for n in 1..=MAX_RANK {
            assert_eq!(rs(CartanType::A, n).roots().len(), n * (n + 1));
            assert_eq!(rs(CartanType::B, n).roots().len(), 2 * n * n);
            assert_eq!(rs(CartanType::C, n).roots().len(), 2 * n * n);
            if n >= 2 {
                assert_eq!(rs(CartanType::D, n).roots().len(), 2 * n * (n - 1));
            }
        }
    }

    #[test]
    fn unsupported_inputs() {
        assert!(RootSystem::new(CartanType::A, 0).is_err());
        assert!(RootSystem::new(CartanType::B, 9).is_err());
        assert!(RootSystem::new(CartanType::D, 1).is_err());
        assert!("E".parse::<CartanType>().is_err());
    }

    #[test]
    fn rho_examples() {
        let a1 = rs(CartanType::A, 1);
        assert_eq!(a1.rho(), a1.weight(vec![frac(1, 2), frac(-1, 2)]).unwrap());
        let a2 = rs(CartanType::A, 2);
        let sum = a2
            .simple_root(0)
            .iter()
            .zip(a2.simple_root(1))
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(a2.rho(), Weight(sum));
        let b2 = rs(CartanType::B, 2);
        assert_eq!(b2.rho(), Weight(vec![frac(3, 2), frac(1, 2)]));
        for t in [CartanType::A, CartanType::B, CartanType::C, CartanType::D] {
            let r = rs(t, 3);
            assert!(r.to_fundamental(&r.rho()).iter().all(|c| c == &int(1)));
        }
    }

    #[test]
    fn to_dominant_a1() {
        let a1 = rs(CartanType::A, 1);
        let alpha = Weight(a1.simple_root(0).clone());
        let d = a1.to_dominant(&alpha.scale(&frac(3, 2)));
        assert!(d.element.is_identity() && !d.singular);
        let z = a1.to_dominant(&alpha.scale(&int(0)));
        assert!(z.element.is_identity() && z.singular);
        let d = a1.to_dominant(&alpha.scale(&int(-2)));
        assert_eq!(d.element.length(), 1);
        assert_eq!(d.dominant, alpha.scale(&int(2)));
        assert!(!d.singular);
    }

    #[test]
    fn weyl_dimensions() {
        let a1 = rs(CartanType::A, 1);
        for n in 0..10 {
            assert_eq!(
                a1.weyl_dimension(&a1.from_fundamental_i64(&[n]).unwrap())
                    .unwrap(),
                n as u128 + 1
            );
        }
        let a2 = rs(CartanType::A, 2);
        assert_eq!(
            a2.weyl_dimension(&a2.from_fundamental_i64(&[1, 1]).unwrap())
                .unwrap(),
            8
        );
        assert_eq!(
            a2.weyl_dimension(&a2.from_fundamental_i64(&[0, 0]).unwrap())
                .unwrap(),
            1
        );
        assert!(a2
            .weyl_dimension(&a2.from_fundamental_i64(&[-1, 0]).unwrap())
            .is_err());
        assert!(a2
            .weyl_dimension(&a2.from_fundamental(&[frac(1, 2), int(0)]).unwrap())
            .is_err());
    }

    #[test]
    fn small_weyl_groups() {
        assert_eq!(
            rs(CartanType::A, 1).weyl_group_elements(100).unwrap().len(),
            2
        );
        assert_eq!(
            rs(CartanType::A, 2).weyl_group_elements(100).unwrap().len(),
            6
        );
        assert_eq!(
            rs(CartanType::B, 2).weyl_group_elements(100).unwrap().len(),
            8
        );
        let err = rs(CartanType::B, 8)
            .weyl_group_elements(DEFAULT_ORDER_GUARD)
            .unwrap_err();
        assert!(matches!(
            err,
            Error::GuardExceeded {
                required: 10_321_920,
                ..
            }
        ));
    }
}
