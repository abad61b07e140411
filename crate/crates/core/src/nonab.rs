//! Non-abelian group cohomology of finite groups by enumeration: fixed
//! points, `H^1` as a pointed set, the six-term exact sequence, and twisted
//! forms of bilinear forms over a quadratic extension of finite fields.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub const DEFAULT_GUARD: u128 = 1 << 22;

/// A finite group on `0..n` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(invalid("a group needs at least one element"));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(invalid(
                "multiplication table must be n x n with entries < n",
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| invalid("no identity element"))?;
        let mut inverse = vec![0; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| invalid(format!("element {x} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(invalid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            table,
            identity,
            inverse,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(table).expect("cyclic table is a group")
    }

    /// Permutations of `0..n` in lexicographic order, `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n > 6 {
            return Err(invalid("symmetric groups are limited to n <= 6"));
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut cur: Vec<usize> = (0..n).collect();
        while next_permutation(&mut cur) {
            perms.push(cur.clone());
        }
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index[&t.iter().map(|&i| s[i]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::new(table)
    }

    /// `G × H` with `(g, h) ↦ g · |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::new(table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Generators chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for x in 0..self.order() {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&self.identity)
            && s.iter()
                .all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        self.is_subgroup(set)
            && (0..self.order()).all(|g| {
                s.iter()
                    .all(|&a| s.contains(&self.mul(self.mul(g, a), self.inv(g))))
            })
    }

    /// The subgroup on `set` re-indexed by sorted position, and the
    /// embedding into `self`.
    pub fn subgroup(&self, set: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(set) {
            return Err(invalid("not a subgroup"));
        }
        let elems: Vec<usize> = set
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        Ok((FiniteGroup::new(table)?, elems))
    }

    /// `G / N` with cosets ordered by their smallest element, and the
    /// projection.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(invalid("subgroup is not normal"));
        }
        let n = self.order();
        let mut proj = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if proj[g] == usize::MAX {
                for &a in normal {
                    proj[self.mul(g, a)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul(a, b)]).collect())
            .collect();
        Ok((FiniteGroup::new(table)?, proj))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `G` acting on `A` by automorphisms; `act[s][a] = s(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    g: FiniteGroup,
    a: FiniteGroup,
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(g: FiniteGroup, a: FiniteGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        let (gn, an) = (g.order(), a.order());
        if act.len() != gn
            || act
                .iter()
                .any(|r| r.len() != an || r.iter().any(|&x| x >= an))
        {
            return Err(invalid("action table must be |G| x |A| with entries < |A|"));
        }
        for (s, row) in act.iter().enumerate() {
            if row.iter().collect::<BTreeSet<_>>().len() != an {
                return Err(invalid(format!("element {s} does not act bijectively")));
            }
            for x in 0..an {
                for y in 0..an {
                    if row[a.mul(x, y)] != a.mul(row[x], row[y]) {
                        return Err(invalid(format!(
                            "element {s} does not act by a homomorphism"
                        )));
                    }
                }
            }
        }
        if (0..an).any(|x| act[g.identity()][x] != x) {
            return Err(invalid("identity must act trivially"));
        }
        for s in 0..gn {
            for t in 0..gn {
                let st = g.mul(s, t);
                if (0..an).any(|x| act[st][x] != act[s][act[t][x]]) {
                    return Err(invalid(format!("(st)(a) != s(t(a)) for s={s}, t={t}")));
                }
            }
        }
        Ok(GroupAction { g, a, act })
    }

    pub fn trivial(g: FiniteGroup, a: FiniteGroup) -> Self {
        let act = vec![(0..a.order()).collect(); g.order()];
        Self::new(g, a, act).expect("trivial action is valid")
    }

    /// `G` acting on itself by conjugation.
    pub fn conjugation(g: FiniteGroup) -> Self {
        let n = g.order();
        let act = (0..n)
            .map(|s| (0..n).map(|x| g.mul(g.mul(s, x), g.inv(s))).collect())
            .collect();
        Self::new(g.clone(), g, act).expect("conjugation is an action")
    }

    /// `Z/2` acting on an abelian group by inversion.
    pub fn inversion(a: FiniteGroup) -> Result<Self> {
        if !a.is_abelian() {
            return Err(invalid(
                "inversion is an automorphism only for abelian groups",
            ));
        }
        let id: Vec<usize> = (0..a.order()).collect();
        let inv: Vec<usize> = (0..a.order()).map(|x| a.inv(x)).collect();
        Self::new(FiniteGroup::cyclic(2), a, vec![id, inv])
    }

    pub fn acting(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn apply(&self, s: usize, x: usize) -> usize {
        self.act[s][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    /// Restriction to a `G`-stable subgroup, re-indexed as in
    /// [`FiniteGroup::subgroup`].
    pub fn restrict(&self, set: &[usize]) -> Result<(GroupAction, Vec<usize>)> {
        let (sub, emb) = self.a.subgroup(set)?;
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let act = self
            .act
            .iter()
            .map(|row| {
                emb.iter()
                    .map(|x| {
                        pos.get(&row[*x])
                            .copied()
                            .ok_or_else(|| Error::Incompatible("subgroup is not G-stable".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((GroupAction::new(self.g.clone(), sub, act)?, emb))
    }

    /// Induced action on `A / N`.
    pub fn quotient(&self, normal: &[usize]) -> Result<(GroupAction, Vec<usize>)> {
        let (q, proj) = self.a.quotient(normal)?;
        let mut act = vec![vec![usize::MAX; q.order()]; self.g.order()];
        for (s, row) in self.act.iter().enumerate() {
            for (x, &sx) in row.iter().enumerate() {
                let slot = &mut act[s][proj[x]];
                if *slot != usize::MAX && *slot != proj[sx] {
                    return Err(Error::Incompatible(
                        "action does not descend to the quotient".into(),
                    ));
                }
                *slot = proj[sx];
            }
        }
        Ok((GroupAction::new(self.g.clone(), q, act)?, proj))
    }
}

/// `s ↦ a_s`, indexed by the elements of `G`.
pub type Cocycle = Vec<usize>;

/// `a_{st} = a_s · s(a_t)` for all pairs.
pub fn is_cocycle(action: &GroupAction, c: &[usize]) -> bool {
    let (g, a) = (&action.g, &action.a);
    c.len() == g.order()
        && (0..g.order())
            .all(|s| (0..g.order()).all(|t| c[g.mul(s, t)] == a.mul(c[s], action.apply(s, c[t]))))
}

/// `a ∈ A` acting on cocycles by `a_s ↦ a^{-1} a_s s(a)`.
pub fn twist_cocycle(action: &GroupAction, x: usize, c: &[usize]) -> Cocycle {
    let a = &action.a;
    c.iter()
        .enumerate()
        .map(|(s, &cs)| a.mul(a.mul(a.inv(x), cs), action.apply(s, x)))
        .collect()
}

/// `A^G`, sorted.
pub fn h0(action: &GroupAction) -> Vec<usize> {
    let fixed: Vec<usize> = (0..action.a.order())
        .filter(|&x| (0..action.g.order()).all(|s| action.apply(s, x) == x))
        .collect();
    debug_assert!(action.a.is_subgroup(&fixed));
    fixed
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Result {
    /// All cocycles, lexicographically sorted.
    pub cocycles: Vec<Cocycle>,
    /// Classes as sorted indices into `cocycles`, ordered by first member.
    pub classes: Vec<Vec<usize>>,
    /// Class holding the unit cocycle.
    pub distinguished: usize,
}

impl H1Result {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of a cocycle.
    pub fn class_of(&self, c: &[usize]) -> Option<usize> {
        let i = self
            .cocycles
            .binary_search_by(|x| x.as_slice().cmp(c))
            .ok()?;
        self.classes
            .iter()
            .position(|cl| cl.binary_search(&i).is_ok())
    }
}

/// Extends values on the generators to a map `G → A` by
/// `a_{gs} = a_g · g(a_s)`; `None` if the values are inconsistent or the
/// result is not a cocycle.
fn extend_from_generators(action: &GroupAction, values: &[usize]) -> Option<Cocycle> {
    let (g, a) = (&action.g, &action.a);
    let mut c = vec![usize::MAX; g.order()];
    c[g.identity()] = a.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(s) = queue.pop_front() {
        for (&gen, &v) in g.generators().iter().zip(values) {
            let t = g.mul(gen, s);
            let val = a.mul(v, action.apply(gen, c[s]));
            if c[t] == usize::MAX {
                c[t] = val;
                queue.push_back(t);
            } else if c[t] != val {
                return None;
            }
        }
    }
    is_cocycle(action, &c).then_some(c)
}

/// `H^1(G, A)` by enumerating values on generators.
pub fn h1(action: &GroupAction, guard: u128) -> Result<H1Result> {
    let gens = action.g.generators().len();
    let an = action.a.order();
    let required = (an as u128).saturating_pow(gens as u32);
    if required > guard {
        return Err(Error::GuardExceeded {
            what: "cocycle enumeration".into(),
            required,
            guard,
        });
    }
    let mut cocycles: Vec<Cocycle> = (0..required as usize)
        .into_par_iter()
        .filter_map(|code| {
            let mut code = code;
            let values: Vec<usize> = (0..gens)
                .map(|_| {
                    let v = code % an;
                    code /= an;
                    v
                })
                .collect();
            extend_from_generators(action, &values)
        })
        .collect();
    cocycles.sort();
    cocycles.dedup();
    let index: HashMap<&[usize], usize> = cocycles
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let mut class_of = vec![usize::MAX; cocycles.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..cocycles.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for x in 0..an {
            let t = twist_cocycle(action, x, &cocycles[i]);
            let j = *index
                .get(t.as_slice())
                .expect("twisted cocycle is a cocycle");
            orbit.insert(j);
        }
        for &j in &orbit {
            debug_assert_eq!(class_of[j], usize::MAX, "orbits must partition");
            class_of[j] = classes.len();
        }
        classes.push(orbit.into_iter().collect());
    }
    let unit: Cocycle = vec![action.a.identity(); action.g.order()];
    let distinguished = class_of[index[unit.as_slice()]];
    Ok(H1Result {
        cocycles,
        classes,
        distinguished,
    })
}

/// Exactness at one term of the sequence: image of the incoming map versus
/// the fibre of the outgoing map over the distinguished point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Joint {
    pub term: String,
    pub image: Vec<usize>,
    pub kernel: Vec<usize>,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub h0_a: Vec<usize>,
    pub h0_b: Vec<usize>,
    pub h0_c: Vec<usize>,
    pub h1_sizes: [usize; 3],
    /// `δ(c)` as a class of `H^1(G, A)`, for each `c ∈ C^G`.
    pub connecting: Vec<usize>,
    pub maps_well_defined: bool,
    pub joints: Vec<Joint>,
    pub exact: bool,
}

fn fibre_and_image(term: &str, image: BTreeSet<usize>, kernel: BTreeSet<usize>) -> Joint {
    Joint {
        term: term.into(),
        exact: image == kernel,
        image: image.into_iter().collect(),
        kernel: kernel.into_iter().collect(),
    }
}

/// Checks exactness of
/// `1 → A^G → B^G → C^G → H^1(A) → H^1(B) → H^1(C)` for `A ⊴ B`,
/// `C = B / A`.
pub fn pointed_exact_sequence_check(
    b_action: &GroupAction,
    normal: &[usize],
    guard: u128,
) -> Result<ExactSequenceReport> {
    if !b_action.a.is_normal(normal) {
        return Err(invalid("A is not a normal subgroup of B"));
    }
    let (a_action, emb) = b_action.restrict(normal)?;
    let (c_action, proj) = b_action.quotient(normal)?;
    let (bg, gg) = (&b_action.a, &b_action.g);
    let pos_a: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    let h0_a = h0(&a_action);
    let h0_b = h0(b_action);
    let h0_c = h0(&c_action);
    let h1_a = h1(&a_action, guard)?;
    let h1_b = h1(b_action, guard)?;
    let h1_c = h1(&c_action, guard)?;

    // a cocycle-level map is well defined on classes if each class lands in
    // a single class
    let mut well_defined = true;
    let mut push = |src: &H1Result, dst: &H1Result, f: &dyn Fn(usize) -> usize| -> Vec<usize> {
        src.classes
            .iter()
            .map(|cl| {
                let targets: BTreeSet<usize> = cl
                    .iter()
                    .map(|&i| {
                        let img: Vec<usize> = src.cocycles[i].iter().map(|&x| f(x)).collect();
                        dst.class_of(&img).expect("image of a cocycle is a cocycle")
                    })
                    .collect();
                well_defined &= targets.len() == 1;
                *targets.iter().next().unwrap()
            })
            .collect()
    };
    let h1_ab = push(&h1_a, &h1_b, &|x| emb[x]);
    let h1_bc = push(&h1_b, &h1_c, &|x| proj[x]);

    // δ(c) = class of s ↦ b^{-1} s(b), for every lift b of c
    let mut connecting = Vec::with_capacity(h0_c.len());
    for &c in &h0_c {
        let mut classes = BTreeSet::new();
        for b in (0..bg.order()).filter(|&b| proj[b] == c) {
            let coc: Vec<usize> = (0..gg.order())
                .map(|s| {
                    let v = bg.mul(bg.inv(b), b_action.apply(s, b));
                    pos_a
                        .get(&v)
                        .copied()
                        .ok_or_else(|| Error::Incompatible("b^{-1} s(b) is not in A".into()))
                })
                .collect::<Result<_>>()?;
            classes.insert(h1_a.class_of(&coc).expect("δ(c) is a cocycle"));
        }
        well_defined &= classes.len() == 1;
        connecting.push(*classes.iter().next().unwrap());
    }

    let b_id = bg.identity();
    let c_id = c_action.a.identity();
    let joints = vec![
        fibre_and_image(
            "H0(A)",
            [a_action.a.identity()].into(),
            h0_a.iter().copied().filter(|&x| emb[x] == b_id).collect(),
        ),
        fibre_and_image(
            "H0(B)",
            h0_a.iter().map(|&x| emb[x]).collect(),
            h0_b.iter().copied().filter(|&x| proj[x] == c_id).collect(),
        ),
        fibre_and_image(
            "H0(C)",
            h0_b.iter().map(|&x| proj[x]).collect(),
            h0_c.iter()
                .zip(&connecting)
                .filter(|(_, &d)| d == h1_a.distinguished)
                .map(|(&c, _)| c)
                .collect(),
        ),
        fibre_and_image(
            "H1(A)",
            connecting.iter().copied().collect(),
            (0..h1_a.len())
                .filter(|&i| h1_ab[i] == h1_b.distinguished)
                .collect(),
        ),
        fibre_and_image(
            "H1(B)",
            h1_ab.iter().copied().collect(),
            (0..h1_b.len())
                .filter(|&i| h1_bc[i] == h1_c.distinguished)
                .collect(),
        ),
    ];
    let exact = well_defined && joints.iter().all(|j| j.exact);
    Ok(ExactSequenceReport {
        h0_a,
        h0_b,
        h0_c,
        h1_sizes: [h1_a.len(), h1_b.len(), h1_c.len()],
        connecting,
        maps_well_defined: well_defined,
        joints,
        exact,
    })
}

// ---------------------------------------------------------------------------
// Twisted forms over F_p ⊂ F_{p^2}

/// `F_{p^2} = F_p(√r)` for the least non-square `r`; `a + b√r` is stored as
/// `a + p b`, so `F_p` is `0..p`.
#[derive(Debug, Clone)]
pub struct QuadraticField {
    p: usize,
    nonsquare: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    inv: Vec<usize>,
    frob: Vec<usize>,
}

impl QuadraticField {
    pub fn new(p: usize) -> Result<Self> {
        if !(3..=13).contains(&p) || (2..p).any(|d| p.is_multiple_of(d)) {
            return Err(invalid(format!("p must be an odd prime <= 13, got {p}")));
        }
        let nonsquare = (2..p)
            .find(|&r| (1..p).all(|x| x * x % p != r))
            .expect("odd primes have non-squares");
        let q = p * p;
        let split = |x: usize| (x % p, x / p);
        let join = |a: usize, b: usize| a % p + p * (b % p);
        let add = (0..q)
            .map(|x| {
                (0..q)
                    .map(|y| {
                        let ((a, b), (c, d)) = (split(x), split(y));
                        join(a + c, b + d)
                    })
                    .collect()
            })
            .collect();
        let mul: Vec<Vec<usize>> = (0..q)
            .map(|x| {
                (0..q)
                    .map(|y| {
                        let ((a, b), (c, d)) = (split(x), split(y));
                        join(a * c + nonsquare * b * d, a * d + b * c)
                    })
                    .collect()
            })
            .collect();
        let neg = (0..q)
            .map(|x| {
                let (a, b) = split(x);
                join(p - a, p - b)
            })
            .collect();
        let inv = (0..q)
            .map(|x| {
                if x == 0 {
                    0
                } else {
                    (1..q).find(|&y| mul[x][y] == 1).unwrap()
                }
            })
            .collect();
        let frob = (0..q)
            .map(|x| {
                let (a, b) = split(x);
                join(a, p - b)
            })
            .collect();
        Ok(QuadraticField {
            p,
            nonsquare,
            add,
            mul,
            neg,
            inv,
            frob,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn order(&self) -> usize {
        self.p * self.p
    }

    pub fn nonsquare(&self) -> usize {
        self.nonsquare
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// The generator `x ↦ x^p` of the Galois group.
    pub fn frobenius(&self, x: usize) -> usize {
        self.frob[x]
    }
}

/// Square matrix over a [`QuadraticField`], row-major.
pub type FMatrix = Vec<usize>;

struct MatOps<'a> {
    f: &'a QuadraticField,
    n: usize,
}

impl MatOps<'_> {
    fn mul(&self, a: &[usize], b: &[usize]) -> FMatrix {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = self.f.add(acc, self.f.mul(a[i * n + k], b[k * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
        out
    }

    fn transpose(&self, a: &[usize]) -> FMatrix {
        let n = self.n;
        (0..n * n).map(|i| a[(i % n) * n + i / n]).collect()
    }

    fn frob(&self, a: &[usize]) -> FMatrix {
        a.iter().map(|&x| self.f.frobenius(x)).collect()
    }

    /// `g^T B g`.
    fn pullback(&self, b: &[usize], g: &[usize]) -> FMatrix {
        self.mul(&self.mul(&self.transpose(g), b), g)
    }

    fn inverse(&self, a: &[usize]) -> Option<FMatrix> {
        let n = self.n;
        let f = self.f;
        let mut m: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut row = a[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| usize::from(i == j)));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != 0)?;
            m.swap(col, piv);
            let s = f.inv(m[col][col]);
            for x in m[col].iter_mut() {
                *x = f.mul(*x, s);
            }
            for r in 0..n {
                if r != col && m[r][col] != 0 {
                    let c = f.neg(m[r][col]);
                    for k in 0..2 * n {
                        m[r][k] = f.add(m[r][k], f.mul(c, m[col][k]));
                    }
                }
            }
        }
        Some(m.into_iter().flat_map(|r| r[n..].to_vec()).collect())
    }

    fn is_rational(&self, a: &[usize]) -> bool {
        a.iter().all(|&x| x < self.f.p)
    }

    /// All invertible `g` with `g^T B g = B'` for every pair, by choosing
    /// columns left to right and checking the leading block.
    fn isometries(&self, from: &[FMatrix], to: &[FMatrix], field_size: usize) -> Vec<FMatrix> {
        let n = self.n;
        let mut out = Vec::new();
        let mut cols: Vec<Vec<usize>> = Vec::with_capacity(n);
        self.extend_columns(from, to, field_size, &mut cols, &mut out);
        debug_assert!(out.iter().all(|g| g.len() == n * n));
        out
    }

    fn extend_columns(
        &self,
        from: &[FMatrix],
        to: &[FMatrix],
        field_size: usize,
        cols: &mut Vec<Vec<usize>>,
        out: &mut Vec<FMatrix>,
    ) {
        let n = self.n;
        if cols.len() == n {
            let g: FMatrix = (0..n * n).map(|i| cols[i % n][i / n]).collect();
            if self.inverse(&g).is_some() {
                out.push(g);
            }
            return;
        }
        let j = cols.len();
        let total = field_size.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<usize> = (0..n)
                .map(|_| {
                    let x = c % field_size;
                    c /= field_size;
                    x
                })
                .collect();
            cols.push(v);
            let ok = from.iter().zip(to).all(|(b, b2)| {
                (0..=j).all(|i| {
                    self.form(b, &cols[i], &cols[j]) == b2[i * n + j]
                        && self.form(b, &cols[j], &cols[i]) == b2[j * n + i]
                })
            });
            if ok {
                self.extend_columns(from, to, field_size, cols, out);
            }
            cols.pop();
        }
    }

    /// `u^T B v`.
    fn form(&self, b: &[usize], u: &[usize], v: &[usize]) -> usize {
        let n = self.n;
        let f = self.f;
        let mut acc = 0;
        for i in 0..n {
            for j in 0..n {
                acc = f.add(acc, f.mul(u[i], f.mul(b[i * n + j], v[j])));
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedFormsReport {
    pub p: usize,
    pub dim: usize,
    pub automorphism_group_order: usize,
    pub h1_classes: usize,
    /// Tuples of forms over `F_p` isomorphic to `T` over `F_{p^2}`.
    pub twisted_forms: usize,
    pub k_classes: usize,
    pub theta_well_defined: bool,
    pub theta_injective: bool,
    pub theta_surjective: bool,
    /// Every `H^1` class is realised by a rational form via `f^{-1} σ(f) = p`.
    pub descent_inverse: bool,
    /// `θ` of each `k`-class, as an `H^1` class index.
    pub theta: Vec<usize>,
    /// Representative tuple of each `k`-class, entries in `0..p`.
    pub representatives: Vec<Vec<Vec<Vec<usize>>>>,
}

impl TwistedFormsReport {
    pub fn bijective(&self) -> bool {
        self.theta_well_defined
            && self.theta_injective
            && self.theta_surjective
            && self.descent_inverse
            && self.k_classes == self.h1_classes
    }
}

/// Twisted forms of `(V, T)` for `V = F_p^dim` and `T` a list of bilinear
/// forms over `F_p`, compared with `H^1(Gal(F_{p^2}/F_p), Aut_T)`.
pub fn twisted_forms(
    p: usize,
    dim: usize,
    tensors: &[Vec<Vec<i64>>],
    guard: u128,
) -> Result<TwistedFormsReport> {
    let field = QuadraticField::new(p)?;
    if dim == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let ops = MatOps { f: &field, n: dim };
    let q = field.order();
    let gl_size = (q as u128).saturating_pow((dim * dim) as u32);
    let candidates = (p as u128).saturating_pow((dim * dim * tensors.len()) as u32);
    for (what, required) in [("GL(V) over K", gl_size), ("forms over k", candidates)] {
        if required > guard {
            return Err(Error::GuardExceeded {
                what: what.into(),
                required,
                guard,
            });
        }
    }
    let t: Vec<FMatrix> = tensors
        .iter()
        .map(|m| {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(invalid(format!("tensors must be {dim}x{dim}")));
            }
            Ok(m.iter()
                .flatten()
                .map(|&x| x.rem_euclid(p as i64) as usize)
                .collect())
        })
        .collect::<Result<_>>()?;

    // A_{T,K} as an abstract group with the Frobenius action
    let mut auts = ops.isometries(&t, &t, q);
    auts.sort();
    let index: HashMap<&FMatrix, usize> = auts.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let table = auts
        .par_iter()
        .map(|x| auts.iter().map(|y| index[&ops.mul(x, y)]).collect())
        .collect();
    let a_group = FiniteGroup::new(table)?;
    let frob_row: Vec<usize> = auts.iter().map(|g| index[&ops.frob(g)]).collect();
    let action = GroupAction::new(
        FiniteGroup::cyclic(2),
        a_group,
        vec![(0..auts.len()).collect(), frob_row],
    )?;
    let h1_res = h1(&action, guard)?;
    let class_of_p = |pm: &FMatrix| -> usize {
        let c = vec![action.target().identity(), index[pm]];
        h1_res.class_of(&c).expect("f^{-1} σ(f) is a cocycle")
    };

    // rational tuples isomorphic to T over K, with all their isomorphisms
    let slots = dim * dim * t.len();
    let twisted: Vec<(Vec<FMatrix>, Vec<FMatrix>)> = (0..candidates as usize)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let flat: Vec<usize> = (0..slots)
                .map(|_| {
                    let x = c % p;
                    c /= p;
                    x
                })
                .collect();
            let forms: Vec<FMatrix> = flat.chunks(dim * dim).map(<[usize]>::to_vec).collect();
            // f with f^T T' f = T
            let isos = ops.isometries(&forms, &t, q);
            (!isos.is_empty()).then_some((forms, isos))
        })
        .collect();

    // k-classes under h ∈ GL(V)(k): T' ↦ h^T T' h
    let gl_k: Vec<FMatrix> = (0..(p as u128).pow((dim * dim) as u32) as usize)
        .map(|code| {
            let mut c = code;
            (0..dim * dim)
                .map(|_| {
                    let x = c % p;
                    c /= p;
                    x
                })
                .collect::<FMatrix>()
        })
        .filter(|g| ops.inverse(g).is_some())
        .collect();
    let form_index: HashMap<&Vec<FMatrix>, usize> = twisted
        .iter()
        .enumerate()
        .map(|(i, (f, _))| (f, i))
        .collect();
    let mut k_class = vec![usize::MAX; twisted.len()];
    let mut reps = Vec::new();
    for i in 0..twisted.len() {
        if k_class[i] != usize::MAX {
            continue;
        }
        for h in &gl_k {
            let moved: Vec<FMatrix> = twisted[i].0.iter().map(|b| ops.pullback(b, h)).collect();
            k_class[form_index[&moved]] = reps.len();
        }
        reps.push(i);
    }

    // θ on every form and every isomorphism
    let mut theta_sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); reps.len()];
    for (i, (_, isos)) in twisted.iter().enumerate() {
        for f in isos {
            let pm = ops.mul(
                &ops.inverse(f).expect("isometries are invertible"),
                &ops.frob(f),
            );
            theta_sets[k_class[i]].insert(class_of_p(&pm));
        }
    }
    let theta_well_defined = theta_sets.iter().all(|s| s.len() == 1);
    let theta: Vec<usize> = theta_sets
        .iter()
        .map(|s| *s.iter().next().unwrap())
        .collect();
    let hit: BTreeSet<usize> = theta.iter().copied().collect();
    let theta_injective = hit.len() == theta.len();
    let theta_surjective = hit.len() == h1_res.len();

    // descent: for a cocycle p_σ find f with f^{-1} σ(f) = p_σ; then
    // f^{-T} T f^{-1} is rational and θ sends its class back
    let gl_k_big: Vec<FMatrix> = (0..gl_size as usize)
        .into_par_iter()
        .map(|code| {
            let mut c = code;
            (0..dim * dim)
                .map(|_| {
                    let x = c % q;
                    c /= q;
                    x
                })
                .collect::<FMatrix>()
        })
        .filter(|g| ops.inverse(g).is_some())
        .collect();
    let descent_inverse = h1_res.classes.iter().enumerate().all(|(ci, cl)| {
        let pm = &auts[h1_res.cocycles[cl[0]][1]];
        gl_k_big.iter().any(|f| {
            let finv = ops.inverse(f).expect("invertible");
            if ops.mul(&finv, &ops.frob(f)) != *pm {
                return false;
            }
            let forms: Vec<FMatrix> = t.iter().map(|b| ops.pullback(b, &finv)).collect();
            forms.iter().all(|b| ops.is_rational(b))
                && form_index
                    .get(&forms)
                    .is_some_and(|&i| theta[k_class[i]] == ci)
        })
    });

    let representatives = reps
        .iter()
        .map(|&i| {
            twisted[i]
                .0
                .iter()
                .map(|b| b.chunks(dim).map(<[usize]>::to_vec).collect())
                .collect()
        })
        .collect();
    Ok(TwistedFormsReport {
        p,
        dim,
        automorphism_group_order: auts.len(),
        h1_classes: h1_res.len(),
        twisted_forms: twisted.len(),
        k_classes: reps.len(),
        theta_well_defined,
        theta_injective,
        theta_surjective,
        descent_inverse,
        theta,
        representatives,
    })
}

/// `θ(f) = f^{-1} σ(f)` for an explicit `f ∈ GL(V)(F_{p^2})`, entries given
/// as `a + p b` for `a + b√r`.
pub fn theta_cocycle(p: usize, f: &[usize]) -> Result<FMatrix> {
    let field = QuadraticField::new(p)?;
    let dim = (f.len() as f64).sqrt() as usize;
    if dim * dim != f.len() || f.iter().any(|&x| x >= field.order()) {
        return Err(invalid("expected a square matrix over F_{p^2}"));
    }
    let ops = MatOps { f: &field, n: dim };
    let finv = ops
        .inverse(f)
        .ok_or_else(|| invalid("matrix is singular"))?;
    Ok(ops.mul(&finv, &ops.frob(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_constructions() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.generators().len(), 2);
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert_eq!(v4.generators(), &[1, 2]);
        let (q, proj) = FiniteGroup::cyclic(4).quotient(&[0, 2]).unwrap();
        assert_eq!((q.order(), proj), (2, vec![0, 1, 0, 1]));
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![0, 0]]).is_err());
        assert!(s3.quotient(&[0, 1]).is_err());
    }

    #[test]
    fn h0_examples() {
        let z3 = FiniteGroup::cyclic(3);
        let triv = GroupAction::trivial(FiniteGroup::cyclic(2), z3.clone());
        assert_eq!(h0(&triv), vec![0, 1, 2]);
        let inv = GroupAction::inversion(z3).unwrap();
        assert_eq!(h0(&inv), vec![0]);
        let conj = GroupAction::conjugation(FiniteGroup::symmetric(3).unwrap());
        assert_eq!(h0(&conj), vec![0]);
    }

    #[test]
    fn h1_examples() {
        let inv = GroupAction::inversion(FiniteGroup::cyclic(3)).unwrap();
        let r = h1(&inv, DEFAULT_GUARD).unwrap();
        assert_eq!((r.cocycles.len(), r.len()), (3, 1));
        let triv = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        let r = h1(&triv, DEFAULT_GUARD).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.class_of(&[0, 0]), Some(r.distinguished));
        let r = h1(
            &GroupAction::trivial(FiniteGroup::trivial(), FiniteGroup::cyclic(5)),
            DEFAULT_GUARD,
        )
        .unwrap();
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn h1_non_abelian_coefficients() {
        // trivial action: H^1 = Hom(Z/2, S3) / conjugation = {1, transpositions}
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let r = h1(
            &GroupAction::trivial(FiniteGroup::cyclic(2), s3),
            DEFAULT_GUARD,
        )
        .unwrap();
        assert_eq!((r.cocycles.len(), r.len()), (4, 2));
    }

    #[test]
    fn h1_guard() {
        let a = FiniteGroup::cyclic(7);
        let g = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        let err = h1(&GroupAction::trivial(g, a), 10).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { required: 49, .. }));
    }

    #[test]
    fn exact_sequence_z4() {
        let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
        let r = pointed_exact_sequence_check(&act, &[0, 2], DEFAULT_GUARD).unwrap();
        assert!(r.exact, "{r:?}");
        assert_eq!(r.h1_sizes, [2, 2, 2]);
        // the generator of C lifts to 1 ∈ Z/4 and the trivial action gives δ = 0
        assert_eq!(r.connecting, vec![0, 0]);
    }

    #[test]
    fn exact_sequence_edge_cases() {
        let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
        assert!(
            pointed_exact_sequence_check(&act, &[0, 1, 2, 3], DEFAULT_GUARD)
                .unwrap()
                .exact
        );
        let split = GroupAction::trivial(
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)),
        );
        assert!(
            pointed_exact_sequence_check(&split, &[0, 2], DEFAULT_GUARD)
                .unwrap()
                .exact
        );
        let s3 = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::symmetric(3).unwrap());
        assert!(pointed_exact_sequence_check(&s3, &[0, 1], DEFAULT_GUARD).is_err());
    }

    #[test]
    fn exact_sequence_with_inversion() {
        let act = GroupAction::inversion(FiniteGroup::cyclic(4)).unwrap();
        let r = pointed_exact_sequence_check(&act, &[0, 2], DEFAULT_GUARD).unwrap();
        assert!(r.exact, "{r:?}");
    }

    #[test]
    fn field_arithmetic() {
        let f = QuadraticField::new(3).unwrap();
        assert_eq!(f.order(), 9);
        for x in 1..9 {
            assert_eq!(f.mul(x, f.inv(x)), 1);
            // x^p = σ(x)
            assert_eq!(f.mul(f.mul(x, x), x), f.frobenius(x));
        }
        assert!(QuadraticField::new(4).is_err());
    }

    #[test]
    fn twisted_forms_no_tensors() {
        let r = twisted_forms(3, 1, &[], DEFAULT_GUARD).unwrap();
        assert_eq!(
            (r.automorphism_group_order, r.h1_classes, r.k_classes),
            (8, 1, 1)
        );
        assert!(r.bijective());
    }

    #[test]
    fn twisted_symmetric_forms() {
        let r = twisted_forms(3, 2, &[vec![vec![1, 0], vec![0, 1]]], DEFAULT_GUARD).unwrap();
        assert_eq!(r.k_classes, 2);
        assert_eq!(r.h1_classes, 2);
        assert!(r.bijective(), "{r:?}");
    }

    #[test]
    fn identity_gives_unit_cocycle() {
        assert_eq!(theta_cocycle(3, &[1, 0, 0, 1]).unwrap(), vec![1, 0, 0, 1]);
    }
}
