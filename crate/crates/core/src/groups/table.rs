//! Enumerated finite groups.
//!
//! A [`GroupTable`] is built by breadth-first closure from a generating set.
//! Elements get ordinals in discovery order; each carries a canonical
//! encoding (row-major residues for matrices, zero-based images for
//! permutations, coordinates for abelian groups) used for hashing and for
//! deterministic ordering.

use std::collections::{HashMap, VecDeque};
use std::hash::{BuildHasherDefault, Hasher};

use serde::{Deserialize, Serialize};

use super::matrix::{self, Matrix};
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::modring::Modulus;

pub const DEFAULT_ELEMENT_BUDGET: u64 = 100_000;

/// Full Cayley tables are cached only up to this order.
pub const CAYLEY_CACHE_LIMIT: usize = 5000;

#[derive(Default)]
pub(crate) struct FxHasher(u64);

impl Hasher for FxHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u32(&mut self, v: u32) {
        self.write_u64(v as u64);
    }

    fn write_usize(&mut self, v: usize) {
        self.write_u64(v as u64);
    }

    #[inline]
    fn write_u64(&mut self, v: u64) {
        self.0 = (self.0.rotate_left(5) ^ v).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
}

pub(crate) type FxBuild = BuildHasherDefault<FxHasher>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sl,
    Sp,
    Alt,
    Sym,
    Tree,
    Abelian,
    Quaternion,
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::Sp => "sp",
            Family::Alt => "alt",
            Family::Sym => "sym",
            Family::Tree => "tree",
            Family::Abelian => "abelian",
            Family::Quaternion => "quaternion",
            Family::Custom => "custom",
        }
    }
}

/// Everything needed to rebuild a table deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factors: Option<Vec<u32>>,
    pub order: u64,
    pub generator_count: usize,
}

impl GroupDescriptor {
    pub fn label(&self) -> String {
        match self.family {
            Family::Sl => format!(
                "SL_{}(Z/{}^{})",
                self.k.unwrap_or(0),
                self.p.unwrap_or(0),
                self.n.unwrap_or(0)
            ),
            Family::Sp => format!(
                "Sp_{}(Z/{}^{})",
                2 * self.k.unwrap_or(0),
                self.p.unwrap_or(0),
                self.n.unwrap_or(0)
            ),
            Family::Alt => format!("Alt_{}", self.k.unwrap_or(0)),
            Family::Sym => format!("Sym_{}", self.k.unwrap_or(0)),
            Family::Tree => format!("F_{}(k={})", self.level.unwrap_or(0), self.k.unwrap_or(0)),
            Family::Abelian => {
                let f = self.factors.clone().unwrap_or_default();
                if f.is_empty() {
                    "trivial".to_string()
                } else {
                    f.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" x ")
                }
            }
            Family::Quaternion => "Q8".to_string(),
            Family::Custom => format!("custom(order {})", self.order),
        }
    }

    /// Rebuilds the table this descriptor was produced from.
    pub fn rebuild(&self, budget: u64) -> Result<GroupTable> {
        let need = |v: Option<u64>, name: &str| {
            v.ok_or_else(|| Error::InvalidParameters(format!("descriptor lacks {name}")))
        };
        match self.family {
            Family::Sl => build_sl(
                need(self.k.map(u64::from), "k")? as usize,
                need(self.p, "p")?,
                need(self.n.map(u64::from), "n")? as u32,
                budget,
            ),
            Family::Sp => build_sp(
                need(self.k.map(u64::from), "k")? as usize,
                need(self.p, "p")?,
                need(self.n.map(u64::from), "n")? as u32,
                budget,
            ),
            Family::Alt => build_alt(need(self.k.map(u64::from), "k")? as usize, budget),
            Family::Sym => build_sym(need(self.k.map(u64::from), "k")? as usize, budget),
            Family::Tree => build_tree_level(
                need(self.k.map(u64::from), "k")? as usize,
                need(self.level.map(u64::from), "level")? as u32,
                budget,
            ),
            Family::Abelian => build_abelian(&self.factors.clone().unwrap_or_default(), budget),
            Family::Quaternion => build_quaternion(),
            Family::Custom => Err(Error::UnsupportedFamily("custom".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementKind {
    Matrix { dim: usize, modulus: Modulus },
    Perm { degree: usize },
    Abelian { factors: Vec<u32> },
}

impl ElementKind {
    fn stride(&self) -> usize {
        match self {
            ElementKind::Matrix { dim, .. } => dim * dim,
            ElementKind::Perm { degree } => *degree,
            ElementKind::Abelian { factors } => factors.len(),
        }
    }

    fn compose(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        match self {
            ElementKind::Matrix { dim, modulus } => matrix::mul_into(*dim, *modulus, a, b, out),
            ElementKind::Perm { .. } => {
                for (o, &x) in out.iter_mut().zip(b) {
                    *o = a[x as usize];
                }
            }
            ElementKind::Abelian { factors } => {
                for i in 0..factors.len() {
                    out[i] = (a[i] + b[i]) % factors[i];
                }
            }
        }
    }

    fn invert(&self, a: &[u32]) -> Vec<u32> {
        match self {
            ElementKind::Matrix { dim, modulus } => {
                let m = Matrix::from_entries(*dim, *modulus, a.to_vec());
                m.inverse().expect("group elements are invertible").entries().to_vec()
            }
            ElementKind::Perm { .. } => {
                let mut inv = vec![0u32; a.len()];
                for (i, &x) in a.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                inv
            }
            ElementKind::Abelian { factors } => {
                a.iter().zip(factors).map(|(&x, &f)| (f - x) % f).collect()
            }
        }
    }

    fn identity(&self) -> Vec<u32> {
        match self {
            ElementKind::Matrix { dim, modulus } => {
                Matrix::identity(*dim, *modulus).entries().to_vec()
            }
            ElementKind::Perm { degree } => (0..*degree as u32).collect(),
            ElementKind::Abelian { factors } => vec![0; factors.len()],
        }
    }
}

/// An enumerated finite group with multiplication and inversion oracles.
pub struct GroupTable {
    descriptor: GroupDescriptor,
    kind: ElementKind,
    stride: usize,
    data: Vec<u32>,
    index: HashMap<Box<[u32]>, u32, FxBuild>,
    inverses: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
    cayley: Option<Vec<u32>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("group", &self.descriptor.label())
            .field("order", &self.order())
            .finish()
    }
}

impl GroupTable {
    /// Closure of `generators` under multiplication.
    pub fn from_generators(
        kind: ElementKind,
        generators: Vec<Vec<u32>>,
        mut descriptor: GroupDescriptor,
        budget: u64,
    ) -> Result<Self> {
        let stride = kind.stride();
        let mut data: Vec<u32> = Vec::new();
        let mut index: HashMap<Box<[u32]>, u32, FxBuild> = HashMap::default();
        let id = kind.identity();
        data.extend_from_slice(&id);
        index.insert(id.into_boxed_slice(), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut buf = vec![0u32; stride];
        let mut gen_ordinals = Vec::with_capacity(generators.len());
        for g in &generators {
            assert_eq!(g.len(), stride, "generator encoding has the wrong length");
        }
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let xs = &data[x * stride..(x + 1) * stride];
                kind.compose(xs, g, &mut buf);
                if !index.contains_key(buf.as_slice()) {
                    let ord = (data.len() / stride) as u32;
                    if ord as u64 >= budget {
                        return Err(Error::TooLarge {
                            what: format!("closure of {}", descriptor.label()),
                            budget,
                        });
                    }
                    data.extend_from_slice(&buf);
                    index.insert(buf.clone().into_boxed_slice(), ord);
                    queue.push_back(ord as usize);
                }
            }
        }
        for g in &generators {
            gen_ordinals.push(index[g.as_slice()] as usize);
        }
        let order = data.len() / stride;
        let inverses = (0..order)
            .map(|i| {
                let inv = kind.invert(&data[i * stride..(i + 1) * stride]);
                index[inv.as_slice()]
            })
            .collect();
        descriptor.order = order as u64;
        descriptor.generator_count = generators.len();
        let mut table = GroupTable {
            descriptor,
            kind,
            stride,
            data,
            index,
            inverses,
            identity: 0,
            generators: gen_ordinals,
            cayley: None,
        };
        if order <= CAYLEY_CACHE_LIMIT {
            table.build_cayley(Exec::default());
        }
        Ok(table)
    }

    fn build_cayley(&mut self, exec: Exec) {
        let n = self.order();
        let rows: Vec<Vec<u32>> =
            exec.map(n, |i| (0..n).map(|j| self.mul_direct(i, j) as u32).collect());
        self.cayley = Some(rows.concat());
    }

    fn mul_direct(&self, i: usize, j: usize) -> usize {
        let mut stack = [0u32; 64];
        let mut heap;
        let out: &mut [u32] = if self.stride <= 64 {
            &mut stack[..self.stride]
        } else {
            heap = vec![0u32; self.stride];
            &mut heap
        };
        self.kind.compose(self.element(i), self.element(j), out);
        self.index[&*out] as usize
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn kind(&self) -> &ElementKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.data.len() / self.stride
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn has_cayley_table(&self) -> bool {
        self.cayley.is_some()
    }

    /// Canonical encoding of an element.
    pub fn element(&self, i: usize) -> &[u32] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn index_of(&self, encoding: &[u32]) -> Option<usize> {
        self.index.get(encoding).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.cayley {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.mul_direct(i, j),
        }
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    pub fn pow(&self, i: usize, mut e: u64) -> usize {
        let mut base = i;
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut x = i;
        let mut o = 1;
        while x != self.identity {
            x = self.mul(x, i);
            o += 1;
        }
        o
    }

    /// `g x g^{-1}`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// The element as a matrix, for matrix families.
    pub fn as_matrix(&self, i: usize) -> Option<Matrix> {
        match &self.kind {
            ElementKind::Matrix { dim, modulus } => {
                Some(Matrix::from_entries(*dim, *modulus, self.element(i).to_vec()))
            }
            _ => None,
        }
    }

    pub fn matrix_index(&self, m: &Matrix) -> Option<usize> {
        self.index_of(m.entries())
    }

    pub fn as_perm(&self, i: usize) -> Option<Perm> {
        match &self.kind {
            ElementKind::Perm { .. } => Perm::from_images(self.element(i).to_vec()),
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }
}

pub fn sl_order(k: usize, p: u64, n: u32) -> u128 {
    let p = p as u128;
    let mut order = p.pow((k * (k - 1) / 2) as u32);
    for i in 2..=k as u32 {
        order *= p.pow(i) - 1;
    }
    order * p.pow((n - 1) * (k * k - 1) as u32)
}

pub fn sp_order(k: usize, p: u64, n: u32) -> u128 {
    let p = p as u128;
    let mut order = p.pow((k * k) as u32);
    for i in 1..=k as u32 {
        order *= p.pow(2 * i) - 1;
    }
    order * p.pow((n - 1) * (2 * k * k + k) as u32)
}

/// `((k+1)!/2) * (k!)^{k+1} / 2` for `level = 2`, `(k+1)!/2` for `level = 1`.
pub fn tree_level_order(k: usize, level: u32) -> u128 {
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    match level {
        1 => fact(k + 1) / 2,
        2 => fact(k + 1) / 2 * fact(k).pow(k as u32 + 1) / 2,
        _ => 0,
    }
}

fn check_budget(expected: u128, what: String, budget: u64) -> Result<()> {
    if expected > budget as u128 {
        Err(Error::TooLarge { what, budget })
    } else {
        Ok(())
    }
}

fn matrix_descriptor(family: Family, k: usize, p: u64, n: u32) -> GroupDescriptor {
    GroupDescriptor {
        family,
        k: Some(k as u32),
        p: Some(p),
        n: Some(n),
        level: None,
        factors: None,
        order: 0,
        generator_count: 0,
    }
}

/// `SL_k(Z/p^n)` from the elementary matrices `I + E_ij`.
pub fn build_sl(k: usize, p: u64, n: u32, budget: u64) -> Result<GroupTable> {
    if k < 2 {
        return Err(Error::InvalidParameters("SL_k needs k >= 2".into()));
    }
    let modulus = Modulus::new(p, n)?;
    let desc = matrix_descriptor(Family::Sl, k, p, n);
    check_budget(sl_order(k, p, n), desc.label(), budget)?;
    let mut gens = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                gens.push(matrix::elementary(k, modulus, i, j, 1).entries().to_vec());
            }
        }
    }
    GroupTable::from_generators(ElementKind::Matrix { dim: k, modulus }, gens, desc, budget)
}

/// `Sp_2k(Z/p^n)` from `U_{E_ij}` and their transposes.
pub fn build_sp(k: usize, p: u64, n: u32, budget: u64) -> Result<GroupTable> {
    if k < 1 {
        return Err(Error::InvalidParameters("Sp_2k needs k >= 1".into()));
    }
    let modulus = Modulus::new(p, n)?;
    let desc = matrix_descriptor(Family::Sp, k, p, n);
    check_budget(sp_order(k, p, n), desc.label(), budget)?;
    let mut gens = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            let u = matrix::sp_g(k, modulus, i, j);
            gens.push(u.entries().to_vec());
            gens.push(u.transpose().entries().to_vec());
        }
    }
    GroupTable::from_generators(ElementKind::Matrix { dim: 2 * k, modulus }, gens, desc, budget)
}

fn perm_descriptor(family: Family, m: usize) -> GroupDescriptor {
    GroupDescriptor {
        family,
        k: Some(m as u32),
        p: None,
        n: None,
        level: None,
        factors: None,
        order: 0,
        generator_count: 0,
    }
}

/// 3-cycles `(0 1 i)`, which generate `Alt_m`.
fn alt_generators(m: usize) -> Vec<Perm> {
    (2..m).map(|i| Perm::from_cycles(m, &[&[0, 1, i as u32]])).collect()
}

pub fn build_alt(m: usize, budget: u64) -> Result<GroupTable> {
    if m == 0 {
        return Err(Error::InvalidParameters("Alt_m needs m >= 1".into()));
    }
    let desc = perm_descriptor(Family::Alt, m);
    let fact: u128 = (1..=m as u128).product();
    check_budget((fact / 2).max(1), desc.label(), budget)?;
    let gens = alt_generators(m).into_iter().map(|p| p.images().to_vec()).collect();
    GroupTable::from_generators(ElementKind::Perm { degree: m }, gens, desc, budget)
}

pub fn build_sym(m: usize, budget: u64) -> Result<GroupTable> {
    if m == 0 {
        return Err(Error::InvalidParameters("Sym_m needs m >= 1".into()));
    }
    let desc = perm_descriptor(Family::Sym, m);
    check_budget((1..=m as u128).product(), desc.label(), budget)?;
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(Perm::from_cycles(m, &[&[0, 1]]).images().to_vec());
        let cyc: Vec<u32> = (0..m as u32).collect();
        gens.push(Perm::from_cycles(m, &[&cyc]).images().to_vec());
    }
    GroupTable::from_generators(ElementKind::Perm { degree: m }, gens, desc, budget)
}

/// Places `tau` on the block of depth-2 vertices below depth-1 vertex `slot`.
fn tree_base_element(k: usize, slots: &[(usize, &Perm)]) -> Perm {
    let mut images: Vec<u32> = (0..((k + 1) * k) as u32).collect();
    for &(slot, tau) in slots {
        for c in 0..k {
            images[slot * k + c] = (slot * k) as u32 + tau.apply(c as u32);
        }
    }
    Perm::from_images(images).expect("block permutation")
}

/// Lifts a permutation of the depth-1 vertices to depth 2 with trivial
/// labels.
fn tree_top_element(k: usize, pi: &Perm) -> Perm {
    let mut images = vec![0u32; (k + 1) * k];
    for i in 0..=k {
        for c in 0..k {
            images[i * k + c] = pi.apply(i as u32) * k as u32 + c as u32;
        }
    }
    Perm::from_images(images).expect("block permutation")
}

/// Finite quotient `F_j` of the positive automorphisms of the rooted
/// `(k+1)`-regular tree.
///
/// Level 1 is `Alt_{k+1}` on the root's neighbours. Level 2 acts on the
/// `(k+1)k` depth-2 vertices, vertex `(i, c)` encoded as `i*k + c`; an
/// element is a pair `(pi, (tau_1..tau_{k+1}))` sending `(i, c)` to
/// `(pi(i), tau_i(c))` with `pi` even and `prod sgn(tau_i) = 1`.
pub fn build_tree_level(k: usize, level: u32, budget: u64) -> Result<GroupTable> {
    if k < 2 {
        return Err(Error::InvalidParameters("tree groups need k >= 2".into()));
    }
    let mut desc = perm_descriptor(Family::Tree, k);
    desc.level = Some(level);
    match level {
        1 => {
            check_budget(tree_level_order(k, 1), desc.label(), budget)?;
            let gens = alt_generators(k + 1).into_iter().map(|p| p.images().to_vec()).collect();
            GroupTable::from_generators(ElementKind::Perm { degree: k + 1 }, gens, desc, budget)
        }
        2 => {
            check_budget(tree_level_order(k, 2), desc.label(), budget)?;
            let mut gens: Vec<Perm> =
                alt_generators(k + 1).iter().map(|pi| tree_top_element(k, pi)).collect();
            for tau in alt_generators(k) {
                gens.push(tree_base_element(k, &[(0, &tau)]));
            }
            let t = Perm::from_cycles(k, &[&[0, 1]]);
            gens.push(tree_base_element(k, &[(0, &t), (1, &t)]));
            let gens = gens.into_iter().map(|p| p.images().to_vec()).collect();
            GroupTable::from_generators(
                ElementKind::Perm { degree: (k + 1) * k },
                gens,
                desc,
                budget,
            )
        }
        _ => Err(Error::InvalidParameters(
            "only tree levels 1 and 2 are enumerated".into(),
        )),
    }
}

/// Projection of a level-2 tree element onto the depth-1 vertices.
pub fn tree_top_permutation(k: usize, element: &[u32]) -> Perm {
    let images = (0..=k).map(|i| element[i * k] / k as u32).collect();
    Perm::from_images(images).expect("level-2 elements permute blocks")
}

/// `Z/f_1 x ... x Z/f_r` in additive coordinates.
pub fn build_abelian(factors: &[u32], budget: u64) -> Result<GroupTable> {
    if factors.contains(&0) {
        return Err(Error::InvalidParameters("cyclic factors must be positive".into()));
    }
    let factors: Vec<u32> = factors.iter().copied().filter(|&f| f > 1).collect();
    let desc = GroupDescriptor {
        family: Family::Abelian,
        k: None,
        p: None,
        n: None,
        level: None,
        factors: Some(factors.clone()),
        order: 0,
        generator_count: 0,
    };
    let order: u128 = factors.iter().map(|&f| f as u128).product();
    check_budget(order, desc.label(), budget)?;
    let gens = (0..factors.len())
        .map(|i| {
            let mut v = vec![0u32; factors.len()];
            v[i] = 1;
            v
        })
        .collect();
    if factors.is_empty() {
        // a zero-stride encoding cannot be indexed; use a one-slot trivial factor
        return GroupTable::from_generators(
            ElementKind::Abelian { factors: vec![1] },
            vec![],
            desc,
            budget,
        );
    }
    GroupTable::from_generators(ElementKind::Abelian { factors }, gens, desc, budget)
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Invariant factors `d_1 | d_2 | ...` of every abelian group of the given
/// order, one list per isomorphism type. The trivial group is `[1]`.
pub fn abelian_invariant_factor_lists(order: u64) -> Vec<Vec<u64>> {
    let mut prime_powers: Vec<(u64, u32)> = Vec::new();
    let mut rest = order;
    let mut d = 2;
    while d * d <= rest {
        let mut a = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            a += 1;
        }
        if a > 0 {
            prime_powers.push((d, a));
        }
        d += 1;
    }
    if rest > 1 {
        prime_powers.push((rest, 1));
    }
    let mut lists: Vec<Vec<u64>> = vec![vec![]];
    for &(p, a) in &prime_powers {
        let mut next = Vec::new();
        for list in &lists {
            for part in partitions(a, a) {
                // part is descending; combine slot by slot from the largest
                let len = list.len().max(part.len());
                let mut merged = vec![1u64; len];
                for (i, slot) in merged.iter_mut().enumerate() {
                    let from_list = list.get(i).copied().unwrap_or(1);
                    let from_part = part.get(i).map_or(1, |&e| p.pow(e));
                    *slot = from_list * from_part;
                }
                next.push(merged);
            }
        }
        lists = next;
    }
    let mut out: Vec<Vec<u64>> = lists
        .into_iter()
        .map(|mut l| {
            if l.is_empty() {
                l.push(1);
            }
            l.reverse();
            l
        })
        .collect();
    out.sort();
    out
}

/// The quaternion group `Q8` inside `SL_2(F_3)`.
pub fn build_quaternion() -> Result<GroupTable> {
    let m = Modulus::new(3, 1)?;
    let i = Matrix::from_signed(2, m, &[0, -1, 1, 0]);
    let j = Matrix::from_signed(2, m, &[1, 1, 1, -1]);
    let desc = GroupDescriptor {
        family: Family::Quaternion,
        k: None,
        p: None,
        n: None,
        level: None,
        factors: None,
        order: 0,
        generator_count: 0,
    };
    GroupTable::from_generators(
        ElementKind::Matrix { dim: 2, modulus: m },
        vec![i.entries().to_vec(), j.entries().to_vec()],
        desc,
        DEFAULT_ELEMENT_BUDGET,
    )
}

/// Closure of arbitrary invertible matrices.
pub fn build_matrix_group(generators: &[Matrix], budget: u64) -> Result<GroupTable> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidParameters("need at least one generator".into()))?;
    let (dim, modulus) = (first.dim(), first.modulus());
    let desc = GroupDescriptor {
        family: Family::Custom,
        k: Some(dim as u32),
        p: Some(modulus.p()),
        n: Some(modulus.n()),
        level: None,
        factors: None,
        order: 0,
        generator_count: 0,
    };
    for g in generators {
        g.inverse()?;
    }
    GroupTable::from_generators(
        ElementKind::Matrix { dim, modulus },
        generators.iter().map(|g| g.entries().to_vec()).collect(),
        desc,
        budget,
    )
}
