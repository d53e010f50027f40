//! Permutations, explicit permutation groups and cycle indices.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, …, N−1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Perm> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.images
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::NotPermutation(format!(
                    "image {x} out of range 0..{n}"
                )));
            }
            if seen[x] {
                return Err(Error::NotPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation of `{0, …, n−1}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let x = x as usize;
                if x >= n || touched[x] {
                    return Err(Error::NotPermutation(format!("bad cycle entry {x}")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Perm { images: inv }
    }

    /// `self ∘ right`: apply `right` first, then `self`.
    pub fn compose(&self, right: &Perm) -> Result<Perm> {
        if self.len() != right.len() {
            return Err(Error::SizeMismatch(self.len(), right.len()));
        }
        Ok(Perm {
            images: right
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        })
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.len());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose(&acc).expect("same size");
            }
            sq = sq.compose(&sq).expect("same size");
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
            }
        }
        count
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }
}

pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    p.compose(q)
}

pub fn cycle_type(p: &Perm) -> CycleType {
    p.cycle_type()
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A partition written with parts in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(parts: Vec<usize>) -> Result<CycleType> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        Ok(CycleType::from_unsorted(parts))
    }

    fn from_unsorted(mut parts: Vec<usize>) -> CycleType {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Multiplicity of each part length.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A finite permutation group stored as its sorted element list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            elements: vec![Perm::identity(degree)],
        }
    }

    /// Closure of `gens` under composition, by breadth-first multiplication.
    pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
        for g in gens {
            if g.len() != degree {
                return Err(Error::SizeMismatch(degree, g.len()));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for s in gens {
                let next = s.compose(&h)?;
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group closure",
                            cap,
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup { degree, elements })
    }

    /// Wraps an element list after checking closure and the identity.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<PermGroup> {
        elements.sort();
        elements.dedup();
        let set: HashSet<&Perm> = elements.iter().collect();
        if !set.contains(&Perm::identity(degree)) {
            return Err(Error::NotPermutation(
                "element set lacks the identity".into(),
            ));
        }
        for a in &elements {
            if a.len() != degree {
                return Err(Error::SizeMismatch(degree, a.len()));
            }
            if !set.contains(&a.inverse()) {
                return Err(Error::NotPermutation(
                    "element set not closed under inverse".into(),
                ));
            }
            for b in &elements {
                if !set.contains(&a.compose(b)?) {
                    return Err(Error::NotPermutation("element set not closed".into()));
                }
            }
        }
        Ok(PermGroup { degree, elements })
    }

    pub(crate) fn from_sorted_unchecked(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        elements.dedup();
        PermGroup { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn identity_index(&self) -> usize {
        self.elements
            .binary_search(&Perm::identity(self.degree))
            .expect("groups contain the identity")
    }

    /// Cycle index obtained by tallying the cycle type of every element.
    pub fn cycle_index(&self) -> CycleIndex {
        let mut tally: BTreeMap<CycleType, usize> = BTreeMap::new();
        for g in &self.elements {
            *tally.entry(g.cycle_type()).or_insert(0) += 1;
        }
        let order = BigRational::from_integer(self.order().into());
        let mut z = CycleIndex::zero();
        for (t, count) in tally {
            let c = BigRational::from_integer(count.into()) / &order;
            z = z.add(&CycleIndex::from_cycle_type(&t, c));
        }
        z
    }
}

pub fn generate_group(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
    PermGroup::generate(degree, gens, cap)
}

/// The symmetric group on `n` points, generated by a transposition and an `n`-cycle.
pub fn symmetric_group(n: usize, cap: usize) -> Result<PermGroup> {
    if n <= 1 {
        return Ok(PermGroup::trivial(n));
    }
    let swap = Perm::from_cycles(n, &[vec![0, 1]])?;
    let cycle = Perm::from_cycles(n, &[(0..n as u32).collect()])?;
    PermGroup::generate(n, &[swap, cycle], cap)
}

/// Polynomial in `s_1, s_2, …` with exact rational coefficients.
///
/// Keys are exponent vectors: entry `i` is the power of `s_{i+1}`, with
/// trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CycleIndex {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl CycleIndex {
    pub fn zero() -> CycleIndex {
        CycleIndex::default()
    }

    pub fn one() -> CycleIndex {
        CycleIndex::monomial(Vec::new(), BigRational::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: BigRational) -> CycleIndex {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exponents), coeff);
        }
        CycleIndex { terms }
    }

    /// The variable `s_k` (`k ≥ 1`).
    pub fn variable(k: usize) -> CycleIndex {
        let mut e = vec![0; k];
        e[k - 1] = 1;
        CycleIndex::monomial(e, BigRational::one())
    }

    pub fn from_cycle_type(t: &CycleType, coeff: BigRational) -> CycleIndex {
        let mut e = Vec::new();
        for (&len, &count) in &t.multiplicities() {
            if e.len() < len {
                e.resize(len, 0);
            }
            e[len - 1] = count as u32;
        }
        CycleIndex::monomial(e, coeff)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest variable index that occurs.
    pub fn variable_count(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &CycleIndex) -> CycleIndex {
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *entry += v;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        CycleIndex { terms }
    }

    pub fn mul(&self, other: &CycleIndex) -> CycleIndex {
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let n = ka.len().max(kb.len());
                let key: Vec<u32> = (0..n)
                    .map(|i| ka.get(i).copied().unwrap_or(0) + kb.get(i).copied().unwrap_or(0))
                    .collect();
                *terms.entry(key).or_insert_with(BigRational::zero) += va * vb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        CycleIndex { terms }
    }

    pub fn scale(&self, c: &BigRational) -> CycleIndex {
        if c.is_zero() {
            return CycleIndex::zero();
        }
        CycleIndex {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CycleIndex {
        (0..e).fold(CycleIndex::one(), |acc, _| acc.mul(self))
    }

    /// Replaces every `s_i` by `s_{ik}`.
    pub fn stretch(&self, k: usize) -> CycleIndex {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| {
                let mut out = vec![0; e.len() * k];
                for (i, &x) in e.iter().enumerate() {
                    out[(i + 1) * k - 1] = x;
                }
                (trim(out), v.clone())
            })
            .collect();
        CycleIndex { terms }
    }

    /// Substitutes `s_k ↦ f(k)` for every variable.
    pub fn substitute(&self, f: impl Fn(usize) -> CycleIndex) -> CycleIndex {
        let mut out = CycleIndex::zero();
        for (e, v) in &self.terms {
            let mut term = CycleIndex::monomial(Vec::new(), v.clone());
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = term.mul(&f(i + 1).pow(x));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(&trim(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the pure monomial `s_k^m`.
    pub fn pure_coefficient(&self, k: usize, m: u32) -> BigRational {
        let mut e = vec![0; k];
        e[k - 1] = m;
        self.coefficient(&e)
    }

    /// `∂^m Z / ∂s_k^m` at the origin, i.e. `m!` times the coefficient of `s_k^m`.
    pub fn derivative_at_zero(&self, k: usize, m: u32) -> BigRational {
        BigRational::from_integer(factorial(m as usize).into()) * self.pure_coefficient(k, m)
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, b| a + b)
    }

    /// The one-variable polynomial obtained by setting every `s_i := x`,
    /// returned as total degree ↦ coefficient.
    pub fn uniform_polynomial(&self) -> BTreeMap<u32, BigRational> {
        let mut out: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (e, v) in &self.terms {
            *out.entry(e.iter().sum()).or_insert_with(BigRational::zero) += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, v) in self.terms.iter().rev() {
            let sign = if v.is_negative() { "-" } else { "+" };
            if !first || v.is_negative() {
                write!(f, "{}{}", if first { "" } else { " " }, sign)?;
                if !first {
                    write!(f, " ")?;
                }
            }
            first = false;
            write!(f, "{}", v.abs())?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*s{}", i + 1)?,
                    _ => write!(f, "*s{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All partitions of `n`, parts non-increasing, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `∏ k^{m_k} m_k!` for a cycle type with multiplicities `m_k`.
fn centralizer_order(t: &CycleType) -> BigUint {
    t.multiplicities()
        .iter()
        .fold(BigUint::one(), |acc, (&k, &m)| {
            acc * BigUint::from(k).pow(m as u32) * factorial(m)
        })
}

pub fn conjugacy_class_size_sn(n: usize, t: &CycleType) -> Result<BigUint> {
    if t.total() != n {
        return Err(Error::InvalidPartition(format!(
            "{t} does not partition {n}"
        )));
    }
    Ok(factorial(n) / centralizer_order(t))
}

/// `Z(S_n) = Σ_{λ ⊢ n} ∏ s_k^{m_k} / (k^{m_k} m_k!)`.
pub fn cycle_index_sn(n: usize) -> CycleIndex {
    let mut z = CycleIndex::zero();
    for parts in partitions(n) {
        let t = CycleType::from_unsorted(parts);
        let c = BigRational::new(BigUint::one().into(), centralizer_order(&t).into());
        z = z.add(&CycleIndex::from_cycle_type(&t, c));
    }
    z
}

/// Cycle index of the wreath product `A[B]` (A permutes copies of B's
/// domain): `Z(A; Z(B)∘stretch_1, Z(B)∘stretch_2, …)`.
pub fn wreath_cycle_index(outer: &CycleIndex, inner: &CycleIndex) -> CycleIndex {
    outer.substitute(|k| inner.stretch(k))
}

pub fn cycle_index_sns2(n: usize) -> CycleIndex {
    wreath_cycle_index(&cycle_index_sn(n), &cycle_index_sn(2))
}

pub fn euler_phi(k: u64) -> u64 {
    if k == 0 {
        return 0;
    }
    let mut result = k;
    let mut n = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
