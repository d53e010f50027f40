//! Combinatorial maps `(X_{α,β}, P)` on quadricells.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::perm::{Perm, PermGroup};

#[inline]
pub fn alpha(q: u32) -> u32 {
    q ^ 2
}

#[inline]
pub fn beta(q: u32) -> u32 {
    q ^ 1
}

/// Swaps bits `a` and `b` of a quadricell, used to re-encode the dual.
#[inline]
fn swap_ab(q: u32) -> u32 {
    let a = (q >> 1) & 1;
    let b = q & 1;
    (q & !3) | (b << 1) | a
}

/// A failed map axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Length {
        expected: usize,
        got: usize,
    },
    NotPermutation(String),
    /// `αP ≠ P⁻¹α` at this quadricell.
    AlphaCondition(u32),
    /// `αq` lies on the `P`-cycle of `q`.
    NotBasic(u32),
    /// `⟨α, β, P⟩` has this many orbits instead of one.
    NotTransitive(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { expected, got } => {
                write!(f, "P has length {got}, expected {expected}")
            }
            Violation::NotPermutation(m) => write!(f, "P is not a permutation ({m})"),
            Violation::AlphaCondition(q) => write!(f, "alpha*P != P^-1*alpha at quadricell {q}"),
            Violation::NotBasic(q) => {
                write!(f, "P is not basic: alpha({q}) lies on the cycle of {q}")
            }
            Violation::NotTransitive(k) => write!(f, "<alpha,beta,P> has {k} orbits"),
        }
    }
}

/// Checks every map axiom for `P` on `4·edges` quadricells.
pub fn validate(edges: usize, images: &[u32]) -> Vec<Violation> {
    let n = 4 * edges;
    if images.len() != n {
        return vec![Violation::Length {
            expected: n,
            got: images.len(),
        }];
    }
    let p = match Perm::from_images(images.to_vec()) {
        Ok(p) => p,
        Err(e) => return vec![Violation::NotPermutation(e.to_string())],
    };
    let mut out = Vec::new();
    if let Some(q) = (0..n as u32).find(|&q| p.apply(alpha(p.apply(alpha(q)))) != q) {
        out.push(Violation::AlphaCondition(q));
    }
    let cyc = cycle_ids(&p);
    if let Some(q) = (0..n as u32).find(|&q| cyc[q as usize] == cyc[alpha(q) as usize]) {
        out.push(Violation::NotBasic(q));
    }
    let orbits = orbit_ids(n, |x, push| {
        push(p.apply(x));
        push(alpha(x));
        push(beta(x));
    })
    .1;
    if orbits != 1 && n > 0 {
        out.push(Violation::NotTransitive(orbits));
    }
    if n == 0 {
        out.push(Violation::NotTransitive(0));
    }
    out
}

fn cycle_ids(p: &Perm) -> Vec<usize> {
    let mut ids = vec![usize::MAX; p.len()];
    let mut next = 0;
    for s in 0..p.len() {
        if ids[s] != usize::MAX {
            continue;
        }
        let mut x = s;
        while ids[x] == usize::MAX {
            ids[x] = next;
            x = p.apply(x as u32) as usize;
        }
        next += 1;
    }
    ids
}

/// Orbit labels of the group generated by the moves `step` emits, plus the orbit count.
pub(crate) fn orbit_ids(n: usize, step: impl Fn(u32, &mut dyn FnMut(u32))) -> (Vec<usize>, usize) {
    let mut ids = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if ids[s] != usize::MAX {
            continue;
        }
        ids[s] = count;
        stack.push(s as u32);
        while let Some(x) = stack.pop() {
            step(x, &mut |y| {
                if ids[y as usize] == usize::MAX {
                    ids[y as usize] = count;
                    stack.push(y);
                }
            });
        }
        count += 1;
    }
    (ids, count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapInvariants {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub chi: i64,
    pub orientable: bool,
    /// Orientable genus `(2−χ)/2`, or non-orientable genus `2−χ`.
    pub genus: i64,
}

impl MapInvariants {
    /// Genus as a signed exponent: `g` for orientable maps, `−g̃` otherwise.
    pub fn signed_genus(&self) -> i64 {
        if self.orientable {
            self.genus
        } else {
            -self.genus
        }
    }
}

/// A pair of conjugate cycles forming one vertex (or one face).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub cycle: Vec<u32>,
    pub conjugate: Vec<u32>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }
}

/// Whether an isomorphism search may reverse orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Roots {
    All,
    /// Only images in the `⟨αβ, P⟩` class of quadricell 0 (orientable maps).
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombMap {
    edges: usize,
    p: Perm,
}

impl CombMap {
    pub fn new(edges: usize, p: Perm) -> Result<CombMap> {
        let violations = validate(edges, p.images());
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidMap(msgs.join("; ")));
        }
        Ok(CombMap { edges, p })
    }

    pub fn from_images(images: Vec<u32>) -> Result<CombMap> {
        if !images.len().is_multiple_of(4) {
            return Err(Error::InvalidMap(format!(
                "P has length {}, not a multiple of 4",
                images.len()
            )));
        }
        let edges = images.len() / 4;
        CombMap::new(edges, Perm::from_images(images)?)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> CombMap {
        let edges = images.len() / 4;
        debug_assert!(
            validate(edges, &images).is_empty(),
            "{:?}",
            validate(edges, &images)
        );
        CombMap {
            edges,
            p: Perm::from_images_unchecked(images),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn quadricell_count(&self) -> usize {
        4 * self.edges
    }

    pub fn p(&self) -> &Perm {
        &self.p
    }

    /// `F = P∘(αβ)`.
    pub fn face_perm(&self) -> Perm {
        Perm::from_images_unchecked(
            (0..self.quadricell_count() as u32)
                .map(|q| self.p.apply(q ^ 3))
                .collect(),
        )
    }

    fn cells(perm: &Perm, partner: impl Fn(u32) -> u32) -> Vec<Cell> {
        let cycles = perm.cycles();
        let mut owner = vec![usize::MAX; perm.len()];
        for (i, c) in cycles.iter().enumerate() {
            for &x in c {
                owner[x as usize] = i;
            }
        }
        let mut used = vec![false; cycles.len()];
        let mut out = Vec::new();
        for (i, c) in cycles.iter().enumerate() {
            if used[i] {
                continue;
            }
            let j = owner[partner(c[0]) as usize];
            used[i] = true;
            used[j] = true;
            out.push(Cell {
                cycle: c.clone(),
                conjugate: cycles[j].clone(),
            });
        }
        out
    }

    /// Vertices as pairs of `α`-conjugate cycles of `P`, ordered by smallest quadricell.
    pub fn vertices(&self) -> Vec<Cell> {
        CombMap::cells(&self.p, alpha)
    }

    /// Faces as pairs of `β`-conjugate cycles of the face permutation.
    pub fn faces(&self) -> Vec<Cell> {
        CombMap::cells(&self.face_perm(), beta)
    }

    /// Vertex index of every quadricell, consistent with [`CombMap::vertices`].
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.quadricell_count()];
        for (i, cell) in self.vertices().iter().enumerate() {
            for &x in cell.cycle.iter().chain(&cell.conjugate) {
                out[x as usize] = i;
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.p.cycle_count() / 2
    }

    pub fn face_count(&self) -> usize {
        self.face_perm().cycle_count() / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edges as i64 + self.face_count() as i64
    }

    /// `⟨αβ, P⟩`-class of each quadricell; two classes exactly when orientable.
    pub fn orientation_classes(&self) -> (Vec<usize>, usize) {
        orbit_ids(self.quadricell_count(), |x, push| {
            push(self.p.apply(x));
            push(x ^ 3);
        })
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation_classes().1 == 2
    }

    pub fn invariants(&self) -> MapInvariants {
        let v = self.vertex_count();
        let f = self.face_count();
        let chi = v as i64 - self.edges as i64 + f as i64;
        let orientable = self.is_orientable();
        let genus = if orientable { (2 - chi) / 2 } else { 2 - chi };
        MapInvariants {
            v,
            e: self.edges,
            f,
            chi,
            orientable,
            genus,
        }
    }

    /// Valency of every vertex, in vertex order.
    pub fn vertex_valencies(&self) -> Vec<usize> {
        self.vertices().iter().map(Cell::len).collect()
    }

    pub fn face_lengths(&self) -> Vec<usize> {
        self.faces().iter().map(Cell::len).collect()
    }

    /// The dual map, re-encoded so that its `α` is again bit `a`.
    pub fn dual(&self) -> CombMap {
        let f = self.face_perm();
        let mut images = vec![0; self.quadricell_count()];
        for q in 0..self.quadricell_count() as u32 {
            images[swap_ab(q) as usize] = swap_ab(f.apply(q));
        }
        CombMap::from_images_unchecked(images)
    }

    /// `(X, P⁻¹)`, the mirror image.
    pub fn mirror(&self) -> CombMap {
        CombMap {
            edges: self.edges,
            p: self.p.inverse(),
        }
    }

    /// The underlying graph: edge `e` joins the vertices of quadricells `4e` and `4e+1`.
    pub fn underlying_graph(&self) -> MultiGraph {
        let vof = self.vertex_of();
        let edges = (0..self.edges)
            .map(|e| (vof[4 * e], vof[4 * e + 1]))
            .collect();
        MultiGraph::new(self.vertex_count(), edges).expect("maps have connected underlying graphs")
    }

    /// Extends `source ↦ target` to a map isomorphism, if it exists.
    fn propagate(&self, other: &CombMap, source: u32, target: u32) -> Option<Vec<u32>> {
        let n = self.quadricell_count();
        let mut img = vec![u32::MAX; n];
        let mut used = vec![false; n];
        img[source as usize] = target;
        used[target as usize] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let y = img[x as usize];
            let moves = [
                (self.p.apply(x), other.p.apply(y)),
                (alpha(x), alpha(y)),
                (beta(x), beta(y)),
            ];
            for (x2, y2) in moves {
                let cur = img[x2 as usize];
                if cur == u32::MAX {
                    if used[y2 as usize] {
                        return None;
                    }
                    img[x2 as usize] = y2;
                    used[y2 as usize] = true;
                    queue.push_back(x2);
                } else if cur != y2 {
                    return None;
                }
            }
        }
        Some(img)
    }

    fn root_candidates(&self, roots: Roots) -> Vec<u32> {
        match roots {
            Roots::All => (0..self.quadricell_count() as u32).collect(),
            Roots::Positive => {
                let (cls, _) = self.orientation_classes();
                (0..self.quadricell_count() as u32)
                    .filter(|&q| cls[q as usize] == cls[0])
                    .collect()
            }
        }
    }

    /// A quadricell bijection `ξ` with `ξα = αξ`, `ξβ = βξ` and `ξP₁ = P₂ξ`.
    pub fn isomorphism(&self, other: &CombMap) -> Option<Perm> {
        self.isomorphism_with(other, Roots::All)
    }

    /// As [`CombMap::isomorphism`], but for orientable maps also require the
    /// class of quadricell 0 to map onto the class of quadricell 0.
    pub fn equivalence(&self, other: &CombMap) -> Option<Perm> {
        if self.is_orientable() && other.is_orientable() {
            self.isomorphism_with(other, Roots::Positive)
        } else {
            self.isomorphism(other)
        }
    }

    fn isomorphism_with(&self, other: &CombMap, roots: Roots) -> Option<Perm> {
        if self.edges != other.edges {
            return None;
        }
        other
            .root_candidates(roots)
            .into_iter()
            .find_map(|t| self.propagate(other, 0, t))
            .map(Perm::from_images_unchecked)
    }

    pub fn is_isomorphic(&self, other: &CombMap) -> bool {
        self.isomorphism(other).is_some()
    }

    /// All automorphisms, one per admissible image of quadricell 0.
    pub fn automorphisms(&self) -> Vec<Perm> {
        (0..self.quadricell_count() as u32)
            .filter_map(|t| self.propagate(self, 0, t))
            .map(Perm::from_images_unchecked)
            .collect()
    }

    pub fn automorphism_group(&self) -> PermGroup {
        PermGroup::from_sorted_unchecked(self.quadricell_count(), self.automorphisms())
    }

    /// Orientation-preserving automorphisms of an orientable map.
    pub fn orientation_preserving_automorphisms(&self) -> Result<Vec<Perm>> {
        if !self.is_orientable() {
            return Err(Error::InvalidMap("map is not orientable".into()));
        }
        let (cls, _) = self.orientation_classes();
        Ok(self
            .automorphisms()
            .into_iter()
            .filter(|g| cls[g.apply(0) as usize] == cls[0])
            .collect())
    }

    pub fn is_automorphism(&self, g: &Perm) -> bool {
        let n = self.quadricell_count() as u32;
        g.len() == n as usize
            && (0..n).all(|x| {
                g.apply(alpha(x)) == alpha(g.apply(x))
                    && g.apply(beta(x)) == beta(g.apply(x))
                    && g.apply(self.p.apply(x)) == self.p.apply(g.apply(x))
            })
    }

    /// `4ε / |Aut M|`: the number of distinct rootings.
    pub fn rooted_count(&self) -> usize {
        self.quadricell_count() / self.automorphisms().len()
    }

    /// The map `ξ P ξ⁻¹` obtained by relabelling quadricells along `ξ`.
    pub fn relabel(&self, xi: &Perm) -> Result<CombMap> {
        if xi.len() != self.quadricell_count() {
            return Err(Error::SizeMismatch(self.quadricell_count(), xi.len()));
        }
        let mut images = vec![0; xi.len()];
        for x in 0..xi.len() as u32 {
            images[xi.apply(x) as usize] = xi.apply(self.p.apply(x));
        }
        CombMap::new(self.edges, Perm::from_images(images)?)
    }

    /// Breadth-first code from `root`: each quadricell's discovery label
    /// followed by the labels of its `P`, `α`, `β` images.
    fn code_from(&self, root: u32, best: Option<&[u32]>) -> Option<Vec<u32>> {
        let n = self.quadricell_count();
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[root as usize] = 0;
        order.push(root);
        let mut code = Vec::with_capacity(3 * n);
        let mut less = false;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in [self.p.apply(x), alpha(x), beta(x)] {
                if label[y as usize] == u32::MAX {
                    label[y as usize] = order.len() as u32;
                    order.push(y);
                }
                let l = label[y as usize];
                if let (Some(b), false) = (best, less) {
                    let k = code.len();
                    if l > b[k] {
                        return None;
                    }
                    if l < b[k] {
                        less = true;
                    }
                }
                code.push(l);
            }
        }
        Some(code)
    }

    /// Isomorphism-invariant code; equal codes iff isomorphic (resp. equivalent).
    pub fn canonical_code(&self, roots: Roots) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for r in self.root_candidates(roots) {
            if let Some(c) = self.code_from(r, best.as_deref()) {
                best = Some(c);
            }
        }
        best.unwrap_or_default()
    }

    /// The map reconstructed from its canonical code; isomorphic maps give equal results.
    pub fn canonical_form(&self) -> CombMap {
        let code = self.canonical_code(Roots::All);
        // In the canonical labelling, quadricell `label` has its `P`, `α`, `β`
        // images at code[3·label ..]; re-encode edges so α, β are bit flips.
        let n = self.quadricell_count();
        let mut qc = vec![u32::MAX; n];
        let mut next_edge = 0u32;
        for l in 0..n {
            if qc[l] != u32::MAX {
                continue;
            }
            let a = code[3 * l + 1] as usize;
            let b = code[3 * l + 2] as usize;
            let ab = code[3 * a + 2] as usize;
            qc[l] = 4 * next_edge;
            qc[b] = 4 * next_edge + 1;
            qc[a] = 4 * next_edge + 2;
            qc[ab] = 4 * next_edge + 3;
            next_edge += 1;
        }
        let mut images = vec![0; n];
        for l in 0..n {
            images[qc[l] as usize] = qc[code[3 * l] as usize];
        }
        CombMap::from_images_unchecked(images)
    }
}

/// A map with a distinguished quadricell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedMap {
    base: CombMap,
    root: u32,
}

impl RootedMap {
    pub fn new(base: CombMap, root: u32) -> Result<RootedMap> {
        if root as usize >= base.quadricell_count() {
            return Err(Error::OutOfRange(format!("root {root}")));
        }
        Ok(RootedMap { base, root })
    }

    pub fn base(&self) -> &CombMap {
        &self.base
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Rooted maps are isomorphic iff some map isomorphism carries root to root.
    pub fn is_isomorphic(&self, other: &RootedMap) -> bool {
        self.base.edges == other.base.edges
            && self
                .base
                .propagate(&other.base, self.root, other.root)
                .is_some()
    }
}

/// Extends an action on semi-arcs (`2e + end`) to quadricells:
/// `4e + 2a + b ↦ 4e' + 2a + b'` where semi-arc `2e + b` goes to `2e' + b'`.
pub fn extend_semiarc_action(edges: usize, g: &Perm) -> Result<Perm> {
    if g.len() != 2 * edges {
        return Err(Error::SizeMismatch(2 * edges, g.len()));
    }
    for e in 0..edges as u32 {
        let s = g.apply(2 * e);
        let t = g.apply(2 * e + 1);
        if s / 2 != t / 2 {
            return Err(Error::IllDefinedAction(format!("edge {e} is split")));
        }
    }
    Ok(Perm::from_images_unchecked(
        (0..4 * edges as u32)
            .map(|q| {
                let t = g.apply(2 * (q / 4) + (q & 1));
                4 * (t / 2) + (q & 2) + (t & 1)
            })
            .collect(),
    ))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn fig12() -> CombMap {
        CombMap::from_images(vec![
            4, 22, 10, 12, 8, 21, 2, 19, 0, 18, 6, 15, 20, 9, 1, 16, 11, 5, 13, 23, 3, 17, 14, 7,
        ])
        .unwrap()
    }

    /// One loop on the sphere: P = (0 1)(2 3) ... built as the cycle (0 3)(2 1).
    pub fn planar_loop() -> CombMap {
        CombMap::from_images(vec![3, 2, 1, 0]).unwrap()
    }

    #[test]
    fn fig12_invariants() {
        let m = fig12();
        let inv = m.invariants();
        assert_eq!(
            inv,
            MapInvariants {
                v: 4,
                e: 6,
                f: 2,
                chi: 0,
                orientable: true,
                genus: 1
            }
        );
        assert_eq!(m.vertex_valencies(), vec![3, 3, 3, 3]);
        let mut lens = m.face_lengths();
        lens.sort();
        assert_eq!(lens, vec![4, 8]);
    }

    #[test]
    fn planar_loop_invariants() {
        let m = planar_loop();
        let inv = m.invariants();
        assert_eq!((inv.v, inv.e, inv.f, inv.chi), (1, 1, 2, 2));
        assert!(inv.orientable);
        assert_eq!(m.automorphisms().len(), 4);
        assert_eq!(m.rooted_count(), 1);
    }

    #[test]
    fn identity_p() {
        // One edge: the identity is the planar map of a single non-loop edge.
        let k2 = CombMap::from_images(vec![0, 1, 2, 3]).unwrap();
        let inv = k2.invariants();
        assert_eq!((inv.v, inv.e, inv.f, inv.chi), (2, 1, 1, 2));
        // Two edges: two components.
        let v = validate(2, &(0..8).collect::<Vec<u32>>());
        assert_eq!(v, vec![Violation::NotTransitive(2)]);
        // A loop whose cycle contains its own α-image is not basic.
        let v = validate(1, &[2, 1, 0, 3]);
        assert!(v.iter().any(|x| matches!(x, Violation::NotBasic(_))));
    }

    #[test]
    fn transposition_mutations_break_fig12() {
        let m = fig12();
        let n = m.quadricell_count();
        for i in 0..n {
            for j in i + 1..n {
                let mut img = m.p().images().to_vec();
                img.swap(i, j);
                assert!(!validate(6, &img).is_empty(), "swap {i} {j}");
            }
        }
    }

    #[test]
    fn dual_roundtrip() {
        let m = fig12();
        let d = m.dual();
        let inv = d.invariants();
        assert_eq!((inv.v, inv.f, inv.chi), (2, 4, 0));
        assert!(inv.orientable);
        assert_eq!(d.dual(), m);
        assert!(m.is_isomorphic(&d.dual()));
    }

    #[test]
    fn identity_isomorphism() {
        let m = fig12();
        assert!(m.isomorphism(&m).unwrap().is_identity());
        assert!(m.is_isomorphic(&m.mirror()));
    }

    #[test]
    fn automorphisms_divide_quadricells() {
        let m = fig12();
        let auts = m.automorphisms();
        assert_eq!(24 % auts.len(), 0);
        for g in &auts {
            assert!(m.is_automorphism(g));
        }
        let group = m.automorphism_group();
        assert!(PermGroup::from_elements(24, group.elements().to_vec()).is_ok());
    }

    #[test]
    fn canonical_form_is_invariant() {
        let m = fig12();
        let c = m.canonical_form();
        assert!(c.is_isomorphic(&m));
        let shuffle = extend_semiarc_action(
            6,
            &Perm::from_cycles(12, &[vec![0, 2, 4], vec![1, 3, 5], vec![6, 7]]).unwrap(),
        );
        let relabelled = m.relabel(&shuffle.unwrap()).unwrap();
        assert_eq!(relabelled.canonical_form(), c);
        assert_eq!(m.mirror().canonical_form(), c);
    }

    #[test]
    fn semiarc_extension() {
        assert!(extend_semiarc_action(2, &Perm::identity(4))
            .unwrap()
            .is_identity());
        let swap_ends = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let g = extend_semiarc_action(2, &swap_ends).unwrap();
        for x in 0..8 {
            assert_eq!(g.apply(alpha(x)), alpha(g.apply(x)));
            assert_eq!(g.apply(beta(x)), beta(g.apply(x)));
        }
        let split = Perm::from_cycles(4, &[vec![0, 2]]).unwrap();
        assert!(matches!(
            extend_semiarc_action(2, &split),
            Err(Error::IllDefinedAction(_))
        ));
    }

    #[test]
    fn rooted_maps() {
        let m = fig12();
        let r0 = RootedMap::new(m.clone(), 0).unwrap();
        assert!(r0.is_isomorphic(&r0));
        assert!(RootedMap::new(m, 24).is_err());
    }
}
