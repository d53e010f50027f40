//! Rotation systems, their enumeration, and unrooted map counting.
//!
//! A rotation system is a cyclic order of semi-arcs at each vertex plus an
//! edge type `λ`. Enumeration keeps `λ = 0` on the depth-first spanning tree
//! of [`MultiGraph::spanning_tree`], so every embedding appears once up to
//! reversing all rotations at once.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GroupCaps, MultiGraph};
use crate::map::{CombMap, MapInvariants, Roots};
use crate::perm::{cycle_index_sn, factorial, partitions};

pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EmbeddingClass {
    #[serde(rename = "O")]
    Orientable,
    #[serde(rename = "N")]
    NonOrientable,
    #[serde(rename = "L")]
    LocallyOrientable,
}

impl EmbeddingClass {
    pub fn code(self) -> &'static str {
        match self {
            EmbeddingClass::Orientable => "O",
            EmbeddingClass::NonOrientable => "N",
            EmbeddingClass::LocallyOrientable => "L",
        }
    }
}

impl FromStr for EmbeddingClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<EmbeddingClass> {
        match s {
            "O" => Ok(EmbeddingClass::Orientable),
            "N" => Ok(EmbeddingClass::NonOrientable),
            "L" => Ok(EmbeddingClass::LocallyOrientable),
            _ => Err(Error::OutOfRange(format!("embedding class {s:?}"))),
        }
    }
}

impl fmt::Display for EmbeddingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Which maps are identified when counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// Map isomorphism; mirror images are identified.
    #[serde(rename = "iso")]
    Isomorphism,
    /// Equivalence of embeddings under graph automorphisms; mirror images stay distinct.
    #[serde(rename = "equiv")]
    Equivalence,
}

impl Relation {
    pub fn code(self) -> &'static str {
        match self {
            Relation::Isomorphism => "iso",
            Relation::Equivalence => "equiv",
        }
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Relation> {
        match s {
            "iso" => Ok(Relation::Isomorphism),
            "equiv" => Ok(Relation::Equivalence),
            _ => Err(Error::OutOfRange(format!("relation {s:?}"))),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Knobs shared by the enumeration entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Maximum number of rotation systems one call may visit.
    pub budget: u64,
    pub workers: usize,
    pub caps: GroupCaps,
}

impl Default for EnumOptions {
    fn default() -> EnumOptions {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
            caps: GroupCaps::default(),
        }
    }
}

impl EnumOptions {
    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// Cyclic order of semi-arcs at every vertex, plus the edge types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotationSystem {
    pub rotation: Vec<Vec<usize>>,
    pub lambda: Vec<u8>,
}

impl RotationSystem {
    pub fn new(
        graph: &MultiGraph,
        rotation: Vec<Vec<usize>>,
        lambda: Vec<u8>,
    ) -> Result<RotationSystem> {
        let rs = RotationSystem { rotation, lambda };
        rs.check(graph)?;
        Ok(rs)
    }

    fn check(&self, graph: &MultiGraph) -> Result<()> {
        if self.rotation.len() != graph.vertex_count() {
            return Err(Error::InvalidRotation(
                "one cyclic order per vertex required".into(),
            ));
        }
        if self.lambda.len() != graph.edge_count() || self.lambda.iter().any(|&l| l > 1) {
            return Err(Error::InvalidRotation("lambda must be 0/1 per edge".into()));
        }
        for (v, (order, expected)) in self
            .rotation
            .iter()
            .zip(graph.semiarcs_by_vertex())
            .enumerate()
        {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != expected {
                return Err(Error::InvalidRotation(format!(
                    "vertex {v} must order semi-arcs {expected:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn mirror(&self) -> RotationSystem {
        RotationSystem {
            rotation: self
                .rotation
                .iter()
                .map(|o| {
                    let mut r = o.clone();
                    if r.len() > 1 {
                        r[1..].reverse();
                    }
                    r
                })
                .collect(),
            lambda: self.lambda.clone(),
        }
    }

    pub fn is_normalized(&self, graph: &MultiGraph) -> bool {
        let tree = graph.spanning_tree();
        (0..graph.edge_count()).all(|e| !tree[e] || self.lambda[e] == 0)
    }

    /// Reverses rotations on a vertex set so that `λ` vanishes on the spanning
    /// tree, keeping vertex 0 fixed.
    pub fn normalize(&self, graph: &MultiGraph) -> RotationSystem {
        let mut sigma = vec![0u8; graph.vertex_count()];
        for (p, c, e) in graph.tree_order() {
            sigma[c] = sigma[p] ^ self.lambda[e];
        }
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, o)| {
                let mut r = o.clone();
                if sigma[v] == 1 && r.len() > 1 {
                    r[1..].reverse();
                }
                r
            })
            .collect();
        let lambda = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| self.lambda[e] ^ sigma[u] ^ sigma[v])
            .collect();
        RotationSystem { rotation, lambda }
    }
}

/// Number of rotation systems (tree-normalized) in a class.
pub fn count_embeddings(graph: &MultiGraph, class: EmbeddingClass) -> BigUint {
    let pi: BigUint = graph
        .valency_sequence()
        .iter()
        .map(|&r| factorial(r.saturating_sub(1)))
        .product();
    let twists = BigUint::one() << graph.betti();
    match class {
        EmbeddingClass::Orientable => pi,
        EmbeddingClass::NonOrientable => (twists - 1u32) * pi,
        EmbeddingClass::LocallyOrientable => twists * pi,
    }
}

fn check_budget(graph: &MultiGraph, class: EmbeddingClass, budget: u64) -> Result<u64> {
    let count = count_embeddings(graph, class);
    match count.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded {
            needed: count.to_string(),
            budget,
        }),
    }
}

/// Precomputed data for decoding and transforming rotation systems.
struct Ctx {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    by_vertex: Vec<Vec<u32>>,
    vertex_of: Vec<usize>,
    tree_order: Vec<(usize, usize, usize)>,
    free_edges: Vec<usize>,
    /// `(ρ(v) − 1)!` for each vertex.
    radix: Vec<u64>,
    pi: u64,
    class: EmbeddingClass,
    max_valency: usize,
}

/// A rotation system in successor form, `next[s]` being the semi-arc after `s`.
#[derive(Clone, Debug)]
struct Sys {
    next: Vec<u32>,
    prev: Vec<u32>,
    lam: Vec<u8>,
}

impl Ctx {
    fn new(graph: &MultiGraph, class: EmbeddingClass) -> Ctx {
        let tree = graph.spanning_tree();
        let by_vertex: Vec<Vec<u32>> = graph
            .semiarcs_by_vertex()
            .into_iter()
            .map(|v| v.into_iter().map(|s| s as u32).collect())
            .collect();
        let radix: Vec<u64> = by_vertex
            .iter()
            .map(|a| {
                factorial(a.len().saturating_sub(1))
                    .to_u64()
                    .unwrap_or(u64::MAX)
            })
            .collect();
        Ctx {
            vertices: graph.vertex_count(),
            edges: graph.edges().to_vec(),
            vertex_of: (0..graph.semiarc_count())
                .map(|s| graph.semiarc_vertex(s))
                .collect(),
            tree_order: graph.tree_order(),
            free_edges: (0..graph.edge_count()).filter(|&e| !tree[e]).collect(),
            pi: radix.iter().product(),
            radix,
            by_vertex,
            class,
            max_valency: graph.max_valency(),
        }
    }

    fn empty_sys(&self) -> Sys {
        let m = 2 * self.edges.len();
        Sys {
            next: vec![0; m],
            prev: vec![0; m],
            lam: vec![0; self.edges.len()],
        }
    }

    /// Writes the system of the given rank into `sys`.
    fn decode(&self, rank: u64, sys: &mut Sys) {
        let mut mask = rank / self.pi;
        if self.class == EmbeddingClass::NonOrientable {
            mask += 1;
        }
        let mut rest = rank % self.pi;
        sys.lam.iter_mut().for_each(|l| *l = 0);
        for (i, &e) in self.free_edges.iter().enumerate() {
            sys.lam[e] = ((mask >> i) & 1) as u8;
        }
        let mut pool: Vec<u32> = Vec::new();
        for (v, arcs) in self.by_vertex.iter().enumerate() {
            let idx = rest % self.radix[v];
            rest /= self.radix[v];
            if arcs.is_empty() {
                continue;
            }
            pool.clear();
            pool.extend_from_slice(&arcs[1..]);
            let mut order_prev = arcs[0];
            let mut code = idx;
            let mut k = pool.len();
            let mut base = self.radix[v];
            while k > 0 {
                base /= k as u64;
                let j = (code / base) as usize;
                code %= base;
                let s = pool.remove(j);
                sys.next[order_prev as usize] = s;
                sys.prev[s as usize] = order_prev;
                order_prev = s;
                k -= 1;
            }
            sys.next[order_prev as usize] = arcs[0];
            sys.prev[arcs[0] as usize] = order_prev;
        }
    }

    fn to_rotation(&self, sys: &Sys) -> RotationSystem {
        let rotation = self
            .by_vertex
            .iter()
            .map(|arcs| {
                let mut order = Vec::with_capacity(arcs.len());
                if let Some(&first) = arcs.first() {
                    let mut s = first;
                    loop {
                        order.push(s as usize);
                        s = sys.next[s as usize];
                        if s == first {
                            break;
                        }
                    }
                }
                order
            })
            .collect();
        RotationSystem {
            rotation,
            lambda: sys.lam.clone(),
        }
    }

    fn sys_of(&self, rs: &RotationSystem) -> Sys {
        let mut sys = self.empty_sys();
        for order in &rs.rotation {
            for (i, &s) in order.iter().enumerate() {
                let t = order[(i + 1) % order.len()];
                sys.next[s] = t as u32;
                sys.prev[t] = s as u32;
            }
        }
        sys.lam.clone_from(&rs.lambda);
        sys
    }

    #[inline]
    fn quad(&self, sys: &Sys, s: u32) -> u32 {
        let e = s / 2;
        let b = s & 1;
        4 * e + 2 * (b & (1 - sys.lam[e as usize] as u32)) + b
    }

    fn fill_p(&self, sys: &Sys, images: &mut [u32]) {
        for s in 0..sys.next.len() as u32 {
            let q = self.quad(sys, s);
            let qn = self.quad(sys, sys.next[s as usize]);
            images[q as usize] = qn;
            images[(qn ^ 2) as usize] = q ^ 2;
        }
    }

    fn to_map(&self, sys: &Sys) -> CombMap {
        let mut images = vec![0u32; 4 * self.edges.len()];
        self.fill_p(sys, &mut images);
        CombMap::from_images_unchecked(images)
    }

    /// Signed genus of the embedding, using scratch buffers.
    fn signed_genus(&self, sys: &Sys, images: &mut Vec<u32>, seen: &mut Vec<bool>) -> i64 {
        let n = 4 * self.edges.len();
        images.resize(n, 0);
        self.fill_p(sys, images);
        seen.clear();
        seen.resize(n, false);
        let mut cycles = 0i64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = images[x ^ 3] as usize;
            }
        }
        let chi = self.vertices as i64 - self.edges.len() as i64 + cycles / 2;
        if sys.lam.iter().all(|&l| l == 0) {
            (2 - chi) / 2
        } else {
            -(2 - chi)
        }
    }

    /// Compares the tree-normalized image `g·x` against `x` and its mirror.
    #[inline]
    fn fixed(&self, g: &[u32], ginv: &[u32], x: &Sys, sigma: &mut [u8]) -> (bool, bool) {
        let lam2 = |e: usize| x.lam[ginv[2 * e] as usize / 2];
        sigma[0] = 0;
        for &(p, c, e) in &self.tree_order {
            sigma[c] = sigma[p] ^ lam2(e);
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if lam2(e) ^ sigma[u] ^ sigma[v] != x.lam[e] {
                return (false, false);
            }
        }
        let mut same = true;
        let mut mirror = true;
        for t in 0..x.next.len() {
            let src = ginv[t] as usize;
            let (fwd, back) = (g[x.next[src] as usize], g[x.prev[src] as usize]);
            let image = if sigma[self.vertex_of[t]] == 0 {
                fwd
            } else {
                back
            };
            same &= image == x.next[t];
            mirror &= image == x.prev[t];
            if !same && !mirror {
                return (false, false);
            }
        }
        (same, mirror)
    }
}

fn chunks(total: u64, workers: usize) -> Vec<(u64, u64)> {
    let pieces = (workers.max(1) as u64 * 16).min(total.max(1));
    let step = total.div_ceil(pieces).max(1);
    (0..pieces)
        .map(|i| (i * step, ((i + 1) * step).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Every rotation system of the class, in rank order.
pub fn enumerate_rotation_systems(
    graph: &MultiGraph,
    class: EmbeddingClass,
    budget: u64,
) -> Result<impl Iterator<Item = RotationSystem>> {
    let total = check_budget(graph, class, budget)?;
    let ctx = Ctx::new(graph, class);
    let mut sys = ctx.empty_sys();
    Ok((0..total).map(move |r| {
        ctx.decode(r, &mut sys);
        ctx.to_rotation(&sys)
    }))
}

/// The map of a rotation system: semi-arc `2e + b` becomes quadricell
/// `4e + b` (plus `2` when `b = 1` and `λ(e) = 0`), and `P` follows the rotation.
pub fn map_from_rotation(graph: &MultiGraph, rs: &RotationSystem) -> Result<CombMap> {
    rs.check(graph)?;
    let ctx = Ctx::new(graph, EmbeddingClass::LocallyOrientable);
    Ok(ctx.to_map(&ctx.sys_of(rs)))
}

/// Tally of rotation systems by signed genus (negative for non-orientable).
pub fn genus_distribution(
    graph: &MultiGraph,
    class: EmbeddingClass,
    opts: &EnumOptions,
) -> Result<BTreeMap<i64, u64>> {
    let total = check_budget(graph, class, opts.budget)?;
    let ctx = Ctx::new(graph, class);
    let parts: Vec<BTreeMap<i64, u64>> = opts.run(|| {
        chunks(total, opts.workers)
            .into_par_iter()
            .map(|(a, b)| {
                let mut sys = ctx.empty_sys();
                let (mut images, mut seen) = (Vec::new(), Vec::new());
                let mut tally = BTreeMap::new();
                for r in a..b {
                    ctx.decode(r, &mut sys);
                    *tally
                        .entry(ctx.signed_genus(&sys, &mut images, &mut seen))
                        .or_insert(0) += 1;
                }
                tally
            })
            .collect()
    });
    Ok(merge(parts))
}

fn merge(parts: Vec<BTreeMap<i64, u64>>) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for p in parts {
        for (k, v) in p {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideResult {
    pub class: EmbeddingClass,
    pub relation: Relation,
    pub count: u64,
    /// Count per signed genus.
    pub by_genus: BTreeMap<i64, u64>,
    #[serde(skip)]
    pub group_order: usize,
    #[serde(skip)]
    pub systems: u64,
}

/// Fixed-point tallies per signed genus: systems fixed up to mirror, and literally.
#[derive(Default)]
struct FixedTally {
    up_to_mirror: BTreeMap<i64, u64>,
    literal: BTreeMap<i64, u64>,
    both: u64,
}

/// Counts unrooted maps (or inequivalent embeddings) by Burnside's lemma over
/// the semi-arc automorphism group, filtering the enumeration for fixed points.
pub fn burnside_count(
    graph: &MultiGraph,
    class: EmbeddingClass,
    relation: Relation,
    opts: &EnumOptions,
) -> Result<BurnsideResult> {
    let total = check_budget(graph, class, opts.budget)?;
    let group = graph.semiarc_aut_group(opts.caps)?;
    let gens: Vec<(Vec<u32>, Vec<u32>)> = group
        .iter()
        .map(|g| (g.images().to_vec(), g.inverse().images().to_vec()))
        .collect();
    let ctx = Ctx::new(graph, class);
    let parts: Vec<FixedTally> = opts.run(|| {
        chunks(total, opts.workers)
            .into_par_iter()
            .map(|(a, b)| {
                let mut sys = ctx.empty_sys();
                let (mut images, mut seen) = (Vec::new(), Vec::new());
                let mut sigma = vec![0u8; ctx.vertices];
                let mut tally = FixedTally::default();
                for r in a..b {
                    ctx.decode(r, &mut sys);
                    let (mut up, mut lit) = (0u64, 0u64);
                    for (g, ginv) in &gens {
                        let (same, mirror) = ctx.fixed(g, ginv, &sys, &mut sigma);
                        up += (same || mirror) as u64;
                        lit += same as u64;
                        tally.both += (same && mirror) as u64;
                    }
                    let genus = ctx.signed_genus(&sys, &mut images, &mut seen);
                    *tally.up_to_mirror.entry(genus).or_insert(0) += up;
                    *tally.literal.entry(genus).or_insert(0) += lit;
                }
                tally
            })
            .collect()
    });
    let mut up = Vec::new();
    let mut lit = Vec::new();
    let mut both = 0;
    for p in parts {
        up.push(p.up_to_mirror);
        lit.push(p.literal);
        both += p.both;
    }
    let (up, lit) = (merge(up), merge(lit));
    let order = group.order() as u64;
    let chiral = ctx.max_valency >= 3;
    if chiral && both != 0 {
        return Err(Error::InvalidRotation(
            "a system equals its own mirror although some valency is at least 3".into(),
        ));
    }
    let mut by_genus = BTreeMap::new();
    for (&genus, &fixed_up) in &up {
        let (numer, denom) = match relation {
            Relation::Isomorphism => (fixed_up, if chiral { 2 * order } else { order }),
            Relation::Equivalence if genus >= 0 && ctx.class != EmbeddingClass::NonOrientable => {
                (lit[&genus], order)
            }
            Relation::Equivalence => (fixed_up, order),
        };
        if numer % denom != 0 {
            return Err(Error::NonIntegral(format!(
                "{numer}/{denom} at genus {genus}"
            )));
        }
        by_genus.insert(genus, numer / denom);
    }
    by_genus.retain(|_, v| *v > 0);
    Ok(BurnsideResult {
        class,
        relation,
        count: by_genus.values().sum(),
        by_genus,
        group_order: group.order(),
        systems: total,
    })
}

/// One orbit representative found by exhaustive canonical-form comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRep {
    pub map: CombMap,
    pub system: RotationSystem,
    pub invariants: MapInvariants,
    pub code: Vec<u32>,
}

/// Explicit orbit representatives, independent of any group computation:
/// every system is turned into a map and compared by canonical code.
///
/// Under [`Relation::Equivalence`] orientable maps are compared by
/// orientation-preserving codes; each non-orientable class contributes the
/// class representative and its mirror system when some valency is ≥ 3.
pub fn orbit_partition(
    graph: &MultiGraph,
    class: EmbeddingClass,
    relation: Relation,
    opts: &EnumOptions,
) -> Result<Vec<OrbitRep>> {
    let total = check_budget(graph, class, opts.budget)?;
    let ctx = Ctx::new(graph, class);
    let parts: Vec<HashMap<(bool, Vec<u32>), u64>> = opts.run(|| {
        chunks(total, opts.workers)
            .into_par_iter()
            .map(|(a, b)| {
                let mut sys = ctx.empty_sys();
                let mut found: HashMap<(bool, Vec<u32>), u64> = HashMap::new();
                for r in a..b {
                    ctx.decode(r, &mut sys);
                    let map = ctx.to_map(&sys);
                    let orientable = sys.lam.iter().all(|&l| l == 0);
                    let roots = if relation == Relation::Equivalence && orientable {
                        Roots::Positive
                    } else {
                        Roots::All
                    };
                    found
                        .entry((orientable, map.canonical_code(roots)))
                        .or_insert(r);
                }
                found
            })
            .collect()
    });
    let mut classes: BTreeMap<(bool, Vec<u32>), u64> = BTreeMap::new();
    for p in parts {
        for (k, r) in p {
            classes
                .entry(k)
                .and_modify(|x| *x = (*x).min(r))
                .or_insert(r);
        }
    }
    let mut sys = ctx.empty_sys();
    let mut reps = Vec::new();
    for ((orientable, code), rank) in classes {
        ctx.decode(rank, &mut sys);
        let system = ctx.to_rotation(&sys);
        let map = ctx.to_map(&sys);
        let invariants = map.invariants();
        debug_assert_eq!(invariants.orientable, orientable);
        if relation == Relation::Equivalence && !orientable && ctx.max_valency >= 3 {
            let mirror = system.mirror();
            let mirror_map = map_from_rotation(graph, &mirror)?;
            reps.push(OrbitRep {
                map: mirror_map,
                system: mirror,
                invariants,
                code: code.clone(),
            });
        }
        reps.push(OrbitRep {
            map,
            system,
            invariants,
            code,
        });
    }
    reps.sort_by(|a, b| {
        (a.code.as_slice(), a.map.p().images()).cmp(&(b.code.as_slice(), b.map.p().images()))
    });
    Ok(reps)
}

/// Exact `(n^O, n^L)` for the complete graph `K_n` by Burnside's lemma
/// organised over conjugacy classes of `S_n` and switching sets `S ⊆ V`.
///
/// For a vertex permutation `g` and switching set `S`, the systems with
/// `g·x = switch_S(x)` factor over the cycles of `g`: a vertex cycle
/// contributes the cyclic orders at one of its vertices that the cycle's
/// return map fixes or reverses, and an edge cycle contributes `2` when
/// `S` cuts it an even number of times.
pub fn complete_map_counts(n: usize) -> Result<(BigUint, BigUint)> {
    if !(3..=12).contains(&n) {
        return Err(Error::OutOfRange(format!("complete graph order {n}")));
    }
    let mut memo: HashMap<(Vec<usize>, bool), u64> = HashMap::new();
    let mut sum_o = BigUint::zero();
    let mut sum_l = BigUint::zero();
    let z = cycle_index_sn(n);
    for parts in partitions(n) {
        // a representative permutation with this cycle type
        let mut g = vec![0usize; n];
        let mut cycles = Vec::new();
        let mut start = 0;
        for &k in &parts {
            let c: Vec<usize> = (start..start + k).collect();
            for i in 0..k {
                g[c[i]] = c[(i + 1) % k];
            }
            cycles.push(c);
            start += k;
        }
        let mut exps = vec![0u32; n];
        for &k in &parts {
            exps[k - 1] += 1;
        }
        let class_size = (z.coefficient(&exps)
            * num_rational::BigRational::from_integer(factorial(n).into()))
        .to_integer()
        .to_biguint()
        .expect("class sizes are positive");
        let mut edge_cycles: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut seen = vec![vec![false; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                if seen[u][v] {
                    continue;
                }
                let mut cyc = Vec::new();
                let (mut a, mut b) = (u, v);
                while !seen[a.min(b)][a.max(b)] {
                    seen[a.min(b)][a.max(b)] = true;
                    cyc.push((a, b));
                    (a, b) = (g[a], g[b]);
                }
                edge_cycles.push(cyc);
            }
        }
        let mut total_o: u128 = 0;
        let mut total_l: u128 = 0;
        for s in 0u32..(1 << n) {
            let in_s = |v: usize| (s >> v) & 1 == 1;
            let mut vertex_factor: u128 = 1;
            for c in &cycles {
                let parity = c.iter().filter(|&&v| in_s(v)).count() % 2 == 1;
                // return map g^k on the neighbours of c[0]
                let mut h: Vec<usize> = (0..n).collect();
                for _ in 0..c.len() {
                    h = h.iter().map(|&x| g[x]).collect();
                }
                let v0 = c[0];
                let others: Vec<usize> = (0..n).filter(|&x| x != v0).collect();
                let mut ty: Vec<usize> = Vec::new();
                let mut done = vec![false; n];
                for &x in &others {
                    if done[x] {
                        continue;
                    }
                    let mut len = 0;
                    let mut y = x;
                    while !done[y] {
                        done[y] = true;
                        len += 1;
                        y = h[y];
                    }
                    ty.push(len);
                }
                ty.sort_unstable_by(|a, b| b.cmp(a));
                let f = *memo
                    .entry((ty.clone(), parity))
                    .or_insert_with(|| fixed_cyclic_orders(&ty, parity));
                vertex_factor *= f as u128;
                if vertex_factor == 0 {
                    break;
                }
            }
            if vertex_factor == 0 {
                continue;
            }
            if s == 0 || s == (1 << n) - 1 {
                total_o += vertex_factor;
            }
            let mut edge_factor: u128 = 1;
            for cyc in &edge_cycles {
                let cut = cyc.iter().filter(|&&(a, b)| in_s(a) != in_s(b)).count();
                if cut % 2 == 1 {
                    edge_factor = 0;
                    break;
                }
                edge_factor *= 2;
            }
            total_l += vertex_factor * edge_factor;
        }
        sum_o += &class_size * BigUint::from(total_o);
        sum_l += &class_size * BigUint::from(total_l);
    }
    let order = factorial(n);
    let o = sum_o / (BigUint::from(2u32) * &order);
    let l = sum_l / ((BigUint::one() << n) * &order);
    Ok((o, l))
}

/// Cyclic orders `J` on points permuted with the given cycle type by `h`
/// such that `hJh⁻¹ = J` (or `= J⁻¹` when `reverse`).
fn fixed_cyclic_orders(cycle_type: &[usize], reverse: bool) -> u64 {
    let m: usize = cycle_type.iter().sum();
    if m == 0 {
        return 1;
    }
    let mut h = vec![0usize; m];
    let mut start = 0;
    for &k in cycle_type {
        for i in 0..k {
            h[start + i] = start + (i + 1) % k;
        }
        start += k;
    }
    let mut count = 0;
    for rest in crate::graph::permutations(m - 1) {
        let order: Vec<usize> = std::iter::once(0)
            .chain(rest.iter().map(|&x| x + 1))
            .collect();
        let mut next = vec![0usize; m];
        for i in 0..m {
            next[order[i]] = order[(i + 1) % m];
        }
        // hJh⁻¹ = J  ⇔  h(Jx) = J(hx);  hJh⁻¹ = J⁻¹  ⇔  J(h(Jx)) = hx
        let ok = (0..m).all(|x| {
            if reverse {
                next[h[next[x]]] == h[x]
            } else {
                h[next[x]] == next[h[x]]
            }
        });
        count += ok as u64;
    }
    count
}
