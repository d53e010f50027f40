//! Closed s-manifolds: triangular maps with vertex valencies in {5, 6, 7}.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{CombMap, MapInvariants, Roots};
use crate::perm::Perm;

/// Largest face count the census accepts.
pub const CENSUS_FACE_CAP: usize = 24;

/// The three flag involutions of a map: `r0` changes vertex, `r1` changes
/// edge, `r2` changes face. A quadricell map uses `α = r2`, `β = r0` and
/// `P = r2∘r1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub r0: Vec<u32>,
    pub r1: Vec<u32>,
    pub r2: Vec<u32>,
}

impl Flags {
    pub fn from_map(map: &CombMap) -> Flags {
        let n = map.quadricell_count() as u32;
        Flags {
            r0: (0..n).map(|q| q ^ 1).collect(),
            r1: (0..n).map(|q| map.p().apply(q) ^ 2).collect(),
            r2: (0..n).map(|q| q ^ 2).collect(),
        }
    }

    pub fn to_map(&self) -> Result<CombMap> {
        let n = self.r0.len();
        let mut quad = vec![u32::MAX; n];
        let mut edges = 0u32;
        for x in 0..n {
            if quad[x] != u32::MAX {
                continue;
            }
            let orbit = [
                x as u32,
                self.r0[x],
                self.r2[x],
                self.r0[self.r2[x] as usize],
            ];
            let distinct: BTreeSet<u32> = orbit.iter().copied().collect();
            if distinct.len() != 4 || self.r2[self.r0[x] as usize] != orbit[3] {
                return Err(Error::InvalidMap(format!("degenerate edge at flag {x}")));
            }
            for (c, &f) in orbit.iter().enumerate() {
                quad[f as usize] = 4 * edges + c as u32;
            }
            edges += 1;
        }
        let mut images = vec![0u32; n];
        for x in 0..n {
            let y = self.r2[self.r1[x] as usize];
            images[quad[x] as usize] = quad[y as usize];
        }
        CombMap::new(edges as usize, Perm::from_images(images)?)
    }

    /// Flags of a simplicial surface: flag `6t + 2i + s` sits at corner `i`
    /// of triangle `t` on the side `(i, i+1+s mod 3)`.
    pub fn from_triangles(triangles: &[[usize; 3]]) -> Result<Flags> {
        let n = 6 * triangles.len();
        let mut sides: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            let distinct: BTreeSet<usize> = tri.iter().copied().collect();
            if distinct.len() != 3 {
                return Err(Error::NotTriangular(format!(
                    "triangle {t} repeats a vertex"
                )));
            }
            for i in 0..3 {
                let (a, b) = (tri[i], tri[(i + 1) % 3]);
                sides.entry((a.min(b), a.max(b))).or_default().push((t, i));
            }
        }
        if let Some((e, _)) = sides.iter().find(|(_, v)| v.len() != 2) {
            return Err(Error::NotTriangular(format!(
                "edge {e:?} is not in exactly two triangles"
            )));
        }
        let flag = |t: usize, corner: usize, other: usize| -> u32 {
            let s = usize::from((corner + 1) % 3 != other);
            (6 * t + 2 * corner + s) as u32
        };
        let side_other = |corner: usize, s: usize| {
            if s == 0 {
                (corner + 1) % 3
            } else {
                (corner + 2) % 3
            }
        };
        let mut r0 = vec![0u32; n];
        let mut r1 = vec![0u32; n];
        let mut r2 = vec![0u32; n];
        for (t, tri) in triangles.iter().enumerate() {
            for corner in 0..3 {
                for s in 0..2 {
                    let x = 6 * t + 2 * corner + s;
                    let other = side_other(corner, s);
                    r0[x] = flag(t, other, corner);
                    r1[x] = (6 * t + 2 * corner + 1 - s) as u32;
                    let (a, b) = (tri[corner], tri[other]);
                    let (u, _) = sides[&(a.min(b), a.max(b))]
                        .iter()
                        .copied()
                        .find(|&(u, _)| u != t)
                        .expect("two sides");
                    let c2 = triangles[u]
                        .iter()
                        .position(|&w| w == a)
                        .expect("shared vertex");
                    let o2 = triangles[u]
                        .iter()
                        .position(|&w| w == b)
                        .expect("shared vertex");
                    r2[x] = flag(u, c2, o2);
                }
            }
        }
        Ok(Flags { r0, r1, r2 })
    }

    /// Splits every triangle into four through the edge midpoints.
    ///
    /// Each flag `x` spawns four: `4x` at the old corner, `4x+1` at the
    /// midpoint on the old side, `4x+2` at the midpoint on the cutting side
    /// of the corner triangle, `4x+3` on the same side in the middle triangle.
    pub fn midpoint_subdivision(&self) -> Flags {
        let n = self.r0.len();
        let mut r0 = vec![0u32; 4 * n];
        let mut r1 = vec![0u32; 4 * n];
        let mut r2 = vec![0u32; 4 * n];
        for x in 0..n {
            let b = 4 * x as u32;
            let (x0, x1, x2) = (4 * self.r0[x], 4 * self.r1[x], 4 * self.r2[x]);
            r0[b as usize] = b + 1;
            r1[b as usize] = x1;
            r2[b as usize] = x2;
            r0[b as usize + 1] = b;
            r1[b as usize + 1] = b + 2;
            r2[b as usize + 1] = x2 + 1;
            r0[b as usize + 2] = x1 + 2;
            r1[b as usize + 2] = b + 1;
            r2[b as usize + 2] = b + 3;
            r0[b as usize + 3] = x1 + 3;
            r1[b as usize + 3] = x0 + 3;
            r2[b as usize + 3] = b + 2;
        }
        Flags { r0, r1, r2 }
    }
}

/// A map whose faces are all triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularMap {
    map: CombMap,
}

impl TriangularMap {
    pub fn new(map: CombMap) -> Result<TriangularMap> {
        if let Some(l) = map.face_lengths().into_iter().find(|&l| l != 3) {
            return Err(Error::NotTriangular(format!("face of length {l}")));
        }
        Ok(TriangularMap { map })
    }

    pub fn from_triangles(triangles: &[[usize; 3]]) -> Result<TriangularMap> {
        TriangularMap::new(Flags::from_triangles(triangles)?.to_map()?)
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn invariants(&self) -> MapInvariants {
        self.map.invariants()
    }

    /// `(v₅, v₆, v₇)`.
    pub fn valency_counts(&self) -> (usize, usize, usize) {
        let vals = self.map.vertex_valencies();
        let count = |k| vals.iter().filter(|&&v| v == k).count();
        (count(5), count(6), count(7))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SManifoldClass {
    /// 5-regular (elliptic).
    Delta1,
    /// 6-regular (euclid).
    Delta2,
    /// 7-regular (hyperbolic).
    Delta3,
    /// Valencies 5 and 6 (euclid-elliptic).
    Delta4,
    /// Valencies 5 and 7 (elliptic-hyperbolic).
    Delta5,
    /// Valencies 6 and 7 (euclid-hyperbolic).
    Delta6,
    /// Valencies 5, 6 and 7 (mixed).
    Delta7,
    NotSManifold,
}

impl SManifoldClass {
    pub fn code(self) -> &'static str {
        match self {
            SManifoldClass::Delta1 => "D1",
            SManifoldClass::Delta2 => "D2",
            SManifoldClass::Delta3 => "D3",
            SManifoldClass::Delta4 => "D4",
            SManifoldClass::Delta5 => "D5",
            SManifoldClass::Delta6 => "D6",
            SManifoldClass::Delta7 => "D7",
            SManifoldClass::NotSManifold => "none",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SManifoldClass::Delta1 => "elliptic",
            SManifoldClass::Delta2 => "euclid",
            SManifoldClass::Delta3 => "hyperbolic",
            SManifoldClass::Delta4 => "euclid-elliptic",
            SManifoldClass::Delta5 => "elliptic-hyperbolic",
            SManifoldClass::Delta6 => "euclid-hyperbolic",
            SManifoldClass::Delta7 => "mixed",
            SManifoldClass::NotSManifold => "not an s-manifold",
        }
    }

    pub fn from_valencies(vals: impl IntoIterator<Item = usize>) -> SManifoldClass {
        let set: BTreeSet<usize> = vals.into_iter().collect();
        if set.iter().any(|v| !(5..=7).contains(v)) {
            return SManifoldClass::NotSManifold;
        }
        let has: Vec<bool> = (5..=7).map(|k| set.contains(&k)).collect();
        match (has[0], has[1], has[2]) {
            (true, false, false) => SManifoldClass::Delta1,
            (false, true, false) => SManifoldClass::Delta2,
            (false, false, true) => SManifoldClass::Delta3,
            (true, true, false) => SManifoldClass::Delta4,
            (true, false, true) => SManifoldClass::Delta5,
            (false, true, true) => SManifoldClass::Delta6,
            (true, true, true) => SManifoldClass::Delta7,
            (false, false, false) => SManifoldClass::NotSManifold,
        }
    }
}

pub fn classify(t: &TriangularMap) -> SManifoldClass {
    SManifoldClass::from_valencies(t.map.vertex_valencies())
}

/// The icosahedron.
pub fn generate_o20() -> TriangularMap {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut tris = Vec::new();
    for i in 0..5 {
        tris.push([0, up(i), up(i + 1)]);
        tris.push([up(i), low(i), up(i + 1)]);
        tris.push([up(i + 1), low(i), low(i + 1)]);
        tris.push([11, low(i + 1), low(i)]);
    }
    TriangularMap::from_triangles(&tris).expect("icosahedron")
}

/// `K₆` on the projective plane.
pub fn generate_p10() -> TriangularMap {
    let tris = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    TriangularMap::from_triangles(&tris).expect("hemi-icosahedron")
}

fn grid(a: usize, b: usize, twist: bool) -> Result<TriangularMap> {
    if a < 3 || b < 3 {
        return Err(Error::OutOfRange(format!(
            "grid {a}×{b} needs both sides ≥ 3"
        )));
    }
    let (ai, bi) = (a as i64, b as i64);
    // on the Klein bottle row b is row 0 reflected
    let v = |i: i64, j: i64| -> usize {
        let (i, j) = if twist && j == bi { (-i, 0) } else { (i, j) };
        (j.rem_euclid(bi) * ai + i.rem_euclid(ai)) as usize
    };
    let mut tris = Vec::new();
    for j in 0..bi {
        for i in 0..ai {
            tris.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tris.push([v(i, j), v(i + 1, j + 1), v(i, j + 1)]);
        }
    }
    TriangularMap::from_triangles(&tris)
}

/// The 6-regular `a×b` grid triangulation of the torus.
pub fn torus(a: usize, b: usize) -> Result<TriangularMap> {
    grid(a, b, false)
}

/// The 6-regular `a×b` grid triangulation of the Klein bottle.
pub fn klein_bottle(a: usize, b: usize) -> Result<TriangularMap> {
    grid(a, b, true)
}

/// The midpoint subdivision Ξ.
pub fn midpoint_subdivision(t: &TriangularMap) -> TriangularMap {
    let map = Flags::from_map(&t.map)
        .midpoint_subdivision()
        .to_map()
        .expect("subdivision is a map");
    TriangularMap::new(map).expect("subdivision is triangular")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub chi: i64,
    pub v5: usize,
    pub v7: usize,
    pub holds: bool,
}

/// `v₇ ≥ v₅+2` when `χ ≤ −1` and `v₇ ≤ v₅−2` when `χ ≥ 1`.
pub fn valency_gap_check(t: &TriangularMap) -> Result<GapReport> {
    if classify(t) == SManifoldClass::NotSManifold {
        return Err(Error::NotSManifold(format!(
            "valencies {:?}",
            t.map.vertex_valencies()
        )));
    }
    let chi = t.map.euler_characteristic();
    let (v5, _, v7) = t.valency_counts();
    let (v5i, v7i) = (v5 as i64, v7 as i64);
    let holds = match chi {
        c if c <= -1 => v7i >= v5i + 2,
        c if c >= 1 => v7i <= v5i - 2,
        _ => true,
    };
    Ok(GapReport { chi, v5, v7, holds })
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub class: SManifoldClass,
    pub invariants: MapInvariants,
    pub v5: usize,
    pub v6: usize,
    pub v7: usize,
    pub map: TriangularMap,
    pub code: Vec<u32>,
}

/// Partial simplicial surface grown one triangle at a time.
#[derive(Clone)]
struct Partial {
    triangles: Vec<[u8; 3]>,
    /// Link edges of each vertex.
    links: Vec<Vec<(u8, u8)>>,
    closed: Vec<bool>,
}

impl Partial {
    fn link_degree(&self, v: usize, a: u8) -> usize {
        self.links[v]
            .iter()
            .filter(|&&(x, y)| x == a || y == a)
            .count()
    }

    fn link_vertices(&self, v: usize) -> usize {
        let set: BTreeSet<u8> = self.links[v].iter().flat_map(|&(x, y)| [x, y]).collect();
        set.len()
    }

    /// Adds `(a, b)` to the link of `v`; false if that breaks the manifold condition.
    fn add_link_edge(&mut self, v: usize, a: u8, b: u8, max_deg: usize) -> bool {
        if self.closed[v] || self.link_degree(v, a) >= 2 || self.link_degree(v, b) >= 2 {
            return false;
        }
        if self.links[v]
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
        {
            return false;
        }
        let connected = self.path_connects(v, a, b);
        self.links[v].push((a, b));
        let verts = self.link_vertices(v);
        if verts > max_deg {
            return false;
        }
        if connected {
            // a cycle formed: it must be the whole link
            if verts != self.links[v].len() || verts < 5 {
                return false;
            }
            self.closed[v] = true;
        }
        true
    }

    fn path_connects(&self, v: usize, a: u8, b: u8) -> bool {
        let mut prev = u8::MAX;
        let mut cur = a;
        loop {
            let next = self.links[v].iter().find_map(|&(x, y)| {
                if x == cur && y != prev {
                    Some(y)
                } else if y == cur && x != prev {
                    Some(x)
                } else {
                    None
                }
            });
            match next {
                Some(n) if n == b => return true,
                Some(n) => {
                    prev = cur;
                    cur = n;
                }
                None => return false,
            }
        }
    }

    fn add_triangle(&mut self, t: [u8; 3], max_deg: usize) -> bool {
        let [a, b, c] = t;
        self.triangles.push(t);
        self.add_link_edge(a as usize, b, c, max_deg)
            && self.add_link_edge(b as usize, a, c, max_deg)
            && self.add_link_edge(c as usize, a, b, max_deg)
    }

    /// The open vertex with the largest link and a free path end in it.
    fn next_gap(&self) -> Option<(usize, u8)> {
        let v = (0..self.links.len())
            .filter(|&v| !self.closed[v])
            .max_by_key(|&v| (self.link_vertices(v), std::cmp::Reverse(v)))?;
        let end = self.links[v]
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .filter(|&x| self.link_degree(v, x) == 1)
            .min()
            .expect("open link has an end");
        Some((v, end))
    }
}

struct Search {
    max_faces: usize,
    max_deg: usize,
}

impl Search {
    fn lower_bound_faces(&self, p: &Partial) -> usize {
        let total: usize = (0..p.links.len()).map(|v| p.link_vertices(v).max(5)).sum();
        total.div_ceil(3)
    }

    fn run(&self, p: Partial, out: &mut Vec<Vec<[u8; 3]>>) {
        if self.lower_bound_faces(&p) > self.max_faces {
            return;
        }
        let Some((v, end)) = p.next_gap() else {
            out.push(p.triangles);
            return;
        };
        let max_vertices = self.max_faces / 2 + 2;
        let nv = p.links.len();
        for c in 0..=nv {
            if c == v || c == end as usize {
                continue;
            }
            let mut q = p.clone();
            if c == nv {
                if nv >= max_vertices {
                    continue;
                }
                q.links.push(Vec::new());
                q.closed.push(false);
            }
            if q.add_triangle([v as u8, end, c as u8], self.max_deg)
                && q.triangles.len() <= self.max_faces
            {
                self.run(q, out);
            }
        }
    }
}

fn census_for_degree(max_faces: usize, d: usize) -> Vec<Vec<[u8; 3]>> {
    let mut p = Partial {
        triangles: Vec::new(),
        links: vec![Vec::new(); d + 1],
        closed: vec![false; d + 1],
    };
    for i in 1..=d {
        let j = if i == d { 1 } else { i + 1 };
        p.triangles.push([0, i as u8, j as u8]);
        p.links[0].push((i as u8, j as u8));
        p.links[i].push((0, j as u8));
        p.links[j].push((0, i as u8));
    }
    p.closed[0] = true;
    let search = Search {
        max_faces,
        max_deg: d,
    };
    let mut out = Vec::new();
    search.run(p, &mut out);
    out
}

/// All simplicial closed s-manifolds with at most `max_faces` triangles, one
/// per isomorphism class, sorted by face count and canonical code.
pub fn census(max_faces: usize) -> Result<Vec<CensusEntry>> {
    if max_faces > CENSUS_FACE_CAP {
        return Err(Error::CapExceeded {
            what: "census faces",
            cap: CENSUS_FACE_CAP,
        });
    }
    let found: Vec<Vec<[u8; 3]>> = (5..=7usize)
        .into_par_iter()
        .flat_map_iter(|d| census_for_degree(max_faces, d))
        .collect();
    let mut seen = BTreeMap::new();
    for tris in found {
        let tris: Vec<[usize; 3]> = tris.iter().map(|t| t.map(usize::from)).collect();
        let t = TriangularMap::from_triangles(&tris)?;
        let code = t.map.canonical_code(Roots::All);
        seen.entry((tris.len(), code)).or_insert(t);
    }
    Ok(seen
        .into_iter()
        .map(|((_, code), t)| {
            let (v5, v6, v7) = t.valency_counts();
            CensusEntry {
                class: classify(&t),
                invariants: t.invariants(),
                v5,
                v6,
                v7,
                map: t,
                code,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedron() {
        let o = generate_o20();
        let inv = o.invariants();
        assert_eq!(
            (inv.v, inv.e, inv.f, inv.chi, inv.orientable),
            (12, 30, 20, 2, true)
        );
        assert_eq!(classify(&o), SManifoldClass::Delta1);
        assert_eq!(o.map().automorphisms().len(), 120);
    }

    #[test]
    fn projective_plane() {
        let p = generate_p10();
        let inv = p.invariants();
        assert_eq!(
            (inv.v, inv.e, inv.f, inv.chi, inv.orientable),
            (6, 15, 10, 1, false)
        );
        assert_eq!(classify(&p), SManifoldClass::Delta1);
    }

    #[test]
    fn grids() {
        let t = torus(3, 3).unwrap();
        let inv = t.invariants();
        assert_eq!((inv.v, inv.chi, inv.orientable), (9, 0, true));
        assert_eq!(classify(&t), SManifoldClass::Delta2);
        let k = klein_bottle(3, 4).unwrap();
        let inv = k.invariants();
        assert_eq!((inv.v, inv.chi, inv.orientable), (12, 0, false));
        assert_eq!(classify(&k), SManifoldClass::Delta2);
    }

    #[test]
    fn subdivision_counts() {
        let o = generate_o20();
        let s = midpoint_subdivision(&o);
        let inv = s.invariants();
        assert_eq!((inv.v, inv.e, inv.f, inv.chi), (42, 120, 80, 2));
        assert_eq!(classify(&s), SManifoldClass::Delta4);
        assert_eq!(s.valency_counts(), (12, 30, 0));
        let p = midpoint_subdivision(&generate_p10());
        assert_eq!(p.invariants().chi, 1);
        assert!(!p.invariants().orientable);
    }

    #[test]
    fn flags_roundtrip() {
        let o = generate_o20();
        let back = Flags::from_map(o.map()).to_map().unwrap();
        assert_eq!(&back, o.map());
    }

    #[test]
    fn classes() {
        assert_eq!(
            SManifoldClass::from_valencies([5, 7]),
            SManifoldClass::Delta5
        );
        assert_eq!(
            SManifoldClass::from_valencies([5, 6, 7]),
            SManifoldClass::Delta7
        );
        assert_eq!(
            SManifoldClass::from_valencies([4, 5]),
            SManifoldClass::NotSManifold
        );
    }

    #[test]
    fn gap_check() {
        let r = valency_gap_check(&generate_o20()).unwrap();
        assert_eq!((r.chi, r.v5, r.v7, r.holds), (2, 12, 0, true));
        assert!(valency_gap_check(&torus(3, 3).unwrap()).unwrap().holds);
    }

    #[test]
    fn not_triangular() {
        assert!(TriangularMap::new(crate::map::tests::fig12()).is_err());
    }

    #[test]
    fn small_census() {
        let c = census(12).unwrap();
        let d1: Vec<_> = c
            .iter()
            .filter(|e| e.class == SManifoldClass::Delta1)
            .collect();
        assert_eq!(d1.len(), 1);
        assert!(d1[0].map.map().is_isomorphic(generate_p10().map()));
    }
}
