//! Connected multigraphs with loops, and their automorphism groups.
//!
//! Semi-arc `2e + b` is end `b` of edge `e`; end 0 sits at the first
//! listed endpoint.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// Limits for brute-force automorphism searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCaps {
    pub max_vertices: usize,
    pub max_semiarcs: usize,
    pub max_order: usize,
}

impl Default for GroupCaps {
    fn default() -> GroupCaps {
        GroupCaps {
            max_vertices: 8,
            max_semiarcs: 24,
            max_order: 500_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<MultiGraph> {
        if vertices == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::InvalidGraph(format!(
                "edge ({u},{v}) out of range for {vertices} vertices"
            )));
        }
        let g = MultiGraph { vertices, edges };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<MultiGraph> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        MultiGraph::new(n, edges)
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Result<MultiGraph> {
        let mut edges = Vec::new();
        for u in 0..m {
            for v in 0..n {
                edges.push((u, m + v));
            }
        }
        MultiGraph::new(m + n, edges)
    }

    /// One vertex with `n` loops.
    pub fn bouquet(n: usize) -> Result<MultiGraph> {
        MultiGraph::new(1, vec![(0, 0); n])
    }

    /// Two vertices joined by `n` parallel edges.
    pub fn dipole(n: usize) -> Result<MultiGraph> {
        MultiGraph::generalized_dipole(n, 0, 0)
    }

    /// A dipole with `k` loops at the first vertex and `l` at the second.
    pub fn generalized_dipole(n: usize, k: usize, l: usize) -> Result<MultiGraph> {
        let mut edges = vec![(0, 1); n];
        edges.extend(std::iter::repeat_n((0, 0), k));
        edges.extend(std::iter::repeat_n((1, 1), l));
        MultiGraph::new(2, edges)
    }

    pub fn path(n: usize) -> Result<MultiGraph> {
        MultiGraph::new(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    /// Parses `K{n}`, `K{m},{n}`, `B{n}`, `Dp{n}` and `Dp{n},{k},{l}`.
    pub fn from_name(name: &str) -> Result<MultiGraph> {
        let bad = || Error::InvalidGraph(format!("unknown graph name {name:?}"));
        let nums = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        if let Some(rest) = name.strip_prefix("Dp") {
            return match nums(rest)?.as_slice() {
                [n] => MultiGraph::dipole(*n),
                [n, k, l] => MultiGraph::generalized_dipole(*n, *k, *l),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = name.strip_prefix('K') {
            return match nums(rest)?.as_slice() {
                [n] => MultiGraph::complete(*n),
                [m, n] => MultiGraph::complete_bipartite(*m, *n),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = name.strip_prefix('B') {
            return match nums(rest)?.as_slice() {
                [n] => MultiGraph::bouquet(*n),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn semiarc_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Vertex carrying semi-arc `s`.
    #[inline]
    pub fn semiarc_vertex(&self, s: usize) -> usize {
        let (u, v) = self.edges[s / 2];
        if s.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    /// Semi-arcs at each vertex, in increasing order.
    pub fn semiarcs_by_vertex(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices];
        for s in 0..self.semiarc_count() {
            out[self.semiarc_vertex(s)].push(s);
        }
        out
    }

    pub fn valency_sequence(&self) -> Vec<usize> {
        self.semiarcs_by_vertex().iter().map(Vec::len).collect()
    }

    pub fn max_valency(&self) -> usize {
        self.valency_sequence().into_iter().max().unwrap_or(0)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn betti(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut comps = self.vertices;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Edges of the depth-first spanning tree from vertex 0 that always
    /// follows the lowest-index semi-arc first.
    pub fn spanning_tree(&self) -> Vec<bool> {
        let by_vertex = self.semiarcs_by_vertex();
        let mut in_tree = vec![false; self.edges.len()];
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, i) = *top;
            if i == by_vertex[u].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let s = by_vertex[u][i];
            let w = self.semiarc_vertex(s ^ 1);
            if !seen[w] {
                seen[w] = true;
                in_tree[s / 2] = true;
                stack.push((w, 0));
            }
        }
        in_tree
    }

    /// Tree edges in the order vertices are discovered, as `(parent, child, edge)`.
    pub fn tree_order(&self) -> Vec<(usize, usize, usize)> {
        let tree = self.spanning_tree();
        let by_vertex = self.semiarcs_by_vertex();
        let mut out = Vec::new();
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &s in &by_vertex[u] {
                let e = s / 2;
                let w = self.semiarc_vertex(s ^ 1);
                if tree[e] && !seen[w] {
                    seen[w] = true;
                    out.push((u, w, e));
                    queue.push_back(w);
                }
            }
        }
        out
    }

    fn is_complete_simple(&self) -> bool {
        let n = self.vertices;
        if self.edges.len() != n * (n - 1) / 2 || self.has_loops() {
            return false;
        }
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.len() == self.edges.len()
    }

    fn is_bouquet(&self) -> bool {
        self.vertices == 1
    }

    fn multiplicities(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut m: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            m.entry((u.min(v), u.max(v))).or_default().push(e);
        }
        m
    }

    /// Automorphisms as permutations of `ν + ε` points: vertices first, then edges.
    pub fn aut_group(&self, caps: GroupCaps) -> Result<PermGroup> {
        if self.vertices > caps.max_vertices {
            return Err(Error::CapExceeded {
                what: "vertices",
                cap: caps.max_vertices,
            });
        }
        let classes = self.multiplicities();
        let n = self.vertices;
        let mult = |u: usize, v: usize| classes.get(&(u.min(v), u.max(v))).map_or(0, Vec::len);
        let mut elements = Vec::new();
        let mut img = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut vertex_perms = Vec::new();
        fn rec(
            k: usize,
            n: usize,
            img: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ok: &dyn Fn(usize, usize, &[usize]) -> bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            if k == n {
                out.push(img.clone());
                return;
            }
            for t in 0..n {
                if used[t] || !ok(k, t, img) {
                    continue;
                }
                img[k] = t;
                used[t] = true;
                rec(k + 1, n, img, used, ok, out);
                used[t] = false;
                img[k] = usize::MAX;
            }
        }
        let ok = |k: usize, t: usize, img: &[usize]| {
            (0..=k).all(|j| {
                let tj = if j == k { t } else { img[j] };
                mult(k, j) == mult(t, tj)
            })
        };
        rec(0, n, &mut img, &mut used, &ok, &mut vertex_perms);
        for vp in vertex_perms {
            // Each multiplicity class maps onto its image class in every order.
            let mut partial: Vec<Vec<usize>> = vec![vec![usize::MAX; self.edges.len()]];
            for (&(u, v), es) in &classes {
                let target = &classes[&(vp[u].min(vp[v]), vp[u].max(vp[v]))];
                let mut next = Vec::new();
                for arr in &partial {
                    for order in permutations(target.len()) {
                        let mut a = arr.clone();
                        for (i, &e) in es.iter().enumerate() {
                            a[e] = target[order[i]];
                        }
                        next.push(a);
                        if next.len() > caps.max_order {
                            return Err(Error::CapExceeded {
                                what: "automorphism group",
                                cap: caps.max_order,
                            });
                        }
                    }
                }
                partial = next;
            }
            for ep in partial {
                let images: Vec<u32> = vp
                    .iter()
                    .map(|&x| x as u32)
                    .chain(ep.iter().map(|&e| (n + e) as u32))
                    .collect();
                elements.push(Perm::from_images_unchecked(images));
                if elements.len() > caps.max_order {
                    return Err(Error::CapExceeded {
                        what: "automorphism group",
                        cap: caps.max_order,
                    });
                }
            }
        }
        Ok(PermGroup::from_sorted_unchecked(
            n + self.edges.len(),
            elements,
        ))
    }

    /// Semi-arc action of a vertex/edge automorphism. Loops keep their end labels.
    pub fn induced_semiarc_action(&self, g: &Perm) -> Perm {
        let n = self.vertices;
        let mut images = vec![0u32; self.semiarc_count()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let f = g.apply((n + e) as u32) as usize - n;
            let (u2, _) = self.edges[f];
            let gu = g.apply(u as u32) as usize;
            if u == v || gu == u2 {
                images[2 * e] = 2 * f as u32;
                images[2 * e + 1] = 2 * f as u32 + 1;
            } else {
                images[2 * e] = 2 * f as u32 + 1;
                images[2 * e + 1] = 2 * f as u32;
            }
        }
        Perm::from_images_unchecked(images)
    }

    /// Permutations of semi-arcs that preserve both "same vertex" and "same edge".
    pub fn semiarc_aut_group(&self, caps: GroupCaps) -> Result<PermGroup> {
        if self.is_bouquet() {
            return bouquet_semiarc_group(self.edges.len(), caps.max_order);
        }
        if self.is_complete_simple() && self.vertices > 2 {
            return self.induced_group(self.complete_aut_generators(), caps.max_order);
        }
        if self.semiarc_count() > caps.max_semiarcs {
            return Err(Error::CapExceeded {
                what: "semi-arcs",
                cap: caps.max_semiarcs,
            });
        }
        let m = self.semiarc_count();
        let vert: Vec<usize> = (0..m).map(|s| self.semiarc_vertex(s)).collect();
        let val = self.valency_sequence();
        let mut img = vec![usize::MAX; m];
        let mut used = vec![false; m];
        let mut out = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn rec(
            k: usize,
            m: usize,
            vert: &[usize],
            val: &[usize],
            img: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Perm>,
            cap: usize,
        ) -> Result<()> {
            if k == m {
                out.push(Perm::from_images_unchecked(
                    img.iter().map(|&x| x as u32).collect(),
                ));
                if out.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "semi-arc automorphism group",
                        cap,
                    });
                }
                return Ok(());
            }
            for t in 0..m {
                if used[t] || val[vert[k]] != val[vert[t]] {
                    continue;
                }
                let consistent = (0..k).all(|j| {
                    (vert[j] == vert[k]) == (vert[img[j]] == vert[t])
                        && (j / 2 == k / 2) == (img[j] / 2 == t / 2)
                });
                if !consistent {
                    continue;
                }
                img[k] = t;
                used[t] = true;
                rec(k + 1, m, vert, val, img, used, out, cap)?;
                used[t] = false;
            }
            Ok(())
        }
        rec(
            0,
            m,
            &vert,
            &val,
            &mut img,
            &mut used,
            &mut out,
            caps.max_order,
        )?;
        Ok(PermGroup::from_sorted_unchecked(m, out))
    }

    /// The image of `aut_group` in the semi-arc action.
    pub fn induced_semiarc_group(&self, caps: GroupCaps) -> Result<PermGroup> {
        let aut = self.aut_group(caps)?;
        let elements = aut.iter().map(|g| self.induced_semiarc_action(g)).collect();
        Ok(PermGroup::from_sorted_unchecked(
            self.semiarc_count(),
            elements,
        ))
    }

    /// True when the semi-arc automorphism group is trivial.
    pub fn is_asymmetric(&self, caps: GroupCaps) -> Result<bool> {
        Ok(self.semiarc_aut_group(caps)?.order() == 1)
    }

    fn complete_aut_generators(&self) -> Vec<Vec<usize>> {
        let n = self.vertices;
        let swap: Vec<usize> = (0..n)
            .map(|v| match v {
                0 => 1,
                1 => 0,
                _ => v,
            })
            .collect();
        let cycle: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
        vec![swap, cycle]
    }

    /// Semi-arc group generated by vertex permutations of a simple graph.
    fn induced_group(&self, vertex_gens: Vec<Vec<usize>>, cap: usize) -> Result<PermGroup> {
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            index.insert((u, v), 2 * e);
            index.insert((v, u), 2 * e + 1);
        }
        let gens: Vec<Perm> = vertex_gens
            .iter()
            .map(|vp| {
                let images = (0..self.semiarc_count())
                    .map(|s| {
                        let e = self.edges[s / 2];
                        let (a, b) = if s % 2 == 0 { e } else { (e.1, e.0) };
                        index[&(vp[a], vp[b])] as u32
                    })
                    .collect();
                Perm::from_images_unchecked(images)
            })
            .collect();
        PermGroup::generate(self.semiarc_count(), &gens, cap)
    }
}

/// `S_n[S_2]` on the `2n` semi-arcs of the bouquet `B_n`.
pub fn bouquet_semiarc_group(n: usize, cap: usize) -> Result<PermGroup> {
    let m = 2 * n;
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let mut gens = vec![Perm::from_cycles(m, &[vec![0, 1]])?];
    if n > 1 {
        gens.push(Perm::from_cycles(m, &[vec![0, 2], vec![1, 3]])?);
        let even: Vec<u32> = (0..n as u32).map(|i| 2 * i).collect();
        let odd: Vec<u32> = (0..n as u32).map(|i| 2 * i + 1).collect();
        gens.push(Perm::from_cycles(m, &[even, odd])?);
    }
    PermGroup::generate(m, &gens, cap)
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::factorial;

    fn fact(n: usize) -> usize {
        factorial(n).try_into().unwrap()
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(MultiGraph::path(5).unwrap().betti(), 0);
        assert_eq!(MultiGraph::complete(4).unwrap().betti(), 3);
        for n in 1..5 {
            assert_eq!(MultiGraph::bouquet(n).unwrap().betti(), n);
        }
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(
            MultiGraph::new(3, vec![(0, 1)]),
            Err(Error::Disconnected)
        ));
        assert!(MultiGraph::new(2, vec![(0, 2)]).is_err());
        assert!(MultiGraph::from_name("Q3").is_err());
    }

    #[test]
    fn names() {
        assert_eq!(
            MultiGraph::from_name("K4").unwrap(),
            MultiGraph::complete(4).unwrap()
        );
        assert_eq!(MultiGraph::from_name("B2").unwrap().edge_count(), 2);
        assert_eq!(
            MultiGraph::from_name("Dp3").unwrap().valency_sequence(),
            vec![3, 3]
        );
        assert_eq!(MultiGraph::from_name("K2,3").unwrap().edge_count(), 6);
        assert_eq!(
            MultiGraph::from_name("Dp2,1,0").unwrap().valency_sequence(),
            vec![4, 2]
        );
    }

    #[test]
    fn valencies() {
        assert_eq!(
            MultiGraph::complete(4).unwrap().valency_sequence(),
            vec![3; 4]
        );
        assert_eq!(MultiGraph::bouquet(2).unwrap().valency_sequence(), vec![4]);
        let g = MultiGraph::generalized_dipole(3, 1, 2).unwrap();
        assert_eq!(
            g.valency_sequence().iter().sum::<usize>(),
            2 * g.edge_count()
        );
    }

    #[test]
    fn spanning_tree_is_dfs() {
        let g = MultiGraph::complete(4).unwrap();
        // DFS 0 -(0,1)-> 1 -(1,2)-> 2 -(2,3)-> 3
        let t = g.spanning_tree();
        let tree: Vec<(usize, usize)> = (0..6).filter(|&e| t[e]).map(|e| g.edges()[e]).collect();
        assert_eq!(tree, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.tree_order(), vec![(0, 1, 0), (1, 2, 3), (2, 3, 5)]);
    }

    #[test]
    fn aut_orders() {
        let caps = GroupCaps::default();
        for n in 2..6 {
            assert_eq!(
                MultiGraph::complete(n)
                    .unwrap()
                    .aut_group(caps)
                    .unwrap()
                    .order(),
                fact(n)
            );
        }
        for n in 1..4 {
            assert_eq!(
                MultiGraph::dipole(n)
                    .unwrap()
                    .aut_group(caps)
                    .unwrap()
                    .order(),
                2 * fact(n)
            );
        }
        assert_eq!(
            MultiGraph::path(3)
                .unwrap()
                .aut_group(caps)
                .unwrap()
                .order(),
            2
        );
    }

    #[test]
    fn semiarc_orders() {
        let caps = GroupCaps::default();
        assert_eq!(
            MultiGraph::complete(4)
                .unwrap()
                .semiarc_aut_group(caps)
                .unwrap()
                .order(),
            24
        );
        for n in 1..4 {
            let b = MultiGraph::bouquet(n).unwrap();
            assert_eq!(
                b.semiarc_aut_group(caps).unwrap().order(),
                (1 << n) * fact(n)
            );
        }
        let g = MultiGraph::generalized_dipole(2, 1, 0).unwrap();
        assert_eq!(g.semiarc_aut_group(caps).unwrap().order(), 2 * fact(2));
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }
}
