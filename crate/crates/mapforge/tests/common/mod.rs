//! Brute-force reference computations shared by the integration tests.
//! None of these call into the library beyond its plain data types.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use mapforge::embed::RotationSystem;
use mapforge::{CombMap, MultiGraph};

/// A graph on six vertices with no non-trivial automorphism: a triangle
/// `0 1 2` with a pendant edge at `0` and a pendant path of length two at `1`.
pub fn asymmetric_graph() -> MultiGraph {
    MultiGraph::new(6, vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (4, 5)]).unwrap()
}

/// Signed genus of a rotation system by tracing faces over the graph.
pub fn traced_signed_genus(graph: &MultiGraph, rs: &RotationSystem) -> i64 {
    let semiarcs = graph.semiarc_count();
    let mut pos = vec![(0usize, 0usize); semiarcs];
    for (v, order) in rs.rotation.iter().enumerate() {
        for (i, &s) in order.iter().enumerate() {
            pos[s] = (v, i);
        }
    }
    let step = |s: usize, forward: bool| -> (usize, bool) {
        let t = s ^ 1;
        let forward = forward ^ (rs.lambda[s / 2] == 1);
        let (w, i) = pos[t];
        let order = &rs.rotation[w];
        let k = order.len();
        let j = if forward {
            (i + 1) % k
        } else {
            (i + k - 1) % k
        };
        (order[j], forward)
    };
    let mut seen = vec![[false; 2]; semiarcs];
    let mut orbits = 0i64;
    for s0 in 0..semiarcs {
        for d0 in [true, false] {
            if seen[s0][d0 as usize] {
                continue;
            }
            orbits += 1;
            let (mut s, mut d) = (s0, d0);
            while !seen[s][d as usize] {
                seen[s][d as usize] = true;
                (s, d) = step(s, d);
            }
        }
    }
    let faces = orbits / 2;
    let chi = graph.vertex_count() as i64 - graph.edge_count() as i64 + faces;
    if switch_orientable(graph, &rs.lambda) {
        (2 - chi) / 2
    } else {
        -(2 - chi)
    }
}

/// Whether some vertex switching removes every twist.
pub fn switch_orientable(graph: &MultiGraph, lambda: &[u8]) -> bool {
    let n = graph.vertex_count();
    let mut side = vec![u8::MAX; n];
    side[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (e, &(a, b)) in graph.edges().iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            let want = side[v] ^ lambda[e];
            if side[w] == u8::MAX {
                side[w] = want;
                queue.push_back(w);
            } else if side[w] != want {
                return false;
            }
        }
    }
    true
}

/// Every cyclic order of `items` with the first item fixed.
pub fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    match items.split_first() {
        None => vec![Vec::new()],
        Some((&first, rest)) => {
            let mut out = Vec::new();
            rec(&mut vec![first], &mut rest.to_vec(), &mut out);
            out
        }
    }
}

/// All rotation systems with unrestricted twists (no spanning-tree normalization).
pub fn all_rotation_systems(graph: &MultiGraph, orientable_only: bool) -> Vec<RotationSystem> {
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); graph.vertex_count()];
    for s in 0..graph.semiarc_count() {
        by_vertex[graph.semiarc_vertex(s)].push(s);
    }
    let choices: Vec<Vec<Vec<usize>>> = by_vertex.iter().map(|s| cyclic_orders(s)).collect();
    let mut rotations: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for c in &choices {
        rotations = rotations
            .into_iter()
            .flat_map(|r| {
                c.iter().map(move |o| {
                    let mut r = r.clone();
                    r.push(o.clone());
                    r
                })
            })
            .collect();
    }
    let m = graph.edge_count();
    let twists: Vec<Vec<u8>> = if orientable_only {
        vec![vec![0; m]]
    } else {
        (0..1u32 << m)
            .map(|mask| (0..m).map(|e| ((mask >> e) & 1) as u8).collect())
            .collect()
    };
    let mut out = Vec::new();
    for r in &rotations {
        for l in &twists {
            out.push(RotationSystem {
                rotation: r.clone(),
                lambda: l.clone(),
            });
        }
    }
    out
}

/// Isomorphism test by propagating a candidate image of quadricell 0.
pub fn brute_isomorphic(a: &CombMap, b: &CombMap) -> bool {
    let n = a.quadricell_count();
    if n != b.quadricell_count() {
        return false;
    }
    let (pa, pb) = (a.p().images(), b.p().images());
    'candidates: for y in 0..n as u32 {
        let mut phi = vec![u32::MAX; n];
        phi[0] = y;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let fx = phi[x as usize];
            let pairs = [
                (x ^ 2, fx ^ 2),
                (x ^ 1, fx ^ 1),
                (pa[x as usize], pb[fx as usize]),
            ];
            for (u, fu) in pairs {
                if phi[u as usize] == u32::MAX {
                    phi[u as usize] = fu;
                    queue.push_back(u);
                } else if phi[u as usize] != fu {
                    continue 'candidates;
                }
            }
        }
        let mut hit = vec![false; n];
        for &v in &phi {
            if v == u32::MAX || hit[v as usize] {
                continue 'candidates;
            }
            hit[v as usize] = true;
        }
        return true;
    }
    false
}

/// Cycles of `q ↦ images[q]`, as lengths.
pub fn cycle_lengths(images: &[u32]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x] as usize;
        }
        out.push(len);
    }
    out
}

/// Face permutation images `q ↦ P(αβ q)`.
pub fn face_images(map: &CombMap) -> Vec<u32> {
    let p = map.p().images();
    (0..p.len()).map(|q| p[q ^ 3]).collect()
}

/// `(vertices, faces, χ)` by raw cycle counting.
pub fn raw_counts(map: &CombMap) -> (usize, usize, i64) {
    let v = cycle_lengths(map.p().images()).len() / 2;
    let f = cycle_lengths(&face_images(map)).len() / 2;
    (v, f, v as i64 - map.edge_count() as i64 + f as i64)
}

/// One representative per class of `maps` under [`brute_isomorphic`],
/// bucketed by cheap invariants first.
pub fn brute_class_reps(maps: &[CombMap]) -> Vec<CombMap> {
    let mut buckets: BTreeMap<(usize, usize, Vec<usize>), Vec<&CombMap>> = BTreeMap::new();
    for m in maps {
        let (v, f, _) = raw_counts(m);
        let mut lens = cycle_lengths(&face_images(m));
        lens.sort_unstable();
        buckets.entry((v, f, lens)).or_default().push(m);
    }
    let mut out = Vec::new();
    for members in buckets.values() {
        let mut reps: Vec<&CombMap> = Vec::new();
        for m in members {
            if !reps.iter().any(|r| brute_isomorphic(r, m)) {
                reps.push(m);
            }
        }
        out.extend(reps.into_iter().cloned());
    }
    out
}

/// Signed genus from raw cycle counts and a walk over `⟨P, αβ⟩`.
pub fn raw_signed_genus(map: &CombMap) -> i64 {
    let (_, _, chi) = raw_counts(map);
    let p = map.p().images();
    let n = p.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in [p[x] as usize, x ^ 3] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    let orientable = seen.iter().filter(|&&s| s).count() < n;
    if orientable {
        (2 - chi) / 2
    } else {
        -(2 - chi)
    }
}

/// Images of quadricell 0 that extend to an automorphism.
pub fn brute_automorphism_count(map: &CombMap) -> usize {
    let n = map.quadricell_count();
    let p = map.p().images();
    (0..n as u32)
        .filter(|&y| {
            let mut phi = vec![u32::MAX; n];
            phi[0] = y;
            let mut queue = VecDeque::from([0u32]);
            while let Some(x) = queue.pop_front() {
                let fx = phi[x as usize];
                for (u, fu) in [
                    (x ^ 2, fx ^ 2),
                    (x ^ 1, fx ^ 1),
                    (p[x as usize], p[fx as usize]),
                ] {
                    if phi[u as usize] == u32::MAX {
                        phi[u as usize] = fu;
                        queue.push_back(u);
                    } else if phi[u as usize] != fu {
                        return false;
                    }
                }
            }
            true
        })
        .count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Face lengths expected in a `Z_n` lift: each face cycle of length `l` with
/// voltage sum `s` becomes `n / o` cycles of length `l·o`, `o = n / gcd(s, n)`.
pub fn expected_lift_face_cycles(map: &CombMap, theta: &[u32], n: usize) -> Vec<usize> {
    let f = face_images(map);
    let mut seen = vec![false; f.len()];
    let mut out = Vec::new();
    for s in 0..f.len() {
        if seen[s] {
            continue;
        }
        let (mut len, mut sum, mut x) = (0usize, 0usize, s);
        while !seen[x] {
            seen[x] = true;
            len += 1;
            sum += theta[x] as usize;
            x = f[x] as usize;
        }
        let o = n / gcd(sum % n, n);
        out.extend(std::iter::repeat_n(len * o, n / o));
    }
    out.sort_unstable();
    out
}

/// The torus embedding of `K4` used throughout the examples.
pub fn fig12() -> CombMap {
    CombMap::from_images(vec![
        4, 22, 10, 12, 8, 21, 2, 19, 0, 18, 6, 15, 20, 9, 1, 16, 11, 5, 13, 23, 3, 17, 14, 7,
    ])
    .unwrap()
}

/// Small base maps for lifting: first and last systems of a few graphs, plus [`fig12`].
pub fn voltage_bases() -> Vec<(String, CombMap)> {
    use mapforge::embed::{self, EmbeddingClass};
    let mut out = Vec::new();
    for name in ["B1", "B2", "Dp2", "K3", "K4", "Dp2,1,0"] {
        let g = MultiGraph::from_name(name).unwrap();
        let systems: Vec<RotationSystem> =
            embed::enumerate_rotation_systems(&g, EmbeddingClass::LocallyOrientable, 1 << 20)
                .unwrap()
                .collect();
        for (tag, rs) in [("first", systems.first()), ("last", systems.last())] {
            let m = embed::map_from_rotation(&g, rs.unwrap()).unwrap();
            out.push((format!("{name}/{tag}"), m));
        }
    }
    out.push(("fig12".into(), fig12()));
    out
}

/// First edge-voltage vector in `Z_n` (lexicographic, skipping all-zero)
/// whose face voltages generate the group.
pub fn first_generating_voltages(map: &CombMap, n: usize) -> Option<Vec<u32>> {
    let m = map.edge_count();
    let total = n.checked_pow(m as u32)?;
    let f = face_images(map);
    (1..total).find_map(|mut code| {
        let edges: Vec<u32> = (0..m)
            .map(|_| {
                let d = (code % n) as u32;
                code /= n;
                d
            })
            .collect();
        let theta: Vec<u32> = edges
            .iter()
            .flat_map(|&v| {
                let inv = ((n as u32) - v) % n as u32;
                [v, inv, v, inv]
            })
            .collect();
        let mut g = 0usize;
        let mut seen = vec![false; f.len()];
        for s in 0..f.len() {
            if seen[s] {
                continue;
            }
            let (mut sum, mut x) = (0usize, s);
            while !seen[x] {
                seen[x] = true;
                sum += theta[x] as usize;
                x = f[x] as usize;
            }
            g = gcd(g, sum % n);
        }
        (gcd(g, n) == 1).then_some(edges)
    })
}

/// `(label, base, n, edge voltages)` for every base and `n ∈ {2, 3, 4, 6}`
/// that admits a generating assignment.
pub fn voltage_fixtures() -> Vec<(String, CombMap, usize, Vec<u32>)> {
    let mut out = Vec::new();
    for (label, base) in voltage_bases() {
        for n in [2, 3, 4, 6] {
            if let Some(v) = first_generating_voltages(&base, n) {
                out.push((format!("{label}/Z{n}"), base.clone(), n, v));
            }
        }
    }
    out
}
