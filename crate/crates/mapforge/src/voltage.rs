//! Voltage assignments, lifts, quotients and non-Euclid areas.
//!
//! A lifted quadricell over base quadricell `4e+2a+b` and group element `g`
//! is stored at `4(e·|G| + g′) + 2a + b`, where `g′ = g` on the `b = 0` side
//! and `g′ = g·ϑ(4e)⁻¹` on the `b = 1` side. This keeps `α = x⊕2` and
//! `β = x⊕1` in the lift.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::CombMap;
use crate::perm::{Perm, PermGroup};
use crate::smanifold::TriangularMap;

/// Groups above this order skip the exhaustive associativity check.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 128;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FinGroupTable {
    table: Vec<Vec<u32>>,
    identity: u32,
    inverse: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<u32>>,
}

impl TryFrom<GroupJson> for FinGroupTable {
    type Error = Error;

    fn try_from(g: GroupJson) -> Result<Self> {
        if g.order != g.table.len() {
            return Err(Error::InvalidGroup(format!(
                "order {} but {} rows",
                g.order,
                g.table.len()
            )));
        }
        FinGroupTable::from_table(g.table)
    }
}

impl From<FinGroupTable> for GroupJson {
    fn from(g: FinGroupTable) -> Self {
        GroupJson {
            order: g.order(),
            table: g.table,
        }
    }
}

impl FinGroupTable {
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<FinGroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x as usize >= n) {
                return Err(Error::InvalidGroup(format!("row {i} malformed")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] as usize == x && table[x][e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?
            as u32;
        let mut inverse = vec![0u32; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?
                as u32;
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b] as usize;
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c] as usize] {
                            return Err(Error::InvalidGroup(format!(
                                "({a}·{b})·{c} ≠ {a}·({b}·{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(FinGroupTable {
            table,
            identity,
            inverse,
        })
    }

    /// `Z_n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Result<FinGroupTable> {
        if n == 0 {
            return Err(Error::InvalidGroup("Z_0".into()));
        }
        let table = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
            .collect();
        FinGroupTable::from_table(table)
    }

    /// `S_n` on lexicographically ordered permutations, product `a∘b`.
    pub fn symmetric(n: usize) -> Result<FinGroupTable> {
        if n > 5 {
            return Err(Error::OutOfRange(format!("S_{n} table too large")));
        }
        let elements: Vec<Perm> = crate::graph::permutations(n)
            .into_iter()
            .map(|p| Perm::from_images(p.into_iter().map(|x| x as u32).collect()))
            .collect::<Result<_>>()?;
        FinGroupTable::from_perms(&elements)
    }

    /// The table of a closed set of permutations, in the given order.
    pub fn from_perms(elements: &[Perm]) -> Result<FinGroupTable> {
        let index: BTreeMap<&[u32], u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images(), i as u32))
            .collect();
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let ab = a.compose(b)?;
                        index
                            .get(ab.images())
                            .copied()
                            .ok_or_else(|| Error::InvalidGroup("set not closed".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        FinGroupTable::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[self.identity as usize] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order() as u32)
            .filter(|&x| seen[x as usize])
            .collect()
    }
}

/// `ϑ` on the quadricells of a base map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoltageAssignment {
    pub group: FinGroupTable,
    pub theta: Vec<u32>,
}

impl VoltageAssignment {
    /// Checks `ϑ(αx) = ϑ(x)`, `ϑ(βx) = ϑ(x)⁻¹` and, if `require_generation`,
    /// that the face voltages generate the group.
    pub fn new(
        map: &CombMap,
        group: FinGroupTable,
        theta: Vec<u32>,
        require_generation: bool,
    ) -> Result<Self> {
        let n = map.quadricell_count();
        if theta.len() != n {
            return Err(Error::InvalidVoltage(format!(
                "{} values for {n} quadricells",
                theta.len()
            )));
        }
        if let Some(&x) = theta.iter().find(|&&x| x as usize >= group.order()) {
            return Err(Error::InvalidVoltage(format!("element {x} not in group")));
        }
        for q in 0..n {
            if theta[q ^ 2] != theta[q] {
                return Err(Error::InvalidVoltage(format!("ϑ(αx) ≠ ϑ(x) at {q}")));
            }
            if theta[q ^ 1] != group.inv(theta[q]) {
                return Err(Error::InvalidVoltage(format!("ϑ(βx) ≠ ϑ(x)⁻¹ at {q}")));
            }
        }
        let va = VoltageAssignment { group, theta };
        if require_generation && !va.generates(map) {
            return Err(Error::InvalidVoltage(
                "face voltages do not generate the group".into(),
            ));
        }
        Ok(va)
    }

    /// One value per edge, placed on the `b = 0` side.
    pub fn from_edge_voltages(
        map: &CombMap,
        group: FinGroupTable,
        edges: &[u32],
        require_generation: bool,
    ) -> Result<Self> {
        if edges.len() != map.edge_count() {
            return Err(Error::InvalidVoltage(format!(
                "{} values for {} edges",
                edges.len(),
                map.edge_count()
            )));
        }
        let mut theta = Vec::with_capacity(4 * edges.len());
        for &v in edges {
            let inv = if (v as usize) < group.order() {
                group.inv(v)
            } else {
                v
            };
            theta.extend([v, inv, v, inv]);
        }
        VoltageAssignment::new(map, group, theta, require_generation)
    }

    pub fn trivial(map: &CombMap) -> Self {
        VoltageAssignment {
            group: FinGroupTable::cyclic(1).expect("Z_1"),
            theta: vec![0; map.quadricell_count()],
        }
    }

    /// `ϑ(x)ϑ(Fx)⋯` along the face cycle starting at `x`.
    pub fn face_product(&self, map: &CombMap, start: u32) -> u32 {
        let f = map.face_perm();
        let mut acc = self.group.identity();
        let mut x = start;
        loop {
            acc = self.group.mul(acc, self.theta[x as usize]);
            x = f.apply(x);
            if x == start {
                return acc;
            }
        }
    }

    /// Whether the face voltages, read from every starting quadricell, generate the group.
    pub fn generates(&self, map: &CombMap) -> bool {
        let gens: Vec<u32> = (0..map.quadricell_count() as u32)
            .map(|q| self.face_product(map, q))
            .collect();
        self.group.generated(&gens).len() == self.group.order()
    }

    /// Quadricell index in the lift of `(q, g)`.
    pub fn lift_index(&self, q: u32, g: u32) -> u32 {
        let n = self.group.order() as u32;
        let e = q / 4;
        let g = if q & 1 == 0 {
            g
        } else {
            self.group
                .mul(g, self.group.inv(self.theta[4 * e as usize]))
        };
        4 * (e * n + g) + (q & 3)
    }

    /// `(base quadricell, group element)` of a lifted quadricell.
    pub fn fiber(&self, l: u32) -> (u32, u32) {
        let n = self.group.order() as u32;
        let (e, g) = ((l / 4) / n, (l / 4) % n);
        let q = 4 * e + (l & 3);
        let g = if l & 1 == 0 {
            g
        } else {
            self.group.mul(g, self.theta[4 * e as usize])
        };
        (q, g)
    }
}

/// Order of the face voltage of the face containing `start`.
pub fn face_voltage_order(map: &CombMap, va: &VoltageAssignment, start: u32) -> Result<usize> {
    if start as usize >= map.quadricell_count() {
        return Err(Error::OutOfRange(format!("quadricell {start}")));
    }
    Ok(va.group.element_order(va.face_product(map, start)))
}

/// `o(F)` for each face cell, read from its first cycle.
pub fn face_orders(map: &CombMap, va: &VoltageAssignment) -> Vec<usize> {
    map.faces()
        .iter()
        .map(|c| va.group.element_order(va.face_product(map, c.cycle[0])))
        .collect()
}

/// The lifted map `M^ϑ`.
pub fn lift(map: &CombMap, va: &VoltageAssignment) -> Result<CombMap> {
    let n = va.group.order();
    let size = map.quadricell_count() * n;
    let images: Vec<u32> = (0..size as u32)
        .map(|l| {
            let (q, g) = va.fiber(l);
            va.lift_index(map.p().apply(q), g)
        })
        .collect();
    CombMap::new(map.edge_count() * n, Perm::from_images(images)?)
        .map_err(|e| Error::InvalidVoltage(format!("lift is not a map: {e}")))
}

/// The covering projection of a lift, as base quadricell per lifted quadricell.
pub fn projection(va: &VoltageAssignment, lifted_quadricells: usize) -> Vec<u32> {
    (0..lifted_quadricells as u32)
        .map(|l| va.fiber(l).0)
        .collect()
}

/// Deck transformations `x_g ↦ x_{kg}`, one per group element.
pub fn deck_transformations(map: &CombMap, va: &VoltageAssignment) -> Vec<Perm> {
    let size = map.quadricell_count() * va.group.order();
    (0..va.group.order() as u32)
        .map(|k| {
            let images = (0..size as u32)
                .map(|l| {
                    let (q, g) = va.fiber(l);
                    va.lift_index(q, va.group.mul(k, g))
                })
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect()
}

/// `|G|(χ(M) + Σ_F (−1 + 1/o(F)))`.
pub fn lifted_euler_predict(map: &CombMap, va: &VoltageAssignment) -> Result<i64> {
    let mut sum = BigRational::from_integer(map.euler_characteristic().into());
    for o in face_orders(map, va) {
        sum += BigRational::new(BigInt::one(), BigInt::from(o)) - BigRational::one();
    }
    let value = sum * BigRational::from_integer(va.group.order().into());
    if !value.is_integer() {
        return Err(Error::NonIntegral(format!("predicted χ = {value}")));
    }
    Ok(value.to_integer().try_into().expect("small"))
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub map: CombMap,
    /// The acting group, with element `i` the `i`-th sorted permutation.
    pub group: FinGroupTable,
    pub elements: Vec<Perm>,
    /// Quotient quadricell of each quadricell of `M`.
    pub projection: Vec<u32>,
    /// Present when the group is fixed-free on vertices.
    pub voltage: Option<VoltageAssignment>,
}

/// `M/G` for `G ≤ Aut M`, with the voltage reconstruction when `G` is fixed-free on `V(M)`.
pub fn quotient(map: &CombMap, elements: &[Perm]) -> Result<Quotient> {
    let size = map.quadricell_count();
    let group = PermGroup::from_elements(size, elements.to_vec())?;
    if let Some(g) = group.iter().find(|g| !map.is_automorphism(g)) {
        return Err(Error::NotAutomorphism(g.to_string()));
    }
    let elements = group.elements().to_vec();
    let table = FinGroupTable::from_perms(&elements)?;
    let edges = map.edge_count();

    let mut rep_of = vec![u32::MAX; edges];
    let mut transporter = vec![0usize; edges];
    let mut reps = Vec::new();
    for e in 0..edges {
        if rep_of[e] != u32::MAX {
            continue;
        }
        let idx = reps.len() as u32;
        reps.push(e);
        for (i, g) in elements.iter().enumerate() {
            let f = (g.apply(4 * e as u32) / 4) as usize;
            if rep_of[f] != u32::MAX {
                return Err(Error::DegenerateQuotient(format!(
                    "edge {e} has a non-trivial stabilizer"
                )));
            }
            rep_of[f] = idx;
            transporter[f] = i;
        }
    }
    // transporter[f] maps the representative edge onto f, so its inverse brings f back
    let proj: Vec<u32> = (0..size as u32)
        .map(|x| {
            let f = (x / 4) as usize;
            let back = elements[transporter[f]].inverse();
            let y = back.apply(x);
            4 * rep_of[f] + (y & 3)
        })
        .collect();
    let images: Vec<u32> = reps
        .iter()
        .flat_map(|&e| (0..4u32).map(move |c| 4 * e as u32 + c))
        .map(|x| proj[map.p().apply(x) as usize])
        .collect();
    let qmap = CombMap::new(reps.len(), Perm::from_images(images)?)
        .map_err(|e| Error::DegenerateQuotient(e.to_string()))?;

    let vof = map.vertex_of();
    let vertex_free = elements
        .iter()
        .filter(|g| !g.is_identity())
        .all(|g| (0..size as u32).all(|q| vof[g.apply(q) as usize] != vof[q as usize]));
    let voltage = if vertex_free {
        Some(reconstruct_voltage(
            map, &qmap, &elements, &table, &reps, &vof,
        )?)
    } else {
        None
    };
    Ok(Quotient {
        map: qmap,
        group: table,
        elements,
        projection: proj,
        voltage,
    })
}

/// Labels each quadricell by the group element carrying its vertex orbit
/// representative to its vertex; `ϑ(x) = h(x)⁻¹ h(βx)`.
fn reconstruct_voltage(
    map: &CombMap,
    qmap: &CombMap,
    elements: &[Perm],
    table: &FinGroupTable,
    reps: &[usize],
    vof: &[usize],
) -> Result<VoltageAssignment> {
    let nv = map.vertex_count();
    let first_q: Vec<u32> = {
        let mut f = vec![u32::MAX; nv];
        for (q, &v) in vof.iter().enumerate() {
            if f[v] == u32::MAX {
                f[v] = q as u32;
            }
        }
        f
    };
    let mut label = vec![u32::MAX; nv];
    for v in 0..nv {
        if label[v] != u32::MAX {
            continue;
        }
        for (i, g) in elements.iter().enumerate() {
            label[vof[g.apply(first_q[v]) as usize]] = i as u32;
        }
    }
    let mut theta = vec![0u32; qmap.quadricell_count()];
    for (idx, &e) in reps.iter().enumerate() {
        for c in 0..4u32 {
            let x = 4 * e as u32 + c;
            let h = label[vof[x as usize]];
            let h2 = label[vof[(x ^ 1) as usize]];
            theta[4 * idx + c as usize] = table.mul(table.inv(h), h2);
        }
    }
    VoltageAssignment::new(qmap, table.clone(), theta, false)
}

/// `χ(M) + Σ_{g≠1}(|Φ_v(g)| + |Φ_f(g)|)` and `|G|·χ(M/G)`.
pub fn orbit_identity(map: &CombMap, q: &Quotient) -> (i64, i64) {
    let vof = map.vertex_of();
    let mut fof = vec![0usize; map.quadricell_count()];
    for (i, c) in map.faces().iter().enumerate() {
        for &x in c.cycle.iter().chain(&c.conjugate) {
            fof[x as usize] = i;
        }
    }
    let fixed = |cells: &[usize], count: usize, g: &Perm| -> i64 {
        let mut seen = vec![false; count];
        let mut n = 0;
        for x in 0..cells.len() {
            let c = cells[x];
            if !seen[c] {
                seen[c] = true;
                if cells[g.apply(x as u32) as usize] == c {
                    n += 1;
                }
            }
        }
        n
    };
    let mut lhs = map.euler_characteristic();
    for g in q.elements.iter().filter(|g| !g.is_identity()) {
        lhs += fixed(&vof, map.vertex_count(), g) + fixed(&fof, map.face_count(), g);
    }
    (lhs, q.elements.len() as i64 * q.map.euler_characteristic())
}

/// An exact multiple of `π`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NonEuclidArea(pub BigRational);

impl std::fmt::Display for NonEuclidArea {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}π", self.0)
    }
}

/// `μ(M) = −2πχ(M)`.
pub fn non_euclid_area(map: &CombMap) -> NonEuclidArea {
    NonEuclidArea(BigRational::from_integer(
        (-2 * map.euler_characteristic()).into(),
    ))
}

fn face_order_sum(map: &CombMap, va: &VoltageAssignment) -> BigRational {
    face_orders(map, va)
        .into_iter()
        .map(|o| BigRational::new(BigInt::one(), BigInt::from(o)) - BigRational::one())
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `μ(M, G) = −2π(χ(M) + Σ(−1 + 1/m))`, so that `μ(M^ϑ) = |G|·μ(M, G)`.
pub fn area_voltage(map: &CombMap, va: &VoltageAssignment) -> NonEuclidArea {
    let chi = BigRational::from_integer(map.euler_characteristic().into());
    NonEuclidArea(BigRational::from_integer((-2).into()) * (chi + face_order_sum(map, va)))
}

/// `2π(−χ(M) + Σ(−1 + 1/m))` as displayed.
pub fn area_voltage_displayed(map: &CombMap, va: &VoltageAssignment) -> NonEuclidArea {
    let chi = BigRational::from_integer(map.euler_characteristic().into());
    NonEuclidArea(BigRational::from_integer(2.into()) * (face_order_sum(map, va) - chi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleAreaReport {
    /// Angle sum minus `π` per face, in units of `π`, corners at `2π/valency`.
    pub defects: Vec<BigRational>,
    pub defect_sum: BigRational,
    pub area: NonEuclidArea,
    /// `Σ defect = 2πχ = −μ(M)`.
    pub consistent: bool,
}

pub fn triangle_area_check(t: &TriangularMap) -> TriangleAreaReport {
    let map = t.map();
    let vof = map.vertex_of();
    let val = map.vertex_valencies();
    let defects: Vec<BigRational> = map
        .faces()
        .iter()
        .map(|c| {
            let angles = c
                .cycle
                .iter()
                .map(|&x| BigRational::new(2.into(), BigInt::from(val[vof[x as usize]])))
                .fold(BigRational::zero(), |a, b| a + b);
            angles - BigRational::one()
        })
        .collect();
    let defect_sum = defects.iter().fold(BigRational::zero(), |a, b| a + b);
    let area = non_euclid_area(map);
    let consistent = defect_sum == -area.0.clone();
    TriangleAreaReport {
        defects,
        defect_sum,
        area,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::tests::{fig12, planar_loop};

    #[test]
    fn tables() {
        let z6 = FinGroupTable::cyclic(6).unwrap();
        assert_eq!(z6.element_order(2), 3);
        assert_eq!(z6.generated(&[4]).len(), 3);
        let s3 = FinGroupTable::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(FinGroupTable::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn trivial_voltage_lifts_to_the_base() {
        let m = fig12();
        let va = VoltageAssignment::trivial(&m);
        let l = lift(&m, &va).unwrap();
        assert!(l.is_isomorphic(&m));
        assert_eq!(
            lifted_euler_predict(&m, &va).unwrap(),
            m.euler_characteristic()
        );
        assert!(face_orders(&m, &va).iter().all(|&o| o == 1));
    }

    #[test]
    fn planar_loop_z3() {
        let m = planar_loop();
        let va = VoltageAssignment::from_edge_voltages(
            &m,
            FinGroupTable::cyclic(3).unwrap(),
            &[1],
            true,
        )
        .unwrap();
        assert_eq!(face_orders(&m, &va), vec![3, 3]);
        let l = lift(&m, &va).unwrap();
        let inv = l.invariants();
        assert_eq!((inv.v, inv.e, inv.f), (3, 3, 2));
        assert_eq!(l.face_lengths(), vec![3, 3]);
        assert_eq!(lifted_euler_predict(&m, &va).unwrap(), 2);
    }

    #[test]
    fn z2_loop_face() {
        let m = planar_loop();
        let va = VoltageAssignment::from_edge_voltages(
            &m,
            FinGroupTable::cyclic(2).unwrap(),
            &[1],
            true,
        )
        .unwrap();
        for q in 0..4 {
            assert_eq!(face_voltage_order(&m, &va, q).unwrap(), 2);
        }
    }

    #[test]
    fn invalid_assignment_rejected() {
        let m = planar_loop();
        let z3 = FinGroupTable::cyclic(3).unwrap();
        assert!(VoltageAssignment::new(&m, z3.clone(), vec![1, 1, 1, 1], false).is_err());
        assert!(VoltageAssignment::from_edge_voltages(&m, z3, &[0], true).is_err());
    }

    #[test]
    fn fibers_roundtrip() {
        let m = fig12();
        let va = VoltageAssignment::from_edge_voltages(
            &m,
            FinGroupTable::cyclic(4).unwrap(),
            &[1, 0, 3, 2, 1, 0],
            false,
        )
        .unwrap();
        for l in 0..m.quadricell_count() as u32 * 4 {
            let (q, g) = va.fiber(l);
            assert_eq!(va.lift_index(q, g), l);
        }
    }

    #[test]
    fn lift_then_quotient() {
        let m = fig12();
        let va = VoltageAssignment::from_edge_voltages(
            &m,
            FinGroupTable::cyclic(3).unwrap(),
            &[1, 0, 2, 0, 1, 0],
            false,
        )
        .unwrap();
        let l = lift(&m, &va).unwrap();
        assert_eq!(
            l.euler_characteristic(),
            lifted_euler_predict(&m, &va).unwrap()
        );
        let deck = deck_transformations(&m, &va);
        assert!(deck.iter().all(|g| l.is_automorphism(g)));
        let q = quotient(&l, &deck).unwrap();
        assert!(q.map.is_isomorphic(&m));
        let rebuilt = q.voltage.clone().unwrap();
        assert!(lift(&q.map, &rebuilt).unwrap().is_isomorphic(&l));
        let (lhs, rhs) = orbit_identity(&l, &q);
        assert_eq!(lhs, rhs);
        let ratio = non_euclid_area(&l).0 / area_voltage(&q.map, &rebuilt).0;
        assert_eq!(ratio, BigRational::from_integer(3.into()));
    }

    #[test]
    fn trivial_quotient() {
        let m = fig12();
        let q = quotient(&m, &[Perm::identity(24)]).unwrap();
        assert!(q.map.is_isomorphic(&m));
    }

    #[test]
    fn non_automorphism_rejected() {
        let m = fig12();
        let bad = Perm::from_cycles(24, &[vec![0, 4]]).unwrap();
        let elems = vec![Perm::identity(24), bad];
        assert!(quotient(&m, &elems).is_err());
    }

    #[test]
    fn sphere_area() {
        assert_eq!(
            non_euclid_area(&planar_loop()).0,
            BigRational::from_integer((-4).into())
        );
    }
}
