//! Library results against brute-force reference computations.

mod common;

use std::collections::BTreeMap;

use mapforge::embed::{self, EmbeddingClass, EnumOptions, Relation};
use mapforge::perm::{self, CycleIndex};
use mapforge::poly;
use mapforge::smanifold;
use mapforge::voltage::{self, FinGroupTable, VoltageAssignment};
use mapforge::{CombMap, MultiGraph};
use num_bigint::BigInt;
use num_rational::BigRational;

use common::*;

fn graph(name: &str) -> MultiGraph {
    MultiGraph::from_name(name).unwrap()
}

fn fixtures() -> Vec<(&'static str, MultiGraph)> {
    vec![
        ("K4", graph("K4")),
        ("K2,3", graph("K2,3")),
        ("B2", graph("B2")),
        ("B3", graph("B3")),
        ("Dp3", graph("Dp3")),
        ("Dp2,1,1", graph("Dp2,1,1")),
        ("asym", asymmetric_graph()),
    ]
}

fn opts() -> EnumOptions {
    EnumOptions::default()
}

#[test]
fn genus_distribution_matches_face_tracing() {
    for (name, g) in fixtures() {
        for class in [
            EmbeddingClass::Orientable,
            EmbeddingClass::LocallyOrientable,
        ] {
            let mut traced: BTreeMap<i64, u64> = BTreeMap::new();
            for rs in embed::enumerate_rotation_systems(&g, class, 1 << 22).unwrap() {
                let genus = traced_signed_genus(&g, &rs);
                let map = embed::map_from_rotation(&g, &rs).unwrap();
                assert_eq!(raw_signed_genus(&map), genus, "{name}: {rs:?}");
                *traced.entry(genus).or_insert(0) += 1;
            }
            assert_eq!(
                embed::genus_distribution(&g, class, &opts()).unwrap(),
                traced,
                "{name} {class}"
            );
        }
    }
}

#[test]
fn normalization_loses_no_surface() {
    for (name, g) in fixtures() {
        let switchings = 1u64 << (g.vertex_count() - 1);
        let mut raw: BTreeMap<i64, u64> = BTreeMap::new();
        for rs in all_rotation_systems(&g, false) {
            *raw.entry(traced_signed_genus(&g, &rs)).or_insert(0) += 1;
        }
        let dist =
            embed::genus_distribution(&g, EmbeddingClass::LocallyOrientable, &opts()).unwrap();
        let scaled: BTreeMap<i64, u64> =
            dist.into_iter().map(|(k, v)| (k, v * switchings)).collect();
        assert_eq!(scaled, raw, "{name}");
    }
}

fn brute_reps(g: &MultiGraph, orientable_only: bool) -> Vec<CombMap> {
    let maps: Vec<CombMap> = all_rotation_systems(g, orientable_only)
        .iter()
        .map(|rs| embed::map_from_rotation(g, rs).unwrap())
        .collect();
    brute_class_reps(&maps)
}

#[test]
fn burnside_matches_brute_isomorphism_classes() {
    for (name, g) in fixtures() {
        let reps = brute_reps(&g, false);
        let mut by_genus: BTreeMap<i64, u64> = BTreeMap::new();
        for m in &reps {
            *by_genus.entry(raw_signed_genus(m)).or_insert(0) += 1;
        }
        let r = embed::burnside_count(
            &g,
            EmbeddingClass::LocallyOrientable,
            Relation::Isomorphism,
            &opts(),
        )
        .unwrap();
        assert_eq!(r.count as usize, reps.len(), "{name}");
        assert_eq!(r.by_genus, by_genus, "{name}");
        let parts = embed::orbit_partition(
            &g,
            EmbeddingClass::LocallyOrientable,
            Relation::Isomorphism,
            &opts(),
        )
        .unwrap();
        assert_eq!(parts.len(), reps.len(), "{name}");

        let orientable = by_genus
            .iter()
            .filter(|(k, _)| **k >= 0)
            .map(|(_, v)| v)
            .sum::<u64>();
        let o = embed::burnside_count(
            &g,
            EmbeddingClass::Orientable,
            Relation::Isomorphism,
            &opts(),
        )
        .unwrap();
        let n = embed::burnside_count(
            &g,
            EmbeddingClass::NonOrientable,
            Relation::Isomorphism,
            &opts(),
        )
        .unwrap();
        assert_eq!(o.count, orientable, "{name}");
        assert_eq!(o.count + n.count, r.count, "{name}");
    }
}

#[test]
fn k4_classes_by_brute_force() {
    let g = graph("K4");
    let reps = brute_reps(&g, false);
    let orientable = reps.iter().filter(|m| raw_signed_genus(m) >= 0).count();
    assert_eq!((reps.len(), orientable), (11, 3));
}

#[test]
fn equivalence_routes_agree() {
    for (name, g) in fixtures() {
        for class in [
            EmbeddingClass::Orientable,
            EmbeddingClass::LocallyOrientable,
        ] {
            let b = embed::burnside_count(&g, class, Relation::Equivalence, &opts()).unwrap();
            let p = embed::orbit_partition(&g, class, Relation::Equivalence, &opts()).unwrap();
            assert_eq!(b.count as usize, p.len(), "{name} {class}");
            let iso = embed::burnside_count(&g, class, Relation::Isomorphism, &opts()).unwrap();
            assert!(b.count >= iso.count, "{name} {class}");
        }
    }
}

#[test]
fn rooted_polynomial_counts_rootings() {
    for (name, g) in fixtures() {
        let mut expected: BTreeMap<i64, BigInt> = BTreeMap::new();
        for m in brute_reps(&g, false) {
            let rootings = m.quadricell_count() / brute_automorphism_count(&m);
            *expected.entry(raw_signed_genus(&m)).or_default() += BigInt::from(rootings);
        }
        let r = poly::rooted_poly(&g, &opts()).unwrap();
        let got: BTreeMap<i64, BigInt> = r.total.terms().map(|(e, c)| (e, c.clone())).collect();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn bouquet_recursion_matches_traced_orientable_genus() {
    for n in 1..=4usize {
        let g = MultiGraph::bouquet(n).unwrap();
        let mut tally: BTreeMap<i64, i64> = BTreeMap::new();
        for rs in all_rotation_systems(&g, true) {
            *tally.entry(traced_signed_genus(&g, &rs)).or_insert(0) += 1;
        }
        for m in 0..=n as i64 {
            let want = tally.get(&m).copied().unwrap_or(0);
            assert_eq!(
                poly::bouquet_genus_recursion(m, n as i64).unwrap(),
                want.into(),
                "g_{m}({n})"
            );
        }
    }
}

fn tallied_cycle_index(elements: &[mapforge::Perm]) -> CycleIndex {
    let mut z = CycleIndex::zero();
    let weight = BigRational::new(1.into(), BigInt::from(elements.len()));
    for g in elements {
        let lens = cycle_lengths(g.images());
        let mut exps = vec![0u32; lens.iter().copied().max().unwrap_or(0)];
        for l in lens {
            exps[l - 1] += 1;
        }
        z = z.add(&CycleIndex::monomial(exps, weight.clone()));
    }
    z
}

#[test]
fn wreath_cycle_indices_match_element_tallies() {
    for n in 1..=4 {
        let group = mapforge::graph::bouquet_semiarc_group(n, 10_000).unwrap();
        assert_eq!(group.order(), (1 << n) * (1..=n).product::<usize>());
        assert_eq!(
            perm::cycle_index_sns2(n),
            tallied_cycle_index(group.elements()),
            "n = {n}"
        );
    }
    for n in 1..=5 {
        let group = perm::symmetric_group(n, 1000).unwrap();
        assert_eq!(
            perm::cycle_index_sn(n),
            tallied_cycle_index(group.elements()),
            "n = {n}"
        );
    }
}

#[test]
fn lifts_match_face_voltage_orders() {
    let fixtures = voltage_fixtures();
    assert!(fixtures.len() >= 10);
    for (label, base, n, edges) in fixtures {
        let group = FinGroupTable::cyclic(n).unwrap();
        assert_eq!(group.mul(1, n as u32 - 1), 0);
        let va = VoltageAssignment::from_edge_voltages(&base, group, &edges, true).unwrap();
        let lifted = voltage::lift(&base, &va).unwrap();
        let mut faces = cycle_lengths(&face_images(&lifted));
        faces.sort_unstable();
        assert_eq!(
            faces,
            expected_lift_face_cycles(&base, &va.theta, n),
            "{label}"
        );
        let (bv, _, _) = raw_counts(&base);
        let (lv, _, lchi) = raw_counts(&lifted);
        assert_eq!(lv, n * bv, "{label}");
        assert_eq!(
            voltage::lifted_euler_predict(&base, &va).unwrap(),
            lchi,
            "{label}"
        );
    }
}

#[test]
fn quotient_of_lift_is_the_base() {
    for (label, base, n, edges) in voltage_fixtures() {
        let va = VoltageAssignment::from_edge_voltages(
            &base,
            FinGroupTable::cyclic(n).unwrap(),
            &edges,
            true,
        )
        .unwrap();
        let lifted = voltage::lift(&base, &va).unwrap();
        let deck = voltage::deck_transformations(&base, &va);
        let q = voltage::quotient(&lifted, &deck).unwrap();
        assert!(brute_isomorphic(&q.map, &base), "{label}");
        let (lhs, rhs) = voltage::orbit_identity(&lifted, &q);
        assert_eq!(lhs, rhs, "{label}");
    }
}

#[test]
fn subdivision_counts_match_raw_cycles() {
    let fixtures = [
        smanifold::generate_o20(),
        smanifold::generate_p10(),
        smanifold::torus(3, 3).unwrap(),
        smanifold::klein_bottle(3, 4).unwrap(),
    ];
    for t in fixtures {
        let (v, f, chi) = raw_counts(t.map());
        let e = t.map().edge_count();
        let s = smanifold::midpoint_subdivision(&t);
        let (v2, f2, chi2) = raw_counts(s.map());
        assert_eq!(
            (v2, s.map().edge_count(), f2),
            (v + e, 2 * e + 3 * f, 4 * f)
        );
        assert_eq!(chi2, chi);
        assert_eq!(raw_signed_genus(s.map()), raw_signed_genus(t.map()));
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    let maps = [
        fig12(),
        smanifold::generate_o20().map().clone(),
        smanifold::generate_p10().map().clone(),
        smanifold::torus(3, 3).unwrap().map().clone(),
    ];
    for m in maps {
        assert_eq!(m.automorphisms().len(), brute_automorphism_count(&m));
    }
    assert_eq!(
        brute_automorphism_count(smanifold::generate_o20().map()),
        120
    );
}

#[test]
fn census_members_satisfy_the_structural_laws() {
    let census = smanifold::census(20).unwrap();
    assert!(!census.is_empty());
    for e in &census {
        let m = e.map.map();
        let (v, f, chi) = raw_counts(m);
        assert_eq!(
            (v, f, chi),
            (e.invariants.v, e.invariants.f, e.invariants.chi)
        );
        assert!(smanifold::valency_gap_check(&e.map).unwrap().holds);

        let dual = m.dual();
        assert!(dual.vertex_valencies().iter().all(|&d| d == 3));
        assert!(dual.face_lengths().iter().all(|l| (5..=7).contains(l)));

        let vals = m.vertex_valencies();
        if vals.iter().all(|&k| k == vals[0]) {
            // χ = (3/k − 1/2)·φ, cleared of denominators
            let k = vals[0] as i64;
            assert_eq!(2 * k * chi, (6 - k) * f as i64);
        }
    }
    let regular6: Vec<_> = census
        .iter()
        .filter(|e| e.class == smanifold::SManifoldClass::Delta2)
        .collect();
    assert!(regular6.iter().all(|e| e.invariants.chi == 0));
}
