//! JSON formats for maps, graphs, polynomials, voltages and results.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::embed::BurnsideResult;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::map::{CombMap, MapInvariants};
use crate::perm::Perm;
use crate::poly::LaurentPoly;
use crate::smanifold::CensusEntry;
use crate::voltage::{FinGroupTable, VoltageAssignment};

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    edges: usize,
    #[serde(rename = "P")]
    p: Vec<u32>,
}

/// `{"edges": m, "P": [...]}`.
pub fn parse_map(text: &str) -> Result<CombMap> {
    let m: MapJson = serde_json::from_str(text).map_err(parse_err)?;
    if m.p.len() != 4 * m.edges {
        return Err(Error::InvalidMap(format!(
            "{} images for {} edges",
            m.p.len(),
            m.edges
        )));
    }
    CombMap::new(m.edges, Perm::from_images(m.p)?)
}

/// Parses without validating, for reporting violations.
pub fn parse_map_raw(text: &str) -> Result<(usize, Vec<u32>)> {
    let m: MapJson = serde_json::from_str(text).map_err(parse_err)?;
    Ok((m.edges, m.p))
}

pub fn map_json(map: &CombMap) -> Value {
    json!({ "edges": map.edge_count(), "P": map.p().images() })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// `{"vertices": ν, "edges": [[u, v], ...]}`.
pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let g: GraphJson = serde_json::from_str(text).map_err(parse_err)?;
    MultiGraph::new(g.vertices, g.edges)
}

pub fn graph_json(graph: &MultiGraph) -> Value {
    let edges: Vec<[usize; 2]> = graph.edges().iter().map(|&(u, v)| [u, v]).collect();
    json!({ "vertices": graph.vertex_count(), "edges": edges })
}

/// A built-in name such as `K4`, `K3,3`, `B2`, `Dp3`, or a path to a graph file.
pub fn load_graph(arg: &str) -> Result<MultiGraph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        parse_graph(&text)
    } else {
        MultiGraph::from_name(arg)
    }
}

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
pub fn biguint_json(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

/// Integers as numbers, other rationals as `"p/q"` strings.
pub fn rational_json(r: &BigRational) -> Value {
    if r.is_integer() {
        bigint_json(&r.to_integer())
    } else {
        json!(r.to_string())
    }
}

/// `{"coeffs": {"-2": 4, "0": 1}}` with exponents as string keys.
pub fn poly_json(p: &LaurentPoly) -> Value {
    let coeffs: Map<String, Value> = p
        .terms()
        .map(|(e, c)| (e.to_string(), bigint_json(c)))
        .collect();
    json!({ "coeffs": coeffs })
}

pub fn parse_poly(text: &str) -> Result<LaurentPoly> {
    #[derive(Deserialize)]
    struct PolyJson {
        coeffs: BTreeMap<String, Value>,
    }
    let p: PolyJson = serde_json::from_str(text).map_err(parse_err)?;
    let mut out = LaurentPoly::zero();
    for (k, v) in p.coeffs {
        let e: i64 = k
            .parse()
            .map_err(|_| Error::Parse(format!("exponent {k:?}")))?;
        let c: BigInt = match &v {
            Value::Number(n) => n.to_string().parse(),
            Value::String(s) => s.parse(),
            _ => return Err(Error::Parse(format!("coefficient {v}"))),
        }
        .map_err(|_| Error::Parse(format!("coefficient {v}")))?;
        out.add_term(e, c);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VoltageJson {
    group: FinGroupTable,
    theta: Vec<u32>,
}

/// `{"group": {"order": n, "table": [[...]]}, "theta": [...]}` checked against `map`.
pub fn parse_voltage(
    text: &str,
    map: &CombMap,
    require_generation: bool,
) -> Result<VoltageAssignment> {
    let v: VoltageJson = serde_json::from_str(text).map_err(parse_err)?;
    VoltageAssignment::new(map, v.group, v.theta, require_generation)
}

pub fn voltage_json(va: &VoltageAssignment) -> Value {
    json!({
        "group": { "order": va.group.order(), "table": va.group.table() },
        "theta": va.theta,
    })
}

/// A subgroup file: `{"elements": [[...], ...]}` or `{"generators": [[...], ...]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupJson {
    #[serde(default)]
    pub elements: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<u32>>>,
}

pub fn parse_subgroup(text: &str) -> Result<SubgroupJson> {
    serde_json::from_str(text).map_err(parse_err)
}

pub fn invariants_json(inv: &MapInvariants) -> Value {
    json!({
        "v": inv.v,
        "e": inv.e,
        "f": inv.f,
        "chi": inv.chi,
        "orientable": inv.orientable,
        "genus": inv.genus,
    })
}

pub fn by_genus_json(by_genus: &BTreeMap<i64, u64>) -> Value {
    let m: Map<String, Value> = by_genus
        .iter()
        .map(|(g, n)| (g.to_string(), json!(n)))
        .collect();
    Value::Object(m)
}

/// `{"class", "relation", "count", "by_genus"}`.
pub fn counts_json(r: &BurnsideResult) -> Value {
    json!({
        "class": r.class.code(),
        "relation": r.relation.code(),
        "count": r.count,
        "by_genus": by_genus_json(&r.by_genus),
    })
}

/// One JSON line of a census.
pub fn census_json(e: &CensusEntry) -> Value {
    json!({
        "class": e.class.code(),
        "type": e.class.name(),
        "invariants": invariants_json(&e.invariants),
        "v5": e.v5,
        "v6": e.v6,
        "v7": e.v7,
        "map": map_json(e.map.map()),
    })
}

/// `{"error": kind, "message": text}`, with the budget fields when relevant.
pub fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::Parse(_) => "parse",
        Error::InvalidMap(_) => "invalid_map",
        Error::InvalidGraph(_) | Error::Disconnected => "invalid_graph",
        Error::InvalidVoltage(_) | Error::InvalidGroup(_) => "invalid_voltage",
        Error::NonIntegral(_) => "non_integral",
        Error::OutOfRange(_) => "out_of_range",
        _ => "domain",
    };
    let mut v = json!({ "error": kind, "message": e.to_string() });
    if let Error::BudgetExceeded { needed, budget } = e {
        v["needed"] = json!(needed);
        v["budget"] = json!(budget);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::tests::fig12;

    #[test]
    fn map_roundtrip() {
        let m = fig12();
        let text = map_json(&m).to_string();
        assert!(text.starts_with("{\"edges\":6,\"P\":[4,22,"));
        assert_eq!(parse_map(&text).unwrap(), m);
    }

    #[test]
    fn poly_roundtrip() {
        let p = LaurentPoly::from_terms([(-2i64, 4i64), (0, 2), (1, 1)]);
        let v = poly_json(&p);
        assert_eq!(v.to_string(), r#"{"coeffs":{"-2":4,"0":2,"1":1}}"#);
        assert_eq!(parse_poly(&v.to_string()).unwrap(), p);
    }

    #[test]
    fn graph_roundtrip() {
        let g = MultiGraph::complete(4).unwrap();
        assert_eq!(parse_graph(&graph_json(&g).to_string()).unwrap(), g);
        assert!(parse_graph(r#"{"vertices": 3, "edges": [[0, 1]]}"#).is_err());
    }

    #[test]
    fn invariants_layout() {
        let v = invariants_json(&fig12().invariants());
        assert_eq!(
            v.to_string(),
            r#"{"v":4,"e":6,"f":2,"chi":0,"orientable":true,"genus":1}"#
        );
    }

    #[test]
    fn budget_error_is_structured() {
        let e = Error::BudgetExceeded {
            needed: "100".into(),
            budget: 10,
        };
        let v = error_json(&e);
        assert_eq!(v["error"], "budget_exceeded");
        assert_eq!(v["budget"], 10);
    }
}
