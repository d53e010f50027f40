//! The `mapforge` command line.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::closed_forms::{self, BetaVariant};
use crate::embed::{self, EmbeddingClass, EnumOptions, Relation, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::io;
use crate::map::{validate, CombMap, Roots};
use crate::perm::{Perm, PermGroup};
use crate::poly::{self, GenusPolys};
use crate::smanifold::{self, TriangularMap};
use crate::voltage;

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "MAPFORGE_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "mapforge",
    version,
    about = "Combinatorial maps and embedding enumeration"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Built-in graph name (K4, K3,3, B2, Dp3, Dp2,1,1) or a graph JSON file.
    #[arg(long, global = true)]
    graph: Option<String>,
    /// Map JSON file.
    #[arg(long, global = true)]
    map: Option<String>,
    /// Embedding class.
    #[arg(long, global = true, default_value = "L")]
    class: EmbeddingClass,
    /// Counting relation.
    #[arg(long, global = true, default_value = "iso")]
    relation: Relation,
    /// Voltage JSON file (voltage-lift) or subgroup JSON file (quotient).
    #[arg(long, global = true)]
    group: Option<String>,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Maximum number of rotation systems to visit.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// JSON file with "budget" and "workers" defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Human-readable output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check the map axioms.
    Validate,
    /// Vertex, edge and face counts, Euler characteristic and genus.
    Invariants,
    /// The dual map.
    Dual,
    /// Automorphism group of a map.
    Auts {
        /// Include every element.
        #[arg(long)]
        elements: bool,
    },
    /// Number of labelled embeddings of a graph.
    EmbedCount,
    /// Orbit representatives of the embeddings of a graph.
    Enumerate,
    /// Unrooted map count by Burnside's lemma.
    Burnside,
    /// Genus polynomials of a graph.
    GenusPoly,
    /// Rooted-map polynomials of a graph.
    RootedPoly,
    /// Closed-form and structured counts of maps of K_n.
    KnCount {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_beta)]
        beta: Option<BetaVariant>,
    },
    /// Closed-form and enumerated counts of maps of the bouquet B_n.
    BouquetCount {
        #[arg(long)]
        n: usize,
    },
    /// Lift a map along a voltage assignment.
    VoltageLift {
        /// Skip the face-voltage generation check.
        #[arg(long)]
        relax: bool,
    },
    /// Quotient of a map by a subgroup of its automorphisms.
    Quotient,
    /// Automorphism bounds for a map.
    Bounds {
        /// Order N of a fixed-free cyclic group for the minimum-genus formula.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Classify a triangular map as an s-manifold.
    SmanifoldClassify,
    /// All simplicial closed s-manifolds up to a face count, as JSON lines.
    SmanifoldCensus {
        #[arg(long, default_value_t = 20)]
        max_faces: usize,
    },
    /// Midpoint subdivision of a triangular map.
    Subdivide,
}

fn parse_beta(s: &str) -> std::result::Result<BetaVariant, String> {
    match s {
        "statement" => Ok(BetaVariant::Statement),
        "proof" => Ok(BetaVariant::Proof),
        _ => Err(format!("expected statement or proof, got {s:?}")),
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    budget: Option<u64>,
    workers: Option<usize>,
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let pretty = cli.pretty;
    match execute(&cli) {
        Ok(lines) => {
            let stdout = lines
                .iter()
                .map(|v| {
                    if pretty {
                        render_pretty(v)
                    } else {
                        v.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join("\n");
            Outcome {
                code: 0,
                stdout: stdout + "\n",
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: io::error_json(&e).to_string() + "\n",
            stderr: format!("error: {e}\n"),
        },
    }
}

fn options(cli: &Cli) -> std::result::Result<EnumOptions, Failure> {
    let config = match &cli.config {
        Some(path) => {
            let text = read_file(path)?;
            serde_json::from_str::<Config>(&text)
                .map_err(|e| Failure::Domain(Error::Parse(e.to_string())))?
        }
        None => Config::default(),
    };
    let env_budget = match std::env::var(BUDGET_ENV) {
        Ok(s) => Some(
            s.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("{BUDGET_ENV}={s:?} is not a number")))?,
        ),
        Err(_) => None,
    };
    Ok(EnumOptions {
        budget: cli
            .budget
            .or(env_budget)
            .or(config.budget)
            .unwrap_or(DEFAULT_BUDGET),
        workers: cli.workers.or(config.workers).unwrap_or(1).max(1),
        ..EnumOptions::default()
    })
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    if !path.is_file() {
        return Err(Failure::Usage(format!("no such file: {}", path.display())));
    }
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(Error::Parse(format!("{}: {e}", path.display()))))
}

fn map_text(cli: &Cli) -> std::result::Result<String, Failure> {
    match cli.map.as_deref() {
        None | Some("") => Err(Failure::Usage("--map <file> is required".into())),
        Some(p) => read_file(Path::new(p)),
    }
}

fn load_map(cli: &Cli) -> std::result::Result<CombMap, Failure> {
    Ok(io::parse_map(&map_text(cli)?)?)
}

fn load_triangular(cli: &Cli) -> std::result::Result<TriangularMap, Failure> {
    Ok(TriangularMap::new(load_map(cli)?)?)
}

fn graph(cli: &Cli) -> std::result::Result<MultiGraph, Failure> {
    match cli.graph.as_deref() {
        None | Some("") => Err(Failure::Usage("--graph <name|file> is required".into())),
        Some(g) => Ok(io::load_graph(g)?),
    }
}

fn group_text(cli: &Cli) -> std::result::Result<String, Failure> {
    match cli.group.as_deref() {
        None | Some("") => Err(Failure::Usage("--group <file> is required".into())),
        Some(p) => read_file(Path::new(p)),
    }
}

fn polys_json(p: &GenusPolys) -> Value {
    json!({
        "orientable": io::poly_json(&p.orientable),
        "nonorientable": io::poly_json(&p.nonorientable),
        "total": io::poly_json(&p.total),
        "display": p.total.to_string(),
    })
}

fn result_or_error<T>(r: Result<T>, f: impl FnOnce(T) -> Value) -> Value {
    match r {
        Ok(x) => f(x),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn execute(cli: &Cli) -> std::result::Result<Vec<Value>, Failure> {
    let out = match &cli.verb {
        Verb::Validate => {
            let (edges, images) = io::parse_map_raw(&map_text(cli)?)?;
            let violations = validate(edges, &images);
            if !violations.is_empty() {
                let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                return Err(Failure::Domain(Error::InvalidMap(list.join("; "))));
            }
            json!({ "valid": true, "violations": [] })
        }
        Verb::Invariants => io::invariants_json(&load_map(cli)?.invariants()),
        Verb::Dual => io::map_json(&load_map(cli)?.dual()),
        Verb::Auts { elements } => {
            let map = load_map(cli)?;
            let auts = map.automorphisms();
            let plus = map
                .orientation_preserving_automorphisms()
                .ok()
                .map(|a| a.len());
            let max_order = closed_forms::max_element_order(&auts);
            let mut v = json!({
                "order": auts.len(),
                "orientation_preserving": plus,
                "max_element_order": io::biguint_json(&max_order),
                "divisibility": closed_forms::aut_divisibility(&map),
            });
            if *elements {
                let mut imgs: Vec<&[u32]> = auts.iter().map(Perm::images).collect();
                imgs.sort();
                v["elements"] = json!(imgs);
            }
            v
        }
        Verb::EmbedCount => {
            let g = graph(cli)?;
            json!({
                "class": cli.class.code(),
                "count": io::biguint_json(&embed::count_embeddings(&g, cli.class)),
            })
        }
        Verb::Enumerate => {
            let g = graph(cli)?;
            let opts = options(cli)?;
            let mut reps = embed::orbit_partition(&g, cli.class, cli.relation, &opts)?;
            reps.sort_by(|a, b| a.code.cmp(&b.code));
            let list: Vec<Value> = reps
                .iter()
                .map(|r| {
                    json!({
                        "invariants": io::invariants_json(&r.invariants),
                        "rotation": r.system.rotation,
                        "lambda": r.system.lambda,
                        "map": io::map_json(&r.map),
                    })
                })
                .collect();
            json!({
                "class": cli.class.code(),
                "relation": cli.relation.code(),
                "count": list.len(),
                "representatives": list,
            })
        }
        Verb::Burnside => {
            let g = graph(cli)?;
            let opts = options(cli)?;
            io::counts_json(&embed::burnside_count(&g, cli.class, cli.relation, &opts)?)
        }
        Verb::GenusPoly => polys_json(&poly::genus_poly(&graph(cli)?, &options(cli)?)?),
        Verb::RootedPoly => polys_json(&poly::rooted_poly(&graph(cli)?, &options(cli)?)?),
        Verb::KnCount { n, beta } => kn_count(*n, *beta)?,
        Verb::BouquetCount { n } => bouquet_count(*n, &options(cli)?)?,
        Verb::VoltageLift { relax } => {
            let map = load_map(cli)?;
            let va = io::parse_voltage(&group_text(cli)?, &map, !relax)?;
            let lifted = voltage::lift(&map, &va)?;
            json!({
                "map": io::map_json(&lifted),
                "invariants": io::invariants_json(&lifted.invariants()),
                "predicted_chi": voltage::lifted_euler_predict(&map, &va)?,
                "face_orders": voltage::face_orders(&map, &va),
            })
        }
        Verb::Quotient => {
            let map = load_map(cli)?;
            let sub = io::parse_subgroup(&group_text(cli)?)?;
            let size = map.quadricell_count();
            let to_perms = |list: Vec<Vec<u32>>| -> Result<Vec<Perm>> {
                list.into_iter().map(Perm::from_images).collect()
            };
            let elements = match (sub.elements, sub.generators) {
                (Some(e), None) => to_perms(e)?,
                (None, Some(g)) => {
                    let gens = to_perms(g)?;
                    PermGroup::generate(size, &gens, 4 * size)?
                        .elements()
                        .to_vec()
                }
                _ => {
                    return Err(Failure::Usage(
                        "subgroup file needs exactly one of elements, generators".into(),
                    ))
                }
            };
            let q = voltage::quotient(&map, &elements)?;
            let (lhs, rhs) = voltage::orbit_identity(&map, &q);
            json!({
                "map": io::map_json(&q.map),
                "invariants": io::invariants_json(&q.map.invariants()),
                "group_order": q.elements.len(),
                "voltage": q.voltage.as_ref().map(io::voltage_json),
                "orbit_identity": [lhs, rhs],
            })
        }
        Verb::Bounds { n } => bounds(&load_map(cli)?, *n)?,
        Verb::SmanifoldClassify => {
            let t = load_triangular(cli)?;
            let class = smanifold::classify(&t);
            let (v5, v6, v7) = t.valency_counts();
            let gap = smanifold::valency_gap_check(&t).ok().map(|r| r.holds);
            let area = voltage::triangle_area_check(&t);
            json!({
                "class": class.code(),
                "type": class.name(),
                "invariants": io::invariants_json(&t.invariants()),
                "v5": v5,
                "v6": v6,
                "v7": v7,
                "valency_gap": gap,
                "defect_sum": io::rational_json(&area.defect_sum),
                "area": io::rational_json(&area.area.0),
            })
        }
        Verb::SmanifoldCensus { max_faces } => {
            let entries = smanifold::census(*max_faces)?;
            let mut lines: Vec<Value> = entries.iter().map(io::census_json).collect();
            let count = |c| entries.iter().filter(|e| e.class == c).count();
            lines.push(json!({
                "summary": {
                    "max_faces": max_faces,
                    "total": entries.len(),
                    "D1": count(smanifold::SManifoldClass::Delta1),
                    "D2": count(smanifold::SManifoldClass::Delta2),
                    "D3": count(smanifold::SManifoldClass::Delta3),
                    "D4": count(smanifold::SManifoldClass::Delta4),
                    "D5": count(smanifold::SManifoldClass::Delta5),
                    "D6": count(smanifold::SManifoldClass::Delta6),
                    "D7": count(smanifold::SManifoldClass::Delta7),
                    "note": "finite prefix only; the D5 count makes no claim about infinitude",
                }
            }));
            return Ok(lines);
        }
        Verb::Subdivide => {
            io::map_json(smanifold::midpoint_subdivision(&load_triangular(cli)?).map())
        }
    };
    Ok(vec![out])
}

fn kn_count(n: usize, beta: Option<BetaVariant>) -> Result<Value> {
    let variants = match beta {
        Some(b) => vec![b],
        None => vec![BetaVariant::Statement, BetaVariant::Proof],
    };
    let mut formula = serde_json::Map::new();
    formula.insert(
        "O".into(),
        result_or_error(closed_forms::n_o_complete(n), |x| io::biguint_json(&x)),
    );
    for v in &variants {
        let tag = match v {
            BetaVariant::Statement => "statement",
            BetaVariant::Proof => "proof",
        };
        formula.insert(
            format!("L_{tag}"),
            result_or_error(closed_forms::n_l_complete(n, *v), |x| io::biguint_json(&x)),
        );
        formula.insert(
            format!("N_{tag}"),
            result_or_error(closed_forms::n_n_complete(n, *v), |x| io::biguint_json(&x)),
        );
    }
    let structured = embed::complete_map_counts(n)?;
    Ok(json!({
        "n": n,
        "formula": formula,
        "structured": {
            "O": io::biguint_json(&structured.0),
            "L": io::biguint_json(&structured.1),
            "N": io::biguint_json(&(&structured.1 - &structured.0)),
        },
    }))
}

fn bouquet_count(n: usize, opts: &EnumOptions) -> Result<Value> {
    let g = MultiGraph::bouquet(n)?;
    let o = embed::burnside_count(&g, EmbeddingClass::Orientable, Relation::Isomorphism, opts)?;
    let nn = embed::burnside_count(
        &g,
        EmbeddingClass::NonOrientable,
        Relation::Isomorphism,
        opts,
    )?;
    Ok(json!({
        "n": n,
        "formula": {
            "O": result_or_error(closed_forms::n_o_bouquet_exact(n), |x| io::rational_json(&x)),
            "N": result_or_error(closed_forms::n_n_bouquet_exact(n), |x| io::rational_json(&x)),
        },
        "enumerated": { "O": o.count, "N": nn.count },
    }))
}

fn bounds(map: &CombMap, n: Option<u64>) -> Result<Value> {
    let inv = map.invariants();
    let auts = map.automorphisms();
    let plus = map
        .orientation_preserving_automorphisms()
        .ok()
        .map(|a| a.len());
    let max_order = closed_forms::max_element_order(&auts);
    let hurwitz = closed_forms::hurwitz_bounds(inv.genus, inv.orientable).ok();
    let order_bound = closed_forms::max_automorphism_order(inv.genus, inv.orientable).ok();
    let holds = match (hurwitz, order_bound) {
        (Some((half, full)), Some(ob)) => {
            let plus_ok = if inv.orientable {
                plus.unwrap_or(0) as u64 <= half
            } else {
                true
            };
            auts.len() as u64 <= full && plus_ok && max_order <= ob.into()
        }
        _ => true,
    };
    let mut v = json!({
        "invariants": io::invariants_json(&inv),
        "aut_order": auts.len(),
        "aut_plus_order": plus,
        "max_element_order": io::biguint_json(&max_order),
        "hurwitz": hurwitz.map(|(a, b)| json!({ "aut_plus": a, "aut": b })),
        "max_order_bound": order_bound,
        "holds": holds,
        "canonical_code_length": map.canonical_code(Roots::All).len(),
    });
    if let Some(n) = n {
        let (g, g2) = closed_forms::min_genus_fixed_free(map, n)?;
        v["min_genus"] = json!({ "orientable": g, "nonorientable": g2 });
    }
    Ok(v)
}

/// Top-level keys as aligned rows, nested values as compact JSON.
fn render_pretty(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            m.iter()
                .map(|(k, x)| {
                    let shown = match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    format!("{k:<width$}  {shown}")
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("mapforge").chain(args.iter().copied()))
    }

    #[test]
    fn unknown_verb_is_usage_error() {
        assert_eq!(run_args(&["frobnicate"]).code, 2);
    }

    #[test]
    fn missing_map_is_usage_error() {
        assert_eq!(run_args(&["validate", "--map", "empty"]).code, 2);
        assert_eq!(run_args(&["validate"]).code, 2);
    }

    #[test]
    fn burnside_k4() {
        let out = run_args(&[
            "burnside",
            "--graph",
            "K4",
            "--class",
            "L",
            "--relation",
            "iso",
        ]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["count"], 11);
    }

    #[test]
    fn budget_exceeded_is_structured() {
        let out = run_args(&["burnside", "--graph", "K4", "--budget", "10"]);
        assert_eq!(out.code, 1);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"], "budget_exceeded");
    }
}
