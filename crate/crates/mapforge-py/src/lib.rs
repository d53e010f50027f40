use std::collections::BTreeMap;

use mapforge::embed::{self, EmbeddingClass, EnumOptions, Relation};
use mapforge::poly::{self, LaurentPoly};
use mapforge::voltage::{self, FinGroupTable, VoltageAssignment};
use mapforge::{closed_forms, io, smanifold, CombMap, MultiGraph, Perm};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: mapforge::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn poly_dict(p: &LaurentPoly) -> BTreeMap<i64, BigInt> {
    p.terms().map(|(e, c)| (e, c.clone())).collect()
}

fn options(workers: usize, budget: Option<u64>) -> EnumOptions {
    EnumOptions {
        workers: workers.max(1),
        budget: budget.unwrap_or(embed::DEFAULT_BUDGET),
        ..EnumOptions::default()
    }
}

/// A combinatorial map on `4·edges` quadricells.
#[pyclass(name = "CombMap", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCombMap {
    inner: CombMap,
}

#[pymethods]
impl PyCombMap {
    #[new]
    fn new(edges: usize, p: Vec<u32>) -> PyResult<Self> {
        let perm = Perm::from_images(p).map_err(err)?;
        Ok(PyCombMap {
            inner: CombMap::new(edges, perm).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCombMap {
            inner: io::parse_map(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        io::map_json(&self.inner).to_string()
    }

    #[getter]
    fn edges(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn p(&self) -> Vec<u32> {
        self.inner.p().images().to_vec()
    }

    /// `(v, e, f, chi, orientable, genus)`.
    fn invariants(&self) -> (usize, usize, usize, i64, bool, i64) {
        let i = self.inner.invariants();
        (i.v, i.e, i.f, i.chi, i.orientable, i.genus)
    }

    fn dual(&self) -> Self {
        PyCombMap {
            inner: self.inner.dual(),
        }
    }

    fn mirror(&self) -> Self {
        PyCombMap {
            inner: self.inner.mirror(),
        }
    }

    fn is_isomorphic(&self, other: &PyCombMap) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn automorphism_count(&self) -> usize {
        self.inner.automorphisms().len()
    }

    fn canonical_code(&self) -> Vec<u32> {
        self.inner.canonical_code(mapforge::map::Roots::All)
    }

    fn __repr__(&self) -> String {
        format!("CombMap({})", self.to_json())
    }
}

/// A connected multigraph.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: MultiGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: MultiGraph::new(vertices, edges).map_err(err)?,
        })
    }

    /// `K4`, `K3,3`, `B2`, `Dp3`, ...
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: MultiGraph::from_name(name).map_err(err)?,
        })
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn betti(&self) -> usize {
        self.inner.betti()
    }

    fn semiarc_aut_order(&self) -> PyResult<usize> {
        Ok(self
            .inner
            .semiarc_aut_group(Default::default())
            .map_err(err)?
            .order())
    }
}

/// Burnside count: `(count, {signed genus: count})`.
#[pyfunction]
#[pyo3(signature = (graph, class_="L", relation="iso", workers=1, budget=None))]
fn burnside(
    py: Python<'_>,
    graph: &PyGraph,
    class_: &str,
    relation: &str,
    workers: usize,
    budget: Option<u64>,
) -> PyResult<(u64, BTreeMap<i64, u64>)> {
    let class: EmbeddingClass = class_.parse().map_err(err)?;
    let relation: Relation = relation.parse().map_err(err)?;
    let opts = options(workers, budget);
    let g = graph.inner.clone();
    let r = py
        .detach(move || embed::burnside_count(&g, class, relation, &opts))
        .map_err(err)?;
    Ok((r.count, r.by_genus))
}

/// Total genus polynomial as `{exponent: coefficient}`.
#[pyfunction]
#[pyo3(signature = (graph, workers=1))]
fn genus_poly(graph: &PyGraph, workers: usize) -> PyResult<BTreeMap<i64, BigInt>> {
    let p = poly::genus_poly(&graph.inner, &options(workers, None)).map_err(err)?;
    Ok(poly_dict(&p.total))
}

/// Rooted-map polynomial as `{exponent: coefficient}`.
#[pyfunction]
#[pyo3(signature = (graph, workers=1))]
fn rooted_poly(graph: &PyGraph, workers: usize) -> PyResult<BTreeMap<i64, BigInt>> {
    let p = poly::rooted_poly(&graph.inner, &options(workers, None)).map_err(err)?;
    Ok(poly_dict(&p.total))
}

/// `(n^O, n^L)` of `K_n` by structured Burnside counting.
#[pyfunction]
fn complete_map_counts(n: usize) -> PyResult<(String, String)> {
    let (o, l) = embed::complete_map_counts(n).map_err(err)?;
    Ok((o.to_string(), l.to_string()))
}

/// The closed form for `n^O(K_n)` as an exact `"p/q"` string.
#[pyfunction]
fn n_o_complete_exact(n: usize) -> PyResult<String> {
    Ok(closed_forms::n_o_complete_exact(n)
        .map_err(err)?
        .to_string())
}

#[pyfunction]
fn bouquet_genus_recursion(m: i64, n: i64) -> PyResult<BigInt> {
    poly::bouquet_genus_recursion(m, n).map_err(err)
}

/// Lift along `Z_order` with one voltage per edge.
#[pyfunction]
#[pyo3(signature = (map, order, edge_voltages, relax=false))]
fn lift_cyclic(
    map: &PyCombMap,
    order: usize,
    edge_voltages: Vec<u32>,
    relax: bool,
) -> PyResult<PyCombMap> {
    let group = FinGroupTable::cyclic(order).map_err(err)?;
    let va = VoltageAssignment::from_edge_voltages(&map.inner, group, &edge_voltages, !relax)
        .map_err(err)?;
    Ok(PyCombMap {
        inner: voltage::lift(&map.inner, &va).map_err(err)?,
    })
}

/// s-manifold class code (`D1` … `D7`, or `none`).
#[pyfunction]
fn classify(map: &PyCombMap) -> PyResult<&'static str> {
    let t = smanifold::TriangularMap::new(map.inner.clone()).map_err(err)?;
    Ok(smanifold::classify(&t).code())
}

#[pyfunction]
fn icosahedron() -> PyCombMap {
    PyCombMap {
        inner: smanifold::generate_o20().map().clone(),
    }
}

#[pyfunction]
fn projective_icosahedron() -> PyCombMap {
    PyCombMap {
        inner: smanifold::generate_p10().map().clone(),
    }
}

/// Runs the command line; returns `(exit code, stdout)`.
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String) {
    let out = mapforge::cli::run(std::iter::once("mapforge".to_string()).chain(args));
    (out.code, out.stdout)
}

#[pymodule]
fn mapforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCombMap>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(burnside, m)?)?;
    m.add_function(wrap_pyfunction!(genus_poly, m)?)?;
    m.add_function(wrap_pyfunction!(rooted_poly, m)?)?;
    m.add_function(wrap_pyfunction!(complete_map_counts, m)?)?;
    m.add_function(wrap_pyfunction!(n_o_complete_exact, m)?)?;
    m.add_function(wrap_pyfunction!(bouquet_genus_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(lift_cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(icosahedron, m)?)?;
    m.add_function(wrap_pyfunction!(projective_icosahedron, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}
