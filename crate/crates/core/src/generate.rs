//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::FieldSpec;
use crate::hypergraph::{Construction, EdgeSpec, TensorHypergraph};
use crate::ohg::OrientedHypergraph;
use crate::tensor::{TensorElem, Word};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Longest word in a boundary tensor.
    pub max_degree: usize,
    /// Chance that an edge is a loop (all structural data on one vertex).
    pub loop_prob: f64,
    /// Chance that an edge repeats an earlier one.
    pub parallel_prob: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_vertices: 6,
            max_edges: 10,
            max_degree: 3,
            loop_prob: 0.2,
            parallel_prob: 0.2,
        }
    }
}

fn vertex_list<R: Rng>(rng: &mut R, n: usize, len: usize, looped: bool) -> Vec<usize> {
    if looped {
        return vec![rng.gen_range(0..n); len];
    }
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

fn edge_of<R: Rng>(rng: &mut R, c: Construction, field: FieldSpec, n: usize, p: &GenParams) -> EdgeSpec {
    let looped = rng.gen_bool(p.loop_prob);
    let mut len = || rng.gen_range(1..=p.max_degree.max(1));
    let (k, k2) = (len(), len());
    match c {
        Construction::SymQuad => {
            let u = rng.gen_range(0..n);
            if looped || n == 1 {
                EdgeSpec::SymQuad(vec![u])
            } else {
                let v = (u + rng.gen_range(1..n)) % n;
                EdgeSpec::SymQuad(vec![u, v])
            }
        }
        Construction::Directed => {
            let source = rng.gen_range(0..n);
            let target = if looped { source } else { rng.gen_range(0..n) };
            EdgeSpec::Directed { source, target }
        }
        Construction::MultisetUndirected => EdgeSpec::MultisetUndirected(vertex_list(rng, n, k, looped)),
        Construction::OrderedUndirected => EdgeSpec::OrderedUndirected(vertex_list(rng, n, k, looped)),
        Construction::MultisetDirected => {
            let source = vertex_list(rng, n, k, looped);
            let target = if looped { source.clone() } else { vertex_list(rng, n, k2, false) };
            EdgeSpec::MultisetDirected { source, target }
        }
        Construction::OrderedDirected => {
            let source = vertex_list(rng, n, k, looped);
            let target = if looped { source.clone() } else { vertex_list(rng, n, k2, false) };
            EdgeSpec::OrderedDirected { source, target }
        }
        Construction::Raw => {
            let source = random_tensor(rng, field, n, p.max_degree);
            let target = if looped { source.clone() } else { random_tensor(rng, field, n, p.max_degree) };
            EdgeSpec::Raw { source, target }
        }
    }
}

/// A linear combination of up to three words with coefficients in `−2..=2`.
pub fn random_tensor<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, max_degree: usize) -> TensorElem {
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| {
            let len = rng.gen_range(0..=max_degree.min(2));
            let w = Word::new((0..len).map(|_| rng.gen_range(0..n)).collect());
            (w, field.from_i64(rng.gen_range(-2..=2)))
        })
        .collect::<Vec<_>>();
    TensorElem::from_terms(field, terms).expect("coefficients share the field")
}

fn assemble<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    p: &GenParams,
    mut pick: impl FnMut(&mut R, usize) -> EdgeSpec,
) -> TensorHypergraph {
    let n = rng.gen_range(1..=p.max_vertices.max(1));
    let m = rng.gen_range(0..=p.max_edges);
    let mut specs: Vec<EdgeSpec> = Vec::with_capacity(m);
    for _ in 0..m {
        if !specs.is_empty() && rng.gen_bool(p.parallel_prob) {
            let i = rng.gen_range(0..specs.len());
            specs.push(specs[i].clone());
        } else {
            specs.push(pick(rng, n));
        }
    }
    TensorHypergraph::from_specs(field, n, specs).expect("generated edges are valid")
}

/// Every edge follows `construction`.
pub fn random_single<R: Rng>(rng: &mut R, construction: Construction, field: FieldSpec, p: &GenParams) -> TensorHypergraph {
    assemble(rng, field, p, |rng, n| edge_of(rng, construction, field, n, p))
}

/// Each edge draws its own construction, raw edges included.
pub fn random_mixed<R: Rng>(rng: &mut R, field: FieldSpec, p: &GenParams) -> TensorHypergraph {
    assemble(rng, field, p, |rng, n| {
        let c = *Construction::ALL.choose(rng).expect("nonempty");
        edge_of(rng, c, field, n, p)
    })
}

/// Raw edges whose sources are drawn from a small shared pool, which makes
/// stars and positive defect common.
pub fn random_raw<R: Rng>(rng: &mut R, field: FieldSpec, p: &GenParams) -> TensorHypergraph {
    let n = rng.gen_range(1..=p.max_vertices.max(1));
    let pool: Vec<TensorElem> = (0..2).map(|_| random_tensor(rng, field, n, p.max_degree)).collect();
    let m = rng.gen_range(0..=p.max_edges);
    let specs = (0..m)
        .map(|_| EdgeSpec::Raw {
            source: pool.choose(rng).expect("nonempty").clone(),
            target: random_tensor(rng, field, n, p.max_degree),
        })
        .collect();
    TensorHypergraph::from_specs(field, n, specs).expect("generated edges are valid")
}

/// Undirected graph with symmetric quadratic edges.
pub fn random_undirected_graph<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    max_vertices: usize,
    max_edges: usize,
    loops: bool,
) -> TensorHypergraph {
    let p = GenParams {
        max_vertices,
        max_edges,
        max_degree: 2,
        loop_prob: if loops { 0.2 } else { 0.0 },
        parallel_prob: 0.0,
    };
    random_single(rng, Construction::SymQuad, field, &p)
}

/// Incidence entries drawn uniformly from `{−1, 0, +1}`.
pub fn random_oriented<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> OrientedHypergraph {
    let n = rng.gen_range(0..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let incidence = (0..n).map(|_| (0..m).map(|_| rng.gen_range(-1..=1)).collect()).collect();
    OrientedHypergraph::new(
        (0..n).map(|i| format!("v{i}")).collect(),
        (0..m).map(|e| format!("e{e}")).collect(),
        incidence,
    )
    .expect("entries are in range")
}

/// A uniformly random vertex bijection and edge order.
pub fn random_relabeling<R: Rng>(rng: &mut R, h: &TensorHypergraph) -> TensorHypergraph {
    let mut vertex_map: Vec<usize> = (0..h.vertex_count()).collect();
    vertex_map.shuffle(rng);
    let mut edge_order: Vec<usize> = (0..h.edge_count()).collect();
    edge_order.shuffle(rng);
    h.relabeled(&vertex_map, &edge_order).expect("bijections preserve validity")
}
