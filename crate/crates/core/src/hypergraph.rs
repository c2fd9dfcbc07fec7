//! Directed tensor-labeled hypergraphs and their macrographs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, Matrix, Subspace};
use crate::field::{FieldSpec, Scalar};
use crate::multigraph::{
    defect, extended_kernel_basis, incidence_matrix, labeled_incidence, weak_components, ExtendedBasis, Labeling,
    Multigraph,
};
use crate::tensor::{sym, TensorElem, Word};

/// One hyperedge, by vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EdgeSpec {
    /// Undirected edge `{u, v}` or loop `{v}` encoded as a symmetric 2-tensor.
    SymQuad(Vec<usize>),
    Directed { source: usize, target: usize },
    MultisetUndirected(Vec<usize>),
    OrderedUndirected(Vec<usize>),
    MultisetDirected { source: Vec<usize>, target: Vec<usize> },
    OrderedDirected { source: Vec<usize>, target: Vec<usize> },
    Raw { source: TensorElem, target: TensorElem },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construction {
    SymQuad,
    Directed,
    MultisetUndirected,
    OrderedUndirected,
    MultisetDirected,
    OrderedDirected,
    Raw,
}

impl Construction {
    pub const ALL: [Construction; 7] = [
        Construction::SymQuad,
        Construction::Directed,
        Construction::MultisetUndirected,
        Construction::OrderedUndirected,
        Construction::MultisetDirected,
        Construction::OrderedDirected,
        Construction::Raw,
    ];

    pub const STANDARD: [Construction; 6] = [
        Construction::SymQuad,
        Construction::Directed,
        Construction::MultisetUndirected,
        Construction::OrderedUndirected,
        Construction::MultisetDirected,
        Construction::OrderedDirected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::SymQuad => "sym_quad",
            Construction::Directed => "directed",
            Construction::MultisetUndirected => "multiset_undirected",
            Construction::OrderedUndirected => "ordered_undirected",
            Construction::MultisetDirected => "multiset_directed",
            Construction::OrderedDirected => "ordered_directed",
            Construction::Raw => "raw",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl EdgeSpec {
    pub fn construction(&self) -> Construction {
        match self {
            EdgeSpec::SymQuad(_) => Construction::SymQuad,
            EdgeSpec::Directed { .. } => Construction::Directed,
            EdgeSpec::MultisetUndirected(_) => Construction::MultisetUndirected,
            EdgeSpec::OrderedUndirected(_) => Construction::OrderedUndirected,
            EdgeSpec::MultisetDirected { .. } => Construction::MultisetDirected,
            EdgeSpec::OrderedDirected { .. } => Construction::OrderedDirected,
            EdgeSpec::Raw { .. } => Construction::Raw,
        }
    }

    fn vertices(&self) -> Vec<usize> {
        match self {
            EdgeSpec::SymQuad(m) | EdgeSpec::MultisetUndirected(m) | EdgeSpec::OrderedUndirected(m) => m.clone(),
            EdgeSpec::Directed { source, target } => vec![*source, *target],
            EdgeSpec::MultisetDirected { source, target } | EdgeSpec::OrderedDirected { source, target } => {
                source.iter().chain(target).copied().collect()
            }
            EdgeSpec::Raw { source, target } => source
                .support()
                .chain(target.support())
                .flat_map(|w| w.letters().to_vec())
                .collect(),
        }
    }

    /// The boundary pair `(A_e, B_e)`.
    pub fn boundary(&self, field: FieldSpec) -> Result<(TensorElem, TensorElem)> {
        let unit = TensorElem::unit(field);
        Ok(match self {
            EdgeSpec::SymQuad(m) => match m.as_slice() {
                [v] => (sym(field, &[*v, *v])?, unit),
                [u, v] => (sym(field, &[*u, *v])?, unit),
                _ => {
                    return Err(Error::InvalidEdge(format!(
                        "symmetric quadratic edge with {} members",
                        m.len()
                    )))
                }
            },
            EdgeSpec::Directed { source, target } => {
                (TensorElem::pure(field, vec![*source]), TensorElem::pure(field, vec![*target]))
            }
            EdgeSpec::MultisetUndirected(m) => (sym(field, m)?, unit),
            EdgeSpec::OrderedUndirected(t) => (TensorElem::pure(field, t.clone()), unit),
            EdgeSpec::MultisetDirected { source, target } => (sym(field, source)?, sym(field, target)?),
            EdgeSpec::OrderedDirected { source, target } => {
                (TensorElem::pure(field, source.clone()), TensorElem::pure(field, target.clone()))
            }
            EdgeSpec::Raw { source, target } => {
                if source.field() != field || target.field() != field {
                    return Err(Error::FieldMismatch(format!("raw edge tensors not over {field}")));
                }
                (source.clone(), target.clone())
            }
        })
    }

    fn is_empty_data(&self) -> bool {
        match self {
            EdgeSpec::SymQuad(m) | EdgeSpec::MultisetUndirected(m) | EdgeSpec::OrderedUndirected(m) => m.is_empty(),
            EdgeSpec::MultisetDirected { source, target } | EdgeSpec::OrderedDirected { source, target } => {
                source.is_empty() || target.is_empty()
            }
            EdgeSpec::Directed { .. } | EdgeSpec::Raw { .. } => false,
        }
    }

    fn relabel(&self, map: &[usize]) -> EdgeSpec {
        let m = |v: &[usize]| v.iter().map(|&x| map[x]).collect::<Vec<_>>();
        let t = |x: &TensorElem| {
            TensorElem::from_terms(
                x.field(),
                x.terms().map(|(w, c)| (Word::new(m(w.letters())), c.clone())),
            )
            .expect("relabeling preserves the field")
        };
        match self {
            EdgeSpec::SymQuad(v) => EdgeSpec::SymQuad(m(v)),
            EdgeSpec::Directed { source, target } => EdgeSpec::Directed {
                source: map[*source],
                target: map[*target],
            },
            EdgeSpec::MultisetUndirected(v) => EdgeSpec::MultisetUndirected(m(v)),
            EdgeSpec::OrderedUndirected(v) => EdgeSpec::OrderedUndirected(m(v)),
            EdgeSpec::MultisetDirected { source, target } => EdgeSpec::MultisetDirected {
                source: m(source),
                target: m(target),
            },
            EdgeSpec::OrderedDirected { source, target } => EdgeSpec::OrderedDirected {
                source: m(source),
                target: m(target),
            },
            EdgeSpec::Raw { source, target } => EdgeSpec::Raw {
                source: t(source),
                target: t(target),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorHypergraph {
    field: FieldSpec,
    vertex_names: Vec<String>,
    edge_ids: Vec<String>,
    specs: Vec<EdgeSpec>,
    boundary: Vec<(TensorElem, TensorElem)>,
}

impl TensorHypergraph {
    pub fn build(field: FieldSpec, vertex_names: Vec<String>, edges: Vec<(String, EdgeSpec)>) -> Result<Self> {
        let n = vertex_names.len();
        let mut edge_ids = Vec::with_capacity(edges.len());
        let mut specs = Vec::with_capacity(edges.len());
        let mut boundary = Vec::with_capacity(edges.len());
        for (id, spec) in edges {
            if spec.is_empty_data() {
                return Err(Error::EmptyStructuralData(id));
            }
            if let Some(v) = spec.vertices().into_iter().find(|&v| v >= n) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            boundary.push(spec.boundary(field)?);
            edge_ids.push(id);
            specs.push(spec);
        }
        Ok(TensorHypergraph {
            field,
            vertex_names,
            edge_ids,
            specs,
            boundary,
        })
    }

    /// Vertices named `v0, v1, ...` and edges `e0, e1, ...`.
    pub fn from_specs(field: FieldSpec, vertex_count: usize, specs: Vec<EdgeSpec>) -> Result<Self> {
        let names = (0..vertex_count).map(|i| format!("v{i}")).collect();
        let edges = specs.into_iter().enumerate().map(|(i, s)| (format!("e{i}"), s)).collect();
        TensorHypergraph::build(field, names, edges)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    pub fn edge_count(&self) -> usize {
        self.specs.len()
    }

    pub fn specs(&self) -> &[EdgeSpec] {
        &self.specs
    }

    pub fn boundary(&self) -> &[(TensorElem, TensorElem)] {
        &self.boundary
    }

    /// Edge differences `B_e − A_e`.
    pub fn differences(&self) -> Vec<TensorElem> {
        self.boundary
            .iter()
            .map(|(a, b)| b.sub(a).expect("boundary tensors share the field"))
            .collect()
    }

    pub fn construction_profile(&self) -> BTreeMap<Construction, usize> {
        let mut profile = BTreeMap::new();
        for s in &self.specs {
            *profile.entry(s.construction()).or_insert(0) += 1;
        }
        profile
    }

    /// Every edge follows the same non-raw construction.
    pub fn is_standard(&self) -> bool {
        let profile = self.construction_profile();
        profile.len() == 1 && !profile.contains_key(&Construction::Raw)
    }

    pub fn single_construction(&self) -> Option<Construction> {
        let profile = self.construction_profile();
        match profile.len() {
            1 => profile.keys().next().copied(),
            _ => None,
        }
    }

    /// The image under a vertex bijection `vertex_map[old] = new`, with the
    /// edges listed in the order `edge_order` (old indices).
    pub fn relabeled(&self, vertex_map: &[usize], edge_order: &[usize]) -> Result<Self> {
        let n = self.vertex_count();
        let mut names = vec![String::new(); n];
        for (old, &new) in vertex_map.iter().enumerate() {
            names[new] = self.vertex_names[old].clone();
        }
        let edges = edge_order
            .iter()
            .map(|&e| (self.edge_ids[e].clone(), self.specs[e].relabel(vertex_map)))
            .collect();
        TensorHypergraph::build(self.field, names, edges)
    }

    /// The same hypergraph over another field; raw tensors are reduced.
    pub fn with_field(&self, field: FieldSpec) -> Result<Self> {
        let convert = |x: &TensorElem| -> Result<TensorElem> {
            let terms = x
                .terms()
                .map(|(w, c)| {
                    let q = c
                        .as_rational()
                        .ok_or_else(|| Error::FieldMismatch("only rational tensors can be reinterpreted".into()))?;
                    Ok((w.clone(), field.from_rational(q)?))
                })
                .collect::<Result<Vec<_>>>()?;
            TensorElem::from_terms(field, terms)
        };
        let mut specs = Vec::with_capacity(self.specs.len());
        for s in &self.specs {
            specs.push(match s {
                EdgeSpec::Raw { source, target } if source.field() != field => EdgeSpec::Raw {
                    source: convert(source)?,
                    target: convert(target)?,
                },
                other => other.clone(),
            });
        }
        let edges = self.edge_ids.iter().cloned().zip(specs).collect();
        TensorHypergraph::build(field, self.vertex_names.clone(), edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Macrograph {
    pub boundary_tensors: Vec<TensorElem>,
    pub graph: Multigraph,
}

impl Macrograph {
    pub fn index_of(&self, t: &TensorElem) -> Option<usize> {
        self.boundary_tensors.binary_search(t).ok()
    }

    /// The evaluation labeling `1_w ↦ w`.
    pub fn labeling(&self, field: FieldSpec) -> Labeling {
        Labeling::from_tensors(self.graph.clone(), field, &self.boundary_tensors)
            .expect("boundary tensors share the field")
    }
}

pub fn macrograph(h: &TensorHypergraph) -> Macrograph {
    let mut tensors: Vec<TensorElem> = h.boundary.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    tensors.sort();
    tensors.dedup();
    let idx = |t: &TensorElem| tensors.binary_search(t).expect("boundary tensor indexed");
    let edges = h.boundary.iter().map(|(a, b)| (idx(a), idx(b))).collect();
    let graph = Multigraph::new(tensors.len(), edges).expect("indices are in range");
    Macrograph {
        boundary_tensors: tensors,
        graph,
    }
}

/// Coordinates of `∂_β` over the graded-lex basis of occurring words, checked
/// against the factorization through the macrograph.
pub fn tensor_incidence(h: &TensorHypergraph) -> Result<(Vec<Word>, Matrix)> {
    let mg = macrograph(h);
    let l = mg.labeling(h.field);
    let words = l.words().expect("labeling built from tensors").to_vec();
    let diffs = h.differences();
    let cols: Vec<Vec<Scalar>> = diffs.iter().map(|d| d.coordinates(&words)).collect();
    let direct = Matrix::from_columns(h.field, words.len(), &cols)?;
    let factored = l.evaluation().mul(&incidence_matrix(&mg.graph, h.field))?;
    if direct != factored || direct != labeled_incidence(&l) {
        return Err(Error::inconsistency("tensor incidence does not factor through the macrograph"));
    }
    Ok((words, direct))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnalysisReport {
    pub q1: usize,
    pub v_macro: usize,
    pub c_macro: usize,
    pub delta: usize,
    pub dim_z: usize,
    pub dim_z_top: usize,
    pub construction_profile: BTreeMap<Construction, usize>,
    pub standard: bool,
}

pub fn analyze(h: &TensorHypergraph) -> Result<AnalysisReport> {
    let mg = macrograph(h);
    let l = mg.labeling(h.field);
    let (_, del) = tensor_incidence(h)?;
    let d = defect(&l)?;
    let (_, c_macro) = weak_components(&mg.graph);
    let q1 = h.edge_count();
    let v_macro = mg.boundary_tensors.len();
    let dim_z = kernel_basis(&del).dim();
    let dim_z_top = kernel_basis(&incidence_matrix(&mg.graph, h.field)).dim();
    if dim_z + v_macro != q1 + c_macro + d.delta {
        return Err(Error::inconsistency(format!(
            "dim Z = {dim_z} but |Q1| − |V| + c + δ = {q1} − {v_macro} + {c_macro} + {}",
            d.delta
        )));
    }
    if dim_z != dim_z_top + d.delta {
        return Err(Error::inconsistency("dim Z differs from dim Z_top + δ"));
    }
    Ok(AnalysisReport {
        q1,
        v_macro,
        c_macro,
        delta: d.delta,
        dim_z,
        dim_z_top,
        construction_profile: h.construction_profile(),
        standard: h.is_standard(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    /// `Ker(B_macro)` in edge coordinates.
    pub z_top: Subspace,
    /// `Im(B_macro) ∩ Ker(φ̂)` in macrograph vertex coordinates.
    pub z_alg: Subspace,
    pub z: Subspace,
    pub basis: ExtendedBasis,
}

pub fn cycle_decomposition(h: &TensorHypergraph) -> Result<CycleDecomposition> {
    let mg = macrograph(h);
    let l = mg.labeling(h.field);
    let (_, del) = tensor_incidence(h)?;
    let b = incidence_matrix(&mg.graph, h.field);
    let z = kernel_basis(&del);
    let z_top = kernel_basis(&b);
    let z_alg = defect(&l)?.z_alg;
    let basis = extended_kernel_basis(&l)?;
    if Subspace::span(h.field, h.edge_count(), &basis.vectors())? != z {
        return Err(Error::inconsistency("extended basis does not span the cycle space"));
    }
    if !z_top.is_subspace_of(&z)? {
        return Err(Error::inconsistency("topological cycles outside the cycle space"));
    }
    let images: Vec<Vec<Scalar>> = basis.lifted.iter().map(|v| b.mul_vec(v)).collect::<Result<_>>()?;
    if images != z_alg.vectors() {
        return Err(Error::inconsistency("lifts do not map onto the algebraic cycle basis"));
    }
    Ok(CycleDecomposition { z_top, z_alg, z, basis })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingAudit {
    Vanishes,
    NotStandard,
    Violation { reason: String, witness: Vec<Scalar> },
}

/// For single-construction inputs, checks that the nonzero boundary tensors
/// have pairwise disjoint supports and that the defect vanishes.
pub fn vanishing_audit(h: &TensorHypergraph) -> Result<VanishingAudit> {
    if !h.is_standard() {
        return Ok(VanishingAudit::NotStandard);
    }
    let mg = macrograph(h);
    let field = h.field;
    let nonzero: Vec<usize> = (0..mg.boundary_tensors.len())
        .filter(|&i| !mg.boundary_tensors[i].is_zero())
        .collect();
    for (k, &i) in nonzero.iter().enumerate() {
        for &j in &nonzero[k + 1..] {
            let (s, t) = (&mg.boundary_tensors[i], &mg.boundary_tensors[j]);
            if s.support().any(|w| !t.coeff(w).is_zero()) {
                let mut witness = vec![field.zero(); mg.boundary_tensors.len()];
                witness[i] = field.one();
                witness[j] = field.one();
                return Ok(VanishingAudit::Violation {
                    reason: format!("boundary tensors {i} and {j} share a support word"),
                    witness,
                });
            }
        }
    }
    let d = defect(&mg.labeling(field))?;
    if let Some(r) = d.z_alg.vectors().into_iter().next() {
        return Ok(VanishingAudit::Violation {
            reason: format!("defect {} on a standard instance", d.delta),
            witness: r,
        });
    }
    Ok(VanishingAudit::Vanishes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDefect {
    /// Coefficients `α_i` with `Σ α_i (w_i − w_0) = 0`, one per edge.
    pub alpha: Vec<Scalar>,
    /// The edge vector `Σ α_i 1_{e_i}`, a cycle with nonzero macrograph image.
    pub xi: Vec<Scalar>,
}

/// Detects a star-shaped positive defect: every edge has source `w_0` and the
/// targets are distinct.
pub fn star_defect(h: &TensorHypergraph) -> Result<Option<StarDefect>> {
    let field = h.field;
    let Some((w0, _)) = h.boundary.first() else {
        return Err(Error::NotStarShaped("no edges".into()));
    };
    if h.boundary.iter().any(|(a, _)| a != w0) {
        return Err(Error::NotStarShaped("edges do not share a source tensor".into()));
    }
    let mut targets: Vec<&TensorElem> = h.boundary.iter().map(|(_, b)| b).collect();
    targets.push(w0);
    targets.sort();
    if targets.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::NotStarShaped("targets are not distinct".into()));
    }
    let (_, del) = tensor_incidence(h)?;
    let kernel = kernel_basis(&del);
    let Some(alpha) = kernel.vectors().into_iter().next() else {
        return Ok(None);
    };
    let mg = macrograph(h);
    let b = incidence_matrix(&mg.graph, field);
    if del.mul_vec(&alpha)?.iter().any(|x| !x.is_zero()) || b.mul_vec(&alpha)?.iter().all(Scalar::is_zero) {
        return Err(Error::inconsistency("star relation is not an algebraic cycle"));
    }
    Ok(Some(StarDefect {
        xi: alpha.clone(),
        alpha,
    }))
}

/// Whether `δ ≥ 1` forces `|Q_1| ≥ 2` and `|V_macro| ≥ 3`.
pub fn minimality_check(h: &TensorHypergraph) -> Result<bool> {
    let r = analyze(h)?;
    Ok(r.delta == 0 || (r.q1 >= 2 && r.v_macro >= 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::inner_product;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);

    fn vec_of(field: FieldSpec, terms: &[(&[usize], i64)]) -> TensorElem {
        TensorElem::from_terms(field, terms.iter().map(|(l, c)| (Word::new(l.to_vec()), field.from_i64(*c)))).unwrap()
    }

    fn ints(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| field.from_i64(x)).collect()
    }

    fn triangle(field: FieldSpec) -> TensorHypergraph {
        TensorHypergraph::from_specs(
            field,
            3,
            vec![EdgeSpec::SymQuad(vec![0, 1]), EdgeSpec::SymQuad(vec![1, 2]), EdgeSpec::SymQuad(vec![2, 0])],
        )
        .unwrap()
    }

    fn alg_cycle(field: FieldSpec) -> TensorHypergraph {
        let a = vec_of(field, &[(&[0], 1)]);
        TensorHypergraph::from_specs(
            field,
            2,
            vec![
                EdgeSpec::Raw {
                    source: a.clone(),
                    target: vec_of(field, &[(&[0], 1), (&[1], 1)]),
                },
                EdgeSpec::Raw {
                    source: a,
                    target: vec_of(field, &[(&[0], 1), (&[1], -1)]),
                },
            ],
        )
        .unwrap()
    }

    /// Edges d → c, a+c, b+c, a+b+c over the vertices a, b, c, d.
    fn oh_defect(field: FieldSpec) -> TensorHypergraph {
        let d = vec_of(field, &[(&[3], 1)]);
        let targets: [&[usize]; 4] = [&[2], &[0, 2], &[1, 2], &[0, 1, 2]];
        let specs = targets
            .iter()
            .map(|t| EdgeSpec::Raw {
                source: d.clone(),
                target: TensorElem::from_terms(field, t.iter().map(|&v| (Word::new(vec![v]), field.one()))).unwrap(),
            })
            .collect();
        TensorHypergraph::from_specs(field, 4, specs).unwrap()
    }

    fn loops(field: FieldSpec, k: usize) -> TensorHypergraph {
        TensorHypergraph::from_specs(field, 1, vec![EdgeSpec::SymQuad(vec![0]); k]).unwrap()
    }

    fn tuple(r: &AnalysisReport) -> (usize, usize, usize, usize, usize) {
        (r.q1, r.v_macro, r.c_macro, r.delta, r.dim_z)
    }

    #[test]
    fn construction_boundaries() {
        let h = TensorHypergraph::from_specs(
            Q,
            2,
            vec![EdgeSpec::SymQuad(vec![0, 1]), EdgeSpec::Directed { source: 0, target: 1 }],
        )
        .unwrap();
        assert_eq!(h.boundary()[0], (vec_of(Q, &[(&[0, 1], 1), (&[1, 0], 1)]), TensorElem::unit(Q)));
        assert_eq!(h.boundary()[1], (vec_of(Q, &[(&[0], 1)]), vec_of(Q, &[(&[1], 1)])));
        assert_eq!(loops(Q, 1).boundary()[0].0, vec_of(Q, &[(&[0, 0], 2)]));
        assert_eq!(loops(F2, 1).boundary()[0], (TensorElem::zero(F2), TensorElem::unit(F2)));
        let f3 = FieldSpec::Prime(3);
        let m = TensorHypergraph::from_specs(f3, 2, vec![EdgeSpec::MultisetDirected { source: vec![0, 0, 0], target: vec![1] }])
            .unwrap();
        assert!(m.boundary()[0].0.is_zero());
    }

    #[test]
    fn build_errors() {
        let bad = TensorHypergraph::from_specs(Q, 2, vec![EdgeSpec::Directed { source: 0, target: 5 }]);
        assert_eq!(bad, Err(Error::UnknownVertex("5".into())));
        let empty = TensorHypergraph::from_specs(Q, 2, vec![EdgeSpec::OrderedUndirected(vec![])]);
        assert_eq!(empty, Err(Error::EmptyStructuralData("e0".into())));
        let empty = TensorHypergraph::from_specs(Q, 2, vec![EdgeSpec::MultisetDirected { source: vec![0], target: vec![] }]);
        assert!(matches!(empty, Err(Error::EmptyStructuralData(_))));
        let wide = TensorHypergraph::from_specs(Q, 3, vec![EdgeSpec::SymQuad(vec![0, 1, 2])]);
        assert!(matches!(wide, Err(Error::InvalidEdge(_))));
    }

    #[test]
    fn macrograph_examples() {
        let mg = macrograph(&triangle(Q));
        assert_eq!(mg.boundary_tensors.len(), 4);
        assert_eq!(mg.boundary_tensors[0], TensorElem::unit(Q));
        assert_eq!(weak_components(&mg.graph).1, 1);
        assert!(mg.graph.edges().iter().all(|&(_, t)| t == 0));

        let mg = macrograph(&alg_cycle(Q));
        let a = vec_of(Q, &[(&[0], 1)]);
        let apb = vec_of(Q, &[(&[0], 1), (&[1], 1)]);
        let amb = vec_of(Q, &[(&[0], 1), (&[1], -1)]);
        assert_eq!(mg.boundary_tensors, vec![a, amb, apb]);
        assert_eq!(mg.graph.edges(), &[(0, 2), (0, 1)]);

        let mg = macrograph(&loops(F2, 3));
        assert_eq!(mg.boundary_tensors, vec![TensorElem::zero(F2), TensorElem::unit(F2)]);
    }

    #[test]
    fn tensor_incidence_examples() {
        let path = TensorHypergraph::from_specs(
            Q,
            3,
            vec![EdgeSpec::Directed { source: 0, target: 1 }, EdgeSpec::Directed { source: 1, target: 2 }],
        )
        .unwrap();
        let (words, m) = tensor_incidence(&path).unwrap();
        assert_eq!(words, vec![Word::new(vec![0]), Word::new(vec![1]), Word::new(vec![2])]);
        assert_eq!(m, Matrix::from_i64(Q, &[vec![-1, 0], vec![1, -1], vec![0, 1]]));

        let same = TensorHypergraph::from_specs(Q, 1, vec![EdgeSpec::Directed { source: 0, target: 0 }]).unwrap();
        assert!(tensor_incidence(&same).unwrap().1.is_zero());

        let (_, m) = tensor_incidence(&triangle(Q)).unwrap();
        assert_eq!((m.cols(), m.rank()), (3, 3));
    }

    #[test]
    fn analysis_examples() {
        assert_eq!(tuple(&analyze(&triangle(Q)).unwrap()), (3, 4, 1, 0, 0));
        let r = analyze(&alg_cycle(Q)).unwrap();
        assert_eq!((r.delta, r.dim_z), (1, 1));
        let r = analyze(&loops(F2, 3)).unwrap();
        assert_eq!((r.v_macro, r.delta, r.dim_z), (2, 0, 2));
        let r = analyze(&oh_defect(Q)).unwrap();
        assert_eq!(tuple(&r), (4, 5, 1, 1, 1));
        assert!(!r.standard);
        let empty = analyze(&TensorHypergraph::from_specs(Q, 2, vec![]).unwrap()).unwrap();
        assert_eq!(tuple(&empty), (0, 0, 0, 0, 0));
        assert!(!empty.standard);
    }

    #[test]
    fn cycle_spaces() {
        let d = cycle_decomposition(&alg_cycle(Q)).unwrap();
        assert_eq!(d.z, Subspace::span(Q, 2, &[ints(Q, &[1, 1])]).unwrap());
        assert_eq!(d.z_top.dim(), 0);

        let d = cycle_decomposition(&oh_defect(Q)).unwrap();
        assert_eq!(d.z_top.dim(), 0);
        assert_eq!(d.z_alg.dim(), 1);
        assert_eq!(d.z, Subspace::span(Q, 4, &[ints(Q, &[1, -1, -1, 1])]).unwrap());
        assert_eq!(d.basis.lifted, vec![ints(Q, &[1, -1, -1, 1])]);

        let d = cycle_decomposition(&loops(F2, 3)).unwrap();
        let expected = [ints(F2, &[1, -1, 0]), ints(F2, &[1, 0, -1])];
        assert_eq!(d.z, Subspace::span(F2, 3, &expected).unwrap());
        assert_eq!(d.z_alg.dim(), 0);

        let parallel = TensorHypergraph::from_specs(Q, 2, vec![EdgeSpec::Directed { source: 0, target: 1 }; 3]).unwrap();
        let d = cycle_decomposition(&parallel).unwrap();
        let expected = [ints(Q, &[1, -1, 0]), ints(Q, &[1, 0, -1])];
        assert_eq!(d.z_top, Subspace::span(Q, 3, &expected).unwrap());
        assert!(d.basis.lifted.is_empty());
    }

    #[test]
    fn audit_examples() {
        assert_eq!(vanishing_audit(&alg_cycle(Q)).unwrap(), VanishingAudit::NotStandard);
        let mixed = TensorHypergraph::from_specs(
            Q,
            1,
            vec![EdgeSpec::OrderedUndirected(vec![0, 0]), EdgeSpec::SymQuad(vec![0])],
        )
        .unwrap();
        assert_eq!(vanishing_audit(&mixed).unwrap(), VanishingAudit::NotStandard);
        let f3 = FieldSpec::Prime(3);
        let h = TensorHypergraph::from_specs(
            f3,
            3,
            vec![
                EdgeSpec::MultisetUndirected(vec![0, 0, 0]),
                EdgeSpec::MultisetUndirected(vec![1, 1, 1]),
                EdgeSpec::MultisetUndirected(vec![0, 0, 1]),
                EdgeSpec::MultisetUndirected(vec![2]),
            ],
        )
        .unwrap();
        assert_eq!(vanishing_audit(&h).unwrap(), VanishingAudit::Vanishes);
        assert_eq!(analyze(&h).unwrap().dim_z_top, 1);
    }

    #[test]
    fn star_examples() {
        let s = star_defect(&alg_cycle(Q)).unwrap().unwrap();
        assert_eq!(s.alpha, ints(Q, &[1, 1]));
        let s = star_defect(&oh_defect(Q)).unwrap().unwrap();
        assert_eq!(s.alpha, ints(Q, &[1, -1, -1, 1]));
        let independent = TensorHypergraph::from_specs(
            Q,
            3,
            vec![EdgeSpec::Directed { source: 0, target: 1 }, EdgeSpec::Directed { source: 0, target: 2 }],
        )
        .unwrap();
        assert_eq!(star_defect(&independent).unwrap(), None);
        assert!(matches!(star_defect(&triangle(Q)), Err(Error::NotStarShaped(_))));
    }

    #[test]
    fn minimality_examples() {
        let single = TensorHypergraph::from_specs(Q, 2, vec![EdgeSpec::Directed { source: 0, target: 1 }]).unwrap();
        assert!(minimality_check(&single).unwrap());
        assert!(minimality_check(&loops(F2, 3)).unwrap());
        assert!(minimality_check(&alg_cycle(Q)).unwrap());
    }

    #[test]
    fn relabeling_preserves_the_report() {
        let h = oh_defect(Q);
        let g = h.relabeled(&[2, 0, 3, 1], &[3, 1, 0, 2]).unwrap();
        assert_eq!(analyze(&h).unwrap(), analyze(&g).unwrap());
        assert_eq!(g.vertex_names()[2], "v0");
    }

    #[test]
    fn alg_cycle_in_char_two() {
        let r = analyze(&alg_cycle(F2)).unwrap();
        assert_eq!((r.v_macro, r.delta), (2, 0));
        let raw = alg_cycle(Q).with_field(F2).unwrap();
        assert_eq!(analyze(&raw).unwrap(), r);
    }

    fn small_spec(n: usize) -> impl Strategy<Value = EdgeSpec> {
        let v = move || proptest::collection::vec(0..n, 1..4);
        prop_oneof![
            proptest::collection::vec(0..n, 1..3).prop_map(EdgeSpec::SymQuad),
            (0..n, 0..n).prop_map(|(source, target)| EdgeSpec::Directed { source, target }),
            v().prop_map(EdgeSpec::MultisetUndirected),
            v().prop_map(EdgeSpec::OrderedUndirected),
            (v(), v()).prop_map(|(source, target)| EdgeSpec::MultisetDirected { source, target }),
            (v(), v()).prop_map(|(source, target)| EdgeSpec::OrderedDirected { source, target }),
        ]
    }

    fn mixed_instance() -> impl Strategy<Value = (usize, Vec<EdgeSpec>)> {
        (1usize..5).prop_flat_map(|n| (Just(n), proptest::collection::vec(small_spec(n), 0..7)))
    }

    proptest! {
        #[test]
        fn dimension_and_rank_drop((n, specs) in mixed_instance(), fi in 0usize..3) {
            let field = [Q, F2, FieldSpec::Prime(3)][fi];
            let h = TensorHypergraph::from_specs(field, n, specs).unwrap();
            let r = analyze(&h).unwrap();
            let (_, del) = tensor_incidence(&h).unwrap();
            prop_assert_eq!(r.delta + del.rank(), r.v_macro - r.c_macro);
            let d = cycle_decomposition(&h).unwrap();
            prop_assert_eq!(d.z.dim(), r.dim_z);
            prop_assert!(minimality_check(&h).unwrap());
        }

        #[test]
        fn standard_instances_vanish(n in 1usize..5, tag in 0usize..6, picks in proptest::collection::vec(any::<u16>(), 0..7), fi in 0usize..3) {
            let field = [Q, F2, FieldSpec::Prime(3)][fi];
            let specs: Vec<EdgeSpec> = picks
                .iter()
                .map(|&p| {
                    let x = p as usize;
                    let a = x % n;
                    let b = (x / 7) % n;
                    let m = vec![a; 1 + x % 3].into_iter().chain(std::iter::once(b)).collect::<Vec<_>>();
                    match tag {
                        0 => EdgeSpec::SymQuad(if x.is_multiple_of(5) { vec![a] } else { vec![a, b] }),
                        1 => EdgeSpec::Directed { source: a, target: b },
                        2 => EdgeSpec::MultisetUndirected(m),
                        3 => EdgeSpec::OrderedUndirected(m),
                        4 => EdgeSpec::MultisetDirected { source: m, target: vec![b, b, b] },
                        _ => EdgeSpec::OrderedDirected { source: m, target: vec![b, a] },
                    }
                })
                .collect();
            let empty = specs.is_empty();
            let h = TensorHypergraph::from_specs(field, n, specs).unwrap();
            let audit = vanishing_audit(&h).unwrap();
            if empty {
                prop_assert_eq!(audit, VanishingAudit::NotStandard);
            } else {
                prop_assert_eq!(audit, VanishingAudit::Vanishes);
            }
            prop_assert_eq!(analyze(&h).unwrap().delta, 0);
        }

        #[test]
        fn gram_entries_are_inner_products((n, specs) in mixed_instance()) {
            let h = TensorHypergraph::from_specs(Q, n, specs).unwrap();
            let (_, del) = tensor_incidence(&h).unwrap();
            let diffs = h.differences();
            let l = del.transpose().mul(&del).unwrap();
            for i in 0..diffs.len() {
                for j in 0..diffs.len() {
                    prop_assert_eq!(l.get(i, j), &inner_product(&diffs[i], &diffs[j]).unwrap());
                }
            }
        }
    }
}
