//! Oriented hypergraphs with `{−1, 0, +1}` incidence matrices.

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, Matrix};
use crate::field::{FieldSpec, Scalar};
use crate::hypergraph::{analyze, cycle_decomposition, AnalysisReport, EdgeSpec, TensorHypergraph};
use crate::tensor::{TensorElem, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedHypergraph {
    vertex_names: Vec<String>,
    edge_ids: Vec<String>,
    /// Row per vertex, column per edge.
    incidence: Vec<Vec<i8>>,
}

impl OrientedHypergraph {
    pub fn new(vertex_names: Vec<String>, edge_ids: Vec<String>, incidence: Vec<Vec<i8>>) -> Result<Self> {
        if incidence.len() != vertex_names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} incidence rows for {} vertices",
                incidence.len(),
                vertex_names.len()
            )));
        }
        for row in &incidence {
            if row.len() != edge_ids.len() {
                return Err(Error::DimensionMismatch(format!(
                    "incidence row of length {} for {} edges",
                    row.len(),
                    edge_ids.len()
                )));
            }
            if let Some(x) = row.iter().find(|x| !(-1..=1).contains(*x)) {
                return Err(Error::InvalidEdge(format!("incidence entry {x}")));
            }
        }
        Ok(OrientedHypergraph {
            vertex_names,
            edge_ids,
            incidence,
        })
    }

    /// Edges given by their `−1` and `+1` vertex sets.
    pub fn from_sides(vertex_names: Vec<String>, edges: Vec<(String, Vec<usize>, Vec<usize>)>) -> Result<Self> {
        let n = vertex_names.len();
        let mut incidence = vec![vec![0i8; edges.len()]; n];
        let mut ids = Vec::with_capacity(edges.len());
        for (e, (id, minus, plus)) in edges.into_iter().enumerate() {
            for (side, sign) in [(minus, -1i8), (plus, 1i8)] {
                for v in side {
                    if v >= n {
                        return Err(Error::UnknownVertex(v.to_string()));
                    }
                    if incidence[v][e] != 0 {
                        return Err(Error::InvalidEdge(format!("vertex {} listed twice in edge {id}", vertex_names[v])));
                    }
                    incidence[v][e] = sign;
                }
            }
            ids.push(id);
        }
        OrientedHypergraph::new(vertex_names, ids, incidence)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn entry(&self, v: usize, e: usize) -> i8 {
        self.incidence[v][e]
    }

    /// Vertices with the given sign in column `e`.
    pub fn side(&self, e: usize, sign: i8) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.incidence[v][e] == sign).collect()
    }

    pub fn incidence_matrix(&self, field: FieldSpec) -> Matrix {
        let rows: Vec<Vec<i64>> = self
            .incidence
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        if rows.is_empty() {
            return Matrix::zeros(field, 0, self.edge_count());
        }
        Matrix::from_i64(field, &rows)
    }
}

fn indicator(field: FieldSpec, vertices: &[usize]) -> TensorElem {
    TensorElem::from_terms(field, vertices.iter().map(|&v| (Word::new(vec![v]), field.one())))
        .expect("coefficients share the field")
}

/// Each edge becomes a raw edge `(Σ_{−1} v, Σ_{+1} v)`.
pub fn to_tensor_hg(o: &OrientedHypergraph, field: FieldSpec) -> Result<TensorHypergraph> {
    let edges = (0..o.edge_count())
        .map(|e| {
            (
                o.edge_ids[e].clone(),
                EdgeSpec::Raw {
                    source: indicator(field, &o.side(e, -1)),
                    target: indicator(field, &o.side(e, 1)),
                },
            )
        })
        .collect();
    TensorHypergraph::build(field, o.vertex_names.clone(), edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelComparison {
    Match { dim: usize },
    Mismatch { oriented: usize, tensor: usize },
}

/// Compares `Ker(B^oh)` with the cycle space of the tensor image.
pub fn kernel_equivalence(o: &OrientedHypergraph, field: FieldSpec) -> Result<KernelComparison> {
    let direct = kernel_basis(&o.incidence_matrix(field));
    let z = cycle_decomposition(&to_tensor_hg(o, field)?)?.z;
    Ok(if direct == z {
        KernelComparison::Match { dim: z.dim() }
    } else {
        KernelComparison::Mismatch {
            oriented: direct.dim(),
            tensor: z.dim(),
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarAnalysis {
    pub r: usize,
    pub delta: usize,
    /// `α` with `Σ α_i 1_{H_i} = 0` and `Σ α_i = 0`.
    pub affine_dependence: Option<Vec<Scalar>>,
}

/// For a star (one shared nonempty source set disjoint from distinct target
/// sets), relates the defect to affine dependence of the target indicators.
pub fn star_analysis(o: &OrientedHypergraph, field: FieldSpec) -> Result<Option<StarAnalysis>> {
    let r = o.edge_count();
    if r == 0 {
        return Ok(None);
    }
    let source = o.side(0, -1);
    if source.is_empty() || (0..r).any(|e| o.side(e, -1) != source) {
        return Ok(None);
    }
    let targets: Vec<Vec<usize>> = (0..r).map(|e| o.side(e, 1)).collect();
    let mut sorted = targets.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != r {
        return Ok(None);
    }
    let n = o.vertex_count();
    let mut augmented = Matrix::zeros(field, n + 1, r);
    for (i, t) in targets.iter().enumerate() {
        for &v in t {
            augmented.set(v, i, field.one());
        }
        augmented.set(n, i, field.one());
    }
    let affine_dependence = kernel_basis(&augmented).vectors().into_iter().next();
    let delta = analyze(&to_tensor_hg(o, field)?)?.delta;
    if (delta > 0) != affine_dependence.is_some() {
        return Err(Error::inconsistency("star defect disagrees with affine dependence"));
    }
    if r < 4 && delta > 0 {
        return Err(Error::inconsistency(format!("positive defect with only {r} star edges")));
    }
    Ok(Some(StarAnalysis {
        r,
        delta,
        affine_dependence,
    }))
}

/// The analysis of the tensor image, with `dim Z` checked against
/// `dim Ker(B^oh)`.
pub fn oh_dimension_report(o: &OrientedHypergraph, field: FieldSpec) -> Result<AnalysisReport> {
    let report = analyze(&to_tensor_hg(o, field)?)?;
    let direct = kernel_basis(&o.incidence_matrix(field)).dim();
    if direct != report.dim_z {
        return Err(Error::inconsistency(format!(
            "dim Ker(B^oh) = {direct} but dim Z = {}",
            report.dim_z
        )));
    }
    Ok(report)
}
