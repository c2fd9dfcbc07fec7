//! Observation maps on the tensor algebra and the projected cycle spaces they
//! induce.

use crate::error::{Error, Result};
use crate::exactla::{image_basis, kernel_basis, Matrix, Subspace};
use crate::field::{FieldSpec, Scalar};
use crate::hypergraph::{analyze, macrograph, tensor_incidence, Construction, EdgeSpec, TensorHypergraph};
use crate::multigraph::{defect, weak_components, Labeling};
use crate::tensor::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObservationMap {
    /// `π_{≤k}`: keep components of degree at most `k`.
    DegreeTruncation(usize),
    /// `π_k`: keep the degree-`k` component.
    DegreeComponent(usize),
    /// `1 ↦ 0` and `u_1 ⊗ ... ⊗ u_k ↦ u_1`.
    FirstLetter,
    /// Columns indexed by `words`; words not listed map to zero.
    CustomLinear { words: Vec<Word>, matrix: Matrix },
}

impl ObservationMap {
    /// The zero map into a zero-dimensional codomain.
    pub fn zero(field: FieldSpec) -> Self {
        ObservationMap::CustomLinear {
            words: Vec::new(),
            matrix: Matrix::zeros(field, 0, 0),
        }
    }

    /// Coordinate matrix of the map restricted to the span of `words`.
    pub fn matrix_on(&self, words: &[Word], vertex_count: usize, field: FieldSpec) -> Result<Matrix> {
        let select = |keep: &dyn Fn(&Word) -> bool| {
            let rows: Vec<usize> = (0..words.len()).filter(|&i| keep(&words[i])).collect();
            let mut m = Matrix::zeros(field, rows.len(), words.len());
            for (r, &i) in rows.iter().enumerate() {
                m.set(r, i, field.one());
            }
            m
        };
        Ok(match self {
            ObservationMap::DegreeTruncation(k) => select(&|w| w.degree() <= *k),
            ObservationMap::DegreeComponent(k) => select(&|w| w.degree() == *k),
            ObservationMap::FirstLetter => {
                let mut m = Matrix::zeros(field, vertex_count, words.len());
                for (i, w) in words.iter().enumerate() {
                    if let Some(&v) = w.letters().first() {
                        if v >= vertex_count {
                            return Err(Error::UnknownVertex(v.to_string()));
                        }
                        m.set(v, i, field.one());
                    }
                }
                m
            }
            ObservationMap::CustomLinear { words: domain, matrix } => {
                if matrix.cols() != domain.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "observation matrix has {} columns for {} words",
                        matrix.cols(),
                        domain.len()
                    )));
                }
                if matrix.field() != field {
                    return Err(Error::FieldMismatch(format!("{} vs {field}", matrix.field())));
                }
                let mut m = Matrix::zeros(field, matrix.rows(), words.len());
                for (i, w) in words.iter().enumerate() {
                    if let Some(j) = domain.iter().position(|d| d == w) {
                        for r in 0..matrix.rows() {
                            m.set(r, i, matrix.get(r, j).clone());
                        }
                    }
                }
                m
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedAnalysis {
    pub dim_z: usize,
    pub delta: usize,
    pub z: Subspace,
}

struct Observed {
    words: Vec<Word>,
    rho: Matrix,
    del: Matrix,
}

fn observed(h: &TensorHypergraph, rho: &ObservationMap) -> Result<Observed> {
    let (words, del) = tensor_incidence(h)?;
    let rho = rho.matrix_on(&words, h.vertex_count(), h.field())?;
    Ok(Observed { words, rho, del })
}

/// `Z_ρ(H) = Ker(ρ ∘ ∂_β)` and `δ_ρ(H) = dim(Im(B_macro) ∩ Ker(ρ ∘ φ̂))`.
pub fn projected_analysis(h: &TensorHypergraph, rho: &ObservationMap) -> Result<ProjectedAnalysis> {
    let field = h.field();
    let o = observed(h, rho)?;
    let mg = macrograph(h);
    let eval = mg.labeling(field).evaluation().clone();
    let l = Labeling::from_matrix(mg.graph.clone(), o.rho.mul(&eval)?)?;
    let delta = defect(&l)?.delta;
    let z = kernel_basis(&o.rho.mul(&o.del)?);
    let (_, c) = weak_components(&mg.graph);
    if z.dim() + mg.boundary_tensors.len() != h.edge_count() + c + delta {
        return Err(Error::inconsistency("observed dimension formula fails"));
    }
    debug_assert_eq!(o.words.len(), o.del.rows());
    Ok(ProjectedAnalysis {
        dim_z: z.dim(),
        delta,
        z,
    })
}

/// `dim(Im(∂_β) ∩ Ker(ρ))`, checked against `δ_ρ − δ` and `dim Z_ρ − dim Z`.
pub fn quotient_dim(h: &TensorHypergraph, rho: &ObservationMap) -> Result<usize> {
    let o = observed(h, rho)?;
    let q = image_basis(&o.del).intersect(&kernel_basis(&o.rho))?.dim();
    let p = projected_analysis(h, rho)?;
    let r = analyze(h)?;
    if p.delta < r.delta || q != p.delta - r.delta || q != p.dim_z - r.dim_z {
        return Err(Error::inconsistency(format!(
            "quotient dimension {q} disagrees with δ_ρ − δ = {} − {}",
            p.delta, r.delta
        )));
    }
    Ok(q)
}

/// Largest word length among the boundary tensors; zero when there is none.
pub fn max_degree(h: &TensorHypergraph) -> usize {
    h.boundary()
        .iter()
        .flat_map(|(a, b)| [a.max_degree(), b.max_degree()])
        .flatten()
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub k: usize,
    pub dim_z: usize,
    pub delta: usize,
    pub z: Subspace,
}

/// `(dim Z_{≤k}, δ_{≤k})` for `k = 0..=K`.
pub fn degree_filtration(h: &TensorHypergraph) -> Result<Vec<FiltrationLevel>> {
    let top = max_degree(h);
    let mut levels: Vec<FiltrationLevel> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let p = projected_analysis(h, &ObservationMap::DegreeTruncation(k))?;
        if let Some(prev) = levels.last() {
            if !p.z.is_subspace_of(&prev.z)? || p.delta > prev.delta {
                return Err(Error::inconsistency(format!("filtration is not monotone at degree {k}")));
            }
        }
        levels.push(FiltrationLevel {
            k,
            dim_z: p.dim_z,
            delta: p.delta,
            z: p.z,
        });
    }
    let r = analyze(h)?;
    let last = levels.last().expect("at least degree zero");
    if last.delta != r.delta || last.dim_z != r.dim_z {
        return Err(Error::inconsistency("top filtration level differs from the full cycle space"));
    }
    Ok(levels)
}

/// Defect drops `δ_{≤k−1} − δ_{≤k}` for `k = 0..=K`, with
/// `δ_{≤−1} = |V_macro| − c_macro`.
pub fn graded_quotients(h: &TensorHypergraph) -> Result<Vec<usize>> {
    let field = h.field();
    let levels = degree_filtration(h)?;
    let r = analyze(h)?;
    let (words, del) = tensor_incidence(h)?;
    let mut prev_delta = r.v_macro - r.c_macro;
    let mut prev_z = Subspace::full(field, h.edge_count());
    let mut drops = Vec::with_capacity(levels.len());
    for level in &levels {
        let pi = ObservationMap::DegreeComponent(level.k).matrix_on(&words, h.vertex_count(), field)?;
        let graded = pi.mul(&del)?;
        let images: Vec<Vec<Scalar>> = prev_z
            .vectors()
            .iter()
            .map(|v| graded.mul_vec(v))
            .collect::<Result<_>>()?;
        let realized = Subspace::span(field, graded.rows(), &images)?.dim();
        let drop = prev_delta - level.delta;
        if drop != realized {
            return Err(Error::inconsistency(format!(
                "defect drop {drop} at degree {} but graded image has dimension {realized}",
                level.k
            )));
        }
        drops.push(drop);
        prev_delta = level.delta;
        prev_z = level.z.clone();
    }
    if drops.iter().sum::<usize>() + r.delta != r.v_macro - r.c_macro {
        return Err(Error::inconsistency("defect drops do not sum to the rank"));
    }
    Ok(drops)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recovery {
    Match { kernel: Subspace },
    Mismatch { entries: Vec<(usize, usize)>, kernels_equal: bool },
}

/// The classical undirected incidence matrix: `1` at both ends of every
/// non-loop edge.
pub fn classical_incidence(h: &TensorHypergraph) -> Result<Matrix> {
    let field = h.field();
    let mut m = Matrix::zeros(field, h.vertex_count(), h.edge_count());
    for (e, s) in h.specs().iter().enumerate() {
        let EdgeSpec::SymQuad(members) = s else {
            return Err(Error::WrongConstruction(format!("edge {} is {}", h.edge_ids()[e], s.construction())));
        };
        if let [u, v] = members.as_slice() {
            if u != v {
                m.set(*u, e, field.one());
                m.set(*v, e, field.one());
            }
        }
    }
    Ok(m)
}

/// Compares the first-letter observation of `∂_β` with the classical
/// undirected incidence matrix in characteristic two.
pub fn classical_recovery(h: &TensorHypergraph) -> Result<Recovery> {
    let p = h.field().characteristic();
    if p != 2 {
        return Err(Error::WrongCharacteristic { expected: 2, found: p });
    }
    if h.specs().iter().any(|s| s.construction() != Construction::SymQuad) {
        return Err(Error::WrongConstruction("classical recovery needs symmetric quadratic edges".into()));
    }
    let classical = classical_incidence(h)?;
    let o = observed(h, &ObservationMap::FirstLetter)?;
    let observed = o.rho.mul(&o.del)?;
    let entries: Vec<(usize, usize)> = (0..classical.rows())
        .flat_map(|i| (0..classical.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| classical.get(i, j) != observed.get(i, j))
        .collect();
    let kernel = kernel_basis(&classical);
    let kernels_equal = kernel == kernel_basis(&observed);
    if entries.is_empty() && kernels_equal {
        Ok(Recovery::Match { kernel })
    } else {
        Ok(Recovery::Mismatch { entries, kernels_equal })
    }
}
