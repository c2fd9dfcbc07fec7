//! Edge Gram operators `L_β = ∂_β* ∂_β` over the rationals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{dot, kernel_basis, psd_certificate, rational_spectrum, solve, Matrix, PsdCertificate, Spectrum, Subspace};
use crate::field::{FieldSpec, Scalar};
use crate::hypergraph::{analyze, cycle_decomposition, Construction, EdgeSpec, TensorHypergraph};
use crate::multigraph::{incidence_matrix, Multigraph};
use crate::observe::{graded_quotients, max_degree};
use crate::tensor::{inner_product, TensorElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Matrix,
    /// `Some(k)` for `L_{≤k}`.
    pub truncation_level: Option<usize>,
}

fn require_rationals(h: &TensorHypergraph) -> Result<()> {
    if h.field().is_rationals() {
        Ok(())
    } else {
        Err(Error::FieldMismatch(format!("Gram operators need Q, got {}", h.field())))
    }
}

fn gram_of(diffs: &[TensorElem]) -> Result<Matrix> {
    let m = diffs.len();
    let mut g = Matrix::zeros(FieldSpec::Rationals, m, m);
    for i in 0..m {
        for j in i..m {
            let x = inner_product(&diffs[i], &diffs[j])?;
            g.set(j, i, x.clone());
            g.set(i, j, x);
        }
    }
    Ok(g)
}

/// `(L_β)_{e,e'} = ⟨B_e − A_e, B_{e'} − A_{e'}⟩`, certified PSD.
pub fn gram(h: &TensorHypergraph) -> Result<GramMatrix> {
    require_rationals(h)?;
    let entries = gram_of(&h.differences())?;
    if !psd_certificate(&entries)?.is_psd() {
        return Err(Error::inconsistency("Gram matrix is not positive semidefinite"));
    }
    Ok(GramMatrix {
        entries,
        truncation_level: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramRankReport {
    pub rank: usize,
    pub kernel: Subspace,
}

/// Rank and kernel of `L_β`, checked against the cycle space and the defect.
pub fn gram_rank_report(h: &TensorHypergraph) -> Result<GramRankReport> {
    let l = gram(h)?.entries;
    let rank = l.rank();
    let kernel = kernel_basis(&l);
    let r = analyze(h)?;
    if kernel != cycle_decomposition(h)?.z {
        return Err(Error::inconsistency("Gram kernel differs from the cycle space"));
    }
    if rank + r.c_macro + r.delta != r.v_macro {
        return Err(Error::inconsistency(format!(
            "Gram rank {rank} but |V| − c − δ = {} − {} − {}",
            r.v_macro, r.c_macro, r.delta
        )));
    }
    Ok(GramRankReport { rank, kernel })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedGram {
    pub k: usize,
    /// `L_{≤k}`.
    pub cumulative: Matrix,
    /// `L^{(k)}`.
    pub component: Matrix,
}

/// `L_{≤k}` and `L^{(k)}` for `k = 0..=K`.
pub fn truncated_grams(h: &TensorHypergraph) -> Result<Vec<TruncatedGram>> {
    require_rationals(h)?;
    let diffs = h.differences();
    let m = diffs.len();
    let mut out: Vec<TruncatedGram> = Vec::new();
    let mut running = Matrix::zeros(FieldSpec::Rationals, m, m);
    for k in 0..=max_degree(h) {
        let component = gram_of(&diffs.iter().map(|d| d.degree_component(k)).collect::<Vec<_>>())?;
        let cumulative = gram_of(&diffs.iter().map(|d| d.truncate_le(k)).collect::<Vec<_>>())?;
        running = running.add(&component)?;
        if running != cumulative {
            return Err(Error::inconsistency(format!("truncated Gram sum fails at degree {k}")));
        }
        out.push(TruncatedGram { k, cumulative, component });
    }
    if out.last().map(|t| &t.cumulative) != Some(&gram(h)?.entries) {
        return Err(Error::inconsistency("top truncation differs from the Gram matrix"));
    }
    Ok(out)
}

/// PSD certificates for `L_{≤k} − L_{≤k−1}`, `k = 0..=K`, with `L_{≤−1} = 0`.
pub fn loewner_chain_certify(h: &TensorHypergraph) -> Result<Vec<(usize, PsdCertificate)>> {
    let levels = truncated_grams(h)?;
    let m = h.edge_count();
    let mut prev = Matrix::zeros(FieldSpec::Rationals, m, m);
    let mut out = Vec::with_capacity(levels.len());
    for t in levels {
        let cert = psd_certificate(&t.cumulative.sub(&prev)?)?;
        if !cert.is_psd() {
            return Err(Error::inconsistency(format!("Loewner step at degree {} is not PSD", t.k)));
        }
        out.push((t.k, cert));
        prev = t.cumulative;
    }
    Ok(out)
}

/// `rank L_{≤k} − rank L_{≤k−1}` for `k = 0..=K`, with `L_{≤−1} = 0`.
pub fn rank_increments(h: &TensorHypergraph) -> Result<Vec<usize>> {
    let mut prev = 0;
    truncated_grams(h)?
        .iter()
        .map(|t| {
            let r = t.cumulative.rank();
            let inc = r
                .checked_sub(prev)
                .ok_or_else(|| Error::inconsistency("truncated Gram ranks decrease"))?;
            prev = r;
            Ok(inc)
        })
        .collect()
}

/// Whether the rank increments equal the defect drops of the filtration.
pub fn rank_increment_check(h: &TensorHypergraph) -> Result<bool> {
    Ok(rank_increments(h)? == graded_quotients(h)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    /// Loopless simple undirected graph: `L_β = 2I + J`.
    SimpleGraph,
    /// Ordinary directed graph: `L_β = BᵀB`.
    DirectedGraph,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSpectrum {
    pub source: SpectrumSource,
    pub spectrum: Spectrum,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn loopless_simple(h: &TensorHypergraph) -> bool {
    let mut seen = BTreeSet::new();
    h.specs().iter().all(|s| match s {
        EdgeSpec::SymQuad(m) => match m.as_slice() {
            [u, v] if u != v => seen.insert((*u.min(v), *u.max(v))),
            _ => false,
        },
        _ => false,
    })
}

/// Spectrum of `L_β`, using the closed forms where the structure allows.
pub fn structured_spectrum(h: &TensorHypergraph) -> Result<StructuredSpectrum> {
    let l = gram(h)?.entries;
    let m = h.edge_count();
    let single = h.single_construction();
    if single == Some(Construction::SymQuad) && loopless_simple(h) {
        let expected = Matrix::identity(FieldSpec::Rationals, m)
            .scale(&FieldSpec::Rationals.from_i64(2))
            .add(&Matrix::from_i64(FieldSpec::Rationals, &vec![vec![1; m]; m]))?;
        if l != expected {
            return Err(Error::inconsistency("loopless simple graph Gram is not 2I + J"));
        }
        let mut eigs = Vec::new();
        if m > 1 {
            eigs.push((q(2), m - 1));
        }
        if m > 0 {
            eigs.push((q(m as i64 + 2), 1));
        }
        return Ok(StructuredSpectrum {
            source: SpectrumSource::SimpleGraph,
            spectrum: Spectrum::Full(eigs),
        });
    }
    let source = if single == Some(Construction::Directed) {
        let edges = h
            .specs()
            .iter()
            .map(|s| match s {
                EdgeSpec::Directed { source, target } => (*source, *target),
                _ => unreachable!("single construction"),
            })
            .collect();
        let b = incidence_matrix(&Multigraph::new(h.vertex_count(), edges)?, FieldSpec::Rationals);
        if l != b.transpose().mul(&b)? {
            return Err(Error::inconsistency("directed graph Gram is not BᵀB"));
        }
        SpectrumSource::DirectedGraph
    } else {
        SpectrumSource::General
    };
    Ok(StructuredSpectrum {
        source,
        spectrum: rational_spectrum(&l)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsCheck {
    Holds {
        energy: BigRational,
        distance: BigRational,
    },
    Fails {
        energy: BigRational,
        distance: BigRational,
    },
    Skipped,
}

/// Checks `λ_min⁺ ‖ξ − P_Z ξ‖² ≤ ‖∂_β ξ‖² ≤ λ_max ‖ξ − P_Z ξ‖²`.
pub fn spectral_bounds_check(h: &TensorHypergraph, xi: &[Scalar]) -> Result<BoundsCheck> {
    let l = gram(h)?.entries;
    if xi.len() != l.cols() {
        return Err(Error::DimensionMismatch(format!("edge vector of length {}", xi.len())));
    }
    let Some((min_pos, max)) = structured_spectrum(h)?.spectrum.extremes() else {
        return Ok(BoundsCheck::Skipped);
    };
    let energy = rational(&dot(xi, &l.mul_vec(xi)?))?;
    let residual = orthogonal_residual(&kernel_basis(&l), xi)?;
    let distance = rational(&dot(&residual, &residual))?;
    let lower = min_pos.map_or(BigRational::zero(), |x| x * &distance);
    let upper = max.map_or(BigRational::zero(), |x| x * &distance);
    let holds = lower <= energy && energy <= upper;
    Ok(if holds {
        BoundsCheck::Holds { energy, distance }
    } else {
        BoundsCheck::Fails { energy, distance }
    })
}

fn rational(x: &Scalar) -> Result<BigRational> {
    x.as_rational()
        .cloned()
        .ok_or_else(|| Error::FieldMismatch("expected a rational".into()))
}

/// `ξ − P_Z ξ`, with `P_Z` from the normal equations on a basis of `Z`.
pub fn orthogonal_residual(z: &Subspace, xi: &[Scalar]) -> Result<Vec<Scalar>> {
    let basis = z.basis();
    if basis.rows() == 0 {
        return Ok(xi.to_vec());
    }
    let normal = basis.mul(&basis.transpose())?;
    let rhs = basis.mul_vec(xi)?;
    let coeffs = solve(&normal, &rhs)?.ok_or_else(|| Error::inconsistency("singular normal equations"))?;
    let projection = basis.transpose().mul_vec(&coeffs)?;
    Ok(xi.iter().zip(&projection).map(|(a, b)| a - b).collect())
}

/// `∏ (λ − μ)^{k}` over a full spectrum, as ascending coefficients.
pub fn spectrum_polynomial(eigs: &[(BigRational, usize)]) -> Vec<BigRational> {
    let mut poly = vec![BigRational::one()];
    for (mu, k) in eigs {
        for _ in 0..*k {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * mu;
            }
            poly = next;
        }
    }
    poly
}
