//! Deterministic JSON reports.

use std::collections::BTreeMap;

use hypercycle::exactla::{Matrix, Spectrum, Subspace};
use hypercycle::{AnalysisReport, Scalar, TensorHypergraph};
use num_rational::BigRational;
use serde::Serialize;

use crate::instance::InstanceFile;

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for Tool {
    fn default() -> Self {
        Tool {
            name: "hypercycle",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub field: String,
    pub vertices: usize,
    pub edges: usize,
    pub edge_ids: Vec<String>,
}

impl InstanceSummary {
    pub fn of(h: &TensorHypergraph) -> Self {
        InstanceSummary {
            field: h.field().to_string(),
            vertices: h.vertex_count(),
            edges: h.edge_count(),
            edge_ids: h.edge_ids().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisJson {
    pub q1: usize,
    pub v_macro: usize,
    pub c_macro: usize,
    pub delta: usize,
    pub dim_z: usize,
    pub dim_z_top: usize,
    pub construction_profile: BTreeMap<String, usize>,
    pub standard: bool,
}

impl From<&AnalysisReport> for AnalysisJson {
    fn from(r: &AnalysisReport) -> Self {
        AnalysisJson {
            q1: r.q1,
            v_macro: r.v_macro,
            c_macro: r.c_macro,
            delta: r.delta,
            dim_z: r.dim_z,
            dim_z_top: r.dim_z_top,
            construction_profile: r
                .construction_profile
                .iter()
                .map(|(c, n)| (c.name().to_string(), *n))
                .collect(),
            standard: r.standard,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisJson {
    pub topological: Vec<Vec<String>>,
    pub lifted: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Eigenvalue {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumJson {
    Full { eigenvalues: Vec<Eigenvalue> },
    Partial { rank: usize, psd: bool },
}

impl From<&Spectrum> for SpectrumJson {
    fn from(s: &Spectrum) -> Self {
        match s {
            Spectrum::Full(eigs) => SpectrumJson::Full {
                eigenvalues: eigs
                    .iter()
                    .map(|(v, k)| Eigenvalue {
                        value: v.to_string(),
                        multiplicity: *k,
                    })
                    .collect(),
            },
            Spectrum::Partial { rank, psd } => SpectrumJson::Partial { rank: *rank, psd: *psd },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GramJson {
    pub truncation: Option<usize>,
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
    pub kernel_dim: usize,
    pub spectrum_source: String,
    pub spectrum: SpectrumJson,
    /// Ascending coefficients.
    pub char_poly: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationRow {
    pub k: usize,
    pub dim_z: usize,
    pub delta: usize,
    pub defect_drop: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_increment: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoveryJson {
    pub matches: bool,
    pub kernels_equal: bool,
    pub mismatched_entries: Vec<(usize, usize)>,
    pub kernel: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImportJson {
    pub converted: InstanceFile,
    pub kernel_match: bool,
    pub oriented_kernel_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyCase {
    pub index: usize,
    pub source: String,
    pub field: String,
    pub vertices: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisJson>,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<VerifyCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<InstanceFile>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: Tool,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<FiltrationRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovery: Option<RecoveryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub import: Option<ImportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyJson>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            tool: Tool::default(),
            command,
            instance: None,
            analysis: None,
            basis: None,
            gram: None,
            filtration: None,
            recovery: None,
            import: None,
            verify: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

pub fn vectors(vs: &[Vec<Scalar>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| vector(v)).collect()
}

pub fn matrix(m: &Matrix) -> Vec<Vec<String>> {
    vectors(&m.row_vectors())
}

pub fn subspace(s: &Subspace) -> Vec<Vec<String>> {
    vectors(&s.vectors())
}

pub fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(BigRational::to_string).collect()
}
