//! One function per subcommand.

use hypercycle::exactla::{char_poly, kernel_basis};
use hypercycle::gram::{gram, gram_rank_report, rank_increments, structured_spectrum, truncated_grams, SpectrumSource};
use hypercycle::hypergraph::{analyze, cycle_decomposition, vanishing_audit, VanishingAudit};
use hypercycle::observe::{classical_recovery, degree_filtration, graded_quotients, Recovery};
use hypercycle::ohg::kernel_equivalence;
use hypercycle::ohg::KernelComparison;
use hypercycle::{FieldSpec, TensorHypergraph};

use crate::instance::{InstanceFile, Loaded};
use crate::report::{
    matrix, rationals, subspace, vectors, AnalysisJson, BasisJson, FiltrationRow, GramJson, ImportJson, InstanceSummary,
    RecoveryJson, Report, SpectrumJson,
};
use crate::CliError;

fn base(command: &'static str, h: &TensorHypergraph) -> Result<Report, CliError> {
    let r = analyze(h)?;
    if let VanishingAudit::Violation { reason, .. } = vanishing_audit(h)? {
        return Err(CliError::Inconsistency(reason));
    }
    let mut report = Report::new(command);
    report.instance = Some(InstanceSummary::of(h));
    report.analysis = Some(AnalysisJson::from(&r));
    Ok(report)
}

pub fn analyze_cmd(l: &Loaded) -> Result<Report, CliError> {
    base("analyze", &l.hypergraph)
}

pub fn basis_cmd(l: &Loaded) -> Result<Report, CliError> {
    let mut report = base("basis", &l.hypergraph)?;
    let d = cycle_decomposition(&l.hypergraph)?;
    report.basis = Some(BasisJson {
        topological: vectors(&d.basis.topological),
        lifted: vectors(&d.basis.lifted),
    });
    Ok(report)
}

pub fn gram_cmd(l: &Loaded, truncate: Option<usize>) -> Result<Report, CliError> {
    let h = &l.hypergraph;
    if !h.field().is_rationals() {
        return Err(CliError::Input(format!("gram needs field Q, got {}", h.field())));
    }
    let mut report = base("gram", h)?;
    let (entries, source, spectrum) = match truncate {
        None => {
            gram_rank_report(h)?;
            let s = structured_spectrum(h)?;
            let source = match s.source {
                SpectrumSource::SimpleGraph => "simple_graph",
                SpectrumSource::DirectedGraph => "directed_graph",
                SpectrumSource::General => "general",
            };
            (gram(h)?.entries, source, s.spectrum)
        }
        Some(k) => {
            let levels = truncated_grams(h)?;
            let entries = match levels.get(k) {
                Some(t) => t.cumulative.clone(),
                None => gram(h)?.entries,
            };
            let s = hypercycle::exactla::rational_spectrum(&entries)?;
            (entries, "general", s)
        }
    };
    report.gram = Some(GramJson {
        truncation: truncate,
        rank: entries.rank(),
        kernel_dim: kernel_basis(&entries).dim(),
        matrix: matrix(&entries),
        spectrum_source: source.into(),
        spectrum: SpectrumJson::from(&spectrum),
        char_poly: rationals(&char_poly(&entries)?),
    });
    Ok(report)
}

pub fn filtrate_cmd(l: &Loaded) -> Result<Report, CliError> {
    let h = &l.hypergraph;
    let mut report = base("filtrate", h)?;
    let levels = degree_filtration(h)?;
    let drops = graded_quotients(h)?;
    let increments = if h.field().is_rationals() {
        let inc = rank_increments(h)?;
        if inc != drops {
            return Err(CliError::Inconsistency("rank increments differ from defect drops".into()));
        }
        Some(inc)
    } else {
        None
    };
    report.filtration = Some(
        levels
            .iter()
            .zip(&drops)
            .enumerate()
            .map(|(i, (level, &drop))| FiltrationRow {
                k: level.k,
                dim_z: level.dim_z,
                delta: level.delta,
                defect_drop: drop,
                rank_increment: increments.as_ref().map(|v| v[i]),
            })
            .collect(),
    );
    Ok(report)
}

pub fn recover_classical_cmd(l: &Loaded) -> Result<Report, CliError> {
    let h = &l.hypergraph;
    let mut report = base("recover-classical", h)?;
    let recovery = match classical_recovery(h)? {
        Recovery::Match { kernel } => RecoveryJson {
            matches: true,
            kernels_equal: true,
            mismatched_entries: Vec::new(),
            kernel: subspace(&kernel),
        },
        Recovery::Mismatch { entries, .. } => {
            return Err(CliError::Inconsistency(format!(
                "observed incidence differs from the classical one at {entries:?}"
            )))
        }
    };
    report.recovery = Some(recovery);
    Ok(report)
}

pub fn import_oh_cmd(l: &Loaded) -> Result<Report, CliError> {
    let Some(o) = &l.oriented else {
        return Err(CliError::Input("import-oh needs oriented_edges or incidence".into()));
    };
    let h = &l.hypergraph;
    let mut report = base("import-oh", h)?;
    let dim = match kernel_equivalence(o, h.field())? {
        KernelComparison::Match { dim } => dim,
        KernelComparison::Mismatch { oriented, tensor } => {
            return Err(CliError::Inconsistency(format!(
                "Ker(B^oh) has dimension {oriented} but the tensor cycle space has {tensor}"
            )))
        }
    };
    report.import = Some(ImportJson {
        converted: InstanceFile::from_hypergraph(h),
        kernel_match: true,
        oriented_kernel_dim: dim,
    });
    Ok(report)
}

pub fn load(path: &std::path::Path, field: Option<FieldSpec>) -> Result<Loaded, CliError> {
    InstanceFile::read(path)?.load(field)
}
