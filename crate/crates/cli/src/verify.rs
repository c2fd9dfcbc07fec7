//! Runs every internal cross-check on one instance.

use hypercycle::exactla::{kernel_basis, Subspace};
use hypercycle::generate::{random_mixed, random_oriented, random_raw, random_relabeling, random_single, GenParams};
use hypercycle::gram::{gram_rank_report, loewner_chain_certify, rank_increment_check, structured_spectrum};
use hypercycle::hypergraph::{
    analyze, cycle_decomposition, minimality_check, tensor_incidence, vanishing_audit, VanishingAudit,
};
use hypercycle::observe::{classical_recovery, degree_filtration, graded_quotients, Recovery};
use hypercycle::ohg::{kernel_equivalence, oh_dimension_report, star_analysis, to_tensor_hg, KernelComparison};
use hypercycle::{Construction, FieldSpec, TensorHypergraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::instance::{Expected, InstanceFile, Loaded};
use crate::report::{AnalysisJson, VerifyCase, VerifyJson};

const RELABELINGS: usize = 3;

struct Checker {
    passed: usize,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
        if ok {
            self.passed += 1;
            Ok(())
        } else {
            Err(what())
        }
    }
}

fn fail(e: hypercycle::Error) -> String {
    e.to_string()
}

fn compare(name: &str, want: Option<usize>, got: usize, c: &mut Checker) -> Result<(), String> {
    match want {
        Some(w) => c.check(w == got, || format!("expected {name} = {w}, computed {got}")),
        None => Ok(()),
    }
}

fn run_checks<R: Rng>(l: &Loaded, rng: &mut R, c: &mut Checker) -> Result<AnalysisJson, String> {
    let h = &l.hypergraph;
    let field = h.field();
    let r = analyze(h).map_err(fail)?;
    c.passed += 1;

    let d = cycle_decomposition(h).map_err(fail)?;
    let vs = d.basis.vectors();
    let (_, del) = tensor_incidence(h).map_err(fail)?;
    c.check(vs.len() == r.dim_z, || "extended basis has the wrong size".into())?;
    let span = Subspace::span(field, h.edge_count(), &vs).map_err(fail)?;
    c.check(span.dim() == vs.len(), || "extended basis is dependent".into())?;
    c.check(span == kernel_basis(&del), || "extended basis does not span the kernel".into())?;
    for v in &vs {
        let image = del.mul_vec(v).map_err(fail)?;
        c.check(image.iter().all(|x| x.is_zero()), || "basis vector outside the kernel".into())?;
    }

    let audit = vanishing_audit(h).map_err(fail)?;
    c.check(!matches!(audit, VanishingAudit::Violation { .. }), || format!("vanishing fails: {audit:?}"))?;
    c.check(minimality_check(h).map_err(fail)?, || "positive defect below the minimal size".into())?;

    degree_filtration(h).map_err(fail)?;
    graded_quotients(h).map_err(fail)?;
    c.passed += 1;

    for _ in 0..RELABELINGS {
        let g = random_relabeling(rng, h);
        let s = analyze(&g).map_err(fail)?;
        c.check(s == r, || "analysis changes under relabeling".into())?;
    }

    if field.is_rationals() {
        gram_rank_report(h).map_err(fail)?;
        loewner_chain_certify(h).map_err(fail)?;
        structured_spectrum(h).map_err(fail)?;
        c.check(rank_increment_check(h).map_err(fail)?, || "rank increments differ from defect drops".into())?;
    }

    if field.characteristic() == 2 && h.edge_count() > 0 && h.single_construction() == Some(Construction::SymQuad) {
        let rec = classical_recovery(h).map_err(fail)?;
        c.check(matches!(rec, Recovery::Match { .. }), || "classical recovery fails".into())?;
    }

    if let Some(o) = &l.oriented {
        let k = kernel_equivalence(o, field).map_err(fail)?;
        c.check(matches!(k, KernelComparison::Match { .. }), || format!("oriented kernels differ: {k:?}"))?;
        oh_dimension_report(o, field).map_err(fail)?;
        star_analysis(o, field).map_err(fail)?;
        c.passed += 1;
    }

    if let Some(e) = &l.expected {
        let Expected {
            q1,
            v_macro,
            c_macro,
            delta,
            dim_z,
            dim_z_top,
        } = e;
        compare("q1", *q1, r.q1, c)?;
        compare("v_macro", *v_macro, r.v_macro, c)?;
        compare("c_macro", *c_macro, r.c_macro, c)?;
        compare("delta", *delta, r.delta, c)?;
        compare("dim_z", *dim_z, r.dim_z, c)?;
        compare("dim_z_top", *dim_z_top, r.dim_z_top, c)?;
    }
    Ok(AnalysisJson::from(&r))
}

/// Checks one instance, recording the first failure.
pub fn verify_instance<R: Rng>(index: usize, source: String, l: &Loaded, rng: &mut R) -> VerifyCase {
    let mut c = Checker { passed: 0 };
    let outcome = run_checks(l, rng, &mut c);
    let h = &l.hypergraph;
    let (analysis, failure) = match outcome {
        Ok(a) => (Some(a), None),
        Err(f) => (None, Some(f)),
    };
    VerifyCase {
        index,
        source,
        field: h.field().to_string(),
        vertices: h.vertex_count(),
        edges: h.edge_count(),
        analysis,
        checks: c.passed,
        failure,
    }
}

const KINDS: usize = 9;

/// The `i`-th random instance: the six standard constructions, then mixed,
/// raw and oriented instances, in rotation.
pub fn random_instance<R: Rng>(i: usize, field: FieldSpec, rng: &mut R) -> (String, Loaded) {
    let p = GenParams::default();
    let (source, hypergraph, oriented) = match i % KINDS {
        k if k < 6 => {
            let c = Construction::STANDARD[k];
            (c.name().to_string(), random_single(rng, c, field, &p), None)
        }
        6 => ("mixed".into(), random_mixed(rng, field, &p), None),
        7 => ("raw".into(), random_raw(rng, field, &p), None),
        _ => {
            let o = random_oriented(rng, 6, 8);
            let h = to_tensor_hg(&o, field).expect("generated oriented hypergraphs are valid");
            ("oriented".into(), h, Some(o))
        }
    };
    (
        source,
        Loaded {
            hypergraph,
            oriented,
            expected: None,
        },
    )
}

fn summarize(seed: Option<u64>, cases: Vec<VerifyCase>, counterexample: Option<&TensorHypergraph>) -> VerifyJson {
    let failed = cases.iter().filter(|c| c.failure.is_some()).count();
    VerifyJson {
        seed,
        passed: cases.len() - failed,
        failed,
        cases,
        counterexample: counterexample.map(InstanceFile::from_hypergraph),
    }
}

/// Verifies `n` seeded random instances, stopping at the first failure.
pub fn verify_random(n: usize, seed: u64, field: FieldSpec) -> VerifyJson {
    let mut rng: ChaCha8Rng = rand::SeedableRng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(n);
    for i in 0..n {
        let (source, l) = random_instance(i, field, &mut rng);
        let case = verify_instance(i, source, &l, &mut rng);
        let failed = case.failure.is_some();
        cases.push(case);
        if failed {
            return summarize(Some(seed), cases, Some(&l.hypergraph));
        }
    }
    summarize(Some(seed), cases, None)
}

/// Verifies already loaded instances in order.
pub fn verify_loaded(instances: &[(String, Loaded)], seed: u64) -> VerifyJson {
    let mut rng: ChaCha8Rng = rand::SeedableRng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(instances.len());
    let mut counterexample = None;
    for (i, (source, l)) in instances.iter().enumerate() {
        let case = verify_instance(i, source.clone(), l, &mut rng);
        if case.failure.is_some() && counterexample.is_none() {
            counterexample = Some(&l.hypergraph);
        }
        cases.push(case);
    }
    summarize(None, cases, counterexample)
}
