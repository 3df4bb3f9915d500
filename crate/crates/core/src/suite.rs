//! The property suite over seeded random algebras.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::adjacency::representation_check;
use crate::duality::{
    check_naturality_pca, check_naturality_pcs, corollary_suite, ga_morphism, roundtrip_pca,
};
use crate::error::{Error, Result};
use crate::io::{Instance, PcaDto};
use crate::limits::limits;
use crate::precontact::{ll_axiom_report, relation_from_ll, LlRelation, PrecontactAlgebra};
use crate::random::{random_kernel_with, random_morphism, rng, RandomSpec};
use crate::report::DualityReport;

/// Every check the suite runs on one algebra. `seed` drives the random
/// morphism used for the naturality squares.
pub fn check_instance(pca: &PrecontactAlgebra, seed: u64) -> Result<DualityReport> {
    let mut report = DualityReport::new(format!("{pca}"));
    report.absorb("round trip", roundtrip_pca(pca)?);
    report.absorb("corollaries", corollary_suite(pca)?);
    report.absorb("representation", representation_check(pca)?);
    if pca.atom_count() <= limits().max_exhaustive_atoms {
        let ll = LlRelation::of(pca)?;
        let back = relation_from_ll(&ll);
        report.push(
            "C → ≪ → C is the identity",
            back.as_ref().is_ok_and(|k| k == pca.kernel()),
            Some(format!("{back:?}")),
        );
        report.push(
            "≪ satisfies the precontact axioms",
            ll_axiom_report(&ll).is_precontact(),
            None,
        );
    }
    let mut r = rng(seed);
    let k = 1 + (seed as usize % pca.atom_count().max(1));
    let phi = random_morphism(pca, k, 0.5, &mut r)?;
    report.absorb("naturality", check_naturality_pca(&phi)?);
    let f = ga_morphism(&phi)?;
    report.absorb("naturality", check_naturality_pcs(&f)?);
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    /// One entry per check name, failing if any instance failed it.
    pub report: DualityReport,
    /// Offending instances with their own reports.
    pub failures: Vec<(u64, Instance, DualityReport)>,
}

pub fn run_suite(spec: &RandomSpec, count: usize) -> Result<SuiteOutcome> {
    if spec.atoms == 0 {
        return Err(Error::Domain("the suite needs at least one atom".into()));
    }
    let alg = crate::boolean::BooleanAlgebra::new(spec.atoms)?;
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(Error::Domain(format!(
            "density {} is outside [0, 1]",
            spec.density
        )));
    }
    let results: Vec<Result<(u64, PrecontactAlgebra, DualityReport)>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = spec.seed.wrapping_add(i);
            let mut r = rng(seed);
            let pca = random_kernel_with(alg, spec.density, spec.constraint, &mut r)?;
            let report = check_instance(&pca, seed)?;
            Ok((seed, pca, report))
        })
        .collect();
    let mut merged: BTreeMap<String, (usize, usize, Option<String>)> = BTreeMap::new();
    let mut failures = Vec::new();
    for res in results {
        let (seed, pca, report) = res?;
        for c in &report.checks {
            let e = merged.entry(c.name.clone()).or_insert((0, 0, None));
            e.0 += 1;
            if !c.pass {
                e.1 += 1;
                e.2.get_or_insert_with(|| {
                    format!("seed {seed}: {}", c.witness.clone().unwrap_or_default())
                });
            }
        }
        if !report.passed() {
            failures.push((seed, Instance::Pca(PcaDto::from(&pca)), report));
        }
    }
    let mut report = DualityReport::new(format!(
        "suite: {count} instances, {} atoms, density {}, seed {}",
        spec.atoms, spec.density, spec.seed
    ));
    for (name, (runs, failed, first)) in merged {
        report.push(
            name,
            failed == 0,
            first.map(|w| format!("failed on {failed} of {runs} instances; first {w}")),
        );
    }
    Ok(SuiteOutcome { report, failures })
}
