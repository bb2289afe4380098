//! Diagram suites over the bundles built in [`crate::constructions`].

mod basis;
mod diagram;
mod mutation;
mod report;
mod suites;
mod torsor;

pub use basis::verify_basis;
pub use diagram::{unit_morphism, VerifyOptions, DEFAULT_SAMPLES};
pub use mutation::{
    random_mutation, run_mutations, Mutation, MutationKind, MutationOutcome, DEFAULT_MUTATIONS,
};
pub use report::{CheckReport, CheckResult, CheckStatus};
pub use suites::{
    check_bicomodule, check_comodule, check_comodules, check_complete_system, check_embedding,
    check_galois_system, check_hopf, Side,
};
pub use torsor::{
    check_counit_agreement, check_hl_membership, check_hr_membership, check_membership,
    check_torsor, check_z_membership, compute_s_t, s_t_route,
};

use crate::constructions::GaloisBundle;
use crate::error::Result;

/// Every suite that applies to `b`, in one report.
pub fn verify_bundle(b: &GaloisBundle, opts: &VerifyOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("bundle", &b.name);
    report.extend(check_hopf(&b.a, opts)?);
    report.extend(check_hopf(&b.b, opts)?);
    report.extend(check_comodules(b, opts)?);
    report.extend(check_galois_system(b, opts)?);
    report.extend(check_complete_system(b, opts)?);
    if let Some(tor) = &b.torsor {
        report.extend(check_torsor(tor, opts)?);
        report.extend(check_membership(b, opts)?);
    }
    Ok(report)
}
