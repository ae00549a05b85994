use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use crate::deformation::{default_order, specialize_log};
use crate::difference_eq::{psi_rank1, BranchPolicy};
use crate::drinfeld_core::{exp_coeffs, radius_estimate, DrinfeldModule};
use crate::error::{Error, Result};
use crate::local_field::tower::transport;
use crate::local_field::{WElem, WorkingField};
use crate::tate_series::{TateElem, TateMat, DEFAULT_TDEG};

use super::driver::{run_in_tower, TowerLog};
use super::ext::{LogContext, GUARD};
use super::lattice::{describe_ord, lattice_membership, Membership, MembershipRecord};

/// Where the rigid analytic trivialization comes from.
#[derive(Clone, Debug)]
pub enum PsiSource {
    /// `α Ω` for a rank-one module.
    Rank1,
    /// A user-supplied matrix over the root field.
    Given(TateMat),
}

/// Module, trivialization and truncation parameters shared by the verifications.
#[derive(Clone, Debug)]
pub struct Setup {
    pub module: DrinfeldModule,
    pub psi: PsiSource,
    pub tdeg: usize,
    /// Order of the truncated exponential.
    pub order: usize,
    pub prec: i64,
    pub policies: Vec<BranchPolicy>,
    pub max_depth: usize,
}

impl Setup {
    pub fn new(module: DrinfeldModule, prec: i64) -> Setup {
        Setup {
            module,
            psi: PsiSource::Rank1,
            tdeg: DEFAULT_TDEG,
            order: 12,
            prec,
            policies: vec![BranchPolicy::Least],
            max_depth: 4,
        }
    }

    fn psi_in(&self, e: &DrinfeldModule) -> Result<TateMat> {
        match &self.psi {
            PsiSource::Rank1 => psi_rank1(e, self.tdeg, self.prec + GUARD),
            PsiSource::Given(m) => {
                let field = e.field();
                let entries = m
                    .entries()
                    .iter()
                    .map(|x| {
                        let c = x.coeffs().iter().map(|c| transport(c, field)).collect::<Result<_>>()?;
                        Ok(TateElem::from_coeffs(field, c, x.degree_bound(), x.has_tail()))
                    })
                    .collect::<Result<_>>()?;
                TateMat::new(m.rows(), m.cols(), entries)
            }
        }
    }

    /// The module and log context over `field`, with `ξ` moved there.
    pub fn context(&self, field: &Arc<WorkingField>) -> Result<LogContext> {
        let e = self.module.in_field(field)?;
        let psi = self.psi_in(&e)?;
        LogContext::new(&e, &psi, self.prec)
    }

    fn root(&self) -> &Arc<WorkingField> {
        self.module.field()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub residual_ord: String,
    pub witness: Vec<String>,
}

impl CheckRecord {
    fn membership(name: String, m: &Membership) -> CheckRecord {
        let MembershipRecord { member, witness, residual_ord } = m.record();
        CheckRecord { name, pass: member, residual_ord, witness }
    }

    fn small(name: &str, residual: &WElem, prec: i64) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            pass: residual.is_small(Ratio::from(prec)),
            residual_ord: describe_ord(residual),
            witness: Vec::new(),
        }
    }
}

/// Structured outcome of one verification.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub pass: bool,
    pub inputs: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub lattice: serde_json::Value,
    pub field: serde_json::Value,
    pub tower: TowerLog,
}

fn report(claim: &str, setup: &Setup, xi: &WElem, out: (Vec<CheckRecord>, serde_json::Value), field: &Arc<WorkingField>, tower: TowerLog) -> VerifyReport {
    let (checks, lattice) = out;
    VerifyReport {
        claim: claim.into(),
        pass: checks.iter().all(|c| c.pass),
        inputs: serde_json::json!({
            "module": setup.module.describe(),
            "xi": xi.to_string(),
            "prec": setup.prec,
            "tdeg": setup.tdeg,
            "order": setup.order,
            "policies": setup.policies.iter().map(|p| p.name()).collect::<Vec<_>>(),
        }),
        checks,
        lattice,
        field: field.describe(),
        tower,
    }
}

fn membership_check(name: String, w: &WElem, ctx: &LogContext, prec: i64) -> Result<CheckRecord> {
    match lattice_membership(w, &ctx.lattice, prec) {
        Ok(m) => Ok(CheckRecord::membership(name, &m)),
        Err(Error::Stall) => Ok(CheckRecord { name, pass: false, residual_ord: describe_ord(w), witness: vec!["stall".into()] }),
        Err(err) => Err(err),
    }
}

/// `ext_log(ξ) ≡ log_E(ξ) (mod Λ_E)` for `ξ` inside the convergence radius.
pub fn verify_inside_radius(setup: &Setup, xi: &WElem) -> Result<VerifyReport> {
    let radius = radius_estimate(&setup.module, 8)?;
    if let Ok(o) = xi.ord() {
        if -o >= radius.log_q - Ratio::from(1) {
            return Err(Error::InvalidConfig(format!(
                "|ξ| = q^{} is not below the safe radius q^{}",
                -o,
                radius.log_q - Ratio::from(1)
            )));
        }
    }
    let prec = setup.prec;
    let (out, field, tower) = run_in_tower(setup.root(), setup.max_depth, |k| {
        let ctx = setup.context(k)?;
        let x = transport(xi, k)?;
        let n = default_order(&ctx.module, &x, prec);
        let series = specialize_log(&ctx.module, &x, n, prec + GUARD)?;
        let mut checks = Vec::new();
        for &p in &setup.policies {
            let v = ctx.ext_log(&x, p)?;
            checks.push(membership_check(format!("branch {}", p.name()), &v.representative.sub(&series), &ctx, prec)?);
        }
        Ok((checks, ctx.lattice.describe()))
    })?;
    Ok(report("ext_log(ξ) ≡ log_E(ξ) mod Λ_E", setup, xi, out, &field, tower))
}

/// `ext_log(φ_t(ξ)) ≡ θ ext_log(ξ) (mod Λ_E)`.
pub fn verify_functional_equation(setup: &Setup, xi: &WElem) -> Result<VerifyReport> {
    let prec = setup.prec;
    let (out, field, tower) = run_in_tower(setup.root(), setup.max_depth, |k| {
        let ctx = setup.context(k)?;
        let x = transport(xi, k)?;
        let tx = ctx.module.phi_t().apply(&x)?;
        let th = k.theta();
        let mut checks = Vec::new();
        for &p in &setup.policies {
            let lhs = ctx.ext_log(&tx, p)?.representative;
            let rhs = ctx.ext_log(&x, p)?.representative.mul(&th);
            checks.push(membership_check(format!("branch {}", p.name()), &lhs.sub(&rhs), &ctx, prec)?);
        }
        Ok((checks, ctx.lattice.describe()))
    })?;
    Ok(report("ext_log(φ_t(ξ)) ≡ θ·ext_log(ξ) mod Λ_E", setup, xi, out, &field, tower))
}

/// `exp_E(ext_log(ξ)) = ξ` and `ext_log(exp_E(ξ)) ≡ ξ (mod Λ_E)`.
pub fn verify_inverse_of_exp(setup: &Setup, xi: &WElem) -> Result<VerifyReport> {
    let prec = setup.prec;
    let (out, field, tower) = run_in_tower(setup.root(), setup.max_depth, |k| {
        let ctx = setup.context(k)?;
        let x = transport(xi, k)?;
        let exp = exp_coeffs(&ctx.module, setup.order)?;
        let mut checks = Vec::new();
        for &p in &setup.policies {
            let v = ctx.ext_log(&x, p)?.representative;
            let back = exp.apply_certified(&v)?;
            checks.push(CheckRecord::small(&format!("exp(ext_log(ξ)) - ξ, branch {}", p.name()), &back.sub(&x), prec));
            let y = exp.apply_certified(&x)?;
            let w = ctx.ext_log(&y, p)?.representative.sub(&x);
            checks.push(membership_check(format!("ext_log(exp(ξ)) - ξ, branch {}", p.name()), &w, &ctx, prec)?);
        }
        Ok((checks, ctx.lattice.describe()))
    })?;
    Ok(report("ext_log is inverse to exp_E mod Λ_E", setup, xi, out, &field, tower))
}
