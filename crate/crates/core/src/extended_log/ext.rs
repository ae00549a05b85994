use num_rational::Ratio;
use serde::Serialize;

use crate::base_arith::{CoeffPoly, Var};
use crate::difference_eq::{solve_artin_schreier_traced, wp_inverse, BranchPolicy};
use crate::drinfeld_core::DrinfeldModule;
use crate::error::{Error, Result};
use crate::local_field::WElem;
use crate::tate_series::{TateElem, TateMat};

use super::lattice::{period_column, period_lattice_from_psi, LatticeBasis};

/// Extra `θ`-units carried through intermediate steps.
pub const GUARD: i64 = 10;

/// A value in `C_∞ / Λ_E`: a branch representative and the lattice.
#[derive(Clone, Debug)]
pub struct CosetValue {
    pub representative: WElem,
    pub branch: BranchPolicy,
    pub lattice: LatticeBasis,
}

/// `Z e_1 Ψ` as a row of Tate series.
fn first_row_times(z: &TateElem, psi: &TateMat) -> Result<Vec<TateElem>> {
    (0..psi.cols()).map(|k| z.mul(psi.get(0, k))).collect()
}

/// A representative of `L_E(Z) = L_0(Z e_1 Ψ) Ψ^{-1} e_1^tr` modulo `F_q[t]`-rows times
/// `Ψ^{-1} e_1^tr`.
pub fn ext_le(psi: &TateMat, z: &TateElem, policy: BranchPolicy, prec: i64) -> Result<TateElem> {
    let f = wp_inverse(&first_row_times(z, psi)?, policy, prec)?;
    let inv = psi.inverse()?;
    let mut acc = TateElem::zero(z.field(), z.degree_bound());
    for (k, fk) in f.iter().enumerate() {
        acc = acc.add(&fk.mul(inv.get(k, 0))?)?;
    }
    Ok(acc)
}

/// `Ψ` together with the data every extended logarithm shares: the column of `Ψ(θ)^{-1}` and
/// the period lattice.
#[derive(Clone, Debug)]
pub struct LogContext {
    pub module: DrinfeldModule,
    pub psi: TateMat,
    pub column: Vec<WElem>,
    pub lattice: LatticeBasis,
    pub prec: i64,
}

impl LogContext {
    pub fn new(e: &DrinfeldModule, psi: &TateMat, prec: i64) -> Result<LogContext> {
        let work = prec + GUARD;
        let column = period_column(psi, work)?;
        let lattice = period_lattice_from_psi(e, psi, e.rank() + 2, work)?;
        Ok(LogContext { module: e.clone(), psi: psi.clone(), column, lattice, prec })
    }

    /// `log_E(ξ)` on the branch chosen by `policy`.
    ///
    /// Evaluation at `t = θ` is multiplicative, so the value is `sum_k f_k(θ) [Ψ(θ)^{-1}]_{k1}`
    /// with `f = ℘^{-1}(ξ e_1 Ψ)`.
    pub fn ext_log(&self, xi: &WElem, policy: BranchPolicy) -> Result<CosetValue> {
        let d = self.psi.degree_bound();
        let work = self.prec + GUARD;
        let z = TateElem::constant(xi, d);
        let f = wp_inverse(&first_row_times(&z, &self.psi)?, policy, work + d as i64)?;
        let mut rep = WElem::zero(xi.field());
        for (fk, lk) in f.iter().zip(&self.column) {
            rep = rep.add(&fk.eval_at_theta(work)?.mul(lk));
        }
        Ok(CosetValue { representative: rep, branch: policy, lattice: self.lattice.clone() })
    }
}

pub fn ext_log(e: &DrinfeldModule, psi: &TateMat, xi: &WElem, policy: BranchPolicy, prec: i64) -> Result<CosetValue> {
    LogContext::new(e, psi, prec)?.ext_log(xi, policy)
}

#[derive(Clone, Debug)]
pub struct KInftyBranch {
    pub value: WElem,
    /// Every coefficient equation had an integral edge of length one.
    pub length_one_edges: bool,
    pub per_coefficient: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KInftyRecord {
    pub value: String,
    pub length_one_edges: bool,
}

/// `Ω / a_0 = prod_{i>=1} (1 - t/θ^{q^i})`, exact in `k_∞[[t]]` up to `u`-precision
/// beyond `prec` `θ`-units.
fn omega_ratios(field: &std::sync::Arc<crate::local_field::WorkingField>, d: usize, prec: i64) -> Result<TateElem> {
    let q = field.q() as i64;
    let mut acc = TateElem::one(field, d);
    let mut qi = q;
    while qi <= prec {
        let mut factor = TateElem::one(field, d);
        if d >= 1 {
            factor = factor.sub(&TateElem::t(field, d).scale(&field.theta_pow(qi)?.inv()?))?;
        }
        acc = acc.mul(&factor)?;
        qi = qi.checked_mul(q).ok_or(Error::Overflow)?;
    }
    let cut = qi.saturating_mul(field.e());
    let coeffs = acc.coeffs().iter().map(|c| if c.is_exact_zero() { c.clone() } else { c.truncate_prec(cut) }).collect();
    Ok(TateElem::from_coeffs(field, coeffs, d, true))
}

/// `α` lies in `F_q((1/θ))`: `θ` is a monomial and `α` is supported on multiples of `e`
/// with `F_q` coefficients.
fn in_k_infinity(alpha: &WElem) -> bool {
    let field = alpha.field();
    if !field.theta_is_monomial() || !alpha.coeffs_in_fq() {
        return false;
    }
    let e = field.e();
    let v = alpha.val_or_prec();
    alpha.coeffs().iter().enumerate().all(|(i, c)| c.is_zero() || (v + i as i64) % e == 0)
}

/// The `k_∞`-rational branch `(f/Ω)|_{t=θ}` of the Carlitz logarithm, where each `f_i/a_0`
/// solves `Y^q + θ^q Y = α θ^q a_i/a_0` on the length-one edge of its Newton polygon.
pub fn carlitz_kinfty_branch(alpha: &WElem, d: usize, prec: i64) -> Result<KInftyBranch> {
    if !in_k_infinity(alpha) {
        return Err(Error::InvalidConfig("α must lie in F_q((1/θ))".into()));
    }
    let field = alpha.field().clone();
    let work = prec + GUARD;
    let ratios = omega_ratios(&field, d, work + d as i64)?;
    let thq = field.theta().twist(1)?;
    let scale = alpha.mul(&thq);
    let mut coeffs = Vec::with_capacity(d + 1);
    let mut per = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let c = scale.mul(ratios.coeff(i));
        if c.is_exact_zero() {
            per.push(true);
            coeffs.push(c);
            continue;
        }
        let sol = solve_artin_schreier_traced(&thq, &c, BranchPolicy::KInfty, work + d as i64)?;
        if sol.kinfty_fallback {
            return Err(Error::NoIntegralSlope { valuation: c.val_or_prec(), degree: field.q() });
        }
        per.push(sol.steps.iter().all(|s| s.length_one_edge));
        coeffs.push(sol.root);
    }
    let f = TateElem::from_coeffs(&field, coeffs, d, true);
    let value = f.eval_at_theta(work)?.div(&ratios.eval_at_theta(work)?)?;
    Ok(KInftyBranch { value, length_one_edges: per.iter().all(|&b| b), per_coefficient: per })
}

/// `exp_Λ(z) = z prod (1 - z/λ)` over `λ = a(θ) λ_1`, `a ≠ 0` of degree at most `h`.
pub fn exp_from_lattice_product(lattice: &LatticeBasis, z: &WElem, h: usize, prec: i64) -> Result<WElem> {
    if lattice.rank() != 1 {
        return Err(Error::DimensionMismatch("the product formula is implemented for rank one".into()));
    }
    let field = z.field().clone();
    if z.is_exact_zero() {
        return Ok(WElem::zero(&field));
    }
    let lambda = &lattice.generators[0];
    let th = field.theta();
    let one = WElem::one(&field);
    let mut acc = z.clone();
    for a in CoeffPoly::enumerate_up_to(Var::Theta, h, field.base()).iter().skip(1) {
        let mut av = WElem::zero(&field);
        for &c in a.coeffs().iter().rev() {
            av = av.mul(&th).add(&WElem::constant(&field, c));
        }
        let factor = one.sub(&z.div(&av.mul(lambda))?);
        acc = acc.mul(&factor);
        if acc.is_small(Ratio::from(prec)) {
            return Ok(WElem::zero_prec(&field, prec.saturating_mul(field.e())));
        }
    }
    Ok(acc)
}
