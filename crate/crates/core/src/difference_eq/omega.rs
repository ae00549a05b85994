use std::sync::Arc;

use crate::drinfeld_core::{phi_e_matrix, DrinfeldModule};
use crate::error::{Error, Result};
use crate::local_field::{WElem, WorkingField};
use crate::tate_series::{invert_w, Disc, GaussNorm, TateElem, TateMat};

/// Coefficients beyond this `u`-valuation are stored as inexact zeros.
const NEGLIGIBLE: i64 = 1 << 40;

fn least_root(x: &WElem, n: u64) -> Result<WElem> {
    if n == 1 {
        return Ok(x.clone());
    }
    x.nth_root_with(n, |r| r[0])
}

/// `Ω = (-θ)^{-q/(q-1)} prod_{i>=1} (1 - t/θ^{q^i})`, from `a_i + θ^q a_i^q = a_{i-1}^q`.
pub fn omega_series(field: &Arc<WorkingField>, d: usize, _prec: i64) -> Result<TateElem> {
    let q = field.q();
    if field.e() % (q as i64 - 1) != 0 {
        return Err(Error::InvalidConfig(format!("Ω needs q - 1 = {} to divide e = {}", q - 1, field.e())));
    }
    let theta = field.theta();
    let root = least_root(&theta.neg(), q - 1)?;
    let a0 = theta.mul(&root).inv()?.neg();
    let theta_q = theta.twist(1)?;
    let mut coeffs = vec![a0];
    for _ in 1..=d {
        let prev = coeffs.last().unwrap();
        if prev.val_or_prec().saturating_mul(q as i64) >= NEGLIGIBLE {
            coeffs.push(WElem::zero_prec(field, NEGLIGIBLE));
            continue;
        }
        let c = prev.twist(1)?;
        let mut y = c.clone();
        for _ in 0..64 {
            let next = c.sub(&theta_q.mul(&y.twist(1)?));
            let done = next.sub(&y).is_zero();
            y = next;
            if done {
                break;
            }
        }
        coeffs.push(y);
    }
    Ok(TateElem::from_coeffs(field, coeffs, d, true))
}

/// `Ψ = α Ω` with `α^{q-1} = κ_1`, so that `Ψ^{(-1)} = Φ_E Ψ`.
pub fn psi_rank1(e: &DrinfeldModule, d: usize, prec: i64) -> Result<TateMat> {
    if e.rank() != 1 {
        return Err(Error::DimensionMismatch(format!("rank-1 construction for a rank-{} module", e.rank())));
    }
    let field = e.field();
    let alpha = least_root(&e.kappa()[0], field.q() - 1)?;
    let omega = omega_series(field, d, prec)?;
    TateMat::new(1, 1, vec![omega.scale(&alpha)])
}

/// `||Ψ^{(-1)} - Φ_E Ψ||` on the unit disc.
pub fn validate_psi(e: &DrinfeldModule, psi: &TateMat, _prec: i64) -> Result<GaussNorm> {
    let r = e.rank();
    if psi.rows() != r || psi.cols() != r {
        return Err(Error::DimensionMismatch(format!("Ψ is {}x{}, rank is {r}", psi.rows(), psi.cols())));
    }
    let lead: Vec<WElem> = psi.entries().iter().map(|x| x.coeff(0).clone()).collect();
    invert_w(&lead, r)?;
    let phi = phi_e_matrix(e, psi.degree_bound())?;
    let resid = psi.twist(-1)?.sub(&phi.mul(psi)?)?;
    Ok(resid.gauss_norm(Disc::Unit))
}
