//! Totally ramified Artin–Schreier extensions of the working field.
//!
//! Given `g` with `v(g) = -m < 0` and `p ∤ m`, the equation `y^q - y = g` has no root in
//! `K = F((u))`. Write `g = c w^{-m}` with `w` a uniformizer of `K`. In `K' = K(y)` the
//! element `π` with `1/y = a π^m` is a uniformizer, and
//! `w = d π^q (1 - a^{q-1} π^{m(q-1)})^{-1/m}` where `a = c^γ`, `d = c^{(1+qγ)/m}` and
//! `qγ ≡ -1 (mod m)`. The new working field is `F((π))` with `θ` re-expanded in `π`.

use std::sync::Arc;

use crate::base_arith::Fq;
use crate::error::{Error, RamificationRequest, Result};

use super::elem::WElem;
use super::field::WorkingField;

/// Rebuilds the right-hand side of a ramification request inside its field.
pub fn request_element(field: &Arc<WorkingField>, req: &RamificationRequest) -> Result<WElem> {
    if req.field_id != field.id() {
        return Err(Error::InvalidConfig("ramification request belongs to another working field".into()));
    }
    Ok(WElem::from_parts(field, req.val, req.coeffs.iter().map(|&c| Fq(c)).collect(), req.prec))
}

/// The request for `y^q - y = g`.
pub fn make_request(g: &WElem) -> RamificationRequest {
    RamificationRequest {
        field_id: g.field().id(),
        val: g.val_or_prec(),
        coeffs: g.coeffs().iter().map(|c| c.0).collect(),
        prec: g.prec(),
    }
}

/// A field `K' ⊃ K` containing a root of `y^q - y = g`.
pub fn extend_artin_schreier(field: &Arc<WorkingField>, g: &WElem) -> Result<Arc<WorkingField>> {
    let f = field.base();
    let q = field.q();
    let Some(v) = g.val().filter(|&v| v < 0) else {
        return Err(Error::InvalidConfig("Artin-Schreier extension needs a pole".into()));
    };
    let m = (-v) as u64;
    if m % f.p() as u64 == 0 {
        return Err(Error::UnsupportedRamification(format!(
            "y^q - y = g with v(g) = {v} divisible by p"
        )));
    }
    let new_cap = field.cap().checked_mul(q as usize).ok_or(Error::Overflow)?;
    let new_e = field.e().checked_mul(q as i64).ok_or(Error::Overflow)?;

    // K side: g = c * w^{-m} with w = u * U^{-1/m}, U = g u^m / c.
    let c = g.lc();
    let unit = g.scale(f.inv(c)?).shift(m as i64);
    let unit_root = unit.nth_root_with(m, |_| Fq::ONE)?;
    let w = unit_root.inv()?.shift(1);
    let rho = w.reversion()?;
    let theta_in_w = field.theta().compose(&rho)?;
    let root_in_w = field.root_uniformizer().compose(&rho)?;

    // K' side.
    let scratch = WorkingField::new(field.base().clone(), new_e, new_cap)?;
    let gamma = (0..m).find(|&g| (1 + q * g) % m == 0).expect("q is invertible mod m");
    let a = f.pow(c, gamma as i64)?;
    let d = f.pow(c, ((1 + q * gamma) / m) as i64)?;
    let a_pow = f.pow(a, q as i64 - 1)?;
    let inner = WElem::one(&scratch).sub(&WElem::monomial(&scratch, a_pow, (m * (q - 1)) as i64));
    let root = inner.nth_root_with(m, |_| Fq::ONE)?;
    let w_new = WElem::monomial(&scratch, d, q as i64).div(&root)?;
    let theta_new = theta_in_w.compose(&w_new)?;
    let root_new = root_in_w.compose(&w_new)?;

    let mut history = field.extensions().to_vec();
    history.push(format!("y^{q} - y = g with v(g) = {v}"));
    Ok(WorkingField::with_theta(
        field.base().clone(),
        new_e,
        new_cap,
        &theta_new,
        &root_new,
        field.root_e(),
        history,
    ))
}

/// The root `y = 1/(a π^m)` of the equation that triggered [`extend_artin_schreier`],
/// valid in the returned field. Used for self-checks.
pub fn distinguished_root(new_field: &Arc<WorkingField>, c: Fq, m: u64) -> Result<WElem> {
    let f = new_field.base();
    let q = new_field.q();
    let gamma = (0..m).find(|&g| (1 + q * g) % m == 0).expect("q is invertible mod m");
    let a = f.pow(c, gamma as i64)?;
    WElem::monomial(new_field, a, m as i64).inv()
}

/// The image of `x`, an element of a root field (`θ = u^{-e}`), in `target`.
///
/// `target` may be an Artin–Schreier tower over a root field with the same `e`, possibly
/// over a larger residue field; in the latter case `x` must have coefficients in `F_q`.
pub fn transport(x: &WElem, target: &Arc<WorkingField>) -> Result<WElem> {
    let src = x.field();
    if Arc::ptr_eq(src, target) {
        return Ok(x.clone());
    }
    if src.depth() != 0 || src.e() != target.root_e() {
        return Err(Error::InvalidConfig("transport needs an element of a compatible root field".into()));
    }
    let coeffs: Vec<Fq> = if Arc::ptr_eq(src.base(), target.base()) {
        x.coeffs().to_vec()
    } else {
        let (sf, tf) = (src.base(), target.base());
        if sf.p() != tf.p() || sf.m() != tf.m() {
            return Err(Error::InvalidConfig("transport between different constant fields".into()));
        }
        let table: Vec<(Fq, Fq)> = sf
            .fq_elements()
            .into_iter()
            .map(|a| {
                let c = sf.fq_coords(a).expect("element of F_q");
                Ok((a, tf.embed_fq(&c)?))
            })
            .collect::<Result<_>>()?;
        x.coeffs()
            .iter()
            .map(|c| {
                table.iter().find(|(a, _)| a == c).map(|(_, b)| *b).ok_or_else(|| {
                    Error::InvalidConfig("transport to another residue field needs F_q coefficients".into())
                })
            })
            .collect::<Result<_>>()?
    };
    if target.depth() == 0 {
        return Ok(WElem::from_parts(target, x.val_or_prec(), coeffs, x.prec()));
    }
    let root = WorkingField::new(target.base().clone(), target.root_e(), target.cap())?;
    WElem::from_parts(&root, x.val_or_prec(), coeffs, x.prec()).compose(&target.root_uniformizer())
}
