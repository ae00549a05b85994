use crate::drinfeld_core::{r_matrices, DrinfeldModule};
use crate::error::{Error, Result};
use crate::local_field::WElem;
use crate::tate_series::{RatMat, RationalTate, TateElem};

use super::partitions::enumerate_p_r_n;

/// `B_n = sum_{P_r(n)} prod_i prod_{j ∈ S_i} κ_i^{q^j} / (t - θ^{q^{i+j}})`.
pub fn b_series_direct(e: &DrinfeldModule, n: usize) -> Result<RationalTate> {
    let field = e.field();
    let mut acc = RationalTate::zero(field);
    for part in enumerate_p_r_n(e.rank(), n) {
        let mut c = WElem::one(field);
        let mut den = Vec::with_capacity(n);
        for (i, s) in part.sets.iter().enumerate() {
            for &j in s {
                c = c.mul(&e.kappa()[i].twist(j as i64)?);
                den.push((i + 1 + j) as u32);
            }
        }
        acc = acc.add(&RationalTate::new(field, vec![c], den))?;
    }
    Ok(acc)
}

/// `B_m = sum_{j=1}^r κ_j^{q^{m-j}} / (t - θ^{q^m}) B_{m-j}`.
pub fn b_series_recursive(e: &DrinfeldModule, n: usize) -> Result<RationalTate> {
    Ok(b_series_all(e, n)?.pop().unwrap())
}

fn b_series_all(e: &DrinfeldModule, n: usize) -> Result<Vec<RationalTate>> {
    let field = e.field();
    let mut bs = vec![RationalTate::one(field)];
    for m in 1..=n {
        let mut acc = RationalTate::zero(field);
        for j in 1..=e.rank().min(m) {
            let k = e.kappa()[j - 1].twist((m - j) as i64)?;
            acc = acc.add(&bs[m - j].mul(&RationalTate::over_factor(&k, m as u32)))?;
        }
        bs.push(acc);
    }
    Ok(bs)
}

/// `𝓡_m = (Φ_E^{-1})^{(m)} ... (Φ_E^{-1})^{(1)}`.
pub fn r_matrix(e: &DrinfeldModule, m: usize) -> Result<RatMat> {
    Ok(r_matrices(e, m)?.pop().unwrap())
}

/// `B_0(θ), ..., B_n(θ)` through the recursion evaluated at `t = θ`.
pub fn b_at_theta(e: &DrinfeldModule, n: usize) -> Result<Vec<WElem>> {
    let field = e.field();
    let theta = field.theta();
    let mut out = vec![WElem::one(field)];
    for m in 1..=n {
        let mut acc = WElem::zero(field);
        for j in 1..=e.rank().min(m) {
            acc = acc.add(&e.kappa()[j - 1].twist((m - j) as i64)?.mul(&out[m - j]));
        }
        out.push(acc.div(&theta.sub(&theta.twist(m as i64)?))?);
    }
    Ok(out)
}

/// Term valuations below `-DIVERGED` mean `ξ` lies outside the disc of convergence.
const DIVERGED: i64 = 1 << 16;

/// Smallest `n` with `|B_n(θ) ξ^{q^n}| < q^{-prec-10}`, at most 64.
pub fn default_order(e: &DrinfeldModule, xi: &WElem, prec: i64) -> usize {
    let field = e.field();
    let target = (prec + 10).saturating_mul(field.e());
    let theta = field.theta();
    let mut bs = vec![WElem::one(field)];
    for m in 1..=64usize {
        let step = || -> Result<WElem> {
            let mut acc = WElem::zero(field);
            for j in 1..=e.rank().min(m) {
                acc = acc.add(&e.kappa()[j - 1].twist((m - j) as i64)?.mul(&bs[m - j]));
            }
            acc.div(&theta.sub(&theta.twist(m as i64)?))
        };
        let Ok(b) = step() else { return m };
        let x = match xi.twist(m as i64) {
            Ok(x) => x,
            Err(_) => return m,
        };
        let v = b.mul(&x).val_or_prec();
        // Past the target, or diverging.
        if v > target || v < -DIVERGED {
            return m;
        }
        bs.push(b);
    }
    64
}

/// `sum_{n<=N} B_n(t) ξ^{q^n}` expanded to `t`-degree `D`.
pub fn deformation_series(e: &DrinfeldModule, xi: &WElem, n: usize, d: usize) -> Result<TateElem> {
    let mut acc = TateElem::zero(e.field(), d);
    for k in 0..=n {
        acc = acc.add(&b_series_direct(e, k)?.expand(d)?.scale(&xi.twist(k as i64)?))?;
    }
    Ok(acc)
}

/// The same series as `sum_n (ξ^{q^n}, 0, ..., 0) 𝓡_n e_1^tr`.
pub fn deformation_series_matrix(e: &DrinfeldModule, xi: &WElem, n: usize, d: usize) -> Result<TateElem> {
    let mut acc = TateElem::zero(e.field(), d);
    for (k, r) in r_matrices(e, n)?.iter().enumerate() {
        acc = acc.add(&r.get(0, 0).expand(d)?.scale(&xi.twist(k as i64)?))?;
    }
    Ok(acc)
}

/// Precision bound for a sum from the valuations of its last two nonzero terms.
pub(crate) fn extrapolated_tail(vals: &[Option<i64>]) -> Option<Option<i64>> {
    let known: Vec<i64> = vals.iter().flatten().copied().collect();
    match known.as_slice() {
        [.., v1, v2] if v2 > v1 => Some(Some(v2 + (v2 - v1))),
        [.., _, _] => None,
        _ => Some(None),
    }
}

/// `𝓛_E(ξ; θ)`, with each `B_n(θ)` evaluated from its rational form.
pub fn specialize_log(e: &DrinfeldModule, xi: &WElem, n: usize, prec: i64) -> Result<WElem> {
    let field = e.field();
    let theta = field.theta();
    let mut acc = WElem::zero(field);
    let mut vals = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let term = b_series_direct(e, k)?.eval(&theta)?.mul(&xi.twist(k as i64)?);
        vals.push(term.val());
        acc = acc.add(&term);
    }
    match extrapolated_tail(&vals) {
        None => Err(Error::TailNotConverged { degree: n }),
        Some(None) => Ok(acc),
        Some(Some(bound)) => {
            if bound < prec.saturating_mul(field.e()) {
                return Err(Error::TailNotConverged { degree: n });
            }
            Ok(acc.truncate_prec(bound))
        }
    }
}

/// `φ_j(ξ) = ε_0(P_0 ... P_j ι(y_j))` with `y_j = (t - θ^{q^j}) ... (t - θ^q) (ξ^{q^j}, 0, ..., 0) 𝓡_j`
/// and the constant choice `P_k = (θ - θ^{q^k})^{-1}`.
pub fn frobenius_inverse_phi_j(e: &DrinfeldModule, xi: &WElem, j: usize) -> Result<WElem> {
    let field = e.field();
    if j == 0 {
        return Ok(xi.clone());
    }
    let theta = field.theta();
    let r = r_matrix(e, j)?;
    let mut y = r.get(0, 0).scale(&xi.twist(j as i64)?);
    let mut p = WElem::one(field);
    for k in 1..=j as u32 {
        y = y.mul_factor(k)?;
        p = p.mul(&theta.sub(&theta.twist(k as i64)?).inv()?);
    }
    if !y.denominator().is_empty() {
        return Err(Error::InvalidConfig("y_j is not a polynomial".into()));
    }
    Ok(y.eval(&theta)?.mul(&p))
}
