use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::local_field::{WElem, WorkingField};

use super::module::DrinfeldModule;

/// `sum_{i<=N} c_i X^{q^i}`.
#[derive(Clone, Debug)]
pub struct FqLinearSeries {
    field: Arc<WorkingField>,
    coeffs: Vec<WElem>,
}

impl FqLinearSeries {
    pub fn new(field: &Arc<WorkingField>, coeffs: Vec<WElem>) -> FqLinearSeries {
        FqLinearSeries { field: field.clone(), coeffs }
    }

    pub fn identity(field: &Arc<WorkingField>, n: usize) -> FqLinearSeries {
        let mut coeffs = vec![WElem::zero(field); n + 1];
        coeffs[0] = WElem::one(field);
        Self::new(field, coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[WElem] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> &WElem {
        &self.coeffs[i]
    }

    /// `(f∘g)_k = sum_{i+j=k} f_i g_j^{q^i}`, truncated at the smaller order.
    pub fn compose(&self, g: &FqLinearSeries) -> Result<FqLinearSeries> {
        let n = self.order().min(g.order());
        let mut out = vec![WElem::zero(&self.field); n + 1];
        for (i, f) in self.coeffs.iter().enumerate().take(n + 1) {
            for (j, gj) in g.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].add(&f.mul(&gj.twist(i as i64)?));
            }
        }
        Ok(Self::new(&self.field, out))
    }

    /// The terms `c_i z^{q^i}`.
    pub fn terms(&self, z: &WElem) -> Result<Vec<WElem>> {
        self.coeffs.iter().enumerate().map(|(i, c)| Ok(c.mul(&z.twist(i as i64)?))).collect()
    }

    pub fn apply(&self, z: &WElem) -> Result<WElem> {
        Ok(self.terms(z)?.iter().fold(WElem::zero(&self.field), |acc, t| acc.add(t)))
    }

    /// The truncated sum, with precision limited by a linear extrapolation of the
    /// valuations of the last two nonzero terms.
    pub fn apply_certified(&self, z: &WElem) -> Result<WElem> {
        let terms = self.terms(z)?;
        let sum = terms.iter().fold(WElem::zero(&self.field), |acc, t| acc.add(t));
        let vals: Vec<(usize, i64)> = terms.iter().enumerate().filter_map(|(i, t)| t.val().map(|v| (i, v))).collect();
        let n = self.order();
        match vals.as_slice() {
            [] => Ok(sum),
            [(_, v)] if z.is_exact_zero() => Ok(sum.truncate_prec(*v)),
            [.., (i1, v1), (i2, v2)] if v2 > v1 => {
                let rate = (v2 - v1) / (i2 - i1) as i64;
                let bound = v2.saturating_add(rate.saturating_mul((n + 1 - i2) as i64));
                Ok(sum.truncate_prec(bound))
            }
            _ => Err(Error::TailNotConverged { degree: n }),
        }
    }

    /// All coefficients but the linear one vanish at the tracked precision.
    pub fn is_identity(&self) -> bool {
        self.coeffs[0].sub(&WElem::one(&self.field)).is_zero() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

/// `exp_E(θ X) = φ_t(exp_E(X))`: `α_n (θ^{q^n} - θ) = sum_j κ_j α_{n-j}^{q^j}`.
pub fn exp_coeffs(e: &DrinfeldModule, n: usize) -> Result<FqLinearSeries> {
    let field = e.field();
    let theta = field.theta();
    let mut a = vec![WElem::one(field)];
    for k in 1..=n {
        let mut s = WElem::zero(field);
        for (j, kj) in e.kappa().iter().enumerate().map(|(j, x)| (j + 1, x)).take_while(|(j, _)| *j <= k) {
            s = s.add(&kj.mul(&a[k - j].twist(j as i64)?));
        }
        a.push(s.div(&theta.twist(k as i64)?.sub(&theta))?);
    }
    Ok(FqLinearSeries::new(field, a))
}

/// `θ log_E(X) = log_E(φ_t(X))`: `Q_n (θ - θ^{q^n}) = sum_j Q_{n-j} κ_j^{q^{n-j}}`.
pub fn log_coeffs(e: &DrinfeldModule, n: usize) -> Result<FqLinearSeries> {
    let field = e.field();
    let theta = field.theta();
    let mut qs = vec![WElem::one(field)];
    for k in 1..=n {
        let mut s = WElem::zero(field);
        for (j, kj) in e.kappa().iter().enumerate().map(|(j, x)| (j + 1, x)).take_while(|(j, _)| *j <= k) {
            s = s.add(&qs[k - j].mul(&kj.twist((k - j) as i64)?));
        }
        qs.push(s.div(&theta.sub(&theta.twist(k as i64)?))?);
    }
    Ok(FqLinearSeries::new(field, qs))
}

/// `R_E ≈ min_n |Q_n|^{-1/(q^n-1)}`, in `log_q` units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusEstimate {
    pub log_q: Ratio<i64>,
    /// The minimum is already attained in the first half of the observed range.
    pub stabilized: bool,
    pub per_order: Vec<Ratio<i64>>,
}

pub fn radius_estimate(e: &DrinfeldModule, n: usize) -> Result<RadiusEstimate> {
    if n < 2 {
        return Err(Error::InvalidConfig("radius estimate needs order at least 2".into()));
    }
    let q = e.field().q() as i64;
    let qs = log_coeffs(e, n)?;
    let mut per_order = Vec::with_capacity(n);
    for k in 1..=n {
        let denom = q.checked_pow(k as u32).ok_or(Error::Overflow)? - 1;
        per_order.push(qs.coeff(k).ord()? / Ratio::from(denom));
    }
    let log_q = *per_order.iter().min().unwrap();
    let half = *per_order[..n.div_ceil(2)].iter().min().unwrap();
    Ok(RadiusEstimate { log_q, stabilized: half == log_q, per_order })
}
