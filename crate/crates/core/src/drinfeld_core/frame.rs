use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::local_field::{WElem, WorkingField};
use crate::tate_series::{RatMat, RationalTate, TateElem, TateMat};

use super::module::DrinfeldModule;
use super::series::exp_coeffs;

pub const SIGMA_DEGREE_CAP: usize = 16;

fn kappa_untwisted(e: &DrinfeldModule, j: usize, depth: i64) -> Result<WElem> {
    e.kappa()[j - 1].twist(-depth).map_err(|err| match err {
        Error::NotAPower { depth, .. } => Error::NotAPower { depth, index: Some(j) },
        other => other,
    })
}

/// The companion matrix of `σ` on the basis `1, σ, ..., σ^{r-1}`.
pub fn phi_e_matrix_rational(e: &DrinfeldModule) -> Result<RatMat> {
    let r = e.rank();
    let field = e.field();
    let kr = kappa_untwisted(e, r, r as i64)?;
    let kr_inv = kr.inv()?;
    let mut entries = vec![RationalTate::zero(field); r * r];
    for i in 0..r - 1 {
        entries[i * r + i + 1] = RationalTate::one(field);
    }
    let last = (r - 1) * r;
    entries[last] = RationalTate::t_minus_theta_qk(field, 0)?.scale(&kr_inv);
    for j in 1..r {
        let kj = kappa_untwisted(e, j, j as i64)?;
        entries[last + j] = RationalTate::constant(&kj.mul(&kr_inv).neg());
    }
    RatMat::new(r, entries)
}

pub fn phi_e_matrix(e: &DrinfeldModule, d: usize) -> Result<TateMat> {
    phi_e_matrix_rational(e)?.expand(d)
}

/// `Φ_E^{-1} = (t-θ)^{-1} [κ_1^{(-1)} ... κ_r^{(-r)}; (t-θ) on the subdiagonal]`.
pub fn phi_e_inverse(e: &DrinfeldModule) -> Result<RatMat> {
    let r = e.rank();
    let field = e.field();
    let mut entries = vec![RationalTate::zero(field); r * r];
    for j in 1..=r {
        entries[j - 1] = RationalTate::over_factor(&kappa_untwisted(e, j, j as i64)?, 0);
    }
    for i in 1..r {
        entries[i * r + i - 1] = RationalTate::one(field);
    }
    RatMat::new(r, entries)
}

/// `R_m = (Φ_E^{-1})^{(m)} ... (Φ_E^{-1})^{(1)}` for `m = 0..=n`.
pub fn r_matrices(e: &DrinfeldModule, n: usize) -> Result<Vec<RatMat>> {
    let inv = phi_e_inverse(e)?;
    let mut out = vec![RatMat::identity(e.field(), e.rank())];
    for m in 1..=n {
        let next = inv.twist(m as i64)?.mul(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `sum α_i σ^i` with `σ f = f^{(-1)} σ`.
#[derive(Clone, Debug)]
pub struct SigmaPoly {
    field: Arc<WorkingField>,
    coeffs: Vec<WElem>,
}

impl SigmaPoly {
    pub fn new(field: &Arc<WorkingField>, mut coeffs: Vec<WElem>) -> Result<SigmaPoly> {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        if coeffs.len() > SIGMA_DEGREE_CAP + 1 {
            return Err(Error::DimensionMismatch(format!("σ-degree above {SIGMA_DEGREE_CAP}")));
        }
        Ok(SigmaPoly { field: field.clone(), coeffs })
    }

    pub fn sigma(field: &Arc<WorkingField>) -> SigmaPoly {
        SigmaPoly { field: field.clone(), coeffs: vec![WElem::zero(field), WElem::one(field)] }
    }

    pub fn coeffs(&self) -> &[WElem] {
        &self.coeffs
    }

    pub fn add(&self, o: &SigmaPoly) -> Result<SigmaPoly> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = WElem::zero(&self.field);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero).add(o.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn mul(&self, o: &SigmaPoly) -> Result<SigmaPoly> {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(&self.field, Vec::new());
        }
        let mut out = vec![WElem::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if !a.is_exact_zero() && !b.is_exact_zero() {
                    out[i + j] = out[i + j].add(&a.mul(&b.twist(-(i as i64))?));
                }
            }
        }
        Self::new(&self.field, out)
    }

    pub fn epsilon0(&self) -> WElem {
        self.coeffs.first().cloned().unwrap_or_else(|| WElem::zero(&self.field))
    }

    /// `sum α_i^{(i)}`.
    pub fn epsilon1(&self) -> Result<WElem> {
        let mut acc = WElem::zero(&self.field);
        for (i, a) in self.coeffs.iter().enumerate() {
            acc = acc.add(&a.twist(i as i64)?);
        }
        Ok(acc)
    }

    /// `t·m = m φ_t^⋆` with `φ_t^⋆ = θ + κ_1^{(-1)} σ + ... + κ_r^{(-r)} σ^r`.
    pub fn t_action(&self, e: &DrinfeldModule) -> Result<SigmaPoly> {
        let mut star = vec![e.field().theta()];
        for j in 1..=e.rank() {
            star.push(kappa_untwisted(e, j, j as i64)?);
        }
        self.mul(&Self::new(e.field(), star)?)
    }
}

/// `𝓔_0`: the first entry evaluated at `t = θ`.
pub fn script_e0(a: &[TateElem], target: i64) -> Result<WElem> {
    a.first().ok_or(Error::DimensionMismatch("empty vector".into()))?.eval_at_theta(target)
}

#[derive(Clone, Debug)]
pub struct AndersonReport {
    /// `𝓔_0(g_ξ + h_ξ)`.
    pub e0: WElem,
    /// `exp_E(𝓔_0(g_ξ + h_ξ)) - ξ`.
    pub residual: WElem,
    /// Whether the first entry of `g_ξ`, expanded to `t`-degree `D`, certifies the target
    /// by its own tail estimate.
    pub expansion_certified: bool,
}

impl AndersonReport {
    pub fn passes(&self, target: i64) -> bool {
        self.residual.is_small(Ratio::from(target))
    }
}

/// Anderson exponentiation: `exp_E(𝓔_0(g_ξ + h_ξ)) = ξ` with
/// `g_ξ = sum_{1<=i<=N} (ξ^{q^i}, 0, ..., 0) R_i`, `h_ξ = (ξ, 0, ..., 0)`.
pub fn anderson_exp_check(e: &DrinfeldModule, xi: &WElem, n: usize, d: usize, target: i64) -> Result<AndersonReport> {
    let rs = r_matrices(e, n)?;
    let mut first = RationalTate::constant(xi);
    let mut vals = Vec::new();
    for (i, r) in rs.iter().enumerate().skip(1) {
        let term = r.get(0, 0).scale(&xi.twist(i as i64)?);
        vals.push(term.eval_at_theta()?.val());
        first = first.add(&term)?;
    }
    let mut e0 = first.eval_at_theta()?;
    // Truncation in the number of terms, by linear extrapolation of term valuations.
    let known: Vec<i64> = vals.iter().flatten().copied().collect();
    if let [.., v1, v2] = known.as_slice() {
        if v2 <= v1 {
            return Err(Error::TailNotConverged { degree: n });
        }
        e0 = e0.truncate_prec(v2 + (v2 - v1));
    }
    let expansion_certified = first.expand(d)?.eval_at_theta(target).is_ok();
    let exp = exp_coeffs(e, n)?;
    let residual = exp.apply_certified(&e0)?.sub(xi);
    Ok(AndersonReport { e0, residual, expansion_certified })
}
