use serde_json::{json, Value};

use crate::deformation::{
    b_series_direct, b_series_recursive, default_order, deformation_series, enumerate_p_r_n, frobenius_inverse_phi_j,
    specialize_log,
};
use crate::difference_eq::{omega_series, psi_rank1, validate_psi, wp, wp_inverse};
use crate::drinfeld_core::{anderson_exp_check, exp_coeffs, log_coeffs, radius_estimate, FqLinearSeries};
use crate::error::{Error, Result};
use crate::extended_log::{
    carlitz_kinfty_branch, exp_from_lattice_product, lattice_membership, run_in_tower, verify_functional_equation,
    verify_inside_radius, verify_inverse_of_exp, PsiSource, Setup, VerifyReport,
};
use crate::local_field::WElem;
use crate::tate_series::{Disc, TateElem, TateMat};

use super::job::Context;

/// Result payload and, for verification jobs, the verdict.
pub struct Outcome {
    pub result: Value,
    pub verdict: Option<bool>,
}

impl Outcome {
    fn value(result: Value) -> Outcome {
        Outcome { result, verdict: None }
    }
}

pub const OPS: &[&str] = &[
    "field_info",
    "exp_coeffs",
    "log_coeffs",
    "radius_estimate",
    "b_series_direct",
    "b_series_recursive",
    "specialize_log",
    "deformation_series",
    "anderson_exp_check",
    "phi_j",
    "omega",
    "validate_psi",
    "wp_inverse",
    "ext_log",
    "period_lattice",
    "lattice_membership",
    "kinfty_branch",
    "exp_lattice_product",
    "verify_inside_radius",
    "verify_functional_equation",
    "verify_inverse_of_exp",
];

fn elem(x: &WElem) -> Value {
    json!({
        "value": x.to_string(),
        "ord": x.ord().map(|o| o.to_string()).ok(),
        "prec_u": x.prec(),
    })
}

fn series(s: &FqLinearSeries) -> Value {
    Value::Array(s.coeffs().iter().map(elem).collect())
}

fn tate(t: &TateElem) -> Value {
    json!({
        "d": t.degree_bound(),
        "tail": t.has_tail(),
        "coeffs": t.coeffs().iter().map(elem).collect::<Vec<_>>(),
    })
}

impl Context {
    fn xi(&self) -> Result<&WElem> {
        self.xi.as_ref().ok_or_else(|| Error::Parse(format!("--xi is required for {}", self.job.op)))
    }

    fn setup(&self) -> Setup {
        let mut s = Setup::new(self.module.clone(), self.job.prec);
        s.tdeg = self.job.tdeg;
        s.order = self.job.order;
        s.policies = vec![self.job.policy];
        if let Some(p) = &self.psi {
            s.psi = PsiSource::Given(p.clone());
        }
        s
    }

    fn psi(&self) -> Result<TateMat> {
        match &self.psi {
            Some(p) => Ok(p.clone()),
            None => psi_rank1(&self.module, self.job.tdeg, self.job.prec),
        }
    }

    pub fn run(&self) -> Result<Outcome> {
        let job = &self.job;
        let (n, d, prec) = (job.order, job.tdeg, job.prec);
        let e = &self.module;
        let verdict = |r: VerifyReport| -> Result<Outcome> {
            let pass = r.pass;
            Ok(Outcome { result: serde_json::to_value(r).map_err(|e| Error::Parse(e.to_string()))?, verdict: Some(pass) })
        };
        Ok(match job.op.as_str() {
            "field_info" => Outcome::value(json!({ "theta": elem(&self.field.theta()) })),
            "exp_coeffs" => Outcome::value(json!({ "coeffs": series(&exp_coeffs(e, n)?) })),
            "log_coeffs" => Outcome::value(json!({ "coeffs": series(&log_coeffs(e, n)?) })),
            "radius_estimate" => {
                let r = radius_estimate(e, n)?;
                Outcome::value(json!({
                    "log_q": r.log_q.to_string(),
                    "stabilized": r.stabilized,
                    "per_order": r.per_order.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }))
            }
            "b_series_direct" | "b_series_recursive" => {
                let b = if job.op == "b_series_direct" { b_series_direct(e, n)? } else { b_series_recursive(e, n)? };
                Outcome::value(json!({
                    "n": n,
                    "rational_form": b.to_string(),
                    "denominator": b.denominator(),
                    "partitions": enumerate_p_r_n(e.rank(), n).len(),
                }))
            }
            "specialize_log" => {
                let xi = self.xi()?;
                let order = default_order(e, xi, prec);
                let v = specialize_log(e, xi, order, prec)?;
                Outcome::value(json!({ "order": order, "value": elem(&v) }))
            }
            "deformation_series" => Outcome::value(json!({ "series": tate(&deformation_series(e, self.xi()?, n, d)?) })),
            "anderson_exp_check" => {
                let rep = anderson_exp_check(e, self.xi()?, n, d, prec)?;
                let pass = rep.passes(prec);
                Outcome {
                    result: json!({
                        "e0": elem(&rep.e0),
                        "residual": elem(&rep.residual),
                        "expansion_certified": rep.expansion_certified,
                        "pass": pass,
                    }),
                    verdict: Some(pass),
                }
            }
            "phi_j" => {
                let xi = self.xi()?;
                let v = frobenius_inverse_phi_j(e, xi, n)?;
                let q = log_coeffs(e, n)?.coeff(n).mul(&xi.twist(n as i64)?);
                Outcome::value(json!({ "j": n, "value": elem(&v), "q_j_xi": elem(&q), "residual": elem(&v.sub(&q)) }))
            }
            "omega" => {
                let om = omega_series(&self.field, d, prec)?;
                Outcome::value(json!({ "gauss_norm": om.gauss_norm(Disc::Unit).describe(), "series": tate(&om) }))
            }
            "validate_psi" => {
                let g = validate_psi(e, &self.psi()?, prec)?;
                Outcome::value(json!({ "residual_norm": g.describe() }))
            }
            "wp_inverse" => {
                let h = TateElem::constant(self.xi()?, d);
                let f = wp_inverse(std::slice::from_ref(&h), job.policy, prec)?;
                let back = wp(&f[0])?.sub(&h)?;
                Outcome::value(json!({ "solution": tate(&f[0]), "residual_norm": back.gauss_norm(Disc::Unit).describe() }))
            }
            "ext_log" => {
                let setup = self.setup();
                let xi = self.xi()?;
                let (v, field, tower) = run_in_tower(&self.field, setup.max_depth, |k| {
                    let ctx = setup.context(k)?;
                    let x = crate::local_field::tower::transport(xi, k)?;
                    let v = ctx.ext_log(&x, job.policy)?;
                    Ok(json!({
                        "representative": elem(&v.representative),
                        "branch": v.branch.name(),
                        "lattice": v.lattice.describe(),
                    }))
                })?;
                Outcome::value(json!({ "coset": v, "working_field": field.describe(), "tower": tower }))
            }
            "period_lattice" => {
                let lat = crate::extended_log::period_lattice_from_psi(e, &self.psi()?, e.rank() + 2, prec)?;
                let exp = exp_coeffs(e, n)?;
                let images: Vec<Value> =
                    lat.generators.iter().map(|g| exp.apply_certified(g).map(|x| elem(&x))).collect::<Result<_>>()?;
                Outcome::value(json!({ "lattice": lat.describe(), "exp_of_generators": images }))
            }
            "lattice_membership" => {
                let lat = crate::extended_log::period_lattice_from_psi(e, &self.psi()?, e.rank() + 2, prec)?;
                let m = lattice_membership(self.xi()?, &lat, prec)?;
                Outcome { result: json!({ "membership": m.record(), "lattice": lat.describe() }), verdict: Some(m.member) }
            }
            "kinfty_branch" => {
                let xi = self.xi()?;
                let k = carlitz_kinfty_branch(xi, d, prec)?;
                Outcome::value(json!({
                    "value": elem(&k.value),
                    "length_one_edges": k.length_one_edges,
                    "log_series": log_coeffs(e, n)?.apply_certified(xi).ok().map(|l| elem(&l)),
                }))
            }
            "exp_lattice_product" => {
                let lat = crate::extended_log::period_lattice_from_psi(e, &self.psi()?, e.rank() + 2, prec + 10)?;
                let z = self.xi()?;
                let a = exp_from_lattice_product(&lat, z, n, prec)?;
                let b = exp_coeffs(e, n)?.apply_certified(z)?;
                Outcome::value(json!({ "product": elem(&a), "series": elem(&b), "difference": elem(&a.sub(&b)) }))
            }
            "verify_inside_radius" => verdict(verify_inside_radius(&self.setup(), self.xi()?)?)?,
            "verify_functional_equation" => verdict(verify_functional_equation(&self.setup(), self.xi()?)?)?,
            "verify_inverse_of_exp" => verdict(verify_inverse_of_exp(&self.setup(), self.xi()?)?)?,
            other => return Err(Error::Parse(format!("unknown op {other:?}; known: {}", OPS.join(", ")))),
        })
    }
}
