use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base_arith::{parse_theta_rational, Fq};
use crate::deformation::{
    b_series_direct, b_series_recursive, count_compositions, enumerate_p_r_n, frobenius_inverse_phi_j, r_matrix,
};
use crate::difference_eq::{omega_series, psi_rank1, validate_psi, wp_r, wp_inverse, BranchPolicy};
use crate::drinfeld_core::{anderson_exp_check, exp_coeffs, log_coeffs, DrinfeldModule};
use crate::error::{Error, Result};
use crate::extended_log::{
    carlitz_kinfty_branch, exp_from_lattice_product, period_lattice_from_psi, verify_functional_equation,
    verify_inside_radius, verify_inverse_of_exp, Setup,
};
use crate::local_field::{WElem, WorkingField};
use crate::tate_series::{Disc, RationalTate, TateElem};

pub const SUITES: &[&str] = &["identities", "carlitz_e2e", "rank2_smallxi"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<SuiteCheck>,
}

fn check(out: &mut Vec<SuiteCheck>, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
    let (pass, detail) = match f() {
        Ok(x) => x,
        Err(e) => (false, format!("{}: {e}", e.name())),
    };
    out.push(SuiteCheck { name: name.into(), pass, detail });
}

fn module(field: &Arc<WorkingField>, kappas: &[&str]) -> Result<DrinfeldModule> {
    let exprs = kappas.iter().map(|s| parse_theta_rational(s, field.base())).collect::<Result<Vec<_>>>()?;
    DrinfeldModule::from_theta_rationals(field, &exprs)
}

fn identities(out: &mut Vec<SuiteCheck>) {
    check(out, "partition counts", || {
        let p2: Vec<usize> = (0..6).map(|n| enumerate_p_r_n(2, n).len()).collect();
        let p3 = (0..=10).all(|n| enumerate_p_r_n(3, n).len() as u64 == count_compositions(3, n));
        Ok((p2 == [1, 1, 2, 3, 5, 8] && p3, format!("|P_2(n)| = {p2:?}")))
    });
    check(out, "direct and recursive B_n agree", || {
        let f = WorkingField::auto(2, 1, 1, 1, 200)?;
        let mut ok = true;
        for kappas in [&["theta+1"][..], &["theta", "1/theta"], &["1", "theta^2+1", "theta"]] {
            let e = module(&f, kappas)?;
            for n in 0..=7 {
                ok &= b_series_direct(&e, n)?.equals(&b_series_recursive(&e, n)?)?;
            }
        }
        Ok((ok, "r <= 3, n <= 7".into()))
    });
    check(out, "first column of R_m", || {
        let f = WorkingField::auto(2, 1, 1, 1, 200)?;
        let mut ok = true;
        for kappas in [&["theta^4", "(theta+1)^4"][..], &["theta^8", "1", "(theta^2+theta)^8"]] {
            let e = module(&f, kappas)?;
            for m in 0..=6 {
                let rm = r_matrix(&e, m)?;
                for i in 0..e.rank() {
                    let b = if m >= i { b_series_direct(&e, m - i)? } else { RationalTate::zero(&f) };
                    ok &= rm.get(i, 0).equals(&b)?;
                }
            }
        }
        Ok((ok, "m <= 6".into()))
    });
    check(out, "B_n(θ) = Q_n", || {
        let f = WorkingField::auto(3, 1, 1, 1, 200)?;
        let mut ok = true;
        for kappas in [&["1"][..], &["theta", "theta^2+1"]] {
            let e = module(&f, kappas)?;
            let lg = log_coeffs(&e, 8)?;
            for n in 0..=8 {
                let v = b_series_direct(&e, n)?.eval_at_theta()?;
                ok &= v.agrees_with(lg.coeff(n)) && v.rel_prec().map_or(true, |p| p >= 150);
            }
        }
        Ok((ok, "n <= 8".into()))
    });
    check(out, "Carlitz closed forms and Ω", || {
        let f = WorkingField::auto(2, 1, 1, 1, 300)?;
        let c = DrinfeldModule::carlitz(&f);
        let mut ok = true;
        for n in 0..=6 {
            let closed = RationalTate::new(&f, vec![WElem::one(&f)], (1..=n as u32).collect());
            ok &= b_series_direct(&c, n)?.equals(&closed)?;
        }
        let om = omega_series(&f, 30, 50)?;
        ok &= om.gauss_norm(Disc::Unit).log_q == Some(Ratio::new(-2, 1));
        let psi = psi_rank1(&c, 30, 50)?;
        ok &= validate_psi(&c, &psi, 50)?.log_q.is_none();
        Ok((ok, format!("||Ω|| = {}", om.gauss_norm(Disc::Unit).describe())))
    });
    check(out, "exp and log are inverse", || {
        let f = WorkingField::auto(2, 1, 1, 1, 300)?;
        let mut ok = true;
        for kappas in [&["1"][..], &["theta", "theta^2+1"], &["1/theta", "theta"]] {
            let e = module(&f, kappas)?;
            ok &= exp_coeffs(&e, 6)?.compose(&log_coeffs(&e, 6)?)?.is_identity();
            ok &= log_coeffs(&e, 6)?.compose(&exp_coeffs(&e, 6)?)?.is_identity();
        }
        Ok((ok, "through X^(q^6)".into()))
    });
    check(out, "℘ round trip", || {
        let f = WorkingField::auto(2, 1, 2, 1, 200)?;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let size = f.base().size();
        let mut ok = true;
        for _ in 0..10 {
            let coeffs = (0..=6)
                .map(|_| {
                    let lo = rng.gen_range(-6..4);
                    let c = (0..6).map(|_| Fq(rng.gen_range(0..size))).collect();
                    WElem::from_parts(&f, lo, c, None)
                })
                .collect();
            let h = wp_r(&[TateElem::from_coeffs(&f, coeffs, 6, false)])?;
            let a = wp_inverse(&h, BranchPolicy::Least, 40)?;
            ok &= wp_r(&a)?[0].sub(&h[0])?.is_zero();
        }
        Ok((ok, "10 random h".into()))
    });
    check(out, "φ_j(ξ) = Q_j ξ^(q^j)", || {
        let f = WorkingField::auto(2, 1, 1, 1, 200)?;
        let mut ok = true;
        for kappas in [&["1"][..], &["theta^4", "(theta+1)^4"]] {
            let e = module(&f, kappas)?;
            let lg = log_coeffs(&e, 5)?;
            let xi = f.theta_pow(-1)?.add(&f.theta_pow(-3)?);
            for j in 0..=5 {
                ok &= frobenius_inverse_phi_j(&e, &xi, j)?.agrees_with(&lg.coeff(j).mul(&xi.twist(j as i64)?));
            }
        }
        Ok((ok, "j <= 5".into()))
    });
}

fn carlitz_e2e(out: &mut Vec<SuiteCheck>) {
    for p in [2u32, 3] {
        let q = p as i64;
        let Ok(f) = WorkingField::auto(p, 1, 1, q - 1, 400) else { continue };
        let c = DrinfeldModule::carlitz(&f);
        check(out, &format!("q={p}: period π̃"), || {
            let g = WorkingField::auto(p, 1, p - 1, q - 1, 400)?;
            let cg = DrinfeldModule::carlitz(&g);
            let lat = period_lattice_from_psi(&cg, &psi_rank1(&cg, 40, 60)?, 3, 60)?;
            let pi = &lat.generators[0];
            let o = pi.ord()?;
            let small = exp_coeffs(&cg, 12)?.apply_certified(pi)?.is_small(Ratio::from(50));
            Ok((o == Ratio::new(-q, q - 1) && small, format!("ord π̃ = {o}")))
        });
        let setup = Setup::new(c.clone(), 50);
        let th3 = f.theta_pow(3);
        check(out, &format!("q={p}: inside radius, ξ = 1/θ"), || {
            let r = verify_inside_radius(&setup, &f.theta_pow(-1)?)?;
            Ok((r.pass, format!("{:?}", r.checks.iter().map(|c| &c.witness).collect::<Vec<_>>())))
        });
        check(out, &format!("q={p}: functional equation, ξ = θ^3"), || {
            let r = verify_functional_equation(&setup, th3.as_ref().map_err(Clone::clone)?)?;
            Ok((r.pass, format!("tower {:?}", r.tower.extensions)))
        });
        check(out, &format!("q={p}: inverse of exp, ξ = θ^3"), || {
            let r = verify_inverse_of_exp(&setup, th3.as_ref().map_err(Clone::clone)?)?;
            Ok((r.pass, format!("tower {:?}", r.tower.extensions)))
        });
        check(out, &format!("q={p}: k_∞ branch"), || {
            let lg = log_coeffs(&c, 10)?;
            let mut ok = true;
            for a in [f.theta(), f.theta_pow(-2)?.add(&WElem::one(&f))] {
                let k = carlitz_kinfty_branch(&a, 40, 50)?;
                ok &= k.length_one_edges && k.value.sub(&lg.apply_certified(&a)?).is_small(Ratio::from(50));
            }
            Ok((ok, "α ∈ {θ, 1 + 1/θ^2}".into()))
        });
    }
    check(out, "q=2: lattice product", || {
        let f = WorkingField::auto(2, 1, 1, 1, 400)?;
        let c = DrinfeldModule::carlitz(&f);
        let lat = period_lattice_from_psi(&c, &psi_rank1(&c, 40, 60)?, 3, 60)?;
        let exp = exp_coeffs(&c, 12)?;
        let mut ok = true;
        for z in [WElem::one(&f), f.theta_pow(-1)?.add(&f.theta_pow(-2)?)] {
            ok &= exp_from_lattice_product(&lat, &z, 6, 30)?.sub(&exp.apply_certified(&z)?).is_small(Ratio::from(20));
        }
        Ok((ok, "H = 6".into()))
    });
}

fn rank2_smallxi(out: &mut Vec<SuiteCheck>) {
    let run = |out: &mut Vec<SuiteCheck>| -> Result<()> {
        let f = WorkingField::auto(2, 1, 1, 1, 300)?;
        let e = module(&f, &["theta^4", "(theta+1)^4"])?;
        let xi = f.theta_pow(-4)?;
        check(out, "Anderson exponentiation", || {
            let rep = anderson_exp_check(&e, &xi, 10, 40, 50)?;
            Ok((rep.passes(50), format!("residual {}", rep.residual)))
        });
        check(out, "specialized deformation series", || {
            let n = crate::deformation::default_order(&e, &xi, 50);
            let s = crate::deformation::specialize_log(&e, &xi, n, 50)?;
            let oracle = log_coeffs(&e, n)?.apply(&xi)?;
            Ok((s.sub(&oracle).is_small(Ratio::from(50)), format!("N = {n}")))
        });
        check(out, "φ_j(ξ) = Q_j ξ^(q^j)", || {
            let lg = log_coeffs(&e, 5)?;
            let mut ok = true;
            for j in 0..=5 {
                ok &= frobenius_inverse_phi_j(&e, &xi, j)?.agrees_with(&lg.coeff(j).mul(&xi.twist(j as i64)?));
            }
            Ok((ok, "j <= 5".into()))
        });
        Ok(())
    };
    if let Err(e) = run(out) {
        out.push(SuiteCheck { name: "setup".into(), pass: false, detail: e.to_string() });
    }
}

pub fn suite(name: &str) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    match name {
        "identities" => identities(&mut checks),
        "carlitz_e2e" => carlitz_e2e(&mut checks),
        "rank2_smallxi" => rank2_smallxi(&mut checks),
        other => return Err(Error::Parse(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    }
    Ok(SuiteReport { suite: name.into(), pass: checks.iter().all(|c| c.pass), checks })
}
