use std::sync::Arc;

use num_rational::Ratio;

use drinfeld_log::deformation::{default_order, specialize_log};
use drinfeld_log::difference_eq::{psi_rank1, wp_r, BranchPolicy};
use drinfeld_log::drinfeld_core::DrinfeldModule;
use drinfeld_log::extended_log::{
    ext_le, lattice_membership, period_lattice_from_psi, run_in_tower, LogContext, Membership, Setup,
};
use drinfeld_log::local_field::tower::transport;
use drinfeld_log::local_field::{WElem, WorkingField};
use drinfeld_log::tate_series::TateElem;

const PREC: i64 = 50;

fn carlitz_setup(p: u32) -> (Arc<WorkingField>, Setup) {
    let f = WorkingField::auto(p, 1, 1, p as i64 - 1, 400).unwrap();
    let setup = Setup::new(DrinfeldModule::carlitz(&f), PREC);
    (f, setup)
}

/// Runs `check` on the log context over whatever extension the inputs need.
fn in_tower(setup: &Setup, xs: &[WElem], check: impl Fn(&LogContext, &[WElem]) -> drinfeld_log::Result<Membership>) -> Membership {
    let (m, _, _) = run_in_tower(setup.module.field(), 4, |k| {
        let ctx = setup.context(k)?;
        let moved = xs.iter().map(|x| transport(x, k)).collect::<drinfeld_log::Result<Vec<_>>>()?;
        check(&ctx, &moved)
    })
    .unwrap();
    m
}

#[test]
fn branches_differ_by_periods() {
    for p in [2u32, 3] {
        let (f, setup) = carlitz_setup(p);
        let xi = f.theta_pow(3).unwrap().add(&f.theta_pow(1).unwrap());
        for other in [BranchPolicy::Greatest, BranchPolicy::KInfty] {
            let m = in_tower(&setup, &[xi.clone()], |ctx, x| {
                let a = ctx.ext_log(&x[0], BranchPolicy::Least)?.representative;
                let b = ctx.ext_log(&x[0], other)?.representative;
                lattice_membership(&a.sub(&b), &ctx.lattice, PREC)
            });
            assert!(m.member, "q={p} {other:?}");
        }
    }
}

#[test]
fn fq_linearity_modulo_periods() {
    let (f, setup) = carlitz_setup(2);
    let x1 = f.theta_pow(3).unwrap();
    let x2 = f.theta_pow(2).unwrap().add(&f.theta_pow(-1).unwrap());
    let m = in_tower(&setup, &[x1, x2], |ctx, x| {
        let l = |y: &WElem| ctx.ext_log(y, BranchPolicy::Least).map(|v| v.representative);
        let d = l(&x[0].add(&x[1]))?.sub(&l(&x[0])?).sub(&l(&x[1])?);
        lattice_membership(&d, &ctx.lattice, PREC)
    });
    assert!(m.member);
}

#[test]
fn local_analyticity() {
    let (f, setup) = carlitz_setup(2);
    let x0 = f.theta_pow(3).unwrap();
    let h = f.theta_pow(-1).unwrap().add(&f.theta_pow(-2).unwrap());
    let m = in_tower(&setup, &[x0.clone(), x0.add(&h), h], |ctx, x| {
        let l = |y: &WElem| ctx.ext_log(y, BranchPolicy::Least).map(|v| v.representative);
        let n = default_order(&ctx.module, &x[2], PREC);
        let series = specialize_log(&ctx.module, &x[2], n, PREC + 10)?;
        lattice_membership(&l(&x[1])?.sub(&l(&x[0])?).sub(&series), &ctx.lattice, PREC)
    });
    assert!(m.member);
}

#[test]
fn zero_maps_to_zero() {
    let (f, setup) = carlitz_setup(2);
    let ctx = setup.context(&f).unwrap();
    let v = ctx.ext_log(&WElem::zero(&f), BranchPolicy::Least).unwrap();
    assert!(v.representative.is_zero());
    let m = lattice_membership(&v.representative, &ctx.lattice, PREC).unwrap();
    assert!(m.member && m.witness.iter().all(|w| w.is_zero()));
}

#[test]
fn theta_times_period_is_image_of_t() {
    // q = 3, where the expansion of Ψ^{-1} decays fast enough to evaluate at θ.
    let f = WorkingField::auto(3, 1, 2, 2, 400).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let psi = psi_rank1(&c, 40, PREC + 10).unwrap();
    let lat = period_lattice_from_psi(&c, &psi, 3, PREC + 10).unwrap();
    let inv = psi.inverse().unwrap();
    let image = inv.get(0, 0).shift_t().eval_at_theta(PREC + 5).unwrap();
    let w = image.sub(&lat.generators[0].mul(&f.theta()));
    assert!(lattice_membership(&w, &lat, PREC).unwrap().member);
    assert!(lattice_membership(&image, &lat, PREC).unwrap().member);
    let pi = &lat.generators[0];
    assert!(!lattice_membership(&pi.div(&f.theta()).unwrap(), &lat, PREC).unwrap().member);
}

#[test]
fn ext_le_outside_contraction_solves_wp() {
    let (f, _) = carlitz_setup(2);
    let c = DrinfeldModule::carlitz(&f);
    let z0 = f.theta_pow(3).unwrap();
    let (worst, _, tower) = run_in_tower(&f, 4, |k| {
        let ck = c.in_field(k)?;
        let psi = psi_rank1(&ck, 20, PREC)?;
        let z = TateElem::constant(&transport(&z0, k)?, 20);
        let le = ext_le(&psi, &z, BranchPolicy::Least, 30)?;
        // ℘(L_E(Z) Ψ) = Z Ψ.
        let lhs = wp_r(&[le.mul(psi.get(0, 0))?])?;
        let d = lhs[0].sub(&z.mul(psi.get(0, 0))?)?;
        Ok(d.coeffs().iter().all(|x| x.is_small(Ratio::from(25))))
    })
    .unwrap();
    assert!(worst);
    assert_eq!(tower.extensions.len(), 1);
}
