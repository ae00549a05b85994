use num_rational::Ratio;

use super::*;
use crate::difference_eq::{psi_rank1, BranchPolicy};
use crate::drinfeld_core::{exp_coeffs, DrinfeldModule};
use crate::local_field::{WElem, WorkingField};

#[test]
fn carlitz_period_and_membership() {
    let f = WorkingField::auto(2, 1, 1, 1, 400).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let psi = psi_rank1(&c, 40, 60).unwrap();
    let lat = period_lattice_from_psi(&c, &psi, 3, 60).unwrap();
    let pi = lat.generators[0].clone();
    assert_eq!(pi.ord().unwrap(), Ratio::from(-2));
    let exp = exp_coeffs(&c, 12).unwrap();
    assert!(exp.apply_certified(&pi).unwrap().is_small(Ratio::from(50)));
    let th = f.theta();
    let w = th.mul(&th).add(&WElem::one(&f)).mul(&pi);
    let m = lattice_membership(&w, &lat, 50).unwrap();
    assert!(m.member);
    assert_eq!(m.witness[0].coeffs().len(), 3);
    assert!(!lattice_membership(&pi.div(&th).unwrap(), &lat, 50).unwrap().member);
    assert!(lattice_membership(&WElem::zero(&f), &lat, 50).unwrap().member);
}

#[test]
fn carlitz_ext_log_round_trip() {
    let f = WorkingField::auto(2, 1, 1, 1, 400).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let setup = Setup::new(c, 50);
    let xi = f.theta_pow(3).unwrap();
    let r = verify_inverse_of_exp(&setup, &xi).unwrap();
    assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
    let r = verify_functional_equation(&setup, &xi).unwrap();
    assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
    let small = f.theta_pow(-1).unwrap();
    let mut s2 = setup.clone();
    s2.policies = vec![BranchPolicy::Least, BranchPolicy::Greatest];
    let r = verify_inside_radius(&s2, &small).unwrap();
    assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
}

#[test]
fn kinfty_branch_matches_log_inside_radius() {
    for p in [2u32, 3] {
        let f = WorkingField::auto(p, 1, 1, 1, 400).unwrap();
        let lg = crate::drinfeld_core::log_coeffs(&DrinfeldModule::carlitz(&f), 10).unwrap();
        for a in [WElem::zero(&f), f.theta(), f.theta().add(&WElem::one(&f)), f.theta_pow(-2).unwrap()] {
            let k = carlitz_kinfty_branch(&a, 40, 50).unwrap();
            assert!(k.length_one_edges);
            assert!(k.value.sub(&lg.apply_certified(&a).unwrap()).is_small(Ratio::from(50)));
        }
        let big = carlitz_kinfty_branch(&f.theta_pow(3).unwrap(), 40, 50).unwrap_err();
        assert!(matches!(big, crate::Error::NoIntegralSlope { .. }));
    }
}

#[test]
fn product_formula_and_rank_two_membership() {
    let f = WorkingField::auto(2, 1, 1, 1, 400).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let psi = psi_rank1(&c, 40, 60).unwrap();
    let lat = period_lattice_from_psi(&c, &psi, 3, 60).unwrap();
    let exp = exp_coeffs(&c, 12).unwrap();
    let z = f.theta_pow(-1).unwrap().add(&WElem::one(&f));
    let prod = exp_from_lattice_product(&lat, &z, 6, 30).unwrap();
    assert!(prod.sub(&exp.apply_certified(&z).unwrap()).is_small(Ratio::from(20)));
    assert!(exp_from_lattice_product(&lat, &lat.generators[0], 6, 30).unwrap().is_zero());


    // Generators of ord -2 and -3/2 over a field with e = 2.
    let g = WorkingField::auto(2, 1, 1, 2, 400).unwrap();
    let th = g.theta();
    let psi = psi_rank1(&DrinfeldModule::carlitz(&g), 40, 60).unwrap();
    let l1 = period_lattice_from_psi(&DrinfeldModule::carlitz(&g), &psi, 3, 60).unwrap().generators[0].clone();
    let l2 = WElem::from_parts(&g, -3, vec![crate::base_arith::Fq::ONE, crate::base_arith::Fq::ZERO, crate::base_arith::Fq::ONE], None);
    let two = LatticeBasis::new(vec![l1.clone(), l2.clone()], 50).unwrap();
    let w = th.mul(&l1).add(&th.mul(&th).add(&WElem::one(&g)).mul(&l2));
    let m = lattice_membership(&w, &two, 50).unwrap();
    assert!(m.member);
    let b = g.base();
    assert_eq!(m.witness.iter().map(|x| x.display(b)).collect::<Vec<_>>(), vec!["θ".to_string(), "θ^2 + 1".to_string()]);
    assert!(!lattice_membership(&g.theta_pow(-20).unwrap(), &two, 50).unwrap().member);
}

#[test]
fn ext_le_agrees_with_deformation_series_for_small_input() {
    let f = WorkingField::auto(2, 1, 1, 1, 300).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let psi = psi_rank1(&c, 20, 60).unwrap();
    let xi = f.theta_pow(-1).unwrap();
    let z = crate::tate_series::TateElem::constant(&xi, 20);
    let le = ext_le(&psi, &z, BranchPolicy::Least, 40).unwrap();
    let ds = crate::deformation::deformation_series(&c, &xi, 8, 20).unwrap();
    let diff = le.sub(&ds).unwrap();
    assert!(diff.coeffs().iter().take(10).all(|x| x.is_small(Ratio::from(30))), "{:?}", diff.coeffs()[0]);
    assert!(ext_le(&psi, &crate::tate_series::TateElem::zero(&f, 20), BranchPolicy::Least, 40).unwrap().is_zero());
}
