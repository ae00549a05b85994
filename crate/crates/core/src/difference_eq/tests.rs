use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::base_arith::Fq;
use crate::drinfeld_core::DrinfeldModule;
use crate::local_field::{WElem, WorkingField};
use crate::tate_series::{Disc, TateElem, TateMat};

fn random_elem(f: &std::sync::Arc<WorkingField>, rng: &mut ChaCha8Rng, lo: i64, len: usize) -> WElem {
    let size = f.base().size() as u32;
    let coeffs = (0..len).map(|_| Fq(rng.gen_range(0..size))).collect();
    WElem::from_parts(f, lo, coeffs, None)
}

fn random_tate(f: &std::sync::Arc<WorkingField>, rng: &mut ChaCha8Rng, lo: i64, d: usize) -> TateElem {
    let coeffs = (0..=d).map(|_| random_elem(f, rng, lo, 6)).collect();
    TateElem::from_coeffs(f, coeffs, d, false)
}

#[test]
fn wp_basics() {
    let f = WorkingField::auto(3, 1, 2, 1, 60).unwrap();
    let fq_poly = TateElem::from_coeffs(&f, vec![WElem::from_int(&f, 1), WElem::from_int(&f, 2)], 3, false);
    assert!(wp(&fq_poly).unwrap().is_zero());
    let c = f.theta_pow(2).unwrap().add(&WElem::one(&f));
    let got = wp(&TateElem::constant(&c, 2)).unwrap();
    assert!(got.coeff(0).agrees_with(&c.sub(&c.twist(1).unwrap())));
}

#[test]
fn newton_polygons() {
    let f = WorkingField::auto(2, 1, 1, 1, 60).unwrap();
    // Y^2 + θ^2 Y - θ^{-1}
    let coeffs = vec![f.theta_pow(-1).unwrap().neg(), f.theta_pow(2).unwrap(), WElem::one(&f)];
    let np = newton_polygon(&coeffs).unwrap();
    assert_eq!(np.points, vec![(0, 1), (1, -2), (2, 0)]);
    assert_eq!(np.edges.len(), 2);
    assert_eq!(np.edges[0].slope, Ratio::from(-3));
    assert!(np.length_one_integral().is_some());
    assert_eq!(np.degree(), 2);
    let lin = newton_polygon(&[WElem::one(&f), WElem::one(&f)]).unwrap();
    assert_eq!(lin.edges.len(), 1);
    assert!(newton_polygon(&[WElem::zero(&f)]).is_err());
}

#[test]
fn artin_schreier_examples() {
    let f = WorkingField::auto(3, 1, 1, 1, 80).unwrap();
    let th = f.theta();
    let thq = th.twist(1).unwrap();
    let zero = solve_artin_schreier(&thq, &WElem::zero(&f), BranchPolicy::Least, 40).unwrap();
    assert!(zero.is_zero());
    let minus_one = WElem::from_int(&f, -1);
    let c = th.sub(&thq).neg();
    // Y^q - Y = θ^q - θ has the roots θ + F_q.
    for policy in [BranchPolicy::Least, BranchPolicy::Greatest] {
        let y = solve_artin_schreier(&minus_one, &c, policy, 40).unwrap();
        let diff = y.sub(&th);
        assert!(diff.is_zero() || diff.sub(&WElem::from_int(&f, 1)).is_zero() || diff.sub(&WElem::from_int(&f, 2)).is_zero());
    }
    // A pole of order prime to p needs ramification.
    let err = solve_artin_schreier(&minus_one, &th, BranchPolicy::Least, 40).unwrap_err();
    assert!(matches!(err, crate::Error::NeedsRamification(_)));
}

#[test]
fn artin_schreier_residuals() {
    let f = WorkingField::auto(2, 2, 2, 2, 120).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let lo = rng.gen_range(-6..6);
        let a = random_elem(&f, &mut rng, lo, 5);
        if a.is_zero() {
            continue;
        }
        let lo = rng.gen_range(1..8);
        let c = random_elem(&f, &mut rng, lo, 8);
        match solve_artin_schreier(&a, &c, BranchPolicy::Least, 30) {
            Ok(y) => {
                let resid = y.twist(1).unwrap().add(&a.mul(&y)).sub(&c);
                assert!(resid.is_small(Ratio::from(30)), "{resid}");
            }
            Err(e) => assert!(matches!(
                e,
                crate::Error::NoIntegralSlope { .. } | crate::Error::ResidueUnsolvable
            )),
        }
    }
}

#[test]
fn wp_inverse_round_trip_and_policies() {
    let f = WorkingField::auto(2, 1, 2, 1, 120).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let f0 = random_tate(&f, &mut rng, -5, 4);
        let h = wp_r(&[f0]).unwrap();
        let a = wp_inverse(&h, BranchPolicy::Least, 40).unwrap();
        let b = wp_inverse(&h, BranchPolicy::Greatest, 40).unwrap();
        assert!(wp_r(&a).unwrap()[0].sub(&h[0]).unwrap().is_zero());
        let diff = a[0].sub(&b[0]).unwrap();
        assert!(diff.coeffs().iter().all(|c| c.coeffs_in_fq()));
    }
}

#[test]
fn l0_matches_wp_inverse_on_small_inputs() {
    let f = WorkingField::auto(3, 1, 1, 1, 120).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h = vec![random_tate(&f, &mut rng, 1, 3), random_tate(&f, &mut rng, 2, 3)];
    let l0 = l0_series(&h, 40).unwrap();
    assert!(wp_r(&l0).unwrap().iter().zip(&h).all(|(x, y)| x.sub(y).unwrap().is_zero()));
    let inv = wp_inverse(&h, BranchPolicy::Least, 40).unwrap();
    for (x, y) in inv.iter().zip(&l0) {
        assert!(x.sub(y).unwrap().coeffs().iter().all(|c| c.coeffs_in_fq()));
    }
    let big = vec![TateElem::constant(&f.theta(), 3)];
    assert_eq!(l0_series(&big, 10).unwrap_err(), crate::Error::NormNotContracting);
    assert!(l0_series(&[TateElem::zero(&f, 3)], 10).unwrap()[0].is_zero());
}

#[test]
fn omega_properties() {
    for p in [2u32, 3] {
        let q = p as i64;
        let f = WorkingField::auto(p, 1, 2, q - 1, 200).unwrap();
        let om = omega_series(&f, 30, 50).unwrap();
        assert_eq!(om.gauss_norm(Disc::Unit).log_q, Some(Ratio::new(-q, q - 1)));
        let thq = f.theta().twist(1).unwrap();
        for i in 1..=30 {
            let (ai, prev) = (om.coeff(i), om.coeff(i - 1));
            let r = ai.add(&thq.mul(&ai.twist(1).unwrap())).sub(&prev.twist(1).unwrap());
            assert!(r.is_zero());
            assert!(ai.is_zero() || ai.ord().unwrap() >= om.coeff(0).ord().unwrap());
        }
        let carlitz = DrinfeldModule::carlitz(&f);
        let psi = psi_rank1(&carlitz, 30, 50).unwrap();
        assert_eq!(validate_psi(&carlitz, &psi, 50).unwrap().log_q, None);
        let bumped = om.add(&TateElem::constant(&f.theta_pow(-2 * q).unwrap(), 30)).unwrap();
        let bad = validate_psi(&carlitz, &TateMat::new(1, 1, vec![bumped]).unwrap(), 50).unwrap();
        assert!(bad.log_q.unwrap() > Ratio::from(-50));
    }
}

#[test]
fn psi_for_twisted_rank_one() {
    let f = WorkingField::auto(3, 1, 2, 2, 200).unwrap();
    let e = DrinfeldModule::new(vec![f.theta_pow(6).unwrap()]).unwrap();
    let psi = psi_rank1(&e, 20, 50).unwrap();
    assert_eq!(validate_psi(&e, &psi, 50).unwrap().log_q, None);
}
