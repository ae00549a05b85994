use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::base_arith::{parse_theta_rational, CoeffPoly, Fq, Var};
use crate::local_field::{WElem, WorkingField};
use crate::tate_series::RatMat;

fn module(field: &std::sync::Arc<WorkingField>, kappas: &[&str]) -> DrinfeldModule {
    let exprs: Vec<_> = kappas.iter().map(|s| parse_theta_rational(s, field.base()).unwrap()).collect();
    DrinfeldModule::from_theta_rationals(field, &exprs).unwrap()
}

#[test]
fn phi_of_small_cases() {
    let f = WorkingField::auto(3, 1, 1, 1, 60).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let t = CoeffPoly::monomial(Var::T, Fq::ONE, 1);
    let phi_t = phi_of(&c, &t).unwrap();
    assert_eq!(phi_t.degree(), Some(1));
    assert!(phi_t.coeffs()[0].agrees_with(&f.theta()));
    let t2 = phi_of(&c, &CoeffPoly::monomial(Var::T, Fq::ONE, 2)).unwrap();
    let th = f.theta();
    assert!(t2.coeffs()[0].agrees_with(&th.mul(&th)));
    assert!(t2.coeffs()[1].agrees_with(&th.twist(1).unwrap().add(&th)));
    assert!(t2.coeffs()[2].agrees_with(&WElem::one(&f)));
    assert_eq!(phi_of(&c, &CoeffPoly::one(Var::T)).unwrap().degree(), Some(0));
    let one = WElem::one(&f);
    assert!(apply_skew(&phi_t, &one).unwrap().agrees_with(&th.add(&one)));
    assert!(apply_skew(&phi_t, &WElem::zero(&f)).unwrap().is_exact_zero());
}

#[test]
fn phi_of_is_multiplicative() {
    let f = WorkingField::auto(2, 1, 1, 1, 60).unwrap();
    let e = module(&f, &["theta^4", "1"]);
    let bf = f.base();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let a = CoeffPoly::new(Var::T, (0..4).map(|_| Fq(rng.gen_range(0..2))).collect());
        let b = CoeffPoly::new(Var::T, (0..4).map(|_| Fq(rng.gen_range(0..2))).collect());
        let lhs = phi_of(&e, &a.mul(&b, bf).unwrap()).unwrap();
        let rhs = phi_of(&e, &a).unwrap().mul(&phi_of(&e, &b).unwrap()).unwrap();
        assert_eq!(lhs.degree(), rhs.degree());
        for (x, y) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            assert!(x.agrees_with(y));
        }
    }
}

#[test]
fn exp_log_are_inverse() {
    for (p, kappas) in [(2u32, vec!["1"]), (2, vec!["theta^4", "1"]), (3, vec!["1", "theta^9"])] {
        let f = WorkingField::auto(p, 1, 1, 1, 120).unwrap();
        let e = module(&f, &kappas);
        let ex = exp_coeffs(&e, 6).unwrap();
        let lg = log_coeffs(&e, 6).unwrap();
        assert!(lg.compose(&ex).unwrap().is_identity());
        assert!(ex.compose(&lg).unwrap().is_identity());
    }
    let f = WorkingField::auto(3, 1, 1, 1, 60).unwrap();
    let th = f.theta();
    let q1 = log_coeffs(&DrinfeldModule::carlitz(&f), 1).unwrap().coeff(1).clone();
    assert!(q1.agrees_with(&th.sub(&th.twist(1).unwrap()).inv().unwrap()));
}

#[test]
fn radius_estimates() {
    let f = WorkingField::auto(2, 1, 1, 1, 60).unwrap();
    let r = radius_estimate(&DrinfeldModule::carlitz(&f), 6).unwrap();
    assert_eq!(r.log_q, Ratio::from(2));
    assert!(r.stabilized);
    let f3 = WorkingField::auto(3, 1, 1, 2, 60).unwrap();
    assert_eq!(radius_estimate(&DrinfeldModule::carlitz(&f3), 5).unwrap().log_q, Ratio::new(3, 2));
    // θ + θ^2 τ: |κ|^{-1/(q-1)} q^{q/(q-1)} = q^0
    assert_eq!(radius_estimate(&module(&f, &["theta^2"]), 6).unwrap().log_q, Ratio::from(0));
}

#[test]
fn frame_matrix_and_inverse() {
    let f = WorkingField::auto(2, 1, 1, 1, 60).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let phi = phi_e_matrix(&c, 4).unwrap();
    assert!(phi.get(0, 0).coeff(0).agrees_with(&f.theta().neg()));
    assert!(phi.get(0, 0).coeff(1).agrees_with(&WElem::one(&f)));
    for kappas in [vec!["theta^4", "theta^8"], vec!["1", "theta^4", "theta^8"]] {
        let e = module(&f, &kappas);
        let prod = phi_e_matrix_rational(&e).unwrap().mul(&phi_e_inverse(&e).unwrap()).unwrap();
        assert!(prod.equals(&RatMat::identity(&f, e.rank())).unwrap());
    }
    let bad = module(&f, &["theta", "1"]);
    assert!(matches!(phi_e_inverse(&bad), Err(crate::Error::NotAPower { index: Some(1), .. })));
}

#[test]
fn sigma_maps() {
    let f = WorkingField::auto(2, 1, 1, 16, 200).unwrap();
    let e = module(&f, &["1", "1"]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..4 {
        let coeffs = (0..5)
            .map(|_| {
                let k = rng.gen_range(-2..3);
                f.theta_pow(k).unwrap().add(&WElem::from_int(&f, rng.gen_range(0..2)))
            })
            .collect();
        let m = SigmaPoly::new(&f, coeffs).unwrap();
        let tm = m.t_action(&e).unwrap();
        let lhs = tm.epsilon1().unwrap();
        let rhs = e.phi_t().apply(&m.epsilon1().unwrap()).unwrap();
        assert!(lhs.agrees_with(&rhs));
        assert!(tm.epsilon0().agrees_with(&f.theta().mul(&m.epsilon0())));
        let minus_one = SigmaPoly::new(&f, vec![WElem::from_int(&f, -1), WElem::one(&f)]).unwrap();
        assert!(minus_one.mul(&m).unwrap().epsilon1().unwrap().is_zero());
    }
}

#[test]
fn anderson_carlitz() {
    let f = WorkingField::auto(2, 1, 1, 1, 200).unwrap();
    let c = DrinfeldModule::carlitz(&f);
    let xi = f.theta_pow(-1).unwrap();
    let rep = anderson_exp_check(&c, &xi, 10, 40, 50).unwrap();
    assert!(rep.passes(50), "{}", rep.residual);
    let zero = anderson_exp_check(&c, &WElem::zero(&f), 10, 40, 50).unwrap();
    assert!(zero.residual.is_zero());
}
