use std::sync::{Arc, OnceLock};

use num_rational::Ratio;
use proptest::prelude::*;

use drinfeld_log::base_arith::{CoeffPoly, Fq, Var};
use drinfeld_log::difference_eq::{solve_artin_schreier, wp_inverse, wp_r, BranchPolicy};
use drinfeld_log::drinfeld_core::{log_coeffs, phi_of, DrinfeldModule, SkewPoly};
use drinfeld_log::local_field::{WElem, WorkingField};
use drinfeld_log::tate_series::TateElem;

/// `F_16((u))` over `F_4`, `θ = u^{-1}`.
fn field() -> &'static Arc<WorkingField> {
    static F: OnceLock<Arc<WorkingField>> = OnceLock::new();
    F.get_or_init(|| WorkingField::auto(2, 2, 2, 1, 120).unwrap())
}

fn elem(lo: i64, digits: Vec<u32>) -> WElem {
    WElem::from_parts(field(), lo, digits.into_iter().map(Fq).collect(), None)
}

fn arb_elem() -> impl Strategy<Value = WElem> {
    (-4i64..4, prop::collection::vec(0u32..16, 1..6)).prop_map(|(lo, d)| elem(lo, d))
}

fn arb_fq() -> impl Strategy<Value = Fq> {
    (0u32..16).prop_map(Fq)
}

fn arb_poly() -> impl Strategy<Value = CoeffPoly> {
    let fq = field().base().fq_elements();
    prop::collection::vec(0usize..4, 0..5).prop_map(move |ix| CoeffPoly::new(Var::T, ix.iter().map(|&i| fq[i]).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_field_axioms(a in arb_fq(), b in arb_fq(), c in arb_fq()) {
        let f = field().base();
        prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
        prop_assert_eq!(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
        prop_assert_eq!(f.frob(f.frob(a, 1), -1), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
        }
    }

    #[test]
    fn laurent_ring_laws(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        let lhs = a.add(&b).mul(&c);
        prop_assert!(lhs.sub(&a.mul(&c).add(&b.mul(&c))).is_zero());
        prop_assert!(a.mul(&b).twist(1).unwrap().sub(&a.twist(1).unwrap().mul(&b.twist(1).unwrap())).is_zero());
        prop_assert!(a.twist(2).unwrap().twist(-2).unwrap().sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).sub(&WElem::one(field())).is_zero());
        }
    }

    #[test]
    fn polynomial_division(a in arb_poly(), d in arb_poly()) {
        prop_assume!(!d.is_zero());
        let f = field().base();
        let (q, r) = a.divrem(&d, f).unwrap();
        prop_assert_eq!(q.mul(&d, f).unwrap().add(&r, f).unwrap(), a);
        prop_assert!(r.degree().map_or(true, |x| x < d.degree().unwrap()));
    }

    #[test]
    fn skew_composition_is_substitution(x in prop::collection::vec(arb_elem(), 1..3), y in prop::collection::vec(arb_elem(), 1..3), z in arb_elem()) {
        let (fx, fy) = (SkewPoly::new(field(), x), SkewPoly::new(field(), y));
        let lhs = fx.mul(&fy).unwrap().apply(&z).unwrap();
        let rhs = fx.apply(&fy.apply(&z).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn phi_is_a_ring_map(a in arb_poly(), b in arb_poly(), z in arb_elem()) {
        let f = field();
        let e = DrinfeldModule::new(vec![f.theta(), WElem::one(f)]).unwrap();
        let ab = a.mul(&b, f.base()).unwrap();
        let lhs = phi_of(&e, &ab).unwrap().apply(&z).unwrap();
        let rhs = phi_of(&e, &a).unwrap().apply(&phi_of(&e, &b).unwrap().apply(&z).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn wp_inverse_is_a_section(coeffs in prop::collection::vec(arb_elem(), 4)) {
        let h = wp_r(&[TateElem::from_coeffs(field(), coeffs, 3, false)]).unwrap();
        for policy in [BranchPolicy::Least, BranchPolicy::Greatest, BranchPolicy::KInfty] {
            let a = wp_inverse(&h, policy, 30).unwrap();
            prop_assert!(wp_r(&a).unwrap()[0].sub(&h[0]).unwrap().is_zero());
        }
    }

    #[test]
    fn artin_schreier_residual(a in arb_elem(), c in arb_elem()) {
        prop_assume!(!a.is_zero());
        if let Ok(y) = solve_artin_schreier(&a, &c, BranchPolicy::Least, 20) {
            let r = y.twist(1).unwrap().add(&a.mul(&y)).sub(&c);
            prop_assert!(r.is_small(Ratio::from(20)));
        }
    }

    #[test]
    fn log_series_is_fq_linear(x in arb_elem(), y in arb_elem(), c in 0usize..4) {
        let f = field();
        let e = DrinfeldModule::carlitz(f);
        let lg = log_coeffs(&e, 6).unwrap();
        let k = f.base().fq_elements()[c];
        let small = |w: &WElem| w.mul(&f.theta_pow(-6).unwrap());
        let (x, y) = (small(&x), small(&y));
        let lhs = lg.apply(&x.scale(k).add(&y)).unwrap();
        let rhs = lg.apply(&x).unwrap().scale(k).add(&lg.apply(&y).unwrap());
        prop_assert!(lhs.sub(&rhs).is_zero());
    }
}
