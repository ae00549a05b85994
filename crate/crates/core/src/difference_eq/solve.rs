use serde::{Deserialize, Serialize};

use crate::base_arith::{residue_artin_schreier_all, Fq};
use crate::error::{Error, Result};
use crate::local_field::tower::make_request;
use crate::local_field::WElem;

use super::newton::{newton_polygon, NewtonPolygonData};

/// Root selection for `Y^q + aY = c` when several residues are admissible.
///
/// `KInfty` selects the root on the length-one edge of the Newton polygon when there is
/// one, which coincides with `Least`; without such an edge it falls back to `Least`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchPolicy {
    #[default]
    Least,
    Greatest,
    KInfty,
}

impl BranchPolicy {
    pub fn name(self) -> &'static str {
        match self {
            BranchPolicy::Least => "least",
            BranchPolicy::Greatest => "greatest",
            BranchPolicy::KInfty => "kinfty",
        }
    }

    pub fn parse(s: &str) -> Result<BranchPolicy> {
        match s {
            "least" => Ok(BranchPolicy::Least),
            "greatest" => Ok(BranchPolicy::Greatest),
            "kinfty" => Ok(BranchPolicy::KInfty),
            _ => Err(Error::Parse(format!("unknown policy {s:?}"))),
        }
    }

    fn pick(self, sorted: &[Fq]) -> Fq {
        match self {
            BranchPolicy::Greatest => *sorted.last().unwrap(),
            _ => sorted[0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// `γ^q = c`: the `Y^q` term dominates.
    Forced,
    /// `γ^q + aγ = c` at the valuation of the kernel.
    Residue,
    /// `aγ = c`: the linear term dominates.
    Linear,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsStep {
    pub valuation: i64,
    pub kind: StepKind,
    pub digit: u32,
    /// The Newton polygon of the residual equation had an integral edge of length one.
    pub length_one_edge: bool,
}

#[derive(Clone, Debug)]
pub struct AsSolution {
    pub root: WElem,
    pub polygon: NewtonPolygonData,
    /// Steps that produced a nonzero digit or faced a choice.
    pub steps: Vec<AsStep>,
    /// `KInfty` was requested but the polygon had no integral edge of length one.
    pub kinfty_fallback: bool,
}

fn polygon_of(a: &WElem, c: &WElem, q: u64) -> Result<NewtonPolygonData> {
    let field = a.field();
    let mut coeffs = vec![WElem::zero(field); q as usize + 1];
    coeffs[0] = c.neg();
    coeffs[1] = coeffs[1].add(a);
    coeffs[q as usize] = coeffs[q as usize].add(&WElem::one(field));
    newton_polygon(&coeffs)
}

fn slope_error(a: &WElem, residual: &WElem, q: u64) -> Error {
    let f = a.field().base();
    let vc = residual.val_or_prec();
    let a_is_minus_one = a.is_exact() && a.sub(&WElem::from_int(a.field(), -1)).is_exact_zero();
    if a_is_minus_one && vc < 0 && vc % f.p() as i64 != 0 {
        return Error::NeedsRamification(Box::new(make_request(residual)));
    }
    Error::NoIntegralSlope { valuation: vc, degree: q }
}

/// A root of `Y^q + aY = c`, see [`solve_artin_schreier_traced`].
pub fn solve_artin_schreier(a: &WElem, c: &WElem, policy: BranchPolicy, prec: i64) -> Result<WElem> {
    Ok(solve_artin_schreier_traced(a, c, policy, prec)?.root)
}

/// A root of `Y^q + aY = c` with `|Y^q + aY - c| <= q^{-prec}`, built digit by digit in `u`.
///
/// At each digit the dominant terms give one of three residue equations; the policy
/// chooses among the solutions of the kernel case.
pub fn solve_artin_schreier_traced(a: &WElem, c: &WElem, policy: BranchPolicy, prec: i64) -> Result<AsSolution> {
    let field = a.field();
    let f = field.base();
    let q = field.q();
    let qi = q as i64;
    let Some(va) = a.val() else {
        return Err(Error::InvalidConfig("Artin-Schreier equation with a = 0".into()));
    };
    let la = a.lc();
    let target = prec.checked_mul(field.e()).ok_or(Error::Overflow)?;
    let polygon = polygon_of(a, c, q)?;
    let kinfty_fallback = policy == BranchPolicy::KInfty && polygon.length_one_integral().is_none();

    let kernel_floor = va.div_euclid(qi - 1);
    let v0 = match c.val() {
        Some(vc) => kernel_floor.min(vc.div_euclid(qi)),
        None => kernel_floor,
    };
    let budget = 4 * (target - v0).max(1);
    let mut residual = c.clone();
    let mut digits: Vec<(i64, Fq)> = Vec::new();
    let mut steps = Vec::new();
    let mut v = v0;
    let mut count = 0;
    loop {
        let l = (qi * v).min(va + v);
        let t_eff = residual.prec().map_or(target, |p| p.min(target));
        if l >= t_eff {
            break;
        }
        count += 1;
        if count > budget {
            return Err(Error::IterationCap(format!("Artin-Schreier solve after {budget} digits")));
        }
        if residual.val().is_some_and(|vc| vc < l) {
            return Err(slope_error(a, &residual, q));
        }
        let cc = residual.coeff_at(l).unwrap_or(Fq::ZERO);
        let (forced, linear) = (qi * v == l, va + v == l);
        let (kind, cands) = match (forced, linear) {
            (true, false) => (StepKind::Forced, vec![f.frob(cc, -1)]),
            (false, true) => (StepKind::Linear, vec![f.div(cc, la)?]),
            _ => (StepKind::Residue, residue_artin_schreier_all(f, la, cc)),
        };
        if cands.is_empty() {
            return Err(Error::ResidueUnsolvable);
        }
        let gamma = policy.pick(&cands);
        if gamma != Fq::ZERO || cands.len() > 1 {
            let length_one_edge = polygon_of(a, &residual, q)?.length_one_integral().is_some();
            steps.push(AsStep { valuation: v, kind, digit: gamma.0, length_one_edge });
        }
        if gamma != Fq::ZERO {
            let z = WElem::monomial(field, gamma, v);
            residual = residual.sub(&WElem::monomial(field, f.frob(gamma, 1), qi * v)).sub(&a.mul(&z));
            digits.push((v, gamma));
        }
        v += 1;
    }
    let root = match digits.first() {
        None => WElem::zero_prec(field, v),
        Some(&(v_first, _)) => {
            let mut coeffs = vec![Fq::ZERO; (v - v_first) as usize];
            for &(k, g) in &digits {
                coeffs[(k - v_first) as usize] = g;
            }
            WElem::from_parts(field, v_first, coeffs, Some(v))
        }
    };
    Ok(AsSolution { root, polygon, steps, kinfty_fallback })
}
