use num_rational::Ratio;
use serde::Serialize;

use crate::base_arith::{CoeffPoly, Fq, Var};
use crate::drinfeld_core::DrinfeldModule;
use crate::error::{Error, Result};
use crate::local_field::WElem;
use crate::tate_series::{invert_w, TateMat};

/// An `F_q[θ]`-basis of a period lattice, known modulo `q^{-precision}`.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    pub generators: Vec<WElem>,
    pub precision: i64,
    /// The row vectors `a` over `F_q[t]` whose images produced each generator.
    pub multipliers: Vec<Vec<CoeffPoly>>,
}

impl LatticeBasis {
    pub fn new(generators: Vec<WElem>, precision: i64) -> Result<LatticeBasis> {
        if generators.is_empty() || generators.iter().any(|g| g.is_zero()) {
            return Err(Error::InvalidConfig("lattice generators must be nonzero".into()));
        }
        let r = generators.len();
        Ok(LatticeBasis { generators, precision, multipliers: vec![Vec::new(); r] })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn describe(&self) -> serde_json::Value {
        let f = self.generators[0].field().base().clone();
        serde_json::json!({
            "rank": self.rank(),
            "precision": self.precision,
            "generators": self.generators.iter().map(|g| serde_json::json!({
                "ord": g.ord().map(|o| o.to_string()).unwrap_or_else(|_| "inf".into()),
                "value": g.to_string(),
            })).collect::<Vec<_>>(),
            "multipliers": self.multipliers.iter()
                .map(|row| row.iter().map(|a| a.display(&f)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Outcome of a membership test: `w - sum witness_j(θ) λ_j` has ord at least `prec`.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub witness: Vec<CoeffPoly>,
    pub residual: WElem,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipRecord {
    pub member: bool,
    pub witness: Vec<String>,
    pub residual_ord: String,
}

impl Membership {
    pub fn record(&self) -> MembershipRecord {
        let f = self.residual.field().base().clone();
        MembershipRecord {
            member: self.member,
            witness: self.witness.iter().map(|w| w.display(&f)).collect(),
            residual_ord: describe_ord(&self.residual),
        }
    }
}

pub(crate) fn describe_ord(x: &WElem) -> String {
    match x.ord() {
        Ok(o) => o.to_string(),
        Err(_) => match x.prec() {
            Some(p) => format!(">= {}", Ratio::new(p, x.field().e())),
            None => "inf".into(),
        },
    }
}

fn add_monomial(p: &CoeffPoly, c: Fq, k: usize, f: &crate::base_arith::FiniteField) -> Result<CoeffPoly> {
    p.add(&CoeffPoly::monomial(Var::Theta, c, k), f)
}

/// Decides whether `w ∈ Λ` modulo `q^{-prec}` by leading-term reduction.
///
/// Each step cancels the leading term of the residual against `c θ^k λ_j` with `c ∈ F_q`,
/// `k >= 0`. For rank one a residual that cannot be reduced proves non-membership; for
/// higher rank it does so only below the smallest generator, otherwise the test stalls.
pub fn lattice_membership(w: &WElem, lattice: &LatticeBasis, prec: i64) -> Result<Membership> {
    let field = w.field().clone();
    let base = field.base().clone();
    let e = field.e();
    let th = field.theta();
    let lth = th.lc();
    let r = lattice.rank();
    let mut residual = w.clone();
    let mut witness = vec![CoeffPoly::zero(Var::Theta); r];
    let gens: Vec<(i64, Fq)> = lattice
        .generators
        .iter()
        .map(|g| g.val().map(|v| (v, g.lc())).ok_or(Error::Stall))
        .collect::<Result<_>>()?;
    let max_gen_val = gens.iter().map(|g| g.0).max().unwrap();
    let target = prec.saturating_mul(e);
    let mut steps = 0usize;
    loop {
        if residual.is_small(Ratio::from(prec)) {
            return Ok(Membership { member: true, witness, residual });
        }
        let Some(vw) = residual.val() else {
            // Known to be zero only below the requested precision.
            return Err(Error::Stall);
        };
        let lw = residual.lc();
        let mut reduced = false;
        for (j, &(vg, lg)) in gens.iter().enumerate() {
            let dv = vg - vw;
            if dv < 0 || dv % e != 0 {
                continue;
            }
            let k = dv / e;
            let denom = base.mul(base.pow(lth, k)?, lg);
            let c = base.div(lw, denom)?;
            if !base.in_fq(c) {
                continue;
            }
            let term = th.powi(k)?.mul(&lattice.generators[j]).scale(c);
            residual = residual.sub(&term);
            witness[j] = add_monomial(&witness[j], c, k as usize, &base)?;
            reduced = true;
            break;
        }
        if !reduced {
            if r == 1 || vw > max_gen_val {
                return Ok(Membership { member: false, witness, residual });
            }
            return Err(Error::Stall);
        }
        steps += 1;
        if steps as i64 > target.saturating_sub(vw).max(0) + 4 * field.cap() as i64 {
            return Err(Error::IterationCap("lattice reduction".into()));
        }
    }
}

/// `Ψ(θ)` entrywise, each entry certified to `target` `θ`-units.
pub fn psi_at_theta(psi: &TateMat, target: i64) -> Result<Vec<WElem>> {
    psi.entries().iter().map(|x| x.eval_at_theta(target)).collect()
}

/// First column of `Ψ(θ)^{-1}`: the images of the unit rows `e_k` under `a ↦ E_0(a Ψ^{-1})`.
pub fn period_column(psi: &TateMat, target: i64) -> Result<Vec<WElem>> {
    let r = psi.rows();
    let inv = invert_w(&psi_at_theta(psi, target)?, r)?;
    Ok((0..r).map(|k| inv[k * r].clone()).collect())
}

fn eval_theta_poly(a: &CoeffPoly, th: &WElem) -> WElem {
    let mut acc = WElem::zero(th.field());
    for &c in a.coeffs().iter().rev() {
        acc = acc.mul(th).add(&WElem::constant(th.field(), c));
    }
    acc
}

/// Largest enumeration the period search performs.
const MAX_CANDIDATES: usize = 1 << 14;

/// Periods `E_0(a Ψ^{-1}) = sum_k a_k(θ) [Ψ(θ)^{-1}]_{k1}` over rows `a` of `t`-degree at most
/// `d`, reduced to `r` generators by greedy selection in order of increasing norm.
pub fn period_lattice_from_psi(e: &DrinfeldModule, psi: &TateMat, d: usize, prec: i64) -> Result<LatticeBasis> {
    let r = e.rank();
    if psi.rows() != r || psi.cols() != r {
        return Err(Error::DimensionMismatch(format!("Ψ must be {r}x{r}")));
    }
    let field = e.field().clone();
    let base = field.base().clone();
    let col = period_column(psi, prec)?;
    let q = base.q() as usize;
    let mut d = d;
    while d > 0 && q.checked_pow((r * (d + 1)) as u32).map_or(true, |n| n > MAX_CANDIDATES) {
        d -= 1;
    }
    let polys = CoeffPoly::enumerate_up_to(Var::T, d, &base);
    let th = field.theta();
    let images: Vec<WElem> = polys.iter().map(|a| eval_theta_poly(a, &th)).collect();
    let mut cands: Vec<(Ratio<i64>, usize, Vec<usize>, WElem)> = Vec::new();
    let total = polys.len().pow(r as u32);
    for idx in 1..total {
        let mut rest = idx;
        let digits: Vec<usize> = (0..r)
            .map(|_| {
                let x = rest % polys.len();
                rest /= polys.len();
                x
            })
            .collect();
        let mut v = WElem::zero(&field);
        for (k, &i) in digits.iter().enumerate() {
            if i != 0 {
                v = v.add(&images[i].mul(&col[k]));
            }
        }
        if let Ok(o) = v.ord() {
            cands.push((o, idx, digits, v));
        }
    }
    // Smallest norm first, i.e. largest ord.
    cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut chosen: Vec<WElem> = Vec::new();
    let mut mults: Vec<Vec<CoeffPoly>> = Vec::new();
    for (_, _, digits, v) in cands {
        if chosen.len() == r {
            break;
        }
        let independent = if chosen.is_empty() {
            true
        } else {
            let partial = LatticeBasis { generators: chosen.clone(), precision: prec, multipliers: Vec::new() };
            match lattice_membership(&v, &partial, prec) {
                Ok(m) => !m.member,
                Err(Error::Stall) => true,
                Err(err) => return Err(err),
            }
        };
        if independent {
            chosen.push(v);
            mults.push(digits.iter().map(|&i| polys[i].clone()).collect());
        }
    }
    if chosen.len() < r {
        return Err(Error::Singular);
    }
    Ok(LatticeBasis { generators: chosen, precision: prec, multipliers: mults })
}
