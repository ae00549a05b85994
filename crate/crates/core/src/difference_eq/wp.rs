use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::local_field::WElem;
use crate::tate_series::{Disc, TateElem, TateVec};

use super::solve::{solve_artin_schreier, BranchPolicy};

/// `℘(Z) = Z - Z^{(1)}`.
pub fn wp(z: &TateElem) -> Result<TateElem> {
    z.sub(&z.twist(1)?)
}

pub fn wp_r(z: &[TateElem]) -> Result<TateVec> {
    z.iter().map(wp).collect()
}

/// `𝓛_0(Z) = sum_{i>=0} Z^{(i)}` for `||Z|| < 1`, summed until the terms drop below `q^{-prec}`.
pub fn l0_series(z: &[TateElem], prec: i64) -> Result<TateVec> {
    for x in z {
        if x.gauss_norm(Disc::Unit).log_q.is_some_and(|l| l >= Ratio::from(0)) {
            return Err(Error::NormNotContracting);
        }
    }
    let Some(first) = z.first() else {
        return Ok(Vec::new());
    };
    let field = first.field().clone();
    let target = prec.checked_mul(field.e()).ok_or(Error::Overflow)?;
    let mut out = Vec::with_capacity(z.len());
    for x in z {
        let mut acc = x.clone();
        let mut term = x.clone();
        loop {
            let min_val = term.coeffs().iter().filter_map(|c| c.val()).min();
            match min_val {
                Some(v) if v < target => {}
                _ => break,
            }
            term = term.twist(1)?;
            acc = acc.add(&term)?;
        }
        let coeffs: Vec<WElem> = acc.coeffs().iter().map(|c| c.truncate_prec(target)).collect();
        out.push(TateElem::from_coeffs(&field, coeffs, x.degree_bound(), x.has_tail()));
    }
    Ok(out)
}

/// A representative of `℘_r^{-1}(h)`: each coefficient solves `f - f^q = h_i`.
///
/// Coefficients with `|h_i| < 1` always take the small root, the only choice that keeps
/// the representative in the Tate algebra; the policy decides the remaining ones.
pub fn wp_inverse(h: &[TateElem], policy: BranchPolicy, prec: i64) -> Result<TateVec> {
    let mut out = Vec::with_capacity(h.len());
    for x in h {
        let field = x.field();
        let minus_one = WElem::from_int(field, -1);
        let coeffs = x
            .coeffs()
            .iter()
            .map(|c| {
                let p = if c.val_or_prec() > 0 { BranchPolicy::Least } else { policy };
                solve_artin_schreier(&minus_one, &c.neg(), p, prec)
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(TateElem::from_coeffs(field, coeffs, x.degree_bound(), x.has_tail()));
    }
    Ok(out)
}
