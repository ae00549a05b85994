use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_field::{WElem, WElemRecord, WorkingField};

/// Default `t`-degree bound.
pub const DEFAULT_TDEG: usize = 40;

/// A truncation `sum_{i<=D} c_i t^i` of an element of the Tate algebra.
///
/// `tail` records whether the element is a truncation of a longer series.
#[derive(Clone, Debug)]
pub struct TateElem {
    field: Arc<WorkingField>,
    coeffs: Vec<WElem>,
    tail: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TateRecord {
    pub d: usize,
    pub tail: bool,
    pub coeffs: Vec<WElemRecord>,
}

/// Which Gauss norm to take: on the closed unit disc or on `|t| <= |θ|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disc {
    Unit,
    Theta,
}

/// `||a||_α = q^{log_q}`; `log_q = None` means the norm is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussNorm {
    pub log_q: Option<Ratio<i64>>,
    /// The element is a truncation, so the value is only a lower bound.
    pub lower_bound: bool,
}

impl GaussNorm {
    pub fn describe(&self) -> String {
        let v = match self.log_q {
            None => "0".to_string(),
            Some(x) => format!("q^{x}"),
        };
        if self.lower_bound {
            format!(">= {v}")
        } else {
            v
        }
    }
}

impl PartialEq for TateElem {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs && self.tail == o.tail
    }
}

impl TateElem {
    pub fn zero(field: &Arc<WorkingField>, d: usize) -> TateElem {
        TateElem { field: field.clone(), coeffs: vec![WElem::zero(field); d + 1], tail: false }
    }

    pub fn constant(c: &WElem, d: usize) -> TateElem {
        let mut z = Self::zero(c.field(), d);
        z.coeffs[0] = c.clone();
        z
    }

    pub fn one(field: &Arc<WorkingField>, d: usize) -> TateElem {
        Self::constant(&WElem::one(field), d)
    }

    /// `t`.
    pub fn t(field: &Arc<WorkingField>, d: usize) -> TateElem {
        let mut z = Self::zero(field, d);
        if d >= 1 {
            z.coeffs[1] = WElem::one(field);
        } else {
            z.tail = true;
        }
        z
    }

    /// Builds from a coefficient list; coefficients beyond degree `d` set the tail flag.
    pub fn from_coeffs(field: &Arc<WorkingField>, mut coeffs: Vec<WElem>, d: usize, tail: bool) -> TateElem {
        let mut tail = tail;
        if coeffs.len() > d + 1 {
            tail |= coeffs[d + 1..].iter().any(|c| !c.is_exact_zero());
            coeffs.truncate(d + 1);
        }
        coeffs.resize(d + 1, WElem::zero(field));
        TateElem { field: field.clone(), coeffs, tail }
    }

    /// `t - c`.
    pub fn t_minus(c: &WElem, d: usize) -> TateElem {
        let f = c.field();
        let mut z = Self::t(f, d);
        z.coeffs[0] = c.neg();
        z
    }

    /// Expansion `1/(t - c) = -sum_i t^i / c^{i+1}`, legitimate for `|c| > 1`.
    pub fn inv_t_minus(c: &WElem, d: usize) -> Result<TateElem> {
        let f = c.field();
        let ci = c.inv()?;
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut pw = ci.neg();
        for _ in 0..=d {
            coeffs.push(pw.clone());
            pw = pw.mul(&ci);
        }
        Ok(TateElem { field: f.clone(), coeffs, tail: true })
    }

    pub fn field(&self) -> &Arc<WorkingField> {
        &self.field
    }
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[WElem] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> &WElem {
        &self.coeffs[i]
    }
    pub fn has_tail(&self) -> bool {
        self.tail
    }
    pub fn with_tail(mut self, tail: bool) -> TateElem {
        self.tail = tail;
        self
    }

    /// No known nonzero digit in any coefficient.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &TateElem) -> Result<()> {
        if self.coeffs.len() != o.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "t-degree bounds {} and {}",
                self.degree_bound(),
                o.degree_bound()
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &TateElem) -> Result<TateElem> {
        self.check(o)?;
        Ok(TateElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
            tail: self.tail || o.tail,
        })
    }

    pub fn sub(&self, o: &TateElem) -> Result<TateElem> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TateElem {
        TateElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), tail: self.tail }
    }

    pub fn scale(&self, c: &WElem) -> TateElem {
        TateElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(), tail: self.tail }
    }

    /// Product truncated at degree `D`.
    pub fn mul(&self, o: &TateElem) -> Result<TateElem> {
        self.check(o)?;
        let n = self.coeffs.len();
        let mut out = vec![WElem::zero(&self.field); n];
        let mut overflow = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                if i + j >= n {
                    overflow = true;
                    break;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(TateElem { field: self.field.clone(), coeffs: out, tail: self.tail || o.tail || overflow })
    }

    /// Multiplication by `t`, dropping the top coefficient.
    pub fn shift_t(&self) -> TateElem {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(WElem::zero(&self.field));
        coeffs.extend(self.coeffs[..self.coeffs.len() - 1].iter().cloned());
        let dropped = !self.coeffs.last().unwrap().is_exact_zero();
        TateElem { field: self.field.clone(), coeffs, tail: self.tail || dropped }
    }

    /// Coefficientwise Frobenius twist; `t` is fixed.
    pub fn twist(&self, n: i64) -> Result<TateElem> {
        Ok(TateElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.twist(n)).collect::<Result<_>>()?,
            tail: self.tail,
        })
    }

    /// Changes the degree bound, truncating or zero-padding.
    pub fn with_degree(&self, d: usize) -> TateElem {
        Self::from_coeffs(&self.field, self.coeffs.clone(), d, self.tail)
    }

    /// `log_q` of `|c_i| |α|^i`, `None` for coefficients with no known nonzero digit.
    fn term_log(&self, i: usize, disc: Disc) -> Option<Ratio<i64>> {
        let o = self.coeffs[i].ord().ok()?;
        Some(match disc {
            Disc::Unit => -o,
            Disc::Theta => -o + Ratio::from(i as i64),
        })
    }

    pub fn gauss_norm(&self, disc: Disc) -> GaussNorm {
        let log_q = (0..self.coeffs.len()).filter_map(|i| self.term_log(i, disc)).max();
        GaussNorm { log_q, lower_bound: self.tail }
    }

    /// `sum c_i θ^i` with a tail bound extrapolated from the last two nonzero terms.
    ///
    /// `target` is in `θ`-units: the tail must be certified below `q^{-target}`.
    pub fn eval_at_theta(&self, target: i64) -> Result<WElem> {
        let field = &self.field;
        let mut acc = WElem::zero(field);
        let th = field.theta();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&th).add(c);
        }
        if !self.tail {
            return Ok(acc);
        }
        let terms: Vec<(usize, Ratio<i64>)> =
            (0..self.coeffs.len()).filter_map(|i| self.term_log(i, Disc::Theta).map(|m| (i, m))).collect();
        let d = self.degree_bound();
        let tail_log = match terms.as_slice() {
            [] => None,
            [(_, m)] => Some(*m),
            [.., (i1, m1), (i2, m2)] => {
                let rate = (*m2 - *m1) / Ratio::from((i2 - i1) as i64);
                if rate >= Ratio::from(0) {
                    return Err(Error::TailNotConverged { degree: d });
                }
                Some(*m2 + rate * Ratio::from((d + 1 - i2) as i64))
            }
        };
        let Some(tail_log) = tail_log else {
            return Ok(acc);
        };
        if tail_log > Ratio::from(-target) {
            return Err(Error::TailNotConverged { degree: d });
        }
        // ord of the tail >= -tail_log, i.e. u-valuation >= -tail_log * e.
        let bound = (-tail_log * Ratio::from(field.e())).ceil().to_integer();
        Ok(acc.truncate_prec(bound))
    }

    pub fn to_record(&self) -> TateRecord {
        TateRecord {
            d: self.degree_bound(),
            tail: self.tail,
            coeffs: self.coeffs.iter().map(|c| c.to_record()).collect(),
        }
    }

    pub fn from_record(field: &Arc<WorkingField>, r: &TateRecord) -> Result<TateElem> {
        if r.coeffs.len() != r.d + 1 {
            return Err(Error::Parse(format!("expected {} coefficients, found {}", r.d + 1, r.coeffs.len())));
        }
        let coeffs = r.coeffs.iter().map(|c| WElem::from_record(field, c)).collect::<Result<_>>()?;
        Ok(TateElem { field: field.clone(), coeffs, tail: r.tail })
    }

    /// Smallest coefficient precision, in `θ`-units after evaluation at `t = θ`.
    pub fn min_prec(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.prec()).min()
    }
}
