use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::base_arith::{Fq, FiniteField};
use crate::error::{Error, Result};

use super::field::WorkingField;

/// A truncated Laurent series `sum coeffs[i] u^(val+i) + O(u^prec)` in the working field.
///
/// `prec = None` marks an exact element. Digits between the last stored coefficient
/// and `prec` are known to be zero. The zero element stores no coefficients; an
/// inexact zero `O(u^N)` has `val = N`.
#[derive(Clone)]
pub struct WElem {
    field: Arc<WorkingField>,
    val: i64,
    coeffs: Vec<Fq>,
    prec: Option<i64>,
}

/// Serialized form of a [`WElem`]; coefficients are coordinate lists over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WElemRecord {
    pub v: i64,
    pub prec: Option<i64>,
    pub coeffs: Vec<Vec<u32>>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl WElem {
    /// Builds and normalizes an element: digits at or beyond `prec` are dropped,
    /// leading zeros absorbed into the valuation, and the relative cap applied.
    pub fn from_parts(field: &Arc<WorkingField>, val: i64, mut coeffs: Vec<Fq>, mut prec: Option<i64>) -> WElem {
        if let Some(n) = prec {
            let keep = (n - val).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        let Some(lead) = coeffs.iter().position(|c| !c.is_zero()) else {
            return WElem { field: field.clone(), val: prec.unwrap_or(0), coeffs: Vec::new(), prec };
        };
        coeffs.drain(..lead);
        let val = val + lead as i64;
        let cap = field.cap();
        if coeffs.len() > cap {
            coeffs.truncate(cap);
            prec = min_prec(prec, Some(val + cap as i64));
        }
        while coeffs.last() == Some(&Fq::ZERO) {
            coeffs.pop();
        }
        WElem { field: field.clone(), val, coeffs, prec }
    }

    pub fn zero(field: &Arc<WorkingField>) -> WElem {
        WElem { field: field.clone(), val: 0, coeffs: Vec::new(), prec: None }
    }

    /// The inexact zero `O(u^n)`.
    pub fn zero_prec(field: &Arc<WorkingField>, n: i64) -> WElem {
        WElem { field: field.clone(), val: n, coeffs: Vec::new(), prec: Some(n) }
    }

    pub fn one(field: &Arc<WorkingField>) -> WElem {
        Self::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Arc<WorkingField>, c: Fq) -> WElem {
        Self::monomial(field, c, 0)
    }

    pub fn from_int(field: &Arc<WorkingField>, k: i64) -> WElem {
        Self::constant(field, field.base().from_int(k))
    }

    /// `c u^k`, exact.
    pub fn monomial(field: &Arc<WorkingField>, c: Fq, k: i64) -> WElem {
        Self::from_parts(field, k, vec![c], None)
    }

    pub fn field(&self) -> &Arc<WorkingField> {
        &self.field
    }

    fn base(&self) -> &FiniteField {
        self.field.base()
    }

    /// `u`-adic valuation, `None` when no nonzero digit is known.
    pub fn val(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Valuation of a nonzero element, or the precision of an inexact zero
    /// (`i64::MAX` for the exact zero).
    pub fn val_or_prec(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec.unwrap_or(i64::MAX)
        } else {
            self.val
        }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True when no nonzero digit is known (exact zero or `O(u^N)`).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Leading coefficient (zero for zero).
    pub fn lc(&self) -> Fq {
        self.coeffs.first().copied().unwrap_or(Fq::ZERO)
    }

    /// The coefficient of `u^k`, `None` if it lies beyond the known precision.
    pub fn coeff_at(&self, k: i64) -> Option<Fq> {
        if let Some(n) = self.prec {
            if k >= n {
                return None;
            }
        }
        if self.coeffs.is_empty() || k < self.val {
            return Some(Fq::ZERO);
        }
        Some(self.coeffs.get((k - self.val) as usize).copied().unwrap_or(Fq::ZERO))
    }

    /// Relative precision `prec - val`, `None` for exact elements.
    pub fn rel_prec(&self) -> Option<i64> {
        self.prec.map(|n| n - self.val_or_prec().min(n))
    }

    fn check_field(&self, other: &WElem) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field),
            "mixing elements of different working fields"
        );
    }

    /// Lowers the absolute precision to at most `n`.
    pub fn truncate_prec(&self, n: i64) -> WElem {
        Self::from_parts(&self.field, self.val, self.coeffs.clone(), min_prec(self.prec, Some(n)))
    }

    pub fn neg(&self) -> WElem {
        let f = self.base();
        WElem {
            field: self.field.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, c: Fq) -> WElem {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        let f = self.base();
        WElem {
            field: self.field.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> WElem {
        WElem {
            field: self.field.clone(),
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|n| n + k),
        }
    }

    pub fn add(&self, other: &WElem) -> WElem {
        self.check_field(other);
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let prec = min_prec(self.prec, other.prec);
        let lo = self.val_or_prec().min(other.val_or_prec());
        let end = |x: &WElem| if x.coeffs.is_empty() { i64::MIN } else { x.val + x.coeffs.len() as i64 };
        let mut hi = end(self).max(end(other));
        if let Some(n) = prec {
            hi = hi.min(n);
        }
        if hi <= lo {
            return Self::zero_prec(&self.field, prec.expect("an exact sum has known digits"));
        }
        let cap = self.field.cap() as i64;
        // Only digits within the cap of the first nonzero digit survive; cancellation
        // can move that digit, so allow for the full span here.
        let mut out = vec![Fq::ZERO; (hi - lo) as usize];
        let f = self.base();
        for x in [self, other] {
            if x.coeffs.is_empty() {
                continue;
            }
            let off = (x.val - lo) as usize;
            for (i, &c) in x.coeffs.iter().enumerate() {
                if off + i >= out.len() {
                    break;
                }
                out[off + i] = f.add(out[off + i], c);
            }
        }
        let r = Self::from_parts(&self.field, lo, out, prec);
        debug_assert!(r.coeffs.len() as i64 <= cap);
        r
    }

    pub fn sub(&self, other: &WElem) -> WElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &WElem) -> WElem {
        self.check_field(other);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(&self.field);
        }
        let (va, vb) = (self.val_or_prec(), other.val_or_prec());
        let mut prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(na), None) => Some(na + vb),
            (None, Some(nb)) => Some(nb + va),
            (Some(na), Some(nb)) => Some((na + vb).min(nb + va)),
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_prec(&self.field, prec.expect("inexact zero factor"));
        }
        let val = va + vb;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let mut len = full;
        if let Some(n) = prec {
            len = len.min((n - val).max(0) as usize);
        }
        let cap = self.field.cap();
        if len > cap {
            len = cap;
            prec = min_prec(prec, Some(val + cap as i64));
        }
        let mut acc = vec![Fq::ZERO; len];
        let f = self.base();
        let (short, long) = if self.coeffs.len() <= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        for (i, &a) in short.iter().enumerate().take(len) {
            f.mul_acc(&mut acc[i..], a, long);
        }
        Self::from_parts(&self.field, val, acc, prec)
    }

    pub fn square(&self) -> WElem {
        self.mul(self)
    }

    pub fn inv(&self) -> Result<WElem> {
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let f = self.base();
        let v = self.val;
        if self.coeffs.len() == 1 && self.prec.is_none() {
            return Ok(Self::monomial(&self.field, f.inv(self.coeffs[0])?, -v));
        }
        let cap = self.field.cap() as i64;
        let rel = self.prec.map_or(cap, |n| (n - v).min(cap)) as usize;
        let inv0 = f.inv(self.coeffs[0])?;
        let mut res = vec![Fq::ZERO; rel];
        res[0] = Fq::ONE;
        let mut out = vec![Fq::ZERO; rel];
        for k in 0..rel {
            let r = f.mul(res[k], inv0);
            out[k] = r;
            if !r.is_zero() {
                f.mul_acc(&mut res[k..], f.neg(r), &self.coeffs);
            }
        }
        Ok(Self::from_parts(&self.field, -v, out, Some(-v + rel as i64)))
    }

    pub fn div(&self, other: &WElem) -> Result<WElem> {
        if other.is_exact_zero() || other.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// `self^k` for any integer `k`.
    pub fn powi(&self, k: i64) -> Result<WElem> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(acc)
    }

    /// The Frobenius twist `a^{(n)} = a^{q^n}`; for `n < 0` the unique `q^{|n|}`-th root.
    pub fn twist(&self, n: i64) -> Result<WElem> {
        if n == 0 {
            return Ok(self.clone());
        }
        let q = self.field.q() as i64;
        let f = self.base();
        let big_q = q.checked_pow(n.unsigned_abs() as u32);
        if n > 0 {
            let big_q = big_q.ok_or(Error::Overflow)?;
            let prec = match self.prec {
                None => None,
                Some(p) => Some(p.checked_mul(big_q).ok_or(Error::Overflow)?),
            };
            if self.coeffs.is_empty() {
                return Ok(match prec {
                    None => Self::zero(&self.field),
                    Some(p) => Self::zero_prec(&self.field, p),
                });
            }
            let val = self.val.checked_mul(big_q).ok_or(Error::Overflow)?;
            let cap = self.field.cap();
            let span = (self.coeffs.len() as u128 - 1) * big_q as u128 + 1;
            let len = span.min(cap as u128) as usize;
            let mut out = vec![Fq::ZERO; len];
            for (i, &c) in self.coeffs.iter().enumerate() {
                let pos = i as u128 * big_q as u128;
                if pos >= len as u128 {
                    break;
                }
                out[pos as usize] = f.frob(c, n);
            }
            let prec = if span > cap as u128 { min_prec(prec, Some(val + cap as i64)) } else { prec };
            return Ok(Self::from_parts(&self.field, val, out, prec));
        }
        let depth = n.unsigned_abs() as u32;
        let not_power = Error::NotAPower { depth, index: None };
        let prec = match (self.prec, big_q) {
            (None, _) => None,
            (Some(p), Some(bq)) => Some(Integer::div_ceil(&p, &bq)),
            (Some(p), None) => Some(if p > 0 { 1 } else { 0 }),
        };
        if self.coeffs.is_empty() {
            return Ok(match prec {
                None => Self::zero(&self.field),
                Some(p) => Self::zero_prec(&self.field, p),
            });
        }
        let big_q = big_q.ok_or(not_power.clone())?;
        if self.val.rem_euclid(big_q) != 0 {
            return Err(not_power);
        }
        let mut out = vec![Fq::ZERO; (self.coeffs.len() - 1) / big_q as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i as i64 % big_q == 0 {
                out[i / big_q as usize] = f.frob(c, n);
            } else if !c.is_zero() {
                return Err(not_power);
            }
        }
        Ok(Self::from_parts(&self.field, self.val / big_q, out, prec))
    }

    /// `ord_∞` in `θ`-units, i.e. `v_u / e`.
    pub fn ord(&self) -> Result<Ratio<i64>> {
        match self.val() {
            Some(v) => Ok(Ratio::new(v, self.field.e())),
            None => Err(Error::PrecisionExhausted("ord of an element indistinguishable from zero".into())),
        }
    }

    /// A lower bound for `ord_∞`: the exact value for nonzero elements, `prec/e` for
    /// inexact zeros and `None` (infinity) for the exact zero.
    pub fn ord_lower_bound(&self) -> Option<Ratio<i64>> {
        if self.is_exact_zero() {
            return None;
        }
        Some(Ratio::new(self.val_or_prec(), self.field.e()))
    }

    /// `log_q |a|_∞ = -ord_∞(a)`.
    pub fn log_norm(&self) -> Result<Ratio<i64>> {
        Ok(-self.ord()?)
    }

    /// `|a|_∞` as a float (0 for apparent zero).
    pub fn norm_f64(&self) -> f64 {
        match self.ord() {
            Ok(o) => (self.field.q() as f64).powf(-(*o.numer() as f64) / *o.denom() as f64),
            Err(_) => 0.0,
        }
    }

    /// Whether `|a|_∞ <= q^{-x}` is certified, i.e. `ord_∞ >= x` for every completion.
    pub fn is_small(&self, x: Ratio<i64>) -> bool {
        self.ord_lower_bound().map_or(true, |o| o >= x)
    }

    /// Agreement of two elements on all digits both know.
    pub fn agrees_with(&self, other: &WElem) -> bool {
        self.sub(other).is_zero()
    }

    /// Every known coefficient lies in `F_q`.
    pub fn coeffs_in_fq(&self) -> bool {
        self.coeffs.iter().all(|&c| self.base().in_fq(c))
    }

    /// The `n`-th root for `p ∤ n`, with the residue root picked by `choose` from the
    /// sorted list of candidates.
    pub fn nth_root_with(&self, n: u64, choose: impl Fn(&[Fq]) -> Fq) -> Result<WElem> {
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        if self.coeffs.is_empty() {
            return Err(Error::PrecisionExhausted("root of an element indistinguishable from zero".into()));
        }
        let f = self.base();
        if n == 0 || n % f.p() as u64 == 0 {
            return Err(Error::InvalidConfig(format!("{n}-th roots are not tame")));
        }
        if self.val.rem_euclid(n as i64) != 0 {
            return Err(Error::ValuationNotDivisible { valuation: self.val, divisor: n as i64 });
        }
        let roots = f.roots_of(self.lc(), n);
        if roots.is_empty() {
            return Err(Error::ResidueFieldTooSmall(format!(
                "leading coefficient {} has no {n}-th root in F_{}",
                f.fmt_elem(self.lc()),
                f.size()
            )));
        }
        let r = choose(&roots);
        let unit = self.scale(f.inv(self.lc())?).shift(-self.val);
        let z = unit_root(&unit, n)?;
        Ok(z.scale(r).shift(self.val / n as i64))
    }

    pub fn to_record(&self) -> WElemRecord {
        let f = self.base();
        WElemRecord {
            v: self.val_or_prec().min(self.prec.unwrap_or(i64::MAX)),
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|&c| f.coords(c)).collect(),
        }
    }

    pub fn from_record(field: &Arc<WorkingField>, r: &WElemRecord) -> Result<WElem> {
        let f = field.base();
        let coeffs = r.coeffs.iter().map(|c| f.from_coords(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(field, r.v, coeffs, r.prec))
    }

    /// Composition `a(s)`, reading `a` as a Laurent series in its uniformizer and
    /// substituting an element `s` of positive valuation of another working field over
    /// the same residue field.
    pub fn compose(&self, s: &WElem) -> Result<WElem> {
        let target = s.field();
        if !Arc::ptr_eq(self.field.base(), target.base()) {
            return Err(Error::InvalidConfig("composition across different residue fields".into()));
        }
        let vs = s.val().filter(|&v| v > 0).ok_or_else(|| {
            Error::InvalidConfig("substituted series must have positive valuation".into())
        })?;
        if self.is_exact_zero() {
            return Ok(WElem::zero(target));
        }
        let err_prec = self.prec.map(|n| n.checked_mul(vs).ok_or(Error::Overflow)).transpose()?;
        if self.coeffs.is_empty() {
            return Ok(WElem::zero_prec(target, err_prec.unwrap()));
        }
        let mut acc = WElem::zero(target);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(s).add(&WElem::constant(target, c));
        }
        let mut out = acc.mul(&s.powi(self.val)?);
        if let Some(n) = err_prec {
            out = out.truncate_prec(n);
        }
        Ok(out)
    }

    /// Compositional inverse of a series `w = c_1 u + c_2 u^2 + ...` with `c_1 != 0`.
    pub fn reversion(&self) -> Result<WElem> {
        if self.val() != Some(1) {
            return Err(Error::InvalidConfig("reversion needs a series of valuation 1".into()));
        }
        let field = &self.field;
        let u = field.uniformizer();
        let deriv = self.derivative();
        let target = self.prec.unwrap_or(1 + field.cap() as i64);
        let mut rho = u.scale(self.base().inv(self.lc())?);
        rho = WElem::from_parts(field, rho.val, rho.coeffs.clone(), Some(target));
        for _ in 0..64 {
            let resid = self.compose(&rho)?.sub(&u);
            let next = rho.sub(&resid.div(&deriv.compose(&rho)?)?).truncate_prec(target);
            if next.coeffs == rho.coeffs {
                return Ok(next);
            }
            rho = WElem::from_parts(field, next.val, next.coeffs, Some(target));
        }
        Err(Error::IterationCap("series reversion".into()))
    }

    /// Formal derivative `d/du`.
    pub fn derivative(&self) -> WElem {
        let f = self.base();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f.mul(c, f.from_int(self.val + i as i64)))
            .collect();
        WElem::from_parts(&self.field, self.val - 1, coeffs, self.prec.map(|n| n - 1))
    }
}

/// `U^{1/n}` for a unit `U` with leading coefficient 1, normalized to leading coefficient 1.
fn unit_root(unit: &WElem, n: u64) -> Result<WElem> {
    let field = unit.field();
    if unit.coeffs.len() == 1 && unit.prec.is_none() {
        return Ok(WElem::one(field));
    }
    let f = field.base();
    let inv_n = f.inv(f.from_int(n as i64))?;
    let mut z = WElem::one(field);
    let target = unit.prec.unwrap_or(field.cap() as i64);
    for _ in 0..128 {
        // z <- z - (z^n - U) / (n z^{n-1})
        let zn1 = z.powi(n as i64 - 1)?;
        let resid = zn1.mul(&z).sub(unit);
        let next = z.sub(&resid.div(&zn1)?.scale(inv_n)).truncate_prec(target);
        let settled = next.coeffs == z.coeffs && resid.val_or_prec() >= target;
        z = next;
        if settled {
            return Ok(z);
        }
    }
    Err(Error::IterationCap("unit root".into()))
}

impl PartialEq for WElem {
    /// Structural equality: same field, digits and precision.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
            && self.val_or_prec() == other.val_or_prec()
            && self.coeffs == other.coeffs
            && self.prec == other.prec
    }
}

impl fmt::Debug for WElem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

impl fmt::Display for WElem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.base();
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if terms.len() == 6 {
                terms.push("...".to_string());
                break;
            }
            let k = self.val + i as i64;
            terms.push(format!("{}*u^{k}", crate::base_arith::poly::fq_label(f, c)));
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(out, "{}", terms.join(" + "))?;
        if let Some(n) = self.prec {
            write!(out, " + O(u^{n})")?;
        }
        Ok(())
    }
}
