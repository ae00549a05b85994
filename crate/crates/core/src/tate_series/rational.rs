//! Rational functions in `t` whose denominators are products of factors `t - θ^{q^k}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::local_field::{WElem, WorkingField};

use super::elem::TateElem;

/// `num(t) / prod_k (t - θ^{q^k})` with `num` a polynomial over `W`.
///
/// `den` is the sorted multiset of exponents `k`.
#[derive(Clone)]
pub struct RationalTate {
    field: Arc<WorkingField>,
    num: Vec<WElem>,
    den: Vec<u32>,
}

pub(crate) fn poly_add(a: &[WElem], b: &[WElem], field: &Arc<WorkingField>) -> Vec<WElem> {
    let n = a.len().max(b.len());
    let zero = WElem::zero(field);
    (0..n).map(|i| a.get(i).unwrap_or(&zero).add(b.get(i).unwrap_or(&zero))).collect()
}

pub(crate) fn poly_mul(a: &[WElem], b: &[WElem], field: &Arc<WorkingField>) -> Vec<WElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![WElem::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_exact_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_exact_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn poly_eval(a: &[WElem], x: &WElem) -> WElem {
    let mut acc = WElem::zero(x.field());
    for c in a.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// `θ^{q^k}`.
pub fn theta_qk(field: &Arc<WorkingField>, k: u32) -> Result<WElem> {
    field.theta().twist(k as i64)
}

fn factor(field: &Arc<WorkingField>, k: u32) -> Result<Vec<WElem>> {
    Ok(vec![theta_qk(field, k)?.neg(), WElem::one(field)])
}

impl RationalTate {
    pub fn new(field: &Arc<WorkingField>, num: Vec<WElem>, mut den: Vec<u32>) -> RationalTate {
        den.sort_unstable();
        RationalTate { field: field.clone(), num, den }
    }

    pub fn from_poly(field: &Arc<WorkingField>, num: Vec<WElem>) -> RationalTate {
        RationalTate { field: field.clone(), num, den: Vec::new() }
    }

    pub fn constant(c: &WElem) -> RationalTate {
        Self::from_poly(c.field(), vec![c.clone()])
    }

    pub fn zero(field: &Arc<WorkingField>) -> RationalTate {
        Self::from_poly(field, Vec::new())
    }

    pub fn one(field: &Arc<WorkingField>) -> RationalTate {
        Self::constant(&WElem::one(field))
    }

    /// `c / (t - θ^{q^k})`.
    pub fn over_factor(c: &WElem, k: u32) -> RationalTate {
        RationalTate { field: c.field().clone(), num: vec![c.clone()], den: vec![k] }
    }

    /// `t - θ^{q^k}` as a polynomial.
    pub fn t_minus_theta_qk(field: &Arc<WorkingField>, k: u32) -> Result<RationalTate> {
        Ok(Self::from_poly(field, factor(field, k)?))
    }

    pub fn numerator(&self) -> &[WElem] {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn field(&self) -> &Arc<WorkingField> {
        &self.field
    }

    /// Numerator multiplied by the factors `k` in `extra`.
    fn lift(&self, extra: &[u32]) -> Result<Vec<WElem>> {
        let mut num = self.num.clone();
        for &k in extra {
            num = poly_mul(&num, &factor(&self.field, k)?, &self.field);
        }
        Ok(num)
    }

    /// Multiset lcm of denominators and the factors each side is missing.
    fn common(a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
        let (mut i, mut j) = (0, 0);
        let (mut lcm, mut miss_a, mut miss_b) = (Vec::new(), Vec::new(), Vec::new());
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    lcm.push(x);
                    i += 1;
                    j += 1;
                }
                (Some(&x), Some(&y)) if x < y => {
                    lcm.push(x);
                    miss_b.push(x);
                    i += 1;
                }
                (Some(&x), None) => {
                    lcm.push(x);
                    miss_b.push(x);
                    i += 1;
                }
                (_, Some(&y)) => {
                    lcm.push(y);
                    miss_a.push(y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        (lcm, miss_a, miss_b)
    }

    pub fn add(&self, o: &RationalTate) -> Result<RationalTate> {
        let (lcm, miss_a, miss_b) = Self::common(&self.den, &o.den);
        let num = poly_add(&self.lift(&miss_a)?, &o.lift(&miss_b)?, &self.field);
        Ok(RationalTate { field: self.field.clone(), num, den: lcm })
    }

    pub fn neg(&self) -> RationalTate {
        RationalTate { field: self.field.clone(), num: self.num.iter().map(|c| c.neg()).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalTate) -> Result<RationalTate> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalTate) -> RationalTate {
        let mut den = self.den.clone();
        den.extend(&o.den);
        den.sort_unstable();
        RationalTate { field: self.field.clone(), num: poly_mul(&self.num, &o.num, &self.field), den }
    }

    /// Product with `t - θ^{q^k}`, cancelling against the denominator when possible.
    pub fn mul_factor(&self, k: u32) -> Result<RationalTate> {
        let mut out = self.clone();
        match out.den.iter().position(|&x| x == k) {
            Some(i) => {
                out.den.remove(i);
            }
            None => out.num = poly_mul(&out.num, &factor(&self.field, k)?, &self.field),
        }
        Ok(out)
    }

    pub fn scale(&self, c: &WElem) -> RationalTate {
        RationalTate { field: self.field.clone(), num: self.num.iter().map(|x| x.mul(c)).collect(), den: self.den.clone() }
    }

    /// Frobenius twist: coefficients twisted, `t - θ^{q^k}` becomes `t - θ^{q^{k+n}}`.
    pub fn twist(&self, n: i64) -> Result<RationalTate> {
        let num = self.num.iter().map(|c| c.twist(n)).collect::<Result<_>>()?;
        let den = self
            .den
            .iter()
            .map(|&k| {
                u32::try_from(k as i64 + n).map_err(|_| Error::NotAPower { depth: n.unsigned_abs() as u32, index: None })
            })
            .collect::<Result<_>>()?;
        Ok(RationalTate { field: self.field.clone(), num, den })
    }

    /// Equality as rational functions, at the tracked precision.
    pub fn equals(&self, o: &RationalTate) -> Result<bool> {
        let (_, miss_a, miss_b) = Self::common(&self.den, &o.den);
        let a = self.lift(&miss_a)?;
        let b = o.lift(&miss_b)?;
        let diff = poly_add(&a, &b.iter().map(|c| c.neg()).collect::<Vec<_>>(), &self.field);
        Ok(diff.iter().all(|c| c.is_zero()))
    }

    /// Geometric expansion to `t`-degree `d`.
    pub fn expand(&self, d: usize) -> Result<TateElem> {
        let mut out = TateElem::from_coeffs(&self.field, self.num.clone(), d, false);
        for &k in &self.den {
            let inv = TateElem::inv_t_minus(&theta_qk(&self.field, k)?, d)?;
            out = out.mul(&inv)?;
        }
        Ok(out)
    }

    /// Value at `t = x`.
    pub fn eval(&self, x: &WElem) -> Result<WElem> {
        let mut den = WElem::one(&self.field);
        for &k in &self.den {
            den = den.mul(&x.sub(&theta_qk(&self.field, k)?));
        }
        poly_eval(&self.num, x).div(&den)
    }

    pub fn eval_at_theta(&self) -> Result<WElem> {
        self.eval(&self.field.theta())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }
}

impl fmt::Debug for RationalTate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalTate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*t^{i}"))
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_empty() {
            return write!(f, "{num}");
        }
        let den: Vec<String> = self.den.iter().map(|k| format!("(t - θ^(q^{k}))")).collect();
        write!(f, "[{num}] / {}", den.join(""))
    }
}

/// Square matrix of [`RationalTate`] entries.
#[derive(Clone, Debug)]
pub struct RatMat {
    n: usize,
    entries: Vec<RationalTate>,
}

impl RatMat {
    pub fn new(n: usize, entries: Vec<RationalTate>) -> Result<RatMat> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        Ok(RatMat { n, entries })
    }

    pub fn identity(field: &Arc<WorkingField>, n: usize) -> RatMat {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { RationalTate::one(field) } else { RationalTate::zero(field) })
            .collect();
        RatMat { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalTate {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &RatMat) -> Result<RatMat> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch("rational matrices of different sizes".into()));
        }
        let n = self.n;
        let field = self.entries[0].field().clone();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RationalTate::zero(&field);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b))?;
                }
                out.push(acc);
            }
        }
        Ok(RatMat { n, entries: out })
    }

    pub fn twist(&self, k: i64) -> Result<RatMat> {
        let entries = self.entries.iter().map(|e| e.twist(k)).collect::<Result<_>>()?;
        Ok(RatMat { n: self.n, entries })
    }

    pub fn equals(&self, o: &RatMat) -> Result<bool> {
        if self.n != o.n {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&o.entries) {
            if !a.equals(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn expand(&self, d: usize) -> Result<super::TateMat> {
        let entries = self.entries.iter().map(|e| e.expand(d)).collect::<Result<_>>()?;
        super::TateMat::new(self.n, self.n, entries)
    }
}
