//! Polynomials over `F_q` in `θ` or `t`, and quotients of them.

use std::fmt;

use super::field::{FiniteField, Fq};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum Var {
    Theta,
    T,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Theta => "θ",
            Var::T => "t",
        }
    }
}

/// A polynomial `sum c_i X^i` with coefficients in `F_q ⊂ F_{q^s}`.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoeffPoly {
    pub var: Var,
    coeffs: Vec<Fq>,
}

impl CoeffPoly {
    pub fn new(var: Var, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last() == Some(&Fq::ZERO) {
            coeffs.pop();
        }
        CoeffPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        CoeffPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        CoeffPoly { var, coeffs: vec![Fq::ONE] }
    }

    pub fn constant(var: Var, c: Fq) -> Self {
        Self::new(var, vec![c])
    }

    /// `c X^k`.
    pub fn monomial(var: Var, c: Fq, k: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::DimensionMismatch(format!(
                "polynomials in {} and {}",
                self.var.symbol(),
                other.var.symbol()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, f: &FiniteField) -> Result<Self> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(self.var, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn sub(&self, other: &Self, f: &FiniteField) -> Result<Self> {
        self.add(&other.neg(f), f)
    }

    pub fn neg(&self, f: &FiniteField) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fq, f: &FiniteField) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Result<Self> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::new(self.var, out))
    }

    pub fn pow(&self, k: u32, f: &FiniteField) -> Result<Self> {
        let mut acc = Self::one(self.var);
        for _ in 0..k {
            acc = acc.mul(self, f)?;
        }
        Ok(acc)
    }

    /// Euclidean division.
    pub fn divrem(&self, d: &Self, f: &FiniteField) -> Result<(Self, Self)> {
        self.check_var(d)?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        let mut quot = vec![Fq::ZERO; self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = f.mul(*r.last().unwrap(), lead_inv);
            quot[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, dc));
            }
            while r.last() == Some(&Fq::ZERO) {
                r.pop();
            }
        }
        Ok((Self::new(self.var, quot), Self::new(self.var, r)))
    }

    /// Evaluates by Horner's rule in any ring supplied through closures.
    pub fn eval_with<T: Clone>(
        &self,
        x: &T,
        zero: T,
        lift: impl Fn(Fq) -> T,
        add: impl Fn(&T, &T) -> Result<T>,
        mul: impl Fn(&T, &T) -> Result<T>,
    ) -> Result<T> {
        let mut acc = zero;
        for &c in self.coeffs.iter().rev() {
            acc = add(&mul(&acc, x)?, &lift(c))?;
        }
        Ok(acc)
    }

    pub fn all_in_fq(&self, f: &FiniteField) -> bool {
        self.coeffs.iter().all(|&c| f.in_fq(c))
    }

    /// Every polynomial over `F_q` of degree at most `d`, zero first, in increasing
    /// coefficient order.
    pub fn enumerate_up_to(var: Var, d: usize, f: &FiniteField) -> Vec<CoeffPoly> {
        let fq = f.fq_elements();
        let q = fq.len();
        let total = q.pow(d as u32 + 1);
        (0..total)
            .map(|mut idx| {
                let coeffs = (0..=d)
                    .map(|_| {
                        let c = fq[idx % q];
                        idx /= q;
                        c
                    })
                    .collect();
                CoeffPoly::new(var, coeffs)
            })
            .collect()
    }

    pub fn display(&self, f: &FiniteField) -> String {
        PolyDisplay { p: self, f }.to_string()
    }
}

struct PolyDisplay<'a> {
    p: &'a CoeffPoly,
    f: &'a FiniteField,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(out, "0");
        }
        let x = self.p.var.symbol();
        let mut first = true;
        for (i, &c) in self.p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = fq_label(self.f, c);
            match (i, c == Fq::ONE) {
                (0, _) => write!(out, "{cs}")?,
                (1, true) => write!(out, "{x}")?,
                (1, false) => write!(out, "{cs}*{x}")?,
                (_, true) => write!(out, "{x}^{i}")?,
                (_, false) => write!(out, "{cs}*{x}^{i}")?,
            }
        }
        Ok(())
    }
}

/// Short label of a field element: an integer for prime-field elements, otherwise
/// its coordinate vector.
pub fn fq_label(f: &FiniteField, c: Fq) -> String {
    if c.0 < f.p() {
        c.0.to_string()
    } else {
        format!("{:?}", f.coords(c))
    }
}

/// A quotient `num / den` of polynomials in `θ` over `F_q`, i.e. an element of `k = F_q(θ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaRational {
    pub num: CoeffPoly,
    pub den: CoeffPoly,
}

impl ThetaRational {
    pub fn from_poly(p: CoeffPoly) -> Self {
        ThetaRational { num: p, den: CoeffPoly::one(Var::Theta) }
    }

    pub fn zero() -> Self {
        Self::from_poly(CoeffPoly::zero(Var::Theta))
    }

    pub fn one() -> Self {
        Self::from_poly(CoeffPoly::one(Var::Theta))
    }

    pub fn theta() -> Self {
        Self::from_poly(CoeffPoly::monomial(Var::Theta, Fq::ONE, 1))
    }

    pub fn constant(c: Fq) -> Self {
        Self::from_poly(CoeffPoly::constant(Var::Theta, c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self, f: &FiniteField) -> Result<Self> {
        Ok(ThetaRational {
            num: self.num.mul(&o.den, f)?.add(&o.num.mul(&self.den, f)?, f)?,
            den: self.den.mul(&o.den, f)?,
        })
    }

    pub fn neg(&self, f: &FiniteField) -> Self {
        ThetaRational { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self, f: &FiniteField) -> Result<Self> {
        self.add(&o.neg(f), f)
    }

    pub fn mul(&self, o: &Self, f: &FiniteField) -> Result<Self> {
        Ok(ThetaRational { num: self.num.mul(&o.num, f)?, den: self.den.mul(&o.den, f)? })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ThetaRational { num: self.den.clone(), den: self.num.clone() })
    }

    pub fn div(&self, o: &Self, f: &FiniteField) -> Result<Self> {
        self.mul(&o.inv()?, f)
    }

    pub fn powi(&self, k: i64, f: &FiniteField) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        Ok(ThetaRational { num: base.num.pow(k, f)?, den: base.den.pow(k, f)? })
    }

    /// `deg num - deg den`, i.e. `-ord_∞`.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    pub fn display(&self, f: &FiniteField) -> String {
        if self.den == CoeffPoly::one(Var::Theta) {
            self.num.display(f)
        } else {
            format!("({}) / ({})", self.num.display(f), self.den.display(f))
        }
    }
}
