use std::sync::Arc;

use crate::base_arith::{CoeffPoly, ThetaRational};
use crate::error::{Error, Result};
use crate::local_field::{WElem, WorkingField};

/// `φ_t = θ + κ_1 τ + ... + κ_r τ^r`.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    field: Arc<WorkingField>,
    kappa: Vec<WElem>,
    exprs: Option<Vec<ThetaRational>>,
}

impl DrinfeldModule {
    pub fn new(kappa: Vec<WElem>) -> Result<DrinfeldModule> {
        let Some(last) = kappa.last() else {
            return Err(Error::InvalidConfig("a Drinfeld module needs rank at least 1".into()));
        };
        if last.is_zero() {
            return Err(Error::InvalidConfig("leading coefficient κ_r is zero".into()));
        }
        let field = last.field().clone();
        if kappa.iter().any(|k| !Arc::ptr_eq(k.field(), &field)) {
            return Err(Error::InvalidConfig("coefficients live in different working fields".into()));
        }
        Ok(DrinfeldModule { field, kappa, exprs: None })
    }

    /// Coefficients given as rational functions of `θ`; the module can then be rebuilt
    /// in extensions of the working field.
    pub fn from_theta_rationals(field: &Arc<WorkingField>, exprs: &[ThetaRational]) -> Result<DrinfeldModule> {
        let kappa = exprs.iter().map(|x| field.from_theta_rational(x)).collect::<Result<_>>()?;
        let mut m = Self::new(kappa)?;
        m.exprs = Some(exprs.to_vec());
        Ok(m)
    }

    pub fn carlitz(field: &Arc<WorkingField>) -> DrinfeldModule {
        Self::from_theta_rationals(field, &[ThetaRational::one()]).expect("Carlitz module")
    }

    /// The same module over another working field.
    pub fn in_field(&self, field: &Arc<WorkingField>) -> Result<DrinfeldModule> {
        if Arc::ptr_eq(field, &self.field) {
            return Ok(self.clone());
        }
        match &self.exprs {
            Some(e) => Self::from_theta_rationals(field, e),
            None => Err(Error::InvalidConfig("module coefficients have no θ-expression to transport".into())),
        }
    }

    pub fn field(&self) -> &Arc<WorkingField> {
        &self.field
    }
    pub fn rank(&self) -> usize {
        self.kappa.len()
    }
    pub fn kappa(&self) -> &[WElem] {
        &self.kappa
    }
    pub fn exprs(&self) -> Option<&[ThetaRational]> {
        self.exprs.as_deref()
    }

    pub fn phi_t(&self) -> SkewPoly {
        let mut coeffs = vec![self.field.theta()];
        coeffs.extend(self.kappa.iter().cloned());
        SkewPoly::new(&self.field, coeffs)
    }

    pub fn describe(&self) -> serde_json::Value {
        let f = self.field.base();
        serde_json::json!({
            "r": self.rank(),
            "kappa": self.kappa.iter().map(|k| k.to_record()).collect::<Vec<_>>(),
            "kappa_expr": self.exprs.as_ref().map(|e| e.iter().map(|x| x.display(f)).collect::<Vec<_>>()),
        })
    }
}

/// `sum a_i τ^i` with `τ a = a^q τ`.
#[derive(Clone, Debug)]
pub struct SkewPoly {
    field: Arc<WorkingField>,
    coeffs: Vec<WElem>,
}

impl SkewPoly {
    pub fn new(field: &Arc<WorkingField>, mut coeffs: Vec<WElem>) -> SkewPoly {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        SkewPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<WorkingField>) -> SkewPoly {
        Self::new(field, Vec::new())
    }

    pub fn constant(c: &WElem) -> SkewPoly {
        Self::new(c.field(), vec![c.clone()])
    }

    pub fn tau(field: &Arc<WorkingField>) -> SkewPoly {
        Self::new(field, vec![WElem::zero(field), WElem::one(field)])
    }

    pub fn coeffs(&self) -> &[WElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &SkewPoly) -> SkewPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = WElem::zero(&self.field);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero).add(o.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn mul(&self, o: &SkewPoly) -> Result<SkewPoly> {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Ok(Self::zero(&self.field));
        }
        let mut out = vec![WElem::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_exact_zero() {
                    out[i + j] = out[i + j].add(&a.mul(&b.twist(i as i64)?));
                }
            }
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn apply(&self, z: &WElem) -> Result<WElem> {
        let mut acc = WElem::zero(&self.field);
        for (i, a) in self.coeffs.iter().enumerate() {
            acc = acc.add(&a.mul(&z.twist(i as i64)?));
        }
        Ok(acc)
    }
}

pub fn apply_skew(f: &SkewPoly, z: &WElem) -> Result<WElem> {
    f.apply(z)
}

/// `φ_a` for `a ∈ F_q[t]`.
pub fn phi_of(e: &DrinfeldModule, a: &CoeffPoly) -> Result<SkewPoly> {
    let field = e.field();
    let phi_t = e.phi_t();
    let mut acc = SkewPoly::zero(field);
    for &c in a.coeffs().iter().rev() {
        acc = acc.mul(&phi_t)?.add(&SkewPoly::constant(&WElem::constant(field, c)));
    }
    Ok(acc)
}
