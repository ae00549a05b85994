use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::base_arith::{FieldConfig, FiniteField, Fq, ThetaRational};
use crate::error::{Error, Result};

use super::elem::WElem;

/// Default relative precision cap, in `u`-digits.
pub const DEFAULT_CAP: usize = 200;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// The working field `W = F_{q^s}((u))` together with the image of `θ`.
///
/// In the base case `θ = u^{-e}`. After an Artin–Schreier extension the uniformizer
/// changes and `θ` becomes a general Laurent series of valuation `-e`.
pub struct WorkingField {
    base: Arc<FiniteField>,
    e: i64,
    cap: usize,
    theta_coeffs: Vec<Fq>,
    theta_prec: Option<i64>,
    id: u64,
    extensions: Vec<String>,
    root_e: i64,
    /// Image of the uniformizer of the root field `F_{q^s}((u_0))`, when this field is an extension.
    root_u: Option<(i64, Vec<Fq>, Option<i64>)>,
}

impl fmt::Debug for WorkingField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WorkingField")
            .field("base", &self.base)
            .field("e", &self.e)
            .field("cap", &self.cap)
            .field("extensions", &self.extensions)
            .finish()
    }
}

impl WorkingField {
    /// `W = F_{q^s}((u))` with `θ = u^{-e}`.
    pub fn new(base: Arc<FiniteField>, e: i64, cap: usize) -> Result<Arc<Self>> {
        if e < 1 {
            return Err(Error::InvalidConfig(format!("ramification index e = {e} must be positive")));
        }
        if cap < 2 {
            return Err(Error::InvalidConfig("precision cap must be at least 2".into()));
        }
        Ok(Arc::new(WorkingField {
            base,
            e,
            cap,
            theta_coeffs: vec![Fq::ONE],
            theta_prec: None,
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            extensions: Vec::new(),
            root_e: e,
            root_u: None,
        }))
    }

    pub fn from_config(config: FieldConfig, e: i64, cap: usize) -> Result<Arc<Self>> {
        Self::new(Arc::new(FiniteField::new(config)?), e, cap)
    }

    /// Convenience constructor with auto-chosen moduli.
    pub fn auto(p: u32, m: u32, s: u32, e: i64, cap: usize) -> Result<Arc<Self>> {
        Self::from_config(FieldConfig::auto(p, m, s)?, e, cap)
    }

    pub(crate) fn with_theta(
        base: Arc<FiniteField>,
        e: i64,
        cap: usize,
        theta: &WElem,
        root_u: &WElem,
        root_e: i64,
        extensions: Vec<String>,
    ) -> Arc<Self> {
        debug_assert_eq!(theta.val(), Some(-e));
        Arc::new(WorkingField {
            base,
            e,
            cap,
            theta_coeffs: theta.coeffs().to_vec(),
            theta_prec: theta.prec(),
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            extensions,
            root_e,
            root_u: Some((root_u.val_or_prec(), root_u.coeffs().to_vec(), root_u.prec())),
        })
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }
    pub fn p(&self) -> u32 {
        self.base.p()
    }
    pub fn q(&self) -> u64 {
        self.base.q()
    }
    /// Ramification index: `v_u(θ) = -e`.
    pub fn e(&self) -> i64 {
        self.e
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn id(&self) -> u64 {
        self.id
    }
    /// Descriptions of the Artin–Schreier extensions taken from the base field.
    pub fn extensions(&self) -> &[String] {
        &self.extensions
    }
    pub fn depth(&self) -> usize {
        self.extensions.len()
    }
    /// Whether `θ = u^{-e}` exactly.
    pub fn theta_is_monomial(&self) -> bool {
        self.theta_prec.is_none() && self.theta_coeffs == [Fq::ONE]
    }

    pub fn theta(self: &Arc<Self>) -> WElem {
        WElem::from_parts(self, -self.e, self.theta_coeffs.clone(), self.theta_prec)
    }

    /// `θ^k` for any integer `k`.
    pub fn theta_pow(self: &Arc<Self>, k: i64) -> Result<WElem> {
        if self.theta_is_monomial() {
            return Ok(WElem::monomial(self, Fq::ONE, -self.e * k));
        }
        self.theta().powi(k)
    }

    pub fn from_theta_rational(self: &Arc<Self>, x: &ThetaRational) -> Result<WElem> {
        let th = self.theta();
        let eval = |p: &crate::base_arith::CoeffPoly| {
            p.eval_with(
                &th,
                WElem::zero(self),
                |c| WElem::constant(self, c),
                |a, b| Ok(a.add(b)),
                |a, b| Ok(a.mul(b)),
            )
        };
        let num = eval(&x.num)?;
        let den = eval(&x.den)?;
        num.div(&den)
    }

    /// `e` of the root of the tower this field was built from.
    pub fn root_e(&self) -> i64 {
        self.root_e
    }

    /// The image of the root field's uniformizer; `u` itself at depth 0.
    pub fn root_uniformizer(self: &Arc<Self>) -> WElem {
        match &self.root_u {
            None => self.uniformizer(),
            Some((v, c, p)) => WElem::from_parts(self, *v, c.clone(), *p),
        }
    }

    /// `u` itself.
    pub fn uniformizer(self: &Arc<Self>) -> WElem {
        WElem::monomial(self, Fq::ONE, 1)
    }

    /// Header describing the field, for reports.
    pub fn describe(&self) -> serde_json::Value {
        let c = self.base.config();
        serde_json::json!({
            "p": c.p,
            "m": c.m,
            "s": c.s,
            "q": self.q(),
            "e": self.e,
            "cap": self.cap,
            "modulus_q": c.modulus_q,
            "modulus_qs": c.modulus_qs,
            "theta": if self.theta_is_monomial() { format!("u^-{}", self.e) } else { "series".to_string() },
            "extensions": self.extensions,
        })
    }
}
