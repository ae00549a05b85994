use std::path::PathBuf;
use std::sync::Arc;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::base_arith::{parse_theta_rational, ThetaRational};
use crate::difference_eq::BranchPolicy;
use crate::drinfeld_core::DrinfeldModule;
use crate::error::{Error, Result};
use crate::local_field::{WElem, WorkingField, DEFAULT_CAP};
use crate::tate_series::{TateElem, TateMat, TateRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub s: u32,
    pub e: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub r: usize,
    pub kappas: Vec<String>,
    /// Replace each `κ` by `κ^{q^r}`.
    #[serde(default)]
    pub power_wrap: bool,
}

fn default_prec() -> i64 {
    50
}
fn default_tdeg() -> usize {
    crate::tate_series::DEFAULT_TDEG
}
fn default_order() -> usize {
    10
}

/// One computation: field, module, operation and its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub module: ModuleSpec,
    pub op: String,
    #[serde(default)]
    pub xi: Option<String>,
    #[serde(default = "default_prec")]
    pub prec: i64,
    #[serde(default = "default_tdeg")]
    pub tdeg: usize,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default)]
    pub policy: BranchPolicy,
    #[serde(default)]
    pub psi: Option<PathBuf>,
    #[serde(default)]
    pub cap: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(name = "drinfeld", about = "Drinfeld logarithms, deformation series and their continuation")]
pub struct Args {
    /// Field as p,m,s,e.
    #[arg(long, default_value = "2,1,1,1")]
    pub field: String,
    /// Module as r,κ_1,...,κ_r with θ-rational κ's.
    #[arg(long, default_value = "1,1")]
    pub module: String,
    #[arg(long)]
    pub power_wrap: bool,
    #[arg(long)]
    pub op: Option<String>,
    /// Run a named battery instead of a single operation.
    #[arg(long)]
    pub suite: Option<String>,
    /// Read the job from a JSON file; other job flags are ignored.
    #[arg(long)]
    pub job: Option<PathBuf>,
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub prec: i64,
    #[arg(long, default_value_t = crate::tate_series::DEFAULT_TDEG)]
    pub tdeg: usize,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long, default_value = "least")]
    pub policy: String,
    #[arg(long)]
    pub psi: Option<PathBuf>,
    /// Relative precision cap in u-digits.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad {what} entry {x:?}"))))
        .collect()
}

impl Args {
    pub fn to_job(&self) -> Result<JobSpec> {
        if let Some(path) = &self.job {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()));
        }
        let f: Vec<i64> = parse_list(&self.field, "field")?;
        let [p, m, s, e] = f[..] else {
            return Err(Error::Parse("--field expects p,m,s,e".into()));
        };
        let mut parts = self.module.split(',');
        let r = parts
            .next()
            .and_then(|x| x.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse("--module expects r,κ_1,...,κ_r".into()))?;
        let kappas: Vec<String> = parts.map(|x| x.trim().to_string()).collect();
        let int = |x: i64| u32::try_from(x).map_err(|_| Error::Parse(format!("field entry {x} out of range")));
        Ok(JobSpec {
            field: FieldSpec { p: int(p)?, m: int(m)?, s: int(s)?, e },
            module: ModuleSpec { r, kappas, power_wrap: self.power_wrap },
            op: self.op.clone().ok_or_else(|| Error::Parse("one of --op, --suite or --job is required".into()))?,
            xi: self.xi.clone(),
            prec: self.prec,
            tdeg: self.tdeg,
            order: self.order,
            policy: BranchPolicy::parse(&self.policy)?,
            psi: self.psi.clone(),
            cap: self.cap,
            out: self.out.clone(),
        })
    }
}

/// A job resolved into arithmetic objects.
pub struct Context {
    pub job: JobSpec,
    pub field: Arc<WorkingField>,
    pub module: DrinfeldModule,
    pub xi: Option<WElem>,
    pub psi: Option<TateMat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiFile {
    rows: usize,
    cols: usize,
    entries: Vec<TateRecord>,
}

impl JobSpec {
    pub fn cap(&self) -> usize {
        self.cap.unwrap_or_else(|| DEFAULT_CAP.max(6 * (self.prec.max(0) as usize + 10) * self.field.e.max(1) as usize))
    }

    /// Parses expressions and builds the field and module. Every failure here is a
    /// parse error.
    pub fn resolve(&self) -> Result<Context> {
        if self.prec < 1 {
            return Err(Error::Parse("precision must be positive".into()));
        }
        let FieldSpec { p, m, s, e } = self.field;
        let field = WorkingField::auto(p, m, s, e, self.cap()).map_err(|e| Error::Parse(e.to_string()))?;
        let base = field.base().clone();
        if self.module.kappas.len() != self.module.r || self.module.r == 0 {
            return Err(Error::Parse(format!(
                "rank {} but {} coefficients given",
                self.module.r,
                self.module.kappas.len()
            )));
        }
        let mut exprs: Vec<ThetaRational> =
            self.module.kappas.iter().map(|k| parse_theta_rational(k, &base)).collect::<Result<_>>()?;
        if self.module.power_wrap {
            let k = base.q().pow(self.module.r as u32) as i64;
            exprs = exprs.iter().map(|x| x.powi(k, &base)).collect::<Result<_>>()?;
        }
        let module = DrinfeldModule::from_theta_rationals(&field, &exprs).map_err(|e| Error::Parse(e.to_string()))?;
        let xi = match &self.xi {
            Some(s) => Some(field.from_theta_rational(&parse_theta_rational(s, &base)?)?),
            None => None,
        };
        let psi = match &self.psi {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let pf: PsiFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                let entries = pf.entries.iter().map(|r| TateElem::from_record(&field, r)).collect::<Result<_>>()?;
                Some(TateMat::new(pf.rows, pf.cols, entries).map_err(|e| Error::Parse(e.to_string()))?)
            }
            None => None,
        };
        Ok(Context { job: self.clone(), field, module, xi, psi })
    }
}
