use std::sync::Arc;

use serde::Serialize;

use crate::base_arith::FieldConfig;
use crate::error::{Error, Result};
use crate::local_field::tower::{extend_artin_schreier, request_element};
use crate::local_field::WorkingField;

/// Largest residue field the driver grows into.
const MAX_RESIDUE_SIZE: u64 = 1 << 12;
const MAX_ATTEMPTS: usize = 16;

/// How the working field had to grow during a computation.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TowerLog {
    pub extensions: Vec<String>,
    pub residue_degrees: Vec<u32>,
    pub attempts: usize,
}

fn grow_residue(root: &Arc<WorkingField>) -> Result<Option<Arc<WorkingField>>> {
    let c = root.base().config();
    let s = c.s * 2;
    if (c.q()).checked_pow(s).map_or(true, |n| n > MAX_RESIDUE_SIZE) {
        return Ok(None);
    }
    let mut config = FieldConfig::auto(c.p, c.m, s)?;
    config.modulus_q = c.modulus_q.clone();
    Ok(Some(WorkingField::from_config(config, root.e(), root.cap())?))
}

/// Runs `f` in `root`, extending the field by Artin–Schreier steps on
/// `NeedsRamification` (at most `max_depth` of them) and doubling the residue degree
/// on residue-field failures, restarting `f` each time.
pub fn run_in_tower<T>(
    root: &Arc<WorkingField>,
    max_depth: usize,
    mut f: impl FnMut(&Arc<WorkingField>) -> Result<T>,
) -> Result<(T, Arc<WorkingField>, TowerLog)> {
    if root.depth() != 0 {
        return Err(Error::InvalidConfig("the tower driver starts from a root field".into()));
    }
    let mut root = root.clone();
    let mut cur = root.clone();
    let mut log = TowerLog { residue_degrees: vec![root.base().config().s], ..Default::default() };
    loop {
        log.attempts += 1;
        if log.attempts > MAX_ATTEMPTS {
            return Err(Error::IterationCap("working field growth".into()));
        }
        match f(&cur) {
            Ok(v) => {
                log.extensions = cur.extensions().to_vec();
                return Ok((v, cur, log));
            }
            Err(Error::NeedsRamification(req)) if cur.depth() < max_depth => {
                let g = request_element(&cur, &req)?;
                cur = extend_artin_schreier(&cur, &g)?;
            }
            Err(err @ (Error::ResidueUnsolvable | Error::ResidueFieldTooSmall(_))) => match grow_residue(&root)? {
                Some(bigger) => {
                    log.residue_degrees.push(bigger.base().config().s);
                    root = bigger;
                    cur = root.clone();
                }
                None => return Err(err),
            },
            Err(err) => return Err(err),
        }
    }
}
