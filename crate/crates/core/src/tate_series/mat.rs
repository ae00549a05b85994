use std::sync::Arc;

use crate::error::{Error, Result};
use crate::local_field::{WElem, WorkingField};

use super::elem::{Disc, GaussNorm, TateElem};

/// A rectangular matrix of [`TateElem`]s with a common degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct TateMat {
    rows: usize,
    cols: usize,
    entries: Vec<TateElem>,
}

impl TateMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<TateElem>) -> Result<TateMat> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        let d = entries[0].degree_bound();
        if entries.iter().any(|e| e.degree_bound() != d) {
            return Err(Error::DimensionMismatch("entries with different t-degree bounds".into()));
        }
        Ok(TateMat { rows, cols, entries })
    }

    pub fn zero(field: &Arc<WorkingField>, rows: usize, cols: usize, d: usize) -> TateMat {
        TateMat { rows, cols, entries: vec![TateElem::zero(field, d); rows * cols] }
    }

    pub fn identity(field: &Arc<WorkingField>, n: usize, d: usize) -> TateMat {
        let mut m = Self::zero(field, n, n, d);
        for i in 0..n {
            m.entries[i * n + i] = TateElem::one(field, d);
        }
        m
    }

    pub fn row_vector(entries: Vec<TateElem>) -> Result<TateMat> {
        let n = entries.len();
        Self::new(1, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn degree_bound(&self) -> usize {
        self.entries[0].degree_bound()
    }
    pub fn field(&self) -> &Arc<WorkingField> {
        self.entries[0].field()
    }
    pub fn get(&self, i: usize, j: usize) -> &TateElem {
        &self.entries[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: TateElem) {
        self.entries[i * self.cols + j] = x;
    }
    pub fn entries(&self) -> &[TateElem] {
        &self.entries
    }

    pub fn mul(&self, o: &TateMat) -> Result<TateMat> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let field = self.field().clone();
        let d = self.degree_bound();
        let mut out = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = TateElem::zero(&field, d);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j))?)?;
                }
                out.push(acc);
            }
        }
        TateMat::new(self.rows, o.cols, out)
    }

    pub fn add(&self, o: &TateMat) -> Result<TateMat> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        TateMat::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, o: &TateMat) -> Result<TateMat> {
        let neg = TateMat {
            rows: o.rows,
            cols: o.cols,
            entries: o.entries.iter().map(|e| e.neg()).collect(),
        };
        self.add(&neg)
    }

    pub fn twist(&self, n: i64) -> Result<TateMat> {
        let entries = self.entries.iter().map(|e| e.twist(n)).collect::<Result<_>>()?;
        TateMat::new(self.rows, self.cols, entries)
    }

    pub fn gauss_norm(&self, disc: Disc) -> GaussNorm {
        let norms: Vec<GaussNorm> = self.entries.iter().map(|e| e.gauss_norm(disc)).collect();
        GaussNorm {
            log_q: norms.iter().filter_map(|n| n.log_q).max(),
            lower_bound: norms.iter().any(|n| n.lower_bound),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Inverse modulo `t^{D+1}`, from the inverse of the constant block.
    pub fn inverse(&self) -> Result<TateMat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let d = self.degree_bound();
        let field = self.field().clone();
        let a0: Vec<WElem> = (0..n * n).map(|k| self.entries[k].coeff(0).clone()).collect();
        let a0_inv = invert_w(&a0, n)?;
        // X_k = -A0^{-1} sum_{j=1}^{k} A_j X_{k-j}
        let coeff_mat = |k: usize| -> Vec<WElem> { (0..n * n).map(|i| self.entries[i].coeff(k).clone()).collect() };
        let blocks: Vec<Vec<WElem>> = (0..=d).map(coeff_mat).collect();
        let mut xs: Vec<Vec<WElem>> = vec![a0_inv.clone()];
        for k in 1..=d {
            let mut s = vec![WElem::zero(&field); n * n];
            for j in 1..=k {
                if blocks[j].iter().all(|x| x.is_exact_zero()) {
                    continue;
                }
                let prod = mat_mul_w(&blocks[j], &xs[k - j], n);
                for (a, b) in s.iter_mut().zip(prod) {
                    *a = a.add(&b);
                }
            }
            let x = mat_mul_w(&a0_inv, &s, n).into_iter().map(|v| v.neg()).collect();
            xs.push(x);
        }
        let tail = self.entries.iter().any(|e| e.has_tail()) || !self.is_polynomial_unit();
        let entries = (0..n * n)
            .map(|i| TateElem::from_coeffs(&field, xs.iter().map(|x| x[i].clone()).collect(), d, tail))
            .collect();
        TateMat::new(n, n, entries)
    }

    fn is_polynomial_unit(&self) -> bool {
        // The inverse of a matrix with constant entries is again constant.
        self.entries.iter().all(|e| e.coeffs()[1..].iter().all(|c| c.is_exact_zero()))
    }
}

fn mat_mul_w(a: &[WElem], b: &[WElem], n: usize) -> Vec<WElem> {
    let field = a[0].field().clone();
    let mut out = vec![WElem::zero(&field); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = WElem::zero(&field);
            for k in 0..n {
                acc = acc.add(&a[i * n + k].mul(&b[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
    out
}

/// Gauss–Jordan inversion over `W`, pivoting on the entry of smallest valuation.
pub fn invert_w(a: &[WElem], n: usize) -> Result<Vec<WElem>> {
    let field = a[0].field().clone();
    let mut m: Vec<Vec<WElem>> = (0..n)
        .map(|i| {
            let mut row: Vec<WElem> = a[i * n..(i + 1) * n].to_vec();
            row.extend((0..n).map(|j| if i == j { WElem::one(&field) } else { WElem::zero(&field) }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].val().unwrap())
            .ok_or(Error::Singular)?;
        m.swap(col, piv);
        let inv = m[col][col].inv()?;
        m[col] = m[col].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..n {
            if r != col && !m[r][col].is_exact_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                m[r] = m[r].iter().zip(&pivot_row).map(|(x, y)| x.sub(&factor.mul(y))).collect();
            }
        }
    }
    Ok((0..n).flat_map(|i| m[i][n..].to_vec()).collect())
}
