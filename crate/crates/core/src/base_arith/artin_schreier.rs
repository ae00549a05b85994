//! Solving `y^q + a y = c` over `F_{q^s}` by `F_p`-linear algebra.

use super::field::{FiniteField, Fq};

/// Matrix of the `F_p`-linear map `y -> y^q + a y` in the coordinate basis (columns are images of basis vectors).
fn linear_map(f: &FiniteField, a: Fq) -> Vec<Vec<u32>> {
    let n = f.degree() as usize;
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        let b = f.from_coords(&e).expect("basis vector");
        cols.push(f.coords(f.add(f.frob(b, 1), f.mul(a, b))));
    }
    // rows x cols
    (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (a as u64 * x as u64) % p as u64 == 1).expect("nonzero residue")
}

/// Every root of `y^q + a y = c` in `F_{q^s}`, sorted in increasing order.
///
/// The root set is empty or a coset of the kernel, so it has at most `q` elements.
pub fn residue_artin_schreier_all(f: &FiniteField, a: Fq, c: Fq) -> Vec<Fq> {
    let p = f.p();
    let n = f.degree() as usize;
    let mut m = linear_map(f, a);
    let rhs = f.coords(c);
    for (row, &b) in m.iter_mut().zip(&rhs) {
        row.push(b);
    }
    // Reduced row echelon form mod p.
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..n).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][col], p);
        for x in m[r].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for i in 0..n {
            if i != r && m[i][col] != 0 {
                let factor = m[i][col];
                for j in 0..=n {
                    let sub = (factor as u64 * m[r][j] as u64 % p as u64) as u32;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| row[n] != 0) {
        return Vec::new();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut roots = Vec::new();
    let combos = (p as u64).pow(free.len() as u32);
    for mut idx in 0..combos {
        let mut y = vec![0u32; n];
        for &fc in &free {
            y[fc] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        for (i, &pc) in pivots.iter().enumerate() {
            let mut v = m[i][n] as u64;
            for &fc in &free {
                v = (v + (p - m[i][fc]) as u64 * y[fc] as u64) % p as u64;
            }
            y[pc] = v as u32;
        }
        roots.push(f.from_coords(&y).expect("valid coordinates"));
    }
    roots.sort();
    roots
}

/// The lexicographically least root of `y^q + a y = c`, or `None` if there is none in `F_{q^s}`.
pub fn residue_artin_schreier(f: &FiniteField, a: Fq, c: Fq) -> Option<Fq> {
    residue_artin_schreier_all(f, a, c).into_iter().next()
}
