//! Table-driven arithmetic in `F_{q^s}` with `q = p^m`.
//!
//! Elements are stored as coordinate indices `sum c_i p^i` over the basis
//! `1, x, ..., x^{n-1}` of `F_p[x]/(modulus_qs)`, `n = m s`. Multiplication goes
//! through discrete log tables, addition through XOR (p = 2) or Zech logarithms.
//! The subfield `F_q` is `{ x : x^q = x }`; a separate modulus for `F_q` fixes the
//! coordinates users write `F_q` constants in, and its least root in `F_{q^s}`
//! fixes the embedding.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field size `p^{ms}`.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// An element of `F_{q^s}`, as a coordinate index. The derived order is the
/// lexicographic order of coordinate vectors read from the highest power of
/// `x` down, which is what branch policies use for tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serializable description of `F_q` and `F_{q^s}`.
///
/// Moduli are monic coefficient lists over `F_p`, little-endian, leading one included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub p: u32,
    pub m: u32,
    pub s: u32,
    pub modulus_q: Vec<u32>,
    pub modulus_qs: Vec<u32>,
}

impl FieldConfig {
    /// Picks the lexicographically least irreducible moduli of degrees `m` and `m s`.
    pub fn auto(p: u32, m: u32, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        if m == 0 || s == 0 {
            return Err(Error::InvalidConfig("extension degrees must be positive".into()));
        }
        check_size(p, m * s)?;
        Ok(FieldConfig {
            p,
            m,
            s,
            modulus_q: least_irreducible(p, m as usize),
            modulus_qs: least_irreducible(p, (m * s) as usize),
        })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

fn check_size(p: u32, n: u32) -> Result<()> {
    let size = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if size > MAX_FIELD_SIZE {
        return Err(Error::InvalidConfig(format!(
            "field of size {p}^{n} exceeds the supported maximum {MAX_FIELD_SIZE}"
        )));
    }
    Ok(())
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

// Dense polynomials over F_p as little-endian coefficient vectors.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &c) in m.iter().enumerate() {
            let sub = (c as u64 * factor as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn monic_from_index(p: u32, deg: usize, idx: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg + 1);
    let mut x = idx;
    for _ in 0..deg {
        c.push((x % p as u64) as u32);
        x /= p as u64;
    }
    c.push(1);
    c
}

/// Trial division by every monic polynomial of degree `<= deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d as u32) {
            let g = monic_from_index(p, d, idx);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `deg`, ordering candidates by their
/// lower coefficients read as a base-`p` integer.
pub(crate) fn least_irreducible(p: u32, deg: usize) -> Vec<u32> {
    (0..(p as u64).pow(deg as u32))
        .map(|idx| monic_from_index(p, deg, idx))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// The field `F_{q^s}` together with its subfield `F_q`.
pub struct FiniteField {
    config: FieldConfig,
    p: u32,
    n: u32,
    size: u32,
    q: u64,
    /// `exp[k] = g^k` for `0 <= k < 2(Q-1)`, doubled so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    /// Full addition table for small odd-characteristic fields.
    add_table: Option<Vec<u16>>,
    /// Image of `F_q`'s generator (root of `modulus_q`).
    fq_gen: Fq,
}

const NO_LOG: u32 = u32::MAX;

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (q = {}, s = {})", self.p, self.n, self.q, self.config.s)
    }
}

impl FiniteField {
    pub fn new(config: FieldConfig) -> Result<Self> {
        let FieldConfig { p, m, s, .. } = config;
        if !is_prime(p) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        let n = m * s;
        check_size(p, n)?;
        for (name, modulus, deg) in [("modulus_q", &config.modulus_q, m), ("modulus_qs", &config.modulus_qs, n)] {
            if modulus.len() != deg as usize + 1 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
                return Err(Error::InvalidConfig(format!("{name} must be a monic degree-{deg} polynomial over F_{p}")));
            }
            if !is_irreducible(modulus, p) {
                return Err(Error::InvalidConfig(format!("{name} is reducible")));
            }
        }
        let size = p.pow(n);
        let to_coords = |mut idx: u32| -> Vec<u32> {
            (0..n)
                .map(|_| {
                    let c = idx % p;
                    idx /= p;
                    c
                })
                .collect()
        };
        let from_coords = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) };
        let mulmod = |a: u32, b: u32| -> u32 {
            from_coords(&poly_rem(&poly_mul(&trim(to_coords(a)), &trim(to_coords(b)), p), &config.modulus_qs, p))
        };

        // Find the least primitive element.
        let order = size - 1;
        let prime_factors: Vec<u32> = {
            let mut fs = Vec::new();
            let mut x = order;
            let mut d = 2;
            while d * d <= x {
                if x % d == 0 {
                    fs.push(d);
                    while x % d == 0 {
                        x /= d;
                    }
                }
                d += 1;
            }
            if x > 1 {
                fs.push(x);
            }
            fs
        };
        let slow_pow = |g: u32, mut e: u32| -> u32 {
            let mut r = 1u32;
            let mut b = g;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            r
        };
        let generator = if size == 2 {
            1
        } else {
            (2..size)
                .find(|&g| prime_factors.iter().all(|&l| slow_pow(g, order / l) != 1))
                .expect("multiplicative group is cyclic")
        };
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; size as usize];
        let mut x = 1u32;
        for k in 0..order {
            exp.push(x);
            log[x as usize] = k;
            x = mulmod(x, generator);
        }
        // zech[d] = log(1 + g^d), NO_LOG when 1 + g^d = 0.
        let add_coords = |a: u32, b: u32| -> u32 {
            let (ca, cb) = (to_coords(a), to_coords(b));
            from_coords(&ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect::<Vec<_>>())
        };
        let zech = (0..order)
            .map(|d| {
                let v = add_coords(1, exp[d as usize]);
                if v == 0 {
                    NO_LOG
                } else {
                    log[v as usize]
                }
            })
            .collect();
        let add_table = (p != 2 && size <= 1024).then(|| {
            let mut t = vec![0u16; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = add_coords(a, b) as u16;
                }
            }
            t
        });
        let mut exp = exp;
        exp.extend_from_within(..);
        let mut field = FiniteField {
            p,
            n,
            size,
            q: (p as u64).pow(m),
            exp,
            log,
            zech,
            add_table,
            fq_gen: Fq::ONE,
            config,
        };
        // Embedding of F_q: least root of modulus_q.
        let modulus_q = field.config.modulus_q.clone();
        let root = field
            .elements()
            .find(|&x| {
                let mut acc = Fq::ZERO;
                for &c in modulus_q.iter().rev() {
                    acc = field.add(field.mul(acc, x), field.from_int(c as i64));
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::InvalidConfig("modulus_q has no root in F_{q^s}".into()))?;
        field.fq_gen = root;
        Ok(field)
    }

    pub fn config(&self) -> &FieldConfig {
        &self.config
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn m(&self) -> u32 {
        self.config.m
    }
    pub fn s(&self) -> u32 {
        self.config.s
    }
    /// Degree of `F_{q^s}` over `F_p`.
    pub fn degree(&self) -> u32 {
        self.n
    }
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.size).map(Fq)
    }

    pub fn coords(&self, x: Fq) -> Vec<u32> {
        let mut idx = x.0;
        (0..self.n)
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<Fq> {
        if c.len() > self.n as usize || c.iter().any(|&d| d >= self.p) {
            return Err(Error::InvalidConfig(format!("bad coordinate vector {c:?}")));
        }
        Ok(Fq(c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Fq {
        Fq(k.rem_euclid(self.p as i64) as u32)
    }

    /// Embeds an `F_q` element given in coordinates over `modulus_q`.
    pub fn embed_fq(&self, coords: &[u32]) -> Result<Fq> {
        if coords.len() > self.config.m as usize || coords.iter().any(|&d| d >= self.p) {
            return Err(Error::InvalidConfig(format!("bad F_q coordinates {coords:?}")));
        }
        let mut acc = Fq::ZERO;
        for &c in coords.iter().rev() {
            acc = self.add(self.mul(acc, self.fq_gen), self.from_int(c as i64));
        }
        Ok(acc)
    }

    /// Coordinates of an element of `F_q` in the basis of powers of [`Self::fq_generator`].
    pub fn fq_coords(&self, x: Fq) -> Option<Vec<u32>> {
        let m = self.config.m as usize;
        (0..self.q()).find_map(|mut k| {
            let c: Vec<u32> = (0..m)
                .map(|_| {
                    let d = (k % self.p as u64) as u32;
                    k /= self.p as u64;
                    d
                })
                .collect();
            (self.embed_fq(&c).ok()? == x).then_some(c)
        })
    }

    /// Generator of `F_q` inside `F_{q^s}` (the chosen root of `modulus_q`).
    pub fn fq_generator(&self) -> Fq {
        self.fq_gen
    }

    /// Elements of the subfield `F_q`, in increasing order.
    pub fn fq_elements(&self) -> Vec<Fq> {
        self.elements().filter(|&x| self.in_fq(x)).collect()
    }

    #[inline]
    pub fn in_fq(&self, x: Fq) -> bool {
        self.frob(x, 1) == x
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_table {
            return Fq(t[(a.0 * self.size + b.0) as usize] as u32);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let order = self.size - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return Fq::ZERO;
        }
        let mut k = la + z;
        if k >= order {
            k -= order;
        }
        Fq(self.exp[k as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        let order = self.size - 1;
        let mut k = self.log[a.0 as usize] + order / 2;
        if k >= order {
            k -= order;
        }
        Fq(self.exp[k as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        Fq(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// `acc[j] += a * b[j]` for every `j < min(acc.len(), b.len())`.
    pub fn mul_acc(&self, acc: &mut [Fq], a: Fq, b: &[Fq]) {
        if a.is_zero() {
            return;
        }
        let la = self.log[a.0 as usize] as usize;
        let n = acc.len().min(b.len());
        if self.p == 2 {
            for (x, &y) in acc[..n].iter_mut().zip(&b[..n]) {
                if !y.is_zero() {
                    x.0 ^= self.exp[la + self.log[y.0 as usize] as usize];
                }
            }
        } else {
            for (x, &y) in acc[..n].iter_mut().zip(&b[..n]) {
                if !y.is_zero() {
                    *x = self.add(*x, Fq(self.exp[la + self.log[y.0 as usize] as usize]));
                }
            }
        }
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.size - 1;
        let l = self.log[a.0 as usize];
        Ok(Fq(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for any integer `k` (negative powers need `a != 0`).
    pub fn pow(&self, a: Fq, k: i64) -> Result<Fq> {
        if a.is_zero() {
            return match k {
                0 => Ok(Fq::ONE),
                k if k > 0 => Ok(Fq::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let order = (self.size - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let e = (l as i128 * k.rem_euclid(order) as i128).rem_euclid(order as i128) as usize;
        Ok(Fq(self.exp[e]))
    }

    /// Frobenius twist `a^{q^k}` for any integer `k`.
    pub fn frob(&self, a: Fq, k: i64) -> Fq {
        if a.is_zero() {
            return a;
        }
        let s = self.config.s as i64;
        let k = k.rem_euclid(s) as u32;
        let order = (self.size - 1) as u64;
        let mut e = self.log[a.0 as usize] as u64;
        for _ in 0..k {
            e = e * self.q % order;
        }
        Fq(self.exp[e as usize])
    }

    /// `p`-th root (inverse of `x -> x^p`).
    pub fn pth_root(&self, a: Fq) -> Fq {
        if a.is_zero() {
            return a;
        }
        let order = (self.size - 1) as u64;
        // x^{p^{n-1}} is the inverse of x^p.
        let mut e = self.log[a.0 as usize] as u64;
        for _ in 0..self.n - 1 {
            e = e * self.p as u64 % order;
        }
        Fq(self.exp[e as usize])
    }

    /// All `k`-th roots of `a` in `F_{q^s}`, in increasing order.
    pub fn roots_of(&self, a: Fq, k: u64) -> Vec<Fq> {
        if a.is_zero() {
            return vec![Fq::ZERO];
        }
        let order = (self.size - 1) as u64;
        let la = self.log[a.0 as usize] as u64;
        let mut out: Vec<Fq> = (0..order)
            .filter(|&x| (x as u128 * k as u128 % order as u128) as u64 == la)
            .map(|x| Fq(self.exp[x as usize]))
            .collect();
        out.sort();
        out
    }

    /// Trace from `F_{q^s}` down to `F_q`.
    pub fn trace_to_fq(&self, a: Fq) -> Fq {
        (0..self.config.s as i64).fold(Fq::ZERO, |acc, k| self.add(acc, self.frob(a, k)))
    }

    pub fn fmt_elem(&self, a: Fq) -> String {
        format!("{:?}", self.coords(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FiniteField {
        FiniteField::new(FieldConfig::auto(2, 2, 1).unwrap()).unwrap()
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn f4_omega_squared() {
        let f = f4();
        let w = f.from_coords(&[0, 1]).unwrap();
        let w_plus_1 = f.from_coords(&[1, 1]).unwrap();
        assert_eq!(f.mul(w, w), w_plus_1);
        assert_eq!(f.frob(w, 0), w);
        // the p-power map on F_4 over F_2; q = 4 so x^q = x
        assert_eq!(f.pow(w, 2).unwrap(), w_plus_1);
        assert_eq!(f.frob(w, 1), w);
    }

    #[test]
    fn division_identity_and_zero() {
        let f = FiniteField::new(FieldConfig::auto(3, 1, 3).unwrap()).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.div(x, x).unwrap(), Fq::ONE);
            assert_eq!(f.add(x, f.neg(x)), Fq::ZERO);
        }
        assert_eq!(f.inv(Fq::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = FiniteField::new(FieldConfig::auto(2, 1, 4).unwrap()).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(f.frob(f.add(x, y), 1), f.add(f.frob(x, 1), f.frob(y, 1)));
                assert_eq!(f.frob(f.mul(x, y), 1), f.mul(f.frob(x, 1), f.frob(y, 1)));
            }
            assert_eq!(f.frob(f.frob(x, 3), -3), x);
            assert_eq!(f.pow(f.pth_root(x), 2).unwrap(), x);
        }
    }

    #[test]
    fn subfield_embedding() {
        let f = FiniteField::new(FieldConfig::auto(2, 2, 2).unwrap()).unwrap();
        let fq = f.fq_elements();
        assert_eq!(fq.len(), 4);
        let g = f.fq_generator();
        assert!(f.in_fq(g));
        // g satisfies x^2 + x + 1
        assert_eq!(f.add(f.add(f.mul(g, g), g), Fq::ONE), Fq::ZERO);
        assert_eq!(f.embed_fq(&[0, 1]).unwrap(), g);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(FieldConfig::auto(4, 1, 1).is_err());
        let mut c = FieldConfig::auto(2, 1, 2).unwrap();
        c.modulus_qs = vec![1, 0, 1];
        assert!(FiniteField::new(c).is_err());
    }
}
