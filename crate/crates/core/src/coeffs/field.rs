//! The finite field `F_{p^k}` in a polynomial basis over `F_p`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `F_{p^k}`: coefficients of `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf(pub Vec<u64>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

struct Bsgs {
    m: u64,
    baby: HashMap<Gf, u64>,
    giant: Gf,
}

struct FieldInner {
    p: u64,
    k: usize,
    /// Monic irreducible modulus, low degree first, length `k + 1`.
    modulus: Vec<u64>,
    generator: OnceLock<Gf>,
    order_factors: Vec<u64>,
    bsgs: OnceLock<Arc<Bsgs>>,
}

/// Handle on a configured field `F_{p^k}`; cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldInner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

// Dense polynomials over F_p, low degree first, trimmed.
mod fp_poly {
    use super::pow_mod;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(v)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let inv_lead = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = r[r.len() - 1] * inv_lead % p;
            for (i, y) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * y % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^e)` modulo `m`.
    pub fn frobenius_x(m: &[u64], p: u64, e: usize) -> Vec<u64> {
        let mut r = vec![0, 1];
        for _ in 0..e {
            r = pow(&r, p, m, p);
        }
        rem(&r, m, p)
    }

    pub fn pow(b: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(b, m, p);
        let mut r = vec![1];
        while e > 0 {
            if e & 1 == 1 {
                r = rem(&mul(&r, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        r
    }
}

/// Rabin's irreducibility test for a monic `f` of degree `k` over `F_p`.
fn is_irreducible(f: &[u64], p: u64, k: usize) -> bool {
    let x = vec![0u64, 1];
    if fp_poly::sub(&fp_poly::frobenius_x(f, p, k), &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let h = fp_poly::sub(&fp_poly::frobenius_x(f, p, k / r as usize), &x, p);
        if fp_poly::gcd(f, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    /// Builds `F_{p^k}` using the lexicographically first monic irreducible modulus.
    pub fn new(p: u64, k: usize) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Config("field degree must be positive".into()));
        }
        let size = (p as u128).checked_pow(k as u32).filter(|s| *s < (1u128 << 62));
        let Some(size) = size else {
            return Err(Error::Config(format!("F_{p}^{k} is too large")));
        };
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            let total = (size) as u64;
            for idx in 0..total {
                let mut f = Vec::with_capacity(k + 1);
                let mut t = idx;
                for _ in 0..k {
                    f.push(t % p);
                    t /= p;
                }
                f.push(1);
                if f[0] != 0 && is_irreducible(&f, p, k) {
                    found = Some(f);
                    break;
                }
            }
            found.ok_or_else(|| Error::Config("no irreducible modulus".into()))?
        };
        let order = size as u64 - 1;
        Ok(FiniteField(Arc::new(FieldInner {
            p,
            k,
            modulus,
            generator: OnceLock::new(),
            order_factors: prime_factors(order),
            bsgs: OnceLock::new(),
        })))
    }

    fn find_generator(&self) -> Gf {
        let order = self.order() - 1;
        for idx in 1..self.order() {
            let g = self.from_index(idx);
            if self
                .0
                .order_factors
                .iter()
                .all(|r| self.pow(&g, order / r) != self.one())
            {
                return g;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Number of field elements.
    pub fn order(&self) -> u64 {
        self.0.p.pow(self.0.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Least-index generator of the multiplicative group.
    pub fn generator(&self) -> Gf {
        self.0.generator.get_or_init(|| self.find_generator()).clone()
    }

    pub fn zero(&self) -> Gf {
        Gf(vec![0; self.0.k])
    }

    pub fn one(&self) -> Gf {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i128) -> Gf {
        let p = self.0.p as i128;
        let mut v = vec![0; self.0.k];
        v[0] = n.rem_euclid(p) as u64;
        Gf(v)
    }

    /// Element whose base-`p` digits are the coefficients.
    pub fn from_index(&self, mut idx: u64) -> Gf {
        let mut v = vec![0; self.0.k];
        for c in v.iter_mut() {
            *c = idx % self.0.p;
            idx /= self.0.p;
        }
        Gf(v)
    }

    pub fn from_coeffs(&self, c: &[i64]) -> Result<Gf> {
        if c.len() > self.0.k {
            return Err(Error::Parse(format!(
                "{} coefficients for a degree-{} field",
                c.len(),
                self.0.k
            )));
        }
        let p = self.0.p as i64;
        let mut v = vec![0; self.0.k];
        for (i, x) in c.iter().enumerate() {
            v[i] = x.rem_euclid(p) as u64;
        }
        Ok(Gf(v))
    }

    pub fn is_zero(&self, a: &Gf) -> bool {
        a.0.iter().all(|c| *c == 0)
    }

    pub fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let p = self.0.p;
        Gf(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % p).collect())
    }

    pub fn neg(&self, a: &Gf) -> Gf {
        let p = self.0.p;
        Gf(a.0.iter().map(|x| (p - x) % p).collect())
    }

    pub fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        let p = self.0.p;
        let k = self.0.k;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.0.modulus;
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + p - c * m[i] % p) % p;
            }
        }
        prod.truncate(k);
        Gf(prod)
    }

    pub fn pow(&self, a: &Gf, mut e: u64) -> Gf {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: &Gf) -> Result<Gf> {
        if self.is_zero(a) {
            return Err(Error::Division("inverse of zero in a finite field".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn frobenius(&self, a: &Gf) -> Gf {
        self.pow(a, self.0.p)
    }

    /// True iff `a` lies in the subfield `F_{p^d}`.
    pub fn in_subfield(&self, a: &Gf, d: usize) -> bool {
        let mut b = a.clone();
        for _ in 0..d {
            b = self.frobenius(&b);
        }
        &b == a
    }

    /// Generator of the multiplicative group of the subfield `F_{p^d}`.
    pub fn subfield_generator(&self, d: usize) -> Result<Gf> {
        if self.0.k % d != 0 {
            return Err(Error::Config(format!(
                "F_{}^{} has no subfield of degree {d}",
                self.0.p, self.0.k
            )));
        }
        let sub_order = self.0.p.pow(d as u32) - 1;
        Ok(self.pow(&self.generator(), (self.order() - 1) / sub_order))
    }

    fn bsgs(&self) -> Arc<Bsgs> {
        self.0.bsgs.get_or_init(|| {
            let n = self.order() - 1;
            let m = (n as f64).sqrt().ceil() as u64 + 1;
            let g = &self.generator();
            let mut baby = HashMap::with_capacity(m as usize);
            let mut cur = self.one();
            for j in 0..m {
                baby.entry(cur.clone()).or_insert(j);
                cur = self.mul(&cur, g);
            }
            let giant = self.inv(&self.pow(g, m)).expect("generator is nonzero");
            Arc::new(Bsgs { m, baby, giant })
        }).clone()
    }

    /// Discrete logarithm to the base of the fixed generator.
    pub fn log(&self, a: &Gf) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::Division("logarithm of zero".into()));
        }
        let t = self.bsgs();
        let mut gamma = a.clone();
        for i in 0..=t.m {
            if let Some(j) = t.baby.get(&gamma) {
                return Ok((i * t.m + j) % (self.order() - 1));
            }
            gamma = self.mul(&gamma, &t.giant);
        }
        unreachable!("every nonzero element is a power of the generator")
    }

    /// An `n`-th root of `a`, chosen as `g^i` with the least admissible `i`.
    pub fn nth_root(&self, a: &Gf, n: u64) -> Result<Gf> {
        if n == 0 {
            return Err(Error::Config("0-th root".into()));
        }
        if self.is_zero(a) {
            return Ok(self.zero());
        }
        let big_n = self.order() - 1;
        let j = self.log(a)?;
        let d = num_integer::gcd(n, big_n);
        if j % d != 0 {
            return Err(Error::Config(format!(
                "{a:?} has no {n}-th root in F_{}^{}; enlarge k",
                self.0.p, self.0.k
            )));
        }
        let m = big_n / d;
        let nd = (n / d) % m.max(1);
        let i = if m == 1 {
            0
        } else {
            let inv = mod_inverse(nd, m).expect("n/d is prime to the order/d");
            ((j / d) as u128 * inv as u128 % m as u128) as u64
        };
        Ok(self.pow(&self.generator(), i))
    }

    pub fn sqrt(&self, a: &Gf) -> Result<Gf> {
        self.nth_root(a, 2)
    }

    /// All elements, in index order. Only sensible for small fields.
    pub fn elements(&self) -> Vec<Gf> {
        (0..self.order()).map(|i| self.from_index(i)).collect()
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Dense univariate polynomials over `F_{p^k}`, low degree first.
pub mod poly {
    use super::{FiniteField, Gf};
    use rand::Rng;

    pub type Poly = Vec<Gf>;

    pub fn trim(f: &FiniteField, mut a: Poly) -> Poly {
        while a.last().is_some_and(|c| f.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn sub(f: &FiniteField, a: &[Gf], b: &[Gf]) -> Poly {
        let n = a.len().max(b.len());
        let z = f.zero();
        let v = (0..n)
            .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        trim(f, v)
    }

    pub fn mul(f: &FiniteField, a: &[Gf], b: &[Gf]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        trim(f, out)
    }

    pub fn rem(f: &FiniteField, a: &[Gf], m: &[Gf]) -> Poly {
        let mut r = trim(f, a.to_vec());
        let dm = m.len() - 1;
        let inv = f.inv(&m[dm]).expect("nonzero leading coefficient");
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = f.mul(&r[r.len() - 1], &inv);
            for (i, y) in m.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, y));
            }
            r = trim(f, r);
        }
        r
    }

    pub fn gcd(f: &FiniteField, a: &[Gf], b: &[Gf]) -> Poly {
        let (mut a, mut b) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.last().cloned() {
            let inv = f.inv(&lead).unwrap();
            a = a.iter().map(|c| f.mul(c, &inv)).collect();
        }
        a
    }

    pub fn pow_mod(f: &FiniteField, b: &[Gf], mut e: u64, m: &[Gf]) -> Poly {
        let mut base = rem(f, b, m);
        let mut r = vec![f.one()];
        while e > 0 {
            if e & 1 == 1 {
                r = rem(f, &mul(f, &r, &base), m);
            }
            base = rem(f, &mul(f, &base, &base), m);
            e >>= 1;
        }
        r
    }

    pub fn eval(f: &FiniteField, a: &[Gf], x: &Gf) -> Gf {
        let mut acc = f.zero();
        for c in a.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Distinct roots of `a` in the field, sorted.
    pub fn roots(f: &FiniteField, a: &[Gf], rng: &mut impl Rng) -> Vec<Gf> {
        let a = trim(f, a.to_vec());
        if a.len() <= 1 {
            return vec![];
        }
        let x = vec![f.zero(), f.one()];
        let xq = pow_mod(f, &x, f.order(), &a);
        let g = gcd(f, &a, &sub(f, &xq, &x));
        let mut out = Vec::new();
        split(f, &g, rng, &mut out);
        out.sort();
        out
    }

    fn split(f: &FiniteField, g: &[Gf], rng: &mut impl Rng, out: &mut Vec<Gf>) {
        let deg = g.len().saturating_sub(1);
        if deg == 0 {
            return;
        }
        if deg == 1 {
            let inv = f.inv(&g[1]).unwrap();
            out.push(f.neg(&f.mul(&g[0], &inv)));
            return;
        }
        if f.order() <= 64 {
            for e in f.elements() {
                if f.is_zero(&eval(f, g, &e)) {
                    out.push(e);
                }
            }
            return;
        }
        loop {
            let delta = f.from_index(rng.gen_range(0..f.order()));
            let h = if f.p() == 2 {
                // Trace map splits in characteristic two.
                let mut t = vec![delta.clone(), f.one()];
                let mut acc = t.clone();
                for _ in 1..f.k() {
                    t = pow_mod(f, &t, 2, g);
                    acc = trim(f, (0..acc.len().max(t.len()))
                        .map(|i| {
                            let z = f.zero();
                            f.add(acc.get(i).unwrap_or(&z), t.get(i).unwrap_or(&z))
                        })
                        .collect());
                }
                acc
            } else {
                let t = pow_mod(f, &[delta, f.one()], (f.order() - 1) / 2, g);
                sub(f, &t, &[f.one()])
            };
            let d = gcd(f, g, &h);
            let dd = d.len().saturating_sub(1);
            if dd > 0 && dd < deg {
                let (q, _) = divmod(f, g, &d);
                split(f, &d, rng, out);
                split(f, &q, rng, out);
                return;
            }
        }
    }

    pub fn divmod(f: &FiniteField, a: &[Gf], m: &[Gf]) -> (Poly, Poly) {
        let mut r = trim(f, a.to_vec());
        let dm = m.len() - 1;
        if r.len() <= dm {
            return (vec![], r);
        }
        let mut q = vec![f.zero(); r.len() - dm];
        let inv = f.inv(&m[dm]).unwrap();
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = f.mul(&r[r.len() - 1], &inv);
            q[shift] = c.clone();
            for (i, y) in m.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, y));
            }
            r = trim(f, r);
        }
        (trim(f, q), r)
    }
}
