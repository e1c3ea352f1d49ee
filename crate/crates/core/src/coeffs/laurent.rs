//! Laurent polynomials in the half-parameters `v_c`, with `v_c^2 = q_c`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector: one entry per parameter class, counting powers of `v_c`.
pub type Exps = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<Exps, i128>,
}

fn checked(c: Option<i128>) -> i128 {
    c.expect("HalfLaurent coefficient overflow")
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent { terms: BTreeMap::new() }
    }

    /// The constant `c` in `k` parameter classes.
    pub fn constant(k: usize, c: i128) -> Self {
        Self::monomial(vec![0; k], c)
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, 1)
    }

    pub fn monomial(exps: Exps, coef: i128) -> Self {
        let mut terms = BTreeMap::new();
        if coef != 0 {
            terms.insert(exps, coef);
        }
        HalfLaurent { terms }
    }

    /// `q_c` as a polynomial in `k` classes.
    pub fn q(k: usize, class: usize) -> Self {
        let mut e = vec![0; k];
        e[class] = 2;
        Self::monomial(e, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &i128)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> i128 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn add_term(&mut self, exps: &[i32], coef: i128) {
        if coef == 0 {
            return;
        }
        if let Some(c) = self.terms.get_mut(exps) {
            *c = checked(c.checked_add(coef));
            if *c == 0 {
                self.terms.remove(exps);
            }
        } else {
            self.terms.insert(exps.to_vec(), coef);
        }
    }

    pub fn add_assign_ref(&mut self, other: &HalfLaurent) {
        for (e, c) in &other.terms {
            self.add_term(e, *c);
        }
    }

    /// `self += coef * v^shift * other`.
    pub fn add_scaled(&mut self, other: &HalfLaurent, shift: &[i32], coef: i128) {
        if coef == 0 {
            return;
        }
        for (e, c) in &other.terms {
            let ex: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            self.add_term(&ex, checked(c.checked_mul(coef)));
        }
    }

    /// Multiply by the monomial `v^shift`.
    pub fn shift(&self, shift: &[i32]) -> HalfLaurent {
        HalfLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), *c))
                .collect(),
        }
    }

    /// Single term with coefficient 1; returns its exponent vector.
    pub fn is_monic_monomial(&self) -> Option<Exps> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        (*c == 1).then(|| e.clone())
    }

    pub fn single_term(&self) -> Option<(&Exps, i128)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (e, *c))
    }

    /// Membership in `Z[q_*]`: every exponent even and nonnegative.
    pub fn is_polynomial_in_q(&self) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().all(|&x| x >= 0 && x % 2 == 0))
    }

    /// Exact division by a unit monomial `±v^e`.
    pub fn div_exact(&self, d: &HalfLaurent) -> Result<HalfLaurent> {
        if d.terms.len() != 1 {
            return Err(Error::Division(format!("divisor {d} is not a monomial")));
        }
        let (e, c) = d.terms.iter().next().unwrap();
        if c.abs() != 1 {
            return Err(Error::Division(format!("divisor {d} is not a unit")));
        }
        let neg: Vec<i32> = e.iter().map(|x| -x).collect();
        let mut out = self.shift(&neg);
        if *c == -1 {
            out = -out;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i128) -> HalfLaurent {
        if c == 0 {
            return HalfLaurent::zero();
        }
        HalfLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), checked(x.checked_mul(c))))
                .collect(),
        }
    }

    /// Number of parameter classes, if any term is present.
    pub fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(|e| e.len())
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(mut self, rhs: HalfLaurent) -> HalfLaurent {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(mut self) -> HalfLaurent {
        for c in self.terms.values_mut() {
            *c = checked(c.checked_neg());
        }
        self
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -(self.clone())
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: HalfLaurent) -> HalfLaurent {
        &self - &rhs
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (e, c) in &self.terms {
            out.add_scaled(rhs, e, *c);
        }
        out
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: HalfLaurent) -> HalfLaurent {
        &self * &rhs
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    let name = if e.len() == 1 { "v".to_string() } else { format!("v{i}") };
                    if *x == 1 {
                        mono.push_str(&name);
                    } else {
                        mono.push_str(&format!("{name}^{x}"));
                    }
                }
            }
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (mono.is_empty(), mag) {
                (true, m) => write!(f, "{m}")?,
                (false, 1) => write!(f, "{mono}")?,
                (false, m) => write!(f, "{m}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<i32>,
    coef: i64,
}

impl Serialize for HalfLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exps: e.clone(),
                coef: i64::try_from(*c).expect("coefficient exceeds JSON range"),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<TermJson> = Vec::deserialize(d)?;
        let mut out = HalfLaurent::zero();
        for t in v {
            out.add_term(&t.exps, t.coef as i128);
        }
        Ok(out)
    }
}
