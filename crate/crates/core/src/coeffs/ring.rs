//! A small ring interface shared by the scalar models, and parameter specialization.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FiniteField, Gf};
use super::laurent::HalfLaurent;
use super::padic::{Padic, PadicRing};
use crate::error::{Error, Result};

pub trait Ring: Clone + Debug + Send + Sync {
    type Elt: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn from_int(&self, n: i128) -> Self::Elt;
    /// Fallible only for the monomial model.
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Result<Self::Elt>;
    fn neg(&self, a: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn is_zero(&self, a: &Self::Elt) -> bool;
    fn inv(&self, a: &Self::Elt) -> Result<Self::Elt>;
    fn sqrt(&self, a: &Self::Elt) -> Result<Self::Elt>;

    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Result<Self::Elt> {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elt, e: i64) -> Result<Self::Elt> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut r = self.one();
        for _ in 0..e.unsigned_abs() {
            r = self.mul(&r, &base);
        }
        Ok(r)
    }

    fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Self::Elt>) -> Result<Self::Elt>
    where
        Self::Elt: 'a,
    {
        let mut acc = self.zero();
        for x in xs {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }
}

/// The rational numbers.
#[derive(Clone, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elt = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i128) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        Ok(a + b)
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::Division("inverse of zero".into()));
        }
        Ok(a.recip())
    }
    fn sqrt(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_negative() {
            return Err(Error::Config(format!("{a} has no rational square root")));
        }
        let (n, d) = (a.numer().sqrt(), a.denom().sqrt());
        if &n * &n == *a.numer() && &d * &d == *a.denom() {
            Ok(BigRational::new(n, d))
        } else {
            Err(Error::Config(format!("{a} has no rational square root")))
        }
    }
}

impl Ring for FiniteField {
    type Elt = Gf;

    fn zero(&self) -> Gf {
        FiniteField::zero(self)
    }
    fn one(&self) -> Gf {
        FiniteField::one(self)
    }
    fn from_int(&self, n: i128) -> Gf {
        FiniteField::from_int(self, n)
    }
    fn add(&self, a: &Gf, b: &Gf) -> Result<Gf> {
        Ok(FiniteField::add(self, a, b))
    }
    fn neg(&self, a: &Gf) -> Gf {
        FiniteField::neg(self, a)
    }
    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        FiniteField::mul(self, a, b)
    }
    fn is_zero(&self, a: &Gf) -> bool {
        FiniteField::is_zero(self, a)
    }
    fn inv(&self, a: &Gf) -> Result<Gf> {
        FiniteField::inv(self, a)
    }
    fn sqrt(&self, a: &Gf) -> Result<Gf> {
        FiniteField::sqrt(self, a)
    }
}

impl Ring for PadicRing {
    type Elt = Padic;

    fn zero(&self) -> Padic {
        Padic::Zero
    }
    fn one(&self) -> Padic {
        PadicRing::one(self)
    }
    fn from_int(&self, n: i128) -> Padic {
        PadicRing::from_int(self, n)
    }
    fn add(&self, a: &Padic, b: &Padic) -> Result<Padic> {
        PadicRing::add(self, a, b)
    }
    fn neg(&self, a: &Padic) -> Padic {
        PadicRing::neg(self, a)
    }
    fn mul(&self, a: &Padic, b: &Padic) -> Padic {
        PadicRing::mul(self, a, b)
    }
    fn is_zero(&self, a: &Padic) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Padic) -> Result<Padic> {
        PadicRing::inv(self, a)
    }
    fn sqrt(&self, a: &Padic) -> Result<Padic> {
        self.nth_root(a, 2)
    }
}

/// A parameter specialization `q_c -> phi(q_c)` with a chosen root for each `v_c`.
#[derive(Clone, Debug)]
pub struct Specialization<R: Ring> {
    ring: R,
    roots: Vec<R::Elt>,
}

impl<R: Ring> Specialization<R> {
    /// `roots[c]` is the image of `v_c`, so `phi(q_c) = roots[c]^2`.
    pub fn from_roots(ring: R, roots: Vec<R::Elt>) -> Self {
        Specialization { ring, roots }
    }

    /// Chooses roots of the given values of `q_c` with [`Ring::sqrt`].
    pub fn from_q(ring: R, q: &[R::Elt]) -> Result<Self> {
        let roots = q.iter().map(|x| ring.sqrt(x)).collect::<Result<Vec<_>>>()?;
        Ok(Specialization { ring, roots })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn classes(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, c: usize) -> &R::Elt {
        &self.roots[c]
    }

    pub fn q(&self, c: usize) -> R::Elt {
        self.ring.mul(&self.roots[c], &self.roots[c])
    }

    /// Image of the monomial `v^exps`.
    pub fn monomial(&self, exps: &[i32]) -> Result<R::Elt> {
        let mut acc = self.ring.one();
        for (c, e) in exps.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let r = &self.roots[c];
            if *e < 0 && self.ring.is_zero(r) {
                return Err(Error::Specialization(format!(
                    "negative power of v_{c} with phi(q_{c}) = 0"
                )));
            }
            acc = self.ring.mul(&acc, &self.ring.pow(r, *e as i64)?);
        }
        Ok(acc)
    }

    pub fn apply(&self, a: &HalfLaurent) -> Result<R::Elt> {
        let mut acc = self.ring.zero();
        for (e, c) in a.terms() {
            if e.len() != self.roots.len() {
                return Err(Error::Specialization(format!(
                    "{} classes expected, term has {}",
                    self.roots.len(),
                    e.len()
                )));
            }
            let t = self.ring.mul(&self.ring.from_int(*c), &self.monomial(e)?);
            acc = self.ring.add(&acc, &t)?;
        }
        Ok(acc)
    }
}
