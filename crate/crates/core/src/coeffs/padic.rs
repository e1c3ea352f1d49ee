//! Monomial model of `Z̄_p`: zero, or a unit residue times a rational power of a
//! fixed uniformizer.
//!
//! Units are read as Teichmüller representatives, so a product of exact monomials
//! is exact. A sum of two exact monomials of equal valuation whose residues cancel
//! is exactly zero; any other cancellation raises [`Error::Precision`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{FiniteField, Gf};
use crate::error::{Error, Result};

#[derive(Clone)]
pub enum Padic {
    Zero,
    Mono {
        val: BigRational,
        unit: Gf,
        /// True when the value is exactly `teich(unit) * pi^val`.
        exact: bool,
    },
}

impl PartialEq for Padic {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Padic::Zero, Padic::Zero) => true,
            (Padic::Mono { val: a, unit: u, .. }, Padic::Mono { val: b, unit: w, .. }) => {
                a == b && u == w
            }
            _ => false,
        }
    }
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Padic::Zero => write!(f, "0"),
            Padic::Mono { val, unit, exact } => {
                write!(f, "{unit:?}*pi^{val}{}", if *exact { "" } else { "~" })
            }
        }
    }
}

impl Padic {
    pub fn mono(val: BigRational, unit: Gf) -> Padic {
        Padic::Mono { val, unit, exact: true }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Padic::Zero)
    }

    pub fn valuation(&self) -> Option<&BigRational> {
        match self {
            Padic::Zero => None,
            Padic::Mono { val, .. } => Some(val),
        }
    }

    pub fn unit(&self) -> Option<&Gf> {
        match self {
            Padic::Zero => None,
            Padic::Mono { unit, .. } => Some(unit),
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            Padic::Zero => true,
            Padic::Mono { exact, .. } => *exact,
        }
    }

    pub fn is_integral(&self) -> bool {
        match self {
            Padic::Zero => true,
            Padic::Mono { val, .. } => !val.is_negative(),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Padic::Mono { val, .. } if val.is_zero())
    }
}

/// The monomial model over a residue field `F_{p^k}`.
#[derive(Clone, Debug)]
pub struct PadicRing {
    field: FiniteField,
}

impl PadicRing {
    pub fn new(field: FiniteField) -> Self {
        PadicRing { field }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `teich(unit) * pi^val`.
    pub fn monomial(&self, val: BigRational, unit: Gf) -> Result<Padic> {
        if self.field.is_zero(&unit) {
            return Err(Error::Division("monomial with zero unit".into()));
        }
        Ok(Padic::mono(val, unit))
    }

    /// The uniformizer power `pi^val`.
    pub fn pi_pow(&self, val: BigRational) -> Padic {
        Padic::mono(val, self.field.one())
    }

    /// Residue map; defined on integral elements.
    pub fn reduce(&self, a: &Padic) -> Result<Gf> {
        match a {
            Padic::Zero => Ok(self.field.zero()),
            Padic::Mono { val, unit, .. } => {
                if val.is_negative() {
                    Err(Error::NonIntegralEntry(format!("valuation {val} < 0")))
                } else if val.is_zero() {
                    Ok(unit.clone())
                } else {
                    Ok(self.field.zero())
                }
            }
        }
    }

    /// Unit lift of a residue, zero lifting to zero.
    pub fn lift(&self, a: &Gf) -> Padic {
        if self.field.is_zero(a) {
            Padic::Zero
        } else {
            Padic::mono(BigRational::zero(), a.clone())
        }
    }

    pub fn add(&self, a: &Padic, b: &Padic) -> Result<Padic> {
        match (a, b) {
            (Padic::Zero, x) | (x, Padic::Zero) => Ok(x.clone()),
            (
                Padic::Mono { val: va, unit: ua, exact: ea },
                Padic::Mono { val: vb, unit: ub, exact: eb },
            ) => {
                if va < vb {
                    return Ok(Padic::Mono { val: va.clone(), unit: ua.clone(), exact: false });
                }
                if vb < va {
                    return Ok(Padic::Mono { val: vb.clone(), unit: ub.clone(), exact: false });
                }
                let s = self.field.add(ua, ub);
                if self.field.is_zero(&s) {
                    if *ea && *eb && self.field.p() != 2 {
                        Ok(Padic::Zero)
                    } else {
                        Err(Error::Precision(format!(
                            "cancelling sum at valuation {va} leaves the monomial model"
                        )))
                    }
                } else {
                    Ok(Padic::Mono { val: va.clone(), unit: s, exact: false })
                }
            }
        }
    }

    pub fn neg(&self, a: &Padic) -> Padic {
        match a {
            Padic::Zero => Padic::Zero,
            Padic::Mono { val, unit, exact } => Padic::Mono {
                val: val.clone(),
                unit: self.field.neg(unit),
                exact: *exact && self.field.p() != 2,
            },
        }
    }

    pub fn mul(&self, a: &Padic, b: &Padic) -> Padic {
        match (a, b) {
            (Padic::Zero, _) | (_, Padic::Zero) => Padic::Zero,
            (
                Padic::Mono { val: va, unit: ua, exact: ea },
                Padic::Mono { val: vb, unit: ub, exact: eb },
            ) => Padic::Mono {
                val: va + vb,
                unit: self.field.mul(ua, ub),
                exact: *ea && *eb,
            },
        }
    }

    pub fn inv(&self, a: &Padic) -> Result<Padic> {
        match a {
            Padic::Zero => Err(Error::Division("inverse of zero".into())),
            Padic::Mono { val, unit, exact } => Ok(Padic::Mono {
                val: -val,
                unit: self.field.inv(unit)?,
                exact: *exact,
            }),
        }
    }

    /// An `n`-th root: valuation divided by `n`, unit root taken in `F_{p^k}`.
    pub fn nth_root(&self, a: &Padic, n: u64) -> Result<Padic> {
        match a {
            Padic::Zero => Ok(Padic::Zero),
            Padic::Mono { val, unit, exact } => Ok(Padic::Mono {
                val: val / BigRational::from_integer(BigInt::from(n)),
                unit: self.field.nth_root(unit, n)?,
                exact: *exact,
            }),
        }
    }

    pub fn from_int(&self, n: i128) -> Padic {
        if n == 0 {
            return Padic::Zero;
        }
        let p = self.field.p() as i128;
        let (mut m, mut v) = (n, 0i64);
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        Padic::Mono {
            val: BigRational::from_integer(BigInt::from(v)),
            unit: self.field.from_int(m),
            exact: m == 1 || m == -1,
        }
    }

    pub fn one(&self) -> Padic {
        Padic::mono(BigRational::zero(), self.field.one())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}/1", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PadicJson {
    Zero(String),
    Mono { val: String, unit: Vec<u64> },
}

impl Serialize for Padic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Padic::Zero => PadicJson::Zero("0".into()).serialize(s),
            Padic::Mono { val, unit, .. } => PadicJson::Mono {
                val: format_rational(val),
                unit: unit.0.clone(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Padic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match PadicJson::deserialize(d)? {
            PadicJson::Zero(z) if z == "0" => Ok(Padic::Zero),
            PadicJson::Zero(z) => Err(D::Error::custom(format!("expected \"0\", got {z:?}"))),
            PadicJson::Mono { val, unit } => {
                let val = parse_rational(&val).map_err(D::Error::custom)?;
                if unit.iter().all(|c| *c == 0) {
                    return Err(D::Error::custom("unit residue must be nonzero"));
                }
                Ok(Padic::mono(val, Gf(unit)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> PadicRing {
        PadicRing::new(FiniteField::new(5, 2).unwrap())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn valuations_add_under_multiplication() {
        let r = ring();
        let f = r.field().clone();
        let (u, w) = (f.from_index(7), f.from_index(13));
        let a = Padic::mono(q(1, 2), u.clone());
        let b = Padic::mono(q(1, 2), w.clone());
        assert_eq!(r.mul(&a, &b), Padic::mono(q(1, 1), f.mul(&u, &w)));
    }

    #[test]
    fn partial_addition_rules() {
        let r = ring();
        let f = r.field().clone();
        let u = f.from_index(7);
        let a = Padic::mono(q(1, 3), u.clone());
        let b = Padic::mono(q(2, 3), f.one());
        assert_eq!(r.add(&a, &b).unwrap(), a);
        let c = Padic::mono(q(1, 3), f.one());
        assert_eq!(
            r.add(&a, &c).unwrap(),
            Padic::mono(q(1, 3), f.add(&u, &f.one()))
        );
        // Exact monomials cancel exactly.
        assert_eq!(r.add(&a, &r.neg(&a)).unwrap(), Padic::Zero);
        // An inexact sum that cancels is outside the model.
        let s = r.add(&a, &b).unwrap();
        assert!(matches!(r.add(&s, &r.neg(&a)), Err(Error::Precision(_))));
    }

    #[test]
    fn reduction_and_integrality() {
        let r = ring();
        let f = r.field().clone();
        let u = f.from_index(3);
        assert_eq!(r.reduce(&Padic::mono(q(0, 1), u.clone())).unwrap(), u);
        assert_eq!(r.reduce(&Padic::mono(q(1, 2), u.clone())).unwrap(), f.zero());
        assert!(r.reduce(&Padic::mono(q(-1, 2), u)).is_err());
        assert_eq!(r.reduce(&Padic::Zero).unwrap(), f.zero());
    }

    #[test]
    fn integers_carry_their_valuation() {
        let r = ring();
        let a = r.from_int(50);
        assert_eq!(a.valuation().unwrap(), &q(2, 1));
        assert_eq!(r.reduce(&r.from_int(7)).unwrap(), r.field().from_int(2));
        assert!(r.from_int(-1).is_exact());
        assert!(!r.from_int(2).is_exact());
    }

    #[test]
    fn square_roots_halve_valuations() {
        let r = ring();
        let f = r.field().clone();
        let u = f.mul(&f.from_index(8), &f.from_index(8));
        let a = Padic::mono(q(1, 1), u);
        let s = r.nth_root(&a, 2).unwrap();
        assert_eq!(s.valuation().unwrap(), &q(1, 2));
        assert_eq!(r.mul(&s, &s), a);
    }

    #[test]
    fn json_encoding() {
        let r = ring();
        let a = Padic::mono(q(3, 2), r.field().from_index(6));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"val":"3/2","unit":[1,1]}"#);
        let b: Padic = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&Padic::Zero).unwrap(), "\"0\"");
        let z: Padic = serde_json::from_str("\"0\"").unwrap();
        assert!(z.is_zero());
    }

    fn arb(r: &PadicRing) -> impl Strategy<Value = Padic> {
        let f = r.field().clone();
        prop_oneof![
            1 => Just(Padic::Zero),
            6 => (0i64..5, 1i64..4, 1u64..25).prop_map(move |(n, d, u)| {
                Padic::mono(BigRational::new(BigInt::from(n), BigInt::from(d)), f.from_index(u))
            }),
        ]
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_morphism(a in arb(&ring()), b in arb(&ring())) {
            let r = ring();
            let f = r.field().clone();
            let (ra, rb) = (r.reduce(&a).unwrap(), r.reduce(&b).unwrap());
            prop_assert_eq!(r.reduce(&r.mul(&a, &b)).unwrap(), f.mul(&ra, &rb));
            if let Ok(s) = r.add(&a, &b) {
                prop_assert_eq!(r.reduce(&s).unwrap(), f.add(&ra, &rb));
            }
        }
    }
}
