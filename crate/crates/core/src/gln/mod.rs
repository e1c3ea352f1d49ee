//! GL(n): the `A_n` presentation of `A∩H`, flag characters modulo `p`, and their lifts.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::coeffs::{FiniteField, Gf, Padic, PadicRing, Ring, Specialization};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::modules::{CharacterData, HeckeCharacter};
use crate::rootdata::{gln_fundamental_weight, Vector};

pub fn full_mask(n: usize) -> u32 {
    (1u32 << n) - 1
}

/// `y_I = Σ_{i ∈ I} e_i`.
pub fn subset_vector(n: usize, mask: u32) -> Vector {
    (0..n).map(|i| i64::from(mask >> i & 1 == 1)).collect()
}

/// 1-based members of `I`.
pub fn mask_members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn members_mask(n: usize, members: &[usize]) -> Result<u32> {
    let mut m = 0u32;
    for &i in members {
        if i == 0 || i > n {
            return Err(Error::Parse(format!("subset index {i} outside 1..{n}")));
        }
        m |= 1 << (i - 1);
    }
    Ok(m)
}

/// Nonempty subsets ordered by size, then mask.
pub fn subsets(n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=full_mask(n)).collect();
    v.sort_by_key(|m| (m.count_ones(), *m));
    v
}

/// `E_I = E_{e^{y_I}}`.
pub fn e_subset(h: &HeckeAlgebra, mask: u32) -> Arc<HeckeElement> {
    h.e_translation(&subset_vector(h.datum().rank(), mask))
}

#[derive(Clone, Debug, Serialize)]
pub struct AnCheck {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    /// `yz` in `E_I E_J = q^{yz} E_{I∪J} E_{I∩J}`.
    pub q_exponent: u32,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnReport {
    pub n: usize,
    pub pairs: Vec<AnCheck>,
    pub identities: Vec<NamedCheck>,
}

impl AnReport {
    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|c| c.pass) && self.identities.iter().all(|c| c.pass)
    }
}

/// Checks the `A_n` relations and the explicit low-rank identities inside `H`.
pub fn verify_an_presentation(h: &HeckeAlgebra) -> AnReport {
    let d = h.datum();
    let n = d.rank();
    let e = |m: u32| -> HeckeElement {
        if m == 0 {
            h.one()
        } else {
            (*e_subset(h, m)).clone()
        }
    };
    let q = h.q(0);
    let qpow = |k: u32| h.v(&[2 * k as i32]);
    let mut pairs = Vec::new();
    let all = subsets(n);
    for &i in &all {
        for &j in &all {
            let x = (i & j).count_ones();
            let (y, z) = (i.count_ones() - x, j.count_ones() - x);
            let lhs = h.t_mul(&e(i), &e(j));
            let rhs = h.t_mul(&e(i | j), &e(i & j)).scale(&qpow(y * z));
            pairs.push(AnCheck { i: mask_members(i), j: mask_members(j), q_exponent: y * z, pass: lhs == rhs });
        }
    }
    let mut ids = Vec::new();
    let mut push = |name: String, pass: bool| ids.push(NamedCheck { name, pass });
    let omega = |i: usize| d.translation(gln_fundamental_weight(n, i));
    let z = h.t(omega(0));
    push("E_{1..n} = T_{ω_0}".into(), e(full_mask(n)) == z);
    let zinv = h.t(d.translation(vec![-1; n]));
    push("Z invertible".into(), h.t_mul(&z, &zinv) == h.one());
    for i in 1..=n {
        let rhs = h
            .t_mul(&h.t(omega(i - 1)), &h.t_inverse(&omega(i)))
            .scale(&qpow((n - i) as u32));
        push(format!("E_{i} = q^{} T_{{ω_{}}} T_{{ω_{i}}}^-1", n - i, i - 1), e(1 << (i - 1)) == rhs);
    }
    for &m in &all {
        let t = m.count_ones();
        let prod = (0..n)
            .filter(|b| m >> b & 1 == 1)
            .fold(h.one(), |acc, b| h.t_mul(&acc, &e(1 << b)));
        push(
            format!("product of E_i over {:?} = q^{} E_I", mask_members(m), t * (t - 1) / 2),
            prod == e(m).scale(&qpow(t * (t - 1) / 2)),
        );
    }
    for t in 1..=n {
        let zt = h.center_generator(&subset_vector(n, (1 << t) - 1));
        let sum = all
            .iter()
            .filter(|m| m.count_ones() as usize == t)
            .fold(HeckeElement::zero(crate::hecke::Basis::T), |acc, m| acc.add(&e(*m)));
        let central = d
            .generators()
            .iter()
            .map(|g| h.t(g.elt.clone()))
            .chain(d.omega_generators().iter().map(|u| h.t(u.clone())))
            .all(|g| h.t_mul(&zt, &g) == h.t_mul(&g, &zt));
        push(format!("Z_{t} = sum of E_I with |I| = {t}, central"), zt == sum && central);
    }
    if n == 2 {
        push("E_1 E_2 = q Z".into(), h.t_mul(&e(1), &e(2)) == z.scale(&q));
        let t1 = h.t_mul(&h.t(omega(0)), &h.t_inverse(&omega(1))).scale(&h.v(&[1]));
        push("θ̃_{y_1} = q^{1/2} T_{ω_0} T_{ω_1}^-1".into(), *h.theta(&[1, 0]) == t1);
        push("θ̃_{y_2} = q^{-1/2} T_{ω_1}".into(), *h.theta(&[0, 1]) == h.t(omega(1)).scale(&h.v(&[-1])));
        let ok = (0..2).all(|i| e(1 << i) == h.theta(&subset_vector(2, 1 << i)).scale(&h.v(&[1])));
        push("E_i = q^{1/2} θ̃_{y_i}".into(), ok);
        push("Z_1 = E_1 + E_2".into(), h.center_generator(&[1, 0]) == e(1).add(&e(2)));
    }
    AnReport { n, pairs, identities: ids }
}

/// All chains `∅ ≠ I_1 ⊂ … ⊂ I_r = {1..n}`, bottom first.
pub fn flags(n: usize) -> Vec<Vec<u32>> {
    fn below(top: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![top]];
        let mut sub = (top - 1) & top;
        let mut proper = Vec::new();
        while sub != 0 {
            proper.push(sub);
            sub = (sub - 1) & top;
        }
        proper.sort_by_key(|m| (m.count_ones(), *m));
        for s in proper {
            for mut chain in below(s) {
                chain.push(top);
                out.push(chain);
            }
        }
        out
    }
    below(full_mask(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagLabel {
    Regular,
    Singular,
    Supersingular,
}

pub fn flag_label(n: usize, flag: &[u32]) -> FlagLabel {
    match flag.len() {
        1 => FlagLabel::Supersingular,
        r if r == n => FlagLabel::Regular,
        _ => FlagLabel::Singular,
    }
}

/// `n! / (t_1! (t_2 − t_1)! ⋯ (n − t_{r−1})!)`.
pub fn orbit_size(n: usize, flag: &[u32]) -> u64 {
    let fact = |k: u64| (1..=k).product::<u64>();
    let mut prev = 0u64;
    let mut out = fact(n as u64);
    for m in flag {
        let t = m.count_ones() as u64;
        out /= fact(t - prev);
        prev = t;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagFamily {
    pub flag: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub label: FlagLabel,
    pub orbit_size: u64,
}

pub fn classify_characters(n: usize) -> Vec<FlagFamily> {
    flags(n)
        .into_iter()
        .map(|f| FlagFamily {
            flag: f.iter().map(|m| mask_members(*m)).collect(),
            sizes: f.iter().map(|m| m.count_ones() as usize).collect(),
            label: flag_label(n, &f),
            orbit_size: orbit_size(n, &f),
        })
        .collect()
}

/// A character of `A∩H` with `χ(q) = 0`: nonzero exactly on the flag.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagCharacter {
    pub n: usize,
    pub flag: Vec<u32>,
    pub values: Vec<Gf>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlagCharacterJson {
    pub n: usize,
    pub flag: Vec<Vec<usize>>,
    pub values: Vec<Gf>,
}

impl FlagCharacter {
    pub fn new(n: usize, flag: Vec<u32>, values: Vec<Gf>, field: &FiniteField) -> Result<Self> {
        let bad = |m: String| Err(Error::Config(m));
        if flag.is_empty() || flag.len() != values.len() {
            return bad("flag and values must be nonempty and of equal length".into());
        }
        if *flag.last().unwrap() != full_mask(n) {
            return bad("flag must end at {1..n}".into());
        }
        if flag.windows(2).any(|w| w[0] & w[1] != w[0] || w[0] == w[1]) || flag[0] == 0 {
            return bad("flag must be strictly increasing and nonempty".into());
        }
        if values.iter().any(|v| field.is_zero(v) || v.0.len() != field.k()) {
            return bad("flag values must be nonzero field elements".into());
        }
        Ok(FlagCharacter { n, flag, values })
    }

    pub fn from_json(j: &FlagCharacterJson, field: &FiniteField) -> Result<Self> {
        let flag = j.flag.iter().map(|s| members_mask(j.n, s)).collect::<Result<Vec<_>>>()?;
        FlagCharacter::new(j.n, flag, j.values.clone(), field)
    }

    pub fn to_json(&self) -> FlagCharacterJson {
        FlagCharacterJson {
            n: self.n,
            flag: self.flag.iter().map(|m| mask_members(*m)).collect(),
            values: self.values.clone(),
        }
    }

    pub fn label(&self) -> FlagLabel {
        flag_label(self.n, &self.flag)
    }

    /// `χ(E_I)`.
    pub fn value(&self, mask: u32, field: &FiniteField) -> Gf {
        match self.flag.iter().position(|m| *m == mask) {
            Some(i) => self.values[i].clone(),
            None => field.zero(),
        }
    }

    /// As a character over `F_{p^k}` with `φ(q) = 0`.
    pub fn to_character(&self, field: &FiniteField) -> HeckeCharacter<FiniteField> {
        let mut v = vec![field.one()];
        v.extend((1..=full_mask(self.n)).map(|m| self.value(m, field)));
        HeckeCharacter {
            spec: Specialization::from_roots(field.clone(), vec![field.zero()]),
            data: CharacterData::Subsets(v),
        }
    }

    /// `ω(Z_t)` for `t = 1..n`: `χ(E_{I_j})` when `t = t_j`, else 0.
    pub fn central_values(&self, field: &FiniteField) -> Vec<Gf> {
        (1..=self.n)
            .map(|t| {
                self.flag
                    .iter()
                    .position(|m| m.count_ones() as usize == t)
                    .map_or_else(|| field.zero(), |i| self.values[i].clone())
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Lift {
    /// `e_i` with `χ̃(E_i) = x_i φ(q)^{e_i}`.
    pub exponents: Vec<BigRational>,
    pub units: Vec<Gf>,
    pub character: HeckeCharacter<PadicRing>,
}

/// The explicit lift of a flag character to `Z̄_p` with `χ̃(q) = phiq`.
pub fn lift_character(chi: &FlagCharacter, ring: &PadicRing, phiq: &Padic) -> Result<Lift> {
    let f = ring.field();
    match phiq.valuation() {
        Some(v) if v.is_positive() => {}
        _ => return Err(Error::Config("φ(q) must be nonzero with positive valuation".into())),
    }
    let n = chi.n;
    let half = |num: i64| BigRational::new(BigInt::from(num), BigInt::from(2));
    let mut exponents = vec![BigRational::default(); n];
    let mut units = vec![f.zero(); n];
    let (mut prev_mask, mut prev_t) = (0u32, 0i64);
    let mut prev_y = f.one();
    for (mask, y) in chi.flag.iter().zip(&chi.values) {
        let t = mask.count_ones() as i64;
        let e = half(t + prev_t - 1);
        let ratio = f.mul(y, &f.inv(&prev_y)?);
        let x = f.nth_root(&ratio, (t - prev_t) as u64)?;
        for i in 0..n {
            if mask >> i & 1 == 1 && prev_mask >> i & 1 == 0 {
                exponents[i] = e.clone();
                units[i] = x.clone();
            }
        }
        prev_mask = *mask;
        prev_t = t;
        prev_y = y.clone();
    }
    let root = ring.nth_root(phiq, 2)?;
    let spec = Specialization::from_roots(ring.clone(), vec![root.clone()]);
    let singles: Vec<Padic> = (0..n)
        .map(|i| {
            let twice = (&exponents[i] * BigRational::from_integer(2.into())).to_integer();
            let p = ring.pow(&root, i64::try_from(twice).expect("small exponent"))?;
            Ok(ring.mul(&ring.lift(&units[i]), &p))
        })
        .collect::<Result<_>>()?;
    let mut values = vec![ring.one()];
    for mask in 1..=full_mask(n) {
        let t = mask.count_ones() as i64;
        let mut acc = ring.pow(&root, -t * (t - 1))?;
        for (i, s) in singles.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = ring.mul(&acc, s);
            }
        }
        values.push(acc);
    }
    Ok(Lift {
        exponents,
        units,
        character: HeckeCharacter { spec, data: CharacterData::Subsets(values) },
    })
}

#[cfg(test)]
mod tests;
