//! Characters of `A∩H`, described by their values on the `E_x`.

use crate::coeffs::{Ring, Specialization};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::rootdata::Vector;

#[derive(Clone, Debug)]
pub enum CharacterData<E> {
    /// `χ_A(θ̃_{e_i})` on the standard basis of `X`; needs invertible parameters.
    Theta(Vec<E>),
    /// GL(n): `χ(E_{y_I})` indexed by the bitmask of `I`; entry 0 is unused.
    Subsets(Vec<E>),
}

/// A ring morphism `χ: A∩H → R` over the specialization `φ`.
#[derive(Clone, Debug)]
pub struct HeckeCharacter<R: Ring> {
    pub spec: Specialization<R>,
    pub data: CharacterData<R::Elt>,
}

/// GL(n): `x = m·(1,…,1) + Σ_k y_{I_k}` with `I_1 ⊇ I_2 ⊇ …`.
pub fn nested_decomposition(x: &[i64]) -> (i64, Vec<u32>) {
    let m = x.iter().copied().min().unwrap_or(0);
    let top = x.iter().map(|c| c - m).max().unwrap_or(0);
    let masks = (1..=top)
        .map(|k| {
            x.iter()
                .enumerate()
                .filter(|(_, c)| **c - m >= k)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    (m, masks)
}

impl<R: Ring> HeckeCharacter<R> {
    pub fn ring(&self) -> &R {
        self.spec.ring()
    }

    /// `χ(E_{e^x})`.
    pub fn chi_e(&self, h: &HeckeAlgebra, x: &[i64]) -> Result<R::Elt> {
        let r = self.ring();
        match &self.data {
            CharacterData::Theta(t) => {
                let mut acc = self.spec.monomial(&h.half_weight(&h.datum().translation(x.to_vec())))?;
                for (ti, xi) in t.iter().zip(x) {
                    acc = r.mul(&acc, &r.pow(ti, *xi)?);
                }
                Ok(acc)
            }
            CharacterData::Subsets(v) => {
                let n = x.len();
                if v.len() != 1 << n {
                    return Err(Error::Config(format!("subset values need rank {n}")));
                }
                let (m, masks) = nested_decomposition(x);
                let mut acc = r.pow(&v[(1 << n) - 1], m)?;
                for mask in masks {
                    acc = r.mul(&acc, &v[mask as usize]);
                }
                Ok(acc)
            }
        }
    }

    /// `χ_A(θ̃_x) = χ(E_x) φ(q_x)^{-1/2}`.
    pub fn chi_theta(&self, h: &HeckeAlgebra, x: &[i64]) -> Result<R::Elt> {
        let r = self.ring();
        match &self.data {
            CharacterData::Theta(t) => {
                let mut acc = r.one();
                for (ti, xi) in t.iter().zip(x) {
                    acc = r.mul(&acc, &r.pow(ti, *xi)?);
                }
                Ok(acc)
            }
            CharacterData::Subsets(_) => {
                let hw: Vec<i32> =
                    h.half_weight(&h.datum().translation(x.to_vec())).iter().map(|e| -e).collect();
                Ok(r.mul(&self.chi_e(h, x)?, &self.spec.monomial(&hw)?))
            }
        }
    }

    /// `χ(Z_x) = Σ_{x' ∈ W_o x} χ(E_{x'})`.
    pub fn chi_center(&self, h: &HeckeAlgebra, x: &[i64]) -> Result<R::Elt> {
        let r = self.ring();
        let mut acc = r.zero();
        for y in h.datum().orbit(x) {
            acc = r.add(&acc, &self.chi_e(h, &y)?)?;
        }
        Ok(acc)
    }

    /// First pair `(x, x')` of the box violating
    /// `χ(E_x) χ(E_{x'}) = φ((q_x q_{x'} q_{x+x'}^{-1})^{1/2}) χ(E_{x+x'})`.
    pub fn cocycle_violation(&self, h: &HeckeAlgebra, radius: i64) -> Result<Option<(Vector, Vector)>> {
        let r = self.ring();
        let d = h.datum();
        let pts = d.box_points(radius);
        for x in &pts {
            for y in &pts {
                let xy: Vector = x.iter().zip(y).map(|(a, b)| a + b).collect();
                let hw = |v: &Vector| h.half_weight(&d.translation(v.clone()));
                let (hx, hy, hxy) = (hw(x), hw(y), hw(&xy));
                let e: Vec<i32> = (0..hx.len()).map(|i| hx[i] + hy[i] - hxy[i]).collect();
                let lhs = r.mul(&self.chi_e(h, x)?, &self.chi_e(h, y)?);
                let rhs = r.mul(&self.spec.monomial(&e)?, &self.chi_e(h, &xy)?);
                if lhs != rhs {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
        Ok(None)
    }
}
