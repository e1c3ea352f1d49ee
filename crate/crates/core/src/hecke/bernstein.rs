//! `θ̃_x`, the integral basis `E_w`, normal forms over `A` and the center.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{add_into, Basis, HeckeAlgebra, HeckeElement, CACHE_LIMIT};
use crate::coeffs::HalfLaurent;
use crate::error::{Error, Result};
use crate::rootdata::{Vector, WeylElement};

/// `h = Σ_{w_o} T_{w_o} · Σ_x c_{w_o,x} θ̃_x`, keyed by the finite index.
pub type NormalForm = BTreeMap<u32, BTreeMap<Vector, HalfLaurent>>;

/// Rows of `E_w = Σ M[w, w'] T_{w'}` over a finite set of elements.
#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfBasis {
    pub elements: Vec<WeylElement>,
    pub rows: Vec<BTreeMap<usize, HalfLaurent>>,
    pub unit_diagonal: bool,
    pub strictly_below: bool,
    pub integral: bool,
}

impl HeckeAlgebra {
    /// Dominant pair `(y, z)` with `x = y - z`, `z = N·pad`, `N` minimal.
    pub fn theta_pair(&self, x: &[i64]) -> (Vector, Vector) {
        let d = &self.datum;
        let mut n = 0i64;
        loop {
            let z: Vector = self.pad.iter().map(|p| n * p).collect();
            let y: Vector = x.iter().zip(&z).map(|(a, b)| a + b).collect();
            if d.is_dominant(&y) {
                return (y, z);
            }
            n += 1;
        }
    }

    /// `h · θ̃_x` computed as `q_y^{-1/2} q_z^{1/2} h T_{e^y} T_{e^z}⁻¹` for the given pair.
    pub fn mul_theta_with_pair(&self, h: &HeckeElement, y: &[i64], z: &[i64]) -> HeckeElement {
        let d = &self.datum;
        let (ey, ez) = (d.translation(y.to_vec()), d.translation(z.to_vec()));
        let s: Vec<i32> = self
            .half_weight(&ez)
            .iter()
            .zip(self.half_weight(&ey))
            .map(|(a, b)| a - b)
            .collect();
        let r = self.mul_t_inv_right(&self.mul_t_right(h, &ey), &ez);
        r.scale(&self.v(&s))
    }

    /// `h · θ̃_x`.
    pub fn mul_theta(&self, h: &HeckeElement, x: &[i64]) -> HeckeElement {
        let (y, z) = self.theta_pair(x);
        self.mul_theta_with_pair(h, &y, &z)
    }

    /// `θ̃_x · h`, using that `θ̃_x = q_y^{-1/2} q_z^{1/2} T_{e^z}⁻¹ T_{e^y}` as well.
    pub fn theta_mul(&self, x: &[i64], h: &HeckeElement) -> HeckeElement {
        let d = &self.datum;
        let (y, z) = self.theta_pair(x);
        let (ey, ez) = (d.translation(y), d.translation(z));
        let s: Vec<i32> = self
            .half_weight(&ez)
            .iter()
            .zip(self.half_weight(&ey))
            .map(|(a, b)| a - b)
            .collect();
        self.mul_t_inv_left(&ez, &self.mul_t_left(&ey, h)).scale(&self.v(&s))
    }

    /// `θ̃_x` on the T-basis, memoized.
    pub fn theta(&self, x: &[i64]) -> Arc<HeckeElement> {
        if let Some(t) = self.caches.lock().theta.get(x) {
            return t.clone();
        }
        let t = Arc::new(self.mul_theta(&self.one(), x));
        let mut c = self.caches.lock();
        if c.theta.len() > CACHE_LIMIT {
            c.theta.clear();
        }
        c.theta.insert(x.to_vec(), t.clone());
        t
    }

    /// Exponent vector of `q_w^{1/2} q_{w_o}^{-1/2}` for `w = w_o e^x`.
    pub fn e_normalizer(&self, w: &WeylElement) -> Vec<i32> {
        let wo = self.datum.finite(w.fin);
        self.half_weight(w)
            .iter()
            .zip(self.half_weight(&wo))
            .map(|(a, b)| a - b)
            .collect()
    }

    /// `E_{w_o e^x} = q_w^{1/2} q_{w_o}^{-1/2} T_{w_o} θ̃_x` on the T-basis, memoized.
    pub fn e_element(&self, w: &WeylElement) -> Arc<HeckeElement> {
        if let Some(e) = self.caches.lock().e.get(w) {
            return e.clone();
        }
        let two = self.t(self.datum.finite(w.fin));
        let e = Arc::new(self.mul_theta(&two, &w.trans).scale(&self.v(&self.e_normalizer(w))));
        let mut c = self.caches.lock();
        if c.e.len() > CACHE_LIMIT {
            c.e.clear();
        }
        c.e.insert(w.clone(), e.clone());
        e
    }

    /// `E_{e^x}`.
    pub fn e_translation(&self, x: &[i64]) -> Arc<HeckeElement> {
        self.e_element(&self.datum.translation(x.to_vec()))
    }

    /// Rewrites a T-basis element on the E-basis by peeling off top-length terms.
    pub fn to_e_basis(&self, h: &HeckeElement) -> Result<HeckeElement> {
        assert_eq!(h.basis, Basis::T);
        let d = &self.datum;
        let mut rest = h.terms.clone();
        let mut out = HeckeElement::zero(Basis::E);
        let mut steps = 0usize;
        while let Some(top) = rest.keys().max_by_key(|w| (d.length(w), (*w).clone())).cloned() {
            steps += 1;
            if steps > 1_000_000 {
                return Err(Error::Division("E-basis conversion does not terminate".into()));
            }
            let c = rest[&top].clone();
            let e = self.e_element(&top);
            if e.coefficient(&top) != self.one_scalar() {
                return Err(Error::Division(format!("E_{top:?} has non-unit leading term")));
            }
            for (w, a) in &e.terms {
                add_into(&mut rest, w.clone(), &-(a * &c));
            }
            add_into(&mut out.terms, top, &c);
        }
        Ok(out)
    }

    /// Expands an E-basis element on the T-basis.
    pub fn from_e_basis(&self, h: &HeckeElement) -> HeckeElement {
        assert_eq!(h.basis, Basis::E);
        let mut out = HeckeElement::zero(Basis::T);
        for (w, c) in &h.terms {
            out = out.add(&self.e_element(w).scale(c));
        }
        out
    }

    /// E-to-T matrix on `ball`; every `E_w` must be supported inside `ball`.
    pub fn change_of_basis(&self, ball: &[WeylElement]) -> Result<ChangeOfBasis> {
        let d = &self.datum;
        let index: BTreeMap<&WeylElement, usize> = ball.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows = Vec::with_capacity(ball.len());
        let (mut unit_diagonal, mut strictly_below, mut integral) = (true, true, true);
        for w in ball {
            let e = self.e_element(w);
            let mut row = BTreeMap::new();
            for (v, c) in &e.terms {
                let j = *index.get(v).ok_or_else(|| {
                    Error::BallNotClosed(format!("E_{w:?} involves {v:?} outside the ball"))
                })?;
                integral &= c.is_polynomial_in_q();
                if v == w {
                    unit_diagonal &= *c == self.one_scalar();
                } else {
                    strictly_below &= d.bruhat_leq(v, w);
                }
                row.insert(j, c.clone());
            }
            unit_diagonal &= row.contains_key(&index[w]);
            rows.push(row);
        }
        Ok(ChangeOfBasis { elements: ball.to_vec(), rows, unit_diagonal, strictly_below, integral })
    }

    /// Coefficients of `h` against `T_{w_o} θ̃_x`.
    pub fn normal_form(&self, h: &HeckeElement) -> Result<NormalForm> {
        let e = match h.basis {
            Basis::T => self.to_e_basis(h)?,
            Basis::E => h.clone(),
        };
        let mut nf = NormalForm::new();
        for (w, c) in &e.terms {
            let coef = c.shift(&self.e_normalizer(w));
            let part = nf.entry(w.fin).or_default();
            let slot = part.entry(w.trans.clone()).or_insert_with(HalfLaurent::zero);
            slot.add_assign_ref(&coef);
            if slot.is_zero() {
                part.remove(&w.trans);
            }
        }
        nf.retain(|_, p| !p.is_empty());
        Ok(nf)
    }

    /// `Σ T_{w_o} c_{w_o,x} θ̃_x` on the T-basis.
    pub fn reassemble(&self, nf: &NormalForm) -> HeckeElement {
        let mut out = HeckeElement::zero(Basis::T);
        for (&f, part) in nf {
            let two = self.t(self.datum.finite(f));
            for (x, c) in part {
                out = out.add(&self.mul_theta(&two, x).scale(c));
            }
        }
        out
    }

    /// `Z_x = Σ_{x' ∈ W_o x} E_{x'}`.
    pub fn center_generator(&self, x: &[i64]) -> HeckeElement {
        let mut out = HeckeElement::zero(Basis::T);
        for y in self.datum.orbit(x) {
            out = out.add(&self.e_translation(&y));
        }
        out
    }

    /// `D = θ̃_x T_s − T_s θ̃_{s(x)}` for the simple reflection of base index `i`.
    pub fn bernstein_defect(&self, x: &[i64], i: usize) -> Result<HeckeElement> {
        let d = &self.datum;
        let beta = d.base()[i];
        if d.coroots()[beta].iter().all(|c| c % 2 == 0) {
            return Err(Error::UnsupportedCase(format!(
                "coroot {:?} lies in 2X∨",
                d.coroots()[beta]
            )));
        }
        let s = d.simple_reflection_fin(i);
        let sx = d.act(s, x);
        let left = self.mul_gen_right(&self.theta(x), i);
        let right = self.mul_gen_left(i, &self.theta(&sx));
        Ok(left.sub(&right))
    }

    /// Checks `D · (1 − θ̃_{-α}) = (θ̃_x − θ̃_{s(x)}) (q_s − 1)`.
    pub fn bernstein_check(&self, x: &[i64], i: usize) -> Result<bool> {
        let d = &self.datum;
        let defect = self.bernstein_defect(x, i)?;
        let beta = d.base()[i];
        let neg_alpha: Vector = d.roots()[beta].iter().map(|c| -c).collect();
        let lhs = defect.sub(&self.mul_theta(&defect, &neg_alpha));
        let sx = d.act(d.simple_reflection_fin(i), x);
        let class = d.class_of(i);
        let a_s = &self.q(class) - &self.one_scalar();
        let rhs = self.theta(x).sub(&self.theta(&sx)).scale(&a_s);
        Ok(lhs == rhs)
    }
}
