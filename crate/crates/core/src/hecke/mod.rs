//! The generic affine Hecke algebra over `Z[q_*^{±1/2}]` on the Iwahori–Matsumoto basis.

mod bernstein;
mod fundamental;
mod json;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::coeffs::HalfLaurent;
use crate::error::{Error, Result};
use crate::rootdata::{dot, RootDatum, Vector, WeylElement};

pub use bernstein::{ChangeOfBasis, NormalForm};
pub use fundamental::FundamentalExpansion;
pub use json::{HeckeJson, TermJson};

pub type Terms = BTreeMap<WeylElement, HalfLaurent>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    T,
    E,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    pub basis: Basis,
    pub terms: Terms,
}

pub(crate) fn add_into(terms: &mut Terms, w: WeylElement, c: &HalfLaurent) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&w) {
        Some(x) => {
            x.add_assign_ref(c);
            if x.is_zero() {
                terms.remove(&w);
            }
        }
        None => {
            terms.insert(w, c.clone());
        }
    }
}

impl HeckeElement {
    pub fn zero(basis: Basis) -> Self {
        HeckeElement { basis, terms: Terms::new() }
    }

    pub fn single(basis: Basis, w: WeylElement, c: HalfLaurent) -> Self {
        let mut terms = Terms::new();
        add_into(&mut terms, w, &c);
        HeckeElement { basis, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &WeylElement) -> HalfLaurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn check_basis(&self, other: &HeckeElement) {
        assert_eq!(self.basis, other.basis, "mixing T- and E-basis elements");
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        self.check_basis(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HeckeElement {
        HeckeElement {
            basis: self.basis,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    /// Multiplication by a scalar of `Z[q_*^{±1/2}]`.
    pub fn scale(&self, c: &HalfLaurent) -> HeckeElement {
        let mut terms = Terms::new();
        if let Some((e, x)) = c.single_term() {
            for (w, a) in &self.terms {
                add_into(&mut terms, w.clone(), &a.shift(e).scale(x));
            }
        } else {
            for (w, a) in &self.terms {
                add_into(&mut terms, w.clone(), &(a * c));
            }
        }
        HeckeElement { basis: self.basis, terms }
    }

    /// Every coefficient lies in `Z[q_*]`.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_polynomial_in_q())
    }
}

#[derive(Default)]
struct Caches {
    theta: HashMap<Vector, Arc<HeckeElement>>,
    e: HashMap<WeylElement, Arc<HeckeElement>>,
}

const CACHE_LIMIT: usize = 200_000;

pub struct HeckeAlgebra {
    datum: Arc<RootDatum>,
    k: usize,
    pad: Vector,
    class_shift: Vec<Vec<i32>>,
    caches: Mutex<Caches>,
}

impl std::fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HeckeAlgebra({:?}, pad {:?})", self.datum, self.pad)
    }
}

/// A dominant regular vector, minimizing the sum of simple pairings, then the
/// number of negative coordinates, then the L1 norm.
fn find_pad(d: &RootDatum) -> Result<Vector> {
    for radius in 1..=6 {
        let best = d
            .box_points(radius)
            .into_iter()
            .filter(|x| d.base().iter().all(|&b| dot(x, &d.coroots()[b]) > 0))
            .min_by_key(|x| {
                let pair: i64 = d.base().iter().map(|&b| dot(x, &d.coroots()[b])).sum();
                let negs = x.iter().filter(|c| **c < 0).count();
                let l1: i64 = x.iter().map(|c| c.abs()).sum();
                (pair, negs, l1, x.clone())
            });
        if let Some(x) = best {
            return Ok(x);
        }
    }
    Err(Error::Config("no dominant regular vector in a radius-6 box".into()))
}

impl HeckeAlgebra {
    pub fn new(datum: Arc<RootDatum>) -> Result<Self> {
        let pad = if datum.base().is_empty() { vec![0; datum.rank()] } else { find_pad(&datum)? };
        let k = datum.num_classes();
        let class_shift = (0..k)
            .map(|c| {
                let mut e = vec![0; k];
                e[c] = 2;
                e
            })
            .collect();
        Ok(HeckeAlgebra { datum, k, pad, class_shift, caches: Mutex::new(Caches::default()) })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn classes(&self) -> usize {
        self.k
    }

    pub fn pad(&self) -> &[i64] {
        &self.pad
    }

    /// `v^exps`.
    pub fn v(&self, exps: &[i32]) -> HalfLaurent {
        HalfLaurent::monomial(exps.to_vec(), 1)
    }

    pub fn q(&self, class: usize) -> HalfLaurent {
        HalfLaurent::q(self.k, class)
    }

    pub fn one_scalar(&self) -> HalfLaurent {
        HalfLaurent::one(self.k)
    }

    /// Exponent vector of `q_w^{1/2}`.
    pub fn half_weight(&self, w: &WeylElement) -> Vec<i32> {
        self.datum.q_counts(w)
    }

    /// `q_w` along a reduced word of the `W_aff` part.
    pub fn q_weight(&self, w: &WeylElement) -> HalfLaurent {
        let e: Vec<i32> = self.half_weight(w).iter().map(|x| 2 * x).collect();
        self.v(&e)
    }

    pub fn t(&self, w: WeylElement) -> HeckeElement {
        HeckeElement::single(Basis::T, w, self.one_scalar())
    }

    pub fn one(&self) -> HeckeElement {
        self.t(self.datum.identity())
    }

    pub fn scalar(&self, c: HalfLaurent) -> HeckeElement {
        HeckeElement::single(Basis::T, self.datum.identity(), c)
    }

    /// One generator step on either side, with `T_s` or `T_s⁻¹`.
    fn gen_step(&self, terms: &Terms, gen: usize, left: bool, inverse: bool) -> Terms {
        let d = &self.datum;
        let g = &d.generators()[gen];
        let up_shift = &self.class_shift[g.class];
        let down_shift: Vec<i32> = up_shift.iter().map(|x| -x).collect();
        let mut out = Terms::new();
        for (sigma, c) in terms {
            let moved = if left { d.mul(&g.elt, sigma) } else { d.mul(sigma, &g.elt) };
            let up = d.length(&moved) > d.length(sigma);
            if up != inverse {
                // T_σ T_s = T_{σs} when going up; T_σ T_s⁻¹ = T_{σs} when going down.
                add_into(&mut out, moved, c);
            } else {
                let shift = if inverse { &down_shift } else { up_shift };
                let cq = c.shift(shift);
                let mut rest = cq.clone();
                rest.add_scaled(c, &vec![0; self.k], -1);
                add_into(&mut out, moved, &cq);
                add_into(&mut out, sigma.clone(), &rest);
            }
        }
        out
    }

    fn omega_step(&self, terms: &Terms, u: &WeylElement, left: bool) -> Terms {
        let d = &self.datum;
        terms
            .iter()
            .map(|(s, c)| (if left { d.mul(u, s) } else { d.mul(s, u) }, c.clone()))
            .collect()
    }

    /// `h · T_w`.
    pub fn mul_t_right(&self, h: &HeckeElement, w: &WeylElement) -> HeckeElement {
        assert_eq!(h.basis, Basis::T);
        let split = self.datum.omega_split(w);
        let mut terms = self.omega_step(&h.terms, &split.u, false);
        for &g in &split.word {
            terms = self.gen_step(&terms, g, false, false);
        }
        HeckeElement { basis: Basis::T, terms }
    }

    /// `h · T_w⁻¹ = h · T_{s_m}⁻¹ ··· T_{s_1}⁻¹ T_{u⁻¹}` for `w = u s_1 ··· s_m`.
    pub fn mul_t_inv_right(&self, h: &HeckeElement, w: &WeylElement) -> HeckeElement {
        assert_eq!(h.basis, Basis::T);
        let split = self.datum.omega_split(w);
        let mut terms = h.terms.clone();
        for &g in split.word.iter().rev() {
            terms = self.gen_step(&terms, g, false, true);
        }
        let ui = self.datum.inverse(&split.u);
        HeckeElement { basis: Basis::T, terms: self.omega_step(&terms, &ui, false) }
    }

    /// `T_w · h`.
    pub fn mul_t_left(&self, w: &WeylElement, h: &HeckeElement) -> HeckeElement {
        assert_eq!(h.basis, Basis::T);
        let split = self.datum.omega_split(w);
        let mut terms = h.terms.clone();
        for &g in split.word.iter().rev() {
            terms = self.gen_step(&terms, g, true, false);
        }
        HeckeElement { basis: Basis::T, terms: self.omega_step(&terms, &split.u, true) }
    }

    /// `T_w⁻¹ · h`.
    pub fn mul_t_inv_left(&self, w: &WeylElement, h: &HeckeElement) -> HeckeElement {
        assert_eq!(h.basis, Basis::T);
        let split = self.datum.omega_split(w);
        let ui = self.datum.inverse(&split.u);
        let mut terms = self.omega_step(&h.terms, &ui, true);
        for &g in &split.word {
            terms = self.gen_step(&terms, g, true, true);
        }
        HeckeElement { basis: Basis::T, terms }
    }

    /// `h · T_s` for the generator of index `gen`.
    pub fn mul_gen_right(&self, h: &HeckeElement, gen: usize) -> HeckeElement {
        HeckeElement { basis: Basis::T, terms: self.gen_step(&h.terms, gen, false, false) }
    }

    pub fn mul_gen_left(&self, gen: usize, h: &HeckeElement) -> HeckeElement {
        HeckeElement { basis: Basis::T, terms: self.gen_step(&h.terms, gen, true, false) }
    }

    /// Product of two T-basis elements.
    pub fn t_mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        assert!(a.basis == Basis::T && b.basis == Basis::T);
        let mut out = HeckeElement::zero(Basis::T);
        if a.len() <= b.len() {
            for (w, c) in &a.terms {
                let part = self.mul_t_left(w, b);
                out = out.add(&part.scale(c));
            }
        } else {
            for (w, c) in &b.terms {
                let part = self.mul_t_right(a, w);
                out = out.add(&part.scale(c));
            }
        }
        out
    }

    /// `T_w⁻¹` in `H[q_*^{-1}]`.
    pub fn t_inverse(&self, w: &WeylElement) -> HeckeElement {
        self.mul_t_inv_right(&self.one(), w)
    }
}
