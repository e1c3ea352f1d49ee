//! The standard module type, its relation checks, and the field-case construction
//! on the canonical basis `(T_{w_o})`.

use std::collections::HashMap;

use serde::Serialize;

use super::linalg::{self, Matrix};
use super::HeckeCharacter;
use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::rootdata::{GeneratorKind, RootDatum, Vector, WeylElement};

/// Action matrices of `T_s` (`s ∈ S`, datum order) followed by `T_u` (`u` in the Ω generators).
#[derive(Clone, Debug)]
pub struct StandardModule<R: Ring> {
    pub ring: R,
    /// `φ(q_c)` per parameter class.
    pub q: Vec<R::Elt>,
    pub labels: Vec<WeylElement>,
    pub names: Vec<String>,
    pub actions: Vec<Matrix<R::Elt>>,
    /// Coordinates of `1 ⊗ 1`.
    pub canonical: Vec<R::Elt>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub quadratic: bool,
    pub braid: bool,
    pub omega: bool,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.quadratic && self.braid && self.omega
    }
}

/// Names of the acting generators: `s1, s2, …` for finite ones, `s0`, `s0_1`, … for affine
/// ones, `u0, u1, …` for Ω.
pub fn action_names(d: &RootDatum) -> Vec<String> {
    let mut affine = 0;
    let n_aff = d.generators().iter().filter(|g| matches!(g.kind, GeneratorKind::Affine(_))).count();
    let mut out: Vec<String> = d
        .generators()
        .iter()
        .map(|g| match g.kind {
            GeneratorKind::Finite(i) => format!("s{}", i + 1),
            GeneratorKind::Affine(_) => {
                affine += 1;
                if n_aff == 1 {
                    "s0".to_string()
                } else {
                    format!("s0_{}", affine - 1)
                }
            }
        })
        .collect();
    out.extend((0..d.omega_generators().len()).map(|j| format!("u{j}")));
    out
}

/// The acting elements in the order of [`StandardModule::actions`].
pub fn action_elements(d: &RootDatum) -> Vec<WeylElement> {
    d.generators()
        .iter()
        .map(|g| g.elt.clone())
        .chain(d.omega_generators().iter().cloned())
        .collect()
}

/// Dominant representatives of the central generators `Z_x` used for central characters.
pub fn center_representatives(d: &RootDatum) -> Vec<Vector> {
    d.box_points(1).into_iter().filter(|x| d.is_dominant(x) && x.iter().any(|c| *c != 0)).collect()
}

/// The generating set `M_X`: `W_o`-orbits of the nonzero dominant points of the unit box.
pub fn generating_set(d: &RootDatum) -> Vec<Vector> {
    let mut out: Vec<Vector> = center_representatives(d).iter().flat_map(|x| d.orbit(x)).collect();
    out.sort();
    out.dedup();
    out
}

impl<R: Ring> StandardModule<R> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn check_relations(&self, d: &RootDatum) -> Result<RelationReport> {
        let r = &self.ring;
        let n = self.dim();
        let ns = d.generators().len();
        let id = linalg::identity(r, n);
        let mut quadratic = true;
        for (i, g) in d.generators().iter().enumerate() {
            let m = &self.actions[i];
            let q = &self.q[g.class];
            let a = linalg::mat_add(r, m, &id)?;
            let b = linalg::mat_add(r, m, &linalg::mat_scale(r, &id, &r.neg(q)))?;
            quadratic &= is_zero_matrix(r, &linalg::mat_mul(r, &a, &b)?);
        }
        let mut braid = true;
        for i in 0..ns {
            for j in i + 1..ns {
                let Some(m) = d.coxeter_order(i, j) else { continue };
                let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
                let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
                braid &= linalg::word_matrix(r, &self.actions, &w1, n)?
                    == linalg::word_matrix(r, &self.actions, &w2, n)?;
            }
        }
        let mut omega = true;
        for (k, u) in d.omega_generators().iter().enumerate() {
            let ui = d.inverse(u);
            let mu = &self.actions[ns + k];
            for (i, g) in d.generators().iter().enumerate() {
                let conj = d.mul(&d.mul(u, &g.elt), &ui);
                let Some(j) = d.generators().iter().position(|x| x.elt == conj) else {
                    omega = false;
                    continue;
                };
                omega &= linalg::mat_mul(r, mu, &self.actions[i])? == linalg::mat_mul(r, &self.actions[j], mu)?;
            }
        }
        Ok(RelationReport { quadratic, braid, omega })
    }

    /// Dimension of the span of the orbit of `1 ⊗ 1` under the acting matrices.
    pub fn cyclic_span(&self) -> Result<usize> {
        let r = &self.ring;
        let mut basis: Matrix<R::Elt> = Vec::new();
        let mut frontier = vec![self.canonical.clone()];
        let mut rank = 0;
        while let Some(v) = frontier.pop() {
            let mut trial = basis.clone();
            trial.push(v.clone());
            let new_rank = linalg::rank(r, &trial)?;
            if new_rank == rank {
                continue;
            }
            rank = new_rank;
            basis = trial;
            if rank == self.dim() {
                break;
            }
            for m in &self.actions {
                frontier.push(linalg::mat_vec(r, m, &v)?);
            }
        }
        Ok(rank)
    }
}

pub(crate) fn is_zero_matrix<R: Ring>(r: &R, a: &Matrix<R::Elt>) -> bool {
    a.iter().all(|row| row.iter().all(|x| r.is_zero(x)))
}

/// Action of a T-basis element on `I(χ_A)` with basis `T_{w_o} ⊗ 1`.
fn field_action<R: Ring>(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<R>,
    elem: &HeckeElement,
    theta: &mut HashMap<Vector, R::Elt>,
) -> Result<Matrix<R::Elt>> {
    let d = h.datum();
    let r = chi.ring();
    let n = d.finite_order();
    let mut m = linalg::zeros(r, n, n);
    for f in 0..n as u32 {
        let prod = h.t_mul(elem, &h.t(d.finite(f)));
        for (g, part) in h.normal_form(&prod)? {
            let mut acc = r.zero();
            for (x, c) in part {
                if !theta.contains_key(&x) {
                    theta.insert(x.clone(), chi.chi_theta(h, &x)?);
                }
                let t = r.mul(&chi.spec.apply(&c)?, &theta[&x]);
                acc = r.add(&acc, &t)?;
            }
            m[g as usize][f as usize] = acc;
        }
    }
    Ok(m)
}

/// `I(χ_A)` for invertible parameters, on the canonical basis.
pub fn standard_module_field<R: Ring>(h: &HeckeAlgebra, chi: &HeckeCharacter<R>) -> Result<StandardModule<R>> {
    let d = h.datum();
    let r = chi.ring();
    for c in 0..d.num_classes() {
        if r.is_zero(chi.spec.root(c)) {
            return Err(Error::Specialization(format!("φ(q_{c}) is not invertible")));
        }
    }
    let mut theta = HashMap::new();
    let actions = action_elements(d)
        .into_iter()
        .map(|w| field_action(h, chi, &h.t(w), &mut theta))
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<WeylElement> = (0..d.finite_order() as u32).map(|f| d.finite(f)).collect();
    let mut canonical = vec![r.zero(); labels.len()];
    canonical[d.identity().fin as usize] = r.one();
    Ok(StandardModule {
        ring: r.clone(),
        q: (0..d.num_classes()).map(|c| chi.spec.q(c)).collect(),
        labels,
        names: action_names(d),
        actions,
        canonical,
    })
}

/// `ω(Z_x)` on `I(χ_A)` for each representative, failing if some `Z_x` is not scalar.
pub fn field_central_character<R: Ring>(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<R>,
) -> Result<Vec<(Vector, R::Elt)>> {
    let r = chi.ring();
    let mut theta = HashMap::new();
    center_representatives(h.datum())
        .into_iter()
        .map(|x| {
            let m = field_action(h, chi, &h.center_generator(&x), &mut theta)?;
            let c = linalg::scalar_value(r, &m)
                .ok_or_else(|| Error::NotCentralCharacter(format!("Z_{x:?} acts non-scalarly")))?;
            Ok((x, c))
        })
        .collect()
}
