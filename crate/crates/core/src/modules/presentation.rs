//! Truncated presentations of `I(χ) = H ⊗_{A∩H,χ} R` over a field, valid when `χ(q_s) = 0`.
//!
//! `I(χ)` is spanned by the symbols `[w] = E_w ⊗ 1`, subject to
//! `χ(E_x)[w] = φ(q(w, e^x))[w e^x]` for `x ∈ M_X`, where `E_w E_x = q(w, e^x) E_{w e^x}`.
//! Every relation has two terms, so the quotient is computed with a weighted union-find.

use std::collections::HashMap;

use serde::Serialize;

use super::linalg::{self, Matrix};
use super::standard::{action_elements, action_names, center_representatives, generating_set, StandardModule};
use super::HeckeCharacter;
use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::rootdata::{Vector, WeylElement};

struct WeightedUnionFind<R: Ring> {
    parent: Vec<usize>,
    /// `[i] = ratio[i]·[parent[i]]`.
    ratio: Vec<R::Elt>,
    dead: Vec<bool>,
}

impl<R: Ring> WeightedUnionFind<R> {
    fn new(r: &R, n: usize) -> Self {
        WeightedUnionFind { parent: (0..n).collect(), ratio: vec![r.one(); n], dead: vec![false; n] }
    }

    /// Root of `i` and `c` with `[i] = c·[root]`.
    fn find(&mut self, r: &R, i: usize) -> (usize, R::Elt) {
        let p = self.parent[i];
        if p == i {
            return (i, r.one());
        }
        let (root, c) = self.find(r, p);
        let total = r.mul(&self.ratio[i], &c);
        self.parent[i] = root;
        self.ratio[i] = total.clone();
        (root, total)
    }

    /// Imposes `a[i] = b[j]`.
    fn relate(&mut self, r: &R, i: usize, a: &R::Elt, j: usize, b: &R::Elt) -> Result<()> {
        let (ri, ci) = self.find(r, i);
        let (rj, cj) = self.find(r, j);
        let lhs = r.mul(a, &ci);
        let rhs = r.mul(b, &cj);
        if ri == rj {
            if !r.is_zero(&r.sub(&lhs, &rhs)?) {
                self.dead[ri] = true;
            }
            return Ok(());
        }
        match (r.is_zero(&lhs), r.is_zero(&rhs)) {
            (true, true) => {}
            (true, false) => self.dead[rj] = true,
            (false, true) => self.dead[ri] = true,
            (false, false) => {
                // lhs [ri] = rhs [rj]
                self.parent[rj] = ri;
                self.ratio[rj] = r.mul(&lhs, &r.inv(&rhs)?);
                self.dead[ri] |= self.dead[rj];
            }
        }
        Ok(())
    }
}

/// The symbols `[w_o e^x]` of a box, and the relation data of a character on them.
pub struct PresentationData<R: Ring> {
    pub radius: i64,
    pub symbols: Vec<WeylElement>,
    pub index: HashMap<WeylElement, usize>,
    /// Live classes: representative symbol and `[w] = coeff·[rep]` for each member.
    classes: Vec<usize>,
    class_of: Vec<Option<(usize, R::Elt)>>,
}

impl<R: Ring> PresentationData<R> {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<WeylElement> {
        self.classes.iter().map(|&i| self.symbols[i].clone()).collect()
    }

    /// Coordinates of `[w]`, or `None` if `w` lies outside the box.
    pub fn coordinates(&self, w: &WeylElement) -> Option<Option<(usize, &R::Elt)>> {
        self.index.get(w).map(|&i| self.class_of[i].as_ref().map(|(c, x)| (*c, x)))
    }
}

/// Builds the union-find quotient for the box of the given radius.
pub fn presentation_data<R: Ring>(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<R>,
    radius: i64,
) -> Result<PresentationData<R>> {
    let d = h.datum();
    let r = chi.ring();
    let symbols = d.box_elements(radius);
    let index: HashMap<WeylElement, usize> = symbols.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let weights: Vec<Vec<i32>> = symbols.iter().map(|w| h.half_weight(w)).collect();
    let gens: Vec<(Vector, R::Elt, Vec<i32>)> = generating_set(d)
        .into_iter()
        .map(|x| {
            let v = chi.chi_e(h, &x)?;
            let hw = h.half_weight(&d.translation(x.clone()));
            Ok((x, v, hw))
        })
        .collect::<Result<_>>()?;
    let mut uf = WeightedUnionFind::new(r, symbols.len());
    for (i, w) in symbols.iter().enumerate() {
        for (x, chix, hx) in &gens {
            let trans: Vector = w.trans.iter().zip(x).map(|(a, b)| a + b).collect();
            let Some(&j) = index.get(&WeylElement { fin: w.fin, trans }) else { continue };
            let e: Vec<i32> = (0..hx.len()).map(|c| weights[i][c] + hx[c] - weights[j][c]).collect();
            if e.iter().any(|v| *v < 0) {
                return Err(Error::Specialization(format!("non-integral structure constant at {w:?}")));
            }
            let c = chi.spec.monomial(&e)?;
            uf.relate(r, i, chix, j, &c)?;
        }
    }
    let mut roots: HashMap<usize, usize> = HashMap::new();
    let mut classes = Vec::new();
    let mut class_of = vec![None; symbols.len()];
    let mut found = Vec::with_capacity(symbols.len());
    for i in 0..symbols.len() {
        found.push(uf.find(r, i));
    }
    // Representative: the shortest member closest to the origin.
    let mut order: Vec<usize> = (0..symbols.len()).collect();
    order.sort_by_cached_key(|&i| {
        let w = &symbols[i];
        (d.length(w), w.trans.iter().map(|c| c.abs()).sum::<i64>(), w.clone())
    });
    let mut rep_ratio: HashMap<usize, R::Elt> = HashMap::new();
    for &i in &order {
        let (root, c) = &found[i];
        if uf.dead[*root] {
            continue;
        }
        if !roots.contains_key(root) {
            roots.insert(*root, classes.len());
            classes.push(i);
            rep_ratio.insert(*root, r.inv(c)?);
        }
        // [i] = c [root] = c / c_rep [rep]
        class_of[i] = Some((roots[root], r.mul(c, &rep_ratio[root])));
    }
    Ok(PresentationData { radius, symbols, index, classes, class_of })
}

/// A truncated standard module together with what escaped the box.
#[derive(Clone, Debug)]
pub struct Presentation<R: Ring> {
    pub radius: i64,
    pub module: StandardModule<R>,
    pub central: Vec<(Vector, Option<R::Elt>)>,
    /// Terms of generator actions that left the box (nonzero means the radius is too small).
    pub escapes: usize,
}

fn presented_action<R: Ring>(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<R>,
    data: &PresentationData<R>,
    act: impl Fn(&WeylElement) -> HeckeElement,
    escapes: &mut usize,
) -> Result<Matrix<R::Elt>> {
    let r = chi.ring();
    let n = data.dimension();
    let mut m = linalg::zeros(r, n, n);
    for (col, rep) in data.representatives().iter().enumerate() {
        let image = h.to_e_basis(&act(rep))?;
        for (w, c) in &image.terms {
            let coef = chi.spec.apply(c)?;
            if r.is_zero(&coef) {
                continue;
            }
            match data.coordinates(w) {
                None => *escapes += 1,
                Some(None) => {}
                Some(Some((row, ratio))) => {
                    m[row][col] = r.add(&m[row][col], &r.mul(&coef, ratio))?;
                }
            }
        }
    }
    Ok(m)
}

pub fn standard_module_presentation<R: Ring>(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<R>,
    radius: i64,
) -> Result<Presentation<R>> {
    let d = h.datum();
    let r = chi.ring();
    let data = presentation_data(h, chi, radius)?;
    let mut escapes = 0;
    let actions = action_elements(d)
        .into_iter()
        .map(|g| presented_action(h, chi, &data, |rep| h.mul_t_left(&g, &h.e_element(rep)), &mut escapes))
        .collect::<Result<Vec<_>>>()?;
    let mut central = Vec::new();
    for x in center_representatives(d) {
        let z = h.center_generator(&x);
        let m = presented_action(h, chi, &data, |rep| h.t_mul(&z, &h.e_element(rep)), &mut escapes)?;
        central.push((x, linalg::scalar_value(r, &m)));
    }
    let mut canonical = vec![r.zero(); data.dimension()];
    if let Some(Some((i, c))) = data.coordinates(&d.identity()) {
        canonical[i] = c.clone();
    }
    let module = StandardModule {
        ring: r.clone(),
        q: (0..d.num_classes()).map(|c| chi.spec.q(c)).collect(),
        labels: data.representatives(),
        names: action_names(d),
        actions,
        canonical,
    };
    Ok(Presentation { radius, module, central, escapes })
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub radii: Vec<i64>,
    pub dims: Vec<usize>,
    pub escapes: Vec<usize>,
    pub dimension_stable: bool,
    pub central_stable: bool,
    pub char_polys_stable: bool,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.dimension_stable && self.central_stable && self.char_polys_stable && self.escapes.iter().all(|e| *e == 0)
    }
}

/// Presentations at `radius`, `radius + 1`, `radius + 2`; the last one is returned.
pub fn stabilized_presentation<R: Ring>(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<R>,
    radius: i64,
) -> Result<(Presentation<R>, StabilityReport)> {
    let r = chi.ring();
    let mut runs = Vec::new();
    for k in 0..3 {
        runs.push(standard_module_presentation(h, chi, radius + k)?);
    }
    let polys = |p: &Presentation<R>| -> Result<Vec<Vec<R::Elt>>> {
        p.module.actions.iter().map(|m| linalg::char_poly(r, m)).collect()
    };
    let first = polys(&runs[0])?;
    let mut char_polys_stable = true;
    for p in &runs[1..] {
        char_polys_stable &= polys(p)? == first;
    }
    let report = StabilityReport {
        radii: runs.iter().map(|p| p.radius).collect(),
        dims: runs.iter().map(|p| p.module.dim()).collect(),
        escapes: runs.iter().map(|p| p.escapes).collect(),
        dimension_stable: runs.windows(2).all(|w| w[0].module.dim() == w[1].module.dim()),
        central_stable: runs.windows(2).all(|w| w[0].central == w[1].central)
            && runs.iter().all(|p| p.central.iter().all(|(_, c)| c.is_some())),
        char_polys_stable,
    };
    Ok((runs.pop().expect("three runs"), report))
}

/// Dimension of the truncated presentation, without building the action.
pub fn presentation_dimension<R: Ring>(h: &HeckeAlgebra, chi: &HeckeCharacter<R>, radius: i64) -> Result<usize> {
    Ok(presentation_data(h, chi, radius)?.dimension())
}
