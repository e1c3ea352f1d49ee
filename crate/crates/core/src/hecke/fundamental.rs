//! The `λ̃`-splitting expansion of `T_w T_{v⁻¹}⁻¹`.

use serde::Serialize;

use super::{add_into, Basis, HeckeAlgebra, HeckeElement, Terms};
use crate::coeffs::HalfLaurent;
use crate::rootdata::WeylElement;

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalExpansion {
    /// Exponent vector of `c_{w,v}` in the `v_c`.
    pub c: Vec<i32>,
    /// T-basis coefficients of `c_{w,v} T_w T_{v⁻¹}⁻¹`.
    #[serde(skip)]
    pub terms: HeckeElement,
}

impl HeckeAlgebra {
    /// `c_{w,v} = (q_{wv} q_w⁻¹ q_v)^{1/2}` and the expansion of `c_{w,v} T_w T_{v⁻¹}⁻¹`,
    /// via `T̃_σ T̃_s⁻¹ = T̃_{σs}` if `σs < σ`, else `T̃_{σs} + λ̃_s T̃_σ`.
    pub fn fundamental_expand(&self, w: &WeylElement, v: &WeylElement) -> FundamentalExpansion {
        let d = &self.datum;
        let split = d.omega_split(v);
        let k = self.k;
        // Coefficients on the normalized basis T̃_σ = q_σ^{-1/2} T_σ.
        let mut cur = Terms::new();
        cur.insert(d.mul(w, &split.u), self.one_scalar());
        for &g in &split.word {
            let gen = &d.generators()[g];
            let mut lam = HalfLaurent::monomial(self.unit(gen.class, -1), 1);
            lam.add_scaled(&self.one_scalar(), &self.unit(gen.class, 1), -1);
            let mut next = Terms::new();
            for (sigma, c) in &cur {
                let moved = d.mul(sigma, &gen.elt);
                add_into(&mut next, moved.clone(), c);
                if d.length(&moved) > d.length(sigma) {
                    add_into(&mut next, sigma.clone(), &(c * &lam));
                }
            }
            cur = next;
        }
        let (hw, hv, hwv) = (
            self.half_weight(w),
            self.half_weight(v),
            self.half_weight(&d.mul(w, v)),
        );
        let c: Vec<i32> = (0..k).map(|i| hwv[i] - hw[i] + hv[i]).collect();
        let mut out = HeckeElement::zero(Basis::T);
        for (sigma, a) in cur {
            let hs = self.half_weight(&sigma);
            let shift: Vec<i32> = (0..k).map(|i| c[i] + hw[i] - hv[i] - hs[i]).collect();
            add_into(&mut out.terms, sigma, &a.shift(&shift));
        }
        FundamentalExpansion { c, terms: out }
    }

    fn unit(&self, class: usize, e: i32) -> Vec<i32> {
        let mut v = vec![0; self.k];
        v[class] = e;
        v
    }
}
