use serde::{Deserialize, Serialize};

use super::{add_into, Basis, HeckeAlgebra, HeckeElement};
use crate::coeffs::HalfLaurent;
use crate::error::{Error, Result};
use crate::rootdata::ElementJson;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub elt: ElementJson,
    pub coef: HalfLaurent,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeJson {
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

impl HeckeAlgebra {
    pub fn element_to_json(&self, h: &HeckeElement) -> HeckeJson {
        HeckeJson {
            basis: h.basis,
            terms: h
                .terms
                .iter()
                .map(|(w, c)| TermJson { elt: self.datum.element_to_json(w), coef: c.clone() })
                .collect(),
        }
    }

    pub fn element_from_json(&self, j: &HeckeJson) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero(j.basis);
        for t in &j.terms {
            if t.coef.arity().is_some_and(|a| a != self.k) {
                return Err(Error::Parse(format!("coefficient {} needs {} classes", t.coef, self.k)));
            }
            add_into(&mut out.terms, self.datum.element_from_json(&t.elt)?, &t.coef);
        }
        Ok(out)
    }
}
