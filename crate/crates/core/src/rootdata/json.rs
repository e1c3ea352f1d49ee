use serde::{Deserialize, Serialize};

use super::{RootDatum, Vector, WeylElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumJson {
    pub rank: usize,
    pub roots: Vec<Vector>,
    pub coroots: Vec<Vector>,
    pub base: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub finite: Vec<Vec<i64>>,
    pub trans: Vector,
}

impl RootDatum {
    pub fn from_json(j: &DatumJson) -> Result<RootDatum> {
        RootDatum::new(j.rank, j.roots.clone(), j.coroots.clone(), j.base.clone())
    }

    pub fn to_json(&self) -> DatumJson {
        DatumJson {
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            base: self.base.clone(),
        }
    }

    pub fn element_to_json(&self, w: &WeylElement) -> ElementJson {
        let m = self.finite_matrix(w.fin);
        ElementJson {
            finite: m.chunks(self.rank).map(|r| r.to_vec()).collect(),
            trans: w.trans.clone(),
        }
    }

    /// Rejects matrices outside `W_o` and vectors of the wrong rank.
    pub fn element_from_json(&self, j: &ElementJson) -> Result<WeylElement> {
        let d = self.rank;
        if j.trans.len() != d || j.finite.len() != d || j.finite.iter().any(|r| r.len() != d) {
            return Err(Error::Parse(format!("element must have rank {d}")));
        }
        let flat: Vec<i64> = j.finite.concat();
        let fin = self
            .finite_index(&flat)
            .ok_or_else(|| Error::Parse(format!("{:?} is not in the finite Weyl group", j.finite)))?;
        Ok(WeylElement { fin, trans: j.trans.clone() })
    }
}
