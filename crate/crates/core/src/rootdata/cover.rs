//! Finite covers of `X` by regions on which `x ↦ ℓ(w_o e^x)` is additive.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{dot, RootDatum, Vector, WeylElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CoverRegion {
    /// One flag per positive root: `n(α, w_o e^x) ≥ 0`.
    pub pattern: Vec<bool>,
    pub base: Vector,
    pub members: usize,
}

impl RootDatum {
    /// `n(α, w_o e^x)`: `(x, α∨)` if `w_o α > 0`, else `1 + (x, α∨)`.
    pub fn sign_pattern(&self, fin: u32, x: &[i64]) -> Vec<bool> {
        let neg = &self.group.neg[fin as usize];
        self.pos_roots
            .iter()
            .zip(neg)
            .map(|(&a, &n)| dot(x, &self.coroots[a]) + i64::from(n) >= 0)
            .collect()
    }

    /// Base points `x_i` such that `ℓ(w_o e^x) = ℓ(w_o e^{x_i}) + ℓ(e^{x - x_i})`
    /// for every `x` of the box assigned to `x_i`. A sign region that no single
    /// point covers is split greedily, so one pattern may carry several bases.
    pub fn minuscule_cover(&self, fin: u32, radius: i64) -> Result<Vec<CoverRegion>> {
        let mut regions: BTreeMap<Vec<bool>, Vec<Vector>> = BTreeMap::new();
        for x in self.box_points(radius) {
            regions.entry(self.sign_pattern(fin, &x)).or_default().push(x);
        }
        let mut out = Vec::new();
        for (pattern, pts) in regions {
            let lens: Vec<usize> = pts.iter().map(|x| self.length(&elt(fin, x))).collect();
            let mut order: Vec<usize> = (0..pts.len()).collect();
            order.sort_by_key(|&i| (lens[i], pts[i].iter().map(|c| c.abs()).sum::<i64>(), pts[i].clone()));
            let covers = |b: usize, x: usize| {
                let d: Vector = pts[x].iter().zip(&pts[b]).map(|(p, q)| p - q).collect();
                lens[x] == lens[b] + self.length(&self.translation(d))
            };
            let mut uncovered: Vec<usize> = (0..pts.len()).collect();
            while !uncovered.is_empty() {
                let (b, hit) = order
                    .iter()
                    .map(|&b| (b, uncovered.iter().filter(|&&x| covers(b, x)).count()))
                    .fold((order[0], 0), |best, c| if c.1 > best.1 { c } else { best });
                if hit == 0 {
                    return Err(Error::CoverFailure(format!(
                        "region {pattern:?} of w{fin} in radius {radius} cannot be covered"
                    )));
                }
                uncovered.retain(|&x| !covers(b, x));
                out.push(CoverRegion { pattern: pattern.clone(), base: pts[b].clone(), members: hit });
            }
        }
        Ok(out)
    }

    /// First region of `cover` whose pattern matches `x` and which is additive at `x`.
    pub fn cover_base<'a>(&self, cover: &'a [CoverRegion], fin: u32, x: &[i64]) -> Option<&'a CoverRegion> {
        let pat = self.sign_pattern(fin, x);
        let lx = self.length(&elt(fin, x));
        cover.iter().filter(|r| r.pattern == pat).find(|r| {
            let d: Vector = x.iter().zip(&r.base).map(|(p, q)| p - q).collect();
            lx == self.length(&elt(fin, &r.base)) + self.length(&self.translation(d))
        })
    }
}

fn elt(fin: u32, x: &[i64]) -> WeylElement {
    WeylElement { fin, trans: x.to_vec() }
}
