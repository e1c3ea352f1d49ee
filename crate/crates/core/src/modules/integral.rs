//! Integrality of characters, the canonical lattice `M(χ)` inside `I(χ, K)`, torsion of the
//! truncated presentation over `Z̄_p`, and reduction modulo `p`.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::linalg::Matrix;
use super::standard::{generating_set, standard_module_field, StandardModule};
use super::{CharacterData, HeckeCharacter};
use crate::coeffs::padic::format_rational;
use crate::coeffs::{FiniteField, Padic, PadicRing, Specialization};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::rootdata::{Vector, WeylElement};

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityPoint {
    pub x: Vector,
    /// Valuation of `χ(E_x)`, absent for zero.
    pub valuation: Option<String>,
    /// `χ(E_{x'})` is integral for every `x'` in `W_o·x`.
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub radius: i64,
    pub points: Vec<IntegralityPoint>,
    pub orbit_constant: bool,
    pub verdict: bool,
}

/// `I(χ_A)` is integral iff every weight `w·χ` is integral on `A∩H`, i.e. iff `χ(E_x)` is
/// integral on whole `W_o`-orbits; checked on a box.
pub fn integrality_criterion(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<PadicRing>,
    radius: i64,
) -> Result<IntegralityReport> {
    let d = h.datum();
    let mut integral: HashMap<Vector, bool> = HashMap::new();
    let mut val = |x: &Vector| -> Result<(Option<BigRational>, bool)> {
        let v = chi.chi_e(h, x)?;
        let ok = v.is_integral();
        integral.insert(x.clone(), ok);
        Ok((v.valuation().cloned(), ok))
    };
    let mut points = Vec::new();
    for x in d.box_points(radius) {
        let (v, _) = val(&x)?;
        let mut pass = true;
        for y in d.orbit(&x) {
            pass &= val(&y)?.1;
        }
        points.push(IntegralityPoint { x, valuation: v.as_ref().map(format_rational), pass });
    }
    let by_x: HashMap<&Vector, bool> = points.iter().map(|p| (&p.x, p.pass)).collect();
    let orbit_constant = points
        .iter()
        .all(|p| d.orbit(&p.x).iter().all(|y| by_x.get(y).is_none_or(|b| *b == p.pass)));
    let verdict = points.iter().all(|p| p.pass);
    Ok(IntegralityReport { radius, points, orbit_constant, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub radius: i64,
    pub torsion_free: bool,
    /// First `(w_o, level, components)` where the level graph is disconnected.
    pub witness: Option<(u32, String, usize)>,
}

/// `M(χ) = ⊕ π^{m_{w_o}} Z̄_p T_{w_o}`, the image of `I(χ)` in `I(χ, K)`.
#[derive(Clone, Debug)]
pub struct IntegralStructure {
    /// `m_{w_o}`: minimal valuation of the image of `E_{w_o e^x}` over the box.
    pub exponents: Vec<BigRational>,
    /// Elementary-divisor valuations of the canonical sublattice, `-m_{w_o}`.
    pub divisors: Vec<BigRational>,
    pub contains_canonical: bool,
    /// The action on the lattice basis `π^{m_{w_o}} T_{w_o}`.
    pub module: StandardModule<PadicRing>,
    pub integral_action: bool,
    pub torsion: TorsionReport,
}

/// Valuation of the image of `[w] = E_w ⊗ 1` in `I(χ, K)`, a multiple of `T_{w_o}`.
fn image_valuation(h: &HeckeAlgebra, chi: &HeckeCharacter<PadicRing>, w: &WeylElement) -> Result<Option<BigRational>> {
    let r = chi.ring();
    let norm = chi.spec.monomial(&h.e_normalizer(w))?;
    let img = r.mul(&norm, &chi.chi_theta(h, &w.trans)?);
    Ok(img.valuation().cloned())
}

/// Level-graph test: the module glued from `π^{v_w} Z̄_p` along `π^{λ_e} Z̄_p` is torsion-free
/// iff at each level `t` the vertices with `v_w ≤ t` are connected through edges with `λ_e ≤ t`.
pub fn presentation_torsion(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<PadicRing>,
    radius: i64,
) -> Result<TorsionReport> {
    let d = h.datum();
    let gens: Vec<(Vector, Option<BigRational>)> = generating_set(d)
        .into_iter()
        .map(|x| Ok((x.clone(), chi.chi_e(h, &x)?.valuation().cloned())))
        .collect::<Result<_>>()?;
    let pts = d.box_points(radius);
    for f in 0..d.finite_order() as u32 {
        let verts: Vec<WeylElement> = pts.iter().map(|x| WeylElement { fin: f, trans: x.clone() }).collect();
        let index: HashMap<&WeylElement, usize> = verts.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let vals: Vec<BigRational> = verts
            .iter()
            .map(|w| {
                image_valuation(h, chi, w)?
                    .ok_or_else(|| Error::Specialization(format!("image of {w:?} vanishes")))
            })
            .collect::<Result<_>>()?;
        let mut edges = Vec::new();
        for (i, w) in verts.iter().enumerate() {
            for (x, vx) in &gens {
                let Some(vx) = vx else { continue };
                let trans: Vector = w.trans.iter().zip(x).map(|(a, b)| a + b).collect();
                if let Some(&j) = index.get(&WeylElement { fin: f, trans }) {
                    edges.push((i, j, vx + &vals[i]));
                }
            }
        }
        let levels: BTreeSet<BigRational> = vals.iter().cloned().chain(edges.iter().map(|e| e.2.clone())).collect();
        for t in levels {
            let mut parent: Vec<usize> = (0..verts.len()).collect();
            fn find(p: &mut [usize], i: usize) -> usize {
                let mut r = i;
                while p[r] != r {
                    r = p[r];
                }
                let mut c = i;
                while p[c] != r {
                    let n = p[c];
                    p[c] = r;
                    c = n;
                }
                r
            }
            for (i, j, l) in &edges {
                if *l <= t {
                    let (a, b) = (find(&mut parent, *i), find(&mut parent, *j));
                    parent[a] = b;
                }
            }
            let comps: BTreeSet<usize> =
                (0..verts.len()).filter(|&i| vals[i] <= t).map(|i| find(&mut parent, i)).collect();
            if comps.len() > 1 {
                return Ok(TorsionReport {
                    radius,
                    torsion_free: false,
                    witness: Some((f, format_rational(&t), comps.len())),
                });
            }
        }
    }
    Ok(TorsionReport { radius, torsion_free: true, witness: None })
}

pub fn integral_structure(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<PadicRing>,
    radius: i64,
) -> Result<IntegralStructure> {
    let d = h.datum();
    let r = chi.ring();
    let field = standard_module_field(h, chi)?;
    let mut exponents = Vec::new();
    for f in 0..d.finite_order() as u32 {
        let mut m: Option<BigRational> = None;
        for x in d.box_points(radius) {
            if let Some(v) = image_valuation(h, chi, &WeylElement { fin: f, trans: x })? {
                m = Some(m.map_or(v.clone(), |c| c.min(v)));
            }
        }
        exponents.push(m.unwrap_or_else(BigRational::zero));
    }
    let n = exponents.len();
    let actions: Vec<Matrix<Padic>> = field
        .actions
        .iter()
        .map(|a| {
            (0..n)
                .map(|i| (0..n).map(|j| r.mul(&a[i][j], &r.pi_pow(&exponents[j] - &exponents[i]))).collect())
                .collect()
        })
        .collect();
    let integral_action = actions.iter().all(|a| a.iter().flatten().all(|x| x.is_integral()));
    let mut canonical = field.canonical.clone();
    let id = d.identity().fin as usize;
    canonical[id] = r.pi_pow(-exponents[id].clone());
    let module = StandardModule { actions, canonical, ..field };
    Ok(IntegralStructure {
        divisors: exponents.iter().map(|e| -e.clone()).collect(),
        contains_canonical: exponents.iter().all(|e| *e <= BigRational::zero()),
        exponents,
        module,
        integral_action,
        torsion: presentation_torsion(h, chi, radius)?,
    })
}

/// Entrywise reduction of an integral module.
pub fn reduce_module(m: &StandardModule<PadicRing>) -> Result<StandardModule<FiniteField>> {
    let r = &m.ring;
    let red = |x: &Padic| r.reduce(x);
    let mat = |a: &Matrix<Padic>| -> Result<Matrix<_>> {
        a.iter().map(|row| row.iter().map(red).collect()).collect()
    };
    Ok(StandardModule {
        ring: r.field().clone(),
        q: m.q.iter().map(red).collect::<Result<_>>()?,
        labels: m.labels.clone(),
        names: m.names.clone(),
        actions: m.actions.iter().map(mat).collect::<Result<_>>()?,
        canonical: m.canonical.iter().map(red).collect::<Result<_>>()?,
    })
}

/// `r_p ∘ χ` for an integral character.
pub fn reduce_character(chi: &HeckeCharacter<PadicRing>) -> Result<HeckeCharacter<FiniteField>> {
    let r = chi.ring();
    let roots = (0..chi.spec.classes()).map(|c| r.reduce(chi.spec.root(c))).collect::<Result<_>>()?;
    let red = |v: &Vec<Padic>| v.iter().map(|x| r.reduce(x)).collect::<Result<Vec<_>>>();
    let data = match &chi.data {
        CharacterData::Theta(v) => CharacterData::Theta(red(v)?),
        CharacterData::Subsets(v) => CharacterData::Subsets(red(v)?),
    };
    Ok(HeckeCharacter { spec: Specialization::from_roots(r.field().clone(), roots), data })
}
