//! One-dimensional submodules and quotients of small modules over `F_{p^k}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{self, Matrix};
use super::standard::StandardModule;
use crate::coeffs::field::poly;
use crate::coeffs::{FiniteField, Gf, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineCharacter {
    /// Eigenvalue of each acting matrix, in module order.
    pub values: Vec<Gf>,
    /// Dimension of the common eigenspace.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub dim: usize,
    pub submodules: Vec<LineCharacter>,
    pub quotients: Vec<LineCharacter>,
    /// Decided for `dim ≤ 3`.
    pub irreducible: Option<bool>,
    /// Decided for reducible modules of dimension 2.
    pub decomposable: Option<bool>,
}

/// Eigenvalues of `a` in the field, failing if its characteristic polynomial does not split.
fn eigenvalues(f: &FiniteField, a: &Matrix<Gf>, rng: &mut ChaCha8Rng) -> Result<Vec<Gf>> {
    let cp = linalg::char_poly(f, a)?;
    let roots = poly::roots(f, &cp, rng);
    let mut rest = cp;
    let mut count = 0;
    for z in &roots {
        let lin = vec![f.neg(z), f.one()];
        loop {
            let (q, rem) = poly::divmod(f, &rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            count += 1;
        }
    }
    if count != a.len() {
        return Err(Error::Config(format!(
            "characteristic polynomial does not split over F_{}^{}; enlarge k",
            f.p(),
            f.k()
        )));
    }
    Ok(roots)
}

/// Common eigenvectors of `mats`, grouped by their eigenvalue tuples.
fn common_lines(f: &FiniteField, mats: &[Matrix<Gf>], rng: &mut ChaCha8Rng) -> Result<Vec<(Vec<Gf>, Vec<Vec<Gf>>)>> {
    let n = mats.first().map_or(0, |m| m.len());
    let spectra = mats.iter().map(|m| eigenvalues(f, m, rng)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Gf>, Matrix<Gf>)> = vec![(vec![], vec![])];
    while let Some((vals, rows)) = stack.pop() {
        let k = vals.len();
        let ker = linalg::kernel(f, &rows, n)?;
        if ker.is_empty() {
            continue;
        }
        if k == mats.len() {
            out.push((vals, ker));
            continue;
        }
        for z in spectra[k].iter().rev() {
            let mut more = rows.clone();
            for (i, row) in mats[k].iter().enumerate() {
                let mut r = row.clone();
                r[i] = f.sub(&r[i], z);
                more.push(r);
            }
            let mut v = vals.clone();
            v.push(z.clone());
            stack.push((v, more));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

pub fn subquotient_scan(m: &StandardModule<FiniteField>, seed: u64) -> Result<ScanReport> {
    let f = &m.ring;
    let n = m.dim();
    if n > 6 {
        return Err(Error::Config(format!("scan limited to dimension 6, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subs = common_lines(f, &m.actions, &mut rng)?;
    let transposed: Vec<Matrix<Gf>> = m.actions.iter().map(linalg::transpose).collect();
    let quots = common_lines(f, &transposed, &mut rng)?;
    let lines = |v: &[(Vec<Gf>, Vec<Vec<Gf>>)]| -> Vec<LineCharacter> {
        v.iter().map(|(values, ker)| LineCharacter { values: values.clone(), multiplicity: ker.len() }).collect()
    };
    let irreducible = match n {
        0 => Some(false),
        1 => Some(true),
        2 | 3 => Some(subs.is_empty() && quots.is_empty()),
        _ if !subs.is_empty() || !quots.is_empty() => Some(false),
        _ => None,
    };
    let decomposable = if n == 2 && !subs.is_empty() {
        let all: Matrix<Gf> = subs.iter().flat_map(|(_, k)| k.iter().cloned()).collect();
        Some(linalg::rank(f, &all)? == 2)
    } else {
        None
    };
    Ok(ScanReport { dim: n, submodules: lines(&subs), quotients: lines(&quots), irreducible, decomposable })
}

/// For a 2-dimensional module with a line `L`, the character of `M / L`.
pub fn complementary_values(m: &StandardModule<FiniteField>, line: &LineCharacter) -> Vec<Gf> {
    let f = &m.ring;
    m.actions
        .iter()
        .zip(&line.values)
        .map(|(a, z)| {
            let tr = (0..a.len()).fold(f.zero(), |acc, i| Ring::add(f, &acc, &a[i][i]).expect("field"));
            f.sub(&tr, z)
        })
        .collect()
}
