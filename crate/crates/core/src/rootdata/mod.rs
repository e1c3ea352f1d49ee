//! Based root data and the extended affine Weyl group `W = W_o e^X = Ω W_aff`.
//!
//! An element `w_o e^x` is stored as an index into the enumerated finite Weyl
//! group together with the translation `x`. Lengths come from the closed formula
//! over positive roots; reduced words from greedy right descents.

mod bruhat;
mod cover;
mod json;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use parking_lot::Mutex;
use serde::Serialize;

use crate::error::{Error, Result};

pub use cover::CoverRegion;
pub use json::{DatumJson, ElementJson};

pub type Vector = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `w_o e^x`: `fin` indexes the finite Weyl group of the owning datum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylElement {
    pub fin: u32,
    pub trans: Vector,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}·e^{:?}", self.fin, self.trans)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Simple reflection `s_β`; payload is the position in the base.
    Finite(usize),
    /// `e^{-α} s_α = s_α e^α` for `α ∈ R_m`; payload is the root index.
    Affine(usize),
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub elt: WeylElement,
    pub class: usize,
}

/// Greedy right-descent factorization `w = u · s_{word[0]} ··· s_{word[m-1]}`.
#[derive(Clone, Debug)]
pub struct Split {
    pub u: WeylElement,
    pub word: Vec<usize>,
}

struct FiniteGroup {
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    inverse: Vec<u32>,
    mul: Vec<u32>,
    /// `neg[f][j]`: the `j`-th positive root is sent to a negative root by `f`.
    neg: Vec<Vec<bool>>,
}

#[derive(Default)]
struct Caches {
    splits: HashMap<WeylElement, Arc<Split>>,
    bruhat: HashMap<(WeylElement, WeylElement), bool>,
}

const CACHE_LIMIT: usize = 2_000_000;

pub struct RootDatum {
    rank: usize,
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    base: Vec<usize>,
    root_index: HashMap<Vector, usize>,
    positive: Vec<bool>,
    pos_roots: Vec<usize>,
    group: FiniteGroup,
    simple_fin: Vec<u32>,
    gens: Vec<Generator>,
    nclasses: usize,
    omega_gens: Vec<WeylElement>,
    caches: Mutex<Caches>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RootDatum(rank {}, {} roots, |W_o| = {})",
            self.rank,
            self.roots.len(),
            self.group.mats.len()
        )
    }
}

/// Solves `m c = b` over the rationals; `None` if singular or non-integral.
fn solve_integral(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .map(|x| Ratio::from_integer(*x as i128))
                .chain(std::iter::once(Ratio::from_integer(*bi as i128)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|r| a[*r][col] != Ratio::from_integer(0))?;
        a.swap(col, piv);
        let pv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * *y;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            let v = row[n];
            v.is_integer().then(|| *v.numer() as i64)
        })
        .collect()
}

impl RootDatum {
    /// Validates and builds a based root datum with the standard pairing on `Z^rank`.
    pub fn new(
        rank: usize,
        roots: Vec<Vector>,
        coroots: Vec<Vector>,
        base: Vec<usize>,
    ) -> Result<RootDatum> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if roots.len() != coroots.len() {
            return bad("roots and coroots differ in number".into());
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != rank) {
            return bad(format!("vectors must have length {rank}"));
        }
        let mut root_index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if root_index.insert(r.clone(), i).is_some() {
                return bad(format!("duplicate root {r:?}"));
            }
        }
        for (r, c) in roots.iter().zip(&coroots) {
            if dot(r, c) != 2 {
                return bad(format!("(α, α∨) = {} for α = {r:?}", dot(r, c)));
            }
            let twice: Vector = r.iter().map(|x| 2 * x).collect();
            if root_index.contains_key(&twice) {
                return bad(format!("non-reduced: 2·{r:?} is a root"));
            }
        }
        if base.iter().any(|b| *b >= roots.len()) {
            return bad("base index out of range".into());
        }
        let coroot_index: HashMap<&Vector, usize> =
            coroots.iter().enumerate().map(|(i, c)| (c, i)).collect();
        for (b, bc) in roots.iter().zip(&coroots) {
            for (i, (r, c)) in roots.iter().zip(&coroots).enumerate() {
                let sr: Vector = r.iter().zip(b).map(|(x, y)| x - dot(r, bc) * y).collect();
                let sc: Vector = c.iter().zip(bc).map(|(x, y)| x - dot(b, c) * y).collect();
                match (root_index.get(&sr), coroot_index.get(&sc)) {
                    (Some(j), Some(k)) if j == k => {}
                    _ => {
                        return bad(format!(
                            "reflection in {b:?} does not permute the root/coroot pair {i}"
                        ))
                    }
                }
            }
        }
        // Cartan system: coefficients of roots in the base.
        let cart: Vec<Vec<i64>> = base
            .iter()
            .map(|&j| base.iter().map(|&i| dot(&roots[i], &coroots[j])).collect())
            .collect();
        let mut positive = Vec::with_capacity(roots.len());
        for r in &roots {
            let rhs: Vec<i64> = base.iter().map(|&j| dot(r, &coroots[j])).collect();
            let c = solve_integral(&cart, &rhs)
                .ok_or_else(|| Error::InvalidDatum(format!("{r:?} not in the span of the base")))?;
            let recon: Vector = (0..rank)
                .map(|t| base.iter().zip(&c).map(|(&i, ci)| ci * roots[i][t]).sum())
                .collect();
            if &recon != r {
                return bad(format!("{r:?} is not an integral combination of the base"));
            }
            if c.iter().all(|x| *x >= 0) {
                positive.push(true);
            } else if c.iter().all(|x| *x <= 0) {
                positive.push(false);
            } else {
                return bad(format!("{r:?} has mixed signs in the base"));
            }
        }
        let pos_roots: Vec<usize> = (0..roots.len()).filter(|i| positive[*i]).collect();

        let d = rank;
        let refl = |b: usize| -> Vec<i64> {
            let mut m = vec![0i64; d * d];
            for i in 0..d {
                for j in 0..d {
                    m[i * d + j] = i64::from(i == j) - roots[b][i] * coroots[b][j];
                }
            }
            m
        };
        let matmul = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut m = vec![0i64; d * d];
            for i in 0..d {
                for k in 0..d {
                    let x = a[i * d + k];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..d {
                        m[i * d + j] += x * b[k * d + j];
                    }
                }
            }
            m
        };
        let ident: Vec<i64> = (0..d * d).map(|t| i64::from(t / d == t % d)).collect();
        let simple_mats: Vec<Vec<i64>> = base.iter().map(|&b| refl(b)).collect();
        let mut mats = vec![ident];
        let mut index = HashMap::from([(mats[0].clone(), 0u32)]);
        let mut frontier = 0;
        while frontier < mats.len() {
            let cur = mats[frontier].clone();
            for s in &simple_mats {
                let m = matmul(&cur, s);
                if !index.contains_key(&m) {
                    index.insert(m.clone(), mats.len() as u32);
                    mats.push(m);
                    if mats.len() > 100_000 {
                        return bad("finite Weyl group too large".into());
                    }
                }
            }
            frontier += 1;
        }
        let n = mats.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&matmul(&mats[a], &mats[b])];
            }
        }
        let inverse: Vec<u32> = (0..n)
            .map(|a| (0..n).find(|b| mul[a * n + b] == 0).unwrap() as u32)
            .collect();
        let apply = |m: &[i64], v: &[i64]| -> Vector {
            (0..d).map(|i| (0..d).map(|j| m[i * d + j] * v[j]).sum()).collect()
        };
        let neg: Vec<Vec<bool>> = mats
            .iter()
            .map(|m| {
                pos_roots
                    .iter()
                    .map(|&j| !positive[root_index[&apply(m, &roots[j])]])
                    .collect()
            })
            .collect();
        let simple_fin: Vec<u32> = simple_mats.iter().map(|m| index[m]).collect();
        let group = FiniteGroup { mats, index, inverse, mul, neg };

        let mut datum = RootDatum {
            rank,
            roots,
            coroots,
            base,
            root_index,
            positive,
            pos_roots,
            group,
            simple_fin,
            gens: Vec::new(),
            nclasses: 0,
            omega_gens: Vec::new(),
            caches: Mutex::new(Caches::default()),
        };
        datum.build_generators()?;
        Ok(datum)
    }

    fn build_generators(&mut self) -> Result<()> {
        let mut gens = Vec::new();
        for (i, &f) in self.simple_fin.iter().enumerate() {
            gens.push(Generator {
                kind: GeneratorKind::Finite(i),
                elt: WeylElement { fin: f, trans: vec![0; self.rank] },
                class: 0,
            });
        }
        for a in self.minimal_coroot_roots() {
            let f = self.reflection_fin(a);
            gens.push(Generator {
                kind: GeneratorKind::Affine(a),
                elt: WeylElement { fin: f, trans: self.roots[a].clone() },
                class: 0,
            });
        }
        for g in &gens {
            if self.length(&g.elt) != 1 || !self.mul(&g.elt, &g.elt).is_identity() {
                return Err(Error::InvalidDatum(format!(
                    "generator {:?} is not a length-one involution",
                    g.kind
                )));
            }
        }
        self.gens = gens;
        // Ω generators from the Ω-parts of the unit translations.
        let mut omega: Vec<WeylElement> = Vec::new();
        for i in 0..self.rank {
            let mut e = vec![0; self.rank];
            e[i] = 1;
            let u = self.omega_split(&self.translation(e)).u.clone();
            if !u.is_identity() && !omega.contains(&u) {
                omega.push(u);
            }
        }
        self.omega_gens = omega;
        self.assign_classes();
        Ok(())
    }

    /// Indices of roots whose coroot is minimal for the order given by
    /// nonnegative combinations of simple coroots.
    fn minimal_coroot_roots(&self) -> Vec<usize> {
        let cart_t: Vec<Vec<i64>> = self
            .base
            .iter()
            .map(|&j| self.base.iter().map(|&i| dot(&self.roots[j], &self.coroots[i])).collect())
            .collect();
        let coords: Vec<Vec<i64>> = self
            .coroots
            .iter()
            .map(|c| {
                let rhs: Vec<i64> = self.base.iter().map(|&j| dot(&self.roots[j], c)).collect();
                solve_integral(&cart_t, &rhs).expect("coroots lie in the coroot lattice")
            })
            .collect();
        (0..self.roots.len())
            .filter(|&a| {
                !(0..self.roots.len()).any(|b| {
                    b != a && coords[a].iter().zip(&coords[b]).all(|(x, y)| x - y >= 0)
                })
            })
            .collect()
    }

    fn assign_classes(&mut self) {
        let n = self.gens.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                if let Some(m) = self.coxeter_order(i, j) {
                    if m % 2 == 1 {
                        union(&mut parent, i, j);
                    }
                }
            }
        }
        for u in self.omega_gens.clone() {
            let ui = self.inverse(&u);
            for i in 0..n {
                let c = self.mul(&self.mul(&u, &self.gens[i].elt), &ui);
                if let Some(j) = self.gens.iter().position(|g| g.elt == c) {
                    union(&mut parent, i, j);
                }
            }
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let next = ids.len();
            let c = *ids.entry(r).or_insert(next);
            self.gens[i].class = c;
        }
        self.nclasses = ids.len().max(1);
    }

    /// Order of `s_i s_j`, or `None` if it exceeds 12 (treated as infinite).
    pub fn coxeter_order(&self, i: usize, j: usize) -> Option<usize> {
        let st = self.mul(&self.gens[i].elt, &self.gens[j].elt);
        let mut cur = st.clone();
        for m in 1..=12 {
            if cur.is_identity() {
                return Some(m);
            }
            cur = self.mul(&cur, &st);
        }
        None
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn is_positive(&self, root: usize) -> bool {
        self.positive[root]
    }

    pub fn positive_roots(&self) -> &[usize] {
        &self.pos_roots
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn num_classes(&self) -> usize {
        self.nclasses
    }

    pub fn class_of(&self, gen: usize) -> usize {
        self.gens[gen].class
    }

    /// Generators of Ω (nontrivial length-zero elements).
    pub fn omega_generators(&self) -> &[WeylElement] {
        &self.omega_gens
    }

    /// Partition of the generator indices into parameter classes.
    pub fn param_classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nclasses];
        for (i, g) in self.gens.iter().enumerate() {
            out[g.class].push(i);
        }
        out
    }

    pub fn finite_order(&self) -> usize {
        self.group.mats.len()
    }

    pub fn finite_matrix(&self, f: u32) -> &[i64] {
        &self.group.mats[f as usize]
    }

    pub fn finite_index(&self, m: &[i64]) -> Option<u32> {
        self.group.index.get(m).copied()
    }

    pub fn simple_reflection_fin(&self, i: usize) -> u32 {
        self.simple_fin[i]
    }

    fn reflection_fin(&self, root: usize) -> u32 {
        let d = self.rank;
        let (r, c) = (&self.roots[root], &self.coroots[root]);
        let m: Vec<i64> = (0..d * d)
            .map(|t| i64::from(t / d == t % d) - r[t / d] * c[t % d])
            .collect();
        self.group.index[&m]
    }

    pub fn fin_mul(&self, a: u32, b: u32) -> u32 {
        let n = self.group.mats.len();
        self.group.mul[a as usize * n + b as usize]
    }

    pub fn fin_inverse(&self, a: u32) -> u32 {
        self.group.inverse[a as usize]
    }

    /// `w_o(x)`.
    pub fn act(&self, f: u32, x: &[i64]) -> Vector {
        let m = &self.group.mats[f as usize];
        let d = self.rank;
        (0..d).map(|i| (0..d).map(|j| m[i * d + j] * x[j]).sum()).collect()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { fin: 0, trans: vec![0; self.rank] }
    }

    pub fn translation(&self, x: Vector) -> WeylElement {
        WeylElement { fin: 0, trans: x }
    }

    pub fn finite(&self, f: u32) -> WeylElement {
        WeylElement { fin: f, trans: vec![0; self.rank] }
    }

    /// `(u e^x)(v e^y) = uv e^{v⁻¹(x) + y}`.
    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let vx = self.act(self.fin_inverse(b.fin), &a.trans);
        WeylElement {
            fin: self.fin_mul(a.fin, b.fin),
            trans: vx.iter().zip(&b.trans).map(|(p, q)| p + q).collect(),
        }
    }

    pub fn inverse(&self, a: &WeylElement) -> WeylElement {
        WeylElement {
            fin: self.fin_inverse(a.fin),
            trans: self.act(a.fin, &a.trans).iter().map(|x| -x).collect(),
        }
    }

    /// `ℓ(w_o e^x) = Σ_{α>0, w_o α>0} |(x,α∨)| + Σ_{α>0, w_o α<0} |1+(x,α∨)|`.
    pub fn length(&self, w: &WeylElement) -> usize {
        let neg = &self.group.neg[w.fin as usize];
        self.pos_roots
            .iter()
            .zip(neg)
            .map(|(&a, &n)| {
                let p = dot(&w.trans, &self.coroots[a]);
                (if n { (1 + p).abs() } else { p.abs() }) as usize
            })
            .sum()
    }

    /// Length of the finite part alone.
    pub fn finite_length(&self, f: u32) -> usize {
        self.group.neg[f as usize].iter().filter(|b| **b).count()
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.base.iter().all(|&b| dot(x, &self.coroots[b]) >= 0)
    }

    /// `ℓ(x) = #{α > 0 : (x, α∨) < 0}`.
    pub fn ell_x(&self, x: &[i64]) -> usize {
        self.pos_roots
            .iter()
            .filter(|&&a| dot(x, &self.coroots[a]) < 0)
            .count()
    }

    /// Greedy right-descent factorization, memoized.
    pub fn omega_split(&self, w: &WeylElement) -> Arc<Split> {
        if let Some(s) = self.caches.lock().splits.get(w) {
            return s.clone();
        }
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        let mut rec = Vec::with_capacity(len);
        while len > 0 {
            let (i, next) = self
                .gens
                .iter()
                .enumerate()
                .map(|(i, g)| (i, self.mul(&cur, &g.elt)))
                .find(|(_, n)| self.length(n) < len)
                .expect("a positive-length element has a right descent");
            rec.push(i);
            cur = next;
            len -= 1;
        }
        rec.reverse();
        let split = Arc::new(Split { u: cur, word: rec });
        let mut c = self.caches.lock();
        if c.splits.len() > CACHE_LIMIT {
            c.splits.clear();
        }
        c.splits.insert(w.clone(), split.clone());
        split
    }

    /// Reduced word of an element of `W_aff`, as generator indices.
    pub fn reduced_word(&self, w: &WeylElement) -> Result<Vec<usize>> {
        let s = self.omega_split(w);
        if !s.u.is_identity() {
            return Err(Error::NotInWaff(format!("{w:?} has Ω-part {:?}", s.u)));
        }
        Ok(s.word.clone())
    }

    pub fn word_product(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(self.identity(), |acc, &i| self.mul(&acc, &self.gens[i].elt))
    }

    /// Lowest-index right descent, if any.
    pub fn right_descent(&self, w: &WeylElement) -> Option<usize> {
        let l = self.length(w);
        (0..self.gens.len()).find(|&i| self.length(&self.mul(w, &self.gens[i].elt)) < l)
    }

    /// `(u, ℓ(x))` with `u(x)` dominant, built by greedy simple descents.
    pub fn dominant_conjugator(&self, x: &[i64]) -> (WeylElement, usize) {
        let mut u = 0u32;
        let mut cur = x.to_vec();
        while let Some(i) = (0..self.base.len()).find(|&i| dot(&cur, &self.coroots[self.base[i]]) < 0)
        {
            let s = self.simple_fin[i];
            cur = self.act(s, &cur);
            u = self.fin_mul(s, u);
        }
        (self.finite(u), self.ell_x(x))
    }

    /// The `W_o`-orbit of `x`, sorted.
    pub fn orbit(&self, x: &[i64]) -> Vec<Vector> {
        let mut out: Vec<Vector> = (0..self.finite_order() as u32).map(|f| self.act(f, x)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// `q_w` as a count of generators per class along a reduced word of `w_aff`.
    pub fn q_counts(&self, w: &WeylElement) -> Vec<i32> {
        let mut c = vec![0i32; self.nclasses];
        for &g in &self.omega_split(w).word {
            c[self.gens[g].class] += 1;
        }
        c
    }

    /// Points of the axis-aligned box of the given radius, in lexicographic order.
    pub fn box_points(&self, radius: i64) -> Vec<Vector> {
        let mut out = vec![vec![]];
        for _ in 0..self.rank {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (-radius..=radius).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// All `w_o e^x` with `x` in the box of the given radius.
    pub fn box_elements(&self, radius: i64) -> Vec<WeylElement> {
        let pts = self.box_points(radius);
        (0..self.finite_order() as u32)
            .flat_map(|f| pts.iter().map(move |x| WeylElement { fin: f, trans: x.clone() }))
            .collect()
    }

    /// `W_aff` elements of length at most `max_len`, by breadth-first search.
    pub fn affine_ball(&self, max_len: usize) -> Vec<WeylElement> {
        let mut seen = std::collections::HashSet::from([self.identity()]);
        let mut layer = vec![self.identity()];
        let mut out = layer.clone();
        for l in 1..=max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in &self.gens {
                    let v = self.mul(w, &g.elt);
                    if self.length(&v) == l && seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn bruhat_cache_len(&self) -> usize {
        self.caches.lock().bruhat.len()
    }
}

impl WeylElement {
    pub fn is_identity(&self) -> bool {
        self.fin == 0 && self.trans.iter().all(|x| *x == 0)
    }
}

/// `GL(n)`: `X = Z^n`, `α_i = e_{i+1} - e_i`, coroots equal to roots.
pub fn gln_datum(n: usize) -> Result<RootDatum> {
    if n < 2 {
        return Err(Error::InvalidDatum("GL(n) needs n ≥ 2".into()));
    }
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![0; n];
                v[j] = 1;
                v[i] = -1;
                roots.push(v);
            }
        }
    }
    let base = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i + 1] = 1;
            v[i] = -1;
            roots.iter().position(|r| *r == v).unwrap()
        })
        .collect();
    RootDatum::new(n, roots.clone(), roots, base)
}

/// `ω_i = (0^i, 1^{n-i})` for `0 ≤ i ≤ n`.
pub fn gln_fundamental_weight(n: usize, i: usize) -> Vector {
    (0..n).map(|t| i64::from(t >= i)).collect()
}

#[cfg(test)]
mod tests;
