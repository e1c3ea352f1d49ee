//! Batteries for the extended affine Weyl group and the generic Hecke algebra.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::oracles::word_lengths;
use super::{check, CheckRecord, Outcome};
use crate::coeffs::HalfLaurent;
use crate::hecke::{Basis, HeckeAlgebra, HeckeElement};
use crate::rootdata::{dot, RootDatum, Vector, WeylElement};

/// `W_aff` elements of length at most `len`, together with their translates by `u^{±1}` for the
/// Ω generators `u`.
pub(crate) fn length_ball(d: &RootDatum, len: usize) -> Vec<WeylElement> {
    let base = d.affine_ball(len);
    let mut out = base.clone();
    for u in d.omega_generators() {
        for v in [u.clone(), d.inverse(u)] {
            out.extend(base.iter().map(|w| d.mul(&v, w)));
        }
    }
    let mut seen = HashSet::new();
    out.retain(|w| seen.insert(w.clone()));
    out
}

fn add(x: &[i64], y: &[i64]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub(crate) fn lengths(h: &HeckeAlgebra, radius: i64) -> Vec<CheckRecord> {
    let d = h.datum();
    let elts = d.box_elements(radius);
    let oracle = word_lengths(d, 3 * radius.max(1));
    let fins: Vec<(u32, u32)> = (0..d.finite_order() as u32)
        .flat_map(|u| (0..d.finite_order() as u32).map(move |v| (u, v)))
        .collect();
    let pts = d.box_points(radius);
    let two_rho: Vector = (0..d.rank())
        .map(|i| d.positive_roots().iter().map(|&a| d.coroots()[a][i]).sum())
        .collect();
    let is_pos = |v: &Vector| d.root_index(v).is_some_and(|i| d.is_positive(i));
    vec![
        check(
            "lengths.word-search",
            "the length formula agrees with breadth-first word search in the Cayley graph",
            &elts,
            |w| {
                let l = d.length(w);
                Ok(Outcome::from_bool(oracle.get(w) == Some(&l), || json!({ "w": w, "formula": l, "search": oracle.get(w) })))
            },
        ),
        check(
            "lengths.reduced-word",
            "the greedy factorization u·s_1⋯s_m reproduces w with ℓ(u) = 0 and m = ℓ(w)",
            &elts,
            |w| {
                let s = d.omega_split(w);
                let ok = s.word.len() == d.length(w)
                    && d.mul(&s.u, &d.word_product(&s.word)) == *w
                    && d.length(&s.u) == 0;
                Ok(Outcome::from_bool(ok, || json!({ "w": w, "word": s.word })))
            },
        ),
        check("lengths.inverse", "ℓ(w⁻¹) = ℓ(w)", &elts, |w| {
            Ok(Outcome::from_bool(d.length(&d.inverse(w)) == d.length(w), || json!({ "w": w })))
        }),
        check(
            "lengths.root-count",
            "ℓ(u) + ℓ(v) − ℓ(uv) = 2·#{α > 0 : v(α) < 0, uv(α) > 0} on the finite Weyl group",
            &fins,
            |&(u, v)| {
                let count = d
                    .positive_roots()
                    .iter()
                    .filter(|&&a| {
                        let va = d.act(v, &d.roots()[a]);
                        !is_pos(&va) && is_pos(&d.act(u, &va))
                    })
                    .count();
                let lhs = d.finite_length(u) + d.finite_length(v) - d.finite_length(d.fin_mul(u, v));
                Ok(Outcome::from_bool(lhs == 2 * count, || json!({ "u": u, "v": v, "lhs": lhs, "count": count })))
            },
        ),
        check(
            "lengths.dominant-conjugator",
            "the minimal u with u(x) dominant has ℓ(u) = #{α > 0 : (x, α∨) < 0} and ℓ(u e^x) = ℓ(e^x) − ℓ(u)",
            &pts,
            |x| {
                let (u, l) = d.dominant_conjugator(x);
                let neg = d.positive_roots().iter().filter(|&&a| dot(x, &d.coroots()[a]) < 0).count();
                let ex = d.translation(x.clone());
                let ok = d.is_dominant(&d.act(u.fin, x))
                    && d.length(&u) == l
                    && l == neg
                    && d.length(&d.mul(&u, &ex)) + l == d.length(&ex);
                Ok(Outcome::from_bool(ok, || json!({ "x": x, "u": u, "ell": l })))
            },
        ),
        check(
            "lengths.two-rho",
            "ℓ(e^x) = (x, 2ρ∨) for dominant x, even when x is also in the root lattice",
            &pts,
            |x| {
                if !d.is_dominant(x) {
                    return Ok(Outcome::Pass);
                }
                let l = d.length(&d.translation(x.clone())) as i64;
                let in_root_lattice = d.omega_split(&d.translation(x.clone())).u.is_identity();
                let ok = l == dot(x, &two_rho) && (!in_root_lattice || l % 2 == 0);
                Ok(Outcome::from_bool(ok, || json!({ "x": x, "length": l, "pairing": dot(x, &two_rho) })))
            },
        ),
    ]
}

pub(crate) fn bruhat(h: &HeckeAlgebra, radius: i64) -> Vec<CheckRecord> {
    let d = h.datum();
    let elts = d.box_elements(radius);
    let below: Vec<HashSet<WeylElement>> =
        elts.iter().map(|w| d.bruhat_interval_below(w).into_iter().collect()).collect();
    let idx: Vec<usize> = (0..elts.len()).collect();
    vec![
        check(
            "bruhat.subword",
            "a ≤ b exactly when a is a subword product of a reduced expression of b",
            &idx,
            |&j| {
                let b = &elts[j];
                for a in &elts {
                    if d.bruhat_leq(a, b) != below[j].contains(a) {
                        return Ok(Outcome::Fail(json!({ "a": a, "b": b })));
                    }
                }
                Ok(Outcome::Pass)
            },
        ),
        check(
            "bruhat.partial-order",
            "≤ is reflexive and antisymmetric, and a < b forces ℓ(a) < ℓ(b)",
            &idx,
            |&j| {
                let b = &elts[j];
                if !d.bruhat_leq(b, b) {
                    return Ok(Outcome::Fail(json!({ "reflexive": b })));
                }
                for a in &below[j] {
                    if a != b && (d.length(a) >= d.length(b) || d.bruhat_leq(b, a)) {
                        return Ok(Outcome::Fail(json!({ "a": a, "b": b })));
                    }
                }
                Ok(Outcome::Pass)
            },
        ),
        check("bruhat.transitive", "a ≤ b and b ≤ c imply a ≤ c", &idx, |&j| {
            let c = &elts[j];
            for b in &below[j] {
                for a in d.bruhat_interval_below(b) {
                    if !below[j].contains(&a) {
                        return Ok(Outcome::Fail(json!({ "a": a, "b": b, "c": c })));
                    }
                }
            }
            Ok(Outcome::Pass)
        }),
        check("bruhat.inverse", "a ≤ b exactly when a⁻¹ ≤ b⁻¹", &idx, |&j| {
            let b = &elts[j];
            let bi = d.inverse(b);
            for a in &elts {
                if d.bruhat_leq(a, b) != d.bruhat_leq(&d.inverse(a), &bi) {
                    return Ok(Outcome::Fail(json!({ "a": a, "b": b })));
                }
            }
            Ok(Outcome::Pass)
        }),
    ]
}

fn random_element(h: &HeckeAlgebra, ball: &[WeylElement], rng: &mut ChaCha8Rng, n: usize) -> HeckeElement {
    let mut out = HeckeElement::zero(Basis::T);
    for _ in 0..n {
        let w = ball[rng.gen_range(0..ball.len())].clone();
        let e: Vec<i32> = (0..h.classes()).map(|_| 2 * rng.gen_range(0..2)).collect();
        let c = HalfLaurent::monomial(e, rng.gen_range(-2..3));
        out = out.add(&HeckeElement::single(Basis::T, w, c));
    }
    out
}

pub(crate) fn hecke_core(h: &HeckeAlgebra, radius: i64, seed: u64) -> Vec<CheckRecord> {
    let d = h.datum();
    let ball = length_ball(d, radius as usize);
    let gens: Vec<usize> = (0..d.generators().len()).collect();
    let pairs: Vec<(usize, usize)> = gens
        .iter()
        .flat_map(|&i| gens.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .filter(|&(i, j)| d.coxeter_order(i, j).is_some())
        .collect();
    let ball_pairs: Vec<(&WeylElement, &WeylElement)> =
        ball.iter().flat_map(|a| ball.iter().map(move |b| (a, b))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[HeckeElement; 3]> = (0..20)
        .map(|_| std::array::from_fn(|_| random_element(h, &ball, &mut rng, 3)))
        .collect();
    let small = d.box_points(1);
    let point_pairs: Vec<(&Vector, &Vector)> = small.iter().flat_map(|x| small.iter().map(move |y| (x, y))).collect();
    let omega_gen: Vec<(usize, usize)> = (0..d.omega_generators().len())
        .flat_map(|k| gens.iter().map(move |&i| (k, i)))
        .collect();
    vec![
        check("hecke-core.quadratic", "(T_s + 1)(T_s − q_s) = 0 for every simple affine reflection", &gens, |&i| {
            let g = &d.generators()[i];
            let ts = h.t(g.elt.clone());
            let prod = h.t_mul(&ts.add(&h.one()), &ts.sub(&h.scalar(h.q(g.class))));
            Ok(Outcome::from_bool(prod.is_zero(), || json!({ "generator": i })))
        }),
        check("hecke-core.braid", "braid relations hold between the T_s", &pairs, |&(i, j)| {
            let m = d.coxeter_order(i, j).expect("filtered");
            let word = |a: usize, b: usize| {
                (0..m).fold(h.one(), |acc, k| h.mul_gen_right(&acc, if k % 2 == 0 { a } else { b }))
            };
            Ok(Outcome::from_bool(word(i, j) == word(j, i), || json!({ "i": i, "j": j, "m": m })))
        }),
        check(
            "hecke-core.omega",
            "T_u T_s T_u⁻¹ = T_{usu⁻¹} for the Ω generators u",
            &omega_gen,
            |&(k, i)| {
                let u = &d.omega_generators()[k];
                let s = &d.generators()[i].elt;
                let lhs = h.t_mul(&h.t_mul(&h.t(u.clone()), &h.t(s.clone())), &h.t_inverse(u));
                let rhs = h.t(d.mul(&d.mul(u, s), &d.inverse(u)));
                Ok(Outcome::from_bool(lhs == rhs, || json!({ "u": u, "s": s })))
            },
        ),
        check(
            "hecke-core.length-additive",
            "T_a T_b = T_{ab} whenever ℓ(ab) = ℓ(a) + ℓ(b)",
            &ball_pairs,
            |&(a, b)| {
                let ab = d.mul(a, b);
                if d.length(&ab) != d.length(a) + d.length(b) {
                    return Ok(Outcome::Pass);
                }
                Ok(Outcome::from_bool(h.t_mul(&h.t(a.clone()), &h.t(b.clone())) == h.t(ab), || json!({ "a": a, "b": b })))
            },
        ),
        check("hecke-core.inverse", "T_w is invertible with the computed inverse", &ball, |w| {
            let ti = h.t_inverse(w);
            let tw = h.t(w.clone());
            let ok = h.t_mul(&tw, &ti) == h.one() && h.t_mul(&ti, &tw) == h.one();
            Ok(Outcome::from_bool(ok, || json!({ "w": w })))
        }),
        check("hecke-core.associative", "multiplication is associative on random elements", &triples, |[a, b, c]| {
            let ok = h.t_mul(&h.t_mul(a, b), c) == h.t_mul(a, &h.t_mul(b, c));
            Ok(Outcome::from_bool(ok, || json!({ "a": h.element_to_json(a) })))
        }),
        check("hecke-core.theta-multiplicative", "θ̃_x θ̃_y = θ̃_{x+y}", &point_pairs, |&(x, y)| {
            let ok = h.t_mul(&h.theta(x), &h.theta(y)) == *h.theta(&add(x, y));
            Ok(Outcome::from_bool(ok, || json!({ "x": x, "y": y })))
        }),
        check(
            "hecke-core.e-translations",
            "E_x E_y = c·E_{x+y} with c = q_x^{1/2} q_y^{1/2} q_{x+y}^{-1/2} a monomial in Z[q_*]",
            &point_pairs,
            |&(x, y)| {
                let xy = add(x, y);
                let hw = |z: &Vector| h.half_weight(&d.translation(z.clone()));
                let (hx, hy, hxy) = (hw(x), hw(y), hw(&xy));
                let e: Vec<i32> = (0..hx.len()).map(|c| hx[c] + hy[c] - hxy[c]).collect();
                let c = h.v(&e);
                let ok = c.is_polynomial_in_q()
                    && h.t_mul(&h.e_translation(x), &h.e_translation(y)) == h.e_translation(&xy).scale(&c);
                Ok(Outcome::from_bool(ok, || json!({ "x": x, "y": y, "c": e })))
            },
        ),
    ]
}

pub(crate) fn theorem1(h: &HeckeAlgebra, len: usize) -> Vec<CheckRecord> {
    let d = h.datum();
    let ball = length_ball(d, len);
    vec![
        check(
            "theorem1.unitriangular",
            "E_w = T_w + Σ a_{w'} T_{w'} with every w' strictly Bruhat-below w",
            &ball,
            |w| {
                let e = h.e_element(w);
                if e.coefficient(w) != h.one_scalar() {
                    return Ok(Outcome::Fail(json!({ "w": w, "diagonal": false })));
                }
                for u in e.terms.keys() {
                    if u != w && !d.bruhat_leq(u, w) {
                        return Ok(Outcome::Fail(json!({ "w": w, "support": u })));
                    }
                }
                Ok(Outcome::Pass)
            },
        ),
        check("theorem1.integral", "the coefficients of E_w on the T-basis lie in Z[q_*]", &ball, |w| {
            Ok(Outcome::from_bool(h.e_element(w).is_integral(), || json!({ "w": w })))
        }),
        check(
            "theorem1.change-of-basis",
            "the E-to-T matrix on a Bruhat-closed ball is unitriangular over Z[q_*]",
            &[()],
            |_| {
                let closed = d.downward_closure(&d.affine_ball(len.min(3)));
                let m = h.change_of_basis(&closed)?;
                let ok = m.unit_diagonal && m.strictly_below && m.integral;
                Ok(Outcome::from_bool(ok, || json!({ "size": closed.len() })))
            },
        ),
    ]
}

pub(crate) fn fundamental(h: &HeckeAlgebra, len: usize, seed: u64, samples: usize) -> Vec<CheckRecord> {
    let d = h.datum();
    let ball = length_ball(d, len);
    let mut pairs: Vec<(WeylElement, WeylElement)> =
        ball.iter().flat_map(|w| ball.iter().map(move |v| (w.clone(), v.clone()))).collect();
    // Exhaustive when small, otherwise a seeded sample.
    if pairs.len() > 1000 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs = (0..samples).map(|_| pairs[rng.gen_range(0..pairs.len())].clone()).collect();
    }
    vec![
        check(
            "fundamental.oracle",
            "the splitting expansion equals c_{w,v}·T_w·T_{v⁻¹}⁻¹ computed by generic multiplication",
            &pairs,
            |(w, v)| {
                let f = h.fundamental_expand(w, v);
                let oracle = h.t_mul(&h.t(w.clone()), &h.t_inverse(&d.inverse(v))).scale(&h.v(&f.c));
                Ok(Outcome::from_bool(f.terms == oracle, || json!({ "w": w, "v": v })))
            },
        ),
        check(
            "fundamental.monomial",
            "c_{w,v} is a monic monomial with c² = q_{wv} q_w⁻¹ q_v dividing q_v",
            &pairs,
            |(w, v)| {
                let f = h.fundamental_expand(w, v);
                let (hw, hv, hwv) = (h.half_weight(w), h.half_weight(v), h.half_weight(&d.mul(w, v)));
                let ok = (0..f.c.len()).all(|j| f.c[j] == hwv[j] - hw[j] + hv[j] && f.c[j] >= 0 && f.c[j] <= 2 * hv[j]);
                Ok(Outcome::from_bool(ok, || json!({ "w": w, "v": v, "c": f.c })))
            },
        ),
        check(
            "fundamental.support",
            "the expansion is integral and supported Bruhat-below wv",
            &pairs,
            |(w, v)| {
                let f = h.fundamental_expand(w, v);
                let top = d.mul(w, v);
                let ok = f.terms.is_integral() && f.terms.terms.keys().all(|u| d.bruhat_leq(u, &top));
                Ok(Outcome::from_bool(ok, || json!({ "w": w, "v": v })))
            },
        ),
    ]
}

pub(crate) fn bernstein(h: &HeckeAlgebra, radius: i64) -> Vec<CheckRecord> {
    let d = h.datum();
    let cases: Vec<(Vector, usize)> = d
        .box_points(radius)
        .into_iter()
        .flat_map(|x| (0..d.base().len()).map(move |i| (x.clone(), i)))
        .collect();
    vec![check(
        "bernstein.relation",
        "D·(1 − θ̃_{−α}) = (θ̃_x − θ̃_{s(x)})(q_s − 1) with D = θ̃_x T_s − T_s θ̃_{s(x)}",
        &cases,
        |(x, i)| Ok(Outcome::from_bool(h.bernstein_check(x, *i)?, || json!({ "x": x, "simple": i }))),
    )]
}

pub(crate) fn center(h: &HeckeAlgebra, radius: i64) -> Vec<CheckRecord> {
    let d = h.datum();
    let reps: Vec<Vector> = d.box_points(radius).into_iter().filter(|x| d.is_dominant(x)).collect();
    let acting: Vec<WeylElement> = d
        .generators()
        .iter()
        .map(|g| g.elt.clone())
        .chain(d.omega_generators().iter().cloned())
        .collect();
    vec![
        check("center.commutes", "Z_x commutes with every T_s and with the T_u", &reps, |x| {
            let z = h.center_generator(x);
            for w in &acting {
                let t = h.t(w.clone());
                if h.t_mul(&z, &t) != h.t_mul(&t, &z) {
                    return Ok(Outcome::Fail(json!({ "x": x, "w": w })));
                }
            }
            Ok(Outcome::Pass)
        }),
        check("center.integral", "the coefficients of Z_x lie in Z[q_*]", &reps, |x| {
            Ok(Outcome::from_bool(h.center_generator(x).is_integral(), || json!({ "x": x })))
        }),
    ]
}
