use std::collections::{HashMap, HashSet};

use proptest::prelude::*;

use super::*;
use crate::suites::oracles::word_lengths;

fn gl(n: usize) -> RootDatum {
    gln_datum(n).unwrap()
}

#[test]
fn gln_basic_facts() {
    let d2 = gl(2);
    assert_eq!(d2.positive_roots().len(), 1);
    let a1 = &d2.roots()[d2.base()[0]];
    assert_eq!(dot(&gln_fundamental_weight(2, 1), a1), 1);
    let d3 = gl(3);
    assert_eq!(d3.positive_roots().len(), 3);
    assert_eq!(d3.length(&d3.translation(gln_fundamental_weight(3, 1))), 2);
    assert!(d3.is_dominant(&[0, 1, 1]));
    assert!(!d3.is_dominant(&[1, 0, 0]));
}

#[test]
fn gl2_minimal_roots() {
    let d = gl(2);
    let affine: Vec<&Vector> = d
        .generators()
        .iter()
        .filter_map(|g| match g.kind {
            GeneratorKind::Affine(a) => Some(&d.roots()[a]),
            _ => None,
        })
        .collect();
    // Brute force over the two coroots: the minimal one is -α_1 = e_1 - e_2.
    assert_eq!(affine, vec![&vec![1, -1]]);
}

#[test]
fn generators_are_length_one_involutions() {
    for n in 2..=4 {
        let d = gl(n);
        assert_eq!(d.generators().len(), n);
        for g in d.generators() {
            assert_eq!(d.length(&g.elt), 1);
            assert!(d.mul(&g.elt, &g.elt).is_identity());
        }
    }
}

#[test]
fn fundamental_weight_lengths() {
    for n in 2..=5 {
        let d = gl(n);
        for i in 0..=n {
            let w = d.translation(gln_fundamental_weight(n, i));
            assert_eq!(d.length(&w), i * (n - i), "n={n} i={i}");
        }
    }
}

#[test]
fn omega_elements_have_length_zero_and_normalize_s() {
    for n in 2..=4 {
        let d = gl(n);
        assert!(!d.omega_generators().is_empty());
        for u in d.omega_generators() {
            assert_eq!(d.length(u), 0);
            let ui = d.inverse(u);
            for g in d.generators() {
                let c = d.mul(&d.mul(u, &g.elt), &ui);
                assert!(d.generators().iter().any(|h| h.elt == c));
            }
        }
    }
}

#[test]
fn length_matches_word_search() {
    for (n, bound) in [(2usize, 9i64), (3, 8)] {
        let d = gl(n);
        let dist = word_lengths(&d, bound);
        for w in d.box_elements(3) {
            assert_eq!(d.length(&w), dist[&w], "{w:?}");
            let s = d.omega_split(&w);
            assert_eq!(s.word.len(), d.length(&w));
            assert_eq!(d.mul(&s.u, &d.word_product(&s.word)), w);
            assert_eq!(d.length(&s.u), 0);
        }
    }
}

#[test]
fn length_symmetries_on_balls() {
    for n in [2, 3] {
        let d = gl(n);
        for w in d.box_elements(3) {
            let l = d.length(&w);
            assert_eq!(l, d.length(&d.inverse(&w)));
            let tx = d.translation(w.trans.clone());
            assert_eq!(d.length(&tx), d.length(&d.translation(d.act(w.fin, &w.trans))));
            let doubled = WeylElement { fin: w.fin, trans: w.trans.iter().map(|c| 2 * c).collect() };
            assert_eq!(d.length(&doubled), l + d.length(&tx));
        }
    }
}

#[test]
fn dominant_lengths_are_pairings_with_two_rho() {
    for n in [2, 3, 4] {
        let d = gl(n);
        let two_rho: Vector = (0..n)
            .map(|i| d.positive_roots().iter().map(|&a| d.coroots()[a][i]).sum())
            .collect();
        for x in d.box_points(2) {
            if d.is_dominant(&x) {
                let l = d.length(&d.translation(x.clone()));
                // Parity holds on the root lattice only: ℓ(e^{ω_1}) = 1 in GL(2).
                if x.iter().sum::<i64>() == 0 {
                    assert_eq!(l % 2, 0);
                }
                assert_eq!(l as i64, dot(&x, &two_rho));
            }
        }
    }
}

#[test]
fn finite_length_defect_counts_roots() {
    for n in [2, 3] {
        let d = gl(n);
        let m = d.finite_order() as u32;
        let is_pos = |v: &Vector| d.is_positive(d.root_index(v).unwrap());
        for u in 0..m {
            for v in 0..m {
                let uv = d.fin_mul(u, v);
                let count = d
                    .positive_roots()
                    .iter()
                    .filter(|&&a| {
                        let va = d.act(v, &d.roots()[a]);
                        !is_pos(&va) && is_pos(&d.act(u, &va))
                    })
                    .count();
                assert_eq!(
                    d.finite_length(u) + d.finite_length(v) - d.finite_length(uv),
                    2 * count
                );
            }
        }
    }
}

#[test]
fn dominant_conjugator_examples() {
    let d2 = gl(2);
    let (u, l) = d2.dominant_conjugator(&[1, 0]);
    assert_eq!(u.fin, d2.simple_reflection_fin(0));
    assert_eq!(l, 1);
    assert_eq!(d2.act(u.fin, &[1, 0]), vec![0, 1]);
    let (u, l) = d2.dominant_conjugator(&[0, 3]);
    assert!(u.is_identity());
    assert_eq!(l, 0);
    let d3 = gl(3);
    let x = vec![2, 1, 0];
    let (u, l) = d3.dominant_conjugator(&x);
    assert_eq!((l, d3.length(&u)), (3, 3));
    let ex = d3.translation(x.clone());
    assert_eq!(d3.length(&d3.mul(&u, &ex)), d3.length(&ex) - 3);
}

#[test]
fn dominant_conjugator_length_drop() {
    for n in [2, 3, 4] {
        let d = gl(n);
        for x in d.box_points(2) {
            let (u, l) = d.dominant_conjugator(&x);
            assert!(d.is_dominant(&d.act(u.fin, &x)));
            assert_eq!(d.length(&u), l);
            let ex = d.translation(x.clone());
            assert_eq!(d.length(&d.mul(&u, &ex)), d.length(&ex) - l);
        }
    }
}

#[test]
fn reduced_words() {
    let d = gl(2);
    assert!(d.reduced_word(&d.identity()).unwrap().is_empty());
    for (i, g) in d.generators().iter().enumerate() {
        assert_eq!(d.reduced_word(&g.elt).unwrap(), vec![i]);
    }
    let alpha = d.roots()[d.base()[0]].clone();
    let w = d.translation(alpha);
    let word = d.reduced_word(&w).unwrap();
    assert_eq!(word.len(), 2);
    assert_eq!(d.word_product(&word), w);
    let e1 = d.translation(gln_fundamental_weight(2, 1));
    assert!(matches!(d.reduced_word(&e1), Err(Error::NotInWaff(_))));
    let s = d.omega_split(&e1);
    assert_eq!((d.length(&s.u), s.word.len()), (0, 1));
    let u = d.omega_generators()[0].clone();
    let su = d.omega_split(&u);
    assert_eq!((su.u.clone(), su.word.len()), (u, 0));
}

#[test]
fn parameter_classes() {
    for n in 2..=4 {
        let d = gl(n);
        assert_eq!(d.num_classes(), 1);
        assert_eq!(d.param_classes()[0].len(), n);
    }
    // A product of two rank-one root systems with trivial Ω: every bond is even.
    let d = RootDatum::new(
        2,
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
        vec![vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2]],
        vec![0, 2],
    )
    .unwrap();
    assert!(d.omega_generators().is_empty());
    assert_eq!(d.generators().len(), 4);
    assert_eq!(d.num_classes(), 4);
}

#[test]
fn invalid_data_are_rejected() {
    let bad_pair = RootDatum::new(1, vec![vec![1], vec![-1]], vec![vec![1], vec![-1]], vec![0]);
    assert!(matches!(bad_pair, Err(Error::InvalidDatum(_))));
    let non_reduced = RootDatum::new(
        1,
        vec![vec![1], vec![-1], vec![2], vec![-2]],
        vec![vec![2], vec![-2], vec![1], vec![-1]],
        vec![0],
    );
    assert!(matches!(non_reduced, Err(Error::InvalidDatum(_))));
    assert!(gln_datum(1).is_err());
}

#[test]
fn bruhat_examples() {
    let d = gl(2);
    for w in d.box_elements(2) {
        assert!(d.bruhat_leq(&w, &w));
        let s = d.omega_split(&w);
        if s.u.is_identity() {
            assert!(d.bruhat_leq(&d.identity(), &w));
        }
    }
    let u = d.omega_generators()[0].clone();
    let s = d.generators()[0].elt.clone();
    let us = d.mul(&u, &s);
    let uinv_s = d.mul(&d.inverse(&u), &s);
    assert!(!d.bruhat_leq(&us, &uinv_s));
    assert!(!d.bruhat_leq(&d.identity(), &us));
}

#[test]
fn bruhat_matches_subwords_and_axioms() {
    for n in [2, 3] {
        let d = gl(n);
        let mut ball: Vec<WeylElement> = d.affine_ball(if n == 2 { 6 } else { 4 });
        let us: Vec<WeylElement> = d.omega_generators().to_vec();
        let extra: Vec<WeylElement> = ball
            .iter()
            .flat_map(|w| us.iter().map(move |u| (u.clone(), w.clone())))
            .map(|(u, w)| d.mul(&u, &w))
            .collect();
        ball.extend(extra);
        let below: HashMap<&WeylElement, HashSet<WeylElement>> = ball
            .iter()
            .map(|w| (w, d.bruhat_interval_below(w).into_iter().collect()))
            .collect();
        for a in &ball {
            for b in &ball {
                let r = d.bruhat_leq(a, b);
                assert_eq!(r, below[b].contains(a), "{a:?} ≤ {b:?}");
                if r {
                    assert!(d.length(a) <= d.length(b));
                    assert!(d.bruhat_leq(&d.inverse(a), &d.inverse(b)));
                    if a != b {
                        assert!(!d.bruhat_leq(b, a));
                    }
                }
            }
        }
        // Transitivity on a sample.
        for a in ball.iter().step_by(5) {
            for b in ball.iter().step_by(3) {
                if !d.bruhat_leq(a, b) {
                    continue;
                }
                for c in ball.iter().step_by(7) {
                    if d.bruhat_leq(b, c) {
                        assert!(d.bruhat_leq(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn downward_closure_is_closed() {
    let d = gl(3);
    let w = d.translation(vec![1, 0, -1]);
    let cl = d.downward_closure(&[w.clone()]);
    assert!(cl.contains(&w));
    for a in &cl {
        assert!(d.bruhat_leq(a, &w));
    }
}

#[test]
fn minuscule_cover_gl2() {
    let d = gl(2);
    let s = d.simple_reflection_fin(0);
    let regions = d.minuscule_cover(s, 3).unwrap();
    assert_eq!(regions.len(), 2);
    for n in [2, 3] {
        let d = gl(n);
        for f in 0..d.finite_order() as u32 {
            let regions = d.minuscule_cover(f, 3).unwrap();
            let total: usize = regions.iter().map(|r| r.members).sum();
            assert_eq!(total, d.box_points(3).len());
            for x in d.box_points(3) {
                let r = d.cover_base(&regions, f, &x).unwrap();
                let diff: Vector = x.iter().zip(&r.base).map(|(a, b)| a - b).collect();
                assert_eq!(
                    d.length(&WeylElement { fin: f, trans: x.clone() }),
                    d.length(&WeylElement { fin: f, trans: r.base.clone() })
                        + d.length(&d.translation(diff))
                );
            }
        }
    }
}

#[test]
fn identity_cover_base_points() {
    let d = gl(3);
    let regions = d.minuscule_cover(0, 2).unwrap();
    let all = regions.iter().find(|r| r.pattern.iter().all(|b| *b)).unwrap();
    assert_eq!(all.base, vec![0, 0, 0]);
}

#[test]
fn json_round_trip() {
    let d = gl(3);
    let j = serde_json::to_string(&d.to_json()).unwrap();
    let back = RootDatum::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back.to_json().roots, d.roots());
    let w = WeylElement { fin: 3, trans: vec![1, -2, 0] };
    let ej = d.element_to_json(&w);
    assert_eq!(d.element_from_json(&ej).unwrap(), w);
    let bad = ElementJson { finite: vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], trans: vec![0; 3] };
    assert!(matches!(d.element_from_json(&bad), Err(Error::Parse(_))));
}

proptest! {
    #[test]
    fn product_law_and_inverse(f1 in 0u32..6, f2 in 0u32..6, x in prop::collection::vec(-3i64..4, 3), y in prop::collection::vec(-3i64..4, 3)) {
        let d = gl(3);
        let a = WeylElement { fin: f1, trans: x };
        let b = WeylElement { fin: f2, trans: y };
        let ab = d.mul(&a, &b);
        prop_assert!(d.mul(&ab, &d.inverse(&b)) == a);
        prop_assert!(d.length(&ab) <= d.length(&a) + d.length(&b));
        prop_assert_eq!((d.length(&ab) + d.length(&a) + d.length(&b)) % 2, 0);
        let c = WeylElement { fin: (f1 + f2) % 6, trans: vec![1, 0, -1] };
        prop_assert!(d.mul(&ab, &c) == d.mul(&a, &d.mul(&b, &c)));
    }
}
