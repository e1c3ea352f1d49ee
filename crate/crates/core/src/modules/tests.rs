use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{char_poly, word_matrix};
use super::*;
use crate::coeffs::{FiniteField, Gf, PadicRing, Rationals, Ring, Specialization};
use crate::gln::{flags, lift_character, FlagCharacter, FlagLabel};
use crate::hecke::HeckeAlgebra;
use crate::rootdata::{gln_datum, RootDatum};

fn alg(n: usize) -> HeckeAlgebra {
    HeckeAlgebra::new(Arc::new(gln_datum(n).unwrap())).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn field() -> FiniteField {
    FiniteField::new(5, 12).unwrap()
}

fn theta_character<R: Ring>(ring: R, root: R::Elt, theta: Vec<R::Elt>) -> HeckeCharacter<R> {
    HeckeCharacter { spec: Specialization::from_roots(ring, vec![root]), data: CharacterData::Theta(theta) }
}

#[test]
fn field_module_gl2_over_rationals() {
    let h = alg(2);
    let chi = theta_character(Rationals, rat(2, 1), vec![rat(3, 1), rat(5, 7)]);
    let m = standard_module_field(&h, &chi).unwrap();
    assert_eq!(m.dim(), 2);
    assert!(m.check_relations(h.datum()).unwrap().all());
    assert_eq!(m.cyclic_span().unwrap(), 2);
    let central = field_central_character(&h, &chi).unwrap();
    for (x, c) in &central {
        assert_eq!(*c, chi.chi_center(&h, x).unwrap(), "Z_{x:?}");
    }
    // T_{ω_0} = E_{ω_0} acts by χ(E_{ω_0}); ω(Z_1) = χ(E_1) + χ(E_2).
    let z = central.iter().find(|(x, _)| *x == vec![1, 1]).unwrap();
    assert_eq!(z.1, chi.chi_e(&h, &[1, 1]).unwrap());
    let z1 = central.iter().find(|(x, _)| *x == vec![0, 1]).unwrap();
    assert_eq!(z1.1, chi.chi_e(&h, &[1, 0]).unwrap() + chi.chi_e(&h, &[0, 1]).unwrap());
}

#[test]
fn field_module_gl3() {
    let h = alg(3);
    let chi = theta_character(Rationals, rat(3, 1), vec![rat(2, 1), rat(-1, 3), rat(5, 1)]);
    let m = standard_module_field(&h, &chi).unwrap();
    assert_eq!(m.dim(), 6);
    assert!(m.check_relations(h.datum()).unwrap().all());
    assert_eq!(m.cyclic_span().unwrap(), 6);
    assert!(field_central_character(&h, &chi).is_ok());
}

#[test]
fn toral_datum() {
    let d = Arc::new(RootDatum::new(1, vec![], vec![], vec![]).unwrap());
    let h = HeckeAlgebra::new(d).unwrap();
    let chi = theta_character(Rationals, rat(1, 1), vec![rat(3, 1)]);
    let m = standard_module_field(&h, &chi).unwrap();
    assert_eq!(m.dim(), 1);
    assert_eq!(m.actions.len(), 1);
    assert_eq!(m.actions[0][0][0], rat(3, 1));
    let f = field();
    let chi = theta_character(f.clone(), f.one(), vec![f.from_int(2)]);
    assert_eq!(presentation_dimension(&h, &chi, 3).unwrap(), 1);
}

#[test]
fn presentation_matches_field_module_for_invertible_parameters() {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2, 3] {
        let h = alg(n);
        let g = f.subfield_generator(2).unwrap();
        let theta = (0..n).map(|i| f.pow(&g, 3 + 2 * i as u64)).collect();
        let chi = theta_character(f.clone(), f.from_int(2), theta);
        let m = standard_module_field(&h, &chi).unwrap();
        let (p, rep) = stabilized_presentation(&h, &chi, 2).unwrap();
        assert!(rep.stable(), "{rep:?}");
        assert_eq!(p.module.dim(), m.dim());
        assert!(p.module.check_relations(h.datum()).unwrap().all());
        for _ in 0..10 {
            let word: Vec<usize> = (0..5).map(|_| rng.gen_range(0..m.actions.len())).collect();
            let a = word_matrix(&f, &m.actions, &word, m.dim()).unwrap();
            let b = word_matrix(&f, &p.module.actions, &word, m.dim()).unwrap();
            assert_eq!(char_poly(&f, &a).unwrap(), char_poly(&f, &b).unwrap(), "{word:?}");
        }
    }
}

fn flag_character(n: usize, flag: Vec<u32>, values: Vec<Gf>) -> FlagCharacter {
    FlagCharacter::new(n, flag, values, &field()).unwrap()
}

#[test]
fn gl2_mod_p_table() {
    let f = field();
    let h = alg(2);
    let g = f.subfield_generator(2).unwrap();
    let (s1, s0) = (0, 1);
    for k in 0..24u64 {
        let a = f.pow(&g, k + 1);
        let z = if k % 3 == 0 { f.mul(&a, &a) } else { f.pow(&g, 5 * k + 2) };
        for flag in [vec![3u32], vec![1, 3], vec![2, 3]] {
            let values = if flag.len() == 1 { vec![z.clone()] } else { vec![a.clone(), z.clone()] };
            let fc = flag_character(2, flag.clone(), values);
            let (p, rep) = stabilized_presentation(&h, &fc.to_character(&f), 2).unwrap();
            assert!(rep.stable());
            assert_eq!(p.module.dim(), 2);
            assert!(p.module.check_relations(h.datum()).unwrap().all());
            let omega: Vec<Gf> = fc.central_values(&f);
            let scan = subquotient_scan(&p.module, k).unwrap();
            let square = f.mul(&omega[0], &omega[0]) == omega[1];
            match fc.label() {
                FlagLabel::Supersingular => assert_eq!(scan.irreducible, Some(true)),
                _ if !square => assert_eq!(scan.irreducible, Some(true), "{fc:?}"),
                _ => {
                    assert_eq!(scan.irreducible, Some(false));
                    assert_eq!(scan.decomposable, Some(false));
                    assert_eq!(scan.submodules.len(), 1);
                    let sub = &scan.submodules[0];
                    let quot = complementary_values(&p.module, sub);
                    let mut pair = [sub.values[s1].clone(), quot[s1].clone()];
                    pair.sort();
                    let mut expect = [f.zero(), f.from_int(-1)];
                    expect.sort();
                    assert_eq!(pair, expect);
                    assert_eq!(sub.values[s1], sub.values[s0]);
                }
            }
        }
    }
}

#[test]
fn scan_finds_both_lines_of_a_split_module() {
    let f = field();
    let h = alg(2);
    let chi = flag_character(2, vec![2, 3], vec![f.one(), f.one()]).to_character(&f);
    let mut m = stabilized_presentation(&h, &chi, 2).unwrap().0.module;
    // Replace the action by a diagonal sum of the trivial and sign characters.
    let diag = |a: i128, b: i128| vec![vec![f.from_int(a), f.zero()], vec![f.zero(), f.from_int(b)]];
    m.actions = vec![diag(0, -1), diag(0, -1), diag(1, 1)];
    let scan = subquotient_scan(&m, 0).unwrap();
    assert_eq!(scan.submodules.len(), 2);
    assert_eq!(scan.decomposable, Some(true));
}

#[test]
fn gl3_supersingular_presentation_is_not_flat() {
    let f = field();
    let h = alg(3);
    for fl in flags(3) {
        let values = (0..fl.len()).map(|j| f.from_int(j as i128 + 2)).collect();
        let fc = flag_character(3, fl, values);
        let dim = presentation_dimension(&h, &fc.to_character(&f), 2).unwrap();
        if fc.label() == FlagLabel::Supersingular {
            assert_eq!(dim, 12);
        } else {
            assert_eq!(dim, 6);
        }
    }
}

fn lifts(n: usize, count: usize) -> Vec<(FlagCharacter, HeckeCharacter<PadicRing>)> {
    let f = field();
    let ring = PadicRing::new(f.clone());
    let g = f.subfield_generator(2).unwrap();
    let fl = flags(n);
    (0..count)
        .map(|k| {
            let flag = fl[k % fl.len()].clone();
            let values = (0..flag.len()).map(|j| f.pow(&g, (7 * k + 3 * j + 1) as u64)).collect();
            let fc = flag_character(n, flag, values);
            let phiq = ring.monomial(rat(1, 1), f.pow(&g, k as u64 * 2)).unwrap();
            let lift = lift_character(&fc, &ring, &phiq).unwrap().character;
            (fc, lift)
        })
        .collect()
}

#[test]
fn lifted_characters_are_integral() {
    for n in [2, 3] {
        let h = alg(n);
        for (_, chi) in lifts(n, 13) {
            let rep = integrality_criterion(&h, &chi, 2).unwrap();
            assert!(rep.verdict && rep.orbit_constant);
        }
    }
}

#[test]
fn integrality_fails_for_a_pole() {
    let f = field();
    let r = PadicRing::new(f.clone());
    let h = alg(2);
    let phiq = r.pi_pow(rat(1, 1));
    let root = r.nth_root(&phiq, 2).unwrap();
    let e1 = r.pi_pow(rat(-1, 2));
    let e2 = r.pi_pow(rat(3, 2));
    let e12 = r.mul(&r.mul(&e1, &e2), &r.inv(&phiq).unwrap());
    let chi = HeckeCharacter {
        spec: Specialization::from_roots(r.clone(), vec![root]),
        data: CharacterData::Subsets(vec![r.one(), e1, e2, e12]),
    };
    assert_eq!(chi.cocycle_violation(&h, 1).unwrap(), None);
    let rep = integrality_criterion(&h, &chi, 2).unwrap();
    assert!(!rep.verdict);
    assert!(rep.orbit_constant);
    let at = |x: &[i64]| rep.points.iter().find(|p| p.x == x).unwrap().pass;
    assert!(!at(&[1, 0]) && !at(&[0, 1]));
    assert!(at(&[0, 0]) && at(&[1, 1]));
}

#[test]
fn gl2_lifts_satisfy_reduction_coherence() {
    let h = alg(2);
    let f = field();
    for (fc, chi) in lifts(2, 21) {
        let is = integral_structure(&h, &chi, 3).unwrap();
        assert!(is.contains_canonical && is.integral_action, "{fc:?}");
        assert!(is.torsion.torsion_free, "{fc:?} {:?}", is.torsion);
        let red = reduce_module(&is.module).unwrap();
        assert!(red.check_relations(h.datum()).unwrap().all());
        let chibar = reduce_character(&chi).unwrap();
        let (p, rep) = stabilized_presentation(&h, &chibar, 2).unwrap();
        assert!(rep.stable());
        assert_eq!(p.module.dim(), 2);
        for (a, b) in red.actions.iter().zip(&p.module.actions) {
            assert_eq!(char_poly(&f, a).unwrap(), char_poly(&f, b).unwrap());
        }
        let direct = fc.to_character(&f);
        for x in h.datum().box_points(1) {
            assert_eq!(chibar.chi_e(&h, &x).unwrap(), direct.chi_e(&h, &x).unwrap(), "{x:?}");
        }
    }
}

#[test]
fn lifted_central_character_reduces() {
    let h = alg(2);
    let f = field();
    for (fc, chi) in lifts(2, 6) {
        let chibar = reduce_character(&chi).unwrap();
        let p = standard_module_presentation(&h, &chibar, 3).unwrap();
        for (x, c) in &p.central {
            assert_eq!(c.as_ref(), Some(&chibar.chi_center(&h, x).unwrap()), "{x:?}");
        }
        let supersingular = fc.label() == FlagLabel::Supersingular;
        let z1 = p.central.iter().find(|(x, _)| *x == vec![0, 1]).unwrap();
        assert_eq!(f.is_zero(z1.1.as_ref().unwrap()), supersingular);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_flag_modules_satisfy_relations(k in 0u64..24, j in 0u64..24, which in 0usize..3) {
        let f = field();
        let h = alg(2);
        let g = f.subfield_generator(2).unwrap();
        let flag = flags(2)[which].clone();
        let values = (0..flag.len()).map(|i| f.pow(&g, if i == 0 { k } else { j })).collect();
        let chi = flag_character(2, flag, values).to_character(&f);
        let p = standard_module_presentation(&h, &chi, 2).unwrap();
        prop_assert_eq!(p.escapes, 0);
        prop_assert!(p.module.check_relations(h.datum()).unwrap().all());
        prop_assert_eq!(p.module.cyclic_span().unwrap(), 2);
    }
}
