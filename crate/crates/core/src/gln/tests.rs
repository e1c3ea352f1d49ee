use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::rootdata::gln_datum;
use crate::suites::oracles::{chain_orbit_size, f2_flag_supports};

fn alg(n: usize) -> HeckeAlgebra {
    HeckeAlgebra::new(Arc::new(gln_datum(n).unwrap())).unwrap()
}

fn field() -> FiniteField {
    FiniteField::new(5, 12).unwrap()
}

#[test]
fn an_presentation_holds() {
    for n in [2, 3] {
        let r = verify_an_presentation(&alg(n));
        assert!(r.all_pass(), "{:?}", r.identities.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        assert_eq!(r.pairs.len(), ((1 << n) - 1) * ((1 << n) - 1));
    }
}

#[test]
fn flags_match_f2_oracle() {
    for (n, count) in [(1, 1), (2, 3), (3, 13)] {
        let sols = f2_flag_supports(n);
        assert_eq!(sols.len(), count);
        let ours: BTreeSet<Vec<u32>> = flags(n).into_iter().collect();
        assert_eq!(ours, sols);
    }
}

#[test]
fn orbit_sizes_match_permutation_oracle() {
    for n in 1..=4 {
        for f in flags(n) {
            assert_eq!(chain_orbit_size(n, &f) as u64, orbit_size(n, &f), "{f:?}");
        }
        let by_sizes: BTreeMap<Vec<u32>, u64> = flags(n)
            .iter()
            .map(|f| (f.iter().map(|m| m.count_ones()).collect(), orbit_size(n, f)))
            .collect();
        assert_eq!(by_sizes.values().sum::<u64>() as usize, flags(n).len());
    }
}

#[test]
fn labels() {
    let fam = classify_characters(3);
    let count = |l: FlagLabel| fam.iter().filter(|f| f.label == l).count();
    assert_eq!(count(FlagLabel::Regular), 6);
    assert_eq!(count(FlagLabel::Singular), 6);
    assert_eq!(count(FlagLabel::Supersingular), 1);
    let fam2 = classify_characters(2);
    assert_eq!(fam2.iter().filter(|f| f.label == FlagLabel::Regular).count(), 2);
}

fn sample(n: usize, f: &FiniteField) -> Vec<FlagCharacter> {
    let g = f.subfield_generator(2).unwrap();
    flags(n)
        .into_iter()
        .enumerate()
        .map(|(k, fl)| {
            let values = (0..fl.len()).map(|j| f.pow(&g, (3 * k + 5 * j + 1) as u64)).collect();
            FlagCharacter::new(n, fl, values, f).unwrap()
        })
        .collect()
}

#[test]
fn flag_characters_are_multiplicative() {
    let f = field();
    for n in [2, 3] {
        let h = alg(n);
        for chi in sample(n, &f) {
            let c = chi.to_character(&f);
            assert_eq!(c.cocycle_violation(&h, 1).unwrap(), None, "{chi:?}");
            for t in 1..=n {
                let z = c.chi_center(&h, &subset_vector(n, (1 << t) - 1)).unwrap();
                assert_eq!(z, chi.central_values(&f)[t - 1]);
            }
        }
    }
}

#[test]
fn flag_character_validation() {
    let f = field();
    let one = f.one();
    assert!(FlagCharacter::new(2, vec![1], vec![one.clone()], &f).is_err());
    assert!(FlagCharacter::new(2, vec![3, 3], vec![one.clone(), one.clone()], &f).is_err());
    assert!(FlagCharacter::new(2, vec![3], vec![f.zero()], &f).is_err());
    let ok = FlagCharacter::new(2, vec![2, 3], vec![one.clone(), one], &f).unwrap();
    let j = serde_json::to_string(&ok.to_json()).unwrap();
    let back: FlagCharacterJson = serde_json::from_str(&j).unwrap();
    assert_eq!(FlagCharacter::from_json(&back, &f).unwrap(), ok);
}

#[test]
fn lifts_reduce_to_the_flag_character() {
    let f = field();
    let ring = PadicRing::new(f.clone());
    let g = f.subfield_generator(2).unwrap();
    let phiq = ring.monomial(BigRational::from_integer(1.into()), g.clone()).unwrap();
    for n in [2, 3] {
        let h = alg(n);
        for chi in sample(n, &f) {
            let lift = lift_character(&chi, &ring, &phiq).unwrap();
            let CharacterData::Subsets(vals) = &lift.character.data else { panic!() };
            for m in 1..=full_mask(n) {
                assert!(vals[m as usize].is_integral(), "{chi:?} {m}");
                assert_eq!(ring.reduce(&vals[m as usize]).unwrap(), chi.value(m, &f));
            }
            assert!(vals[full_mask(n) as usize].is_unit());
            assert_eq!(lift.character.cocycle_violation(&h, 1).unwrap(), None);
            let total: BigRational = lift.exponents.iter().sum();
            assert_eq!(total, BigRational::from_integer((n * (n - 1) / 2).into()));
        }
    }
}

#[test]
fn lift_exponents() {
    let f = field();
    let ring = PadicRing::new(f.clone());
    let phiq = ring.pi_pow(BigRational::from_integer(1.into()));
    let chi = FlagCharacter::new(3, vec![0b010, 0b111], vec![f.one(), f.from_int(2)], &f).unwrap();
    let lift = lift_character(&chi, &ring, &phiq).unwrap();
    let half = |a: i64| BigRational::new(a.into(), 2.into());
    assert_eq!(lift.exponents, vec![half(3), half(0), half(3)]);
    let x = &lift.units;
    assert_eq!(f.mul(&x[0], &x[2]), f.from_int(2));
    assert!(lift_character(&chi, &ring, &ring.one()).is_err());
}
