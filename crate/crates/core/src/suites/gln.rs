//! Batteries for the `GL(n)` presentation, flag characters, lifts and standard modules.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::oracles::{chain_orbit_size, f2_flag_supports};
use super::{check, single, CheckRecord, Outcome, Status, SuiteParams};
use crate::coeffs::{FiniteField, Gf, Padic, PadicRing, Rationals, Ring, Specialization};
use crate::error::Result;
use crate::gln::{
    flag_label, flags, lift_character, orbit_size, subset_vector, verify_an_presentation, FlagCharacter, FlagLabel,
};
use crate::hecke::HeckeAlgebra;
use crate::modules::linalg::{char_poly, word_matrix};
use crate::modules::{
    complementary_values, field_central_character, integral_structure, integrality_criterion, reduce_character,
    reduce_module, stabilized_presentation, standard_module_field, standard_module_presentation, subquotient_scan,
    CharacterData, HeckeCharacter, StandardModule,
};

/// Seeded samples of `F_{p^k}^×` inside the working field.
struct Sampler {
    field: FiniteField,
    gen: Gf,
    order: u64,
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(params: &SuiteParams, salt: u64) -> Result<Sampler> {
        let field = params.working_field()?;
        let gen = field.subfield_generator(params.k)?;
        let order = params.p.pow(params.k as u32) - 1;
        let rng = ChaCha8Rng::seed_from_u64(params.seed ^ salt);
        Ok(Sampler { field, gen, order, rng })
    }

    fn unit(&mut self) -> Gf {
        let e = self.rng.gen_range(0..self.order);
        self.field.pow(&self.gen, e)
    }

    fn units(&mut self, n: usize) -> Vec<Gf> {
        (0..n).map(|_| self.unit()).collect()
    }

    fn flag_character(&mut self, n: usize, flag: Vec<u32>) -> Result<FlagCharacter> {
        let values = self.units(flag.len());
        FlagCharacter::new(n, flag, values, &self.field)
    }
}

pub(crate) fn presentation(h: &HeckeAlgebra) -> Vec<CheckRecord> {
    let r = verify_an_presentation(h);
    let mut out = vec![check(
        "gln-presentation.relations",
        "E_I E_J = q^{yz} E_{I∪J} E_{I∩J} for all pairs of subsets",
        &r.pairs,
        |c| Ok(Outcome::from_bool(c.pass, || json!(c))),
    )];
    out.extend(r.identities.iter().enumerate().map(|(i, c)| {
        let status = if c.pass { Status::Pass } else { Status::Fail };
        single(&format!("gln-presentation.identity-{i:02}"), &c.name, status, Value::Null)
    }));
    out
}

pub(crate) fn chars(h: &HeckeAlgebra, params: &SuiteParams) -> Result<Vec<CheckRecord>> {
    let n = params.gln()?;
    let fl = flags(n);
    let mut out = Vec::new();
    if n <= 4 {
        let oracle = f2_flag_supports(n);
        let ours: std::collections::BTreeSet<Vec<u32>> = fl.iter().cloned().collect();
        let status = if ours == oracle { Status::Pass } else { Status::Fail };
        out.push(single(
            "gln-chars.families",
            "flag families are exactly the supports of {0,1}-valued solutions of the relations at q = 0",
            status,
            json!({ "families": fl.len(), "oracle": oracle.len() }),
        ));
    } else {
        out.push(single(
            "gln-chars.families",
            "flag families are exactly the supports of {0,1}-valued solutions of the relations at q = 0",
            Status::Flagged,
            json!({ "families": fl.len(), "oracle": "skipped above n = 4" }),
        ));
    }
    if n <= 6 {
        out.push(check(
            "gln-chars.orbit-size",
            "the multinomial orbit size equals the S_n-orbit of the flag counted by permutation",
            &fl,
            |f| {
                let (a, b) = (orbit_size(n, f), chain_orbit_size(n, f));
                Ok(Outcome::from_bool(a == b as u64, || json!({ "flag": f, "formula": a, "oracle": b })))
            },
        ));
    }
    let count = |l: FlagLabel| fl.iter().filter(|f| flag_label(n, f) == l).count();
    let (reg, sup) = (count(FlagLabel::Regular), count(FlagLabel::Supersingular));
    let nfact: usize = (1..=n).product();
    out.push(single(
        "gln-chars.labels",
        "there are n! regular families (complete flags) and one supersingular family",
        if reg == nfact && sup == 1 { Status::Pass } else { Status::Fail },
        json!({ "regular": reg, "singular": count(FlagLabel::Singular), "supersingular": sup }),
    ));
    let mut s = Sampler::new(params, 1)?;
    let samples: Vec<FlagCharacter> = fl.iter().map(|f| s.flag_character(n, f.clone())).collect::<Result<_>>()?;
    let field = s.field.clone();
    out.push(check(
        "gln-chars.multiplicative",
        "a flag character satisfies the product rule of A∩H at q = 0, with the expected central values",
        &samples,
        |c| {
            let chi = c.to_character(&field);
            if let Some(v) = chi.cocycle_violation(h, 1)? {
                return Ok(Outcome::Fail(json!({ "character": c.to_json(), "violation": v })));
            }
            for t in 1..=n {
                let z = chi.chi_center(h, &subset_vector(n, (1 << t) - 1))?;
                if z != c.central_values(&field)[t - 1] {
                    return Ok(Outcome::Fail(json!({ "character": c.to_json(), "central": t })));
                }
            }
            Ok(Outcome::Pass)
        },
    ));
    Ok(out)
}

struct LiftCase {
    flag: FlagCharacter,
    phiq: Padic,
    lift: Result<HeckeCharacter<PadicRing>>,
}

fn lift_cases(params: &SuiteParams, n: usize, count: usize, salt: u64) -> Result<(PadicRing, Vec<LiftCase>)> {
    let mut s = Sampler::new(params, salt)?;
    let ring = PadicRing::new(s.field.clone());
    let fl = flags(n);
    let mut out = Vec::new();
    for i in 0..count {
        let flag = s.flag_character(n, fl[i % fl.len()].clone())?;
        let phiq = ring.monomial(params.valq.clone(), s.unit())?;
        let lift = lift_character(&flag, &ring, &phiq).map(|l| l.character);
        out.push(LiftCase { flag, phiq, lift });
    }
    Ok((ring, out))
}

fn same_on_box<R: Ring>(h: &HeckeAlgebra, a: &HeckeCharacter<R>, b: &HeckeCharacter<R>, radius: i64) -> Result<bool> {
    for x in h.datum().box_points(radius) {
        if a.chi_e(h, &x)? != b.chi_e(h, &x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn lifting(h: &HeckeAlgebra, params: &SuiteParams, radius: i64) -> Result<Vec<CheckRecord>> {
    let n = params.gln()?;
    let per_family = params.samples.unwrap_or(2).max(1);
    let (ring, cases) = lift_cases(params, n, per_family * flags(n).len(), 2)?;
    let field = ring.field().clone();
    let lifted = |c: &LiftCase| -> Result<HeckeCharacter<PadicRing>> { c.lift.clone() };
    Ok(vec![
        check("lifting.integral", "every value of the lift on E_I is integral", &cases, |c| {
            let chi = lifted(c)?;
            let CharacterData::Subsets(v) = &chi.data else { unreachable!("lifts are given on subsets") };
            Ok(Outcome::from_bool(v.iter().all(|x| x.is_integral()), || json!({ "character": c.flag.to_json() })))
        }),
        check("lifting.reduces", "the lift reduces to the flag character", &cases, |c| {
            let chibar = reduce_character(&lifted(c)?)?;
            let ok = same_on_box(h, &chibar, &c.flag.to_character(&field), 1)?;
            Ok(Outcome::from_bool(ok, || json!({ "character": c.flag.to_json() })))
        }),
        check("lifting.parameter", "the lift specializes q to the requested φ(q)", &cases, |c| {
            let chi = lifted(c)?;
            Ok(Outcome::from_bool(chi.spec.q(0) == c.phiq, || json!({ "character": c.flag.to_json() })))
        }),
        check("lifting.multiplicative", "the lift is a character of A∩H", &cases, |c| {
            let v = lifted(c)?.cocycle_violation(h, 1)?;
            Ok(Outcome::from_bool(v.is_none(), || json!({ "character": c.flag.to_json(), "violation": v })))
        }),
        check(
            "lifting.integrality",
            "the lifted standard module passes the integrality criterion on the box",
            &cases,
            |c| {
                let rep = integrality_criterion(h, &lifted(c)?, radius)?;
                let failing: Vec<_> = rep.points.iter().filter(|p| !p.pass).map(|p| p.x.clone()).collect();
                Ok(Outcome::from_bool(rep.verdict && rep.orbit_constant, || {
                    json!({ "character": c.flag.to_json(), "failing": failing })
                }))
            },
        ),
    ])
}

fn char_polys<R: Ring>(m: &StandardModule<R>) -> Result<Vec<Vec<R::Elt>>> {
    m.actions.iter().map(|a| char_poly(&m.ring, a)).collect()
}

fn invertible_checks<R: Ring + Sync>(
    h: &HeckeAlgebra,
    tag: &str,
    chars: &[HeckeCharacter<R>],
) -> Vec<CheckRecord>
where
    R::Elt: Send + Sync,
{
    let d = h.datum();
    let module = |c: &HeckeCharacter<R>| standard_module_field(h, c);
    vec![
        check(
            &format!("standard-modules.{tag}-dimension"),
            "with invertible parameters I(χ) has dimension |W_o| on the canonical basis",
            chars,
            |c| {
                let m = module(c)?;
                Ok(Outcome::from_bool(m.dim() == d.finite_order(), || json!({ "dim": m.dim() })))
            },
        ),
        check(
            &format!("standard-modules.{tag}-relations"),
            "the action matrices satisfy the quadratic, braid and Ω relations",
            chars,
            |c| {
                let rel = module(c)?.check_relations(d)?;
                Ok(Outcome::from_bool(rel.all(), || json!(rel)))
            },
        ),
        check(
            &format!("standard-modules.{tag}-cyclic"),
            "the canonical generator 1 ⊗ 1 generates I(χ)",
            chars,
            |c| {
                let m = module(c)?;
                let span = m.cyclic_span()?;
                Ok(Outcome::from_bool(span == m.dim(), || json!({ "span": span })))
            },
        ),
        check(
            &format!("standard-modules.{tag}-central"),
            "each Z_x acts on I(χ) by the scalar χ(Z_x)",
            chars,
            |c| {
                for (x, v) in field_central_character(h, c)? {
                    if v != c.chi_center(h, &x)? {
                        return Ok(Outcome::Fail(json!({ "x": x })));
                    }
                }
                Ok(Outcome::Pass)
            },
        ),
    ]
}

fn presentation_agrees(
    h: &HeckeAlgebra,
    chi: &HeckeCharacter<FiniteField>,
    radius: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    let f = chi.ring();
    let m = standard_module_field(h, chi)?;
    let (p, rep) = stabilized_presentation(h, chi, radius)?;
    if !rep.stable() {
        return Ok(Outcome::Flag(json!(rep)));
    }
    let pm = &p.module;
    if pm.dim() != m.dim() || !pm.check_relations(h.datum())?.all() {
        return Ok(Outcome::Fail(json!({ "dims": rep.dims })));
    }
    for _ in 0..10 {
        let word: Vec<usize> = (0..5).map(|_| rng.gen_range(0..m.actions.len())).collect();
        let a = word_matrix(f, &m.actions, &word, m.dim())?;
        let b = word_matrix(f, &pm.actions, &word, m.dim())?;
        if char_poly(f, &a)? != char_poly(f, &b)? {
            return Ok(Outcome::Fail(json!({ "word": word })));
        }
    }
    Ok(Outcome::Pass)
}

/// GL(2) at `q = 0`: which of the three table rows a character falls in.
fn gl2_row(f: &FiniteField, c: &FlagCharacter) -> &'static str {
    let z = c.central_values(f);
    match c.label() {
        FlagLabel::Supersingular => "supersingular",
        _ if f.mul(&z[0], &z[0]) == z[1] => "regular-square",
        _ => "regular",
    }
}

fn gl2_table_case(h: &HeckeAlgebra, f: &FiniteField, c: &FlagCharacter, radius: i64, seed: u64) -> Result<Outcome> {
    let (p, rep) = stabilized_presentation(h, &c.to_character(f), radius)?;
    let row = gl2_row(f, c);
    let fail = |why: &str| Outcome::Fail(json!({ "character": c.to_json(), "row": row, "why": why }));
    if !rep.stable() {
        return Ok(Outcome::Flag(json!({ "character": c.to_json(), "stability": rep })));
    }
    if p.module.dim() != 2 {
        return Ok(fail("dimension"));
    }
    let scan = subquotient_scan(&p.module, seed)?;
    if row != "regular-square" {
        return Ok(if scan.irreducible == Some(true) { Outcome::Pass } else { fail("not irreducible") });
    }
    if scan.irreducible != Some(false) || scan.decomposable != Some(false) || scan.submodules.len() != 1 {
        return Ok(fail("not reducible and indecomposable"));
    }
    let sub = &scan.submodules[0];
    let quot = complementary_values(&p.module, sub);
    // Every T_s acts on the sub and on the quotient by 0 or −1, one of each.
    let (zero, minus) = (f.zero(), f.from_int(-1));
    let ns = h.datum().generators().len();
    let ok = (0..ns).all(|i| {
        (sub.values[i] == zero && quot[i] == minus) || (sub.values[i] == minus && quot[i] == zero)
    });
    Ok(if ok { Outcome::Pass } else { fail("subquotient characters") })
}

/// Searches flag families for a stabilized presentation whose dimension is not `|W_o|`.
fn non_flat_search(h: &HeckeAlgebra, params: &SuiteParams, radius: i64) -> Result<CheckRecord> {
    let n = params.gln()?;
    let expected = h.datum().finite_order();
    let mut s = Sampler::new(params, 3)?;
    let field = s.field.clone();
    let mut log = Vec::new();
    for r in radius..=3.max(radius) {
        for fl in flags(n) {
            let c = s.flag_character(n, fl)?;
            let (p, rep) = stabilized_presentation(h, &c.to_character(&field), r)?;
            let entry = json!({ "character": c.to_json(), "radii": rep.radii, "dims": rep.dims, "stable": rep.stable() });
            if rep.stable() && p.module.dim() != expected {
                return Ok(single(
                    "standard-modules.non-flat",
                    "some character with χ(q) = 0 has stabilized presentation dimension different from |W_o|",
                    Status::Pass,
                    entry,
                ));
            }
            log.push(entry);
        }
    }
    Ok(single(
        "standard-modules.non-flat",
        "some character with χ(q) = 0 has stabilized presentation dimension different from |W_o|",
        Status::Fail,
        json!({ "log": log }),
    ))
}

pub(crate) fn standard_modules(h: &HeckeAlgebra, params: &SuiteParams, radius: i64) -> Result<Vec<CheckRecord>> {
    let d = h.datum();
    let mut s = Sampler::new(params, 4)?;
    let field = s.field.clone();
    let count = params.samples.unwrap_or(4).max(1);
    let generic: Vec<HeckeCharacter<FiniteField>> = (0..count)
        .map(|_| {
            let root = s.unit();
            let theta = s.units(d.rank());
            HeckeCharacter { spec: Specialization::from_roots(field.clone(), vec![root; d.num_classes()]), data: CharacterData::Theta(theta) }
        })
        .collect();
    let rational: Vec<HeckeCharacter<Rationals>> = (0..count as i64)
        .map(|i| {
            let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
            let theta = (0..d.rank() as i64).map(|j| r(2 + i + j, 3 + j)).collect();
            HeckeCharacter { spec: Specialization::from_roots(Rationals, vec![r(i + 2, 1); d.num_classes()]), data: CharacterData::Theta(theta) }
        })
        .collect();
    let mut out = invertible_checks(h, "field", &generic);
    out.extend(invertible_checks(h, "rational", &rational));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 5);
    let seeds: Vec<u64> = generic.iter().map(|_| rng.gen()).collect();
    let with_seed: Vec<(&HeckeCharacter<FiniteField>, u64)> = generic.iter().zip(seeds).collect();
    out.push(check(
        "standard-modules.presentation",
        "with invertible parameters the truncated presentation agrees with I(χ) on dimension and on traces of words",
        &with_seed,
        |(c, seed)| presentation_agrees(h, c, radius, &mut ChaCha8Rng::seed_from_u64(*seed)),
    ));
    let Some(n) = params.datum.gln else { return Ok(out) };
    if n > 3 {
        return Ok(out);
    }
    let mod_p: Vec<FlagCharacter> = flags(n).into_iter().map(|f| s.flag_character(n, f)).collect::<Result<_>>()?;
    out.push(check(
        "standard-modules.mod-p-relations",
        "at χ(q) = 0 the truncated presentation has no escaping terms and satisfies the relations",
        &mod_p,
        |c| {
            let p = standard_module_presentation(h, &c.to_character(&field), radius)?;
            let rel = p.module.check_relations(d)?;
            Ok(Outcome::from_bool(p.escapes == 0 && rel.all(), || {
                json!({ "character": c.to_json(), "escapes": p.escapes, "relations": rel })
            }))
        },
    ));
    if n == 2 {
        let total = params.samples.unwrap_or(24).max(20);
        let fl = flags(2);
        let mut table = Vec::new();
        for i in 0..total {
            let flag = fl[i % fl.len()].clone();
            let mut values = s.units(flag.len());
            // Every other regular sample is forced onto the reducible row ω(Z_1)² = ω(Z).
            if flag.len() == 2 && (i / fl.len()) % 2 == 0 {
                values[1] = field.mul(&values[0], &values[0]);
            }
            table.push(FlagCharacter::new(2, flag, values, &field)?);
        }
        let seed = params.seed;
        let mut rec = check(
            "standard-modules.gl2-table",
            "GL(2) at q = 0: supersingular and generic regular modules are irreducible; regular ones with ω(Z_1)² = ω(Z) are reducible, indecomposable, with T_s ↦ 0 and T_s ↦ −1 subquotients",
            &table,
            |c| gl2_table_case(h, &field, c, radius, seed),
        );
        if rec.status == Status::Pass {
            let rows = |r: &str| table.iter().filter(|c| gl2_row(&field, c) == r).count();
            rec.witness = json!({
                "supersingular": rows("supersingular"),
                "regular": rows("regular"),
                "regular-square": rows("regular-square"),
            });
        }
        out.push(rec);
    } else {
        out.push(non_flat_search(h, params, radius)?);
    }
    Ok(out)
}

pub(crate) fn reduction(h: &HeckeAlgebra, params: &SuiteParams, radius: i64) -> Result<Vec<CheckRecord>> {
    let n = params.gln()?;
    if n > 3 {
        return Err(crate::error::Error::Config(format!("reduction suite supports n ≤ 3, got {n}")));
    }
    let d = h.datum();
    let count = params.samples.unwrap_or(21).max(20);
    let (ring, cases) = lift_cases(params, n, count, 6)?;
    let _ = ring;
    let mut out = Vec::new();
    out.push(check(
        "reduction.lattice",
        "the canonical lattice contains the canonical basis and is stable under the T-action",
        &cases,
        |c| {
            let is = integral_structure(h, &c.lift.clone()?, radius + 1)?;
            Ok(Outcome::from_bool(is.contains_canonical && is.integral_action, || {
                json!({ "character": c.flag.to_json(), "divisors": is.divisors.iter().map(crate::coeffs::padic::format_rational).collect::<Vec<_>>() })
            }))
        },
    ));
    let tallies = parking_lot::Mutex::new([0usize; 2]);
    let mut rec = check(
        "reduction.coherence",
        "flat presentation mod p, reduction of the canonical lattice matching the mod-p module, and torsion-freeness hold together or fail together",
        &cases,
        |c| {
            let chi = c.lift.clone()?;
            let is = integral_structure(h, &chi, radius + 1)?;
            let chibar = reduce_character(&chi)?;
            let (p, rep) = stabilized_presentation(h, &chibar, radius)?;
            if !rep.stable() {
                return Ok(Outcome::Flag(json!({ "character": c.flag.to_json(), "stability": rep })));
            }
            let flat = p.module.dim() == d.finite_order();
            let reduced = reduce_module(&is.module)?;
            let matches = flat
                && reduced.check_relations(d)?.all()
                && char_polys(&reduced)? == char_polys(&p.module)?;
            let torsion_free = is.torsion.torsion_free;
            let agree = flat == matches && matches == torsion_free;
            if agree {
                tallies.lock()[usize::from(flat)] += 1;
            }
            Ok(Outcome::from_bool(agree, || {
                json!({ "character": c.flag.to_json(), "flat": flat, "lattice-matches": matches, "torsion-free": torsion_free, "torsion": is.torsion })
            }))
        },
    );
    if rec.status == Status::Pass {
        let t = tallies.lock();
        rec.witness = json!({ "all-hold": t[1], "all-fail": t[0] });
    }
    out.push(rec);
    out.push(check(
        "reduction.central",
        "the mod-p presentation has the central character of the reduced lift",
        &cases,
        |c| {
            let chibar = reduce_character(&c.lift.clone()?)?;
            let p = standard_module_presentation(h, &chibar, radius)?;
            for (x, v) in &p.central {
                if v.as_ref() != Some(&chibar.chi_center(h, x)?) {
                    return Ok(Outcome::Fail(json!({ "character": c.flag.to_json(), "x": x })));
                }
            }
            Ok(Outcome::Pass)
        },
    ));
    Ok(out)
}
