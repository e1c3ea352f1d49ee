use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use affine_hecke::coeffs::padic::{format_rational, parse_rational};
use affine_hecke::coeffs::{FiniteField, Gf, PadicRing};
use affine_hecke::gln::{classify_characters, lift_character, verify_an_presentation, FlagCharacter, Lift};
use affine_hecke::hecke::{Basis, HeckeAlgebra, HeckeElement, HeckeJson};
use affine_hecke::modules::linalg::char_poly;
use affine_hecke::modules::{
    integral_structure, integrality_criterion, reduce_character, reduce_module, stabilized_presentation,
    subquotient_scan, CharacterData, Presentation, StandardModule,
};
use affine_hecke::rootdata::{gln_datum, DatumJson, ElementJson, RootDatum, WeylElement};
use affine_hecke::suites::{self, DatumSpec, SuiteParams};

mod chars;

/// Exit status for usage, I/O and parse errors; 0, 1 and 2 belong to suite verdicts.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact computations in generic affine Hecke algebras")]
struct Cli {
    /// Write the JSON output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a builtin root datum.
    Rootdatum {
        #[command(subcommand)]
        kind: RootdatumCmd,
    },
    /// Arithmetic in the generic Hecke algebra.
    Hecke {
        #[command(subcommand)]
        verb: HeckeCmd,
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// GL(n): the A_n presentation, flag characters and their lifts.
    Gln {
        #[command(subcommand)]
        verb: GlnCmd,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Standard modules of GL(n) characters with χ(q) = 0.
    Module {
        #[command(subcommand)]
        verb: ModuleCmd,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Run a verification suite; exits 0 on pass, 1 on failure, 2 when only flags remain.
    Verify {
        suite: String,
        #[command(flatten)]
        datum: DatumArgs,
        /// Shorthand for `--datum gln<n>`.
        #[arg(long, conflicts_with_all = ["datum", "datum_file"])]
        n: Option<usize>,
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value = "1")]
        valq: String,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand)]
enum RootdatumCmd {
    Gln { n: usize },
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Product of two elements, on the T-basis.
    Mul {
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        elt: Vec<String>,
    },
    /// T_w⁻¹ on the T-basis.
    Inv {
        #[arg(long)]
        elt: String,
    },
    /// E_w on the T-basis for a group element; for an algebra element, the other basis.
    Ebasis {
        #[arg(long)]
        elt: String,
    },
    /// The E-to-T matrix on the Bruhat closure of the length ball.
    Cob {
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// The central element Z_x.
    Center {
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        x: Vec<i64>,
    },
    /// The Bernstein defect of θ̃_x and the simple reflection with base index `simple`.
    Bernstein {
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        x: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        simple: usize,
    },
    /// The splitting expansion of c_{w,v} T_w T_{v⁻¹}⁻¹.
    Fundamental {
        #[arg(long)]
        w: String,
        #[arg(long)]
        v: String,
    },
}

#[derive(Subcommand)]
enum GlnCmd {
    /// Flag families with their labels, orbit sizes and a sample character each.
    Chars { n: usize },
    /// The lift of a flag character with φ(q) of the given valuation.
    Lift {
        character: PathBuf,
        #[arg(long, default_value = "1")]
        valq: String,
    },
    /// Verify the A_n relations inside the Hecke algebra.
    VerifyAn { n: usize },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// The stabilized truncated presentation of I(χ).
    Standard {
        character: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Lift, build the canonical lattice, reduce it and compare with the mod-p module.
    Reduce {
        character: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value = "1")]
        valq: String,
    },
    /// One-dimensional submodules and quotients of the presentation.
    Scan {
        character: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The integrality criterion and canonical lattice of the lift.
    Integral {
        character: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value = "1")]
        valq: String,
    },
}

#[derive(Args)]
struct DatumArgs {
    /// Builtin datum, `gln<n>`.
    #[arg(long, global = true)]
    datum: Option<String>,
    /// Root datum JSON file: {rank, roots, coroots, base}.
    #[arg(long, global = true, conflicts_with = "datum")]
    datum_file: Option<PathBuf>,
}

/// Character values live in `F_{p^k}`; defaults come from `HECKE_FIELD=p^k`, else `5^2`.
#[derive(Args)]
struct FieldArgs {
    #[arg(long, global = true)]
    p: Option<u64>,
    #[arg(long, global = true)]
    k: Option<usize>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<(u64, usize)> {
        let (mut p, mut k) = (5, 2);
        if let Ok(s) = std::env::var("HECKE_FIELD") {
            let (a, b) = s.split_once('^').with_context(|| format!("HECKE_FIELD={s:?} is not of the form p^k"))?;
            p = a.trim().parse().with_context(|| format!("HECKE_FIELD prime {a:?}"))?;
            k = b.trim().parse().with_context(|| format!("HECKE_FIELD degree {b:?}"))?;
        }
        Ok((self.p.unwrap_or(p), self.k.unwrap_or(k)))
    }
}

impl DatumArgs {
    fn spec(&self) -> Result<DatumSpec> {
        match (&self.datum, &self.datum_file) {
            (_, Some(path)) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let j: DatumJson =
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                let d = RootDatum::from_json(&j).with_context(|| format!("datum in {}", path.display()))?;
                Ok(DatumSpec::custom(&path.display().to_string(), d))
            }
            (Some(name), None) => Ok(DatumSpec::builtin(name)?),
            (None, None) => bail!("pass --datum gln<n> or --datum-file <json>"),
        }
    }
}

/// Inline JSON, or `@path` to read it from a file.
fn json_arg(arg: &str) -> Result<Value> {
    let (text, origin) = match arg.strip_prefix('@') {
        Some(path) => (std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?, path.to_string()),
        None => (arg.to_string(), "argument".to_string()),
    };
    serde_json::from_str(&text).with_context(|| format!("parsing JSON {origin}"))
}

/// A group element becomes `T_w`; an algebra element is taken as given.
fn algebra_element(h: &HeckeAlgebra, arg: &str) -> Result<HeckeElement> {
    let v = json_arg(arg)?;
    if v.get("basis").is_some() {
        let j: HeckeJson = serde_json::from_value(v).context("algebra element")?;
        Ok(h.element_from_json(&j)?)
    } else {
        Ok(h.t(group_element(h, v)?))
    }
}

fn group_element(h: &HeckeAlgebra, v: Value) -> Result<WeylElement> {
    let j: ElementJson = serde_json::from_value(v).context("group element {finite, trans}")?;
    Ok(h.datum().element_from_json(&j)?)
}

fn in_t_basis(h: &HeckeAlgebra, e: HeckeElement) -> HeckeElement {
    match e.basis {
        Basis::T => e,
        Basis::E => h.from_e_basis(&e),
    }
}

fn hecke(verb: HeckeCmd, datum: DatumArgs) -> Result<Value> {
    let h = HeckeAlgebra::new(datum.spec()?.datum)?;
    let d = h.datum().clone();
    let out = match verb {
        HeckeCmd::Mul { elt } => {
            let a = in_t_basis(&h, algebra_element(&h, &elt[0])?);
            let b = in_t_basis(&h, algebra_element(&h, &elt[1])?);
            json!(h.element_to_json(&h.t_mul(&a, &b)))
        }
        HeckeCmd::Inv { elt } => json!(h.element_to_json(&h.t_inverse(&group_element(&h, json_arg(&elt)?)?))),
        HeckeCmd::Ebasis { elt } => {
            let v = json_arg(&elt)?;
            if v.get("basis").is_some() {
                let e = h.element_from_json(&serde_json::from_value(v).context("algebra element")?)?;
                let other = match e.basis {
                    Basis::T => h.to_e_basis(&e)?,
                    Basis::E => h.from_e_basis(&e),
                };
                json!(h.element_to_json(&other))
            } else {
                json!(h.element_to_json(&h.e_element(&group_element(&h, v)?)))
            }
        }
        HeckeCmd::Cob { radius } => {
            let ball = d.downward_closure(&d.affine_ball(radius));
            let m = h.change_of_basis(&ball)?;
            json!({
                "elements": m.elements.iter().map(|w| d.element_to_json(w)).collect::<Vec<_>>(),
                "rows": m.rows,
                "unit_diagonal": m.unit_diagonal,
                "strictly_below": m.strictly_below,
                "integral": m.integral,
            })
        }
        HeckeCmd::Center { x } => {
            check_rank(&d, &x)?;
            json!(h.element_to_json(&h.center_generator(&x)))
        }
        HeckeCmd::Bernstein { x, simple } => {
            check_rank(&d, &x)?;
            if simple >= d.base().len() {
                bail!("simple reflection index {simple} out of range (base has {})", d.base().len());
            }
            json!({
                "defect": h.element_to_json(&h.bernstein_defect(&x, simple)?),
                "holds": h.bernstein_check(&x, simple)?,
            })
        }
        HeckeCmd::Fundamental { w, v } => {
            let w = group_element(&h, json_arg(&w)?)?;
            let v = group_element(&h, json_arg(&v)?)?;
            let f = h.fundamental_expand(&w, &v);
            json!({ "c": f.c, "terms": h.element_to_json(&f.terms) })
        }
    };
    Ok(out)
}

fn check_rank(d: &RootDatum, x: &[i64]) -> Result<()> {
    if x.len() != d.rank() {
        bail!("--x needs {} coordinates, got {}", d.rank(), x.len());
    }
    Ok(())
}

fn algebra(n: usize) -> Result<HeckeAlgebra> {
    Ok(HeckeAlgebra::new(Arc::new(gln_datum(n)?))?)
}

fn lift(c: &FlagCharacter, field: &FiniteField, valq: &str) -> Result<(PadicRing, Lift)> {
    let ring = PadicRing::new(field.clone());
    let phiq = ring.monomial(parse_rational(valq)?, field.one())?;
    let l = lift_character(c, &ring, &phiq)?;
    Ok((ring, l))
}

/// The JSON output and exit status; `verify-an` exits 1 when a relation fails.
fn gln(verb: GlnCmd, field: FieldArgs) -> Result<(Value, u8)> {
    let (p, k) = field.resolve()?;
    let out = match verb {
        GlnCmd::Chars { n } => {
            if n == 0 || n > 8 {
                bail!("gln chars needs 1 ≤ n ≤ 8, got {n}");
            }
            let samples = chars::samples(n);
            let families: Vec<Value> = classify_characters(n)
                .into_iter()
                .zip(samples)
                .map(|(fam, s)| json!({ "family": fam, "sample": s }))
                .collect();
            json!({ "n": n, "p": p, "k": k, "count": families.len(), "families": families })
        }
        GlnCmd::Lift { character, valq } => {
            let f = suites::working_field(p, k)?;
            let c = chars::read(&character, &f, k)?;
            let (_, l) = lift(&c, &f, &valq)?;
            let CharacterData::Subsets(values) = &l.character.data else {
                unreachable!("lifts are given on subsets")
            };
            json!({
                "character": c.to_json(),
                "valq": valq,
                "exponents": l.exponents.iter().map(format_rational).collect::<Vec<_>>(),
                "units": l.units,
                "root": l.character.spec.root(0),
                "values": values,
            })
        }
        GlnCmd::VerifyAn { n } => {
            let r = verify_an_presentation(&algebra(n)?);
            return Ok((json!(r), u8::from(!r.all_pass())));
        }
    };
    Ok((out, 0))
}

fn module_json(m: &StandardModule<FiniteField>) -> Value {
    json!({
        "dim": m.dim(),
        "labels": m.labels,
        "names": m.names,
        "actions": m.actions,
        "canonical": m.canonical,
    })
}

fn presentation_json(h: &HeckeAlgebra, p: &Presentation<FiniteField>) -> Result<Value> {
    Ok(json!({
        "radius": p.radius,
        "escapes": p.escapes,
        "relations": p.module.check_relations(h.datum())?,
        "central": p.central,
        "module": module_json(&p.module),
    }))
}

fn module(verb: ModuleCmd, field: FieldArgs) -> Result<Value> {
    let (p, k) = field.resolve()?;
    let f = suites::working_field(p, k)?;
    let load = |path: &PathBuf| -> Result<(FlagCharacter, HeckeAlgebra)> {
        let c = chars::read(path, &f, k)?;
        let h = algebra(c.n)?;
        Ok((c, h))
    };
    Ok(match verb {
        ModuleCmd::Standard { character, radius } => {
            let (c, h) = load(&character)?;
            let (pres, rep) = stabilized_presentation(&h, &c.to_character(&f), radius)?;
            json!({ "character": c.to_json(), "stability": rep, "presentation": presentation_json(&h, &pres)? })
        }
        ModuleCmd::Scan { character, radius, seed } => {
            let (c, h) = load(&character)?;
            let (pres, rep) = stabilized_presentation(&h, &c.to_character(&f), radius)?;
            json!({ "character": c.to_json(), "stability": rep, "scan": subquotient_scan(&pres.module, seed)? })
        }
        ModuleCmd::Integral { character, radius, valq } => {
            let (c, h) = load(&character)?;
            let (_, l) = lift(&c, &f, &valq)?;
            let crit = integrality_criterion(&h, &l.character, radius)?;
            let is = integral_structure(&h, &l.character, radius + 1)?;
            json!({
                "character": c.to_json(),
                "valq": valq,
                "criterion": crit,
                "lattice": {
                    "exponents": is.exponents.iter().map(format_rational).collect::<Vec<_>>(),
                    "divisors": is.divisors.iter().map(format_rational).collect::<Vec<_>>(),
                    "contains_canonical": is.contains_canonical,
                    "integral_action": is.integral_action,
                    "torsion": is.torsion,
                },
            })
        }
        ModuleCmd::Reduce { character, radius, valq } => {
            let (c, h) = load(&character)?;
            let (_, l) = lift(&c, &f, &valq)?;
            let is = integral_structure(&h, &l.character, radius + 1)?;
            let reduced = reduce_module(&is.module)?;
            let (pres, rep) = stabilized_presentation(&h, &reduce_character(&l.character)?, radius)?;
            let polys = |m: &StandardModule<FiniteField>| -> Result<Vec<Vec<Gf>>> {
                Ok(m.actions.iter().map(|a| char_poly(&f, a)).collect::<affine_hecke::Result<_>>()?)
            };
            let flat = pres.module.dim() == h.datum().finite_order();
            let matches = flat && polys(&reduced)? == polys(&pres.module)?;
            json!({
                "character": c.to_json(),
                "valq": valq,
                "flat": flat,
                "lattice_matches": matches,
                "torsion": is.torsion,
                "divisors": is.divisors.iter().map(format_rational).collect::<Vec<_>>(),
                "reduced_lattice": module_json(&reduced),
                "stability": rep,
                "presentation": presentation_json(&h, &pres)?,
            })
        }
    })
}

fn emit(out: &Option<PathBuf>, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("writing to stdout"),
            _ => Ok(()),
        },
    }
}

fn run(cli: Cli) -> Result<u8> {
    let out = &cli.out;
    match cli.command {
        Command::Rootdatum { kind: RootdatumCmd::Gln { n } } => emit(out, &json!(gln_datum(n)?.to_json()))?,
        Command::Hecke { verb, datum } => emit(out, &hecke(verb, datum)?)?,
        Command::Gln { verb, field } => {
            let (v, code) = gln(verb, field)?;
            emit(out, &v)?;
            return Ok(code);
        }
        Command::Module { verb, field } => emit(out, &module(verb, field)?)?,
        Command::Verify { suite, datum, n, radius, seed, samples, valq, field } => {
            let spec = match n {
                Some(n) => DatumSpec::builtin(&format!("gln{n}"))?,
                None if datum.datum.is_none() && datum.datum_file.is_none() => DatumSpec::builtin("gln2")?,
                None => datum.spec()?,
            };
            let (p, k) = field.resolve()?;
            let mut params = SuiteParams::new(spec);
            params.radius = radius;
            params.seed = seed;
            params.samples = samples;
            params.p = p;
            params.k = k;
            params.valq = parse_rational(&valq)?;
            let report = suites::run_suite(&suite, &params)?;
            emit(out, &json!(report))?;
            eprintln!(
                "{} on {}: {:?} ({} checks, {:.2?})",
                report.suite,
                report.datum,
                report.status(),
                report.checks.len(),
                report.elapsed
            );
            return Ok(report.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
