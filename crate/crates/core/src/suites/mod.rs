//! Seeded verification batteries over a datum, reported as JSON-serializable check records.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeffs::FiniteField;
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::rootdata::{gln_datum, RootDatum};

mod algebra;
mod gln;
pub mod oracles;

#[cfg(test)]
mod tests;

pub const SUITES: [&str; 12] = [
    "lengths",
    "bruhat",
    "hecke-core",
    "theorem1",
    "fundamental",
    "bernstein",
    "center",
    "gln-presentation",
    "gln-chars",
    "lifting",
    "standard-modules",
    "reduction",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Flagged,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub claim: String,
    pub status: Status,
    pub cases: usize,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub datum: String,
    pub seed: u64,
    pub radius: i64,
    pub checks: Vec<CheckRecord>,
    /// Wall time; kept out of the JSON so reports are reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    /// 0 when everything passes, 1 on any failure, 2 when only flags remain.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Flagged => 2,
        }
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// A datum together with its name and, for builtin `GL(n)`, the rank `n`.
#[derive(Clone, Debug)]
pub struct DatumSpec {
    pub name: String,
    pub datum: Arc<RootDatum>,
    pub gln: Option<usize>,
}

impl DatumSpec {
    /// Parses a builtin name such as `gln3`.
    pub fn builtin(name: &str) -> Result<DatumSpec> {
        let n = name
            .strip_prefix("gln")
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown builtin datum {name:?}; expected gln<n>")))?;
        Ok(DatumSpec { name: name.to_string(), datum: Arc::new(gln_datum(n)?), gln: Some(n) })
    }

    pub fn custom(name: &str, datum: RootDatum) -> DatumSpec {
        DatumSpec { name: name.to_string(), datum: Arc::new(datum), gln: None }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub datum: DatumSpec,
    /// Box radius or length bound; each suite has its own default.
    pub radius: Option<i64>,
    pub seed: u64,
    pub p: u64,
    /// Degree of the field the sampled character values live in.
    pub k: usize,
    /// Valuation of `φ(q)` for lifts.
    pub valq: num_rational::BigRational,
    pub samples: Option<usize>,
}

impl SuiteParams {
    pub fn new(datum: DatumSpec) -> SuiteParams {
        SuiteParams {
            datum,
            radius: None,
            seed: 0,
            p: 5,
            k: 2,
            valq: num_rational::BigRational::from_integer(1.into()),
            samples: None,
        }
    }

    fn gln(&self) -> Result<usize> {
        self.datum
            .gln
            .ok_or_else(|| Error::Config(format!("suite needs a builtin gln<n> datum, got {}", self.datum.name)))
    }

    fn working_field(&self) -> Result<FiniteField> {
        working_field(self.p, self.k)
    }
}

/// `F_{p^{6k}}`: holds the square and cube roots of `F_{p^k}` that the `GL(n ≤ 3)` lifts and
/// scans take.
pub fn working_field(p: u64, k: usize) -> Result<FiniteField> {
    FiniteField::new(p, 6 * k)
}

pub fn default_radius(suite: &str) -> i64 {
    match suite {
        "theorem1" => 5,
        "lengths" | "bruhat" | "fundamental" => 3,
        _ => 2,
    }
}

/// The result of one case of a check.
pub(crate) enum Outcome {
    Pass,
    Fail(Value),
    Flag(Value),
}

impl Outcome {
    pub(crate) fn from_bool(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(witness())
        }
    }
}

/// Runs `f` on every case in parallel. A failure beats a flag; the witness is the first
/// offending case in input order. Precision errors flag, other errors fail.
pub(crate) fn check<T: Sync>(
    id: &str,
    claim: &str,
    cases: &[T],
    f: impl Fn(&T) -> Result<Outcome> + Sync,
) -> CheckRecord {
    let outcomes: Vec<Outcome> = cases
        .par_iter()
        .map(|c| match f(c) {
            Ok(o) => o,
            Err(Error::Precision(m)) => Outcome::Flag(json!({ "precision": m })),
            Err(e) => Outcome::Fail(json!({ "error": e.to_string() })),
        })
        .collect();
    let fails = outcomes.iter().filter(|o| matches!(o, Outcome::Fail(_))).count();
    let flags = outcomes.iter().filter(|o| matches!(o, Outcome::Flag(_))).count();
    let first = |want_fail: bool| {
        outcomes.iter().find_map(|o| match o {
            Outcome::Fail(w) if want_fail => Some(w.clone()),
            Outcome::Flag(w) if !want_fail => Some(w.clone()),
            _ => None,
        })
    };
    let (status, witness) = if fails > 0 {
        (Status::Fail, json!({ "failures": fails, "first": first(true) }))
    } else if flags > 0 {
        (Status::Flagged, json!({ "flagged": flags, "first": first(false) }))
    } else {
        (Status::Pass, Value::Null)
    };
    CheckRecord { id: id.to_string(), claim: claim.to_string(), status, cases: cases.len(), witness }
}

/// A single-case check with an explicit witness.
pub(crate) fn single(id: &str, claim: &str, status: Status, witness: Value) -> CheckRecord {
    CheckRecord { id: id.to_string(), claim: claim.to_string(), status, cases: 1, witness }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let radius = params.radius.unwrap_or_else(|| default_radius(name));
    if radius < 0 {
        return Err(Error::Config(format!("radius must be nonnegative, got {radius}")));
    }
    let h = HeckeAlgebra::new(params.datum.datum.clone())?;
    let mut checks = match name {
        "lengths" => algebra::lengths(&h, radius),
        "bruhat" => algebra::bruhat(&h, radius),
        "hecke-core" => algebra::hecke_core(&h, radius, params.seed),
        "theorem1" => algebra::theorem1(&h, radius as usize),
        "fundamental" => algebra::fundamental(&h, radius as usize, params.seed, params.samples.unwrap_or(200)),
        "bernstein" => algebra::bernstein(&h, radius),
        "center" => algebra::center(&h, radius),
        "gln-presentation" => {
            params.gln()?;
            gln::presentation(&h)
        }
        "gln-chars" => gln::chars(&h, params)?,
        "lifting" => gln::lifting(&h, params, radius)?,
        "standard-modules" => gln::standard_modules(&h, params, radius)?,
        "reduction" => gln::reduction(&h, params, radius)?,
        _ => return Err(Error::Config(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    };
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteReport {
        suite: name.to_string(),
        datum: params.datum.name.clone(),
        seed: params.seed,
        radius,
        checks,
        elapsed: start.elapsed(),
    })
}
