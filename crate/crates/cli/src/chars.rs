//! Flag characters on the command line: values are exponents `e` (meaning `g^e` for the fixed
//! generator `g` of `F_{p^k}^×`) or coefficient vectors in the working field.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use affine_hecke::coeffs::{FiniteField, Gf};
use affine_hecke::gln::{flags, members_mask, FlagCharacter};

fn value(v: &Value, f: &FiniteField, g: &Gf) -> Result<Gf> {
    match v {
        Value::Number(e) => {
            let e = e.as_u64().with_context(|| format!("exponent {e} must be a nonnegative integer"))?;
            Ok(f.pow(g, e))
        }
        Value::Array(c) => {
            let c = c
                .iter()
                .map(|x| x.as_i64().with_context(|| format!("coefficient {x} must be an integer")))
                .collect::<Result<Vec<_>>>()?;
            Ok(f.from_coeffs(&c)?)
        }
        other => bail!("character value {other} is neither an exponent nor a coefficient vector"),
    }
}

pub fn parse(v: &Value, f: &FiniteField, k: usize) -> Result<FlagCharacter> {
    let n = v["n"].as_u64().context("character needs an integer field \"n\"")? as usize;
    let flag: Vec<Vec<usize>> =
        serde_json::from_value(v["flag"].clone()).context("character needs \"flag\": a list of subsets")?;
    let flag = flag.iter().map(|s| members_mask(n, s)).collect::<affine_hecke::Result<Vec<_>>>()?;
    let g = f.subfield_generator(k)?;
    let values = v["values"]
        .as_array()
        .context("character needs \"values\": a list")?
        .iter()
        .map(|x| value(x, f, &g))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = values.iter().find(|x| !f.in_subfield(x, k)) {
        bail!("character value {bad:?} does not lie in F_{}^{k}", f.p());
    }
    Ok(FlagCharacter::new(n, flag, values, f)?)
}

pub fn read(path: &Path, f: &FiniteField, k: usize) -> Result<FlagCharacter> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    parse(&v, f, k).with_context(|| format!("character in {}", path.display()))
}

/// One character per flag, in `flags(n)` order, with values `g^1, g^2, …` in exponent form.
pub fn samples(n: usize) -> Vec<Value> {
    flags(n)
        .iter()
        .map(|fl| {
            let subsets: Vec<Vec<usize>> = fl.iter().map(|m| affine_hecke::gln::mask_members(*m)).collect();
            json!({ "n": n, "flag": subsets, "values": (1..=fl.len()).collect::<Vec<_>>() })
        })
        .collect()
}
