//! JSON envelopes for field elements, series, exponent vectors and
//! characters.
//!
//! Series: `{"val": v, "prec": N, "coeffs": [c…]}` with each coefficient a
//! little-endian digit list. On input a coefficient may also be a packed
//! integer `Σ c_i p^i`, and `coeffs` may be a comma-separated string of packed
//! integers; `val` defaults to 0 and `prec` to `val + len`. The exact zero is
//! `{"zero": true}` and `O(t^N)` is `{"zero": true, "prec": N}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::arith::{FieldSpec, FqElem, ZpApprox};
use crate::characters::{ContinuousCharacter, Verdict};
use crate::error::{Error, Result};
use crate::series::LaurentSeries;
use crate::units::OneUnitExponents;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| invalid(format!("{what} must be an integer")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| invalid(format!("{what} must be a non-negative integer")))
}

pub fn fq_to_json(field: &FieldSpec, a: FqElem) -> Value {
    json!(field.coeffs(a))
}

pub fn fq_from_json(field: &FieldSpec, v: &Value) -> Result<FqElem> {
    match v {
        Value::Array(digits) => {
            let d = digits.iter().map(|x| as_u64(x, "digit")).collect::<Result<Vec<_>>>()?;
            field.from_coeffs(&d)
        }
        Value::Number(_) => field.from_index(as_u64(v, "coefficient")?),
        Value::String(s) => field.from_index(s.trim().parse().map_err(|_| invalid(format!("bad coefficient {s:?}")))?),
        _ => Err(invalid("coefficient must be a digit list or an integer")),
    }
}

/// Parses a comma-separated list of packed integers.
pub fn fq_list_from_str(field: &FieldSpec, s: &str) -> Result<Vec<FqElem>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            let n: u64 = x.trim().parse().map_err(|_| invalid(format!("bad coefficient {x:?}")))?;
            field.from_index(n)
        })
        .collect()
}

pub fn series_to_json(s: &LaurentSeries) -> Value {
    match s.prec() {
        None => json!({"zero": true}),
        Some(n) if s.is_zero_to_precision() => json!({"zero": true, "prec": n}),
        Some(n) => json!({
            "val": s.val_bound(),
            "prec": n,
            "coeffs": s.coeffs().iter().map(|&c| fq_to_json(s.field(), c)).collect::<Vec<_>>(),
        }),
    }
}

pub fn series_from_json(field: &Arc<FieldSpec>, v: &Value) -> Result<LaurentSeries> {
    let obj = v.as_object().ok_or_else(|| invalid("series must be a JSON object"))?;
    if obj.get("zero").and_then(Value::as_bool) == Some(true) {
        return match obj.get("prec") {
            None | Some(Value::Null) => Ok(LaurentSeries::zero(field.clone())),
            Some(n) => Ok(LaurentSeries::big_o(field.clone(), as_i64(n, "prec")?)),
        };
    }
    let coeffs = match obj.get("coeffs") {
        Some(Value::String(s)) => fq_list_from_str(field, s)?,
        Some(Value::Array(items)) => items.iter().map(|c| fq_from_json(field, c)).collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
        Some(_) => return Err(invalid("coeffs must be a list or a comma-separated string")),
    };
    let val = match obj.get("val") {
        Some(v) => as_i64(v, "val")?,
        None => 0,
    };
    let prec = match obj.get("prec") {
        Some(v) => as_i64(v, "prec")?,
        None => val + coeffs.len() as i64,
    };
    if prec < val {
        return Err(invalid(format!("prec {prec} below val {val}")));
    }
    Ok(LaurentSeries::new(field.clone(), val, coeffs, prec))
}

pub fn zp_from_json(p: u64, v: &Value) -> Result<ZpApprox> {
    match v {
        Value::Object(_) => {
            let z: ZpApprox = serde_json::from_value(v.clone()).map_err(|e| invalid(e.to_string()))?;
            if z.p() != p {
                return Err(Error::FieldMismatch(format!("exponent in Z_{} for p = {p}", z.p())));
            }
            Ok(z)
        }
        Value::String(s) => zp_from_digit_str(p, s),
        _ => Err(invalid("exponent must be {\"p\", \"digits\"} or a digit string")),
    }
}

/// `"d0,d1,…"` as a p-adic integer.
pub fn zp_from_digit_str(p: u64, s: &str) -> Result<ZpApprox> {
    let digits = s
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| invalid(format!("bad digit {x:?}"))))
        .collect::<Result<Vec<_>>>()?;
    ZpApprox::from_digits(p, digits)
}

pub fn zp_to_json(z: &ZpApprox) -> Value {
    serde_json::to_value(z).expect("serializable")
}

pub fn exponents_to_json(e: &OneUnitExponents) -> Value {
    let entries: Vec<Value> = e
        .entries()
        .iter()
        .map(|(&(m, i), a)| json!({"m": m, "i": i, "exp": zp_to_json(a)}))
        .collect();
    json!({"horizon": e.horizon(), "entries": entries})
}

pub fn exponents_from_json(field: &Arc<FieldSpec>, v: &Value) -> Result<OneUnitExponents> {
    let obj = v.as_object().ok_or_else(|| invalid("exponents must be a JSON object"))?;
    let horizon = match obj.get("horizon") {
        None | Some(Value::Null) => None,
        Some(h) => Some(as_i64(h, "horizon")?),
    };
    let mut out = OneUnitExponents::new(field.clone(), horizon);
    let entries = match obj.get("entries") {
        None => Vec::new(),
        Some(Value::Array(a)) => a.clone(),
        Some(_) => return Err(invalid("entries must be a list")),
    };
    for ent in &entries {
        let m = as_u64(ent.get("m").unwrap_or(&Value::Null), "m")?;
        let i = as_u64(ent.get("i").unwrap_or(&Value::Null), "i")? as usize;
        let exp = zp_from_json(field.p(), ent.get("exp").unwrap_or(&Value::Null))?;
        out.insert(m, i, exp)?;
    }
    Ok(out)
}

/// `{"e", "horizon", "prec", "table": [{"m", "i", "value": series}]}`.
pub fn character_to_json(c: &ContinuousCharacter) -> Value {
    let table: Vec<Value> = c
        .table()
        .iter()
        .map(|(&(m, i), v)| json!({"m": m, "i": i, "value": series_to_json(v)}))
        .collect();
    json!({
        "e": c.ramification(),
        "horizon": c.horizon(),
        "prec": c.target_prec(),
        "table": table,
    })
}

pub fn character_from_json(source: &Arc<FieldSpec>, target: &Arc<FieldSpec>, v: &Value) -> Result<ContinuousCharacter> {
    let obj = v.as_object().ok_or_else(|| invalid("character must be a JSON object"))?;
    let get = |k: &str| obj.get(k).ok_or_else(|| invalid(format!("character is missing {k:?}")));
    let e = match obj.get("e") {
        Some(x) => as_u64(x, "e")?,
        None => 1,
    };
    let horizon = as_u64(get("horizon")?, "horizon")?;
    let prec = as_i64(get("prec")?, "prec")?;
    let mut table = BTreeMap::new();
    if let Some(rows) = obj.get("table") {
        let rows = rows.as_array().ok_or_else(|| invalid("table must be a list"))?;
        for row in rows {
            let m = as_u64(row.get("m").unwrap_or(&Value::Null), "m")?;
            let i = as_u64(row.get("i").unwrap_or(&Value::Null), "i")? as usize;
            let value = series_from_json(target, row.get("value").unwrap_or(&Value::Null))?;
            table.insert((m, i), value);
        }
    }
    ContinuousCharacter::new(source.clone(), target.clone(), e, horizon, prec, table)
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    match v {
        Verdict::Analytic { c } => json!({"verdict": "analytic", "c": zp_to_json(c)}),
        Verdict::NotAnalytic { witness } => json!({"verdict": "not_analytic", "witness": witness}),
    }
}

pub fn error_to_json(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("code".into(), json!(e.code()));
    m.insert("message".into(), json!(e.to_string()));
    Value::Object(m)
}
