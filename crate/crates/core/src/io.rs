//! JSON encodings. Big integers are written as decimal strings and read
//! from strings or JSON integers.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{CritPoint, CyclicMorseData, EquivariantMorseData};
use crate::laurent::{IntCovector, IntMatrix, IntVector, LaurentSeries, Poly, RationalFn};
use crate::semilinear::SemilinearEndo;
use crate::twisted::{GroupAlgebraElt, NovikovElt, TwistedGroup};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{path}: {msg}")]
    Field { path: String, msg: String },
}

fn field(path: &str, msg: impl Into<String>) -> IoError {
    IoError::Field { path: path.to_string(), msg: msg.into() }
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let msg = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m).to_string();
        IoError::Syntax { line: e.line(), column: e.column(), msg }
    })
}

pub fn big_from_value(v: &Value, path: &str) -> Result<BigInt, IoError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(field(path, format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| field(path, format!("{s:?} is not a decimal integer"))),
        other => Err(field(path, format!("expected an integer, found {other}"))),
    }
}

fn i64_from_value(v: &Value, path: &str) -> Result<i64, IoError> {
    v.as_i64().ok_or_else(|| field(path, format!("expected a 64-bit integer, found {v}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| field(path, "expected an array"))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| field(path, "expected an object"))
}

fn check_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), IoError> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(field(path, format!("unknown field {k:?}")));
        }
    }
    Ok(())
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub min_exp: i64,
    pub coeffs: Vec<String>,
    pub trunc: i64,
}

impl From<&LaurentSeries> for SeriesJson {
    fn from(s: &LaurentSeries) -> Self {
        SeriesJson { min_exp: s.min_exp(), coeffs: strings(s.coeffs()), trunc: s.trunc() }
    }
}

pub fn series_from_value(v: &Value, path: &str) -> Result<LaurentSeries, IoError> {
    let o = object(v, path)?;
    check_keys(o, &["min_exp", "coeffs", "trunc"], path)?;
    let get = |k: &str| o.get(k).ok_or_else(|| field(path, format!("missing {k:?}")));
    let min_exp = i64_from_value(get("min_exp")?, &format!("{path}.min_exp"))?;
    let trunc = i64_from_value(get("trunc")?, &format!("{path}.trunc"))?;
    let coeffs = array(get("coeffs")?, &format!("{path}.coeffs"))?
        .iter()
        .enumerate()
        .map(|(i, c)| big_from_value(c, &format!("{path}.coeffs[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LaurentSeries::new(min_exp, coeffs, trunc))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub m: u32,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
}

impl From<&RationalFn> for RationalJson {
    fn from(r: &RationalFn) -> Self {
        RationalJson { m: r.shift_m(), p: strings(r.num().coeffs()), q: strings(r.den().coeffs()) }
    }
}

pub fn rational_from_value(v: &Value, path: &str) -> Result<RationalFn, IoError> {
    let o = object(v, path)?;
    check_keys(o, &["m", "P", "Q"], path)?;
    let m = o.get("m").map(|x| i64_from_value(x, &format!("{path}.m"))).transpose()?.unwrap_or(0);
    let m = u32::try_from(m).map_err(|_| field(path, format!("m = {m} must be a small non-negative integer")))?;
    let poly = |k: &str| -> Result<Poly, IoError> {
        let a = array(o.get(k).ok_or_else(|| field(path, format!("missing {k:?}")))?, &format!("{path}.{k}"))?;
        Ok(Poly::new(a.iter().enumerate().map(|(i, c)| big_from_value(c, &format!("{path}.{k}[{i}]"))).collect::<Result<_, _>>()?))
    };
    RationalFn::new(m, poly("P")?, poly("Q")?).map_err(|e| field(path, e.to_string()))
}

pub fn group_to_value(g: &TwistedGroup) -> Value {
    serde_json::json!({ "m": g.m(), "Phi": g.phi() })
}

pub fn group_from_value(v: &Value, path: &str) -> Result<TwistedGroup, IoError> {
    let o = object(v, path)?;
    check_keys(o, &["m", "Phi"], path)?;
    let m = o.get("m").map(|x| i64_from_value(x, &format!("{path}.m"))).transpose()?;
    let rows = match o.get("Phi") {
        Some(p) => array(p, &format!("{path}.Phi"))?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                array(r, &format!("{path}.Phi[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, e)| i64_from_value(e, &format!("{path}.Phi[{i}][{j}]")))
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => {
            let m = m.ok_or_else(|| field(path, "needs \"m\" or \"Phi\""))?;
            (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect()
        }
    };
    if let Some(m) = m {
        if m < 0 || rows.len() != m as usize {
            return Err(field(path, format!("m = {m} but Phi has {} rows", rows.len())));
        }
    }
    TwistedGroup::new(rows).map_err(|e| field(path, e.to_string()))
}

pub fn algebra_to_value(a: &GroupAlgebraElt) -> Value {
    Value::Array(a.terms().iter().map(|(h, c)| serde_json::json!({ "h": h, "c": c.to_string() })).collect())
}

/// A list of `{"h", "c"}` terms, or a bare integer for a constant.
pub fn algebra_from_value(v: &Value, m: usize, path: &str) -> Result<GroupAlgebraElt, IoError> {
    if v.is_number() || v.is_string() {
        return Ok(GroupAlgebraElt::integer(m, big_from_value(v, path)?));
    }
    let mut terms = Vec::new();
    for (i, t) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let o = object(t, &p)?;
        check_keys(o, &["h", "c"], &p)?;
        let h = match o.get("h") {
            Some(h) => array(h, &format!("{p}.h"))?
                .iter()
                .enumerate()
                .map(|(j, e)| i64_from_value(e, &format!("{p}.h[{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![0; m],
        };
        if h.len() != m {
            return Err(field(&p, format!("exponent has length {} but m = {m}", h.len())));
        }
        let c = big_from_value(o.get("c").ok_or_else(|| field(&p, "missing \"c\""))?, &format!("{p}.c"))?;
        terms.push((h, c));
    }
    Ok(GroupAlgebraElt::from_terms(m, terms))
}

pub fn novikov_to_value(n: &NovikovElt) -> Value {
    serde_json::json!({
        "start": n.start(),
        "levels": n.levels().iter().map(algebra_to_value).collect::<Vec<_>>(),
        "trunc": n.trunc(),
    })
}

pub fn novikov_from_value(v: &Value, group: Arc<TwistedGroup>, path: &str) -> Result<NovikovElt, IoError> {
    let o = object(v, path)?;
    check_keys(o, &["start", "levels", "trunc"], path)?;
    let start = o.get("start").map(|x| i64_from_value(x, &format!("{path}.start"))).transpose()?.unwrap_or(0);
    let trunc = i64_from_value(o.get("trunc").ok_or_else(|| field(path, "missing \"trunc\""))?, &format!("{path}.trunc"))?;
    let m = group.m();
    let levels = array(o.get("levels").ok_or_else(|| field(path, "missing \"levels\""))?, &format!("{path}.levels"))?
        .iter()
        .enumerate()
        .map(|(i, l)| algebra_from_value(l, m, &format!("{path}.levels[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NovikovElt::new(group, start, levels, trunc))
}

/// A parsed problem file: the incidence data and, when a group is given,
/// its twisted version.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub group: Option<Arc<TwistedGroup>>,
    pub data: EquivariantMorseData,
    pub order: Option<i64>,
}

impl Problem {
    pub fn is_twisted(&self) -> bool {
        self.group.is_some()
    }

    /// The data over `Z((t))`; exact when no group is given.
    pub fn cyclic(&self) -> CyclicMorseData {
        self.data.abelianize()
    }

    /// The same problem read with the trivial group.
    pub fn over_trivial_group(d: &CyclicMorseData) -> EquivariantMorseData {
        let g = Arc::new(TwistedGroup::trivial());
        let lift = |v: &[BigInt]| v.iter().map(|c| GroupAlgebraElt::integer(0, c.clone())).collect::<Vec<_>>();
        EquivariantMorseData {
            group: g.clone(),
            points: d.points.clone(),
            h: d
                .h
                .iter()
                .map(|(s, m)| {
                    let rows = m.to_rows().iter().map(|r| lift(r)).collect();
                    (*s, SemilinearEndo::new(g.clone(), rows).expect("square"))
                })
                .collect(),
            x_class: d.x_class.iter().map(|(k, v)| (k.clone(), lift(&v.0))).collect(),
            lambda: d.lambda.iter().map(|(k, v)| (k.clone(), lift(&v.0))).collect(),
            direct: d.direct.iter().map(|(k, v)| (k.clone(), GroupAlgebraElt::integer(0, v.clone()))).collect(),
        }
    }
}

fn matrix_entries(v: &Value, m: usize, path: &str) -> Result<Vec<Vec<GroupAlgebraElt>>, IoError> {
    let rows = array(v, path)?;
    let out = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, &format!("{path}[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, e)| algebra_from_value(e, m, &format!("{path}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = out.len();
    if out.iter().any(|r| r.len() != n) {
        return Err(field(path, "matrix must be square"));
    }
    Ok(out)
}

fn vector_entries(v: &Value, m: usize, path: &str) -> Result<Vec<GroupAlgebraElt>, IoError> {
    array(v, path)?.iter().enumerate().map(|(i, e)| algebra_from_value(e, m, &format!("{path}[{i}]"))).collect()
}

/// Reads `{"indices", "h", "X", "lambda", "direct"?, "group"?, "order"?}`.
///
/// `h` is one square matrix used in every degree, or an object keyed by the
/// degree `s`.
pub fn problem_from_json(text: &str) -> Result<Problem, IoError> {
    let v = parse_json(text)?;
    let o = object(&v, "$")?;
    check_keys(o, &["indices", "h", "X", "lambda", "direct", "group", "order"], "$")?;
    let group = o.get("group").map(|g| group_from_value(g, "$.group")).transpose()?.map(Arc::new);
    let g = group.clone().unwrap_or_else(|| Arc::new(TwistedGroup::trivial()));
    let m = g.m();
    let order = o.get("order").map(|x| i64_from_value(x, "$.order")).transpose()?;

    let mut points = Vec::new();
    if let Some(ix) = o.get("indices") {
        for (name, s) in object(ix, "$.indices")? {
            let s = i64_from_value(s, &format!("$.indices.{name}"))?;
            if !(0..=64).contains(&s) {
                return Err(field(&format!("$.indices.{name}"), format!("index {s} out of range")));
            }
            points.push(CritPoint { name: name.clone(), index: s as usize });
        }
    }
    points.sort_by(|a, b| a.index.cmp(&b.index).then(a.name.cmp(&b.name)));
    let top = points.iter().map(|p| p.index).max();

    let mut h = BTreeMap::new();
    match o.get("h") {
        None => {}
        Some(hv @ Value::Array(_)) => {
            let rows = matrix_entries(hv, m, "$.h")?;
            for s in 0..top.unwrap_or(0) {
                h.insert(s, SemilinearEndo::new(g.clone(), rows.clone()).map_err(|e| field("$.h", e.to_string()))?);
            }
        }
        Some(hv) => {
            for (k, mv) in object(hv, "$.h")? {
                let p = format!("$.h.{k}");
                let s: usize = k.parse().map_err(|_| field(&p, "degree keys must be non-negative integers"))?;
                let rows = matrix_entries(mv, m, &p)?;
                h.insert(s, SemilinearEndo::new(g.clone(), rows).map_err(|e| field(&p, e.to_string()))?);
            }
        }
    }
    let names: Vec<&str> = points.iter().map(|p| p.name.as_str()).collect();
    let vectors = |key: &str| -> Result<BTreeMap<String, Vec<GroupAlgebraElt>>, IoError> {
        let mut out = BTreeMap::new();
        if let Some(xv) = o.get(key) {
            for (name, vec) in object(xv, &format!("$.{key}"))? {
                let p = format!("$.{key}.{name}");
                if !names.contains(&name.as_str()) {
                    return Err(field(&p, "not listed in indices"));
                }
                out.insert(name.clone(), vector_entries(vec, m, &p)?);
            }
        }
        Ok(out)
    };
    let x_class = vectors("X")?;
    let lambda = vectors("lambda")?;
    let index_of = |n: &str| points.iter().find(|p| p.name == n).map(|p| p.index);
    for (name, v) in &x_class {
        let s = index_of(name).unwrap_or(0);
        if s == 0 {
            return Err(field(&format!("$.X.{name}"), "X is given for points of positive index"));
        }
        if let Some(e) = h.get(&(s - 1)) {
            if e.rank() != v.len() {
                return Err(field(&format!("$.X.{name}"), format!("length {} but h_{} has rank {}", v.len(), s - 1, e.rank())));
            }
        }
    }
    for (name, v) in &lambda {
        let s = index_of(name).unwrap_or(0);
        if let Some(e) = h.get(&s) {
            if e.rank() != v.len() {
                return Err(field(&format!("$.lambda.{name}"), format!("length {} but h_{s} has rank {}", v.len(), e.rank())));
            }
        }
    }
    let mut direct = BTreeMap::new();
    if let Some(dv) = o.get("direct") {
        for (i, e) in array(dv, "$.direct")?.iter().enumerate() {
            let p = format!("$.direct[{i}]");
            let eo = object(e, &p)?;
            check_keys(eo, &["x", "y", "n"], &p)?;
            let name = |k: &str| -> Result<String, IoError> {
                let s = eo.get(k).and_then(|x| x.as_str()).ok_or_else(|| field(&p, format!("{k:?} must be a point name")))?;
                if !names.contains(&s) {
                    return Err(field(&p, format!("{s:?} not listed in indices")));
                }
                Ok(s.to_string())
            };
            let (x, y) = (name("x")?, name("y")?);
            let n = algebra_from_value(eo.get("n").ok_or_else(|| field(&p, "missing \"n\""))?, m, &format!("{p}.n"))?;
            let slot = direct.entry((x, y)).or_insert_with(|| GroupAlgebraElt::zero(m));
            *slot = slot.add(&n);
        }
    }
    let data = EquivariantMorseData { group: g, points, h, x_class, lambda, direct };
    Ok(Problem { group, data, order })
}

/// Inverse of `problem_from_json` for data over `Z((t))`.
pub fn cyclic_to_json(d: &CyclicMorseData) -> Value {
    let rows = |m: &IntMatrix| -> Vec<Vec<String>> { m.to_rows().iter().map(|r| strings(r)).collect() };
    serde_json::json!({
        "indices": d.points.iter().map(|p| (p.name.clone(), Value::from(p.index))).collect::<serde_json::Map<_, _>>(),
        "h": d.h.iter().map(|(s, m)| (s.to_string(), serde_json::json!(rows(m)))).collect::<serde_json::Map<_, _>>(),
        "X": d.x_class.iter().map(|(k, v): (&String, &IntVector)| (k.clone(), serde_json::json!(strings(&v.0)))).collect::<serde_json::Map<_, _>>(),
        "lambda": d.lambda.iter().map(|(k, v): (&String, &IntCovector)| (k.clone(), serde_json::json!(strings(&v.0)))).collect::<serde_json::Map<_, _>>(),
        "direct": d.direct.iter().map(|((x, y), n)| serde_json::json!({"x": x, "y": y, "n": n.to_string()})).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip() {
        let s = LaurentSeries::from_i64(-1, &[1, 0, -3], 5);
        let j = serde_json::to_value(SeriesJson::from(&s)).unwrap();
        assert_eq!(j["coeffs"][2], "-3");
        assert_eq!(series_from_value(&j, "$").unwrap(), s);
    }

    #[test]
    fn rational_round_trip() {
        let r = RationalFn::from_i64(1, &[1, 2], &[1, -1, -1]).unwrap();
        let j = serde_json::to_value(RationalJson::from(&r)).unwrap();
        assert_eq!(rational_from_value(&j, "$").unwrap(), r);
    }

    #[test]
    fn fibonacci_problem() {
        let p = problem_from_json(
            r#"{"indices": {"a": 1, "b": 0}, "h": [[1, 1], [1, 0]], "X": {"a": [1, 0]}, "lambda": {"b": ["1", 0]}}"#,
        )
        .unwrap();
        assert!(!p.is_twisted());
        let c = p.cyclic();
        assert_eq!(c.h[&0], IntMatrix::from_i64(&[&[1, 1], &[1, 0]]));
        let back = problem_from_json(&cyclic_to_json(&c).to_string()).unwrap().cyclic();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_name_the_field() {
        let e = problem_from_json(r#"{"indices": {"a": 1}, "X": {"b": [1]}}"#).unwrap_err();
        assert!(e.to_string().contains("$.X.b"), "{e}");
        let e = problem_from_json("{\n \"indices\": {\"a\": 1,}\n}").unwrap_err();
        assert!(e.to_string().starts_with("line 2"), "{e}");
    }

    #[test]
    fn twisted_entries() {
        let p = problem_from_json(
            r#"{"group": {"m": 1, "Phi": [[1]]}, "indices": {"a": 1, "b": 0},
                "h": {"0": [[[{"h": [1], "c": 2}]]]}, "X": {"a": [1]}, "lambda": {"b": [[{"h": [-1], "c": "1"}]]}}"#,
        )
        .unwrap();
        assert!(p.is_twisted());
        assert_eq!(p.data.h[&0].xi_hat[0][0], GroupAlgebraElt::monomial(vec![1], BigInt::from(2)));
    }
}
