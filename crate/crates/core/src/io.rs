//! The instance and report formats.
//!
//! Both are JSON documents carrying `"format": 1`. Integers are JSON numbers of
//! any size; rationals are strings such as `"-3/2"`. Vectors indexed by
//! vertices are written as arrays in the declared vertex order.
//!
//! ```json
//! {
//!   "format": 1,
//!   "vertices": ["x", "y"],
//!   "arrows": [{"id": "a", "tail": "x", "head": "y"}],
//!   "beta": {"x": 1, "y": 1},
//!   "weights": {"theta": {"x": "1", "y": "-1"}},
//!   "config": {"mode": "oracle", "p": 2, "seed": 0},
//!   "reps": {"W": {"p": 2, "matrices": {"a": [[1]]}}}
//! }
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

use crate::cone::{Cone, Fan};
use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::gitfan::Mode;
use crate::linalg::IntVec;
use crate::quiver::{DimVector, Quiver, Weight};
use crate::rep::{Rep, DEFAULT_BUDGET};

pub const FORMAT: u64 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    format: u64,
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<RawArrow>,
    beta: BTreeMap<String, Number>,
    #[serde(default)]
    weights: BTreeMap<String, BTreeMap<String, RawRational>>,
    #[serde(default)]
    config: RawConfig,
    #[serde(default)]
    reps: BTreeMap<String, RawRep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    id: String,
    tail: String,
    head: String,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Integer(Number),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Option<ModeKind>,
    p: Option<u64>,
    samples: Option<usize>,
    seed: Option<u64>,
    budget: Option<u64>,
    #[serde(rename = "bound_B")]
    bound: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    p: u64,
    matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Oracle,
    Sampled,
}

impl FromStr for ModeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ModeKind> {
        match s {
            "oracle" => Ok(ModeKind::Oracle),
            "sampled" => Ok(ModeKind::Sampled),
            other => Err(Error::Semantic(format!("unknown mode `{other}`"))),
        }
    }
}

/// Engine settings stored in an instance; command-line options override them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub mode: ModeKind,
    /// Defaults to 2 in oracle mode and 1009 in sampled mode.
    pub p: Option<u64>,
    pub samples: usize,
    pub seed: u64,
    pub budget: u64,
    pub bound: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: ModeKind::Oracle,
            p: None,
            samples: 64,
            seed: 0,
            budget: DEFAULT_BUDGET,
            bound: 4,
        }
    }
}

impl Config {
    pub fn resolved_mode(&self) -> Mode {
        match self.mode {
            ModeKind::Oracle => Mode::Oracle { p: self.p.unwrap_or(2) },
            ModeKind::Sampled => Mode::Sampled {
                p: self.p.unwrap_or(1009),
                samples: self.samples,
                seed: self.seed,
            },
        }
    }
}

/// A validated instance document.
#[derive(Debug, Clone)]
pub struct Instance {
    pub quiver: Arc<Quiver>,
    pub beta: DimVector,
    pub weights: BTreeMap<String, Weight>,
    pub config: Config,
    pub reps: BTreeMap<String, Rep>,
}

impl Instance {
    pub fn weight(&self, name: &str) -> Result<&Weight> {
        self.weights
            .get(name)
            .ok_or_else(|| Error::Semantic(format!("unknown weight `{name}`")))
    }

    pub fn rep(&self, name: &str) -> Result<&Rep> {
        self.reps
            .get(name)
            .ok_or_else(|| Error::Semantic(format!("unknown representation `{name}`")))
    }
}

fn semantic(e: Error) -> Error {
    if e.is_input_error() {
        e
    } else {
        Error::Semantic(e.to_string())
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Error::Semantic(e.to_string()),
        _ => Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        },
    })?;
    if raw.format != FORMAT {
        return Err(Error::Semantic(format!("unsupported format {}", raw.format)));
    }
    let quiver = Quiver::new(
        raw.vertices.iter().cloned(),
        raw.arrows.iter().map(|a| (a.id.clone(), a.tail.as_str(), a.head.as_str())),
    )
    .map_err(semantic)?;
    let quiver = Arc::new(quiver);

    let beta = vertex_map(&quiver, "beta", &raw.beta, |v, n| {
        let value = BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Semantic(format!("beta entry for `{v}` is not an integer")))?;
        if value.is_negative() {
            return Err(Error::Semantic(format!("negative dimension at vertex `{v}`")));
        }
        value
            .to_u32()
            .ok_or_else(|| Error::Semantic(format!("dimension at vertex `{v}` is too large")))
    })?;
    let beta = DimVector::new(beta);

    let mut weights = BTreeMap::new();
    for (name, entries) in &raw.weights {
        let w = vertex_map(&quiver, &format!("weight `{name}`"), entries, |v, r| {
            parse_rational(match r {
                RawRational::Text(s) => s.clone(),
                RawRational::Integer(n) => n.to_string(),
            })
            .map_err(|m| Error::Semantic(format!("weight `{name}` at `{v}`: {m}")))
        })?;
        weights.insert(name.clone(), Weight::new(w));
    }

    let c = raw.config;
    let defaults = Config::default();
    let config = Config {
        mode: c.mode.unwrap_or(defaults.mode),
        p: c.p,
        samples: c.samples.unwrap_or(defaults.samples),
        seed: c.seed.unwrap_or(defaults.seed),
        budget: c.budget.unwrap_or(defaults.budget),
        bound: c.bound.unwrap_or(defaults.bound),
    };
    if let Some(p) = config.p {
        PrimeField::new(p).map_err(semantic)?;
    }
    if config.bound < 0 {
        return Err(Error::Semantic("bound_B must be nonnegative".into()));
    }

    let mut reps = BTreeMap::new();
    for (name, r) in raw.reps {
        reps.insert(name.clone(), parse_rep(&quiver, &beta, &name, r)?);
    }
    Ok(Instance {
        quiver,
        beta,
        weights,
        config,
        reps,
    })
}

fn vertex_map<T, U>(
    quiver: &Quiver,
    what: &str,
    entries: &BTreeMap<String, T>,
    mut convert: impl FnMut(&str, &T) -> Result<U>,
) -> Result<Vec<U>> {
    if let Some(unknown) = entries.keys().find(|k| quiver.vertex_index(k).is_none()) {
        return Err(Error::Semantic(format!("{what} names unknown vertex `{unknown}`")));
    }
    quiver
        .vertices()
        .iter()
        .map(|v| match entries.get(v) {
            Some(x) => convert(v, x),
            None => Err(Error::Semantic(format!("{what} has no entry for vertex `{v}`"))),
        })
        .collect()
}

fn parse_rep(quiver: &Arc<Quiver>, beta: &DimVector, name: &str, raw: RawRep) -> Result<Rep> {
    let field = PrimeField::new(raw.p).map_err(semantic)?;
    if let Some(unknown) = raw.matrices.keys().find(|k| quiver.arrow_index(k).is_none()) {
        return Err(Error::Semantic(format!("representation `{name}` names unknown arrow `{unknown}`")));
    }
    let mut maps = Vec::new();
    for a in quiver.arrows() {
        let (rows, cols) = (beta.0[a.head] as usize, beta.0[a.tail] as usize);
        let m = match raw.matrices.get(&a.id) {
            Some(m) => m,
            None if rows * cols == 0 => {
                maps.push(FpMatrix::zeros(rows, cols));
                continue;
            }
            None => {
                return Err(Error::Semantic(format!("representation `{name}` has no matrix for arrow `{}`", a.id)))
            }
        };
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return Err(Error::Semantic(format!(
                "representation `{name}`: matrix for arrow `{}` must be {rows}x{cols}",
                a.id
            )));
        }
        let data = m.iter().flatten().map(|&x| field.from_i64(x)).collect();
        maps.push(FpMatrix::from_rows(rows, cols, data));
    }
    Rep::new(quiver.clone(), field, beta.clone(), maps).map_err(semantic)
}

/// Parses `"p"` or `"p/q"` with `q != 0`.
pub fn parse_rational(text: String) -> std::result::Result<BigRational, String> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("`{text}` is not a rational number"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("`{text}` is not a rational number"))?;
    if den == BigInt::from(0) {
        return Err(format!("`{text}` has zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

pub fn int_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn int_vecs(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(|v| int_vec(v)).collect())
}

pub fn dim_vec(d: &DimVector) -> Value {
    Value::Array(d.entries().iter().map(|&x| Value::from(x)).collect())
}

pub fn weight(w: &Weight) -> Value {
    Value::Array(w.entries().iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn emit_cone(c: &Cone) -> Value {
    json!({
        "ambient_dim": c.ambient_dim(),
        "dim": c.dim(),
        "rays": int_vecs(c.rays()),
        "lineality": int_vecs(c.lineality()),
        "equations": int_vecs(c.equations()),
        "inequalities": int_vecs(c.inequalities()),
    })
}

pub fn emit_fan(f: &Fan) -> Value {
    json!({
        "cones": f.cones().iter().map(emit_cone).collect::<Vec<_>>(),
        "face_relations": f.face_relations().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "maximal": f.maximal_indices(),
    })
}

fn bad_doc(what: &str) -> Error {
    Error::Semantic(format!("malformed {what}"))
}

fn read_int_vecs(v: &Value, key: &str) -> Result<Vec<IntVec>> {
    let rows = v.get(key).and_then(Value::as_array).ok_or_else(|| bad_doc(key))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad_doc(key))?
                .iter()
                .map(|x| match x {
                    Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| bad_doc(key)),
                    _ => Err(bad_doc(key)),
                })
                .collect()
        })
        .collect()
}

/// Rebuilds a cone from the constraints of an [`emit_cone`] fragment.
pub fn parse_cone(v: &Value) -> Result<Cone> {
    let n = v
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad_doc("ambient_dim"))? as usize;
    Cone::from_hrep(n, &read_int_vecs(v, "equations")?, &read_int_vecs(v, "inequalities")?)
}

pub fn parse_fan(v: &Value) -> Result<Fan> {
    let cones = v.get("cones").and_then(Value::as_array).ok_or_else(|| bad_doc("cones"))?;
    Ok(Fan::new(cones.iter().map(parse_cone).collect::<Result<Vec<_>>>()?))
}

/// The normalized instance document.
pub fn emit_instance(inst: &Instance) -> Value {
    let q = &inst.quiver;
    let vmap = |values: Vec<Value>| -> Value {
        Value::Object(q.vertices().iter().cloned().zip(values).collect())
    };
    let weights: serde_json::Map<String, Value> = inst
        .weights
        .iter()
        .map(|(name, w)| {
            let entries = w.entries().iter().map(|x| Value::String(x.to_string())).collect();
            (name.clone(), vmap(entries))
        })
        .collect();
    let reps: serde_json::Map<String, Value> = inst
        .reps
        .iter()
        .map(|(name, r)| {
            let matrices: serde_json::Map<String, Value> = q
                .arrows()
                .iter()
                .zip(r.maps())
                .map(|(a, m)| (a.id.clone(), json!(m.row_vecs())))
                .collect();
            (name.clone(), json!({"p": r.field().p(), "matrices": matrices}))
        })
        .collect();
    let c = &inst.config;
    let mut config = json!({
        "mode": c.mode,
        "samples": c.samples,
        "seed": c.seed,
        "budget": c.budget,
        "bound_B": c.bound,
    });
    if let Some(p) = c.p {
        config["p"] = json!(p);
    }
    let mut doc = json!({
        "format": FORMAT,
        "vertices": q.vertices(),
        "arrows": q.arrows().iter().map(|a| json!({
            "id": a.id,
            "tail": q.vertices()[a.tail],
            "head": q.vertices()[a.head],
        })).collect::<Vec<_>>(),
        "beta": vmap(inst.beta.entries().iter().map(|&x| Value::from(x)).collect()),
        "config": config,
    });
    if !weights.is_empty() {
        doc["weights"] = Value::Object(weights);
    }
    if !reps.is_empty() {
        doc["reps"] = Value::Object(reps);
    }
    doc
}

/// One named check in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A command's output document.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub instance: Value,
    pub command: String,
    pub mode: Option<String>,
    pub result: Value,
    pub checks: Vec<Check>,
    /// Wall-clock milliseconds; left out unless requested so reports stay byte-identical.
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_value(&self) -> Value {
        let mut doc = json!({
            "format": FORMAT,
            "instance": self.instance,
            "command": self.command,
            "mode": self.mode,
            "result": self.result,
            "checks": self.checks,
        });
        if let Some(ms) = self.timing_ms {
            doc["timing"] = json!({ "ms": ms.to_string().parse::<Number>().expect("integer") });
        }
        doc
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }
}
