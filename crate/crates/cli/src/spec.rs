//! Spec documents: JSON parsing with located errors, parameter resolution,
//! validity checks and canonical emission.

use std::collections::BTreeMap;

use plie_core::exact::{determinant, format_rational, parse_rational, int, ExactScalar, Tensor};
use plie_core::metric::MetricForm;
use plie_core::{BracketEntry, LieAlgebra, LieBialgebra};
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::report::{canonical_json, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricSide {
    Covariant,
    Contravariant,
}

impl MetricSide {
    pub fn as_str(self) -> &'static str {
        match self {
            MetricSide::Covariant => "covariant",
            MetricSide::Contravariant => "contravariant",
        }
    }
}

/// A coefficient as written: a literal or a scaled parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coef {
    Lit(ExactScalar),
    Param { name: String, scale: ExactScalar },
}

impl Coef {
    pub fn parse(text: &str) -> Result<Coef, String> {
        let t = text.trim();
        if let Ok(v) = parse_rational(t) {
            return Ok(Coef::Lit(v));
        }
        let (neg, rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t),
        };
        let (name, factor) = match rest.split_once('*') {
            Some((n, f)) => (n.trim(), Some(f.trim())),
            None => (rest, None),
        };
        if !is_ident(name) {
            return Err(format!("not a coefficient: {text:?}"));
        }
        let mut scale = match factor {
            Some(f) => parse_rational(f).map_err(|_| format!("bad factor in {text:?}"))?,
            None => ExactScalar::from_integer(1.into()),
        };
        if neg {
            scale = -scale;
        }
        Ok(Coef::Param { name: name.to_string(), scale })
    }

    pub fn canonical(&self) -> String {
        match self {
            Coef::Lit(v) => format_rational(v),
            Coef::Param { name, scale } => {
                let one = ExactScalar::from_integer(1.into());
                if *scale == one {
                    name.clone()
                } else if *scale == -one {
                    format!("-{name}")
                } else {
                    format!("{name}*{}", format_rational(scale))
                }
            }
        }
    }

    pub fn resolve(&self, params: &BTreeMap<String, ExactScalar>) -> Option<ExactScalar> {
        match self {
            Coef::Lit(v) => Some(v.clone()),
            Coef::Param { name, scale } => params.get(name).map(|p| p * scale),
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One `[e_i, e_j] = Σ out[k] e_k` entry, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecEntry {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, Coef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub name: String,
    pub dim: usize,
    pub params: BTreeMap<String, ExactScalar>,
    pub g_bracket: Vec<SpecEntry>,
    pub gstar_bracket: Vec<SpecEntry>,
    pub metric: Vec<Vec<Coef>>,
    pub metric_side: MetricSide,
}

/// Numeric data of a document after parameter substitution. Nothing here is
/// checked beyond shape.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub bi: LieBialgebra,
    pub metric: Tensor,
    pub side: MetricSide,
}

/// A resolved document that passed every validity check.
#[derive(Clone, Debug)]
pub struct Model {
    pub bi: LieBialgebra,
    /// The metric as written.
    pub metric: MetricForm,
    pub side: MetricSide,
}

impl Model {
    /// The metric on `g*` used by the connection.
    pub fn contravariant(&self) -> MetricForm {
        match self.side {
            MetricSide::Contravariant => self.metric.clone(),
            MetricSide::Covariant => self.metric.contravariant_from_covariant(),
        }
    }

    /// The metric on `g`.
    pub fn covariant(&self) -> MetricForm {
        match self.side {
            MetricSide::Covariant => self.metric.clone(),
            MetricSide::Contravariant => self.metric.contravariant_from_covariant(),
        }
    }
}

// ---------------------------------------------------------------- parsing

/// Byte offset of a serde_json error position (1-based line and column).
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (before + column.saturating_sub(1)).min(text.len())
}

fn schema(path: &str, msg: impl Into<String>) -> CliError {
    CliError::Schema { path: path.to_string(), message: msg.into() }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn index(v: &Value, path: &str, dim: usize) -> Result<usize, CliError> {
    let k = v.as_u64().ok_or_else(|| schema(path, "expected a positive integer"))? as usize;
    if k == 0 || k > dim {
        return Err(schema(path, format!("index {k} outside 1..{dim}")));
    }
    Ok(k)
}

fn fields(
    obj: &Map<String, Value>,
    path: &str,
    required: &[&str],
    optional: &[&str],
) -> Result<(), CliError> {
    for key in obj.keys() {
        if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            return Err(schema(&format!("{path}.{key}"), "unknown field"));
        }
    }
    for key in required {
        if !obj.contains_key(*key) {
            return Err(schema(path, format!("missing field `{key}`")));
        }
    }
    Ok(())
}

fn coef(v: &Value, path: &str, params: &BTreeMap<String, ExactScalar>) -> Result<Coef, CliError> {
    let c = Coef::parse(string(v, path)?).map_err(|m| schema(path, m))?;
    if let Coef::Param { name, .. } = &c {
        if !params.contains_key(name) {
            return Err(schema(path, format!("undeclared parameter `{name}`")));
        }
    }
    Ok(c)
}

fn brackets(
    v: &Value,
    path: &str,
    dim: usize,
    params: &BTreeMap<String, ExactScalar>,
) -> Result<Vec<SpecEntry>, CliError> {
    let list = v.as_array().ok_or_else(|| schema(path, "expected an array"))?;
    let mut seen = BTreeMap::new();
    let mut out = Vec::with_capacity(list.len());
    for (n, item) in list.iter().enumerate() {
        let p = format!("{path}[{n}]");
        let obj = object(item, &p)?;
        fields(obj, &p, &["i", "j", "out"], &[])?;
        let i = index(&obj["i"], &format!("{p}.i"), dim)?;
        let j = index(&obj["j"], &format!("{p}.j"), dim)?;
        if i >= j {
            return Err(schema(&p, format!("entry ({i}, {j}) must have i < j")));
        }
        if let Some(prev) = seen.insert((i, j), n) {
            return Err(schema(&p, format!("duplicate entry ({i}, {j}), first at [{prev}]")));
        }
        let op = format!("{p}.out");
        let mut terms = BTreeMap::new();
        for (key, val) in object(&obj["out"], &op)? {
            let kp = format!("{op}.{key}");
            let k: usize = key.parse().map_err(|_| schema(&kp, "output key must be an index"))?;
            if k == 0 || k > dim {
                return Err(schema(&kp, format!("index {k} outside 1..{dim}")));
            }
            if terms.insert(k, coef(val, &kp, params)?).is_some() {
                return Err(schema(&kp, "duplicate output index"));
            }
        }
        out.push(SpecEntry { i, j, out: terms });
    }
    Ok(out)
}

/// Structural parse: syntax, schema, index ranges and parameter references.
/// Algebraic validity is left to [`validity_checks`].
pub fn parse_document(text: &str) -> Result<SpecDocument, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let obj = object(&root, "$")?;
    fields(
        obj,
        "$",
        &["name", "dim", "g_bracket", "gstar_bracket", "metric", "metric_side"],
        &["params"],
    )?;
    let name = string(&obj["name"], "$.name")?.to_string();
    let dim = obj["dim"]
        .as_u64()
        .filter(|&d| d > 0)
        .ok_or_else(|| schema("$.dim", "expected a positive integer"))? as usize;

    let mut params = BTreeMap::new();
    if let Some(p) = obj.get("params") {
        for (key, val) in object(p, "$.params")? {
            let path = format!("$.params.{key}");
            if !is_ident(key) {
                return Err(schema(&path, "parameter names are identifiers"));
            }
            let v = parse_rational(string(val, &path)?).map_err(|e| schema(&path, e.to_string()))?;
            params.insert(key.clone(), v);
        }
    }

    let g_bracket = brackets(&obj["g_bracket"], "$.g_bracket", dim, &params)?;
    let gstar_bracket = brackets(&obj["gstar_bracket"], "$.gstar_bracket", dim, &params)?;

    let rows = obj["metric"].as_array().ok_or_else(|| schema("$.metric", "expected an array"))?;
    if rows.len() != dim {
        return Err(schema("$.metric", format!("expected {dim} rows, got {}", rows.len())));
    }
    let mut metric = Vec::with_capacity(dim);
    for (r, row) in rows.iter().enumerate() {
        let rp = format!("$.metric[{r}]");
        let cells = row.as_array().ok_or_else(|| schema(&rp, "expected an array"))?;
        if cells.len() != dim {
            return Err(schema(&rp, format!("expected {dim} entries, got {}", cells.len())));
        }
        let parsed = cells
            .iter()
            .enumerate()
            .map(|(c, v)| coef(v, &format!("{rp}[{c}]"), &params))
            .collect::<Result<Vec<_>, _>>()?;
        metric.push(parsed);
    }

    let metric_side = match string(&obj["metric_side"], "$.metric_side")? {
        "covariant" => MetricSide::Covariant,
        "contravariant" => MetricSide::Contravariant,
        other => {
            return Err(schema(
                "$.metric_side",
                format!("expected covariant or contravariant, got {other:?}"),
            ))
        }
    };

    Ok(SpecDocument { name, dim, params, g_bracket, gstar_bracket, metric, metric_side })
}

/// Parse, resolve and run every validity check; the first failure is
/// reported as a validation error naming the defect entry.
pub fn parse_spec(text: &str) -> Result<(SpecDocument, Model), CliError> {
    let doc = parse_document(text)?;
    let model = doc.model()?;
    Ok((doc, model))
}

// ---------------------------------------------------------------- resolution

fn core_entries(entries: &[SpecEntry], params: &BTreeMap<String, ExactScalar>) -> Vec<BracketEntry> {
    entries
        .iter()
        .map(|e| BracketEntry {
            i: e.i - 1,
            j: e.j - 1,
            out: e
                .out
                .iter()
                .map(|(k, c)| (k - 1, c.resolve(params).expect("parameters checked at parse time")))
                .collect(),
        })
        .collect()
}

/// One validity check: its name and, on failure, the witness.
pub struct Validity {
    pub name: &'static str,
    pub witness: Option<Witness>,
}

fn first_defect(t: &Tensor, label: &str) -> Option<Witness> {
    t.first_nonzero().map(|(ix, v)| Witness {
        label: label.to_string(),
        index: ix.iter().map(|i| i + 1).collect(),
        lhs: format_rational(&v),
        rhs: "0".into(),
    })
}

impl SpecDocument {
    /// Replace declared parameters; unknown names are rejected.
    pub fn with_params(mut self, overrides: &[(String, String)]) -> Result<Self, CliError> {
        for (name, value) in overrides {
            let slot = self
                .params
                .get_mut(name)
                .ok_or_else(|| CliError::Usage(format!("--param {name}: not declared by the document")))?;
            *slot = parse_rational(value)
                .map_err(|e| CliError::Usage(format!("--param {name}: {e}")))?;
        }
        Ok(self)
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let core = |e: plie_core::CoreError| CliError::Schema { path: "$".into(), message: e.to_string() };
        let g = LieAlgebra::from_brackets(self.dim, &core_entries(&self.g_bracket, &self.params)).map_err(core)?;
        let gs = LieAlgebra::from_brackets(self.dim, &core_entries(&self.gstar_bracket, &self.params)).map_err(core)?;
        let bi = LieBialgebra::from_parts(g, gs).map_err(core)?;
        let metric = Tensor::from_fn(&[self.dim, self.dim], |ix| {
            self.metric[ix[0]][ix[1]].resolve(&self.params).expect("parameters checked at parse time")
        });
        Ok(Resolved { bi, metric, side: self.metric_side })
    }

    /// Jacobi for both brackets, the cocycle condition, metric symmetry and
    /// nondegeneracy, in that order.
    pub fn validity_checks(&self) -> Result<Vec<Validity>, CliError> {
        let r = self.resolve()?;
        let n = self.dim;
        let asym = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| r.metric.get(&[i, j]) != r.metric.get(&[j, i]))
            .map(|(i, j)| Witness {
                label: "metric_asymmetry".into(),
                index: vec![i + 1, j + 1],
                lhs: format_rational(r.metric.get(&[i, j])),
                rhs: format_rational(r.metric.get(&[j, i])),
            });
        let det = determinant(&r.metric).expect("square matrix");
        let singular = (det == int(0)).then(|| Witness {
            label: "det(metric)".into(),
            index: Vec::new(),
            lhs: "0".into(),
            rhs: "nonzero".into(),
        });
        Ok(vec![
            Validity { name: "jacobi_g", witness: first_defect(&r.bi.g().jacobi_defect(), "jacobi_defect(g)") },
            Validity {
                name: "jacobi_gstar",
                witness: first_defect(&r.bi.gstar().jacobi_defect(), "jacobi_defect(g*)"),
            },
            Validity {
                name: "cocycle",
                witness: if r.bi.is_cocycle() {
                    None
                } else {
                    first_defect(&r.bi.cocycle_defect(), "cocycle_defect")
                },
            },
            Validity { name: "metric_symmetric", witness: asym },
            Validity { name: "metric_nondegenerate", witness: singular },
        ])
    }

    /// Resolve and validate, failing on the first defect.
    pub fn model(&self) -> Result<Model, CliError> {
        if let Some(w) = self.validity_checks()?.into_iter().find_map(|c| c.witness) {
            return Err(CliError::Validation(w));
        }
        let r = self.resolve()?;
        let metric = MetricForm::new(r.metric).map_err(|e| CliError::Schema {
            path: "$.metric".into(),
            message: e.to_string(),
        })?;
        Ok(Model { bi: r.bi, metric, side: r.side })
    }
}

// ---------------------------------------------------------------- emission

fn entries_value(entries: &[SpecEntry]) -> Value {
    let mut sorted: Vec<&SpecEntry> = entries.iter().collect();
    sorted.sort_by_key(|e| (e.i, e.j));
    Value::Array(
        sorted
            .into_iter()
            .map(|e| {
                let out: Map<String, Value> =
                    e.out.iter().map(|(k, c)| (k.to_string(), Value::String(c.canonical()))).collect();
                let mut m = Map::new();
                m.insert("i".into(), e.i.into());
                m.insert("j".into(), e.j.into());
                m.insert("out".into(), Value::Object(out));
                Value::Object(m)
            })
            .collect(),
    )
}

/// Canonical text: sorted keys, entries ordered by `(i, j)`, lowest-terms
/// rationals, two-space indentation and a trailing newline.
pub fn emit(doc: &SpecDocument) -> String {
    let mut m = Map::new();
    m.insert("name".into(), doc.name.clone().into());
    m.insert("dim".into(), doc.dim.into());
    if !doc.params.is_empty() {
        let p: Map<String, Value> =
            doc.params.iter().map(|(k, v)| (k.clone(), Value::String(format_rational(v)))).collect();
        m.insert("params".into(), Value::Object(p));
    }
    m.insert("g_bracket".into(), entries_value(&doc.g_bracket));
    m.insert("gstar_bracket".into(), entries_value(&doc.gstar_bracket));
    m.insert(
        "metric".into(),
        Value::Array(
            doc.metric
                .iter()
                .map(|row| Value::Array(row.iter().map(|c| Value::String(c.canonical())).collect()))
                .collect(),
        ),
    );
    m.insert("metric_side".into(), doc.metric_side.as_str().into());
    canonical_json(Value::Object(m))
}

fn spec_entries(alg: &LieAlgebra) -> Vec<SpecEntry> {
    alg.upper_entries()
        .into_iter()
        .map(|e| SpecEntry {
            i: e.i + 1,
            j: e.j + 1,
            out: e.out.into_iter().map(|(k, v)| (k + 1, Coef::Lit(v))).collect(),
        })
        .collect()
}

/// The tangent double `(g ⋊ g, g* ⋉ g*)` with the lifted metric, as a new
/// parameter-free document on the same metric side.
pub fn emit_double(doc: &SpecDocument) -> Result<SpecDocument, CliError> {
    let model = doc.model()?;
    let t = model.bi.tangent().map_err(CliError::from_core)?;
    let lift = model.metric.complete_lift();
    let m = lift.matrix();
    let n = 2 * doc.dim;
    Ok(SpecDocument {
        name: format!("{}-double", doc.name),
        dim: n,
        params: BTreeMap::new(),
        g_bracket: spec_entries(t.g()),
        gstar_bracket: spec_entries(t.gstar()),
        metric: (0..n).map(|i| (0..n).map(|j| Coef::Lit(m.get(&[i, j]).clone())).collect()).collect(),
        metric_side: doc.metric_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use plie_core::exact::{int, ratio};

    #[test]
    fn coefficient_forms() {
        assert_eq!(Coef::parse("3/6").unwrap(), Coef::Lit(ratio(1, 2)));
        assert_eq!(Coef::parse("-4").unwrap(), Coef::Lit(int(-4)));
        let p = |s: &str| Coef::parse(s).unwrap().canonical();
        assert_eq!(p("lambda"), "lambda");
        assert_eq!(p("-lambda"), "-lambda");
        assert_eq!(p("lambda*2/4"), "lambda*1/2");
        assert_eq!(p("-lambda*2"), "lambda*-2");
        assert_eq!(p("mu*1"), "mu");
        assert!(Coef::parse("2x").is_err());
        assert!(Coef::parse("lambda*").is_err());
        assert!(Coef::parse("").is_err());
    }

    #[test]
    fn offsets_count_bytes() {
        let text = "{\n  \"é\": 1,\n  x\n}";
        let err = serde_json::from_str::<Value>(text).unwrap_err();
        let off = byte_offset(text, err.line(), err.column());
        assert_eq!(&text[off..off + 1], "x");
    }
}
