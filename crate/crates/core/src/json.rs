//! JSON exchange format.
//!
//! Every rational is a `"p/q"` string. A polynomial is an array of terms
//! `{"exp", "re", "im"}`, or `{"terms": [...], "trunc": k}` when it is a
//! truncated series. Over `ℚ(i)(√M)` a term also carries `"rad_re"`,
//! `"rad_im"` (the coefficient of `√M`) and the enclosing document states
//! `"radicand": M`.
//!
//! Readers report failures as [`Error::Parse`] with a JSON path such as
//! `$.entries[1][0][2].re`. Objects are emitted with sorted keys, so output
//! is deterministic.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::charpoly::{CharPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::jordan::{JordanPartition, JordanStructure, PerturbationFamily};
use crate::models::{ExactCharPoly, ExactMatrix};
use crate::numeric::{BraidPermutation, Cluster, Tracks, VerificationResult};
use crate::poly::ScalarPoly;
use crate::scalar::{format_rational, parse_rational, ExactScalar, GaussianRational, QuadExt};
use crate::tropical::{ExtRational, NewtonPolygon, SplittingReport, TropicalRoot};

fn err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_string(), message: message.into() }
}

/// Parses a JSON document, mapping syntax errors to the root path.
pub fn parse_document(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| err("$", format!("invalid JSON: {e}")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(path, format!("missing field {key:?}")))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn boolean(v: &Value, path: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| err(path, "expected a boolean"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(path, "expected a string"))
}

/// Floats are numbers; non-finite values are `null` (read back as NaN) or
/// the strings `"inf"`, `"-inf"`.
fn float(v: &Value, path: &str) -> Result<f64> {
    match v {
        Value::Null => Ok(f64::NAN),
        Value::Number(n) => n.as_f64().ok_or_else(|| err(path, "number out of range")),
        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
        Value::String(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
        _ => Err(err(path, "expected a number")),
    }
}

fn float_value(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x == f64::INFINITY {
        json!("inf")
    } else if x == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        Value::Null
    }
}

/// Rational from a `"p/q"` string; integers and decimals are accepted too.
fn rational(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| err(path, format!("not a rational: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).ok_or_else(|| err(path, "not a rational"))
        }
        _ => Err(err(path, "expected a \"p/q\" string")),
    }
}

fn rational_value(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn ext_rational(v: &Value, path: &str) -> Result<ExtRational> {
    match v.as_str() {
        Some("inf") => Ok(ExtRational::Infinite),
        _ => rational(v, path).map(ExtRational::Finite),
    }
}

fn ext_rational_value(r: &ExtRational) -> Value {
    match r {
        ExtRational::Finite(q) => rational_value(q),
        ExtRational::Infinite => json!("inf"),
    }
}

fn optional_rational(obj: &Map<String, Value>, key: &str, path: &str) -> Result<BigRational> {
    match obj.get(key) {
        None => Ok(BigRational::zero()),
        Some(v) => rational(v, &format!("{path}.{key}")),
    }
}

/// Scalars with a JSON term encoding.
pub trait JsonScalar: ExactScalar {
    /// `√M` of the field, `None` for the Gaussian rationals.
    fn radicand() -> Option<i64>;
    fn write_fields(&self, obj: &mut Map<String, Value>);
    fn read_fields(obj: &Map<String, Value>, path: &str) -> Result<Self>;
}

impl JsonScalar for GaussianRational {
    fn radicand() -> Option<i64> {
        None
    }

    fn write_fields(&self, obj: &mut Map<String, Value>) {
        obj.insert("re".into(), rational_value(&self.re));
        obj.insert("im".into(), rational_value(&self.im));
    }

    fn read_fields(obj: &Map<String, Value>, path: &str) -> Result<Self> {
        for key in ["rad_re", "rad_im"] {
            if obj.contains_key(key) {
                return Err(err(&format!("{path}.{key}"), "radical part without a \"radicand\""));
            }
        }
        Ok(Self::new(optional_rational(obj, "re", path)?, optional_rational(obj, "im", path)?))
    }
}

impl<const M: i64> JsonScalar for QuadExt<M> {
    fn radicand() -> Option<i64> {
        Some(M)
    }

    fn write_fields(&self, obj: &mut Map<String, Value>) {
        self.a.write_fields(obj);
        obj.insert("rad_re".into(), rational_value(&self.b.re));
        obj.insert("rad_im".into(), rational_value(&self.b.im));
    }

    fn read_fields(obj: &Map<String, Value>, path: &str) -> Result<Self> {
        let a = GaussianRational::new(optional_rational(obj, "re", path)?, optional_rational(obj, "im", path)?);
        let b = GaussianRational::new(optional_rational(obj, "rad_re", path)?, optional_rational(obj, "rad_im", path)?);
        Ok(Self::new(a, b))
    }
}

fn scalar_value<S: JsonScalar>(c: &S) -> Value {
    let mut obj = Map::new();
    c.write_fields(&mut obj);
    Value::Object(obj)
}

fn read_scalar<S: JsonScalar>(v: &Value, path: &str) -> Result<S> {
    S::read_fields(object(v, path)?, path)
}

pub fn scalar_poly_to_json<S: JsonScalar>(p: &ScalarPoly<S>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| {
            let mut obj = Map::new();
            obj.insert("exp".into(), json!(e));
            c.write_fields(&mut obj);
            Value::Object(obj)
        })
        .collect();
    match p.trunc() {
        None => Value::Array(terms),
        Some(k) => json!({ "terms": terms, "trunc": k }),
    }
}

pub fn scalar_poly_from_json<S: JsonScalar>(v: &Value, path: &str) -> Result<ScalarPoly<S>> {
    let (terms, trunc, tpath) = match v {
        Value::Array(a) => (a, None, path.to_string()),
        Value::Object(obj) => {
            let tpath = format!("{path}.terms");
            let terms = array(field(obj, "terms", path)?, &tpath)?;
            let trunc = match obj.get("trunc") {
                None | Some(Value::Null) => None,
                Some(t) => Some(
                    u32::try_from(uint(t, &format!("{path}.trunc"))?)
                        .map_err(|_| err(&format!("{path}.trunc"), "truncation order too large"))?,
                ),
            };
            (terms, trunc, tpath)
        }
        _ => return Err(err(path, "expected an array of terms or {\"terms\", \"trunc\"}")),
    };
    let mut out = Vec::with_capacity(terms.len());
    let mut seen = std::collections::BTreeSet::new();
    for (k, t) in terms.iter().enumerate() {
        let p = format!("{tpath}[{k}]");
        let obj = object(t, &p)?;
        let exp = u32::try_from(uint(field(obj, "exp", &p)?, &format!("{p}.exp"))?)
            .map_err(|_| err(&format!("{p}.exp"), "exponent too large"))?;
        if !seen.insert(exp) {
            return Err(err(&format!("{p}.exp"), format!("repeated exponent {exp}")));
        }
        if trunc.is_some_and(|tr| exp >= tr) {
            return Err(err(&format!("{p}.exp"), "term at or beyond the truncation order"));
        }
        out.push((exp, S::read_fields(obj, &p)?));
    }
    Ok(ScalarPoly::from_terms(out, trunc))
}

fn check_radicand<S: JsonScalar>(obj: &Map<String, Value>, path: &str) -> Result<()> {
    let found = match obj.get("radicand") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_i64().ok_or_else(|| err(&format!("{path}.radicand"), "expected an integer"))?),
    };
    if found != S::radicand() {
        return Err(err(
            &format!("{path}.radicand"),
            format!("radicand {found:?} does not match the scalar field {:?}", S::radicand()),
        ));
    }
    Ok(())
}

fn with_radicand<S: JsonScalar>(mut obj: Map<String, Value>) -> Value {
    if let Some(m) = S::radicand() {
        obj.insert("radicand".into(), json!(m));
    }
    Value::Object(obj)
}

/// `{"n", "entries": [[poly, …], …]}`, row-major.
pub fn matrix_to_json<S: JsonScalar>(m: &PolyMatrix<S>) -> Value {
    let entries: Vec<Value> = m.rows().map(|row| Value::Array(row.iter().map(scalar_poly_to_json).collect())).collect();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(m.n()));
    obj.insert("entries".into(), Value::Array(entries));
    with_radicand::<S>(obj)
}

pub fn matrix_from_json<S: JsonScalar>(v: &Value, path: &str) -> Result<PolyMatrix<S>> {
    let obj = object(v, path)?;
    check_radicand::<S>(obj, path)?;
    let n = uint(field(obj, "n", path)?, &format!("{path}.n"))? as usize;
    if n == 0 {
        return Err(err(&format!("{path}.n"), "dimension must be positive"));
    }
    let epath = format!("{path}.entries");
    let rows = array(field(obj, "entries", path)?, &epath)?;
    if rows.len() != n {
        return Err(err(&epath, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let rpath = format!("{epath}[{i}]");
        let cells = array(row, &rpath)?;
        if cells.len() != n {
            return Err(err(&rpath, format!("expected {n} entries, found {}", cells.len())));
        }
        out.push(
            cells
                .iter()
                .enumerate()
                .map(|(j, c)| scalar_poly_from_json(c, &format!("{rpath}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    PolyMatrix::from_rows(out).map_err(|e| err(path, e.to_string()))
}

/// `{"n", "coeffs": [a_0, …, a_n]}` with `a_0 = 1`.
pub fn charpoly_to_json<S: JsonScalar>(c: &CharPoly<S>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(c.n()));
    obj.insert("coeffs".into(), Value::Array(c.coeffs().iter().map(scalar_poly_to_json).collect()));
    with_radicand::<S>(obj)
}

pub fn charpoly_from_json<S: JsonScalar>(v: &Value, path: &str) -> Result<CharPoly<S>> {
    let obj = object(v, path)?;
    check_radicand::<S>(obj, path)?;
    let cpath = format!("{path}.coeffs");
    let coeffs = array(field(obj, "coeffs", path)?, &cpath)?
        .iter()
        .enumerate()
        .map(|(i, c)| scalar_poly_from_json(c, &format!("{cpath}[{i}]")))
        .collect::<Result<Vec<ScalarPoly<S>>>>()?;
    if let Some(n) = obj.get("n") {
        let n = uint(n, &format!("{path}.n"))? as usize;
        if n + 1 != coeffs.len() {
            return Err(err(&cpath, format!("degree {n} needs {} coefficients, found {}", n + 1, coeffs.len())));
        }
    }
    CharPoly::new(coeffs).map_err(|e| err(&cpath, e.to_string()))
}

fn radicand_of(obj: &Map<String, Value>, path: &str) -> Result<Option<i64>> {
    match obj.get("radicand") {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v.as_i64().map(Some).ok_or_else(|| err(&format!("{path}.radicand"), "expected an integer")),
    }
}

fn unsupported_radicand(m: i64, path: &str) -> Error {
    err(&format!("{path}.radicand"), format!("unsupported radicand {m}; supported: 2, 5"))
}

pub fn exact_matrix_to_json(m: &ExactMatrix) -> Value {
    match m {
        ExactMatrix::Gaussian(m) => matrix_to_json(m),
        ExactMatrix::Sqrt2(m) => matrix_to_json(m),
        ExactMatrix::Sqrt5(m) => matrix_to_json(m),
    }
}

/// Matrix over the field named by its `"radicand"` field.
pub fn exact_matrix_from_json(v: &Value, path: &str) -> Result<ExactMatrix> {
    match radicand_of(object(v, path)?, path)? {
        None => matrix_from_json(v, path).map(ExactMatrix::Gaussian),
        Some(2) => matrix_from_json(v, path).map(ExactMatrix::Sqrt2),
        Some(5) => matrix_from_json(v, path).map(ExactMatrix::Sqrt5),
        Some(m) => Err(unsupported_radicand(m, path)),
    }
}

pub fn exact_charpoly_to_json(c: &ExactCharPoly) -> Value {
    match c {
        ExactCharPoly::Gaussian(c) => charpoly_to_json(c),
        ExactCharPoly::Sqrt2(c) => charpoly_to_json(c),
        ExactCharPoly::Sqrt5(c) => charpoly_to_json(c),
    }
}

pub fn exact_charpoly_from_json(v: &Value, path: &str) -> Result<ExactCharPoly> {
    match radicand_of(object(v, path)?, path)? {
        None => charpoly_from_json(v, path).map(ExactCharPoly::Gaussian),
        Some(2) => charpoly_from_json(v, path).map(ExactCharPoly::Sqrt2),
        Some(5) => charpoly_from_json(v, path).map(ExactCharPoly::Sqrt5),
        Some(m) => Err(unsupported_radicand(m, path)),
    }
}

/// Either input form accepted by the analysis entry points.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactInput {
    Matrix(ExactMatrix),
    CharPoly(ExactCharPoly),
}

impl ExactInput {
    pub fn charpoly(&self) -> Result<ExactCharPoly> {
        match self {
            ExactInput::Matrix(m) => m.charpoly(),
            ExactInput::CharPoly(c) => Ok(c.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ExactInput::Matrix(m) => exact_matrix_to_json(m),
            ExactInput::CharPoly(c) => exact_charpoly_to_json(c),
        }
    }
}

/// Distinguishes a matrix (`"entries"`) from a characteristic polynomial
/// (`"coeffs"`); exactly one must be present.
pub fn exact_input_from_json(v: &Value) -> Result<ExactInput> {
    let obj = object(v, "$")?;
    match (obj.contains_key("entries"), obj.contains_key("coeffs")) {
        (true, false) => exact_matrix_from_json(v, "$").map(ExactInput::Matrix),
        (false, true) => exact_charpoly_from_json(v, "$").map(ExactInput::CharPoly),
        (true, true) => Err(err("$", "both \"entries\" and \"coeffs\" given; expected exactly one")),
        (false, false) => Err(err("$", "expected a matrix (\"entries\") or a characteristic polynomial (\"coeffs\")")),
    }
}

fn root_value(r: &TropicalRoot) -> Value {
    json!({ "omega": rational_value(&r.omega), "mult": r.multiplicity })
}

fn read_root(v: &Value, path: &str) -> Result<TropicalRoot> {
    let obj = object(v, path)?;
    let omega = rational(field(obj, "omega", path)?, &format!("{path}.omega"))?;
    let mult = uint(field(obj, "mult", path)?, &format!("{path}.mult"))?;
    let multiplicity = u32::try_from(mult).map_err(|_| err(&format!("{path}.mult"), "multiplicity too large"))?;
    if multiplicity == 0 {
        return Err(err(&format!("{path}.mult"), "multiplicity must be positive"));
    }
    Ok(TropicalRoot { omega, multiplicity })
}

/// `{"n", "roots": [{"omega", "mult"}], "zero_roots", "undetermined"}`.
pub fn report_to_json(r: &SplittingReport) -> Value {
    json!({
        "n": r.n,
        "roots": r.roots.iter().map(root_value).collect::<Vec<_>>(),
        "zero_roots": r.zero_root_count,
        "undetermined": r.undetermined,
    })
}

/// `"n"` is optional and defaults to the multiplicity sum plus zero roots.
pub fn report_from_json(v: &Value, path: &str) -> Result<SplittingReport> {
    let obj = object(v, path)?;
    let rpath = format!("{path}.roots");
    let roots = array(field(obj, "roots", path)?, &rpath)?
        .iter()
        .enumerate()
        .map(|(i, r)| read_root(r, &format!("{rpath}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let zero_root_count = uint(field(obj, "zero_roots", path)?, &format!("{path}.zero_roots"))? as usize;
    let undetermined = match obj.get("undetermined") {
        None => false,
        Some(b) => boolean(b, &format!("{path}.undetermined"))?,
    };
    let sum: usize = roots.iter().map(|r| r.multiplicity as usize).sum::<usize>() + zero_root_count;
    let n = match obj.get("n") {
        None => sum,
        Some(n) => uint(n, &format!("{path}.n"))? as usize,
    };
    let report = SplittingReport { n, roots, zero_root_count, undetermined };
    if !undetermined && sum != n {
        return Err(err(path, format!("multiplicities and zero roots sum to {sum}, expected {n}")));
    }
    if !report.roots.windows(2).all(|w| w[0].omega < w[1].omega) {
        return Err(err(&rpath, "roots must be strictly increasing in omega"));
    }
    Ok(report)
}

/// Points, hull vertices and edges of a Newton polygon.
pub fn polygon_to_json(p: &NewtonPolygon) -> Value {
    json!({
        "points": p.points().iter().map(|(i, a)| json!({ "i": i, "alpha": ext_rational_value(a) })).collect::<Vec<_>>(),
        "hull": p.hull().iter().map(|(i, a)| json!({ "i": i, "alpha": rational_value(a) })).collect::<Vec<_>>(),
        "segments": p
            .segments()
            .iter()
            .map(|(s, len)| json!({ "slope": rational_value(s), "length": len }))
            .collect::<Vec<_>>(),
        "undetermined": p.is_undetermined(),
    })
}

/// Rebuilds the polygon from its points; the stored hull must agree.
pub fn polygon_from_json(v: &Value, path: &str) -> Result<NewtonPolygon> {
    let obj = object(v, path)?;
    let ppath = format!("{path}.points");
    let points = array(field(obj, "points", path)?, &ppath)?;
    let mut alphas = Vec::with_capacity(points.len());
    for (k, p) in points.iter().enumerate() {
        let pp = format!("{ppath}[{k}]");
        let o = object(p, &pp)?;
        if uint(field(o, "i", &pp)?, &format!("{pp}.i"))? != k as u64 {
            return Err(err(&format!("{pp}.i"), format!("expected index {k}")));
        }
        alphas.push(ext_rational(field(o, "alpha", &pp)?, &format!("{pp}.alpha"))?);
    }
    if alphas.len() < 2 || alphas[0] == ExtRational::Infinite {
        return Err(err(&ppath, "need at least two points with a finite first one"));
    }
    let undetermined = match obj.get("undetermined") {
        None => false,
        Some(b) => boolean(b, &format!("{path}.undetermined"))?,
    };
    let polygon = NewtonPolygon::from_alphas(alphas, undetermined);
    if let Some(h) = obj.get("hull") {
        let stored = polygon_to_json(&polygon);
        if stored.get("hull") != Some(h) {
            return Err(err(&format!("{path}.hull"), "hull does not match the points"));
        }
    }
    Ok(polygon)
}

fn cluster_value(c: &Cluster) -> Value {
    json!({
        "exponent": float_value(c.exponent),
        "members": c.members,
        "matched": c.matched.as_ref().map_or(Value::Null, root_value),
        "max_residual": float_value(c.max_residual),
        "tracks": c.tracks,
    })
}

fn usize_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| uint(x, &format!("{path}[{i}]")).map(|u| u as usize)).collect()
}

fn read_cluster(v: &Value, path: &str) -> Result<Cluster> {
    let obj = object(v, path)?;
    let sub = |k: &str| format!("{path}.{k}");
    Ok(Cluster {
        exponent: float(field(obj, "exponent", path)?, &sub("exponent"))?,
        members: uint(field(obj, "members", path)?, &sub("members"))? as usize,
        matched: match field(obj, "matched", path)? {
            Value::Null => None,
            m => Some(read_root(m, &sub("matched"))?),
        },
        max_residual: float(field(obj, "max_residual", path)?, &sub("max_residual"))?,
        tracks: usize_list(field(obj, "tracks", path)?, &sub("tracks"))?,
    })
}

/// Verification summary; the raw tracks go to CSV instead.
pub fn verification_to_json(r: &VerificationResult) -> Value {
    json!({
        "pass": r.pass,
        "clusters": r.clusters.iter().map(cluster_value).collect::<Vec<_>>(),
        "zero_tracks": r.zero_tracks,
        "expected_zero_tracks": r.expected_zero_tracks,
        "track_exponents": r.track_exponents.iter().map(|e| e.map_or(Value::Null, float_value)).collect::<Vec<_>>(),
        "diagnostics": r.diagnostics,
        "refinements": r.tracks.refinements,
        "unresolved": r.tracks.unresolved,
    })
}

/// Reads a summary; the returned tracks hold only the counters.
pub fn verification_from_json(v: &Value, path: &str) -> Result<VerificationResult> {
    let obj = object(v, path)?;
    let sub = |k: &str| format!("{path}.{k}");
    let cpath = sub("clusters");
    let clusters = array(field(obj, "clusters", path)?, &cpath)?
        .iter()
        .enumerate()
        .map(|(i, c)| read_cluster(c, &format!("{cpath}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let epath = sub("track_exponents");
    let track_exponents = array(field(obj, "track_exponents", path)?, &epath)?
        .iter()
        .enumerate()
        .map(|(i, e)| match e {
            Value::Null => Ok(None),
            e => float(e, &format!("{epath}[{i}]")).map(Some),
        })
        .collect::<Result<Vec<_>>>()?;
    let dpath = sub("diagnostics");
    let diagnostics = array(field(obj, "diagnostics", path)?, &dpath)?
        .iter()
        .enumerate()
        .map(|(i, d)| string(d, &format!("{dpath}[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let count = |k: &str| -> Result<usize> {
        match obj.get(k) {
            None => Ok(0),
            Some(v) => uint(v, &sub(k)).map(|u| u as usize),
        }
    };
    Ok(VerificationResult {
        clusters,
        zero_tracks: uint(field(obj, "zero_tracks", path)?, &sub("zero_tracks"))? as usize,
        expected_zero_tracks: uint(field(obj, "expected_zero_tracks", path)?, &sub("expected_zero_tracks"))? as usize,
        track_exponents,
        pass: boolean(field(obj, "pass", path)?, &sub("pass"))?,
        diagnostics,
        tracks: Tracks { ts: Vec::new(), values: Vec::new(), refinements: count("refinements")?, unresolved: count("unresolved")? },
    })
}

pub fn braid_to_json(b: &BraidPermutation) -> Value {
    json!({ "permutation": b.permutation, "cycle_lengths": b.cycle_lengths, "zero_tracks": b.zero_tracks })
}

pub fn braid_from_json(v: &Value, path: &str) -> Result<BraidPermutation> {
    let obj = object(v, path)?;
    let permutation = usize_list(field(obj, "permutation", path)?, &format!("{path}.permutation"))?;
    let mut seen = vec![false; permutation.len()];
    for &j in &permutation {
        if j >= seen.len() || std::mem::replace(&mut seen[j], true) {
            return Err(err(&format!("{path}.permutation"), "not a permutation"));
        }
    }
    let cycle_lengths = crate::numeric::cycle_lengths(&permutation);
    let zero_tracks = usize_list(field(obj, "zero_tracks", path)?, &format!("{path}.zero_tracks"))?;
    Ok(BraidPermutation { permutation, cycle_lengths, zero_tracks })
}

fn complex_value(z: Complex<f64>) -> Value {
    json!({ "re": float_value(z.re), "im": float_value(z.im) })
}

pub fn jordan_to_json(s: &JordanStructure) -> Value {
    json!({
        "eigenvalue": complex_value(s.eigenvalue),
        "partition": s.partition.sizes(),
        "rank_sequence": s.rank_sequence,
    })
}

pub fn jordan_from_json(v: &Value, path: &str) -> Result<JordanStructure> {
    let obj = object(v, path)?;
    let epath = format!("{path}.eigenvalue");
    let e = object(field(obj, "eigenvalue", path)?, &epath)?;
    let eigenvalue = Complex::new(
        float(field(e, "re", &epath)?, &format!("{epath}.re"))?,
        float(field(e, "im", &epath)?, &format!("{epath}.im"))?,
    );
    let ppath = format!("{path}.partition");
    let partition = JordanPartition::new(usize_list(field(obj, "partition", path)?, &ppath)?)
        .map_err(|e| err(&ppath, e.to_string()))?;
    let rank_sequence = usize_list(field(obj, "rank_sequence", path)?, &format!("{path}.rank_sequence"))?;
    Ok(JordanStructure { eigenvalue, partition, rank_sequence })
}

/// Numeric matrix `{"n", "entries": [[{"re", "im"}, …], …]}`; entries may
/// also be plain numbers or rational strings.
pub fn numeric_matrix_from_json(v: &Value, path: &str) -> Result<nalgebra::DMatrix<Complex<f64>>> {
    let obj = object(v, path)?;
    let epath = format!("{path}.entries");
    let rows = array(field(obj, "entries", path)?, &epath)?;
    let n = rows.len();
    if n == 0 {
        return Err(err(&epath, "empty matrix"));
    }
    if let Some(d) = obj.get("n") {
        if uint(d, &format!("{path}.n"))? as usize != n {
            return Err(err(&epath, "row count does not match \"n\""));
        }
    }
    let part = |v: &Value, p: &str| -> Result<f64> {
        match v {
            Value::String(_) => rational(v, p).map(|r| num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN)),
            _ => float(v, p),
        }
    };
    let mut m = nalgebra::DMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let rpath = format!("{epath}[{i}]");
        let cells = array(row, &rpath)?;
        if cells.len() != n {
            return Err(err(&rpath, format!("expected {n} entries, found {}", cells.len())));
        }
        for (j, c) in cells.iter().enumerate() {
            let p = format!("{rpath}[{j}]");
            m[(i, j)] = match c {
                Value::Object(o) => Complex::new(
                    o.get("re").map_or(Ok(0.0), |x| part(x, &format!("{p}.re")))?,
                    o.get("im").map_or(Ok(0.0), |x| part(x, &format!("{p}.im")))?,
                ),
                _ => Complex::new(part(c, &p)?, 0.0),
            };
        }
    }
    Ok(m)
}

pub fn numeric_matrix_to_json(m: &nalgebra::DMatrix<Complex<f64>>) -> Value {
    let entries: Vec<Value> =
        (0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| complex_value(m[(i, j)])).collect())).collect();
    json!({ "n": m.nrows(), "entries": entries })
}

/// Catalog entry: the family, its matrix and its expected splitting.
pub fn catalog_family_to_json(f: &PerturbationFamily) -> Value {
    json!({
        "name": f.name(),
        "partition": f.partition.sizes(),
        "constraint": f.constraint,
        "generic": f.is_generic(),
        "direction": f.direction.iter().map(|(k, c)| (k.clone(), scalar_value(c))).collect::<Map<_, _>>(),
        "matrix": matrix_to_json(&f.matrix),
        "expected": report_to_json(&f.expected),
    })
}

/// The parts of a catalog entry that survive serialization.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub partition: JordanPartition,
    pub constraint: String,
    pub direction: BTreeMap<String, GaussianRational>,
    pub matrix: PolyMatrix<GaussianRational>,
    pub expected: SplittingReport,
}

pub fn catalog_entry_from_json(v: &Value, path: &str) -> Result<CatalogEntry> {
    let obj = object(v, path)?;
    let sub = |k: &str| format!("{path}.{k}");
    let partition = JordanPartition::new(usize_list(field(obj, "partition", path)?, &sub("partition"))?)
        .map_err(|e| err(&sub("partition"), e.to_string()))?;
    let direction = object(field(obj, "direction", path)?, &sub("direction"))?
        .iter()
        .map(|(k, c)| Ok((k.clone(), read_scalar(c, &format!("{}.{k}", sub("direction")))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CatalogEntry {
        partition,
        constraint: string(field(obj, "constraint", path)?, &sub("constraint"))?.to_string(),
        direction,
        matrix: matrix_from_json(field(obj, "matrix", path)?, &sub("matrix"))?,
        expected: report_from_json(field(obj, "expected", path)?, &sub("expected"))?,
    })
}

/// Tool, version, seed and tolerances of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
}

impl Provenance {
    pub fn current(seed: Option<u64>, tolerances: BTreeMap<String, f64>) -> Self {
        Self { tool: "nhdegen".into(), version: env!("CARGO_PKG_VERSION").into(), seed, tolerances }
    }
}

/// Output of one analysis or verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub splitting: SplittingReport,
    pub polygon: Option<NewtonPolygon>,
    pub verification: Option<VerificationResult>,
    pub braid: Option<BraidPermutation>,
    pub provenance: Provenance,
}

pub fn run_report_to_json(r: &RunReport) -> Value {
    let p = &r.provenance;
    json!({
        "splitting": report_to_json(&r.splitting),
        "polygon": r.polygon.as_ref().map_or(Value::Null, polygon_to_json),
        "verification": r.verification.as_ref().map_or(Value::Null, verification_to_json),
        "braid": r.braid.as_ref().map_or(Value::Null, braid_to_json),
        "provenance": {
            "tool": p.tool,
            "version": p.version,
            "seed": p.seed,
            "tolerances": p.tolerances.iter().map(|(k, v)| (k.clone(), float_value(*v))).collect::<Map<_, _>>(),
        },
    })
}

pub fn run_report_from_json(v: &Value) -> Result<RunReport> {
    let obj = object(v, "$")?;
    let opt = |k: &str| obj.get(k).filter(|v| !v.is_null());
    let ppath = "$.provenance";
    let p = object(field(obj, "provenance", "$")?, ppath)?;
    let tpath = format!("{ppath}.tolerances");
    let tolerances = object(field(p, "tolerances", ppath)?, &tpath)?
        .iter()
        .map(|(k, v)| Ok((k.clone(), float(v, &format!("{tpath}.{k}"))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let seed = match p.get("seed") {
        None | Some(Value::Null) => None,
        Some(s) => Some(uint(s, &format!("{ppath}.seed"))?),
    };
    Ok(RunReport {
        splitting: report_from_json(field(obj, "splitting", "$")?, "$.splitting")?,
        polygon: opt("polygon").map(|v| polygon_from_json(v, "$.polygon")).transpose()?,
        verification: opt("verification").map(|v| verification_from_json(v, "$.verification")).transpose()?,
        braid: opt("braid").map(|v| braid_from_json(v, "$.braid")).transpose()?,
        provenance: Provenance {
            tool: string(field(p, "tool", ppath)?, &format!("{ppath}.tool"))?.to_string(),
            version: string(field(p, "version", ppath)?, &format!("{ppath}.version"))?.to_string(),
            seed,
            tolerances,
        },
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::catalog_families;
    use crate::models::{build, effective_liouvillian_example};
    use crate::numeric::{fit_exponents, FitOptions, SampleGrid};
    use crate::tropical::newton_polygon;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn scalar_poly_round_trip() {
        let p = ScalarPoly::from_terms([(0, g(1, -2)), (3, GaussianRational::ratio(-5, 7))], None);
        let v = scalar_poly_to_json(&p);
        assert_eq!(v, json!([{"exp": 0, "re": "1", "im": "-2"}, {"exp": 3, "re": "-5/7", "im": "0"}]));
        assert_eq!(scalar_poly_from_json::<GaussianRational>(&v, "$").unwrap(), p);
        let q = p.truncated(5);
        let back: ScalarPoly<GaussianRational> = scalar_poly_from_json(&scalar_poly_to_json(&q), "$").unwrap();
        assert_eq!(back, q);
        assert_eq!(back.trunc(), Some(5));
    }

    #[test]
    fn parse_errors_carry_paths() {
        let v = json!({"n": 2, "entries": [[[], []], [[{"exp": 0, "re": "x"}], []]]});
        let e = matrix_from_json::<GaussianRational>(&v, "$").unwrap_err();
        assert_eq!(e, err("$.entries[1][0][0].re", "not a rational: \"x\""));
        let v = json!({"n": 2, "entries": [[[], []]]});
        assert!(matches!(matrix_from_json::<GaussianRational>(&v, "$"), Err(Error::Parse { path, .. }) if path == "$.entries"));
        let v = json!({"coeffs": [[{"exp": 0, "re": "2"}], []]});
        assert!(matches!(exact_input_from_json(&v), Err(Error::Parse { path, .. }) if path == "$.coeffs"));
        assert!(exact_input_from_json(&json!({"entries": [], "coeffs": []})).is_err());
        assert!(parse_document("{").is_err());
    }

    #[test]
    fn quadratic_matrices_round_trip() {
        let m = build("effective_liouvillian", &BTreeMap::new()).unwrap();
        let crate::models::Realization::Matrix(exact) = &m.realization else { unreachable!() };
        let v = exact_matrix_to_json(exact);
        assert_eq!(v["radicand"], json!(2));
        assert_eq!(&exact_matrix_from_json(&v, "$").unwrap(), exact);
        let mut wrong = v.clone();
        wrong["radicand"] = json!(3);
        assert!(exact_matrix_from_json(&wrong, "$").is_err());
        wrong.as_object_mut().unwrap().remove("radicand");
        assert!(exact_matrix_from_json(&wrong, "$").is_err());
    }

    #[test]
    fn charpoly_input() {
        // λ² − t
        let v = json!({"n": 2, "coeffs": [[{"exp": 0, "re": "1"}], [], [{"exp": 1, "re": "-1"}]]});
        let ExactInput::CharPoly(c) = exact_input_from_json(&v).unwrap() else { panic!() };
        let r = c.analyze().unwrap().report;
        assert_eq!(r, SplittingReport::expect(2, &[(1, 2, 2)], 0));
        let back = exact_charpoly_to_json(&c);
        assert_eq!(back["coeffs"][2], json!([{"exp": 1, "re": "-1", "im": "0"}]));
        assert_eq!(exact_charpoly_from_json(&back, "$").unwrap(), c);
    }

    #[test]
    fn report_and_polygon_round_trip() {
        for n in 2..=4 {
            for f in catalog_families(n, crate::jordan::DEFAULT_SEED).unwrap() {
                let c = crate::charpoly::charpoly_checked(&f.matrix).unwrap();
                let p = newton_polygon(&c);
                assert_eq!(polygon_from_json(&polygon_to_json(&p), "$").unwrap(), p);
                assert_eq!(report_from_json(&report_to_json(&f.expected), "$").unwrap(), f.expected);
                let v = catalog_family_to_json(&f);
                let e = catalog_entry_from_json(&v, "$").unwrap();
                assert_eq!(e.matrix, f.matrix);
                assert_eq!(e.direction, f.direction);
            }
        }
        let bad = json!({"roots": [{"omega": "1/2", "mult": 2}], "zero_roots": 0, "n": 3});
        assert!(report_from_json(&bad, "$").is_err());
    }

    #[test]
    fn run_report_round_trip() {
        let m = effective_liouvillian_example().unwrap();
        let a = m.analyze().unwrap();
        let family = m.spectral().unwrap();
        let grid = SampleGrid::new(1e-2, 0.5, 12, 0.1).unwrap();
        let ver = fit_exponents(family.as_ref(), m.expected.as_ref().unwrap(), &grid, &FitOptions::default()).unwrap();
        let report = RunReport {
            splitting: a.report,
            polygon: Some(a.polygon),
            verification: Some(ver),
            braid: Some(BraidPermutation { permutation: vec![1, 0, 2], cycle_lengths: vec![2, 1], zero_tracks: vec![2] }),
            provenance: Provenance::current(Some(7), BTreeMap::from([("fit".to_string(), 0.05)])),
        };
        let v = run_report_to_json(&report);
        let back = run_report_from_json(&v).unwrap();
        assert_eq!(run_report_to_json(&back), v);
        assert_eq!(to_pretty(&v), to_pretty(&run_report_to_json(&back)));
    }

    #[test]
    fn jordan_and_numeric_matrix_round_trip() {
        let s = JordanStructure {
            eigenvalue: Complex::new(0.5, -1.0),
            partition: JordanPartition::new(vec![2, 1]).unwrap(),
            rank_sequence: vec![3, 1, 0],
        };
        assert_eq!(jordan_from_json(&jordan_to_json(&s), "$").unwrap(), s);
        let m = nalgebra::DMatrix::from_fn(3, 3, |i, j| Complex::new(i as f64, j as f64 * 0.25));
        assert_eq!(numeric_matrix_from_json(&numeric_matrix_to_json(&m), "$").unwrap(), m);
        let plain = json!({"entries": [[0, 1], ["1/2", {"im": 2}]]});
        let m = numeric_matrix_from_json(&plain, "$").unwrap();
        assert_eq!(m[(1, 0)], Complex::new(0.5, 0.0));
        assert_eq!(m[(1, 1)], Complex::new(0.0, 2.0));
    }
}
