//! Version-1 JSON documents. Scalars are strings in the element grammar;
//! sizes and degrees are JSON integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use super::CliError;
use crate::algebra::{parse_element, BaseField, Matrix, Ring, Scalar};
use crate::complexes::{ChainComplex, ChainMap, ModulePresentation, TorModule};
use crate::error::Error;
use crate::lifting::ShortenData;
use crate::localize::{CohnTriple, OreFraction, SigmaSet};
use crate::ltheory::{Epsilon, LinkingForm, Side, Structure, TorsionPresentation};

pub const VERSION: &str = "1";

type Parsed<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub ring: Ring,
    pub sigma: Option<SigmaSet>,
    pub payload: Payload,
}

/// A complex under a commutative ring with a σ header has entries in the
/// fraction field; the entries must lie in σ⁻¹R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Matrix(Matrix),
    Triple(CohnTriple),
    Fraction(OreFraction),
    Complex(ChainComplex),
    ChainMap(ChainMap),
    Form(Structure),
    LinkingForm(LinkingForm),
    Module(TorModule),
    Shorten(ShortenData),
}

impl Payload {
    pub fn name(&self) -> &'static str {
        match self {
            Payload::Matrix(_) => "matrix",
            Payload::Triple(_) => "triple",
            Payload::Fraction(_) => "fraction",
            Payload::Complex(_) => "complex",
            Payload::ChainMap(_) => "chain_map",
            Payload::Form(_) => "form",
            Payload::LinkingForm(_) => "linking_form",
            Payload::Module(_) => "module",
            Payload::Shorten(_) => "shorten",
        }
    }
}

fn schema(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Semantic { kind: "schema", message: format!("{path}: {msg}") }
}

/// Library errors raised while re-checking invariants are semantic.
fn invariant(e: Error) -> CliError {
    CliError::Semantic { kind: e.kind(), message: e.to_string() }
}

fn object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Parsed<&'a Map<String, Value>> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(schema(path, format!("unknown key {k:?}")));
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Parsed<&'a Value> {
    obj.get(key).ok_or_else(|| schema(path, format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn int(v: &Value, path: &str) -> Parsed<i64> {
    v.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

fn size(v: &Value, path: &str) -> Parsed<usize> {
    v.as_u64().and_then(|n| usize::try_from(n).ok()).ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

fn string<'a>(v: &'a Value, path: &str) -> Parsed<&'a str> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

pub fn parse_ring(v: &Value) -> Parsed<Ring> {
    let path = "ring";
    let obj = object(v, path, &["kind", "p", "base", "vars"])?;
    let ring = match string(field(obj, path, "kind")?, "ring.kind")? {
        "Z" => Ring::Integers,
        "Q" => Ring::Rationals,
        "Fp" => {
            let p = field(obj, path, "p")?.as_u64().ok_or_else(|| schema("ring.p", "expected a prime"))?;
            Ring::prime_field(p).map_err(invariant)?
        }
        "free" => {
            let base = match string(field(obj, path, "base")?, "ring.base")? {
                "Q" => BaseField::Rationals,
                s => match s.strip_prefix('F').and_then(|p| p.parse::<u64>().ok()) {
                    Some(p) => BaseField::PrimeField(p),
                    None => return Err(schema("ring.base", format!("expected \"Q\" or \"F<p>\", got {s:?}"))),
                },
            };
            let vars = size(field(obj, path, "vars")?, "ring.vars")?;
            if vars > 9 {
                return Err(schema("ring.vars", "at most 9 variables"));
            }
            Ring::free_algebra(base, vars).map_err(invariant)?
        }
        k => return Err(schema("ring.kind", format!("unknown ring kind {k:?}"))),
    };
    Ok(ring)
}

pub fn print_ring(ring: Ring) -> Value {
    match ring {
        Ring::Integers => json!({"kind": "Z"}),
        Ring::Rationals => json!({"kind": "Q"}),
        Ring::PrimeField(p) => json!({"kind": "Fp", "p": p}),
        Ring::FreeAlgebra { base, num_vars } => json!({"kind": "free", "base": base.to_string(), "vars": num_vars}),
    }
}

pub fn parse_sigma(v: &Value, ring: Ring) -> Parsed<SigmaSet> {
    let path = "sigma";
    let obj = object(v, path, &["kind", "generators", "matrices"])?;
    match string(field(obj, path, "kind")?, "sigma.kind")? {
        "central" => {
            let gens = array(field(obj, path, "generators")?, "sigma.generators")?
                .iter()
                .enumerate()
                .map(|(i, g)| scalar(g, ring, &format!("sigma.generators[{i}]")))
                .collect::<Parsed<Vec<_>>>()?;
            SigmaSet::central(ring, gens).map_err(invariant)
        }
        "nonzero" => SigmaSet::nonzero(ring).map_err(invariant),
        "augmentation" => SigmaSet::augmentation(ring).map_err(invariant),
        "matrices" => {
            let ms = array(field(obj, path, "matrices")?, "sigma.matrices")?
                .iter()
                .enumerate()
                .map(|(i, m)| matrix(m, ring, &format!("sigma.matrices[{i}]"), None))
                .collect::<Parsed<Vec<_>>>()?;
            SigmaSet::matrices(ring, ms).map_err(invariant)
        }
        k => Err(schema("sigma.kind", format!("unknown sigma kind {k:?}"))),
    }
}

pub fn print_sigma(sigma: &SigmaSet) -> Value {
    match sigma {
        SigmaSet::Central { generators, .. } => {
            json!({"kind": "central", "generators": generators.iter().map(|g| g.to_string()).collect::<Vec<_>>()})
        }
        SigmaSet::NonZero { .. } => json!({"kind": "nonzero"}),
        SigmaSet::Matrices { ring: Ring::FreeAlgebra { .. }, matrices } if matrices.is_empty() => {
            json!({"kind": "augmentation"})
        }
        SigmaSet::Matrices { matrices, .. } => {
            json!({"kind": "matrices", "matrices": matrices.iter().map(print_matrix).collect::<Vec<_>>()})
        }
    }
}

fn scalar(v: &Value, ring: Ring, path: &str) -> Parsed<Scalar> {
    let s = string(v, path)?;
    parse_element(ring, s).map_err(|e| schema(path, e))
}

/// `shape` disambiguates matrices with no rows.
fn matrix(v: &Value, ring: Ring, path: &str, shape: Option<(usize, usize)>) -> Parsed<Matrix> {
    let rows = array(v, path)?;
    let cols = match rows.first() {
        Some(r) => array(r, &format!("{path}[0]"))?.len(),
        None => shape.map_or(0, |s| s.1),
    };
    let entries = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, &format!("{path}[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| scalar(x, ring, &format!("{path}[{i}][{j}]")))
                .collect::<Parsed<Vec<_>>>()
        })
        .collect::<Parsed<Vec<_>>>()?;
    let m = Matrix::from_rows(ring, cols, entries).map_err(|e| schema(path, e))?;
    if let Some(expected) = shape {
        if m.shape() != expected {
            return Err(CliError::Semantic {
                kind: "shape",
                message: format!("{path}: expected {}x{}, got {}x{}", expected.0, expected.1, m.rows(), m.cols()),
            });
        }
    }
    Ok(m)
}

pub fn print_matrix(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn rational(v: &Value, path: &str) -> Parsed<BigRational> {
    Ok(scalar(v, Ring::Rationals, path)?.to_rational().expect("rational"))
}

/// A JSON integer when it fits, a string otherwise.
pub fn print_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) => json!(k),
        None => Value::String(n.to_string()),
    }
}

fn complex(v: &Value, ring: Ring, path: &str) -> Parsed<ChainComplex> {
    let obj = object(v, path, &["lo", "ranks", "diffs"])?;
    let lo = int(field(obj, path, "lo")?, &format!("{path}.lo"))?;
    let ranks = array(field(obj, path, "ranks")?, &format!("{path}.ranks"))?
        .iter()
        .enumerate()
        .map(|(i, r)| size(r, &format!("{path}.ranks[{i}]")))
        .collect::<Parsed<Vec<_>>>()?;
    let raw = array(field(obj, path, "diffs")?, &format!("{path}.diffs"))?;
    if raw.len() != ranks.len().saturating_sub(1) {
        return Err(invariant(Error::Length { expected: ranks.len().saturating_sub(1), actual: raw.len() }));
    }
    let diffs = raw
        .iter()
        .enumerate()
        .map(|(i, d)| matrix(d, ring, &format!("{path}.diffs[{i}]"), Some((ranks[i], ranks[i + 1]))))
        .collect::<Parsed<Vec<_>>>()?;
    ChainComplex::new(ring, lo, ranks, diffs).map_err(invariant)
}

pub fn print_complex(c: &ChainComplex) -> Value {
    json!({
        "lo": c.lo(),
        "ranks": c.ranks(),
        "diffs": c.diffs().iter().map(print_matrix).collect::<Vec<_>>(),
    })
}

fn chain_map(v: &Value, ring: Ring, path: &str) -> Parsed<ChainMap> {
    let obj = object(v, path, &["source", "target", "lo", "components"])?;
    let source = complex(field(obj, path, "source")?, ring, &format!("{path}.source"))?;
    let target = complex(field(obj, path, "target")?, ring, &format!("{path}.target"))?;
    let lo = int(field(obj, path, "lo")?, &format!("{path}.lo"))?;
    let components = array(field(obj, path, "components")?, &format!("{path}.components"))?
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let n = lo + i as i64;
            matrix(m, ring, &format!("{path}.components[{i}]"), Some((target.rank(n), source.rank(n))))
        })
        .collect::<Parsed<Vec<_>>>()?;
    ChainMap::new(source, target, lo, components).map_err(invariant)
}

pub fn print_chain_map(f: &ChainMap) -> Value {
    let (s, t) = (f.source(), f.target());
    let (lo, hi) = match (s.support(), t.support()) {
        (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => (0, -1),
    };
    json!({
        "source": print_complex(s),
        "target": print_complex(t),
        "lo": lo,
        "components": (lo..=hi).map(|n| print_matrix(&f.component(n))).collect::<Vec<_>>(),
    })
}

fn epsilon(v: &Value, path: &str) -> Parsed<Epsilon> {
    Epsilon::from_i64(int(v, path)?).map_err(|e| schema(path, e))
}

fn side(v: &Value, path: &str) -> Parsed<Side> {
    match string(v, path)? {
        "symmetric" => Ok(Side::Symmetric),
        "quadratic" => Ok(Side::Quadratic),
        s => Err(schema(path, format!("expected \"symmetric\" or \"quadratic\", got {s:?}"))),
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Symmetric => "symmetric",
        Side::Quadratic => "quadratic",
    }
}

/// Either `{"matrix", "eps", "side"?}` for a form on a single module or
/// the full `{"complex", "eps", "n", "side", "parts"}`, where `parts[s]`
/// lists `{"p", "block"}` with `block` the `(p, q)` component.
fn form(v: &Value, ring: Ring, path: &str) -> Parsed<Structure> {
    let obj = object(v, path, &["matrix", "complex", "eps", "n", "side", "parts"])?;
    let eps = epsilon(field(obj, path, "eps")?, &format!("{path}.eps"))?;
    let sd = match obj.get("side") {
        Some(s) => side(s, &format!("{path}.side"))?,
        None => Side::Symmetric,
    };
    if let Some(m) = obj.get("matrix") {
        let m = matrix(m, ring, &format!("{path}.matrix"), None)?;
        return Structure::form(&m, eps, sd).map_err(invariant);
    }
    let c = complex(field(obj, path, "complex")?, ring, &format!("{path}.complex"))?;
    let n = int(field(obj, path, "n")?, &format!("{path}.n"))?;
    let parts = array(field(obj, path, "parts")?, &format!("{path}.parts"))?;
    let mut blocks = Vec::with_capacity(parts.len());
    for (s, part) in parts.iter().enumerate() {
        let m = match sd {
            Side::Symmetric => n + s as i64,
            Side::Quadratic => n - s as i64,
        };
        let mut bs = Vec::new();
        for (i, b) in array(part, &format!("{path}.parts[{s}]"))?.iter().enumerate() {
            let bp = format!("{path}.parts[{s}][{i}]");
            let bo = object(b, &bp, &["p", "block"])?;
            let p = int(field(bo, &bp, "p")?, &format!("{bp}.p"))?;
            let shape = (c.rank(m - p), c.rank(p));
            bs.push((p, matrix(field(bo, &bp, "block")?, ring, &format!("{bp}.block"), Some(shape))?));
        }
        blocks.push(bs);
    }
    Structure::from_blocks(&c, eps, n, sd, &blocks).map_err(invariant)
}

pub fn print_form(st: &Structure) -> Value {
    let degrees: Vec<i64> = st.complex.degrees().collect();
    let parts: Vec<Value> = (0..st.part_count())
        .map(|s| {
            Value::Array(
                degrees
                    .iter()
                    .filter_map(|&p| {
                        let b = st.block(s, p);
                        (!b.is_zero()).then(|| json!({"p": p, "block": print_matrix(&b)}))
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "complex": print_complex(&st.complex),
        "eps": st.eps.value(),
        "n": st.n,
        "side": side_name(st.side),
        "parts": parts,
    })
}

fn linking_form(v: &Value, path: &str) -> Parsed<LinkingForm> {
    let obj = object(v, path, &["presentation", "pairing", "eps"])?;
    let s = matrix(field(obj, path, "presentation")?, Ring::Integers, &format!("{path}.presentation"), None)?;
    let module = TorsionPresentation::new(s).map_err(invariant)?;
    let pairing = array(field(obj, path, "pairing")?, &format!("{path}.pairing"))?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, &format!("{path}.pairing[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("{path}.pairing[{i}][{j}]")))
                .collect::<Parsed<Vec<_>>>()
        })
        .collect::<Parsed<Vec<_>>>()?;
    let eps = epsilon(field(obj, path, "eps")?, &format!("{path}.eps"))?;
    LinkingForm::new(module, pairing, eps).map_err(invariant)
}

pub fn print_linking_form(l: &LinkingForm) -> Value {
    json!({
        "presentation": print_matrix(l.module().matrix()),
        "pairing": l.pairing().iter().map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "eps": l.eps().value(),
    })
}

fn require_sigma<'a>(sigma: &'a Option<SigmaSet>, what: &str) -> Parsed<&'a SigmaSet> {
    sigma.as_ref().ok_or_else(|| schema("sigma", format!("a {what} payload needs a sigma header")))
}

fn triple(v: &Value, sigma: &SigmaSet, path: &str) -> Parsed<CohnTriple> {
    let ring = sigma.ring();
    let obj = object(v, path, &["f", "s", "g"])?;
    let s = matrix(field(obj, path, "s")?, ring, &format!("{path}.s"), None)?;
    let n = s.rows();
    let f = matrix(field(obj, path, "f")?, ring, &format!("{path}.f"), Some((1, n)))?;
    let g = matrix(field(obj, path, "g")?, ring, &format!("{path}.g"), Some((n, 1)))?;
    CohnTriple::new(sigma, f, s, g).map_err(invariant)
}

pub fn print_triple(t: &CohnTriple) -> Value {
    json!({"f": print_matrix(t.f()), "s": print_matrix(t.s()), "g": print_matrix(t.g())})
}

fn fraction(v: &Value, sigma: &SigmaSet, path: &str) -> Parsed<OreFraction> {
    let ring = sigma.ring();
    let obj = object(v, path, &["num", "den"])?;
    let num = scalar(field(obj, path, "num")?, ring, &format!("{path}.num"))?;
    let den = scalar(field(obj, path, "den")?, ring, &format!("{path}.den"))?;
    OreFraction::new(sigma, num, den).map_err(invariant)
}

pub fn print_fraction(q: &OreFraction) -> Value {
    json!({"num": q.numerator().to_string(), "den": q.denominator().to_string()})
}

/// `{"generators": k, "relations": M}` (a `k × m` matrix) or
/// `{"localized": true}` for σ⁻¹R itself.
fn module(v: &Value, ring: Ring, sigma: &Option<SigmaSet>, path: &str) -> Parsed<TorModule> {
    let obj = object(v, path, &["generators", "relations", "localized"])?;
    if let Some(l) = obj.get("localized") {
        if l != &Value::Bool(true) {
            return Err(schema(&format!("{path}.localized"), "expected true"));
        }
        return Ok(TorModule::Localized(require_sigma(sigma, "localized module")?.clone()));
    }
    let k = size(field(obj, path, "generators")?, &format!("{path}.generators"))?;
    let raw = field(obj, path, "relations")?;
    let rel = matrix(raw, ring, &format!("{path}.relations"), None)?;
    let rel = if k == 0 && rel.rows() == 0 { rel } else if rel.rows() == 0 { Matrix::zeros(ring, k, 0) } else { rel };
    ModulePresentation::new(ring, k, rel).map(TorModule::Presented).map_err(invariant)
}

pub fn print_module(m: &TorModule) -> Value {
    match m {
        TorModule::Presented(p) => json!({"generators": p.generators(), "relations": print_matrix(p.relations())}),
        TorModule::Localized(_) => json!({"localized": true}),
    }
}

/// `{"x", "y", "r": y×x, "g": y×rank C_0}`.
fn shorten(v: &Value, ring: Ring, path: &str) -> Parsed<ShortenData> {
    let obj = object(v, path, &["x", "y", "r", "g"])?;
    let x = size(field(obj, path, "x")?, &format!("{path}.x"))?;
    let y = size(field(obj, path, "y")?, &format!("{path}.y"))?;
    let r = matrix(field(obj, path, "r")?, ring, &format!("{path}.r"), Some((y, x)))?;
    let g = matrix(field(obj, path, "g")?, ring, &format!("{path}.g"), None)?;
    if g.rows() != y && !(y == 0 && g.rows() == 0) {
        return Err(CliError::Semantic { kind: "shape", message: format!("{path}.g: expected {y} rows") });
    }
    Ok(ShortenData { x, y, r, g })
}

pub fn print_shorten(d: &ShortenData) -> Value {
    json!({"x": d.x, "y": d.y, "r": print_matrix(&d.r), "g": print_matrix(&d.g)})
}

const PAYLOADS: [&str; 9] =
    ["matrix", "triple", "fraction", "complex", "chain_map", "form", "linking_form", "module", "shorten"];

/// Parses a document. `ring` and `sigma` supply headers missing from the
/// text; when both are present they must agree.
pub fn parse_document_with(text: &str, ring: Option<&Value>, sigma: Option<&Value>) -> Parsed<Document> {
    let v: Value = serde_json::from_str(text).map_err(CliError::from_json)?;
    document_from_value(&v, ring, sigma)
}

pub fn parse_document(text: &str) -> Parsed<Document> {
    parse_document_with(text, None, None)
}

pub fn document_from_value(v: &Value, ring_default: Option<&Value>, sigma_default: Option<&Value>) -> Parsed<Document> {
    let obj = object(v, "document", &["version", "ring", "sigma", "payload"])?;
    let version = string(field(obj, "document", "version")?, "version")?;
    if version != VERSION {
        return Err(schema("version", format!("unsupported version {version:?}")));
    }
    let ring = match (obj.get("ring"), ring_default) {
        (Some(r), Some(d)) => {
            let (a, b) = (parse_ring(r)?, parse_ring(d)?);
            if a != b {
                return Err(CliError::Semantic { kind: "header-conflict", message: format!("document ring {a} vs --ring {b}") });
            }
            a
        }
        (Some(r), None) | (None, Some(r)) => parse_ring(r)?,
        (None, None) => return Err(schema("document", "missing key \"ring\"")),
    };
    let sigma = match (obj.get("sigma"), sigma_default) {
        (Some(s), Some(d)) => {
            let (a, b) = (parse_sigma(s, ring)?, parse_sigma(d, ring)?);
            if a != b {
                return Err(CliError::Semantic { kind: "header-conflict", message: "document sigma vs --sigma".into() });
            }
            Some(a)
        }
        (Some(s), None) | (None, Some(s)) => Some(parse_sigma(s, ring)?),
        (None, None) => None,
    };
    let pobj = object(field(obj, "document", "payload")?, "payload", &PAYLOADS)?;
    if pobj.len() != 1 {
        return Err(schema("payload", "expected exactly one payload kind"));
    }
    let (kind, body) = pobj.iter().next().expect("one entry");
    let path = format!("payload.{kind}");
    let payload = match kind.as_str() {
        "matrix" => Payload::Matrix(matrix(body, ring, &path, None)?),
        "triple" => Payload::Triple(triple(body, require_sigma(&sigma, "triple")?, &path)?),
        "fraction" => Payload::Fraction(fraction(body, require_sigma(&sigma, "fraction")?, &path)?),
        "complex" => Payload::Complex(complex(body, entry_ring(ring, &sigma)?, &path)?),
        "chain_map" => Payload::ChainMap(chain_map(body, ring, &path)?),
        "form" => Payload::Form(form(body, ring, &path)?),
        "linking_form" => Payload::LinkingForm(linking_form(body, &path)?),
        "module" => Payload::Module(module(body, ring, &sigma, &path)?),
        "shorten" => Payload::Shorten(shorten(body, ring, &path)?),
        _ => unreachable!("filtered by object()"),
    };
    if let Payload::LinkingForm(_) = payload {
        if ring != Ring::Integers {
            return Err(invariant(Error::RingMismatch(ring.to_string(), "Z".into())));
        }
    }
    Ok(Document { ring, sigma, payload })
}

/// Ring of complex entries: the fraction field when a commutative ring
/// carries a σ header.
fn entry_ring(ring: Ring, sigma: &Option<SigmaSet>) -> Parsed<Ring> {
    match sigma {
        Some(_) if ring.is_commutative() => ring.fraction_field().map_err(invariant),
        _ => Ok(ring),
    }
}

pub fn document_to_value(doc: &Document) -> Value {
    let payload = match &doc.payload {
        Payload::Matrix(m) => print_matrix(m),
        Payload::Triple(t) => print_triple(t),
        Payload::Fraction(q) => print_fraction(q),
        Payload::Complex(c) => print_complex(c),
        Payload::ChainMap(f) => print_chain_map(f),
        Payload::Form(s) => print_form(s),
        Payload::LinkingForm(l) => print_linking_form(l),
        Payload::Module(m) => print_module(m),
        Payload::Shorten(d) => print_shorten(d),
    };
    let mut obj = Map::new();
    obj.insert("version".into(), json!(VERSION));
    obj.insert("ring".into(), print_ring(doc.ring));
    if let Some(s) = &doc.sigma {
        obj.insert("sigma".into(), print_sigma(s));
    }
    obj.insert("payload".into(), json!({ doc.payload.name(): payload }));
    Value::Object(obj)
}

pub fn print_document(doc: &Document) -> String {
    serde_json::to_string(&document_to_value(doc)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_matrix() {
        let d = parse_document(r#"{"version":"1","ring":{"kind":"Z"},"payload":{"matrix":[["2","0"],["1","2"]]}}"#)
            .unwrap();
        assert_eq!(d.payload, Payload::Matrix(Matrix::from_i64(Ring::Integers, &[&[2, 0], &[1, 2]])));
        assert_eq!(parse_document(&print_document(&d)).unwrap(), d);
    }

    #[test]
    fn d2_violation() {
        let text = r#"{"version":"1","ring":{"kind":"Z"},"payload":{"complex":{"lo":0,"ranks":[1,1,1],"diffs":[[["1"]],[["1"]]]}}}"#;
        let e = parse_document(text).unwrap_err();
        assert_eq!(e.to_string(), "d2-nonzero at degree 1");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn free_algebra_element() {
        let text = r#"{"version":"1","ring":{"kind":"free","base":"Q","vars":2},"payload":{"matrix":[["2*x1*x2 - 1"]]}}"#;
        let d = parse_document(text).unwrap();
        let Payload::Matrix(m) = &d.payload else { panic!() };
        assert_eq!(m.get(0, 0).to_string(), "-1 + 2*x1*x2");
        assert_eq!(parse_document(&print_document(&d)).unwrap(), d);
    }

    #[test]
    fn syntax_position() {
        let e = parse_document("{\n  \"version\": }").unwrap_err();
        match e {
            CliError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 14)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn headers_and_defaults() {
        let ring = json!({"kind":"Z"});
        let sigma = json!({"kind":"central","generators":["2"]});
        let text = r#"{"version":"1","payload":{"triple":{"f":[["1"]],"s":[["2"]],"g":[["1"]]}}}"#;
        let d = parse_document_with(text, Some(&ring), Some(&sigma)).unwrap();
        assert!(matches!(d.payload, Payload::Triple(_)));
        assert!(parse_document(text).is_err());
        let conflict = r#"{"version":"1","ring":{"kind":"Q"},"payload":{"matrix":[]}}"#;
        assert_eq!(parse_document_with(conflict, Some(&ring), None).unwrap_err().kind(), "header-conflict");
        // s = 3 is not in {2}
        let bad = r#"{"version":"1","payload":{"triple":{"f":[["1"]],"s":[["3"]],"g":[["1"]]}}}"#;
        assert_eq!(parse_document_with(bad, Some(&ring), Some(&sigma)).unwrap_err().kind(), "sigma-rejected");
    }

    #[test]
    fn zero_triple_round_trip() {
        let text = r#"{"version":"1","ring":{"kind":"Z"},"sigma":{"kind":"nonzero"},"payload":{"triple":{"f":[[]],"s":[],"g":[]}}}"#;
        let d = parse_document(text).unwrap();
        let Payload::Triple(t) = &d.payload else { panic!() };
        assert_eq!(t.size(), 0);
        assert_eq!(parse_document(&print_document(&d)).unwrap(), d);
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = parse_document(r#"{"version":"1","ring":{"kind":"Z"},"payload":{"matrix":[],"extra":1}}"#).unwrap_err();
        assert_eq!(e.kind(), "schema");
        assert!(parse_document(r#"{"version":"2","ring":{"kind":"Z"},"payload":{"matrix":[]}}"#).is_err());
    }
}
