use num_bigint::BigInt;
use serde_json::{json, Value};

use super::document::{print_complex, print_int, print_matrix, print_ring, print_triple, Document, Payload};
use super::CliError;
use crate::algebra::{Matrix, Ring, Word};
use crate::complexes::{
    cone, homology, localize_complex, tor, validate_complex, ChainComplex, GroupDescription, HomologyResult,
    LocalComplex,
};
use crate::lifting::{lift_by_clearing, shorten_left, toda_obstruction, verify_lift, ClassStatus, LiftResult, LiftStatus, Witness};
use crate::localize::{ore_op, triple_eq, CohnTriple, OreFraction, OreOp, OreResult, SigmaSet};
use crate::ltheory::{
    boundary_linking_form, double_dual_check, extension_iv, linking_nonsingular, linking_pairing, q_group,
    torsion_dual, witt_metabolic_test, Epsilon, LinkingForm, Side, TorsionPresentation,
};

type Out = std::result::Result<Value, CliError>;

/// Every `(group, action)` pair accepted by [`run`].
pub const COMMANDS: [(&str, &str); 19] = [
    ("localize", "eval"),
    ("localize", "add"),
    ("localize", "mul"),
    ("localize", "eq"),
    ("complex", "validate"),
    ("complex", "homology"),
    ("complex", "cone"),
    ("complex", "tor"),
    ("complex", "localize"),
    ("lift", "clear"),
    ("lift", "verify"),
    ("lift", "shorten"),
    ("lift", "toda"),
    ("ltheory", "qgroup"),
    ("ltheory", "boundary"),
    ("ltheory", "linking"),
    ("ltheory", "dual"),
    ("ltheory", "witt"),
    ("ltheory", "extension"),
];

/// Parameters that are not part of any document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub eps: Epsilon,
    pub degree: i64,
    pub side: Side,
    pub max_i: usize,
    pub bound: u64,
    pub length: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { eps: Epsilon::Plus, degree: 0, side: Side::Symmetric, max_i: 2, bound: crate::ltheory::WITT_BOUND, length: 3 }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn arity(docs: &[Document], n: usize, cmd: &str) -> Result<(), CliError> {
    if docs.len() != n {
        return Err(usage(format!("{cmd} takes {n} document(s), got {}", docs.len())));
    }
    Ok(())
}

fn wrong(doc: &Document, expected: &str) -> CliError {
    usage(format!("expected a {expected} payload, got {}", doc.payload.name()))
}

fn group_json(g: &GroupDescription) -> Value {
    json!({"free": g.free_rank, "torsion": g.torsion.iter().map(print_int).collect::<Vec<_>>()})
}

fn homology_json(h: &HomologyResult) -> Value {
    let groups: Vec<Value> = h
        .groups
        .iter()
        .map(|(n, g)| {
            let mut v = group_json(g);
            v["deg"] = json!(n);
            v
        })
        .collect();
    json!({ "H": groups })
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(print_int).collect())
}

fn triple_of(doc: &Document) -> Result<&CohnTriple, CliError> {
    match &doc.payload {
        Payload::Triple(t) => Ok(t),
        _ => Err(wrong(doc, "triple")),
    }
}

fn matrix_of(doc: &Document) -> Result<&Matrix, CliError> {
    match &doc.payload {
        Payload::Matrix(m) => Ok(m),
        _ => Err(wrong(doc, "matrix")),
    }
}

fn complex_of(doc: &Document) -> Result<&ChainComplex, CliError> {
    match &doc.payload {
        Payload::Complex(c) => Ok(c),
        _ => Err(wrong(doc, "complex")),
    }
}

fn sigma_of(doc: &Document) -> Result<&SigmaSet, CliError> {
    doc.sigma.as_ref().ok_or_else(|| usage("this command needs a sigma header or --sigma"))
}

/// The localized complex a document describes: entries already in the
/// fraction field on commutative rings, localized entrywise otherwise.
fn local_of(doc: &Document) -> Result<LocalComplex, CliError> {
    let c = complex_of(doc)?;
    let sigma = sigma_of(doc)?;
    Ok(if sigma.is_ore() { LocalComplex::ore(sigma, c.clone())? } else { localize_complex(c, sigma)? })
}

fn presentation_of(doc: &Document) -> Result<TorsionPresentation, CliError> {
    if doc.ring != Ring::Integers {
        return Err(usage("torsion presentations are integer matrices"));
    }
    Ok(TorsionPresentation::new(matrix_of(doc)?.clone())?)
}

fn fraction_value(q: &OreFraction) -> Value {
    json!({ "fraction": q.to_field().to_string() })
}

fn words_up_to(alphabet: usize, len: usize) -> Vec<Word> {
    (0..=len).flat_map(|l| Word::all_of_length(alphabet, l)).collect()
}

fn localize(action: &str, docs: &[Document], opts: &Options) -> Out {
    match action {
        "eval" => {
            arity(docs, 1, "localize eval")?;
            match &docs[0].payload {
                Payload::Fraction(q) => Ok(fraction_value(q)),
                Payload::Triple(t) if t.sigma().is_ore() => Ok(fraction_value(&t.eval_ore()?)),
                Payload::Triple(t) => {
                    let rep = t.to_linrep()?;
                    let mut series = Vec::new();
                    for w in words_up_to(rep.alphabet(), opts.length) {
                        let c = rep.coefficient(&w)?;
                        if !c.is_zero() {
                            series.push(json!({"word": w.to_string(), "coefficient": c.to_string()}));
                        }
                    }
                    Ok(json!({"dim": rep.dim(), "series": series}))
                }
                _ => Err(wrong(&docs[0], "triple or fraction")),
            }
        }
        "add" | "mul" | "eq" => {
            arity(docs, 2, &format!("localize {action}"))?;
            if let (Payload::Fraction(a), Payload::Fraction(b)) = (&docs[0].payload, &docs[1].payload) {
                let op = match action {
                    "add" => OreOp::Add,
                    "mul" => OreOp::Mul,
                    _ => OreOp::Eq,
                };
                return Ok(match ore_op(op, a, b)? {
                    OreResult::Fraction(q) => json!({"fraction": super::document::print_fraction(&q)}),
                    OreResult::Bool(e) => json!({"equal": e}),
                });
            }
            let (a, b) = (triple_of(&docs[0])?, triple_of(&docs[1])?);
            Ok(match action {
                "add" => json!({"triple": print_triple(&a.add(b)?)}),
                "mul" => json!({"triple": print_triple(&a.mul(b)?)}),
                _ => json!({"equal": triple_eq(a, b)?}),
            })
        }
        _ => Err(usage(format!("unknown action localize {action}"))),
    }
}

fn complex_cmd(action: &str, docs: &[Document], opts: &Options) -> Out {
    match action {
        "validate" => {
            arity(docs, 1, "complex validate")?;
            let c = complex_of(&docs[0])?;
            validate_complex(c)?;
            if let Some(sigma) = &docs[0].sigma {
                if sigma.is_ore() {
                    LocalComplex::ore(sigma, c.clone())?;
                } else {
                    localize_complex(c, sigma)?.validate()?;
                }
            }
            Ok(json!({"valid": true, "lo": c.lo(), "ranks": c.ranks(), "euler": c.euler_characteristic()}))
        }
        "homology" => {
            arity(docs, 1, "complex homology")?;
            let h = match &docs[0].sigma {
                Some(_) => local_of(&docs[0])?.homology()?,
                None => homology(complex_of(&docs[0])?)?,
            };
            Ok(homology_json(&h))
        }
        "cone" => {
            arity(docs, 1, "complex cone")?;
            let Payload::ChainMap(f) = &docs[0].payload else {
                return Err(wrong(&docs[0], "chain_map"));
            };
            Ok(json!({"complex": print_complex(&cone(f)?)}))
        }
        "tor" => {
            arity(docs, 2, "complex tor")?;
            let module = |d: &Document| match &d.payload {
                Payload::Module(m) => Ok(m.clone()),
                _ => Err(wrong(d, "module")),
            };
            let groups = tor(&module(&docs[0])?, &module(&docs[1])?, opts.max_i)?;
            let out: Vec<Value> = groups
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let mut v = group_json(g);
                    v["i"] = json!(i);
                    v
                })
                .collect();
            Ok(json!({ "Tor": out }))
        }
        "localize" => {
            arity(docs, 1, "complex localize")?;
            let c = complex_of(&docs[0])?;
            let sigma = sigma_of(&docs[0])?;
            match local_of(&docs[0])? {
                LocalComplex::Ore { complex, .. } => {
                    Ok(json!({"ring": print_ring(complex.ring()), "complex": print_complex(&complex)}))
                }
                LocalComplex::Cohn { lo, ranks, diffs, .. } => {
                    let ds: Vec<Value> = diffs
                        .iter()
                        .map(|d| {
                            let (r, k) = d.shape();
                            Value::Array(
                                (0..r).map(|i| Value::Array((0..k).map(|j| print_triple(d.get(i, j))).collect())).collect(),
                            )
                        })
                        .collect();
                    debug_assert_eq!(c.ranks(), ranks.as_slice());
                    Ok(json!({"ring": print_ring(sigma.ring()), "complex": {"lo": lo, "ranks": ranks, "diffs": ds}}))
                }
            }
        }
        _ => Err(usage(format!("unknown action complex {action}"))),
    }
}

fn lift_json(r: &LiftResult) -> Value {
    let witness = match &r.witness {
        Witness::Scaling { factors, units } => json!({"kind": "scaling", "factors": ints(factors), "units": ints(units)}),
        Witness::Shortening { x, y } => json!({"kind": "shortening", "x": x, "y": y}),
    };
    let mut v = json!({"lifted": print_complex(&r.lifted), "witness": witness});
    match &r.status {
        LiftStatus::Verified => v["status"] = json!("verified"),
        LiftStatus::Unverified(why) => {
            v["status"] = json!("unverified");
            v["reason"] = json!(why);
        }
    }
    v
}

fn lift(action: &str, docs: &[Document]) -> Out {
    match action {
        "clear" => {
            arity(docs, 1, "lift clear")?;
            Ok(lift_json(&lift_by_clearing(&local_of(&docs[0])?)?))
        }
        "verify" => {
            arity(docs, 2, "lift verify")?;
            let c = complex_of(&docs[0])?;
            if docs[0].sigma.is_some() {
                return Err(usage("the first document of lift verify is the complex over R (no sigma)"));
            }
            Ok(json!({"verified": verify_lift(c, &local_of(&docs[1])?, None)?}))
        }
        "shorten" => {
            arity(docs, 2, "lift shorten")?;
            let c = complex_of(&docs[0])?;
            let Payload::Shorten(data) = &docs[1].payload else {
                return Err(wrong(&docs[1], "shorten"));
            };
            if docs[0].sigma.is_some() {
                return Err(usage("lift shorten takes the complex over R; put sigma on the shorten document"));
            }
            let mut data = data.clone();
            if data.y == 0 {
                data.g = Matrix::zeros(c.ring(), 0, c.rank(0));
            }
            Ok(lift_json(&shorten_left(c, &data, sigma_of(&docs[1])?)?))
        }
        "toda" => {
            arity(docs, 1, "lift toda")?;
            let report = toda_obstruction(&local_of(&docs[0])?)?;
            let (class, reason) = match &report.class_status {
                ClassStatus::Zero(why) => ("zero", why),
                ClassStatus::Unsupported(why) => ("unsupported", why),
            };
            Ok(json!({"target": group_json(&report.target_group), "class": class, "reason": reason}))
        }
        _ => Err(usage(format!("unknown action lift {action}"))),
    }
}

fn normal_json(l: &LinkingForm) -> Value {
    let nf = l.normalized();
    json!({
        "module": ints(&nf.orders),
        "pairing": nf.pairing.iter().map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// A linking form given directly, or the boundary of a form matrix.
fn linking_of(doc: &Document, eps: Epsilon) -> Result<LinkingForm, CliError> {
    match &doc.payload {
        Payload::LinkingForm(l) => Ok(l.clone()),
        Payload::Matrix(s) => Ok(boundary_linking_form(s, eps)?),
        Payload::Form(st) => Ok(boundary_linking_form(&single_module_form(st)?, st.eps)?),
        _ => Err(wrong(doc, "linking_form, matrix or form")),
    }
}

fn single_module_form(st: &crate::ltheory::Structure) -> Result<Matrix, CliError> {
    if st.n != 0 || st.side != Side::Symmetric || st.complex.support().is_some_and(|s| s != (0, 0)) {
        return Err(usage("boundary forms need a symmetric form on a module in degree 0"));
    }
    Ok(st.block(0, 0))
}

fn ltheory(action: &str, docs: &[Document], opts: &Options) -> Out {
    match action {
        "qgroup" => {
            arity(docs, 1, "ltheory qgroup")?;
            let g = q_group(complex_of(&docs[0])?, opts.eps, opts.degree, opts.side)?;
            Ok(json!({"Q": group_json(&g)}))
        }
        "boundary" => {
            arity(docs, 1, "ltheory boundary")?;
            let l = match &docs[0].payload {
                Payload::Matrix(_) | Payload::Form(_) => linking_of(&docs[0], opts.eps)?,
                _ => return Err(wrong(&docs[0], "matrix or form")),
            };
            Ok(normal_json(&l))
        }
        "linking" => match docs.len() {
            1 => {
                let Payload::LinkingForm(l) = &docs[0].payload else {
                    return Err(wrong(&docs[0], "linking_form"));
                };
                let mut v = normal_json(l);
                v["nonsingular"] = json!(linking_nonsingular(l));
                Ok(v)
            }
            3 => {
                let m = presentation_of(&docs[0])?;
                let q = linking_pairing(&m, matrix_of(&docs[1])?, matrix_of(&docs[2])?)?;
                Ok(json!({"pairing": q.to_string()}))
            }
            n => Err(usage(format!("ltheory linking takes 1 or 3 documents, got {n}"))),
        },
        "dual" => {
            arity(docs, 1, "ltheory dual")?;
            let m = presentation_of(&docs[0])?;
            let d = torsion_dual(&m);
            Ok(json!({
                "presentation": print_matrix(d.matrix()),
                "module": ints(&d.invariant_factors()),
                "double_dual": double_dual_check(&m),
            }))
        }
        "witt" => {
            arity(docs, 1, "ltheory witt")?;
            let l = linking_of(&docs[0], opts.eps)?;
            Ok(json!({"order": print_int(&l.order()), "metabolic": witt_metabolic_test(&l, opts.bound)?}))
        }
        "extension" => {
            if docs.len() < 2 {
                return Err(usage("ltheory extension takes M, N and the lifts v_1..v_k"));
            }
            let m = presentation_of(&docs[0])?;
            let n = presentation_of(&docs[1])?;
            let vs = docs[2..].iter().map(|d| matrix_of(d).cloned()).collect::<Result<Vec<_>, _>>()?;
            let e = extension_iv(&m, &n, &vs)?;
            let c = &e.certificate;
            Ok(json!({
                "presentation": print_matrix(e.l.matrix()),
                "module": ints(&e.l.invariant_factors()),
                "certificate": {
                    "orders": {"L": print_int(&c.order_l), "N": print_int(&c.order_n), "dual_M": print_int(&c.order_dual_m)},
                    "orders_match": c.orders_match,
                    "injective": c.injective,
                    "lifts_killed": c.lifts_killed,
                    "exact": c.is_exact(),
                },
            }))
        }
        _ => Err(usage(format!("unknown action ltheory {action}"))),
    }
}

/// Dispatches one command over the parsed input documents.
pub fn run(group: &str, action: &str, docs: &[Document], opts: &Options) -> Out {
    match group {
        "localize" => localize(action, docs, opts),
        "complex" => complex_cmd(action, docs, opts),
        "lift" => lift(action, docs),
        "ltheory" => ltheory(action, docs, opts),
        _ => Err(usage(format!("unknown command group {group}; expected localize, complex, lift or ltheory"))),
    }
}
