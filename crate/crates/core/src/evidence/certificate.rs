//! The recorded trace of an engine run and its JSON text form.
//!
//! Integers are written as decimal strings, polynomials in canonical text form
//! (`detY` and `adjRow0` in the variable `y`). Fields of phases the run never
//! reached are omitted.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Evidence, Verdict};
use crate::algebra::{Integer, Poly, Var};
use crate::parser::{format_poly, parse_poly_in};

/// One pseudo-division row: `d^k * nuq * x^i + h * f = sum_j a[j] x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub k: u32,
    pub h: Poly,
    pub a: Vec<Integer>,
}

/// One membership decision made during the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub query: Poly,
    pub answer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub f: Option<Poly>,
    pub d: Option<Integer>,
    pub n: Option<usize>,
    pub q: Option<Integer>,
    pub nuq: Option<Poly>,
    pub m: Option<Poly>,
    pub rows: Option<Vec<Row>>,
    /// Determinant of the row matrix, in `Z[Y]`.
    pub det_y: Option<Poly>,
    /// First row of the adjugate, in `Z[Y]`.
    pub adj_row0: Option<Vec<Poly>>,
    /// Sum of the row exponents `k`.
    pub k_total: Option<u64>,
    pub b: Option<Vec<Integer>>,
    /// The combination integer.
    pub big_n: Option<Integer>,
    pub combo_f: Option<Poly>,
    pub combo_m: Option<Poly>,
    pub gpolys: Option<Vec<Poly>>,
    pub unit: Option<i8>,
    pub factors: Option<Vec<Integer>>,
    pub lemma_trace: Vec<TraceEntry>,
    pub outcome: Verdict,
}

impl Certificate {
    /// A certificate with only a trace and outcome.
    pub fn empty(outcome: Verdict) -> Certificate {
        Certificate {
            f: None,
            d: None,
            n: None,
            q: None,
            nuq: None,
            m: None,
            rows: None,
            det_y: None,
            adj_row0: None,
            k_total: None,
            b: None,
            big_n: None,
            combo_f: None,
            combo_m: None,
            gpolys: None,
            unit: None,
            factors: None,
            lemma_trace: Vec::new(),
            outcome,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("certificate is not valid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> CertError {
    CertError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowDoc {
    k: String,
    h: String,
    a: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceDoc {
    query: String,
    answer: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutcomeDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nuq: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<RowDoc>>,
    #[serde(rename = "detY", default, skip_serializing_if = "Option::is_none")]
    det_y: Option<String>,
    #[serde(rename = "adjRow0", default, skip_serializing_if = "Option::is_none")]
    adj_row0: Option<Vec<String>>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    k_total: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<String>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    big_n: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    combo_f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    combo_m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gpolys: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<String>>,
    lemma_trace: Vec<TraceDoc>,
    outcome: OutcomeDoc,
}

fn fx(p: &Poly) -> String {
    format_poly(p)
}

fn ints(v: &[Integer]) -> Vec<String> {
    v.iter().map(Integer::to_string).collect()
}

fn polys(v: &[Poly]) -> Vec<String> {
    v.iter().map(fx).collect()
}

fn outcome_doc(v: &Verdict) -> OutcomeDoc {
    let mut doc = OutcomeDoc {
        kind: "not_maximal".into(),
        p: None,
        case: None,
        lambda: None,
        a: None,
        b: None,
    };
    match v {
        Verdict::Prime(p) => {
            doc.kind = "prime".into();
            doc.p = Some(p.to_string());
        }
        Verdict::NotMaximal(e) => {
            doc.case = Some(format!("case{}", e.case_number()));
            match e {
                Evidence::ZeroNotMember | Evidence::OneIsMember => {}
                Evidence::SumNotMember { a, b } => {
                    doc.a = Some(fx(a));
                    doc.b = Some(fx(b));
                }
                Evidence::MultipleNotMember { lambda, a } => {
                    doc.lambda = Some(fx(lambda));
                    doc.a = Some(fx(a));
                }
                Evidence::NoInverse { a } => doc.a = Some(fx(a)),
            }
        }
    }
    doc
}

pub fn serialize_certificate(c: &Certificate) -> String {
    let doc = CertificateDoc {
        f: c.f.as_ref().map(fx),
        d: c.d.as_ref().map(Integer::to_string),
        n: c.n,
        q: c.q.as_ref().map(Integer::to_string),
        nuq: c.nuq.as_ref().map(fx),
        m: c.m.as_ref().map(fx),
        rows: c.rows.as_ref().map(|rows| {
            rows.iter()
                .map(|r| RowDoc {
                    k: r.k.to_string(),
                    h: fx(&r.h),
                    a: ints(&r.a),
                })
                .collect()
        }),
        det_y: c.det_y.as_ref().map(fx),
        adj_row0: c.adj_row0.as_deref().map(polys),
        k_total: c.k_total.map(|k| k.to_string()),
        b: c.b.as_deref().map(ints),
        big_n: c.big_n.as_ref().map(Integer::to_string),
        combo_f: c.combo_f.as_ref().map(fx),
        combo_m: c.combo_m.as_ref().map(fx),
        gpolys: c.gpolys.as_deref().map(polys),
        unit: c.unit,
        factors: c.factors.as_deref().map(ints),
        lemma_trace: c
            .lemma_trace
            .iter()
            .map(|t| TraceDoc {
                query: fx(&t.query),
                answer: t.answer,
            })
            .collect(),
        outcome: outcome_doc(&c.outcome),
    };
    serde_json::to_string_pretty(&doc).expect("certificate serializes")
}

fn poly_field(field: &str, text: &str, var: Var) -> Result<Poly, CertError> {
    parse_poly_in(text, var).map_err(|e| field_err(field, e.to_string()))
}

fn int_field(field: &str, text: &str) -> Result<Integer, CertError> {
    text.parse::<Integer>()
        .map_err(|_| field_err(field, format!("not a decimal integer: {text:?}")))
}

fn opt<T, U>(v: Option<T>, f: impl FnOnce(T) -> Result<U, CertError>) -> Result<Option<U>, CertError> {
    v.map(f).transpose()
}

fn list<T>(
    field: &str,
    items: Vec<String>,
    f: impl Fn(&str, &str) -> Result<T, CertError>,
) -> Result<Vec<T>, CertError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| f(&format!("{field}[{i}]"), s))
        .collect()
}

fn parse_outcome(doc: OutcomeDoc) -> Result<Verdict, CertError> {
    let need = |v: Option<String>, name: &str| {
        v.ok_or_else(|| field_err(format!("outcome.{name}"), "missing"))
    };
    match doc.kind.as_str() {
        "prime" => {
            let p = need(doc.p, "p")?;
            Ok(Verdict::Prime(int_field("outcome.p", &p)?))
        }
        "not_maximal" => {
            let case = need(doc.case, "case")?;
            let x = |v: Option<String>, name: &str| -> Result<Poly, CertError> {
                let t = need(v, name)?;
                poly_field(&format!("outcome.{name}"), &t, Var::X)
            };
            let e = match case.as_str() {
                "case1" => Evidence::ZeroNotMember,
                "case2" => Evidence::SumNotMember {
                    a: x(doc.a, "a")?,
                    b: x(doc.b, "b")?,
                },
                "case3" => Evidence::MultipleNotMember {
                    lambda: x(doc.lambda, "lambda")?,
                    a: x(doc.a, "a")?,
                },
                "case4" => Evidence::OneIsMember,
                "case5" => Evidence::NoInverse { a: x(doc.a, "a")? },
                other => return Err(field_err("outcome.case", format!("unknown case {other:?}"))),
            };
            Ok(Verdict::NotMaximal(e))
        }
        other => Err(field_err("outcome.kind", format!("unknown kind {other:?}"))),
    }
}

pub fn deserialize_certificate(text: &str) -> Result<Certificate, CertError> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| CertError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let x = |field: &str, t: String| poly_field(field, &t, Var::X);
    let rows = opt(doc.rows, |rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, r)| {
                let k = r
                    .k
                    .parse::<u32>()
                    .map_err(|_| field_err(format!("rows[{i}].k"), "not a small nonnegative integer"))?;
                Ok(Row {
                    k,
                    h: poly_field(&format!("rows[{i}].h"), &r.h, Var::X)?,
                    a: list(&format!("rows[{i}].a"), r.a, int_field)?,
                })
            })
            .collect()
    })?;
    let k_total = opt(doc.k_total, |k| {
        k.parse::<u64>()
            .map_err(|_| field_err("K", "not a nonnegative integer"))
    })?;
    if let Some(u) = doc.unit {
        if u != 1 && u != -1 {
            return Err(field_err("unit", "must be 1 or -1"));
        }
    }
    Ok(Certificate {
        f: opt(doc.f, |t| x("f", t))?,
        d: opt(doc.d, |t| int_field("d", &t))?,
        n: doc.n,
        q: opt(doc.q, |t| int_field("q", &t))?,
        nuq: opt(doc.nuq, |t| x("nuq", t))?,
        m: opt(doc.m, |t| x("m", t))?,
        rows,
        det_y: opt(doc.det_y, |t| poly_field("detY", &t, Var::Y))?,
        adj_row0: opt(doc.adj_row0, |v| list("adjRow0", v, |f, s| poly_field(f, s, Var::Y)))?,
        k_total,
        b: opt(doc.b, |v| list("b", v, int_field))?,
        big_n: opt(doc.big_n, |t| int_field("N", &t))?,
        combo_f: opt(doc.combo_f, |t| x("combo_f", t))?,
        combo_m: opt(doc.combo_m, |t| x("combo_m", t))?,
        gpolys: opt(doc.gpolys, |v| list("gpolys", v, |f, s| poly_field(f, s, Var::X)))?,
        unit: doc.unit,
        factors: opt(doc.factors, |v| list("factors", v, int_field))?,
        lemma_trace: doc
            .lemma_trace
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                Ok(TraceEntry {
                    query: poly_field(&format!("lemma_trace[{i}].query"), &t.query, Var::X)?,
                    answer: t.answer,
                })
            })
            .collect::<Result<_, CertError>>()?,
        outcome: parse_outcome(doc.outcome)?,
    })
}
