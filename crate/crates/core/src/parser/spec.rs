//! Oracle specification files.
//!
//! ```text
//! # the ideal <3, x^2 + 1>
//! kind=pg_ideal
//! p=3
//! g=x^2+1
//! override M: 2x-1 = tt
//! override nu: x = 2
//! ```
//!
//! Keys: `kind`, `p`, `g`, `value`, `nu`, `members` (`;`-separated), `default`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::{format_poly, parse_poly, ParseError};
use crate::algebra::{is_prime, Integer, ModPoly, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleKind {
    /// The ideal `<p, g>`: membership by divisibility in `F_p[X]`, `nu` by
    /// inversion modulo `g`.
    PgIdeal { p: Integer, g: Poly },
    /// The principal ideal `<g>` over `Z`.
    Principal { g: Poly, nu: Poly },
    Constant { value: bool, nu: Poly },
    /// Members listed explicitly; everything else gets `default`.
    Table { members: Vec<Poly>, default: bool, nu: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverrideLine {
    Member(Poly, bool),
    Nu(Poly, Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSpec {
    pub kind: OracleKind,
    pub overrides: Vec<OverrideLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: expected `key=value` or an override line")]
    BadLine { line: usize },
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: key `{key}` is not valid here")]
    UnexpectedKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("p = {0} is not prime")]
    CompositeModulus(Integer),
    #[error("g is zero modulo p")]
    GeneratorVanishes,
    #[error("line {line}: malformed polynomial in `{key}`: {source}")]
    MalformedPoly {
        line: usize,
        key: String,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: malformed integer {text:?}")]
    MalformedInteger { line: usize, text: String },
    #[error("line {line}: expected tt or ff, got {text:?}")]
    MalformedBool { line: usize, text: String },
    #[error("line {line}: override target and value disagree")]
    TypeMismatch { line: usize },
    #[error("duplicate table member {0}")]
    DuplicateMember(String),
}

/// `tt`/`ff`, also `true`/`false`.
pub fn parse_bool(text: &str) -> Option<bool> {
    match text.trim() {
        "tt" | "true" => Some(true),
        "ff" | "false" => Some(false),
        _ => None,
    }
}

fn poly_at(line: usize, key: &str, text: &str) -> Result<Poly, SpecError> {
    parse_poly(text).map_err(|source| SpecError::MalformedPoly {
        line,
        key: key.to_string(),
        source,
    })
}

/// Parse one `override ...` line body (everything after the keyword).
pub(crate) fn parse_override(line: usize, body: &str) -> Result<OverrideLine, SpecError> {
    let (target, rest) = body.split_once(':').ok_or(SpecError::BadLine { line })?;
    let (key, value) = rest.split_once('=').ok_or(SpecError::BadLine { line })?;
    let key = poly_at(line, "override", key)?;
    match target.trim() {
        "M" | "m" => {
            let v = parse_bool(value).ok_or(SpecError::TypeMismatch { line })?;
            Ok(OverrideLine::Member(key, v))
        }
        "nu" => {
            if parse_bool(value).is_some() {
                return Err(SpecError::TypeMismatch { line });
            }
            Ok(OverrideLine::Nu(key, poly_at(line, "override", value)?))
        }
        _ => Err(SpecError::BadLine { line }),
    }
}

pub fn parse_oracle_spec(text: &str) -> Result<OracleSpec, SpecError> {
    let mut pairs: Vec<(usize, String, String)> = Vec::new();
    let mut overrides = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(body) = content.strip_prefix("override") {
            overrides.push(parse_override(line, body)?);
            continue;
        }
        let (k, v) = content.split_once('=').ok_or(SpecError::BadLine { line })?;
        let k = k.trim().to_string();
        if pairs.iter().any(|(_, seen, _)| *seen == k) {
            return Err(SpecError::DuplicateKey { line, key: k });
        }
        pairs.push((line, k, v.trim().to_string()));
    }

    let kind_name = pairs
        .iter()
        .find(|(_, k, _)| k == "kind")
        .map(|(_, _, v)| v.clone())
        .ok_or(SpecError::MissingKey("kind"))?;
    let allowed: &[&str] = match kind_name.as_str() {
        "pg_ideal" => &["kind", "p", "g"],
        "principal" => &["kind", "g", "nu"],
        "constant" => &["kind", "value", "nu"],
        "table" => &["kind", "members", "default", "nu"],
        other => return Err(SpecError::UnknownKind(other.to_string())),
    };
    if let Some((line, key, _)) = pairs.iter().find(|(_, k, _)| !allowed.contains(&k.as_str())) {
        return Err(SpecError::UnexpectedKey { line: *line, key: key.clone() });
    }
    let get = |key: &str| pairs.iter().find(|(_, k, _)| k == key);
    let poly_key = |key: &'static str| -> Result<Option<Poly>, SpecError> {
        get(key).map(|(line, _, v)| poly_at(*line, key, v)).transpose()
    };
    let nu = poly_key("nu")?.unwrap_or_else(Poly::zero);

    let kind = match kind_name.as_str() {
        "pg_ideal" => {
            let (line, _, ptext) = get("p").ok_or(SpecError::MissingKey("p"))?;
            let p: Integer = ptext.parse().map_err(|_| SpecError::MalformedInteger {
                line: *line,
                text: ptext.clone(),
            })?;
            let g = poly_key("g")?.ok_or(SpecError::MissingKey("g"))?;
            if !is_prime(&p) || p < Integer::from(2) {
                return Err(SpecError::CompositeModulus(p));
            }
            if ModPoly::reduce(&g, &p).expect("p is prime").is_zero() {
                return Err(SpecError::GeneratorVanishes);
            }
            OracleKind::PgIdeal { p, g }
        }
        "principal" => {
            let g = poly_key("g")?.ok_or(SpecError::MissingKey("g"))?;
            OracleKind::Principal { g, nu }
        }
        "constant" => {
            let (line, _, v) = get("value").ok_or(SpecError::MissingKey("value"))?;
            let value = parse_bool(v).ok_or_else(|| SpecError::MalformedBool {
                line: *line,
                text: v.clone(),
            })?;
            OracleKind::Constant { value, nu }
        }
        _ => {
            let mut members = Vec::new();
            if let Some((line, _, v)) = get("members") {
                let mut seen = HashSet::new();
                for item in v.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let m = poly_at(*line, "members", item)?;
                    if !seen.insert(m.clone()) {
                        return Err(SpecError::DuplicateMember(format_poly(&m)));
                    }
                    members.push(m);
                }
            }
            let default = match get("default") {
                Some((line, _, v)) => parse_bool(v).ok_or_else(|| SpecError::MalformedBool {
                    line: *line,
                    text: v.clone(),
                })?,
                None => false,
            };
            OracleKind::Table { members, default, nu }
        }
    };
    Ok(OracleSpec { kind, overrides })
}

fn tf(b: bool) -> &'static str {
    if b {
        "tt"
    } else {
        "ff"
    }
}

impl fmt::Display for OverrideLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OverrideLine::Member(k, v) => write!(f, "override M: {} = {}", format_poly(k), tf(*v)),
            OverrideLine::Nu(k, v) => {
                write!(f, "override nu: {} = {}", format_poly(k), format_poly(v))
            }
        }
    }
}

/// Renders the spec back to the file format accepted by [`parse_oracle_spec`].
impl fmt::Display for OracleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OracleKind::PgIdeal { p, g } => {
                writeln!(f, "kind=pg_ideal\np={p}\ng={}", format_poly(g))?;
            }
            OracleKind::Principal { g, nu } => {
                writeln!(f, "kind=principal\ng={}\nnu={}", format_poly(g), format_poly(nu))?;
            }
            OracleKind::Constant { value, nu } => {
                writeln!(f, "kind=constant\nvalue={}\nnu={}", tf(*value), format_poly(nu))?;
            }
            OracleKind::Table { members, default, nu } => {
                let list: Vec<String> = members.iter().map(format_poly).collect();
                writeln!(
                    f,
                    "kind=table\nmembers={}\ndefault={}\nnu={}",
                    list.join("; "),
                    tf(*default),
                    format_poly(nu)
                )?;
            }
        }
        for o in &self.overrides {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}
