//! The pair `(M, nu)`: a total membership predicate on `Z[X]` and a total
//! companion map, with call counters and an override layer on top.

use std::cell::Cell;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

use crate::algebra::{Integer, ModPoly, Poly};
use crate::engine::pseudo_division;
use crate::parser::{OracleKind, OracleSpec, OverrideLine};

/// User-supplied or built-in `(M, nu)`. Both functions must be total and
/// deterministic.
pub trait IdealOracle: Send + Sync {
    fn member(&self, f: &Poly) -> bool;
    fn nu(&self, f: &Poly) -> Poly;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverrideTarget {
    Member,
    Nu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverrideValue {
    Bool(bool),
    Poly(Poly),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("override of {target:?} needs a {expected} value")]
    TypeMismatch {
        target: OverrideTarget,
        expected: &'static str,
    },
}

/// An instrumented oracle. Confined to a single thread; counters use `Cell`.
#[derive(Clone)]
pub struct Oracle {
    base: Arc<dyn IdealOracle>,
    member_overrides: IndexMap<Poly, bool>,
    nu_overrides: IndexMap<Poly, Poly>,
    m_calls: Cell<u64>,
    nu_calls: Cell<u64>,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("member_overrides", &self.member_overrides.len())
            .field("nu_overrides", &self.nu_overrides.len())
            .field("m_calls", &self.m_calls.get())
            .field("nu_calls", &self.nu_calls.get())
            .finish()
    }
}

struct FnOracle<M, N> {
    member: M,
    nu: N,
}

impl<M, N> IdealOracle for FnOracle<M, N>
where
    M: Fn(&Poly) -> bool + Send + Sync,
    N: Fn(&Poly) -> Poly + Send + Sync,
{
    fn member(&self, f: &Poly) -> bool {
        (self.member)(f)
    }
    fn nu(&self, f: &Poly) -> Poly {
        (self.nu)(f)
    }
}

impl Oracle {
    pub fn new(base: impl IdealOracle + 'static) -> Oracle {
        Oracle {
            base: Arc::new(base),
            member_overrides: IndexMap::new(),
            nu_overrides: IndexMap::new(),
            m_calls: Cell::new(0),
            nu_calls: Cell::new(0),
        }
    }

    pub fn from_fns<M, N>(member: M, nu: N) -> Oracle
    where
        M: Fn(&Poly) -> bool + Send + Sync + 'static,
        N: Fn(&Poly) -> Poly + Send + Sync + 'static,
    {
        Oracle::new(FnOracle { member, nu })
    }

    /// Realize a validated spec, including its override lines.
    pub fn from_spec(spec: &OracleSpec) -> Oracle {
        let mut oracle = match &spec.kind {
            OracleKind::PgIdeal { p, g } => Oracle::new(PgIdeal::new(p.clone(), g)),
            OracleKind::Principal { g, nu } => Oracle::new(Principal { g: g.clone(), nu: nu.clone() }),
            OracleKind::Constant { value, nu } => {
                Oracle::new(Constant { value: *value, nu: nu.clone() })
            }
            OracleKind::Table { members, default, nu } => Oracle::new(Table {
                members: members.iter().cloned().collect(),
                default: *default,
                nu: nu.clone(),
            }),
        };
        for o in &spec.overrides {
            oracle.set_override(o.clone());
        }
        oracle
    }

    /// `M(f)`, honoring overrides.
    pub fn membership(&self, f: &Poly) -> bool {
        self.m_calls.set(self.m_calls.get() + 1);
        match self.member_overrides.get(f) {
            Some(&v) => v,
            None => self.base.member(f),
        }
    }

    /// `nu(f)`, honoring overrides.
    pub fn nu_value(&self, f: &Poly) -> Poly {
        self.nu_calls.set(self.nu_calls.get() + 1);
        match self.nu_overrides.get(f) {
            Some(v) => v.clone(),
            None => self.base.nu(f),
        }
    }

    /// A copy of this oracle that differs at `key`, with fresh counters.
    pub fn apply_override(
        &self,
        target: OverrideTarget,
        key: Poly,
        value: OverrideValue,
    ) -> Result<Oracle, OracleError> {
        let line = match (target, value) {
            (OverrideTarget::Member, OverrideValue::Bool(b)) => OverrideLine::Member(key, b),
            (OverrideTarget::Nu, OverrideValue::Poly(v)) => OverrideLine::Nu(key, v),
            (OverrideTarget::Member, _) => {
                return Err(OracleError::TypeMismatch { target, expected: "boolean" })
            }
            (OverrideTarget::Nu, _) => {
                return Err(OracleError::TypeMismatch { target, expected: "polynomial" })
            }
        };
        Ok(self.with_override(line))
    }

    pub fn with_override(&self, line: OverrideLine) -> Oracle {
        let mut next = self.clone();
        next.set_override(line);
        next.reset_counters();
        next
    }

    fn set_override(&mut self, line: OverrideLine) {
        match line {
            OverrideLine::Member(k, v) => {
                self.member_overrides.insert(k, v);
            }
            OverrideLine::Nu(k, v) => {
                self.nu_overrides.insert(k, v);
            }
        }
    }

    /// Overrides in insertion order, membership first.
    pub fn overrides(&self) -> Vec<OverrideLine> {
        self.member_overrides
            .iter()
            .map(|(k, &v)| OverrideLine::Member(k.clone(), v))
            .chain(self.nu_overrides.iter().map(|(k, v)| OverrideLine::Nu(k.clone(), v.clone())))
            .collect()
    }

    /// The same base oracle with no overrides and fresh counters.
    pub fn without_overrides(&self) -> Oracle {
        Oracle {
            base: Arc::clone(&self.base),
            member_overrides: IndexMap::new(),
            nu_overrides: IndexMap::new(),
            m_calls: Cell::new(0),
            nu_calls: Cell::new(0),
        }
    }

    pub fn m_calls(&self) -> u64 {
        self.m_calls.get()
    }

    pub fn nu_calls(&self) -> u64 {
        self.nu_calls.get()
    }

    pub fn reset_counters(&self) {
        self.m_calls.set(0);
        self.nu_calls.set(0);
    }
}

/// `<p, g>` for a prime `p`.
pub struct PgIdeal {
    p: Integer,
    g_bar: ModPoly,
}

impl PgIdeal {
    pub fn new(p: Integer, g: &Poly) -> PgIdeal {
        let g_bar = ModPoly::reduce(g, &p).expect("spec validation guarantees a prime p");
        PgIdeal { p, g_bar }
    }
}

impl IdealOracle for PgIdeal {
    fn member(&self, f: &Poly) -> bool {
        let f_bar = ModPoly::reduce(f, &self.p).expect("prime modulus");
        let (_, r) = f_bar.divrem(&self.g_bar).expect("g is nonzero mod p");
        r.is_zero()
    }

    /// Inverse of `f` modulo `(p, g)`, or zero when `f` is not invertible.
    fn nu(&self, f: &Poly) -> Poly {
        let f_bar = ModPoly::reduce(f, &self.p).expect("prime modulus");
        if f_bar.is_zero() {
            return Poly::zero();
        }
        let (g, s, _) = ModPoly::ext_gcd(&f_bar, &self.g_bar).expect("g is nonzero");
        if !g.is_one() {
            return Poly::zero();
        }
        let (_, s) = s.divrem(&self.g_bar).expect("g is nonzero");
        s.lift()
    }
}

/// `<g>` over `Z`.
pub struct Principal {
    g: Poly,
    nu: Poly,
}

impl IdealOracle for Principal {
    fn member(&self, f: &Poly) -> bool {
        if self.g.is_zero() {
            return f.is_zero();
        }
        // d^k f + h g = r; g | f over Z iff r = 0 and d^k divides h.
        let res = pseudo_division(&self.g, f).expect("g is nonzero");
        if !res.r.is_zero() {
            return false;
        }
        let dk = num_traits::pow::Pow::pow(self.g.leading_coeff().unwrap(), &res.k);
        res.h.div_exact_scalar(&dk).is_some()
    }

    fn nu(&self, _f: &Poly) -> Poly {
        self.nu.clone()
    }
}

pub struct Constant {
    value: bool,
    nu: Poly,
}

impl Constant {
    pub fn new(value: bool, nu: Poly) -> Constant {
        Constant { value, nu }
    }
}

impl IdealOracle for Constant {
    fn member(&self, _f: &Poly) -> bool {
        self.value
    }
    fn nu(&self, _f: &Poly) -> Poly {
        self.nu.clone()
    }
}

pub struct Table {
    members: HashSet<Poly>,
    default: bool,
    nu: Poly,
}

impl IdealOracle for Table {
    fn member(&self, f: &Poly) -> bool {
        self.members.contains(f) || self.default
    }
    fn nu(&self, _f: &Poly) -> Poly {
        self.nu.clone()
    }
}
