//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest power first and are always trimmed, so the
//! zero polynomial is the empty vector and two equal polynomials have equal
//! representations. Each polynomial carries a [`Var`] tag: `X` is the ring the
//! engine works in, `Y` is the formal variable used for determinant work.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::AlgebraError;

pub type Integer = BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

/// Degree of a polynomial. The zero polynomial has no numeric degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Zero,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Zero => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// The zero sentinel sorts below every finite degree.
impl Ord for Degree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Degree::Zero, Degree::Zero) => std::cmp::Ordering::Equal,
            (Degree::Zero, _) => std::cmp::Ordering::Less,
            (_, Degree::Zero) => std::cmp::Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Zero => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    var: Var,
    coeffs: Vec<Integer>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::zero_in(Var::X)
    }

    pub fn zero_in(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Integer::one())
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn constant_in(var: Var, c: impl Into<Integer>) -> Self {
        Self::from_coeffs_in(var, vec![c.into()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Integer::one(), 1)
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<Integer>, k: usize) -> Self {
        Self::monomial_in(Var::X, c, k)
    }

    pub fn monomial_in(var: Var, c: impl Into<Integer>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero_in(var);
        }
        let mut coeffs = vec![Integer::zero(); k + 1];
        coeffs[k] = c;
        Poly { var, coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Integer>) -> Self {
        Self::from_coeffs_in(Var::X, coeffs)
    }

    pub fn from_coeffs_in(var: Var, mut coeffs: Vec<Integer>) -> Self {
        trim(&mut coeffs);
        Poly { var, coeffs }
    }

    /// Convenience constructor for tests and literals: `from_i64(&[c0, c1, ...])`.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Same coefficients, different variable tag.
    pub fn retag(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The integer value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Integer> {
        match self.coeffs.len() {
            0 => Some(Integer::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::Zero,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    /// Degree and leading coefficient in one call.
    pub fn degree_lc(&self) -> (Degree, Option<Integer>) {
        (self.degree(), self.leading_coeff().cloned())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.same_var(other)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Ok(Poly::from_coeffs_in(self.var, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.same_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero_in(self.var));
        }
        let mut coeffs = vec![Integer::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Poly::from_coeffs_in(self.var, coeffs))
    }

    pub fn scale(&self, c: &Integer) -> Poly {
        if c.is_zero() {
            return Poly::zero_in(self.var);
        }
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Integer::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { var: self.var, coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant_in(self.var, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, at: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * at + c)
    }

    /// Substitute a polynomial for the variable (Horner), e.g. `det(Y)` at
    /// `Y = v(X)`. The result carries the tag of `v`.
    pub fn substitute(&self, v: &Poly) -> Result<Poly, AlgebraError> {
        if self.var == v.var {
            return Err(AlgebraError::VarMismatch {
                left: self.var,
                right: v.var,
            });
        }
        let mut acc = Poly::zero_in(v.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * v) + &Poly::constant_in(v.var, c.clone());
        }
        Ok(acc)
    }

    /// Largest coefficient magnitude in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Exact division of every coefficient by `c`, if possible.
    pub fn div_exact_scalar(&self, c: &Integer) -> Option<Poly> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            if !(a % c).is_zero() {
                return None;
            }
            out.push(a / c);
        }
        Some(Poly { var: self.var, coeffs: out })
    }

    fn same_var(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.var != other.var {
            return Err(AlgebraError::VarMismatch {
                left: self.var,
                right: other.var,
            });
        }
        Ok(())
    }
}

fn trim(coeffs: &mut Vec<Integer>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

impl From<Integer> for Poly {
    fn from(c: Integer) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

// Operator impls panic on a variable-tag mismatch; use the `checked_*`
// methods where operands come from outside the engine.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("poly add")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("poly sub")
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("poly mul")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_poly(self))
    }
}
