//! Polynomials over the prime field `F_p`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::poly::{Integer, Poly};
use super::primes::is_prime;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    modulus: Integer,
    coeffs: Vec<Integer>,
}

impl ModPoly {
    /// Reduce an integer polynomial modulo a prime `p`.
    pub fn reduce(a: &Poly, p: &Integer) -> Result<ModPoly, AlgebraError> {
        if !is_prime(p) || p < &BigInt::from(2) {
            return Err(AlgebraError::InvalidModulus(p.clone()));
        }
        Ok(Self::reduce_unchecked(a.coeffs().to_vec(), p))
    }

    fn reduce_unchecked(coeffs: Vec<Integer>, p: &Integer) -> ModPoly {
        let mut coeffs: Vec<Integer> = coeffs.into_iter().map(|c| c.mod_floor(p)).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ModPoly { modulus: p.clone(), coeffs }
    }

    fn with(&self, coeffs: Vec<Integer>) -> ModPoly {
        Self::reduce_unchecked(coeffs, &self.modulus)
    }

    pub fn zero(p: &Integer) -> ModPoly {
        ModPoly { modulus: p.clone(), coeffs: Vec::new() }
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lift to `Z[X]` with least nonnegative residues.
    pub fn lift(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.clone())
    }

    fn check_modulus(&self, other: &ModPoly) -> Result<(), AlgebraError> {
        if self.modulus != other.modulus {
            return Err(AlgebraError::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly, AlgebraError> {
        self.check_modulus(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i) + other.coeff(i))
            .collect();
        Ok(self.with(coeffs))
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly, AlgebraError> {
        self.check_modulus(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i) - other.coeff(i))
            .collect();
        Ok(self.with(coeffs))
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly, AlgebraError> {
        self.check_modulus(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(ModPoly::zero(&self.modulus));
        }
        let mut coeffs = vec![Integer::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(self.with(coeffs))
    }

    fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    fn scale(&self, c: &Integer) -> ModPoly {
        self.with(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn inverse(&self, c: &Integer) -> Integer {
        // p is prime, so c^(p-2) is the inverse of any nonzero residue.
        c.modpow(&(&self.modulus - 2u32), &self.modulus)
    }

    /// Scale to a monic polynomial. The zero polynomial is returned as is.
    pub fn monic(&self) -> ModPoly {
        match self.coeffs.last() {
            Some(lc) => self.scale(&self.inverse(lc)),
            None => self.clone(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &ModPoly) -> Result<(ModPoly, ModPoly), AlgebraError> {
        self.check_modulus(divisor)?;
        let Some(db) = divisor.degree() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let p = &self.modulus;
        let inv_lc = self.inverse(divisor.coeffs.last().expect("nonzero divisor"));
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::zero(); rem.len().saturating_sub(db)];
        while rem.len() > db {
            let top = rem.len() - 1;
            let c = (rem[top].clone() * &inv_lc).mod_floor(p);
            if !c.is_zero() {
                let shift = top - db;
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] = (&rem[shift + j] - &c * b).mod_floor(p);
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((self.with(quot), self.with(rem)))
    }

    /// Extended Euclid: returns monic `g = gcd(a, b)` together with `s, t`
    /// satisfying `s*a + t*b = g`.
    pub fn ext_gcd(a: &ModPoly, b: &ModPoly) -> Result<(ModPoly, ModPoly, ModPoly), AlgebraError> {
        a.check_modulus(b)?;
        if a.is_zero() && b.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let p = a.modulus.clone();
        let one = ModPoly { modulus: p.clone(), coeffs: vec![Integer::one()] };
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), ModPoly::zero(&p));
        let (mut t0, mut t1) = (ModPoly::zero(&p), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1)?)?;
            let t2 = t0.sub(&q.mul(&t1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = a.inverse(r0.coeffs.last().expect("gcd is nonzero"));
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}
