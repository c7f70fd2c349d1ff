//! Fraction-free division by a polynomial whose leading coefficient is not a unit.

use num_traits::Zero;

use super::EngineError;
use crate::algebra::{Degree, Integer, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivResult {
    /// Number of reduction steps.
    pub k: u32,
    pub h: Poly,
    pub r: Poly,
}

/// Pseudo-divide `g` by `f`.
///
/// Returns `k, h, r` with `d^k * g + h * f = r`, `d = lc(f)` and
/// `deg r < deg f`. Each step cancels the current leading term of the
/// remainder, so `h` has exactly `k` nonzero coefficients.
pub fn pseudo_division(f: &Poly, g: &Poly) -> Result<PseudoDivResult, EngineError> {
    let Degree::Finite(n) = f.degree() else {
        return Err(EngineError::Invariant("pseudo-division by zero".into()));
    };
    let d = f.leading_coeff().expect("nonzero").clone();
    let mut r = g.clone();
    // (c_t, s_t) for each step
    let mut steps: Vec<(Integer, usize)> = Vec::new();
    while let Degree::Finite(dr) = r.degree() {
        if dr < n {
            break;
        }
        let c = r.leading_coeff().expect("nonzero").clone();
        let s = dr - n;
        r = &r.scale(&d) - &f.shift(s).scale(&c);
        steps.push((c, s));
    }
    let k = steps.len();
    let mut h = vec![Integer::zero(); steps.first().map_or(0, |s| s.1 + 1)];
    let mut dpow = Integer::from(1);
    for (c, s) in steps.iter().rev() {
        h[*s] = -(&dpow * c);
        dpow *= &d;
    }
    Ok(PseudoDivResult {
        k: k as u32,
        h: Poly::from_coeffs(h),
        r,
    })
}

/// `g_i = sum_{j<i} (m+1)^j`, so that `(m+1)^i = 1 + m * g_i`.
pub fn geometric_expand(m: &Poly, i: usize) -> Poly {
    let base = m + &Poly::one();
    let mut power = Poly::one();
    let mut sum = Poly::zero();
    for _ in 0..i {
        sum = &sum + &power;
        power = &power * &base;
    }
    sum
}
