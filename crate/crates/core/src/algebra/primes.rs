//! Primality testing and integer factorization.
//!
//! Miller-Rabin with a fixed base set: the first twelve primes decide every
//! `u64`, the first thirteen decide everything below 3.317e24. Larger inputs
//! get extra bases and the answer is then only probable.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Integer;
use super::AlgebraError;

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

const TRIAL_BOUND: u64 = 1_000_000;
const RHO_ATTEMPTS: u64 = 64;
const RHO_MAX_ITERS: u64 = 1 << 24;

pub fn is_prime(n: &Integer) -> bool {
    let m = n.abs();
    match m.to_u64() {
        Some(v) => is_prime_u64(v),
        None => is_prime_big(&m),
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let (d, s) = split_pow2(n - 1);
    'bases: for &a in &SMALL_PRIMES[..12] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn split_pow2(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

fn is_prime_big(n: &BigInt) -> bool {
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let deterministic_bound: BigInt = "3317044064679887385961981".parse().unwrap();
    let bases = if n < &deterministic_bound {
        &SMALL_PRIMES[..13]
    } else {
        &SMALL_PRIMES[..]
    };
    'bases: for &a in bases {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// All primes in increasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    std::iter::once(2).chain((3u64..).step_by(2).filter(|&n| is_prime_u64(n)))
}

/// The least prime `q` with `q` not dividing `|d|`.
pub fn smallest_prime_not_dividing(d: &Integer) -> Result<Integer, AlgebraError> {
    if d.is_zero() {
        return Err(AlgebraError::ZeroHasNoCoprimePrime);
    }
    let d = d.abs();
    let q = primes()
        .find(|&q| !(&d % q).is_zero())
        .expect("infinitely many primes");
    Ok(Integer::from(q))
}

/// A factorization `n = unit * product(factors)` with every factor prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: i8,
    pub factors: Vec<Integer>,
}

impl Factorization {
    pub fn product(&self) -> Integer {
        self.factors
            .iter()
            .fold(Integer::from(self.unit), |acc, f| acc * f)
    }
}

/// Trial division up to 10^6, then Pollard rho (Brent) on what remains.
/// Factors are returned in ascending order with multiplicity.
pub fn factor_integer(n: &Integer) -> Result<Factorization, AlgebraError> {
    if n.is_zero() {
        return Err(AlgebraError::FactorZero);
    }
    let unit = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors = Vec::new();

    let trial_limit = |m: &BigInt| m.sqrt().to_u64().map_or(TRIAL_BOUND, |r| r.min(TRIAL_BOUND));
    let mut limit = trial_limit(&m);
    let mut p = 2u64;
    while p <= limit {
        if (&m % p).is_zero() {
            while (&m % p).is_zero() {
                m /= p;
                factors.push(BigInt::from(p));
            }
            limit = trial_limit(&m);
        }
        p += if p == 2 { 1 } else { 2 };
    }

    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            factors.push(c);
            continue;
        }
        let d = pollard_brent(&c)?;
        let e = &c / &d;
        stack.push(d);
        stack.push(e);
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Find a nontrivial divisor of an odd composite `n`.
fn pollard_brent(n: &BigInt) -> Result<BigInt, AlgebraError> {
    if n.is_even() {
        return Ok(BigInt::from(2));
    }
    let batch = 128u64;
    for c in 1..=RHO_ATTEMPTS {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigInt::one();
        let mut q = BigInt::one();
        let mut r = 1u64;
        let mut iters = 0u64;
        while g.is_one() && iters < RHO_MAX_ITERS {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..batch.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            iters += r;
            r *= 2;
        }
        if g == *n {
            // Batch overshot; step back one at a time.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Ok(g);
        }
    }
    Err(AlgebraError::FactorLimit(n.clone()))
}
