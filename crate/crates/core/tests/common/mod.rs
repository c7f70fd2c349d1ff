//! Shared test helpers: brute-force reference computations, random oracles,
//! and certificate mutation.
#![allow(dead_code)]

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use maxzx::algebra::{Integer, Poly, Var};
use maxzx::oracle::Oracle;
use maxzx::parser::{format_poly, parse_oracle_spec, parse_poly, OracleKind, OracleSpec, OverrideLine};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn oracle(text: &str) -> Oracle {
    Oracle::from_spec(&parse_oracle_spec(text).unwrap())
}

pub fn poly(text: &str) -> Poly {
    parse_poly(text).unwrap()
}

pub fn sieve(n: usize) -> Vec<u64> {
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

/// Determinant by the permutation sum.
pub fn leibniz_det(m: &[Vec<Poly>], var: Var) -> Poly {
    let n = m.len();
    let mut total = Poly::zero_in(var);
    for p in permutations(n) {
        let mut term = Poly::constant_in(var, sign(&p));
        for (i, &j) in p.iter().enumerate() {
            term = &term * &m[i][j];
        }
        total = &total + &term;
    }
    total
}

/// First row of the adjugate: `adj[0][j] = (-1)^j det(A without row j and column 0)`.
pub fn leibniz_adj_row0(m: &[Vec<Poly>], var: Var) -> Vec<Poly> {
    let n = m.len();
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| m[r][1..].to_vec())
                .collect();
            let d = if minor.is_empty() { Poly::constant_in(var, 1) } else { leibniz_det(&minor, var) };
            if j % 2 == 0 { d } else { -d }
        })
        .collect()
}

fn to_mod(f: &Poly, p: i64) -> Vec<i64> {
    let pb = Integer::from(p);
    let mut c: Vec<i64> = f
        .coeffs()
        .iter()
        .map(|a| {
            let r = ((a % &pb) + &pb) % &pb;
            i64::try_from(r).unwrap()
        })
        .collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

fn inv_mod(a: i64, p: i64) -> i64 {
    (1..p).find(|b| a * b % p == 1).expect("unit")
}

/// Remainder of `f` modulo `g` over `F_p`, small `p`, by schoolbook division.
pub fn naive_rem(f: &[i64], g: &[i64], p: i64) -> Vec<i64> {
    let mut r = f.to_vec();
    let lead_inv = inv_mod(*g.last().unwrap(), p);
    while r.len() >= g.len() {
        let c = r.last().unwrap() * lead_inv % p;
        let shift = r.len() - g.len();
        for (i, gi) in g.iter().enumerate() {
            r[shift + i] = ((r[shift + i] - c * gi) % p + p) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// `f` in `<p, g>` for small prime `p`.
pub fn naive_pg_member(p: i64, g: &Poly, f: &Poly) -> bool {
    let gm = to_mod(g, p);
    naive_rem(&to_mod(f, p), &gm, p).is_empty()
}

/// Irreducibility over `F_p` for degree at most 3: no roots.
pub fn naive_irreducible(p: i64, g: &Poly) -> bool {
    let gm = to_mod(g, p);
    let deg = gm.len().saturating_sub(1);
    match deg {
        0 => false,
        1 => true,
        2 | 3 => (0..p).all(|x| {
            let mut acc = 0i64;
            for c in gm.iter().rev() {
                acc = (acc * x + c) % p;
            }
            acc != 0
        }),
        _ => panic!("degree above 3"),
    }
}

pub fn random_poly(r: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> Poly {
    let deg = r.random_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| Integer::from(r.random_range(-bound..=bound))).collect())
}

/// A small family of `nu` functions.
#[derive(Clone, Debug)]
pub enum NuFamily {
    Constant(i64),
    XPlus(i64),
    Identity,
    Shift(i64),
    Scaled(i64),
}

impl NuFamily {
    pub fn random(r: &mut ChaCha8Rng) -> Self {
        match r.random_range(0..5) {
            0 => NuFamily::Constant(r.random_range(-3..=3)),
            1 => NuFamily::XPlus(r.random_range(-3..=3)),
            2 => NuFamily::Identity,
            3 => NuFamily::Shift(r.random_range(-3..=3)),
            _ => NuFamily::Scaled(r.random_range(-3..=3)),
        }
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        match self {
            NuFamily::Constant(c) => Poly::constant(*c),
            NuFamily::XPlus(c) => &Poly::x() + &Poly::constant(*c),
            NuFamily::Identity => f.clone(),
            NuFamily::Shift(c) => f + &Poly::constant(*c),
            NuFamily::Scaled(c) => f.scale(&Integer::from(*c)),
        }
    }
}

fn hash_member(seed: u64, percent: u64, f: &Poly) -> bool {
    let mut h = DefaultHasher::new();
    seed.hash(&mut h);
    format_poly(f).hash(&mut h);
    h.finish() % 100 < percent
}

const SMALL_PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// A random oracle and a short description of it.
pub fn random_oracle(r: &mut ChaCha8Rng) -> (String, Oracle) {
    match r.random_range(0..5) {
        0 => {
            let count = r.random_range(0..8);
            let members: Vec<Poly> = (0..count).map(|_| random_poly(r, 2, 3)).collect();
            let default = r.random_range(0..4) == 0;
            let nu = NuFamily::random(r);
            let desc = format!("table {members:?} default {default} nu {nu:?}");
            let set: std::collections::HashSet<Poly> = members.into_iter().collect();
            let o = Oracle::from_fns(move |f| set.contains(f) || default, move |f| nu.apply(f));
            (desc, o)
        }
        1 => {
            let seed = r.random::<u64>();
            let percent = r.random_range(10..95);
            let nu = NuFamily::random(r);
            let desc = format!("hash seed {seed} percent {percent} nu {nu:?}");
            (desc, Oracle::from_fns(move |f| hash_member(seed, percent, f), move |f| nu.apply(f)))
        }
        2 => {
            let p = SMALL_PRIMES[r.random_range(0..SMALL_PRIMES.len())];
            let mut g = random_poly(r, 3, 5);
            while to_mod(&g, p).is_empty() {
                g = random_poly(r, 3, 5);
            }
            let mut spec = OracleSpec { kind: OracleKind::PgIdeal { p: p.into(), g }, overrides: Vec::new() };
            for _ in 0..r.random_range(0..4) {
                let key = random_poly(r, 2, 3);
                let line = if r.random_range(0..2) == 0 {
                    OverrideLine::Member(key, r.random_range(0..2) == 0)
                } else {
                    OverrideLine::Nu(key, random_poly(r, 2, 3))
                };
                spec.overrides.push(line);
            }
            (spec.to_string(), Oracle::from_spec(&spec))
        }
        3 => {
            let spec = OracleSpec {
                kind: OracleKind::Principal { g: random_poly(r, 2, 4), nu: random_poly(r, 1, 3) },
                overrides: Vec::new(),
            };
            (spec.to_string(), Oracle::from_spec(&spec))
        }
        _ => {
            let value = r.random_range(0..2) == 0;
            let nu = NuFamily::random(r);
            let desc = format!("constant {value} nu {nu:?}");
            (desc, Oracle::from_fns(move |_| value, move |f| nu.apply(f)))
        }
    }
}

fn leaves(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                leaves(x, format!("{path}/{k}"), out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                leaves(x, format!("{path}/{i}"), out);
            }
        }
        _ => out.push(path),
    }
}

fn mutate_string(s: &str, r: &mut ChaCha8Rng) -> String {
    match s {
        "prime" => return "not_maximal".into(),
        "not_maximal" => return "prime".into(),
        _ => {}
    }
    if let Some(n) = s.strip_prefix("case") {
        let n: u8 = n.parse().unwrap();
        return format!("case{}", n % 5 + 1);
    }
    if let Ok(n) = s.parse::<Integer>() {
        let delta: i64 = if r.random_range(0..2) == 0 { 1 } else { -1 };
        return (n + delta).to_string();
    }
    let var = if s.contains('y') { Var::Y } else { Var::X };
    let p = maxzx::parser::parse_poly_in(s, var).expect("certificate strings are polynomials");
    let bump = match r.random_range(0..3) {
        0 => Poly::constant_in(var, 1),
        1 => Poly::monomial_in(var, 1, 1),
        _ => Poly::monomial_in(var, -1, 2),
    };
    format_poly(&(&p + &bump))
}

/// Change one randomly chosen leaf of the certificate JSON. Returns the path
/// of the leaf.
pub fn mutate_leaf(doc: &mut Value, r: &mut ChaCha8Rng) -> String {
    let mut paths = Vec::new();
    leaves(doc, String::new(), &mut paths);
    let path = paths[r.random_range(0..paths.len())].clone();
    let leaf = doc.pointer_mut(&path).unwrap();
    *leaf = match leaf.take() {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => {
            let n = n.as_i64().unwrap();
            let next = if n == 1 || n == -1 { -n } else { n + 1 };
            Value::from(next)
        }
        Value::String(s) => Value::String(mutate_string(&s, r)),
        Value::Null => Value::from(0),
        other => panic!("unexpected leaf {other}"),
    };
    path
}
