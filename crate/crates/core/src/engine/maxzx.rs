use num_traits::{Pow, Signed, Zero};

use super::lemma::{find_nonconstant_member, max_to_prime, unit_member, Branch};
use super::{geometric_expand, pseudo_division, EngineError, Tracer};
use crate::algebra::{
    factor_integer, smallest_prime_not_dividing, AlgebraError, Integer, Poly, PolyMatrix, Var,
};
use crate::evidence::{Certificate, Evidence, Outcome, Row, Verdict};
use crate::oracle::Oracle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest degree of the nonconstant member accepted.
    pub max_degree: usize,
    /// Largest decimal length of any coefficient along the way.
    pub max_coeff_digits: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_degree: 16, max_coeff_digits: 1_000_000 }
    }
}

pub fn maxzx(o: &Oracle) -> Result<Outcome, EngineError> {
    maxzx_with(o, &EngineConfig::default())
}

struct Run<'a> {
    tracer: Tracer<'a>,
    cert: Certificate,
    max_bits: u64,
}

impl Run<'_> {
    fn finish(mut self, verdict: Verdict) -> Outcome {
        self.cert.lemma_trace = self.tracer.into_trace();
        self.cert.outcome = verdict.clone();
        Outcome { verdict, certificate: self.cert }
    }

    fn evidence(self, e: Evidence) -> Outcome {
        self.finish(Verdict::NotMaximal(e))
    }

    fn bound(&self, what: &str, p: &Poly) -> Result<(), EngineError> {
        if p.max_coeff_bits() > self.max_bits {
            return Err(EngineError::ResourceLimit(format!("coefficients of {what} too large")));
        }
        Ok(())
    }
}

/// Produce either a prime in `M` or evidence that `(M, nu)` is not an
/// explicit maximal ideal, with the certificate of the run.
pub fn maxzx_with(o: &Oracle, config: &EngineConfig) -> Result<Outcome, EngineError> {
    let mut run = Run {
        tracer: Tracer::new(o),
        cert: Certificate::empty(Verdict::NotMaximal(Evidence::OneIsMember)),
        // log2(10) < 3.33
        max_bits: config.max_coeff_digits.saturating_mul(333) / 100 + 1,
    };

    let f = match find_nonconstant_member(&mut run.tracer) {
        Branch::Found(f) => f,
        Branch::Evidence(e) => return Ok(run.evidence(e)),
    };
    run.bound("f", &f)?;
    let n = f.degree().finite().expect("nonconstant");
    if n > config.max_degree {
        return Err(EngineError::ResourceLimit(format!(
            "member of degree {n} exceeds the limit {}",
            config.max_degree
        )));
    }
    let d = f.leading_coeff().expect("nonzero").clone();
    let q = smallest_prime_not_dividing(&d)?;
    run.cert.f = Some(f.clone());
    run.cert.d = Some(d.clone());
    run.cert.n = Some(n);
    run.cert.q = Some(q.clone());

    let q_poly = Poly::constant(q.clone());
    if run.tracer.member(&q_poly) {
        return Ok(run.finish(Verdict::Prime(q)));
    }
    let nuq = run.tracer.nu(&q_poly);
    run.bound("nu(q)", &nuq)?;
    let m = &nuq.scale(&q) - &Poly::one();
    run.cert.nuq = Some(nuq.clone());
    run.cert.m = Some(m.clone());
    if !run.tracer.member(&m) {
        return Ok(run.evidence(Evidence::NoInverse { a: q_poly }));
    }

    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let res = pseudo_division(&f, &nuq.shift(i))?;
        let a = (0..n).map(|j| res.r.coeff(j)).collect();
        rows.push(Row { k: res.k, h: res.h, a });
    }
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = Poly::constant_in(Var::Y, -rows[i].a[j].clone());
                    if i == j {
                        e = &e + &Poly::monomial_in(Var::Y, Pow::pow(&d, rows[i].k), 1);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let (det_y, adj_row0) = PolyMatrix::from_rows(entries)?.det_adjugate();
    let k_total: u64 = rows.iter().map(|r| r.k as u64).sum();
    let dk = Pow::pow(&d, k_total);
    if det_y.coeff(n) != dk {
        return Err(EngineError::Invariant("determinant leading coefficient is not d^K".into()));
    }
    let b: Vec<Integer> = (0..n).map(|j| det_y.coeff(j)).collect();

    let gpolys: Vec<Poly> = (1..=n).map(|i| geometric_expand(&m, i)).collect();
    let mut big_n = dk.clone();
    for (j, bj) in b.iter().enumerate() {
        big_n += bj * Pow::pow(&q, (n - j) as u32);
    }
    let mut combo_f = Poly::zero();
    for (j, aj) in adj_row0.iter().enumerate() {
        combo_f = &combo_f + &(&aj.substitute(&nuq)? * &rows[j].h);
    }
    combo_f = combo_f.scale(&-Pow::pow(&q, n as u32));
    let mut combo_m = gpolys[n - 1].scale(&-dk);
    for j in 1..n {
        let c = &b[j] * Pow::pow(&q, (n - j) as u32);
        combo_m = &combo_m - &gpolys[j - 1].scale(&c);
    }
    run.bound("combo_f", &combo_f)?;
    run.bound("combo_m", &combo_m)?;

    let p1 = &combo_f * &f;
    let p2 = &combo_m * &m;
    let sum = &p1 + &p2;
    if sum != Poly::constant(big_n.clone()) || big_n.is_zero() {
        return Err(EngineError::Invariant("combination does not reduce to N".into()));
    }

    run.cert.rows = Some(rows);
    run.cert.det_y = Some(det_y);
    run.cert.adj_row0 = Some(adj_row0);
    run.cert.k_total = Some(k_total);
    run.cert.b = Some(b);
    run.cert.big_n = Some(big_n.clone());
    run.cert.combo_f = Some(combo_f.clone());
    run.cert.combo_m = Some(combo_m.clone());
    run.cert.gpolys = Some(gpolys);

    if !run.tracer.member(&p1) {
        return Ok(run.evidence(Evidence::MultipleNotMember { lambda: combo_f, a: f }));
    }
    if !run.tracer.member(&p2) {
        return Ok(run.evidence(Evidence::MultipleNotMember { lambda: combo_m, a: m }));
    }
    if !run.tracer.member(&sum) {
        return Ok(run.evidence(Evidence::SumNotMember { a: p1, b: p2 }));
    }

    let fact = factor_integer(&big_n).map_err(|e| match e {
        AlgebraError::FactorLimit(c) => {
            EngineError::ResourceLimit(format!("could not split the cofactor {c} of N"))
        }
        other => other.into(),
    })?;
    let unit: i8 = if big_n.is_negative() { -1 } else { 1 };
    let mut list = Vec::with_capacity(fact.factors.len() + 1);
    if unit == -1 {
        list.push(Integer::from(-1));
    }
    list.extend(fact.factors.iter().cloned());
    run.cert.unit = Some(unit);
    run.cert.factors = Some(fact.factors);

    match max_to_prime(&mut run.tracer, &list) {
        Branch::Found(p) if p == Integer::from(-1) => {
            let e = unit_member(&mut run.tracer);
            Ok(run.evidence(e))
        }
        Branch::Found(p) => Ok(run.finish(Verdict::Prime(p))),
        Branch::Evidence(e) => Ok(run.evidence(e)),
    }
}
