//! Independent certificate checking.
//!
//! Every algebraic identity recorded in a certificate is re-checked directly,
//! membership answers are replayed against the oracle, and the sequence of
//! queries is matched against the run protocol so that the recorded outcome
//! is the one the recorded answers force.

use std::fmt;

use num_traits::{One, Pow, Zero};

use super::{validate_evidence, Certificate, Evidence, TraceEntry, Verdict};
use crate::algebra::{is_prime, smallest_prime_not_dividing, Degree, Integer, Poly, Var};
use crate::oracle::Oracle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "overall": if self.overall() { "pass" } else { "fail" },
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "name": c.name,
                "status": if c.pass { "pass" } else { "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            writeln!(f, "[{status}] {}: {}", c.name, c.detail)?;
        }
        write!(f, "overall: {}", if self.overall() { "pass" } else { "fail" })
    }
}

/// How far the recorded run got. Each stage adds a group of fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    FindMember,
    CoprimePrime,
    Inverse,
    Combination,
    Lemma,
}

const CHECK_NAMES: [&str; 12] = [
    "1 membership replay",
    "2 nonconstant member",
    "3 coprime prime",
    "4 inverse candidate",
    "5 pseudo-division rows",
    "6 adjugate identity",
    "7 determinant expansion",
    "8 geometric polynomials",
    "9 combination integer",
    "10 linear combination",
    "11 factorization",
    "12 outcome consistency",
];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn need<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T, String> {
    v.as_ref().ok_or_else(|| format!("missing `{name}`"))
}

pub fn verify_certificate(o: &Oracle, c: &Certificate) -> VerifyReport {
    let protocol = replay_protocol(o, c);
    let stage = match &protocol {
        Ok((stage, _)) => Some(*stage),
        Err(p) => p.stage,
    };

    let mut checks = Vec::new();
    let mut push = |i: usize, r: Check| {
        let (pass, detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(CheckResult { name: CHECK_NAMES[i], pass, detail });
    };

    push(0, check_replay(o, &c.lemma_trace));
    let reached = |s: Stage| stage.is_some_and(|st| st >= s);
    let gated = |s: Stage, f: &dyn Fn() -> Check| -> Check {
        if reached(s) {
            f()
        } else {
            Ok("skipped: phase not reached".into())
        }
    };
    push(1, gated(Stage::CoprimePrime, &|| check_member(c)));
    push(2, gated(Stage::CoprimePrime, &|| check_prime_q(c)));
    push(3, gated(Stage::Inverse, &|| check_inverse(o, c)));
    push(4, gated(Stage::Combination, &|| check_rows(c)));
    push(5, gated(Stage::Combination, &|| check_adjugate(c)));
    push(6, gated(Stage::Combination, &|| check_det(c)));
    push(7, gated(Stage::Combination, &|| check_gpolys(c)));
    push(8, gated(Stage::Combination, &|| check_big_n(c)));
    push(9, gated(Stage::Combination, &|| check_combination(c)));
    push(10, gated(Stage::Lemma, &|| check_factorization(c)));
    push(11, check_outcome(o, c, protocol));
    checks.push(CheckResult {
        name: "structure",
        pass: true,
        detail: String::new(),
    });
    let structure = check_structure(c, stage);
    let last = checks.last_mut().expect("just pushed");
    match structure {
        Ok(d) => last.detail = d,
        Err(d) => {
            last.pass = false;
            last.detail = d;
        }
    }
    VerifyReport { checks }
}

fn check_replay(o: &Oracle, trace: &[TraceEntry]) -> Check {
    for (i, t) in trace.iter().enumerate() {
        let got = o.membership(&t.query);
        ensure(got == t.answer, || {
            format!("entry {i}: M({}) is {got}, recorded {}", t.query, t.answer)
        })?;
    }
    Ok(format!("{} answers match", trace.len()))
}

fn check_member(c: &Certificate) -> Check {
    let f = need(&c.f, "f")?;
    let d = need(&c.d, "d")?;
    let n = *need(&c.n, "n")?;
    ensure(!f.is_constant(), || format!("f = {f} is constant"))?;
    ensure(f.leading_coeff() == Some(d), || format!("d = {d} is not lc(f)"))?;
    ensure(f.degree() == Degree::Finite(n), || format!("n = {n} but deg f = {}", f.degree()))?;
    Ok(format!("f = {f}, d = {d}, n = {n}"))
}

fn check_prime_q(c: &Certificate) -> Check {
    let q = need(&c.q, "q")?;
    let d = need(&c.d, "d")?;
    ensure(is_prime(q) && q > &Integer::zero(), || format!("q = {q} is not a positive prime"))?;
    ensure(!(d % q).is_zero(), || format!("q = {q} divides d = {d}"))?;
    let least = smallest_prime_not_dividing(d).map_err(|e| e.to_string())?;
    ensure(&least == q, || format!("q = {q} but the least prime not dividing d is {least}"))?;
    Ok(format!("q = {q}"))
}

fn check_inverse(o: &Oracle, c: &Certificate) -> Check {
    let q = need(&c.q, "q")?;
    let nuq = need(&c.nuq, "nuq")?;
    let m = need(&c.m, "m")?;
    let actual = o.nu_value(&Poly::constant(q.clone()));
    ensure(&actual == nuq, || format!("nu(q) is {actual}, recorded {nuq}"))?;
    let expect = &nuq.scale(q) - &Poly::one();
    ensure(&expect == m, || format!("q*nuq - 1 = {expect}, recorded m = {m}"))?;
    Ok(format!("m = {m}"))
}

fn check_rows(c: &Certificate) -> Check {
    let f = need(&c.f, "f")?;
    let d = need(&c.d, "d")?;
    let n = *need(&c.n, "n")?;
    let nuq = need(&c.nuq, "nuq")?;
    let rows = need(&c.rows, "rows")?;
    ensure(rows.len() == n, || format!("{} rows, expected {n}", rows.len()))?;
    for (i, row) in rows.iter().enumerate() {
        ensure(row.a.len() == n, || format!("row {i}: {} entries, expected {n}", row.a.len()))?;
        let steps = row.h.coeffs().iter().filter(|c| !c.is_zero()).count();
        ensure(steps == row.k as usize, || {
            format!("row {i}: k = {} but h has {steps} reduction terms", row.k)
        })?;
        let lhs = &nuq.scale(&Pow::pow(d, row.k)).shift(i) + &(&row.h * f);
        let rhs = Poly::from_coeffs(row.a.clone());
        ensure(lhs == rhs, || format!("row {i}: identity fails ({lhs} != {rhs})"))?;
    }
    Ok(format!("{n} rows"))
}

/// `A[i][j] = d^{k_i} * Y * delta_ij - a_ij` over `Z[Y]`.
fn row_matrix(d: &Integer, rows: &[super::Row]) -> Vec<Vec<Poly>> {
    let n = rows.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = Poly::constant_in(Var::Y, -rows[i].a.get(j).cloned().unwrap_or_default());
                    if i == j {
                        e = &e + &Poly::monomial_in(Var::Y, Pow::pow(d, rows[i].k), 1);
                    }
                    e
                })
                .collect()
        })
        .collect()
}

fn check_adjugate(c: &Certificate) -> Check {
    let d = need(&c.d, "d")?;
    let rows = need(&c.rows, "rows")?;
    let det = need(&c.det_y, "detY")?;
    let adj = need(&c.adj_row0, "adjRow0")?;
    let n = rows.len();
    ensure(adj.len() == n, || format!("adjRow0 has {} entries, expected {n}", adj.len()))?;
    ensure(rows.iter().all(|r| r.a.len() == n), || "ragged rows".into())?;
    let a = row_matrix(d, rows);
    for k in 0..n {
        let mut s = Poly::zero_in(Var::Y);
        for (adj_j, row) in adj.iter().zip(&a) {
            s = &s + &(adj_j * &row[k]);
        }
        let expect = if k == 0 { det.clone() } else { Poly::zero_in(Var::Y) };
        ensure(s == expect, || format!("column {k}: adjRow0 * A = {s}, expected {expect}"))?;
    }
    Ok(format!("detY = {det}"))
}

fn check_det(c: &Certificate) -> Check {
    let d = need(&c.d, "d")?;
    let n = *need(&c.n, "n")?;
    let rows = need(&c.rows, "rows")?;
    let det = need(&c.det_y, "detY")?;
    let k_total = *need(&c.k_total, "K")?;
    let b = need(&c.b, "b")?;
    let sum: u64 = rows.iter().map(|r| r.k as u64).sum();
    ensure(sum == k_total, || format!("K = {k_total} but the row exponents sum to {sum}"))?;
    ensure(b.len() == n, || format!("b has {} entries, expected {n}", b.len()))?;
    let mut coeffs = b.clone();
    coeffs.push(Pow::pow(d, k_total));
    let expect = Poly::from_coeffs_in(Var::Y, coeffs);
    ensure(&expect == det, || format!("d^K Y^n + sum b_j Y^j = {expect}, recorded {det}"))?;
    Ok(format!("K = {k_total}"))
}

fn check_gpolys(c: &Certificate) -> Check {
    let n = *need(&c.n, "n")?;
    let m = need(&c.m, "m")?;
    let g = need(&c.gpolys, "gpolys")?;
    ensure(g.len() == n, || format!("{} g polynomials, expected {n}", g.len()))?;
    let m1 = m + &Poly::one();
    for (idx, gi) in g.iter().enumerate() {
        let i = idx as u32 + 1;
        let lhs = m1.pow(i);
        let rhs = &Poly::one() + &(m * gi);
        ensure(lhs == rhs, || format!("(m+1)^{i} != 1 + m*g_{i}"))?;
    }
    Ok(format!("{n} identities"))
}

fn check_big_n(c: &Certificate) -> Check {
    let d = need(&c.d, "d")?;
    let q = need(&c.q, "q")?;
    let b = need(&c.b, "b")?;
    let k_total = *need(&c.k_total, "K")?;
    let big_n = need(&c.big_n, "N")?;
    let n = b.len();
    let mut expect: Integer = Pow::pow(d, k_total);
    for (j, bj) in b.iter().enumerate() {
        expect += bj * Pow::pow(q, (n - j) as u32);
    }
    ensure(&expect == big_n, || format!("d^K + sum b_j q^(n-j) = {expect}, recorded N = {big_n}"))?;
    ensure(!big_n.is_zero(), || "N is zero".into())?;
    Ok(format!("N = {big_n}"))
}

fn check_combination(c: &Certificate) -> Check {
    let f = need(&c.f, "f")?;
    let m = need(&c.m, "m")?;
    let big_n = need(&c.big_n, "N")?;
    let cf = need(&c.combo_f, "combo_f")?;
    let cm = need(&c.combo_m, "combo_m")?;
    let rhs = &(cf * f) + &(cm * m);
    let lhs = Poly::constant(big_n.clone());
    ensure(lhs == rhs, || format!("combo_f*f + combo_m*m = {rhs}, expected {big_n}"))?;
    Ok("N = combo_f*f + combo_m*m".into())
}

fn check_factorization(c: &Certificate) -> Check {
    let big_n = need(&c.big_n, "N")?;
    let unit = *need(&c.unit, "unit")?;
    let factors = need(&c.factors, "factors")?;
    ensure(unit == 1 || unit == -1, || format!("unit = {unit}"))?;
    for p in factors {
        ensure(is_prime(p) && p > &Integer::zero(), || format!("factor {p} is not a positive prime"))?;
    }
    ensure(factors.windows(2).all(|w| w[0] <= w[1]), || "factors not ascending".into())?;
    let product = factors.iter().fold(Integer::from(unit), |acc, p| acc * p);
    ensure(&product == big_n, || format!("unit * product = {product}, N = {big_n}"))?;
    Ok(format!("{} prime factors", factors.len()))
}

struct ProtocolFailure {
    stage: Option<Stage>,
    message: String,
}

struct Cursor<'a> {
    trace: &'a [TraceEntry],
    pos: usize,
    stage: Stage,
}

impl Cursor<'_> {
    fn ask(&mut self, query: &Poly) -> Result<bool, ProtocolFailure> {
        match self.trace.get(self.pos) {
            Some(t) if &t.query == query => {
                self.pos += 1;
                Ok(t.answer)
            }
            Some(t) => Err(self.fail(format!(
                "trace entry {} asks M({}), protocol expects M({query})",
                self.pos, t.query
            ))),
            None => Err(self.fail(format!("trace ends before M({query})"))),
        }
    }

    fn fail(&self, message: String) -> ProtocolFailure {
        ProtocolFailure { stage: Some(self.stage), message }
    }

    fn field<'b, T>(&self, v: &'b Option<T>, name: &str) -> Result<&'b T, ProtocolFailure> {
        v.as_ref().ok_or_else(|| self.fail(format!("missing `{name}`")))
    }
}

/// Walk the run protocol, taking membership answers from the trace and
/// `nu` values from the oracle. Returns the stage reached and the verdict the
/// answers force.
fn replay_protocol(o: &Oracle, c: &Certificate) -> Result<(Stage, Verdict), ProtocolFailure> {
    let mut cur = Cursor { trace: &c.lemma_trace, pos: 0, stage: Stage::FindMember };
    let x = Poly::x();
    let one = Poly::one();
    let evidence = |e: Evidence| Verdict::NotMaximal(e);

    let f_expect = if cur.ask(&x)? {
        x.clone()
    } else {
        let e = &(&x * &o.nu_value(&x)) - &one;
        if !cur.ask(&e)? {
            return finish(cur, evidence(Evidence::NoInverse { a: x }));
        }
        if e.is_constant() {
            let v = if cur.ask(&one)? {
                Evidence::OneIsMember
            } else {
                Evidence::MultipleNotMember { lambda: -&one, a: -&one }
            };
            return finish(cur, evidence(v));
        }
        e
    };

    cur.stage = Stage::CoprimePrime;
    let f = cur.field(&c.f, "f")?;
    if f != &f_expect {
        return Err(cur.fail(format!("f = {f} but the protocol constructs {f_expect}")));
    }
    let q = cur.field(&c.q, "q")?;
    let q_poly = Poly::constant(q.clone());
    if cur.ask(&q_poly)? {
        return finish(cur, Verdict::Prime(q.clone()));
    }

    cur.stage = Stage::Inverse;
    let m = cur.field(&c.m, "m")?;
    if !cur.ask(m)? {
        return finish(cur, evidence(Evidence::NoInverse { a: q_poly }));
    }

    cur.stage = Stage::Combination;
    let cf = cur.field(&c.combo_f, "combo_f")?;
    let cm = cur.field(&c.combo_m, "combo_m")?;
    let pf = cf * f;
    if !cur.ask(&pf)? {
        return finish(cur, evidence(Evidence::MultipleNotMember { lambda: cf.clone(), a: f.clone() }));
    }
    let pm = cm * m;
    if !cur.ask(&pm)? {
        return finish(cur, evidence(Evidence::MultipleNotMember { lambda: cm.clone(), a: m.clone() }));
    }
    if !cur.ask(&(&pf + &pm))? {
        return finish(cur, evidence(Evidence::SumNotMember { a: pf, b: pm }));
    }

    cur.stage = Stage::Lemma;
    let unit = *cur.field(&c.unit, "unit")?;
    let factors = cur.field(&c.factors, "factors")?;
    let mut list: Vec<Integer> = Vec::new();
    if unit == -1 {
        list.push(Integer::from(-1));
    }
    list.extend(factors.iter().cloned());

    let mut product = Poly::constant(list.iter().fold(Integer::one(), |acc, a| acc * a));
    let mut idx = 0;
    let member = loop {
        if idx == list.len() {
            return finish(cur, evidence(Evidence::OneIsMember));
        }
        let a = Poly::constant(list[idx].clone());
        let tail = Poly::constant(list[idx + 1..].iter().fold(Integer::one(), |acc, v| acc * v));
        if cur.ask(&a)? {
            break list[idx].clone();
        }
        let v = o.nu_value(&a);
        let e = &(&a * &v) - &one;
        if !cur.ask(&e)? {
            return finish(cur, evidence(Evidence::NoInverse { a }));
        }
        let vp = &v * &product;
        if !cur.ask(&vp)? {
            return finish(cur, evidence(Evidence::MultipleNotMember { lambda: v, a: product }));
        }
        let neg_tail = -&tail;
        let s = &neg_tail * &e;
        if !cur.ask(&s)? {
            return finish(cur, evidence(Evidence::MultipleNotMember { lambda: neg_tail, a: e }));
        }
        if !cur.ask(&(&vp + &s))? {
            return finish(cur, evidence(Evidence::SumNotMember { a: vp, b: s }));
        }
        product = tail;
        idx += 1;
    };
    if member == Integer::from(-1) {
        let v = if cur.ask(&one)? {
            Evidence::OneIsMember
        } else {
            Evidence::MultipleNotMember { lambda: -&one, a: -&one }
        };
        return finish(cur, evidence(v));
    }
    finish(cur, Verdict::Prime(member))
}

fn finish(cur: Cursor<'_>, v: Verdict) -> Result<(Stage, Verdict), ProtocolFailure> {
    if cur.pos != cur.trace.len() {
        return Err(cur.fail(format!(
            "{} trace entries after the deciding query",
            cur.trace.len() - cur.pos
        )));
    }
    Ok((cur.stage, v))
}

fn check_outcome(
    o: &Oracle,
    c: &Certificate,
    protocol: Result<(Stage, Verdict), ProtocolFailure>,
) -> Check {
    let (_, expect) = protocol.map_err(|p| p.message)?;
    ensure(expect == c.outcome, || {
        format!("recorded outcome `{}` but the trace forces `{expect}`", c.outcome)
    })?;
    match &c.outcome {
        Verdict::Prime(p) => {
            ensure(is_prime(p), || format!("{p} is not prime"))?;
            let recorded = c
                .lemma_trace
                .iter()
                .any(|t| t.answer && t.query == Poly::constant(p.clone()));
            ensure(recorded, || format!("trace never shows M({p}) = tt"))?;
            let in_factors = c.factors.as_ref().is_some_and(|fs| fs.contains(p));
            ensure(in_factors || c.q.as_ref() == Some(p), || {
                format!("{p} is neither q nor a factor of N")
            })?;
        }
        Verdict::NotMaximal(e) => {
            ensure(validate_evidence(o, e), || format!("evidence `{e}` does not validate"))?;
        }
    }
    Ok(c.outcome.to_string())
}

/// Exactly the fields of the phases the run reached must be present.
fn check_structure(c: &Certificate, stage: Option<Stage>) -> Check {
    let Some(stage) = stage else {
        return Ok("stage unknown".into());
    };
    let groups: [(Stage, Vec<(&str, bool)>); 4] = [
        (
            Stage::CoprimePrime,
            vec![("f", c.f.is_some()), ("d", c.d.is_some()), ("n", c.n.is_some()), ("q", c.q.is_some())],
        ),
        (Stage::Inverse, vec![("nuq", c.nuq.is_some()), ("m", c.m.is_some())]),
        (
            Stage::Combination,
            vec![
                ("rows", c.rows.is_some()),
                ("detY", c.det_y.is_some()),
                ("adjRow0", c.adj_row0.is_some()),
                ("K", c.k_total.is_some()),
                ("b", c.b.is_some()),
                ("N", c.big_n.is_some()),
                ("combo_f", c.combo_f.is_some()),
                ("combo_m", c.combo_m.is_some()),
                ("gpolys", c.gpolys.is_some()),
            ],
        ),
        (Stage::Lemma, vec![("unit", c.unit.is_some()), ("factors", c.factors.is_some())]),
    ];
    let mut problems = Vec::new();
    for (s, fields) in &groups {
        for (name, present) in fields {
            let required = stage >= *s;
            if required && !present {
                problems.push(format!("missing `{name}`"));
            } else if !required && *present {
                problems.push(format!("unexpected `{name}`"));
            }
        }
    }
    if problems.is_empty() {
        Ok(format!("complete through {stage:?}"))
    } else {
        Err(problems.join(", "))
    }
}
