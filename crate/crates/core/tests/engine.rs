mod common;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use common::*;
use maxzx::algebra::{Integer, Poly};
use maxzx::engine::{max_to_prime, maxzx, Branch, Tracer};
use maxzx::evidence::{validate_evidence, verify_certificate, Verdict};
use maxzx::oracle::Oracle;
use rand::RngExt;

#[test]
fn lemma_on_1019_follows_inverse_of_minus_one() {
    let o = oracle("kind=pg_ideal\np=1019\ng=x");
    assert_eq!(o.nu_value(&Poly::constant(-1)), Poly::constant(1018));
    let mut t = Tracer::new(&o);
    let r = max_to_prime(&mut t, &[Integer::from(-1), Integer::from(1019)]);
    assert_eq!(r, Branch::Found(Integer::from(1019)));
    let queries: Vec<String> = t.trace().iter().map(|e| e.query.to_string()).collect();
    assert_eq!(queries, ["-1", "-1019", "-1037342", "1038361", "1019", "1019"]);
    assert!(t.trace()[1..].iter().all(|e| e.answer));
}

/// Small table oracles over products of the factors and related values;
/// the lemma's answer must be one of the two disjuncts, checked directly.
#[test]
fn lemma_brute_force() {
    let mut r = rng(17);
    let pool = [-1i64, 2, 3, 5, 7];
    for _ in 0..2000 {
        let len = r.random_range(1..=4);
        let list: Vec<Integer> = (0..len).map(|_| Integer::from(pool[r.random_range(0..pool.len())])).collect();
        let product: Integer = list.iter().product();

        let mut universe: Vec<Poly> = vec![Poly::constant(product.clone()), Poly::one()];
        for i in 0..len {
            universe.push(Poly::constant(list[i].clone()));
            universe.push(Poly::constant(list[i..].iter().product::<Integer>()));
        }
        while universe.len() < 30 {
            universe.push(random_poly(&mut r, 1, 30));
        }
        let members: HashSet<Poly> = universe
            .iter()
            .filter(|_| r.random_range(0..3) > 0)
            .cloned()
            .chain([Poly::constant(product.clone())])
            .collect();
        let nus: HashMap<Poly, Poly> = universe
            .iter()
            .map(|u| (u.clone(), Poly::constant(r.random_range(-40..=40))))
            .collect();
        let members = Arc::new(members);
        let m2 = Arc::clone(&members);
        let o = Oracle::from_fns(
            move |f| m2.contains(f),
            move |f| nus.get(f).cloned().unwrap_or_else(Poly::zero),
        );

        let mut t = Tracer::new(&o);
        match max_to_prime(&mut t, &list) {
            Branch::Found(a) => {
                assert!(list.contains(&a));
                assert!(members.contains(&Poly::constant(a)));
            }
            Branch::Evidence(e) => assert!(validate_evidence(&o, &e), "{e} for {list:?}"),
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let mut r = rng(99);
    for _ in 0..200 {
        let seed = r.random::<u64>();
        let (_, a) = random_oracle(&mut rng(seed));
        let (_, b) = random_oracle(&mut rng(seed));
        let (oa, ob) = (maxzx(&a).unwrap(), maxzx(&b).unwrap());
        assert_eq!(oa, ob);
        assert_eq!((a.m_calls(), a.nu_calls()), (b.m_calls(), b.nu_calls()));
    }
}

#[test]
fn pg_ideals_never_give_evidence_when_maximal() {
    let primes = sieve(30);
    let mut tried = 0;
    for &p in &primes {
        let p = p as i64;
        for c0 in -3..=3 {
            for c1 in -2..=2 {
                for lead in 1..=3 {
                    let g = Poly::from_i64(&[c0, c1, lead]);
                    if !naive_irreducible(p, &g) {
                        continue;
                    }
                    tried += 1;
                    let o = oracle(&format!("kind=pg_ideal\np={p}\ng={g}"));
                    let out = maxzx(&o).unwrap();
                    assert_eq!(out.verdict, Verdict::Prime(p.into()), "<{p}, {g}>");
                    assert!(verify_certificate(&o, &out.certificate).overall());
                }
            }
        }
    }
    assert!(tried > 100);
}

#[test]
fn reducible_pg_ideal_still_sound() {
    // x^2 - 1 = (x - 1)(x + 1) mod 5: not maximal, and nu has no inverse for x - 1
    let o = oracle("kind=pg_ideal\np=5\ng=x^2 - 1");
    let out = maxzx(&o).unwrap();
    match &out.verdict {
        Verdict::Prime(p) => assert!(o.membership(&Poly::constant(p.clone()))),
        Verdict::NotMaximal(e) => assert!(validate_evidence(&o, e)),
    }
    assert!(verify_certificate(&o, &out.certificate).overall());
}

#[test]
fn certificate_fails_against_other_oracle() {
    let a = oracle("kind=pg_ideal\np=1019\ng=x");
    let b = oracle("kind=pg_ideal\np=3\ng=x^2+1");
    let out = maxzx(&a).unwrap();
    let report = verify_certificate(&b, &out.certificate);
    assert!(!report.overall());
    let failed: Vec<&str> = report.failed().map(|c| c.name).collect();
    assert!(failed.contains(&"1 membership replay"), "{failed:?}");
}

#[test]
fn principal_ideal_gives_evidence() {
    // <x^2 - 2> contains no prime, so some ideal condition must fail
    let o = oracle("kind=principal\ng=x^2 - 2\nnu=x");
    let out = maxzx(&o).unwrap();
    let Verdict::NotMaximal(e) = &out.verdict else { panic!("{}", out.verdict) };
    assert!(validate_evidence(&o, e));
    assert!(verify_certificate(&o, &out.certificate).overall());
}
