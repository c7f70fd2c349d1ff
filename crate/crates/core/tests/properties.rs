mod common;

use common::*;
use maxzx::algebra::{factor_integer, is_prime, Degree, Integer, ModPoly, Poly, PolyMatrix, Var};
use maxzx::engine::{geometric_expand, maxzx, pseudo_division};
use maxzx::evidence::{deserialize_certificate, serialize_certificate};
use maxzx::parser::{format_poly, parse_oracle_spec, parse_poly};
use proptest::prelude::*;

fn poly_strategy(max_len: usize, bound: i64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-bound..=bound, 0..=max_len).prop_map(|c| Poly::from_i64(&c))
}

fn nonzero_poly(max_len: usize, bound: i64) -> impl Strategy<Value = Poly> {
    poly_strategy(max_len, bound).prop_filter("nonzero", |p| !p.is_zero())
}

fn trial_factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn degree_of_product(a in nonzero_poly(6, 50), b in nonzero_poly(6, 50)) {
        let (Degree::Finite(da), Degree::Finite(db)) = (a.degree(), b.degree()) else { unreachable!() };
        prop_assert_eq!((&a * &b).degree(), Degree::Finite(da + db));
    }

    #[test]
    fn ring_laws(a in poly_strategy(5, 20), b in poly_strategy(5, 20), c in poly_strategy(5, 20)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        let at = Integer::from(3);
        prop_assert_eq!((&a * &b).eval(&at), a.eval(&at) * b.eval(&at));
    }

    #[test]
    fn substitution_is_composition(a in poly_strategy(4, 9), b in poly_strategy(3, 9), x in -5i64..=5) {
        let composed = a.clone().retag(Var::Y).substitute(&b).unwrap();
        let at = Integer::from(x);
        prop_assert_eq!(composed.eval(&at), a.eval(&b.eval(&at)));
    }

    #[test]
    fn reduction_is_a_ring_map(
        a in poly_strategy(6, 2000),
        b in poly_strategy(6, 2000),
        p in prop::sample::select(vec![2i64, 3, 5, 1019]),
    ) {
        let p = Integer::from(p);
        let ra = ModPoly::reduce(&a, &p).unwrap();
        let rb = ModPoly::reduce(&b, &p).unwrap();
        prop_assert_eq!(ModPoly::reduce(&(&a + &b), &p).unwrap(), ra.add(&rb).unwrap());
        prop_assert_eq!(ModPoly::reduce(&(&a * &b), &p).unwrap(), ra.mul(&rb).unwrap());
    }

    #[test]
    fn factorization_reconstructs(n in prop::num::i64::ANY.prop_filter("nonzero", |n| *n != 0)) {
        let f = factor_integer(&Integer::from(n)).unwrap();
        prop_assert_eq!(f.product(), Integer::from(n));
        prop_assert!(f.factors.iter().all(is_prime));
        prop_assert!(f.factors.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn factorization_matches_trial_division(n in 1u64..2_000_000) {
        let f = factor_integer(&Integer::from(n)).unwrap();
        let expect: Vec<Integer> = trial_factor(n).into_iter().map(Integer::from).collect();
        prop_assert_eq!(f.factors, expect);
    }

    #[test]
    fn pseudo_division_contract(f in nonzero_poly(8, 1000), g in poly_strategy(11, 1000)) {
        let res = pseudo_division(&f, &g).unwrap();
        let dk = num_traits::Pow::pow(f.leading_coeff().unwrap(), res.k);
        prop_assert_eq!(&(&g.scale(&dk) + &(&res.h * &f)), &res.r);
        prop_assert!(res.r.degree() < f.degree());
        let terms = res.h.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count();
        prop_assert_eq!(terms, res.k as usize);
    }

    #[test]
    fn geometric_identity(m in poly_strategy(3, 10), i in 0u32..6) {
        let g = geometric_expand(&m, i as usize);
        prop_assert_eq!((&m + &Poly::one()).pow(i), &Poly::one() + &(&m * &g));
    }

    #[test]
    fn adjugate_matches_permutation_sum(
        n in 1usize..=4,
        entries in prop::collection::vec(poly_strategy(2, 6), 16),
    ) {
        let m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| entries[i * 4 + j].clone().retag(Var::Y)).collect())
            .collect();
        let (det, adj) = PolyMatrix::from_rows(m.clone()).unwrap().det_adjugate();
        prop_assert_eq!(det, leibniz_det(&m, Var::Y));
        prop_assert_eq!(adj, leibniz_adj_row0(&m, Var::Y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ext_gcd_bezout(
        a in poly_strategy(6, 5000),
        b in poly_strategy(6, 5000),
        p in prop::sample::select(vec![2i64, 3, 5, 1019]),
    ) {
        let p = Integer::from(p);
        let (ra, rb) = (ModPoly::reduce(&a, &p).unwrap(), ModPoly::reduce(&b, &p).unwrap());
        prop_assume!(!(ra.is_zero() && rb.is_zero()));
        let (g, s, t) = ModPoly::ext_gcd(&ra, &rb).unwrap();
        prop_assert_eq!(s.mul(&ra).unwrap().add(&t.mul(&rb).unwrap()).unwrap(), g.clone());
        prop_assert_eq!(g.coeffs().last().cloned(), Some(Integer::from(1)));
        prop_assert!(ra.divrem(&g).unwrap().1.is_zero());
        prop_assert!(rb.divrem(&g).unwrap().1.is_zero());
    }

    #[test]
    fn pg_membership_matches_schoolbook(
        g in nonzero_poly(4, 30),
        f in poly_strategy(6, 30),
        p in prop::sample::select(vec![2i64, 3, 5, 7, 11]),
    ) {
        let Ok(spec) = parse_oracle_spec(&format!("kind=pg_ideal\np={p}\ng={g}")) else {
            return Ok(());
        };
        let o = maxzx::oracle::Oracle::from_spec(&spec);
        prop_assert_eq!(o.membership(&f), naive_pg_member(p, &g, &f));
        if naive_irreducible_any(p, &g) && !o.membership(&f) {
            let e = &(&f * &o.nu_value(&f)) - &Poly::one();
            prop_assert!(naive_pg_member(p, &g, &e));
        }
    }
}

fn naive_irreducible_any(p: i64, g: &Poly) -> bool {
    g.degree() <= Degree::Finite(3) && naive_irreducible(p, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn format_then_parse(a in poly_strategy(8, 1_000_000)) {
        prop_assert_eq!(parse_poly(&format_poly(&a)).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificate_json_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, o) = random_oracle(&mut r);
        let out = maxzx(&o).unwrap();
        let text = serialize_certificate(&out.certificate);
        prop_assert_eq!(deserialize_certificate(&text).unwrap(), out.certificate);
    }
}
