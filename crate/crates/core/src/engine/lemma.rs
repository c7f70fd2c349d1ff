use num_traits::One;

use super::Tracer;
use crate::algebra::{Integer, Poly};
use crate::evidence::Evidence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch<T> {
    Found(T),
    Evidence(Evidence),
}

/// Find some element of the list that is a member, given that the product
/// of the whole list is.
///
/// Each element `a` that is not a member has an inverse `v = nu(a)` modulo
/// the ideal, and `v * P - T * (a v - 1) = T` moves membership from the
/// current product `P = a T` to the tail product `T`.
pub fn max_to_prime(t: &mut Tracer<'_>, list: &[Integer]) -> Branch<Integer> {
    let one = Poly::one();
    let mut product = Poly::constant(list.iter().fold(Integer::one(), |acc, a| acc * a));
    for (i, a_int) in list.iter().enumerate() {
        let a = Poly::constant(a_int.clone());
        if t.member(&a) {
            return Branch::Found(a_int.clone());
        }
        let v = t.nu(&a);
        let e = &(&a * &v) - &one;
        if !t.member(&e) {
            return Branch::Evidence(Evidence::NoInverse { a });
        }
        let tail = Poly::constant(list[i + 1..].iter().fold(Integer::one(), |acc, b| acc * b));
        let vp = &v * &product;
        if !t.member(&vp) {
            return Branch::Evidence(Evidence::MultipleNotMember { lambda: v, a: product });
        }
        let neg_tail = -&tail;
        let s = &neg_tail * &e;
        if !t.member(&s) {
            return Branch::Evidence(Evidence::MultipleNotMember { lambda: neg_tail, a: e });
        }
        if !t.member(&(&vp + &s)) {
            return Branch::Evidence(Evidence::SumNotMember { a: vp, b: s });
        }
        product = tail;
    }
    Branch::Evidence(Evidence::OneIsMember)
}

/// A member is `-1`: either `1` is a member too or multiplication fails.
pub fn unit_member(t: &mut Tracer<'_>) -> Evidence {
    let one = Poly::one();
    if t.member(&one) {
        Evidence::OneIsMember
    } else {
        Evidence::MultipleNotMember { lambda: -&one, a: -&one }
    }
}

/// Either `x` or `x * nu(x) - 1` is a member; return it unless it is the
/// constant `-1`.
pub fn find_nonconstant_member(t: &mut Tracer<'_>) -> Branch<Poly> {
    let x = Poly::x();
    if t.member(&x) {
        return Branch::Found(x);
    }
    let e = &(&x * &t.nu(&x)) - &Poly::one();
    if !t.member(&e) {
        return Branch::Evidence(Evidence::NoInverse { a: x });
    }
    if e.is_constant() {
        return Branch::Evidence(unit_member(t));
    }
    Branch::Found(e)
}
