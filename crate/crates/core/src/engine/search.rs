use crate::algebra::{primes, Integer, Poly};
use crate::oracle::Oracle;

/// Ask `M(2), M(3), M(5), ...` until one answers yes. Tries at most `limit`
/// primes, or without bound when `limit` is 0.
pub fn unbounded_search(o: &Oracle, limit: u64) -> Option<Integer> {
    for (tried, p) in primes().enumerate() {
        if limit != 0 && tried as u64 == limit {
            return None;
        }
        let p = Integer::from(p);
        if o.membership(&Poly::constant(p.clone())) {
            return Some(p);
        }
    }
    unreachable!("there are infinitely many primes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_oracle_spec;

    fn oracle(text: &str) -> Oracle {
        Oracle::from_spec(&parse_oracle_spec(text).unwrap())
    }

    #[test]
    fn counts_calls() {
        let o = oracle("kind=pg_ideal\np=3\ng=x^2+1");
        assert_eq!(unbounded_search(&o, 0), Some(3.into()));
        assert_eq!(o.m_calls(), 2);
        let o = oracle("kind=pg_ideal\np=1019\ng=x");
        assert_eq!(unbounded_search(&o, 0), Some(1019.into()));
        assert_eq!(o.m_calls(), 171);
    }

    #[test]
    fn limit() {
        let o = oracle("kind=pg_ideal\np=1019\ng=x");
        assert_eq!(unbounded_search(&o, 10), None);
        assert_eq!(o.m_calls(), 10);
    }
}
