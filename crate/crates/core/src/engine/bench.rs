use std::fmt;
use std::time::{Duration, Instant};

use super::{maxzx_with, unbounded_search, EngineConfig};
use crate::oracle::Oracle;
use crate::parser::OracleSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Maxzx,
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Method::Maxzx => "maxzx",
            Method::Search => "search",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Runs per instance and method; times are averaged.
    pub repeat: u32,
    /// Passed to the search; 0 searches without bound.
    pub search_limit: u64,
    pub engine: EngineConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { repeat: 1, search_limit: 100_000, engine: EngineConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchResult {
    /// Position in the input list.
    pub instance: usize,
    pub method: Method,
    pub outcome: String,
    pub m_calls: u64,
    pub nu_calls: u64,
    /// Mean wall time per run.
    pub time: Duration,
}

fn run_once(spec: &OracleSpec, method: Method, config: &BenchConfig) -> (String, u64, u64, Duration) {
    let o = Oracle::from_spec(spec);
    let start = Instant::now();
    let outcome = match method {
        Method::Maxzx => match maxzx_with(&o, &config.engine) {
            Ok(out) => out.verdict.to_string(),
            Err(e) => format!("error: {e}"),
        },
        Method::Search => match unbounded_search(&o, config.search_limit) {
            Some(p) => format!("prime: {p}"),
            None => format!("none within {}", config.search_limit),
        },
    };
    (outcome, o.m_calls(), o.nu_calls(), start.elapsed())
}

/// Run both methods on a fresh oracle for each spec. Call counts are those of
/// a single run.
pub fn run_bench(specs: &[OracleSpec], config: &BenchConfig) -> Vec<BenchResult> {
    let repeat = config.repeat.max(1);
    let mut rows = Vec::with_capacity(specs.len() * 2);
    for (instance, spec) in specs.iter().enumerate() {
        for method in [Method::Maxzx, Method::Search] {
            let (outcome, m_calls, nu_calls, first) = run_once(spec, method, config);
            let mut total = first;
            for _ in 1..repeat {
                total += run_once(spec, method, config).3;
            }
            rows.push(BenchResult {
                instance,
                method,
                outcome,
                m_calls,
                nu_calls,
                time: total / repeat,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_oracle_spec;

    #[test]
    fn crossover() {
        let specs = vec![
            parse_oracle_spec("kind=pg_ideal\np=3\ng=x^2+1").unwrap(),
            parse_oracle_spec("kind=pg_ideal\np=1019\ng=x").unwrap(),
        ];
        let rows = run_bench(&specs, &BenchConfig { repeat: 3, ..BenchConfig::default() });
        assert_eq!(rows.len(), 4);
        let calls = |i: usize, m: Method| {
            rows.iter().find(|r| r.instance == i && r.method == m).unwrap().m_calls
        };
        assert_eq!(calls(0, Method::Search), 2);
        assert!(calls(0, Method::Search) <= calls(0, Method::Maxzx));
        assert_eq!(calls(1, Method::Search), 171);
        assert_eq!(calls(1, Method::Maxzx), 12);
        assert!(rows.iter().all(|r| r.outcome.starts_with("prime")));
    }

    #[test]
    fn empty_list() {
        assert!(run_bench(&[], &BenchConfig::default()).is_empty());
    }

    #[test]
    fn search_limit_reported() {
        let specs = vec![parse_oracle_spec("kind=constant\nvalue=ff\nnu=1").unwrap()];
        let rows = run_bench(&specs, &BenchConfig { search_limit: 50, ..BenchConfig::default() });
        assert_eq!(rows[1].outcome, "none within 50");
        assert_eq!(rows[1].m_calls, 50);
        assert_eq!(rows[0].outcome, "not-maximal: case5 a = x");
    }
}
