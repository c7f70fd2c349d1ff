use std::fs;
use std::io::{self, BufRead, Write};

use crate::engine::maxzx;
use crate::evidence::{serialize_certificate, Outcome};
use crate::oracle::{Constant, Oracle};
use crate::parser::{parse_bool, parse_poly, OverrideLine};
use crate::algebra::Poly;

const HELP: &str = "\
commands:
  run                      run the engine on the current oracle
  set M <poly> = tt|ff     override membership
  set nu <poly> = <poly>   override nu
  show overrides
  show cert
  save cert <path>
  reset                    drop all overrides
  quit";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Continue(String),
    Quit,
}

/// REPL state: the oracle with its overrides and the last outcome.
pub struct Session {
    oracle: Oracle,
    last: Option<Outcome>,
}

impl Session {
    pub fn new(oracle: Oracle) -> Self {
        Session { oracle, last: None }
    }

    /// Membership always false, `nu = 1`.
    pub fn empty() -> Self {
        Session::new(Oracle::new(Constant::new(false, Poly::one())))
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    pub fn last_outcome(&self) -> Option<&Outcome> {
        self.last.as_ref()
    }

    pub fn execute(&mut self, line: &str) -> Step {
        let line = line.trim();
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let reply = match (cmd, rest) {
            ("", _) => String::new(),
            ("quit" | "exit", "") => return Step::Quit,
            ("help", "") => HELP.to_string(),
            ("run", "") => self.run(),
            ("set", _) => match self.set(rest) {
                Ok(msg) | Err(msg) => msg,
            },
            ("show", "overrides") => {
                let lines: Vec<String> = self.oracle.overrides().iter().map(|o| o.to_string()).collect();
                if lines.is_empty() {
                    "no overrides".into()
                } else {
                    lines.join("\n")
                }
            }
            ("show", "cert") => match &self.last {
                Some(o) => serialize_certificate(&o.certificate),
                None => "no run yet".into(),
            },
            ("save", _) if rest.starts_with("cert ") => {
                let path = rest["cert ".len()..].trim();
                match &self.last {
                    Some(o) => match fs::write(path, serialize_certificate(&o.certificate)) {
                        Ok(()) => format!("saved {path}"),
                        Err(e) => format!("error: {path}: {e}"),
                    },
                    None => "no run yet".into(),
                }
            }
            ("reset", "") => {
                self.oracle = self.oracle.without_overrides();
                self.last = None;
                "overrides cleared".into()
            }
            _ => format!("unknown command `{line}`; try `help`"),
        };
        Step::Continue(reply)
    }

    fn run(&mut self) -> String {
        self.oracle.reset_counters();
        match maxzx(&self.oracle) {
            Ok(out) => {
                let msg = format!("{} ({} membership calls)", out.verdict, self.oracle.m_calls());
                self.last = Some(out);
                msg
            }
            Err(e) => format!("error: {e}"),
        }
    }

    fn set(&mut self, rest: &str) -> Result<String, String> {
        let (target, body) = rest
            .split_once(char::is_whitespace)
            .ok_or("usage: set M <poly> = tt|ff or set nu <poly> = <poly>")?;
        let (key, value) = body.split_once('=').ok_or("expected `=`")?;
        let key = parse_poly(key).map_err(|e| format!("error: key: {e}"))?;
        let line = match target {
            "M" => {
                let v = parse_bool(value).ok_or_else(|| format!("error: expected tt or ff, got `{}`", value.trim()))?;
                OverrideLine::Member(key, v)
            }
            "nu" => OverrideLine::Nu(key, parse_poly(value).map_err(|e| format!("error: value: {e}"))?),
            other => return Err(format!("error: unknown target `{other}`; use M or nu")),
        };
        let msg = line.to_string();
        self.oracle = self.oracle.with_override(line);
        Ok(msg)
    }
}

pub fn run_repl(mut session: Session, input: &mut dyn BufRead, out: &mut dyn Write) -> io::Result<()> {
    let mut line = String::new();
    loop {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(());
        }
        match session.execute(&line) {
            Step::Quit => return Ok(()),
            Step::Continue(msg) if msg.is_empty() => {}
            Step::Continue(msg) => writeln!(out, "{msg}")?,
        }
    }
}
