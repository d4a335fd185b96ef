//! Bindings and command dispatch over one evaluation context.

use std::collections::BTreeMap;
use std::time::Instant;

use cg_core::selftest::{self, SuiteReport};
use cg_core::{Error, Result};
use serde_json::json;

use crate::expr::{self, Expr};
use crate::report::{Outcome, Report};
use crate::world::{Arg, Shown, World};

pub const DEFAULT_MAX_ORDER: usize = 64;
pub const DEFAULT_SELFTEST_N: usize = 100;

/// A parsed command: name plus its `;`-separated arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub args: Vec<String>,
}

pub const COMMANDS: &[&str] = &["eval", "act", "order", "center", "witness", "selftest"];

/// A script line: a binding, a command, or nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Line {
    Blank,
    Let(String, String),
    Run(Command),
}

pub fn parse_line(line: &str) -> Result<Line> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return Ok(Line::Blank);
    }
    if let Some(rest) = line.strip_prefix("let ") {
        let (name, body) = rest
            .split_once('=')
            .ok_or_else(|| Error::parse(line.len(), "expected '=' in let binding"))?;
        let name = name.trim();
        if !expr::is_identifier(name) || expr::is_reserved(name) || COMMANDS.contains(&name) {
            return Err(Error::parse(4, format!("{name:?} cannot be bound")));
        }
        return Ok(Line::Let(name.to_string(), body.trim().to_string()));
    }
    let (name, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    if !COMMANDS.contains(&name) {
        return Err(Error::parse(0, format!("unknown command {name:?}")));
    }
    let args = if rest.trim().is_empty() {
        Vec::new()
    } else {
        rest.split(';').map(|a| a.trim().to_string()).collect()
    };
    Ok(Line::Run(Command {
        name: name.to_string(),
        args,
    }))
}

pub struct Session<W: World> {
    world: W,
    bindings: BTreeMap<String, W::Val>,
    seed: u64,
    timing: bool,
}

fn arity(cmd: &Command, min: usize, max: usize) -> Result<()> {
    let n = cmd.args.len();
    if n < min || n > max {
        let want = if min == max {
            min.to_string()
        } else {
            format!("{min} to {max}")
        };
        return Err(Error::parse(0, format!("{} takes {want} arguments, got {n}", cmd.name)));
    }
    Ok(())
}

fn parse_usize(what: &str, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("{what} must be a non-negative integer, found {s:?}")))
}

/// A parse error inside a sub-expression, re-anchored to the whole source.
fn shifted(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

fn suite_text(r: &SuiteReport) -> String {
    let mut out = Vec::new();
    for c in &r.checks {
        let status = if c.ok() { "PASS" } else { "FAIL" };
        let mut line = format!("{} {}: {}/{} {status}", r.suite, c.name, c.passed, c.cases);
        if let Some(f) = &c.first_failure {
            line.push_str(&format!(" (first failure: {f})"));
        }
        out.push(line);
    }
    out.join("\n")
}

impl<W: World> Session<W> {
    pub fn new(world: W, seed: u64, timing: bool) -> Self {
        Session {
            world,
            bindings: BTreeMap::new(),
            seed,
            timing,
        }
    }

    pub fn eval_expr(&self, src: &str) -> Result<W::Val> {
        self.eval(&expr::parse(src)?)
    }

    fn eval(&self, e: &Expr) -> Result<W::Val> {
        match e {
            Expr::Lit(kind, text, at) => self.world.literal(*kind, text).map_err(|e| shifted(e, *at)),
            Expr::Name(n, at) => self
                .bindings
                .get(n)
                .cloned()
                .ok_or_else(|| Error::parse(*at, format!("unbound name {n:?}"))),
            Expr::Apply(f, inner) => self.world.apply(f, self.eval(inner)?),
            Expr::Build(f, raw, at) => {
                let arg = match self.bindings.get(raw.trim()) {
                    Some(v) => Arg::Bound(v),
                    None => Arg::Text(raw),
                };
                self.world.build(f, arg).map_err(|e| shifted(e, *at))
            }
            Expr::Mul(a, b) => self.world.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Pow(a, k) => self.world.pow(&self.eval(a)?, *k),
        }
    }

    pub fn bind(&mut self, name: &str, src: &str) -> Result<()> {
        if self.bindings.contains_key(name) {
            return Err(Error::parse(0, format!("{name:?} is already bound")));
        }
        let v = self.eval_expr(src)?;
        self.bindings.insert(name.to_string(), v);
        Ok(())
    }

    fn dispatch(&self, cmd: &Command) -> Result<(Shown, bool)> {
        let a = &cmd.args;
        let shown = match cmd.name.as_str() {
            "eval" => {
                arity(cmd, 1, 1)?;
                self.world.show(&self.eval_expr(&a[0])?)
            }
            "act" => {
                arity(cmd, 2, 2)?;
                self.world.act(&self.eval_expr(&a[0])?, &a[1])?
            }
            "order" => {
                arity(cmd, 1, 2)?;
                let max = match a.get(1) {
                    Some(m) => parse_usize("max", m)?,
                    None => DEFAULT_MAX_ORDER,
                };
                self.world.order(&self.eval_expr(&a[0])?, max)?
            }
            "center" => {
                arity(cmd, 1, 1)?;
                self.world.center(&self.eval_expr(&a[0])?)?
            }
            "witness" => {
                arity(cmd, 2, 2)?;
                self.world.witness(&a[0], &a[1])?
            }
            "selftest" => {
                arity(cmd, 0, 2)?;
                let suite = a.first().map(String::as_str).unwrap_or("all");
                let n = match a.get(1) {
                    Some(n) => parse_usize("n", n)?,
                    None => DEFAULT_SELFTEST_N,
                };
                return self.selftest(suite, n);
            }
            other => return Err(Error::parse(0, format!("unknown command {other:?}"))),
        };
        Ok((shown, false))
    }

    fn selftest(&self, suite: &str, n: usize) -> Result<(Shown, bool)> {
        let names: Vec<&str> = if suite == "all" {
            selftest::SUITES.to_vec()
        } else {
            vec![suite]
        };
        let mut reports = Vec::new();
        for name in names {
            reports.push(selftest::run_suite(name, self.seed, n)?);
        }
        let failures: usize = reports.iter().map(SuiteReport::failures).sum();
        let mut text: Vec<String> = reports.iter().map(suite_text).collect();
        text.push(if failures == 0 {
            "all checks passed".to_string()
        } else {
            format!("{failures} failing cases")
        });
        let shown = Shown {
            text: text.join("\n"),
            json: json!({ "passed": failures == 0, "failures": failures, "suites": reports }),
        };
        Ok((shown, failures > 0))
    }

    pub fn run(&self, cmd: &Command, line: Option<usize>) -> Report {
        let start = Instant::now();
        let result = self.dispatch(cmd);
        let timing_ms = self.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (outcome, failed) = match result {
            Ok((s, failed)) => (
                Outcome::Ok {
                    text: s.text,
                    result: s.json,
                },
                failed,
            ),
            Err(e) => (Outcome::Err(e), false),
        };
        Report {
            command: cmd.name.clone(),
            args: cmd.args.clone(),
            context: self.world.context(),
            line,
            seed: (cmd.name == "selftest").then_some(self.seed),
            outcome,
            timing_ms,
            failed,
        }
    }

    /// A report for a failed `let` line.
    pub fn let_error(&self, name: &str, src: &str, line: usize, e: Error) -> Report {
        Report {
            command: "let".into(),
            args: vec![name.to_string(), src.to_string()],
            context: self.world.context(),
            line: Some(line),
            seed: None,
            outcome: Outcome::Err(e),
            timing_ms: None,
            failed: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_lines() {
        assert_eq!(parse_line("  # note").unwrap(), Line::Blank);
        assert_eq!(
            parse_line("let t = V{0->1,1->0} # swap").unwrap(),
            Line::Let("t".into(), "V{0->1,1->0}".into())
        );
        assert_eq!(
            parse_line("act t ; 0(1)").unwrap(),
            Line::Run(Command {
                name: "act".into(),
                args: vec!["t".into(), "0(1)".into()],
            })
        );
        assert!(parse_line("let J = t").is_err());
        assert!(parse_line("frobnicate t").is_err());
    }
}
