//! Element expressions: literals, bindings, `*`, `^k`, and a few named maps.
//!
//! ```text
//! expr   := power ('*' power)*
//! power  := atom ('^' ['-'|'+'] digits)*
//! atom   := literal | name | func '(' ... ')' | '(' expr ')'
//! ```

use cg_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LitKind {
    /// `V{...}`
    Table,
    /// `SV{...}`
    Twist,
    /// `B{...}`
    Bisection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Literal text and its byte offset in the source.
    Lit(LitKind, String, usize),
    Name(String, usize),
    /// A map applied to a sub-expression: `pi`, `J`, `I`.
    Apply(String, Box<Expr>),
    /// A constructor reading raw text (at the given offset): `iota0`,
    /// `iotaE`, `elem`, `tau`, `torsion`.
    Build(String, String, usize),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

pub const APPLY_FUNCS: &[&str] = &["pi", "J", "I"];
pub const BUILD_FUNCS: &[&str] = &["iota0", "iotaE", "elem", "tau", "torsion"];

pub fn is_reserved(name: &str) -> bool {
    APPLY_FUNCS.contains(&name) || BUILD_FUNCS.contains(&name)
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() != Some('*') {
                return Ok(lhs);
            }
            self.pos += 1;
            let rhs = self.power()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() != Some('^') {
                return Ok(base);
            }
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if matches!(self.peek(), Some('-' | '+')) {
                self.pos += 1;
            }
            let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
            if digits == 0 {
                return Err(Error::parse(self.pos, "expected an integer exponent"));
            }
            self.pos += digits;
            let k: i64 = self.src[start..self.pos]
                .parse()
                .map_err(|_| Error::parse(start, "exponent out of range"))?;
            base = Expr::Pow(Box::new(base), k);
        }
    }

    /// The end of the bracket group opened at byte `open`.
    fn matching(&self, open: usize) -> Result<usize> {
        let mut depth = 0i32;
        for (i, c) in self.src[open..].char_indices() {
            match c {
                '(' | '{' | '[' => depth += 1,
                ')' | '}' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(open + i);
                    }
                }
                _ => {}
            }
        }
        Err(Error::parse(open, "unclosed bracket"))
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        for (prefix, kind) in [("SV{", LitKind::Twist), ("V{", LitKind::Table), ("B{", LitKind::Bisection)] {
            if self.rest().starts_with(prefix) {
                let close = self.matching(start + prefix.len() - 1)?;
                self.pos = close + 1;
                return Ok(Expr::Lit(kind, self.src[start..self.pos].to_string(), start));
            }
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let len = self
                    .rest()
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                    .count();
                let name = self.src[start..start + len].to_string();
                self.pos += len;
                if !is_reserved(&name) {
                    return Ok(Expr::Name(name, start));
                }
                self.skip_ws();
                if self.peek() != Some('(') {
                    return Err(Error::parse(self.pos, format!("expected '(' after {name}")));
                }
                let open = self.pos;
                let close = self.matching(open)?;
                if BUILD_FUNCS.contains(&name.as_str()) {
                    self.pos = close + 1;
                    return Ok(Expr::Build(name, self.src[open + 1..close].to_string(), open + 1));
                }
                self.pos = open + 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.pos != close {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos = close + 1;
                Ok(Expr::Apply(name, Box::new(inner)))
            }
            Some(c) => Err(Error::parse(start, format!("unexpected {c:?}"))),
            None => Err(Error::parse(start, "unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_literals() {
        let e = parse("V{0->1,1->0} * t^-1 * J(x)^2").unwrap();
        let Expr::Mul(lhs, rhs) = e else { panic!() };
        assert!(matches!(*rhs, Expr::Pow(_, 2)));
        let Expr::Mul(a, b) = *lhs else { panic!() };
        assert_eq!(*a, Expr::Lit(LitKind::Table, "V{0->1,1->0}".into(), 0));
        assert_eq!(*b, Expr::Pow(Box::new(Expr::Name("t".into(), 15)), -1));
    }

    #[test]
    fn raw_arguments_keep_text() {
        assert_eq!(
            parse("iotaE((1,0))").unwrap(),
            Expr::Build("iotaE".into(), "(1,0)".into(), 6)
        );
        assert_eq!(
            parse("SV{ {0:0} -[1]-> {1:1} }").unwrap(),
            Expr::Lit(LitKind::Twist, "SV{ {0:0} -[1]-> {1:1} }".into(), 0)
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("t *"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("t ^ x"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("V{0->1"), Err(Error::Parse { pos: 1, .. })));
        assert!(parse("pi t").is_err());
        assert!(parse("(t").is_err());
    }
}
