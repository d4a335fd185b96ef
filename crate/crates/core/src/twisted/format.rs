use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::brick::{BrickFn, CubePoint};
use super::table::{Piece, TwistTable};
use crate::cantor::{CantorPoint, Word};
use crate::error::{Error, Result};
use crate::groups::{parse_label, Action, Group};
use crate::text;

fn last_top_level_colon(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ':' if depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found
}

/// Splits `{k:v, ...}` into `(offset, key, value)` triples.
fn entries(s: &str) -> Result<Vec<(usize, &str, &str)>> {
    let inner = text::braced(s, "{", "}")?;
    text::split_top_level(inner.text, ',')
        .into_iter()
        .map(|(off, item)| {
            let base = inner.offset + off;
            let c = last_top_level_colon(item)
                .ok_or_else(|| Error::parse(base, "expected 'coordinate:value'"))?;
            Ok((base, &item[..c], &item[c + 1..]))
        })
        .collect()
}

/// Parses `{s0:01, s3:1}`; `{}` is the whole cube.
pub fn parse_brick<A: Action>(action: &A, s: &str) -> Result<BrickFn<A::Point>> {
    let mut out = BrickFn::full();
    for (base, k, v) in entries(s)? {
        let pt = action.parse_point(k).map_err(|e| text::offset_err(e, base))?;
        let w = v.parse::<Word>().map_err(|e| text::offset_err(e, base + k.len() + 1))?;
        if out.get(&pt).is_some() {
            return Err(Error::parse(base, format!("coordinate {} listed twice", k.trim())));
        }
        out.set(pt, w);
    }
    Ok(out)
}

pub fn format_brick<A: Action>(action: &A, b: &BrickFn<A::Point>) -> String {
    let items: Vec<String> = b
        .entries()
        .map(|(s, w)| format!("{}:{}", action.format_point(s), w))
        .collect();
    format!("{{{}}}", items.join(", "))
}

/// Parses `{0:(1), 3:01(0)}`, with an optional `*:(1)` entry for the value
/// at unlisted coordinates (default `(0)`).
pub fn parse_cube_point<A: Action>(action: &A, s: &str) -> Result<CubePoint<A::Point>> {
    let mut default = CantorPoint::constant(0);
    let mut listed = Vec::new();
    for (base, k, v) in entries(s)? {
        let x = v
            .parse::<CantorPoint>()
            .map_err(|e| text::offset_err(e, base + k.len() + 1))?;
        if k.trim() == "*" {
            default = x;
        } else {
            let pt = action.parse_point(k).map_err(|e| text::offset_err(e, base))?;
            listed.push((pt, x));
        }
    }
    Ok(CubePoint::new(listed, default))
}

pub fn format_cube_point<A: Action>(action: &A, k: &CubePoint<A::Point>) -> String {
    let mut items: Vec<String> = k
        .entries()
        .map(|(s, x)| format!("{}:{}", action.format_point(s), x))
        .collect();
    if *k.default_value() != CantorPoint::constant(0) {
        items.push(format!("*:{}", k.default_value()));
    }
    format!("{{{}}}", items.join(", "))
}

impl<A: Action> TwistTable<A> {
    /// Parses `SV{ {0:0} -[g]-> {1:1}, ... }`; `->` alone is the identity twist.
    pub fn parse(action: A, s: &str) -> Result<Self> {
        let inner = text::braced(s, "SV{", "}")?;
        let mut pieces = Vec::new();
        for (off, item) in text::split_top_level(inner.text, ',') {
            let base = inner.offset + off;
            let arrow = text::find_top_level(item, "->")
                .ok_or_else(|| Error::parse(base, "expected 'brick -> brick'"))?;
            let lhs = &item[..arrow];
            let (dom_txt, twist) = match text::find_top_level(lhs, "-[") {
                Some(t) => {
                    let close = lhs.trim_end();
                    if !close.ends_with(']') {
                        return Err(Error::parse(base + t, "expected ']' closing the twist"));
                    }
                    let g = parse_label(action.group(), &close[t + 2..close.len() - 1])
                        .map_err(|e| text::offset_err(e, base + t + 2))?;
                    (&lhs[..t], g)
                }
                None => (lhs, action.group().identity()),
            };
            let domain = parse_brick(&action, dom_txt).map_err(|e| text::offset_err(e, base))?;
            let image = parse_brick(&action, &item[arrow + 2..])
                .map_err(|e| text::offset_err(e, base + arrow + 2))?;
            pieces.push(Piece::new(domain, twist, image));
        }
        Self::new(action, pieces)
    }

    pub fn to_json(&self) -> TwistTableJson {
        let action = self.action();
        let brick = |b: &BrickFn<A::Point>| {
            b.entries()
                .map(|(s, w)| (action.format_point(s), w.to_string()))
                .collect()
        };
        TwistTableJson {
            action: action.name(),
            pieces: self
                .pieces()
                .iter()
                .map(|p| PieceJson {
                    domain: brick(&p.domain),
                    twist: action.group().format_elem(&p.twist),
                    image: brick(&p.image),
                })
                .collect(),
        }
    }

    pub fn from_json(action: A, j: &TwistTableJson) -> Result<Self> {
        if j.action != action.name() {
            return Err(Error::ActionMismatch(format!(
                "table is over {}, expected {}",
                j.action,
                action.name()
            )));
        }
        let brick = |m: &BTreeMap<String, String>| -> Result<BrickFn<A::Point>> {
            let mut out = BrickFn::full();
            for (k, v) in m {
                let pt = action.parse_point(k)?;
                if out.get(&pt).is_some() {
                    return Err(Error::parse(0, format!("coordinate {k} listed twice")));
                }
                out.set(pt, v.parse()?);
            }
            Ok(out)
        };
        let pieces = j
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece::new(
                    brick(&p.domain)?,
                    parse_label(action.group(), &p.twist)?,
                    brick(&p.image)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(action, pieces)
    }
}

impl<A: Action> fmt::Display for TwistTable<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let action = self.action();
        let group = action.group();
        f.write_str("SV{")?;
        for (k, p) in self.pieces().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_brick(action, &p.domain))?;
            if group.is_identity(&p.twist) {
                f.write_str(" -> ")?;
            } else {
                write!(f, " -[{}]-> ", group.format_elem(&p.twist))?;
            }
            f.write_str(&format_brick(action, &p.image))?;
        }
        f.write_str("}")
    }
}

/// JSON form of a twist table, headed by the action's name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistTableJson {
    pub action: String,
    pub pieces: Vec<PieceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceJson {
    pub domain: BTreeMap<String, String>,
    pub twist: String,
    pub image: BTreeMap<String, String>,
}
