use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::clopen::ClopenSet;
use super::plain::{Bisection, StdPart};
use super::twisted::{TwistedBisection, TwistedPart};
use crate::cantor::Word;
use crate::error::{Error, Result};
use crate::groups::{parse_label, Action, Group};
use crate::text;
use crate::twisted::{format_brick, parse_brick, BrickFn};

/// Splits `B{ lhs => rhs [g], ... }` into `(offset, lhs, rhs, label)`.
fn items(s: &str) -> Result<Vec<(usize, &str, &str, &str)>> {
    let inner = text::braced(s, "B{", "}")?;
    text::split_top_level(inner.text, ',')
        .into_iter()
        .map(|(off, item)| {
            let base = inner.offset + off;
            let arrow = text::find_top_level(item, "=>")
                .ok_or_else(|| Error::parse(base, "expected 'lhs => rhs'"))?;
            let rest = &item[arrow + 2..];
            let (rhs, label) = match rest.find('[') {
                Some(b) => {
                    let tail = rest[b..].trim_end();
                    if !tail.ends_with(']') {
                        return Err(Error::parse(base + arrow + 2 + b, "expected ']' closing the label"));
                    }
                    (&rest[..b], &tail[1..tail.len() - 1])
                }
                None => (rest, ""),
            };
            Ok((base, &item[..arrow], rhs, label))
        })
        .collect()
}

fn write_label<G: Group>(f: &mut fmt::Formatter<'_>, group: &G, g: &G::Elem) -> fmt::Result {
    if group.is_identity(g) {
        Ok(())
    } else {
        write!(f, " [{}]", group.format_elem(g))
    }
}

fn check_flavor(found: &str, expected: String) -> Result<()> {
    if found != expected {
        return Err(Error::ActionMismatch(format!(
            "bisection is over {found}, expected {expected}"
        )));
    }
    Ok(())
}

impl<G: Group> Bisection<G> {
    /// Parses `B{ 0 => 1 [g], ... }`: source word, range word, label.
    pub fn parse(group: G, s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for (base, lhs, rhs, label) in items(s)? {
            let d = lhs.parse::<Word>().map_err(|e| text::offset_err(e, base))?;
            let i = rhs.parse::<Word>().map_err(|e| text::offset_err(e, base))?;
            let g = parse_label(&group, label).map_err(|e| text::offset_err(e, base))?;
            parts.push(StdPart::new(d, i, g));
        }
        Self::new(group, parts)
    }

    pub fn to_json(&self) -> BisectionJson {
        BisectionJson {
            flavor: self.flavor().to_string(),
            parts: self
                .parts()
                .iter()
                .map(|p| PartJson {
                    domain: p.domain.to_string(),
                    image: p.image.to_string(),
                    label: self.group().format_elem(&p.label),
                })
                .collect(),
        }
    }

    pub fn from_json(group: G, j: &BisectionJson) -> Result<Self> {
        let parts = j
            .parts
            .iter()
            .map(|p| {
                Ok(StdPart::new(
                    p.domain.parse()?,
                    p.image.parse()?,
                    parse_label(&group, &p.label)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let b = Self::new(group, parts)?;
        check_flavor(&j.flavor, b.flavor().to_string())?;
        Ok(b)
    }
}

impl<G: Group> fmt::Display for Bisection<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("B{")?;
        for (k, p) in self.parts().iter().enumerate() {
            f.write_str(if k > 0 { ", " } else { " " })?;
            write!(f, "{} => {}", p.domain, p.image)?;
            write_label(f, self.group(), &p.label)?;
        }
        f.write_str(if self.parts().is_empty() { "}" } else { " }" })
    }
}

impl<A: Action> TwistedBisection<A> {
    /// Parses `B{ {s0:0} => {s1:1} [g], ... }`. The left brick is the stored
    /// domain; the source is its relabelling by `g⁻¹`.
    pub fn parse(action: A, s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for (base, lhs, rhs, label) in items(s)? {
            let d = parse_brick(&action, lhs).map_err(|e| text::offset_err(e, base))?;
            let i = parse_brick(&action, rhs).map_err(|e| text::offset_err(e, base))?;
            let g = parse_label(action.group(), label).map_err(|e| text::offset_err(e, base))?;
            parts.push(TwistedPart::new(d, i, g));
        }
        Self::new(action, parts)
    }

    pub fn to_json(&self) -> TwistedBisectionJson {
        let action = self.action();
        let brick = |b: &BrickFn<A::Point>| {
            b.entries()
                .map(|(s, w)| (action.format_point(s), w.to_string()))
                .collect()
        };
        TwistedBisectionJson {
            flavor: self.flavor().to_string(),
            parts: self
                .parts()
                .iter()
                .map(|p| TwistedPartJson {
                    domain: brick(&p.domain),
                    image: brick(&p.image),
                    label: action.group().format_elem(&p.label),
                })
                .collect(),
        }
    }

    pub fn from_json(action: A, j: &TwistedBisectionJson) -> Result<Self> {
        check_flavor(&j.flavor, super::Flavor::Twisted(action.name()).to_string())?;
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
        let parts = j
            .parts
            .iter()
            .map(|p| {
                Ok(TwistedPart::new(
                    brick(&p.domain)?,
                    brick(&p.image)?,
                    parse_label(action.group(), &p.label)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(action, parts)
    }
}

impl<A: Action> fmt::Display for TwistedBisection<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let action = self.action();
        f.write_str("B{")?;
        for (k, p) in self.parts().iter().enumerate() {
            f.write_str(if k > 0 { ", " } else { " " })?;
            write!(
                f,
                "{} => {}",
                format_brick(action, &p.domain),
                format_brick(action, &p.image)
            )?;
            write_label(f, action.group(), &p.label)?;
        }
        f.write_str(if self.parts().is_empty() { "}" } else { " }" })
    }
}

/// Parses a set of cylinders `{0, 10}`; `{}` is empty and `{e}` is everything.
pub fn parse_word_set(s: &str) -> Result<ClopenSet<Word>> {
    let inner = text::braced(s, "{", "}")?;
    let words = text::split_top_level(inner.text, ',')
        .into_iter()
        .map(|(off, item)| item.parse::<Word>().map_err(|e| text::offset_err(e, inner.offset + off)))
        .collect::<Result<Vec<_>>>()?;
    ClopenSet::new(words)
}

pub fn format_word_set(set: &ClopenSet<Word>) -> String {
    let items: Vec<String> = set.blocks().iter().map(Word::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// Parses a set of bricks `{ {0:0}, {1:1} }`; `{}` is empty and `{{}}` is
/// the whole cube.
pub fn parse_brick_set<A: Action>(action: &A, s: &str) -> Result<ClopenSet<BrickFn<A::Point>>> {
    let inner = text::braced(s, "{", "}")?;
    let bricks = text::split_top_level(inner.text, ',')
        .into_iter()
        .map(|(off, item)| parse_brick(action, item).map_err(|e| text::offset_err(e, inner.offset + off)))
        .collect::<Result<Vec<_>>>()?;
    ClopenSet::new(bricks)
}

pub fn format_brick_set<A: Action>(action: &A, set: &ClopenSet<BrickFn<A::Point>>) -> String {
    let items: Vec<String> = set.blocks().iter().map(|b| format_brick(action, b)).collect();
    format!("{{{}}}", items.join(", "))
}

/// JSON form of a bisection of `𝒱₂` or `𝒱₂ × G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisectionJson {
    pub flavor: String,
    pub parts: Vec<PartJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartJson {
    pub domain: String,
    pub image: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedBisectionJson {
    pub flavor: String,
    pub parts: Vec<TwistedPartJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedPartJson {
    pub domain: BTreeMap<String, String>,
    pub image: BTreeMap<String, String>,
    pub label: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, TranslationAction, TrivialGroup};

    #[test]
    fn plain_text_round_trip() {
        let s3 = FiniteGroup::symmetric3();
        let b = Bisection::parse(s3.clone(), "B{ 0 => 1 [1], 1 => 00 }").unwrap();
        assert_eq!(b.to_string(), "B{ 0 => 1 [1], 1 => 00 }");
        assert_eq!(Bisection::parse(s3.clone(), &b.to_string()).unwrap(), b);
        let j = serde_json::to_string(&b.to_json()).unwrap();
        let back: BisectionJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.flavor, "v2xg:s3");
        assert_eq!(Bisection::from_json(s3, &back).unwrap(), b);
        let empty = Bisection::parse(TrivialGroup, "B{}").unwrap();
        assert_eq!(empty.to_string(), "B{}");
        assert!(Bisection::parse(TrivialGroup, "B{ 0 => 1, 01 => 0 }").is_err());
        assert!(Bisection::parse(TrivialGroup, "B{ 0 -> 1 }").is_err());
        assert!(Bisection::parse(TrivialGroup, "B{ 0 => 1 [e }").is_err());
    }

    #[test]
    fn clopen_sets() {
        let u = parse_word_set("{10, 0}").unwrap();
        assert_eq!(format_word_set(&u), "{0, 10}");
        assert!(parse_word_set("{}").unwrap().is_empty());
        assert!(parse_word_set("{e}").unwrap().is_full());
        assert!(parse_word_set("{0, 01}").is_err());
        let act = TranslationAction::new();
        let v = parse_brick_set(&act, "{ {0:0}, {0:1, 1:1} }").unwrap();
        assert_eq!(format_brick_set(&act, &v), "{{0:0}, {0:1, 1:1}}");
        assert!(parse_brick_set(&act, "{{}}").unwrap().is_full());
        assert!(parse_brick_set(&act, "{ {0:0}, {0:01} }").is_err());
    }

    #[test]
    fn twisted_text_round_trip() {
        let act = TranslationAction::new();
        let b = TwistedBisection::parse(act, "B{ {s1:1} => {s0:0} [1] }").unwrap();
        assert_eq!(b.to_string(), "B{ {1:1} => {0:0} [1] }");
        assert_eq!(TwistedBisection::parse(act, &b.to_string()).unwrap(), b);
        let j = serde_json::to_string(&b.to_json()).unwrap();
        let back: TwistedBisectionJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.flavor, "twisted:translation");
        assert_eq!(TwistedBisection::from_json(act, &back).unwrap(), b);
        let mut bad = back.clone();
        bad.flavor = "v2".into();
        assert!(matches!(
            TwistedBisection::from_json(act, &bad),
            Err(Error::ActionMismatch(_))
        ));
    }
}
