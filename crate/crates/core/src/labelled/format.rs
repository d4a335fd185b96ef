use std::fmt;

use serde::{Deserialize, Serialize};

use super::GTable;
use crate::cantor::{PartitionSet, Word};
use crate::error::{Error, Result};
use crate::groups::{parse_label, Group};
use crate::text;

impl<G: Group> GTable<G> {
    /// Parses `V{ w -> w' : label, ... }`; an omitted label is the identity.
    pub fn parse(group: G, s: &str) -> Result<Self> {
        let inner = text::braced(s, "V{", "}")?;
        let mut pairs = Vec::new();
        for (off, item) in text::split_top_level(inner.text, ',') {
            let base = inner.offset + off;
            let arrow = text::find_top_level(item, "->")
                .ok_or_else(|| Error::parse(base, "expected 'w -> w'' pair"))?;
            let lhs = &item[..arrow];
            let rest = &item[arrow + 2..];
            let (rhs, label) = match text::find_top_level(rest, ":") {
                Some(c) => (&rest[..c], &rest[c + 1..]),
                None => (rest, ""),
            };
            let d = lhs.parse::<Word>().map_err(|e| text::offset_err(e, base))?;
            let i = rhs
                .parse::<Word>()
                .map_err(|e| text::offset_err(e, base + arrow + 2))?;
            let g = parse_label(&group, label).map_err(|e| text::offset_err(e, base))?;
            pairs.push((d, i, g));
        }
        if pairs.is_empty() {
            return Err(Error::parse(inner.offset, "empty table"));
        }
        Self::from_pairs(group, pairs)
    }

    pub fn to_json(&self) -> GTableJson {
        GTableJson {
            domain: self.domain().words().iter().map(Word::to_string).collect(),
            image: self.image().words().iter().map(Word::to_string).collect(),
            perm: self.perm().iter().map(|p| p + 1).collect(),
            labels: self.labels().iter().map(|g| self.group().format_elem(g)).collect(),
        }
    }

    /// Reads the JSON form; `perm` is 1-based there. The result is reduced.
    pub fn from_json(group: G, j: &GTableJson) -> Result<Self> {
        let words = |v: &[String]| -> Result<Vec<Word>> { v.iter().map(|s| s.parse()).collect() };
        let domain_words = words(&j.domain)?;
        let image_words = words(&j.image)?;
        if domain_words.windows(2).any(|p| p[0] >= p[1]) || image_words.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::parse(0, "partition words must be listed in increasing order"));
        }
        let domain = PartitionSet::new(domain_words)?;
        let image = PartitionSet::new(image_words)?;
        let perm = j
            .perm
            .iter()
            .map(|&p| {
                p.checked_sub(1).ok_or(Error::Index {
                    index: 0,
                    size: j.perm.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = j
            .labels
            .iter()
            .map(|s| parse_label(&group, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(group, domain, image, perm, labels)?.reduce())
    }
}

impl<G: Group> fmt::Display for GTable<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("V{")?;
        for (k, (d, i, g)) in self.pairs().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d} -> {i}")?;
            if !self.group().is_identity(g) {
                write!(f, " : {}", self.group().format_elem(g))?;
            }
        }
        f.write_str("}")
    }
}

/// JSON form of a table: words as strings, a 1-based permutation, and
/// labels in the oracle's syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GTableJson {
    pub domain: Vec<String>,
    pub image: Vec<String>,
    pub perm: Vec<usize>,
    pub labels: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FreeGroup, TrivialGroup, Zn};

    #[test]
    fn parse_print_examples() {
        let f2 = FreeGroup::new(2).unwrap();
        let t = GTable::parse(f2, "V{ 00 -> 1 : a, 01 -> 00, 1 -> 01 : b^-1 }").unwrap();
        assert_eq!(t.to_string(), "V{00 -> 1 : a, 01 -> 00, 1 -> 01 : b^-1}");
        assert_eq!(GTable::parse(f2, &t.to_string()).unwrap(), t);
        let id = GTable::parse(TrivialGroup, "V{0->0,1->1}").unwrap();
        assert_eq!(id.to_string(), "V{e -> e}");
        let z2 = Zn::new(2).unwrap();
        let c = GTable::parse(z2, "V{0 -> 1 : (1,-3), 1 -> 0}").unwrap();
        assert_eq!(c.labels()[0], vec![1, -3]);
    }

    #[test]
    fn parse_errors() {
        let f2 = FreeGroup::new(2).unwrap();
        assert!(GTable::parse(f2, "V{0 -> 1}").is_err());
        assert!(GTable::parse(f2, "V{0 1, 1 -> 0}").is_err());
        assert!(GTable::parse(f2, "V{0 -> 1 : q, 1 -> 0}").is_err());
        assert!(GTable::parse(f2, "V{}").is_err());
        assert!(GTable::parse(f2, "{0 -> 1, 1 -> 0}").is_err());
    }

    #[test]
    fn json_round_trip() {
        let f2 = FreeGroup::new(2).unwrap();
        let t = GTable::parse(f2, "V{00 -> 1 : a, 01 -> 00, 1 -> 01 : b^-1}").unwrap();
        let j = t.to_json();
        assert_eq!(j.perm, vec![3, 1, 2]);
        let s = serde_json::to_string(&j).unwrap();
        let back: GTableJson = serde_json::from_str(&s).unwrap();
        assert_eq!(GTable::from_json(f2, &back).unwrap(), t);
        let mut bad = j.clone();
        bad.perm = vec![0, 1, 2];
        assert!(GTable::from_json(f2, &bad).is_err());
    }
}
