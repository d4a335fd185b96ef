use std::fmt;
use std::str::FromStr;

use super::point::CantorPoint;
use super::word::Word;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::text;

/// A complete prefix code over `{0,1}`, kept in strictly increasing
/// lexicographic order. Its cylinders `w𝒞` tile the Cantor space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionSet {
    words: Vec<Word>,
}

/// Exact measure `Σ 2^-|w|` of a family of cylinders.
pub(crate) fn cylinder_measure<'a>(words: impl IntoIterator<Item = &'a Word>) -> Dyadic {
    words
        .into_iter()
        .map(|w| Dyadic::pow2_neg(w.len() as u64))
        .sum()
}

impl PartitionSet {
    /// Validates and sorts. Overlaps are reported before gaps.
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        words.sort();
        // After sorting, any prefix relation shows up between neighbours.
        for pair in words.windows(2) {
            if pair[0].is_prefix_of(&pair[1]) {
                return Err(Error::Overlap {
                    first: pair[0].to_string(),
                    second: pair[1].to_string(),
                });
            }
        }
        let m = cylinder_measure(&words);
        if !m.is_one() {
            return Err(Error::Gap {
                measure: m.to_string(),
            });
        }
        Ok(PartitionSet { words })
    }

    /// Trusted constructor for words already known to form a sorted partition.
    pub(crate) fn from_sorted_unchecked(words: Vec<Word>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1] && !p[0].is_prefix_of(&p[1])));
        PartitionSet { words }
    }

    /// The one-block partition `{∅}`.
    pub fn trivial() -> Self {
        PartitionSet {
            words: vec![Word::empty()],
        }
    }

    /// `Pₙ`, all words of length exactly `n`.
    pub fn uniform(n: usize) -> Self {
        PartitionSet {
            words: Word::all_of_length(n),
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.binary_search(w).ok()
    }

    /// Index of the block containing `x`; always exists for a partition.
    pub fn block_of(&self, x: &CantorPoint) -> usize {
        self.words
            .iter()
            .position(|w| x.starts_with(w))
            .expect("partition sets cover the Cantor space")
    }

    /// Index of the block that is a prefix of the finite word `w`, if any.
    pub fn block_prefixing(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|b| b.is_prefix_of(w))
    }

    /// Replaces the block at `index` (0-based) by its two children.
    pub fn expand(&self, index: usize) -> Result<Self> {
        if index >= self.words.len() {
            return Err(Error::Index {
                index,
                size: self.words.len(),
            });
        }
        let mut words = Vec::with_capacity(self.words.len() + 1);
        words.extend_from_slice(&self.words[..index]);
        words.push(self.words[index].child(0));
        words.push(self.words[index].child(1));
        words.extend_from_slice(&self.words[index + 1..]);
        Ok(PartitionSet { words })
    }

    /// True when every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &PartitionSet) -> bool {
        self.words
            .iter()
            .all(|w| coarser.block_prefixing(w).is_some())
    }

    pub fn measure(&self) -> Dyadic {
        cylinder_measure(&self.words)
    }
}

/// The coarsest partition refining both inputs.
///
/// Two cylinders meet iff one word prefixes the other, and then their
/// intersection is the longer word's cylinder.
pub fn common_refinement(p: &PartitionSet, q: &PartitionSet) -> PartitionSet {
    // Walk both sorted partitions left to right; the two current blocks always
    // start at the same point of the Cantor order, so one prefixes the other.
    let (pw, qw) = (&p.words, &q.words);
    let mut out = Vec::with_capacity(pw.len().max(qw.len()));
    let (mut i, mut j) = (0, 0);
    while i < pw.len() && j < qw.len() {
        let (u, v) = (&pw[i], &qw[j]);
        if u == v {
            out.push(u.clone());
            i += 1;
            j += 1;
        } else if u.is_prefix_of(v) {
            out.push(v.clone());
            j += 1;
            if qw.get(j).is_none_or(|next| !u.is_prefix_of(next)) {
                i += 1;
            }
        } else if v.is_prefix_of(u) {
            out.push(u.clone());
            i += 1;
            if pw.get(i).is_none_or(|next| !v.is_prefix_of(next)) {
                j += 1;
            }
        } else if u < v {
            i += 1;
        } else {
            j += 1;
        }
    }
    PartitionSet::from_sorted_unchecked(out)
}

impl FromStr for PartitionSet {
    type Err = Error;

    /// `{00,01,1}`; the trivial partition is `{e}`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = text::braced(s, "{", "}")?;
        let mut words = Vec::new();
        for (off, item) in text::split_top_level(inner.text, ',') {
            let item_t = item.trim();
            let w = item_t.parse::<Word>().map_err(|e| text::offset_err(e, inner.offset + off))?;
            words.push(w);
        }
        PartitionSet::new(words)
    }
}

impl fmt::Display for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartitionSet{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PartitionSet {
        s.parse().unwrap()
    }

    fn words(items: &[&str]) -> Vec<Word> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn validate_examples() {
        let p = PartitionSet::new(words(&["11", "0", "10"])).unwrap();
        assert_eq!(p.to_string(), "{0,10,11}");
        assert!(matches!(
            PartitionSet::new(words(&["0", "1", "1"])),
            Err(Error::Overlap { .. })
        ));
        // 2^-1 + 2^-2 = 3/4.
        match PartitionSet::new(words(&["0", "10"])) {
            Err(Error::Gap { measure }) => assert_eq!(measure, "3/2^2"),
            other => panic!("expected gap, got {other:?}"),
        }
        assert!(matches!(
            "{0,12}".parse::<PartitionSet>(),
            Err(Error::Alphabet { .. })
        ));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(ps("{0,1}").expand(0).unwrap(), ps("{00,01,1}"));
        assert_eq!(PartitionSet::trivial().expand(0).unwrap(), ps("{0,1}"));
        assert_eq!(ps("{0,10,11}").expand(1).unwrap(), ps("{0,100,101,11}"));
        assert!(matches!(ps("{0,1}").expand(2), Err(Error::Index { .. })));
    }

    /// Pairwise oracle: keep the longer word of every comparable pair.
    fn refinement_oracle(p: &PartitionSet, q: &PartitionSet) -> PartitionSet {
        let mut out: Vec<Word> = p
            .words()
            .iter()
            .flat_map(|u| q.words().iter().filter_map(move |v| u.meet(v)))
            .collect();
        out.sort();
        out.dedup();
        PartitionSet::new(out).unwrap()
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(common_refinement(&ps("{0,1}"), &ps("{0,1}")), ps("{0,1}"));
        assert_eq!(
            common_refinement(&ps("{0,1}"), &ps("{00,01,1}")),
            ps("{00,01,1}")
        );
        assert_eq!(
            common_refinement(&ps("{0,10,11}"), &ps("{00,01,1}")),
            ps("{00,01,10,11}")
        );
        for (a, b) in [
            ("{e}", "{000,001,01,1}"),
            ("{0,100,101,11}", "{00,010,011,1}"),
            ("{000,001,01,10,11}", "{0,1}"),
        ] {
            let (a, b) = (ps(a), ps(b));
            assert_eq!(common_refinement(&a, &b), refinement_oracle(&a, &b));
            assert_eq!(common_refinement(&b, &a), refinement_oracle(&a, &b));
        }
    }

    #[test]
    fn measures_are_exact() {
        assert!(ps("{00,01,10,110,111}").measure().is_one());
        assert!(PartitionSet::uniform(5).measure().is_one());
    }
}
