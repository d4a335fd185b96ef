use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest word accepted from external input.
pub const MAX_WORD_LEN: usize = 1 << 16;

/// A finite word over `{0,1}`. The empty word is written `e`.
///
/// The derived ordering is the lexicographic order induced by `0 < 1`, with a
/// proper prefix sorting before all of its extensions.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

/// Lexicographic comparison of words.
pub fn lex_cmp(a: &Word, b: &Word) -> Ordering {
    a.cmp(b)
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from bits, rejecting anything other than 0 and 1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Alphabet {
                found: char::from(b'0'.wrapping_add(bits[pos])),
                pos,
            });
        }
        if bits.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len: bits.len(),
                max: MAX_WORD_LEN,
            });
        }
        Ok(Word(bits.to_vec()))
    }

    pub(crate) fn from_vec(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Word(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// `self` followed by `bit`.
    pub fn child(&self, bit: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(bit);
        Word(v)
    }

    /// Splits off the final bit.
    pub fn parent(&self) -> Option<(Word, u8)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Word(rest.to_vec()), last))
    }

    /// The word differing from `self` only in its last bit.
    pub fn sibling(&self) -> Option<Word> {
        let mut v = self.0.clone();
        let last = v.last_mut()?;
        *last ^= 1;
        Some(Word(v))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Like [`Word::concat`] but enforces [`MAX_WORD_LEN`].
    pub fn concat_checked(&self, other: &Word) -> Result<Word> {
        let len = self.len() + other.len();
        if len > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len,
                max: MAX_WORD_LEN,
            });
        }
        Ok(self.concat(other))
    }

    pub fn truncated(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The remainder `u` with `self = prefix · u`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    /// True when one word is a prefix of the other, i.e. the cylinders meet.
    pub fn comparable(&self, other: &Word) -> bool {
        self.first_difference(other).is_none()
    }

    /// First position where the words disagree; `None` if comparable.
    pub fn first_difference(&self, other: &Word) -> Option<usize> {
        self.0.iter().zip(&other.0).position(|(a, b)| a != b)
    }

    /// The longer of two comparable words, `None` if incomparable.
    pub fn meet(&self, other: &Word) -> Option<Word> {
        if !self.comparable(other) {
            None
        } else if self.len() >= other.len() {
            Some(self.clone())
        } else {
            Some(other.clone())
        }
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out.iter().flat_map(|w| [w.child(0), w.child(1)]).collect();
        }
        out
    }

    /// Parses a word starting at byte `start`, consuming a maximal run of
    /// `0`/`1` (or a lone `e`). Returns the word and the end offset.
    pub(crate) fn parse_at(s: &str, start: usize) -> Result<(Word, usize)> {
        let bytes = s.as_bytes();
        if bytes.get(start) == Some(&b'e') {
            return Ok((Word::empty(), start + 1));
        }
        let mut end = start;
        while end < bytes.len() && (bytes[end] == b'0' || bytes[end] == b'1') {
            end += 1;
        }
        if end == start {
            return Err(Error::parse(start, "expected a binary word or 'e'"));
        }
        if end - start > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len: end - start,
                max: MAX_WORD_LEN,
            });
        }
        Ok((
            Word(bytes[start..end].iter().map(|b| b - b'0').collect()),
            end,
        ))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let offset = s.len() - s.trim_start().len();
        if t.is_empty() {
            return Err(Error::parse(offset, "empty input"));
        }
        if t == "e" {
            return Ok(Word::empty());
        }
        if let Some((pos, c)) = t.char_indices().find(|&(_, c)| c != '0' && c != '1') {
            return Err(Error::Alphabet {
                found: c,
                pos: offset + pos,
            });
        }
        let (w, _) = Word::parse_at(t, 0)?;
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}
