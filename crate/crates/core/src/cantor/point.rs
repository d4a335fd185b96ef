use std::fmt;
use std::str::FromStr;

use super::word::Word;
use crate::error::{Error, Result};

/// An eventually periodic point `pre · period^∞` of the Cantor space.
///
/// Always stored in normal form: the period is primitive and the preperiod
/// is as short as possible, so two points denote the same infinite word iff
/// they are equal as values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CantorPoint {
    pre: Word,
    period: Word,
}

fn primitive_root_len(p: &[u8]) -> usize {
    let k = p.len();
    (1..=k)
        .filter(|&d| k.is_multiple_of(d))
        .find(|&d| (d..k).all(|i| p[i] == p[i - d]))
        .unwrap_or(k)
}

fn is_normal(pre: &[u8], period: &[u8]) -> bool {
    !period.is_empty()
        && primitive_root_len(period) == period.len()
        && pre.last().is_none_or(|b| Some(b) != period.last())
}

impl CantorPoint {
    /// `pre · period^∞`, normalized. Fails on an empty period.
    pub fn new(pre: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::parse(0, "period must be non-empty"));
        }
        Ok(Self::normalized(pre.bits().to_vec(), period.bits().to_vec()))
    }

    /// The constant sequence `bit^∞`.
    pub fn constant(bit: u8) -> Self {
        CantorPoint {
            pre: Word::empty(),
            period: Word::from_vec(vec![bit & 1]),
        }
    }

    /// `period^∞` for a non-empty period.
    pub fn periodic(period: &Word) -> Result<Self> {
        Self::new(Word::empty(), period.clone())
    }

    fn normalized(mut pre: Vec<u8>, period: Vec<u8>) -> Self {
        let root = primitive_root_len(&period);
        let mut period: std::collections::VecDeque<u8> = period[..root].iter().copied().collect();
        while let (Some(&a), Some(&b)) = (pre.last(), period.back()) {
            if a != b {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        CantorPoint {
            pre: Word::from_vec(pre),
            period: Word::from_vec(period.into_iter().collect()),
        }
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Re-normalizes; the identity on every constructed value.
    pub fn renormalized(&self) -> Self {
        Self::normalized(self.pre.bits().to_vec(), self.period.bits().to_vec())
    }

    pub fn bit_at(&self, i: usize) -> u8 {
        let pl = self.pre.len();
        if i < pl {
            self.pre.bit(i)
        } else {
            self.period.bit((i - pl) % self.period.len())
        }
    }

    /// The first `n` bits.
    pub fn prefix(&self, n: usize) -> Word {
        Word::from_vec((0..n).map(|i| self.bit_at(i)).collect())
    }

    /// The one-sided shift `x₀x₁x₂… ↦ x₁x₂…`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    /// `k` applications of the shift.
    pub fn shift_by(&self, k: usize) -> Self {
        let pl = self.pre.len();
        if k <= pl {
            return CantorPoint {
                pre: Word::from_vec(self.pre.bits()[k..].to_vec()),
                period: self.period.clone(),
            };
        }
        let p = self.period.len();
        let r = (k - pl) % p;
        let bits = self.period.bits();
        let mut rotated = Vec::with_capacity(p);
        rotated.extend_from_slice(&bits[r..]);
        rotated.extend_from_slice(&bits[..r]);
        CantorPoint {
            pre: Word::empty(),
            period: Word::from_vec(rotated),
        }
    }

    /// Whether the infinite word starts with `w`.
    pub fn starts_with(&self, w: &Word) -> bool {
        w.bits().iter().enumerate().all(|(i, &b)| self.bit_at(i) == b)
    }

    /// `y` with `self = w · y`, if `w` is a prefix of `self`.
    pub fn strip_prefix(&self, w: &Word) -> Option<Self> {
        self.starts_with(w).then(|| self.shift_by(w.len()))
    }

    /// The point `w · self`.
    pub fn prepend(&self, w: &Word) -> Self {
        if w.is_empty() {
            return self.clone();
        }
        let mut pre = w.bits().to_vec();
        pre.extend_from_slice(self.pre.bits());
        Self::normalized(pre, self.period.bits().to_vec())
    }

    /// Parses `<preperiod>(<period>)`, e.g. `01(10)` or `(0)`.
    pub(crate) fn parse_at(s: &str, start: usize) -> Result<(Self, usize)> {
        let bytes = s.as_bytes();
        let mut pos = start;
        let pre = if bytes.get(pos) == Some(&b'(') {
            Word::empty()
        } else {
            let (w, end) = Word::parse_at(s, pos)?;
            pos = end;
            w
        };
        if bytes.get(pos) != Some(&b'(') {
            return Err(Error::parse(pos, "expected '(' opening the period"));
        }
        let (period, end) = Word::parse_at(s, pos + 1)?;
        if period.is_empty() {
            return Err(Error::parse(pos + 1, "period must be non-empty"));
        }
        if bytes.get(end) != Some(&b')') {
            return Err(Error::parse(end, "expected ')' closing the period"));
        }
        Ok((Self::new(pre, period)?, end + 1))
    }
}

impl FromStr for CantorPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let offset = s.len() - s.trim_start().len();
        let (p, end) = CantorPoint::parse_at(t, 0).map_err(|e| shift_err(e, offset))?;
        if end != t.len() {
            return Err(Error::parse(offset + end, "trailing input after point"));
        }
        Ok(p)
    }
}

fn shift_err(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.pre.is_empty() {
            write!(f, "{}", self.pre)?;
        }
        write!(f, "({})", self.period)
    }
}

impl fmt::Debug for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CantorPoint({self})")
    }
}

/// Streams every normalized point with preperiod length `<= max_preperiod`
/// and period length in `1..=max_period`, each exactly once.
///
/// A pair `(pre, period)` is emitted only when it is already in normal form,
/// which deduplicates without a set: normalization never lengthens either part.
pub fn points_iter(max_preperiod: usize, max_period: usize) -> impl Iterator<Item = CantorPoint> {
    (0..=max_preperiod).flat_map(move |pl| {
        Word::all_of_length(pl).into_iter().flat_map(move |pre| {
            (1..=max_period).flat_map(move |ql| {
                let pre = pre.clone();
                Word::all_of_length(ql).into_iter().filter_map(move |q| {
                    is_normal(pre.bits(), q.bits()).then(|| CantorPoint {
                        pre: pre.clone(),
                        period: q,
                    })
                })
            })
        })
    })
}

/// All normalized points within the given bounds, sorted by
/// `(preperiod, period)`.
pub fn enumerate_points(max_preperiod: usize, max_period: usize) -> Vec<CantorPoint> {
    let mut v: Vec<CantorPoint> = points_iter(max_preperiod, max_period.max(1)).collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> CantorPoint {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(p("(00)"), p("(0)"));
        assert_eq!(p("01(01)"), p("(01)"));
        assert_eq!(p("0(10)"), p("(01)"));
        assert_eq!(p("1(0)").to_string(), "1(0)");
        assert_eq!(p("01(10)").to_string(), "01(10)");
        assert_eq!(p("111(1)").to_string(), "(1)");
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("(01)").shift(), p("(10)"));
        assert_eq!(p("1(0)").shift(), p("(0)"));
        assert_eq!(p("(110)").shift(), p("(101)"));
    }

    #[test]
    fn strip_prefix_examples() {
        assert_eq!(p("0(1)").strip_prefix(&w("0")), Some(p("(1)")));
        assert_eq!(p("0(1)").strip_prefix(&w("1")), None);
        // Oracle: double shift of (01)^∞.
        let x = p("(01)");
        assert_eq!(x.strip_prefix(&w("01")), Some(x.shift().shift()));
        assert_eq!(x.strip_prefix(&w("01")), Some(p("(01)")));
    }

    #[test]
    fn prepend_examples() {
        assert_eq!(p("(0)").prepend(&w("1")), p("1(0)"));
        let x = p("10(110)");
        assert_eq!(x.prepend(&Word::empty()), x);
        assert_eq!(p("(01)").prepend(&w("01")), p("(01)"));
    }

    #[test]
    fn parse_errors() {
        assert!("01".parse::<CantorPoint>().is_err());
        assert!("0()".parse::<CantorPoint>().is_err());
        assert!("(0".parse::<CantorPoint>().is_err());
        assert!("(0)1".parse::<CantorPoint>().is_err());
        assert!("(2)".parse::<CantorPoint>().is_err());
    }

    /// Brute-force oracle: collect by comparing long prefixes of every raw pair.
    fn brute_force(max_pre: usize, max_per: usize) -> BTreeSet<Word> {
        let horizon = 2 * (max_pre + max_per) + 8;
        let mut seen = BTreeSet::new();
        for pl in 0..=max_pre {
            for pre in Word::all_of_length(pl) {
                for ql in 1..=max_per {
                    for q in Word::all_of_length(ql) {
                        let bits: Vec<u8> = (0..horizon)
                            .map(|i| if i < pl { pre.bit(i) } else { q.bit((i - pl) % ql) })
                            .collect();
                        seen.insert(Word::from_vec(bits));
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn enumerate_examples() {
        let set = |v: Vec<CantorPoint>| v.into_iter().collect::<BTreeSet<_>>();
        assert_eq!(
            set(enumerate_points(0, 1)),
            set(vec![p("(0)"), p("(1)")])
        );
        assert_eq!(
            set(enumerate_points(0, 2)),
            set(vec![p("(0)"), p("(01)"), p("(10)"), p("(1)")])
        );
        assert_eq!(
            set(enumerate_points(1, 1)),
            set(vec![p("(0)"), p("1(0)"), p("0(1)"), p("(1)")])
        );
    }

    #[test]
    fn enumerate_matches_prefix_oracle() {
        for (a, b) in [(0, 3), (2, 3), (3, 3), (1, 4)] {
            let pts = enumerate_points(a, b);
            let horizon = 2 * (a + b) + 8;
            let prefixes: BTreeSet<Word> = pts.iter().map(|x| x.prefix(horizon)).collect();
            assert_eq!(prefixes.len(), pts.len(), "duplicates in ({a},{b})");
            assert_eq!(prefixes, brute_force(a, b), "mismatch in ({a},{b})");
        }
    }

    #[test]
    fn enumerate_is_sorted_and_deterministic() {
        let v = enumerate_points(2, 3);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v, enumerate_points(2, 3));
    }
}
