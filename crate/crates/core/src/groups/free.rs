use rand::{Rng, RngCore};

use super::{Centrality, Group};
use crate::error::{Error, Result};

/// Generator names; `e` is reserved for the identity.
const LETTERS: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

/// The free group on `rank` generators `a, b, c, d, f, …`.
///
/// Elements are freely reduced words, stored as nonzero letters: `k` is the
/// `k`-th generator and `-k` its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > LETTERS.len() {
            return Err(Error::NotAGroup(format!(
                "free group rank must be in 1..={}",
                LETTERS.len()
            )));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The `k`-th generator, 0-based.
    pub fn gen(&self, k: usize) -> Vec<i32> {
        vec![k as i32 + 1]
    }

    fn push_reduced(out: &mut Vec<i32>, x: i32) {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
}

impl Group for FreeGroup {
    type Elem = Vec<i32>;

    fn name(&self) -> String {
        format!("free{}", self.rank)
    }

    fn identity(&self) -> Vec<i32> {
        Vec::new()
    }

    fn mul(&self, a: &Vec<i32>, b: &Vec<i32>) -> Vec<i32> {
        let mut out = a.clone();
        for &x in b {
            Self::push_reduced(&mut out, x);
        }
        out
    }

    fn inv(&self, a: &Vec<i32>) -> Vec<i32> {
        a.iter().rev().map(|x| -x).collect()
    }

    fn generators(&self) -> Vec<Vec<i32>> {
        (0..self.rank).map(|k| self.gen(k)).collect()
    }

    /// Words like `a b^-1 a^2`; spaces between letters are optional.
    fn parse_elem(&self, s: &str) -> Result<Vec<i32>> {
        let t = s.trim();
        if t == "e" {
            return Ok(Vec::new());
        }
        let bytes = s.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        let mut any = false;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let Some(k) = LETTERS[..self.rank].iter().position(|&l| l == c) else {
                return Err(Error::parse(i, format!("unexpected {:?} in free group word", c as char)));
            };
            i += 1;
            let mut exp: i64 = 1;
            if bytes.get(i) == Some(&b'^') {
                let start = i + 1;
                let mut end = start;
                if matches!(bytes.get(end), Some(b'-') | Some(b'+')) {
                    end += 1;
                }
                while bytes.get(end).is_some_and(u8::is_ascii_digit) {
                    end += 1;
                }
                exp = s[start..end]
                    .parse()
                    .map_err(|_| Error::parse(start, "expected an integer exponent"))?;
                if exp.unsigned_abs() > 1 << 16 {
                    return Err(Error::parse(start, "exponent too large"));
                }
                i = end;
            }
            let letter = (k as i32 + 1) * exp.signum() as i32;
            for _ in 0..exp.unsigned_abs() {
                Self::push_reduced(&mut out, letter);
            }
            any = true;
        }
        if !any {
            return Err(Error::parse(0, "empty free group word"));
        }
        Ok(out)
    }

    fn format_elem(&self, a: &Vec<i32>) -> String {
        if a.is_empty() {
            return "e".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < a.len() {
            let mut j = i;
            while j < a.len() && a[j] == a[i] {
                j += 1;
            }
            let name = LETTERS[a[i].unsigned_abs() as usize - 1] as char;
            let exp = (j - i) as i64 * a[i].signum() as i64;
            parts.push(if exp == 1 {
                name.to_string()
            } else {
                format!("{name}^{exp}")
            });
            i = j;
        }
        parts.join(" ")
    }

    fn is_central(&self, g: &Vec<i32>) -> Centrality {
        // Rank 1 is abelian; in higher rank only the identity is central.
        if self.rank == 1 || g.is_empty() {
            Centrality::Central
        } else {
            Centrality::NotCentral
        }
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<i32> {
        let len = rng.gen_range(0..=4);
        let mut out = Vec::new();
        for _ in 0..len {
            let k = rng.gen_range(1..=self.rank as i32);
            let x = if rng.gen_bool(0.5) { k } else { -k };
            Self::push_reduced(&mut out, x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FreeGroup {
        FreeGroup::new(2).unwrap()
    }

    fn p(s: &str) -> Vec<i32> {
        f2().parse_elem(s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let g = f2();
        assert_eq!(g.mul(&p("a"), &p("a^-1")), g.identity());
        assert_eq!(g.mul(&p("a b"), &p("b^-1 a")), p("a^2"));
        assert_eq!(g.inv(&p("a b^-1")), p("b a^-1"));
        assert_eq!(g.format_elem(&p("a a b^-1 b^-1 b^-1 a")), "a^2 b^-3 a");
        assert_eq!(p("ab^-1"), p("a b^-1"));
        assert_eq!(p("a^0"), g.identity());
    }

    #[test]
    fn centre_decisions() {
        let g = f2();
        assert_eq!(g.is_central(&p("a")), Centrality::NotCentral);
        assert_ne!(g.mul(&p("a"), &p("b")), g.mul(&p("b"), &p("a")));
        assert_eq!(g.is_central(&g.identity()), Centrality::Central);
        let z = FreeGroup::new(1).unwrap();
        assert_eq!(z.is_central(&vec![1, 1]), Centrality::Central);
    }

    #[test]
    fn parse_errors() {
        let g = f2();
        assert!(g.parse_elem("c").is_err());
        assert!(g.parse_elem("a^").is_err());
        assert!(g.parse_elem("").is_err());
    }
}
