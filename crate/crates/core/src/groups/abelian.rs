use rand::{Rng, RngCore};

use super::{Centrality, Group};
use crate::error::{Error, Result};
use crate::text;

/// The free abelian group `ℤⁿ`, written additively as integer vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zn {
    rank: usize,
}

impl Zn {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::NotAGroup("rank of Z^n must be at least 1".into()));
        }
        Ok(Zn { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl Group for Zn {
    type Elem = Vec<i64>;

    fn name(&self) -> String {
        format!("z{}", self.rank)
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                let mut v = vec![0; self.rank];
                v[i] = 1;
                v
            })
            .collect()
    }

    /// `(1,-3)`; `e` is the zero vector.
    fn parse_elem(&self, s: &str) -> Result<Vec<i64>> {
        if s.trim() == "e" {
            return Ok(self.identity());
        }
        let inner = text::braced(s, "(", ")")?;
        let items = text::split_top_level(inner.text, ',');
        if items.len() != self.rank {
            return Err(Error::parse(
                inner.offset,
                format!("expected {} coordinates, found {}", self.rank, items.len()),
            ));
        }
        items
            .into_iter()
            .map(|(off, item)| {
                item.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::parse(inner.offset + off, e.to_string()))
            })
            .collect()
    }

    fn format_elem(&self, a: &Vec<i64>) -> String {
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    fn is_central(&self, _: &Vec<i64>) -> Centrality {
        Centrality::Central
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<i64> {
        (0..self.rank).map(|_| rng.gen_range(-3..=3)).collect()
    }
}

/// The integers under addition, the acting group of the translation action.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;

    fn name(&self) -> String {
        "int".into()
    }

    fn identity(&self) -> i64 {
        0
    }

    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn inv(&self, a: &i64) -> i64 {
        -a
    }

    fn generators(&self) -> Vec<i64> {
        vec![1]
    }

    /// Decimal integers with optional sign: `3`, `-1`, `+1`; `e` is zero.
    fn parse_elem(&self, s: &str) -> Result<i64> {
        let t = s.trim();
        if t == "e" {
            return Ok(0);
        }
        t.parse::<i64>().map_err(|e| Error::parse(0, format!("{t:?}: {e}")))
    }

    fn format_elem(&self, a: &i64) -> String {
        a.to_string()
    }

    fn is_central(&self, _: &i64) -> Centrality {
        Centrality::Central
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> i64 {
        rng.gen_range(-4..=4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_examples() {
        let g = Zn::new(2).unwrap();
        assert_eq!(g.mul(&vec![1, 2], &vec![3, -1]), vec![4, 1]);
        assert_eq!(g.inv(&vec![2, 0]), vec![-2, 0]);
        assert!(g.is_identity(&g.parse_elem("(0, 0)").unwrap()));
        assert_eq!(g.is_central(&vec![5, 7]), Centrality::Central);
        assert_eq!(g.parse_elem("(1,-3)").unwrap(), vec![1, -3]);
        assert!(g.parse_elem("(1)").is_err());
        assert!(g.parse_elem("(1,x)").is_err());
        assert!(Zn::new(0).is_err());
    }

    #[test]
    fn integers_parse() {
        assert_eq!(Integers.parse_elem("+1").unwrap(), 1);
        assert_eq!(Integers.parse_elem(" -1").unwrap(), -1);
        assert!(Integers.parse_elem("1.5").is_err());
    }
}
