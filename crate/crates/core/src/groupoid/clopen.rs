use std::fmt::Debug;

use crate::cantor::Word;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::twisted::BrickFn;

/// A standard compact open set: a cylinder `w𝒞` or a dyadic brick.
pub trait Block: Clone + Ord + Debug {
    fn meet(&self, other: &Self) -> Option<Self>;
    fn measure(&self) -> Dyadic;
}

impl Block for Word {
    fn meet(&self, other: &Self) -> Option<Self> {
        Word::meet(self, other)
    }

    fn measure(&self) -> Dyadic {
        Dyadic::pow2_neg(self.len() as u64)
    }
}

impl<P: Ord + Clone + Debug> Block for BrickFn<P> {
    fn meet(&self, other: &Self) -> Option<Self> {
        self.intersect(other)
    }

    fn measure(&self) -> Dyadic {
        BrickFn::measure(self)
    }
}

/// A finite disjoint union of standard blocks, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClopenSet<B: Block> {
    blocks: Vec<B>,
}

impl<B: Block> ClopenSet<B> {
    pub fn new(mut blocks: Vec<B>) -> Result<Self> {
        blocks.sort();
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks[i].meet(&blocks[j]).is_some() {
                    return Err(Error::Overlap {
                        first: format!("{:?}", blocks[i]),
                        second: format!("{:?}", blocks[j]),
                    });
                }
            }
        }
        Ok(ClopenSet { blocks })
    }

    pub fn empty() -> Self {
        ClopenSet { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[B] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn measure(&self) -> Dyadic {
        self.blocks.iter().map(Block::measure).sum()
    }

    /// The whole unit space, up to measure: clopen sets of measure one are full.
    pub fn is_full(&self) -> bool {
        self.measure().is_one()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut blocks: Vec<B> = self
            .blocks
            .iter()
            .flat_map(|a| other.blocks.iter().filter_map(move |b| a.meet(b)))
            .collect();
        blocks.sort();
        ClopenSet { blocks }
    }

    /// Exact containment: `m(self ∩ other) = m(self)`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersection(other).measure() == self.measure()
    }

    pub fn set_eq(&self, other: &Self) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(ws: &[&str]) -> ClopenSet<Word> {
        ClopenSet::new(ws.iter().map(|w| w.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn set_algebra() {
        assert!(c(&["0", "10"]).set_eq(&c(&["00", "01", "10"])));
        assert!(c(&["11"]).is_subset(&c(&["1"])));
        assert!(!c(&["1"]).is_subset(&c(&["11"])));
        assert!(c(&["e"]).is_full());
        assert!(ClopenSet::new(vec![Word::empty(), "0".parse().unwrap()]).is_err());
        assert!(ClopenSet::<Word>::empty().is_subset(&c(&["0"])));
    }
}
