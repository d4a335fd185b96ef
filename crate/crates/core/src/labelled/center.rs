use super::GTable;
use crate::cantor::{PartitionSet, Word};
use crate::groups::{Centrality, Group};

/// Outcome of the centre test.
#[derive(Debug, Clone)]
pub enum CenterResult<G: Group> {
    /// The element is `ι_∅(z)` with `z` central in `G`.
    Central(G::Elem),
    /// A table that does not commute with the element.
    NotCentral(GTable<G>),
    /// The element is `ι_∅(z)` and the oracle cannot decide whether `z` is central.
    Unknown(G::Elem),
}

impl<G: Group> CenterResult<G> {
    pub fn is_central(&self) -> bool {
        matches!(self, CenterResult::Central(_))
    }
}

/// The fixed probe set: the six transpositions of `P₂` blocks and `ι₀` of
/// each generator.
pub fn center_probes<G: Group>(group: &G) -> Vec<GTable<G>> {
    let p2 = PartitionSet::uniform(2);
    let words = p2.words();
    let mut out = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            out.push(
                GTable::transposition(group.clone(), &words[i], &words[j])
                    .expect("distinct blocks of P2 are disjoint"),
            );
        }
    }
    for g in group.generators() {
        out.push(GTable::iota0(group.clone(), g));
    }
    out
}

impl<G: Group> GTable<G> {
    /// Decides membership in the centre `Z(ι_∅(G))`, producing a
    /// non-commuting witness otherwise.
    pub fn center_test(&self) -> CenterResult<G> {
        let a = self.reduce();
        let group = self.group().clone();
        if a.len() == 1 {
            let z = a.labels()[0].clone();
            match group.is_central(&z) {
                Centrality::Central => return CenterResult::Central(z),
                Centrality::Unknown => return CenterResult::Unknown(z),
                Centrality::NotCentral => {}
            }
        }
        if let Some(w) = center_probes(&group).into_iter().find(|p| !a.commutes_with(p)) {
            return CenterResult::NotCentral(w);
        }
        match a.constructive_witness() {
            Some(w) => CenterResult::NotCentral(w),
            None => CenterResult::Unknown(a.labels()[0].clone()),
        }
    }

    /// A witness built from the shape of the reduced element, for elements
    /// that commute with every probe.
    fn constructive_witness(&self) -> Option<GTable<G>> {
        let group = self.group().clone();
        let candidates: Vec<GTable<G>> = if self.len() == 1 {
            let z = &self.labels()[0];
            let pool = group.elements().unwrap_or_else(|| group.generators());
            pool.into_iter()
                .filter(|h| group.mul(z, h) != group.mul(h, z))
                .map(|h| GTable::iota0(group.clone(), h))
                .collect()
        } else if let Some((w, w2)) = self
            .pairs()
            .find(|(d, i, _)| d != i)
            .map(|(d, i, _)| (d.clone(), i.clone()))
        {
            // A block U inside w with image disjoint from U; the swap of its
            // halves then conjugates to a swap with disjoint support.
            let u = if !w.comparable(&w2) {
                w.clone()
            } else {
                let (short, long) = if w.len() < w2.len() { (&w, &w2) } else { (&w2, &w) };
                let v = long.strip_prefix(short).expect("comparable");
                let mut bits = v.bits().to_vec();
                bits[0] ^= 1;
                w.concat(&Word::from_bits(&bits).expect("binary"))
            };
            vec![GTable::transposition(group, &u.child(0), &u.child(1)).expect("siblings")]
        } else {
            // Trivial π-image with unequal labels on two blocks.
            let i = (1..self.len()).find(|&i| self.labels()[i] != self.labels()[0])?;
            let d = self.domain().words();
            vec![GTable::transposition(group, &d[0], &d[i]).expect("distinct blocks")]
        };
        candidates.into_iter().find(|c| !self.commutes_with(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FreeGroup, TrivialGroup, Zn};

    #[test]
    fn centre_examples() {
        let z2 = Zn::new(2).unwrap();
        match GTable::iota_empty(z2, vec![1, 0]).center_test() {
            CenterResult::Central(z) => assert_eq!(z, vec![1, 0]),
            other => panic!("{other:?}"),
        }
        let f2 = FreeGroup::new(2).unwrap();
        match GTable::iota_empty(f2, f2.gen(0)).center_test() {
            CenterResult::NotCentral(w) => assert_eq!(w, GTable::iota0(f2, f2.gen(1))),
            other => panic!("{other:?}"),
        }
        let swap = GTable::from_pairs(
            TrivialGroup,
            vec![
                ("0".parse().unwrap(), "1".parse().unwrap(), ()),
                ("1".parse().unwrap(), "0".parse().unwrap(), ()),
            ],
        )
        .unwrap();
        match swap.center_test() {
            CenterResult::NotCentral(w) => {
                assert!(center_probes(&TrivialGroup).contains(&w));
                assert!(!swap.commutes_with(&w));
            }
            other => panic!("{other:?}"),
        }
    }

    /// Flipping the third bit commutes with every probe yet is not central.
    #[test]
    fn probe_blind_element_gets_a_witness() {
        let pairs = PartitionSet::uniform(3)
            .words()
            .iter()
            .map(|w| {
                let mut b = w.bits().to_vec();
                b[2] ^= 1;
                (w.clone(), Word::from_bits(&b).unwrap(), ())
            })
            .collect();
        let t = GTable::from_pairs(TrivialGroup, pairs).unwrap();
        assert!(center_probes(&TrivialGroup).iter().all(|p| t.commutes_with(p)));
        match t.center_test() {
            CenterResult::NotCentral(w) => assert!(!t.commutes_with(&w)),
            other => panic!("{other:?}"),
        }
    }
}
