use std::collections::BTreeSet;

use super::clopen::ClopenSet;
use super::plain::compose_words;
use super::Flavor;
use crate::error::{Error, Result};
use crate::groups::{Action, Group};
use crate::twisted::{twist_brick, BrickFn, CubePoint, Piece, TwistTable};

type Elem<A> = <<A as Action>::G as Group>::Elem;

/// A standard bisection of `S𝒱₂ ⋊ G`: the product over coordinates of
/// `{(w′ₛz, |wₛ|−|w′ₛ|, wₛz)}`, times `{h}`.
///
/// Its range is `B(w′)`; its source is `B(w)` relabelled by `h⁻¹`.
pub struct TwistedPart<A: Action> {
    pub domain: BrickFn<A::Point>,
    pub image: BrickFn<A::Point>,
    pub label: Elem<A>,
}

impl<A: Action> Clone for TwistedPart<A> {
    fn clone(&self) -> Self {
        TwistedPart {
            domain: self.domain.clone(),
            image: self.image.clone(),
            label: self.label.clone(),
        }
    }
}

impl<A: Action> std::fmt::Debug for TwistedPart<A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} => {:?} [{:?}]", self.domain, self.image, self.label)
    }
}

impl<A: Action> TwistedPart<A> {
    pub fn new(domain: BrickFn<A::Point>, image: BrickFn<A::Point>, label: Elem<A>) -> Self {
        TwistedPart {
            domain,
            image,
            label,
        }
    }

    fn key(&self) -> (&BrickFn<A::Point>, &BrickFn<A::Point>, &Elem<A>) {
        (&self.domain, &self.image, &self.label)
    }

    pub fn source(&self, action: &A) -> BrickFn<A::Point> {
        twist_brick(action, &action.group().inv(&self.label), &self.domain)
    }

    pub fn range(&self) -> &BrickFn<A::Point> {
        &self.image
    }

    /// The homeomorphism from source to range.
    pub fn act(&self, action: &A, k: &CubePoint<A::Point>) -> Option<CubePoint<A::Point>> {
        self.as_piece(action).act(action, k)
    }

    fn as_piece(&self, action: &A) -> Piece<A> {
        Piece::new(self.source(action), self.label.clone(), self.image.clone())
    }

    fn from_piece(action: &A, p: &Piece<A>) -> Self {
        TwistedPart::new(
            twist_brick(action, &p.twist, &p.domain),
            p.image.clone(),
            p.twist.clone(),
        )
    }
}

impl<A: Action> PartialEq for TwistedPart<A> {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl<A: Action> Eq for TwistedPart<A> {}

impl<A: Action> PartialOrd for TwistedPart<A> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: Action> Ord for TwistedPart<A> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// A finite disjoint union of standard bisections of `S𝒱₂ ⋊ G`.
#[derive(Clone, Debug)]
pub struct TwistedBisection<A: Action> {
    action: A,
    parts: Vec<TwistedPart<A>>,
}

impl<A: Action> PartialEq for TwistedBisection<A> {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl<A: Action> TwistedBisection<A> {
    pub fn new(action: A, mut parts: Vec<TwistedPart<A>>) -> Result<Self> {
        parts.sort();
        ClopenSet::new(parts.iter().map(|p| p.source(&action)).collect())?;
        ClopenSet::new(parts.iter().map(|p| p.image.clone()).collect())?;
        Ok(TwistedBisection { action, parts })
    }

    fn from_sorted(action: A, mut parts: Vec<TwistedPart<A>>) -> Self {
        parts.sort();
        TwistedBisection { action, parts }
    }

    pub fn unit(action: A, set: &ClopenSet<BrickFn<A::Point>>) -> Self {
        let e = action.group().identity();
        let parts = set
            .blocks()
            .iter()
            .map(|b| TwistedPart::new(b.clone(), b.clone(), e.clone()))
            .collect();
        Self::from_sorted(action, parts)
    }

    pub fn identity(action: A) -> Self {
        Self::unit(action, &ClopenSet::new(vec![BrickFn::full()]).expect("one block"))
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    pub fn parts(&self) -> &[TwistedPart<A>] {
        &self.parts
    }

    pub fn flavor(&self) -> Flavor {
        Flavor::Twisted(self.action.name())
    }

    pub fn source(&self) -> ClopenSet<BrickFn<A::Point>> {
        ClopenSet::new(self.parts.iter().map(|p| p.source(&self.action)).collect())
            .expect("sources are disjoint")
    }

    pub fn range(&self) -> ClopenSet<BrickFn<A::Point>> {
        ClopenSet::new(self.parts.iter().map(|p| p.image.clone()).collect())
            .expect("ranges are disjoint")
    }

    pub fn is_full(&self) -> bool {
        self.source().is_full() && self.range().is_full()
    }

    /// `(γ,h)·(γ′,h′) = (γ·f(h)(γ′), hh′)`: relabel the arrows of `b` by
    /// `h`, compose coordinate-wise in `𝒱₂`, multiply labels.
    pub fn compose(&self, other: &Self) -> Self {
        let group = self.action.group();
        let mut parts = Vec::new();
        for pb in &other.parts {
            for pa in &self.parts {
                let b_dom = twist_brick(&self.action, &pa.label, &pb.domain);
                let b_img = twist_brick(&self.action, &pa.label, &pb.image);
                let coords: BTreeSet<&A::Point> = pa
                    .domain
                    .support()
                    .chain(pa.image.support())
                    .chain(b_dom.support())
                    .chain(b_img.support())
                    .collect();
                let mut dom = BrickFn::full();
                let mut img = BrickFn::full();
                let mut ok = true;
                for s in coords {
                    let (ad, ai) = (pa.domain.word(s), pa.image.word(s));
                    let (bd, bi) = (b_dom.word(s), b_img.word(s));
                    match compose_words((&ad, &ai), (&bd, &bi)) {
                        Some((d, i)) => {
                            dom.set(s.clone(), d);
                            img.set(s.clone(), i);
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    parts.push(TwistedPart::new(dom, img, group.mul(&pa.label, &pb.label)));
                }
            }
        }
        Self::from_sorted(self.action.clone(), parts)
    }

    /// `(γ,h)⁻¹ = (f(h⁻¹)(γ⁻¹), h⁻¹)`.
    pub fn invert(&self) -> Self {
        let group = self.action.group();
        let parts = self
            .parts
            .iter()
            .map(|p| {
                let hi = group.inv(&p.label);
                TwistedPart::new(
                    twist_brick(&self.action, &hi, &p.image),
                    twist_brick(&self.action, &hi, &p.domain),
                    hi,
                )
            })
            .collect();
        Self::from_sorted(self.action.clone(), parts)
    }

    pub fn eq_set(&self, other: &Self) -> bool {
        if !self.source().set_eq(&other.source()) {
            return false;
        }
        let group = self.action.group();
        self.compose(&other.invert())
            .parts
            .iter()
            .all(|p| p.domain == p.image && group.is_identity(&p.label))
    }

    /// `J`: the piece `(φ, γ, ψ)` becomes the part with range `B(ψ)`,
    /// label `γ` and source `B(φ)`.
    pub fn from_twist_table(t: &TwistTable<A>) -> Self {
        let action = t.action().clone();
        let parts = t
            .pieces()
            .iter()
            .map(|p| TwistedPart::from_piece(&action, p))
            .collect();
        Self::from_sorted(action, parts)
    }

    /// `I`: reads a full bisection as a twist table.
    pub fn to_twist_table(&self) -> Result<TwistTable<A>> {
        if !self.is_full() {
            return Err(Error::NotFull(format!(
                "source measure {}, range measure {}",
                self.source().measure(),
                self.range().measure()
            )));
        }
        TwistTable::new(
            self.action.clone(),
            self.parts.iter().map(|p| p.as_piece(&self.action)).collect(),
        )
    }

    /// Source exactly `u`, range inside `v`, identity twists.
    pub fn min_witness(
        action: A,
        u: &ClopenSet<BrickFn<A::Point>>,
        v: &ClopenSet<BrickFn<A::Point>>,
    ) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyTarget);
        }
        let mut targets: Vec<BrickFn<A::Point>> = v.blocks().to_vec();
        while targets.len() < u.len() {
            let i = (0..targets.len())
                .min_by_key(|&i| (targets[i].depth(), i))
                .expect("non-empty");
            let b = targets.remove(i);
            let s = b.support().next().cloned().unwrap_or_else(|| action.base_point());
            let (b0, b1) = b.split(&s);
            targets.insert(i, b1);
            targets.insert(i, b0);
        }
        let e = action.group().identity();
        let parts = u
            .blocks()
            .iter()
            .zip(targets)
            .map(|(d, i)| TwistedPart::new(d.clone(), i, e.clone()))
            .collect();
        Self::new(action, parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::Word;
    use crate::groups::TranslationAction;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn b(entries: &[(i64, &str)]) -> BrickFn<i64> {
        BrickFn::from_entries(entries.iter().map(|(s, x)| (*s, w(x))))
    }

    fn tz() -> TranslationAction {
        TranslationAction::new()
    }

    #[test]
    fn source_uses_inverse_relabel() {
        // Range {0:0}, stored domain {1:1}, label +1: the source is {0:1}.
        let part = TwistedPart::<TranslationAction>::new(b(&[(1, "1")]), b(&[(0, "0")]), 1);
        assert_eq!(part.source(&tz()), b(&[(0, "1")]));
        let k = CubePoint::new([(0, "1(0)".parse().unwrap())], "(0)".parse().unwrap());
        let moved = part.act(&tz(), &k).unwrap();
        assert!(part.range().contains(&moved));
    }

    #[test]
    fn global_twist_round_trip() {
        let t = TwistTable::global_twist(tz(), 3);
        let j = TwistedBisection::from_twist_table(&t);
        assert_eq!(j.parts().len(), 1);
        assert!(j.parts()[0].domain.is_full() && j.parts()[0].image.is_full());
        assert_eq!(j.parts()[0].label, 3);
        assert_eq!(j.to_twist_table().unwrap(), t);
        let id = TwistedBisection::from_twist_table(&TwistTable::identity(tz()));
        assert!(id.eq_set(&TwistedBisection::identity(tz())));
    }

    #[test]
    fn compose_matches_tables() {
        let a = TwistTable::parse(tz(), "SV{ {0:0} -[1]-> {1:1}, {0:1} -[1]-> {1:0} }").unwrap();
        let c = TwistTable::parse(tz(), "SV{ {2:0} -> {2:10}, {2:10} -> {2:0}, {2:11} -[-1]-> {1:11} }");
        assert!(c.is_err());
        let c = TwistTable::parse(tz(), "SV{ {2:0} -> {2:10}, {2:10} -> {2:0}, {2:11} -> {2:11} }").unwrap();
        let ja = TwistedBisection::from_twist_table(&a);
        let jc = TwistedBisection::from_twist_table(&c);
        assert_eq!(ja.compose(&jc).to_twist_table().unwrap(), a.mul(&c));
        assert_eq!(ja.invert().to_twist_table().unwrap(), a.inv());
    }

    #[test]
    fn witness_into_brick() {
        let full = ClopenSet::new(vec![BrickFn::full()]).unwrap();
        let v = ClopenSet::new(vec![b(&[(0, "0")])]).unwrap();
        let wit = TwistedBisection::min_witness(tz(), &full, &v).unwrap();
        assert_eq!(wit.parts().len(), 1);
        assert_eq!(wit.parts()[0].image, b(&[(0, "0")]));
        assert!(wit.source().set_eq(&full) && wit.range().is_subset(&v));
    }
}
