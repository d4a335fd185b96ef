use std::collections::BTreeMap;

use super::clopen::ClopenSet;
use super::Flavor;
use crate::cantor::{CantorPoint, Word};
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::labelled::GTable;

/// The standard bisection `{(w′z, |w|−|w′|, wz) : z ∈ 𝒞} × {g}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StdPart<E> {
    pub domain: Word,
    pub image: Word,
    pub label: E,
}

impl<E: Clone> StdPart<E> {
    pub fn new(domain: Word, image: Word, label: E) -> Self {
        StdPart {
            domain,
            image,
            label,
        }
    }

    /// The groupoid degree `n = |w| − |w′|`.
    pub fn shift(&self) -> i64 {
        self.domain.len() as i64 - self.image.len() as i64
    }

    /// Prefix substitution `wz ↦ w′z`, on the source only.
    pub fn act(&self, x: &CantorPoint) -> Option<CantorPoint> {
        Some(x.strip_prefix(&self.domain)?.prepend(&self.image))
    }

    /// Points `x` with `(x, n, x)` in the part and preperiod at most `bound`.
    ///
    /// Such `x` satisfy `x = w′z = wz`; with `w = w′u` this forces `z = u^∞`,
    /// so the only candidate is `w′·u^∞` (symmetrically for `w′ = wu`).
    pub fn isotropy_points(&self, bound: usize) -> Result<Vec<CantorPoint>> {
        if self.domain == self.image {
            return Err(Error::ShiftZeroIdentity(format!(
                "{} => {}",
                self.domain, self.image
            )));
        }
        let (short, long) = if self.domain.len() < self.image.len() {
            (&self.domain, &self.image)
        } else {
            (&self.image, &self.domain)
        };
        let Some(u) = long.strip_prefix(short) else {
            return Ok(Vec::new());
        };
        if u.is_empty() {
            return Ok(Vec::new());
        }
        let x = CantorPoint::new(short.clone(), u)?;
        Ok(if x.preperiod().len() <= bound { vec![x] } else { Vec::new() })
    }
}

/// `a ∘ b` for standard parts: empty unless the range of `b` and the
/// source of `a` are nested cylinders.
pub(crate) fn compose_words(a: (&Word, &Word), b: (&Word, &Word)) -> Option<(Word, Word)> {
    let (a_dom, a_img) = a;
    let (b_dom, b_img) = b;
    if let Some(v) = b_img.strip_prefix(a_dom) {
        Some((b_dom.clone(), a_img.concat(&v)))
    } else {
        a_dom.strip_prefix(b_img).map(|v| (b_dom.concat(&v), a_img.clone()))
    }
}

/// How `J` splits a label `g` as `k⁻¹h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JChoice {
    /// `k = e`, `h = g`.
    Standard,
    /// `k = g⁻¹`, `h = e`.
    Inverted,
}

/// A finite disjoint union of standard parts of `𝒱₂ × G`.
#[derive(Clone, Debug)]
pub struct Bisection<G: Group> {
    group: G,
    parts: Vec<StdPart<G::Elem>>,
}

impl<G: Group> PartialEq for Bisection<G> {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl<G: Group> Bisection<G> {
    /// Checks that sources are pairwise disjoint and so are ranges.
    pub fn new(group: G, mut parts: Vec<StdPart<G::Elem>>) -> Result<Self> {
        parts.sort();
        ClopenSet::new(parts.iter().map(|p| p.domain.clone()).collect())?;
        ClopenSet::new(parts.iter().map(|p| p.image.clone()).collect())?;
        Ok(Bisection { group, parts })
    }

    fn from_sorted(group: G, mut parts: Vec<StdPart<G::Elem>>) -> Self {
        parts.sort();
        Bisection { group, parts }
    }

    /// The unit bisection over a clopen set.
    pub fn unit(group: G, set: &ClopenSet<Word>) -> Self {
        let e = group.identity();
        let parts = set
            .blocks()
            .iter()
            .map(|w| StdPart::new(w.clone(), w.clone(), e.clone()))
            .collect();
        Self::from_sorted(group, parts)
    }

    pub fn identity(group: G) -> Self {
        let e = group.identity();
        Self::from_sorted(group, vec![StdPart::new(Word::empty(), Word::empty(), e)])
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn parts(&self) -> &[StdPart<G::Elem>] {
        &self.parts
    }

    pub fn flavor(&self) -> Flavor {
        if self.group.generators().is_empty() && self.group.elements().is_some_and(|e| e.len() == 1) {
            Flavor::V2
        } else {
            Flavor::V2xG(self.group.name())
        }
    }

    pub fn source(&self) -> ClopenSet<Word> {
        ClopenSet::new(self.parts.iter().map(|p| p.domain.clone()).collect())
            .expect("sources are disjoint")
    }

    pub fn range(&self) -> ClopenSet<Word> {
        ClopenSet::new(self.parts.iter().map(|p| p.image.clone()).collect())
            .expect("ranges are disjoint")
    }

    pub fn is_full(&self) -> bool {
        self.source().is_full() && self.range().is_full()
    }

    /// The groupoid product `a · b`, arrows of `b` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut parts = Vec::new();
        for pb in &other.parts {
            for pa in &self.parts {
                if let Some((d, i)) = compose_words((&pa.domain, &pa.image), (&pb.domain, &pb.image)) {
                    parts.push(StdPart::new(d, i, self.group.mul(&pa.label, &pb.label)));
                }
            }
        }
        Self::from_sorted(self.group.clone(), parts).reduced()
    }

    pub fn invert(&self) -> Self {
        let parts = self
            .parts
            .iter()
            .map(|p| StdPart::new(p.image.clone(), p.domain.clone(), self.group.inv(&p.label)))
            .collect();
        Self::from_sorted(self.group.clone(), parts).reduced()
    }

    /// Merges sibling parts `u0 ↦ v0`, `u1 ↦ v1` with equal labels.
    pub fn reduced(&self) -> Self {
        let mut map: BTreeMap<Word, (Word, G::Elem)> = self
            .parts
            .iter()
            .map(|p| (p.domain.clone(), (p.image.clone(), p.label.clone())))
            .collect();
        let mut work: Vec<Word> = map.keys().cloned().collect();
        while let Some(k) = work.pop() {
            let Some((parent, _)) = k.parent() else { continue };
            let (w0, w1) = (parent.child(0), parent.child(1));
            let (Some((v0, g0)), Some((v1, g1))) = (map.get(&w0), map.get(&w1)) else {
                continue;
            };
            let (Some((p0, 0)), Some((p1, 1))) = (v0.parent(), v1.parent()) else {
                continue;
            };
            if p0 != p1 || g0 != g1 {
                continue;
            }
            let g = g0.clone();
            map.remove(&w0);
            map.remove(&w1);
            map.insert(parent.clone(), (p0, g));
            work.push(parent);
        }
        let parts = map
            .into_iter()
            .map(|(d, (i, g))| StdPart::new(d, i, g))
            .collect();
        Self::from_sorted(self.group.clone(), parts)
    }

    /// Equality as subsets of the groupoid: equal sources, and `a · b⁻¹`
    /// consists of units.
    pub fn eq_set(&self, other: &Self) -> bool {
        if !self.source().set_eq(&other.source()) {
            return false;
        }
        self.compose(&other.invert())
            .parts
            .iter()
            .all(|p| p.domain == p.image && self.group.is_identity(&p.label))
    }

    /// `J`: each slot `w ↦ w′` with label `g` becomes the standard part over
    /// `w` with label `k⁻¹h = g`.
    pub fn from_gtable(t: &GTable<G>) -> Self {
        Self::from_gtable_with(t, JChoice::Standard)
    }

    pub fn from_gtable_with(t: &GTable<G>, choice: JChoice) -> Self {
        let g = t.group();
        let parts = t
            .pairs()
            .map(|(d, i, l)| {
                let (k, h) = match choice {
                    JChoice::Standard => (g.identity(), l.clone()),
                    JChoice::Inverted => (g.inv(l), g.identity()),
                };
                StdPart::new(d.clone(), i.clone(), g.mul(&g.inv(&k), &h))
            })
            .collect();
        Self::from_sorted(g.clone(), parts)
    }

    /// `I`: reads a full bisection as a table.
    pub fn to_gtable(&self) -> Result<GTable<G>> {
        if !self.is_full() {
            return Err(Error::NotFull(format!(
                "source measure {}, range measure {}",
                self.source().measure(),
                self.range().measure()
            )));
        }
        GTable::from_pairs(
            self.group.clone(),
            self.parts
                .iter()
                .map(|p| (p.domain.clone(), p.image.clone(), p.label.clone()))
                .collect(),
        )
    }

    /// A bisection with source exactly `u` and range inside `v`: split the
    /// shortest block of `v` until there are enough, then match in order.
    pub fn min_witness(group: G, u: &ClopenSet<Word>, v: &ClopenSet<Word>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyTarget);
        }
        let mut targets: Vec<Word> = v.blocks().to_vec();
        while targets.len() < u.len() {
            let i = (0..targets.len())
                .min_by_key(|&i| (targets[i].len(), i))
                .expect("non-empty");
            let w = targets.remove(i);
            targets.insert(i, w.child(1));
            targets.insert(i, w.child(0));
        }
        let e = group.identity();
        let parts = u
            .blocks()
            .iter()
            .zip(targets)
            .map(|(d, i)| StdPart::new(d.clone(), i, e.clone()))
            .collect();
        let b = Self::new(group, parts)?;
        debug_assert!(b.source().set_eq(u) && b.range().is_subset(v));
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FreeGroup, TrivialGroup};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn part(d: &str, i: &str) -> StdPart<()> {
        StdPart::new(w(d), w(i), ())
    }

    fn b(parts: &[(&str, &str)]) -> Bisection<TrivialGroup> {
        Bisection::new(TrivialGroup, parts.iter().map(|(d, i)| part(d, i)).collect()).unwrap()
    }

    fn c(ws: &[&str]) -> ClopenSet<Word> {
        ClopenSet::new(ws.iter().map(|x| w(x)).collect()).unwrap()
    }

    #[test]
    fn source_range_examples() {
        let x = b(&[("0", "1")]);
        assert_eq!(x.source(), c(&["0"]));
        assert_eq!(x.range(), c(&["1"]));
        let id = Bisection::identity(TrivialGroup);
        assert!(id.source().is_full() && id.range().is_full());
        assert!(id.is_full());
        assert!(!x.is_full());
    }

    #[test]
    fn compose_examples() {
        // (1 ← 0) after (0 ← 1) is the unit over 1𝒞.
        let r = b(&[("0", "1")]).compose(&b(&[("1", "0")]));
        assert_eq!(r, b(&[("1", "1")]));
        let a = b(&[("0", "1"), ("10", "00")]);
        assert!(a.compose(&a.invert()).eq_set(&Bisection::unit(TrivialGroup, &a.range())));
        // Shift exponents add: (∅ ← 0) after (0 ← 00) is (∅ ← 00), n = 2.
        let s = b(&[("0", "e")]).compose(&b(&[("00", "0")]));
        assert_eq!(s, b(&[("00", "e")]));
        assert_eq!(s.parts()[0].shift(), 2);
        assert!(b(&[("0", "1")]).compose(&b(&[("1", "1")])).parts().is_empty());
    }

    #[test]
    fn j_and_i() {
        let f2 = FreeGroup::new(2).unwrap();
        let a = f2.gen(0);
        let j = Bisection::from_gtable(&GTable::iota0(f2, a.clone()));
        assert_eq!(
            j.parts(),
            &[
                StdPart::new(w("0"), w("0"), a.clone()),
                StdPart::new(w("1"), w("1"), f2.identity())
            ]
        );
        assert_eq!(j.to_gtable().unwrap(), GTable::iota0(f2, a.clone()));
        assert!(Bisection::from_gtable(&GTable::identity(f2)).eq_set(&Bisection::identity(f2)));
        let t = GTable::iota0(f2, a);
        assert!(Bisection::from_gtable_with(&t, JChoice::Inverted).eq_set(&Bisection::from_gtable(&t)));
        assert!(matches!(b(&[("0", "1")]).to_gtable(), Err(Error::NotFull(_))));
    }

    #[test]
    fn witness_examples() {
        let full = c(&["e"]);
        let wit = Bisection::min_witness(TrivialGroup, &full, &c(&["0"])).unwrap();
        assert_eq!(wit, b(&[("e", "0")]));
        assert_eq!(wit.parts()[0].shift(), -1);
        let wit = Bisection::min_witness(TrivialGroup, &c(&["0", "1"]), &c(&["11"])).unwrap();
        assert_eq!(wit.range(), c(&["110", "111"]));
        assert!(wit.source().set_eq(&c(&["0", "1"])));
        assert!(matches!(
            Bisection::min_witness(TrivialGroup, &full, &ClopenSet::empty()),
            Err(Error::EmptyTarget)
        ));
    }

    #[test]
    fn isotropy_examples() {
        let p = |s: &str| s.parse::<CantorPoint>().unwrap();
        assert_eq!(part("0", "e").isotropy_points(2).unwrap(), vec![p("(0)")]);
        assert!(part("0", "1").isotropy_points(3).unwrap().is_empty());
        assert_eq!(part("01", "e").isotropy_points(3).unwrap(), vec![p("(01)")]);
        assert!(matches!(part("1", "1").isotropy_points(3), Err(Error::ShiftZeroIdentity(_))));
        // Fixed by the substitution.
        let x = part("e", "10").isotropy_points(3).unwrap();
        assert_eq!(part("e", "10").act(&x[0]), Some(x[0].clone()));
    }
}
