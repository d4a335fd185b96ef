use std::collections::BTreeMap;

use crate::cantor::{CantorPoint, Word};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::groups::{Action, Group};

/// A finitely supported map `ψ: S → {0,1}*`, denoting the dyadic brick
/// `B(ψ)`. Coordinates mapped to the empty word are not stored.
///
/// The derived order compares supports and words lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrickFn<P: Ord> {
    map: BTreeMap<P, Word>,
}

impl<P: Ord + Clone> Default for BrickFn<P> {
    fn default() -> Self {
        Self::full()
    }
}

impl<P: Ord + Clone> BrickFn<P> {
    /// The whole cube.
    pub fn full() -> Self {
        BrickFn { map: BTreeMap::new() }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (P, Word)>) -> Self {
        BrickFn {
            map: entries.into_iter().filter(|(_, w)| !w.is_empty()).collect(),
        }
    }

    pub fn single(s: P, w: Word) -> Self {
        Self::from_entries([(s, w)])
    }

    pub fn get(&self, s: &P) -> Option<&Word> {
        self.map.get(s)
    }

    /// The word at `s`, empty off the support.
    pub fn word(&self, s: &P) -> Word {
        self.map.get(s).cloned().unwrap_or_default()
    }

    pub fn len_at(&self, s: &P) -> usize {
        self.map.get(s).map_or(0, Word::len)
    }

    pub fn support(&self) -> impl Iterator<Item = &P> + '_ {
        self.map.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&P, &Word)> + '_ {
        self.map.iter()
    }

    pub fn is_full(&self) -> bool {
        self.map.is_empty()
    }

    pub fn set(&mut self, s: P, w: Word) {
        if w.is_empty() {
            self.map.remove(&s);
        } else {
            self.map.insert(s, w);
        }
    }

    /// Total word length `Σ |ψ(s)|`; the brick has measure `2^-depth`.
    pub fn depth(&self) -> u64 {
        self.map.values().map(|w| w.len() as u64).sum()
    }

    pub fn measure(&self) -> Dyadic {
        Dyadic::pow2_neg(self.depth())
    }

    pub fn contains(&self, k: &CubePoint<P>) -> bool {
        self.map.iter().all(|(s, w)| k.get(s).starts_with(w))
    }

    /// Coordinate-wise longer word; `None` if some coordinate is incomparable.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let mut out = self.map.clone();
        for (s, v) in &other.map {
            match out.get(s) {
                Some(u) => {
                    let m = u.meet(v)?;
                    out.insert(s.clone(), m);
                }
                None => {
                    out.insert(s.clone(), v.clone());
                }
            }
        }
        Some(BrickFn { map: out })
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.map
            .iter()
            .any(|(s, u)| other.map.get(s).is_some_and(|v| !u.comparable(v)))
    }

    /// `B(self) ⊆ B(outer)`.
    pub fn is_within(&self, outer: &Self) -> bool {
        outer
            .map
            .iter()
            .all(|(s, w)| self.map.get(s).is_some_and(|u| w.is_prefix_of(u)))
    }

    /// The two halves of the brick split at coordinate `s`.
    pub fn split(&self, s: &P) -> (Self, Self) {
        let w = self.word(s);
        let mut a = self.clone();
        let mut b = self.clone();
        a.set(s.clone(), w.child(0));
        b.set(s.clone(), w.child(1));
        (a, b)
    }

    /// Relabels the support through `f`, which must be injective.
    pub(crate) fn relabel(&self, f: impl Fn(&P) -> P) -> Self {
        BrickFn {
            map: self.map.iter().map(|(s, w)| (f(s), w.clone())).collect(),
        }
    }
}

/// A point of the Cantor cube `𝒞^S`: finitely many listed coordinates, and a
/// common value everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubePoint<P: Ord> {
    support: BTreeMap<P, CantorPoint>,
    default: CantorPoint,
}

impl<P: Ord + Clone> CubePoint<P> {
    pub fn constant(default: CantorPoint) -> Self {
        CubePoint {
            support: BTreeMap::new(),
            default,
        }
    }

    pub fn new(entries: impl IntoIterator<Item = (P, CantorPoint)>, default: CantorPoint) -> Self {
        let mut k = Self::constant(default);
        for (s, x) in entries {
            k.set(s, x);
        }
        k
    }

    pub fn get(&self, s: &P) -> &CantorPoint {
        self.support.get(s).unwrap_or(&self.default)
    }

    pub fn default_value(&self) -> &CantorPoint {
        &self.default
    }

    pub fn entries(&self) -> impl Iterator<Item = (&P, &CantorPoint)> + '_ {
        self.support.iter()
    }

    pub fn set(&mut self, s: P, x: CantorPoint) {
        if x == self.default {
            self.support.remove(&s);
        } else {
            self.support.insert(s, x);
        }
    }

    /// `h_ψ`: prepends `ψ(s)` at every coordinate.
    pub fn h_apply(&self, psi: &BrickFn<P>) -> Self {
        let mut out = self.clone();
        for (s, w) in psi.entries() {
            out.set(s.clone(), self.get(s).prepend(w));
        }
        out
    }

    /// `h_ψ⁻¹`, defined on `B(ψ)`.
    pub fn h_unapply(&self, psi: &BrickFn<P>) -> Option<Self> {
        let mut out = self.clone();
        for (s, w) in psi.entries() {
            out.set(s.clone(), self.get(s).strip_prefix(w)?);
        }
        Some(out)
    }

    pub(crate) fn relabel(&self, f: impl Fn(&P) -> P) -> Self {
        CubePoint {
            support: self.support.iter().map(|(s, x)| (f(s), x.clone())).collect(),
            default: self.default.clone(),
        }
    }
}

/// `τ_γ(κ)(s) = κ(γ⁻¹s)`: the value at `s` moves to `γs`.
pub fn twist_apply<A: Action>(
    action: &A,
    g: &<A::G as Group>::Elem,
    k: &CubePoint<A::Point>,
) -> CubePoint<A::Point> {
    k.relabel(|s| action.apply(g, s))
}

/// `τ_γ(B(ψ)) = B(ψ ∘ γ⁻¹)`.
pub fn twist_brick<A: Action>(
    action: &A,
    g: &<A::G as Group>::Elem,
    psi: &BrickFn<A::Point>,
) -> BrickFn<A::Point> {
    psi.relabel(|s| action.apply(g, s))
}

/// Checks that bricks are pairwise disjoint and of total measure one.
pub fn validate_brick_partition<P: Ord + Clone + std::fmt::Debug>(bricks: &[&BrickFn<P>]) -> Result<()> {
    for (i, a) in bricks.iter().enumerate() {
        for b in &bricks[i + 1..] {
            if !a.is_disjoint(b) {
                return Err(Error::Overlap {
                    first: format!("{:?}", a.map),
                    second: format!("{:?}", b.map),
                });
            }
        }
    }
    let m: Dyadic = bricks.iter().map(|b| b.measure()).sum();
    if !m.is_one() {
        return Err(Error::Gap {
            measure: m.to_string(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::TranslationAction;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(s: &str) -> CantorPoint {
        s.parse().unwrap()
    }

    #[test]
    fn contains_examples() {
        let zero = CubePoint::<i64>::constant(p("(0)"));
        assert!(BrickFn::full().contains(&zero));
        assert!(BrickFn::single(0, w("0")).contains(&zero));
        let k = CubePoint::new([(0, p("0(1)"))], p("(0)"));
        assert!(!BrickFn::single(0, w("1")).contains(&k));
    }

    #[test]
    fn intersect_examples() {
        let a = BrickFn::single(0i64, w("0"));
        assert_eq!(
            a.intersect(&BrickFn::single(1, w("1"))),
            Some(BrickFn::from_entries([(0, w("0")), (1, w("1"))]))
        );
        assert_eq!(a.intersect(&BrickFn::single(0, w("01"))), Some(BrickFn::single(0, w("01"))));
        assert_eq!(a.intersect(&BrickFn::single(0, w("1"))), None);
        assert!(a.is_disjoint(&BrickFn::single(0, w("1"))));
    }

    #[test]
    fn h_examples() {
        let k = CubePoint::<i64>::constant(p("(0)"));
        assert_eq!(k.h_apply(&BrickFn::full()), k);
        let psi = BrickFn::single(0, w("01"));
        let moved = k.h_apply(&psi);
        assert_eq!(moved.get(&0), &p("01(0)"));
        assert_eq!(moved.h_unapply(&psi), Some(k.clone()));
        assert_eq!(k.h_unapply(&BrickFn::single(0, w("1"))), None);
    }

    #[test]
    fn twist_examples() {
        let act = TranslationAction::new();
        let k = CubePoint::new([(0, p("(1)"))], p("(0)"));
        assert_eq!(twist_apply(&act, &0, &k), k);
        let moved = twist_apply(&act, &1, &k);
        assert_eq!(moved, CubePoint::new([(1, p("(1)"))], p("(0)")));
        assert_eq!(twist_apply(&act, &-1, &moved), k);
        assert_eq!(
            twist_brick(&act, &1, &BrickFn::single(0, w("10"))),
            BrickFn::single(1, w("10"))
        );
        let psi = BrickFn::from_entries([(0, w("1")), (2, w("01"))]);
        assert_eq!(
            twist_brick(&act, &5, &psi),
            twist_brick(&act, &2, &twist_brick(&act, &3, &psi))
        );
    }

    #[test]
    fn partition_validation() {
        let a = BrickFn::single(0i64, w("0"));
        let b = BrickFn::single(0i64, w("1"));
        assert!(validate_brick_partition(&[&a, &b]).is_ok());
        let c = BrickFn::from_entries([(0i64, w("1")), (1, w("0"))]);
        assert!(matches!(validate_brick_partition(&[&a, &c]), Err(Error::Gap { .. })));
        assert!(matches!(validate_brick_partition(&[&a, &a, &b]), Err(Error::Overlap { .. })));
    }
}
