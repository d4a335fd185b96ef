use std::collections::BTreeMap;

use crate::cantor::{common_refinement, CantorPoint, PartitionSet, Word};
use crate::error::{Error, Result};
use crate::groups::{Group, TrivialGroup};

/// A G-table `[W′, ((g₁,…,gₙ), σ), W]`.
///
/// Domain slot `i` (in sorted order) carries label `labels[i]` and is sent by
/// prefix substitution to image slot `perm[i]`. Values produced by the group
/// operations are reduced; [`GTable::g_expand_at`] is the one exception.
#[derive(Clone, Debug)]
pub struct GTable<G: Group> {
    group: G,
    domain: PartitionSet,
    image: PartitionSet,
    perm: Vec<usize>,
    labels: Vec<G::Elem>,
}

/// Result of an order computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Exact(usize),
    Exceeds(usize),
}

impl<G: Group> PartialEq for GTable<G> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.image == other.image
            && self.perm == other.perm
            && self.labels == other.labels
    }
}

impl<G: Group> Eq for GTable<G> {}

impl<G: Group> GTable<G> {
    /// Builds a table from `(domain word, image word, label)` triples and
    /// reduces it.
    pub fn from_pairs(group: G, pairs: Vec<(Word, Word, G::Elem)>) -> Result<Self> {
        let domain = PartitionSet::new(pairs.iter().map(|p| p.0.clone()).collect())?;
        let image = PartitionSet::new(pairs.iter().map(|p| p.1.clone()).collect())?;
        let mut sorted = pairs;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let perm = sorted
            .iter()
            .map(|p| image.index_of(&p.1).expect("image word present"))
            .collect();
        let labels = sorted.into_iter().map(|p| p.2).collect();
        Ok(GTable {
            group,
            domain,
            image,
            perm,
            labels,
        }
        .reduce())
    }

    /// Builds a table from its four components without reducing.
    pub fn from_parts(
        group: G,
        domain: PartitionSet,
        image: PartitionSet,
        perm: Vec<usize>,
        labels: Vec<G::Elem>,
    ) -> Result<Self> {
        let n = domain.len();
        if image.len() != n || perm.len() != n || labels.len() != n {
            return Err(Error::SizeMismatch(format!(
                "domain {n}, image {}, perm {}, labels {}",
                image.len(),
                perm.len(),
                labels.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n {
                return Err(Error::Index { index: p, size: n });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::SizeMismatch(format!("perm repeats {p}")));
            }
        }
        Ok(GTable {
            group,
            domain,
            image,
            perm,
            labels,
        })
    }

    /// Sorted-domain pairs to a table, without reducing.
    fn from_sorted_pairs(group: G, pairs: Vec<(Word, Word, G::Elem)>) -> Self {
        let mut img: Vec<Word> = pairs.iter().map(|p| p.1.clone()).collect();
        img.sort();
        let image = PartitionSet::from_sorted_unchecked(img);
        let perm = pairs
            .iter()
            .map(|p| image.index_of(&p.1).expect("image word present"))
            .collect();
        let mut dom = Vec::with_capacity(pairs.len());
        let mut labels = Vec::with_capacity(pairs.len());
        for (d, _, g) in pairs {
            dom.push(d);
            labels.push(g);
        }
        GTable {
            group,
            domain: PartitionSet::from_sorted_unchecked(dom),
            image,
            perm,
            labels,
        }
    }

    pub fn identity(group: G) -> Self {
        let e = group.identity();
        Self::iota_empty(group, e)
    }

    /// `ι₀(g) = [{0,1}, ((g,e), id), {0,1}]`, reduced.
    pub fn iota0(group: G, g: G::Elem) -> Self {
        let e = group.identity();
        let w = |s: &str| s.parse::<Word>().expect("literal word");
        Self::from_pairs(group, vec![(w("0"), w("0"), g), (w("1"), w("1"), e)])
            .expect("{0,1} is a partition")
    }

    /// `ι_∅(g) = [{∅}, ((g), id), {∅}]`.
    pub fn iota_empty(group: G, g: G::Elem) -> Self {
        GTable {
            group,
            domain: PartitionSet::trivial(),
            image: PartitionSet::trivial(),
            perm: vec![0],
            labels: vec![g],
        }
    }

    /// The prefix-substitution swap of two disjoint cylinders, identity
    /// elsewhere and identity labels.
    pub fn transposition(group: G, u: &Word, v: &Word) -> Result<Self> {
        if u.comparable(v) {
            return Err(Error::Overlap {
                first: u.to_string(),
                second: v.to_string(),
            });
        }
        let p = common_refinement(&partition_containing(u), &partition_containing(v));
        let e = group.identity();
        let pairs = p
            .words()
            .iter()
            .map(|w| {
                let img = if w == u {
                    v.clone()
                } else if w == v {
                    u.clone()
                } else {
                    w.clone()
                };
                (w.clone(), img, e.clone())
            })
            .collect();
        Self::from_pairs(group, pairs)
    }

    /// The `n`-cycle on `{0, 10, …, 1ⁿ⁻²0, 1ⁿ⁻¹}` with identity labels.
    pub fn torsion_generator(group: G, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Index { index: n, size: 2 });
        }
        let block = |i: usize| {
            let mut bits = vec![1u8; i];
            if i < n - 1 {
                bits.push(0);
            }
            Word::from_bits(&bits).expect("binary")
        };
        let e = group.identity();
        let pairs = (0..n)
            .map(|i| (block(i), block((i + 1) % n), e.clone()))
            .collect();
        Self::from_pairs(group, pairs)
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn domain(&self) -> &PartitionSet {
        &self.domain
    }

    pub fn image(&self) -> &PartitionSet {
        &self.image
    }

    /// 0-based: domain slot `i` goes to image slot `perm()[i]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn labels(&self) -> &[G::Elem] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `(wᵢ, σ(wᵢ), gᵢ)` in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word, &G::Elem)> + '_ {
        self.domain
            .words()
            .iter()
            .zip(&self.perm)
            .zip(&self.labels)
            .map(|((d, &p), g)| (d, &self.image.words()[p], g))
    }

    fn owned_pairs(&self) -> Vec<(Word, Word, G::Elem)> {
        self.pairs()
            .map(|(d, i, g)| (d.clone(), i.clone(), g.clone()))
            .collect()
    }

    /// G-expansion at domain slot `i` (0-based), left unreduced.
    pub fn g_expand_at(&self, i: usize) -> Result<Self> {
        let n = self.len();
        if i >= n {
            return Err(Error::Index { index: i, size: n });
        }
        let j = self.perm[i];
        let domain = self.domain.expand(i)?;
        let image = self.image.expand(j)?;
        let bump = |p: usize| if p > j { p + 1 } else { p };
        let mut perm = Vec::with_capacity(n + 1);
        let mut labels = Vec::with_capacity(n + 1);
        for k in 0..n {
            if k == i {
                perm.push(j);
                perm.push(j + 1);
                labels.push(self.labels[k].clone());
                labels.push(self.labels[k].clone());
            } else {
                perm.push(bump(self.perm[k]));
                labels.push(self.labels[k].clone());
            }
        }
        Ok(GTable {
            group: self.group.clone(),
            domain,
            image,
            perm,
            labels,
        })
    }

    /// Applies G-reductions until none is possible.
    pub fn reduce(&self) -> Self {
        let mut map: BTreeMap<Word, (Word, G::Elem)> = self
            .owned_pairs()
            .into_iter()
            .map(|(d, i, g)| (d, (i, g)))
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
        let pairs = map.into_iter().map(|(d, (i, g))| (d, i, g)).collect();
        Self::from_sorted_pairs(self.group.clone(), pairs)
    }

    pub fn is_reduced(&self) -> bool {
        self.reduce() == *self
    }

    /// Equivalent table whose domain is `target`, which must refine the domain.
    pub fn with_domain(&self, target: &PartitionSet) -> Result<Self> {
        let mut pairs = Vec::with_capacity(target.len());
        for t in target.words() {
            let k = self.domain.block_prefixing(t).ok_or_else(|| Error::Containment {
                sub: t.to_string(),
                outer: self.domain.to_string(),
            })?;
            let u = t.strip_prefix(&self.domain.words()[k]).expect("prefix");
            let img = self.image.words()[self.perm[k]].concat_checked(&u)?;
            pairs.push((t.clone(), img, self.labels[k].clone()));
        }
        Ok(Self::from_sorted_pairs(self.group.clone(), pairs))
    }

    /// Equivalent table whose image is `target`, which must refine the image.
    pub fn with_image(&self, target: &PartitionSet) -> Result<Self> {
        let mut inv_perm = vec![0; self.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv_perm[p] = i;
        }
        let mut pairs = Vec::with_capacity(target.len());
        for t in target.words() {
            let j = self.image.block_prefixing(t).ok_or_else(|| Error::Containment {
                sub: t.to_string(),
                outer: self.image.to_string(),
            })?;
            let u = t.strip_prefix(&self.image.words()[j]).expect("prefix");
            let k = inv_perm[j];
            let dom = self.domain.words()[k].concat_checked(&u)?;
            pairs.push((dom, t.clone(), self.labels[k].clone()));
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Self::from_sorted_pairs(self.group.clone(), pairs))
    }

    /// The composite `self ∘ other`: first `other`, then `self`.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("word length limit exceeded in product")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mid = common_refinement(&other.image, &self.domain);
        let b = other.with_image(&mid)?;
        let a = self.with_domain(&mid)?;
        let pairs = b
            .pairs()
            .map(|(d, r, gb)| {
                let k = mid.index_of(r).expect("refined image");
                let img = a.image.words()[a.perm[k]].clone();
                (d.clone(), img, self.group.mul(&a.labels[k], gb))
            })
            .collect();
        Ok(Self::from_sorted_pairs(self.group.clone(), pairs).reduce())
    }

    pub fn inv(&self) -> Self {
        let mut pairs: Vec<_> = self
            .pairs()
            .map(|(d, i, g)| (i.clone(), d.clone(), self.group.inv(g)))
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        Self::from_sorted_pairs(self.group.clone(), pairs).reduce()
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::identity(self.group.clone());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `z · t · z⁻¹`.
    pub fn conj(&self, t: &Self) -> Self {
        self.mul(t).mul(&self.inv())
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Equality of the denoted group elements.
    pub fn eq_elem(&self, other: &Self) -> bool {
        self.reduce() == other.reduce()
    }

    pub fn is_identity(&self) -> bool {
        let r = self.reduce();
        r.len() == 1 && self.group.is_identity(&r.labels[0])
    }

    /// Whether `π` kills the element: after reduction the two partitions
    /// agree and the permutation is trivial.
    pub fn in_kernel_of_pi(&self) -> bool {
        let r = self.reduce();
        r.domain == r.image && r.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Moves `x` by prefix substitution and reports the consumed label.
    pub fn act(&self, x: &CantorPoint) -> (CantorPoint, G::Elem) {
        let i = self.domain.block_of(x);
        let rest = x.strip_prefix(&self.domain.words()[i]).expect("block contains x");
        (
            rest.prepend(&self.image.words()[self.perm[i]]),
            self.labels[i].clone(),
        )
    }

    /// Applies a label map, e.g. a group homomorphism, and reduces.
    pub fn map_labels<H: Group>(&self, target: H, f: impl Fn(&G::Elem) -> H::Elem) -> GTable<H> {
        GTable {
            domain: self.domain.clone(),
            image: self.image.clone(),
            perm: self.perm.clone(),
            labels: self.labels.iter().map(f).collect(),
            group: target,
        }
        .reduce()
    }

    /// The forgetful map `π: V(G) → V`.
    pub fn pi_forget(&self) -> GTable<TrivialGroup> {
        self.map_labels(TrivialGroup, |_| ())
    }

    /// Least `k ≤ max` with `selfᵏ = 1`.
    pub fn order(&self, max: usize) -> Order {
        let mut acc = self.reduce();
        for k in 1..=max {
            if acc.is_identity() {
                return Order::Exact(k);
            }
            acc = acc.mul(self);
        }
        Order::Exceeds(max)
    }
}

/// A partition containing `w` as a block: the siblings along its path.
fn partition_containing(w: &Word) -> PartitionSet {
    let mut words = vec![w.clone()];
    let mut cur = w.clone();
    while let Some(s) = cur.sibling() {
        words.push(s);
        cur = cur.parent().expect("non-empty").0;
    }
    words.sort();
    PartitionSet::from_sorted_unchecked(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::enumerate_points;
    use crate::groups::{FiniteGroup, FreeGroup, Zn};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn v(pairs: &[(&str, &str)]) -> GTable<TrivialGroup> {
        GTable::from_pairs(
            TrivialGroup,
            pairs.iter().map(|(a, b)| (w(a), w(b), ())).collect(),
        )
        .unwrap()
    }

    fn swap() -> GTable<TrivialGroup> {
        v(&[("0", "1"), ("1", "0")])
    }

    #[test]
    fn new_examples() {
        assert!(v(&[("0", "0"), ("1", "1")]).is_identity());
        assert_eq!(v(&[("0", "0"), ("1", "1")]).domain(), &PartitionSet::trivial());
        assert_eq!(swap().perm(), &[1, 0]);
        let f2 = FreeGroup::new(2).unwrap();
        let (a, b) = (f2.gen(0), f2.gen(1));
        let t = GTable::from_pairs(
            f2,
            vec![
                (w("00"), w("00"), a.clone()),
                (w("01"), w("01"), a.clone()),
                (w("1"), w("1"), b.clone()),
            ],
        )
        .unwrap();
        let expected = GTable::from_pairs(f2, vec![(w("0"), w("0"), a), (w("1"), w("1"), b)]).unwrap();
        assert_eq!(t, expected);
        assert_eq!(t.len(), 2);
        assert!(matches!(
            GTable::from_pairs(TrivialGroup, vec![(w("0"), w("0"), ()), (w("1"), w("01"), ())]),
            Err(Error::Overlap { .. })
        ));
    }

    #[test]
    fn expand_examples() {
        let f2 = FreeGroup::new(2).unwrap();
        let (a, b) = (f2.gen(0), f2.gen(1));
        let t = GTable::from_parts(
            f2,
            "{0,1}".parse().unwrap(),
            "{0,1}".parse().unwrap(),
            vec![0, 1],
            vec![a.clone(), b.clone()],
        )
        .unwrap();
        let x = t.g_expand_at(0).unwrap();
        assert_eq!(x.domain().to_string(), "{00,01,1}");
        assert_eq!(x.image().to_string(), "{00,01,1}");
        assert_eq!(x.labels(), &[a.clone(), a.clone(), b.clone()]);
        assert_eq!(x.reduce(), t);

        let id = GTable::identity(TrivialGroup).g_expand_at(0).unwrap();
        assert_eq!(id.domain().to_string(), "{0,1}");
        assert_eq!(id.perm(), &[0, 1]);

        // σ(w₁) = 1 splits to 10, 11.
        let s = swap().g_expand_at(0).unwrap();
        let got: Vec<(String, String)> = s.pairs().map(|(d, i, _)| (d.to_string(), i.to_string())).collect();
        assert_eq!(
            got,
            [("00", "10"), ("01", "11"), ("1", "0")].map(|(a, b)| (a.to_string(), b.to_string()))
        );
        assert!(swap().g_expand_at(2).is_err());
    }

    #[test]
    fn labels_block_reduction() {
        let f2 = FreeGroup::new(2).unwrap();
        let (a, b) = (f2.gen(0), f2.gen(1));
        let c = f2.mul(&a, &b);
        let t = GTable::from_parts(
            f2,
            "{00,01,1}".parse().unwrap(),
            "{00,01,1}".parse().unwrap(),
            vec![0, 1, 2],
            vec![a, c, b],
        )
        .unwrap();
        assert_eq!(t.reduce(), t);
        assert!(t.is_reduced());
    }

    #[test]
    fn mul_examples() {
        let t = v(&[("0", "10"), ("10", "11"), ("11", "0")]);
        let id = GTable::identity(TrivialGroup);
        assert_eq!(t.mul(&id), t);
        assert!(t.mul(&t.inv()).is_identity());
        assert!(swap().mul(&swap()).is_identity());
        assert_eq!(swap().inv(), swap());

        let f2 = FreeGroup::new(2).unwrap();
        let (a, b) = (f2.gen(0), f2.gen(1));
        let ab = GTable::iota0(f2, a.clone()).mul(&GTable::iota0(f2, b.clone()));
        assert_eq!(ab, GTable::iota0(f2, f2.mul(&a, &b)));
        assert_eq!(GTable::iota0(f2, a.clone()).inv(), GTable::iota0(f2, f2.inv(&a)));
    }

    #[test]
    fn act_examples() {
        let p = |s: &str| s.parse::<CantorPoint>().unwrap();
        assert_eq!(swap().act(&p("(0)")).0, p("1(0)"));
        let t = v(&[("0", "10"), ("10", "11"), ("11", "0")]);
        assert_eq!(t.act(&p("(0)")).0, p("1(0)"));
        assert_eq!(t.act(&p("10(1)")).0, p("(1)"));
        for x in enumerate_points(2, 2) {
            assert_eq!(GTable::identity(TrivialGroup).act(&x).0, x);
        }
    }

    /// Pointwise oracle for composition on sample points.
    #[test]
    fn action_is_left_action() {
        let t = v(&[("0", "10"), ("10", "11"), ("11", "0")]);
        let s = v(&[("00", "1"), ("01", "00"), ("1", "01")]);
        for x in enumerate_points(3, 3) {
            assert_eq!(t.mul(&s).act(&x).0, t.act(&s.act(&x).0).0);
        }
    }

    #[test]
    fn centre_identity_display() {
        let z2 = Zn::new(2).unwrap();
        let z = vec![1, 0];
        let big = GTable::from_parts(
            z2,
            PartitionSet::uniform(2),
            PartitionSet::uniform(2),
            vec![0, 1, 2, 3],
            vec![z.clone(); 4],
        )
        .unwrap();
        assert!(big.eq_elem(&GTable::iota_empty(z2, z)));
    }

    #[test]
    fn pi_and_kernel() {
        let s3 = FiniteGroup::symmetric3();
        assert!(GTable::iota_empty(s3.clone(), 3).pi_forget().is_identity());
        assert!(GTable::iota0(s3.clone(), 3).in_kernel_of_pi());
        let labelled = GTable::from_pairs(s3, vec![(w("0"), w("1"), 1), (w("1"), w("0"), 2)]).unwrap();
        assert_eq!(labelled.pi_forget(), swap());
        assert!(!labelled.in_kernel_of_pi());
    }

    #[test]
    fn torsion_orders() {
        assert_eq!(GTable::torsion_generator(TrivialGroup, 2).unwrap(), swap());
        let t3 = GTable::torsion_generator(TrivialGroup, 3).unwrap();
        assert_eq!(t3.domain().to_string(), "{0,10,11}");
        assert_eq!(t3.order(10), Order::Exact(3));
        let t5 = GTable::torsion_generator(TrivialGroup, 5).unwrap();
        assert_eq!(t5.domain().to_string(), "{0,10,110,1110,1111}");
        assert_eq!(GTable::torsion_generator(TrivialGroup, 7).unwrap().order(20), Order::Exact(7));
        assert_eq!(GTable::identity(TrivialGroup).order(1), Order::Exact(1));
        assert_eq!(swap().order(1), Order::Exceeds(1));
    }

    #[test]
    fn transposition_of_deep_blocks() {
        let t = GTable::transposition(TrivialGroup, &w("010"), &w("11")).unwrap();
        let p = |s: &str| s.parse::<CantorPoint>().unwrap();
        assert_eq!(t.act(&p("010(1)")).0, p("11(1)"));
        assert_eq!(t.act(&p("00(1)")).0, p("00(1)"));
        assert!(t.mul(&t).is_identity());
        assert!(GTable::transposition(TrivialGroup, &w("0"), &w("01")).is_err());
    }
}
