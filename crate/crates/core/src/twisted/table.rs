use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::brick::{twist_apply, validate_brick_partition, BrickFn, CubePoint};
use crate::cantor::Word;
use crate::error::{Error, Result};
use crate::groups::{Action, Group, TrivialGroup};
use crate::labelled::GTable;

type Elem<A> = <<A as Action>::G as Group>::Elem;
type Point<A> = <A as Action>::Point;

/// One piece `(φ, γ, ψ)`: the canonical twist homeomorphism
/// `h_ψ ∘ τ_γ ∘ h_φ⁻¹` from `B(φ)` onto `B(ψ)`.
///
/// Pieces are ordered by domain brick first.
pub struct Piece<A: Action> {
    pub domain: BrickFn<A::Point>,
    pub twist: Elem<A>,
    pub image: BrickFn<A::Point>,
}

impl<A: Action> Clone for Piece<A> {
    fn clone(&self) -> Self {
        Piece {
            domain: self.domain.clone(),
            twist: self.twist.clone(),
            image: self.image.clone(),
        }
    }
}

impl<A: Action> std::fmt::Debug for Piece<A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} -[{:?}]-> {:?}", self.domain, self.twist, self.image)
    }
}

impl<A: Action> Piece<A> {
    fn key(&self) -> (&BrickFn<A::Point>, &Elem<A>, &BrickFn<A::Point>) {
        (&self.domain, &self.twist, &self.image)
    }
}

impl<A: Action> PartialEq for Piece<A> {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl<A: Action> Eq for Piece<A> {}

impl<A: Action> PartialOrd for Piece<A> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: Action> Ord for Piece<A> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// An element of `SV_G`: domain bricks and image bricks, each partitioning
/// the cube, matched with twists.
///
/// Group operations return the canonical form, which depends only on the
/// homeomorphism; [`TwistTable::expand_piece`] returns unreduced tables.
#[derive(Clone, Debug)]
pub struct TwistTable<A: Action> {
    action: A,
    pieces: Vec<Piece<A>>,
}

impl<A: Action> PartialEq for TwistTable<A> {
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces
    }
}

impl<A: Action> Eq for TwistTable<A> {}

/// The local rule of a piece with common suffixes stripped: coordinate `s`
/// maps `α_s z ↦ β_s z` into coordinate `γs`. Equal on two points iff the
/// germs of the homeomorphism there agree.
struct Formula<A: Action> {
    twist: Elem<A>,
    words: BTreeMap<Point<A>, (Word, Word)>,
}

impl<A: Action> PartialEq for Formula<A> {
    fn eq(&self, other: &Self) -> bool {
        self.twist == other.twist && self.words == other.words
    }
}

impl<A: Action> Eq for Formula<A> {}

impl<A: Action> PartialOrd for Formula<A> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: Action> Ord for Formula<A> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.twist, &self.words).cmp(&(&other.twist, &other.words))
    }
}

impl<A: Action> Formula<A> {
    fn alpha_len(&self, s: &Point<A>) -> usize {
        self.words.get(s).map_or(0, |(a, _)| a.len())
    }
}

impl<A: Action> Piece<A> {
    pub fn new(domain: BrickFn<A::Point>, twist: Elem<A>, image: BrickFn<A::Point>) -> Self {
        Piece {
            domain,
            twist,
            image,
        }
    }

    pub fn act(&self, action: &A, k: &CubePoint<A::Point>) -> Option<CubePoint<A::Point>> {
        let inner = k.h_unapply(&self.domain)?;
        Some(twist_apply(action, &self.twist, &inner).h_apply(&self.image))
    }

    /// Preimage of a sub-brick of the image: `φ'(s) = φ(s)·u_{γs}` where
    /// `sub(t) = ψ(t)·u_t`.
    pub fn pullback(&self, action: &A, sub: &BrickFn<A::Point>) -> Result<BrickFn<A::Point>> {
        let group = action.group();
        let inv = group.inv(&self.twist);
        let mut out = self.domain.clone();
        for (t, w) in sub.entries() {
            let u = w
                .strip_prefix(&self.image.word(t))
                .ok_or_else(|| containment(sub, &self.image))?;
            let s = action.apply(&inv, t);
            out.set(s.clone(), self.domain.word(&s).concat_checked(&u)?);
        }
        if !self.image.entries().all(|(t, w)| sub.get(t).is_some_and(|v| w.is_prefix_of(v))) {
            return Err(containment(sub, &self.image));
        }
        Ok(out)
    }

    /// Image of a sub-brick of the domain: `φ(s)·v_s` at `s` goes to
    /// `ψ(γs)·v_s` at `γs`.
    pub fn push(&self, action: &A, sub: &BrickFn<A::Point>) -> Result<BrickFn<A::Point>> {
        if !sub.is_within(&self.domain) {
            return Err(containment(sub, &self.domain));
        }
        let mut out = self.image.clone();
        for (s, w) in sub.entries() {
            let v = w.strip_prefix(&self.domain.word(s)).expect("within");
            let t = action.apply(&self.twist, s);
            out.set(t.clone(), self.image.word(&t).concat_checked(&v)?);
        }
        Ok(out)
    }

    /// Splits the domain at coordinate `s` and the image at `γs`.
    pub fn expand(&self, action: &A, s: &A::Point) -> (Self, Self) {
        let t = action.apply(&self.twist, s);
        let (d0, d1) = self.domain.split(s);
        let (i0, i1) = self.image.split(&t);
        (
            Piece::new(d0, self.twist.clone(), i0),
            Piece::new(d1, self.twist.clone(), i1),
        )
    }

    fn formula(&self, action: &A) -> Formula<A> {
        let inv = action.group().inv(&self.twist);
        let mut coords: BTreeSet<Point<A>> = self.domain.support().cloned().collect();
        coords.extend(self.image.support().map(|t| action.apply(&inv, t)));
        let mut words = BTreeMap::new();
        for s in coords {
            let a = self.domain.word(&s);
            let b = self.image.word(&action.apply(&self.twist, &s));
            let common = a
                .bits()
                .iter()
                .rev()
                .zip(b.bits().iter().rev())
                .take_while(|(x, y)| x == y)
                .count();
            let a = a.truncated(a.len() - common);
            let b = b.truncated(b.len() - common);
            if !(a.is_empty() && b.is_empty()) {
                words.insert(s, (a, b));
            }
        }
        Formula {
            twist: self.twist.clone(),
            words,
        }
    }
}

fn containment<P: Ord + std::fmt::Debug>(sub: &BrickFn<P>, outer: &BrickFn<P>) -> Error {
    Error::Containment {
        sub: format!("{sub:?}"),
        outer: format!("{outer:?}"),
    }
}

impl<A: Action> TwistTable<A> {
    /// Validates both brick families and returns the canonical form.
    pub fn new(action: A, pieces: Vec<Piece<A>>) -> Result<Self> {
        let t = Self::new_unreduced(action, pieces)?;
        Ok(t.canonical())
    }

    /// Validates without canonicalizing.
    pub fn new_unreduced(action: A, pieces: Vec<Piece<A>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Gap {
                measure: "0".into(),
            });
        }
        validate_brick_partition(&pieces.iter().map(|p| &p.domain).collect::<Vec<_>>())?;
        validate_brick_partition(&pieces.iter().map(|p| &p.image).collect::<Vec<_>>())?;
        Ok(TwistTable { action, pieces })
    }

    pub(crate) fn from_pieces_unchecked(action: A, pieces: Vec<Piece<A>>) -> Self {
        TwistTable { action, pieces }
    }

    pub fn identity(action: A) -> Self {
        let e = action.group().identity();
        Self::global_twist(action, e)
    }

    /// The twist homeomorphism `τ_γ` as a one-piece table.
    pub fn global_twist(action: A, g: Elem<A>) -> Self {
        TwistTable {
            action,
            pieces: vec![Piece::new(BrickFn::full(), g, BrickFn::full())],
        }
    }

    /// The copy of a `V` element acting on coordinate `s` alone.
    pub fn embed_v_coordinate<H: Group>(action: A, t: &GTable<H>, s: &A::Point) -> Result<Self> {
        let g = t.group();
        if let Some(l) = t.labels().iter().find(|l| !g.is_identity(l)) {
            return Err(Error::ActionMismatch(format!(
                "embedding needs identity labels, found {}",
                g.format_elem(l)
            )));
        }
        let e = action.group().identity();
        let pieces = t
            .pairs()
            .map(|(d, i, _)| {
                Piece::new(
                    BrickFn::single(s.clone(), d.clone()),
                    e.clone(),
                    BrickFn::single(s.clone(), i.clone()),
                )
            })
            .collect();
        Ok(Self::from_pieces_unchecked(action, pieces).canonical())
    }

    /// Reads back a table that only touches coordinate `s` with identity
    /// twists as an element of `V`.
    pub fn to_v_coordinate(&self, s: &A::Point) -> Result<GTable<TrivialGroup>> {
        let group = self.action.group();
        let mut pairs = Vec::new();
        for p in &self.pieces {
            let only_s = |b: &BrickFn<A::Point>| b.support().all(|t| t == s);
            if !group.is_identity(&p.twist) || !only_s(&p.domain) || !only_s(&p.image) {
                return Err(Error::ActionMismatch(
                    "table is not supported on a single coordinate with trivial twists".into(),
                ));
            }
            pairs.push((p.domain.word(s), p.image.word(s), ()));
        }
        GTable::from_pairs(TrivialGroup, pairs)
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    pub fn pieces(&self) -> &[Piece<A>] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Coordinates named by some brick.
    pub fn coordinates(&self) -> BTreeSet<A::Point> {
        self.pieces
            .iter()
            .flat_map(|p| p.domain.support().chain(p.image.support()))
            .cloned()
            .collect()
    }

    pub fn act(&self, k: &CubePoint<A::Point>) -> CubePoint<A::Point> {
        self.pieces
            .iter()
            .find(|p| p.domain.contains(k))
            .and_then(|p| p.act(&self.action, k))
            .expect("domain bricks cover the cube")
    }

    /// Replaces piece `i` by its two halves along coordinate `s`, unreduced.
    pub fn expand_piece(&self, i: usize, s: &A::Point) -> Result<Self> {
        if i >= self.pieces.len() {
            return Err(Error::Index {
                index: i,
                size: self.pieces.len(),
            });
        }
        let (a, b) = self.pieces[i].expand(&self.action, s);
        let mut pieces = self.pieces.clone();
        pieces.splice(i..=i, [a, b]);
        Ok(Self::from_pieces_unchecked(self.action.clone(), pieces))
    }

    /// The composite `self ∘ other`.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("word length limit exceeded in product")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let group = self.action.group();
        let mut pieces = Vec::new();
        for pb in &other.pieces {
            for pa in &self.pieces {
                let Some(mid) = pb.image.intersect(&pa.domain) else { continue };
                let src = pb.pullback(&self.action, &mid)?;
                let dst = pa.push(&self.action, &mid)?;
                pieces.push(Piece::new(src, group.mul(&pa.twist, &pb.twist), dst));
            }
        }
        Ok(Self::from_pieces_unchecked(self.action.clone(), pieces).canonical())
    }

    pub fn inv(&self) -> Self {
        let group = self.action.group();
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece::new(p.image.clone(), group.inv(&p.twist), p.domain.clone()))
            .collect();
        Self::from_pieces_unchecked(self.action.clone(), pieces).canonical()
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::identity(self.action.clone());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Equality of the denoted homeomorphisms.
    pub fn eq_elem(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// `self · other⁻¹` is the identity piece by piece: every piece is an
    /// untwisted identity map. Independent of the canonical form.
    pub fn eq_exact(&self, other: &Self) -> bool {
        let group = self.action.group();
        let other_inv: Vec<Piece<A>> = other
            .pieces
            .iter()
            .map(|p| Piece::new(p.image.clone(), group.inv(&p.twist), p.domain.clone()))
            .collect();
        for pb in &other_inv {
            for pa in &self.pieces {
                let Some(mid) = pb.image.intersect(&pa.domain) else { continue };
                let (Ok(src), Ok(dst)) = (pb.pullback(&self.action, &mid), pa.push(&self.action, &mid)) else {
                    return false;
                };
                if src != dst || !group.is_identity(&group.mul(&pa.twist, &pb.twist)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.eq_elem(&Self::identity(self.action.clone()))
    }

    /// The canonical form. Each region where the germ formula is constant
    /// is cut into bricks on its own: a brick meeting the region and its
    /// complement is halved along the least coordinate across which
    /// membership changes, that is, where two points of the brick differing
    /// only at that coordinate fall on different sides. The choice depends
    /// only on the homeomorphism, so the bricks do too; sibling merges follow.
    pub fn canonical(&self) -> Self {
        let formulas: Vec<Formula<A>> = self.pieces.iter().map(|p| p.formula(&self.action)).collect();
        let mut ids: BTreeMap<&Formula<A>, usize> = BTreeMap::new();
        let fid: Vec<usize> = formulas
            .iter()
            .map(|f| {
                let n = ids.len();
                *ids.entry(f).or_insert(n)
            })
            .collect();
        let mut out = Vec::new();
        for (f, &id) in &ids {
            let (inside, outside): (Vec<usize>, Vec<usize>) = (0..self.pieces.len()).partition(|&i| fid[i] == id);
            self.cut_region(BrickFn::full(), inside, outside, f, &mut out);
        }
        out.sort();
        merge_siblings(&self.action, &mut out);
        Self::from_pieces_unchecked(self.action.clone(), out)
    }

    /// The least coordinate across which some piece of `inside` faces some
    /// piece of `outside` within `brick`.
    fn separating_coordinate(&self, brick: &BrickFn<Point<A>>, inside: &[usize], outside: &[usize]) -> Point<A> {
        let clip = |i: usize| {
            self.pieces[i]
                .domain
                .intersect(brick)
                .expect("listed pieces meet the brick")
        };
        let outs: Vec<BrickFn<Point<A>>> = outside.iter().map(|&j| clip(j)).collect();
        let mut best: Option<Point<A>> = None;
        for &i in inside {
            let a = clip(i);
            for b in &outs {
                // Disjoint bricks differ at one coordinate or more; they face
                // each other across `s` when it is the only one.
                let mut diff = a
                    .entries()
                    .filter(|(s, u)| b.get(s).is_some_and(|v| !u.comparable(v)))
                    .map(|(s, _)| s);
                let (Some(s), None) = (diff.next(), diff.next()) else { continue };
                if best.as_ref().is_none_or(|t| s < t) {
                    best = Some(s.clone());
                }
            }
        }
        best.expect("a region with a boundary in the brick faces its complement")
    }

    fn cut_region(
        &self,
        brick: BrickFn<Point<A>>,
        inside: Vec<usize>,
        outside: Vec<usize>,
        f: &Formula<A>,
        out: &mut Vec<Piece<A>>,
    ) {
        if inside.is_empty() {
            return;
        }
        let s = if outside.is_empty() {
            match f.words.keys().find(|s| brick.len_at(s) < f.alpha_len(s)) {
                None => {
                    out.push(emit(&self.action, &brick, f));
                    return;
                }
                Some(s) => s.clone(),
            }
        } else {
            self.separating_coordinate(&brick, &inside, &outside)
        };
        let (b0, b1) = brick.split(&s);
        for half in [b0, b1] {
            let meets = |v: &Vec<usize>| -> Vec<usize> {
                v.iter()
                    .copied()
                    .filter(|&i| !self.pieces[i].domain.is_disjoint(&half))
                    .collect()
            };
            let (i, o) = (meets(&inside), meets(&outside));
            self.cut_region(half, i, o, f, out);
        }
    }
}

/// The piece on `brick` following formula `f`.
fn emit<A: Action>(action: &A, brick: &BrickFn<Point<A>>, f: &Formula<A>) -> Piece<A> {
    let mut coords: BTreeSet<&Point<A>> = brick.support().collect();
    coords.extend(f.words.keys());
    let mut image = BrickFn::full();
    for s in coords {
        let (a, b) = f.words.get(s).cloned().unwrap_or_default();
        let rest = brick.word(s).strip_prefix(&a).expect("brick inside formula domain");
        image.set(action.apply(&f.twist, s), b.concat(&rest));
    }
    Piece::new(brick.clone(), f.twist.clone(), image)
}

/// Merges pieces whose domains are siblings at one coordinate and whose
/// images are the matching siblings at the twisted coordinate, until none
/// remain. Deterministic: a worklist in sorted order, newest merges last.
fn merge_siblings<A: Action>(action: &A, pieces: &mut Vec<Piece<A>>) {
    let mut live: BTreeSet<Piece<A>> = pieces.drain(..).collect();
    let mut work: VecDeque<Piece<A>> = live.iter().cloned().collect();
    while let Some(p) = work.pop_front() {
        if !live.contains(&p) {
            continue;
        }
        if let Some((partner, merged)) = merge_partner(action, &p, &live) {
            live.remove(&p);
            live.remove(&partner);
            live.insert(merged.clone());
            work.push_back(merged);
        }
    }
    pieces.extend(live);
}

fn merge_partner<A: Action>(action: &A, p: &Piece<A>, live: &BTreeSet<Piece<A>>) -> Option<(Piece<A>, Piece<A>)> {
    for (s, w) in p.domain.entries() {
        let t = action.apply(&p.twist, s);
        let v = p.image.word(&t);
        if w.last().is_none() || w.last() != v.last() {
            continue;
        }
        let mut cand = p.clone();
        cand.domain.set(s.clone(), w.sibling().expect("non-empty"));
        cand.image.set(t.clone(), v.sibling().expect("non-empty"));
        if live.contains(&cand) {
            let mut merged = p.clone();
            merged.domain.set(s.clone(), w.parent().expect("non-empty").0);
            merged.image.set(t, v.parent().expect("non-empty").0);
            return Some((cand, merged));
        }
    }
    None
}
