//! Seeded random generators for every element type.
//!
//! Each randomized case draws from its own ChaCha stream, so results do not
//! depend on how cases are scheduled across threads.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cantor::{CantorPoint, PartitionSet, Word};
use crate::groupoid::{Bisection, ClopenSet, StdPart, TwistedBisection};
use crate::groups::{Action, Group};
use crate::labelled::GTable;
use crate::twisted::{BrickFn, CubePoint, Piece, TwistTable};

type Elem<A> = <<A as Action>::G as Group>::Elem;

/// The generator for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    Word::from_vec((0..n).map(|_| rng.gen_range(0..=1)).collect())
}

/// `pre·period^∞` with `|pre| ≤ 3` and `1 ≤ |period| ≤ 3`.
pub fn random_point<R: Rng>(rng: &mut R) -> CantorPoint {
    let pre = random_word(rng, 3);
    let mut period = random_word(rng, 3);
    if period.is_empty() {
        period = Word::from_vec(vec![rng.gen_range(0..=1)]);
    }
    CantorPoint::new(pre, period).expect("non-empty period")
}

/// The trivial partition after `expansions` random block splits.
pub fn random_partition<R: Rng>(rng: &mut R, expansions: usize) -> PartitionSet {
    let mut p = PartitionSet::trivial();
    for _ in 0..expansions {
        let i = rng.gen_range(0..p.len());
        p = p.expand(i).expect("index in range");
    }
    p
}

/// A table built from two random partitions with the same number of
/// blocks, left unreduced.
pub fn random_gtable_raw<G: Group, R: Rng>(group: &G, rng: &mut R, expansions: usize) -> GTable<G> {
    let domain = random_partition(rng, expansions);
    let image = random_partition(rng, expansions);
    let mut perm: Vec<usize> = (0..domain.len()).collect();
    perm.shuffle(rng);
    let labels = (0..domain.len())
        .map(|_| group.random_elem(rng as &mut dyn RngCore))
        .collect();
    GTable::from_parts(group.clone(), domain, image, perm, labels).expect("sizes match")
}

/// A reduced random table with at most `max_expansions` expansions.
pub fn random_gtable<G: Group, R: Rng>(group: &G, rng: &mut R, max_expansions: usize) -> GTable<G> {
    let k = rng.gen_range(0..=max_expansions);
    random_gtable_raw(group, rng, k).reduce()
}

/// A random clopen set of cylinders, possibly empty unless `nonempty`.
pub fn random_clopen_words<R: Rng>(rng: &mut R, expansions: usize, nonempty: bool) -> ClopenSet<Word> {
    let p = random_partition(rng, expansions);
    let mut keep: Vec<Word> = p.words().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    if keep.is_empty() && nonempty {
        keep.push(p.words()[rng.gen_range(0..p.len())].clone());
    }
    ClopenSet::new(keep).expect("blocks of a partition are disjoint")
}

/// A standard part with both words of length at most `max_len`.
pub fn random_std_part<G: Group, R: Rng>(group: &G, rng: &mut R, max_len: usize) -> StdPart<G::Elem> {
    StdPart::new(
        random_word(rng, max_len),
        random_word(rng, max_len),
        group.random_elem(rng as &mut dyn RngCore),
    )
}

/// `J` of a random unreduced table, so the parts are finer than needed.
pub fn random_full_bisection<G: Group, R: Rng>(group: &G, rng: &mut R, max_expansions: usize) -> Bisection<G> {
    let k = rng.gen_range(0..=max_expansions);
    Bisection::from_gtable(&random_gtable_raw(group, rng, k))
}

/// A random full bisection with some parts dropped.
pub fn random_bisection<G: Group, R: Rng>(group: &G, rng: &mut R, max_expansions: usize) -> Bisection<G> {
    let full = random_full_bisection(group, rng, max_expansions);
    let parts = full
        .parts()
        .iter()
        .filter(|_| rng.gen_bool(0.7))
        .cloned()
        .collect();
    Bisection::new(group.clone(), parts).expect("subset of a bisection")
}

/// The full cube after `splits` random halvings at random coordinates.
pub fn random_brick_partition<A: Action, R: Rng>(action: &A, rng: &mut R, splits: usize) -> Vec<BrickFn<A::Point>> {
    let mut bricks = vec![BrickFn::full()];
    for _ in 0..splits {
        let i = rng.gen_range(0..bricks.len());
        let s = action.random_point(rng as &mut dyn RngCore);
        let (b0, b1) = bricks[i].split(&s);
        bricks[i] = b0;
        bricks.insert(i + 1, b1);
    }
    bricks
}

/// A random twist table with `splits` halvings on each side, not
/// canonicalized.
pub fn random_twist_table_raw<A: Action, R: Rng>(action: &A, rng: &mut R, splits: usize) -> TwistTable<A> {
    let domain = random_brick_partition(action, rng, splits);
    let mut image = random_brick_partition(action, rng, splits);
    image.shuffle(rng);
    let pieces = domain
        .into_iter()
        .zip(image)
        .map(|(d, i)| {
            let g: Elem<A> = action.group().random_elem(rng as &mut dyn RngCore);
            Piece::new(d, g, i)
        })
        .collect();
    TwistTable::new_unreduced(action.clone(), pieces).expect("brick partitions")
}

pub fn random_twist_table<A: Action, R: Rng>(action: &A, rng: &mut R, max_splits: usize) -> TwistTable<A> {
    let k = rng.gen_range(0..=max_splits);
    random_twist_table_raw(action, rng, k).canonical()
}

/// A cube point with a few listed coordinates and a random constant default.
pub fn random_cube_point<A: Action, R: Rng>(action: &A, rng: &mut R) -> CubePoint<A::Point> {
    let n = rng.gen_range(0..=4);
    let entries: Vec<(A::Point, CantorPoint)> = (0..n)
        .map(|_| (action.random_point(rng as &mut dyn RngCore), random_point(rng)))
        .collect();
    CubePoint::new(entries, CantorPoint::constant(rng.gen_range(0..=1)))
}

pub fn random_clopen_bricks<A: Action, R: Rng>(
    action: &A,
    rng: &mut R,
    splits: usize,
    nonempty: bool,
) -> ClopenSet<BrickFn<A::Point>> {
    let p = random_brick_partition(action, rng, splits);
    let mut keep: Vec<_> = p.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    if keep.is_empty() && nonempty {
        keep.push(p[rng.gen_range(0..p.len())].clone());
    }
    ClopenSet::new(keep).expect("bricks of a partition are disjoint")
}

/// `J` of a random unreduced twist table.
pub fn random_full_twisted_bisection<A: Action, R: Rng>(
    action: &A,
    rng: &mut R,
    max_splits: usize,
) -> TwistedBisection<A> {
    let k = rng.gen_range(0..=max_splits);
    TwistedBisection::from_twist_table(&random_twist_table_raw(action, rng, k))
}

pub fn random_twisted_bisection<A: Action, R: Rng>(
    action: &A,
    rng: &mut R,
    max_splits: usize,
) -> TwistedBisection<A> {
    let full = random_full_twisted_bisection(action, rng, max_splits);
    let parts = full
        .parts()
        .iter()
        .filter(|_| rng.gen_bool(0.7))
        .cloned()
        .collect();
    TwistedBisection::new(action.clone(), parts).expect("subset of a bisection")
}
