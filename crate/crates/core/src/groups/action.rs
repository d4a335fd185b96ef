use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, RngCore};

use super::{Group, Integers, TrivialGroup};
use crate::error::{Error, Result};

/// A faithful action of a label group on a countable coordinate set `S`.
pub trait Action: Clone + Debug + Send + Sync + 'static {
    type G: Group;
    type Point: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn name(&self) -> String;
    fn group(&self) -> &Self::G;
    fn apply(&self, g: &<Self::G as Group>::Elem, s: &Self::Point) -> Self::Point;
    fn parse_point(&self, s: &str) -> Result<Self::Point>;
    fn format_point(&self, p: &Self::Point) -> String;

    /// A small deterministic set of coordinates, never empty.
    fn sample_points(&self) -> Vec<Self::Point>;

    fn random_point(&self, rng: &mut dyn RngCore) -> Self::Point;

    fn base_point(&self) -> Self::Point {
        self.sample_points().swap_remove(0)
    }

    /// A coordinate moved by `g`, searched among the sample points and their
    /// images under the generators. `None` means `g` fixes all of them.
    fn moved_point(&self, g: &<Self::G as Group>::Elem) -> Option<Self::Point> {
        let grp = self.group();
        let mut candidates = self.sample_points();
        for s in self.sample_points() {
            for h in grp.generators() {
                candidates.push(self.apply(&h, &s));
                candidates.push(self.apply(&grp.inv(&h), &s));
            }
        }
        candidates.into_iter().find(|s| self.apply(g, s) != *s)
    }
}

/// `ℤ` acting on `ℤ` by translation, `k·s = s + k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TranslationAction {
    group: Integers,
}

impl TranslationAction {
    pub fn new() -> Self {
        TranslationAction { group: Integers }
    }
}

impl Action for TranslationAction {
    type G = Integers;
    type Point = i64;

    fn name(&self) -> String {
        "translation".into()
    }

    fn group(&self) -> &Integers {
        &self.group
    }

    fn apply(&self, g: &i64, s: &i64) -> i64 {
        s + g
    }

    /// Integers, with an optional leading `s`: `s0`, `-2`, `s-1`.
    fn parse_point(&self, s: &str) -> Result<i64> {
        let t = s.trim();
        let t = t.strip_prefix('s').unwrap_or(t);
        t.parse()
            .map_err(|_| Error::parse(0, format!("expected an integer coordinate, found {s:?}")))
    }

    fn format_point(&self, p: &i64) -> String {
        p.to_string()
    }

    fn sample_points(&self) -> Vec<i64> {
        vec![0, 1, -1, 2]
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> i64 {
        rng.gen_range(-3..=3)
    }
}

/// A group acting on itself by left multiplication.
#[derive(Debug, Clone)]
pub struct RegularAction<G: Group> {
    group: G,
}

impl<G: Group> RegularAction<G> {
    pub fn new(group: G) -> Self {
        RegularAction { group }
    }
}

impl<G: Group> Action for RegularAction<G> {
    type G = G;
    type Point = G::Elem;

    fn name(&self) -> String {
        format!("regular:{}", self.group.name())
    }

    fn group(&self) -> &G {
        &self.group
    }

    fn apply(&self, g: &G::Elem, s: &G::Elem) -> G::Elem {
        self.group.mul(g, s)
    }

    fn parse_point(&self, s: &str) -> Result<G::Elem> {
        self.group.parse_elem(s)
    }

    fn format_point(&self, p: &G::Elem) -> String {
        self.group.format_elem(p)
    }

    fn sample_points(&self) -> Vec<G::Elem> {
        let mut v = vec![self.group.identity()];
        for h in self.group.generators() {
            let hi = self.group.inv(&h);
            v.push(h);
            v.push(hi);
        }
        v.sort();
        v.dedup();
        // Keep the identity first.
        let e = self.group.identity();
        v.retain(|x| *x != e);
        v.insert(0, e);
        v
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> G::Elem {
        self.group.random_elem(rng)
    }
}

/// The trivial group acting on `{1, …, n}`.
#[derive(Debug, Clone, Copy)]
pub struct TrivialFiniteAction {
    n: u32,
    group: TrivialGroup,
}

impl TrivialFiniteAction {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ActionMismatch("coordinate set must be non-empty".into()));
        }
        Ok(TrivialFiniteAction {
            n,
            group: TrivialGroup,
        })
    }

    pub fn size(&self) -> u32 {
        self.n
    }
}

impl Action for TrivialFiniteAction {
    type G = TrivialGroup;
    type Point = u32;

    fn name(&self) -> String {
        format!("trivial:{}", self.n)
    }

    fn group(&self) -> &TrivialGroup {
        &self.group
    }

    fn apply(&self, _: &(), s: &u32) -> u32 {
        *s
    }

    /// `1` … `n`, optionally written `s1` … `sn`.
    fn parse_point(&self, s: &str) -> Result<u32> {
        let t = s.trim();
        let t = t.strip_prefix('s').unwrap_or(t);
        let v: u32 = t
            .parse()
            .map_err(|_| Error::parse(0, format!("expected a coordinate in 1..={}, found {s:?}", self.n)))?;
        if v == 0 || v > self.n {
            return Err(Error::ActionMismatch(format!("coordinate {v} not in 1..={}", self.n)));
        }
        Ok(v)
    }

    fn format_point(&self, p: &u32) -> String {
        p.to_string()
    }

    fn sample_points(&self) -> Vec<u32> {
        (1..=self.n).collect()
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(1..=self.n)
    }
}
