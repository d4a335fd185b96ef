//! Label groups `G` as pluggable oracles, and faithful `G`-actions on a
//! countable coordinate set `S`.
//!
//! Every shipped instance keeps elements in a canonical form, so equality of
//! group elements is equality of values.

mod abelian;
mod action;
mod finite;
mod free;
mod trivial;

use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;

use crate::error::Result;

pub use abelian::{Integers, Zn};
pub use action::{Action, RegularAction, TranslationAction, TrivialFiniteAction};
pub use finite::FiniteGroup;
pub use free::FreeGroup;
pub use trivial::TrivialGroup;

/// Three-valued answer to "is this element central?".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centrality {
    Central,
    NotCentral,
    Unknown,
}

/// A group with solvable word problem, given by canonical forms.
pub trait Group: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn is_central(&self, g: &Self::Elem) -> Centrality;

    /// A random element from a small ball around the identity.
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// All elements, for finite groups.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn equals(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// `a^k` for any integer `k`.
    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    fn conj(&self, z: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(z, g), &self.inv(z))
    }
}

/// Parses a label, treating blank input as the identity.
pub(crate) fn parse_label<G: Group>(group: &G, s: &str) -> Result<G::Elem> {
    if s.trim().is_empty() {
        Ok(group.identity())
    } else {
        group.parse_elem(s.trim())
    }
}
