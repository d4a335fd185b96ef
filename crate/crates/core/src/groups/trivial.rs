use rand::RngCore;

use super::{Centrality, Group};
use crate::error::{Error, Result};

/// The trivial group; its only element prints as `e`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrivialGroup;

impl Group for TrivialGroup {
    type Elem = ();

    fn name(&self) -> String {
        "trivial".into()
    }

    fn identity(&self) {}

    fn mul(&self, _: &(), _: &()) {}

    fn inv(&self, _: &()) {}

    fn generators(&self) -> Vec<()> {
        Vec::new()
    }

    fn parse_elem(&self, s: &str) -> Result<()> {
        match s.trim() {
            "e" | "" => Ok(()),
            _ => Err(Error::parse(0, format!("trivial group has only 'e', got {s:?}"))),
        }
    }

    fn format_elem(&self, _: &()) -> String {
        "e".into()
    }

    fn is_central(&self, _: &()) -> Centrality {
        Centrality::Central
    }

    fn random_elem(&self, _: &mut dyn RngCore) {}

    fn elements(&self) -> Option<Vec<()>> {
        Some(vec![()])
    }
}
