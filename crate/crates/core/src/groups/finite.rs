use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Centrality, Group};
use crate::error::{Error, Result};

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOC_MAX: usize = 64;
/// Number of sampled triples above that order.
pub const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

#[derive(Debug)]
struct Tables {
    name: String,
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<u32>,
    centre: Vec<bool>,
}

/// A finite group given by its Cayley table. Element `0` is the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    t: Arc<Tables>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || self.t.mul == other.t.mul
    }
}

impl FiniteGroup {
    /// Validates a Cayley table: square, Latin, row and column 0 are the
    /// identity, and associative.
    #[allow(clippy::needless_range_loop)]
    pub fn from_table(name: impl Into<String>, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
            if let Some(j) = r.iter().position(|&x| x as usize >= n) {
                return Err(Error::NotAGroup(format!("entry ({i},{j}) = {} out of range", r[j])));
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let (r, c) = (rows[i][j] as usize, rows[j][i] as usize);
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(Error::NotAGroup(format!("row {i} repeats {r}: not a Latin square")));
                }
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(Error::NotAGroup(format!("column {i} repeats {c}: not a Latin square")));
                }
            }
        }
        for i in 0..n {
            if rows[0][i] as usize != i || rows[i][0] as usize != i {
                return Err(Error::NotAGroup(format!(
                    "element 0 is not the identity (fails at {i})"
                )));
            }
        }
        let mul: Vec<u32> = rows.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(Error::NotAGroup(format!("associativity fails on ({a},{b},{c})")));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOC_MAX {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        let mut inv = vec![0u32; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            let b = (0..n).find(|&b| at(a, b) == 0).expect("Latin rows contain 0");
            if at(b, a) != 0 {
                return Err(Error::NotAGroup(format!("{b} is a right but not left inverse of {a}")));
            }
            *slot = b as u32;
        }
        let centre = (0..n)
            .map(|z| (0..n).all(|g| at(z, g) == at(g, z)))
            .collect();
        let gens = greedy_generators(n, &at);
        Ok(FiniteGroup {
            t: Arc::new(Tables {
                name: name.into(),
                n,
                mul,
                inv,
                gens,
                centre,
            }),
        })
    }

    /// Parses the Cayley file format: `n`, then `n` rows of `n` 0-based indices.
    pub fn from_cayley_text(name: impl Into<String>, src: &str) -> Result<Self> {
        let mut nums = Vec::new();
        let mut pos = 0;
        for tok in src.split_ascii_whitespace() {
            let off = src[pos..].find(tok).map_or(pos, |o| pos + o);
            pos = off + tok.len();
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::parse(off, format!("expected a non-negative integer, found {tok:?}")))?;
            nums.push(v);
        }
        let Some((&n, rest)) = nums.split_first() else {
            return Err(Error::parse(0, "missing order line"));
        };
        let n = n as usize;
        if n == 0 || n > 4096 {
            return Err(Error::NotAGroup(format!("unsupported order {n}")));
        }
        if rest.len() != n * n {
            return Err(Error::NotAGroup(format!(
                "expected {} table entries, found {}",
                n * n,
                rest.len()
            )));
        }
        let rows: Vec<Vec<u32>> = rest.chunks(n).map(<[u32]>::to_vec).collect();
        Self::from_table(name, &rows)
    }

    /// Renders the Cayley file format.
    pub fn to_cayley_text(&self) -> String {
        let n = self.t.n;
        let mut s = format!("{n}\n");
        for row in self.t.mul.chunks(n) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    /// `ℤ/n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect())
            .collect();
        Self::from_table(format!("zmod{n}"), &rows)
    }

    /// The symmetric group on three letters, permutations in lexicographic
    /// order of their images (so `0` is the identity).
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        // (p·q)(x) = p(q(x))
        let rows: Vec<Vec<u32>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| idx([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        Self::from_table("s3", &rows).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.t.n
    }

    /// The centre, by exhaustive commutation check.
    pub fn centre(&self) -> Vec<u32> {
        (0..self.t.n as u32).filter(|&z| self.t.centre[z as usize]).collect()
    }

    fn check(&self, a: u32) -> u32 {
        debug_assert!((a as usize) < self.t.n);
        a
    }
}

fn greedy_generators(n: usize, at: &dyn Fn(usize, usize) -> usize) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut reached: BTreeSet<usize> = BTreeSet::from([0]);
    for g in 1..n {
        if reached.contains(&g) {
            continue;
        }
        gens.push(g);
        let mut frontier: Vec<usize> = reached.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = at(x, s);
                if reached.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens.into_iter().map(|g| g as u32).collect()
}

impl Group for FiniteGroup {
    type Elem = u32;

    fn name(&self) -> String {
        self.t.name.clone()
    }

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.t.mul[self.check(*a) as usize * self.t.n + self.check(*b) as usize]
    }

    fn inv(&self, a: &u32) -> u32 {
        self.t.inv[self.check(*a) as usize]
    }

    fn generators(&self) -> Vec<u32> {
        self.t.gens.clone()
    }

    /// A 0-based element index; `e` is element 0.
    fn parse_elem(&self, s: &str) -> Result<u32> {
        let t = s.trim();
        if t == "e" {
            return Ok(0);
        }
        let v: u32 = t
            .parse()
            .map_err(|_| Error::parse(0, format!("expected an element index, found {t:?}")))?;
        if v as usize >= self.t.n {
            return Err(Error::Index {
                index: v as usize,
                size: self.t.n,
            });
        }
        Ok(v)
    }

    fn format_elem(&self, a: &u32) -> String {
        if *a == 0 {
            "e".into()
        } else {
            a.to_string()
        }
    }

    fn is_central(&self, g: &u32) -> Centrality {
        if self.t.centre[*g as usize] {
            Centrality::Central
        } else {
            Centrality::NotCentral
        }
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(0..self.t.n as u32)
    }

    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.t.n as u32).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_examples() {
        let z2 = FiniteGroup::from_table("z2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.order(), 2);
        assert!(matches!(
            FiniteGroup::from_table("bad", &[vec![0, 1], vec![1, 1]]),
            Err(Error::NotAGroup(_))
        ));
    }

    /// Independent centre oracle: commutation with every element, computed
    /// from raw permutations rather than the table.
    #[test]
    fn s3_centre_is_trivial() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.centre(), vec![0]);
        let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let all = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let central: Vec<usize> = (0..6)
            .filter(|&i| all.iter().all(|&q| compose(all[i], q) == compose(q, all[i])))
            .collect();
        assert_eq!(central, vec![0]);
        // Element 1 is the transposition (1 2).
        assert_eq!(s3.is_central(&1), Centrality::NotCentral);
        assert_eq!(s3.mul(&1, &1), 0);
        assert_eq!(s3.generators().len(), 2);
    }

    #[test]
    fn cyclic_centre_is_everything() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.centre(), vec![0, 1, 2, 3]);
        assert_eq!(z4.generators(), vec![1]);
        assert_eq!(z4.inv(&1), 3);
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // A loop of order 5 with identity 0 that is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", &rows).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn cayley_text_round_trip() {
        let s3 = FiniteGroup::symmetric3();
        let text = s3.to_cayley_text();
        let back = FiniteGroup::from_cayley_text("s3", &text).unwrap();
        assert_eq!(back, s3);
        assert!(FiniteGroup::from_cayley_text("x", "2\n0 1\n1").is_err());
        assert!(FiniteGroup::from_cayley_text("x", "").is_err());
        assert!(FiniteGroup::from_cayley_text("x", "1\n0 z").is_err());
    }
}
