//! Exact non-negative dyadic rationals `m / 2^k`.
//!
//! Used for measure bookkeeping of clopen sets: the standard cylinder `w𝒞`
//! has measure `2^-|w|`, a brick has measure `2^-(Σ |ψ(s)|)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct Dyadic {
    num: BigUint,
    log_den: u64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            num: BigUint::zero(),
            log_den: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigUint::one(),
            log_den: 0,
        }
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u64) -> Self {
        Dyadic {
            num: BigUint::one(),
            log_den: k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.log_den == 0 && self.num.is_one()
    }

    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.log_den = 0;
            return self;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(self.log_den);
        if tz > 0 {
            self.num >>= tz;
            self.log_den -= tz;
        }
        self
    }

    fn scaled_to(&self, log_den: u64) -> BigUint {
        &self.num << (log_den - self.log_den)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let d = self.log_den.max(rhs.log_den);
        Dyadic {
            num: self.scaled_to(d) + rhs.scaled_to(d),
            log_den: d,
        }
        .normalize()
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Self {
        // Accumulate at a common denominator, normalize once.
        let items: Vec<Dyadic> = iter.collect();
        let d = items.iter().map(|x| x.log_den).max().unwrap_or(0);
        let mut num = BigUint::zero();
        for x in &items {
            num += x.scaled_to(d);
        }
        Dyadic { num, log_den: d }.normalize()
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.log_den.max(other.log_den);
        self.scaled_to(d).cmp(&other.scaled_to(d))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.log_den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_quarters() {
        let s: Dyadic = [1, 2].iter().map(|&k| Dyadic::pow2_neg(k)).sum();
        assert_eq!(s.to_string(), "3/2^2");
        assert!(!s.is_one());
        assert!(s < Dyadic::one());
    }

    #[test]
    fn halves_sum_to_one() {
        let s = Dyadic::pow2_neg(1) + Dyadic::pow2_neg(1);
        assert!(s.is_one());
        assert_eq!(s, Dyadic::one());
    }

    #[test]
    fn deep_exponents_stay_exact() {
        let mut s = Dyadic::pow2_neg(5000);
        s += &Dyadic::pow2_neg(5000);
        assert_eq!(s, Dyadic::pow2_neg(4999));
    }
}
