//! Shortest-path counters.
//!
//! Path counts grow exponentially on layered graphs. [`PathCount`] stays on a
//! machine word until an addition overflows and then promotes itself to an
//! arbitrary-precision integer, so counts are always exact. `f64` is offered
//! as a fast path whose quotients carry ordinary floating-point error.

use core::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

pub trait SigmaCounter: Clone + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    /// `self / other` as a float.
    fn ratio(&self, other: &Self) -> f64;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl SigmaCounter for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    fn ratio(&self, other: &Self) -> f64 {
        self / other
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Exact, unbounded path count.
#[derive(Clone, PartialEq, Eq)]
pub enum PathCount {
    Small(u64),
    Big(BigUint),
}

impl fmt::Debug for PathCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathCount::Small(v) => write!(f, "{v}"),
            PathCount::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for PathCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<u64> for PathCount {
    fn from(v: u64) -> Self {
        PathCount::Small(v)
    }
}

impl PathCount {
    fn to_big(&self) -> BigUint {
        match self {
            PathCount::Small(v) => BigUint::from(*v),
            PathCount::Big(v) => v.clone(),
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            PathCount::Small(v) => Some(*v),
            PathCount::Big(v) => v.to_u64(),
        }
    }
}

impl SigmaCounter for PathCount {
    fn zero() -> Self {
        PathCount::Small(0)
    }

    fn one() -> Self {
        PathCount::Small(1)
    }

    fn add_assign(&mut self, other: &Self) {
        if let (PathCount::Small(a), PathCount::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_add(*b) {
                *self = PathCount::Small(s);
                return;
            }
        }
        let sum = self.to_big() + other.to_big();
        *self = PathCount::Big(sum);
    }

    fn ratio(&self, other: &Self) -> f64 {
        match (self, other) {
            (PathCount::Small(a), PathCount::Small(b)) => *a as f64 / *b as f64,
            _ => {
                let (a, b) = (self.to_big(), other.to_big());
                // drop common low bits so both fit comfortably in an f64
                let bits = a.bits().max(b.bits());
                let shift = bits.saturating_sub(1000);
                let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
                let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
                a / b
            }
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            PathCount::Small(v) => *v == 0,
            PathCount::Big(v) => v.is_zero(),
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            PathCount::Small(v) => *v as f64,
            PathCount::Big(v) => v.to_f64().unwrap_or(f64::INFINITY),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow() {
        let mut c = PathCount::from(u64::MAX);
        c.add_assign(&PathCount::one());
        assert!(matches!(c, PathCount::Big(_)));
        assert_eq!(c.to_f64(), 18446744073709551616.0);
        assert_eq!(c.as_u64(), None);
        let mut d = c.clone();
        d.add_assign(&c);
        assert_eq!(d.ratio(&c), 2.0);
    }

    #[test]
    fn ratio_of_huge_counts() {
        let mut c = PathCount::one();
        for _ in 0..2000 {
            let copy = c.clone();
            c.add_assign(&copy);
        }
        let mut twice = c.clone();
        twice.add_assign(&c);
        assert_eq!(c.ratio(&twice), 0.5);
        assert!(!c.is_zero());
    }
}
