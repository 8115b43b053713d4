use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of elements brute-force enumeration will visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 4096;

/// The coefficient ring Z/m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ring {
    modulus: u64,
}

impl Ring {
    pub fn new(modulus: u64) -> Result<Self> {
        // keep products of two residues inside u64 comfortably
        if modulus < 2 || modulus > u32::MAX as u64 {
            return Err(Error::BadModulus(modulus));
        }
        Ok(Self { modulus })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.modulus)
    }
}

/// A finite Z/m-module `Z/d_1 + ... + Z/d_k` in invariant-factor form:
/// `1 < d_1 | d_2 | ... | d_k | m`. Isomorphism is equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinModule {
    ring: Ring,
    factors: Vec<u64>,
}

impl FinModule {
    pub fn new(ring: Ring, factors: Vec<u64>) -> Result<Self> {
        let m = ring.modulus();
        let bad = |reason: &str| Error::BadModule {
            factors: factors.clone(),
            modulus: m,
            reason: reason.to_string(),
        };
        for (i, &d) in factors.iter().enumerate() {
            if d <= 1 {
                return Err(bad("factors must exceed 1"));
            }
            if m % d != 0 {
                return Err(bad("factors must divide the modulus"));
            }
            if i > 0 && d % factors[i - 1] != 0 {
                return Err(bad("factors must form a divisibility chain"));
            }
        }
        Ok(Self { ring, factors })
    }

    pub(crate) fn from_factors_unchecked(ring: Ring, factors: Vec<u64>) -> Self {
        debug_assert!(Self::new(ring, factors.clone()).is_ok(), "{factors:?}");
        Self { ring, factors }
    }

    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            factors: Vec::new(),
        }
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        Self {
            ring,
            factors: vec![ring.modulus(); rank],
        }
    }

    /// `Z/d`; `d = 1` gives the zero module.
    pub fn cyclic(ring: Ring, d: u64) -> Result<Self> {
        if d == 1 {
            Ok(Self::zero(ring))
        } else {
            Self::new(ring, vec![d])
        }
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    #[inline]
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of invariant factors (minimal number of generators).
    #[inline]
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.iter().all(|&d| d == self.modulus())
    }

    /// Canonical representative of a coordinate vector.
    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.rank(), "element has wrong length");
        x.iter().zip(&self.factors).map(|(&v, &d)| v % d).collect()
    }

    pub fn zero_element(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    /// Iterates every element exactly once in mixed-radix order.
    pub fn elements(&self, cap: u128) -> Result<Elements<'_>> {
        let size = self.order();
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        Ok(Elements {
            module: self,
            next: Some(self.zero_element()),
        })
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.factors)
            .map(|(&v, &d)| d / super::arith::gcd(v % d, d))
            .fold(1, super::arith::lcm)
    }
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        write!(f, "(")?;
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

pub struct Elements<'a> {
    module: &'a FinModule,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for (v, &d) in succ.iter_mut().zip(self.module.factors()) {
            *v += 1;
            if *v < d {
                carried = false;
                break;
            }
            *v = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> Ring {
        Ring::new(m).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Ring::new(1).is_err());
        assert!(FinModule::new(z(4), vec![2, 4]).is_ok());
        assert!(FinModule::new(z(4), vec![4, 2]).is_err());
        assert!(FinModule::new(z(4), vec![1]).is_err());
        assert!(FinModule::new(z(4), vec![8]).is_err());
        assert!(FinModule::new(z(6), vec![2, 3]).is_err());
    }

    #[test]
    fn enumerate_small_modules() {
        let m = FinModule::new(z(4), vec![2]).unwrap();
        let els: Vec<_> = m.elements(DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(els, vec![vec![0], vec![1]]);

        let zero = FinModule::zero(z(4));
        let els: Vec<_> = zero.elements(DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(els, vec![Vec::<u64>::new()]);

        let m = FinModule::new(z(4), vec![2, 4]).unwrap();
        let els: std::collections::HashSet<_> =
            m.elements(DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(els.len(), 8);
    }

    #[test]
    fn cap_is_enforced() {
        let m = FinModule::free(z(8), 5);
        assert!(matches!(m.elements(4096), Err(Error::CapExceeded { .. })));
    }
}
