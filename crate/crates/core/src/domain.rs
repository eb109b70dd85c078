//! Finite value domains.

use std::fmt;

use thiserror::Error;

use crate::bitset::BitSet;

/// A value identifier. Value `0` is reserved for the dummy "anything outside S".
pub type Value = u32;

pub const DUMMY: Value = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("a domain must contain at least one value")]
    Empty,
}

/// Set of values a variable may still take. Never empty once constructed;
/// the store refuses mutations that would empty it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    bits: BitSet,
    size: u32,
}

impl Domain {
    pub fn new<I: IntoIterator<Item = Value>>(values: I) -> Result<Self, DomainError> {
        let mut bits = BitSet::default();
        for v in values {
            bits.insert(v as usize);
        }
        Self::from_bits(bits)
    }

    pub fn from_bits(bits: BitSet) -> Result<Self, DomainError> {
        let size = bits.len() as u32;
        if size == 0 {
            return Err(DomainError::Empty);
        }
        Ok(Domain { bits, size })
    }

    #[inline]
    pub fn contains(&self, v: Value) -> bool {
        self.bits.contains(v as usize)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size as usize
    }

    #[inline]
    pub fn is_fixed(&self) -> bool {
        self.size == 1
    }

    /// The single remaining value, if fixed.
    pub fn value(&self) -> Option<Value> {
        if self.is_fixed() {
            self.min()
        } else {
            None
        }
    }

    pub fn min(&self) -> Option<Value> {
        self.bits.min().map(|v| v as Value)
    }

    pub fn max(&self) -> Option<Value> {
        self.bits.max().map(|v| v as Value)
    }

    pub fn iter(&self) -> impl Iterator<Item = Value> + '_ {
        self.bits.iter().map(|v| v as Value)
    }

    pub fn values(&self) -> Vec<Value> {
        self.iter().collect()
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    // Raw mutation for the store; callers keep the non-empty invariant.
    #[inline]
    pub(crate) fn raw_remove(&mut self, v: Value) -> bool {
        let removed = self.bits.remove(v as usize);
        if removed {
            self.size -= 1;
        }
        removed
    }

    #[inline]
    pub(crate) fn raw_insert(&mut self, v: Value) {
        if self.bits.insert(v as usize) {
            self.size += 1;
        }
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn create() {
        let d = Domain::new([1, 2, 3]).unwrap();
        assert_eq!(d.size(), 3);
        assert_eq!(Domain::new([]), Err(DomainError::Empty));
        let dummy = Domain::new([DUMMY]).unwrap();
        assert!(dummy.is_fixed());
        assert_eq!(dummy.value(), Some(DUMMY));
    }
}
