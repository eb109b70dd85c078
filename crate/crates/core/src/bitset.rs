//! Fixed-capacity dense bit set over small non-negative integers.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, Default)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn significant(&self) -> &[u64] {
        let end = self.words.iter().rposition(|&w| w != 0).map_or(0, |i| i + 1);
        &self.words[..end]
    }
}

// Equality ignores capacity.
impl PartialEq for BitSet {
    fn eq(&self, other: &Self) -> bool {
        self.significant() == other.significant()
    }
}

impl Eq for BitSet {}

impl std::hash::Hash for BitSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.significant().hash(state);
    }
}

impl BitSet {
    /// Creates an empty set able to hold `0..capacity`.
    pub fn with_capacity(capacity: usize) -> Self {
        BitSet {
            words: vec![0; capacity.div_ceil(WORD)],
        }
    }

    pub fn from_iter_with_capacity<I: IntoIterator<Item = usize>>(capacity: usize, it: I) -> Self {
        let mut set = Self::with_capacity(capacity);
        for x in it {
            set.insert(x);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.words.len() * WORD
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.words
            .get(x / WORD)
            .is_some_and(|w| w & (1u64 << (x % WORD)) != 0)
    }

    /// Inserts `x`, growing the set if needed. Returns true if `x` was absent.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let w = x / WORD;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let mask = 1u64 << (x % WORD);
        let absent = self.words[w] & mask == 0;
        self.words[w] |= mask;
        absent
    }

    /// Removes `x`. Returns true if `x` was present.
    #[inline]
    pub fn remove(&mut self, x: usize) -> bool {
        let w = x / WORD;
        match self.words.get_mut(w) {
            Some(word) => {
                let mask = 1u64 << (x % WORD);
                let present = *word & mask != 0;
                *word &= !mask;
                present
            }
            None => false,
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<usize> {
        let i = self.words.iter().rposition(|&w| w != 0)?;
        Some(i * WORD + (WORD - 1 - self.words[i].leading_zeros() as usize))
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// True if some element of `self` is not in `other`.
    pub fn has_outside(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .any(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) != 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        !self.has_outside(other)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_iter() {
        let mut s = BitSet::with_capacity(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(130);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 130]);
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert!(!s.remove(1000));
        assert_eq!(s.len(), 1);
        assert_eq!(s.min(), Some(130));
        assert_eq!(s.max(), s.iter().last());
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_iter_with_capacity(8, [1, 2, 3]);
        let b = BitSet::from_iter_with_capacity(200, [2, 3, 150]);
        let mut i = a.clone();
        i.intersect_with(&b);
        assert_eq!(i.iter().collect::<Vec<_>>(), vec![2, 3]);
        assert!(a.has_outside(&b));
        assert!(i.is_subset(&a) && i.is_subset(&b));
        let mut u = a.clone();
        u.union_with(&b);
        assert_eq!(u.len(), 4);
        let mut d = u.clone();
        d.difference_with(&a);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![150]);
    }

    #[test]
    fn equality_ignores_capacity() {
        let a = BitSet::from_iter_with_capacity(8, [1]);
        let b = BitSet::from_iter_with_capacity(500, [1]);
        assert_eq!(a, b);
        let mut c = BitSet::from_iter_with_capacity(8, [1, 300]);
        c.remove(300);
        assert_eq!(a, c);
    }
}
