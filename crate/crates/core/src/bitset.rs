//! Fixed-capacity bit set used by the exact solvers.
//!
//! The solvers copy sets on every branch, so the set is a plain array of
//! words with value semantics. Capacity is [`BitSet::CAPACITY`] elements.

use std::fmt;

const WORDS: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitSet {
    words: [u64; WORDS],
}

impl BitSet {
    pub const CAPACITY: usize = WORDS * 64;

    pub const fn new() -> Self {
        BitSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "bit set capacity exceeded: {n}");
        let mut s = Self::new();
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn from_iter_checked<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = Self::new();
        for i in it {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < Self::CAPACITY && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    #[inline]
    pub fn and(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        out
    }

    #[inline]
    pub fn or(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
        out
    }

    #[inline]
    pub fn minus(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        out
    }

    /// `|self ∩ other|` without materializing the intersection.
    #[inline]
    pub fn and_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            current: self.words[0],
        }
    }
}

pub struct Iter<'a> {
    set: &'a BitSet,
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.current = self.set.words[self.word];
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_covers_word_boundaries() {
        for n in [0, 1, 63, 64, 65, 128, 200, BitSet::CAPACITY] {
            let s = BitSet::full(n);
            assert_eq!(s.len(), n);
            assert_eq!(s.iter().collect::<Vec<_>>(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_iter_checked([1, 70, 200]);
        let b = BitSet::from_iter_checked([70, 3]);
        assert_eq!(a.and(&b).iter().collect::<Vec<_>>(), vec![70]);
        assert_eq!(a.minus(&b).iter().collect::<Vec<_>>(), vec![1, 200]);
        assert_eq!(a.or(&b).len(), 4);
        assert_eq!(a.and_len(&b), 1);
        assert_eq!(b.first(), Some(3));
        assert!(!a.contains(2) && a.contains(200));
    }
}
