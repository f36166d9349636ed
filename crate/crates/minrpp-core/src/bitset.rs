//! Fixed-capacity bitsets used for subsets of heap elements.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for x in 0..len {
            b.insert(x);
        }
        b
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut b = Self::new(len);
        for x in it {
            b.insert(x);
        }
        b
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.len && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.len, "bit {x} out of range {}", self.len);
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.len {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    #[must_use]
    pub fn complement(&self) -> Bitset {
        let mut out = Bitset::new(self.len);
        for x in 0..self.len {
            if !self.contains(x) {
                out.insert(x);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
