//! Fixed-universe bitsets used for element subsets, point subsets and pair sets.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A subset of `0..len`.
///
/// Ordering is shortlex on the member lists: smaller sets first, ties broken
/// lexicographically. That order extends inclusion, which is what the
/// canonical tensor numbering relies on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: SmallVec<[u64; 4]>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(WORD)),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for w in b.words.iter_mut() {
            *w = u64::MAX;
        }
        b.trim();
        b
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut b = Bits::new(len);
        b.insert(i);
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut b = Bits::new(len);
        for i in items {
            b.insert(i);
        }
        b
    }

    /// Lowest `len` bits of `mask` (`len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        let mut b = Bits::new(len);
        if len > 0 {
            b.words[0] = mask;
            b.trim();
        }
        b
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} outside universe of size {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    #[inline]
    pub fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn complement(&self) -> Bits {
        let mut r = self.clone();
        for w in r.words.iter_mut() {
            *w = !*w;
        }
        r.trim();
        r
    }

    /// Members below `i`.
    pub fn prefix(&self, i: usize) -> Bits {
        let mut r = self.clone();
        for j in i..self.len {
            r.remove(j);
        }
        r
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            bits: self,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// First word, for universes that fit in one machine word.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

pub struct Ones<'a> {
    bits: &'a Bits,
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + t);
            }
            self.word += 1;
            if self.word >= self.bits.words.len() {
                return None;
            }
            self.cur = self.bits.words[self.word];
        }
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.count().cmp(&other.count()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Enumerates every fixpoint of a closure operator on `0..n` in lectic order
/// (Ganter's NextClosure). Fails once more than `limit` sets have been found.
pub fn all_closed_sets<F>(n: usize, mut close: F, limit: usize) -> Result<Vec<Bits>, usize>
where
    F: FnMut(&Bits) -> Bits,
{
    let mut out = Vec::new();
    let mut current = close(&Bits::new(n));
    loop {
        if out.len() >= limit {
            return Err(limit);
        }
        out.push(current.clone());
        let mut advanced = false;
        for i in (0..n).rev() {
            if current.contains(i) {
                continue;
            }
            let mut seed = current.prefix(i);
            seed.insert(i);
            let next = close(&seed);
            if next.prefix(i) == current.prefix(i) {
                current = next;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let a = Bits::from_indices(70, [1, 3, 65]);
        let b = Bits::from_indices(70, [1, 65, 69]);
        assert_eq!(a.intersection(&b).to_vec(), vec![1, 65]);
        assert_eq!(a.union(&b).count(), 4);
        assert!(Bits::from_indices(70, [1]).is_subset(&a));
        assert_eq!(Bits::full(70).count(), 70);
        assert_eq!(a.complement().count(), 67);
        assert_eq!(a.prefix(4).to_vec(), vec![1, 3]);
    }

    #[test]
    fn shortlex_order() {
        let e = Bits::new(4);
        let a = Bits::from_indices(4, [0, 1]);
        let b = Bits::from_indices(4, [0, 2]);
        let c = Bits::from_indices(4, [3]);
        let mut v = vec![b.clone(), a.clone(), c.clone(), e.clone()];
        v.sort();
        assert_eq!(v, vec![e, c, a, b]);
    }

    #[test]
    fn next_closure_counts_down_sets_of_a_chain() {
        // down-sets of a 4-chain: 5
        let close = |s: &Bits| match s.iter().max() {
            Some(m) => Bits::from_indices(4, 0..=m),
            None => Bits::new(4),
        };
        assert_eq!(all_closed_sets(4, close, 100).unwrap().len(), 5);
        assert!(all_closed_sets(4, close, 3).is_err());
    }

    #[test]
    fn next_closure_identity_gives_powerset() {
        let sets = all_closed_sets(5, |s| s.clone(), 1000).unwrap();
        assert_eq!(sets.len(), 32);
    }

    proptest! {
        #[test]
        fn order_extends_inclusion(xs in proptest::collection::vec(0usize..80, 0..10),
                                   ys in proptest::collection::vec(0usize..80, 0..10)) {
            let a = Bits::from_indices(80, xs.iter().copied());
            let b = a.union(&Bits::from_indices(80, ys.iter().copied()));
            prop_assert!(a <= b);
            prop_assert_eq!(a.iter().count(), a.count());
        }
    }
}
