use std::fmt;

/// A subset of a group of order at most 64, stored as a bitmask over element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        ElemSet(1u64 << x)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ElemSet(it.into_iter().fold(0u64, |m, x| m | (1u64 << x)))
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn with(self, x: usize) -> Self {
        ElemSet(self.0 | (1u64 << x))
    }

    #[inline]
    pub fn without(self, x: usize) -> Self {
        ElemSet(self.0 & !(1u64 << x))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: ElemSet) -> Self {
        ElemSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ElemSet) -> Self {
        ElemSet(self.0 & o.0)
    }

    pub fn difference(self, o: ElemSet) -> Self {
        ElemSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ElemSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        ElemSet(!self.0 & ElemSet::full(n).0)
    }

    /// Least element, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending element lists.
    pub fn lex_cmp(self, other: ElemSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    /// Every `k`-subset of `{0, …, n-1}`, in colexicographic order.
    pub fn subsets(n: usize, k: usize) -> Subsets {
        let next = match k {
            0 => Some(0),
            _ if k > n || n > 64 => None,
            _ => Some(u64::MAX >> (64 - k)),
        };
        Subsets { next, limit: if n == 64 { u64::MAX } else { (1u64 << n) - 1 } }
    }
}

pub struct Subsets {
    next: Option<u64>,
    limit: u64,
}

impl Iterator for Subsets {
    type Item = ElemSet;

    fn next(&mut self) -> Option<ElemSet> {
        let x = self.next?;
        self.next = if x == 0 {
            None
        } else {
            // Gosper's hack; overflow means x was the last pattern of its weight
            let c = x & x.wrapping_neg();
            x.checked_add(c).map(|r| (((r ^ x) >> 2) / c) | r).filter(|&y| y & !self.limit == 0)
        };
        Some(ElemSet(x))
    }
}

pub struct ElemIter(u64);

impl Iterator for ElemIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let x = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(x)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElemIter {}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_elems(iter)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_colex_order() {
        let all: Vec<u64> = ElemSet::subsets(4, 2).map(|s| s.0).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(ElemSet::subsets(5, 0).count(), 1);
        assert_eq!(ElemSet::subsets(3, 4).count(), 0);
        assert_eq!(ElemSet::subsets(64, 63).count(), 64);
        assert_eq!(ElemSet::subsets(64, 64).count(), 1);
    }

    #[test]
    fn basic_ops() {
        let s = ElemSet::from_elems([0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.complement(6).to_vec(), vec![1, 2, 4]);
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(ElemSet::from_elems([0, 4]).lex_cmp(ElemSet::from_elems([1])), std::cmp::Ordering::Less);
    }
}
