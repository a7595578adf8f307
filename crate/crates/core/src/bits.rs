use std::fmt;

use crate::perm::Permutation;

/// Square bit matrix used as a digraph adjacency: bit `(u, v)` set means an arc `u → v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, data: vec![0; n * words] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        self.data[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize) {
        self.data[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn clear(&mut self, u: usize, v: usize) {
        self.data[u * self.words + v / 64] &= !(1u64 << (v % 64));
    }

    /// Out-neighbourhood of `u` as packed words.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.data[u * self.words..(u + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let t = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    pub fn arc_count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for u in 0..self.n {
            for v in self.out_neighbors(u) {
                t.set(v, u);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Image under a vertex permutation: arc `(u, v)` becomes `(p(u), p(v))`.
    pub fn permuted(&self, p: &Permutation) -> BitMatrix {
        let mut out = BitMatrix::new(self.n);
        for u in 0..self.n {
            let pu = p.apply(u);
            for v in self.out_neighbors(u) {
                out.set(pu, p.apply(v));
            }
        }
        out
    }

    /// Whether `p` maps the arc set onto itself.
    pub fn is_preserved_by(&self, p: &Permutation) -> bool {
        (0..self.n).all(|u| {
            let pu = p.apply(u);
            self.out_neighbors(u).all(|v| self.get(pu, p.apply(v)))
        })
    }

    /// Rows as strings of `0`/`1`, for exact textual export.
    pub fn to_rows(&self) -> Vec<String> {
        (0..self.n).map(|u| (0..self.n).map(|v| if self.get(u, v) { '1' } else { '0' }).collect()).collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for r in self.to_rows() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_transpose() {
        let mut m = BitMatrix::new(130);
        m.set(0, 129);
        m.set(129, 64);
        assert!(m.get(0, 129) && !m.get(129, 0));
        assert_eq!(m.out_neighbors(129).collect::<Vec<_>>(), vec![64]);
        let t = m.transpose();
        assert!(t.get(129, 0) && t.get(64, 129));
        assert_eq!(m.arc_count(), 2);
        assert!(!m.is_symmetric());
    }

    #[test]
    fn permutation_image() {
        let mut m = BitMatrix::new(3);
        m.set(0, 1);
        let p = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let q = m.permuted(&p);
        assert!(q.get(1, 2));
        assert!(!m.is_preserved_by(&p));
    }
}
