//! Dense symmetric adjacency matrix stored as rows of `u64` words.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(order: usize) -> Self {
        let words = order.div_ceil(64);
        Self {
            order,
            words,
            bits: vec![0; order * words],
        }
    }

    /// Builds a matrix whose row `i` is produced by `row_fn(i, row)`.
    /// Rows are filled in parallel.
    pub fn from_rows<F>(order: usize, row_fn: F) -> Self
    where
        F: Fn(usize, &mut [u64]) + Sync,
    {
        use rayon::prelude::*;
        let mut m = Self::new(order);
        if m.words > 0 {
            m.bits
                .par_chunks_mut(m.words)
                .enumerate()
                .for_each(|(i, row)| row_fn(i, row));
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn set_symmetric(&mut self, i: usize, j: usize) {
        self.set(i, j, true);
        self.set(j, i, true);
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|N(i) ∩ N(j)|`.
    #[inline]
    pub fn common(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row(i))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| self.neighbors(i).all(|j| self.get(j, i)))
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.order).all(|i| !self.get(i, i))
    }

    /// The subgraph induced on `ids`, relabelled `0..ids.len()` in the given
    /// order.
    pub fn induced(&self, ids: &[usize]) -> BitMatrix {
        BitMatrix::from_rows(ids.len(), |a, row| {
            for (b, &j) in ids.iter().enumerate() {
                if self.get(ids[a], j) {
                    row[b / 64] |= 1 << (b % 64);
                }
            }
        })
    }
}

/// Positions of set bits, ascending.
pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}
