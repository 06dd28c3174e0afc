//! Maximum clique by branch and bound with greedy-colouring bounds.

use crate::bitmatrix::{iter_ones, BitMatrix};

pub(crate) struct CliqueSearch<'a> {
    adj: &'a BitMatrix,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

/// Result of a maximum clique search.
pub(crate) struct CliqueOutcome {
    pub clique: Vec<usize>,
    /// `false` when the node budget ran out; `clique` is then only a lower
    /// bound on the clique number.
    pub exact: bool,
}

pub(crate) fn max_clique(adj: &BitMatrix, max_nodes: u64) -> CliqueOutcome {
    let mut s = CliqueSearch {
        adj,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        max_nodes,
        exhausted: false,
    };
    let mut all = vec![0u64; adj.words_per_row()];
    for v in 0..adj.order() {
        all[v / 64] |= 1 << (v % 64);
    }
    s.expand(all);
    CliqueOutcome {
        clique: s.best,
        exact: !s.exhausted,
    }
}

/// Complement graph without loops.
pub(crate) fn complement(adj: &BitMatrix) -> BitMatrix {
    let n = adj.order();
    BitMatrix::from_rows(n, |i, row| {
        for (w, src) in row.iter_mut().zip(adj.row(i)) {
            *w = !src;
        }
        let extra = row.len() * 64 - n;
        if extra > 0 {
            let last = row.len() - 1;
            row[last] &= u64::MAX >> extra;
        }
        row[i / 64] &= !(1 << (i % 64));
    })
}

impl CliqueSearch<'_> {
    /// Greedy colouring of the candidate set; returns vertices in order of
    /// non-decreasing colour together with the colour bounds.
    fn color_sort(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut uncolored = cand.to_vec();
        let mut order = Vec::new();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut avail = uncolored.clone();
            loop {
                let Some(v) = iter_ones(&avail).next() else {
                    break;
                };
                order.push((v, color));
                uncolored[v / 64] &= !(1 << (v % 64));
                avail[v / 64] &= !(1 << (v % 64));
                for (a, r) in avail.iter_mut().zip(self.adj.row(v)) {
                    *a &= !r;
                }
            }
        }
        order
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return;
        }
        let order = self.color_sort(&cand);
        for &(v, bound) in order.iter().rev() {
            if self.exhausted || self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Vec<u64> = cand
                .iter()
                .zip(self.adj.row(v))
                .map(|(c, r)| c & r)
                .collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}
