//! Exhaustive common-neighbour census over all unordered vertex pairs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitmatrix::BitMatrix;

/// Histogram `value -> number of pairs`.
pub type Histogram = BTreeMap<usize, u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `degree -> number of vertices`.
    pub degrees: BTreeMap<usize, usize>,
    /// Common-neighbour counts over adjacent pairs.
    pub adjacent: Histogram,
    /// Common-neighbour counts over non-adjacent pairs with equal labels.
    pub nonadjacent_same_fiber: Histogram,
    /// Common-neighbour counts over non-adjacent pairs with different labels.
    pub nonadjacent_cross_fiber: Histogram,
    /// Adjacent pairs with equal labels.
    pub adjacent_same_fiber: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Empty,
    Complete {
        v: usize,
        k: usize,
    },
    StronglyRegular {
        v: usize,
        k: usize,
        lambda: Option<usize>,
        mu: usize,
    },
    QuasiStronglyRegular {
        v: usize,
        k: usize,
        lambda: Option<usize>,
        values: Vec<usize>,
    },
    /// Regular but adjacent pairs disagree on their common-neighbour count.
    Regular {
        v: usize,
        k: usize,
    },
    Irregular {
        v: usize,
    },
}

#[derive(Clone)]
struct Acc {
    adjacent: Vec<u64>,
    same: Vec<u64>,
    cross: Vec<u64>,
    adjacent_same: u64,
}

impl Acc {
    fn new(len: usize) -> Self {
        Self {
            adjacent: vec![0; len],
            same: vec![0; len],
            cross: vec![0; len],
            adjacent_same: 0,
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        for (a, b) in self.adjacent.iter_mut().zip(&other.adjacent) {
            *a += b;
        }
        for (a, b) in self.same.iter_mut().zip(&other.same) {
            *a += b;
        }
        for (a, b) in self.cross.iter_mut().zip(&other.cross) {
            *a += b;
        }
        self.adjacent_same += other.adjacent_same;
        self
    }
}

fn histogram(counts: &[u64]) -> Histogram {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, &c)| (v, c))
        .collect()
}

impl Census {
    /// Runs the census. `labels` assigns each vertex a fiber; without labels
    /// every non-adjacent pair counts as cross-fiber.
    pub fn compute(adj: &BitMatrix, labels: Option<&[usize]>) -> Census {
        let order = adj.order();
        if let Some(l) = labels {
            assert_eq!(l.len(), order, "one label per vertex");
        }
        let same_label = |i: usize, j: usize| labels.is_some_and(|l| l[i] == l[j]);
        let acc = (0..order)
            .into_par_iter()
            .fold(
                || Acc::new(order + 1),
                |mut acc, i| {
                    for j in i + 1..order {
                        let c = adj.common(i, j);
                        let same = same_label(i, j);
                        if adj.get(i, j) {
                            acc.adjacent[c] += 1;
                            acc.adjacent_same += same as u64;
                        } else if same {
                            acc.same[c] += 1;
                        } else {
                            acc.cross[c] += 1;
                        }
                    }
                    acc
                },
            )
            .reduce(|| Acc::new(order + 1), Acc::merge);

        let mut degrees = BTreeMap::new();
        for i in 0..order {
            *degrees.entry(adj.degree(i)).or_insert(0) += 1;
        }
        Census {
            vertex_count: order,
            edge_count: adj.edge_count(),
            degrees,
            adjacent: histogram(&acc.adjacent),
            nonadjacent_same_fiber: histogram(&acc.same),
            nonadjacent_cross_fiber: histogram(&acc.cross),
            adjacent_same_fiber: acc.adjacent_same,
        }
    }

    pub fn regular_degree(&self) -> Option<usize> {
        match self.degrees.len() {
            1 => self.degrees.keys().next().copied(),
            _ => None,
        }
    }

    pub fn nonadjacent(&self) -> Histogram {
        let mut h = self.nonadjacent_same_fiber.clone();
        for (&v, &c) in &self.nonadjacent_cross_fiber {
            *h.entry(v).or_insert(0) += c;
        }
        h
    }

    pub fn classification(&self) -> Classification {
        let v = self.vertex_count;
        if v == 0 {
            return Classification::Empty;
        }
        let Some(k) = self.regular_degree() else {
            return Classification::Irregular { v };
        };
        let nonadjacent: Vec<usize> = self.nonadjacent().into_keys().collect();
        if nonadjacent.is_empty() {
            return Classification::Complete { v, k };
        }
        if self.adjacent.len() > 1 {
            return Classification::Regular { v, k };
        }
        let lambda = self.adjacent.keys().next().copied();
        match nonadjacent[..] {
            [mu] => Classification::StronglyRegular { v, k, lambda, mu },
            _ => Classification::QuasiStronglyRegular {
                v,
                k,
                lambda,
                values: nonadjacent,
            },
        }
    }
}
