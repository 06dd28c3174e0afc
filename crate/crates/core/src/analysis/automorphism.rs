//! Automorphism group order and transitivity by partition refinement with
//! vertex individualization.
//!
//! The search follows one path of individualizations down to a discrete
//! partition, producing a base `b₁, …, b_m`. Working upwards from the
//! deepest level, it determines the orbit of `b_k` under the pointwise
//! stabilizer of `b₁, …, b_{k-1}` by trying every other vertex of the
//! target cell, skipping those already reached by known generators. The
//! group order is the product of these orbit lengths.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::bitmatrix::BitMatrix;
use crate::serde_dec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutBudget {
    /// Graphs above this order are not searched.
    pub max_vertices: usize,
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for AutBudget {
    fn default() -> Self {
        Self {
            max_vertices: 150,
            max_nodes: 5_000_000,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutGroupResult {
    #[serde(serialize_with = "serde_dec::big")]
    pub order: BigUint,
    #[serde(skip)]
    pub generators: Vec<Vec<usize>>,
    pub generator_count: usize,
    pub base: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
    pub vertex_orbit_count: usize,
    pub vertex_transitive: bool,
    pub arc_count: usize,
    pub arc_orbit_size: usize,
    pub arc_transitive: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AutOutcome {
    Complete(AutGroupResult),
    Inconclusive { reason: String },
}

impl AutOutcome {
    pub fn complete(&self) -> Option<&AutGroupResult> {
        match self {
            AutOutcome::Complete(r) => Some(r),
            AutOutcome::Inconclusive { .. } => None,
        }
    }
}

type Partition = Vec<Vec<usize>>;

/// Whether `perm` is a bijection preserving adjacency.
pub fn is_automorphism(adj: &BitMatrix, perm: &[usize]) -> bool {
    let n = adj.order();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    (0..n).all(|u| adj.neighbors(u).all(|v| adj.get(perm[u], perm[v])))
}

/// Orbit id of every vertex under the group generated by `gens`; ids are
/// the smallest member of each orbit.
pub fn vertex_orbits(order: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..order).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    (0..order).map(|v| find(&mut parent, v)).collect()
}

/// Size of the orbit of the arc `(u, v)` under the group generated by `gens`.
pub fn arc_orbit_size(adj: &BitMatrix, gens: &[Vec<usize>], arc: (usize, usize)) -> usize {
    let mut seen = BitMatrix::new(adj.order());
    let mut queue = VecDeque::from([arc]);
    seen.set(arc.0, arc.1, true);
    let mut count = 1;
    while let Some((u, v)) = queue.pop_front() {
        for g in gens {
            let next = (g[u], g[v]);
            if !seen.get(next.0, next.1) {
                seen.set(next.0, next.1, true);
                count += 1;
                queue.push_back(next);
            }
        }
    }
    count
}

/// Equitable refinement. Each cell is split by the vector of neighbour
/// counts into every current cell; sub-cells are ordered by that vector, so
/// the result commutes with relabelling.
fn refine(adj: &BitMatrix, mut cells: Partition) -> Partition {
    let words = adj.words_per_row();
    loop {
        let masks: Vec<Vec<u64>> = cells
            .iter()
            .map(|c| {
                let mut m = vec![0u64; words];
                for &v in c {
                    m[v / 64] |= 1 << (v % 64);
                }
                m
            })
            .collect();
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = adj.row(v);
                    let sig = masks
                        .iter()
                        .map(|m| row.iter().zip(m).map(|(a, b)| (a & b).count_ones()).sum())
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut part: Vec<usize> = keyed[start..i].iter().map(|&(_, v)| v).collect();
                    part.sort_unstable();
                    next.push(part);
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn individualize(cells: &Partition, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for cell in cells {
        if cell.contains(&v) && cell.len() > 1 {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

fn first_nonsingleton(cells: &Partition) -> Option<usize> {
    cells.iter().position(|c| c.len() > 1)
}

fn compatible(a: &Partition, b: &Partition) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len())
}

struct Level {
    partition: Partition,
    cell: usize,
    base: usize,
}

struct Search<'a> {
    adj: &'a BitMatrix,
    levels: Vec<Level>,
    leaf: Partition,
    leaf_labels: Vec<usize>,
    nodes: u64,
    budget: AutBudget,
    started: Instant,
    aborted: bool,
}

impl Search<'_> {
    fn target(&self, depth: usize) -> &Partition {
        self.levels.get(depth).map_or(&self.leaf, |l| &l.partition)
    }

    /// Looks for an automorphism mapping the first leaf into the subtree
    /// rooted at `p`, which sits at `depth` on the search tree.
    fn find_leaf(&mut self, p: Partition, depth: usize) -> Option<Vec<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes % 1024 == 0
                && self
                    .budget
                    .time_limit
                    .is_some_and(|t| self.started.elapsed() > t))
        {
            self.aborted = true;
        }
        if self.aborted || !compatible(&p, self.target(depth)) {
            return None;
        }
        if depth == self.levels.len() {
            let mut perm = vec![0; self.adj.order()];
            for (i, cell) in p.iter().enumerate() {
                perm[self.leaf_labels[i]] = cell[0];
            }
            return is_automorphism(self.adj, &perm).then_some(perm);
        }
        let cell = self.levels[depth].cell;
        for &y in &p[cell] {
            let child = refine(self.adj, individualize(&p, y));
            if let Some(g) = self.find_leaf(child, depth + 1) {
                return Some(g);
            }
            if self.aborted {
                return None;
            }
        }
        None
    }
}

pub fn automorphisms(adj: &BitMatrix, budget: AutBudget) -> AutOutcome {
    let n = adj.order();
    if n > budget.max_vertices {
        return AutOutcome::Inconclusive {
            reason: format!(
                "{n} vertices exceeds the search limit of {}",
                budget.max_vertices
            ),
        };
    }
    let started = Instant::now();
    let mut p = refine(adj, vec![(0..n).collect()]);
    if n == 0 {
        p.clear();
    }
    let mut levels = Vec::new();
    while let Some(cell) = first_nonsingleton(&p) {
        let base = p[cell][0];
        let next = refine(adj, individualize(&p, base));
        levels.push(Level {
            partition: p,
            cell,
            base,
        });
        p = next;
    }
    let leaf_labels: Vec<usize> = p.iter().map(|c| c[0]).collect();
    let mut search = Search {
        adj,
        levels,
        leaf: p,
        leaf_labels,
        nodes: 0,
        budget,
        started,
        aborted: false,
    };

    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut orbit_lengths = vec![0; search.levels.len()];
    for k in (0..search.levels.len()).rev() {
        let base = search.levels[k].base;
        let cell = search.levels[k].partition[search.levels[k].cell].clone();
        let mut orbits = vertex_orbits(n, &gens);
        for &w in &cell {
            if orbits[w] == orbits[base] {
                continue;
            }
            let start = refine(adj, individualize(&search.levels[k].partition, w));
            if let Some(g) = search.find_leaf(start, k + 1) {
                debug_assert_eq!(g[base], w);
                gens.push(g);
                orbits = vertex_orbits(n, &gens);
            }
            if search.aborted {
                return AutOutcome::Inconclusive {
                    reason: format!("search budget exhausted after {} nodes", search.nodes),
                };
            }
        }
        orbit_lengths[k] = cell.iter().filter(|&&w| orbits[w] == orbits[base]).count();
    }

    let order = orbit_lengths
        .iter()
        .fold(BigUint::one(), |acc, &l| acc * BigUint::from(l));
    let orbits = vertex_orbits(n, &gens);
    let vertex_orbit_count = (0..n).filter(|&v| orbits[v] == v).count();
    let arc_count = 2 * adj.edge_count();
    let arc_orbit_size = (0..n)
        .find_map(|u| adj.neighbors(u).next().map(|v| (u, v)))
        .map_or(0, |arc| arc_orbit_size(adj, &gens, arc));
    AutOutcome::Complete(AutGroupResult {
        order,
        generator_count: gens.len(),
        generators: gens,
        base: search.levels.iter().map(|l| l.base).collect(),
        orbit_lengths,
        vertex_orbit_count,
        vertex_transitive: vertex_orbit_count <= 1,
        arc_count,
        arc_orbit_size,
        arc_transitive: arc_orbit_size == arc_count,
        nodes: search.nodes,
    })
}
