//! Exact chromatic number.
//!
//! Non-adjacent twins (vertices with identical neighbourhoods) can always
//! share a colour, so the search runs on the quotient by twin classes. The
//! quotient is induced on one representative per class, hence its chromatic
//! number is also a lower bound for the whole graph. Lower bounds come from a
//! maximum clique or from `⌈v/α⌉` with an exactly computed independence
//! number; the upper bound from DSATUR or a seed colouring. When the two
//! disagree and `v = χ·α` leaves no slack, a colouring with the lower bound
//! number of colours is an exact cover by maximum independent sets, which is
//! searched directly. Remaining gaps go to DSATUR branch and bound.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::clique::{complement, max_clique};
use crate::bitmatrix::{iter_ones, BitMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for ColorBudget {
    fn default() -> Self {
        Self {
            max_nodes: 20_000_000,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerBound {
    /// A clique of this size.
    Clique { vertices: Vec<usize> },
    /// `⌈vertex_count / independence_number⌉` on the twin quotient.
    IndependenceRatio {
        independence_number: usize,
        vertex_count: usize,
        independent_set: Vec<usize>,
    },
    /// Exhaustive search found no colouring with fewer colours.
    Search { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringResult {
    pub lower: usize,
    pub upper: usize,
    /// A proper colouring with `upper` colours, indexed by vertex.
    pub coloring: Vec<usize>,
    pub lower_witness: LowerBound,
    pub quotient_order: usize,
    pub nodes: u64,
}

impl ColoringResult {
    pub fn chromatic_number(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

pub fn is_proper_coloring(adj: &BitMatrix, coloring: &[usize]) -> bool {
    coloring.len() == adj.order()
        && (0..adj.order()).all(|u| adj.neighbors(u).all(|v| coloring[u] != coloring[v]))
}

/// Classes of vertices with identical adjacency rows, ordered by smallest
/// member. Members of a class are pairwise non-adjacent.
pub fn twin_classes(adj: &BitMatrix) -> Vec<Vec<usize>> {
    let mut index: HashMap<&[u64], usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..adj.order() {
        let c = *index.entry(adj.row(v)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(v);
    }
    classes
}

/// Nodes spent on each clique/independence search.
const BOUND_SEARCH_NODES: u64 = 2_000_000;

pub fn chromatic_exact(
    adj: &BitMatrix,
    seed: Option<&[usize]>,
    budget: ColorBudget,
) -> ColoringResult {
    let classes = twin_classes(adj);
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let q = adj.induced(&reps);
    let m = q.order();

    if m == 0 {
        return ColoringResult {
            lower: 0,
            upper: 0,
            coloring: Vec::new(),
            lower_witness: LowerBound::Clique { vertices: vec![] },
            quotient_order: 0,
            nodes: 0,
        };
    }

    // Upper bound.
    let mut best = dsatur_greedy(&q);
    if let Some(seed) = seed.filter(|s| is_proper_coloring(adj, s)) {
        let lifted = normalize(&reps.iter().map(|&r| seed[r]).collect::<Vec<_>>());
        if colors_used(&lifted) < colors_used(&best) {
            best = lifted;
        }
    }

    // Lower bounds.
    let clique = max_clique(&q, BOUND_SEARCH_NODES);
    let mut lower = clique.clique.len();
    let mut witness = LowerBound::Clique {
        vertices: clique.clique.iter().map(|&i| reps[i]).collect(),
    };
    let independent = max_clique(&complement(&q), BOUND_SEARCH_NODES);
    let alpha = independent.exact.then_some(independent.clique.len());
    if let Some(alpha) = alpha {
        let ratio = m.div_ceil(alpha);
        if ratio > lower {
            lower = ratio;
            witness = LowerBound::IndependenceRatio {
                independence_number: alpha,
                vertex_count: m,
                independent_set: independent.clique.iter().map(|&i| reps[i]).collect(),
            };
        }
    }

    let mut nodes = 0;
    if let Some(alpha) = alpha.filter(|&a| lower < colors_used(&best) && lower * a == m) {
        let mut cover = ExactCover::new(&q, alpha, budget);
        match cover.run() {
            CoverOutcome::Found(c) => best = c,
            CoverOutcome::Impossible => {
                lower += 1;
                witness = LowerBound::Search { nodes: cover.nodes };
            }
            CoverOutcome::Exhausted => {}
        }
        nodes += cover.nodes;
    }
    if lower < colors_used(&best) {
        let mut bb = BranchAndBound::new(&q, best, lower, alpha, budget);
        bb.run();
        nodes += bb.nodes;
        best = bb.best;
        if bb.complete && colors_used(&best) > lower {
            lower = colors_used(&best);
            witness = LowerBound::Search { nodes };
        }
    }

    let upper = colors_used(&best);
    let mut class_of = vec![0; adj.order()];
    for (c, members) in classes.iter().enumerate() {
        for &v in members {
            class_of[v] = c;
        }
    }
    let coloring: Vec<usize> = class_of.iter().map(|&c| best[c]).collect();
    debug_assert!(is_proper_coloring(adj, &coloring));
    ColoringResult {
        lower,
        upper,
        coloring,
        lower_witness: witness,
        quotient_order: m,
        nodes,
    }
}

fn colors_used(coloring: &[usize]) -> usize {
    coloring.iter().max().map_or(0, |&c| c + 1)
}

/// Renumbers colours by first appearance.
fn normalize(coloring: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    coloring
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

fn dsatur_greedy(adj: &BitMatrix) -> Vec<usize> {
    let n = adj.order();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (sat[v], adj.degree(v), std::cmp::Reverse(v)))
            .expect("uncoloured vertex remains");
        let c = (0..)
            .find(|&c| !seen[v].get(c).copied().unwrap_or(false))
            .unwrap();
        color[v] = c;
        for u in adj.neighbors(v) {
            if seen[u].len() <= c {
                seen[u].resize(c + 1, false);
            }
            if !seen[u][c] {
                seen[u][c] = true;
                sat[u] += 1;
            }
        }
    }
    color
}

enum CoverOutcome {
    Found(Vec<usize>),
    Impossible,
    Exhausted,
}

/// Partition of the vertex set into independent sets of size `alpha`,
/// found with Knuth's Algorithm X over all maximum independent sets.
struct ExactCover {
    order: usize,
    words: usize,
    sets: Vec<Vec<u64>>,
    containing: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: ColorBudget,
    started: Instant,
    exhausted: bool,
}

impl ExactCover {
    fn new(adj: &BitMatrix, alpha: usize, budget: ColorBudget) -> Self {
        let order = adj.order();
        let words = adj.words_per_row();
        let mut cover = Self {
            order,
            words,
            sets: Vec::new(),
            containing: vec![Vec::new(); order],
            chosen: Vec::new(),
            nodes: 0,
            budget,
            started: Instant::now(),
            exhausted: false,
        };
        let comp = complement(adj);
        let all: Vec<u64> = (0..words)
            .map(|w| {
                let bits = (order - 64 * w).min(64);
                if bits == 64 {
                    u64::MAX
                } else {
                    (1u64 << bits) - 1
                }
            })
            .collect();
        cover.collect_sets(&comp, alpha, &mut Vec::new(), all);
        for (i, set) in cover.sets.iter().enumerate() {
            for v in iter_ones(set) {
                cover.containing[v].push(i);
            }
        }
        cover
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes % 1024 == 0
                && self
                    .budget
                    .time_limit
                    .is_some_and(|t| self.started.elapsed() > t))
        {
            self.exhausted = true;
        }
        !self.exhausted
    }

    /// Every clique of exactly `size` vertices in `comp`, each listed once
    /// in increasing vertex order.
    fn collect_sets(
        &mut self,
        comp: &BitMatrix,
        size: usize,
        current: &mut Vec<usize>,
        cand: Vec<u64>,
    ) {
        if !self.tick() {
            return;
        }
        if current.len() == size {
            let mut set = vec![0u64; self.words];
            for &v in current.iter() {
                set[v / 64] |= 1 << (v % 64);
            }
            self.sets.push(set);
            return;
        }
        let remaining: Vec<usize> = iter_ones(&cand).collect();
        for (i, &v) in remaining.iter().enumerate() {
            if current.len() + remaining.len() - i < size {
                break;
            }
            let mut next = cand.clone();
            for &u in &remaining[..=i] {
                next[u / 64] &= !(1 << (u % 64));
            }
            for (a, r) in next.iter_mut().zip(comp.row(v)) {
                *a &= r;
            }
            current.push(v);
            self.collect_sets(comp, size, current, next);
            current.pop();
            if self.exhausted {
                return;
            }
        }
    }

    fn run(&mut self) -> CoverOutcome {
        if self.exhausted {
            return CoverOutcome::Exhausted;
        }
        let mut covered = vec![0u64; self.words];
        if self.search(&mut covered) {
            let mut coloring = vec![0; self.order];
            for (c, &s) in self.chosen.iter().enumerate() {
                for v in iter_ones(&self.sets[s]) {
                    coloring[v] = c;
                }
            }
            CoverOutcome::Found(normalize(&coloring))
        } else if self.exhausted {
            CoverOutcome::Exhausted
        } else {
            CoverOutcome::Impossible
        }
    }

    fn disjoint(&self, set: usize, covered: &[u64]) -> bool {
        self.sets[set].iter().zip(covered).all(|(a, b)| a & b == 0)
    }

    fn search(&mut self, covered: &mut [u64]) -> bool {
        if !self.tick() {
            return false;
        }
        // Branch on the uncovered vertex with the fewest usable sets.
        let mut pick: Option<(usize, usize)> = None;
        for v in 0..self.order {
            if covered[v / 64] >> (v % 64) & 1 == 1 {
                continue;
            }
            let options = self.containing[v]
                .iter()
                .filter(|&&s| self.disjoint(s, covered))
                .count();
            if pick.map_or(true, |(_, best)| options < best) {
                pick = Some((v, options));
                if options == 0 {
                    break;
                }
            }
        }
        let Some((v, _)) = pick else {
            return true;
        };
        let options: Vec<usize> = self.containing[v]
            .iter()
            .copied()
            .filter(|&s| self.disjoint(s, covered))
            .collect();
        for s in options {
            for (c, w) in covered.iter_mut().zip(&self.sets[s]) {
                *c |= w;
            }
            self.chosen.push(s);
            if self.search(covered) {
                return true;
            }
            self.chosen.pop();
            for (c, w) in covered.iter_mut().zip(&self.sets[s]) {
                *c &= !w;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// DSATUR branch and bound looking for colourings with fewer colours than
/// the incumbent.
struct BranchAndBound<'a> {
    adj: &'a BitMatrix,
    neighbors: Vec<Vec<usize>>,
    degree: Vec<usize>,
    best: Vec<usize>,
    best_count: usize,
    lower: usize,
    alpha: Option<usize>,
    color: Vec<usize>,
    /// `nbr_colors[v * stride + c]`: coloured neighbours of `v` with colour `c`.
    nbr_colors: Vec<u32>,
    sat: Vec<usize>,
    class_size: Vec<usize>,
    stride: usize,
    uncolored: usize,
    nodes: u64,
    budget: ColorBudget,
    started: Instant,
    complete: bool,
}

const NONE: usize = usize::MAX;

impl<'a> BranchAndBound<'a> {
    fn new(
        adj: &'a BitMatrix,
        best: Vec<usize>,
        lower: usize,
        alpha: Option<usize>,
        budget: ColorBudget,
    ) -> Self {
        let n = adj.order();
        let best_count = colors_used(&best);
        let stride = best_count.max(1);
        Self {
            adj,
            neighbors: (0..n).map(|v| adj.neighbors(v).collect()).collect(),
            degree: (0..n).map(|v| adj.degree(v)).collect(),
            best,
            best_count,
            lower,
            alpha,
            color: vec![NONE; n],
            nbr_colors: vec![0; n * stride],
            sat: vec![0; n],
            class_size: vec![0; stride],
            stride,
            uncolored: n,
            nodes: 0,
            budget,
            started: Instant::now(),
            complete: true,
        }
    }

    fn run(&mut self) {
        self.search(0);
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes > self.budget.max_nodes
            || (self.nodes % 4096 == 0
                && self
                    .budget
                    .time_limit
                    .is_some_and(|t| self.started.elapsed() > t))
        {
            self.complete = false;
        }
        !self.complete
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.class_size[c] += 1;
        self.uncolored -= 1;
        for i in 0..self.neighbors[v].len() {
            let u = self.neighbors[v][i];
            let slot = &mut self.nbr_colors[u * self.stride + c];
            *slot += 1;
            if *slot == 1 {
                self.sat[u] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NONE;
        self.class_size[c] -= 1;
        self.uncolored += 1;
        for i in 0..self.neighbors[v].len() {
            let u = self.neighbors[v][i];
            let slot = &mut self.nbr_colors[u * self.stride + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn search(&mut self, used: usize) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        if self.uncolored == 0 {
            self.best = self.color.clone();
            self.best_count = used;
            return;
        }
        // Colour classes are independent sets, so at most α vertices each.
        let limit = self.best_count - 1;
        if let Some(alpha) = self.alpha {
            let room: usize = (0..limit)
                .map(|c| alpha - self.class_size[c].min(alpha))
                .sum();
            if self.uncolored > room {
                return;
            }
        }
        let v = (0..self.adj.order())
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.sat[v], self.degree[v], std::cmp::Reverse(v)))
            .expect("uncoloured vertex remains");
        let max_color = (used + 1).min(limit);
        for c in 0..max_color {
            // The incumbent may have improved in an earlier branch.
            if c + 1 >= self.best_count {
                break;
            }
            if self.nbr_colors[v * self.stride + c] != 0 {
                continue;
            }
            self.assign(v, c);
            self.search(used.max(c + 1));
            self.unassign(v, c);
            if !self.complete || self.best_count <= self.lower {
                return;
            }
        }
    }
}
