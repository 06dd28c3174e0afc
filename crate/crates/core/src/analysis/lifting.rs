//! Checks of the fiber structure relating a graph to its residue graph.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::coloring::twin_classes;
use crate::formulas;
use crate::graph::OrthoGraph;
use crate::projective::unit_position_check;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftingReport {
    pub expected_fiber_size: usize,
    pub fiber_count: usize,
    pub min_fiber_size: usize,
    pub max_fiber_size: usize,
    pub fiber_sizes_ok: bool,
    /// Adjacent vertices have adjacent projections.
    pub adjacency_descends: bool,
    /// Every lift of a residue edge is an edge.
    pub adjacency_lifts: bool,
    pub unit_positions_ok: bool,
    pub fibers_are_twins: bool,
    pub twin_classes_are_fibers: bool,
}

impl LiftingReport {
    pub fn all_ok(&self) -> bool {
        self.fiber_sizes_ok
            && self.adjacency_descends
            && self.adjacency_lifts
            && self.unit_positions_ok
            && self.fibers_are_twins
            && self.twin_classes_are_fibers
    }
}

/// True iff all members of every fiber have the same neighbourhood, so any
/// permutation inside fibers is an automorphism.
pub fn fiber_wreath_check(g: &OrthoGraph) -> bool {
    let adj = g.adjacency();
    g.fibers()
        .all(|f| f.members.windows(2).all(|w| adj.row(w[0]) == adj.row(w[1])))
}

/// Compares every adjacency row of `g` against the union of the fibers over
/// the residue neighbours of its projection.
pub fn check_lifting(g: &OrthoGraph, residue: &OrthoGraph) -> LiftingReport {
    let expected = formulas::fiber_size(g.spec())
        .to_usize()
        .unwrap_or(usize::MAX);
    let sizes: Vec<usize> = g.fibers().map(|f| f.members.len()).collect();
    let min = sizes.iter().copied().min().unwrap_or(0);
    let max = sizes.iter().copied().max().unwrap_or(0);
    let adj = g.adjacency();
    let words = adj.words_per_row();
    let res_adj = residue.adjacency();
    let same_residue = residue.vertices() == g.residue_vertices();

    let fiber_masks: Vec<Vec<u64>> = g
        .fibers()
        .map(|f| {
            let mut m = vec![0u64; words];
            for &v in f.members {
                m[v / 64] |= 1 << (v % 64);
            }
            m
        })
        .collect();
    let expected_rows: Vec<Vec<u64>> = (0..if same_residue { res_adj.order() } else { 0 })
        .map(|r| {
            let mut m = vec![0u64; words];
            for s in res_adj.neighbors(r) {
                for (a, b) in m.iter_mut().zip(&fiber_masks[s]) {
                    *a |= b;
                }
            }
            m
        })
        .collect();
    let (descends, lifts) = if same_residue {
        (0..g.order())
            .into_par_iter()
            .map(|v| {
                let row = adj.row(v);
                let exp = &expected_rows[g.project_vertex(v)];
                let sub = row.iter().zip(exp).all(|(r, e)| r & !e == 0);
                let sup = row.iter().zip(exp).all(|(r, e)| e & !r == 0);
                (sub, sup)
            })
            .reduce(|| (true, true), |a, b| (a.0 && b.0, a.1 && b.1))
    } else {
        (false, false)
    };

    let spec = g.spec();
    let unit_positions_ok = g
        .vertices()
        .par_iter()
        .all(|p| unit_position_check(spec, p));

    let twins = twin_classes(adj);
    let mut fibers: Vec<Vec<usize>> = g.fibers().map(|f| f.members.to_vec()).collect();
    fibers.sort();

    LiftingReport {
        expected_fiber_size: expected,
        fiber_count: sizes.len(),
        min_fiber_size: min,
        max_fiber_size: max,
        fiber_sizes_ok: min == expected
            && max == expected
            && sizes.iter().sum::<usize>() == g.order(),
        adjacency_descends: descends,
        adjacency_lifts: lifts,
        unit_positions_ok,
        fibers_are_twins: fiber_wreath_check(g),
        twin_classes_are_fibers: twins == fibers,
    }
}
