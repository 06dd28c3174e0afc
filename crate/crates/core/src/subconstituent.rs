//! First and second subconstituents: the subgraphs induced on the
//! neighbours and on the non-neighbours of a base vertex.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::analysis::census::{Census, Classification, Histogram};
use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::form::TupleVec;
use crate::formulas::{self, SubPrediction, SubconstituentPrediction};
use crate::graph::OrthoGraph;
use crate::projective::canonicalize;

/// How the second vertex set is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubVariant {
    /// `V₂ = V \ (N(b) ∪ {b})`.
    Definitional,
    /// `V₂` without the whole fiber of `b`, i.e. the lifts of the residue
    /// graph's second subconstituent. Identical to `Definitional` for `V₁`
    /// and when fibers are singletons.
    ExcludeBaseFiber,
}

#[derive(Debug, Clone)]
pub struct Subconstituent {
    pub index: u8,
    pub variant: SubVariant,
    pub base: usize,
    /// Parent ids, in parent order.
    pub vertices: Vec<usize>,
    pub adjacency: BitMatrix,
}

/// Id of `[1, 0, …, 0]`, which is isotropic for every form.
pub fn base_vertex(g: &OrthoGraph) -> usize {
    let spec = g.spec();
    let mut e1 = vec![0u64; spec.dim()];
    e1[0] = 1;
    let p = canonicalize(spec, &TupleVec::new(spec.ring(), &e1)).expect("e1 has a unit");
    g.find(&p).expect("e1 is always a vertex")
}

pub fn subconstituent(g: &OrthoGraph, index: u8, variant: SubVariant) -> Result<Subconstituent> {
    subconstituent_at(g, base_vertex(g), index, variant)
}

/// Subconstituent around an arbitrary base vertex, for checking that the
/// census does not depend on the base.
pub fn subconstituent_at(
    g: &OrthoGraph,
    base: usize,
    index: u8,
    variant: SubVariant,
) -> Result<Subconstituent> {
    if base >= g.order() {
        return Err(Error::InvalidArgument(format!("no vertex {base}")));
    }
    let base_fiber = g.project_vertex(base);
    let vertices: Vec<usize> = match index {
        1 => g.adjacency().neighbors(base).collect(),
        2 => (0..g.order())
            .filter(|&v| v != base && !g.adjacent(base, v))
            .filter(|&v| variant == SubVariant::Definitional || g.project_vertex(v) != base_fiber)
            .collect(),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "subconstituent index must be 1 or 2, got {index}"
            )))
        }
    };
    let adjacency = g.adjacency().induced(&vertices);
    Ok(Subconstituent {
        index,
        variant,
        base,
        vertices,
        adjacency,
    })
}

impl Subconstituent {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Residue id of every member, for the fiber split of the census.
    pub fn fiber_labels(&self, g: &OrthoGraph) -> Vec<usize> {
        self.vertices.iter().map(|&v| g.project_vertex(v)).collect()
    }

    pub fn census(&self, g: &OrthoGraph) -> Census {
        Census::compute(&self.adjacency, Some(&self.fiber_labels(g)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceCheck {
    pub connected: bool,
    pub eccentricity: Option<usize>,
    /// The non-neighbours of the base are exactly the vertices at distance 2.
    pub second_is_distance_two: bool,
    /// A single edge: the second subconstituent is empty.
    pub degenerate_path: bool,
}

pub fn distance_check(g: &OrthoGraph, base: usize) -> DistanceCheck {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    dist[base] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for v in g.adjacency().neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let connected = dist.iter().all(|&d| d != usize::MAX);
    DistanceCheck {
        connected,
        eccentricity: connected.then(|| dist.iter().copied().max().unwrap_or(0)),
        second_is_distance_two: (0..n)
            .all(|v| (dist[v] == 2) == (v != base && !g.adjacent(base, v))),
        degenerate_path: n == 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubMeasured {
    pub vertex_count: usize,
    pub degree: Option<usize>,
    pub adjacent: Histogram,
    pub nonadjacent: Histogram,
    pub classification: Classification,
}

impl SubMeasured {
    pub fn from_census(c: &Census) -> Self {
        Self {
            vertex_count: c.vertex_count,
            degree: c.regular_degree(),
            adjacent: c.adjacent.clone(),
            nonadjacent: c.nonadjacent(),
            classification: c.classification(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: &'static str,
    pub predicted: String,
    pub measured: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubComparison {
    pub index: u8,
    pub variant: SubVariant,
    pub prediction: SubPrediction,
    pub measured: SubMeasured,
    pub checks: Vec<FieldCheck>,
    /// `None` when there is no prediction to compare with.
    pub pass: Option<bool>,
}

fn show_set(s: &BTreeSet<BigUint>) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn show_keys(h: &Histogram) -> String {
    let items: Vec<String> = h.keys().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Vertex count and degree must match exactly. Every measured
/// common-neighbour value must be one the prediction allows.
pub fn compare(pred: &SubconstituentPrediction, m: &SubMeasured) -> Vec<FieldCheck> {
    let within = |h: &Histogram, allowed: &BTreeSet<BigUint>| {
        h.keys().all(|&v| allowed.contains(&BigUint::from(v)))
    };
    vec![
        FieldCheck {
            field: "vertex_count",
            predicted: pred.vertex_count.to_string(),
            measured: m.vertex_count.to_string(),
            pass: pred.vertex_count == BigUint::from(m.vertex_count),
        },
        FieldCheck {
            field: "degree",
            predicted: pred.degree.to_string(),
            measured: m.degree.map_or("irregular".into(), |k| k.to_string()),
            pass: m.degree.is_some_and(|k| pred.degree == BigUint::from(k)),
        },
        FieldCheck {
            field: "adjacent_common",
            predicted: show_set(&pred.adjacent),
            measured: show_keys(&m.adjacent),
            pass: within(&m.adjacent, &pred.adjacent),
        },
        FieldCheck {
            field: "nonadjacent_common",
            predicted: show_set(&pred.nonadjacent),
            measured: show_keys(&m.nonadjacent),
            pass: within(&m.nonadjacent, &pred.nonadjacent),
        },
    ]
}

/// Builds subconstituent `index` of `g` and compares its census with the
/// closed-form prediction.
pub fn verify_sub(g: &OrthoGraph, index: u8, variant: SubVariant) -> Result<SubComparison> {
    let prediction = formulas::predict_sub(g.spec(), index)?;
    let sub = subconstituent(g, index, variant)?;
    let measured = SubMeasured::from_census(&sub.census(g));
    let checks = prediction
        .covered()
        .map(|p| compare(p, &measured))
        .unwrap_or_default();
    let pass = prediction.covered().map(|_| checks.iter().all(|c| c.pass));
    Ok(SubComparison {
        index,
        variant,
        prediction,
        measured,
        checks,
        pass,
    })
}
