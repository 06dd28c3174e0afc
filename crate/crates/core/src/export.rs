//! Graph export: adjacency JSON, DIMACS edge lists and vertex tables.

use std::io::{self, Write};

use serde::Serialize;

use crate::bitmatrix::BitMatrix;
use crate::form::FormSpec;
use crate::graph::OrthoGraph;
use crate::subconstituent::Subconstituent;

pub const EXPORT_SCHEMA_VERSION: u32 = 1;

/// A graph or one of its subconstituents, with ids local to the view.
#[derive(Debug, Clone, Copy)]
pub struct GraphView<'a> {
    graph: &'a OrthoGraph,
    sub: Option<&'a Subconstituent>,
}

impl<'a> GraphView<'a> {
    pub fn whole(graph: &'a OrthoGraph) -> Self {
        Self { graph, sub: None }
    }

    pub fn sub(graph: &'a OrthoGraph, sub: &'a Subconstituent) -> Self {
        Self {
            graph,
            sub: Some(sub),
        }
    }

    fn adjacency(&self) -> &BitMatrix {
        self.sub.map_or(self.graph.adjacency(), |s| &s.adjacency)
    }

    fn order(&self) -> usize {
        self.adjacency().order()
    }

    fn parent(&self, id: usize) -> usize {
        self.sub.map_or(id, |s| s.vertices[id])
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let adj = self.adjacency();
        (0..adj.order()).flat_map(move |i| {
            adj.neighbors(i)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }
}

#[derive(Debug, Serialize)]
struct ExportVertex<'a> {
    id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    parent_id: Option<usize>,
    residue_id: usize,
    coords: &'a [u32],
}

#[derive(Debug, Serialize)]
struct AdjacencyExport<'a> {
    schema_version: u32,
    spec: &'a FormSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    subconstituent: Option<u8>,
    vertex_count: usize,
    edge_count: usize,
    vertices: Vec<ExportVertex<'a>>,
    adjacency: Vec<Vec<usize>>,
}

pub fn write_json<W: Write>(view: GraphView<'_>, w: W) -> io::Result<()> {
    let adj = view.adjacency();
    let export = AdjacencyExport {
        schema_version: EXPORT_SCHEMA_VERSION,
        spec: view.graph.spec(),
        subconstituent: view.sub.map(|s| s.index),
        vertex_count: view.order(),
        edge_count: adj.edge_count(),
        vertices: (0..view.order())
            .map(|id| {
                let p = view.parent(id);
                ExportVertex {
                    id,
                    parent_id: view.sub.map(|_| p),
                    residue_id: view.graph.project_vertex(p),
                    coords: view.graph.vertex(p).coords(),
                }
            })
            .collect(),
        adjacency: (0..view.order())
            .map(|i| adj.neighbors(i).collect())
            .collect(),
    };
    serde_json::to_writer_pretty(w, &export)?;
    Ok(())
}

/// `p edge V E` followed by `e i j` lines with 1-based ids and `i < j`.
pub fn write_dimacs<W: Write>(view: GraphView<'_>, mut w: W) -> io::Result<()> {
    let spec = view.graph.spec();
    match view.sub {
        Some(s) => writeln!(w, "c orthogonal graph {spec}, subconstituent {}", s.index)?,
        None => writeln!(w, "c orthogonal graph {spec}")?,
    }
    writeln!(
        w,
        "p edge {} {}",
        view.order(),
        view.adjacency().edge_count()
    )?;
    for (i, j) in view.edges() {
        writeln!(w, "e {} {}", i + 1, j + 1)?;
    }
    Ok(())
}

/// Columns `id, [parent_id,] residue_id, x1 … x_dim`.
pub fn write_vertex_csv<W: Write>(view: GraphView<'_>, w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["id".to_string()];
    if view.sub.is_some() {
        header.push("parent_id".into());
    }
    header.push("residue_id".into());
    header.extend((1..=view.graph.spec().dim()).map(|i| format!("x{i}")));
    out.write_record(&header)?;
    for id in 0..view.order() {
        let p = view.parent(id);
        let mut row = vec![id.to_string()];
        if view.sub.is_some() {
            row.push(p.to_string());
        }
        row.push(view.graph.project_vertex(p).to_string());
        row.extend(view.graph.vertex(p).coords().iter().map(|c| c.to_string()));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}
