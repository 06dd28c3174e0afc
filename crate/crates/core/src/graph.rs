//! The orthogonal graph over `Z/2^n`, its residue graph over `Z/2` and the
//! lifting fibers that connect them.

use crate::bitmatrix::BitMatrix;
use crate::error::Result;
use crate::form::FormSpec;
use crate::projective::{enumerate_vertices, ProjPoint};

/// Vertices whose coordinatewise reduction mod 2 is one residue vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fiber<'a> {
    pub base: usize,
    pub members: &'a [usize],
}

#[derive(Debug, Clone)]
pub struct OrthoGraph {
    spec: FormSpec,
    vertices: Vec<ProjPoint>,
    adjacency: BitMatrix,
    residue_vertices: Vec<ProjPoint>,
    residue_of: Vec<usize>,
    fibers: Vec<Vec<usize>>,
}

impl OrthoGraph {
    /// Enumerates the vertices and fills the full adjacency matrix:
    /// `[a] ~ [b]` iff `B(a, b)` is a unit.
    pub fn build(spec: &FormSpec, cap: usize) -> Result<Self> {
        let vertices = enumerate_vertices(spec, cap)?;
        let dim = spec.dim();
        let flat: Vec<u32> = vertices
            .iter()
            .flat_map(|p| p.coords().iter().copied())
            .collect();
        let order = vertices.len();
        let adjacency = BitMatrix::from_rows(order, |i, row| {
            let a = &flat[i * dim..(i + 1) * dim];
            for (j, b) in flat.chunks_exact(dim).enumerate() {
                if spec.bform_raw(a, b) & 1 == 1 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
        });

        let residue_spec = spec.residue();
        let residue_vertices = enumerate_vertices(&residue_spec, usize::MAX)?;
        let mut fibers = vec![Vec::new(); residue_vertices.len()];
        let residue_of: Vec<usize> = vertices
            .iter()
            .enumerate()
            .map(|(v, p)| {
                let r = lookup_reduction(&residue_vertices, p);
                fibers[r].push(v);
                r
            })
            .collect();

        Ok(Self {
            spec: *spec,
            vertices,
            adjacency,
            residue_vertices,
            residue_of,
            fibers,
        })
    }

    /// The same geometry over `Z/2`.
    pub fn residue_graph(spec: &FormSpec, cap: usize) -> Result<Self> {
        Self::build(&spec.residue(), cap)
    }

    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &ProjPoint {
        &self.vertices[v]
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v)
    }

    /// Id of a canonical point, if it is a vertex.
    pub fn find(&self, p: &ProjPoint) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn residue_vertices(&self) -> &[ProjPoint] {
        &self.residue_vertices
    }

    /// Residue vertex id of the coordinatewise reduction of `v`.
    pub fn project_vertex(&self, v: usize) -> usize {
        self.residue_of[v]
    }

    /// Residue id of every vertex, indexed by vertex id.
    pub fn fiber_labels(&self) -> &[usize] {
        &self.residue_of
    }

    pub fn fiber_of(&self, residue_vertex: usize) -> Fiber<'_> {
        Fiber {
            base: residue_vertex,
            members: &self.fibers[residue_vertex],
        }
    }

    pub fn fibers(&self) -> impl Iterator<Item = Fiber<'_>> {
        (0..self.fibers.len()).map(|r| self.fiber_of(r))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.adjacency.neighbors(v).collect()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.adjacency.common(u, v)
    }
}

fn lookup_reduction(residue_vertices: &[ProjPoint], p: &ProjPoint) -> usize {
    residue_vertices
        .binary_search(&p.reduce())
        .expect("reduction of an isotropic point is isotropic over Z/2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::TupleVec;
    use crate::projective::{canonicalize, DEFAULT_VERTEX_CAP};

    fn graph(n: u32, nu: u32, d: u32) -> OrthoGraph {
        OrthoGraph::build(&FormSpec::new(n, nu, d).unwrap(), DEFAULT_VERTEX_CAP).unwrap()
    }

    fn regular_degree(g: &OrthoGraph) -> Option<usize> {
        let k = g.adjacency().degree(0);
        (0..g.order())
            .all(|v| g.adjacency().degree(v) == k)
            .then_some(k)
    }

    #[test]
    fn single_edge() {
        let g = graph(1, 1, 0);
        assert_eq!(g.order(), 2);
        assert!(g.adjacent(0, 1));
        assert_eq!(g.adjacency().edge_count(), 1);
    }

    #[test]
    fn triangle() {
        let g = graph(1, 1, 1);
        assert_eq!(g.order(), 3);
        assert_eq!(regular_degree(&g), Some(2));
        assert_eq!(g.common_neighbors(0, 1), 1);
    }

    #[test]
    fn octahedron() {
        let g = graph(2, 1, 1);
        assert_eq!(g.order(), 6);
        assert_eq!(regular_degree(&g), Some(4));
        for u in 0..6 {
            assert!(!g.neighbors(u).contains(&u));
            for v in 0..6 {
                if u != v && !g.adjacent(u, v) {
                    assert_eq!(g.common_neighbors(u, v), 4);
                }
            }
        }
        for f in g.fibers() {
            assert_eq!(f.members.len(), 2);
        }
    }

    #[test]
    fn residue_graphs() {
        let s = FormSpec::new(3, 1, 1).unwrap();
        let r = OrthoGraph::residue_graph(&s, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.order(), 3);
        assert_eq!(r.adjacency(), graph(1, 1, 1).adjacency());

        let s = FormSpec::new(2, 2, 0).unwrap();
        let r = OrthoGraph::residue_graph(&s, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.order(), 9);
        assert_eq!(regular_degree(&r), Some(4));
    }

    #[test]
    fn n1_is_its_own_residue() {
        let g = graph(1, 2, 2);
        assert_eq!(g.residue_vertices(), g.vertices());
        for v in 0..g.order() {
            assert_eq!(g.project_vertex(v), v);
            assert_eq!(g.fiber_of(v).members, &[v]);
        }
    }

    #[test]
    fn projection_examples() {
        let g = graph(2, 1, 1);
        let s = *g.spec();
        let p = canonicalize(&s, &TupleVec::new(s.ring(), &[2, 1, 0])).unwrap();
        assert_eq!(p.reduce().coords(), &[0, 1, 0]);
        // [2,1,0] is not isotropic mod 4; [0,1,2] is a vertex in the same fiber.
        assert!(g.find(&p).is_none());
        let v = g
            .find(&canonicalize(&s, &TupleVec::new(s.ring(), &[0, 1, 2])).unwrap())
            .unwrap();
        let r = g.project_vertex(v);
        assert_eq!(g.residue_vertices()[r].coords(), &[0, 1, 0]);
        let e1 = g
            .find(&canonicalize(&s, &TupleVec::new(s.ring(), &[1, 0, 0])).unwrap())
            .unwrap();
        assert_eq!(
            g.residue_vertices()[g.project_vertex(e1)].coords(),
            &[1, 0, 0]
        );
    }

    #[test]
    fn fiber_sizes() {
        let g = graph(2, 2, 0);
        assert_eq!(g.order(), 36);
        assert_eq!(g.fibers().count(), 9);
        assert!(g.fibers().all(|f| f.members.len() == 4));
    }
}
