//! Colourings of the `δ = 2` graphs from a spread of the elliptic quadric.
//!
//! With `k = ν + 1`, the form `x ↦ Tr(x^{2^k + 1})` on `GF(2^{2k})`, where the
//! trace is taken from `GF(2^k)` down to `GF(2)`, is an elliptic quadratic
//! form in `2k` variables. Every one-dimensional `GF(2^k)`-subspace meets
//! its singular vectors in a totally singular subspace of dimension `ν`, and
//! the `2^k + 1` such subspaces partition the singular points. Pairwise
//! orthogonal points are never adjacent, so the parts are colour classes.
//! An explicit isometry transports the partition onto the standard form.

use crate::form::Delta;
use crate::graph::OrthoGraph;

/// Largest `ν` handled; the field has `2^{2ν+2}` elements.
const MAX_SPREAD_NU: u32 = 11;

struct Field {
    degree: u32,
    modulus: u64,
}

impl Field {
    fn new(degree: u32) -> Self {
        let modulus = (1u64 << degree..1u64 << (degree + 1))
            .find(|&p| is_irreducible(p))
            .expect("irreducible polynomials exist in every degree");
        Self { degree, modulus }
    }

    fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.degree & 1 == 1 {
                a ^= self.modulus;
            }
        }
        r
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e != 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= dm {
        a ^= m << (63 - a.leading_zeros() - dm);
    }
    a
}

fn is_irreducible(p: u64) -> bool {
    let d = 63 - p.leading_zeros();
    (2u64..1 << (d / 2 + 1)).all(|q| poly_mod(p, q) != 0)
}

struct Elliptic {
    field: Field,
    k: u32,
}

impl Elliptic {
    fn q(&self, x: u64) -> u64 {
        let mut t = self.field.pow(x, (1 << self.k) + 1);
        let mut tr = 0;
        for _ in 0..self.k {
            tr ^= t;
            t = self.field.mul(t, t);
        }
        debug_assert!(tr <= 1);
        tr
    }

    fn b(&self, x: u64, y: u64) -> u64 {
        self.q(x ^ y) ^ self.q(x) ^ self.q(y)
    }
}

fn span(basis: &[u64]) -> impl Iterator<Item = u64> + '_ {
    (1u64..1 << basis.len()).map(move |mask| {
        basis
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, &v)| acc ^ v)
    })
}

fn reduce_basis(vectors: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// Images of the standard basis `e₁..e_ν, f₁..f_ν, u, v` under an isometry
/// into the field model.
fn standard_basis(e: &Elliptic, nu: usize) -> Option<Vec<u64>> {
    let mut rest: Vec<u64> = (0..2 * e.k).map(|i| 1u64 << i).collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    for _ in 0..nu {
        let x = span(&rest).find(|&w| e.q(w) == 0)?;
        let mut y = *rest.iter().find(|&&w| e.b(x, w) == 1)?;
        if e.q(y) == 1 {
            y ^= x;
        }
        rest = reduce_basis(rest.iter().map(|&w| {
            let mut w2 = w;
            if e.b(w, y) == 1 {
                w2 ^= x;
            }
            if e.b(w, x) == 1 {
                w2 ^= y;
            }
            w2
        }));
        es.push(x);
        fs.push(y);
    }
    if rest.len() != 2 {
        return None;
    }
    let (u, v) = (rest[0], rest[1]);
    if e.q(u) != 1 || e.q(v) != 1 || e.b(u, v) != 1 {
        return None;
    }
    es.extend(fs);
    es.extend([u, v]);
    Some(es)
}

/// A proper colouring of a `δ = 2` graph with `2^{ν+1} + 1` colours, constant
/// on fibers. `None` for other `δ` or when `ν` is out of range.
pub fn elliptic_spread_coloring(g: &OrthoGraph) -> Option<Vec<usize>> {
    let spec = g.spec();
    if spec.delta() != Delta::Two || spec.nu() > MAX_SPREAD_NU {
        return None;
    }
    let k = spec.nu() + 1;
    let model = Elliptic {
        field: Field::new(2 * k),
        k,
    };
    let basis = standard_basis(&model, spec.nu() as usize)?;
    // x ↦ x^{2^k - 1} is constant exactly on the GF(2^k)-multiples of x.
    let line_of = |coords: &[u32]| -> u64 {
        let x = coords
            .iter()
            .zip(&basis)
            .filter(|(c, _)| *c & 1 == 1)
            .fold(0, |acc, (_, &b)| acc ^ b);
        model.field.pow(x, (1 << k) - 1)
    };
    let residue_lines: Vec<u64> = g
        .residue_vertices()
        .iter()
        .map(|p| line_of(p.coords()))
        .collect();
    let mut distinct = residue_lines.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let residue_colors: Vec<usize> = residue_lines
        .iter()
        .map(|l| distinct.binary_search(l).unwrap())
        .collect();
    Some(
        (0..g.order())
            .map(|v| residue_colors[g.project_vertex(v)])
            .collect(),
    )
}
