//! The Gram matrix `G` of the orthogonal geometry and the forms it defines.
//!
//! `G` has the block shape `[[0, I_ν], [0, 0]]` followed by a tail block
//! `Δ`: nothing (`δ = 0`), `(1)` (`δ = 1`) or `[[z, 1], [0, z]]` (`δ = 2`).
//! The quadratic form is `Q(a) = a G aᵗ` and the associated bilinear form
//! is `B(a, b) = a (G + Gᵗ) bᵗ`. Both are evaluated by expanding the sparse
//! block structure directly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingParams};

/// Largest supported `ν`; keeps the dimension within 34.
pub const MAX_NU: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Delta {
    Zero,
    One,
    Two,
}

impl Delta {
    pub const ALL: [Delta; 3] = [Delta::Zero, Delta::One, Delta::Two];

    pub fn value(self) -> u32 {
        match self {
            Delta::Zero => 0,
            Delta::One => 1,
            Delta::Two => 2,
        }
    }
}

impl TryFrom<u32> for Delta {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        match d {
            0 => Ok(Delta::Zero),
            1 => Ok(Delta::One),
            2 => Ok(Delta::Two),
            _ => Err(Error::InvalidForm(format!(
                "delta must be 0, 1 or 2, got {d}"
            ))),
        }
    }
}

impl From<Delta> for u32 {
    fn from(d: Delta) -> u32 {
        d.value()
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The full configuration `(n, ν, δ, z)` of an orthogonal graph.
///
/// `z` only matters for `δ = 2`, where it must be a unit; for other `δ` it is
/// normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "SpecRepr", try_from = "SpecRepr")]
pub struct FormSpec {
    ring: RingParams,
    nu: u32,
    delta: Delta,
    z: u32,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    n: u32,
    nu: u32,
    delta: u32,
    z: u64,
}

impl From<FormSpec> for SpecRepr {
    fn from(s: FormSpec) -> Self {
        Self {
            n: s.n(),
            nu: s.nu,
            delta: s.delta.value(),
            z: s.z.into(),
        }
    }
}

impl TryFrom<SpecRepr> for FormSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        FormSpec::with_z(r.n, r.nu, r.delta, r.z)
    }
}

impl FormSpec {
    /// A spec with the default `z = 1`.
    pub fn new(n: u32, nu: u32, delta: u32) -> Result<Self> {
        Self::with_z(n, nu, delta, 1)
    }

    pub fn with_z(n: u32, nu: u32, delta: u32, z: u64) -> Result<Self> {
        let ring = RingParams::new(n)?;
        let delta = Delta::try_from(delta)?;
        if nu == 0 || nu > MAX_NU {
            return Err(Error::InvalidForm(format!(
                "nu must lie in 1..={MAX_NU}, got {nu}"
            )));
        }
        let z = ring.elem(z);
        let z = match delta {
            Delta::Two if !z.is_unit() => {
                return Err(Error::InvalidForm(format!(
                    "z = {z} is not a unit modulo 2^{n}; it must lie outside {{x^2 + x}}"
                )))
            }
            Delta::Two => z.value(),
            _ => 1,
        };
        Ok(Self { ring, nu, delta, z })
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn n(&self) -> u32 {
        self.ring.exponent()
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }

    pub fn z(&self) -> RingElem {
        self.ring.elem(self.z as u64)
    }

    pub fn dim(&self) -> usize {
        (2 * self.nu + self.delta.value()) as usize
    }

    /// The same geometry over the residue field `Z/2`.
    pub fn residue(&self) -> FormSpec {
        FormSpec {
            ring: RingParams::residue_field(),
            nu: self.nu,
            delta: self.delta,
            z: self.z & 1,
        }
    }

    pub fn gram_matrix(&self) -> GramMatrix {
        let dim = self.dim();
        let nu = self.nu as usize;
        let mut entries = vec![0u32; dim * dim];
        for i in 0..nu {
            entries[i * dim + nu + i] = 1;
        }
        match self.delta {
            Delta::Zero => {}
            Delta::One => entries[2 * nu * dim + 2 * nu] = 1,
            Delta::Two => {
                let (x, y) = (2 * nu, 2 * nu + 1);
                entries[x * dim + x] = self.z;
                entries[x * dim + y] = 1;
                entries[y * dim + y] = self.z;
            }
        }
        GramMatrix {
            ring: self.ring,
            dim,
            entries,
        }
    }

    fn check_len(&self, a: &TupleVec) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn qform(&self, a: &TupleVec) -> Result<RingElem> {
        self.check_len(a)?;
        Ok(self.ring.elem(self.qform_raw(a.coords()) as u64))
    }

    pub fn bform(&self, a: &TupleVec, b: &TupleVec) -> Result<RingElem> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self
            .ring
            .elem(self.bform_raw(a.coords(), b.coords()) as u64))
    }

    /// `Q(a)` on raw residues; the slice must have length `dim`.
    #[inline]
    pub fn qform_raw(&self, a: &[u32]) -> u32 {
        let nu = self.nu as usize;
        let mut s = 0u32;
        for i in 0..nu {
            s = s.wrapping_add(a[i].wrapping_mul(a[nu + i]));
        }
        match self.delta {
            Delta::Zero => {}
            Delta::One => {
                let t = a[2 * nu];
                s = s.wrapping_add(t.wrapping_mul(t));
            }
            Delta::Two => {
                let (x, y) = (a[2 * nu], a[2 * nu + 1]);
                s = s
                    .wrapping_add(self.z.wrapping_mul(x.wrapping_mul(x)))
                    .wrapping_add(x.wrapping_mul(y))
                    .wrapping_add(self.z.wrapping_mul(y.wrapping_mul(y)));
            }
        }
        s & self.ring.mask()
    }

    /// `B(a, b)` on raw residues; both slices must have length `dim`.
    #[inline]
    pub fn bform_raw(&self, a: &[u32], b: &[u32]) -> u32 {
        let nu = self.nu as usize;
        let mut s = 0u32;
        for i in 0..nu {
            s = s
                .wrapping_add(a[i].wrapping_mul(b[nu + i]))
                .wrapping_add(a[nu + i].wrapping_mul(b[i]));
        }
        match self.delta {
            Delta::Zero => {}
            Delta::One => {
                s = s.wrapping_add(2u32.wrapping_mul(a[2 * nu].wrapping_mul(b[2 * nu])));
            }
            Delta::Two => {
                let (x, y) = (2 * nu, 2 * nu + 1);
                let z2 = self.z.wrapping_mul(2);
                s = s
                    .wrapping_add(z2.wrapping_mul(a[x].wrapping_mul(b[x])))
                    .wrapping_add(a[x].wrapping_mul(b[y]))
                    .wrapping_add(a[y].wrapping_mul(b[x]))
                    .wrapping_add(z2.wrapping_mul(a[y].wrapping_mul(b[y])));
            }
        }
        s & self.ring.mask()
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} nu={} delta={}", self.n(), self.nu, self.delta)?;
        if self.delta == Delta::Two {
            write!(f, " z={}", self.z)?;
        }
        Ok(())
    }
}

/// Dense `dim × dim` Gram matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    ring: RingParams,
    dim: usize,
    entries: Vec<u32>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> RingElem {
        self.ring.elem(self.entries[i * self.dim + j] as u64)
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

/// A tuple of residues, reduced modulo `2^n` on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TupleVec(Vec<u32>);

impl TupleVec {
    pub fn new(ring: RingParams, coords: &[u64]) -> Self {
        Self(coords.iter().map(|&c| ring.elem(c).value()).collect())
    }

    pub(crate) fn from_raw(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplies every coordinate by `lambda` modulo `2^n`.
    pub fn scaled(&self, ring: RingParams, lambda: u32) -> TupleVec {
        Self(
            self.0
                .iter()
                .map(|&c| c.wrapping_mul(lambda) & ring.mask())
                .collect(),
        )
    }
}

impl fmt::Display for TupleVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
