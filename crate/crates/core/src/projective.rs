//! Projective points: classes of tuples with a unit coordinate, up to
//! scaling by units.
//!
//! The canonical representative scales the tuple so that its first unit
//! coordinate equals 1. The position of the first unit coordinate is
//! invariant under unit scaling, so this is a class function.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{FormSpec, TupleVec};
use crate::formulas;
use crate::ring::inv_odd;

/// Default ceiling on the number of vertices a spec may have.
pub const DEFAULT_VERTEX_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ProjPoint(TupleVec);

impl ProjPoint {
    pub fn rep(&self) -> &TupleVec {
        &self.0
    }

    pub fn coords(&self) -> &[u32] {
        self.0.coords()
    }

    /// Index of the first unit (odd) coordinate.
    pub fn pivot(&self) -> usize {
        self.coords()
            .iter()
            .position(|c| c & 1 == 1)
            .expect("projective points have a unit coordinate")
    }

    /// Coordinatewise reduction mod 2. The result is canonical over `Z/2`
    /// because the pivot coordinate is 1.
    pub fn reduce(&self) -> ProjPoint {
        ProjPoint(TupleVec::from_raw(
            self.coords().iter().map(|c| c & 1).collect(),
        ))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn canonicalize(spec: &FormSpec, a: &TupleVec) -> Result<ProjPoint> {
    if a.len() != spec.dim() {
        return Err(Error::LengthMismatch {
            expected: spec.dim(),
            got: a.len(),
        });
    }
    let pivot = a
        .coords()
        .iter()
        .position(|c| c & 1 == 1)
        .ok_or(Error::NoUnitCoordinate)?;
    let lambda = inv_odd(a.coords()[pivot]);
    Ok(ProjPoint(a.scaled(spec.ring(), lambda)))
}

/// Whether one of the first `2ν` coordinates is a unit. Every vertex is
/// expected to satisfy this.
pub fn unit_position_check(spec: &FormSpec, p: &ProjPoint) -> bool {
    p.coords()[..2 * spec.nu() as usize]
        .iter()
        .any(|c| c & 1 == 1)
}

fn check_cap(spec: &FormSpec, cap: usize) -> Result<()> {
    let predicted = formulas::vertex_count(spec);
    if predicted > cap.into() {
        return Err(Error::CapExceeded { predicted, cap });
    }
    Ok(())
}

/// All isotropic projective points, i.e. the vertices of the orthogonal
/// graph, sorted lexicographically by canonical representative.
///
/// Canonical forms are generated directly: for each pivot position `j`,
/// coordinates before `j` range over even residues, coordinate `j` is 1 and
/// later coordinates are free.
pub fn enumerate_vertices(spec: &FormSpec, cap: usize) -> Result<Vec<ProjPoint>> {
    check_cap(spec, cap)?;
    let dim = spec.dim();
    let mut strata: Vec<Vec<ProjPoint>> = (0..dim)
        .into_par_iter()
        .map(|pivot| enumerate_stratum(spec, pivot))
        .collect();
    // Strata interleave in lexicographic order.
    let mut all: Vec<ProjPoint> = strata.iter_mut().flat_map(std::mem::take).collect();
    all.par_sort_unstable();
    Ok(all)
}

fn enumerate_stratum(spec: &FormSpec, pivot: usize) -> Vec<ProjPoint> {
    let dim = spec.dim();
    let modulus = spec.ring().modulus();
    let mut coords = vec![0u32; dim];
    coords[pivot] = 1;
    // Position i steps by 2 before the pivot and by 1 after it.
    let step = |i: usize| if i < pivot { 2 } else { 1 };
    let mut out = Vec::new();
    loop {
        if spec.qform_raw(&coords) == 0 {
            out.push(ProjPoint(TupleVec::from_raw(coords.clone())));
        }
        // Odometer over every position except the pivot, last position fastest.
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if i == pivot {
                continue;
            }
            coords[i] += step(i);
            if coords[i] < modulus {
                break;
            }
            coords[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, nu: u32, d: u32) -> FormSpec {
        FormSpec::new(n, nu, d).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let s = spec(2, 1, 2);
        let a = TupleVec::new(s.ring(), &[2, 3, 0, 1]);
        assert_eq!(canonicalize(&s, &a).unwrap().coords(), &[2, 1, 0, 3]);

        let s = spec(3, 1, 1);
        let a = TupleVec::new(s.ring(), &[0, 5, 0]);
        assert_eq!(canonicalize(&s, &a).unwrap().coords(), &[0, 1, 0]);

        let e1 = TupleVec::new(s.ring(), &[1, 0, 0]);
        assert_eq!(canonicalize(&s, &e1).unwrap().rep(), &e1);
    }

    #[test]
    fn canonicalize_errors() {
        let s = spec(3, 1, 1);
        let a = TupleVec::new(s.ring(), &[2, 4, 6]);
        assert_eq!(canonicalize(&s, &a), Err(Error::NoUnitCoordinate));
        let a = TupleVec::new(s.ring(), &[1, 0]);
        assert!(matches!(
            canonicalize(&s, &a),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        let v = enumerate_vertices(&spec(1, 1, 0), DEFAULT_VERTEX_CAP).unwrap();
        let reps: Vec<&[u32]> = v.iter().map(|p| p.coords()).collect();
        assert_eq!(reps, vec![&[0, 1][..], &[1, 0][..]]);
        assert_eq!(
            enumerate_vertices(&spec(1, 1, 1), DEFAULT_VERTEX_CAP)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_vertices(&spec(2, 2, 0), DEFAULT_VERTEX_CAP)
                .unwrap()
                .len(),
            36
        );
    }

    #[test]
    fn unit_positions() {
        for (n, nu, d) in [(2, 1, 1), (1, 1, 2), (3, 2, 2)] {
            let s = spec(n, nu, d);
            for p in enumerate_vertices(&s, DEFAULT_VERTEX_CAP).unwrap() {
                assert!(unit_position_check(&s, &p), "{p}");
            }
        }
    }

    #[test]
    fn cap_is_enforced_before_enumeration() {
        let err = enumerate_vertices(&spec(2, 2, 0), 35).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                predicted: 36u32.into(),
                cap: 35
            }
        );
    }
}
