//! Arithmetic in `Z/2^n`.
//!
//! Residues are stored as `u32` masked to `n` bits. Since the modulus is a
//! power of two, wrapping machine arithmetic followed by a mask is exact.
//! Units are the odd residues and the unique maximal ideal is `2Z/2^n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported exponent `n`.
pub const MAX_EXPONENT: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct RingParams {
    n: u32,
}

impl RingParams {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_EXPONENT {
            return Err(Error::ExponentOutOfRange(n));
        }
        Ok(Self { n })
    }

    /// The residue field `Z/2`.
    pub fn residue_field() -> Self {
        Self { n: 1 }
    }

    pub fn exponent(self) -> u32 {
        self.n
    }

    pub fn modulus(self) -> u32 {
        1 << self.n
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.modulus() - 1
    }

    /// Reduces an arbitrary integer to its canonical residue.
    pub fn elem(self, value: u64) -> RingElem {
        RingElem {
            value: (value & self.mask() as u64) as u32,
            params: self,
        }
    }

    pub fn zero(self) -> RingElem {
        self.elem(0)
    }

    pub fn one(self) -> RingElem {
        self.elem(1)
    }

    pub fn elements(self) -> impl Iterator<Item = RingElem> {
        (0..self.modulus()).map(move |v| self.elem(v as u64))
    }

    pub fn units(self) -> impl Iterator<Item = RingElem> {
        (1..self.modulus())
            .step_by(2)
            .map(move |v| self.elem(v as u64))
    }

    /// Size of the maximal ideal `2Z/2^n`, i.e. `2^(n-1)`.
    pub fn ideal_size(self) -> u32 {
        1 << (self.n - 1)
    }
}

impl TryFrom<u32> for RingParams {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

impl From<RingParams> for u32 {
    fn from(p: RingParams) -> u32 {
        p.n
    }
}

/// A canonical residue modulo `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElem {
    value: u32,
    params: RingParams,
}

impl RingElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn params(self) -> RingParams {
        self.params
    }

    fn check(self, other: RingElem) -> Result<RingParams> {
        if self.params != other.params {
            return Err(Error::MismatchedRings {
                left: self.params.n,
                right: other.params.n,
            });
        }
        Ok(self.params)
    }

    // Fallible because the operands may come from different rings.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: RingElem) -> Result<RingElem> {
        let p = self.check(other)?;
        Ok(p.elem(self.value.wrapping_add(other.value) as u64))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: RingElem) -> Result<RingElem> {
        let p = self.check(other)?;
        Ok(p.elem(self.value.wrapping_sub(other.value) as u64))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: RingElem) -> Result<RingElem> {
        let p = self.check(other)?;
        Ok(p.elem(self.value.wrapping_mul(other.value) as u64))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> RingElem {
        self.params.elem(self.value.wrapping_neg() as u64)
    }

    #[inline]
    pub fn is_unit(self) -> bool {
        self.value & 1 == 1
    }

    /// Membership in the maximal ideal `2Z/2^n`.
    #[inline]
    pub fn is_ideal_member(self) -> bool {
        self.value & 1 == 0
    }

    pub fn inv(self) -> Result<RingElem> {
        if !self.is_unit() {
            return Err(Error::NotAUnit {
                value: self.value,
                n: self.params.n,
            });
        }
        Ok(self.params.elem(inv_odd(self.value) as u64))
    }

    /// The canonical projection onto the residue field `Z/2`.
    #[inline]
    pub fn project(self) -> u8 {
        (self.value & 1) as u8
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Inverse of an odd integer modulo `2^32` by Newton-Hensel lifting.
///
/// `x * x ≡ 1 (mod 8)` for odd `x`, so `x` is its own inverse to three bits
/// and every step doubles the number of correct bits.
#[inline]
pub(crate) fn inv_odd(x: u32) -> u32 {
    debug_assert!(x & 1 == 1);
    let mut y = x;
    for _ in 0..4 {
        y = y.wrapping_mul(2u32.wrapping_sub(x.wrapping_mul(y)));
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: u32, v: u64) -> RingElem {
        RingParams::new(n).unwrap().elem(v)
    }

    #[test]
    fn basic_ops() {
        assert_eq!(e(3, 3).mul(e(3, 3)).unwrap().value(), 1);
        assert_eq!(e(2, 3).add(e(2, 1)).unwrap().value(), 0);
        assert_eq!(e(1, 1).mul(e(1, 1)).unwrap().value(), 1);
        assert_eq!(e(3, 1).sub(e(3, 2)).unwrap().value(), 7);
        assert_eq!(e(4, 3).neg().value(), 13);
    }

    #[test]
    fn mismatched_rings_rejected() {
        assert_eq!(
            e(2, 1).add(e(3, 1)),
            Err(Error::MismatchedRings { left: 2, right: 3 })
        );
    }

    #[test]
    fn exponent_bounds() {
        assert!(RingParams::new(0).is_err());
        assert!(RingParams::new(MAX_EXPONENT).is_ok());
        assert_eq!(
            RingParams::new(MAX_EXPONENT + 1),
            Err(Error::ExponentOutOfRange(MAX_EXPONENT + 1))
        );
    }

    #[test]
    fn units_and_projection() {
        assert!(e(3, 5).is_unit());
        assert!(!e(3, 6).is_unit());
        assert!(e(1, 1).is_unit());
        assert_eq!(e(3, 5).project(), 1);
        assert_eq!(e(3, 6).project(), 0);
        assert_eq!(e(1, 1).project(), 1);
    }

    #[test]
    fn inverses() {
        assert_eq!(e(3, 3).inv().unwrap().value(), 3);
        assert_eq!(e(4, 1).inv().unwrap().value(), 1);
        assert_eq!(e(4, 7).inv().unwrap().value(), 7);
        assert_eq!(e(4, 6).inv(), Err(Error::NotAUnit { value: 6, n: 4 }));
    }

    #[test]
    fn exhaustive_small_rings() {
        for n in 1..=8 {
            let p = RingParams::new(n).unwrap();
            let one = p.one();
            for x in p.elements() {
                assert!(x.is_unit() ^ (x.value() % 2 == 0));
                if x.is_unit() {
                    assert_eq!(x.mul(x.inv().unwrap()).unwrap(), one);
                }
            }
            assert_eq!(p.units().count() as u32, p.ideal_size());
        }
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let p = RingParams::new(5).unwrap();
        for x in p.elements() {
            for y in p.elements() {
                assert_eq!(x.mul(y).unwrap().project(), x.project() & y.project());
                assert_eq!(x.add(y).unwrap().project(), x.project() ^ y.project());
            }
        }
        let image: std::collections::BTreeSet<u8> = p.elements().map(|x| x.project()).collect();
        assert_eq!(image.len(), 2);
    }

    #[test]
    fn unit_plus_ideal_is_unit() {
        for n in 1..=8 {
            let p = RingParams::new(n).unwrap();
            for u in p.units() {
                for m in p.elements().filter(|m| m.is_ideal_member()) {
                    assert!(u.add(m).unwrap().is_unit());
                }
            }
        }
    }
}
