//! Closed-form parameter predictions for orthogonal graphs and their
//! subconstituents.
//!
//! Several published formulas carry half-integer exponents such as
//! `2^(n(ν + δ/2 - 1))`. They are evaluated as sums of signed power-of-two
//! terms whose exponents are exact rationals. After like terms are merged
//! every surviving term must have a non-negative integral exponent;
//! otherwise evaluation fails with [`Error::NonIntegralFormula`].

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{Delta, FormSpec};
use crate::serde_dec;

type Exp = Ratio<i64>;

#[derive(Debug, Clone)]
struct Term {
    coeff: BigInt,
    exp: Exp,
}

/// A finite sum `Σ cᵢ · 2^(eᵢ)` with integer coefficients and rational
/// exponents.
#[derive(Debug, Clone, Default)]
pub struct Pow2Expr {
    terms: Vec<Term>,
}

impl Pow2Expr {
    pub fn pow2(exp: Exp) -> Self {
        Self {
            terms: vec![Term {
                coeff: BigInt::one(),
                exp,
            }],
        }
    }

    /// `2^(num/den)`.
    pub fn pow2_frac(num: i64, den: i64) -> Self {
        Self::pow2(Ratio::new(num, den))
    }

    pub fn pow2_int(exp: i64) -> Self {
        Self::pow2(Ratio::from_integer(exp))
    }

    pub fn int(c: i64) -> Self {
        Self {
            terms: vec![Term {
                coeff: BigInt::from(c),
                exp: Exp::zero(),
            }],
        }
    }

    pub fn scale(mut self, c: i64) -> Self {
        for t in &mut self.terms {
            t.coeff *= c;
        }
        self
    }

    /// Merges like terms and moves factors of two from coefficients into
    /// exponents until every surviving coefficient is odd.
    fn normalized(&self) -> BTreeMap<Exp, BigInt> {
        let mut map: BTreeMap<Exp, BigInt> = BTreeMap::new();
        for t in &self.terms {
            *map.entry(t.exp).or_default() += &t.coeff;
        }
        loop {
            let mut next: BTreeMap<Exp, BigInt> = BTreeMap::new();
            for (e, c) in map {
                if c.is_zero() {
                    continue;
                }
                let tz = c.trailing_zeros().unwrap_or(0);
                *next.entry(e + Exp::from_integer(tz as i64)).or_default() += c >> tz;
            }
            next.retain(|_, c| !c.is_zero());
            if next.values().all(|c| c.trailing_zeros() == Some(0)) {
                return next;
            }
            map = next;
        }
    }

    pub fn eval(&self, formula: &'static str) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (e, c) in self.normalized() {
            if !e.is_integer() || e < Exp::zero() {
                return Err(Error::NonIntegralFormula {
                    formula,
                    exponent: e.to_string(),
                });
            }
            let shift = e.to_integer().to_usize().expect("exponent fits usize");
            total += c << shift;
        }
        Ok(total)
    }

    pub fn eval_nonneg(&self, formula: &'static str) -> Result<BigUint> {
        let v = self.eval(formula)?;
        if v.is_negative() {
            return Err(Error::NonIntegralFormula {
                formula,
                exponent: format!("negative total {v}"),
            });
        }
        Ok(v.to_biguint().expect("checked sign"))
    }
}

impl Add for Pow2Expr {
    type Output = Pow2Expr;
    fn add(mut self, rhs: Pow2Expr) -> Pow2Expr {
        self.terms.extend(rhs.terms);
        self
    }
}

impl Sub for Pow2Expr {
    type Output = Pow2Expr;
    fn sub(self, rhs: Pow2Expr) -> Pow2Expr {
        self + rhs.scale(-1)
    }
}

impl Mul for Pow2Expr {
    type Output = Pow2Expr;
    fn mul(self, rhs: Pow2Expr) -> Pow2Expr {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(Term {
                    coeff: &a.coeff * &b.coeff,
                    exp: a.exp + b.exp,
                });
            }
        }
        Pow2Expr { terms }
    }
}

fn p2(e: i64) -> Pow2Expr {
    Pow2Expr::pow2_int(e)
}

fn pow2_big(e: u64) -> BigUint {
    BigUint::one() << e
}

/// Exponents and signs shared by every formula for one spec.
struct Params {
    n: i64,
    nu: i64,
    delta: i64,
}

impl Params {
    fn of(spec: &FormSpec) -> Self {
        Self {
            n: spec.n() as i64,
            nu: spec.nu() as i64,
            delta: spec.delta().value() as i64,
        }
    }

    /// `2ν + δ`.
    fn dim(&self) -> i64 {
        2 * self.nu + self.delta
    }

    /// `(-1)^(δ/2)` for even `δ`.
    fn sign(&self) -> i64 {
        debug_assert!(self.delta % 2 == 0);
        if self.delta == 2 {
            -1
        } else {
            1
        }
    }

    /// Fiber size `2^((n-1)(2ν+δ-2))`.
    fn fiber(&self) -> Pow2Expr {
        p2((self.n - 1) * (self.dim() - 2))
    }
}

/// Size of every lifting fiber, `2^((n-1)(2ν+δ-2))`.
pub fn fiber_size(spec: &FormSpec) -> BigUint {
    let p = Params::of(spec);
    pow2_big(((p.n - 1) * (p.dim() - 2)) as u64)
}

/// Vertex count of the graph over `Z/2`: `(2^ν - 1)(2^(ν+δ-1) + 1)`.
pub fn residue_vertex_count(spec: &FormSpec) -> BigUint {
    let p = Params::of(spec);
    let e = (p2(p.nu) - Pow2Expr::int(1)) * (p2(p.nu + p.delta - 1) + Pow2Expr::int(1));
    e.eval_nonneg("residue vertex count")
        .expect("integral by construction")
}

/// Vertex count over `Z/2^n`: fiber size times the residue count.
pub fn vertex_count(spec: &FormSpec) -> BigUint {
    fiber_size(spec) * residue_vertex_count(spec)
}

pub fn degree(spec: &FormSpec) -> BigUint {
    let p = Params::of(spec);
    pow2_big((p.n * (p.dim() - 2)) as u64)
}

/// `(ν, δ) ∈ S`: every pair except `δ = 0` with `ν` odd.
pub fn chromatic_theorem_applies(spec: &FormSpec) -> bool {
    !(spec.delta() == Delta::Zero && spec.nu() % 2 == 1)
}

pub(crate) fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Largest fiber size for which `(fiber!)^(count)` is expanded.
const MAX_EXPANDED_FIBER: u64 = 1 << 12;
const MAX_EXPANDED_PRODUCT: u64 = 1 << 20;

/// Parameters of the graph over the residue field `Z/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueParams {
    #[serde(serialize_with = "serde_dec::big")]
    pub vertex_count: BigUint,
    #[serde(serialize_with = "serde_dec::big")]
    pub degree: BigUint,
    /// Common neighbours of adjacent pairs (complete graph value for `ν = 1`).
    #[serde(serialize_with = "serde_dec::big")]
    pub lambda: BigUint,
    /// Common neighbours of non-adjacent pairs; absent for `ν = 1`, where the
    /// residue graph is complete.
    #[serde(serialize_with = "serde_dec::opt_big")]
    pub mu: Option<BigUint>,
}

pub fn predict_residue(spec: &FormSpec) -> Result<ResidueParams> {
    let p = Params::of(spec);
    let d = p.dim();
    let lambda = p2(d - 2) - p2(d - 3) - p2(p.nu - 1) + p2(p.nu + p.delta - 2);
    let mu = (p.nu >= 2)
        .then(|| (p2(d - 2) - p2(d - 3)).eval_nonneg("residue mu"))
        .transpose()?;
    Ok(ResidueParams {
        vertex_count: residue_vertex_count(spec),
        degree: pow2_big((d - 2) as u64),
        lambda: lambda.eval_nonneg("residue lambda")?,
        mu,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MainClass {
    /// `ν = 1, δ = 0`: a single edge for every `n`.
    DegeneratePath,
    /// `ν = 1, δ ≥ 1`: strongly regular, lifted from a complete graph.
    StronglyRegular,
    /// `ν ≥ 2`.
    QuasiStronglyRegular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonAdjacentPrediction {
    /// One value for every non-adjacent pair.
    Mu {
        #[serde(serialize_with = "serde_dec::big")]
        mu: BigUint,
    },
    /// `c1` for pairs in different fibers, `c2` for distinct vertices in
    /// the same fiber.
    TwoValued {
        #[serde(serialize_with = "serde_dec::big")]
        c1: BigUint,
        #[serde(serialize_with = "serde_dec::big")]
        c2: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChromaticPrediction {
    Value {
        #[serde(serialize_with = "serde_dec::big")]
        value: BigUint,
    },
    /// `δ = 0` with `ν` odd: no closed form is claimed.
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutOrderPrediction {
    #[serde(serialize_with = "serde_dec::opt_big")]
    pub residue_order: Option<BigUint>,
    #[serde(serialize_with = "serde_dec::big")]
    pub fiber_size: BigUint,
    #[serde(serialize_with = "serde_dec::big")]
    pub fiber_count: BigUint,
    /// `residue_order · (fiber_size!)^fiber_count`, when the residue order is
    /// known and the product is small enough to expand.
    #[serde(serialize_with = "serde_dec::opt_big")]
    pub value: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremPrediction {
    pub spec: FormSpec,
    pub classification: MainClass,
    #[serde(serialize_with = "serde_dec::big")]
    pub vertex_count: BigUint,
    #[serde(serialize_with = "serde_dec::big")]
    pub degree: BigUint,
    #[serde(serialize_with = "serde_dec::big")]
    pub fiber_size: BigUint,
    #[serde(serialize_with = "serde_dec::big")]
    pub lambda: BigUint,
    /// `λ` from the expanded form `λ₂ · fiber_size`, where `λ₂` is the
    /// residue graph's value. Must equal `lambda`.
    #[serde(serialize_with = "serde_dec::big")]
    pub lambda_expanded: BigUint,
    pub nonadjacent: NonAdjacentPrediction,
    pub chromatic: ChromaticPrediction,
    pub aut_order: AutOrderPrediction,
    pub residue: ResidueParams,
}

/// Predicts every main-graph parameter. `residue_aut_order` is the measured
/// automorphism group order of the residue graph, if known.
pub fn predict_main(
    spec: &FormSpec,
    residue_aut_order: Option<&BigUint>,
) -> Result<TheoremPrediction> {
    let p = Params::of(spec);
    let (n, nu, delta) = (p.n, p.nu, p.delta);
    let d = p.dim();
    let residue = predict_residue(spec)?;
    let fiber = fiber_size(spec);

    let (classification, lambda, nonadjacent) = if nu == 1 {
        let lambda =
            (Pow2Expr::pow2_int(delta * n) - p2(delta * (n - 1))).eval_nonneg("lambda, nu = 1")?;
        if delta == 0 {
            (
                MainClass::DegeneratePath,
                lambda,
                NonAdjacentPrediction::Mu {
                    mu: BigUint::zero(),
                },
            )
        } else {
            // ⌈δ/2⌉ = 1 for δ ∈ {1, 2}.
            let ceil_half = (delta + 1) / 2;
            let mu = p2(delta * n).scale(ceil_half).eval_nonneg("mu, nu = 1")?;
            (
                MainClass::StronglyRegular,
                lambda,
                NonAdjacentPrediction::Mu { mu },
            )
        }
    } else {
        let inner = Pow2Expr::pow2_frac(n * (2 * nu + delta - 2), 2)
            + Pow2Expr::pow2_frac((n - 1) * (2 * nu + delta - 2), 2).scale(delta - 1);
        let lambda = (p2(n - 1) * inner * Pow2Expr::pow2_frac(n * (2 * nu - 4 + delta), 2))
            .eval_nonneg("lambda, nu >= 2")?;
        let c1 = (p2(n - 1) * p2(n * (2 * nu - 3 + delta))).eval_nonneg("c1")?;
        let c2 = p2(n * (2 * nu - 2 + delta)).eval_nonneg("c2")?;
        (
            MainClass::QuasiStronglyRegular,
            lambda,
            NonAdjacentPrediction::TwoValued { c1, c2 },
        )
    };

    let lambda_expanded = ((p2(d - 2) - p2(d - 3) - p2(nu - 1) + p2(nu + delta - 2)) * p.fiber())
        .eval_nonneg("lambda, expanded")?;

    let chromatic = if chromatic_theorem_applies(spec) {
        ChromaticPrediction::Value {
            value: (p2(nu + delta - 1) + Pow2Expr::int(1)).eval_nonneg("chromatic number")?,
        }
    } else {
        ChromaticPrediction::Excluded
    };

    let fiber_count = residue.vertex_count.clone();
    let value = residue_aut_order.and_then(|r| {
        let f = fiber.to_u64()?;
        let c = fiber_count.to_u64()?;
        if f > MAX_EXPANDED_FIBER || f.saturating_mul(c) > MAX_EXPANDED_PRODUCT {
            return None;
        }
        Some(r * factorial(f).pow(c as u32))
    });

    Ok(TheoremPrediction {
        spec: *spec,
        classification,
        vertex_count: vertex_count(spec),
        degree: degree(spec),
        fiber_size: fiber.clone(),
        lambda,
        lambda_expanded,
        nonadjacent,
        chromatic,
        aut_order: AutOrderPrediction {
            residue_order: residue_aut_order.cloned(),
            fiber_size: fiber,
            fiber_count,
            value,
        },
        residue,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubShape {
    StronglyRegular,
    QuasiStronglyRegular,
    /// Regular, with adjacent pairs taking one of two common-neighbour values.
    Regular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubconstituentPrediction {
    pub index: u8,
    pub shape: SubShape,
    /// Which published branch produced the values.
    pub branch: &'static str,
    #[serde(serialize_with = "serde_dec::big")]
    pub vertex_count: BigUint,
    #[serde(serialize_with = "serde_dec::big")]
    pub degree: BigUint,
    /// Allowed common-neighbour counts for adjacent pairs.
    #[serde(serialize_with = "serde_dec::big_set")]
    pub adjacent: BTreeSet<BigUint>,
    /// Allowed common-neighbour counts for non-adjacent pairs.
    #[serde(serialize_with = "serde_dec::big_set")]
    pub nonadjacent: BTreeSet<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SubPrediction {
    Covered(SubconstituentPrediction),
    NotCovered { reason: String },
}

impl SubPrediction {
    pub fn covered(&self) -> Option<&SubconstituentPrediction> {
        match self {
            SubPrediction::Covered(p) => Some(p),
            SubPrediction::NotCovered { .. } => None,
        }
    }
}

fn set<const N: usize>(values: [BigUint; N]) -> BTreeSet<BigUint> {
    values.into_iter().collect()
}

/// Predicted parameters of subconstituent `index` (1 or 2) around `[e₁]`.
///
/// The published statement for `δ = 1, ν ≥ 3` names the first
/// subconstituent, but its vertex count `2^((n-1)(2ν-1))(2^(2ν-1) - 2)` is
/// that of the second; it is wired to index 2.
pub fn predict_sub(spec: &FormSpec, index: u8) -> Result<SubPrediction> {
    let p = Params::of(spec);
    let (n, nu, delta) = (p.n, p.nu, p.delta);
    let d = p.dim();
    if index != 1 && index != 2 {
        return Err(Error::InvalidArgument(format!(
            "subconstituent index must be 1 or 2, got {index}"
        )));
    }
    if nu < 2 {
        return Ok(SubPrediction::NotCovered {
            reason: "no subconstituent claims for nu = 1".into(),
        });
    }
    let f = p.fiber();
    let pred = match (index, delta) {
        (1, 0 | 2) => {
            let s = p.sign();
            let h = d / 2;
            let k = (f.clone() * (p2(d - 3) - p2(h - 1).scale(s) - p2(h - 2).scale(-s)))
                .eval_nonneg("first subconstituent k")?;
            let lambda = (f.clone()
                * (p2(d - 4) - p2(h - 1).scale(2 * s) + p2(h - 2).scale(3 * s)))
            .eval_nonneg("first subconstituent lambda")?;
            let c2 = (f * (p2(d - 4) - p2(h - 1).scale(s) - p2(h - 2).scale(-s)))
                .eval_nonneg("first subconstituent c2")?;
            SubconstituentPrediction {
                index,
                shape: SubShape::QuasiStronglyRegular,
                branch: "first, delta even",
                vertex_count: p2(n * (d - 2)).eval_nonneg("first subconstituent v")?,
                degree: k.clone(),
                adjacent: set([lambda]),
                nonadjacent: set([k, c2]),
            }
        }
        (1, _) => {
            let low = p2(n * (2 * nu - 2) - 1).eval_nonneg("first subconstituent, delta 1")?;
            let k = p2(n * (2 * nu - 2) + 1).eval_nonneg("first subconstituent, delta 1")?;
            SubconstituentPrediction {
                index,
                shape: SubShape::Regular,
                branch: "first, delta 1",
                vertex_count: p2(n * (2 * nu - 1)).eval_nonneg("first subconstituent v")?,
                degree: k.clone(),
                adjacent: set([BigUint::zero(), low.clone()]),
                nonadjacent: set([low, k]),
            }
        }
        (_, 0 | 2) if nu == 2 => {
            let s = p.sign();
            let hd = delta / 2;
            let v = (f.clone()
                * (p2(2 + delta) + p2(hd + 2).scale(s) + p2(hd + 1).scale(-s) - Pow2Expr::int(2)))
            .eval_nonneg("second subconstituent v, nu 2")?;
            let k = p2(n * (2 + delta) - 1).eval_nonneg("second subconstituent k, nu 2")?;
            let lambda = (f * (p2(1 + delta) - p2(delta) - p2(hd + 1).scale(s) + p2(hd).scale(s)))
                .eval_nonneg("second subconstituent lambda, nu 2")?;
            SubconstituentPrediction {
                index,
                shape: SubShape::StronglyRegular,
                branch: "second, nu 2, delta even",
                vertex_count: v,
                degree: k.clone(),
                adjacent: set([lambda]),
                nonadjacent: set([k]),
            }
        }
        (_, 0 | 2) => {
            let s = p.sign();
            let h = d / 2;
            let v = (f.clone()
                * (p2(d - 2) + p2(h).scale(s) + p2(h - 1).scale(-s) - Pow2Expr::int(2)))
            .eval_nonneg("second subconstituent v")?;
            let k = p2(n * (d - 2) - 1).eval_nonneg("second subconstituent k")?;
            let lambda = (f * (p2(d - 4) - p2(h - 1).scale(s) + p2(h - 2).scale(s)))
                .eval_nonneg("second subconstituent lambda")?;
            let c2 = p2(n * (d - 2) - 2).eval_nonneg("second subconstituent c2")?;
            SubconstituentPrediction {
                index,
                shape: SubShape::QuasiStronglyRegular,
                branch: "second, nu >= 3, delta even",
                vertex_count: v,
                degree: k.clone(),
                adjacent: set([lambda]),
                nonadjacent: set([k, c2]),
            }
        }
        (_, _) if nu == 2 => {
            let g = f.eval_nonneg("fiber")?;
            SubconstituentPrediction {
                index,
                shape: SubShape::StronglyRegular,
                branch: "second, nu 2, delta 1",
                vertex_count: &g * 6u32,
                degree: &g * 4u32,
                adjacent: set([&g * 2u32]),
                nonadjacent: set([&g * 4u32]),
            }
        }
        (_, _) => {
            let v = (f * (p2(2 * nu - 1) - Pow2Expr::int(2)))
                .eval_nonneg("second subconstituent v, delta 1")?;
            let k = p2(n * (2 * nu - 1) - 1).eval_nonneg("second subconstituent k, delta 1")?;
            let low = p2(n * (2 * nu - 1) - 2).eval_nonneg("second subconstituent, delta 1")?;
            SubconstituentPrediction {
                index,
                shape: SubShape::QuasiStronglyRegular,
                branch: "second, nu >= 3, delta 1 (stated for the first)",
                vertex_count: v,
                degree: k.clone(),
                adjacent: set([low.clone()]),
                nonadjacent: set([low, k]),
            }
        }
    };
    Ok(SubPrediction::Covered(pred))
}
