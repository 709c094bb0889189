//! The action on the universal cover `Λ̃` of the circle of lines.

use std::f64::consts::PI;

use num_rational::Ratio;

use super::{maslov_index, LagrangianLine, MetaElement, MetaError, Sl2};

/// `(ℓ, k)` with `k ≡ 1 + dim(ℓ ∩ ℓ₀) mod 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TildeLambdaPoint {
    pub line: LagrangianLine,
    pub k: i64,
}

impl TildeLambdaPoint {
    pub fn new(line: LagrangianLine, k: i64) -> Result<Self, MetaError> {
        let p = Self { line, k };
        if p.is_valid() {
            Ok(p)
        } else {
            Err(MetaError::InvalidPoint { line, k })
        }
    }

    pub fn is_valid(&self) -> bool {
        (self.k - 1 - self.meets_reference()).rem_euclid(2) == 0
    }

    fn meets_reference(&self) -> i64 {
        i64::from(self.line == LagrangianLine::P)
    }

    /// `θ̃ = θ(ℓ) − (k + 1 − dim(ℓ ∩ ℓ₀))·π/2`, as a multiple of `π` when exact.
    pub fn coordinate_exact(&self) -> Option<Ratio<i64>> {
        let (num, den) = self.line.standard_angle()?;
        Some(Ratio::new(num, den) - Ratio::new(self.k + 1 - self.meets_reference(), 2))
    }

    /// The real coordinate `θ̃`; strictly increasing in `θ`, and `(ℓ, k+2)` sits `π` below `(ℓ, k)`.
    pub fn coordinate(&self) -> f64 {
        self.line.angle() - (self.k + 1 - self.meets_reference()) as f64 * PI / 2.0
    }
}

/// `(g, n)·(ℓ, k) = (gℓ, n + k + τ(ℓ₀, gℓ₀, gℓ))`.
pub fn act_tilde_lambda(x: &MetaElement, pt: &TildeLambdaPoint) -> Result<TildeLambdaPoint, MetaError> {
    if !x.is_valid() {
        return Err(MetaError::InvalidElement(*x));
    }
    if !pt.is_valid() {
        return Err(MetaError::InvalidPoint { line: pt.line, k: pt.k });
    }
    let l0 = LagrangianLine::P;
    let gl0 = l0.transform(&x.m).ok_or(MetaError::Overflow)?;
    let gl = pt.line.transform(&x.m).ok_or(MetaError::Overflow)?;
    let k = x.n + pt.k + i64::from(maslov_index(&l0, &gl0, &gl));
    Ok(TildeLambdaPoint { line: gl, k })
}

/// `θ̃(x·pt) − θ̃(pt)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Displacement {
    /// Multiple of `π`, when both endpoints sit at standard angles.
    pub exact: Option<Ratio<i64>>,
    pub value: f64,
}

pub fn displacement(x: &MetaElement, pt: &TildeLambdaPoint) -> Result<Displacement, MetaError> {
    let image = act_tilde_lambda(x, pt)?;
    let exact = image
        .coordinate_exact()
        .zip(pt.coordinate_exact())
        .map(|(a, b)| a - b);
    let value = match exact {
        Some(r) => *r.numer() as f64 / *r.denom() as f64 * PI,
        None => image.coordinate() - pt.coordinate(),
    };
    Ok(Displacement { exact, value })
}

/// Translation number in units of `π`.
///
/// Elliptic elements have a power over `±I`, read off exactly; the others fix a
/// point of `ℝℙ¹`, so the translation number is a multiple of `π` and is
/// recovered from the displacement of the square.
pub fn translation_number(x: &MetaElement) -> Result<Ratio<i64>, MetaError> {
    if !x.is_valid() {
        return Err(MetaError::InvalidElement(*x));
    }
    if x.m.trace().abs() < 2 || x.m.is_identity() || x.m == Sl2::IDENTITY.neg() {
        let mut p = *x;
        for m in 1..=12 {
            if p.m.is_identity() || p.m == Sl2::IDENTITY.neg() {
                // (±I, n) shifts every k by n
                return Ok(Ratio::new(-p.n, 2 * m));
            }
            p = p.multiply(x)?;
        }
        unreachable!("elliptic elements of SL(2,Z) have order dividing 12");
    }
    let sq = x.multiply(x)?;
    let pt = TildeLambdaPoint { line: LagrangianLine::P, k: 0 };
    // |disp(x²) − 2·rot| < π, so disp(x²)/2 is within π/2 of the multiple of π
    let d = displacement(&sq, &pt)?.value / (2.0 * PI);
    Ok(Ratio::from_integer(d.round() as i64))
}
