//! The central extension `~SL(2,ℤ)` of `SL(2,ℤ)` by `ℤ`, realized through the
//! Maslov cocycle `τ_ℓ(g, h) = τ(ℓ, gℓ, ghℓ)` with `ℓ = span p`.
//!
//! Elements are pairs `(M, n)` with `(g₁, n₁)(g₂, n₂) = (g₁g₂, n₁ + n₂ + τ_ℓ(g₁, g₂))`.
//! Not every pair is an element: the integer is pinned down mod 4 by `M`
//! (see [`MetaElement::is_valid`]). The group is the mapping class group of the
//! one-holed torus and `(I, 4)` is the boundary twist.

mod lambda;
mod maslov;
mod search;
mod sl2;
mod syntax;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::surface::{Curve, SurfaceData};
use crate::words::{is_positive, syllables, TwistWord};

pub use lambda::{act_tilde_lambda, displacement, translation_number, Displacement, TildeLambdaPoint};
pub use maslov::{cocycle, maslov_index, maslov_index_by_signature, LagrangianLine};
pub use search::{conjugates_of_a, positivity_search, PositivitySearch};
pub use sl2::Sl2;
pub use syntax::{parse_compact_word, torus_curves};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetaError {
    #[error("{0} is not an element of the metaplectic group")]
    InvalidElement(MetaElement),
    #[error("({line}, {k}) violates the parity condition")]
    InvalidPoint { line: LagrangianLine, k: i64 },
    #[error("integer overflow")]
    Overflow,
    #[error("curve `{0}` is not a primitive class on the torus")]
    NotPrimitive(String),
    #[error("word contains a negative exponent")]
    NotPositive,
    #[error("word evaluates to {0}, which is not a power of the boundary twist")]
    NotCentral(MetaElement),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `(M, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetaElement {
    pub m: Sl2,
    pub n: i64,
}

impl MetaElement {
    pub const IDENTITY: MetaElement = MetaElement { m: Sl2::IDENTITY, n: 0 };

    pub fn new(m: Sl2, n: i64) -> Result<Self, MetaError> {
        let x = Self { m, n };
        if x.is_valid() {
            Ok(x)
        } else {
            Err(MetaError::InvalidElement(x))
        }
    }

    /// If `c = 0` then `n` is even and `sign(a) = (−1)^{n/2}`; otherwise `n` is
    /// odd and `sign(c) = (−1)^{(n+1)/2}`.
    pub fn is_valid(&self) -> bool {
        let Sl2 { a, c, .. } = self.m;
        if c == 0 {
            self.n % 2 == 0 && (a > 0) == (self.n.div_euclid(2) % 2 == 0)
        } else {
            self.n % 2 != 0 && (c > 0) == ((self.n + 1).div_euclid(2) % 2 == 0)
        }
    }

    pub fn multiply(&self, o: &Self) -> Result<Self, MetaError> {
        for x in [self, o] {
            if !x.is_valid() {
                return Err(MetaError::InvalidElement(*x));
            }
        }
        Ok(self.mul_unchecked(o)?)
    }

    fn mul_unchecked(&self, o: &Self) -> Result<Self, MetaError> {
        let m = self.m.checked_mul(&o.m).ok_or(MetaError::Overflow)?;
        let tau = cocycle(&self.m, &o.m, &LagrangianLine::P).ok_or(MetaError::Overflow)?;
        let n = self
            .n
            .checked_add(o.n)
            .and_then(|s| s.checked_add(i64::from(tau)))
            .ok_or(MetaError::Overflow)?;
        Ok(Self { m, n })
    }

    /// `(M⁻¹, −n)`; the cocycle vanishes on `(g, g⁻¹)`.
    pub fn inverse(&self) -> Self {
        Self {
            m: self.m.inverse(),
            n: -self.n,
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, MetaError> {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut acc = Self::IDENTITY;
        for _ in 0..e.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    pub fn conjugate_by(&self, phi: &Self) -> Result<Self, MetaError> {
        phi.multiply(self)?.multiply(&phi.inverse())
    }

    /// `k` with `self = (I, 4k)`, the `k`-th power of the boundary twist.
    pub fn boundary_power(&self) -> Option<i64> {
        (self.m.is_identity() && self.n % 4 == 0).then_some(self.n / 4)
    }
}

impl fmt::Display for MetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// `(Ã_k, B̃_k, J̃) = ((A, 4k), (B, 4k+1), (J, 1))`.
pub fn lift_generators(k: i64) -> (MetaElement, MetaElement, MetaElement) {
    (
        MetaElement { m: Sl2::A, n: 4 * k },
        MetaElement { m: Sl2::B, n: 4 * k + 1 },
        MetaElement { m: Sl2::J, n: 1 },
    )
}

/// A lift of `M` with the smallest admissible `|n|`, preferring `n ≥ 0`.
pub fn some_lift(m: Sl2) -> MetaElement {
    [0, 1, -1, 2]
        .into_iter()
        .map(|n| MetaElement { m, n })
        .find(MetaElement::is_valid)
        .expect("one of four consecutive integers is admissible")
}

/// The lift of `t_c` conjugate to `Ã₀`, for a primitive class `c` on the torus.
pub fn lift_twist(x: i64, y: i64) -> Option<MetaElement> {
    let m = some_lift(Sl2::with_first_column(x, y)?);
    let (a, _, _) = lift_generators(0);
    a.conjugate_by(&m).ok()
}

fn lift_curve(c: &Curve) -> Result<MetaElement, MetaError> {
    match c.homology[..] {
        [x, y] => lift_twist(x, y).ok_or_else(|| MetaError::NotPrimitive(c.name.clone())),
        _ => Err(MetaError::NotPrimitive(c.name.clone())),
    }
}

/// Ordered product of the lifted letters, each `t_c` sent to its conjugate of `Ã₀`.
pub fn evaluate_meta_word(w: &TwistWord) -> Result<MetaElement, MetaError> {
    let mut acc = MetaElement::IDENTITY;
    for l in &w.letters {
        let mut x = lift_curve(&l.curve)?.pow(l.exponent)?;
        if let Some(phi) = &l.conjugator {
            x = x.conjugate_by(&evaluate_meta_word(phi)?)?;
        }
        acc = acc.multiply(&x)?;
    }
    Ok(acc)
}

/// `n` with `w = t_∂^n`, that is `w ↦ (I, 4n)`.
pub fn boundary_multiplicity(w: &TwistWord) -> Result<i64, MetaError> {
    if !is_positive(w) {
        return Err(MetaError::NotPositive);
    }
    let x = evaluate_meta_word(w)?;
    x.boundary_power().ok_or(MetaError::NotCentral(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SzpiroReport {
    pub n: i64,
    pub sum_exponents: i64,
    pub syllables: usize,
    /// `Σ nᵢ = 12n`.
    pub sum_identity: bool,
    /// `m > 2n`.
    pub syllable_bound: bool,
    /// Self-intersection of the section, `−n`.
    pub section_self_intersection: i64,
}

impl SzpiroReport {
    pub fn passes(&self) -> bool {
        self.sum_identity && self.syllable_bound
    }
}

pub fn szpiro_check(w: &TwistWord) -> Result<SzpiroReport, MetaError> {
    let n = boundary_multiplicity(w)?;
    let sum_exponents = w.exponent_sum();
    let m = syllables(w);
    Ok(SzpiroReport {
        n,
        sum_exponents,
        syllables: m,
        sum_identity: sum_exponents == 12 * n,
        syllable_bound: m as i64 > 2 * n,
        section_self_intersection: -n,
    })
}

/// `t_a^{e₁} t_b^{e₂} ⋯` on the torus, alternating from `a`.
pub fn torus_word(exponents: &[i64]) -> TwistWord {
    let (a, b) = torus_curves();
    let powers: Vec<(&Arc<Curve>, i64)> = exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| (if i % 2 == 0 { &a } else { &b }, *e))
        .collect();
    TwistWord::from_powers(SurfaceData::closed(1), &powers).expect("genus one curves")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert!(MetaElement { m: Sl2::A, n: 0 }.is_valid());
        assert!(!MetaElement { m: Sl2::A, n: 2 }.is_valid());
        assert!(MetaElement { m: Sl2::B, n: 1 }.is_valid());
        assert!(MetaElement { m: Sl2::IDENTITY.neg(), n: 2 }.is_valid());
        assert!(MetaElement { m: Sl2::IDENTITY.neg(), n: -2 }.is_valid());
        assert!(!MetaElement { m: Sl2::IDENTITY, n: 2 }.is_valid());
        assert!(MetaElement { m: Sl2::J, n: -3 }.is_valid());
    }

    #[test]
    fn generator_lifts() {
        let (a, b, j) = lift_generators(0);
        assert_eq!(b, a.conjugate_by(&j).unwrap());
        assert_eq!(lift_twist(1, 0), Some(a));
        assert_eq!(lift_twist(0, 1), Some(b));
        assert_eq!(lift_twist(0, -1), Some(b));
        assert_eq!(lift_twist(2, 0), None);
    }
}
