//! Words in Dehn twists and the positive-relation calculus.
//!
//! Letters multiply in written order, as mapping classes compose: `φ ψ`
//! evaluates to `E(φ)·E(ψ)`, and a conjugated letter `[φ] t_c^n` stands for
//! `φ t_c^n φ⁻¹ = t_{φ(c)}^n`. Evaluation is a monoid homomorphism into
//! `Sp(2g, ℤ)`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::curves::CurveSystem;
use crate::exact::IntMatrix;
use crate::surface::{intersection_pairing, symplectic_inverse, transvection_power, Curve, SurfaceData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word contains a negative exponent")]
    NotPositive,
    #[error("position {position} is outside a relation of length {len}")]
    BadPosition { position: usize, len: usize },
    #[error("curves `{0}` and `{1}` do not meet once homologically")]
    NotAdjacent(String, String),
    #[error("no adjacency path from `{0}` to a curve of the relation")]
    NotConnected(String),
    #[error("the given word does not evaluate to the identity")]
    NotARelation,
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("letter exponent must be nonzero")]
    ZeroExponent,
    #[error("curve `{name}` has genus {found}, word surface has genus {expected}")]
    GenusMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
}

/// `t_c^n`, optionally conjugated: `φ t_c^n φ⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistLetter {
    pub curve: Arc<Curve>,
    pub exponent: i64,
    pub conjugator: Option<TwistWord>,
}

impl TwistLetter {
    pub fn new(curve: Arc<Curve>, exponent: i64) -> Result<Self, WordError> {
        if exponent == 0 {
            return Err(WordError::ZeroExponent);
        }
        Ok(Self {
            curve,
            exponent,
            conjugator: None,
        })
    }

    pub fn conjugated(mut self, phi: TwistWord) -> Self {
        self.conjugator = Some(phi);
        self
    }

    fn same_syllable(&self, other: &Self) -> bool {
        self.curve == other.curve && self.conjugator == other.conjugator
    }

    fn inverse(&self) -> Self {
        Self {
            exponent: -self.exponent,
            ..self.clone()
        }
    }
}

/// A product of (possibly conjugated) twist powers on one surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistWord {
    pub surface: SurfaceData,
    pub letters: Vec<TwistLetter>,
}

impl TwistWord {
    pub fn empty(surface: SurfaceData) -> Self {
        Self {
            surface,
            letters: Vec::new(),
        }
    }

    pub fn new(surface: SurfaceData, letters: Vec<TwistLetter>) -> Result<Self, WordError> {
        let w = Self { surface, letters };
        w.check_genus()?;
        Ok(w)
    }

    /// Builds a word from `(curve, exponent)` pairs.
    pub fn from_powers(surface: SurfaceData, powers: &[(&Arc<Curve>, i64)]) -> Result<Self, WordError> {
        let letters = powers
            .iter()
            .map(|(c, e)| TwistLetter::new(Arc::clone(c), *e))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(surface, letters)
    }

    fn check_genus(&self) -> Result<(), WordError> {
        for l in &self.letters {
            if l.curve.genus() != self.surface.genus {
                return Err(WordError::GenusMismatch {
                    name: l.curve.name.clone(),
                    expected: self.surface.genus,
                    found: l.curve.genus(),
                });
            }
            if let Some(c) = &l.conjugator {
                c.check_genus()?;
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Self {
            surface: self.surface,
            letters,
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        Self {
            surface: self.surface,
            letters: (0..n).flat_map(|_| self.letters.iter().cloned()).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            surface: self.surface,
            letters: self.letters.iter().rev().map(TwistLetter::inverse).collect(),
        }
    }

    /// Every letter conjugated by `phi` (composed with any existing conjugator).
    pub fn conjugate_by(&self, phi: &Self) -> Self {
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let c = match &l.conjugator {
                    Some(inner) => phi.concat(inner),
                    None => phi.clone(),
                };
                TwistLetter {
                    conjugator: (!c.is_empty()).then_some(c),
                    ..l.clone()
                }
            })
            .collect();
        Self {
            surface: self.surface,
            letters,
        }
    }

    /// Sum of the exponents.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent).sum()
    }

    /// Names of the curves occurring (outside conjugators).
    pub fn curve_coverage(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.letters
            .iter()
            .filter(|l| seen.insert(l.curve.name.clone()))
            .map(|l| l.curve.name.clone())
            .collect()
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.conjugator {
            write!(f, "[{c}] ")?;
        }
        write!(f, "t_{}", self.curve.name)?;
        if self.exponent != 1 {
            write!(f, "^{}", self.exponent)?;
        }
        if self.conjugator.is_some() {
            write!(f, " [..]^-1")?;
        }
        Ok(())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn letter_matrix(l: &TwistLetter) -> IntMatrix {
    let t = transvection_power(&l.curve.homology, l.exponent);
    match &l.conjugator {
        Some(phi) => {
            let p = evaluate_homological(phi);
            &(&p * &t) * &symplectic_inverse(&p)
        }
        None => t,
    }
}

pub fn evaluate_homological(w: &TwistWord) -> IntMatrix {
    w.letters
        .iter()
        .fold(IntMatrix::identity(w.surface.dimension()), |acc, l| &acc * &letter_matrix(l))
}

/// True iff every exponent is positive. Conjugators may be arbitrary.
pub fn is_positive(w: &TwistWord) -> bool {
    w.letters.iter().all(|l| l.exponent > 0)
}

/// Folds adjacent letters on the same curve with the same conjugator; drops zero powers.
pub fn normalize(w: &TwistWord) -> TwistWord {
    let mut out: Vec<TwistLetter> = Vec::new();
    for l in &w.letters {
        match out.last_mut() {
            Some(last) if last.same_syllable(l) => {
                last.exponent += l.exponent;
                if last.exponent == 0 {
                    out.pop();
                }
            }
            _ => out.push(l.clone()),
        }
    }
    TwistWord {
        surface: w.surface,
        letters: out,
    }
}

/// Splits every power into letters of exponent `±1`.
pub fn expand_powers(w: &TwistWord) -> TwistWord {
    let letters = w
        .letters
        .iter()
        .flat_map(|l| {
            let unit = TwistLetter {
                exponent: l.exponent.signum(),
                ..l.clone()
            };
            std::iter::repeat_n(unit, l.exponent.unsigned_abs() as usize)
        })
        .collect();
    TwistWord {
        surface: w.surface,
        letters,
    }
}

/// Replaces conjugated letters by `φ t_c^n φ⁻¹`, recursively.
pub fn expand_conjugators(w: &TwistWord) -> TwistWord {
    let mut letters = Vec::new();
    for l in &w.letters {
        match &l.conjugator {
            Some(phi) => {
                let phi = expand_conjugators(phi);
                letters.extend(phi.letters.iter().cloned());
                letters.push(TwistLetter {
                    conjugator: None,
                    ..l.clone()
                });
                letters.extend(phi.inverse().letters);
            }
            None => letters.push(l.clone()),
        }
    }
    TwistWord {
        surface: w.surface,
        letters,
    }
}

/// Number of syllables: maximal runs of letters on the same curve with the same conjugator.
pub fn syllables(w: &TwistWord) -> usize {
    normalize(w).len()
}

/// From a positive relation `l(1) ⋯ l(μ) = 1`, the positive word `w` with
/// `t_{l(i)}⁻¹ = w`, namely the cyclic rotation of the relation after position `i`.
///
/// `position` is 1-based and refers to the relation with powers expanded.
pub fn invert_from_positive_relation(rel: &TwistWord, position: usize) -> Result<TwistWord, WordError> {
    if !is_positive(rel) {
        return Err(WordError::NotPositive);
    }
    let flat = expand_powers(rel);
    let n = flat.len();
    if position == 0 || position > n {
        return Err(WordError::BadPosition { position, len: n });
    }
    let i = position - 1;
    let letters = flat.letters[i + 1..]
        .iter()
        .chain(&flat.letters[..i])
        .cloned()
        .collect();
    Ok(TwistWord {
        surface: rel.surface,
        letters,
    })
}

/// `φ = t_a t_b`, for which `φ t_a φ⁻¹ = t_b` by the braid relation.
pub fn conjugate_adjacent(a: &Arc<Curve>, b: &Arc<Curve>) -> Result<TwistWord, WordError> {
    let pair = intersection_pairing(&a.homology, &b.homology)
        .map_err(|_| WordError::NotAdjacent(a.name.clone(), b.name.clone()))?;
    if pair.abs() != 1 {
        return Err(WordError::NotAdjacent(a.name.clone(), b.name.clone()));
    }
    TwistWord::from_powers(SurfaceData::closed(a.genus()), &[(a, 1), (b, 1)])
}

/// A positive word equal to `t_c⁻¹`, for a curve `c` graph-connected to the
/// curves `s_names` of `system` that appear in the positive relation `rel_s`.
///
/// Walks an adjacency path `c = r₀, …, r_k = d`, conjugates `t_d` back to `t_c`
/// and inverts `t_d` with [`invert_from_positive_relation`].
pub fn express_inverse_positively(
    system: &CurveSystem,
    s_names: &[&str],
    rel_s: &TwistWord,
    c: &str,
) -> Result<TwistWord, WordError> {
    if !is_positive(rel_s) {
        return Err(WordError::NotPositive);
    }
    if !evaluate_homological(rel_s).is_identity() {
        return Err(WordError::NotARelation);
    }
    let flat = expand_powers(rel_s);
    let start = system
        .index_of(c)
        .ok_or_else(|| WordError::UnknownCurve(c.to_string()))?;
    let mut targets = Vec::new();
    for name in s_names {
        let i = system
            .index_of(name)
            .ok_or_else(|| WordError::UnknownCurve(name.to_string()))?;
        if flat.letters.iter().any(|l| l.curve.name == *name && l.conjugator.is_none()) {
            targets.push(i);
        }
    }
    let path = system
        .adjacency_path(start, &targets)
        .ok_or_else(|| WordError::NotConnected(c.to_string()))?;
    let curves = system.curves();
    let d = &curves[*path.last().expect("paths are nonempty")];
    let position = flat
        .letters
        .iter()
        .position(|l| l.curve.name == d.name && l.conjugator.is_none())
        .expect("target occurs in the relation")
        + 1;
    let inverse_d = invert_from_positive_relation(rel_s, position)?;

    let mut psi = TwistWord::empty(rel_s.surface);
    for step in path.windows(2) {
        // φ t_{r_{j+1}} φ⁻¹ = t_{r_j}
        let phi = conjugate_adjacent(&curves[step[1]], &curves[step[0]])?;
        psi = psi.concat(&phi);
    }
    Ok(if psi.is_empty() {
        inverse_d
    } else {
        inverse_d.conjugate_by(&psi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> (Arc<Curve>, Arc<Curve>) {
        (
            Arc::new(Curve::from_class("a", vec![1, 0])),
            Arc::new(Curve::from_class("b", vec![0, 1])),
        )
    }

    #[test]
    fn e1_relation_is_identity() {
        let (a, b) = torus();
        let w = TwistWord::from_powers(SurfaceData::closed(1), &[(&a, 1), (&b, 1)]).unwrap().pow(6);
        assert!(evaluate_homological(&w).is_identity());
        assert!(is_positive(&w));
        assert_eq!(syllables(&w), 12);
        assert!(evaluate_homological(&TwistWord::empty(SurfaceData::closed(1))).is_identity());
    }

    #[test]
    fn adjacent_conjugation() {
        let (a, b) = torus();
        let phi = conjugate_adjacent(&a, &b).unwrap();
        let p = evaluate_homological(&phi);
        let lhs = &(&p * &transvection_power(&a.homology, 1)) * &symplectic_inverse(&p);
        assert_eq!(lhs, transvection_power(&b.homology, 1));
        assert!(matches!(conjugate_adjacent(&a, &a), Err(WordError::NotAdjacent(..))));
    }

    #[test]
    fn inversion_by_rotation() {
        let s = SurfaceData::closed(1);
        let c: Vec<Arc<Curve>> = ["t1", "t2", "t3"]
            .iter()
            .map(|n| Arc::new(Curve::from_class(*n, vec![1, 0])))
            .collect();
        let rel = TwistWord::from_powers(s, &[(&c[0], 1), (&c[1], 1), (&c[2], 1)]).unwrap();
        let names = |w: &TwistWord| w.letters.iter().map(|l| l.curve.name.clone()).collect::<Vec<_>>();
        assert_eq!(names(&invert_from_positive_relation(&rel, 1).unwrap()), ["t2", "t3"]);
        assert_eq!(names(&invert_from_positive_relation(&rel, 2).unwrap()), ["t3", "t1"]);
        let single = TwistWord::from_powers(s, &[(&c[0], 1)]).unwrap();
        assert!(invert_from_positive_relation(&single, 1).unwrap().is_empty());
        let neg = TwistWord::from_powers(s, &[(&c[0], -1)]).unwrap();
        assert_eq!(invert_from_positive_relation(&neg, 1), Err(WordError::NotPositive));
    }

    #[test]
    fn normalization_folds_runs() {
        let (a, b) = torus();
        let w = TwistWord::from_powers(SurfaceData::closed(1), &[(&a, 1), (&a, 2), (&b, 1), (&b, -1), (&a, 1)]).unwrap();
        let n = normalize(&w);
        assert_eq!(n.len(), 1);
        assert_eq!(n.letters[0].exponent, 4);
        assert_eq!(evaluate_homological(&n), evaluate_homological(&w));
    }
}
