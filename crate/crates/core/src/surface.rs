//! Curves as homology classes, the intersection form, and the action of Dehn twists on `H₁`.
//!
//! Classes live in `ℤ^{2g}` over the basis `a₁, b₁, …, a_g, b_g` with `⟨aᵢ, bᵢ⟩ = +1`.
//! A right-handed twist acts by the transvection `x ↦ x − ⟨x, c⟩ c`, which sends
//! `t_{a₁}` to `[[1,1],[0,1]]` and `t_{b₁}` to `[[1,0],[-1,1]]` in genus one.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{standard_form, IntMatrix};
use crate::presentation::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("class has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("curve `{0}`: a curve is separating exactly when its class is zero")]
    SeparatingMismatch(String),
    #[error("curve `{name}`: word abelianizes to {word:?} but the class is {class:?}")]
    WordClassMismatch {
        name: String,
        word: Vec<i64>,
        class: Vec<i64>,
    },
}

/// A surface of genus `g` with `n` punctures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceData {
    pub genus: usize,
    pub punctures: usize,
}

impl SurfaceData {
    pub fn closed(genus: usize) -> Self {
        Self { genus, punctures: 0 }
    }

    pub fn dimension(&self) -> usize {
        2 * self.genus
    }
}

/// A simple closed curve known through its homology class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    pub name: String,
    pub homology: Vec<i64>,
    pub separating: bool,
    /// Optional representative in `π₁` on the generators `a₁, b₁, …`.
    pub word: Option<Word>,
}

impl Curve {
    pub fn new(
        name: impl Into<String>,
        homology: Vec<i64>,
        separating: bool,
        word: Option<Word>,
    ) -> Result<Self, SurfaceError> {
        let name = name.into();
        if separating != homology.iter().all(|&x| x == 0) {
            return Err(SurfaceError::SeparatingMismatch(name));
        }
        if let Some(w) = &word {
            if w.max_generator() > homology.len() {
                return Err(SurfaceError::DimensionMismatch {
                    expected: homology.len(),
                    found: w.max_generator(),
                });
            }
            let ab = w.exponent_vector(homology.len());
            if ab != homology {
                return Err(SurfaceError::WordClassMismatch {
                    name,
                    word: ab,
                    class: homology,
                });
            }
        }
        Ok(Self {
            name,
            homology,
            separating,
            word,
        })
    }

    /// A curve determined by its class; separating iff the class is zero.
    pub fn from_class(name: impl Into<String>, homology: Vec<i64>) -> Self {
        let separating = homology.iter().all(|&x| x == 0);
        Self::new(name, homology, separating, None).expect("consistent by construction")
    }

    /// A curve given by a word on `2g` generators; the class is its abelianization.
    pub fn from_word(name: impl Into<String>, word: Word, genus: usize) -> Self {
        let homology = word.exponent_vector(2 * genus);
        let separating = homology.iter().all(|&x| x == 0);
        Self::new(name, homology, separating, Some(word)).expect("consistent by construction")
    }

    pub fn genus(&self) -> usize {
        self.homology.len() / 2
    }
}

/// `⟨x, y⟩` for the standard form.
pub fn intersection_pairing(x: &[i64], y: &[i64]) -> Result<i64, SurfaceError> {
    if x.len() != y.len() || x.len() % 2 == 1 {
        return Err(SurfaceError::DimensionMismatch {
            expected: x.len() + x.len() % 2,
            found: y.len(),
        });
    }
    Ok(x.chunks(2)
        .zip(y.chunks(2))
        .map(|(p, q)| p[0] * q[1] - p[1] * q[0])
        .sum())
}

/// Matrix of `x ↦ x − n⟨x, c⟩c`, the action of `t_c^n`.
pub fn transvection_power(c: &[i64], n: i64) -> IntMatrix {
    let dim = c.len();
    let mut m = IntMatrix::identity(dim);
    for j in 0..dim {
        // ⟨e_j, c⟩
        let pair = if j % 2 == 0 { c[j + 1] } else { -c[j - 1] };
        if pair == 0 {
            continue;
        }
        for (i, &ci) in c.iter().enumerate() {
            m[(i, j)] -= BigInt::from(n * pair * ci);
        }
    }
    m
}

pub fn twist_transvection(c: &Curve) -> IntMatrix {
    transvection_power(&c.homology, 1)
}

/// `Mᵀ J M = J`.
pub fn is_symplectic(m: &IntMatrix) -> bool {
    if !m.is_square() || m.rows() % 2 == 1 {
        return false;
    }
    let j = standard_form(m.rows() / 2);
    &(&m.transpose() * &j) * m == j
}

/// `M⁻¹ = −J Mᵀ J` for symplectic `M`.
pub fn symplectic_inverse(m: &IntMatrix) -> IntMatrix {
    let j = standard_form(m.rows() / 2);
    (&(&j * &m.transpose()) * &j).neg()
}

/// Applies a matrix to an `i64` class.
pub fn apply_to_class(m: &IntMatrix, x: &[i64]) -> Vec<i64> {
    let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
    m.apply(&v)
        .into_iter()
        .map(|a| i64::try_from(a).expect("class coordinate exceeds i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_twists() {
        let a = Curve::from_class("a", vec![1, 0]);
        let b = Curve::from_class("b", vec![0, 1]);
        assert_eq!(twist_transvection(&a), IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(twist_transvection(&b), IntMatrix::from_rows(&[vec![1, 0], vec![-1, 1]]));
        let sep = Curve::new("s", vec![0, 0, 0, 0], true, None).unwrap();
        assert!(twist_transvection(&sep).is_identity());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(intersection_pairing(&[1, 0], &[0, 1]), Ok(1));
        assert_eq!(intersection_pairing(&[1, -1, 0, 0], &[-1, -1, 1, 0]), Ok(-2));
        assert!(intersection_pairing(&[1, 0], &[1, 0, 0, 0]).is_err());
    }

    #[test]
    fn symplectic_predicate() {
        assert!(is_symplectic(&IntMatrix::identity(4)));
        assert!(!is_symplectic(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])));
        let t = transvection_power(&[1, -1, 0, 2], 3);
        assert!(is_symplectic(&t));
        assert!((&t * &symplectic_inverse(&t)).is_identity());
    }

    #[test]
    fn curve_validation() {
        assert!(matches!(
            Curve::new("x", vec![0, 0], false, None),
            Err(SurfaceError::SeparatingMismatch(_))
        ));
        let w = Word::new(vec![1, -2]);
        assert!(Curve::new("x", vec![1, -1], false, Some(w.clone())).is_ok());
        assert!(matches!(
            Curve::new("x", vec![1, 1], false, Some(w)),
            Err(SurfaceError::WordClassMismatch { .. })
        ));
    }
}
