use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FinitePresentation, Word};
use crate::exact::{smith_normal_form, IntMatrix, SmithForm};

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| u64::try_from(d).expect("torsion coefficient exceeds u64"))
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The image of an element under the abelianization map, in Smith coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianImage {
    /// Coordinates in the free part.
    pub free: Vec<BigInt>,
    /// Residues, one per torsion factor, reduced into `[0, dᵢ)`.
    pub torsion: Vec<BigInt>,
}

impl AbelianImage {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }
}

/// Abelianization of a presentation with its coordinate change.
///
/// With `U·R·V = D` for the relator exponent matrix `R`, an exponent row vector
/// `x` has Smith coordinates `y = x·V`; coordinates past the rank are free and
/// those with `dᵢ > 1` are read mod `dᵢ`.
#[derive(Clone, Debug)]
pub struct Abelianization {
    generators: usize,
    snf: SmithForm,
}

impl Abelianization {
    pub fn new(p: &FinitePresentation) -> Self {
        let n = p.generator_count();
        let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_vector(n)).collect();
        let m = IntMatrix::from_rows_with_cols(&rows, n);
        Self {
            generators: n,
            snf: smith_normal_form(&m),
        }
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants {
            free_rank: self.generators - self.snf.rank,
            torsion: self.snf.torsion(),
        }
    }

    pub fn smith(&self) -> &SmithForm {
        &self.snf
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Smith coordinates `x·V` of an exponent vector.
    pub fn coordinates(&self, exponents: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(exponents.len(), self.generators);
        (0..self.generators)
            .map(|j| {
                exponents
                    .iter()
                    .enumerate()
                    .map(|(i, x)| x * &self.snf.right[(i, j)])
                    .sum()
            })
            .collect()
    }

    pub fn image_of_exponents(&self, exponents: &[BigInt]) -> AbelianImage {
        let y = self.coordinates(exponents);
        let rank = self.snf.rank;
        let torsion = (0..rank)
            .filter(|&i| !self.snf.divisors[i].is_one())
            .map(|i| y[i].mod_floor(&self.snf.divisors[i]))
            .collect();
        AbelianImage {
            free: y[rank..].to_vec(),
            torsion,
        }
    }

    pub fn image(&self, w: &Word) -> AbelianImage {
        let e: Vec<BigInt> = w
            .exponent_vector(self.generators)
            .into_iter()
            .map(BigInt::from)
            .collect();
        self.image_of_exponents(&e)
    }

    /// Exponent vector of the free-part basis element `k` (a section of the projection).
    pub fn free_generator(&self, k: usize) -> Vec<BigInt> {
        let vinv = self
            .snf
            .right
            .inverse_unimodular()
            .expect("Smith transform is unimodular");
        vinv.row(self.snf.rank + k).to_vec()
    }
}

pub fn abelianize(p: &FinitePresentation) -> AbelianInvariants {
    Abelianization::new(p).invariants()
}

/// Image of `w` in the abelianization; zero exactly when `w` passes the
/// homological test for lying in the derived subgroup.
pub fn commutator_defect(p: &FinitePresentation, w: &Word) -> AbelianImage {
    Abelianization::new(p).image(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::SurfaceGroup;

    #[test]
    fn braid_group() {
        let p = FinitePresentation::parse(&["a", "b"], &["a b a b^-1 a^-1 b^-1"]).unwrap();
        let ab = abelianize(&p);
        assert_eq!(ab.free_rank, 1);
        assert!(ab.torsion.is_empty());
        assert_eq!(ab.to_string(), "Z");
    }

    #[test]
    fn surface_groups_are_free_abelian() {
        for g in 1..4 {
            let ab = abelianize(&SurfaceGroup::new(g).unwrap().presentation());
            assert_eq!(ab.free_rank, 2 * g);
            assert!(ab.torsion.is_empty());
        }
    }

    #[test]
    fn torsion_and_images() {
        let p = FinitePresentation::parse(&["x", "y"], &["x^4", "y^6"]).unwrap();
        let a = Abelianization::new(&p);
        let inv = a.invariants();
        assert_eq!(inv.torsion, vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(inv.order(), Some(BigInt::from(24)));
        assert!(a.image(&p.parse_word("x^4 y^-6").unwrap()).is_zero());
        assert!(!a.image(&p.parse_word("x^2").unwrap()).is_zero());
        let free = FinitePresentation::free(["x", "y"]);
        let xy = free.parse_word("x y").unwrap();
        let c = Word::commutator(&free.parse_word("x").unwrap(), &free.parse_word("y").unwrap());
        assert!(commutator_defect(&free, &c).is_zero());
        assert!(!commutator_defect(&free, &xy).is_zero());
    }

    #[test]
    fn free_generators_are_sections() {
        let p = FinitePresentation::parse(&["x", "y", "z"], &["x y^2 z^-1"]).unwrap();
        let a = Abelianization::new(&p);
        for k in 0..a.invariants().free_rank {
            let img = a.image_of_exponents(&a.free_generator(k));
            for (j, v) in img.free.iter().enumerate() {
                assert_eq!(*v, BigInt::from(u8::from(j == k)));
            }
        }
    }
}
