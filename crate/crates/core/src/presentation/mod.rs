//! Finite presentations, abelianization and index-two covers of surface groups.

mod abelian;
pub mod catalog;
mod cover;
mod word;

use thiserror::Error;

pub use abelian::{abelianize, commutator_defect, AbelianImage, AbelianInvariants, Abelianization};
pub use cover::{reidemeister_schreier_double_cover, DoubleCover, Lift, LiftResult};
pub use word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word token `{0}`")]
    BadToken(String),
    #[error("relator uses generator {index} but only {count} are declared")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("the zero character defines a disconnected cover")]
    ZeroCharacter,
    #[error("character has {found} entries, expected {expected}")]
    CharacterLength { expected: usize, found: usize },
    #[error("surface genus must be at least 1")]
    ZeroGenus,
}

/// Generators and relators. Relators are kept freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let mut p = Self {
            generators,
            relators: Vec::new(),
        };
        p.add_relators(relators)?;
        Ok(p)
    }

    /// Free group on the given names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self::new(names.into_iter().map(Into::into).collect(), Vec::new())
            .expect("free presentation with duplicate names")
    }

    /// Builds from relator strings such as `"a b a b^-1 a^-1 b^-1"`.
    pub fn parse<S: AsRef<str>>(generators: &[S], relators: &[S]) -> Result<Self, PresentationError> {
        let names: Vec<String> = generators.iter().map(|s| s.as_ref().to_string()).collect();
        let words = relators
            .iter()
            .map(|r| Word::parse(r.as_ref(), &names))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, words)
    }

    fn add_relators(&mut self, relators: Vec<Word>) -> Result<(), PresentationError> {
        for r in relators {
            let m = r.max_generator();
            if m > self.generators.len() {
                return Err(PresentationError::GeneratorOutOfRange {
                    index: m,
                    count: self.generators.len(),
                });
            }
            self.relators.push(r.free_reduce());
        }
        Ok(())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        Word::parse(text, &self.generators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }
}

/// The quotient by the normal closure of `extra`; relators are simply appended.
pub fn quotient_by_normal_closure(
    p: &FinitePresentation,
    extra: &[Word],
) -> Result<FinitePresentation, PresentationError> {
    let mut q = p.clone();
    q.add_relators(extra.to_vec())?;
    Ok(q)
}

/// π₁ of the closed genus-`g` surface on `a₁, b₁, …, a_g, b_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceGroup {
    genus: usize,
}

impl SurfaceGroup {
    pub fn new(genus: usize) -> Result<Self, PresentationError> {
        if genus == 0 {
            return Err(PresentationError::ZeroGenus);
        }
        Ok(Self { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Generator number of `aᵢ` (1-based `i`).
    pub fn a(i: usize) -> i32 {
        (2 * i - 1) as i32
    }

    /// Generator number of `bᵢ` (1-based `i`).
    pub fn b(i: usize) -> i32 {
        (2 * i) as i32
    }

    pub fn generator_names(&self) -> Vec<String> {
        (1..=self.genus)
            .flat_map(|i| [format!("a{i}"), format!("b{i}")])
            .collect()
    }

    /// `[a₁,b₁]⋯[a_g,b_g]`
    pub fn relator(&self) -> Word {
        let mut v = Vec::with_capacity(4 * self.genus);
        for i in 1..=self.genus {
            let (a, b) = (Self::a(i), Self::b(i));
            v.extend_from_slice(&[a, b, -a, -b]);
        }
        Word::new(v)
    }

    pub fn presentation(&self) -> FinitePresentation {
        FinitePresentation::new(self.generator_names(), vec![self.relator()])
            .expect("surface presentation is well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_relator() {
        let s = SurfaceGroup::new(2).unwrap();
        let p = s.presentation();
        assert_eq!(p.format_word(&p.relators()[0]), "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1");
        assert_eq!(SurfaceGroup::new(0), Err(PresentationError::ZeroGenus));
    }

    #[test]
    fn validation() {
        let r = FinitePresentation::new(vec!["x".into()], vec![Word::new(vec![2])]);
        assert!(matches!(r, Err(PresentationError::GeneratorOutOfRange { .. })));
        let d = FinitePresentation::new(vec!["x".into(), "x".into()], vec![]);
        assert!(matches!(d, Err(PresentationError::DuplicateGenerator(_))));
        let p = FinitePresentation::parse(&["x", "y"], &["x y y^-1 x"]).unwrap();
        assert_eq!(p.relators()[0], Word::new(vec![1, 1]));
    }

    #[test]
    fn empty_quotient_is_identity() {
        let p = SurfaceGroup::new(1).unwrap().presentation();
        assert_eq!(quotient_by_normal_closure(&p, &[]).unwrap(), p);
    }
}
