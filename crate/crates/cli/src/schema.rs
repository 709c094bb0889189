//! JSON input formats.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use twistlab::exact::IntMatrix;
use twistlab::fibration::{Factorization, FibrationError};
use twistlab::presentation::{FinitePresentation, PresentationError, SurfaceGroup, Word};
use twistlab::surface::{Curve, SurfaceData, SurfaceError};
use twistlab::words::{TwistLetter, TwistWord, WordError};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("curve `{name}`: homology has {found} entries, expected {expected}")]
    HomologyLength { name: String, expected: usize, found: usize },
    #[error("curve `{0}`: {1}")]
    Curve(String, SurfaceError),
    #[error("curve `{0}`: {1}")]
    CurveWord(String, PresentationError),
    #[error("fiber genus must be positive")]
    ZeroGenus,
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("matrix rows must have equal length")]
    Ragged,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub name: String,
    pub homology: Vec<i64>,
    pub separating: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterSpec {
    pub curve: String,
    pub exponent: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<Vec<LetterSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixPair {
    pub xi: Vec<Vec<i64>>,
    pub eta: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub fiber_genus: usize,
    #[serde(default)]
    pub base_genus: usize,
    pub curves: Vec<CurveSpec>,
    pub word: Vec<LetterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutator_part: Option<Vec<MatrixPair>>,
}

/// A finitely presented group; relators are whitespace-separated tokens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    /// Checked by `verify`, in the notation `Z^2 + Z/10`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_abelianization: Option<String>,
}

/// Relators on the closed surface group of the given genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceQuotientFile {
    #[serde(alias = "g")]
    pub genus: usize,
    pub relators: Vec<String>,
    #[serde(default)]
    pub extra_handle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputFile {
    Factorization(FactorizationFile),
    Presentation(PresentationFile),
    SurfaceQuotient(SurfaceQuotientFile),
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        // untagged errors are uninformative; retry the likely shape for the message
        serde_json::from_str(text).map_err(|e| {
            let v: Result<serde_json::Value, _> = serde_json::from_str(text);
            match v {
                Ok(v) if v.get("fiber_genus").is_some() => {
                    SchemaError::Json(serde_json::from_value::<FactorizationFile>(v).expect_err("failed above"))
                }
                Ok(v) if v.get("generators").is_some() => {
                    SchemaError::Json(serde_json::from_value::<PresentationFile>(v).expect_err("failed above"))
                }
                _ => SchemaError::Json(e),
            }
        })
    }
}

fn matrix(rows: &[Vec<i64>]) -> Result<IntMatrix, SchemaError> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(SchemaError::Ragged);
    }
    Ok(IntMatrix::from_rows_with_cols(rows, cols))
}

impl FactorizationFile {
    pub fn to_factorization(&self) -> Result<Factorization, SchemaError> {
        if self.fiber_genus == 0 {
            return Err(SchemaError::ZeroGenus);
        }
        let g = self.fiber_genus;
        let names = SurfaceGroup::new(g)?.generator_names();
        let mut curves = Vec::new();
        for c in &self.curves {
            if c.homology.len() != 2 * g {
                return Err(SchemaError::HomologyLength {
                    name: c.name.clone(),
                    expected: 2 * g,
                    found: c.homology.len(),
                });
            }
            let word = c
                .word
                .as_ref()
                .map(|t| Word::parse_tokens(t, &names))
                .transpose()
                .map_err(|e| SchemaError::CurveWord(c.name.clone(), e))?;
            let curve = Curve::new(c.name.clone(), c.homology.clone(), c.separating, word)
                .map_err(|e| SchemaError::Curve(c.name.clone(), e))?;
            curves.push(Arc::new(curve));
        }
        let surface = SurfaceData::closed(g);
        let word = letters_to_word(&self.word, &curves, surface)?;
        let pairs = self
            .commutator_part
            .as_ref()
            .map(|ps| {
                ps.iter()
                    .map(|p| Ok((matrix(&p.xi)?, matrix(&p.eta)?)))
                    .collect::<Result<Vec<_>, SchemaError>>()
            })
            .transpose()?;
        Ok(Factorization::new(g, self.base_genus, curves, word, pairs)?)
    }
}

fn letters_to_word(letters: &[LetterSpec], curves: &[Arc<Curve>], surface: SurfaceData) -> Result<TwistWord, SchemaError> {
    let mut out = Vec::new();
    for l in letters {
        let curve = curves
            .iter()
            .find(|c| c.name == l.curve)
            .ok_or_else(|| SchemaError::UnknownCurve(l.curve.clone()))?;
        let mut letter = TwistLetter::new(Arc::clone(curve), l.exponent)?;
        if let Some(phi) = &l.conjugator {
            letter = letter.conjugated(letters_to_word(phi, curves, surface)?);
        }
        out.push(letter);
    }
    Ok(TwistWord::new(surface, out)?)
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<FinitePresentation, SchemaError> {
        Ok(FinitePresentation::parse(&self.generators, &self.relators)?)
    }

    pub fn from_presentation(p: &FinitePresentation) -> Self {
        Self {
            description: None,
            generators: p.generators().to_vec(),
            relators: p.relators().iter().map(|r| p.format_word(r)).collect(),
            expected_abelianization: None,
        }
    }
}

impl SurfaceQuotientFile {
    pub fn to_words(&self) -> Result<(SurfaceGroup, Vec<Word>), SchemaError> {
        let s = SurfaceGroup::new(self.genus)?;
        let names = s.generator_names();
        let words = self
            .relators
            .iter()
            .map(|r| Word::parse(r, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((s, words))
    }
}
