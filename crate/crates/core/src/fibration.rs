//! Invariants of the total space of a Lefschetz fibration read off from its
//! monodromy factorization.
//!
//! Only the homological shadow of a relation can be certified; the
//! mapping-class-group identity is taken as input. Quantities that need more
//! than the formulas here (the signature in general) carry a [`Tagged`]
//! provenance so that computed and supplied values never mix silently.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use thiserror::Error;

use crate::exact::{smith_normal_form, IntMatrix};
use crate::metaplectic::{boundary_multiplicity, szpiro_check, MetaError, SzpiroReport};
use crate::presentation::{abelianize, AbelianInvariants, FinitePresentation, SurfaceGroup};
use crate::surface::{apply_to_class, symplectic_inverse, Curve, SurfaceData};
use crate::words::{evaluate_homological, is_positive, TwistLetter, TwistWord};

pub const RELATION_NOTE: &str = "relation verified homologically; mapping-class-group identity assumed as input";
pub const EULER_EXTENSION_NOTE: &str =
    "euler characteristic over a base of positive genus uses (2-2k)(2-2g) + mu, an extension of the sphere case";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibrationError {
    #[error("curve `{name}` lives in genus {found}, the fiber has genus {expected}")]
    GenusMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("fiber genera differ: {0} and {1}")]
    FiberGenusMismatch(usize, usize),
    #[error("word uses curve `{0}`, which is not declared")]
    UnknownCurve(String),
    #[error("curve `{0}` is declared twice")]
    DuplicateCurve(String),
    #[error("two declarations of `{0}` disagree")]
    ConflictingCurve(String),
    #[error("factorization is not positive")]
    NotPositive,
    #[error("curve `{0}` carries no word in the fundamental group")]
    MissingWords(String),
    #[error("conjugated letter on `{0}` has no known fundamental-group word")]
    ConjugatedVanishingCycle(String),
    #[error("operation needs the base to be a sphere")]
    BaseNotSphere,
    #[error("operation needs a base of positive genus")]
    BaseIsSphere,
    #[error("no commutator data supplied for a base of genus {0}")]
    MissingCommutatorData(usize),
    #[error("commutator data must be {expected} pairs of {dim}×{dim} matrices")]
    BadCommutatorData { expected: usize, dim: usize },
    #[error("signature is unknown")]
    SignatureUnknown,
    #[error("lambda is unknown")]
    LambdaUnknown,
    #[error(transparent)]
    Meta(#[from] MetaError),
}

/// Where a value came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tagged<T> {
    Computed(T),
    ExternalInput(T),
    Unknown,
}

impl<T> Tagged<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Tagged::Computed(v) | Tagged::ExternalInput(v) => Some(v),
            Tagged::Unknown => None,
        }
    }

    /// Applies `f`, keeping the provenance.
    pub fn map<U>(&self, f: impl FnOnce(&T) -> U) -> Tagged<U> {
        match self {
            Tagged::Computed(v) => Tagged::Computed(f(v)),
            Tagged::ExternalInput(v) => Tagged::ExternalInput(f(v)),
            Tagged::Unknown => Tagged::Unknown,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Tagged::Computed(_) => "computed",
            Tagged::ExternalInput(_) => "external",
            Tagged::Unknown => "unknown",
        }
    }
}

impl<T: fmt::Display> fmt::Display for Tagged<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tagged::Computed(v) => write!(f, "{v}"),
            Tagged::ExternalInput(v) => write!(f, "{v} (external)"),
            Tagged::Unknown => write!(f, "unknown"),
        }
    }
}

/// A monodromy factorization over a base of genus `k`.
///
/// Over the sphere the word should be a relation. Over a base of genus `k > 0`
/// it should equal `∏ [ξᵢ, ηᵢ]`, whose images in `Sp(2g, ℤ)` are supplied as
/// `commutator_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    fiber_genus: usize,
    base_genus: usize,
    curves: Vec<Arc<Curve>>,
    word: TwistWord,
    commutator_part: Option<Vec<(IntMatrix, IntMatrix)>>,
}

impl Factorization {
    pub fn new(
        fiber_genus: usize,
        base_genus: usize,
        curves: Vec<Arc<Curve>>,
        word: TwistWord,
        commutator_part: Option<Vec<(IntMatrix, IntMatrix)>>,
    ) -> Result<Self, FibrationError> {
        let mut by_name = BTreeMap::new();
        for c in &curves {
            if c.genus() != fiber_genus {
                return Err(FibrationError::GenusMismatch {
                    name: c.name.clone(),
                    expected: fiber_genus,
                    found: c.genus(),
                });
            }
            if by_name.insert(c.name.as_str(), c).is_some() {
                return Err(FibrationError::DuplicateCurve(c.name.clone()));
            }
        }
        if word.surface.genus != fiber_genus {
            return Err(FibrationError::GenusMismatch {
                name: "word".into(),
                expected: fiber_genus,
                found: word.surface.genus,
            });
        }
        check_letters(&word, &by_name)?;
        if let Some(pairs) = &commutator_part {
            let dim = 2 * fiber_genus;
            let ok = pairs.len() == base_genus
                && pairs
                    .iter()
                    .all(|(x, y)| [x, y].iter().all(|m| m.rows() == dim && m.cols() == dim));
            if !ok {
                return Err(FibrationError::BadCommutatorData {
                    expected: base_genus,
                    dim,
                });
            }
        }
        Ok(Self {
            fiber_genus,
            base_genus,
            curves,
            word,
            commutator_part,
        })
    }

    /// A factorization over the sphere.
    pub fn over_sphere(fiber_genus: usize, curves: Vec<Arc<Curve>>, word: TwistWord) -> Result<Self, FibrationError> {
        Self::new(fiber_genus, 0, curves, word, None)
    }

    pub fn fiber_genus(&self) -> usize {
        self.fiber_genus
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn curves(&self) -> &[Arc<Curve>] {
        &self.curves
    }

    pub fn word(&self) -> &TwistWord {
        &self.word
    }

    pub fn commutator_part(&self) -> Option<&[(IntMatrix, IntMatrix)]> {
        self.commutator_part.as_deref()
    }

    /// Homology classes of the vanishing cycles, one per letter.
    pub fn vanishing_classes(&self) -> Vec<Vec<i64>> {
        self.word
            .letters
            .iter()
            .map(|l| match &l.conjugator {
                Some(phi) => apply_to_class(&evaluate_homological(phi), &l.curve.homology),
                None => l.curve.homology.clone(),
            })
            .collect()
    }

    /// Every vanishing cycle is null-homologous.
    pub fn all_separating(&self) -> bool {
        self.vanishing_classes().iter().all(|c| c.iter().all(|&x| x == 0))
    }
}

fn check_letters(w: &TwistWord, by_name: &BTreeMap<&str, &Arc<Curve>>) -> Result<(), FibrationError> {
    for l in &w.letters {
        match by_name.get(l.curve.name.as_str()) {
            Some(c) if ***c == *l.curve => {}
            Some(_) => return Err(FibrationError::ConflictingCurve(l.curve.name.clone())),
            None => return Err(FibrationError::UnknownCurve(l.curve.name.clone())),
        }
        if let Some(phi) = &l.conjugator {
            check_letters(phi, by_name)?;
        }
    }
    Ok(())
}

/// Outcome of the homological relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    /// Image of the word times the inverse of the expected product.
    pub residual: IntMatrix,
}

/// Over the sphere: the word evaluates to `I`. Over a base of genus `k`: it
/// evaluates to `∏ [ξᵢ, ηᵢ]` with `[ξ, η] = ξηξ⁻¹η⁻¹`.
pub fn check_relation(f: &Factorization) -> Result<RelationCheck, FibrationError> {
    let dim = 2 * f.fiber_genus;
    let target = if f.base_genus == 0 {
        IntMatrix::identity(dim)
    } else {
        let pairs = f
            .commutator_part
            .as_ref()
            .ok_or(FibrationError::MissingCommutatorData(f.base_genus))?;
        pairs.iter().fold(IntMatrix::identity(dim), |acc, (x, y)| {
            let c = &(&(x * y) * &symplectic_inverse(x)) * &symplectic_inverse(y);
            &acc * &c
        })
    };
    let residual = &evaluate_homological(&f.word) * &symplectic_inverse(&target);
    Ok(RelationCheck {
        holds: residual.is_identity(),
        residual,
    })
}

/// Number of singular fibers: the exponent sum of a positive word.
pub fn mu(f: &Factorization) -> Result<i64, FibrationError> {
    if !is_positive(&f.word) {
        return Err(FibrationError::NotPositive);
    }
    Ok(f.word.exponent_sum())
}

/// `(2 − 2k)(2 − 2g) + μ`.
pub fn euler_characteristic(f: &Factorization) -> Result<i64, FibrationError> {
    let g = f.fiber_genus as i64;
    let k = f.base_genus as i64;
    Ok((2 - 2 * k) * (2 - 2 * g) + mu(f)?)
}

/// `π_g` modulo the words of the vanishing cycles.
pub fn pi1_presentation(f: &Factorization) -> Result<FinitePresentation, FibrationError> {
    if f.base_genus != 0 {
        return Err(FibrationError::BaseNotSphere);
    }
    vanishing_quotient(f)
}

fn vanishing_quotient(f: &Factorization) -> Result<FinitePresentation, FibrationError> {
    let surface = SurfaceGroup::new(f.fiber_genus.max(1)).map_err(|_| FibrationError::BaseNotSphere)?;
    let mut relators = vec![surface.relator()];
    for l in &f.word.letters {
        if l.conjugator.is_some() {
            return Err(FibrationError::ConjugatedVanishingCycle(l.curve.name.clone()));
        }
        let w = l
            .curve
            .word
            .as_ref()
            .ok_or_else(|| FibrationError::MissingWords(l.curve.name.clone()))?;
        if !relators.contains(w) {
            relators.push(w.clone());
        }
    }
    Ok(FinitePresentation::new(surface.generator_names(), relators).expect("surface generators"))
}

/// `H₁` of the total space over the sphere: `ℤ^{2g}` modulo the vanishing classes.
pub fn h1_total_space(f: &Factorization) -> Result<AbelianInvariants, FibrationError> {
    if f.base_genus != 0 {
        return Err(FibrationError::BaseNotSphere);
    }
    let dim = 2 * f.fiber_genus;
    let classes = f.vanishing_classes();
    let s = smith_normal_form(&IntMatrix::from_rows_with_cols(&classes, dim));
    let one = BigInt::from(1);
    Ok(AbelianInvariants {
        free_rank: dim - s.rank,
        torsion: s.divisors.iter().filter(|d| **d > one).cloned().collect(),
    })
}

/// Genus one: `4n − μ`. All vanishing cycles separating: `−μ`. Otherwise the
/// external value if given.
pub fn signature(f: &Factorization, external: Option<i64>) -> Result<Tagged<i64>, FibrationError> {
    let mu = mu(f)?;
    if f.base_genus == 0 && f.fiber_genus == 1 {
        let n = boundary_multiplicity(&f.word)?;
        return Ok(Tagged::Computed(4 * n - mu));
    }
    if f.base_genus == 0 && f.all_separating() {
        return Ok(Tagged::Computed(-mu));
    }
    Ok(external.map_or(Tagged::Unknown, Tagged::ExternalInput))
}

/// `λ = (σ + μ)/4`, or an error message when that is not an integer.
pub fn hodge_pairing(sigma: &Tagged<i64>, mu: i64) -> Result<Tagged<Result<i64, String>>, FibrationError> {
    if sigma.value().is_none() {
        return Err(FibrationError::SignatureUnknown);
    }
    Ok(sigma.map(|s| {
        let total = s + mu;
        if total % 4 == 0 {
            Ok(total / 4)
        } else {
            Err(format!("lambda = ({s} + {mu})/4 is not an integer"))
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorelliCertificate {
    Ok { sign_plus_mu: Option<i64> },
    Contradiction(String),
    NotApplicable(String),
}

/// A positive relation over the sphere all of whose vanishing cycles separate
/// would have `λ = 0`, against `λ > 0` for symplectic Lefschetz fibrations.
pub fn torelli_certificate(f: &Factorization, sigma: &Tagged<i64>) -> TorelliCertificate {
    if f.base_genus != 0 {
        return TorelliCertificate::NotApplicable("base is not a sphere".into());
    }
    if f.word.is_empty() || !is_positive(&f.word) {
        return TorelliCertificate::NotApplicable("word is empty or not positive".into());
    }
    if f.all_separating() {
        return TorelliCertificate::Contradiction(
            "every vanishing cycle is separating, so lambda = 0, but lambda > 0 for a symplectic Lefschetz fibration"
                .into(),
        );
    }
    let mu = f.word.exponent_sum();
    match sigma.value() {
        Some(s) if s + mu <= 0 => {
            TorelliCertificate::Contradiction(format!("sign + mu = {} is not positive", s + mu))
        }
        Some(s) => TorelliCertificate::Ok {
            sign_plus_mu: Some(s + mu),
        },
        None => TorelliCertificate::Ok { sign_plus_mu: None },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiuBound {
    pub lambda: i64,
    /// `(4g − 5)/6`.
    pub bound: Ratio<i64>,
    pub passes: bool,
}

/// `λ > (4g − 5)/6`, compared exactly.
pub fn liu_bound(lambda: i64, fiber_genus: usize) -> LiuBound {
    let bound = Ratio::new(4 * fiber_genus as i64 - 5, 6);
    LiuBound {
        lambda,
        bound,
        passes: Ratio::from_integer(lambda) > bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub relation: RelationCheck,
    pub mu: i64,
    pub euler: i64,
    pub h1: Option<AbelianInvariants>,
    pub b1: Option<usize>,
    pub b2: Option<i64>,
    pub signature: Tagged<i64>,
    pub lambda: Tagged<i64>,
    pub c1_squared: Tagged<i64>,
    pub szpiro: Option<SzpiroReport>,
    pub torelli: TorelliCertificate,
    pub liu_bound: Option<LiuBound>,
    pub inconsistencies: Vec<String>,
    pub notes: Vec<String>,
}

pub fn invariant_report(f: &Factorization, external_signature: Option<i64>) -> Result<InvariantReport, FibrationError> {
    let relation = check_relation(f)?;
    let mu = mu(f)?;
    let euler = euler_characteristic(f)?;
    let mut notes = vec![RELATION_NOTE.to_string()];
    if f.base_genus > 0 {
        notes.push(EULER_EXTENSION_NOTE.to_string());
    }
    let mut inconsistencies = Vec::new();
    if !relation.holds {
        inconsistencies.push("word does not satisfy the relation homologically".to_string());
    }

    let h1 = (f.base_genus == 0).then(|| h1_total_space(f)).transpose()?;
    let b1 = h1.as_ref().map(|h| h.free_rank);
    let b2 = b1.map(|b| euler - 2 + 2 * b as i64);

    let signature = signature(f, external_signature)?;
    if let (Tagged::Computed(s), Some(e)) = (&signature, external_signature) {
        if *s != e {
            inconsistencies.push(format!("external signature {e} differs from the computed {s}"));
        }
    }
    if let (Some(s), Some(b2)) = (signature.value(), b2) {
        if s.abs() > b2 {
            inconsistencies.push(format!("|sign| = {} exceeds b2 = {b2}", s.abs()));
        }
    }
    let lambda = match hodge_pairing(&signature, mu) {
        Ok(t) => match t {
            Tagged::Computed(Ok(l)) => Tagged::Computed(l),
            Tagged::ExternalInput(Ok(l)) => Tagged::ExternalInput(l),
            Tagged::Computed(Err(msg)) | Tagged::ExternalInput(Err(msg)) => {
                inconsistencies.push(msg);
                Tagged::Unknown
            }
            Tagged::Unknown => Tagged::Unknown,
        },
        Err(_) => Tagged::Unknown,
    };
    let c1_squared = signature.map(|s| 2 * euler + 3 * s);
    let szpiro = if f.fiber_genus == 1 && f.base_genus == 0 {
        let r = szpiro_check(&f.word)?;
        if !r.sum_identity {
            inconsistencies.push(format!("sum of exponents {} is not 12n = {}", r.sum_exponents, 12 * r.n));
        }
        Some(r)
    } else {
        None
    };
    let torelli = torelli_certificate(f, &signature);
    let liu_bound = lambda.value().map(|l| liu_bound(*l, f.fiber_genus));
    Ok(InvariantReport {
        relation,
        mu,
        euler,
        h1,
        b1,
        b2,
        signature,
        lambda,
        c1_squared,
        szpiro,
        torelli,
        liu_bound,
        inconsistencies,
        notes,
    })
}

/// Gluing along a regular fiber: concatenated words, merged curve lists.
pub fn fiber_sum(f1: &Factorization, f2: &Factorization) -> Result<Factorization, FibrationError> {
    if f1.fiber_genus != f2.fiber_genus {
        return Err(FibrationError::FiberGenusMismatch(f1.fiber_genus, f2.fiber_genus));
    }
    if f1.base_genus != 0 || f2.base_genus != 0 {
        return Err(FibrationError::BaseNotSphere);
    }
    let mut curves = f1.curves.clone();
    for c in &f2.curves {
        match curves.iter().find(|d| d.name == c.name) {
            Some(d) if d == c => {}
            Some(_) => return Err(FibrationError::ConflictingCurve(c.name.clone())),
            None => curves.push(Arc::clone(c)),
        }
    }
    Factorization::over_sphere(f1.fiber_genus, curves, f1.word.concat(&f2.word))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherBaseReport {
    pub relation: RelationCheck,
    /// `π_g` modulo the vanishing cycles, the fiber side of `1 → Γ → π₁(X) → π_k → 1`.
    pub gamma: Option<FinitePresentation>,
    pub gamma_abelianization: Option<AbelianInvariants>,
}

pub fn verify_higher_base(f: &Factorization) -> Result<HigherBaseReport, FibrationError> {
    if f.base_genus == 0 {
        return Err(FibrationError::BaseIsSphere);
    }
    if f.commutator_part.is_none() {
        return Err(FibrationError::MissingCommutatorData(f.base_genus));
    }
    let relation = check_relation(f)?;
    let gamma = vanishing_quotient(f).ok();
    let gamma_abelianization = gamma.as_ref().map(abelianize);
    Ok(HigherBaseReport {
        relation,
        gamma,
        gamma_abelianization,
    })
}

/// `(t_{c₁} ⋯ t_{c_n})^r` with unit exponents.
pub fn cyclic_word(surface: SurfaceData, curves: &[Arc<Curve>], r: usize) -> TwistWord {
    let letters = curves
        .iter()
        .map(|c| TwistLetter::new(Arc::clone(c), 1).expect("nonzero"))
        .collect();
    TwistWord::new(surface, letters).expect("curves match the surface").pow(r)
}
