use num_bigint::BigInt;
use num_traits::Zero;

use super::{AbelianInvariants, Abelianization, FinitePresentation, PresentationError, SurfaceGroup, Word};
use crate::exact::{standard_form, symplectic_basis, F2Vector, IntMatrix};

/// The unramified double cover of a closed surface defined by a nonzero
/// character `χ : H₁(C_g; 𝔽₂) → 𝔽₂`, presented by Reidemeister–Schreier.
///
/// The transversal is `{1, t}` with `t` the first generator on which `χ` is
/// nonzero. The Schreier generator for sheet `r` and base generator `x` is
/// named `x^(r)`; `t^(0)` is trivial and dropped.
///
/// Homology classes are reported in a symplectic basis of `H₁` of the cover
/// (intersection form the standard `J`), computed from the cup product on
/// the two-cell presentation complex.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    base: SurfaceGroup,
    character: F2Vector,
    transversal: usize,
    presentation: FinitePresentation,
    /// `schreier[x][r]`: cover generator number for base generator `x` (0-based) on sheet `r`.
    schreier: Vec<[Option<i32>; 2]>,
    abelianization: Abelianization,
    /// Intersection form on the free Smith coordinates.
    form: IntMatrix,
    /// Columns: a symplectic basis in free Smith coordinates.
    basis: IntMatrix,
    basis_inverse: IntMatrix,
}

/// One connected lift of a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub sheet: usize,
    pub word: Word,
    /// Class in the symplectic basis of `H₁` of the cover.
    pub class: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    /// `χ(w)`; when true the preimage is connected and covers the loop twice.
    pub odd: bool,
    pub lifts: Vec<Lift>,
}

impl LiftResult {
    pub fn classes(&self) -> Vec<Vec<BigInt>> {
        self.lifts.iter().map(|l| l.class.clone()).collect()
    }
}

pub fn reidemeister_schreier_double_cover(
    base: SurfaceGroup,
    character: &F2Vector,
) -> Result<DoubleCover, PresentationError> {
    let n = 2 * base.genus();
    if character.len() != n {
        return Err(PresentationError::CharacterLength {
            expected: n,
            found: character.len(),
        });
    }
    let transversal = (0..n)
        .find(|&i| character.get(i))
        .ok_or(PresentationError::ZeroCharacter)?;

    let base_names = base.generator_names();
    let mut names = Vec::with_capacity(2 * n - 1);
    let mut schreier = vec![[None, None]; n];
    for r in 0..2 {
        for (x, name) in base_names.iter().enumerate() {
            if r == 0 && x == transversal {
                continue;
            }
            names.push(format!("{name}^({r})"));
            schreier[x][r] = Some(names.len() as i32);
        }
    }

    let mut cover = DoubleCover {
        base,
        character: character.clone(),
        transversal,
        presentation: FinitePresentation::free(names),
        schreier,
        abelianization: Abelianization::new(&FinitePresentation::free(Vec::<String>::new())),
        form: IntMatrix::zeros(0, 0),
        basis: IntMatrix::zeros(0, 0),
        basis_inverse: IntMatrix::zeros(0, 0),
    };
    let relator = base.relator();
    let cells: Vec<Word> = (0..2).map(|r| cover.rewrite(&relator, r).0).collect();
    cover.presentation = FinitePresentation::new(cover.presentation.generators().to_vec(), cells.clone())?;
    cover.abelianization = Abelianization::new(&cover.presentation);

    let free_rank = cover.abelianization.invariants().free_rank;
    let rank = cover.abelianization.smith().rank;
    let cocycles: Vec<Vec<BigInt>> = (0..free_rank)
        .map(|k| cover.abelianization.smith().right.column(rank + k))
        .collect();
    let cup = cup_form(&cells, &cocycles);
    let form = cup
        .inverse_unimodular()
        .expect("cup form of a closed surface is unimodular")
        .neg();
    let basis = symplectic_basis(&form).expect("intersection form admits a symplectic basis");
    cover.basis_inverse = basis.inverse_unimodular().expect("symplectic basis is unimodular");
    cover.basis = basis;
    cover.form = form;
    Ok(cover)
}

/// Fox-calculus cup product `(α ∪ β)` summed over the given 2-cells.
fn cup_form(cells: &[Word], cocycles: &[Vec<BigInt>]) -> IntMatrix {
    let k = cocycles.len();
    let mut c = IntMatrix::zeros(k, k);
    for (i, alpha) in cocycles.iter().enumerate() {
        for (j, beta) in cocycles.iter().enumerate() {
            let mut total = BigInt::zero();
            for cell in cells {
                let mut prefix = BigInt::zero();
                for &l in cell.letters() {
                    let x = l.unsigned_abs() as usize - 1;
                    if l > 0 {
                        total += &beta[x] * &prefix;
                        prefix += &alpha[x];
                    } else {
                        prefix -= &alpha[x];
                        total -= &beta[x] * &prefix;
                    }
                }
            }
            c[(i, j)] = total;
        }
    }
    c
}

impl DoubleCover {
    pub fn base(&self) -> SurfaceGroup {
        self.base
    }

    pub fn character(&self) -> &F2Vector {
        &self.character
    }

    /// 0-based index of the base generator used as the nontrivial coset representative.
    pub fn transversal(&self) -> usize {
        self.transversal
    }

    pub fn presentation(&self) -> &FinitePresentation {
        &self.presentation
    }

    pub fn genus(&self) -> usize {
        2 * self.base.genus() - 1
    }

    pub fn homology(&self) -> AbelianInvariants {
        self.abelianization.invariants()
    }

    /// Intersection form in the free Smith coordinates of the cover presentation.
    pub fn smith_form(&self) -> &IntMatrix {
        &self.form
    }

    /// Change of basis from symplectic to free Smith coordinates (columns).
    pub fn symplectic_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn schreier_generator(&self, base_generator: usize, sheet: usize) -> Option<i32> {
        self.schreier[base_generator][sheet]
    }

    /// `χ(w)` for a base word.
    pub fn chi(&self, w: &Word) -> bool {
        self.character
            .eval_integers(&w.exponent_vector(2 * self.base.genus()))
    }

    /// Rewrites a base word starting on `sheet`; returns the Schreier word and the final sheet.
    pub fn rewrite(&self, w: &Word, sheet: usize) -> (Word, usize) {
        let mut r = sheet;
        let mut out = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let x = l.unsigned_abs() as usize - 1;
            let step = usize::from(self.character.get(x));
            if l > 0 {
                if let Some(s) = self.schreier[x][r] {
                    out.push(s);
                }
                r ^= step;
            } else {
                r ^= step;
                if let Some(s) = self.schreier[x][r] {
                    out.push(-s);
                }
            }
        }
        (Word::new(out), r)
    }

    fn exponents(&self, w: &Word) -> Vec<BigInt> {
        w.exponent_vector(self.presentation.generator_count())
            .into_iter()
            .map(BigInt::from)
            .collect()
    }

    fn symplectic_from_free(&self, free: &[BigInt]) -> Vec<BigInt> {
        self.basis_inverse.apply(free)
    }

    /// Class of a closed word in the Schreier generators, in symplectic coordinates.
    pub fn class_of_cover_word(&self, w: &Word) -> Vec<BigInt> {
        let img = self.abelianization.image_of_exponents(&self.exponents(w));
        self.symplectic_from_free(&img.free)
    }

    /// Lifts of a closed base loop.
    pub fn lift_loop(&self, w: &Word) -> LiftResult {
        let odd = self.chi(w);
        let lifts = if odd {
            let (word, _) = self.rewrite(&w.pow(2), 0);
            vec![Lift {
                sheet: 0,
                class: self.class_of_cover_word(&word),
                word,
            }]
        } else {
            (0..2)
                .map(|s| {
                    let (word, _) = self.rewrite(w, s);
                    Lift {
                        sheet: s,
                        class: self.class_of_cover_word(&word),
                        word,
                    }
                })
                .collect()
        };
        LiftResult { odd, lifts }
    }

    /// Matrix of the deck involution on `H₁` in symplectic coordinates.
    pub fn deck_matrix(&self) -> IntMatrix {
        let dim = 2 * self.genus();
        let rank = self.abelianization.smith().rank;
        let vinv = self
            .abelianization
            .smith()
            .right
            .inverse_unimodular()
            .expect("Smith transform is unimodular");
        let t = Word::generator(self.transversal + 1);
        let mut cols = Vec::with_capacity(dim);
        for k in 0..dim {
            // lift the basis vector to an exponent vector, then act generator by generator
            let free = self.basis.column(k);
            let mut y = vec![BigInt::zero(); self.presentation.generator_count()];
            y[rank..].clone_from_slice(&free);
            let x: Vec<BigInt> = (0..y.len())
                .map(|j| y.iter().enumerate().map(|(i, yi)| yi * &vinv[(i, j)]).sum())
                .collect();
            let mut image = vec![BigInt::zero(); x.len()];
            for (g, coeff) in x.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let deck = self.deck_of_generator(g + 1, &t);
                for (slot, e) in image.iter_mut().zip(self.exponents(&deck)) {
                    *slot += coeff * e;
                }
            }
            let img = self.abelianization.image_of_exponents(&image);
            cols.push(self.symplectic_from_free(&img.free));
        }
        IntMatrix::from_columns(&cols, dim)
    }

    /// `t · s · t⁻¹` rewritten, for the Schreier generator `s` with the given number.
    fn deck_of_generator(&self, number: usize, t: &Word) -> Word {
        let (x, r) = self
            .schreier
            .iter()
            .enumerate()
            .find_map(|(x, slots)| {
                slots
                    .iter()
                    .position(|s| *s == Some(number as i32))
                    .map(|r| (x, r))
            })
            .expect("generator number belongs to the cover");
        let rep = |sheet: usize| if sheet == 0 { Word::empty() } else { t.clone() };
        let end = r ^ usize::from(self.character.get(x));
        let s = rep(r)
            .concat(&Word::generator(x + 1))
            .concat(&rep(end).inverse());
        self.rewrite(&t.concat(&s).concat(&t.inverse()), 0).0
    }

    /// Transfer of a base class: the sum of the lifts of each generator over both sheets.
    pub fn transfer(&self, class: &[i64]) -> Vec<BigInt> {
        let n = 2 * self.base.genus();
        assert_eq!(class.len(), n);
        let mut total = vec![BigInt::zero(); self.presentation.generator_count()];
        for (x, &c) in class.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for r in 0..2 {
                if let Some(s) = self.schreier[x][r] {
                    total[s as usize - 1] += BigInt::from(c);
                }
            }
        }
        let img = self.abelianization.image_of_exponents(&total);
        self.symplectic_from_free(&img.free)
    }

    /// Intersection number of two classes given in symplectic coordinates.
    pub fn intersection(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let j = standard_form(self.genus());
        x.iter().zip(j.apply(y)).map(|(a, b)| a * b).sum()
    }
}
