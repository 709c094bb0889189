use std::fmt;

use super::PresentationError;

/// A word in a free group, stored as signed 1-based generator indices.
///
/// `3` is the third generator and `-3` its inverse. Construction does not
/// reduce; call [`Word::free_reduce`] when a reduced representative is needed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    /// # Panics
    /// Panics if a letter is zero.
    pub fn new(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "zero is not a generator index");
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Self(vec![index as i32])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Self(v)
    }

    /// `x y x⁻¹ y⁻¹`
    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// Free reduction followed by cancellation between the two ends.
    pub fn cyclic_reduce(&self) -> Self {
        let mut v = self.free_reduce().0;
        let (mut lo, mut hi) = (0, v.len());
        while hi - lo >= 2 && v[lo] == -v[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        v.truncate(hi);
        v.drain(..lo);
        Self(v)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    /// Lexicographically least rotation, used as the representative of a cyclic word.
    pub fn canonical_rotation(&self) -> Self {
        let n = self.0.len();
        (0..n)
            .map(|k| {
                let mut v = self.0[k..].to_vec();
                v.extend_from_slice(&self.0[..k]);
                v
            })
            .min()
            .map_or_else(Self::empty, Self)
    }

    /// Exponent sum of each generator, the image in ℤⁿ.
    pub fn exponent_vector(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for &l in &self.0 {
            let i = l.unsigned_abs() as usize - 1;
            assert!(i < generators, "letter {l} outside {generators} generators");
            v[i] += i64::from(l.signum());
        }
        v
    }

    /// Parses `name`, `name^k` tokens against a generator list.
    pub fn parse_tokens<S: AsRef<str>>(tokens: &[S], names: &[String]) -> Result<Self, PresentationError> {
        let mut out = Vec::new();
        for tok in tokens {
            let tok = tok.as_ref().trim();
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| PresentationError::BadToken(tok.to_string()))?;
                    (n.trim(), e)
                }
                None => (tok, 1),
            };
            let idx = names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))?;
            let letter = (idx + 1) as i32;
            let l = if exp < 0 { -letter } else { letter };
            out.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(Self(out))
    }

    /// Parses a whitespace-separated word such as `"a1 b1^-1 a2"`. `"1"` is the empty word.
    pub fn parse(text: &str, names: &[String]) -> Result<Self, PresentationError> {
        let tokens: Vec<&str> = text.split_whitespace().filter(|t| *t != "1").collect();
        Self::parse_tokens(&tokens, names)
    }

    /// Token form `gen` / `gen^-1`, one token per letter.
    pub fn to_tokens(&self, names: &[String]) -> Vec<String> {
        self.0
            .iter()
            .map(|&l| {
                let name = &names[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedWord { word: self, names }
    }
}

impl From<Vec<i32>> for Word {
    fn from(v: Vec<i32>) -> Self {
        Self::new(v)
    }
}

struct NamedWord<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for NamedWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.word.to_tokens(self.names).join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn reduction() {
        let w = Word::new(vec![1, 2, -2, -1, 3]);
        assert_eq!(w.free_reduce(), Word::new(vec![3]));
        let c = Word::new(vec![-1, 2, 3, 1]);
        assert_eq!(c.cyclic_reduce(), Word::new(vec![2, 3]));
        assert!(Word::commutator(&Word::generator(1), &Word::generator(1)).free_reduce().is_empty());
    }

    #[test]
    fn rotation_and_parse() {
        let w = Word::new(vec![2, -1, 1]);
        assert_eq!(w.canonical_rotation(), Word::new(vec![-1, 1, 2]));
        let g = names(&["a1", "b1"]);
        let p = Word::parse("a1^2 b1^-1", &g).unwrap();
        assert_eq!(p, Word::new(vec![1, 1, -2]));
        assert_eq!(p.display(&g).to_string(), "a1 a1 b1^-1");
        assert!(matches!(Word::parse("c", &g), Err(PresentationError::UnknownGenerator(_))));
        assert_eq!(Word::parse_tokens(&p.to_tokens(&g), &g).unwrap(), p);
    }
}
