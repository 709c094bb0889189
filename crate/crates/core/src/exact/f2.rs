use std::fmt;

/// A vector over the two-element field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vector(Vec<bool>);

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self(bits.iter().map(|&b| b & 1 == 1).collect())
    }

    /// Reduction mod 2 of an integer vector.
    pub fn from_integers(values: &[i64]) -> Self {
        Self(values.iter().map(|v| v.rem_euclid(2) == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    pub fn bits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| u8::from(b)).collect()
    }

    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(false, |acc, (a, b)| acc ^ (a & b))
    }

    /// Evaluates the character on an integer vector.
    pub fn eval_integers(&self, values: &[i64]) -> bool {
        self.dot(&Self::from_integers(values))
    }

    fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= *b;
        }
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2{:?}", self.bits())
    }
}

/// A matrix over the two-element field, stored as rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
}

impl F2Matrix {
    pub fn from_rows(rows: Vec<F2Vector>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged F2 matrix");
        Self { rows, cols }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = F2Vector::zeros(n);
                r.set(i, true);
                r
            })
            .collect();
        Self { rows, cols: n }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn apply(&self, x: &F2Vector) -> F2Vector {
        F2Vector(self.rows.iter().map(|r| r.dot(x)).collect())
    }
}

/// Outcome of [`solve_f2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F2Solution {
    /// A particular solution (free variables set to zero) and the dimension
    /// of the solution space's direction.
    Solved { x: F2Vector, nullity: usize },
    Infeasible,
}

impl F2Solution {
    pub fn solution(&self) -> Option<&F2Vector> {
        match self {
            Self::Solved { x, .. } => Some(x),
            Self::Infeasible => None,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, Self::Solved { nullity: 0, .. })
    }
}

/// Solves `A·x = b` over 𝔽₂ by Gauss–Jordan elimination.
///
/// # Panics
/// Panics if `b` does not have one entry per row of `A`.
pub fn solve_f2(a: &F2Matrix, b: &F2Vector) -> F2Solution {
    assert_eq!(a.rows(), b.len(), "right-hand side has wrong length");
    let mut rows: Vec<(F2Vector, bool)> = a
        .rows
        .iter()
        .cloned()
        .zip(b.0.iter().copied())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0.get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, (row, rhs)) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot_row);
                *rhs ^= pivot_rhs;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return F2Solution::Infeasible;
    }
    let mut x = F2Vector::zeros(a.cols);
    for (i, &c) in pivots.iter().enumerate() {
        x.set(c, rows[i].1);
    }
    F2Solution::Solved {
        x,
        nullity: a.cols - pivots.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_system() {
        let b = F2Vector::from_bits(&[1, 0, 1, 1]);
        let sol = solve_f2(&F2Matrix::identity(4), &b);
        assert_eq!(sol.solution(), Some(&b));
        assert!(sol.is_unique());
    }

    #[test]
    fn inconsistent_duplicate_rows() {
        let r = F2Vector::from_bits(&[1, 1, 0]);
        let a = F2Matrix::from_rows(vec![r.clone(), r], 3);
        let sol = solve_f2(&a, &F2Vector::from_bits(&[0, 1]));
        assert_eq!(sol, F2Solution::Infeasible);
    }

    #[test]
    fn genus_two_vanishing_cycle_system() {
        // v1 = a1, v2 = a1 - b1, v3 = -a1 - b1 + a2, v4 = -b1 - a2 + b2, v5 = b1 + b2
        let classes: [[i64; 4]; 5] = [
            [1, 0, 0, 0],
            [1, -1, 0, 0],
            [-1, -1, 1, 0],
            [0, -1, -1, 1],
            [0, 1, 0, 1],
        ];
        let a = F2Matrix::from_rows(classes.iter().map(|c| F2Vector::from_integers(c)).collect(), 4);
        let targets = F2Vector::from_bits(&[0, 1, 1, 1, 1]);
        let sol = solve_f2(&a, &targets);
        assert!(sol.is_unique());
        let chi = sol.solution().unwrap();
        assert_eq!(a.apply(chi), targets);
        assert_eq!(chi.bits(), vec![0, 1, 0, 0]);
        // the complementary character (1,0,1,1) takes the value 1 on v1
        let complement = F2Vector::from_bits(&[1, 0, 1, 1]);
        assert_ne!(a.apply(&complement), targets);
    }

    fn brute_force(a: &F2Matrix, b: &F2Vector) -> Vec<F2Vector> {
        let n = a.cols();
        (0u32..(1 << n))
            .map(|mask| F2Vector((0..n).map(|i| mask >> i & 1 == 1).collect()))
            .filter(|x| &a.apply(x) == b)
            .collect()
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(rows in 1usize..7, cols in 1usize..8, bits in proptest::collection::vec(0u8..2, 56), rhs in proptest::collection::vec(0u8..2, 7)) {
            let m = F2Matrix::from_rows(
                (0..rows).map(|i| F2Vector::from_bits(&bits[i * 8..i * 8 + cols])).collect(),
                cols,
            );
            let b = F2Vector::from_bits(&rhs[..rows]);
            let all = brute_force(&m, &b);
            match solve_f2(&m, &b) {
                F2Solution::Infeasible => prop_assert!(all.is_empty()),
                F2Solution::Solved { x, nullity } => {
                    prop_assert_eq!(m.apply(&x), b);
                    prop_assert_eq!(all.len(), 1usize << nullity);
                }
            }
        }
    }
}
