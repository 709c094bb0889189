use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// The standard form `J = ⊕ [[0,1],[-1,0]]` of size `2h`.
pub fn standard_form(h: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * h, 2 * h);
    for i in 0..h {
        j[(2 * i, 2 * i + 1)] = BigInt::one();
        j[(2 * i + 1, 2 * i)] = -BigInt::one();
    }
    j
}

fn pair(g: &IntMatrix, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let gy = g.apply(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Finds `P` with `Pᵀ·G·P = J` for a unimodular antisymmetric `G`.
///
/// The columns of `P` are a symplectic basis `e₁, f₁, e₂, f₂, …` written in the
/// coordinates of `G`. Returns `None` if `G` is not antisymmetric or not unimodular.
pub fn symplectic_basis(g: &IntMatrix) -> Option<IntMatrix> {
    let n = g.rows();
    if !g.is_square() || n % 2 == 1 || g.transpose() != g.neg() {
        return None;
    }
    let mut pool: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut basis = Vec::with_capacity(n);

    while let Some(e) = pool.first().cloned() {
        pool.remove(0);
        // Euclid on the pairings with e until a single partner remains.
        loop {
            let mut nonzero: Vec<(usize, BigInt)> = pool
                .iter()
                .enumerate()
                .map(|(k, v)| (k, pair(g, &e, v)))
                .filter(|(_, p)| !p.is_zero())
                .collect();
            if nonzero.is_empty() {
                return None;
            }
            nonzero.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
            if nonzero.len() == 1 {
                break;
            }
            let (j, pj) = nonzero[0].clone();
            let src = pool[j].clone();
            for (k, pk) in &nonzero[1..] {
                let q = -(pk / &pj);
                axpy(&mut pool[*k], &q, &src);
            }
        }
        let j = pool.iter().position(|v| !pair(g, &e, v).is_zero())?;
        let mut f = pool.remove(j);
        let p = pair(g, &e, &f);
        if !p.abs().is_one() {
            return None;
        }
        if p.is_negative() {
            f.iter_mut().for_each(|x| *x = -&*x);
        }
        for v in pool.iter_mut() {
            let ge = pair(g, &e, v);
            let gf = pair(g, &f, v);
            axpy(v, &gf, &e);
            axpy(v, &-ge, &f);
        }
        basis.push(e);
        basis.push(f);
    }
    let p = IntMatrix::from_columns(&basis, n);
    debug_assert_eq!(&(&p.transpose() * g) * &p, standard_form(n / 2));
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn standard_is_fixed_up_to_sign() {
        let j = standard_form(2);
        let p = symplectic_basis(&j).unwrap();
        assert_eq!(&(&p.transpose() * &j) * &p, j);
        assert!(symplectic_basis(&IntMatrix::from_rows(&[vec![0, 2], vec![-2, 0]])).is_none());
        assert!(symplectic_basis(&IntMatrix::identity(2)).is_none());
    }

    fn random_unimodular(ops: &[(usize, usize, i64)], n: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        for &(i, j, c) in ops {
            if i % n != j % n {
                m.add_row_multiple(i % n, j % n, &BigInt::from(c));
            }
        }
        m
    }

    proptest! {
        #[test]
        fn recovers_congruent_forms(ops in proptest::collection::vec((0usize..6, 0usize..6, -3i64..4), 0..12)) {
            let q = random_unimodular(&ops, 6);
            let g = &(&q.transpose() * &standard_form(3)) * &q;
            let p = symplectic_basis(&g).unwrap();
            prop_assert_eq!(&(&p.transpose() * &g) * &p, standard_form(3));
            prop_assert!(p.inverse_unimodular().is_some());
        }
    }
}
