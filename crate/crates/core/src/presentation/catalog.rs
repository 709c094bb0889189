//! Standard presentations used throughout the examples.

use super::{FinitePresentation, Word};

/// `⟨t_a, t_b | t_a t_b t_a = t_b t_a t_b⟩`, the mapping class group of the once-holed torus.
pub fn braid_map11() -> FinitePresentation {
    FinitePresentation::parse(&["ta", "tb"], &["ta tb ta tb^-1 ta^-1 tb^-1"]).expect("static presentation")
}

/// `⟨x, y | x⁶, y⁴, x³y⁻²⟩`, the amalgam `ℤ/4 *_{ℤ/2} ℤ/6 ≅ SL(2,ℤ)`.
pub fn sl2z_amalgam() -> FinitePresentation {
    FinitePresentation::parse(&["x", "y"], &["x^6", "y^4", "x^3 y^-2"]).expect("static presentation")
}

/// Wajnryb's presentation of `Map_{2,1}` on the chain twists `t₁, …, t₅`.
pub fn wajnryb_map21() -> FinitePresentation {
    let names: Vec<String> = (1..=5).map(|i| format!("t{i}")).collect();
    let t = |i: i32| Word::new(vec![i]);
    let mut relators = Vec::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            let (ti, tj) = (t(i), t(j));
            if j - i == 1 {
                let lhs = ti.concat(&tj).concat(&ti);
                let rhs = tj.concat(&ti).concat(&tj);
                relators.push(lhs.concat(&rhs.inverse()));
            } else {
                relators.push(Word::commutator(&ti, &tj));
            }
        }
    }
    let lhs = Word::new(vec![1, 2, 3]).pow(4);
    let c = Word::new(vec![4, 3, 2, 1, 1, 2, 3, 4]);
    let rhs = t(5).concat(&c.inverse()).concat(&t(5)).concat(&c);
    relators.push(lhs.concat(&rhs.inverse()));
    FinitePresentation::new(names, relators).expect("static presentation")
}
