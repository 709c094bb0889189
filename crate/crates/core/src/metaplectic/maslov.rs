use std::fmt;

use num_integer::Integer;

use super::Sl2;

/// A rational line through the origin, stored as a primitive vector with
/// `y > 0`, or `y = 0` and `x > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LagrangianLine {
    x: i64,
    y: i64,
}

impl LagrangianLine {
    /// `span p`, the reference line `ℓ₀`.
    pub const P: LagrangianLine = LagrangianLine { x: 1, y: 0 };
    /// `span q`.
    pub const Q: LagrangianLine = LagrangianLine { x: 0, y: 1 };

    /// The span of `(x, y)`; `None` for the zero vector.
    pub fn new(x: i64, y: i64) -> Option<Self> {
        if x == 0 && y == 0 {
            return None;
        }
        let g = x.gcd(&y);
        let (mut x, mut y) = (x / g, y / g);
        if y < 0 || (y == 0 && x < 0) {
            x = -x;
            y = -y;
        }
        Some(Self { x, y })
    }

    pub fn direction(&self) -> (i64, i64) {
        (self.x, self.y)
    }

    /// Angle in `[0, π)`.
    pub fn angle(&self) -> f64 {
        (self.y as f64).atan2(self.x as f64)
    }

    /// The angle as a fraction of `π` when it is one of `0, π/4, π/2, 3π/4`.
    pub fn standard_angle(&self) -> Option<(i64, i64)> {
        match (self.x, self.y) {
            (1, 0) => Some((0, 1)),
            (1, 1) => Some((1, 4)),
            (0, 1) => Some((1, 2)),
            (-1, 1) => Some((3, 4)),
            _ => None,
        }
    }

    pub fn transform(&self, g: &Sl2) -> Option<Self> {
        let (x, y) = g.apply((self.x, self.y))?;
        Self::new(x, y)
    }
}

impl fmt::Display for LagrangianLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span({}, {})", self.x, self.y)
    }
}

fn omega(v: &LagrangianLine, w: &LagrangianLine) -> i128 {
    i128::from(v.x) * i128::from(w.y) - i128::from(v.y) * i128::from(w.x)
}

/// Maslov index of three lines: `0` unless all distinct, otherwise `+1` when
/// they occur counterclockwise on `ℝℙ¹` and `−1` otherwise.
pub fn maslov_index(l1: &LagrangianLine, l2: &LagrangianLine, l3: &LagrangianLine) -> i8 {
    if l1 == l2 || l2 == l3 || l1 == l3 {
        return 0;
    }
    // with the normalization above, θ(v) < θ(w) iff ω(v, w) > 0
    let lt = |v, w| omega(v, w) > 0;
    let ccw = (lt(l1, l2) && lt(l2, l3)) || (lt(l2, l3) && lt(l3, l1)) || (lt(l3, l1) && lt(l1, l2));
    let index = if ccw { 1 } else { -1 };
    debug_assert_eq!(index, maslov_index_by_signature(l1, l2, l3));
    index
}

/// The same index as the signature of `Q(x₁, x₂, x₃) = ω(x₁,x₂) + ω(x₂,x₃) + ω(x₃,x₁)`
/// on `ℓ₁ ⊕ ℓ₂ ⊕ ℓ₃`.
pub fn maslov_index_by_signature(l1: &LagrangianLine, l2: &LagrangianLine, l3: &LagrangianLine) -> i8 {
    // twice the Gram matrix on the direction vectors: zero diagonal,
    // off-diagonal entries x, y, z
    let (x, y, z) = (omega(l1, l2), omega(l2, l3), omega(l3, l1));
    // characteristic polynomial λ³ − (x² + y² + z²)λ − 2xyz
    let coeffs = [1, 0, -(x * x + y * y + z * z), -2 * x * y * z];
    signature_of_real_rooted(&coeffs)
}

/// Positive minus negative roots of a real-rooted polynomial, by Descartes' rule.
fn signature_of_real_rooted(coeffs: &[i128]) -> i8 {
    let changes = |c: &[i128]| {
        let nz: Vec<i128> = c.iter().copied().filter(|&a| a != 0).collect();
        nz.windows(2).filter(|w| (w[0] > 0) != (w[1] > 0)).count() as i8
    };
    let deg = coeffs.len() - 1;
    let flipped: Vec<i128> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| if (deg - i) % 2 == 1 { -c } else { c })
        .collect();
    changes(coeffs) - changes(&flipped)
}

/// `τ_ℓ(g, h) = τ(ℓ, gℓ, ghℓ)`.
pub fn cocycle(g: &Sl2, h: &Sl2, l: &LagrangianLine) -> Option<i8> {
    let gl = l.transform(g)?;
    let ghl = l.transform(&g.checked_mul(h)?)?;
    Some(maslov_index(l, &gl, &ghl))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(LagrangianLine::new(-2, -4), LagrangianLine::new(1, 2));
        assert_eq!(LagrangianLine::new(-3, 0), Some(LagrangianLine::P));
        assert_eq!(LagrangianLine::new(0, 0), None);
    }

    #[test]
    fn standard_triple() {
        let pq = LagrangianLine::new(1, 1).unwrap();
        assert_eq!(maslov_index(&LagrangianLine::P, &pq, &LagrangianLine::Q), 1);
        assert_eq!(maslov_index_by_signature(&LagrangianLine::P, &pq, &LagrangianLine::Q), 1);
        assert_eq!(maslov_index(&LagrangianLine::Q, &pq, &LagrangianLine::P), -1);
        assert_eq!(maslov_index(&pq, &pq, &LagrangianLine::P), 0);
    }
}
