use std::fmt;

use num_integer::Integer;

/// A matrix `[[a, b], [c, d]]` of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 { a: 1, b: 0, c: 0, d: 1 };
    /// `t_a` on `H₁(T²)`.
    pub const A: Sl2 = Sl2 { a: 1, b: 1, c: 0, d: 1 };
    /// `t_b` on `H₁(T²)`.
    pub const B: Sl2 = Sl2 { a: 1, b: 0, c: -1, d: 1 };
    /// Rotation by a quarter turn, conjugating `A` to `B`.
    pub const J: Sl2 = Sl2 { a: 0, b: 1, c: -1, d: 0 };

    /// `None` unless the determinant is one.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Option<Self> {
        let det = a.checked_mul(d)?.checked_sub(b.checked_mul(c)?)?;
        (det == 1).then_some(Self { a, b, c, d })
    }

    /// Some matrix with first column `(x, y)`, which must be primitive.
    pub fn with_first_column(x: i64, y: i64) -> Option<Self> {
        let e = x.extended_gcd(&y);
        if e.gcd != 1 {
            return None;
        }
        // x·e.x + y·e.y = 1, so [[x, −e.y], [y, e.x]] has determinant 1
        Some(Self {
            a: x,
            b: -e.y,
            c: y,
            d: e.x,
        })
    }

    pub fn checked_mul(&self, o: &Self) -> Option<Self> {
        let dot = |p: i64, q: i64, r: i64, s: i64| p.checked_mul(q)?.checked_add(r.checked_mul(s)?);
        Some(Self {
            a: dot(self.a, o.a, self.b, o.c)?,
            b: dot(self.a, o.b, self.b, o.d)?,
            c: dot(self.c, o.a, self.d, o.c)?,
            d: dot(self.c, o.b, self.d, o.d)?,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply(&self, v: (i64, i64)) -> Option<(i64, i64)> {
        Some((
            self.a.checked_mul(v.0)?.checked_add(self.b.checked_mul(v.1)?)?,
            self.c.checked_mul(v.0)?.checked_add(self.d.checked_mul(v.1)?)?,
        ))
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
