use std::collections::HashSet;

use super::{lift_generators, MetaElement, MetaError};

/// Distinct elements `φ Ã₀ φ⁻¹` for `φ` a word of length at most `max_len` in `Ã₀^{±1}, B̃₀^{±1}`.
pub fn conjugates_of_a(max_len: usize) -> Result<Vec<MetaElement>, MetaError> {
    let (a, b, _) = lift_generators(0);
    let letters = [a, a.inverse(), b, b.inverse()];
    let mut conjugators = vec![MetaElement::IDENTITY];
    let mut frontier = vec![MetaElement::IDENTITY];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for l in &letters {
                next.push(x.multiply(l)?);
            }
        }
        conjugators.extend(&next);
        frontier = next;
    }
    let mut out: Vec<MetaElement> = conjugators
        .iter()
        .map(|phi| a.conjugate_by(phi))
        .collect::<Result<HashSet<_>, _>>()?
        .into_iter()
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivitySearch {
    pub conjugates: Vec<MetaElement>,
    pub max_length: usize,
    /// Number of distinct products of each length `0..=⌈max_length/2⌉`.
    pub level_sizes: Vec<usize>,
    /// Shortest length at which a product equals `(I, 0)`.
    pub identity_at: Option<usize>,
}

/// Looks for a nonempty product of at most `max_length` of the given letters equal
/// to `(I, 0)`, meeting in the middle: `xy = 1` iff `y = x⁻¹`.
pub fn positivity_search(conjugates: Vec<MetaElement>, max_length: usize) -> Result<PositivitySearch, MetaError> {
    let half = max_length.div_ceil(2);
    let mut levels: Vec<HashSet<MetaElement>> = vec![HashSet::from([MetaElement::IDENTITY])];
    for _ in 0..half {
        let mut next = HashSet::new();
        for x in levels.last().expect("nonempty") {
            for c in &conjugates {
                next.insert(x.multiply(c)?);
            }
        }
        levels.push(next);
    }
    let identity_at = (1..=max_length).find(|&len| {
        let l1 = len.min(half);
        let l2 = len - l1;
        levels[l1].iter().any(|x| levels[l2].contains(&x.inverse()))
    });
    Ok(PositivitySearch {
        conjugates,
        max_length,
        level_sizes: levels.iter().map(HashSet::len).collect(),
        identity_at,
    })
}
