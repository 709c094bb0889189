//! Builder for geometric presentations.
//!
//! Each relator is drawn as a loop through a hub disk whose boundary carries
//! the edges of the standard `4g`-gon in the order `aᵢ, bᵢ, āᵢ, b̄ᵢ`. A letter
//! `aᵢ` leaves the hub through the `bᵢ` edge and comes back through `b̄ᵢ`; a
//! letter `bᵢ` leaves through `āᵢ` and comes back through `aᵢ`; inverses run
//! the other way. Strands sharing an edge are ordered by (relator, position),
//! reversed on the partner edge since the gluing reverses orientation. Inside
//! the hub consecutive letters are joined by straight chords, and the double
//! points of the immersion are the interleaved chord pairs.
//!
//! Every double point is resolved by a new handle `(a_p, b_p)`: the first
//! branch (in lexicographic chord order) runs over `a_p`, the second over
//! `b_p^{-ε}` where `ε` is the local intersection sign, so the resolved
//! relator curves are disjoint and still kill the same quotient once `a_p`,
//! `b_p` are added.

use std::sync::Arc;

use super::{dual_graph, CurveError, CurveSystem};
use crate::presentation::{abelianize, quotient_by_normal_closure, AbelianInvariants, FinitePresentation, SurfaceGroup, Word};
use crate::surface::{Curve, SurfaceData};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Append a handle with curves `a_h`, `b_h`, `a_h b_h` and route the first
    /// relator once over it, so the system contains non-separating curves.
    pub extra_handle: bool,
}

/// A double point between chord `first` and chord `second`, each `(relator, chord)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// Local intersection sign of the first branch with the second.
    pub sign: i8,
    /// Introduced by a finger move to connect the relator curves.
    pub finger: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricPresentation {
    pub base_genus: usize,
    pub genus: usize,
    pub crossings: Vec<Crossing>,
    pub extra_handle: bool,
    /// Number of leading curves that resolve relators.
    pub relator_curves: usize,
    pub system: CurveSystem,
    pub target: FinitePresentation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Endpoint {
    /// Hub port, `0..4g`.
    port: usize,
    rank: usize,
}

/// Ports used by a letter, as `(exit, entry)`.
fn ports(letter: i32) -> (usize, usize) {
    let x = letter.unsigned_abs() as usize - 1;
    let base = 4 * (x / 2);
    let (out, back) = if x % 2 == 0 { (base + 1, base + 3) } else { (base + 2, base) };
    if letter > 0 {
        (out, back)
    } else {
        (back, out)
    }
}

struct Layout {
    /// `entry[r][k]`, `exit[r][k]`: circle positions of letter `k` of relator `r`.
    entry: Vec<Vec<usize>>,
    exit: Vec<Vec<usize>>,
    points: usize,
}

fn layout(relators: &[Word], genus: usize) -> Layout {
    let mut per_port: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 4 * genus];
    for (r, w) in relators.iter().enumerate() {
        for (k, &l) in w.letters().iter().enumerate() {
            let (a, b) = ports(l);
            per_port[a].push((r, k));
            per_port[b].push((r, k));
        }
    }
    // primary ports (a_i, b_i edges) ascending, partners descending
    for (p, list) in per_port.iter_mut().enumerate() {
        list.sort_unstable();
        if p % 4 >= 2 {
            list.reverse();
        }
    }
    let mut pos = vec![Vec::new(); 4 * genus];
    let mut next = 0;
    for (p, list) in per_port.iter().enumerate() {
        for _ in list {
            pos[p].push(next);
            next += 1;
        }
    }
    let find = |e: Endpoint| pos[e.port][e.rank];
    let mut entry = Vec::new();
    let mut exit = Vec::new();
    for (r, w) in relators.iter().enumerate() {
        let mut en = Vec::new();
        let mut ex = Vec::new();
        for (k, &l) in w.letters().iter().enumerate() {
            let (a, b) = ports(l);
            let rank = |port: usize| per_port[port].iter().position(|&key| key == (r, k)).expect("endpoint registered");
            ex.push(find(Endpoint { port: a, rank: rank(a) }));
            en.push(find(Endpoint { port: b, rank: rank(b) }));
        }
        entry.push(en);
        exit.push(ex);
    }
    Layout {
        entry,
        exit,
        points: next,
    }
}

/// Chord `k` of relator `r` runs from the entry of letter `k` to the exit of letter `k+1`.
fn chord(l: &Layout, r: usize, k: usize) -> (usize, usize) {
    let len = l.entry[r].len();
    (l.entry[r][k], l.exit[r][(k + 1) % len])
}

/// Strictly inside the counterclockwise arc from `p` to `q`.
fn in_ccw_arc(x: usize, p: usize, q: usize) -> bool {
    if p < q {
        p < x && x < q
    } else {
        x > p || x < q
    }
}

fn point(pos: usize, n: usize) -> (f64, f64) {
    let t = std::f64::consts::TAU * pos as f64 / n as f64;
    (t.cos(), t.sin())
}

/// Parameter along `p→q` where it meets the line through `r, s`.
fn crossing_parameter(p: usize, q: usize, r: usize, s: usize, n: usize) -> f64 {
    let (p, q, r, s) = (point(p, n), point(q, n), point(r, n), point(s, n));
    let d1 = (q.0 - p.0, q.1 - p.1);
    let d2 = (s.0 - r.0, s.1 - r.1);
    let denom = d1.0 * d2.1 - d1.1 * d2.0;
    ((r.0 - p.0) * d2.1 - (r.1 - p.1) * d2.0) / denom
}

/// Overall orientation of the hub relative to the surface.
const HUB_ORIENTATION: i8 = 1;

pub fn build_geometric_presentation(
    surface: SurfaceGroup,
    relators: &[Word],
    options: BuildOptions,
) -> Result<GeometricPresentation, CurveError> {
    if relators.is_empty() {
        return Err(CurveError::EmptyRelators);
    }
    let g = surface.genus();
    let target = quotient_by_normal_closure(&surface.presentation(), relators)?;
    let rels: Vec<Word> = relators.iter().map(Word::cyclic_reduce).collect();
    if let Some(i) = rels.iter().position(Word::is_empty) {
        return Err(CurveError::TrivialRelator(i));
    }

    let lay = layout(&rels, g);
    let chords: Vec<(usize, usize)> = rels
        .iter()
        .enumerate()
        .flat_map(|(r, w)| (0..w.len()).map(move |k| (r, k)))
        .collect();
    let mut crossings = Vec::new();
    // parameter along each chord, for ordering insertions
    let mut along: Vec<(usize, usize, f64, usize, i32)> = Vec::new();
    for (i, &c1) in chords.iter().enumerate() {
        let (p, q) = chord(&lay, c1.0, c1.1);
        for &c2 in &chords[i + 1..] {
            let (r, s) = chord(&lay, c2.0, c2.1);
            if in_ccw_arc(r, p, q) == in_ccw_arc(s, p, q) {
                continue;
            }
            let sign = if in_ccw_arc(r, p, q) { HUB_ORIENTATION } else { -HUB_ORIENTATION };
            crossings.push(Crossing {
                first: c1,
                second: c2,
                sign,
                finger: false,
            });
        }
    }

    // connect the relator curves through finger moves if needed
    let comps = relator_components(rels.len(), &crossings);
    for comp in comps.iter().skip(1) {
        for sign in [1, -1] {
            crossings.push(Crossing {
                first: (0, 0),
                second: (comp[0], 0),
                sign,
                finger: true,
            });
        }
    }

    let e = g + crossings.len() + usize::from(options.extra_handle);
    for (idx, c) in crossings.iter().enumerate() {
        let handle = g + idx + 1;
        let a = SurfaceGroup::a(handle);
        let b = SurfaceGroup::b(handle);
        let (p, q) = chord(&lay, c.first.0, c.first.1);
        let (r, s) = chord(&lay, c.second.0, c.second.1);
        let (t1, t2) = if c.finger {
            (f64::INFINITY, f64::INFINITY)
        } else {
            (crossing_parameter(p, q, r, s, lay.points), crossing_parameter(r, s, p, q, lay.points))
        };
        along.push((c.first.0, c.first.1, t1, idx, a));
        along.push((c.second.0, c.second.1, t2, idx, -i32::from(c.sign) * b));
    }
    along.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then(x.2.total_cmp(&y.2)).then(x.3.cmp(&y.3)));

    let mut words: Vec<Vec<i32>> = Vec::new();
    for (r, w) in rels.iter().enumerate() {
        let mut out = Vec::new();
        for (k, &l) in w.letters().iter().enumerate() {
            out.push(l);
            out.extend(along.iter().filter(|x| x.0 == r && x.1 == k).map(|x| x.4));
        }
        words.push(out);
    }
    if options.extra_handle {
        words[0].push(SurfaceGroup::a(e));
    }

    let mut curves: Vec<Arc<Curve>> = words
        .iter()
        .enumerate()
        .map(|(r, w)| Arc::new(Curve::from_word(format!("c{}", r + 1), Word::new(w.clone()), e)))
        .collect();
    let nrel = curves.len();
    let mut handles: Vec<usize> = Vec::new();
    for idx in 0..crossings.len() {
        let h = g + idx + 1;
        handles.push(h);
        curves.push(Arc::new(Curve::from_word(format!("a{h}"), Word::generator(2 * h - 1), e)));
        curves.push(Arc::new(Curve::from_word(format!("b{h}"), Word::generator(2 * h), e)));
    }
    if options.extra_handle {
        curves.push(Arc::new(Curve::from_word(format!("a{e}"), Word::generator(2 * e - 1), e)));
        curves.push(Arc::new(Curve::from_word(format!("b{e}"), Word::generator(2 * e), e)));
        curves.push(Arc::new(Curve::from_word(
            format!("a{e}b{e}"),
            Word::new(vec![SurfaceGroup::a(e), SurfaceGroup::b(e)]),
            e,
        )));
    }

    let n = curves.len();
    let mut table = vec![vec![0u32; n]; n];
    let mut link = |i: usize, j: usize| {
        table[i][j] = 1;
        table[j][i] = 1;
    };
    for (idx, c) in crossings.iter().enumerate() {
        let ai = nrel + 2 * idx;
        let bi = ai + 1;
        link(ai, bi);
        link(bi, c.first.0);
        link(ai, c.second.0);
    }
    if options.extra_handle {
        let (ah, bh, ch) = (n - 3, n - 2, n - 1);
        link(ah, bh);
        link(ah, ch);
        link(bh, ch);
        link(bh, 0);
        link(ch, 0);
    }
    let system = CurveSystem::new(SurfaceData::closed(e), curves, table)?;
    Ok(GeometricPresentation {
        base_genus: g,
        genus: e,
        crossings,
        extra_handle: options.extra_handle,
        relator_curves: nrel,
        system,
        target,
    })
}

fn relator_components(n: usize, crossings: &[Crossing]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for c in crossings {
        let (a, b) = (find(&mut parent, c.first.0), find(&mut parent, c.second.0));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        match comps.iter_mut().find(|c| c[0] == root) {
            Some(c) => c.push(i),
            None => comps.push(vec![i]),
        }
    }
    comps
}

/// Pass/fail per defining condition of a geometric presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricReport {
    pub at_most_one_point: bool,
    pub connected: bool,
    pub genus_formula: bool,
    pub words_present: bool,
    pub target_abelianization: AbelianInvariants,
    pub curve_abelianization: Option<AbelianInvariants>,
}

impl GeometricReport {
    pub fn abelianization_matches(&self) -> bool {
        self.curve_abelianization.as_ref() == Some(&self.target_abelianization)
    }

    pub fn passes(&self) -> bool {
        self.at_most_one_point && self.connected && self.genus_formula && self.words_present && self.abelianization_matches()
    }
}

pub fn verify_geometric_presentation(gp: &GeometricPresentation) -> GeometricReport {
    let sys = &gp.system;
    let at_most_one_point = sys.intersections().iter().flatten().all(|&c| c <= 1);
    let connected = dual_graph(sys).is_connected();
    let genus_formula = gp.genus == gp.base_genus + gp.crossings.len() + usize::from(gp.extra_handle)
        && sys.surface().genus == gp.genus;
    let words: Option<Vec<Word>> = sys.curves().iter().map(|c| c.word.clone()).collect();
    let curve_abelianization = words.as_ref().and_then(|ws| {
        let base = SurfaceGroup::new(gp.genus).ok()?.presentation();
        quotient_by_normal_closure(&base, ws).ok().map(|q| abelianize(&q))
    });
    GeometricReport {
        at_most_one_point,
        connected,
        genus_formula,
        words_present: words.is_some(),
        target_abelianization: abelianize(&gp.target),
        curve_abelianization,
    }
}
