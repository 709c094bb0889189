//! Systems of curves in minimal position, their dual graphs, and geometric presentations.

mod geometric;

use std::collections::VecDeque;
use std::sync::Arc;

use thiserror::Error;

use crate::presentation::PresentationError;
use crate::surface::{intersection_pairing, Curve, SurfaceData};

pub use geometric::{
    build_geometric_presentation, verify_geometric_presentation, BuildOptions, Crossing, GeometricPresentation,
    GeometricReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("intersection table must be {0}×{0}")]
    TableShape(usize),
    #[error("intersection table is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("curve `{0}` has a nonzero self-intersection entry")]
    Diagonal(String),
    #[error("curves `{a}` and `{b}` meet {count} times but their algebraic intersection is {algebraic}")]
    BelowAlgebraic {
        a: String,
        b: String,
        count: u32,
        algebraic: i64,
    },
    #[error("curve `{name}` does not live on a genus-{genus} surface")]
    WrongGenus { name: String, genus: usize },
    #[error("duplicate curve name `{0}`")]
    DuplicateName(String),
    #[error("no relators given")]
    EmptyRelators,
    #[error("relator {0} is trivial after cyclic reduction")]
    TrivialRelator(usize),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Curves with their pairwise geometric intersection numbers.
///
/// That no three curves pass through a common point is assumed, not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSystem {
    surface: SurfaceData,
    curves: Vec<Arc<Curve>>,
    intersections: Vec<Vec<u32>>,
}

impl CurveSystem {
    pub fn new(surface: SurfaceData, curves: Vec<Arc<Curve>>, intersections: Vec<Vec<u32>>) -> Result<Self, CurveError> {
        let n = curves.len();
        if intersections.len() != n || intersections.iter().any(|r| r.len() != n) {
            return Err(CurveError::TableShape(n));
        }
        for (i, c) in curves.iter().enumerate() {
            if c.genus() != surface.genus {
                return Err(CurveError::WrongGenus {
                    name: c.name.clone(),
                    genus: surface.genus,
                });
            }
            if curves[..i].iter().any(|d| d.name == c.name) {
                return Err(CurveError::DuplicateName(c.name.clone()));
            }
            if intersections[i][i] != 0 {
                return Err(CurveError::Diagonal(c.name.clone()));
            }
            for j in 0..i {
                if intersections[i][j] != intersections[j][i] {
                    return Err(CurveError::Asymmetric(i, j));
                }
                let algebraic = intersection_pairing(&c.homology, &curves[j].homology).expect("same genus");
                if u64::from(intersections[i][j]) < algebraic.unsigned_abs() {
                    return Err(CurveError::BelowAlgebraic {
                        a: curves[j].name.clone(),
                        b: c.name.clone(),
                        count: intersections[i][j],
                        algebraic,
                    });
                }
            }
        }
        Ok(Self {
            surface,
            curves,
            intersections,
        })
    }

    /// Intersection counts taken to be the absolute algebraic intersection numbers.
    pub fn with_algebraic_counts(surface: SurfaceData, curves: Vec<Arc<Curve>>) -> Result<Self, CurveError> {
        let table = curves
            .iter()
            .map(|c| {
                curves
                    .iter()
                    .map(|d| {
                        let p = intersection_pairing(&c.homology, &d.homology).unwrap_or(0);
                        p.unsigned_abs() as u32
                    })
                    .collect()
            })
            .collect();
        Self::new(surface, curves, table)
    }

    pub fn surface(&self) -> SurfaceData {
        self.surface
    }

    pub fn curves(&self) -> &[Arc<Curve>] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn intersections(&self) -> &[Vec<u32>] {
        &self.intersections
    }

    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.intersections[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    /// Shortest path along single-point intersections from `start` to any of `targets`.
    pub fn adjacency_path(&self, start: usize, targets: &[usize]) -> Option<Vec<usize>> {
        let n = self.len();
        let mut prev = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            if targets.contains(&v) {
                let mut path = vec![v];
                let mut cur = v;
                while let Some(p) = prev[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for w in 0..n {
                if !seen[w] && self.intersections[v][w] == 1 {
                    seen[w] = true;
                    prev[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Vertices are curves, with one edge per intersection point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<String>,
    /// `(i, j, multiplicity)` with `i < j`.
    pub edges: Vec<(usize, usize, u32)>,
}

impl DualGraph {
    /// Connected components, each sorted, in order of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for &(a, b, _) in &self.edges {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

pub fn dual_graph(r: &CurveSystem) -> DualGraph {
    let n = r.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = r.intersections[i][j];
            if m > 0 {
                edges.push((i, j, m));
            }
        }
    }
    DualGraph {
        vertices: r.curves.iter().map(|c| c.name.clone()).collect(),
        edges,
    }
}

/// Two curves meeting transversally in a single point.
pub fn adjacent(r: &CurveSystem, a: usize, b: usize) -> bool {
    r.intersections[a][b] == 1
}

/// Witness for graph-connectedness: one adjacency path per curve of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphConnection {
    pub connected: bool,
    /// `paths[k]` runs from the `k`-th curve of `R` to a curve of `S`.
    pub paths: Vec<Option<Vec<usize>>>,
}

/// Whether every curve of `r` reaches some curve of `s` through single-point intersections.
///
/// `r` and `s` are index sets into a common system.
pub fn graph_connected_to(system: &CurveSystem, r: &[usize], s: &[usize]) -> GraphConnection {
    let paths: Vec<Option<Vec<usize>>> = r.iter().map(|&i| system.adjacency_path(i, s)).collect();
    GraphConnection {
        connected: paths.iter().all(Option::is_some),
        paths,
    }
}
