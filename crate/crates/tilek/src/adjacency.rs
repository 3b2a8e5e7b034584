//! Adjacency-matrix pairs for the five polygon systems, and the structural
//! checks (symmetry, commutation, unique common extensions, no sources,
//! unambiguous factorization) that make a commuting pair the 1-skeleton of a
//! 2-rank graph.
//!
//! Every entry is decided by evaluating the defining condition on the two
//! boundary words, not by a closed-form shortcut, so the checks below are
//! independent evidence rather than restatements of the construction.

use crate::graph::BipartiteGraph;
use crate::polygon::{
    enumerate_pointed, enumerate_pointed_quartered, enumerate_unpointed, PointedPolygon,
    PolygonError,
};
use serde_json::json;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdjacencyError {
    #[error("unknown system kind {0:?}")]
    UnknownKind(String),
    #[error("{kind} requires t = 2, got {got}")]
    TileNeedsT2 { kind: &'static str, got: u32 },
    #[error("pointed-reflect requires an even t, got {0}")]
    ReflectNeedsEvenT(u32),
    #[error("t must be at least 1")]
    TZero,
    #[error("matrices have different polygon indexings")]
    IndexMismatch,
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// The five system flavours, each carrying its half-side count t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// Pointed tiles, t = 2.
    PointedTile,
    /// Unpointed tiles, t = 2.
    UnpointedTile,
    /// Pointed 2t-gons with reflection adjacency, t even.
    PointedReflect { t: u32 },
    /// Unpointed 2t-gons, any t.
    UnpointedPolygon { t: u32 },
    /// Pointed 2t-gons with opposite-orientation adjacency, any t.
    PointedStar { t: u32 },
}

impl SystemKind {
    /// Construct from the CLI name and a t value, enforcing the per-kind
    /// t-constraints.
    pub fn new(tag: &str, t: u32) -> Result<Self, AdjacencyError> {
        let kind = match tag {
            "pointed-tile" => {
                if t != 2 {
                    return Err(AdjacencyError::TileNeedsT2 {
                        kind: "pointed-tile",
                        got: t,
                    });
                }
                SystemKind::PointedTile
            }
            "unpointed-tile" => {
                if t != 2 {
                    return Err(AdjacencyError::TileNeedsT2 {
                        kind: "unpointed-tile",
                        got: t,
                    });
                }
                SystemKind::UnpointedTile
            }
            "pointed-reflect" => SystemKind::PointedReflect { t },
            "unpointed-polygon" => SystemKind::UnpointedPolygon { t },
            "pointed-star" => SystemKind::PointedStar { t },
            other => return Err(AdjacencyError::UnknownKind(other.to_string())),
        };
        kind.validate()?;
        Ok(kind)
    }

    fn validate(self) -> Result<(), AdjacencyError> {
        if self.t() == 0 {
            return Err(AdjacencyError::TZero);
        }
        if let SystemKind::PointedReflect { t } = self {
            if t % 2 != 0 {
                return Err(AdjacencyError::ReflectNeedsEvenT(t));
            }
        }
        Ok(())
    }

    pub fn t(self) -> u32 {
        match self {
            SystemKind::PointedTile | SystemKind::UnpointedTile => 2,
            SystemKind::PointedReflect { t }
            | SystemKind::UnpointedPolygon { t }
            | SystemKind::PointedStar { t } => t,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            SystemKind::PointedTile => "pointed-tile",
            SystemKind::UnpointedTile => "unpointed-tile",
            SystemKind::PointedReflect { .. } => "pointed-reflect",
            SystemKind::UnpointedPolygon { .. } => "unpointed-polygon",
            SystemKind::PointedStar { .. } => "pointed-star",
        }
    }

    pub fn is_pointed(self) -> bool {
        matches!(
            self,
            SystemKind::PointedTile | SystemKind::PointedReflect { .. } | SystemKind::PointedStar { .. }
        )
    }

    /// Matrix dimension for a given graph: `2t |E|` pointed, `|E|` unpointed.
    pub fn dimension(self, g: &BipartiteGraph) -> usize {
        if self.is_pointed() {
            2 * self.t() as usize * g.edge_count()
        } else {
            g.edge_count()
        }
    }

    pub fn all_names() -> [&'static str; 5] {
        [
            "pointed-tile",
            "unpointed-tile",
            "pointed-reflect",
            "unpointed-polygon",
            "pointed-star",
        ]
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (t={})", self.cli_name(), self.t())
    }
}

/// A 0/1 adjacency matrix over an ordered polygon list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    name: String,
    index: Arc<Vec<PointedPolygon>>,
    dim: usize,
    entries: Vec<u8>,
}

impl AdjacencyMatrix {
    fn build(
        name: &str,
        index: Arc<Vec<PointedPolygon>>,
        mut pred: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let dim = index.len();
        let mut entries = vec![0u8; dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                if pred(a, b) {
                    entries[a * dim + b] = 1;
                }
            }
        }
        AdjacencyMatrix {
            name: name.to_string(),
            index,
            dim,
            entries,
        }
    }

    /// Directly supplied entries; mainly for tests and synthetic skeletons.
    pub fn from_entries(name: &str, index: Vec<PointedPolygon>, entries: Vec<u8>) -> Self {
        let dim = index.len();
        assert_eq!(entries.len(), dim * dim, "entry count is not dim^2");
        assert!(entries.iter().all(|&e| e <= 1), "entries must be 0/1");
        AdjacencyMatrix {
            name: name.to_string(),
            index: Arc::new(index),
            dim,
            entries,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The ordered polygon list defining row/column order. For unpointed
    /// kinds these are the class representatives.
    pub fn index(&self) -> &[PointedPolygon] {
        &self.index
    }

    pub fn entry(&self, a: usize, b: usize) -> u8 {
        self.entries[a * self.dim + b]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.dim)
            .map(|a| (0..self.dim).filter(|&b| self.entry(a, b) == 1).count())
            .collect()
    }

    fn partner_lists(&self) -> Vec<Vec<usize>> {
        (0..self.dim)
            .map(|a| (0..self.dim).filter(|&b| self.entry(a, b) == 1).collect())
            .collect()
    }

    pub fn same_index(&self, other: &AdjacencyMatrix) -> bool {
        Arc::ptr_eq(&self.index, &other.index) || self.index == other.index
    }

    /// CSV rows of 0/1.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for a in 0..self.dim {
            for b in 0..self.dim {
                if b > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", self.entry(a, b));
            }
            out.push('\n');
        }
        out
    }

    /// JSON object with run-length encoded entries (row-major
    /// `[value, run]` pairs).
    pub fn to_json(&self) -> serde_json::Value {
        let mut runs: Vec<(u8, usize)> = Vec::new();
        for &e in &self.entries {
            match runs.last_mut() {
                Some((v, n)) if *v == e => *n += 1,
                _ => runs.push((e, 1)),
            }
        }
        json!({
            "dimension": self.dim,
            "kind": self.name,
            "row_sums": self.row_sums(),
            "entries": runs.iter().map(|(v, n)| json!([v, n])).collect::<Vec<_>>(),
        })
    }
}

// The defining boundary-word conditions. `a` and `b` range over stored
// polygons, so only the conditions written here are enforced.

/// Horizontal tile adjacency: `y_1 = ~y_4` and `x_1 != ~x_3` (t = 2).
fn tile_horizontal(a: &PointedPolygon, b: &PointedPolygon) -> bool {
    a.v_label(0) == b.v_label(1).bar() && a.u_label(0) != b.u_label(0).bar()
}

/// Vertical tile adjacency: `x_2 = ~x_3` and `y_1 != ~y_3` (t = 2).
fn tile_vertical(a: &PointedPolygon, b: &PointedPolygon) -> bool {
    a.u_label(1) == b.u_label(0).bar() && a.v_label(0) != b.v_label(0).bar()
}

/// V-adjacency: b is the edge reflection of a with every U-slot relabelled.
fn v_adjacent(a: &PointedPolygon, b: &PointedPolygon) -> bool {
    let r = a.reflect();
    b.v_labels() == r.v_labels()
        && (0..a.t()).all(|k| b.u_label(k) != r.u_label(k))
}

/// U-adjacency (even t): b is the vertex reflection of a with every V-slot
/// relabelled.
fn u_adjacent(a: &PointedPolygon, b: &PointedPolygon) -> bool {
    let r = a.reflect_through_vertices();
    b.u_labels() == r.u_labels()
        && (0..a.t()).all(|k| b.v_label(k) != r.v_label(k))
}

/// U*-adjacency (any t): same reflection as V-adjacency but keeping the
/// U-slots and relabelling every V-slot.
fn u_star_adjacent(a: &PointedPolygon, b: &PointedPolygon) -> bool {
    let r = a.reflect();
    b.u_labels() == r.u_labels()
        && (0..a.t()).all(|k| b.v_label(k) != r.v_label(k))
}

/// Build the adjacency pair of a system.
///
/// The first matrix is always the one whose t = 2 specialisation is the
/// horizontal tile matrix: `M1`, `M1'`, `MV`, `MV'` or `MV*`; the second is
/// the vertical counterpart.
pub fn build_pair(
    g: &BipartiteGraph,
    kind: SystemKind,
) -> Result<(AdjacencyMatrix, AdjacencyMatrix), AdjacencyError> {
    kind.validate()?;
    let t = kind.t();
    match kind {
        SystemKind::PointedTile => {
            let index = Arc::new(enumerate_pointed_quartered(g, 2)?);
            Ok(pointed_pair("M1", "M2", index, tile_horizontal, tile_vertical))
        }
        SystemKind::PointedReflect { .. } => {
            let index = Arc::new(enumerate_pointed_quartered(g, t)?);
            Ok(pointed_pair("MV", "MU", index, v_adjacent, u_adjacent))
        }
        SystemKind::PointedStar { .. } => {
            let index = Arc::new(enumerate_pointed(g, t)?);
            Ok(pointed_pair("MV*", "MU*", index, v_adjacent, u_star_adjacent))
        }
        SystemKind::UnpointedTile => Ok(unpointed_pair(g, 2, "M1'", "M2'", tile_horizontal, tile_vertical)?),
        SystemKind::UnpointedPolygon { .. } => {
            Ok(unpointed_pair(g, t, "MV'", "MU'", v_adjacent, u_star_adjacent)?)
        }
    }
}

fn pointed_pair(
    first_name: &str,
    second_name: &str,
    index: Arc<Vec<PointedPolygon>>,
    first: impl Fn(&PointedPolygon, &PointedPolygon) -> bool,
    second: impl Fn(&PointedPolygon, &PointedPolygon) -> bool,
) -> (AdjacencyMatrix, AdjacencyMatrix) {
    let m1 = AdjacencyMatrix::build(first_name, Arc::clone(&index), |a, b| {
        first(&index[a], &index[b])
    });
    let m2 = AdjacencyMatrix::build(second_name, Arc::clone(&index), |a, b| {
        second(&index[a], &index[b])
    });
    (m1, m2)
}

/// Class lift: two unpointed classes are adjacent when some pointed
/// representatives are.
fn unpointed_pair(
    g: &BipartiteGraph,
    t: u32,
    first_name: &str,
    second_name: &str,
    first: impl Fn(&PointedPolygon, &PointedPolygon) -> bool,
    second: impl Fn(&PointedPolygon, &PointedPolygon) -> bool,
) -> Result<(AdjacencyMatrix, AdjacencyMatrix), AdjacencyError> {
    let classes = enumerate_unpointed(g, t)?;
    let orbits: Vec<Vec<PointedPolygon>> = classes.iter().map(|c| c.members()).collect();
    let index = Arc::new(
        classes
            .iter()
            .map(|c| c.representative().clone())
            .collect::<Vec<_>>(),
    );
    let lift = |pred: &dyn Fn(&PointedPolygon, &PointedPolygon) -> bool, a: usize, b: usize| {
        orbits[a]
            .iter()
            .any(|p| orbits[b].iter().any(|q| pred(p, q)))
    };
    let m1 = AdjacencyMatrix::build(first_name, Arc::clone(&index), |a, b| lift(&first, a, b));
    let m2 = AdjacencyMatrix::build(second_name, Arc::clone(&index), |a, b| lift(&second, a, b));
    Ok((m1, m2))
}

/// Whether a matrix equals its transpose.
pub fn check_symmetric(m: &AdjacencyMatrix) -> bool {
    (0..m.dim()).all(|a| (0..a).all(|b| m.entry(a, b) == m.entry(b, a)))
}

/// Whether the two matrices commute as integer matrices.
pub fn check_commute(m1: &AdjacencyMatrix, m2: &AdjacencyMatrix) -> Result<bool, AdjacencyError> {
    if !m1.same_index(m2) {
        return Err(AdjacencyError::IndexMismatch);
    }
    Ok(product_counts(m1, m2) == product_counts(m2, m1))
}

fn product_counts(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> Vec<u32> {
    let n = a.dim();
    let rows_a = a.partner_lists();
    let rows_b = b.partner_lists();
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for &k in &rows_a[i] {
            for &j in &rows_b[k] {
                out[i * n + j] += 1;
            }
        }
    }
    out
}

/// Unique-common-extension property: for every A, horizontally-adjacent B and
/// vertically-adjacent C there is exactly one D closing the square.
pub fn check_uce(m1: &AdjacencyMatrix, m2: &AdjacencyMatrix) -> Result<bool, AdjacencyError> {
    if !m1.same_index(m2) {
        return Err(AdjacencyError::IndexMismatch);
    }
    let rows1 = m1.partner_lists();
    let rows2 = m2.partner_lists();
    for a in 0..m1.dim() {
        for &b in &rows1[a] {
            for &c in &rows2[a] {
                let completions = rows2[b].iter().filter(|&&d| m1.entry(c, d) == 1).count();
                if completions != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every row and column of both matrices contains a 1.
pub fn check_no_sources(m1: &AdjacencyMatrix, m2: &AdjacencyMatrix) -> bool {
    let covered = |m: &AdjacencyMatrix| {
        let n = m.dim();
        (0..n).all(|a| (0..n).any(|b| m.entry(a, b) == 1))
            && (0..n).all(|b| (0..n).any(|a| m.entry(a, b) == 1))
    };
    covered(m1) && covered(m2)
}

/// Every entry of `m1 * m2` lies in {0, 1}; with commutation this is what
/// makes the blue-magenta square completion a bijection.
pub fn check_unambiguous_factorization(
    m1: &AdjacencyMatrix,
    m2: &AdjacencyMatrix,
) -> Result<bool, AdjacencyError> {
    if !m1.same_index(m2) {
        return Err(AdjacencyError::IndexMismatch);
    }
    Ok(product_counts(m1, m2).iter().all(|&c| c <= 1))
}
