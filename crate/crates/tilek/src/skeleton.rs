//! The 1-skeleton of a 2-rank graph: a vertex set with blue (horizontal) and
//! magenta (vertical) directed edges mirroring a commuting adjacency pair.
//!
//! Provides the finite proxies used to probe the infinite-path hypotheses:
//! weak components, strong connectivity (the cofinality proxy), cycles with
//! an entrance, and finite aperiodic path prefixes. A passing period scan
//! means "no period found up to the bounds", never "aperiodic".

use crate::adjacency::AdjacencyMatrix;
use crate::polygon::PointedPolygon;
use serde_json::json;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SkeletonError {
    #[error(
        "vertex {vertex} has {blue} blue and {magenta} magenta partners; \
         the aperiodic walk needs at least two of each"
    )]
    InsufficientPartners {
        vertex: usize,
        blue: usize,
        magenta: usize,
    },
    #[error("walk step {from} -> {to} is not an edge of the required colour")]
    InvalidStep { from: usize, to: usize },
    #[error("grid cell ({m}, {n}) has {count} common extensions instead of one")]
    UceFailure { m: usize, n: usize, count: usize },
}

/// Two edge-coloured directed graphs on a common vertex set.
#[derive(Debug, Clone)]
pub struct Skeleton {
    blue_out: Vec<Vec<usize>>,
    magenta_out: Vec<Vec<usize>>,
    index: Option<Arc<Vec<PointedPolygon>>>,
}

impl Skeleton {
    /// Mirror an adjacency pair: blue edges from the first matrix, magenta
    /// from the second.
    pub fn from_pair(m1: &AdjacencyMatrix, m2: &AdjacencyMatrix) -> Self {
        assert!(m1.same_index(m2), "matrices index different polygon sets");
        let n = m1.dim();
        let rows = |m: &AdjacencyMatrix| {
            (0..n)
                .map(|a| (0..n).filter(|&b| m.entry(a, b) == 1).collect())
                .collect()
        };
        Skeleton {
            blue_out: rows(m1),
            magenta_out: rows(m2),
            index: Some(Arc::new(m1.index().to_vec())),
        }
    }

    /// Synthetic skeleton from explicit edge sets (vertices `0..n`).
    pub fn from_edges(n: usize, blue: &[(usize, usize)], magenta: &[(usize, usize)]) -> Self {
        let mut blue_out = vec![Vec::new(); n];
        let mut magenta_out = vec![Vec::new(); n];
        for &(a, b) in blue {
            blue_out[a].push(b);
        }
        for &(a, b) in magenta {
            magenta_out[a].push(b);
        }
        for list in blue_out.iter_mut().chain(magenta_out.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Skeleton {
            blue_out,
            magenta_out,
            index: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.blue_out.len()
    }

    pub fn blue_out(&self, v: usize) -> &[usize] {
        &self.blue_out[v]
    }

    pub fn magenta_out(&self, v: usize) -> &[usize] {
        &self.magenta_out[v]
    }

    /// Human-readable vertex name: the polygon word when available.
    pub fn vertex_name(&self, v: usize) -> String {
        match &self.index {
            Some(ix) => ix[v].render(),
            None => v.to_string(),
        }
    }

    fn union_out(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count())
            .map(|v| {
                let mut out = self.blue_out[v].clone();
                out.extend_from_slice(&self.magenta_out[v]);
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect()
    }

    /// Number of weakly connected components of the blue-union-magenta graph.
    pub fn components(&self) -> usize {
        self.component_sizes().len()
    }

    /// Sizes of the weak components, ascending.
    pub fn component_sizes(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let out = self.union_out();
        let mut undirected = vec![Vec::new(); n];
        for (a, outs) in out.iter().enumerate() {
            for &b in outs {
                undirected[a].push(b);
                undirected[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut size = 0;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in &undirected[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    /// Strong connectivity of the directed union graph; the finite proxy for
    /// cofinality.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let out = self.union_out();
        let mut rev = vec![Vec::new(); n];
        for (a, outs) in out.iter().enumerate() {
            for &b in outs {
                rev[b].push(a);
            }
        }
        let reaches_all = |adj: &[Vec<usize>]| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count == n
        };
        reaches_all(&out) && reaches_all(&rev)
    }

    /// Whether some single-colour directed cycle has an entrance: an edge of
    /// the same colour into the cycle from a vertex outside it.
    pub fn has_cycle_with_entrance(&self) -> bool {
        [&self.blue_out, &self.magenta_out]
            .into_iter()
            .any(|out| self.colour_has_cycle_with_entrance(out))
    }

    fn colour_has_cycle_with_entrance(&self, out: &[Vec<usize>]) -> bool {
        let n = self.vertex_count();
        for w in 0..n {
            for &v in &out[w] {
                if w == v {
                    continue;
                }
                // an entrance w -> v counts when v lies on a cycle avoiding w
                if cycle_through_avoiding(out, v, w) {
                    return true;
                }
            }
        }
        false
    }

    /// Finite prefix of the aperiodic path: the two least blue partners and
    /// two least magenta partners of `start` drive the boundary words, with
    /// the first partner placed at positions `r^2 + r + 1`, and the grid is
    /// filled by unique common extensions.
    pub fn aperiodic_prefix(&self, start: usize, length: usize) -> Result<PathPrefix, SkeletonError> {
        let blue = &self.blue_out[start];
        let magenta = &self.magenta_out[start];
        if blue.len() < 2 || magenta.len() < 2 {
            return Err(SkeletonError::InsufficientPartners {
                vertex: start,
                blue: blue.len(),
                magenta: magenta.len(),
            });
        }
        let word = |p1: usize, p2: usize| -> Vec<usize> {
            (0..=length)
                .map(|m| {
                    if m % 2 == 0 {
                        start
                    } else if is_quadratic_position(m) {
                        p1
                    } else {
                        p2
                    }
                })
                .collect()
        };
        let horizontal = word(blue[0], blue[1]);
        let vertical = word(magenta[0], magenta[1]);
        for m in 0..length {
            if !self.blue_out[horizontal[m]].contains(&horizontal[m + 1]) {
                return Err(SkeletonError::InvalidStep {
                    from: horizontal[m],
                    to: horizontal[m + 1],
                });
            }
            if !self.magenta_out[vertical[m]].contains(&vertical[m + 1]) {
                return Err(SkeletonError::InvalidStep {
                    from: vertical[m],
                    to: vertical[m + 1],
                });
            }
        }

        let side = length + 1;
        let mut grid = vec![usize::MAX; side * side];
        for m in 0..=length {
            grid[m * side] = horizontal[m];
        }
        for n in 0..=length {
            grid[n] = vertical[n];
        }
        for m in 1..=length {
            for n in 1..=length {
                let east = grid[m * side + (n - 1)];
                let north = grid[(m - 1) * side + n];
                let mut candidates = self.magenta_out[east]
                    .iter()
                    .filter(|d| self.blue_out[north].contains(d));
                let d = candidates.next();
                let extra = candidates.count();
                match (d, extra) {
                    (Some(&d), 0) => grid[m * side + n] = d,
                    (d, extra) => {
                        return Err(SkeletonError::UceFailure {
                            m,
                            n,
                            count: if d.is_some() { extra + 1 } else { 0 },
                        })
                    }
                }
            }
        }
        Ok(PathPrefix {
            start,
            length,
            horizontal,
            vertical,
            grid,
            index: self.index.clone(),
        })
    }
}

/// Is there a directed cycle through `v` in `out` that avoids `banned`?
fn cycle_through_avoiding(out: &[Vec<usize>], v: usize, banned: usize) -> bool {
    let mut seen = vec![false; out.len()];
    let mut stack: Vec<usize> = out[v].iter().copied().filter(|&u| u != banned).collect();
    for &u in &stack {
        seen[u] = true;
    }
    while let Some(u) = stack.pop() {
        if u == v {
            return true;
        }
        for &w in &out[u] {
            if w != banned && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Positions `r^2 + r + 1` for `r >= 1`: 3, 7, 13, 21, 31, ...
pub fn is_quadratic_position(m: usize) -> bool {
    let mut r = 1;
    loop {
        let p = r * r + r + 1;
        if p == m {
            return true;
        }
        if p > m {
            return false;
        }
        r += 1;
    }
}

/// A filled `(length+1) x (length+1)` corner of a degree-(m, n) grid, anchored
/// at a start vertex with its generating horizontal and vertical words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPrefix {
    start: usize,
    length: usize,
    horizontal: Vec<usize>,
    vertical: Vec<usize>,
    grid: Vec<usize>,
    index: Option<Arc<Vec<PointedPolygon>>>,
}

impl PathPrefix {
    /// Prefix with explicit grid contents; for period-scan tests.
    pub fn from_grid(length: usize, grid: Vec<usize>) -> Self {
        let side = length + 1;
        assert_eq!(grid.len(), side * side, "grid size is not (length+1)^2");
        PathPrefix {
            start: grid[0],
            length,
            horizontal: (0..=length).map(|m| grid[m * side]).collect(),
            vertical: (0..=length).map(|n| grid[n]).collect(),
            grid,
            index: None,
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Vertex at horizontal degree `m`, vertical degree `n`.
    pub fn grid(&self, m: usize, n: usize) -> usize {
        self.grid[m * (self.length + 1) + n]
    }

    pub fn horizontal_word(&self) -> &[usize] {
        &self.horizontal
    }

    pub fn vertical_word(&self) -> &[usize] {
        &self.vertical
    }

    fn render_vertex(&self, v: usize) -> String {
        match &self.index {
            Some(ix) => ix[v].render(),
            None => v.to_string(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "start": self.render_vertex(self.start),
            "length": self.length,
            "horizontal_word": self.horizontal.iter().map(|&v| self.render_vertex(v)).collect::<Vec<_>>(),
            "vertical_word": self.vertical.iter().map(|&v| self.render_vertex(v)).collect::<Vec<_>>(),
        })
    }
}

/// Scan for periods of the stored grid: shift vectors with max-norm up to
/// `max_shift`, applied to every suffix offset up to `max_shift`. Returns
/// true when no nonzero shift is a period of any scanned suffix.
///
/// This is a necessary condition at finite scale only.
pub fn check_no_period(prefix: &PathPrefix, max_shift: usize) -> bool {
    assert!(
        max_shift < prefix.length(),
        "max_shift must be smaller than the prefix length"
    );
    let l = prefix.length() as isize;
    let ms = max_shift as isize;
    for s1 in -ms..=ms {
        for s2 in -ms..=ms {
            if s1 == 0 && s2 == 0 {
                continue;
            }
            for q1 in 0..=ms {
                for q2 in 0..=ms {
                    if is_period_on_suffix(prefix, (s1, s2), (q1, q2), l) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_period_on_suffix(
    prefix: &PathPrefix,
    (s1, s2): (isize, isize),
    (q1, q2): (isize, isize),
    l: isize,
) -> bool {
    let mut compared = false;
    for m in q1..=l {
        for n in q2..=l {
            let (m2, n2) = (m + s1, n + s2);
            if m2 < q1 || n2 < q2 || m2 > l || n2 > l {
                continue;
            }
            compared = true;
            if prefix.grid(m as usize, n as usize) != prefix.grid(m2 as usize, n2 as usize) {
                return false;
            }
        }
    }
    compared
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::{build_pair, SystemKind};
    use crate::graph::BipartiteGraph;

    fn tile_skeleton(alpha: u32, beta: u32) -> Skeleton {
        let g = BipartiteGraph::complete(alpha, beta).unwrap();
        let (m1, m2) = build_pair(&g, SystemKind::PointedTile).unwrap();
        Skeleton::from_pair(&m1, &m2)
    }

    #[test]
    fn component_counts() {
        let sk = tile_skeleton(2, 2);
        assert_eq!(sk.components(), 4);
        assert_eq!(sk.component_sizes(), vec![4, 4, 4, 4]);
        assert_eq!(tile_skeleton(3, 3).components(), 1);
        let empty = Skeleton::from_edges(5, &[], &[]);
        assert_eq!(empty.components(), 5);
    }

    #[test]
    fn strong_connectivity() {
        assert!(tile_skeleton(3, 3).is_strongly_connected());
        assert!(!tile_skeleton(2, 2).is_strongly_connected());
        assert!(Skeleton::from_edges(1, &[], &[]).is_strongly_connected());
        // a directed 2-path is weakly but not strongly connected
        let path = Skeleton::from_edges(2, &[(0, 1)], &[]);
        assert_eq!(path.components(), 1);
        assert!(!path.is_strongly_connected());
    }

    #[test]
    fn cycle_with_entrance() {
        assert!(tile_skeleton(3, 3).has_cycle_with_entrance());
        // each kappa(2,2) vertex has exactly one partner per colour: no
        // same-colour entrance anywhere
        assert!(!tile_skeleton(2, 2).has_cycle_with_entrance());
        // two-vertex bidirectional pair plus a third vertex feeding in
        let sk = Skeleton::from_edges(3, &[(0, 1), (1, 0), (2, 0)], &[]);
        assert!(sk.has_cycle_with_entrance());
        // without the feeder there is no entrance
        let sk = Skeleton::from_edges(2, &[(0, 1), (1, 0)], &[]);
        assert!(!sk.has_cycle_with_entrance());
    }

    #[test]
    fn quadratic_positions_in_window() {
        let hits: Vec<usize> = (0..=25).filter(|&m| is_quadratic_position(m)).collect();
        assert_eq!(hits, vec![3, 7, 13, 21]);
    }

    #[test]
    fn prefix_anchoring_and_words() {
        let sk = tile_skeleton(3, 3);
        let p = sk.aperiodic_prefix(0, 25).unwrap();
        assert_eq!(p.grid(0, 0), 0);
        let b = sk.blue_out(0);
        let (b1, b2) = (b[0], b[1]);
        for m in 0..=25usize {
            let expect = if m % 2 == 0 {
                0
            } else if is_quadratic_position(m) {
                b1
            } else {
                b2
            };
            assert_eq!(p.horizontal_word()[m], expect, "m = {m}");
        }
    }

    #[test]
    fn grid_hits_the_double_extension_exactly_on_quadratic_pairs() {
        let sk = tile_skeleton(3, 3);
        let p = sk.aperiodic_prefix(0, 25).unwrap();
        let b1 = sk.blue_out(0)[0];
        let c1 = sk.magenta_out(0)[0];
        let d: Vec<usize> = sk
            .magenta_out(b1)
            .iter()
            .copied()
            .filter(|x| sk.blue_out(c1).contains(x))
            .collect();
        assert_eq!(d.len(), 1);
        let d = d[0];
        for m in 0..=25usize {
            for n in 0..=25usize {
                let expect = is_quadratic_position(m) && is_quadratic_position(n);
                assert_eq!(
                    p.grid(m, n) == d,
                    expect,
                    "grid({m}, {n}) vs D"
                );
            }
        }
    }

    #[test]
    fn grid_filling_is_confluent() {
        // refill column-major and compare: each cell is forced by its west,
        // south and southwest neighbours, so fill order cannot matter
        let sk = tile_skeleton(3, 4);
        let p = sk.aperiodic_prefix(1, 8).unwrap();
        let l = p.length();
        let mut grid = vec![usize::MAX; (l + 1) * (l + 1)];
        for m in 0..=l {
            grid[m * (l + 1)] = p.horizontal_word()[m];
        }
        for n in 0..=l {
            grid[n] = p.vertical_word()[n];
        }
        for n in 1..=l {
            for m in 1..=l {
                let east = grid[m * (l + 1) + (n - 1)];
                let north = grid[(m - 1) * (l + 1) + n];
                let d: Vec<usize> = sk
                    .magenta_out(east)
                    .iter()
                    .copied()
                    .filter(|x| sk.blue_out(north).contains(x))
                    .collect();
                assert_eq!(d.len(), 1);
                grid[m * (l + 1) + n] = d[0];
            }
        }
        for m in 0..=l {
            for n in 0..=l {
                assert_eq!(grid[m * (l + 1) + n], p.grid(m, n));
            }
        }
    }

    #[test]
    fn no_period_on_kappa_3_3() {
        let sk = tile_skeleton(3, 3);
        let p = sk.aperiodic_prefix(0, 30).unwrap();
        assert!(check_no_period(&p, 10));
    }

    #[test]
    fn constant_grid_is_periodic() {
        let p = PathPrefix::from_grid(6, vec![7; 49]);
        assert!(!check_no_period(&p, 3));
    }

    #[test]
    fn shift_periodic_grid_is_detected() {
        // period (2, 0): value depends on m mod 2 only
        let side = 9usize;
        let grid: Vec<usize> = (0..side * side).map(|i| (i / side) % 2).collect();
        let p = PathPrefix::from_grid(side - 1, grid);
        assert!(!check_no_period(&p, 4));
    }

    #[test]
    fn insufficient_partners_is_an_error() {
        let sk = tile_skeleton(2, 2);
        assert_eq!(
            sk.aperiodic_prefix(0, 10),
            Err(SkeletonError::InsufficientPartners {
                vertex: 0,
                blue: 1,
                magenta: 1,
            })
        );
    }

    #[test]
    fn prefix_json_uses_polygon_rendering() {
        let sk = tile_skeleton(3, 3);
        let p = sk.aperiodic_prefix(0, 4).unwrap();
        let j = p.to_json();
        assert_eq!(j["length"], 4);
        let start = j["start"].as_str().unwrap();
        assert!(start.starts_with('[') && start.contains("u1^1"));
        assert_eq!(j["horizontal_word"].as_array().unwrap().len(), 5);
    }
}
