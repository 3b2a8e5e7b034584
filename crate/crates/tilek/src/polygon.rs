//! Label alphabets and the pointed / unpointed 2t-gons of the system
//! associated to a bipartite graph.
//!
//! For each edge (i, j) the base 2t-gon reads `[u_i^1, v_j^1, ..., u_i^t, v_j^t]`
//! anticlockwise from its basepoint. The full pointed set consists of the 2t
//! boundary words per edge obtained by rotating the base word and by rotating
//! its bar-reflection; an unpointed 2t-gon is the orbit of a word under those
//! symmetries, represented by its least member.

use crate::graph::BipartiteGraph;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("t must be at least 1")]
    TZero,
    #[error("t must be even for the reflection-based enumeration, got {0}")]
    OddT(u32),
}

/// Which alphabet a label belongs to (white or black side of the graph).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelFamily {
    U,
    V,
}

/// A directed edge symbol `u_i^r` / `v_j^r`, possibly barred.
///
/// The bar is a fixed-point-free involution pairing each label with its
/// reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub family: LabelFamily,
    pub vertex: u32,
    pub superscript: u32,
    pub barred: bool,
}

impl Label {
    pub fn u(vertex: u32, superscript: u32) -> Self {
        Label {
            family: LabelFamily::U,
            vertex,
            superscript,
            barred: false,
        }
    }

    pub fn v(vertex: u32, superscript: u32) -> Self {
        Label {
            family: LabelFamily::V,
            vertex,
            superscript,
            barred: false,
        }
    }

    /// The involution partner (toggles the bar).
    pub fn bar(self) -> Self {
        Label {
            barred: !self.barred,
            ..self
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "~")?;
        }
        let family = match self.family {
            LabelFamily::U => 'u',
            LabelFamily::V => 'v',
        };
        write!(f, "{family}{}^{}", self.vertex, self.superscript)
    }
}

/// The alphabet `U` for `alpha` white vertices: `2 * t * alpha` labels.
pub fn u_alphabet(alpha: u32, t: u32) -> Vec<Label> {
    let mut out = Vec::new();
    for barred in [false, true] {
        for i in 1..=alpha {
            for r in 1..=t {
                let mut l = Label::u(i, r);
                l.barred = barred;
                out.push(l);
            }
        }
    }
    out
}

/// The alphabet `V` for `beta` black vertices: `2 * t * beta` labels.
pub fn v_alphabet(beta: u32, t: u32) -> Vec<Label> {
    u_alphabet(beta, t)
        .into_iter()
        .map(|l| Label {
            family: LabelFamily::V,
            ..l
        })
        .collect()
}

/// A pointed 2t-gon: the boundary word `[x_1, y_1, ..., x_t, y_t]` read
/// anticlockwise from the basepoint, stored as its U- and V-slot sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedPolygon {
    u_labels: Vec<Label>,
    v_labels: Vec<Label>,
}

impl PointedPolygon {
    pub fn new(u_labels: Vec<Label>, v_labels: Vec<Label>) -> Self {
        assert_eq!(u_labels.len(), v_labels.len(), "slot counts differ");
        assert!(!u_labels.is_empty(), "empty boundary word");
        PointedPolygon { u_labels, v_labels }
    }

    /// The base word `[u_i^1, v_j^1, ..., u_i^t, v_j^t]` of edge `(i, j)`.
    pub fn base(i: u32, j: u32, t: u32) -> Self {
        let u_labels = (1..=t).map(|r| Label::u(i, r)).collect();
        let v_labels = (1..=t).map(|r| Label::v(j, r)).collect();
        PointedPolygon { u_labels, v_labels }
    }

    pub fn t(&self) -> usize {
        self.u_labels.len()
    }

    pub fn u_label(&self, slot: usize) -> Label {
        self.u_labels[slot]
    }

    pub fn v_label(&self, slot: usize) -> Label {
        self.v_labels[slot]
    }

    pub fn u_labels(&self) -> &[Label] {
        &self.u_labels
    }

    pub fn v_labels(&self) -> &[Label] {
        &self.v_labels
    }

    /// Basepoint moved one U/V pair along the boundary:
    /// `[x_2, y_2, ..., x_1, y_1]`.
    pub fn rotate(&self) -> Self {
        let mut u_labels = self.u_labels.clone();
        let mut v_labels = self.v_labels.clone();
        u_labels.rotate_left(1);
        v_labels.rotate_left(1);
        PointedPolygon { u_labels, v_labels }
    }

    /// Reflection through the axis joining the midpoints of `x_1` and
    /// `x_{t/2+1}`: `[~x_1, ~y_t, ~x_t, ~y_{t-1}, ..., ~x_2, ~y_1]`.
    ///
    /// Well-defined for every t (for odd t the axis passes through an edge
    /// midpoint and the opposite vertex).
    pub fn reflect(&self) -> Self {
        let t = self.t();
        let u_labels = (0..t)
            .map(|k| self.u_labels[if k == 0 { 0 } else { t - k }].bar())
            .collect();
        let v_labels = (0..t).map(|k| self.v_labels[t - 1 - k].bar()).collect();
        PointedPolygon { u_labels, v_labels }
    }

    /// Reflection sending `x_1` to `~x_{t/2+1}` (even t only):
    /// `[~x_{t/2+1}, ~y_{t/2}, ~x_{t/2}, ..., ~y_1, ~x_1, ~y_t, ..., ~y_{t/2+1}]`.
    pub fn reflect_through_vertices(&self) -> Self {
        let t = self.t();
        assert!(t % 2 == 0, "vertex reflection needs an even t");
        let h = t / 2;
        let u_labels = (0..t).map(|k| self.u_labels[(h + t - k) % t].bar()).collect();
        let v_labels = (0..t)
            .map(|k| self.v_labels[(h + t - 1 - k) % t].bar())
            .collect();
        PointedPolygon { u_labels, v_labels }
    }

    /// All boundary words describing the same unoriented, unpointed polygon:
    /// the rotations of this word and of its reflection.
    pub fn orbit(&self) -> Vec<PointedPolygon> {
        let mut out = Vec::with_capacity(2 * self.t());
        let mut cur = self.clone();
        for _ in 0..self.t() {
            if !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur = cur.rotate();
        }
        let mut cur = self.reflect();
        for _ in 0..self.t() {
            if !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur = cur.rotate();
        }
        out
    }

    /// Sort key realising the canonical order: unbarred rotations first,
    /// then bar-reflections, each by leading superscript.
    fn canonical_key(&self) -> (bool, u32) {
        (self.u_labels[0].barred, self.u_labels[0].superscript)
    }

    /// Boundary word rendering, e.g. `[~u1^2, ~v3^1, ~u1^1, ~v3^2]`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = (0..self.t())
            .flat_map(|k| [self.u_labels[k].to_string(), self.v_labels[k].to_string()])
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

impl fmt::Display for PointedPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An unpointed 2t-gon: the orbit of a boundary word under rotation and
/// reflection, identified by its least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnpointedPolygon {
    representative: PointedPolygon,
}

impl UnpointedPolygon {
    pub fn from_member(p: &PointedPolygon) -> Self {
        let representative = p
            .orbit()
            .into_iter()
            .min_by_key(|q| q.canonical_key())
            .expect("orbit is nonempty");
        UnpointedPolygon { representative }
    }

    pub fn representative(&self) -> &PointedPolygon {
        &self.representative
    }

    pub fn members(&self) -> Vec<PointedPolygon> {
        self.representative.orbit()
    }

    /// Rendering with round brackets to mark the equivalence class.
    pub fn render(&self) -> String {
        let inner = self.representative.render();
        format!("({})", &inner[1..inner.len() - 1])
    }
}

impl fmt::Display for UnpointedPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The `2t |E(g)|` pointed 2t-gons in canonical order: all unbarred rotations
/// `A_r` (edges ascending, r ascending), then all reflected forms `B_r`.
pub fn enumerate_pointed(g: &BipartiteGraph, t: u32) -> Result<Vec<PointedPolygon>, PolygonError> {
    if t == 0 {
        return Err(PolygonError::TZero);
    }
    let mut out = Vec::with_capacity(2 * t as usize * g.edge_count());
    for reflected in [false, true] {
        for &(i, j) in g.edges() {
            let base = PointedPolygon::base(i, j, t);
            let mut form = if reflected { base.reflect() } else { base };
            for _ in 0..t {
                out.push(form.clone());
                form = if reflected {
                    // B_{r+1} = reflect(A_{r+1}) = reflect(rotate(A_r)); on the
                    // reflected word this is a rotation the other way round
                    rotate_right(&form)
                } else {
                    form.rotate()
                };
            }
        }
    }
    Ok(out)
}

fn rotate_right(p: &PointedPolygon) -> PointedPolygon {
    let mut u_labels = p.u_labels().to_vec();
    let mut v_labels = p.v_labels().to_vec();
    u_labels.rotate_right(1);
    v_labels.rotate_right(1);
    PointedPolygon::new(u_labels, v_labels)
}

/// The same pointed set for even t, ordered in the four-block form used by
/// tile systems: `A_r, B_r, C_r, D_r` with `r` up to `t/2`, where
/// `C_r = B_{t/2+r}` and `D_r = A_{t/2+r}`.
pub fn enumerate_pointed_quartered(
    g: &BipartiteGraph,
    t: u32,
) -> Result<Vec<PointedPolygon>, PolygonError> {
    if t == 0 {
        return Err(PolygonError::TZero);
    }
    if t % 2 != 0 {
        return Err(PolygonError::OddT(t));
    }
    let half = t / 2;
    let rotated = |i: u32, j: u32, r: u32| {
        let mut p = PointedPolygon::base(i, j, t);
        for _ in 0..r {
            p = p.rotate();
        }
        p
    };
    let mut out = Vec::with_capacity(2 * t as usize * g.edge_count());
    for block in 0..4u32 {
        for &(i, j) in g.edges() {
            for r in 0..half {
                let p = match block {
                    0 => rotated(i, j, r),                // A_r
                    1 => rotated(i, j, r).reflect(),      // B_r
                    2 => rotated(i, j, half + r).reflect(), // C_r
                    _ => rotated(i, j, half + r),         // D_r
                };
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// The unpointed 2t-gons: one class per edge, ordered by edge.
pub fn enumerate_unpointed(
    g: &BipartiteGraph,
    t: u32,
) -> Result<Vec<UnpointedPolygon>, PolygonError> {
    if t == 0 {
        return Err(PolygonError::TZero);
    }
    Ok(g.edges()
        .iter()
        .map(|&(i, j)| UnpointedPolygon::from_member(&PointedPolygon::base(i, j, t)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn kappa(a: u32, b: u32) -> BipartiteGraph {
        BipartiteGraph::complete(a, b).unwrap()
    }

    #[test]
    fn involution_is_fixed_point_free() {
        for l in u_alphabet(3, 2) {
            assert_ne!(l.bar(), l);
            assert_eq!(l.bar().bar(), l);
        }
    }

    #[test]
    fn alphabet_sizes() {
        assert_eq!(u_alphabet(3, 2).len(), 12); // 2 t alpha
        assert_eq!(v_alphabet(4, 3).len(), 24); // 2 t beta
        let distinct: HashSet<_> = u_alphabet(5, 4).into_iter().collect();
        assert_eq!(distinct.len(), 40);
    }

    #[test]
    fn pointed_counts() {
        assert_eq!(enumerate_pointed(&kappa(2, 2), 2).unwrap().len(), 16);
        assert_eq!(enumerate_pointed(&kappa(2, 2), 1).unwrap().len(), 8);
        assert_eq!(enumerate_pointed(&kappa(3, 4), 4).unwrap().len(), 96);
        assert_eq!(enumerate_pointed(&kappa(2, 2), 0), Err(PolygonError::TZero));
    }

    #[test]
    fn pointed_words_are_distinct() {
        for t in 1..=4 {
            let polys = enumerate_pointed(&kappa(3, 4), t).unwrap();
            let set: HashSet<_> = polys.iter().cloned().collect();
            assert_eq!(set.len(), polys.len(), "t = {t}");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = kappa(3, 3);
        assert_eq!(
            enumerate_pointed(&g, 3).unwrap(),
            enumerate_pointed(&g, 3).unwrap()
        );
        assert_eq!(
            enumerate_pointed_quartered(&g, 4).unwrap(),
            enumerate_pointed_quartered(&g, 4).unwrap()
        );
    }

    #[test]
    fn quartered_matches_plain_enumeration_as_a_set() {
        for t in [2u32, 4] {
            let plain: HashSet<_> = enumerate_pointed(&kappa(2, 3), t).unwrap().into_iter().collect();
            let quartered = enumerate_pointed_quartered(&kappa(2, 3), t).unwrap();
            let quartered_set: HashSet<_> = quartered.iter().cloned().collect();
            assert_eq!(plain, quartered_set);
            assert_eq!(quartered.len(), quartered_set.len());
        }
        assert_eq!(
            enumerate_pointed_quartered(&kappa(2, 2), 3),
            Err(PolygonError::OddT(3))
        );
    }

    #[test]
    fn tile_forms_match_the_four_symmetries() {
        // for t = 2 the four words per edge are the base, its bar-reflections
        // and its half-rotation
        let polys = enumerate_pointed(&kappa(2, 2), 2).unwrap();
        let a = PointedPolygon::new(
            vec![Label::u(1, 1), Label::u(1, 2)],
            vec![Label::v(1, 1), Label::v(1, 2)],
        );
        let b = PointedPolygon::new(
            vec![Label::u(1, 1).bar(), Label::u(1, 2).bar()],
            vec![Label::v(1, 2).bar(), Label::v(1, 1).bar()],
        );
        let d = PointedPolygon::new(
            vec![Label::u(1, 2), Label::u(1, 1)],
            vec![Label::v(1, 2), Label::v(1, 1)],
        );
        let c = PointedPolygon::new(
            vec![Label::u(1, 2).bar(), Label::u(1, 1).bar()],
            vec![Label::v(1, 1).bar(), Label::v(1, 2).bar()],
        );
        for p in [&a, &b, &c, &d] {
            assert!(polys.contains(p), "missing {p}");
        }
        // and they form one orbit
        let orbit: HashSet<_> = a.orbit().into_iter().collect();
        assert_eq!(orbit, [a, b, c, d].into_iter().collect());
    }

    #[test]
    fn orbit_sizes() {
        for t in 1..=5u32 {
            let base = PointedPolygon::base(1, 1, t);
            let orbit = base.orbit();
            assert!(2 * t as usize % orbit.len() == 0, "orbit size divides 2t");
            assert_eq!(orbit.len(), 2 * t as usize);
            if t == 2 {
                assert_eq!(orbit.len(), 4);
            }
        }
    }

    #[test]
    fn unpointed_counts_and_representatives() {
        assert_eq!(enumerate_unpointed(&kappa(2, 2), 2).unwrap().len(), 4);
        assert_eq!(enumerate_unpointed(&kappa(3, 4), 2).unwrap().len(), 12);
        let path = BipartiteGraph::parse("bipartite 2 1\n1 1\n2 1\n").unwrap();
        assert_eq!(enumerate_unpointed(&path, 2).unwrap().len(), 2);

        // the representative is the unbarred word starting at superscript 1,
        // whichever member the class is built from
        let member = PointedPolygon::base(2, 3, 3).rotate().reflect();
        let class = UnpointedPolygon::from_member(&member);
        assert_eq!(class.representative(), &PointedPolygon::base(2, 3, 3));
    }

    #[test]
    fn render_format() {
        let p = PointedPolygon::base(1, 2, 2);
        assert_eq!(p.render(), "[u1^1, v2^1, u1^2, v2^2]");
        let reflected_rotation = PointedPolygon::base(1, 3, 2).rotate().reflect();
        assert_eq!(reflected_rotation.render(), "[~u1^2, ~v3^1, ~u1^1, ~v3^2]");
        let class = UnpointedPolygon::from_member(&p);
        assert_eq!(class.render(), "(u1^1, v2^1, u1^2, v2^2)");
    }

    #[test]
    fn reflect_through_vertices_even_t() {
        // t = 2: base [x1, y1, x2, y2] reflects to [~x2, ~y1, ~x1, ~y2]
        let p = PointedPolygon::base(1, 1, 2);
        let r = p.reflect_through_vertices();
        assert_eq!(r.render(), "[~u1^2, ~v1^1, ~u1^1, ~v1^2]");
        // t = 4: leading slots per the axis through x_3
        let p = PointedPolygon::base(1, 1, 4);
        let r = p.reflect_through_vertices();
        assert_eq!(
            r.render(),
            "[~u1^3, ~v1^2, ~u1^2, ~v1^1, ~u1^1, ~v1^4, ~u1^4, ~v1^3]"
        );
    }
}
