//! Exact dense integer linear algebra: Smith normal form with optional
//! unimodular transforms, column-Hermite reduction with lattice membership,
//! ranks, block assembly and cokernels.
//!
//! Everything runs over arbitrary-precision integers. Intermediate entries of
//! a Smith reduction can leave machine range even for modest inputs, so there
//! is no fixed-width fast path.

use crate::group::FgAbelianGroup;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense row-major matrix over `BigInt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Convenience constructor from machine-integer rows; all rows must have
    /// the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length differs from column count");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(src, j);
            if !v.is_zero() {
                let sum = self.at(dst, j) + q * v;
                self.set(dst, j, sum);
            }
        }
    }

    /// `col[dst] += q * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, src);
            if !v.is_zero() {
                let sum = self.at(i, dst) + q * v;
                self.set(i, dst, sum);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Horizontal block `(a | b)`; both matrices must have the same row count.
pub fn block_right(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), b.rows(), "block_right: row counts differ");
    IntMatrix::from_fn(a.rows(), a.cols() + b.cols(), |i, j| {
        if j < a.cols() {
            a.at(i, j).clone()
        } else {
            b.at(i, j - a.cols()).clone()
        }
    })
}

/// Smith normal form of an integer matrix.
///
/// `diagonal` holds `min(rows, cols)` nonnegative entries with the nonzero
/// ones first, each dividing the next. When requested, `left * input * right`
/// equals the diagonal matrix and both transforms are unimodular.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub diagonal: Vec<BigUint>,
    pub rank: usize,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SnfResult {
    /// Invariant factors of the cokernel: the diagonal entries `> 1`.
    pub fn nontrivial_factors(&self) -> Vec<BigUint> {
        self.diagonal
            .iter()
            .filter(|d| **d > BigUint::one())
            .cloned()
            .collect()
    }
}

struct SmithCalc {
    m: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl SmithCalc {
    fn new(m: IntMatrix, keep_transforms: bool) -> Self {
        let (r, c) = (m.rows(), m.cols());
        SmithCalc {
            m,
            left: keep_transforms.then(|| IntMatrix::identity(r)),
            right: keep_transforms.then(|| IntMatrix::identity(c)),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.m.add_row_multiple(dst, src, q);
        if let Some(l) = &mut self.left {
            l.add_row_multiple(dst, src, q);
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.m.add_col_multiple(dst, src, q);
        if let Some(r) = &mut self.right {
            r.add_col_multiple(dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(l) = &mut self.left {
            l.negate_row(i);
        }
    }

    /// Nonzero entry of least absolute value in the submatrix at `(k.., k..)`,
    /// ties broken by lowest `(row, col)`.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.m.rows() {
            for j in k..self.m.cols() {
                let v = self.m.at(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if v.magnitude() < self.m.at(bi, bj).magnitude() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let (r, c) = (self.m.rows(), self.m.cols());
        let mut k = 0;
        while k < r.min(c) {
            let Some((pi, pj)) = self.pivot(k) else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);

            // clear row k and column k with euclidean steps; a nonzero
            // remainder becomes the new, strictly smaller pivot
            loop {
                if let Some(i) = (k + 1..r).find(|&i| !self.m.at(i, k).is_zero()) {
                    let q = -(self.m.at(i, k) / self.m.at(k, k));
                    self.add_row_multiple(i, k, &q);
                    if !self.m.at(i, k).is_zero() {
                        self.swap_rows(k, i);
                    }
                    continue;
                }
                if let Some(j) = (k + 1..c).find(|&j| !self.m.at(k, j).is_zero()) {
                    let q = -(self.m.at(k, j) / self.m.at(k, k));
                    self.add_col_multiple(j, k, &q);
                    if !self.m.at(k, j).is_zero() {
                        self.swap_cols(k, j);
                    }
                    continue;
                }
                // pivot must divide the rest of the submatrix, or the
                // divisibility chain breaks later
                let offender = (k + 1..r)
                    .flat_map(|i| (k + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.m.at(i, j).is_multiple_of(self.m.at(k, k)));
                match offender {
                    Some((i, _)) => {
                        self.add_row_multiple(k, i, &BigInt::one());
                        continue;
                    }
                    None => break,
                }
            }

            if self.m.at(k, k).is_negative() {
                self.negate_row(k);
            }
            k += 1;
        }
    }

    fn finish(self) -> SnfResult {
        let n = self.m.rows().min(self.m.cols());
        let mut diagonal = Vec::with_capacity(n);
        let mut rank = 0;
        for i in 0..n {
            let d = self.m.at(i, i);
            if !d.is_zero() {
                rank += 1;
            }
            diagonal.push(d.magnitude().clone());
        }
        SnfResult {
            diagonal,
            rank,
            left: self.left,
            right: self.right,
        }
    }
}

/// Smith normal form; transforms are tracked only when `keep_transforms` is
/// set, since the bookkeeping dominates memory otherwise.
pub fn snf(m: &IntMatrix, keep_transforms: bool) -> SnfResult {
    let mut calc = SmithCalc::new(m.clone(), keep_transforms);
    calc.reduce();
    calc.finish()
}

/// Integer rank.
pub fn rank(m: &IntMatrix) -> usize {
    snf(m, false).rank
}

/// Cokernel `Z^rows / column-span(m)` in canonical form.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let s = snf(m, false);
    FgAbelianGroup::from_cyclic_big(s.nontrivial_factors(), m.rows() - s.rank)
}

/// Order of an element in a cokernel presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn finite_u64(n: u64) -> Self {
        Order::Finite(BigUint::from(n))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

impl serde::Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => match u64::try_from(n) {
                Ok(v) => ser.serialize_u64(v),
                Err(_) => ser.serialize_str(&n.to_string()),
            },
            Order::Infinite => ser.serialize_str("infinite"),
        }
    }
}

/// Least `k >= 1` with `k*v` in the column lattice of `m`, or
/// [`Order::Infinite`] when no such `k` exists.
///
/// In Smith coordinates `w = L*v` the condition decouples per row: the order
/// is the lcm of `d_i / gcd(d_i, w_i)`, infinite when some `w_i` is nonzero
/// against `d_i = 0` (including rows past the diagonal).
pub fn element_order_in_cokernel(m: &IntMatrix, v: &[BigInt]) -> Order {
    assert_eq!(v.len(), m.rows(), "vector length differs from row count");
    let s = snf(m, true);
    let left = s.left.as_ref().expect("transforms requested");
    let w = left.mul_vec(v);
    let mut order = BigUint::one();
    for (i, wi) in w.iter().enumerate() {
        let d = s.diagonal.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !wi.is_zero() {
                return Order::Infinite;
            }
        } else {
            let g = d.gcd(wi.magnitude());
            order = order.lcm(&(&d / &g));
        }
    }
    Order::Finite(order)
}

/// Column-Hermite reduction: integer column operations only, so the column
/// lattice is preserved. Pivot rows strictly increase column by column and
/// every entry above a pivot is zero, which is what membership testing needs.
pub fn column_echelon(m: &IntMatrix) -> IntMatrix {
    let mut m = m.clone();
    let (r, c) = (m.rows(), m.cols());
    let mut lead = 0;
    for row in 0..r {
        if lead >= c {
            break;
        }
        loop {
            let pivot = (lead..c)
                .filter(|&j| !m.at(row, j).is_zero())
                .min_by(|&a, &b| m.at(row, a).magnitude().cmp(m.at(row, b).magnitude()));
            let Some(j) = pivot else { break };
            m.swap_cols(lead, j);
            let mut dirty = false;
            for j2 in (lead + 1)..c {
                if m.at(row, j2).is_zero() {
                    continue;
                }
                let q = -(m.at(row, j2) / m.at(row, lead));
                m.add_col_multiple(j2, lead, &q);
                dirty |= !m.at(row, j2).is_zero();
            }
            if !dirty {
                if m.at(row, lead).is_negative() {
                    m.negate_col(lead);
                }
                lead += 1;
                break;
            }
        }
    }
    m
}

/// Whether `v` lies in the lattice spanned by the columns of `echelon`
/// (which must come from [`column_echelon`]).
pub fn lattice_contains(echelon: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), echelon.rows(), "vector length differs from row count");
    let mut y = v.to_vec();
    let mut col = 0;
    for row in 0..echelon.rows() {
        if col < echelon.cols() && !echelon.at(row, col).is_zero() {
            let (q, rem) = y[row].div_rem(echelon.at(row, col));
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for i in row..echelon.rows() {
                    let delta = &q * echelon.at(i, col);
                    y[i] -= delta;
                }
            }
            col += 1;
        } else if !y[row].is_zero() {
            return false;
        }
    }
    true
}
