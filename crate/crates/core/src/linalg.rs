//! Exact rational matrices and subspaces of coordinatized jet spaces.
//!
//! Everything downstream (field spaces, tangent spaces, moduli) reduces to
//! the sum/intersection/quotient calculus implemented here. No floating
//! point anywhere: ranks must be exact.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_q, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>, // row-major
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| Q::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let cur = out.at(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum shapes differ".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.clone() + b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> RationalMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.clone() * s;
        }
        out
    }

    pub fn neg(&self) -> RationalMatrix {
        self.scale(&-Q::one())
    }

    /// Commutator `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.mul(other)?.add(&other.mul(self)?.neg())
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }

    pub fn from_flat(p: usize, flat: &[Q]) -> Self {
        assert_eq!(flat.len(), p * p);
        RationalMatrix {
            rows: p,
            cols: p,
            data: flat.to_vec(),
        }
    }

    /// Reduced row-echelon form and rank. Pivots are normalized to 1 and
    /// cleared above and below; zero rows are kept in place at the bottom.
    pub fn rref(&self) -> (RationalMatrix, usize) {
        let mut m = self.row_vecs();
        let rank = rref_in_place(&mut m, self.cols);
        (RationalMatrix::from_rows(m), rank)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.row_vecs();
        rref_in_place(&mut m, self.cols)
    }

    /// Basis of the right null space, echelonized.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut m = self.row_vecs();
        let rank = rref_in_place(&mut m, self.cols);
        let pivots = pivot_columns(&m, rank);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[ri][free].clone();
            }
            basis.push(v);
        }
        // echelonize for canonical output
        rref_in_place(&mut basis, self.cols);
        basis.retain(|r| r.iter().any(|x| !x.is_zero()));
        basis
    }

    pub fn det(&self) -> Result<Q> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square".into()));
        }
        let n = self.rows;
        let mut m = self.row_vecs();
        let mut det = Q::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot else {
                return Ok(Q::zero());
            };
            if pr != col {
                m.swap(pr, col);
                det = -det;
            }
            let pv = m[col][col].clone();
            det *= pv.clone();
            for r in col + 1..n {
                if !m[r][col].is_zero() {
                    let f = m[r][col].clone() / pv.clone();
                    for c in col..n {
                        let sub = m[col][c].clone() * f.clone();
                        m[r][c] = m[r][c].clone() - sub;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let rank = rref_in_place(&mut aug, 2 * n);
        if rank < n || pivot_columns(&aug, rank).iter().any(|&c| c >= n) {
            return Err(Error::DegenerateGerm("singular matrix".into()));
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(RationalMatrix::from_rows(rows))
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn rref_in_place(m: &mut Vec<Vec<Q>>, cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        m.swap(rank, pr);
        let pv = m[rank][col].clone();
        if !pv.is_one() {
            for c in col..cols {
                if !m[rank][c].is_zero() {
                    m[rank][c] = m[rank][c].clone() / pv.clone();
                }
            }
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    if !m[rank][c].is_zero() {
                        let sub = m[rank][c].clone() * f.clone();
                        m[r][c] = m[r][c].clone() - sub;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pivot_columns(m: &[Vec<Q>], rank: usize) -> Vec<usize> {
    let mut pivots = Vec::with_capacity(rank);
    for r in 0..rank {
        if let Some(c) = m[r].iter().position(|x| !x.is_zero()) {
            pivots.push(c);
        }
    }
    pivots
}

/// Row-reduced exact basis of a subspace of a fixed coordinate space.
///
/// The `ambient_label` records which coordinatization the vectors live in
/// (which monomial basis, which component ordering). Jet spaces of different
/// shapes have equal dimensions surprisingly often, so mixing labels is a
/// hard error rather than silent corruption.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    ambient_label: String,
    rows: Vec<Vec<Q>>, // RREF, pivot columns strictly increasing
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize, label: impl Into<String>) -> Self {
        SubspaceBasis {
            ambient_dim,
            ambient_label: label.into(),
            rows: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize, label: impl Into<String>) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Q::zero(); ambient_dim];
                v[i] = Q::one();
                v
            })
            .collect();
        SubspaceBasis {
            ambient_dim,
            ambient_label: label.into(),
            rows,
        }
    }

    pub fn span(vectors: Vec<Vec<Q>>, ambient_dim: usize, label: impl Into<String>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {}",
                    v.len(),
                    ambient_dim
                )));
            }
        }
        let mut rows = vectors;
        rref_in_place(&mut rows, ambient_dim);
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        Ok(SubspaceBasis {
            ambient_dim,
            ambient_label: label.into(),
            rows,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn ambient_label(&self) -> &str {
        &self.ambient_label
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    fn check_label(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient_label != other.ambient_label || self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(
                self.ambient_label.clone(),
                other.ambient_label.clone(),
            ));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_label(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.clone());
        SubspaceBasis::span(rows, self.ambient_dim, self.ambient_label.clone())
    }

    /// Intersection via the kernel of the stacked system: a kernel vector
    /// `(u, v)` of the map `(u, v) -> Σ u_i a_i - Σ v_j b_j` names one
    /// intersection vector `Σ u_i a_i`.
    pub fn intersection(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_label(other)?;
        let ra = self.dim();
        let rb = other.dim();
        if ra == 0 || rb == 0 {
            return Ok(SubspaceBasis::zero(
                self.ambient_dim,
                self.ambient_label.clone(),
            ));
        }
        let mut stacked = RationalMatrix::zeros(self.ambient_dim, ra + rb);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    stacked.set(i, j, v.clone());
                }
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    stacked.set(i, ra + j, -v.clone());
                }
            }
        }
        let mut vectors = Vec::new();
        for kv in stacked.kernel() {
            let mut w = vec![Q::zero(); self.ambient_dim];
            for (j, row) in self.rows.iter().enumerate() {
                if kv[j].is_zero() {
                    continue;
                }
                for (i, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        w[i] = w[i].clone() + kv[j].clone() * v;
                    }
                }
            }
            vectors.push(w);
        }
        SubspaceBasis::span(vectors, self.ambient_dim, self.ambient_label.clone())
    }

    /// Reduce `v` against the basis rows; zero remainder means containment.
    pub fn contains_vector(&self, v: &[Q]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rem = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
            if !rem[pivot].is_zero() {
                let f = rem[pivot].clone(); // pivot entries are 1
                for (a, b) in rem.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a = a.clone() - f.clone() * b;
                    }
                }
            }
        }
        rem.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_label(other)?;
        Ok(other.rows.iter().all(|r| self.contains_vector(r)))
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubspaceBasis[dim {} of {} in `{}`]",
            self.dim(),
            self.ambient_dim,
            self.ambient_label
        )
    }
}

/// `dim(ambient) - dim(sub)`.
pub fn quotient_dim(sub: &SubspaceBasis, ambient_dim: usize) -> usize {
    assert_eq!(sub.ambient_dim(), ambient_dim, "ambient dimension mismatch");
    ambient_dim - sub.dim()
}

/// Incremental row reduction for constraint systems assembled row by row.
/// Rows are kept in reduced echelon form throughout, so offering a dependent
/// row is cheap and the final kernel comes straight off the reduced rows.
pub struct RowReducer {
    cols: usize,
    rows: Vec<Vec<Q>>,     // RREF, pivots strictly increasing
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current basis; insert if independent.
    /// Returns true when the row added to the rank.
    pub fn offer(&mut self, mut row: Vec<Q>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (a, b) in row.iter_mut().zip(r) {
                    if !b.is_zero() {
                        *a = a.clone() - f.clone() * b;
                    }
                }
            }
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let pv = row[pivot].clone();
        if !pv.is_one() {
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / pv.clone();
                }
            }
        }
        // clear the new pivot column in the existing rows
        for r in self.rows.iter_mut() {
            if !r[pivot].is_zero() {
                let f = r[pivot].clone();
                for (a, b) in r.iter_mut().zip(&row) {
                    if !b.is_zero() {
                        *a = a.clone() - f.clone() * b;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row);
        true
    }

    /// Kernel of the accumulated row space, echelonized.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        if self.rows.is_empty() {
            return (0..self.cols)
                .map(|i| {
                    let mut v = vec![Q::zero(); self.cols];
                    v[i] = Q::one();
                    v
                })
                .collect();
        }
        RationalMatrix::from_rows(self.rows.clone()).kernel()
    }

    pub fn into_subspace(self, label: impl Into<String>) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim: self.cols,
            ambient_label: label.into(),
            rows: self.rows,
        }
    }
}
