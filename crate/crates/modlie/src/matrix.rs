//! Dense exact linear algebra over a `FieldCtx`: reduced row echelon
//! form, kernels, linear solving, division-free characteristic
//! polynomials and generalized eigenspaces.

use crate::field::{FieldCtx, FieldElem, FieldEmbedding, UniPoly};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    NotSquare,
    DimMismatch,
    FieldMismatch,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::NotSquare => write!(f, "matrix is not square"),
            MatError::DimMismatch => write!(f, "dimension mismatch"),
            MatError::FieldMismatch => write!(f, "field mismatch"),
        }
    }
}

impl std::error::Error for MatError {}

/// Dense row-major matrix over a fixed field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.ctx)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.row(i).iter().map(|&e| self.ctx.format_elem(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Mat {
        Mat { ctx: ctx.clone(), rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Mat {
        let mut m = Mat::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(ctx: &FieldCtx, rows: Vec<Vec<FieldElem>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        Mat { ctx: ctx.clone(), rows: r, cols: c, data }
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Mat {
        let mut m = Mat::zeros(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn flatten(&self) -> Vec<FieldElem> {
        self.data.clone()
    }

    pub fn from_flat(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<FieldElem>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { ctx: ctx.clone(), rows, cols, data }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.add(a, b))
            .collect();
        Mat { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.sub(a, b))
            .collect();
        Mat { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: FieldElem) -> Mat {
        let data = self.data.iter().map(|&a| self.ctx.mul(a, c)).collect();
        Mat { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = Mat::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                self.ctx.axpy_row(dst, other.row(k), a);
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![FieldElem::ZERO; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = FieldElem::ZERO;
            for (j, &x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc = self.ctx.add(acc, self.ctx.mul(self.get(i, j), x));
                }
            }
            *o = acc;
        }
        out
    }

    pub fn pow(&self, e: u64) -> Result<Mat, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let mut acc = Mat::identity(&self.ctx, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            base = base.matmul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<FieldElem, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let mut acc = FieldElem::ZERO;
        for i in 0..self.rows {
            acc = self.ctx.add(acc, self.get(i, i));
        }
        Ok(acc)
    }

    /// Entrywise image under a field embedding.
    pub fn map_scalars(&self, emb: &FieldEmbedding) -> Mat {
        let data = self.data.iter().map(|&e| emb.apply(e)).collect();
        Mat { ctx: emb.to.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Unique reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut rows = self.to_rows();
        let (rank, pivots) = rref_in_place(&self.ctx, &mut rows);
        Rref { mat: Mat::from_rows(&self.ctx, rows), rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the right kernel {v : self * v = 0}.
    pub fn kernel(&self) -> Subspace {
        let r = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![FieldElem::ZERO; n];
            v[free] = FieldElem::ONE;
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = self.ctx.neg(r.mat.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(&self.ctx, n, basis)
    }

    /// Solves self * X = rhs for all columns at once; None if any column
    /// is inconsistent.
    pub fn solve_multi(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let w = rhs.cols;
        let mut aug: Vec<Vec<FieldElem>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(n + w);
            row.extend_from_slice(self.row(i));
            row.extend_from_slice(rhs.row(i));
            aug.push(row);
        }
        let (rank, pivots) = rref_in_place(&self.ctx, &mut aug);
        // inconsistent iff a pivot lands in the rhs block
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut out = Mat::zeros(&self.ctx, n, w);
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            for j in 0..w {
                out.set(p, j, aug[i][n + j]);
            }
        }
        Some(out)
    }

    pub fn solve(&self, rhs: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let r = Mat::from_fn(&self.ctx, rhs.len(), 1, |i, _| rhs[i]);
        self.solve_multi(&r).map(|m| m.col(0))
    }

    /// Monic characteristic polynomial by the division-free
    /// Samuelson-Berkowitz recursion; valid in any characteristic.
    pub fn charpoly(&self) -> Result<UniPoly, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let ctx = &self.ctx;
        let n = self.rows;
        // coefficients highest-degree-first; charpoly of the empty matrix is 1
        let mut c = vec![FieldElem::ONE];
        for r in 1..=n {
            // principal r x r block: M = (r-1)x(r-1), R = last row, C = last col
            let a_rr = self.get(r - 1, r - 1);
            // s[0] = a_rr, s[j] = R M^{j-1} C
            let mut s = Vec::with_capacity(r);
            s.push(a_rr);
            if r > 1 {
                let mut v: Vec<FieldElem> = (0..r - 1).map(|i| self.get(i, r - 1)).collect();
                for _ in 1..r {
                    // s_j = R . v
                    let mut dot = FieldElem::ZERO;
                    for (i, &vi) in v.iter().enumerate() {
                        dot = ctx.add(dot, ctx.mul(self.get(r - 1, i), vi));
                    }
                    s.push(dot);
                    // v = M v
                    let mut nv = vec![FieldElem::ZERO; r - 1];
                    for (i, nvi) in nv.iter_mut().enumerate() {
                        let mut acc = FieldElem::ZERO;
                        for (j, &vj) in v.iter().enumerate() {
                            acc = ctx.add(acc, ctx.mul(self.get(i, j), vj));
                        }
                        *nvi = acc;
                    }
                    v = nv;
                }
            }
            // first column of the (r+1) x r Toeplitz transition: [1, -s_0, ..., -s_{r-1}]
            let mut col0 = Vec::with_capacity(r + 1);
            col0.push(FieldElem::ONE);
            for &si in &s {
                col0.push(ctx.neg(si));
            }
            let mut next = vec![FieldElem::ZERO; r + 1];
            for (i, nx) in next.iter_mut().enumerate() {
                let mut acc = FieldElem::ZERO;
                for (j, &cj) in c.iter().enumerate() {
                    if i >= j && i - j < col0.len() {
                        acc = ctx.add(acc, ctx.mul(col0[i - j], cj));
                    }
                }
                *nx = acc;
            }
            c = next;
        }
        c.reverse();
        Ok(UniPoly::from_coeffs(c))
    }

    /// Kernel of (self - alpha I)^n; nonzero iff alpha is an eigenvalue.
    pub fn gen_eigenspace(&self, alpha: FieldElem) -> Result<Subspace, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let shifted = self.sub(&Mat::identity(&self.ctx, self.rows).scale(alpha));
        let p = shifted.pow(self.rows as u64)?;
        Ok(p.kernel())
    }
}

/// Result of `Mat::rref`.
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// In-place RREF on a list of rows; returns (rank, pivot columns).
fn rref_in_place(ctx: &FieldCtx, rows: &mut [Vec<FieldElem>]) -> (usize, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let mut piv = None;
        for i in r..nrows {
            if !rows[i][col].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        rows.swap(r, piv);
        let inv = ctx.inv(rows[r][col]).expect("pivot nonzero");
        if inv != FieldElem::ONE {
            ctx.scale_row(&mut rows[r][col..], inv);
        }
        let (upper, lower) = rows.split_at_mut(r + 1);
        let prow = &upper[r];
        for row in lower.iter_mut() {
            let f = row[col];
            if !f.is_zero() {
                let nf = ctx.neg(f);
                ctx.axpy_row(&mut row[col..], &prow[col..], nf);
            }
        }
        pivots.push(col);
        r += 1;
    }
    // back-substitution: clear entries above each pivot
    for i in (0..pivots.len()).rev() {
        let col = pivots[i];
        let (upper, lower) = rows.split_at_mut(i);
        let prow = &lower[0];
        for row in upper.iter_mut() {
            let f = row[col];
            if !f.is_zero() {
                let nf = ctx.neg(f);
                ctx.axpy_row(&mut row[col..], &prow[col..], nf);
            }
        }
    }
    (pivots.len(), pivots)
}

/// A subspace of F_q^n held as its unique RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ctx: FieldCtx,
    ambient: usize,
    basis: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}^{})", self.dim(), self.ctx, self.ambient)
    }
}

impl Subspace {
    pub fn from_vectors(ctx: &FieldCtx, ambient: usize, vecs: Vec<Vec<FieldElem>>) -> Subspace {
        assert!(vecs.iter().all(|v| v.len() == ambient));
        let mut rows = vecs;
        let (rank, pivots) = rref_in_place(ctx, &mut rows);
        rows.truncate(rank);
        Subspace { ctx: ctx.clone(), ambient, basis: rows, pivots }
    }

    pub fn zero(ctx: &FieldCtx, ambient: usize) -> Subspace {
        Subspace { ctx: ctx.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ctx: &FieldCtx, ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![FieldElem::ZERO; ambient];
                v[i] = FieldElem::ONE;
                v
            })
            .collect();
        Subspace { ctx: ctx.clone(), ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of v after eliminating all pivot coordinates.
    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = w[p];
            if !f.is_zero() {
                let nf = self.ctx.neg(f);
                self.ctx.axpy_row(&mut w, &self.basis[i], nf);
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of v in the RREF basis, if contained.
    pub fn coords_of(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(&self.ctx, self.ambient, vecs)
    }

    pub fn map_scalars(&self, emb: &FieldEmbedding) -> Subspace {
        let vecs = self
            .basis
            .iter()
            .map(|v| v.iter().map(|&e| emb.apply(e)).collect())
            .collect();
        Subspace::from_vectors(&emb.to, self.ambient, vecs)
    }
}

/// Incremental span accumulator: rows kept forward-reduced so membership
/// and rank queries are cheap while vectors stream in.
pub struct SpanAcc {
    ctx: FieldCtx,
    ambient: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl SpanAcc {
    pub fn new(ctx: &FieldCtx, ambient: usize) -> SpanAcc {
        SpanAcc { ctx: ctx.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Reduces v against the accumulated rows; if a nonzero residue is
    /// left it joins the span. Returns true when the rank grew.
    pub fn add_vector(&mut self, v: &[FieldElem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = w[p];
            if !f.is_zero() {
                let nf = self.ctx.neg(f);
                self.ctx.axpy_row(&mut w[p..], &self.rows[i][p..], nf);
                w[p] = FieldElem::ZERO;
            }
        }
        let Some(lead) = w.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = self.ctx.inv(w[lead]).unwrap();
        if inv != FieldElem::ONE {
            self.ctx.scale_row(&mut w[lead..], inv);
        }
        // keep rows ordered by pivot column
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, lead);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = w[p];
            if !f.is_zero() {
                let nf = self.ctx.neg(f);
                self.ctx.axpy_row(&mut w[p..], &self.rows[i][p..], nf);
                w[p] = FieldElem::ZERO;
            }
        }
        w.iter().all(|e| e.is_zero())
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_vectors(&self.ctx, self.ambient, self.rows)
    }
}
