//! Matrices over a finite field: reduced row echelon form, pivot and
//! reverse-pivot profiles, row spaces, and the trace bilinear form
//! `<A, B> = Tr(A B^T)`.
//!
//! Matrix values are immutable after construction; every operation returns
//! a new value.  Pivot positions are 1-based throughout, matching the
//! usual combinatorial indexing of column sets.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};

/// A strictly increasing list of 1-based column indices in `[1, m]`,
/// stored as a bit set.  Used for pivot profiles of matrices in RREF and
/// for labelling pivot partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PivotList {
    m: usize,
    bits: u32,
}

impl PivotList {
    /// Builds a pivot list from 1-based indices, which must be strictly
    /// increasing and within `[1, m]`.
    pub fn new(m: usize, indices: &[usize]) -> Result<PivotList> {
        if m > 31 {
            return Err(Error::Parse(format!("ambient width {m} too large")));
        }
        let mut bits = 0u32;
        let mut prev = 0usize;
        for &j in indices {
            if j == 0 || j > m || j <= prev {
                return Err(Error::Parse(format!(
                    "pivot indices must be strictly increasing within [1, {m}]"
                )));
            }
            bits |= 1 << (j - 1);
            prev = j;
        }
        Ok(PivotList { m, bits })
    }

    pub fn empty(m: usize) -> PivotList {
        PivotList { m, bits: 0 }
    }

    pub fn full(m: usize) -> PivotList {
        assert!(m <= 31);
        PivotList {
            m,
            bits: if m == 0 { 0 } else { (1u32 << m) - 1 },
        }
    }

    /// The ambient width `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of indices in the list.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, j: usize) -> bool {
        j >= 1 && j <= self.m && self.bits >> (j - 1) & 1 == 1
    }

    /// The 1-based indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (1..=self.m).filter(|&j| self.contains(j)).collect()
    }

    /// Complement within `[1, m]` (the dual pivot list).
    pub fn complement(&self) -> PivotList {
        PivotList {
            m: self.m,
            bits: !self.bits & PivotList::full(self.m).bits,
        }
    }

    /// The reflected list `{m + 1 - j : j in self}`.
    pub fn reversed(&self) -> PivotList {
        let mut bits = 0u32;
        for j in self.indices() {
            bits |= 1 << (self.m - j);
        }
        PivotList { m: self.m, bits }
    }

    pub fn is_subset(&self, other: &PivotList) -> bool {
        debug_assert_eq!(self.m, other.m);
        self.bits & !other.bits == 0
    }

    pub fn intersect(&self, other: &PivotList) -> PivotList {
        debug_assert_eq!(self.m, other.m);
        PivotList {
            m: self.m,
            bits: self.bits & other.bits,
        }
    }

    /// Indices of `self` not in `other`.
    pub fn difference(&self, other: &PivotList) -> PivotList {
        debug_assert_eq!(self.m, other.m);
        PivotList {
            m: self.m,
            bits: self.bits & !other.bits,
        }
    }

    /// Number of free entries of an RREF matrix with this pivot profile:
    /// sum over rows i (1-based) of `m - lambda_i - (r - i)`.
    pub fn free_cell_count(&self) -> usize {
        let idx = self.indices();
        let r = idx.len();
        idx.iter()
            .enumerate()
            .map(|(i0, &lam)| self.m + (i0 + 1) - lam - r)
            .sum()
    }

    /// Every pivot list over `[1, m]`, sorted by (length, indices).
    pub fn all(m: usize) -> Vec<PivotList> {
        assert!(m <= 20, "pivot list enumeration is meant for small widths");
        let mut out: Vec<PivotList> = (0..1u32 << m).map(|bits| PivotList { m, bits }).collect();
        out.sort();
        out
    }
}

impl PartialOrd for PivotList {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PivotList {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.indices()).cmp(&(other.len(), other.indices()))
    }
}

impl std::fmt::Display for PivotList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        let strs: Vec<String> = self.indices().iter().map(|j| j.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Rebuilds the field context for a prime-power order `q` from the
/// built-in modulus table (the inverse of what the text formats store).
pub fn field_from_order(q: u64) -> Result<FieldCtx> {
    if q < 2 {
        return Err(Error::Parse(format!("invalid field order {q}")));
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
        if p * p > q {
            p = q;
            break;
        }
    }
    let mut e = 0u32;
    let mut rest = q;
    while rest > 1 {
        if rest % p != 0 {
            return Err(Error::Parse(format!("field order {q} is not a prime power")));
        }
        rest /= p;
        e += 1;
    }
    FieldCtx::new(p, e, None)
}

/// An `n x m` matrix over GF(q), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatGF {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Result of Gauss-Jordan elimination: the canonical RREF together with
/// the 1-based pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: MatGF,
    pub pivots: PivotList,
}

impl MatGF {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> MatGF {
        MatGF {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> MatGF {
        let mut m = MatGF::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElem::ONE;
        }
        m
    }

    /// The standard basis matrix with a single 1 at 0-based `(i, j)`.
    pub fn standard_basis(ctx: &FieldCtx, rows: usize, cols: usize, i: usize, j: usize) -> MatGF {
        let mut m = MatGF::zeros(ctx, rows, cols);
        m.data[i * cols + j] = FieldElem::ONE;
        m
    }

    /// Builds a matrix from row-major integer encodings.
    pub fn from_entries(ctx: &FieldCtx, rows: usize, cols: usize, vals: &[u64]) -> Result<MatGF> {
        if vals.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                vals.len()
            )));
        }
        let data = vals
            .iter()
            .map(|&v| ctx.try_elem(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatGF {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(ctx: &FieldCtx, rows: &[Vec<u64>]) -> Result<MatGF> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let flat: Vec<u64> = rows.iter().flatten().copied().collect();
        MatGF::from_entries(ctx, rows.len(), cols, &flat)
    }

    pub fn from_fn<F: FnMut(usize, usize) -> FieldElem>(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> MatGF {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatGF {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row vectors of field elements.
    pub fn from_flat(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<FieldElem>) -> MatGF {
        assert_eq!(data.len(), rows * cols);
        MatGF {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
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

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn same_shape(&self, other: &MatGF) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ShapeMismatch("operands over different fields".into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatGF) -> Result<MatGF> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.add(a, b))
            .collect();
        Ok(MatGF {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &MatGF) -> Result<MatGF> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.sub(a, b))
            .collect();
        Ok(MatGF {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> MatGF {
        let data = self.data.iter().map(|&a| self.ctx.neg(a)).collect();
        MatGF {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scalar_mul(&self, c: FieldElem) -> MatGF {
        let data = self.data.iter().map(|&a| self.ctx.mul(c, a)).collect();
        MatGF {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn matmul(&self, other: &MatGF) -> Result<MatGF> {
        if self.ctx != other.ctx {
            return Err(Error::ShapeMismatch("operands over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatGF::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.ctx.mul(a, other.get(k, j));
                    out.data[i * other.cols + j] = self.ctx.add(out.data[i * other.cols + j], t);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> MatGF {
        let mut out = MatGF::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Columns in reverse order (multiplication by the reversal matrix Z).
    pub fn reverse_cols(&self) -> MatGF {
        MatGF::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            self.get(i, self.cols - 1 - j)
        })
    }

    /// Keeps the 0-based columns listed in `keep`, in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> MatGF {
        MatGF::from_fn(&self.ctx, self.rows, keep.len(), |i, j| self.get(i, keep[j]))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &MatGF) -> Result<MatGF> {
        if self.ctx != other.ctx || self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack of incompatible matrices".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatGF {
            ctx: self.ctx.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Horizontal concatenation.
    pub fn hconcat(&self, other: &MatGF) -> Result<MatGF> {
        if self.ctx != other.ctx || self.rows != other.rows {
            return Err(Error::ShapeMismatch("hconcat of incompatible matrices".into()));
        }
        Ok(MatGF::from_fn(
            &self.ctx,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j)
                } else {
                    other.get(i, j - self.cols)
                }
            },
        ))
    }

    /// Canonical reduced row echelon form with 1-based pivot columns.
    pub fn rref(&self) -> Rref {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let ctx = &self.ctx;
        let mut piv_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                a.swap(r * cols + j, pr * cols + j);
            }
            let inv = ctx.inv(a[r * cols + c]).expect("pivot is non-zero");
            for j in 0..cols {
                a[r * cols + j] = ctx.mul(inv, a[r * cols + j]);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a[i * cols + c];
                if f.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let t = ctx.mul(f, a[r * cols + j]);
                    a[i * cols + j] = ctx.sub(a[i * cols + j], t);
                }
            }
            piv_cols.push(c + 1);
            r += 1;
            if r == rows {
                break;
            }
        }
        Rref {
            mat: MatGF {
                ctx: self.ctx.clone(),
                rows,
                cols,
                data: a,
            },
            pivots: PivotList::new(cols, &piv_cols).expect("pivot columns are increasing"),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// The pivot profile `piv(A)`: 1-based pivot columns of the RREF.
    pub fn pivots(&self) -> PivotList {
        self.rref().pivots
    }

    /// The reverse pivot profile `rpiv(A)`: with `piv(A Z) = (j_1 < ... <
    /// j_r)` over the column-reversed matrix, `rpiv(A) = {m + 1 - j_i}`.
    pub fn rpivots(&self) -> PivotList {
        self.reverse_cols().pivots().reversed()
    }

    /// The row space as a canonical subspace of F^m.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_span(self)
    }

    /// A canonical RREF basis of the right kernel `{x : A x^T = 0}`,
    /// returned as a `(cols - rank) x cols` matrix.
    pub fn nullspace(&self) -> MatGF {
        let Rref { mat: r, pivots } = self.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (1..=self.cols).filter(|&j| !pivots.contains(j)).collect();
        let piv_idx = pivots.indices();
        let mut basis = MatGF::zeros(&self.ctx, free.len(), self.cols);
        for (row, &fj) in free.iter().enumerate() {
            basis.data[row * self.cols + (fj - 1)] = FieldElem::ONE;
            for (i, &pj) in piv_idx.iter().enumerate().take(rank) {
                let v = r.get(i, fj - 1);
                basis.data[row * self.cols + (pj - 1)] = self.ctx.neg(v);
            }
        }
        // Canonicalize: kernel vectors built from free columns need not be
        // in RREF order.
        basis.rref().mat.drop_zero_rows()
    }

    fn drop_zero_rows(&self) -> MatGF {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| (0..self.cols).any(|j| !self.get(i, j).is_zero()))
            .collect();
        MatGF::from_fn(&self.ctx, keep.len(), self.cols, |i, j| self.get(keep[i], j))
    }

    /// The trace product `<A, B> = Tr(A B^T) = sum_ij A_ij B_ij`.
    pub fn trace_product(&self, other: &MatGF) -> Result<FieldElem> {
        self.same_shape(other)?;
        let mut acc = FieldElem::ZERO;
        for (&a, &b) in self.data.iter().zip(&other.data) {
            acc = self.ctx.add(acc, self.ctx.mul(a, b));
        }
        Ok(acc)
    }

    /// Row-major base-q integer encoding, first entry most significant, so
    /// numeric order equals lexicographic order on entries.
    pub fn code(&self) -> u128 {
        let q = u128::from(self.ctx.q());
        let mut acc: u128 = 0;
        for x in &self.data {
            acc = acc
                .checked_mul(q)
                .and_then(|a| a.checked_add(u128::from(x.val())))
                .expect("matrix too large to encode");
        }
        acc
    }

    /// Inverse of [`MatGF::code`].
    pub fn from_code(ctx: &FieldCtx, rows: usize, cols: usize, code: u128) -> MatGF {
        let q = u128::from(ctx.q());
        let mut data = vec![FieldElem::ZERO; rows * cols];
        let mut c = code;
        for slot in data.iter_mut().rev() {
            *slot = ctx.elem((c % q) as u64);
            c /= q;
        }
        assert_eq!(c, 0, "code out of range for shape");
        MatGF {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Serializes as `"rows cols q"` followed by one line per row of
    /// whitespace-separated entry encodings.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.ctx.q());
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`MatGF::to_text`].  The field is
    /// rebuilt from its order via the built-in modulus table.
    pub fn from_text(text: &str) -> Result<MatGF> {
        let mut tokens = text.split_whitespace();
        let mut header = || -> Result<u64> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse("missing matrix header field".into()))?
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad matrix header: {e}")))
        };
        let rows = header()? as usize;
        let cols = header()? as usize;
        let q = header()?;
        let ctx = field_from_order(q)?;
        let mut vals = Vec::with_capacity(rows * cols);
        for tok in tokens {
            let v = tok
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad matrix entry {tok:?}: {e}")))?;
            vals.push(v);
        }
        if vals.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                rows * cols,
                vals.len()
            )));
        }
        MatGF::from_entries(&ctx, rows, cols, &vals)
    }
}

/// A subspace of the row space F^m, canonically represented by the RREF
/// basis with zero rows dropped.  Equality, hashing and ordering are
/// bit-for-bit on that canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: MatGF,
}

impl Subspace {
    /// The row space of any spanning matrix.
    pub fn from_span(span: &MatGF) -> Subspace {
        Subspace {
            basis: span.rref().mat.drop_zero_rows(),
        }
    }

    pub fn zero(ctx: &FieldCtx, m: usize) -> Subspace {
        Subspace {
            basis: MatGF::zeros(ctx, 0, m),
        }
    }

    pub fn full(ctx: &FieldCtx, m: usize) -> Subspace {
        Subspace {
            basis: MatGF::identity(ctx, m),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Dimension of the ambient space F^m.
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.basis.ctx()
    }

    /// The canonical RREF basis, one row per dimension.
    pub fn basis(&self) -> &MatGF {
        &self.basis
    }

    /// Pivot profile of the subspace (pivot columns of the RREF basis).
    pub fn piv(&self) -> PivotList {
        let mut cols = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let j = (0..self.ambient())
                .find(|&j| !self.basis.get(i, j).is_zero())
                .expect("basis rows are non-zero");
            cols.push(j + 1);
        }
        PivotList::new(self.ambient(), &cols).expect("RREF pivots are increasing")
    }

    /// Reverse pivot profile of the subspace.
    pub fn rpiv(&self) -> PivotList {
        self.basis.rpivots()
    }

    /// Whether `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        if other.dim() > self.dim() {
            return false;
        }
        let stacked = self.basis.vstack(&other.basis).expect("same ambient space");
        stacked.rank() == self.dim()
    }

    /// Whether the 1 x m row vector lies in the subspace.
    pub fn contains_row(&self, row: &MatGF) -> bool {
        let stacked = self.basis.vstack(row).expect("same ambient space");
        stacked.rank() == self.dim()
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let stacked = self.basis.vstack(&other.basis).expect("same ambient space");
        self.dim() + other.dim() - stacked.rank()
    }

    /// The orthogonal complement under the standard bilinear form.
    pub fn dual(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ctx(), self.ambient());
        }
        Subspace {
            basis: self.basis.nullspace(),
        }
    }

    /// Sort key: (dimension, basis entry encodings).
    fn key(&self) -> (usize, Vec<u64>) {
        (
            self.dim(),
            self.basis.entries().iter().map(|x| x.val()).collect(),
        )
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.dim() == 0 {
            return write!(f, "0");
        }
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                (0..self.ambient())
                    .map(|j| self.basis.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::pow_u128;

    fn gf(q: u64) -> FieldCtx {
        field_from_order(q).unwrap()
    }

    fn all_matrices(ctx: &FieldCtx, rows: usize, cols: usize) -> Vec<MatGF> {
        let count = pow_u128(ctx.q(), (rows * cols) as u32);
        (0..count)
            .map(|c| MatGF::from_code(ctx, rows, cols, c))
            .collect()
    }

    #[test]
    fn pivot_list_basics() {
        let l = PivotList::new(7, &[3, 4, 6]).unwrap();
        assert_eq!(l.indices(), vec![3, 4, 6]);
        assert_eq!(l.complement().indices(), vec![1, 2, 5, 7]);
        assert_eq!(l.complement().complement(), l);
        assert_eq!(l.reversed().indices(), vec![2, 4, 5]);
        assert_eq!(l.reversed().reversed(), l);
        assert_eq!(l.to_string(), "3,4,6");
        assert_eq!(PivotList::empty(3).to_string(), "()");
        assert!(PivotList::new(3, &[2, 2]).is_err());
        assert!(PivotList::new(3, &[0]).is_err());
        assert!(PivotList::new(3, &[4]).is_err());
        assert_eq!(PivotList::all(3).len(), 8);
    }

    #[test]
    fn free_cell_counts() {
        assert_eq!(PivotList::new(2, &[1]).unwrap().free_cell_count(), 1);
        assert_eq!(PivotList::new(2, &[2]).unwrap().free_cell_count(), 0);
        assert_eq!(PivotList::new(2, &[1, 2]).unwrap().free_cell_count(), 0);
        // lambda = (1,4,6) in width 7: rows have 4, 2 and 1 free entries.
        assert_eq!(PivotList::new(7, &[1, 4, 6]).unwrap().free_cell_count(), 7);
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        let a = MatGF::from_rows(&f, &[vec![0, 1], vec![0, 0]]).unwrap();
        let r = a.rref();
        assert_eq!(r.mat, a);
        assert_eq!(r.pivots.indices(), vec![2]);

        let b = MatGF::from_rows(&f, &[vec![1, 1], vec![1, 0]]).unwrap();
        let r = b.rref();
        assert_eq!(r.mat, MatGF::identity(&f, 2));
        assert_eq!(r.pivots.indices(), vec![1, 2]);

        let f3 = gf(3);
        // (1,2,0) = 2*(2,1,0) over GF(3), so this has rank 1.
        let c = MatGF::from_rows(&f3, &[vec![2, 1, 0], vec![1, 2, 0]]).unwrap();
        let r = c.rref();
        assert_eq!(
            r.mat,
            MatGF::from_rows(&f3, &[vec![1, 2, 0], vec![0, 0, 0]]).unwrap()
        );
        assert_eq!(r.pivots.indices(), vec![1]);

        let d = MatGF::from_rows(&f3, &[vec![2, 1, 0], vec![1, 2, 1]]).unwrap();
        let r = d.rref();
        assert_eq!(
            r.mat,
            MatGF::from_rows(&f3, &[vec![1, 2, 0], vec![0, 0, 1]]).unwrap()
        );
        assert_eq!(r.pivots.indices(), vec![1, 3]);
    }

    /// Pivots must agree with the column-space growth characterization:
    /// j is a pivot iff column j is outside the span of columns 1..j-1.
    #[test]
    fn pivots_match_column_growth() {
        for (q, rows, cols) in [(2, 2, 3), (3, 2, 2), (2, 3, 2)] {
            let f = gf(q);
            for a in all_matrices(&f, rows, cols) {
                let expected: Vec<usize> = (1..=cols)
                    .filter(|&j| {
                        let head = a.select_cols(&(0..j - 1).collect::<Vec<_>>());
                        let upto = a.select_cols(&(0..j).collect::<Vec<_>>());
                        upto.rank() > head.rank()
                    })
                    .collect();
                assert_eq!(a.pivots().indices(), expected, "matrix {:?}", a.entries());
            }
        }
    }

    /// Reverse pivots must agree with the right-to-left span growth
    /// characterization, and always have the same cardinality as the rank.
    #[test]
    fn rpivots_match_reverse_column_growth() {
        for (q, rows, cols) in [(2, 2, 3), (3, 2, 2), (2, 3, 2)] {
            let f = gf(q);
            for a in all_matrices(&f, rows, cols) {
                let expected: Vec<usize> = (1..=cols)
                    .filter(|&j| {
                        let tail = a.select_cols(&(j..cols).collect::<Vec<_>>());
                        let from = a.select_cols(&(j - 1..cols).collect::<Vec<_>>());
                        from.rank() > tail.rank()
                    })
                    .collect();
                assert_eq!(a.rpivots().indices(), expected, "matrix {:?}", a.entries());
                assert_eq!(a.rpivots().len(), a.rank());
                assert_eq!(a.pivots().len(), a.rank());
            }
        }
    }

    fn gl2_f2(f: &FieldCtx) -> Vec<MatGF> {
        all_matrices(f, 2, 2)
            .into_iter()
            .filter(MatGF::is_invertible)
            .collect()
    }

    /// piv is invariant under row operations and upper-triangular column
    /// operations; rpiv under row operations and lower-triangular ones.
    #[test]
    fn pivot_orbit_invariance() {
        let f = gf(2);
        let upper = [
            MatGF::identity(&f, 2),
            MatGF::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap(),
        ];
        for a in all_matrices(&f, 2, 2) {
            for s in gl2_f2(&f) {
                for u in &upper {
                    let b = s.matmul(&a).unwrap().matmul(u).unwrap();
                    assert_eq!(b.pivots(), a.pivots());
                    let l = u.transpose();
                    let c = s.matmul(&a).unwrap().matmul(&l).unwrap();
                    assert_eq!(c.rpivots(), a.rpivots());
                }
            }
        }
    }

    #[test]
    fn trace_product_matches_trace_of_product() {
        let f = gf(3);
        for a in all_matrices(&f, 2, 2) {
            for b in all_matrices(&f, 2, 2).into_iter().take(20) {
                let prod = a.matmul(&b.transpose()).unwrap();
                let mut tr = FieldElem::ZERO;
                for i in 0..2 {
                    tr = f.add(tr, prod.get(i, i));
                }
                assert_eq!(a.trace_product(&b).unwrap(), tr);
                assert_eq!(a.trace_product(&b).unwrap(), b.trace_product(&a).unwrap());
            }
        }
    }

    /// The trace pairing on the full matrix space is non-degenerate.
    #[test]
    fn trace_product_nondegenerate() {
        let f = gf(2);
        for b in all_matrices(&f, 2, 2) {
            if b.is_zero() {
                continue;
            }
            assert!(all_matrices(&f, 2, 2)
                .iter()
                .any(|a| !a.trace_product(&b).unwrap().is_zero()));
        }
    }

    #[test]
    fn text_round_trip() {
        let f = gf(4);
        let a = MatGF::from_rows(&f, &[vec![0, 1, 2], vec![3, 2, 1]]).unwrap();
        let text = a.to_text();
        assert_eq!(text, "2 3 4\n0 1 2\n3 2 1\n");
        assert_eq!(MatGF::from_text(&text).unwrap(), a);
        // Entry out of range and wrong counts are rejected.
        assert!(MatGF::from_text("1 1 2\n5\n").is_err());
        assert!(MatGF::from_text("2 2 2\n1 0 1\n").is_err());
        assert!(MatGF::from_text("2 2 6\n0 0\n0 0\n").is_err());
    }

    #[test]
    fn code_round_trip() {
        let f = gf(3);
        for a in all_matrices(&f, 2, 2) {
            assert_eq!(MatGF::from_code(&f, 2, 2, a.code()), a);
        }
        // Lexicographic order of entries equals numeric order of codes.
        let lo = MatGF::from_rows(&f, &[vec![0, 1], vec![0, 0]]).unwrap();
        let hi = MatGF::from_rows(&f, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(lo.code() < hi.code());
    }

    #[test]
    fn nullspace_solves() {
        for (q, rows, cols) in [(2, 2, 3), (3, 2, 2)] {
            let f = gf(q);
            for a in all_matrices(&f, rows, cols) {
                let ns = a.nullspace();
                assert_eq!(ns.rows(), cols - a.rank());
                for i in 0..ns.rows() {
                    let x = ns.select_cols(&(0..cols).collect::<Vec<_>>());
                    let xi = MatGF::from_fn(&f, 1, cols, |_, j| x.get(i, j));
                    let prod = a.matmul(&xi.transpose()).unwrap();
                    assert!(prod.is_zero(), "kernel vector fails for {:?}", a.entries());
                }
                // The basis is canonical RREF of full row rank.
                assert_eq!(ns.rank(), ns.rows());
            }
        }
    }

    #[test]
    fn subspace_canonical_and_duality() {
        let f = gf(2);
        let a = MatGF::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(Subspace::from_span(&a), Subspace::full(&f, 2));
        let zero = Subspace::zero(&f, 2);
        assert_eq!(zero.dual(), Subspace::full(&f, 2));
        assert_eq!(Subspace::full(&f, 2).dual(), zero);
        // Exhaustive double-dual and dimension law over small spaces.
        for (q, rows, cols) in [(2, 2, 3), (3, 2, 2)] {
            let f = gf(q);
            for m in all_matrices(&f, rows, cols) {
                let v = m.row_space();
                let w = v.dual();
                assert_eq!(v.dim() + w.dim(), cols);
                assert_eq!(w.dual(), v);
                // Every vector of V pairs to zero with every vector of V-perp.
                for i in 0..v.dim() {
                    for j in 0..w.dim() {
                        let vi = MatGF::from_fn(&f, 1, cols, |_, c| v.basis().get(i, c));
                        let wj = MatGF::from_fn(&f, 1, cols, |_, c| w.basis().get(j, c));
                        assert!(vi.trace_product(&wj).unwrap().is_zero());
                    }
                }
            }
        }
    }

    /// The reverse pivots of the dual subspace are the complement of the
    /// pivots of the subspace.
    #[test]
    fn dual_subspace_pivot_duality() {
        for (q, rows, cols) in [(2, 3, 3), (3, 2, 3)] {
            let f = gf(q);
            for m in all_matrices(&f, rows, cols) {
                let v = m.row_space();
                assert_eq!(v.dual().rpiv(), v.piv().complement());
            }
        }
    }

    #[test]
    fn subspace_containment_and_intersection() {
        let f = gf(2);
        let e1 = Subspace::from_span(&MatGF::from_rows(&f, &[vec![1, 0]]).unwrap());
        let e2 = Subspace::from_span(&MatGF::from_rows(&f, &[vec![0, 1]]).unwrap());
        let full = Subspace::full(&f, 2);
        assert!(full.contains(&e1));
        assert!(!e1.contains(&e2));
        assert_eq!(e1.intersection_dim(&e2), 0);
        assert_eq!(full.intersection_dim(&e1), 1);
        assert!(e1.contains_row(&MatGF::from_rows(&f, &[vec![1, 0]]).unwrap()));
        assert!(!e1.contains_row(&MatGF::from_rows(&f, &[vec![0, 1]]).unwrap()));
    }

    #[test]
    fn field_from_order_parses_prime_powers() {
        assert_eq!(field_from_order(8).unwrap().p(), 2);
        assert_eq!(field_from_order(9).unwrap().e(), 2);
        assert!(field_from_order(6).is_err());
        assert!(field_from_order(1).is_err());
        assert!(matches!(
            field_from_order(32),
            Err(Error::UnsupportedSize { .. })
        ));
    }
}
