//! Linear maps on the matrix space that preserve a partition label:
//! applying structured (two-sided multiplication) maps, exhaustively
//! classifying all preserving invertible endomorphisms at small sizes,
//! and searching for structured extensions of maps given on a subcode.

use crate::budget::{pow_u128, Budget};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::kraw::{label_of, PartitionKind};
use crate::matgf::MatGF;

/// A map `A -> U A V`, or `A -> U A^T V` when the transpose flag is set
/// (square spaces only), with `U` and `V` invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    u: MatGF,
    v: MatGF,
    transposed: bool,
}

impl BilinearMap {
    pub fn new(u: MatGF, v: MatGF, transposed: bool) -> Result<BilinearMap> {
        if u.rows() != u.cols() || v.rows() != v.cols() {
            return Err(Error::ShapeMismatch("side factors must be square".into()));
        }
        if transposed && u.rows() != v.rows() {
            return Err(Error::ShapeMismatch(
                "transpose form needs a square matrix space".into(),
            ));
        }
        if !u.is_invertible() || !v.is_invertible() {
            return Err(Error::ShapeMismatch("side factors must be invertible".into()));
        }
        Ok(BilinearMap { u, v, transposed })
    }

    pub fn left(&self) -> &MatGF {
        &self.u
    }

    pub fn right(&self) -> &MatGF {
        &self.v
    }

    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    pub fn apply(&self, a: &MatGF) -> Result<MatGF> {
        let core = if self.transposed { a.transpose() } else { a.clone() };
        self.u.matmul(&core)?.matmul(&self.v)
    }

    /// Whether every codeword keeps its partition label under the map.
    pub fn is_preserving(
        &self,
        kind: PartitionKind,
        domain: &crate::codes::MatrixCode,
        budget: &Budget,
    ) -> Result<bool> {
        preserves(|a| self.apply(a), kind, domain, budget)
    }
}

/// An invertible linear endomorphism of the `n x m` matrix space, as an
/// `nm x nm` matrix acting on row-concatenated coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralLinearMap {
    n: usize,
    m: usize,
    mat: MatGF,
}

impl GeneralLinearMap {
    pub fn from_matrix(n: usize, m: usize, mat: MatGF) -> Result<GeneralLinearMap> {
        if mat.rows() != n * m || mat.cols() != n * m {
            return Err(Error::ShapeMismatch(
                "endomorphism matrix must be nm x nm".into(),
            ));
        }
        if !mat.is_invertible() {
            return Err(Error::ShapeMismatch(
                "endomorphism matrix must be invertible".into(),
            ));
        }
        Ok(GeneralLinearMap { n, m, mat })
    }

    /// The coordinate matrix of a two-sided multiplication map: column
    /// `k` is the image of the k-th standard basis matrix, flattened.
    pub fn from_bilinear(n: usize, m: usize, f: &BilinearMap) -> Result<GeneralLinearMap> {
        let ctx = f.left().ctx().clone();
        let nm = n * m;
        let mut images = Vec::with_capacity(nm);
        for i in 0..n {
            for j in 0..m {
                images.push(f.apply(&MatGF::standard_basis(&ctx, n, m, i, j))?);
            }
        }
        let mat = MatGF::from_fn(&ctx, nm, nm, |r, c| images[c].entries()[r]);
        GeneralLinearMap::from_matrix(n, m, mat)
    }

    pub fn matrix(&self) -> &MatGF {
        &self.mat
    }

    /// Stable encoding of the endomorphism, for ordering and set
    /// comparisons.
    pub fn code(&self) -> u128 {
        self.mat.code()
    }

    pub fn apply(&self, a: &MatGF) -> Result<MatGF> {
        if a.rows() != self.n || a.cols() != self.m {
            return Err(Error::ShapeMismatch("map applied to a wrong shape".into()));
        }
        let col = MatGF::from_flat(a.ctx(), self.n * self.m, 1, a.entries().to_vec());
        let image = self.mat.matmul(&col)?;
        Ok(MatGF::from_flat(
            a.ctx(),
            self.n,
            self.m,
            image.entries().to_vec(),
        ))
    }

    /// `self` after `other`: the composed coordinate matrix.
    pub fn compose(&self, other: &GeneralLinearMap) -> Result<GeneralLinearMap> {
        GeneralLinearMap::from_matrix(self.n, self.m, self.mat.matmul(&other.mat)?)
    }

    pub fn is_preserving(
        &self,
        kind: PartitionKind,
        domain: &crate::codes::MatrixCode,
        budget: &Budget,
    ) -> Result<bool> {
        preserves(|a| self.apply(a), kind, domain, budget)
    }
}

fn preserves<F>(
    apply: F,
    kind: PartitionKind,
    domain: &crate::codes::MatrixCode,
    budget: &Budget,
) -> Result<bool>
where
    F: Fn(&MatGF) -> Result<MatGF>,
{
    for w in domain.codewords(budget)? {
        if label_of(kind, &apply(&w)?) != label_of(kind, &w) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All invertible `n x n` matrices, ascending in their encoding.
pub fn gl_matrices(ctx: &FieldCtx, n: usize, budget: &Budget) -> Result<Vec<MatGF>> {
    let total = pow_u128(ctx.q(), (n * n) as u32);
    budget.check(total)?;
    Ok((0..total)
        .map(|c| MatGF::from_code(ctx, n, n, c))
        .filter(MatGF::is_invertible)
        .collect())
}

/// All invertible upper-triangular `n x n` matrices, ascending in their
/// encoding.
pub fn upper_triangular_invertible(
    ctx: &FieldCtx,
    n: usize,
    budget: &Budget,
) -> Result<Vec<MatGF>> {
    let total = pow_u128(ctx.q(), (n * n) as u32);
    budget.check(total)?;
    Ok((0..total)
        .map(|c| MatGF::from_code(ctx, n, n, c))
        .filter(|a| {
            a.is_invertible()
                && (0..n).all(|i| (0..i).all(|j| a.get(i, j).is_zero()))
        })
        .collect())
}

/// The structured candidate maps for a partition kind, in a fixed
/// deterministic order: left factors ascending, then right factors,
/// with plain maps before transposed ones.
///
/// * row-space: `A -> U A`;
/// * pivot: `A -> U A V` with `V` invertible upper triangular;
/// * rank: `A -> U A V`, plus `A -> U A^T V` on square spaces.
pub fn structured_family(
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    kind: PartitionKind,
    budget: &Budget,
) -> Result<Vec<BilinearMap>> {
    let left = gl_matrices(ctx, n, budget)?;
    let mut out = Vec::new();
    match kind {
        PartitionKind::RowSpace => {
            let id = MatGF::identity(ctx, m);
            for u in &left {
                out.push(BilinearMap::new(u.clone(), id.clone(), false)?);
            }
        }
        PartitionKind::Pivot | PartitionKind::RPivot => {
            let right = upper_triangular_invertible(ctx, m, budget)?;
            for u in &left {
                for v in &right {
                    out.push(BilinearMap::new(u.clone(), v.clone(), false)?);
                }
            }
        }
        PartitionKind::Rank => {
            let right = gl_matrices(ctx, m, budget)?;
            for u in &left {
                for v in &right {
                    out.push(BilinearMap::new(u.clone(), v.clone(), false)?);
                }
            }
            if n == m {
                for u in &left {
                    for v in &right {
                        out.push(BilinearMap::new(u.clone(), v.clone(), true)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exhaustively filters every invertible endomorphism of the matrix
/// space for the preserving property on the full space.  The `q^{(nm)^2}`
/// enumeration is guarded by the budget, which restricts this to tiny
/// parameters by design.
pub fn classify_preservers(
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    kind: PartitionKind,
    budget: &Budget,
) -> Result<Vec<GeneralLinearMap>> {
    let nm = n * m;
    let total = pow_u128(ctx.q(), (nm * nm) as u32);
    budget.check(total)?;
    let full = crate::codes::full_code(ctx, n, m);
    let words = full.codewords(budget)?;
    let labels: Vec<_> = words.iter().map(|w| label_of(kind, w)).collect();
    let mut out = Vec::new();
    for code in 0..total {
        let mat = MatGF::from_code(ctx, nm, nm, code);
        if !mat.is_invertible() {
            continue;
        }
        let map = GeneralLinearMap { n, m, mat };
        let ok = words
            .iter()
            .zip(&labels)
            .all(|(w, l)| match map.apply(w) {
                Ok(img) => &label_of(kind, &img) == l,
                Err(_) => false,
            });
        if ok {
            out.push(map);
        }
    }
    Ok(out)
}

/// Searches the structured family for a map agreeing with `f` on every
/// codeword of the subcode; returns the first match in family order.
pub fn extension_search<F>(
    c: &crate::codes::MatrixCode,
    f: F,
    kind: PartitionKind,
    budget: &Budget,
) -> Result<Option<BilinearMap>>
where
    F: Fn(&MatGF) -> Result<MatGF>,
{
    let words = c.codewords(budget)?;
    let images: Vec<MatGF> = words.iter().map(&f).collect::<Result<_>>()?;
    let family = structured_family(c.ctx(), c.rows(), c.cols(), kind, budget)?;
    'candidates: for cand in family {
        for (w, img) in words.iter().zip(&images) {
            if &cand.apply(w)? != img {
                continue 'candidates;
            }
        }
        return Ok(Some(cand));
    }
    Ok(None)
}
