//! Linear matrix codes under the rank metric: span and dual, codeword
//! enumeration, partition distributions, shortenings, minimum distance,
//! the extremality notions tied to shortenings, constructions of
//! maximum-size codes, and the predicted distributions that rigidity
//! arguments give for them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::budget::{pow_u128, Budget};
use crate::error::{Error, Result};
use crate::gf::{poly, FieldCtx, FieldElem};
use crate::kraw::{label_of, Distribution, PartitionKind};
use crate::lattice::gaussian_binomial_at;
use crate::matgf::{MatGF, PivotList, Subspace};

/// Which side row reduction is performed from when shortening against a
/// pivot list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotSide {
    Piv,
    RPiv,
}

/// How [`pad_code`] widens a code with extra columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadMode {
    /// Append zero columns: `A` becomes `(A | 0)`.
    ZeroPad,
    /// Append freely varying columns: all `(A | B)` with `B` arbitrary.
    FullPad,
    /// Prepend freely varying columns: all `(B | A)` with `B` arbitrary.
    FullPadFront,
}

/// A linear subspace of the `n x m` matrices over GF(q), stored as a
/// reduced (RREF) basis of row-concatenated generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCode {
    ctx: FieldCtx,
    n: usize,
    m: usize,
    basis: Vec<MatGF>,
    /// 1-based pivot positions of the flattened RREF basis rows.
    pivot_cols: Vec<usize>,
}

/// The span of the given generator matrices, with a reduced basis.
pub fn code_span(ctx: &FieldCtx, n: usize, m: usize, gens: &[MatGF]) -> Result<MatrixCode> {
    for g in gens {
        if g.rows() != n || g.cols() != m || g.ctx() != ctx {
            return Err(Error::ShapeMismatch(
                "generator does not match the code's ambient space".into(),
            ));
        }
    }
    if gens.is_empty() {
        return Ok(MatrixCode {
            ctx: ctx.clone(),
            n,
            m,
            basis: Vec::new(),
            pivot_cols: Vec::new(),
        });
    }
    let mut flat = Vec::with_capacity(gens.len() * n * m);
    for g in gens {
        flat.extend_from_slice(g.entries());
    }
    let stacked = MatGF::from_flat(ctx, gens.len(), n * m, flat);
    let rref = stacked.rref();
    let rank = rref.pivots.len();
    let basis = (0..rank)
        .map(|i| {
            let row: Vec<FieldElem> = (0..n * m).map(|j| rref.mat.get(i, j)).collect();
            MatGF::from_flat(ctx, n, m, row)
        })
        .collect();
    Ok(MatrixCode {
        ctx: ctx.clone(),
        n,
        m,
        basis,
        pivot_cols: rref.pivots.indices(),
    })
}

/// The zero code `{0}`.
pub fn zero_code(ctx: &FieldCtx, n: usize, m: usize) -> MatrixCode {
    code_span(ctx, n, m, &[]).expect("empty generator list is always consistent")
}

/// The full ambient space as a code.
pub fn full_code(ctx: &FieldCtx, n: usize, m: usize) -> MatrixCode {
    let gens: Vec<MatGF> = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| MatGF::standard_basis(ctx, n, m, i, j))
        .collect();
    code_span(ctx, n, m, &gens).expect("standard basis is consistent")
}

impl MatrixCode {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatGF] {
        &self.basis
    }

    /// `|C| = q^k`.
    pub fn size(&self) -> BigInt {
        BigInt::from(self.ctx.q()).pow(self.dim() as u32)
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, a: &MatGF) -> Result<bool> {
        if a.rows() != self.n || a.cols() != self.m || a.ctx() != &self.ctx {
            return Err(Error::ShapeMismatch(
                "matrix does not live in the code's ambient space".into(),
            ));
        }
        let mut acc = a.clone();
        for (b, &pc) in self.basis.iter().zip(&self.pivot_cols) {
            let (i, j) = ((pc - 1) / self.m, (pc - 1) % self.m);
            let c = acc.get(i, j);
            if !c.is_zero() {
                acc = acc.sub(&b.scalar_mul(c))?;
            }
        }
        Ok(acc.is_zero())
    }

    /// The trace-product dual `{B : <A,B> = 0 for all A in C}`, of
    /// dimension `nm - k`.
    pub fn dual_code(&self) -> MatrixCode {
        let nm = self.n * self.m;
        if self.basis.is_empty() {
            return full_code(&self.ctx, self.n, self.m);
        }
        let mut flat = Vec::with_capacity(self.basis.len() * nm);
        for b in &self.basis {
            flat.extend_from_slice(b.entries());
        }
        let stacked = MatGF::from_flat(&self.ctx, self.basis.len(), nm, flat);
        let kernel = stacked.nullspace();
        let gens: Vec<MatGF> = (0..kernel.rows())
            .map(|i| {
                let row: Vec<FieldElem> = (0..nm).map(|j| kernel.get(i, j)).collect();
                MatGF::from_flat(&self.ctx, self.n, self.m, row)
            })
            .collect();
        code_span(&self.ctx, self.n, self.m, &gens).expect("kernel rows are consistent")
    }

    /// All `q^k` codewords, in the base-q coefficient order of the
    /// reduced basis.
    pub fn codewords(&self, budget: &Budget) -> Result<Vec<MatGF>> {
        let q = self.ctx.q();
        let k = self.dim();
        let total = pow_u128(q, k as u32);
        budget.check(total)?;
        let mut words = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut acc = MatGF::zeros(&self.ctx, self.n, self.m);
            let mut c = idx;
            for b in self.basis.iter().rev() {
                let digit = (c % u128::from(q)) as u64;
                c /= u128::from(q);
                if digit != 0 {
                    acc = acc.add(&b.scalar_mul(self.ctx.elem(digit)))?;
                }
            }
            words.push(acc);
        }
        Ok(words)
    }

    /// The partition distribution of the code: for each block of the
    /// partition, how many codewords fall in it.  Counts sum to `q^k`.
    pub fn distribution(&self, kind: PartitionKind, budget: &Budget) -> Result<Distribution> {
        let mut dist = Distribution::new(kind);
        for w in self.codewords(budget)? {
            dist.add(label_of(kind, &w), BigInt::one());
        }
        Ok(dist)
    }

    /// Minimum rank over the nonzero codewords.
    pub fn min_rank_distance(&self, budget: &Budget) -> Result<usize> {
        if self.basis.is_empty() {
            return Err(Error::EmptyCode);
        }
        Ok(self
            .codewords(budget)?
            .iter()
            .filter(|w| !w.is_zero())
            .map(MatGF::rank)
            .min()
            .expect("nonzero dimension gives nonzero words"))
    }

    /// The shortening `C(U) = {A in C : rs(A) <= U}`, itself a code.
    pub fn shorten(&self, u: &Subspace, budget: &Budget) -> Result<MatrixCode> {
        if u.ambient() != self.m || u.ctx() != &self.ctx {
            return Err(Error::ShapeMismatch(
                "shortening space does not match the column space".into(),
            ));
        }
        let kept: Vec<MatGF> = self
            .codewords(budget)?
            .into_iter()
            .filter(|w| u.contains(&w.row_space()))
            .collect();
        code_span(&self.ctx, self.n, self.m, &kept)
    }

    /// The pivot shortening `{A in C : piv(A) <= lambda}` (or the
    /// reverse-pivot analog).  The result is a subset of the code but
    /// not a subspace in general, so it is returned as a word list.
    pub fn shorten_piv(
        &self,
        lambda: &PivotList,
        side: PivotSide,
        budget: &Budget,
    ) -> Result<Vec<MatGF>> {
        if lambda.m() != self.m {
            return Err(Error::ShapeMismatch(
                "pivot list does not match the column count".into(),
            ));
        }
        Ok(self
            .codewords(budget)?
            .into_iter()
            .filter(|w| {
                let p = match side {
                    PivotSide::Piv => w.pivots(),
                    PivotSide::RPiv => w.rpivots(),
                };
                p.is_subset(lambda)
            })
            .collect())
    }

    /// Whether the code is U-extremal: `C(U) = {0}` and `|C| = q^{n(m-u)}`.
    /// A trivial shortening forces `|C| <= q^{n(m-u)}`, which is asserted
    /// as an internal consistency check.
    pub fn is_u_extremal(&self, u: &Subspace, budget: &Budget) -> Result<bool> {
        let shortened = self.shorten(u, budget)?;
        let slack = self.n * (self.m - u.dim());
        if shortened.dim() == 0 {
            assert!(
                self.dim() <= slack,
                "trivial shortening must bound the code size"
            );
        }
        Ok(shortened.dim() == 0 && self.dim() == slack)
    }

    /// Whether the code is extremal for the pivot list: the pivot
    /// shortening is `{0}` and `|C| = q^{n(m-|lambda|)}`.
    pub fn is_piv_extremal(
        &self,
        lambda: &PivotList,
        side: PivotSide,
        budget: &Budget,
    ) -> Result<bool> {
        let subset = self.shorten_piv(lambda, side, budget)?;
        let trivial = subset.iter().all(MatGF::is_zero);
        Ok(trivial && self.dim() == self.n * (self.m - lambda.len()))
    }

    /// Whether the code meets the rank-metric size bound with equality:
    /// `|C| = q^{n(m-d+1)}` for its minimum distance `d` (the zero code
    /// counts as extremal by convention).
    pub fn is_mrd(&self, budget: &Budget) -> Result<bool> {
        if self.basis.is_empty() {
            return Ok(true);
        }
        let d = self.min_rank_distance(budget)?;
        Ok(self.dim() == self.n * (self.m - d + 1))
    }

    /// Serializes as a header `"n m q k"` followed by the `k` reduced
    /// basis matrices in the matrix text format, blank-line separated.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {} {}\n", self.n, self.m, self.ctx.q(), self.dim());
        for b in &self.basis {
            out.push('\n');
            out.push_str(&b.to_text());
        }
        out
    }

    /// Parses the format written by [`MatrixCode::to_text`].
    pub fn from_text(text: &str) -> Result<MatrixCode> {
        let mut lines = text.lines();
        let header = loop {
            match lines.next() {
                Some(l) if !l.trim().is_empty() => break l,
                Some(_) => continue,
                None => return Err(Error::Parse("empty code file".into())),
            }
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse(
                "code header must be \"n m q k\"".to_string(),
            ));
        }
        let parse = |s: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad code header field {s:?}: {e}")))
        };
        let (n, m, q, k) = (
            parse(fields[0])? as usize,
            parse(fields[1])? as usize,
            parse(fields[2])?,
            parse(fields[3])? as usize,
        );
        let ctx = crate::matgf::field_from_order(q)?;
        let mut chunks: Vec<Vec<&str>> = Vec::new();
        let mut current: Vec<&str> = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                if !current.is_empty() {
                    chunks.push(std::mem::take(&mut current));
                }
            } else {
                current.push(line);
            }
        }
        if !current.is_empty() {
            chunks.push(current);
        }
        if chunks.len() != k {
            return Err(Error::Parse(format!(
                "expected {k} generator matrices, found {}",
                chunks.len()
            )));
        }
        let mut gens = Vec::with_capacity(k);
        for chunk in chunks {
            let g = MatGF::from_text(&chunk.join("\n"))?;
            if g.rows() != n || g.cols() != m || g.ctx().q() != q {
                return Err(Error::Parse(
                    "generator shape disagrees with the code header".into(),
                ));
            }
            gens.push(g);
        }
        code_span(&ctx, n, m, &gens)
    }
}

/// The companion matrix of a monic polynomial (ascending coefficients):
/// multiplication by the variable on the power basis of the quotient.
pub fn companion_matrix(ctx: &FieldCtx, f: &[FieldElem]) -> MatGF {
    let d = f.len() - 1;
    MatGF::from_fn(ctx, d, d, |i, j| {
        if j + 1 == d {
            ctx.neg(f[i])
        } else if i == j + 1 {
            FieldElem::ONE
        } else {
            FieldElem::ZERO
        }
    })
}

/// The degree-m extension field embedded as m x m matrices: the span of
/// the powers of the companion matrix of the smallest monic irreducible
/// of degree m.  Every nonzero word is invertible, so the code has
/// minimum distance m and meets the size bound.
pub fn mrd_field_embedding(ctx: &FieldCtx, m: usize) -> Result<MatrixCode> {
    if m == 0 {
        return Err(Error::ShapeMismatch("embedding needs m >= 1".into()));
    }
    let f = poly::smallest_irreducible(ctx, m);
    let p = companion_matrix(ctx, &f);
    let mut gens = Vec::with_capacity(m);
    let mut acc = MatGF::identity(ctx, m);
    for _ in 0..m {
        gens.push(acc.clone());
        acc = acc.matmul(&p)?;
    }
    let code = code_span(ctx, m, m, &gens)?;
    debug_assert_eq!(code.dim(), m);
    Ok(code)
}

/// The first m columns of the degree-n field embedding: an n x m code
/// of dimension n whose nonzero words keep full column rank m (columns
/// of invertible matrices stay independent), so the minimum distance is
/// m and the size bound is met.
pub fn mrd_truncated_embedding(ctx: &FieldCtx, n: usize, m: usize) -> Result<MatrixCode> {
    if m == 0 || m > n {
        return Err(Error::ShapeMismatch(
            "column-truncated embedding needs 1 <= m <= n".into(),
        ));
    }
    let f = poly::smallest_irreducible(ctx, n);
    let p = companion_matrix(ctx, &f);
    let keep: Vec<usize> = (0..m).collect();
    let mut gens = Vec::with_capacity(n);
    let mut acc = MatGF::identity(ctx, n);
    for _ in 0..n {
        gens.push(acc.select_cols(&keep));
        acc = acc.matmul(&p)?;
    }
    let code = code_span(ctx, n, m, &gens)?;
    debug_assert_eq!(code.dim(), n);
    Ok(code)
}

/// Widens a code by `extra` columns per the mode: zero columns, a free
/// trailing block, or a free leading block.
pub fn pad_code(c: &MatrixCode, extra: usize, mode: PadMode) -> Result<MatrixCode> {
    let (ctx, n, m) = (c.ctx().clone(), c.rows(), c.cols());
    let wide = m + extra;
    let zeros = MatGF::zeros(&ctx, n, extra);
    let mut gens = Vec::new();
    match mode {
        PadMode::ZeroPad | PadMode::FullPad => {
            for b in c.basis() {
                gens.push(b.hconcat(&zeros)?);
            }
            if mode == PadMode::FullPad {
                for i in 0..n {
                    for j in m..wide {
                        gens.push(MatGF::standard_basis(&ctx, n, wide, i, j));
                    }
                }
            }
        }
        PadMode::FullPadFront => {
            for b in c.basis() {
                gens.push(zeros.hconcat(b)?);
            }
            for i in 0..n {
                for j in 0..extra {
                    gens.push(MatGF::standard_basis(&ctx, n, wide, i, j));
                }
            }
        }
    }
    code_span(&ctx, n, wide, &gens)
}

fn q_pow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn sign(parity: usize) -> BigInt {
    if parity % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// The alternating sum governing partial row-space distributions of
/// codes whose u-dimensional shortenings below a fixed space are all
/// trivial:
/// `sum_{i<=u} [v,i] (-1)^{v-i} q^{C(v-i,2)}
///  + sum_{i>u} [v,i] q^{n(i-u)} (-1)^{v-i} q^{C(v-i,2)}`.
pub fn predicted_rigid_rs(v: usize, u: usize, q: u64, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=v {
        let g = gaussian_binomial_at(v, i, q);
        if g.is_zero() {
            continue;
        }
        let stretch = if i > u { q_pow(q, n * (i - u)) } else { BigInt::one() };
        acc += sign(v - i) * q_pow(q, (v - i) * (v - i).saturating_sub(1) / 2) * g * stretch;
    }
    acc
}

/// Number of codewords of a maximum-size distance-d code with a fixed
/// v-dimensional row space: the rigid count at `u = d-1`.
pub fn predicted_mrd_rs(v: usize, d: usize, q: u64, n: usize) -> BigInt {
    predicted_rigid_rs(v, d - 1, q, n)
}

/// Number of codewords with pivot list `mu` predicted for codes whose
/// u-element pivot shortenings below a fixed list are all trivial:
/// `q^{c(mu)}` (the number of subspaces with that pivot list) times the
/// rigid row-space count at dimension `|mu|`.
pub fn predicted_rigid_piv(mu: &PivotList, u: usize, q: u64, n: usize) -> BigInt {
    q_pow(q, mu.free_cell_count()) * predicted_rigid_rs(mu.len(), u, q, n)
}

/// Predicted shortening size for the same family of codes: `|C(V)| = 1`
/// for `v <= u` and `q^{n(v-u)}` above.
pub fn predicted_shortened_size(v: usize, u: usize, q: u64, n: usize) -> BigInt {
    if v <= u {
        BigInt::one()
    } else {
        q_pow(q, n * (v - u))
    }
}

/// Both sides of the row-space moment identity
/// `sum_V [m-dim V, nu] P^rs(C,V) = |C| q^{-n nu} sum_W [m-dim W, m-nu]
/// P^rs(C_dual, W)`, computed independently.
pub fn binomial_moment(
    c: &MatrixCode,
    nu: usize,
    budget: &Budget,
) -> Result<(BigInt, BigInt)> {
    let (q, m) = (c.ctx().q(), c.cols());
    let dist = c.distribution(PartitionKind::RowSpace, budget)?;
    let dual_dist = c.dual_code().distribution(PartitionKind::RowSpace, budget)?;
    let dim_of = |label: &crate::kraw::PartitionLabel| -> usize {
        match label {
            crate::kraw::PartitionLabel::RowSpace(v) => v.dim(),
            _ => unreachable!("row-space distribution"),
        }
    };
    let mut lhs = BigInt::zero();
    for (label, count) in dist.iter() {
        lhs += gaussian_binomial_at(m - dim_of(label), nu, q) * count;
    }
    let mut dual_sum = BigInt::zero();
    for (label, count) in dual_dist.iter() {
        dual_sum += gaussian_binomial_at(m - dim_of(label), m - nu, q) * count;
    }
    let numer = c.size() * dual_sum;
    let denom = q_pow(q, c.rows() * nu);
    if (&numer % &denom) != BigInt::zero() {
        return Err(Error::NonIntegerResult);
    }
    Ok((lhs, numer / denom))
}

/// A uniformly random code of the requested dimension, built by drawing
/// uniform matrices until the span reaches it.  Deterministic given the
/// generator state.
pub fn random_code<R: Rng>(
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    k: usize,
    rng: &mut R,
) -> Result<MatrixCode> {
    if k > n * m {
        return Err(Error::ShapeMismatch(
            "requested dimension exceeds the ambient space".into(),
        ));
    }
    let q = ctx.q();
    let mut gens: Vec<MatGF> = Vec::with_capacity(k);
    let mut attempts = 0usize;
    loop {
        let code = code_span(ctx, n, m, &gens)?;
        if code.dim() == k {
            return Ok(code);
        }
        gens = code.basis().to_vec();
        let draw = MatGF::from_fn(ctx, n, m, |_, _| ctx.elem(rng.random_range(0..q)));
        gens.push(draw);
        attempts += 1;
        assert!(attempts < 10_000, "random span generation stalled");
    }
}
