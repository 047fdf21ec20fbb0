//! Krawtchouk coefficients for the rank, row-space, pivot and
//! reverse-pivot partitions of a matrix space, together with the
//! machinery around them: exact character sums in cyclotomic integers,
//! explicit dual-partition computation, partition distributions, and the
//! MacWilliams transform between a code's distribution and its dual's.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::{pow_u128, Budget};
use crate::error::{Error, Result};
use crate::ferrers::stacked_rank_count;
use crate::gf::FieldCtx;
use crate::lattice::{gaussian_binomial_at, subspaces};
use crate::matgf::{MatGF, PivotList, Subspace};

/// An element of the ring of integers of the p-th cyclotomic field, on
/// the power basis `1, z, ..., z^{p-2}` with `z` a primitive p-th root
/// of unity; `z^{p-1}` reduces to `-(1 + z + ... + z^{p-2})`.
///
/// Character sums need only addition, so no multiplication is provided.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    p: u64,
    coords: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(p: u64) -> CycInt {
        CycInt {
            p,
            coords: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn from_int(p: u64, n: BigInt) -> CycInt {
        let mut c = CycInt::zero(p);
        c.coords[0] = n;
        c
    }

    /// `z^k`, reduced to the power basis.
    pub fn root_power(p: u64, k: u64) -> CycInt {
        let k = k % p;
        let mut c = CycInt::zero(p);
        if k == p - 1 {
            for slot in c.coords.iter_mut() {
                *slot = -BigInt::one();
            }
        } else {
            c.coords[k as usize] = BigInt::one();
        }
        c
    }

    pub fn add_assign(&mut self, other: &CycInt) {
        debug_assert_eq!(self.p, other.p);
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            p: self.p,
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational-integer value, if all higher coordinates vanish.
    pub fn as_int(&self) -> Option<BigInt> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(n) = self.as_int() {
            return write!(f, "{n}");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The four invariant partitions of the matrix space this library knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionKind {
    Rank,
    RowSpace,
    Pivot,
    RPivot,
}

impl PartitionKind {
    /// The kind of the dual partition: rank and row-space are self-dual,
    /// pivot and reverse-pivot are each other's duals.
    pub fn dual(self) -> PartitionKind {
        match self {
            PartitionKind::Rank => PartitionKind::Rank,
            PartitionKind::RowSpace => PartitionKind::RowSpace,
            PartitionKind::Pivot => PartitionKind::RPivot,
            PartitionKind::RPivot => PartitionKind::Pivot,
        }
    }
}

impl std::fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PartitionKind::Rank => "rank",
            PartitionKind::RowSpace => "rowspace",
            PartitionKind::Pivot => "pivot",
            PartitionKind::RPivot => "rpivot",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for PartitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<PartitionKind> {
        match s {
            "rank" => Ok(PartitionKind::Rank),
            "rowspace" => Ok(PartitionKind::RowSpace),
            "pivot" => Ok(PartitionKind::Pivot),
            "rpivot" => Ok(PartitionKind::RPivot),
            other => Err(Error::Parse(format!("unknown partition kind {other:?}"))),
        }
    }
}

/// A block index of one of the four partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionLabel {
    Rank(usize),
    RowSpace(Subspace),
    Pivot(PivotList),
    RPivot(PivotList),
}

impl PartitionLabel {
    pub fn kind(&self) -> PartitionKind {
        match self {
            PartitionLabel::Rank(_) => PartitionKind::Rank,
            PartitionLabel::RowSpace(_) => PartitionKind::RowSpace,
            PartitionLabel::Pivot(_) => PartitionKind::Pivot,
            PartitionLabel::RPivot(_) => PartitionKind::RPivot,
        }
    }
}

impl std::fmt::Display for PartitionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartitionLabel::Rank(r) => write!(f, "{r}"),
            PartitionLabel::RowSpace(u) => write!(f, "{u}"),
            PartitionLabel::Pivot(l) | PartitionLabel::RPivot(l) => write!(f, "{l}"),
        }
    }
}

/// The block of the partition that a matrix belongs to.
pub fn label_of(kind: PartitionKind, a: &MatGF) -> PartitionLabel {
    match kind {
        PartitionKind::Rank => PartitionLabel::Rank(a.rank()),
        PartitionKind::RowSpace => PartitionLabel::RowSpace(a.row_space()),
        PartitionKind::Pivot => PartitionLabel::Pivot(a.pivots()),
        PartitionKind::RPivot => PartitionLabel::RPivot(a.rpivots()),
    }
}

/// All block labels of the partition on the `n x m` matrix space, in a
/// deterministic order.
pub fn labels(
    kind: PartitionKind,
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Vec<PartitionLabel>> {
    let rmax = n.min(m);
    Ok(match kind {
        PartitionKind::Rank => (0..=rmax).map(PartitionLabel::Rank).collect(),
        PartitionKind::RowSpace => subspaces(ctx, m, budget)?
            .into_iter()
            .filter(|u| u.dim() <= rmax)
            .map(PartitionLabel::RowSpace)
            .collect(),
        PartitionKind::Pivot => PivotList::all(m)
            .into_iter()
            .filter(|l| l.len() <= rmax)
            .map(PartitionLabel::Pivot)
            .collect(),
        PartitionKind::RPivot => PivotList::all(m)
            .into_iter()
            .filter(|l| l.len() <= rmax)
            .map(PartitionLabel::RPivot)
            .collect(),
    })
}

/// A canonical member of the block: a partial identity for rank blocks,
/// a padded basis matrix for row-space blocks, and the all-zero-free-
/// entry echelon forms for the two pivot kinds.
pub fn block_representative(
    label: &PartitionLabel,
    ctx: &FieldCtx,
    n: usize,
    m: usize,
) -> MatGF {
    let mut data = MatGF::zeros(ctx, n, m).entries().to_vec();
    match label {
        PartitionLabel::Rank(r) => {
            for i in 0..*r {
                data[i * m + i] = ctx.elem(1);
            }
        }
        PartitionLabel::RowSpace(u) => {
            for i in 0..u.dim() {
                for j in 0..m {
                    data[i * m + j] = u.basis().get(i, j);
                }
            }
        }
        PartitionLabel::Pivot(l) | PartitionLabel::RPivot(l) => {
            for (i, j) in l.indices().into_iter().enumerate() {
                data[i * m + (j - 1)] = ctx.elem(1);
            }
        }
    }
    MatGF::from_flat(ctx, n, m, data)
}

/// The additive character sum of one partition block against a fixed
/// matrix: the sum over the block of `z^Tr(<A, B>)` with `z` a primitive
/// p-th root of unity.
pub fn char_sum(
    block: &PartitionLabel,
    b: &MatGF,
    budget: &Budget,
) -> Result<CycInt> {
    let ctx = b.ctx().clone();
    let (n, m) = (b.rows(), b.cols());
    let total = pow_u128(ctx.q(), (n * m) as u32);
    budget.check(total)?;
    let p = ctx.p();
    let kind = block.kind();
    let mut acc = CycInt::zero(p);
    for code in 0..total {
        let a = MatGF::from_code(&ctx, n, m, code);
        if &label_of(kind, &a) != block {
            continue;
        }
        let t = ctx.abs_trace(a.trace_product(b).expect("same shape"));
        acc.add_assign(&CycInt::root_power(p, t));
    }
    Ok(acc)
}

fn sign(parity: usize) -> BigInt {
    if parity % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn q_pow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Krawtchouk coefficient of the rank partition:
/// `sum_i (-1)^{r-i} q^{ni + C(r-i,2)} [m-i, m-r]_q [m-s, i]_q`.
pub fn kraw_rank(r: usize, s: usize, q: u64, n: usize, m: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=r.min(m) {
        let g1 = gaussian_binomial_at(m - i, m - r, q);
        if g1.is_zero() {
            continue;
        }
        let g2 = gaussian_binomial_at(m.saturating_sub(s), i, q);
        if g2.is_zero() {
            continue;
        }
        acc += sign(r - i) * q_pow(q, n * i + binom2(r - i)) * g1 * g2;
    }
    acc
}

/// Krawtchouk coefficient of the row-space partition; it depends on the
/// second block only through `dim(U ∩ V^perp)`.
pub fn kraw_rowspace(u: &Subspace, v: &Subspace, n: usize) -> BigInt {
    let d = u.intersection_dim(&v.dual());
    kraw_rowspace_dims(u.dim(), d, u.ctx().q(), n)
}

/// Row-space Krawtchouk coefficient from the two controlling dimensions:
/// `sum_t (-1)^{u-t} q^{nt + C(u-t,2)} [d, t]_q` with `d = dim(U ∩ V^perp)`.
pub fn kraw_rowspace_dims(u_dim: usize, inter_dim: usize, q: u64, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for t in 0..=inter_dim {
        acc += sign(u_dim - t)
            * q_pow(q, n * t + binom2(u_dim - t))
            * gaussian_binomial_at(inter_dim, t, q);
    }
    acc
}

/// Krawtchouk coefficient of the pivot partition against a reverse-pivot
/// block.  Expressed through the stacked-rank counts of RREF matrices
/// with pivots `lambda` against the pivot matrix of `comp(mu)`:
/// `sum_t (-1)^{a-t} q^{nt + C(a-t,2)} sum_r N(lambda, comp(mu), r) [a-r, t]_q`.
pub fn kraw_pivot(
    lambda: &PivotList,
    mu: &PivotList,
    q: u64,
    n: usize,
    m: usize,
) -> Result<BigInt> {
    if lambda.m() != m || mu.m() != m {
        return Err(Error::ShapeMismatch(
            "pivot lists do not match the ambient width".into(),
        ));
    }
    let a = lambda.len();
    let sigma = mu.complement();
    let mut acc = BigInt::zero();
    for t in 0..=a {
        let mut inner = BigInt::zero();
        for r in 0..=a {
            let count = stacked_rank_count(lambda, &sigma, r, q)?;
            if count.is_zero() {
                continue;
            }
            let g = gaussian_binomial_at(a - r, t, q);
            if g.is_zero() {
                continue;
            }
            inner += count * g;
        }
        acc += sign(a - t) * q_pow(q, n * t + binom2(a - t)) * inner;
    }
    Ok(acc)
}

/// Krawtchouk coefficient of the reverse-pivot partition, via the
/// column-reversal symmetry `K(rpiv; lambda, mu) = K(piv; rev lambda,
/// rev mu)` (reversal preserves the trace pairing and swaps the kinds).
pub fn kraw_rpivot(
    lambda: &PivotList,
    mu: &PivotList,
    q: u64,
    n: usize,
    m: usize,
) -> Result<BigInt> {
    kraw_pivot(&lambda.reversed(), &mu.reversed(), q, n, m)
}

/// Number of `n x m` matrices with pivot list `mu`:
/// `q^{c(mu)} prod_{i<r} (q^n - q^i)` with `c` the free-entry count.
pub fn pivot_block_size(mu: &PivotList, q: u64, n: usize) -> BigInt {
    let r = mu.len();
    let mut acc = q_pow(q, mu.free_cell_count());
    for i in 0..r {
        acc *= q_pow(q, n) - q_pow(q, i);
    }
    acc
}

/// Number of `n x m` matrices with a fixed `u`-dimensional row space:
/// `prod_{i<u} (q^n - q^i)`.
pub fn rowspace_block_size(u_dim: usize, q: u64, n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..u_dim {
        acc *= q_pow(q, n) - q_pow(q, i);
    }
    acc
}

/// Number of `n x m` matrices of rank `r`:
/// `[m, r]_q prod_{i<r} (q^n - q^i)`.
pub fn rank_block_size(r: usize, q: u64, n: usize, m: usize) -> BigInt {
    gaussian_binomial_at(m, r, q) * rowspace_block_size(r, q, n)
}

/// A full table of Krawtchouk coefficients `K(Q; j, i)`: rows are the
/// blocks of the partition `Q`, columns the blocks of its dual.
#[derive(Debug, Clone)]
pub struct KrawTable {
    pub kind: PartitionKind,
    pub q: u64,
    pub n: usize,
    pub m: usize,
    /// Labels of the partition's own blocks (row index `j`).
    pub row_labels: Vec<PartitionLabel>,
    /// Labels of the dual partition's blocks (column index `i`).
    pub col_labels: Vec<PartitionLabel>,
    pub values: Vec<Vec<BigInt>>,
}

type TableKey = (PartitionKind, u64, usize, usize);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<KrawTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<KrawTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds the Krawtchouk table for the partition from the closed forms.
/// Tables depend only on `(kind, q, n, m)` and are cached process-wide,
/// since the MacWilliams transform reuses them across codes.
pub fn kraw_table(
    kind: PartitionKind,
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Arc<KrawTable>> {
    let key = (kind, ctx.q(), n, m);
    if let Some(t) = table_cache().lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(t));
    }
    let q = ctx.q();
    let row_labels = labels(kind, ctx, n, m, budget)?;
    let col_labels = labels(kind.dual(), ctx, n, m, budget)?;
    let mut values = Vec::with_capacity(row_labels.len());
    for j in &row_labels {
        let mut row = Vec::with_capacity(col_labels.len());
        for i in &col_labels {
            let v = match (j, i) {
                (PartitionLabel::Rank(r), PartitionLabel::Rank(s)) => kraw_rank(*r, *s, q, n, m),
                (PartitionLabel::RowSpace(u), PartitionLabel::RowSpace(v)) => {
                    kraw_rowspace(u, v, n)
                }
                (PartitionLabel::Pivot(l), PartitionLabel::RPivot(mu)) => {
                    kraw_pivot(l, mu, q, n, m)?
                }
                (PartitionLabel::RPivot(l), PartitionLabel::Pivot(mu)) => {
                    kraw_rpivot(l, mu, q, n, m)?
                }
                _ => unreachable!("label kinds follow the table kinds"),
            };
            row.push(v);
        }
        values.push(row);
    }
    let table = Arc::new(KrawTable {
        kind,
        q,
        n,
        m,
        row_labels,
        col_labels,
        values,
    });
    table_cache()
        .lock()
        .expect("cache lock")
        .insert(key, Arc::clone(&table));
    Ok(table)
}

/// A sparse partition distribution: counts per block label, zero counts
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    kind: PartitionKind,
    counts: BTreeMap<PartitionLabel, BigInt>,
}

impl Distribution {
    pub fn new(kind: PartitionKind) -> Distribution {
        Distribution {
            kind,
            counts: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn add(&mut self, label: PartitionLabel, count: BigInt) {
        debug_assert_eq!(label.kind(), self.kind);
        if count.is_zero() {
            return;
        }
        let slot = self.counts.entry(label).or_insert_with(BigInt::zero);
        *slot += count;
        if slot.is_zero() {
            // Only reachable through negative adjustments.
            self.counts.retain(|_, v| !v.is_zero());
        }
    }

    pub fn get(&self, label: &PartitionLabel) -> BigInt {
        self.counts.get(label).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PartitionLabel, &BigInt)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// The MacWilliams transform: from the distribution of a code in the
/// partition dual to `Q`, compute the distribution of the dual code in
/// `Q` as `(1/|C|) sum_i K(Q; j, i) P(C, i)`.  The division must come
/// out exact; a remainder signals an inconsistent input.
pub fn macwilliams_transform(
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    dist: &Distribution,
    code_size: &BigInt,
    budget: &Budget,
) -> Result<Distribution> {
    if code_size.is_zero() {
        return Err(Error::EmptyCode);
    }
    let q_kind = dist.kind().dual();
    let table = kraw_table(q_kind, ctx, n, m, budget)?;
    let mut out = Distribution::new(q_kind);
    for (j, jl) in table.row_labels.iter().enumerate() {
        let mut acc = BigInt::zero();
        for (i, il) in table.col_labels.iter().enumerate() {
            let p = dist.get(il);
            if p.is_zero() {
                continue;
            }
            acc += &table.values[j][i] * p;
        }
        if acc.is_zero() {
            continue;
        }
        if (&acc % code_size) != BigInt::zero() {
            return Err(Error::NonIntegerResult);
        }
        out.add(jl.clone(), &acc / code_size);
    }
    Ok(out)
}

/// The partition written out explicitly: blocks as sorted lists of
/// matrix encodings, blocks ordered by their smallest member.
pub fn explicit_partition(
    kind: PartitionKind,
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u128>>> {
    let total = pow_u128(ctx.q(), (n * m) as u32);
    budget.check(total)?;
    let mut groups: BTreeMap<PartitionLabel, Vec<u128>> = BTreeMap::new();
    for code in 0..total {
        let a = MatGF::from_code(ctx, n, m, code);
        groups.entry(label_of(kind, &a)).or_default().push(code);
    }
    let mut blocks: Vec<Vec<u128>> = groups.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    Ok(blocks)
}

/// The dual of an explicitly given partition: matrices grouped by their
/// vector of character sums against every block.
pub fn dual_of_explicit(
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    blocks: &[Vec<u128>],
    budget: &Budget,
) -> Result<Vec<Vec<u128>>> {
    let total = pow_u128(ctx.q(), (n * m) as u32);
    budget.check(total.saturating_mul(total))?;
    let p = ctx.p();
    let mats: Vec<MatGF> = (0..total).map(|c| MatGF::from_code(ctx, n, m, c)).collect();
    let mut groups: BTreeMap<Vec<CycInt>, Vec<u128>> = BTreeMap::new();
    for (bcode, b) in mats.iter().enumerate() {
        let mut signature = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut acc = CycInt::zero(p);
            for &acode in block {
                let a = &mats[acode as usize];
                let t = ctx.abs_trace(a.trace_product(b).expect("same shape"));
                acc.add_assign(&CycInt::root_power(p, t));
            }
            signature.push(acc);
        }
        groups.entry(signature).or_default().push(bcode as u128);
    }
    let mut out: Vec<Vec<u128>> = groups.into_values().collect();
    out.sort_by_key(|b| b[0]);
    Ok(out)
}

/// The dual partition of one of the built-in partitions, computed from
/// character sums with no use of the closed forms.
pub fn dual_partition(
    kind: PartitionKind,
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u128>>> {
    let blocks = explicit_partition(kind, ctx, n, m, budget)?;
    dual_of_explicit(ctx, n, m, &blocks, budget)
}

/// The row-space MacWilliams identity in matrix form: the transform
/// matrix `M = A diag(q^{n dim(U-perp)}) B^{-1}` over exact rationals,
/// where `A(V,U) = [V <= U]` and `B(V,U) = [V <= U-perp]`, with rows and
/// columns indexed by the returned subspace list.
pub fn macwid_matrix(
    ctx: &FieldCtx,
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<(Vec<Subspace>, Vec<Vec<BigRational>>)> {
    let subs = subspaces(ctx, m, budget)?;
    let nn = subs.len();
    let q = ctx.q();
    let incidence = |rows: &dyn Fn(usize, usize) -> bool| -> Vec<Vec<BigRational>> {
        (0..nn)
            .map(|v| {
                (0..nn)
                    .map(|u| {
                        if rows(v, u) {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let a = incidence(&|v, u| subs[u].contains(&subs[v]));
    let b = incidence(&|v, u| subs[u].dual().contains(&subs[v]));
    let b_inv = invert_rational(&b).ok_or(Error::DivisionByZero)?;
    // M = A * diag * B^{-1}, with diag(U) = q^{n (m - dim U)}.
    let mut scaled = a;
    for row in scaled.iter_mut() {
        for (u, entry) in row.iter_mut().enumerate() {
            let d = BigRational::from(q_pow(q, n * (m - subs[u].dim())));
            *entry *= d;
        }
    }
    let mut result = vec![vec![BigRational::zero(); nn]; nn];
    for v in 0..nn {
        for u in 0..nn {
            let mut acc = BigRational::zero();
            for k in 0..nn {
                if scaled[v][k].is_zero() || b_inv[k][u].is_zero() {
                    continue;
                }
                acc += &scaled[v][k] * &b_inv[k][u];
            }
            result[v][u] = acc;
        }
    }
    Ok((subs, result))
}

/// Gauss-Jordan inverse over exact rationals; `None` if singular.
fn invert_rational(mat: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = mat.len();
    let mut work: Vec<Vec<BigRational>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = work[col][col].recip();
        for x in work[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let f = work[r][col].clone();
            for c in 0..2 * n {
                let t = &f * &work[col][c];
                work[r][c] -= t;
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}
