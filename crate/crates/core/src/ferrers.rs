//! Ferrers boards and their matrix-rank combinatorics: the number of
//! matrices of each rank supported on a board, q-rook polynomials with
//! the inversion statistic, the substitution identity connecting the two,
//! q-Stirling numbers, and the count of RREF matrices with prescribed
//! pivots and prescribed rank after stacking onto a fixed pivot matrix.
//!
//! A board is a nondecreasing tuple of column heights `[c_1, ..., c_m]`;
//! column `j` carries cells in rows `1..=c_j`, top-aligned, so the cells
//! form a shape that is closed up and to the right.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::budget::{pow_u128, Budget};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::lattice::LaurentPolyZ;
use crate::matgf::{MatGF, PivotList};

/// A Ferrers board given by nondecreasing column heights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FerrersBoard {
    cols: Vec<usize>,
}

impl FerrersBoard {
    pub fn new(cols: &[usize]) -> Result<FerrersBoard> {
        if cols.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NonMonotone);
        }
        Ok(FerrersBoard {
            cols: cols.to_vec(),
        })
    }

    /// Parses a comma-separated height list such as `"1,2,4,4,5"`.  An
    /// empty string denotes the board with no columns.
    pub fn parse(s: &str) -> Result<FerrersBoard> {
        let s = s.trim();
        if s.is_empty() {
            return FerrersBoard::new(&[]);
        }
        let cols = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad column height {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FerrersBoard::new(&cols)
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Number of columns `m` (including zero-height ones).
    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    /// Total number of cells `|F|`.
    pub fn cell_count(&self) -> usize {
        self.cols.iter().sum()
    }

    /// Height of the tallest (last) column, 0 for an empty board.
    pub fn height(&self) -> usize {
        self.cols.last().copied().unwrap_or(0)
    }

    /// All cells as 1-based `(row, col)` pairs, column-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.cell_count());
        for (j0, &c) in self.cols.iter().enumerate() {
            for i in 1..=c {
                out.push((i, j0 + 1));
            }
        }
        out
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        col >= 1 && col <= self.cols.len() && row >= 1 && row <= self.cols[col - 1]
    }

    /// The board without its last column, plus that column's height.
    fn split_last(&self) -> Option<(FerrersBoard, usize)> {
        let (&last, head) = self.cols.split_last()?;
        Some((
            FerrersBoard {
                cols: head.to_vec(),
            },
            last,
        ))
    }
}

impl std::fmt::Display for FerrersBoard {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.cols.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// `q^e - 1` as a Laurent polynomial.
fn q_pow_minus_one(e: i64) -> LaurentPolyZ {
    LaurentPolyZ::from_terms([(e, BigInt::one()), (0, -BigInt::one())])
}

/// The number of rank-`r` matrices supported on the board, as a
/// polynomial in `q`: the sum over increasing column tuples
/// `i_1 < ... < i_r` of `q^{rm - (i_1 + ... + i_r)}` times the product of
/// `q^{c_{i_j} - j + 1} - 1`.  Tuples with a vanishing factor are
/// skipped; the remaining ones have strictly positive exponents, so the
/// result is a genuine polynomial.
pub fn rank_dist(board: &FerrersBoard, r: usize) -> LaurentPolyZ {
    let m = board.num_cols();
    if r == 0 {
        return LaurentPolyZ::one();
    }
    if r > m {
        return LaurentPolyZ::zero();
    }
    let c = board.cols();
    let mut total = LaurentPolyZ::zero();
    for tuple in (1..=m).combinations(r) {
        // A factor vanishes exactly when c_{i_j} = j - 1; a column height
        // below that would force a negative exponent, but monotonicity
        // guarantees some earlier factor already vanished in that case.
        if tuple.iter().enumerate().any(|(j0, &ij)| c[ij - 1] == j0) {
            continue;
        }
        let norm: usize = tuple.iter().sum();
        let mut term = LaurentPolyZ::q_pow((r * m - norm) as i64);
        for (j0, &ij) in tuple.iter().enumerate() {
            term = term.mul(&q_pow_minus_one(c[ij - 1] as i64 - j0 as i64));
        }
        total = total.add(&term);
    }
    total
}

/// Same count by the column recursion
/// `P_r(c_1..c_m) = P_{r-1}(c_1..c_{m-1}) (q^{c_m} - q^{r-1})
///                + P_r(c_1..c_{m-1}) q^r`,
/// kept as an independent cross-check of [`rank_dist`].
pub fn rank_dist_recursive(board: &FerrersBoard, r: usize) -> LaurentPolyZ {
    if r == 0 {
        return LaurentPolyZ::one();
    }
    let Some((head, cm)) = board.split_last() else {
        return LaurentPolyZ::zero();
    };
    let drop_col = LaurentPolyZ::from_terms([
        (cm as i64, BigInt::one()),
        (r as i64 - 1, -BigInt::one()),
    ]);
    rank_dist_recursive(&head, r - 1)
        .mul(&drop_col)
        .add(&rank_dist_recursive(&head, r).shift(r as i64))
}

/// Degree of [`rank_dist`] without expanding it:
/// `rm - C(r,2) + max over admissible tuples of sum(c_{i_j} - i_j)`,
/// where a tuple is admissible when no factor vanishes; `None` encodes
/// degree minus infinity (the zero polynomial).
pub fn rank_dist_degree(board: &FerrersBoard, r: usize) -> Option<i64> {
    let m = board.num_cols();
    if r == 0 {
        return Some(0);
    }
    if r > m {
        return None;
    }
    let c = board.cols();
    (1..=m)
        .combinations(r)
        .filter(|tuple| !tuple.iter().enumerate().any(|(j0, &ij)| c[ij - 1] == j0))
        .map(|tuple| {
            tuple
                .iter()
                .map(|&ij| c[ij - 1] as i64 - ij as i64)
                .sum::<i64>()
        })
        .max()
        .map(|best| (r * m) as i64 - (r * (r - 1) / 2) as i64 + best)
}

/// A set of cells on a board, no two sharing a row or column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RookPlacement {
    cells: Vec<(usize, usize)>,
}

impl RookPlacement {
    /// Validates that all cells lie on the board and are non-attacking.
    pub fn new(board: &FerrersBoard, cells: &[(usize, usize)]) -> Result<RookPlacement> {
        for &(i, j) in cells {
            if !board.contains_cell(i, j) {
                return Err(Error::Parse(format!("cell ({i},{j}) is outside the board")));
            }
        }
        for (a, b) in cells.iter().tuple_combinations() {
            if a.0 == b.0 || a.1 == b.1 {
                return Err(Error::Parse(format!(
                    "rooks at {a:?} and {b:?} attack each other"
                )));
            }
        }
        let mut cells = cells.to_vec();
        cells.sort_unstable();
        Ok(RookPlacement { cells })
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }
}

/// The inversion statistic of a placement: cross out every cell holding
/// a rook, every cell above a rook in its column, and every cell to the
/// right of a rook in its row; the statistic is the number of cells left.
pub fn inv_statistic(board: &FerrersBoard, placement: &RookPlacement) -> usize {
    board
        .cells()
        .iter()
        .filter(|&&(i, j)| {
            !placement.cells.iter().any(|&(ri, rj)| {
                (ri == i && rj == j) || (rj == j && ri > i) || (ri == i && rj < j)
            })
        })
        .count()
}

fn placements_rec(
    board: &FerrersBoard,
    col: usize,
    remaining: usize,
    used_rows: &mut Vec<usize>,
    current: &mut Vec<(usize, usize)>,
    acc: &mut LaurentPolyZ,
) {
    let m = board.num_cols();
    if remaining == 0 {
        let placement = RookPlacement {
            cells: current.clone(),
        };
        *acc = acc.add(&LaurentPolyZ::q_pow(inv_statistic(board, &placement) as i64));
        return;
    }
    if col > m || m - col + 1 < remaining {
        return;
    }
    // No rook in this column.
    placements_rec(board, col + 1, remaining, used_rows, current, acc);
    // A rook in each admissible row of this column.
    for row in 1..=board.cols()[col - 1] {
        if used_rows.contains(&row) {
            continue;
        }
        used_rows.push(row);
        current.push((row, col));
        placements_rec(board, col + 1, remaining - 1, used_rows, current, acc);
        current.pop();
        used_rows.pop();
    }
}

/// The q-rook polynomial `R_r`: the sum of `q^inv` over all placements
/// of `r` non-attacking rooks on the board, by direct enumeration.
pub fn rook_poly_enum(board: &FerrersBoard, r: usize, budget: &Budget) -> Result<LaurentPolyZ> {
    if r == 0 {
        return Ok(LaurentPolyZ::q_pow(board.cell_count() as i64));
    }
    let m = board.num_cols();
    if r > m {
        return Ok(LaurentPolyZ::zero());
    }
    // Coarse bound: choose r columns, then at most height() rows in each,
    // and each placement pays one scan of the board for its statistic.
    let mut bound: u128 = 1;
    for i in 0..r {
        bound = bound.saturating_mul(((m - i) * board.height().max(1)) as u128);
    }
    budget.check(bound.saturating_mul(board.cell_count().max(1) as u128))?;
    let mut acc = LaurentPolyZ::zero();
    placements_rec(board, 1, r, &mut Vec::new(), &mut Vec::new(), &mut acc);
    Ok(acc)
}

/// The q-rook polynomial in closed form:
/// `q^{|F| - rm} * sum over tuples of prod_j (q^{i_j + j - c_{i_j} - 1} -
/// q^{i_j})`, divided exactly by `(1 - q)^r` in the Laurent ring.
pub fn rook_poly_closed(board: &FerrersBoard, r: usize) -> Result<LaurentPolyZ> {
    let m = board.num_cols();
    if r == 0 {
        return Ok(LaurentPolyZ::q_pow(board.cell_count() as i64));
    }
    if r > m {
        return Ok(LaurentPolyZ::zero());
    }
    let c = board.cols();
    let mut sum = LaurentPolyZ::zero();
    for tuple in (1..=m).combinations(r) {
        let mut term = LaurentPolyZ::one();
        for (j0, &ij) in tuple.iter().enumerate() {
            let j = j0 as i64 + 1;
            let e1 = ij as i64 + j - c[ij - 1] as i64 - 1;
            term = term.mul(&LaurentPolyZ::from_terms([
                (e1, BigInt::one()),
                (ij as i64, -BigInt::one()),
            ]));
        }
        sum = sum.add(&term);
    }
    let one_minus_q = LaurentPolyZ::from_terms([(0, BigInt::one()), (1, -BigInt::one())]);
    let quotient = sum.div_exact(&one_minus_q.pow(r as u32))?;
    Ok(quotient.shift(board.cell_count() as i64 - (r * m) as i64))
}

/// The rank count recovered from the rook polynomial:
/// `(q - 1)^r q^{|F| - r} R_r(q^{-1})`.  Agrees with [`rank_dist`].
pub fn haglund_transform(board: &FerrersBoard, r: usize, budget: &Budget) -> Result<LaurentPolyZ> {
    let rook = rook_poly_enum(board, r, budget)?;
    let q_minus_one = LaurentPolyZ::from_terms([(1, BigInt::one()), (0, -BigInt::one())]);
    Ok(q_minus_one
        .pow(r as u32)
        .mul(&rook.subst_inverse())
        .shift(board.cell_count() as i64 - r as i64))
}

/// The q-rook polynomial by the last-column recursion
/// `R_r(F) = R_r(F') q^{c_m - r} + R_{r-1}(F') (q^{c_m - r + 1} - 1)/(q - 1)`,
/// kept as an independent cross-check of the enumeration.
pub fn rook_poly_recursive(board: &FerrersBoard, r: usize) -> LaurentPolyZ {
    let Some((head, cm)) = board.split_last() else {
        return if r == 0 {
            LaurentPolyZ::one()
        } else {
            LaurentPolyZ::zero()
        };
    };
    let mut acc = rook_poly_recursive(&head, r).shift(cm as i64 - r as i64);
    if r >= 1 {
        acc = acc.add(
            &rook_poly_recursive(&head, r - 1)
                .mul(&LaurentPolyZ::geometric(cm as i64 - r as i64 + 1)),
        );
    }
    acc
}

/// q-Stirling numbers `S_{m,r}` by the recursion
/// `S_{m+1,r} = q^{r-1} S_{m,r-1} + (q^r - 1)/(q - 1) S_{m,r}` with
/// `S_{0,0} = 1` and `S_{m,r} = 0` outside `0 <= r <= m`.
pub fn q_stirling(m: usize, r: usize) -> LaurentPolyZ {
    if r > m {
        return LaurentPolyZ::zero();
    }
    // table[k] = S_{mm, k} for the current mm.
    let mut table = vec![LaurentPolyZ::one()];
    for _mm in 0..m {
        let prev = table;
        let width = prev.len() + 1;
        let mut next = Vec::with_capacity(width);
        for k in 0..width {
            let mut v = LaurentPolyZ::zero();
            if k >= 1 && k - 1 < prev.len() {
                v = v.add(&prev[k - 1].shift(k as i64 - 1));
            }
            if k < prev.len() {
                v = v.add(&prev[k].mul(&LaurentPolyZ::geometric(k as i64)));
            }
            next.push(v);
        }
        table = next;
    }
    table.get(r).cloned().unwrap_or_else(LaurentPolyZ::zero)
}

/// Exhaustively counts the matrices of rank `r` over the given field
/// whose support lies inside the board.
pub fn brute_count(
    board: &FerrersBoard,
    ctx: &FieldCtx,
    r: usize,
    budget: &Budget,
) -> Result<BigInt> {
    let cells = board.cells();
    let total = pow_u128(ctx.q(), cells.len() as u32);
    budget.check(total)?;
    let rows = board.height();
    let m = board.num_cols();
    let q = u128::from(ctx.q());
    let mut count = BigInt::zero();
    for assign in 0..total {
        let mut mat = MatGF::zeros(ctx, rows, m).entries().to_vec();
        let mut a = assign;
        for &(i, j) in &cells {
            mat[(i - 1) * m + (j - 1)] = ctx.elem((a % q) as u64);
            a /= q;
        }
        let mat = MatGF::from_flat(ctx, rows, m, mat);
        if mat.rank() == r {
            count += 1;
        }
    }
    Ok(count)
}

/// The residual board of the stacked-rank count: rows indexed by
/// `lambda ∩ sigma`, columns by `comp(sigma) \ lambda`, with column `j`
/// holding one cell for each row index smaller than that column's value.
pub fn stacked_rank_board(lambda: &PivotList, sigma: &PivotList) -> Result<FerrersBoard> {
    if lambda.m() != sigma.m() {
        return Err(Error::ShapeMismatch(
            "pivot lists over different widths".into(),
        ));
    }
    let row_vals = lambda.intersect(sigma).indices();
    let col_vals = sigma.complement().difference(lambda).indices();
    let heights: Vec<usize> = col_vals
        .iter()
        .map(|&cv| row_vals.iter().filter(|&&rv| rv < cv).count())
        .collect();
    FerrersBoard::new(&heights)
}

/// Symbolic count of RREF matrices `A` with `piv(A) = lambda` such that
/// stacking `A` onto the pivot matrix of `sigma` has rank
/// `|sigma| + r`: the residual-board rank count times `q` raised to the
/// number of free entries of `A` lying outside the residual board.
pub fn stacked_rank_count_poly(
    lambda: &PivotList,
    sigma: &PivotList,
    r: usize,
) -> Result<LaurentPolyZ> {
    let board = stacked_rank_board(lambda, sigma)?;
    let a = lambda.len();
    let x = lambda.intersect(sigma).len();
    if r > a || r + x < a {
        return Ok(LaurentPolyZ::zero());
    }
    let outside = lambda.free_cell_count() as i64 - board.cell_count() as i64;
    debug_assert!(outside >= 0, "residual board exceeds the free entries");
    Ok(rank_dist(&board, r + x - a).shift(outside))
}

/// [`stacked_rank_count_poly`] evaluated at a concrete field size.
pub fn stacked_rank_count(
    lambda: &PivotList,
    sigma: &PivotList,
    r: usize,
    q: u64,
) -> Result<BigInt> {
    stacked_rank_count_poly(lambda, sigma, r)?
        .eval_u64(q)
        .map_err(|_| Error::NonIntegerResult)
}

/// All boards with at most `max_cols` columns and heights at most
/// `max_height`, in a deterministic order.  Intended for test sweeps.
pub fn boards_up_to(max_cols: usize, max_height: usize) -> Vec<FerrersBoard> {
    let mut out = vec![FerrersBoard { cols: Vec::new() }];
    for m in 1..=max_cols {
        let mut stack: Vec<Vec<usize>> = (0..=max_height).map(|c| vec![c]).collect();
        while let Some(cols) = stack.pop() {
            if cols.len() == m {
                out.push(FerrersBoard { cols });
                continue;
            }
            let last = *cols.last().expect("non-empty prefix");
            for c in last..=max_height {
                let mut next = cols.clone();
                next.push(c);
                stack.push(next);
            }
        }
    }
    out.sort_by(|a, b| a.cols.cmp(&b.cols));
    out
}
