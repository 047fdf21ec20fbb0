//! Python bindings for the core library: finite fields, matrices over
//! them, rank-metric matrix codes, and the q-polynomial toolkit
//! (Gaussian binomials, Ferrers-board rank distributions, q-rook
//! polynomials, q-Stirling numbers, and Krawtchouk coefficients).
//!
//! All arithmetic is exact; counts are returned as Python ints of
//! arbitrary size. Enumerative methods accept an optional `budget`
//! bounding the number of objects visited and raise `ValueError` when
//! it would be exceeded.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qpart_core::codes::{self, MatrixCode};
use qpart_core::ferrers::{self, FerrersBoard};
use qpart_core::gf::FieldCtx;
use qpart_core::kraw::{self, PartitionKind};
use qpart_core::lattice::LaurentPolyZ;
use qpart_core::matgf::{field_from_order, MatGF, PivotList};
use qpart_core::Budget;

fn to_py_err(e: qpart_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budget_of(limit: Option<u64>) -> Budget {
    limit.map(Budget).unwrap_or(Budget::DEFAULT)
}

fn kind_of(name: &str) -> PyResult<PartitionKind> {
    match name {
        "rank" => Ok(PartitionKind::Rank),
        "rowspace" => Ok(PartitionKind::RowSpace),
        "pivot" => Ok(PartitionKind::Pivot),
        "rpivot" => Ok(PartitionKind::RPivot),
        other => Err(PyValueError::new_err(format!(
            "unknown partition kind {other:?}; expected rank, rowspace, pivot or rpivot"
        ))),
    }
}

fn context(q: u64) -> PyResult<FieldCtx> {
    field_from_order(q).map_err(to_py_err)
}

fn board_of(columns: Vec<usize>) -> PyResult<FerrersBoard> {
    FerrersBoard::new(&columns).map_err(to_py_err)
}

fn pivot_list(m: usize, indices: Vec<usize>) -> PyResult<PivotList> {
    PivotList::new(m, &indices).map_err(to_py_err)
}

/// A Laurent polynomial in one variable q with integer coefficients.
#[pyclass(frozen)]
struct Poly {
    inner: LaurentPolyZ,
}

impl From<LaurentPolyZ> for Poly {
    fn from(inner: LaurentPolyZ) -> Poly {
        Poly { inner }
    }
}

#[pymethods]
impl Poly {
    /// Map from exponent to coefficient; zero coefficients are absent.
    fn coefficients(&self) -> BTreeMap<i64, BigInt> {
        self.inner
            .terms()
            .map(|(e, c)| (e, c.clone()))
            .collect()
    }

    /// Evaluate at an integer q >= 1.
    fn eval(&self, q: u64) -> PyResult<BigInt> {
        self.inner.eval_u64(q).map_err(to_py_err)
    }

    /// Largest exponent with a nonzero coefficient, or None for zero.
    #[getter]
    fn degree(&self) -> Option<i64> {
        self.inner.degree()
    }

    /// Smallest exponent with a nonzero coefficient, or None for zero.
    #[getter]
    fn trailing_degree(&self) -> Option<i64> {
        self.inner.trailing_degree()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.inner == other.inner
    }
}

/// A finite field of prime-power order with a fixed representation.
#[pyclass(frozen)]
struct Field {
    ctx: FieldCtx,
}

#[pymethods]
impl Field {
    #[new]
    fn new(q: u64) -> PyResult<Field> {
        Ok(Field { ctx: context(q)? })
    }

    /// Field order.
    #[getter]
    fn q(&self) -> u64 {
        self.ctx.q()
    }

    /// Field characteristic.
    #[getter]
    fn p(&self) -> u64 {
        self.ctx.p()
    }

    /// Sum of two element encodings.
    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        let a = self.ctx.try_elem(a).map_err(to_py_err)?;
        let b = self.ctx.try_elem(b).map_err(to_py_err)?;
        Ok(self.ctx.add(a, b).val())
    }

    /// Product of two element encodings.
    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        let a = self.ctx.try_elem(a).map_err(to_py_err)?;
        let b = self.ctx.try_elem(b).map_err(to_py_err)?;
        Ok(self.ctx.mul(a, b).val())
    }

    /// Absolute trace down to the prime field.
    fn trace(&self, a: u64) -> PyResult<u64> {
        let a = self.ctx.try_elem(a).map_err(to_py_err)?;
        Ok(self.ctx.abs_trace(a))
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.ctx.q())
    }

    fn __eq__(&self, other: &Field) -> bool {
        self.ctx == other.ctx
    }
}

/// A matrix over a finite field, stored as element encodings.
#[pyclass(frozen)]
struct Matrix {
    inner: MatGF,
}

impl From<MatGF> for Matrix {
    fn from(inner: MatGF) -> Matrix {
        Matrix { inner }
    }
}

#[pymethods]
impl Matrix {
    #[new]
    fn new(q: u64, entries: Vec<Vec<u64>>) -> PyResult<Matrix> {
        let ctx = context(q)?;
        let n = entries.len();
        let m = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|row| row.len() != m) {
            return Err(PyValueError::new_err("rows have unequal lengths"));
        }
        let mut cells = Vec::with_capacity(n * m);
        for row in &entries {
            for &v in row {
                cells.push(ctx.try_elem(v).map_err(to_py_err)?);
            }
        }
        Ok(MatGF::from_fn(&ctx, n, m, |i, j| cells[i * m + j]).into())
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.ctx().q()
    }

    /// Entries as a list of rows of element encodings.
    fn entries(&self) -> Vec<Vec<u64>> {
        (0..self.inner.rows())
            .map(|i| {
                (0..self.inner.cols())
                    .map(|j| self.inner.get(i, j).val())
                    .collect()
            })
            .collect()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Columns holding the leading entries of the reduced row-echelon
    /// form, 1-based and increasing.
    fn pivots(&self) -> Vec<usize> {
        self.inner.pivots().indices()
    }

    /// Pivot columns of the bottom-up echelon form read from the right.
    fn rpivots(&self) -> Vec<usize> {
        self.inner.rpivots().indices()
    }

    fn transpose(&self) -> Matrix {
        self.inner.transpose().into()
    }

    /// Trace of self times the transpose of `other`.
    fn trace_product(&self, other: &Matrix) -> PyResult<u64> {
        self.inner
            .trace_product(&other.inner)
            .map(|e| e.val())
            .map_err(to_py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Matrix(q={}, entries={:?})",
            self.inner.ctx().q(),
            self.entries()
        )
    }

    fn __eq__(&self, other: &Matrix) -> bool {
        self.inner == other.inner
    }
}

/// A linear space of n x m matrices over a finite field.
#[pyclass(frozen)]
struct Code {
    inner: MatrixCode,
}

impl From<MatrixCode> for Code {
    fn from(inner: MatrixCode) -> Code {
        Code { inner }
    }
}

#[pymethods]
impl Code {
    /// Span of one or more generator matrices of a common shape.
    #[staticmethod]
    fn span(generators: Vec<PyRef<'_, Matrix>>) -> PyResult<Code> {
        let first = generators
            .first()
            .ok_or_else(|| {
                PyValueError::new_err(
                    "span requires at least one generator; use Code.zero for the zero code",
                )
            })?
            .inner
            .clone();
        let gens: Vec<MatGF> = generators.iter().map(|g| g.inner.clone()).collect();
        codes::code_span(first.ctx(), first.rows(), first.cols(), &gens)
            .map(Code::from)
            .map_err(to_py_err)
    }

    /// The zero code in the n x m matrix space over GF(q).
    #[staticmethod]
    fn zero(q: u64, n: usize, m: usize) -> PyResult<Code> {
        Ok(codes::zero_code(&context(q)?, n, m).into())
    }

    /// The full n x m matrix space over GF(q).
    #[staticmethod]
    fn full(q: u64, n: usize, m: usize) -> PyResult<Code> {
        Ok(codes::full_code(&context(q)?, n, m).into())
    }

    /// The m x m code of multiplication matrices of GF(q^m) over GF(q):
    /// every nonzero word is invertible.
    #[staticmethod]
    fn field_embedding(q: u64, m: usize) -> PyResult<Code> {
        codes::mrd_field_embedding(&context(q)?, m)
            .map(Code::from)
            .map_err(to_py_err)
    }

    /// Parse the text format produced by `str()`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Code> {
        MatrixCode::from_text(text).map(Code::from).map_err(to_py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Number of codewords.
    fn size(&self) -> BigInt {
        self.inner.size()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.ctx().q()
    }

    /// Dual code under the trace bilinear form.
    fn dual(&self) -> Code {
        self.inner.dual_code().into()
    }

    fn contains(&self, word: &Matrix) -> PyResult<bool> {
        self.inner.contains(&word.inner).map_err(to_py_err)
    }

    /// Block counts of the chosen partition ("rank", "rowspace",
    /// "pivot" or "rpivot"), keyed by the block label string.
    #[pyo3(signature = (kind, budget=None))]
    fn distribution(&self, kind: &str, budget: Option<u64>) -> PyResult<BTreeMap<String, BigInt>> {
        let dist = self
            .inner
            .distribution(kind_of(kind)?, &budget_of(budget))
            .map_err(to_py_err)?;
        Ok(dist
            .iter()
            .map(|(label, count)| (label.to_string(), count.clone()))
            .collect())
    }

    /// Smallest rank of a nonzero codeword.
    #[pyo3(signature = (budget=None))]
    fn min_rank_distance(&self, budget: Option<u64>) -> PyResult<usize> {
        self.inner
            .min_rank_distance(&budget_of(budget))
            .map_err(to_py_err)
    }

    /// Whether the code size meets the rank-distance size bound.
    #[pyo3(signature = (budget=None))]
    fn is_mrd(&self, budget: Option<u64>) -> PyResult<bool> {
        self.inner.is_mrd(&budget_of(budget)).map_err(to_py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(q={}, shape=({}, {}), dim={})",
            self.inner.ctx().q(),
            self.inner.rows(),
            self.inner.cols(),
            self.inner.dim()
        )
    }

    fn __eq__(&self, other: &Code) -> bool {
        self.inner == other.inner
    }
}

/// Gaussian binomial [a choose b]_q as a polynomial in q.
#[pyfunction]
fn gaussian_binomial(a: usize, b: usize) -> Poly {
    qpart_core::lattice::gaussian_binomial(a, b).into()
}

/// Number of matrices of rank `r` supported on the Ferrers board with
/// the given column heights, as a polynomial in the field order q.
#[pyfunction]
fn rank_dist(columns: Vec<usize>, r: usize) -> PyResult<Poly> {
    Ok(ferrers::rank_dist(&board_of(columns)?, r).into())
}

/// q-rook polynomial coefficient: placements of `r` non-attacking rooks
/// on the board, weighted q^(uncrossed cells).
#[pyfunction]
fn rook_poly(columns: Vec<usize>, r: usize) -> PyResult<Poly> {
    ferrers::rook_poly_closed(&board_of(columns)?, r)
        .map(Poly::from)
        .map_err(to_py_err)
}

/// q-Stirling number of the second kind S_q[m, r].
#[pyfunction]
fn q_stirling(m: usize, r: usize) -> Poly {
    ferrers::q_stirling(m, r).into()
}

/// Krawtchouk coefficient of the rank partition of the n x m matrix
/// space over GF(q), evaluated at row block `r` and column block `s`.
#[pyfunction]
fn kraw_rank(r: usize, s: usize, q: u64, n: usize, m: usize) -> BigInt {
    kraw::kraw_rank(r, s, q, n, m)
}

/// Krawtchouk coefficient of the pivot partition: row block `lam` and
/// reverse-pivot column block `mu`, both 1-based pivot lists in width m.
#[pyfunction]
fn kraw_pivot(
    lam: Vec<usize>,
    mu: Vec<usize>,
    q: u64,
    n: usize,
    m: usize,
) -> PyResult<BigInt> {
    kraw::kraw_pivot(&pivot_list(m, lam)?, &pivot_list(m, mu)?, q, n, m).map_err(to_py_err)
}

#[pymodule]
fn qpart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<Field>()?;
    m.add_class::<Matrix>()?;
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(rank_dist, m)?)?;
    m.add_function(wrap_pyfunction!(rook_poly, m)?)?;
    m.add_function(wrap_pyfunction!(q_stirling, m)?)?;
    m.add_function(wrap_pyfunction!(kraw_rank, m)?)?;
    m.add_function(wrap_pyfunction!(kraw_pivot, m)?)?;
    Ok(())
}
