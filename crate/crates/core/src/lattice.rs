//! The lattice of subspaces of F^m and the exact polynomial arithmetic
//! that counts it: integer Laurent polynomials in the field-size variable
//! `q`, Gaussian binomial coefficients, the Möbius function of the
//! lattice, and deterministic enumeration of subspaces in canonical
//! (RREF-basis) form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::budget::{pow_u128, Budget};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::matgf::{MatGF, PivotList, Subspace};

/// An integer Laurent polynomial in `q`, stored sparsely as
/// exponent -> coefficient with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolyZ {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolyZ {
    pub fn zero() -> LaurentPolyZ {
        LaurentPolyZ::default()
    }

    pub fn one() -> LaurentPolyZ {
        LaurentPolyZ::monomial(0, BigInt::one())
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> LaurentPolyZ {
        LaurentPolyZ::monomial(0, n.into())
    }

    /// The single term `coeff * q^exp`.
    pub fn monomial(exp: i64, coeff: BigInt) -> LaurentPolyZ {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPolyZ { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> LaurentPolyZ {
        LaurentPolyZ::monomial(exp, BigInt::one())
    }

    /// Builds from (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(iter: I) -> LaurentPolyZ {
        let mut out = LaurentPolyZ::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exponent/coefficient pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Highest exponent, or None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, or None for the zero polynomial.
    pub fn trailing_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, other: &LaurentPolyZ) -> LaurentPolyZ {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPolyZ) -> LaurentPolyZ {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPolyZ {
        LaurentPolyZ {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPolyZ) -> LaurentPolyZ {
        let mut out = LaurentPolyZ::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, exp: i64, coeff: &BigInt) -> LaurentPolyZ {
        if coeff.is_zero() {
            return LaurentPolyZ::zero();
        }
        LaurentPolyZ {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> LaurentPolyZ {
        self.mul_monomial(k, &BigInt::one())
    }

    pub fn pow(&self, k: u32) -> LaurentPolyZ {
        let mut acc = LaurentPolyZ::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `q -> 1/q` (negates every exponent).
    pub fn subst_inverse(&self) -> LaurentPolyZ {
        LaurentPolyZ {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact division; fails with `InexactDivision` when the divisor does
    /// not divide evenly over the Laurent ring.
    pub fn div_exact(&self, divisor: &LaurentPolyZ) -> Result<LaurentPolyZ> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.clone();
        let mut quot = LaurentPolyZ::zero();
        let d_deg = divisor.degree().expect("non-zero divisor");
        let d_lead = divisor.coeff(d_deg);
        // Any exact quotient has trailing degree tdeg(self) - tdeg(divisor);
        // dipping below that bound means the division does not come out even.
        let min_exp = match self.trailing_degree() {
            None => return Ok(LaurentPolyZ::zero()),
            Some(t) => t - divisor.trailing_degree().expect("non-zero divisor"),
        };
        while let Some(r_deg) = rem.degree() {
            let r_lead = rem.coeff(r_deg);
            let e = r_deg - d_deg;
            if e < min_exp || (&r_lead % &d_lead) != BigInt::zero() {
                return Err(Error::InexactDivision);
            }
            let c = &r_lead / &d_lead;
            quot.add_term(e, c.clone());
            rem = rem.sub(&divisor.mul_monomial(e, &c));
            if rem.degree().is_some_and(|d| d >= r_deg) {
                return Err(Error::InexactDivision);
            }
        }
        Ok(quot)
    }

    /// `(q^c - 1) / (q - 1)` for any integer `c`, as a Laurent polynomial:
    /// `1 + q + ... + q^{c-1}` for positive `c`, zero for `c = 0`, and
    /// `-(q^{-1} + ... + q^{c})` for negative `c`.
    pub fn geometric(c: i64) -> LaurentPolyZ {
        match c.cmp(&0) {
            std::cmp::Ordering::Greater => {
                LaurentPolyZ::from_terms((0..c).map(|e| (e, BigInt::one())))
            }
            std::cmp::Ordering::Equal => LaurentPolyZ::zero(),
            std::cmp::Ordering::Less => {
                LaurentPolyZ::from_terms((c..0).map(|e| (e, -BigInt::one())))
            }
        }
    }

    /// Evaluates at a rational point (needed when negative exponents are
    /// present).  The point must be non-zero if any exponent is negative.
    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                BigRational::from(q.numer().pow(e as u32))
                    / BigRational::from(q.denom().pow(e as u32))
            } else {
                BigRational::from(q.denom().pow((-e) as u32))
                    / BigRational::from(q.numer().pow((-e) as u32))
            };
            acc += BigRational::from(c.clone()) * p;
        }
        acc
    }

    /// Evaluates at an integer `q >= 1`; fails with `NonIntegerResult`
    /// when negative exponents leave a non-integer value.
    pub fn eval_u64(&self, q: u64) -> Result<BigInt> {
        let point = BigRational::from(BigInt::from(q));
        let v = self.eval_rational(&point);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegerResult)
        }
    }
}

impl std::fmt::Display for LaurentPolyZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_part = if mag.is_one() && e != 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var_part = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            write!(f, "{coeff_part}{var_part}")?;
        }
        Ok(())
    }
}

/// The Gaussian binomial coefficient `[a choose b]_q` as a polynomial in
/// `q`, via the q-Pascal recursion
/// `[a b] = [a-1 b-1] + q^b [a-1 b]`.
pub fn gaussian_binomial(a: usize, b: usize) -> LaurentPolyZ {
    if b > a {
        return LaurentPolyZ::zero();
    }
    // row[i] holds [r choose i]_q while r sweeps 0..=a.
    let mut row: Vec<LaurentPolyZ> = vec![LaurentPolyZ::one()];
    for _r in 1..=a {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(LaurentPolyZ::one());
        for i in 1..row.len() {
            next.push(row[i - 1].add(&row[i].shift(i as i64)));
        }
        next.push(LaurentPolyZ::one());
        row = next;
    }
    row[b].clone()
}

/// `[a choose b]_q` evaluated at a concrete field size.
pub fn gaussian_binomial_at(a: usize, b: usize, q: u64) -> BigInt {
    gaussian_binomial(a, b)
        .eval_u64(q)
        .expect("Gaussian binomials are genuine polynomials")
}

/// `(-1)^d * q^C(d,2)`: the Möbius value of a codimension-`d` interval of
/// the subspace lattice.
pub fn moebius_factor(d: usize, q: u64) -> BigInt {
    let mag = BigInt::from(q).pow((d * d.saturating_sub(1) / 2) as u32);
    if d % 2 == 0 {
        mag
    } else {
        -mag
    }
}

/// The Möbius function of the subspace lattice:
/// `mu(W, V) = (-1)^{v-w} q^C(v-w, 2)` when `W <= V`, else 0.
pub fn moebius(w: &Subspace, v: &Subspace) -> BigInt {
    if !v.contains(w) {
        return BigInt::zero();
    }
    moebius_factor(v.dim() - w.dim(), w.ctx().q())
}

/// All RREF matrices of full row rank with the given pivot profile, i.e.
/// the canonical bases of the subspaces whose pivot list is `profile`.
pub fn subspaces_with_pivots(ctx: &FieldCtx, profile: PivotList) -> Vec<Subspace> {
    let m = profile.m();
    let piv = profile.indices();
    let r = piv.len();
    // Free cells, row-major: to the right of the row's pivot and not in a
    // pivot column.
    let mut free = Vec::new();
    for (i, &p) in piv.iter().enumerate() {
        for j in p + 1..=m {
            if !profile.contains(j) {
                free.push((i, j - 1));
            }
        }
    }
    let count = pow_u128(ctx.q(), free.len() as u32);
    let mut out = Vec::with_capacity(count as usize);
    for code in 0..count {
        let mut mat = MatGF::zeros(ctx, r, m);
        let mut basis = mat.entries().to_vec();
        for (i, &p) in piv.iter().enumerate() {
            basis[i * m + (p - 1)] = ctx.elem(1);
        }
        let mut c = code;
        let q = u128::from(ctx.q());
        for &(i, j) in free.iter().rev() {
            basis[i * m + j] = ctx.elem((c % q) as u64);
            c /= q;
        }
        mat = MatGF::from_flat(ctx, r, m, basis);
        debug_assert_eq!(mat.pivots(), profile);
        out.push(Subspace::from_span(&mat));
    }
    out.sort();
    out
}

/// All subspaces of F^m of the given dimension, sorted canonically.
pub fn subspaces_of_dim(
    ctx: &FieldCtx,
    m: usize,
    dim: usize,
    budget: &Budget,
) -> Result<Vec<Subspace>> {
    let mut total: u128 = 0;
    let profiles: Vec<PivotList> = PivotList::all(m)
        .into_iter()
        .filter(|l| l.len() == dim)
        .collect();
    for l in &profiles {
        total += pow_u128(ctx.q(), l.free_cell_count() as u32);
    }
    budget.check(total)?;
    let mut out = Vec::new();
    for l in profiles {
        out.extend(subspaces_with_pivots(ctx, l));
    }
    out.sort();
    Ok(out)
}

/// All subspaces of F^m, sorted by (dimension, canonical basis).
pub fn subspaces(ctx: &FieldCtx, m: usize, budget: &Budget) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for d in 0..=m {
        out.extend(subspaces_of_dim(ctx, m, d, budget)?);
    }
    Ok(out)
}
