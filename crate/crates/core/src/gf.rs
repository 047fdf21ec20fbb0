//! Arithmetic in small finite fields GF(p^e).
//!
//! A [`FieldCtx`] owns the characteristic, the extension degree and the
//! irreducible modulus; all arithmetic goes through it.  Elements are plain
//! integers in `[0, q)` wrapped in [`FieldElem`]: the value encodes the
//! coefficient vector of the residue polynomial in base `p`, i.e.
//! `value = a_0 + a_1*p + ... + a_{e-1}*p^{e-1}`.
//!
//! Built-in moduli exist for every prime power `q = p^e <= 16` (the
//! lexicographically smallest monic irreducible of the right degree, e.g.
//! `x^2 + x + 1` for GF(4) and `x^3 + x + 1` for GF(8)).  Larger fields are
//! supported when the caller provides an irreducible modulus.
//!
//! Elements are bound to the context that produced them.  Mixing elements
//! of different contexts is a contract violation; debug builds catch the
//! out-of-range values this produces.

use crate::error::{Error, Result};

/// A field element: an integer encoding in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u64);

impl FieldElem {
    /// The zero element (valid in every field).
    pub const ZERO: FieldElem = FieldElem(0);
    /// The one element (valid in every field).
    pub const ONE: FieldElem = FieldElem(1);

    /// The integer encoding of the element.
    pub fn val(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field GF(p^e) with a fixed monic irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus of degree `e`, ascending coefficients in `[0, p)`.
    /// For `e == 1` this is the polynomial `x`.
    modulus: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds GF(p^e).
    ///
    /// With `modulus: None` the built-in table is used, which covers all
    /// prime powers up to 16.  A supplied modulus must be monic of degree
    /// `e` (ascending coefficients, reduced mod `p`) and irreducible; it is
    /// validated by trial division.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::UnsupportedSize { p, e });
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or(Error::UnsupportedSize { p, e })?;
        }
        let modulus = match modulus {
            Some(coeffs) => {
                if e == 1 {
                    // Any monic linear polynomial defines the same field;
                    // normalize to x.
                    if coeffs.len() != 2 || coeffs[1] % p != 1 {
                        return Err(Error::ReducibleModulus);
                    }
                    vec![0, 1]
                } else {
                    let reduced: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
                    if reduced.len() != e as usize + 1 || reduced[e as usize] != 1 {
                        return Err(Error::ReducibleModulus);
                    }
                    let base = FieldCtx::prime_field(p);
                    let f: Vec<FieldElem> = reduced.iter().map(|&c| FieldElem(c)).collect();
                    if !poly::is_irreducible(&base, &f) {
                        return Err(Error::ReducibleModulus);
                    }
                    reduced
                }
            }
            None => {
                if q > 16 {
                    return Err(Error::UnsupportedSize { p, e });
                }
                if e == 1 {
                    vec![0, 1]
                } else {
                    let base = FieldCtx::prime_field(p);
                    poly::smallest_irreducible(&base, e as usize)
                        .iter()
                        .map(|c| c.val())
                        .collect()
                }
            }
        };
        Ok(FieldCtx { p, e, q, modulus })
    }

    fn prime_field(p: u64) -> FieldCtx {
        FieldCtx {
            p,
            e: 1,
            q: p,
            modulus: vec![0, 1],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// The field size `q = p^e`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Ascending coefficients of the modulus, length `e + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Wraps an integer encoding; panics when out of range.
    pub fn elem(&self, v: u64) -> FieldElem {
        assert!(v < self.q, "element value {v} out of range for GF({})", self.q);
        FieldElem(v)
    }

    /// Fallible version of [`FieldCtx::elem`] for parsing external input.
    pub fn try_elem(&self, v: u64) -> Result<FieldElem> {
        if v < self.q {
            Ok(FieldElem(v))
        } else {
            Err(Error::Parse(format!(
                "element value {v} out of range for GF({})",
                self.q
            )))
        }
    }

    /// All field elements in ascending encoding order.
    pub fn elems(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    fn digits(&self, v: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut v = v;
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u64]) -> u64 {
        let mut v = 0;
        for &d in digits.iter().rev() {
            v = v * self.p + d;
        }
        v
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(a.0 < self.q && b.0 < self.q, "element from another context");
        if self.e == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (da, db) = (self.digits(a.0), self.digits(b.0));
        let sum: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        FieldElem(self.undigits(&sum))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        debug_assert!(a.0 < self.q, "element from another context");
        if self.e == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let da = self.digits(a.0);
        let neg: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        FieldElem(self.undigits(&neg))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(a.0 < self.q && b.0 < self.q, "element from another context");
        if self.e == 1 {
            return FieldElem((u128::from(a.0) * u128::from(b.0) % u128::from(self.p)) as u64);
        }
        let (da, db) = (self.digits(a.0), self.digits(b.0));
        let e = self.e as usize;
        // Polynomial product, then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for i in (e..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..e {
                let m = self.modulus[j];
                if m != 0 {
                    let t = (c * m) % self.p;
                    prod[i - e + j] = (prod[i - e + j] + self.p - t) % self.p;
                }
            }
        }
        FieldElem(self.undigits(&prod[..e]))
    }

    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace down to the prime field:
    /// `Tr(a) = a + a^p + ... + a^(p^(e-1))`, returned as a value in `[0, p)`.
    pub fn abs_trace(&self, a: FieldElem) -> u64 {
        let mut frob = a;
        let mut acc = a;
        for _ in 1..self.e {
            frob = self.pow(frob, self.p);
            acc = self.add(acc, frob);
        }
        // The trace lands in the prime subfield, whose elements are encoded
        // by their low base-p digit.
        debug_assert!(acc.0 < self.p, "trace left the prime subfield");
        acc.0
    }
}

/// Dense polynomial helpers over an arbitrary [`FieldCtx`].
///
/// Polynomials are ascending coefficient vectors with no trailing zeros.
/// Only what the crate needs: products, remainders, irreducibility by
/// trial division, and the deterministic "smallest irreducible" search
/// used for built-in moduli and field-extension constructions.
pub mod poly {
    use super::{FieldCtx, FieldElem};

    pub fn trim(c: &mut Vec<FieldElem>) {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn deg(c: &[FieldElem]) -> Option<usize> {
        c.iter().rposition(|x| !x.is_zero())
    }

    pub fn mul(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo `b` (`b` non-zero).
    pub fn rem(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let db = deg(b).expect("division by the zero polynomial");
        let lead_inv = ctx.inv(b[db]).expect("non-zero leading coefficient");
        let mut r: Vec<FieldElem> = a.to_vec();
        trim(&mut r);
        while let Some(dr) = deg(&r) {
            if dr < db {
                break;
            }
            let c = ctx.mul(r[dr], lead_inv);
            let shift = dr - db;
            for j in 0..=db {
                let t = ctx.mul(c, b[j]);
                r[shift + j] = ctx.sub(r[shift + j], t);
            }
            trim(&mut r);
        }
        r
    }

    /// All monic polynomials of degree `d`, ascending in the base-q value
    /// of their coefficient vector.
    pub fn monic_of_degree<'a>(
        ctx: &'a FieldCtx,
        d: usize,
    ) -> impl Iterator<Item = Vec<FieldElem>> + 'a {
        let q = ctx.q();
        let count = q.pow(d as u32);
        (0..count).map(move |code| {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                coeffs.push(ctx.elem(c % q));
                c /= q;
            }
            coeffs.push(FieldElem::ONE);
            coeffs
        })
    }

    /// Irreducibility of a monic polynomial by trial division against all
    /// monic polynomials of degree up to `deg(f)/2`.
    pub fn is_irreducible(ctx: &FieldCtx, f: &[FieldElem]) -> bool {
        let d = match deg(f) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        for dd in 1..=d / 2 {
            for g in monic_of_degree(ctx, dd) {
                if rem(ctx, f, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// The monic irreducible of degree `d` with the smallest coefficient
    /// encoding.  Deterministic; used for the built-in modulus table.
    pub fn smallest_irreducible(ctx: &FieldCtx, d: usize) -> Vec<FieldElem> {
        monic_of_degree(ctx, d)
            .find(|f| is_irreducible(ctx, f))
            .expect("irreducible polynomials exist in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_fields() -> Vec<FieldCtx> {
        [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (2, 3), (3, 2), (2, 4)]
            .iter()
            .map(|&(p, e)| FieldCtx::new(p, e, None).unwrap())
            .collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::new(4, 1, None), Err(Error::NonPrime(4)));
        assert_eq!(FieldCtx::new(1, 1, None), Err(Error::NonPrime(1)));
        assert_eq!(
            FieldCtx::new(2, 5, None),
            Err(Error::UnsupportedSize { p: 2, e: 5 })
        );
        assert_eq!(
            FieldCtx::new(17, 1, None),
            Err(Error::UnsupportedSize { p: 17, e: 1 })
        );
        // x^2 + 1 = (x + 1)^2 over GF(2).
        assert_eq!(
            FieldCtx::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus)
        );
        // Degree mismatch.
        assert_eq!(
            FieldCtx::new(2, 3, Some(&[1, 1, 1])),
            Err(Error::ReducibleModulus)
        );
    }

    #[test]
    fn builtin_moduli() {
        assert_eq!(FieldCtx::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        // x^2 + 1 is irreducible over GF(3) and lexicographically first.
        assert_eq!(FieldCtx::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn custom_modulus_beyond_table() {
        // GF(32) via x^5 + x^2 + 1.
        let f = FieldCtx::new(2, 5, Some(&[1, 0, 1, 0, 0, 1])).unwrap();
        assert_eq!(f.q(), 32);
        for a in f.elems() {
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in table_fields() {
            let q = f.q();
            for a in f.elems() {
                assert_eq!(f.add(a, FieldElem::ZERO), a);
                assert_eq!(f.mul(a, FieldElem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
                    // Lagrange: a^(q-1) = 1.
                    assert_eq!(f.pow(a, q - 1), FieldElem::ONE);
                }
                for b in f.elems() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elems() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            assert_eq!(f.inv(FieldElem::ZERO), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant() {
        for f in table_fields() {
            for a in f.elems() {
                // Tr(a^p) = Tr(a).
                assert_eq!(f.abs_trace(f.pow(a, f.p())), f.abs_trace(a));
                for b in f.elems() {
                    assert_eq!(
                        f.abs_trace(f.add(a, b)),
                        (f.abs_trace(a) + f.abs_trace(b)) % f.p()
                    );
                }
            }
        }
    }

    #[test]
    fn trace_is_nondegenerate_and_balanced() {
        for f in table_fields() {
            // For every b != 0 some a pairs non-trivially with it.
            for b in f.elems().filter(|b| !b.is_zero()) {
                assert!(
                    f.elems().any(|a| f.abs_trace(f.mul(a, b)) != 0),
                    "degenerate trace pairing in GF({})",
                    f.q()
                );
            }
            // The kernel of the trace has exactly p^(e-1) elements.
            let kernel = f.elems().filter(|&a| f.abs_trace(a) == 0).count() as u64;
            assert_eq!(kernel, f.q() / f.p());
        }
    }

    #[test]
    fn trace_examples() {
        // In GF(4) with modulus x^2 + x + 1 the generator x (encoding 2)
        // has trace x + x^2 = 1, while 1 has trace 0.
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(f4.abs_trace(f4.elem(2)), 1);
        assert_eq!(f4.abs_trace(f4.elem(1)), 0);
        assert_eq!(f4.abs_trace(FieldElem::ZERO), 0);
        // Over a prime field the trace is the identity.
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        for a in f5.elems() {
            assert_eq!(f5.abs_trace(a), a.val());
        }
    }

    #[test]
    fn gf4_multiplication_table() {
        // 2 encodes x, 3 encodes x + 1; x * x = x + 1, x * (x+1) = 1.
        let f = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(f.mul(f.elem(2), f.elem(2)), f.elem(3));
        assert_eq!(f.mul(f.elem(2), f.elem(3)), f.elem(1));
        assert_eq!(f.mul(f.elem(3), f.elem(3)), f.elem(2));
    }

    #[test]
    fn gf8_companion_relation() {
        // In GF(8) = GF(2)[x]/(x^3 + x + 1): x^3 = x + 1 (encodings 2 -> 3).
        let f = FieldCtx::new(2, 3, None).unwrap();
        assert_eq!(f.pow(f.elem(2), 3), f.elem(3));
    }

    #[test]
    fn smallest_irreducible_over_extension_field() {
        // Degree-2 irreducible over GF(4) exists and validates.
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let g = poly::smallest_irreducible(&f4, 2);
        assert_eq!(poly::deg(&g), Some(2));
        assert!(poly::is_irreducible(&f4, &g));
    }
}
