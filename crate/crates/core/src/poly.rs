//! Dense univariate polynomials over F_q.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// Dense polynomial, ascending coefficients, no trailing zeros.
///
/// The zero polynomial is the empty vector; its degree is `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<Fq>,
}

impl FqPoly {
    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FqPoly { coeffs: vec![Fq::ONE] }
    }

    pub fn constant(c: Fq) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; k + 1];
        coeffs[k] = Fq::ONE;
        FqPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fq> {
        self.coeffs
    }

    /// Coefficient of Xⁱ (zero past the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fq> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Fq::ONE)
    }

    /// X-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// f*(X) = Σ fᵢ X^{m−i} for f of degree m; 0* = 0.
    pub fn reciprocal(&self) -> FqPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        FqPoly::from_coeffs(coeffs)
    }

    /// Canonical representative X^{n−deg f}·f*(X) of f(X^{n−1}) modulo Xⁿ − 1.
    ///
    /// Not reduced: for deg f = 0 the result has degree n.
    pub fn hat(&self, n: usize) -> Result<FqPoly> {
        let Some(m) = self.degree() else {
            return Ok(FqPoly::zero());
        };
        if m > n {
            return Err(Error::DegreeExceedsLength { degree: m, n });
        }
        Ok(self.reciprocal().shift(n - m))
    }

    /// Multiplies by X^k.
    pub fn shift(&self, k: usize) -> FqPoly {
        if self.is_zero() {
            return FqPoly::zero();
        }
        let mut coeffs = vec![Fq::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        FqPoly { coeffs }
    }

    /// Pads or truncates to exactly `len` coefficients.
    pub fn to_dense(&self, len: usize) -> Vec<Fq> {
        let mut v = self.coeffs.clone();
        v.resize(len, Fq::ZERO);
        v
    }
}

/// Polynomial arithmetic over a fixed base field.
#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    field: &'a FieldCtx,
}

impl FieldCtx {
    pub fn polys(&self) -> PolyRing<'_> {
        PolyRing { field: self }
    }
}

impl<'a> PolyRing<'a> {
    pub fn field(&self) -> &'a FieldCtx {
        self.field
    }

    /// Builds a polynomial from integer coefficients reduced mod p.
    pub fn from_ints(&self, coeffs: &[i64]) -> FqPoly {
        FqPoly::from_coeffs(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    /// Xⁿ − 1.
    pub fn xn_minus_one(&self, n: usize) -> FqPoly {
        let mut coeffs = vec![Fq::ZERO; n + 1];
        coeffs[0] = self.field.neg(Fq::ONE);
        coeffs[n] = self.field.add(coeffs[n], Fq::ONE);
        FqPoly::from_coeffs(coeffs)
    }

    pub fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let k = self.field;
        let len = a.coeffs.len().max(b.coeffs.len());
        FqPoly::from_coeffs((0..len).map(|i| k.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let k = self.field;
        let len = a.coeffs.len().max(b.coeffs.len());
        FqPoly::from_coeffs((0..len).map(|i| k.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn neg(&self, a: &FqPoly) -> FqPoly {
        FqPoly { coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn scale(&self, s: Fq, a: &FqPoly) -> FqPoly {
        if s.is_zero() {
            return FqPoly::zero();
        }
        FqPoly { coeffs: a.coeffs.iter().map(|&c| self.field.mul(s, c)).collect() }
    }

    pub fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let k = self.field;
        let mut out = vec![Fq::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(ai, bj));
            }
        }
        FqPoly::from_coeffs(out)
    }

    pub fn product<'p>(&self, factors: impl IntoIterator<Item = &'p FqPoly>) -> FqPoly {
        factors.into_iter().fold(FqPoly::one(), |acc, f| self.mul(&acc, f))
    }

    /// Returns (s, r) with a = s·b + r and deg r < deg b.
    pub fn divmod(&self, a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let k = self.field;
        let lead_inv = k.inv(b.coeffs[db])?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((FqPoly::zero(), a.clone()));
        }
        let mut quot = vec![Fq::ZERO; rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let t = k.mul(c, lead_inv);
            quot[top - db] = t;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let idx = top - db + j;
                rem[idx] = k.sub(rem[idx], k.mul(t, bj));
            }
        }
        rem.truncate(db);
        Ok((FqPoly::from_coeffs(quot), FqPoly::from_coeffs(rem)))
    }

    pub fn rem(&self, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
        Ok(self.divmod(a, b)?.1)
    }

    /// a / b, failing unless b divides a.
    pub fn div_exact(&self, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
        let (s, r) = self.divmod(a, b)?;
        if !r.is_zero() {
            return Err(Error::NonExactDivision(format!(
                "{} by {}",
                self.display(a),
                self.display(b)
            )));
        }
        Ok(s)
    }

    pub fn divides(&self, b: &FqPoly, a: &FqPoly) -> bool {
        matches!(self.divmod(a, b), Ok((_, r)) if r.is_zero())
    }

    /// Reduction modulo Xⁿ − 1: coefficient i folds onto i mod n.
    pub fn mod_xn1(&self, a: &FqPoly, n: usize) -> FqPoly {
        if a.coeffs.len() <= n {
            return a.clone();
        }
        let k = self.field;
        let mut out = vec![Fq::ZERO; n];
        for (i, &c) in a.coeffs.iter().enumerate() {
            out[i % n] = k.add(out[i % n], c);
        }
        FqPoly::from_coeffs(out)
    }

    /// f(−X): coefficient i is multiplied by (−1)ⁱ.
    pub fn flip(&self, a: &FqPoly) -> FqPoly {
        FqPoly {
            coeffs: a
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { self.field.neg(c) } else { c })
                .collect(),
        }
    }

    pub fn eval(&self, a: &FqPoly, x: Fq) -> Fq {
        let k = self.field;
        a.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, a: &FqPoly) -> FqPoly {
        match a.leading() {
            None => FqPoly::zero(),
            Some(l) if l == Fq::ONE => a.clone(),
            Some(l) => self.scale(self.field.inv(l).expect("nonzero leading coefficient"), a),
        }
    }

    pub fn pow_mod(&self, a: &FqPoly, mut exp: u64, m: &FqPoly) -> Result<FqPoly> {
        let mut base = self.rem(a, m)?;
        let mut acc = self.rem(&FqPoly::one(), m)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), m)?;
            }
            base = self.rem(&self.mul(&base, &base), m)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Monic gcd; gcd(a, 0) = monic(a) and gcd(0, 0) = 0.
    pub fn gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = self.rem(&r0, &r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
        }
        self.monic(&r0)
    }

    /// Extended Euclid: (h, u, v) with u·a + v·b = h = gcd(a, b), h monic.
    ///
    /// The cofactors are the ones produced by the remainder sequence, which is
    /// the minimal-degree Bézout pair.
    pub fn xgcd(&self, a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly, FqPoly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FqPoly::one(), FqPoly::zero());
        let (mut t0, mut t1) = (FqPoly::zero(), FqPoly::one());
        while !r1.is_zero() {
            let (quot, r) = self.divmod(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&quot, &s1));
            let t = self.sub(&t0, &self.mul(&quot, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = self.field.inv(r0.leading().expect("nonzero gcd"))?;
        Ok((self.scale(l, &r0), self.scale(l, &s0), self.scale(l, &t0)))
    }

    /// Checks w·l·f·g = Xⁿ − 1 exactly.
    pub fn validate_factorization(
        &self,
        w: &FqPoly,
        l: &FqPoly,
        f: &FqPoly,
        g: &FqPoly,
        n: usize,
    ) -> Result<()> {
        let product = self.product([w, l, f, g]);
        if product == self.xn_minus_one(n) {
            Ok(())
        } else {
            Err(Error::FactorizationMismatch { n, product: self.display(&product).to_string() })
        }
    }

    pub fn display<'p>(&self, a: &'p FqPoly) -> PolyDisplay<'a, 'p> {
        PolyDisplay { field: self.field, poly: a }
    }
}

/// Human-readable infix form, e.g. `X^3 + 2X^2 + 1`.
pub struct PolyDisplay<'a, 'p> {
    field: &'a FieldCtx,
    poly: &'p FqPoly,
}

impl fmt::Display for PolyDisplay<'_, '_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = self.field.display(c);
            match (i, c == Fq::ONE) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{coeff}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{coeff}X^{i}")?,
            }
        }
        Ok(())
    }
}
