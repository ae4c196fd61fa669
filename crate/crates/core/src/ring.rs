//! The ambient ring R_n and the inner products on it.
//!
//! An element of R_n is stored as a pair (c, d) of F_q-polynomials of degree
//! below n and stands for c(X) + γ·d(X). In the cyclic variant R_n is the
//! commutative ring F_{q²}[X]/(Xⁿ−1); in the skew variant it is
//! F_{q²}[X;σ]/(Xⁿ−1), where X·γ = σ(γ)·X = −γ·X.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq, Fq2};
use crate::poly::{FqPoly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Cyclic,
    Skew,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Cyclic => "cyclic",
            Variant::Skew => "skew",
        })
    }
}

/// Which trace form a dual is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// u ⊛ v = Tr(u ⋆ v)
    TraceEuclidean,
    /// u ⊡ v = Tr(u • v)
    TraceHermitian,
}

impl Form {
    /// Tr(γ·σ^ε(γ))/2 for the form: δ for TE and γ^{q+1} = −δ for TH.
    pub fn gamma_scalar(self, field: &FieldCtx) -> Fq {
        match self {
            Form::TraceEuclidean => field.delta(),
            Form::TraceHermitian => field.gamma_norm(),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::TraceEuclidean => "te",
            Form::TraceHermitian => "th",
        })
    }
}

/// c(X) + γ·d(X) in R_n, both parts reduced modulo Xⁿ − 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RnElem {
    n: usize,
    c: FqPoly,
    d: FqPoly,
}

impl RnElem {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The F_q-part c.
    pub fn c(&self) -> &FqPoly {
        &self.c
    }

    /// The γ-part d.
    pub fn d(&self) -> &FqPoly {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// The i-th coefficient cᵢ + γdᵢ.
    pub fn coeff(&self, i: usize) -> Fq2 {
        Fq2::new(self.c.coeff(i), self.d.coeff(i))
    }

    /// Coordinates in the fixed layout: c₀…c_{n−1} then d₀…d_{n−1}.
    pub fn to_vector(&self) -> Vec<Fq> {
        let mut v = self.c.to_dense(self.n);
        v.extend(self.d.to_dense(self.n));
        v
    }

    pub fn from_vector(v: &[Fq]) -> Self {
        assert!(v.len().is_multiple_of(2), "vector length must be 2n");
        let n = v.len() / 2;
        RnElem {
            n,
            c: FqPoly::from_coeffs(v[..n].to_vec()),
            d: FqPoly::from_coeffs(v[n..].to_vec()),
        }
    }
}

/// R_n for a given field, length and variant.
#[derive(Clone, Copy)]
pub struct Rn<'a> {
    field: &'a FieldCtx,
    n: usize,
    variant: Variant,
}

impl<'a> Rn<'a> {
    pub fn new(field: &'a FieldCtx, n: usize, variant: Variant) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        if variant == Variant::Skew && n % 2 == 1 {
            return Err(Error::OddLength(n));
        }
        Ok(Rn { field, n, variant })
    }

    pub fn field(&self) -> &'a FieldCtx {
        self.field
    }

    pub fn polys(&self) -> PolyRing<'a> {
        self.field.polys()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// c + γd, reducing both parts mod Xⁿ − 1.
    pub fn elem(&self, c: &FqPoly, d: &FqPoly) -> RnElem {
        let r = self.polys();
        RnElem { n: self.n, c: r.mod_xn1(c, self.n), d: r.mod_xn1(d, self.n) }
    }

    pub fn zero(&self) -> RnElem {
        RnElem { n: self.n, c: FqPoly::zero(), d: FqPoly::zero() }
    }

    pub fn from_coeffs(&self, coeffs: &[Fq2]) -> Result<RnElem> {
        if coeffs.len() != self.n {
            return Err(Error::LengthMismatch(coeffs.len(), self.n));
        }
        Ok(RnElem {
            n: self.n,
            c: FqPoly::from_coeffs(coeffs.iter().map(|x| x.a).collect()),
            d: FqPoly::from_coeffs(coeffs.iter().map(|x| x.b).collect()),
        })
    }

    fn check(&self, u: &RnElem) -> Result<()> {
        if u.n != self.n {
            return Err(Error::LengthMismatch(u.n, self.n));
        }
        Ok(())
    }

    pub fn add(&self, u: &RnElem, v: &RnElem) -> Result<RnElem> {
        self.check(u)?;
        self.check(v)?;
        let r = self.polys();
        Ok(RnElem { n: self.n, c: r.add(&u.c, &v.c), d: r.add(&u.d, &v.d) })
    }

    pub fn sub(&self, u: &RnElem, v: &RnElem) -> Result<RnElem> {
        self.check(u)?;
        self.check(v)?;
        let r = self.polys();
        Ok(RnElem { n: self.n, c: r.sub(&u.c, &v.c), d: r.sub(&u.d, &v.d) })
    }

    pub fn scale(&self, s: Fq, u: &RnElem) -> RnElem {
        let r = self.polys();
        RnElem { n: u.n, c: r.scale(s, &u.c), d: r.scale(s, &u.d) }
    }

    /// a(X)·u for a ∈ F_q[X]. In the skew variant a(X)·γ = γ·a(−X).
    pub fn left_action(&self, a: &FqPoly, u: &RnElem) -> Result<RnElem> {
        self.check(u)?;
        let r = self.polys();
        let d = match self.variant {
            Variant::Cyclic => r.mul(a, &u.d),
            Variant::Skew => r.mul(&r.flip(a), &u.d),
        };
        Ok(RnElem {
            n: self.n,
            c: r.mod_xn1(&r.mul(a, &u.c), self.n),
            d: r.mod_xn1(&d, self.n),
        })
    }

    /// Multiplication by X, i.e. the (skew) cyclic shift.
    pub fn shift(&self, u: &RnElem) -> RnElem {
        let k = self.field;
        let n = self.n;
        let rotate = |p: &FqPoly, negate: bool| {
            let mut v = vec![Fq::ZERO; n];
            for (i, &c) in p.coeffs().iter().enumerate() {
                v[(i + 1) % n] = if negate { k.neg(c) } else { c };
            }
            FqPoly::from_coeffs(v)
        };
        RnElem {
            n,
            c: rotate(&u.c, false),
            d: rotate(&u.d, self.variant == Variant::Skew),
        }
    }

    /// Full ring product (c₁ + γd₁)(c₂ + γd₂).
    ///
    /// Skew: c₁c₂ + δ·d₁(−X)d₂ + γ(c₁(−X)d₂ + d₁c₂). Cyclic: the commutative product.
    pub fn mul(&self, u: &RnElem, v: &RnElem) -> Result<RnElem> {
        self.check(u)?;
        self.check(v)?;
        let r = self.polys();
        let delta = self.field.delta();
        let (c1, d1) = match self.variant {
            Variant::Cyclic => (u.c.clone(), u.d.clone()),
            Variant::Skew => (r.flip(&u.c), r.flip(&u.d)),
        };
        let c = r.add(&r.mul(&u.c, &v.c), &r.scale(delta, &r.mul(&d1, &v.d)));
        let d = r.add(&r.mul(&c1, &v.d), &r.mul(&u.d, &v.c));
        Ok(self.elem(&c, &d))
    }

    /// u ⋆ v = Σ uᵢvᵢ over F_{q²}.
    pub fn star(&self, u: &RnElem, v: &RnElem) -> Result<Fq2> {
        self.check(u)?;
        self.check(v)?;
        let k = self.field;
        Ok((0..self.n).fold(Fq2::ZERO, |acc, i| k.add2(acc, k.mul2(u.coeff(i), v.coeff(i)))))
    }

    /// u • v = Σ uᵢσ(vᵢ).
    pub fn bullet(&self, u: &RnElem, v: &RnElem) -> Result<Fq2> {
        self.check(u)?;
        self.check(v)?;
        let k = self.field;
        Ok((0..self.n).fold(Fq2::ZERO, |acc, i| {
            k.add2(acc, k.mul2(u.coeff(i), k.frobenius(v.coeff(i))))
        }))
    }

    pub fn trace_form(&self, u: &RnElem, v: &RnElem, form: Form) -> Result<Fq> {
        let x = match form {
            Form::TraceEuclidean => self.star(u, v)?,
            Form::TraceHermitian => self.bullet(u, v)?,
        };
        Ok(self.field.trace(x))
    }

    pub fn display<'e>(&self, u: &'e RnElem) -> ElemDisplay<'a, 'e> {
        ElemDisplay { field: self.field, elem: u }
    }
}

pub struct ElemDisplay<'a, 'e> {
    field: &'a FieldCtx,
    elem: &'e RnElem,
}

impl fmt::Display for ElemDisplay<'_, '_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.field.polys();
        write!(f, "({}) + γ({})", r.display(&self.elem.c), r.display(&self.elem.d))
    }
}
