//! Arithmetic in the odd-characteristic fields F_q and F_{q²}.
//!
//! F_q = F_p[t]/(m(t)) is stored as a packed integer whose base-p digits are
//! the power-basis coordinates, so `0, 1, …, p−1` are the prime-field
//! residues and the canonical enumeration order is plain integer order.
//!
//! F_{q²} is never built from a second modulus. An element is a pair
//! `(a, b)` standing for `a + γb`, where γ² = δ is a fixed nonsquare of F_q.
//! With this choice σ(γ) = γ^q = −γ and Tr(γ) = 0 hold by construction.

use std::fmt;

use crate::error::{Error, Result};

/// Fields up to this size get precomputed addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;
/// Nonsquare candidates are double-checked by exhaustive squaring up to here.
const EXHAUSTIVE_SQUARE_LIMIT: u32 = 10_000;
const MAX_FIELD_SIZE: u64 = 1 << 24;

/// An element of F_q, packed as base-p digits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Index of the element in the canonical enumeration order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// An element `a + γb` of F_{q²}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Fq2 {
    pub a: Fq,
    pub b: Fq,
}

impl Fq2 {
    pub const ZERO: Fq2 = Fq2 { a: Fq::ZERO, b: Fq::ZERO };
    pub const ONE: Fq2 = Fq2 { a: Fq::ONE, b: Fq::ZERO };
    pub const GAMMA: Fq2 = Fq2 { a: Fq::ZERO, b: Fq::ONE };

    pub fn new(a: Fq, b: Fq) -> Self {
        Fq2 { a, b }
    }

    pub fn from_base(a: Fq) -> Self {
        Fq2 { a, b: Fq::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The pair of fields F_q ≤ F_{q²} together with the distinguished δ = γ².
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over F_p, ascending coefficients, length e + 1 (empty for e = 1).
    modulus: Vec<u32>,
    delta: Fq,
    tables: Option<Tables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds F_q (q = pᵉ) and its quadratic extension.
///
/// `modulus` lists the coefficients of a monic degree-e irreducible over F_p in
/// ascending order; it must be given exactly when `e > 1`. Negative
/// coefficients are reduced mod p.
pub fn make_field(p: u32, e: u32, modulus: Option<&[i64]>) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NonPrimeP(p));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if e == 0 {
        return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
    }
    let q = (p as u64)
        .checked_pow(e)
        .filter(|&q| q <= MAX_FIELD_SIZE)
        .ok_or(Error::FieldTooLarge)? as u32;

    let modulus = match (e, modulus) {
        (1, None) => Vec::new(),
        (1, Some(_)) => {
            return Err(Error::InvalidModulus("a prime field takes no modulus".into()))
        }
        (_, None) => {
            return Err(Error::InvalidModulus(format!(
                "a degree-{e} extension needs a monic irreducible modulus"
            )))
        }
        (_, Some(m)) => {
            let mut m: Vec<u32> = m.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
            while m.last() == Some(&0) {
                m.pop();
            }
            if m.len() != e as usize + 1 {
                return Err(Error::InvalidModulus(format!("modulus must have degree {e}")));
            }
            if m[e as usize] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            if !prime_field_irreducible(p, &m)? {
                return Err(Error::ReducibleModulus);
            }
            m
        }
    };

    let mut ctx = FieldCtx { p, e, q, modulus, delta: Fq::ZERO, tables: None };
    if q <= TABLE_LIMIT {
        ctx.tables = Some(ctx.build_tables());
    }
    ctx.delta = ctx.first_nonsquare();
    Ok(ctx)
}

/// Irreducibility over F_p: a reducible degree-e polynomial has a factor of
/// degree i ≤ e/2, which then divides X^{p^i} − X.
fn prime_field_irreducible(p: u32, m: &[u32]) -> Result<bool> {
    use crate::poly::FqPoly;

    let fp = make_field(p, 1, None)?;
    let ring = fp.polys();
    let m = FqPoly::from_coeffs(m.iter().map(|&c| Fq(c)).collect());
    let e = m.degree().unwrap_or(0);
    let x = FqPoly::x_pow(1);
    let mut frob = x.clone();
    for _ in 1..=e / 2 {
        frob = ring.pow_mod(&frob, p as u64, &m)?;
        let g = ring.gcd(&ring.sub(&frob, &x), &m);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl FieldCtx {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// The base field size q.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// δ = γ², the nonsquare fixed at construction.
    pub fn delta(&self) -> Fq {
        self.delta
    }

    /// γ^{q+1} = −δ.
    pub fn gamma_norm(&self) -> Fq {
        self.neg(self.delta)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// Lifts an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.p as i64) as u32)
    }

    /// Packs power-basis digits (each reduced mod p).
    pub fn from_digits(&self, digits: &[i64]) -> Result<Fq> {
        if digits.len() > self.e as usize {
            return Err(Error::InvalidElement(format!(
                "expected at most {} digits, got {}",
                self.e,
                digits.len()
            )));
        }
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.p + d.rem_euclid(self.p as i64) as u32;
        }
        Ok(Fq(v))
    }

    pub fn digits(&self, x: Fq) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut v = x.0;
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Decodes a packed index; `None` when out of range.
    pub fn element(&self, index: u32) -> Option<Fq> {
        (index < self.q).then_some(Fq(index))
    }

    #[inline]
    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        if self.e == 1 {
            let s = x.0 + y.0;
            return Fq(if s >= self.p { s - self.p } else { s });
        }
        if let Some(t) = &self.tables {
            return Fq(t.add[(x.0 * self.q + y.0) as usize]);
        }
        self.add_slow(x, y)
    }

    #[inline]
    pub fn neg(&self, x: Fq) -> Fq {
        if self.e == 1 {
            return Fq(if x.0 == 0 { 0 } else { self.p - x.0 });
        }
        if let Some(t) = &self.tables {
            return Fq(t.neg[x.0 as usize]);
        }
        self.neg_slow(x)
    }

    #[inline]
    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        if let Some(t) = &self.tables {
            return Fq(t.mul[(x.0 * self.q + y.0) as usize]);
        }
        if self.e == 1 {
            return Fq(((x.0 as u64 * y.0 as u64) % self.p as u64) as u32);
        }
        self.mul_slow(x, y)
    }

    pub fn inv(&self, x: Fq) -> Result<Fq> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            return Ok(Fq(t.inv[x.0 as usize]));
        }
        Ok(self.pow(x, self.q as u64 - 2))
    }

    pub fn div(&self, x: Fq, y: Fq) -> Result<Fq> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Fq, mut exp: u64) -> Fq {
        let mut base = x;
        let mut acc = Fq::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Euler's criterion: x is a nonzero square iff x^{(q−1)/2} = 1.
    pub fn is_square(&self, x: Fq) -> bool {
        x.is_zero() || self.pow(x, (self.q as u64 - 1) / 2) == Fq::ONE
    }

    fn first_nonsquare(&self) -> Fq {
        let delta = self
            .elements()
            .find(|&x| !self.is_square(x))
            .expect("odd field has nonsquares");
        if self.q <= EXHAUSTIVE_SQUARE_LIMIT {
            assert!(
                self.elements().all(|y| self.mul(y, y) != delta),
                "Euler criterion disagrees with exhaustive squaring"
            );
        }
        delta
    }

    fn add_slow(&self, x: Fq, y: Fq) -> Fq {
        let (p, mut a, mut b) = (self.p, x.0, y.0);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        Fq(out)
    }

    fn neg_slow(&self, x: Fq) -> Fq {
        let (p, mut a) = (self.p, x.0);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        Fq(out)
    }

    fn mul_slow(&self, x: Fq, y: Fq) -> Fq {
        let p = self.p as u64;
        let e = self.e as usize;
        let a = self.digits(x);
        let b = self.digits(y);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
            }
        }
        // Reduce with the monic modulus: t^e = −Σ m_i t^i.
        for top in (e..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &mi) in self.modulus[..e].iter().enumerate() {
                let idx = top - e + i;
                prod[idx] = (prod[idx] + (p - c) * mi as u64) % p;
            }
        }
        let mut v = 0u32;
        for &d in prod[..e].iter().rev() {
            v = v * self.p + d as u32;
        }
        Fq(v)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q;
        let mut add = vec![0u32; (q * q) as usize];
        let mut mul = vec![0u32; (q * q) as usize];
        for x in 0..q {
            for y in 0..q {
                add[(x * q + y) as usize] = self.add_slow(Fq(x), Fq(y)).0;
                mul[(x * q + y) as usize] = if self.e == 1 {
                    (x * y) % self.p
                } else {
                    self.mul_slow(Fq(x), Fq(y)).0
                };
            }
        }
        let neg = (0..q).map(|x| self.neg_slow(Fq(x)).0).collect();
        let mut inv = vec![0u32; q as usize];
        for x in 1..q {
            inv[x as usize] = (1..q).find(|&y| mul[(x * q + y) as usize] == 1).unwrap();
        }
        Tables { add, mul, neg, inv }
    }

    // ---- F_{q²} ----

    pub fn add2(&self, x: Fq2, y: Fq2) -> Fq2 {
        Fq2 { a: self.add(x.a, y.a), b: self.add(x.b, y.b) }
    }

    pub fn sub2(&self, x: Fq2, y: Fq2) -> Fq2 {
        Fq2 { a: self.sub(x.a, y.a), b: self.sub(x.b, y.b) }
    }

    pub fn neg2(&self, x: Fq2) -> Fq2 {
        Fq2 { a: self.neg(x.a), b: self.neg(x.b) }
    }

    /// (a + γb)(c + γd) = (ac + δbd) + γ(ad + bc).
    pub fn mul2(&self, x: Fq2, y: Fq2) -> Fq2 {
        let bd = self.mul(x.b, y.b);
        Fq2 {
            a: self.add(self.mul(x.a, y.a), self.mul(self.delta, bd)),
            b: self.add(self.mul(x.a, y.b), self.mul(x.b, y.a)),
        }
    }

    /// Scales by an element of the base field.
    pub fn scale2(&self, s: Fq, x: Fq2) -> Fq2 {
        Fq2 { a: self.mul(s, x.a), b: self.mul(s, x.b) }
    }

    /// Norm x·σ(x) = a² − δb², which lies in F_q.
    pub fn norm(&self, x: Fq2) -> Fq {
        self.sub(self.mul(x.a, x.a), self.mul(self.delta, self.mul(x.b, x.b)))
    }

    pub fn inv2(&self, x: Fq2) -> Result<Fq2> {
        let n_inv = self.inv(self.norm(x))?;
        Ok(self.scale2(n_inv, self.frobenius(x)))
    }

    pub fn pow2(&self, x: Fq2, mut exp: u64) -> Fq2 {
        let mut base = x;
        let mut acc = Fq2::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul2(acc, base);
            }
            base = self.mul2(base, base);
            exp >>= 1;
        }
        acc
    }

    /// σ(a + γb) = a − γb.
    pub fn frobenius(&self, x: Fq2) -> Fq2 {
        Fq2 { a: x.a, b: self.neg(x.b) }
    }

    /// Tr(x) = x + σ(x) = 2a.
    pub fn trace(&self, x: Fq2) -> Fq {
        self.add(x.a, x.a)
    }

    pub fn elements2(&self) -> impl Iterator<Item = Fq2> + '_ {
        self.elements()
            .flat_map(move |b| self.elements().map(move |a| Fq2 { a, b }))
    }

    pub fn display(&self, x: Fq) -> FqDisplay<'_> {
        FqDisplay { ctx: self, x }
    }
}

/// Prints an element as a residue (prime fields) or as `[d0 d1 …]`.
pub struct FqDisplay<'a> {
    ctx: &'a FieldCtx,
    x: Fq,
}

impl fmt::Display for FqDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.e == 1 {
            return write!(f, "{}", self.x.0);
        }
        write!(f, "[")?;
        for (i, d) in self.ctx.digits(self.x).iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.e)
        }
    }
}
