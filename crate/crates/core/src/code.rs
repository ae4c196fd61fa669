//! F_q-linear (skew) cyclic codes as F_q[X]-submodules of R_n.
//!
//! A [`Code`] keeps an F_q-basis in reduced row-echelon form. Rows use the
//! fixed layout of [`RnElem::to_vector`]: the n coordinates of the F_q-part
//! followed by the n coordinates of the γ-part. The oracle's Gram matrix
//! relies on this layout.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq, Fq2};
use crate::linalg::{self, Echelon, Ext};
use crate::poly::FqPoly;
use crate::ring::{Rn, RnElem, Variant};

/// How the γ-part of the first generator is formed from `qpoly`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QShape {
    /// ⟨w·f + γ·q, γ·w·g⟩
    Plain,
    /// ⟨w·f + γ·w·q, γ·w·g⟩
    WMultiplied,
}

/// A code in standard form, given by Xⁿ − 1 = w·ℓ·f·g and a mixing polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub variant: Variant,
    pub n: usize,
    pub w: FqPoly,
    pub l: FqPoly,
    pub f: FqPoly,
    pub g: FqPoly,
    pub qpoly: FqPoly,
    pub qshape: QShape,
}

impl CodeSpec {
    pub fn validate(&self, k: &FieldCtx) -> Result<()> {
        Rn::new(k, self.n, self.variant)?;
        k.polys().validate_factorization(&self.w, &self.l, &self.f, &self.g, self.n)?;
        if let Some(d) = self.qpoly.degree() {
            if d >= self.n {
                return Err(Error::SpecViolation(format!(
                    "deg qpoly = {d} must be below n = {}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// The γ-part of the first generator, reduced mod Xⁿ − 1.
    pub fn gamma_part(&self, k: &FieldCtx) -> FqPoly {
        let r = k.polys();
        match self.qshape {
            QShape::Plain => self.qpoly.clone(),
            QShape::WMultiplied => r.mod_xn1(&r.mul(&self.w, &self.qpoly), self.n),
        }
    }

    /// The same code written in the plain shape.
    pub fn to_plain(&self, k: &FieldCtx) -> CodeSpec {
        CodeSpec { qpoly: self.gamma_part(k), qshape: QShape::Plain, ..self.clone() }
    }

    /// (w·f + γQ, γ·w·g) with Q per the shape.
    pub fn generators(&self, k: &FieldCtx) -> Result<[RnElem; 2]> {
        let rn = Rn::new(k, self.n, self.variant)?;
        let r = k.polys();
        Ok([
            rn.elem(&r.mul(&self.w, &self.f), &self.gamma_part(k)),
            rn.elem(&FqPoly::zero(), &r.mul(&self.w, &self.g)),
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    n: usize,
    variant: Variant,
    basis: Echelon<Fq>,
}

impl Code {
    /// The F_q[X]-module generated by `gens`: the F_q-span of all Xⁱ·g, 0 ≤ i < n.
    pub fn module(rn: &Rn<'_>, gens: &[RnElem]) -> Result<Code> {
        let mut rows = Vec::with_capacity(gens.len() * rn.n());
        for g in gens {
            if g.len() != rn.n() {
                return Err(Error::LengthMismatch(g.len(), rn.n()));
            }
            let mut cur = g.clone();
            for _ in 0..rn.n() {
                if cur.is_zero() {
                    break;
                }
                rows.push(cur.to_vector());
                cur = rn.shift(&cur);
            }
        }
        Ok(Code::from_rows(rn.field(), rn.n(), rn.variant(), rows))
    }

    /// The plain F_q-span of `elems`, which need not be a module.
    pub fn span(k: &FieldCtx, n: usize, variant: Variant, elems: &[RnElem]) -> Result<Code> {
        let mut rows = Vec::with_capacity(elems.len());
        for e in elems {
            if e.len() != n {
                return Err(Error::LengthMismatch(e.len(), n));
            }
            rows.push(e.to_vector());
        }
        Ok(Code::from_rows(k, n, variant, rows))
    }

    /// F_q-span of raw 2n-coordinate rows.
    pub fn from_rows(k: &FieldCtx, n: usize, variant: Variant, rows: Vec<Vec<Fq>>) -> Code {
        debug_assert!(rows.iter().all(|r| r.len() == 2 * n));
        Code { n, variant, basis: linalg::rref(k, rows, 2 * n) }
    }

    pub fn zero(n: usize, variant: Variant) -> Code {
        Code { n, variant, basis: Echelon { cols: 2 * n, rows: Vec::new(), pivots: Vec::new() } }
    }

    pub fn full(n: usize, variant: Variant) -> Code {
        let rows = (0..2 * n)
            .map(|i| {
                let mut v = vec![Fq::ZERO; 2 * n];
                v[i] = Fq::ONE;
                v
            })
            .collect();
        Code { n, variant, basis: Echelon { cols: 2 * n, rows, pivots: (0..2 * n).collect() } }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Dimension k over F_q.
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn echelon(&self) -> &Echelon<Fq> {
        &self.basis
    }

    pub fn basis_rows(&self) -> &[Vec<Fq>] {
        &self.basis.rows
    }

    pub fn basis_elems(&self) -> Vec<RnElem> {
        self.basis.rows.iter().map(|r| RnElem::from_vector(r)).collect()
    }

    /// k* = dimension over F_{q²} of the F_{q²}-linear closure.
    pub fn closure_dim(&self, k: &FieldCtx) -> usize {
        let n = self.n;
        let rows = self
            .basis
            .rows
            .iter()
            .map(|r| (0..n).map(|i| Fq2::new(r[i], r[n + i])).collect())
            .collect();
        linalg::rref(&Ext(k), rows, n).rank()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::LengthMismatch(n, self.n));
        }
        Ok(())
    }

    pub fn contains(&self, k: &FieldCtx, u: &RnElem) -> Result<bool> {
        self.check_len(u.len())?;
        Ok(linalg::in_row_space(k, &self.basis, &u.to_vector()))
    }

    /// Equality of row spaces.
    pub fn equals(&self, k: &FieldCtx, other: &Code) -> Result<bool> {
        self.check_len(other.n)?;
        if self.dim() != other.dim() {
            return Ok(false);
        }
        Ok(other.basis.rows.iter().all(|r| linalg::in_row_space(k, &self.basis, r)))
    }

    pub fn is_subcode_of(&self, k: &FieldCtx, other: &Code) -> Result<bool> {
        self.check_len(other.n)?;
        Ok(self.basis.rows.iter().all(|r| linalg::in_row_space(k, &other.basis, r)))
    }

    /// Whether the row space is closed under the variant's action of X.
    pub fn is_module(&self, k: &FieldCtx) -> Result<bool> {
        let rn = Rn::new(k, self.n, self.variant)?;
        Ok(self
            .basis_elems()
            .iter()
            .all(|u| linalg::in_row_space(k, &self.basis, &rn.shift(u).to_vector())))
    }
}

/// The code ⟨w·f + γQ, γ·w·g⟩ of a spec.
pub fn build_code(k: &FieldCtx, spec: &CodeSpec) -> Result<Code> {
    spec.validate(k)?;
    let rn = Rn::new(k, spec.n, spec.variant)?;
    Code::module(&rn, &spec.generators(k)?)
}

/// (k, k*): dimensions over F_q and of the F_{q²}-closure.
pub fn fq_dimension(k: &FieldCtx, code: &Code) -> (usize, usize) {
    (code.dim(), code.closure_dim(k))
}

/// Recovers the plain-shape spec (w, ℓ, f, g, q) of the module generated by `gens`.
pub fn canonical_decomposition(
    k: &FieldCtx,
    gens: &[RnElem],
    n: usize,
    variant: Variant,
) -> Result<CodeSpec> {
    let rn = Rn::new(k, n, variant)?;
    decompose(k, &Code::module(&rn, gens)?)
}

/// Canonical spec of an existing code.
///
/// With ψ the projection onto the F_q-part, Im ψ = ⟨F⟩ and
/// M = {d : γd ∈ C} = ⟨G⟩. Then w = gcd(F, G), f = F/w, g = G/w, and q is the
/// γ-part of a preimage of F, reduced modulo G so that deg q < deg(w·g).
pub fn decompose(k: &FieldCtx, code: &Code) -> Result<CodeSpec> {
    let n = code.n;
    Rn::new(k, n, code.variant)?;
    if !code.is_module(k)? {
        return Err(Error::NotAModule);
    }
    let r = k.polys();
    let xn1 = r.xn_minus_one(n);
    let split = code.basis.pivots.partition_point(|&p| p < n);
    let (image_rows, kernel_rows) = code.basis.rows.split_at(split);

    let big_f = image_rows
        .iter()
        .fold(xn1.clone(), |acc, row| r.gcd(&acc, &FqPoly::from_coeffs(row[..n].to_vec())));
    let big_g = kernel_rows
        .iter()
        .fold(xn1.clone(), |acc, row| r.gcd(&acc, &FqPoly::from_coeffs(row[n..].to_vec())));

    // Preimage of F under ψ: the c-block of the image rows is itself in RREF.
    let target = r.mod_xn1(&big_f, n).to_dense(n);
    let mut pre = vec![Fq::ZERO; 2 * n];
    for (row, &p) in image_rows.iter().zip(&code.basis.pivots) {
        let t = target[p];
        if t.is_zero() {
            continue;
        }
        for (x, &y) in pre.iter_mut().zip(row) {
            *x = k.add(*x, k.mul(t, y));
        }
    }
    if pre[..n] != target[..] {
        return Err(Error::NonExactDivision("image generator has no preimage".into()));
    }
    let q0 = FqPoly::from_coeffs(pre[n..].to_vec());

    let w = r.gcd(&big_f, &big_g);
    let f = r.div_exact(&big_f, &w)?;
    let g = r.div_exact(&big_g, &w)?;
    let l = r.div_exact(&xn1, &r.product([&w, &f, &g]))?;
    // M is an ideal of P_n, so any multiple of G may be removed from q.
    let qpoly = r.rem(&q0, &big_g)?;
    Ok(CodeSpec { variant: code.variant, n, w, l, f, g, qpoly, qshape: QShape::Plain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f3() -> FieldCtx {
        make_field(3, 1, None).unwrap()
    }

    fn example_n10(k: &FieldCtx) -> CodeSpec {
        let r = k.polys();
        CodeSpec {
            variant: Variant::Skew,
            n: 10,
            w: r.from_ints(&[1, 1]),
            l: r.from_ints(&[1, 1, 1, 1, 1]),
            f: r.from_ints(&[1, -1, 1, -1, 1]),
            g: r.from_ints(&[-1, 1]),
            qpoly: r.from_ints(&[1, 1]),
            qshape: QShape::Plain,
        }
    }

    #[test]
    fn dimension_examples() {
        let k = f3();
        let n = 5;
        let rn = Rn::new(&k, n, Variant::Cyclic).unwrap();
        let ones = FqPoly::from_coeffs(vec![Fq::ONE; n]);
        let f = rn.elem(&ones, &FqPoly::zero());
        let c1 = Code::module(&rn, std::slice::from_ref(&f)).unwrap();
        assert_eq!(fq_dimension(&k, &c1), (1, 1));
        let gf = rn.elem(&FqPoly::zero(), &ones);
        let c2 = Code::module(&rn, &[f, gf]).unwrap();
        assert_eq!(fq_dimension(&k, &c2), (2, 1));
        let full = Code::full(n, Variant::Cyclic);
        assert_eq!(fq_dimension(&k, &full), (2 * n, n));
    }

    #[test]
    fn build_examples() {
        let k = f3();
        let r = k.polys();
        let mut spec = example_n10(&k);
        spec.qpoly = FqPoly::zero();
        let [g1, g2] = spec.generators(&k).unwrap();
        assert!(g1.d().is_zero());
        assert!(g2.c().is_zero());

        let one = FqPoly::one();
        let zero_spec = CodeSpec {
            variant: Variant::Cyclic,
            n: 4,
            w: r.xn_minus_one(4),
            l: one.clone(),
            f: one.clone(),
            g: one,
            qpoly: FqPoly::zero(),
            qshape: QShape::Plain,
        };
        assert_eq!(build_code(&k, &zero_spec).unwrap().dim(), 0);

        let mut bad = example_n10(&k);
        bad.qpoly = FqPoly::x_pow(10);
        assert!(matches!(build_code(&k, &bad), Err(Error::SpecViolation(_))));
        bad = example_n10(&k);
        bad.n = 9;
        assert!(matches!(build_code(&k, &bad), Err(Error::OddLength(9))));
    }

    #[test]
    fn membership_and_equality() {
        let k = f3();
        let r = k.polys();
        let spec = example_n10(&k);
        let code = build_code(&k, &spec).unwrap();
        let rn = Rn::new(&k, 10, Variant::Skew).unwrap();
        for g in spec.generators(&k).unwrap() {
            assert!(code.contains(&k, &g).unwrap());
        }
        assert!(code.contains(&k, &rn.zero()).unwrap());
        let dual_gen = rn.elem(&r.from_ints(&[1, 0, 0, 0, 2, 2, 0, 0, 0, 1]), &FqPoly::zero());
        assert!(!code.contains(&k, &dual_gen).unwrap());
        assert!(code.is_module(&k).unwrap());

        // shifting q by a multiple of the kernel generator leaves the module unchanged
        let mut shifted = spec.clone();
        shifted.qpoly = r.mod_xn1(&r.add(&spec.qpoly, &r.mul(&spec.w, &spec.g)), 10);
        assert!(code.equals(&k, &build_code(&k, &shifted).unwrap()).unwrap());
        assert!(!Code::zero(10, Variant::Skew).equals(&k, &Code::full(10, Variant::Skew)).unwrap());
    }

    #[test]
    fn not_a_module() {
        let k = f3();
        let rn = Rn::new(&k, 4, Variant::Cyclic).unwrap();
        let u = rn.elem(&FqPoly::one(), &FqPoly::zero());
        let span = Code::span(&k, 4, Variant::Cyclic, &[u]).unwrap();
        assert!(matches!(decompose(&k, &span), Err(Error::NotAModule)));
    }

    #[test]
    fn decomposition_of_zero_code() {
        let k = f3();
        let rn = Rn::new(&k, 6, Variant::Skew).unwrap();
        let spec = canonical_decomposition(&k, &[rn.zero()], 6, Variant::Skew).unwrap();
        assert_eq!(spec.w, k.polys().xn_minus_one(6));
        assert_eq!((spec.l.clone(), spec.f.clone(), spec.g.clone()), (FqPoly::one(), FqPoly::one(), FqPoly::one()));
        assert!(spec.qpoly.is_zero());
    }
}
