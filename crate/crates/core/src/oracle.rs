//! Brute-force trace duals by linear algebra over F_q.
//!
//! Nothing here uses the polynomial structure of the codes: the dual is the
//! kernel of basis · Gram, where the Gram matrix is built by evaluating the
//! trace form on pairs of unit vectors.

use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::linalg;
use crate::ring::{Form, Rn, RnElem};

/// The 2n × 2n matrix of a trace form in the c-block/d-block coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: usize,
    pub form: Form,
    pub entries: Vec<Vec<Fq>>,
}

impl GramMatrix {
    pub fn new(k: &FieldCtx, n: usize, form: Form) -> Result<GramMatrix> {
        // The form does not depend on the multiplication, so the cyclic ring
        // serves for every variant.
        let rn = Rn::new(k, n, crate::ring::Variant::Cyclic)?;
        let unit = |i: usize| {
            let mut v = vec![Fq::ZERO; 2 * n];
            v[i] = Fq::ONE;
            RnElem::from_vector(&v)
        };
        let units: Vec<RnElem> = (0..2 * n).map(unit).collect();
        let mut entries = vec![vec![Fq::ZERO; 2 * n]; 2 * n];
        for (i, u) in units.iter().enumerate() {
            for (j, v) in units.iter().enumerate() {
                entries[i][j] = rn.trace_form(u, v, form)?;
            }
        }
        Ok(GramMatrix { n, form, entries })
    }

    /// Bilinear value xᵀ·G·y.
    pub fn apply(&self, k: &FieldCtx, x: &[Fq], y: &[Fq]) -> Fq {
        let mut acc = Fq::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let g = self.entries[i][j];
                if !g.is_zero() && !yj.is_zero() {
                    acc = k.add(acc, k.mul(xi, k.mul(g, yj)));
                }
            }
        }
        acc
    }
}

/// {u ∈ R_n : ⟨c, u⟩ = 0 for all c ∈ C} under the given trace form.
pub fn brute_dual(k: &FieldCtx, code: &Code, form: Form) -> Code {
    let gram = GramMatrix::new(k, code.n(), form).expect("code length is positive");
    brute_dual_with(k, code, &gram)
}

/// [`brute_dual`] with a precomputed Gram matrix of matching length.
pub fn brute_dual_with(k: &FieldCtx, code: &Code, gram: &GramMatrix) -> Code {
    let n = code.n();
    assert_eq!(gram.n, n, "Gram matrix length");
    let rows: Vec<Vec<Fq>> = code
        .basis_rows()
        .iter()
        .map(|row| {
            let mut out = vec![Fq::ZERO; 2 * n];
            for (&x, g) in row.iter().zip(&gram.entries) {
                if x.is_zero() {
                    continue;
                }
                for (o, &gij) in out.iter_mut().zip(g) {
                    if !gij.is_zero() {
                        *o = k.add(*o, k.mul(x, gij));
                    }
                }
            }
            out
        })
        .collect();
    let null = linalg::nullspace(k, rows, 2 * n);
    Code::from_rows(k, n, code.variant(), null)
}

/// Every codeword, in the order of the F_q-coordinates on the basis.
/// Refuses codes with more than `cap` words.
pub fn enumerate_codewords(k: &FieldCtx, code: &Code, cap: u128) -> Result<Vec<RnElem>> {
    let q = k.order() as u128;
    let count = (0..code.dim()).try_fold(1u128, |acc, _| acc.checked_mul(q));
    let count = match count {
        Some(c) if c <= cap => c,
        Some(c) => return Err(Error::TooLarge { count: c, cap }),
        None => return Err(Error::TooLarge { count: u128::MAX, cap }),
    };
    let n = code.n();
    let basis = code.basis_rows();
    let mut words = Vec::with_capacity(count as usize);
    let mut digits = vec![0u32; basis.len()];
    loop {
        let mut v = vec![Fq::ZERO; 2 * n];
        for (row, &d) in basis.iter().zip(&digits) {
            if d == 0 {
                continue;
            }
            let s = k.element(d).expect("digit below q");
            for (x, &y) in v.iter_mut().zip(row) {
                *x = k.add(*x, k.mul(s, y));
            }
        }
        words.push(RnElem::from_vector(&v));
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(words);
            }
            digits[i] += 1;
            if digits[i] < k.order() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// A nonzero pairing between a primal basis row and a claimed dual row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub primal_row: usize,
    pub dual_row: usize,
    pub value: Fq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub equal: bool,
    pub dim_claimed: usize,
    pub dim_oracle: usize,
    pub violations: Vec<Violation>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "equal={} dim_claimed={} dim_oracle={}",
            self.equal, self.dim_claimed, self.dim_oracle
        )?;
        for v in &self.violations {
            write!(
                f,
                "\n  primal row {} pairs with dual row {} to {}",
                v.primal_row,
                v.dual_row,
                v.value.index()
            )?;
        }
        Ok(())
    }
}

/// Compares `claimed` with the brute-force dual of `primal` and lists every
/// basis pair that fails to be orthogonal.
pub fn verify_dual(k: &FieldCtx, primal: &Code, claimed: &Code, form: Form) -> Result<VerifyReport> {
    if primal.n() != claimed.n() {
        return Err(Error::LengthMismatch(primal.n(), claimed.n()));
    }
    let gram = GramMatrix::new(k, primal.n(), form)?;
    let mut violations = Vec::new();
    for (i, x) in primal.basis_rows().iter().enumerate() {
        for (j, y) in claimed.basis_rows().iter().enumerate() {
            let value = gram.apply(k, x, y);
            if !value.is_zero() {
                violations.push(Violation { primal_row: i, dual_row: j, value });
            }
        }
    }
    let oracle = brute_dual(k, primal, form);
    Ok(VerifyReport {
        equal: oracle.equals(k, claimed)?,
        dim_claimed: claimed.dim(),
        dim_oracle: oracle.dim(),
        violations,
    })
}
