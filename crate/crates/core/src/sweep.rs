//! Seeded sweeps comparing the closed-form duals with the oracle.
//!
//! For each length n the irreducible factors of Xⁿ − 1 are found by trial
//! division, every ordered split into (w, ℓ, f, g) is enumerated, and each
//! split is paired with a fixed number of mixing polynomials: the zero
//! polynomial first, then seeded random ones of degree below n.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{build_code, CodeSpec, QShape};
use crate::dual::{self, Theorem};
use crate::error::Result;
use crate::field::{FieldCtx, Fq};
use crate::oracle::{self, GramMatrix};
use crate::poly::FqPoly;
use crate::ring::{Form, Variant};

/// Irreducible monic factors of Xⁿ − 1 with multiplicities, by brute-force
/// trial division in order of increasing degree.
pub fn irreducible_factors(k: &FieldCtx, n: usize) -> Vec<(FqPoly, usize)> {
    let r = k.polys();
    let mut rest = r.xn_minus_one(n);
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap_or(0) {
        for cand in monic_of_degree(k, d) {
            let mut mult = 0;
            loop {
                let (quo, rem) = r.divmod(&rest, &cand).expect("monic divisor");
                if !rem.is_zero() {
                    break;
                }
                rest = quo;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
            if 2 * d > rest.degree().unwrap_or(0) {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        // What is left has no factor of degree ≤ half its own, so it is irreducible
        // unless it repeats a factor already found.
        match out.iter_mut().find(|(p, _)| *p == rest) {
            Some((_, m)) => *m += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs().iter().map(|c| c.index()).collect::<Vec<_>>())
            .cmp(&(b.0.degree(), b.0.coeffs().iter().map(|c| c.index()).collect::<Vec<_>>()))
    });
    out
}

fn monic_of_degree(k: &FieldCtx, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = k.order() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(k.element((idx % q) as u32).expect("index below q"));
            idx /= q;
        }
        coeffs.push(Fq::ONE);
        FqPoly::from_coeffs(coeffs)
    })
}

/// Every ordered (w, ℓ, f, g) of monic polynomials with product Xⁿ − 1.
pub fn factorizations(k: &FieldCtx, n: usize) -> Vec<[FqPoly; 4]> {
    let r = k.polys();
    let mut acc: Vec<[FqPoly; 4]> =
        vec![[FqPoly::one(), FqPoly::one(), FqPoly::one(), FqPoly::one()]];
    for (p, m) in irreducible_factors(k, n) {
        let powers: Vec<FqPoly> = std::iter::successors(Some(FqPoly::one()), |x| Some(r.mul(x, &p)))
            .take(m + 1)
            .collect();
        let mut next = Vec::with_capacity(acc.len() * (m + 1) * (m + 2) * (m + 3) / 6);
        for parts in &acc {
            for a in 0..=m {
                for b in 0..=m - a {
                    for c in 0..=m - a - b {
                        let d = m - a - b - c;
                        next.push([
                            r.mul(&parts[0], &powers[a]),
                            r.mul(&parts[1], &powers[b]),
                            r.mul(&parts[2], &powers[c]),
                            r.mul(&parts[3], &powers[d]),
                        ]);
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

/// A uniformly random polynomial of degree below n from the given stream.
pub fn seeded_qpoly(k: &FieldCtx, n: usize, seed: u64, stream: u64) -> FqPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let coeffs = (0..n)
        .map(|_| k.element(rng.gen_range(0..k.order())).expect("index below q"))
        .collect();
    FqPoly::from_coeffs(coeffs)
}

/// The plain-shape specs of one length: each factorization times `choices`
/// mixing polynomials, the first of which is zero.
pub fn specs_for_length(
    k: &FieldCtx,
    n: usize,
    variant: Variant,
    seed: u64,
    choices: usize,
) -> Vec<CodeSpec> {
    let mut out = Vec::new();
    for (i, [w, l, f, g]) in factorizations(k, n).into_iter().enumerate() {
        for choice in 0..choices {
            let qpoly = if choice == 0 {
                FqPoly::zero()
            } else {
                let stream = ((n as u64) << 32) | (i * choices + choice) as u64;
                seeded_qpoly(k, n, seed, stream)
            };
            out.push(CodeSpec {
                variant,
                n,
                w: w.clone(),
                l: l.clone(),
                f: f.clone(),
                g: g.clone(),
                qpoly,
                qshape: QShape::Plain,
            });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub nmax: usize,
    pub variant: Variant,
    pub forms: Vec<Form>,
    pub seed: u64,
    /// Mixing polynomials per factorization, including the zero one.
    pub choices: usize,
    /// Also check the w-multiplied cyclic construction against the oracle
    /// (trace Euclidean rows only).
    pub check_wq: bool,
}

impl SweepConfig {
    pub fn new(nmax: usize, variant: Variant, forms: Vec<Form>, seed: u64) -> Self {
        SweepConfig { nmax, variant, forms, seed, choices: 5, check_wq: false }
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.nmax).filter(move |n| self.variant == Variant::Cyclic || n % 2 == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub deg_w: usize,
    pub deg_l: usize,
    pub deg_f: usize,
    pub deg_g: usize,
    /// −1 for the zero polynomial.
    pub deg_q: i64,
    pub form: Form,
    pub dim_code: usize,
    pub dim_dual: usize,
    /// Closed-form dual equals the brute-force dual.
    pub verified: bool,
    /// dim C + dim C^⊥ = 2n.
    pub dimension_law: bool,
    /// For q = 0: the general construction agrees with the special one.
    pub collapse: Option<bool>,
    /// For cyclic trace Euclidean rows with `check_wq`: the w-multiplied
    /// construction agrees with the oracle.
    pub wq_verified: Option<bool>,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.verified
            && self.dimension_law
            && self.collapse.unwrap_or(true)
            && self.wq_verified.unwrap_or(true)
    }
}

fn deg(p: &FqPoly) -> usize {
    p.degree().expect("factor of Xⁿ − 1 is nonzero")
}

/// Runs every check on one spec, one row per Gram matrix (that is, per form).
pub fn run_instance(
    k: &FieldCtx,
    spec: &CodeSpec,
    grams: &[GramMatrix],
    check_wq: bool,
) -> Result<Vec<SweepRow>> {
    let code = build_code(k, spec)?;
    let n = spec.n;
    let special = if spec.qpoly.is_zero() {
        let theorem = match spec.variant {
            Variant::Cyclic => Theorem::CyclicSpecial,
            Variant::Skew => Theorem::SkewSpecial,
        };
        Some(dual::dual_with(k, spec, Form::TraceEuclidean, theorem, false)?.dual)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(grams.len());
    for gram in grams {
        let form = gram.form;
        let report = dual::dual(k, spec, form, false)?;
        let reference = oracle::brute_dual_with(k, &code, gram);
        let verified = report.dual.equals(k, &reference)?;
        let collapse = match &special {
            Some(sp) => {
                let mut ok = report.dual.equals(k, sp)?;
                if form == Form::TraceEuclidean && spec.variant == Variant::Cyclic {
                    let wq = CodeSpec { qshape: QShape::WMultiplied, ..spec.clone() };
                    ok &= dual::dual_te_cyclic_wq(k, &wq, false)?.dual.equals(k, sp)?;
                }
                Some(ok)
            }
            None => None,
        };
        let wq_verified = if check_wq && form == Form::TraceEuclidean && spec.variant == Variant::Cyclic {
            Some(wq_against_oracle(k, spec, gram)?)
        } else {
            None
        };
        rows.push(SweepRow {
            n,
            deg_w: deg(&spec.w),
            deg_l: deg(&spec.l),
            deg_f: deg(&spec.f),
            deg_g: deg(&spec.g),
            deg_q: spec.qpoly.degree().map_or(-1, |d| d as i64),
            form,
            dim_code: code.dim(),
            dim_dual: report.dual.dim(),
            verified,
            dimension_law: code.dim() + report.dual.dim() == 2 * n,
            collapse,
            wq_verified,
        });
    }
    Ok(rows)
}

/// The w-multiplied code with the same mixing polynomial, checked against the oracle.
fn wq_against_oracle(k: &FieldCtx, spec: &CodeSpec, gram: &GramMatrix) -> Result<bool> {
    let wq = CodeSpec { qshape: QShape::WMultiplied, ..spec.clone() };
    let code = build_code(k, &wq)?;
    let report = dual::dual_te_cyclic_wq(k, &wq, false)?;
    report.dual.equals(k, &oracle::brute_dual_with(k, &code, gram))
}

/// Runs the whole sweep; rows come out ordered by n, then factorization,
/// then mixing polynomial, then form.
pub fn run_sweep(k: &FieldCtx, cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for n in cfg.lengths() {
        let grams = cfg
            .forms
            .iter()
            .map(|&form| GramMatrix::new(k, n, form))
            .collect::<Result<Vec<_>>>()?;
        for spec in specs_for_length(k, n, cfg.variant, cfg.seed, cfg.choices) {
            rows.extend(run_instance(k, &spec, &grams, cfg.check_wq)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn factor_counts() {
        let k = make_field(3, 1, None).unwrap();
        // X⁴ − 1 = (X − 1)(X + 1)(X² + 1) over F₃
        let fac = irreducible_factors(&k, 4);
        assert_eq!(fac.len(), 3);
        assert!(fac.iter().all(|(_, m)| *m == 1));
        assert_eq!(factorizations(&k, 4).len(), 64);
        // X³ − 1 = (X − 1)³: C(6, 3) ordered splits
        assert_eq!(irreducible_factors(&k, 3), vec![(k.polys().from_ints(&[-1, 1]), 3)]);
        assert_eq!(factorizations(&k, 3).len(), 20);
        let k5 = make_field(5, 1, None).unwrap();
        assert_eq!(factorizations(&k5, 12).len(), 65536);
    }

    #[test]
    fn factorizations_multiply_out() {
        let k = make_field(5, 1, None).unwrap();
        let r = k.polys();
        for n in 1..=8 {
            for [w, l, f, g] in factorizations(&k, n) {
                r.validate_factorization(&w, &l, &f, &g, n).unwrap();
            }
        }
    }

    #[test]
    fn qpolys_are_reproducible() {
        let k = make_field(3, 1, None).unwrap();
        let a = specs_for_length(&k, 4, Variant::Skew, 7, 5);
        let b = specs_for_length(&k, 4, Variant::Skew, 7, 5);
        assert_eq!(a, b);
        assert_eq!(a.len(), 64 * 5);
        assert!(a[0].qpoly.is_zero());
        assert!(a.iter().all(|s| s.qpoly.degree().is_none_or(|d| d < 4)));
        let c = specs_for_length(&k, 4, Variant::Skew, 8, 5);
        assert_ne!(a, c);
    }

    #[test]
    fn small_sweep_passes() {
        let k = make_field(3, 1, None).unwrap();
        let mut cfg = SweepConfig::new(4, Variant::Cyclic, vec![Form::TraceEuclidean, Form::TraceHermitian], 1);
        cfg.check_wq = true;
        let rows = run_sweep(&k, &cfg).unwrap();
        assert!(!rows.is_empty());
        for row in &rows {
            assert!(row.passed(), "{row:?}");
        }
    }
}
