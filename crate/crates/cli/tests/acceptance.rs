//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tracedual_core::dual::{dual_te_cyclic_wq, dual_te_skew_general};
use tracedual_core::sweep::{factorizations, run_sweep, SweepConfig, SweepRow};
use tracedual_core::{
    build_code, canonical_decomposition, make_field, verify_dual, Code, CodeSpec, FieldCtx, Form,
    Fq2, FqPoly, QShape, Rn, RnElem, Variant,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f3() -> FieldCtx {
    make_field(3, 1, None).unwrap()
}

fn sparse(k: &FieldCtx, terms: &[(usize, i64)]) -> FqPoly {
    let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut c = vec![0; top + 1];
    for &(e, v) in terms {
        c[e] = v;
    }
    k.polys().from_ints(&c)
}

fn random_poly(k: &FieldCtx, rng: &mut ChaCha8Rng, len: usize) -> FqPoly {
    FqPoly::from_coeffs((0..len).map(|_| k.element(rng.gen_range(0..k.order())).unwrap()).collect())
}

fn example_n28() -> Outcome {
    let k = f3();
    let r = k.polys();
    let l = sparse(
        &k,
        &[
            (19, 1), (18, 2), (17, 2), (14, 1), (13, 2), (12, 2), (11, 2), (10, 2),
            (9, 2), (8, 2), (7, 2), (6, 2), (5, 1), (2, 2), (1, 2), (0, 1),
        ],
    );
    let spec = CodeSpec {
        variant: Variant::Cyclic,
        n: 28,
        w: r.from_ints(&[2, 1]),
        l,
        f: r.from_ints(&[1, 0, 1]),
        g: r.from_ints(&[1, 2, 0, 2, 0, 2, 1]),
        qpoly: r.from_ints(&[0, 1]),
        qshape: QShape::WMultiplied,
    };
    let start = Instant::now();
    let rep = dual_te_cyclic_wq(&k, &spec, false).map_err(|e| e.to_string())?;
    let gl = sparse(
        &k,
        &[
            (25, 1), (24, 1), (21, 1), (20, 1), (17, 1), (16, 1), (13, 1), (12, 1),
            (9, 1), (8, 1), (5, 1), (4, 1), (1, 1), (0, 1),
        ],
    );
    let c2 = sparse(
        &k,
        &[
            (20, -1), (19, 1), (18, 1), (15, -1), (14, 1), (13, 1), (12, 1), (11, 1),
            (10, 1), (9, 1), (8, 1), (7, 1), (6, -1), (3, 1), (2, 1), (1, -1),
        ],
    );
    let d2 = sparse(
        &k,
        &[
            (21, -1), (20, 1), (18, 1), (17, 1), (16, -1), (15, 1), (13, -1), (12, -1),
            (11, -1), (10, -1), (9, -1), (8, -1), (6, 1), (5, -1), (4, 1), (3, 1),
            (1, 1), (0, -1),
        ],
    );
    let rn = Rn::new(&k, 28, Variant::Cyclic).unwrap();
    let expected = Code::module(&rn, &[rn.elem(&gl, &FqPoly::zero()), rn.elem(&c2, &d2)]).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    check(rep.witness.h == Some(FqPoly::x_pow(26)), || format!("h = {:?}", rep.witness.h))?;
    check(expected.equals(&k, &rep.dual).unwrap(), || "module differs from the reference generators".into())?;
    check(elapsed < 1.0, || format!("took {elapsed:.3} s"))?;
    Ok(format!("h = X^26, module matches, {elapsed:.3} s"))
}

fn example_n10() -> Outcome {
    let k = f3();
    let r = k.polys();
    let spec = CodeSpec {
        variant: Variant::Skew,
        n: 10,
        w: r.from_ints(&[1, 1]),
        l: r.from_ints(&[1, 1, 1, 1, 1]),
        f: r.from_ints(&[1, -1, 1, -1, 1]),
        g: r.from_ints(&[-1, 1]),
        qpoly: r.from_ints(&[1, 1]),
        qshape: QShape::Plain,
    };
    let start = Instant::now();
    let rep = dual_te_skew_general(&k, &spec, false).map_err(|e| e.to_string())?;
    let g1 = sparse(&k, &[(9, 1), (5, 2), (4, 2), (0, 1)]);
    let g2c = sparse(&k, &[(5, -1), (0, 1)]);
    let g2d = r.from_ints(&[-1, 1, -1, 1, -1, 1, -1, 1, -1, 1]);
    let rn = Rn::new(&k, 10, Variant::Skew).unwrap();
    let expected = Code::module(&rn, &[rn.elem(&g1, &FqPoly::zero()), rn.elem(&g2c, &g2d)]).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    check(rep.witness.h == Some(r.mul(&FqPoly::x_pow(9), &spec.f)), || format!("h = {:?}", rep.witness.h))?;
    check(rep.witness.k == Some(spec.f.clone()), || format!("k = {:?}", rep.witness.k))?;
    check(expected.equals(&k, &rep.dual).unwrap(), || "module differs from the reference generators".into())?;
    check(elapsed < 1.0, || format!("took {elapsed:.3} s"))?;
    Ok(format!("h = X^9 f, k = f, module matches, {elapsed:.3} s"))
}

struct SweepResult {
    rows: Vec<SweepRow>,
    seconds: f64,
}

fn full_sweep() -> SweepResult {
    let start = Instant::now();
    let mut rows = Vec::new();
    for p in [3, 5] {
        let k = make_field(p, 1, None).unwrap();
        for variant in [Variant::Cyclic, Variant::Skew] {
            let mut cfg =
                SweepConfig::new(12, variant, vec![Form::TraceEuclidean, Form::TraceHermitian], 0);
            cfg.check_wq = variant == Variant::Cyclic;
            rows.extend(run_sweep(&k, &cfg).unwrap());
        }
    }
    SweepResult { rows, seconds: start.elapsed().as_secs_f64() }
}

fn oracle_sweep(s: &SweepResult) -> Outcome {
    let bad = s.rows.iter().filter(|r| !r.verified || r.wq_verified == Some(false)).count();
    check(bad == 0, || format!("{bad} of {} instances disagree with the oracle", s.rows.len()))?;
    check(s.seconds < 300.0, || format!("sweep took {:.1} s", s.seconds))?;
    Ok(format!("{} instances, 0 failures, {:.1} s", s.rows.len(), s.seconds))
}

fn dimension_law(s: &SweepResult) -> Outcome {
    let bad = s.rows.iter().filter(|r| !r.dimension_law || r.dim_code + r.dim_dual != 2 * r.n).count();
    check(bad == 0, || format!("{bad} instances break dim C + dim C⊥ = 2n"))?;
    Ok(format!("{} instances", s.rows.len()))
}

fn collapse(s: &SweepResult) -> Outcome {
    let checked: Vec<_> = s.rows.iter().filter_map(|r| r.collapse).collect();
    let bad = checked.iter().filter(|&&c| !c).count();
    check(!checked.is_empty(), || "no q = 0 instances".into())?;
    check(bad == 0, || format!("{bad} of {} q = 0 instances differ", checked.len()))?;
    Ok(format!("{} q = 0 instances", checked.len()))
}

/// The nine inner-product identities on one random triple.
fn identities_once(k: &FieldCtx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = k.polys();
    let n = rng.gen_range(1..=12);
    let rn = Rn::new(k, n, Variant::Cyclic).unwrap();
    let (f, g, q) = (random_poly(k, rng, n), random_poly(k, rng, n), random_poly(k, rng, n));
    let alpha = Fq2::new(
        k.element(rng.gen_range(0..k.order())).unwrap(),
        k.element(rng.gen_range(0..k.order())).unwrap(),
    );
    let lift = |x: &FqPoly| rn.elem(x, &FqPoly::zero());
    let scaled = |x: &FqPoly| {
        let c: Vec<Fq2> = (0..n).map(|i| k.mul2(alpha, Fq2::from_base(x.coeff(i)))).collect();
        rn.from_coeffs(&c).unwrap()
    };
    let (uf, ug, af, ag) = (lift(&f), lift(&g), scaled(&f), scaled(&g));
    let star = rn.star(&uf, &ug).unwrap();
    let times = |t| k.mul(t, star.a);
    let tr_a = k.trace(alpha);
    let te = Form::TraceEuclidean;
    let th = Form::TraceHermitian;
    let q_hat = r.mod_xn1(&q.hat(n).unwrap(), n);
    let results = [
        rn.star(&lift(&r.flip(&f)), &lift(&r.flip(&g))).unwrap() == star,
        rn.star(&lift(&r.mul(&f, &q)), &ug).unwrap() == rn.star(&uf, &lift(&r.mul(&g, &q_hat))).unwrap(),
        rn.trace_form(&uf, &ug, te).unwrap() == times(k.from_int(2)),
        rn.trace_form(&uf, &ag, te).unwrap() == times(tr_a) && rn.trace_form(&af, &ug, te).unwrap() == times(tr_a),
        rn.trace_form(&af, &ag, te).unwrap() == times(k.trace(k.mul2(alpha, alpha))),
        rn.bullet(&uf, &ug).unwrap() == star,
        rn.trace_form(&uf, &ug, th).unwrap() == times(k.from_int(2)),
        rn.trace_form(&uf, &ag, th).unwrap() == times(tr_a) && rn.trace_form(&af, &ug, th).unwrap() == times(tr_a),
        rn.trace_form(&af, &ag, th).unwrap() == times(k.trace(k.pow2(alpha, k.order() as u64 + 1))),
    ];
    match results.iter().position(|ok| !ok) {
        None => Ok(()),
        Some(i) => Err(format!("identity {} fails over F_{} at n = {n}", i + 1, k.order())),
    }
}

fn inner_product_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [3, 5, 7] {
        let k = make_field(p, 1, None).unwrap();
        for _ in 0..1000 {
            identities_once(&k, &mut rng)?;
        }
    }
    Ok("9 identities x 1000 triples over F_3, F_5, F_7".into())
}

fn reciprocal_lemmas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sums = 0;
    for p in [3, 5, 7] {
        let k = make_field(p, 1, None).unwrap();
        let r = k.polys();
        let mut done = 0;
        while done < 1000 {
            let (lf, lg) = (rng.gen_range(1..16), rng.gen_range(1..16));
            let (f, g) = (random_poly(&k, &mut rng, lf), random_poly(&k, &mut rng, lg));
            let sum = r.add(&f, &g);
            if f.is_zero() || g.is_zero() || sum.is_zero() {
                continue;
            }
            let (big, small) = if f.degree() >= g.degree() { (&f, &g) } else { (&g, &f) };
            let m = big.degree().unwrap();
            let lhs = sum.reciprocal().shift(m - sum.degree().unwrap());
            let rhs = r.add(&big.reciprocal(), &small.reciprocal().shift(m - small.degree().unwrap()));
            check(lhs == rhs, || format!("(f+g)* shift fails for {f:?}, {g:?}"))?;
            let v = f.valuation().unwrap();
            check(f.reciprocal().reciprocal().shift(v) == f, || format!("X^k f** != f for {f:?}"))?;
            done += 1;
            sums += 1;
        }
    }
    Ok(format!("{sums} pairs over F_3, F_5, F_7"))
}

fn unit_mixing() -> Outcome {
    let mut elements = 0;
    for p in [3, 5, 7] {
        let k = make_field(p, 1, None).unwrap();
        let r = k.polys();
        let x_minus_1 = r.from_ints(&[-1, 1]);
        for n in 1..=12 {
            for [w, l, f, g] in factorizations(&k, n) {
                if g != x_minus_1 {
                    continue;
                }
                let s = CodeSpec {
                    variant: Variant::Cyclic,
                    n,
                    w,
                    l,
                    f,
                    g,
                    qpoly: FqPoly::one(),
                    qshape: QShape::WMultiplied,
                };
                let rep = dual_te_cyclic_wq(&k, &s, false).map_err(|e| e.to_string())?;
                let ls = s.l.reciprocal();
                let lf = r.mul(&ls, &s.f.reciprocal());
                for u in rep.dual.basis_elems() {
                    let c = r.div_exact(u.c(), &ls).map_err(|_| "c not a multiple of l*".to_string())?;
                    let d = r.div_exact(u.d(), &lf).map_err(|_| "d not a multiple of l*f*".to_string())?;
                    let one = k.from_int(1);
                    let value = k.add(r.eval(&c, one), k.mul(k.delta(), r.eval(&d, one)));
                    check(value.is_zero(), || format!("c(1) + δd(1) = {value:?} for {s:?}"))?;
                    elements += 1;
                }
            }
        }
    }
    check(elements > 0, || "no instances with g = X - 1".into())?;
    Ok(format!("{elements} dual basis elements over F_3, F_5, F_7"))
}

fn random_generators(k: &FieldCtx, rng: &mut ChaCha8Rng, rn: &Rn<'_>) -> Vec<RnElem> {
    let n = rn.n();
    let r = k.polys();
    let facs = factorizations(k, n);
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut c = random_poly(k, rng, n);
            let mut d = random_poly(k, rng, n);
            let [w, _, _, _] = &facs[rng.gen_range(0..facs.len())];
            if rng.gen_bool(0.7) {
                c = r.mul(&c, w);
            }
            if rng.gen_bool(0.5) {
                d = r.mul(&d, w);
            }
            rn.elem(&c, &d)
        })
        .collect()
}

fn canonicalization() -> Outcome {
    let k = f3();
    let r = k.polys();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for variant in [Variant::Cyclic, Variant::Skew] {
        for _ in 0..200 {
            let n = match variant {
                Variant::Cyclic => rng.gen_range(1..=12),
                Variant::Skew => 2 * rng.gen_range(1..=6),
            };
            let rn = Rn::new(&k, n, variant).unwrap();
            let gens = random_generators(&k, &mut rng, &rn);
            let module = Code::module(&rn, &gens).unwrap();
            let spec = canonical_decomposition(&k, &gens, n, variant).map_err(|e| e.to_string())?;
            let rebuilt = build_code(&k, &spec).map_err(|e| e.to_string())?;
            check(rebuilt.equals(&k, &module).unwrap(), || format!("round trip changes {spec:?}"))?;
            let wg = r.mul(&spec.w, &spec.g);
            if let Some(dq) = spec.qpoly.degree() {
                check(dq < wg.degree().unwrap(), || format!("deg q too large in {spec:?}"))?;
            }
            if variant == Variant::Skew {
                let big_f = r.flip(&r.mul(&spec.w, &spec.f));
                let cof = r.div_exact(&r.xn_minus_one(n), &big_f).map_err(|_| "F does not divide X^n - 1".to_string())?;
                check(r.divides(&wg, &r.mul(&cof, &spec.qpoly)), || format!("divisibility fails for {spec:?}"))?;
            }
        }
    }
    Ok("200 generator sets per variant".into())
}

fn negative_control() -> Outcome {
    let k = f3();
    let r = k.polys();
    let spec = CodeSpec {
        variant: Variant::Skew,
        n: 10,
        w: r.from_ints(&[1, 1]),
        l: r.from_ints(&[1, 1, 1, 1, 1]),
        f: r.from_ints(&[1, -1, 1, -1, 1]),
        g: r.from_ints(&[-1, 1]),
        qpoly: r.from_ints(&[1, 1]),
        qshape: QShape::Plain,
    };
    let rep = dual_te_skew_general(&k, &spec, false).unwrap();
    let rn = Rn::new(&k, 10, Variant::Skew).unwrap();
    let bumped = r.add(rep.gen2.d(), &FqPoly::x_pow(3));
    let bad = Code::module(&rn, &[rep.gen1.clone(), rn.elem(rep.gen2.c(), &bumped)]).unwrap();
    let code = build_code(&k, &spec).unwrap();
    let report = verify_dual(&k, &code, &bad, Form::TraceEuclidean).unwrap();
    check(!report.equal, || "verify_dual accepted a corrupted dual".into())?;

    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/example_n10.spec");
    let bin = env!("CARGO_BIN_EXE_tracedual");
    let status = Command::new(bin)
        .args(["dual", "--bump", "gen2_d:3", fixture])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    check(status.code() == Some(2), || format!("cmd_dual exited with {status}"))?;
    Ok("verify_dual rejects, cmd_dual exits 2".into())
}

fn run(n: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS criterion {n}: {name} ({detail})");
            true
        }
        Err(detail) => {
            println!("FAIL criterion {n}: {name} ({detail})");
            false
        }
    }
}

fn main() {
    let sweep = full_sweep();
    let results = [
        run(1, "length 28 cyclic example", example_n28),
        run(2, "length 10 skew example", example_n10),
        run(3, "oracle equivalence sweep", || oracle_sweep(&sweep)),
        run(4, "dimension law", || dimension_law(&sweep)),
        run(5, "inner product identities", inner_product_identities),
        run(6, "reciprocal lemmas", reciprocal_lemmas),
        run(7, "special-case collapse", || collapse(&sweep)),
        run(8, "unit mixing membership", unit_mixing),
        run(9, "canonicalization", canonicalization),
        run(10, "negative control", negative_control),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
