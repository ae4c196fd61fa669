//! The line-oriented `key: value` input format.
//!
//! ```text
//! # Example n=10, skew, over F_9
//! variant: skew
//! q: 3
//! n: 10
//! w: 1,1
//! l: 1,1,1,1,1
//! f: 1,-1,1,-1,1
//! g: -1,1
//! qpoly: 1,1
//! ```
//!
//! Polynomials are comma-separated coefficients in ascending degree. Over a
//! base field F_{p^e} with e > 1 each coefficient is a bracketed digit vector
//! `[c0 c1 …]` in the power basis of `modulus`. Integers may be negative and
//! are reduced mod p. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use tracedual_core::{make_field, CodeSpec, FieldCtx, Form, Fq, FqPoly, QShape, Rn, RnElem, Variant};

use crate::CliError;

const SPEC_KEYS: &[&str] =
    &["variant", "form", "q", "modulus", "n", "w", "l", "f", "g", "qpoly", "qshape"];
const GENERATOR_KEYS: &[&str] = &["variant", "q", "modulus", "n"];

/// A parsed spec file.
#[derive(Debug)]
pub struct SpecFile {
    pub field: FieldCtx,
    pub spec: CodeSpec,
    pub form: Option<Form>,
}

/// A parsed generators file for `canonicalize`.
#[derive(Debug)]
pub struct GeneratorFile {
    pub field: FieldCtx,
    pub variant: Variant,
    pub n: usize,
    pub generators: Vec<RnElem>,
}

struct Entry {
    line: usize,
    value: String,
}

fn input_err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn collect_entries<'a>(
    text: &'a str,
    allowed: &[&str],
    mut other: impl FnMut(usize, &'a str) -> Result<bool, CliError>,
) -> Result<BTreeMap<String, Entry>, CliError> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.is_empty() || other(line, body)? {
            continue;
        }
        let Some((key, value)) = body.split_once(':') else {
            return Err(input_err(line, format!("expected `key: value`, got `{body}`")));
        };
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(input_err(line, format!("unknown key `{key}`")));
        }
        let entry = Entry { line, value: value.trim().to_string() };
        if entries.insert(key.to_string(), entry).is_some() {
            return Err(input_err(line, format!("duplicate key `{key}`")));
        }
    }
    Ok(entries)
}

fn required<'e>(entries: &'e BTreeMap<String, Entry>, key: &str) -> Result<&'e Entry, CliError> {
    entries
        .get(key)
        .ok_or_else(|| CliError::Input(format!("missing required key `{key}`")))
}

/// Splits `q` given as `p`, `p^e` or a prime power into (p, e).
pub fn parse_order(s: &str) -> Result<(u32, u32), String> {
    let s = s.trim();
    if let Some((p, e)) = s.split_once('^') {
        let p = p.trim().parse::<u32>().map_err(|_| format!("bad characteristic `{p}`"))?;
        let e = e.trim().parse::<u32>().map_err(|_| format!("bad extension degree `{e}`"))?;
        return Ok((p, e));
    }
    let q = s.parse::<u64>().map_err(|_| format!("bad field order `{s}`"))?;
    if q < 2 {
        return Err(format!("bad field order `{s}`"));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q ≥ 2 has a prime factor");
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(format!("{q} is not a prime power"));
    }
    let p = u32::try_from(p).map_err(|_| format!("characteristic of {q} is too large"))?;
    Ok((p, e))
}

fn parse_int(tok: &str) -> Result<i64, String> {
    tok.parse::<i64>().map_err(|_| format!("bad integer `{tok}`"))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|t| parse_int(t.trim())).collect()
}

/// Builds the field from `q` and `modulus` values.
pub fn field_from(order: &str, modulus: Option<&str>) -> Result<FieldCtx, String> {
    let (p, e) = parse_order(order)?;
    let modulus = modulus.map(parse_ints).transpose()?;
    if e > 1 && modulus.is_none() {
        return Err(format!("q = {p}^{e} needs a `modulus`"));
    }
    make_field(p, e, modulus.as_deref()).map_err(|err| err.to_string())
}

fn parse_coeff(k: &FieldCtx, tok: &str) -> Result<Fq, String> {
    let tok = tok.trim();
    if let Some(inner) = tok.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| format!("unclosed `[` in `{tok}`"))?;
        let digits = inner
            .split_whitespace()
            .map(parse_int)
            .collect::<Result<Vec<_>, _>>()?;
        return k.from_digits(&digits).map_err(|e| e.to_string());
    }
    if k.degree() > 1 {
        return Err(format!("coefficient `{tok}` must be a digit vector `[c0 … c{}]`", k.degree() - 1));
    }
    Ok(k.from_int(parse_int(tok)?))
}

/// Parses a comma-separated coefficient list; the empty list is zero.
pub fn parse_poly(k: &FieldCtx, s: &str) -> Result<FqPoly, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(FqPoly::zero());
    }
    let coeffs = s.split(',').map(|t| parse_coeff(k, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(FqPoly::from_coeffs(coeffs))
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    match s {
        "cyclic" => Ok(Variant::Cyclic),
        "skew" => Ok(Variant::Skew),
        _ => Err(format!("variant must be `cyclic` or `skew`, got `{s}`")),
    }
}

pub fn parse_form(s: &str) -> Result<Form, String> {
    match s {
        "te" => Ok(Form::TraceEuclidean),
        "th" => Ok(Form::TraceHermitian),
        _ => Err(format!("form must be `te` or `th`, got `{s}`")),
    }
}

fn parse_n(s: &str) -> Result<usize, String> {
    s.parse::<usize>().map_err(|_| format!("bad length `{s}`"))
}

fn with_line<T>(entry: &Entry, f: impl FnOnce(&str) -> Result<T, String>) -> Result<T, CliError> {
    f(&entry.value).map_err(|m| input_err(entry.line, m))
}

fn field_of(entries: &BTreeMap<String, Entry>) -> Result<FieldCtx, CliError> {
    let q = required(entries, "q")?;
    let modulus = entries.get("modulus");
    field_from(&q.value, modulus.map(|m| m.value.as_str()))
        .map_err(|m| input_err(modulus.map_or(q.line, |m| m.line), m))
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, CliError> {
        let entries = collect_entries(text, SPEC_KEYS, |_, _| Ok(false))?;
        let field = field_of(&entries)?;
        let variant = with_line(required(&entries, "variant")?, parse_variant)?;
        let n = with_line(required(&entries, "n")?, parse_n)?;
        let poly = |key: &str| -> Result<FqPoly, CliError> {
            with_line(required(&entries, key)?, |v| parse_poly(&field, v))
        };
        let (w, l, f, g) = (poly("w")?, poly("l")?, poly("f")?, poly("g")?);
        let qpoly = match entries.get("qpoly") {
            Some(e) => with_line(e, |v| parse_poly(&field, v))?,
            None => FqPoly::zero(),
        };
        let qshape = match entries.get("qshape") {
            Some(e) => with_line(e, |v| match v {
                "plain" => Ok(QShape::Plain),
                "w-multiplied" => Ok(QShape::WMultiplied),
                _ => Err(format!("qshape must be `plain` or `w-multiplied`, got `{v}`")),
            })?,
            None => QShape::Plain,
        };
        let form = entries.get("form").map(|e| with_line(e, parse_form)).transpose()?;
        let spec = CodeSpec { variant, n, w, l, f, g, qpoly, qshape };
        spec.validate(&field).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(SpecFile { field, spec, form })
    }
}

impl GeneratorFile {
    /// Header keys `variant`, `q`, `modulus`, `n`, then one `c=…; d=…` line
    /// per generator.
    pub fn parse(text: &str) -> Result<GeneratorFile, CliError> {
        let mut raw_gens: Vec<(usize, &str)> = Vec::new();
        let entries = collect_entries(text, GENERATOR_KEYS, |line, body| {
            if body.starts_with("c=") || body.starts_with("d=") {
                raw_gens.push((line, body));
                Ok(true)
            } else {
                Ok(false)
            }
        })?;
        let field = field_of(&entries)?;
        let variant = with_line(required(&entries, "variant")?, parse_variant)?;
        let n = with_line(required(&entries, "n")?, parse_n)?;
        let rn = Rn::new(&field, n, variant).map_err(|e| CliError::Input(e.to_string()))?;
        let mut generators = Vec::with_capacity(raw_gens.len());
        for (line, body) in raw_gens {
            let mut c = FqPoly::zero();
            let mut d = FqPoly::zero();
            for part in body.split(';') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| input_err(line, format!("expected `c=…` or `d=…`, got `{part}`")))?;
                let p = parse_poly(&field, value).map_err(|m| input_err(line, m))?;
                match key.trim() {
                    "c" => c = p,
                    "d" => d = p,
                    other => return Err(input_err(line, format!("unknown part `{other}`"))),
                }
            }
            let too_long = |p: &FqPoly| p.degree().is_some_and(|d| d >= n);
            if too_long(&c) || too_long(&d) {
                return Err(input_err(line, format!("generator has degree ≥ n = {n}")));
            }
            generators.push(rn.elem(&c, &d));
        }
        Ok(GeneratorFile { field, variant, n, generators })
    }
}

/// Renders a coefficient in input syntax.
pub fn format_coeff(k: &FieldCtx, c: Fq) -> String {
    if k.degree() == 1 {
        c.index().to_string()
    } else {
        let digits: Vec<String> = k.digits(c).iter().map(u32::to_string).collect();
        format!("[{}]", digits.join(" "))
    }
}

/// Renders a polynomial in input syntax; zero is `0`.
pub fn format_poly(k: &FieldCtx, p: &FqPoly) -> String {
    if p.is_zero() {
        return format_coeff(k, Fq::ZERO);
    }
    p.coeffs().iter().map(|&c| format_coeff(k, c)).collect::<Vec<_>>().join(",")
}

/// `q:` value for a field.
pub fn format_order(k: &FieldCtx) -> String {
    if k.degree() == 1 {
        k.characteristic().to_string()
    } else {
        format!("{}^{}", k.characteristic(), k.degree())
    }
}

/// A spec in file syntax, suitable as input to `dual`.
pub fn format_spec(k: &FieldCtx, spec: &CodeSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "variant: {}", spec.variant);
    let _ = writeln!(out, "q: {}", format_order(k));
    if k.degree() > 1 {
        let m: Vec<String> = k.modulus().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "modulus: {}", m.join(","));
    }
    let _ = writeln!(out, "n: {}", spec.n);
    for (key, p) in [("w", &spec.w), ("l", &spec.l), ("f", &spec.f), ("g", &spec.g), ("qpoly", &spec.qpoly)] {
        let _ = writeln!(out, "{key}: {}", format_poly(k, p));
    }
    let shape = match spec.qshape {
        QShape::Plain => "plain",
        QShape::WMultiplied => "w-multiplied",
    };
    let _ = writeln!(out, "qshape: {shape}");
    out
}
