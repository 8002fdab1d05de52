//! The `.lie` and `.prod` text formats.
//!
//! Line-oriented, `#` starts a comment:
//!
//! ```text
//! field 3            (or: field 2^2 t^2+t+1)
//! dim 7
//! [1,2] = e3
//! [1,3] = 2*e1 + e2
//! ```
//!
//! Basis indices are 1-based; omitted pairs mean zero bracket; keys need
//! i < j. Extension-field coefficients with more than one term are
//! parenthesized: `(t+1)*e3`. A `.prod` file uses product lines
//! `e1.e2 = ...` instead, with unordered keys.

use crate::cpa::SymProduct;
use crate::field::{FieldCtx, FieldElem};
use crate::lie::LieAlgebra;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "line {}: {}", self.line, self.msg)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

/// Parses a field literal: `3`, `2^2` (canonical modulus), or
/// `2^2 t^2+t+1` with an explicit modulus.
pub fn parse_field_spec(spec: &str) -> Result<FieldCtx, ParseError> {
    let spec = spec.trim();
    let (head, modulus_str) = match spec.split_once(char::is_whitespace) {
        Some((h, m)) => (h.trim(), Some(m.trim())),
        None => (spec, None),
    };
    let (p_str, k_str) = match head.split_once('^') {
        Some((p, k)) => (p, Some(k)),
        None => (head, None),
    };
    let p: u64 = p_str
        .parse()
        .map_err(|_| err(0, format!("bad characteristic `{}`", p_str)))?;
    let k: u32 = match k_str {
        None => 1,
        Some(k) => k
            .parse()
            .map_err(|_| err(0, format!("bad extension degree `{}`", k)))?,
    };
    let modulus = match modulus_str {
        None => None,
        Some(m) => Some(parse_modulus(m, p)?),
    };
    FieldCtx::new(p, k, modulus).map_err(|e| err(0, e.to_string()))
}

/// Monic polynomial in t with integer coefficients, e.g. `t^2+t+1`.
fn parse_modulus(s: &str, p: u64) -> Result<Vec<u32>, ParseError> {
    let mut coeffs: Vec<u32> = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        let (coef, deg) = match term.find('t') {
            None => {
                let c: u64 =
                    term.parse().map_err(|_| err(0, format!("bad modulus term `{}`", term)))?;
                (c, 0usize)
            }
            Some(pos) => {
                let cs = term[..pos].trim().trim_end_matches('*').trim();
                let c: u64 = if cs.is_empty() {
                    1
                } else {
                    cs.parse().map_err(|_| err(0, format!("bad modulus term `{}`", term)))?
                };
                let rest = term[pos + 1..].trim();
                let d: usize = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| err(0, format!("bad modulus term `{}`", term)))?
                        .trim()
                        .parse()
                        .map_err(|_| err(0, format!("bad modulus term `{}`", term)))?
                };
                (c, d)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] = ((coeffs[deg] as u64 + coef) % p) as u32;
    }
    Ok(coeffs)
}

pub fn format_field_spec(ctx: &FieldCtx) -> String {
    ctx.lie_literal()
}

struct Header {
    ctx: FieldCtx,
    dim: usize,
    body_start: usize,
}

fn parse_header(text: &str) -> Result<Header, ParseError> {
    let mut ctx = None;
    let mut dim = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(spec) = line.strip_prefix("field") {
            if ctx.is_some() {
                return Err(err(lineno + 1, "duplicate field line"));
            }
            ctx = Some(
                parse_field_spec(spec).map_err(|e| err(lineno + 1, e.msg))?,
            );
            continue;
        }
        if let Some(d) = line.strip_prefix("dim") {
            if ctx.is_none() {
                return Err(err(lineno + 1, "dim before field"));
            }
            if dim.is_some() {
                return Err(err(lineno + 1, "duplicate dim line"));
            }
            dim = Some(
                d.trim()
                    .parse::<usize>()
                    .map_err(|_| err(lineno + 1, "bad dimension"))?,
            );
            continue;
        }
        // first body line
        let ctx = ctx.ok_or_else(|| err(lineno + 1, "missing field line"))?;
        let dim = dim.ok_or_else(|| err(lineno + 1, "missing dim line"))?;
        return Ok(Header { ctx, dim, body_start: lineno });
    }
    let ctx = ctx.ok_or_else(|| err(0, "missing field line"))?;
    let dim = dim.ok_or_else(|| err(0, "missing dim line"))?;
    Ok(Header { ctx, dim, body_start: text.lines().count() })
}

fn strip_comment(raw: &str) -> &str {
    match raw.find('#') {
        Some(pos) => raw[..pos].trim(),
        None => raw.trim(),
    }
}

/// Splits on '+' outside parentheses.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `<sum>` to a coordinate vector: `+`-separated `coeff*e<k>` or `e<k>`
/// terms; parenthesized coefficients for extension-field literals.
fn parse_sum(
    ctx: &FieldCtx,
    dim: usize,
    s: &str,
    lineno: usize,
) -> Result<Vec<FieldElem>, ParseError> {
    let mut v = vec![FieldElem::ZERO; dim];
    let s = s.trim();
    if s == "0" {
        return Ok(v);
    }
    for term in split_terms(s) {
        let term = term.trim();
        if term.is_empty() {
            return Err(err(lineno, "empty term in sum"));
        }
        let (coef, basis) = match term.rfind('*') {
            Some(pos) => {
                let cs = term[..pos].trim();
                let cs = cs
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .unwrap_or(cs);
                let c = ctx
                    .parse_elem(cs)
                    .map_err(|e| err(lineno, e.to_string()))?;
                (c, term[pos + 1..].trim())
            }
            None => (ctx.one(), term),
        };
        let idx = basis
            .strip_prefix('e')
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| err(lineno, format!("bad basis term `{}`", basis)))?;
        if idx == 0 || idx > dim {
            return Err(err(lineno, format!("basis index e{} out of range", idx)));
        }
        v[idx - 1] = ctx.add(v[idx - 1], coef);
    }
    Ok(v)
}

/// Parses a `.lie` file without running the Jacobi check.
pub fn parse_lie_unvalidated(text: &str) -> Result<LieAlgebra, ParseError> {
    let header = parse_header(text)?;
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate().skip(header.body_start) {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, sum) = line
            .split_once('=')
            .ok_or_else(|| err(lineno + 1, "expected `[i,j] = sum`"))?;
        let key = key.trim();
        let inner = key
            .strip_prefix('[')
            .and_then(|k| k.strip_suffix(']'))
            .ok_or_else(|| err(lineno + 1, "expected `[i,j]` key"))?;
        let (is_, js_) = inner
            .split_once(',')
            .ok_or_else(|| err(lineno + 1, "expected `[i,j]` key"))?;
        let i: usize = is_
            .trim()
            .parse()
            .map_err(|_| err(lineno + 1, "bad index"))?;
        let j: usize = js_
            .trim()
            .parse()
            .map_err(|_| err(lineno + 1, "bad index"))?;
        if i == 0 || j == 0 || i > header.dim || j > header.dim {
            return Err(err(lineno + 1, "index out of range"));
        }
        if i >= j {
            return Err(err(
                lineno + 1,
                format!("key [{},{}] violates the storage convention i < j", i, j),
            ));
        }
        let v = parse_sum(&header.ctx, header.dim, sum, lineno + 1)?;
        entries.push(((i - 1, j - 1), v));
    }
    LieAlgebra::from_brackets(&header.ctx, header.dim, entries)
        .map_err(|e| err(0, e.to_string()))
}

/// Parses and validates a `.lie` file; Jacobi failures are reported with
/// the witnessing basis triple.
pub fn parse_lie(text: &str) -> Result<LieAlgebra, ParseError> {
    let g = parse_lie_unvalidated(text)?;
    g.validate().map_err(|v| err(0, v.to_string()))?;
    Ok(g)
}

fn format_term(ctx: &FieldCtx, c: FieldElem, idx: usize) -> String {
    let cs = ctx.format_elem(c);
    if cs == "1" {
        format!("e{}", idx + 1)
    } else if cs.contains('+') {
        format!("({})*e{}", cs, idx + 1)
    } else {
        format!("{}*e{}", cs, idx + 1)
    }
}

fn format_sum(ctx: &FieldCtx, v: &[FieldElem]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| format_term(ctx, c, i))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Canonical `.lie` serialization; `parse_lie(print_lie(g))` recovers g
/// exactly (structure constants and field, labels are display-only).
pub fn print_lie(g: &LieAlgebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", g.ctx().lie_literal()));
    out.push_str(&format!("dim {}\n", g.dim()));
    for (&(i, j), v) in g.brackets() {
        out.push_str(&format!("[{},{}] = {}\n", i + 1, j + 1, format_sum(g.ctx(), v)));
    }
    out
}

/// Parses a `.prod` file: same header, product lines `e1.e2 = sum` with
/// unordered keys; conflicting duplicates are rejected.
pub fn parse_prod(text: &str) -> Result<SymProduct, ParseError> {
    let header = parse_header(text)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate().skip(header.body_start) {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, sum) = line
            .split_once('=')
            .ok_or_else(|| err(lineno + 1, "expected `ei.ej = sum`"))?;
        let key = key.trim();
        let (is_, js_) = key
            .split_once('.')
            .ok_or_else(|| err(lineno + 1, "expected `ei.ej` key"))?;
        let parse_idx = |s: &str| -> Result<usize, ParseError> {
            s.trim()
                .strip_prefix('e')
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= header.dim)
                .ok_or_else(|| err(lineno + 1, format!("bad basis name `{}`", s.trim())))
        };
        let i = parse_idx(is_)?;
        let j = parse_idx(js_)?;
        let norm = (i.min(j) - 1, i.max(j) - 1);
        if !seen.insert(norm) {
            return Err(err(lineno + 1, format!("duplicate key e{}.e{}", i, j)));
        }
        let v = parse_sum(&header.ctx, header.dim, sum, lineno + 1)?;
        entries.push((norm, v));
    }
    Ok(SymProduct::from_entries(&header.ctx, header.dim, entries))
}

/// Canonical `.prod` serialization.
pub fn print_prod(p: &SymProduct) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", p.ctx().lie_literal()));
    out.push_str(&format!("dim {}\n", p.dim()));
    for (&(i, j), v) in p.entries() {
        out.push_str(&format!("e{}.e{} = {}\n", i + 1, j + 1, format_sum(p.ctx(), v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn parse_w3_from_text() {
        let text = "field 2\ndim 3\n[1,2]=e3\n[1,3]=e1\n[2,3]=e2\n";
        let g = parse_lie(text).unwrap();
        let w3 = construct::builtin("w3").unwrap();
        assert_eq!(g.brackets(), w3.brackets());
        assert_eq!(g.ctx(), w3.ctx());
    }

    #[test]
    fn storage_convention_rejected() {
        let text = "field 2\ndim 3\n[2,1] = e3\n";
        let e = parse_lie(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("storage convention"));
    }

    #[test]
    fn duplicate_keys_rejected() {
        let text = "field 2\ndim 3\n[1,2] = e3\n[1,2] = e1\n";
        assert!(parse_lie(text).is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a witt-type table\nfield 2\n\ndim 3\n[1,2]=e3 # = h\n[1,3]=e1\n[2,3]=e2\n";
        assert!(parse_lie(text).is_ok());
    }

    #[test]
    fn jacobi_failure_reported() {
        let text = "field 5\ndim 3\n[1,2]=e3\n[1,3]=3*e1\n[2,3]=e2\n";
        let e = parse_lie(text).unwrap_err();
        assert!(e.msg.contains("Jacobi"));
        // but the unvalidated parse succeeds
        assert!(parse_lie_unvalidated(text).is_ok());
    }

    #[test]
    fn builtins_round_trip() {
        for name in construct::builtin_names() {
            let g = construct::builtin(name).unwrap();
            let back = parse_lie(&print_lie(&g)).unwrap();
            assert_eq!(back.brackets(), g.brackets());
            assert_eq!(back.ctx(), g.ctx());
            assert_eq!(back.dim(), g.dim());
        }
    }

    #[test]
    fn extension_field_round_trip() {
        let g = construct::builtin("g6").unwrap().extend_scalars(2).unwrap();
        let text = print_lie(&g);
        assert!(text.starts_with("field 2^2 t^2+t+1\n"));
        let back = parse_lie(&text).unwrap();
        assert_eq!(back.brackets(), g.brackets());
        assert_eq!(back.ctx(), g.ctx());
    }

    #[test]
    fn random_tables_round_trip() {
        // arbitrary (not necessarily Jacobi) tables through the
        // unvalidated path
        let mut seed = 0x00c0_ffee_u64;
        let mut rnd = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for ctx in [
            FieldCtx::prime(3).unwrap(),
            FieldCtx::extension(2, 2).unwrap(),
            FieldCtx::extension(3, 2).unwrap(),
        ] {
            for _ in 0..20 {
                let n = 2 + (rnd() % 5) as usize;
                let mut entries = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        if rnd() % 2 == 0 {
                            continue;
                        }
                        let v: Vec<FieldElem> =
                            (0..n).map(|_| ctx.elem(rnd() % ctx.q())).collect();
                        entries.push(((i, j), v));
                    }
                }
                let g = LieAlgebra::from_brackets(&ctx, n, entries).unwrap();
                let back = parse_lie_unvalidated(&print_lie(&g)).unwrap();
                assert_eq!(back.brackets(), g.brackets());
                assert_eq!(back.ctx(), g.ctx());
            }
        }
    }

    #[test]
    fn prod_files_round_trip_and_fold_keys() {
        let g = construct::builtin("g6").unwrap();
        let p = SymProduct::adjoint(&g);
        let text = print_prod(&p);
        let back = parse_prod(&text).unwrap();
        assert_eq!(back, p);

        // unordered keys fold
        let text = "field 2\ndim 3\ne3.e1 = e2\n";
        let p = parse_prod(text).unwrap();
        assert_eq!(p.value(0, 2), vec![FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO]);
        assert_eq!(p.value(2, 0), p.value(0, 2));

        // conflicting duplicates rejected
        let text = "field 2\ndim 3\ne3.e1 = e2\ne1.e3 = e1\n";
        assert!(parse_prod(text).is_err());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(parse_field_spec("3").unwrap().q(), 3);
        assert_eq!(parse_field_spec("2^2").unwrap().q(), 4);
        let f = parse_field_spec("2^2 t^2+t+1").unwrap();
        assert_eq!(f.q(), 4);
        assert!(parse_field_spec("2^2 t^2+1").is_err()); // reducible
        assert!(parse_field_spec("6").is_err());
    }
}
