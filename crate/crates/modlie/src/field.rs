//! Arithmetic in small finite fields `F_{p^k}` and univariate polynomial
//! utilities: root finding, factorization by trial division, splitting
//! fields.
//!
//! Elements are canonical codes below `q = p^k`: the element
//! `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` has code `c_0 + c_1 p + ... +
//! c_{k-1} p^{k-1}`. Equality of elements is equality of codes. For
//! `q <= 256` all arithmetic goes through precomputed tables, which keeps
//! the row-elimination kernels fast without any lazy reduction.

use std::fmt;
use std::sync::Arc;

/// Candidates tried before enumerative routines (factorization,
/// irreducibility, root scans) give up with `BudgetExceeded`.
pub const ENUM_BUDGET: u64 = 2_000_000;

const TABLE_MAX_Q: u64 = 256;
const MAX_Q: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    FieldTooLarge,
    ModulusInvalid(&'static str),
    InvertZero,
    BudgetExceeded(&'static str),
    Incompatible(&'static str),
    ParseElem(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{} is not prime", p),
            FieldError::FieldTooLarge => write!(f, "field size exceeds supported range"),
            FieldError::ModulusInvalid(m) => write!(f, "invalid modulus: {}", m),
            FieldError::InvertZero => write!(f, "inversion of zero"),
            FieldError::BudgetExceeded(what) => write!(f, "budget exceeded: {}", what),
            FieldError::Incompatible(m) => write!(f, "incompatible fields: {}", m),
            FieldError::ParseElem(s) => write!(f, "cannot parse field element `{}`", s),
        }
    }
}

impl std::error::Error for FieldError {}

/// An element of a fixed `FieldCtx`, stored as its canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

struct CtxInner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus of degree k over F_p, low-degree-first. None iff k = 1.
    modulus: Option<Vec<u32>>,
    /// t^{k+j} mod modulus as digit vectors of length k, for j in 0..k-1.
    red_pows: Vec<Vec<u64>>,
    tab: Option<Tables>,
}

/// Immutable description of `F_{p^k}`; all element operations live here.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<CtxInner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.k == other.inner.k
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(q={})", self.inner.q)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// -- polynomial helpers over F_p on raw residue vectors (low-first, trimmed)

fn pv_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pv_divrem(num: &[u32], den: &[u32], p: u64) -> (Vec<u32>, Vec<u32>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    if num.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![0u32; num.len() - den.len() + 1];
    let lead_inv = mod_inv(den[dd] as u64, p);
    for i in (dd..rem.len()).rev() {
        let c = rem[i] as u64;
        if c == 0 {
            continue;
        }
        let f = c * lead_inv % p;
        quo[i - dd] = f as u32;
        for (j, &dc) in den.iter().enumerate() {
            let idx = i - dd + j;
            let sub = f * dc as u64 % p;
            rem[idx] = ((rem[idx] as u64 + p - sub) % p) as u32;
        }
    }
    pv_trim(&mut rem);
    pv_trim(&mut quo);
    (quo, rem)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Trial-division irreducibility over F_p; charges one budget unit per
/// candidate divisor tried.
fn pv_is_irreducible(f: &[u32], p: u64, budget: &mut u64) -> Result<bool, FieldError> {
    let deg = f.len() - 1;
    if deg == 0 {
        return Ok(false);
    }
    if deg == 1 {
        return Ok(true);
    }
    for d in 1..=deg / 2 {
        let count = (p as u128).pow(d as u32);
        for idx in 0..count {
            if *budget == 0 {
                return Err(FieldError::BudgetExceeded("irreducibility test"));
            }
            *budget -= 1;
            let mut cand = vec![0u32; d + 1];
            cand[d] = 1;
            let mut rem = idx;
            for c in cand.iter_mut().take(d) {
                *c = (rem % p as u128) as u32;
                rem /= p as u128;
            }
            let (_, r) = pv_divrem(f, &cand, p);
            if r.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically least monic irreducible of degree k over F_p,
/// coefficients compared low-degree-first.
fn canonical_modulus(p: u64, k: u32) -> Result<Vec<u32>, FieldError> {
    let total = (p as u128).pow(k);
    let mut budget = ENUM_BUDGET;
    for i in 0..total {
        let mut coeffs = vec![0u32; k as usize + 1];
        coeffs[k as usize] = 1;
        // c_0 is the most significant position in the lex order
        let mut rem = i;
        for j in (0..k as usize).rev() {
            coeffs[j] = (rem % p as u128) as u32;
            rem /= p as u128;
        }
        if pv_is_irreducible(&coeffs, p, &mut budget)? {
            return Ok(coeffs);
        }
    }
    Err(FieldError::ModulusInvalid("no irreducible polynomial found"))
}

impl CtxInner {
    fn decompose(&self, code: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.k as usize];
        let mut c = code;
        for d in digits.iter_mut() {
            *d = c % self.p;
            c /= self.p;
        }
        digits
    }

    fn compose(&self, digits: &[u64]) -> u64 {
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            code = code * self.p + d;
        }
        code
    }

    fn raw_add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let da = self.decompose(a);
        let db = self.decompose(b);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % self.p).collect();
        self.compose(&sum)
    }

    fn raw_neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let da = self.decompose(a);
        let neg: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.compose(&neg)
    }

    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let k = self.k as usize;
        let da = self.decompose(a);
        let db = self.decompose(b);
        let mut conv = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % self.p;
            }
        }
        for j in (k..2 * k - 1).rev() {
            let c = conv[j];
            if c == 0 {
                continue;
            }
            conv[j] = 0;
            for (idx, &rp) in self.red_pows[j - k].iter().enumerate() {
                conv[idx] = (conv[idx] + c * rp) % self.p;
            }
        }
        self.compose(&conv[..k])
    }

    fn raw_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl FieldCtx {
    /// Builds `F_{p^k}`. Without a modulus and `k > 1`, selects the
    /// lexicographically least monic irreducible of degree k over F_p.
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u32>>) -> Result<FieldCtx, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ModulusInvalid("extension degree must be >= 1"));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p).ok_or(FieldError::FieldTooLarge)?;
            if q > MAX_Q {
                return Err(FieldError::FieldTooLarge);
            }
        }
        let modulus = if k == 1 {
            if modulus.is_some() {
                return Err(FieldError::ModulusInvalid("prime field takes no modulus"));
            }
            None
        } else {
            let m = match modulus {
                Some(mut m) => {
                    pv_trim(&mut m);
                    if m.len() != k as usize + 1 {
                        return Err(FieldError::ModulusInvalid("wrong degree"));
                    }
                    if m[k as usize] != 1 {
                        return Err(FieldError::ModulusInvalid("not monic"));
                    }
                    if m.iter().any(|&c| c as u64 >= p) {
                        return Err(FieldError::ModulusInvalid("coefficient out of range"));
                    }
                    let mut budget = ENUM_BUDGET;
                    if !pv_is_irreducible(&m, p, &mut budget)? {
                        return Err(FieldError::ModulusInvalid("reducible"));
                    }
                    m
                }
                None => canonical_modulus(p, k)?,
            };
            Some(m)
        };

        // t^{k+j} mod modulus
        let mut red_pows: Vec<Vec<u64>> = Vec::new();
        if let Some(m) = &modulus {
            let kk = k as usize;
            let mut base = vec![0u64; kk];
            for (i, b) in base.iter_mut().enumerate() {
                *b = (p - m[i] as u64) % p;
            }
            red_pows.push(base.clone());
            for _ in 1..kk {
                let prev = red_pows.last().unwrap().clone();
                let mut next = vec![0u64; kk];
                for i in 0..kk - 1 {
                    next[i + 1] = prev[i];
                }
                let top = prev[kk - 1];
                if top != 0 {
                    for i in 0..kk {
                        next[i] = (next[i] + top * red_pows[0][i]) % p;
                    }
                }
                red_pows.push(next);
            }
        }

        let mut inner = CtxInner { p, k, q, modulus, red_pows, tab: None };

        if q <= TABLE_MAX_Q {
            let n = q as usize;
            let mut add = vec![0u8; n * n];
            let mut mul = vec![0u8; n * n];
            let mut neg = vec![0u8; n];
            let mut inv = vec![0u8; n];
            for a in 0..n as u64 {
                neg[a as usize] = inner.raw_neg(a) as u8;
                if a != 0 {
                    inv[a as usize] = inner.raw_pow(a, q - 2) as u8;
                }
                for b in 0..n as u64 {
                    add[(a * q + b) as usize] = inner.raw_add(a, b) as u8;
                    mul[(a * q + b) as usize] = inner.raw_mul(a, b) as u8;
                }
            }
            inner.tab = Some(Tables { add, mul, neg, inv });
        }

        Ok(FieldCtx { inner: Arc::new(inner) })
    }

    pub fn prime(p: u64) -> Result<FieldCtx, FieldError> {
        FieldCtx::new(p, 1, None)
    }

    pub fn extension(p: u64, k: u32) -> Result<FieldCtx, FieldError> {
        FieldCtx::new(p, k, None)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Modulus coefficients (low-degree-first) for k > 1.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The generator t of the extension (code p); zero for prime fields.
    pub fn gen(&self) -> FieldElem {
        if self.inner.k == 1 {
            FieldElem(0)
        } else {
            FieldElem(self.inner.p as u32)
        }
    }

    pub fn elem(&self, code: u64) -> FieldElem {
        assert!(code < self.inner.q, "element code {} out of range", code);
        FieldElem(code as u32)
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        let p = self.inner.p as i64;
        let r = ((v % p) + p) % p;
        FieldElem(r as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElem {
        let k = self.inner.k as usize;
        assert!(coeffs.len() <= k, "too many coefficients");
        let mut digits = vec![0u64; k];
        for (i, &c) in coeffs.iter().enumerate() {
            assert!((c as u64) < self.inner.p, "coefficient out of range");
            digits[i] = c as u64;
        }
        FieldElem(self.inner.compose(&digits) as u32)
    }

    pub fn coeffs(&self, e: FieldElem) -> Vec<u32> {
        self.inner.decompose(e.0 as u64).iter().map(|&d| d as u32).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.inner.q as u32).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.tab {
            Some(t) => FieldElem(t.add[a.0 as usize * self.inner.q as usize + b.0 as usize] as u32),
            None => FieldElem(self.inner.raw_add(a.0 as u64, b.0 as u64) as u32),
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.tab {
            Some(t) => FieldElem(t.mul[a.0 as usize * self.inner.q as usize + b.0 as usize] as u32),
            None => FieldElem(self.inner.raw_mul(a.0 as u64, b.0 as u64) as u32),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match &self.inner.tab {
            Some(t) => FieldElem(t.neg[a.0 as usize] as u32),
            None => FieldElem(self.inner.raw_neg(a.0 as u64) as u32),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::InvertZero);
        }
        Ok(match &self.inner.tab {
            Some(t) => FieldElem(t.inv[a.0 as usize] as u32),
            None => FieldElem(self.inner.raw_pow(a.0 as u64, self.inner.q - 2) as u32),
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        let mut acc = FieldElem(1);
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// dst += f * src, entrywise.
    pub fn axpy_row(&self, dst: &mut [FieldElem], src: &[FieldElem], f: FieldElem) {
        debug_assert_eq!(dst.len(), src.len());
        if f.is_zero() {
            return;
        }
        match &self.inner.tab {
            Some(t) => {
                let q = self.inner.q as usize;
                let mrow = &t.mul[f.0 as usize * q..f.0 as usize * q + q];
                let add = &t.add;
                for (d, s) in dst.iter_mut().zip(src) {
                    let m = mrow[s.0 as usize] as usize;
                    d.0 = add[d.0 as usize * q + m] as u32;
                }
            }
            None => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, self.mul(f, *s));
                }
            }
        }
    }

    /// dst *= f, entrywise.
    pub fn scale_row(&self, dst: &mut [FieldElem], f: FieldElem) {
        match &self.inner.tab {
            Some(t) => {
                let q = self.inner.q as usize;
                let mrow = &t.mul[f.0 as usize * q..f.0 as usize * q + q];
                for d in dst.iter_mut() {
                    d.0 = mrow[d.0 as usize] as u32;
                }
            }
            None => {
                for d in dst.iter_mut() {
                    *d = self.mul(f, *d);
                }
            }
        }
    }

    /// Canonical printing: residues for prime fields, polynomials in t
    /// (highest degree first) for extensions.
    pub fn format_elem(&self, e: FieldElem) -> String {
        if self.inner.k == 1 {
            return e.0.to_string();
        }
        let coeffs = self.coeffs(e);
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (c, i) {
                (_, 0) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("t^{}", i),
                (_, 1) => format!("{}*t", c),
                (_, _) => format!("{}*t^{}", c, i),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Parses an element literal: an integer for any field, or a
    /// polynomial in t like `t^2+2*t+1` for extensions.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, FieldError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(FieldError::ParseElem(s.to_string()));
        }
        let mut acc = FieldElem(0);
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(FieldError::ParseElem(s.to_string()));
            }
            let (coef_str, pow_str) = match term.find('t') {
                None => (term, None),
                Some(pos) => {
                    let coef = term[..pos].trim().trim_end_matches('*').trim();
                    let rest = &term[pos + 1..];
                    let pow = if rest.is_empty() {
                        1u32
                    } else {
                        let rest = rest.trim();
                        let stripped = rest
                            .strip_prefix('^')
                            .ok_or_else(|| FieldError::ParseElem(s.to_string()))?;
                        stripped
                            .trim()
                            .parse::<u32>()
                            .map_err(|_| FieldError::ParseElem(s.to_string()))?
                    };
                    (coef, Some(pow))
                }
            };
            let coef: u64 = if coef_str.is_empty() {
                1
            } else {
                coef_str
                    .parse::<u64>()
                    .map_err(|_| FieldError::ParseElem(s.to_string()))?
            };
            let coef = self.from_int(coef as i64);
            let term_val = match pow_str {
                None => coef,
                Some(pw) => {
                    if self.inner.k == 1 {
                        return Err(FieldError::ParseElem(s.to_string()));
                    }
                    if pw >= self.inner.k {
                        return Err(FieldError::ParseElem(s.to_string()));
                    }
                    self.mul(coef, self.pow(self.gen(), pw as u64))
                }
            };
            acc = self.add(acc, term_val);
        }
        Ok(acc)
    }

    /// Field literal as used in `.lie` headers: `3` or `2^2 t^2+t+1`.
    pub fn lie_literal(&self) -> String {
        if self.inner.k == 1 {
            format!("{}", self.inner.p)
        } else {
            let m = self.inner.modulus.as_ref().unwrap();
            let mut parts: Vec<String> = Vec::new();
            for (i, &c) in m.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let part = match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, 1) => "t".to_string(),
                    (1, _) => format!("t^{}", i),
                    (_, 1) => format!("{}*t", c),
                    (_, _) => format!("{}*t^{}", c, i),
                };
                parts.push(part);
            }
            format!("{}^{} {}", self.inner.p, self.inner.k, parts.join("+"))
        }
    }

    /// Canonical embedding of this field into a larger one with the same
    /// characteristic: the generator maps to the least root of the
    /// modulus in the target.
    pub fn embed_into(&self, other: &FieldCtx) -> Result<FieldEmbedding, FieldError> {
        if self == other {
            return Ok(FieldEmbedding::identity(self));
        }
        if self.p() != other.p() {
            return Err(FieldError::Incompatible("different characteristic"));
        }
        if other.k() % self.k() != 0 {
            return Err(FieldError::Incompatible("degree does not divide"));
        }
        if self.k() == 1 {
            return Ok(FieldEmbedding {
                from: self.clone(),
                to: other.clone(),
                gen_image: FieldElem(0),
            });
        }
        if other.q() > ENUM_BUDGET {
            return Err(FieldError::BudgetExceeded("embedding root scan"));
        }
        let m = self.inner.modulus.as_ref().unwrap();
        for cand in other.elements() {
            // Horner evaluation of the modulus at cand, inside `other`
            let mut acc = FieldElem(0);
            for &c in m.iter().rev() {
                acc = other.add(other.mul(acc, cand), other.from_int(c as i64));
            }
            if acc.is_zero() {
                return Ok(FieldEmbedding {
                    from: self.clone(),
                    to: other.clone(),
                    gen_image: cand,
                });
            }
        }
        Err(FieldError::Incompatible("no root of modulus in target"))
    }
}

/// A field homomorphism `F_{p^k} -> F_{p^{km}}` determined by the image
/// of the generator.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub from: FieldCtx,
    pub to: FieldCtx,
    gen_image: FieldElem,
}

impl FieldEmbedding {
    pub fn identity(ctx: &FieldCtx) -> FieldEmbedding {
        FieldEmbedding { from: ctx.clone(), to: ctx.clone(), gen_image: ctx.gen() }
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to
    }

    pub fn apply(&self, e: FieldElem) -> FieldElem {
        if self.from == self.to {
            return e;
        }
        let coeffs = self.from.coeffs(e);
        let mut acc = FieldElem(0);
        for &c in coeffs.iter().rev() {
            acc = self.to.add(self.to.mul(acc, self.gen_image), self.to.from_int(c as i64));
        }
        acc
    }
}

/// Univariate polynomial over some `FieldCtx`, coefficients low-first,
/// highest term nonzero; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> UniPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: FieldElem) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn x() -> UniPoly {
        UniPoly { coeffs: vec![FieldElem(0), FieldElem(1)] }
    }

    pub fn monomial(deg: usize, c: FieldElem) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![FieldElem(0); deg + 1];
        coeffs[deg] = c;
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem(0))
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem(0);
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, ctx: &FieldCtx, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![FieldElem(0); n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = ctx.add(self.coeff(i), other.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![FieldElem(0); n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = ctx.sub(self.coeff(i), other.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![FieldElem(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, ctx: &FieldCtx, c: FieldElem) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn divrem(&self, ctx: &FieldCtx, den: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!den.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < den.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = den.coeffs.len() - 1;
        let mut quo = vec![FieldElem(0); rem.len() - dd];
        let lead_inv = ctx.inv(den.leading().unwrap()).expect("nonzero leading");
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = ctx.mul(c, lead_inv);
            quo[i - dd] = f;
            for (j, &dc) in den.coeffs.iter().enumerate() {
                rem[i - dd + j] = ctx.sub(rem[i - dd + j], ctx.mul(f, dc));
            }
        }
        (UniPoly::from_coeffs(quo), UniPoly::from_coeffs(rem))
    }

    pub fn make_monic(&self, ctx: &FieldCtx) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) if l == FieldElem(1) => self.clone(),
            Some(l) => self.mul_scalar(ctx, ctx.inv(l).unwrap()),
        }
    }

    pub fn map(&self, emb: &FieldEmbedding) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|&c| emb.apply(c)).collect())
    }

    pub fn format(&self, ctx: &FieldCtx, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = ctx.format_elem(c);
            let wrapped = if cs.contains('+') { format!("({})", cs) } else { cs.clone() };
            let part = match i {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{}*{}", wrapped, var),
                _ if cs == "1" => format!("{}^{}", var, i),
                _ => format!("{}*{}^{}", wrapped, var, i),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// All roots of f in the field, with multiplicities, by exhaustive
/// evaluation; sorted by element code.
pub fn poly_roots(ctx: &FieldCtx, f: &UniPoly) -> Result<Vec<(FieldElem, u32)>, FieldError> {
    assert!(!f.is_zero(), "poly_roots of the zero polynomial");
    if ctx.q() > ENUM_BUDGET {
        return Err(FieldError::BudgetExceeded("root scan"));
    }
    let mut roots = Vec::new();
    for e in ctx.elements() {
        if !f.eval(ctx, e).is_zero() {
            continue;
        }
        let lin = UniPoly::from_coeffs(vec![ctx.neg(e), FieldElem(1)]);
        let mut mult = 0u32;
        let mut work = f.clone();
        loop {
            let (q, r) = work.divrem(ctx, &lin);
            if !r.is_zero() {
                break;
            }
            mult += 1;
            work = q;
        }
        roots.push((e, mult));
    }
    Ok(roots)
}

/// Factorization `f = unit * prod factors^mult` into monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(UniPoly, u32)>,
}

/// Complete factorization over F_q by trial division against enumerated
/// monic polynomials of ascending degree; deterministic output order
/// (degree, then coefficient vectors compared low-degree-first).
pub fn poly_factor(ctx: &FieldCtx, f: &UniPoly) -> Result<Factorization, FieldError> {
    assert!(!f.is_zero(), "poly_factor of the zero polynomial");
    let unit = f.leading().unwrap();
    let mut work = f.make_monic(ctx);
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    let mut budget = ENUM_BUDGET;
    let q = ctx.q();

    let mut d = 1usize;
    while work.degree().unwrap_or(0) >= 2 * d {
        let count = (q as u128).pow(d as u32);
        let mut idx: u128 = 0;
        while idx < count {
            if work.degree().unwrap_or(0) < 2 * d {
                break;
            }
            if budget == 0 {
                return Err(FieldError::BudgetExceeded("trial division"));
            }
            budget -= 1;
            let mut coeffs = vec![FieldElem(0); d + 1];
            coeffs[d] = FieldElem(1);
            let mut rem = idx;
            for c in coeffs.iter_mut().take(d) {
                *c = FieldElem((rem % q as u128) as u32);
                rem /= q as u128;
            }
            let cand = UniPoly { coeffs };
            let (quo, r) = work.divrem(ctx, &cand);
            if r.is_zero() {
                let mut mult = 1u32;
                work = quo;
                loop {
                    let (q2, r2) = work.divrem(ctx, &cand);
                    if !r2.is_zero() {
                        break;
                    }
                    mult += 1;
                    work = q2;
                }
                factors.push((cand, mult));
                // the same candidate cannot divide again; move on
            }
            idx += 1;
        }
        d += 1;
    }
    if work.degree().unwrap_or(0) >= 1 {
        factors.push((work, 1));
    }
    factors.sort_by(|a, b| {
        let da = a.0.degree().unwrap();
        let db = b.0.degree().unwrap();
        da.cmp(&db).then_with(|| {
            a.0.coeffs.iter().map(|c| c.0).collect::<Vec<_>>()
                .cmp(&b.0.coeffs.iter().map(|c| c.0).collect::<Vec<_>>())
        })
    });
    Ok(Factorization { unit, factors })
}

/// The splitting field of f over ctx as a concrete extension
/// `F_{q^m}`, m = lcm of the irreducible factor degrees, with the
/// canonical embedding. Returns ctx itself when f already splits.
pub fn splitting_extension(
    ctx: &FieldCtx,
    f: &UniPoly,
) -> Result<(FieldCtx, FieldEmbedding), FieldError> {
    let fct = poly_factor(ctx, f)?;
    let mut m: u64 = 1;
    for (g, _) in &fct.factors {
        let d = g.degree().unwrap() as u64;
        m = m / gcd(m, d) * d;
    }
    if m == 1 {
        return Ok((ctx.clone(), FieldEmbedding::identity(ctx)));
    }
    let target_k = ctx
        .k()
        .checked_mul(m as u32)
        .ok_or(FieldError::FieldTooLarge)?;
    let target = FieldCtx::new(ctx.p(), target_k, None)?;
    let emb = ctx.embed_into(&target)?;
    Ok((target, emb))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
