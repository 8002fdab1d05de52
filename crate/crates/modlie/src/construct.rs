//! Named constructors: gl/sl/psl in the matrix-unit basis, the
//! Jacobson-Witt algebras W(m;1) as derivations of truncated polynomial
//! rings, the Hamiltonian algebra H(2;1)^(2) via the Poisson bracket,
//! and explicit builtin tables.

use crate::field::{FieldCtx, FieldElem};
use crate::lie::{LieAlgebra, LieError};
use crate::matrix::Mat;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    BadParameter(&'static str),
    UnknownBuiltin(String),
    Lie(LieError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::BadParameter(m) => write!(f, "bad parameter: {}", m),
            ConstructError::UnknownBuiltin(n) => write!(f, "unknown builtin `{}`", n),
            ConstructError::Lie(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ConstructError {}

impl From<LieError> for ConstructError {
    fn from(e: LieError) -> Self {
        ConstructError::Lie(e)
    }
}

/// Expresses commutators of explicit matrices in a given matrix basis.
fn algebra_from_matrix_basis(
    ctx: &FieldCtx,
    basis: &[Mat],
    labels: Vec<String>,
) -> Result<LieAlgebra, ConstructError> {
    let dim = basis.len();
    let n = basis[0].rows();
    // columns of the expression system: flattened basis matrices
    let expr = Mat::from_fn(ctx, n * n, dim, |rc, b| {
        basis[b].get(rc / n, rc % n)
    });
    let mut entries = Vec::new();
    let mut rhs_cols = Vec::new();
    let mut keys = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let comm = basis[i].matmul(&basis[j]).sub(&basis[j].matmul(&basis[i]));
            rhs_cols.push(comm.flatten());
            keys.push((i, j));
        }
    }
    if !keys.is_empty() {
        let rhs = Mat::from_fn(ctx, n * n, keys.len(), |rc, c| rhs_cols[c][rc]);
        let sol = expr
            .solve_multi(&rhs)
            .ok_or(ConstructError::BadParameter("commutator leaves the span"))?;
        for (c, &key) in keys.iter().enumerate() {
            entries.push((key, sol.col(c)));
        }
    }
    Ok(LieAlgebra::from_brackets(ctx, dim, entries)?.with_labels(labels))
}

/// Full matrix algebra gl(n) in the basis E_11, E_12, ..., E_nn.
pub fn gl(n: usize, ctx: &FieldCtx) -> Result<LieAlgebra, ConstructError> {
    if n < 2 {
        return Err(ConstructError::BadParameter("gl needs n >= 2"));
    }
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut m = Mat::zeros(ctx, n, n);
            m.set(a, b, FieldElem::ONE);
            basis.push(m);
            labels.push(format!("E{}{}", a + 1, b + 1));
        }
    }
    let g = algebra_from_matrix_basis(ctx, &basis, labels)?;
    g.validate().expect("gl satisfies Jacobi");
    Ok(g)
}

/// sl(n): off-diagonal matrix units in lexicographic order, then the
/// diagonal differences H_i = E_ii - E_{i+1,i+1}.
pub fn sl(n: usize, ctx: &FieldCtx) -> Result<LieAlgebra, ConstructError> {
    if n < 2 {
        return Err(ConstructError::BadParameter("sl needs n >= 2"));
    }
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut m = Mat::zeros(ctx, n, n);
            m.set(a, b, FieldElem::ONE);
            basis.push(m);
            labels.push(format!("E{}{}", a + 1, b + 1));
        }
    }
    for i in 0..n - 1 {
        let mut m = Mat::zeros(ctx, n, n);
        m.set(i, i, FieldElem::ONE);
        m.set(i + 1, i + 1, ctx.neg(FieldElem::ONE));
        basis.push(m);
        labels.push(format!("H{}", i + 1));
    }
    let g = algebra_from_matrix_basis(ctx, &basis, labels)?;
    g.validate().expect("sl satisfies Jacobi");
    Ok(g)
}

/// psl(n) = sl(n)/center when p | n, sl(n) itself otherwise.
pub fn psl(n: usize, ctx: &FieldCtx) -> Result<LieAlgebra, ConstructError> {
    let s = sl(n, ctx)?;
    let g = if ctx.p() % (n as u64) == 0 || (n as u64) % ctx.p() == 0 {
        let z = s.center();
        let (q, _) = s.quotient(&z)?;
        q
    } else {
        s
    };
    g.validate().expect("psl satisfies Jacobi");
    Ok(g.with_simple_certificate())
}

/// Multi-indices 0 <= a_i <= p-1 in lexicographic order, a_1 varying
/// fastest; this fixes the monomial basis of O(m;1).
fn truncated_monomials(p: u64, m: usize) -> Vec<Vec<u32>> {
    let total = (p as u128).pow(m as u32) as usize;
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut a = vec![0u32; m];
        let mut r = idx as u64;
        for ai in a.iter_mut() {
            *ai = (r % p) as u32;
            r /= p;
        }
        out.push(a);
    }
    out
}

fn monomial_label(a: &[u32], prefix: &str) -> String {
    let mut parts = Vec::new();
    for (i, &e) in a.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{}{}", prefix, i + 1)),
            _ => parts.push(format!("{}{}^{}", prefix, i + 1, e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Jacobson-Witt algebra W(m;1) = Der(F_p[x_1..x_m]/(x_i^p)), basis
/// x^a d_i, dimension m p^m. Simple unless p = 2 and m = 1.
pub fn jacobson_witt(m: usize, ctx: &FieldCtx) -> Result<LieAlgebra, ConstructError> {
    if ctx.k() != 1 {
        return Err(ConstructError::BadParameter("witt is defined over prime fields"));
    }
    if m < 1 {
        return Err(ConstructError::BadParameter("witt needs m >= 1"));
    }
    let p = ctx.p();
    let monos = truncated_monomials(p, m);
    let mono_index = |a: &[u32]| -> Option<usize> {
        let mut idx = 0u64;
        for &ai in a.iter().rev() {
            if ai as u64 >= p {
                return None; // truncated away: x_i^p = 0
            }
            idx = idx * p + ai as u64;
        }
        Some(idx as usize)
    };
    let pm = monos.len();
    let dim = m * pm;
    // basis index: (mono a, direction i) -> i*p^m + a
    let mut labels = Vec::with_capacity(dim);
    for i in 0..m {
        for a in &monos {
            labels.push(format!("{}*d{}", monomial_label(a, "x"), i + 1));
        }
    }
    // [x^a d_i, x^b d_j] = b_i x^{a+b-e_i} d_j - a_j x^{a+b-e_j} d_i
    let mut entries = Vec::new();
    for u in 0..dim {
        for v in (u + 1)..dim {
            let (i, ai) = (u / pm, &monos[u % pm]);
            let (j, bj) = (v / pm, &monos[v % pm]);
            let mut w = vec![FieldElem::ZERO; dim];
            // b_i * x^{a+b-e_i} d_j
            if bj[i] > 0 {
                let mut sum: Vec<u32> = ai.iter().zip(bj).map(|(&x, &y)| x + y).collect();
                sum[i] -= 1;
                if let Some(t) = mono_index(&sum) {
                    let c = ctx.from_int(bj[i] as i64);
                    w[j * pm + t] = ctx.add(w[j * pm + t], c);
                }
            }
            // - a_j * x^{a+b-e_j} d_i
            if ai[j] > 0 {
                let mut sum: Vec<u32> = ai.iter().zip(bj).map(|(&x, &y)| x + y).collect();
                sum[j] -= 1;
                if let Some(t) = mono_index(&sum) {
                    let c = ctx.neg(ctx.from_int(ai[j] as i64));
                    w[i * pm + t] = ctx.add(w[i * pm + t], c);
                }
            }
            entries.push(((u, v), w));
        }
    }
    let g = LieAlgebra::from_brackets(ctx, dim, entries)?.with_labels(labels);
    g.validate().expect("W(m;1) satisfies Jacobi");
    if !(p == 2 && m == 1) {
        Ok(g.with_simple_certificate())
    } else {
        Ok(g)
    }
}

/// Hamiltonian algebra H(2;1)^(2): the Poisson bracket
/// {f,g} = df/dx dg/dy - df/dy dg/dx on F_p[x,y]/(x^p, y^p), quotiented
/// by the constants, then the second derived subalgebra. Dimension
/// p^2 - 2; requires p >= 3.
pub fn hamiltonian_p2(ctx: &FieldCtx) -> Result<LieAlgebra, ConstructError> {
    if ctx.k() != 1 {
        return Err(ConstructError::BadParameter(
            "hamiltonian is defined over prime fields",
        ));
    }
    let p = ctx.p();
    if p < 3 {
        return Err(ConstructError::BadParameter("hamiltonian requires p >= 3"));
    }
    let monos = truncated_monomials(p, 2);
    let pm = monos.len();
    let midx = |a: u32, b: u32| -> Option<usize> {
        if a as u64 >= p || b as u64 >= p {
            None
        } else {
            Some((b as u64 * p + a as u64) as usize)
        }
    };
    // Poisson bracket of monomials x^a y^b, x^c y^d:
    // (a+c-1, b+d-1) with coefficient a*d - b*c
    let mut entries = Vec::new();
    for u in 0..pm {
        for v in (u + 1)..pm {
            let (a, b) = (monos[u][0], monos[u][1]);
            let (c, d) = (monos[v][0], monos[v][1]);
            let coef = ctx.sub(
                ctx.mul(ctx.from_int(a as i64), ctx.from_int(d as i64)),
                ctx.mul(ctx.from_int(b as i64), ctx.from_int(c as i64)),
            );
            if coef.is_zero() || a + c == 0 || b + d == 0 {
                continue;
            }
            if let Some(t) = midx(a + c - 1, b + d - 1) {
                let mut w = vec![FieldElem::ZERO; pm];
                w[t] = coef;
                entries.push(((u, v), w));
            }
        }
    }
    let poisson = LieAlgebra::from_brackets(ctx, pm, entries)?;
    // constants are central: quotient them away
    let ones = crate::matrix::Subspace::from_vectors(
        ctx,
        pm,
        vec![{
            let mut v = vec![FieldElem::ZERO; pm];
            v[0] = FieldElem::ONE;
            v
        }],
    );
    let (quot, _) = poisson.quotient(&ones)?;
    // two derived steps, literally
    let d1 = quot.product_space(&quot.full_space(), &quot.full_space());
    let d1 = quot.subalgebra_on(&d1)?;
    let d2 = d1.product_space(&d1.full_space(), &d1.full_space());
    let g = d1.subalgebra_on(&d2)?;
    assert_eq!(g.dim() as u64, p * p - 2, "H(2;1)^(2) has dimension p^2-2");
    g.validate().expect("H(2;1)^(2) satisfies Jacobi");
    Ok(g.with_simple_certificate())
}

impl LieAlgebra {
    /// `subalgebra` with the no-op shortcut for the full space.
    pub fn subalgebra_on(
        &self,
        s: &crate::matrix::Subspace,
    ) -> Result<LieAlgebra, LieError> {
        if s.is_full() {
            Ok(self.clone())
        } else {
            self.subalgebra(s)
        }
    }
}

/// Explicit tables: "w3" (the 3-dimensional Witt-type algebra over F_2),
/// "g6" (its 6-dimensional scalar-twisted relative over F_2), and
/// "psl3f3-table" (psl_3(F_3) in the printed basis).
pub fn builtin(name: &str) -> Result<LieAlgebra, ConstructError> {
    let g = match name {
        "w3" => {
            let f2 = FieldCtx::prime(2).map_err(LieError::from)?;
            let table: &[((usize, usize), &[i64])] = &[
                ((1, 2), &[0, 0, 1]),
                ((1, 3), &[1, 0, 0]),
                ((2, 3), &[0, 1, 0]),
            ];
            from_table(&f2, 3, table)?
                .with_labels(vec!["e".into(), "f".into(), "h".into()])
                .with_simple_certificate()
        }
        "g6" => {
            let f2 = FieldCtx::prime(2).map_err(LieError::from)?;
            let table: &[((usize, usize), &[i64])] = &[
                ((1, 2), &[0, 0, 1, 0, 0, 0]),
                ((1, 3), &[0, 0, 0, 1, 0, 0]),
                ((1, 4), &[0, 0, 0, 0, 1, 0]),
                ((1, 5), &[0, 1, 0, 1, 0, 0]),
                ((2, 3), &[1, 0, 0, 0, 0, 0]),
                ((2, 5), &[1, 0, 0, 0, 0, 1]),
                ((2, 6), &[0, 0, 1, 0, 1, 0]),
                ((3, 4), &[1, 0, 0, 0, 0, 1]),
                ((3, 6), &[0, 1, 0, 0, 0, 0]),
                ((4, 5), &[0, 0, 0, 0, 0, 1]),
                ((4, 6), &[0, 0, 1, 0, 0, 0]),
                ((5, 6), &[0, 0, 0, 1, 0, 0]),
            ];
            from_table(&f2, 6, table)?
                .with_labels((1..=6).map(|i| format!("x{}", i)).collect())
                .with_simple_certificate()
        }
        "psl3f3-table" => {
            let f3 = FieldCtx::prime(3).map_err(LieError::from)?;
            let table: &[((usize, usize), &[i64])] = &[
                ((1, 3), &[0, 0, 0, 0, 0, 0, 1]),
                ((1, 4), &[0, 1, 0, 0, 0, 0, 0]),
                ((1, 5), &[0, 0, 0, 0, 0, -1, 0]),
                ((1, 7), &[-2, 0, 0, 0, 0, 0, 0]),
                ((2, 3), &[0, 0, 0, -1, 0, 0, 0]),
                ((2, 5), &[0, 0, 0, 0, 0, 0, 2]),
                ((2, 6), &[1, 0, 0, 0, 0, 0, 0]),
                ((2, 7), &[0, -1, 0, 0, 0, 0, 0]),
                ((3, 6), &[0, 0, 0, 0, -1, 0, 0]),
                ((3, 7), &[0, 0, 2, 0, 0, 0, 0]),
                ((4, 5), &[0, 0, 1, 0, 0, 0, 0]),
                ((4, 6), &[0, 0, 0, 0, 0, 0, 1]),
                ((4, 7), &[0, 0, 0, 1, 0, 0, 0]),
                ((5, 7), &[0, 0, 0, 0, 1, 0, 0]),
                ((6, 7), &[0, 0, 0, 0, 0, -1, 0]),
            ];
            from_table(&f3, 7, table)?
                .with_labels((1..=7).map(|i| format!("e{}", i)).collect())
                .with_simple_certificate()
        }
        other => return Err(ConstructError::UnknownBuiltin(other.to_string())),
    };
    g.validate().expect("builtin table satisfies Jacobi");
    Ok(g)
}

pub fn builtin_names() -> &'static [&'static str] {
    &["w3", "g6", "psl3f3-table"]
}

/// 1-based table entries with integer coefficients.
fn from_table(
    ctx: &FieldCtx,
    dim: usize,
    table: &[((usize, usize), &[i64])],
) -> Result<LieAlgebra, ConstructError> {
    let entries = table.iter().map(|&((i, j), coeffs)| {
        let v: Vec<FieldElem> = coeffs.iter().map(|&c| ctx.from_int(c)).collect();
        ((i - 1, j - 1), v)
    });
    Ok(LieAlgebra::from_brackets(ctx, dim, entries)?)
}
