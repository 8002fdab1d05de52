//! Structure-constant Lie algebras: validation, brackets, derived and
//! lower central series, centers, ideals, quotients, direct sums, scalar
//! extension/restriction and a simplicity decision procedure.

use crate::field::{FieldCtx, FieldElem, FieldEmbedding};
use crate::matrix::{Mat, SpanAcc, Subspace};
use std::collections::BTreeMap;
use std::fmt;

/// Nonzero vectors exhausted by `simplicity` before falling back to the
/// deterministic sample.
pub const SIMPLICITY_BUDGET: u64 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    FieldMismatch,
    DimMismatch,
    BadKey { i: usize, j: usize, reason: &'static str },
    NotAnIdeal,
    NotClosed,
    Field(crate::field::FieldError),
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::FieldMismatch => write!(f, "algebras live over different fields"),
            LieError::DimMismatch => write!(f, "dimension mismatch"),
            LieError::BadKey { i, j, reason } => {
                write!(f, "bad structure constant key ({},{}): {}", i, j, reason)
            }
            LieError::NotAnIdeal => write!(f, "subspace is not an ideal"),
            LieError::NotClosed => write!(f, "subspace is not closed under the bracket"),
            LieError::Field(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for LieError {}

impl From<crate::field::FieldError> for LieError {
    fn from(e: crate::field::FieldError) -> Self {
        LieError::Field(e)
    }
}

/// First Jacobi failure found by `validate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub defect: Vec<FieldElem>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(f, "Jacobi identity fails on basis triple (e{}, e{}, e{})", i + 1, j + 1, k + 1)
    }
}

/// A Lie algebra given by sparse alternating structure constants: keys
/// (i, j) with i < j map to the coordinates of [e_i, e_j]. The storage
/// convention enforces the alternating law even in characteristic 2.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    ctx: FieldCtx,
    dim: usize,
    sc: BTreeMap<(usize, usize), Vec<FieldElem>>,
    labels: Option<Vec<String>>,
    certified_simple: bool,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {} over {}, {} brackets)", self.dim, self.ctx, self.sc.len())
    }
}

impl LieAlgebra {
    /// Builds an algebra from bracket data; zero vectors are dropped,
    /// duplicate or ill-ordered keys are rejected. Jacobi is NOT checked
    /// here; call `validate`.
    pub fn from_brackets(
        ctx: &FieldCtx,
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<FieldElem>)>,
    ) -> Result<LieAlgebra, LieError> {
        let mut sc = BTreeMap::new();
        for ((i, j), v) in entries {
            if i >= j {
                return Err(LieError::BadKey { i, j, reason: "requires i < j" });
            }
            if j >= dim {
                return Err(LieError::BadKey { i, j, reason: "index out of range" });
            }
            if v.len() != dim {
                return Err(LieError::BadKey { i, j, reason: "vector has wrong length" });
            }
            if v.iter().all(|e| e.is_zero()) {
                continue;
            }
            if sc.insert((i, j), v).is_some() {
                return Err(LieError::BadKey { i, j, reason: "duplicate key" });
            }
        }
        Ok(LieAlgebra { ctx: ctx.clone(), dim, sc, labels: None, certified_simple: false })
    }

    pub fn abelian(ctx: &FieldCtx, dim: usize) -> LieAlgebra {
        LieAlgebra {
            ctx: ctx.clone(),
            dim,
            sc: BTreeMap::new(),
            labels: None,
            certified_simple: false,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> LieAlgebra {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    /// Constructors of algebras known simple on mathematical grounds set
    /// this flag; `simplicity` surfaces it next to its own verdict.
    pub fn with_simple_certificate(mut self) -> LieAlgebra {
        self.certified_simple = true;
        self
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vec<FieldElem>> {
        &self.sc
    }

    pub fn is_certified_simple(&self) -> bool {
        self.certified_simple
    }

    fn zero_vec(&self) -> Vec<FieldElem> {
        vec![FieldElem::ZERO; self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElem> {
        let mut v = self.zero_vec();
        v[i] = FieldElem::ONE;
        v
    }

    /// [e_i, e_j] for arbitrary index order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<FieldElem> {
        if i == j {
            return self.zero_vec();
        }
        let (a, b, negate) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.sc.get(&(a, b)) {
            None => self.zero_vec(),
            Some(v) => {
                if negate {
                    v.iter().map(|&e| self.ctx.neg(e)).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// [e_i, w] for a coordinate vector w.
    pub fn bracket_basis_vec(&self, i: usize, w: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(w.len(), self.dim);
        let mut out = self.zero_vec();
        for (j, &wj) in w.iter().enumerate() {
            if wj.is_zero() || j == i {
                continue;
            }
            let (a, b, negate) = if i < j { (i, j, false) } else { (j, i, true) };
            if let Some(v) = self.sc.get(&(a, b)) {
                let c = if negate { self.ctx.neg(wj) } else { wj };
                self.ctx.axpy_row(&mut out, v, c);
            }
        }
        out
    }

    /// Bilinear alternating bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        assert_eq!(y.len(), self.dim, "dimension mismatch");
        let mut out = self.zero_vec();
        for (&(i, j), v) in &self.sc {
            // coefficient x_i y_j - x_j y_i
            let c = self
                .ctx
                .sub(self.ctx.mul(x[i], y[j]), self.ctx.mul(x[j], y[i]));
            if !c.is_zero() {
                self.ctx.axpy_row(&mut out, v, c);
            }
        }
        out
    }

    /// Matrix of ad(e_i) acting on coordinates.
    pub fn ad_basis(&self, i: usize) -> Mat {
        let mut m = Mat::zeros(&self.ctx, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket_basis(i, j);
            for (r, &e) in col.iter().enumerate() {
                if !e.is_zero() {
                    m.set(r, j, e);
                }
            }
        }
        m
    }

    pub fn ad(&self, x: &[FieldElem]) -> Mat {
        let mut m = Mat::zeros(&self.ctx, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &self.basis_vector(j));
            for (r, &e) in col.iter().enumerate() {
                if !e.is_zero() {
                    m.set(r, j, e);
                }
            }
        }
        m
    }

    /// Checks the Jacobi identity on all basis triples i < j < k; the
    /// alternating law holds by the storage convention.
    pub fn validate(&self) -> Result<(), JacobiViolation> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let bij = self.bracket_basis(i, j);
                for k in (j + 1)..self.dim {
                    let bjk = self.bracket_basis(j, k);
                    let bik = self.bracket_basis(i, k);
                    // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
                    let t1 = self.bracket_basis_vec(i, &bjk);
                    let t2 = self.bracket_basis_vec(j, &bik);
                    let t3 = self.bracket_basis_vec(k, &bij);
                    let mut sum = t1;
                    // t2 enters with sign -1 because [e_k,e_i] = -[e_i,e_k]
                    for (s, &e) in sum.iter_mut().zip(&t2) {
                        *s = self.ctx.sub(*s, e);
                    }
                    for (s, &e) in sum.iter_mut().zip(&t3) {
                        *s = self.ctx.add(*s, e);
                    }
                    if sum.iter().any(|e| !e.is_zero()) {
                        return Err(JacobiViolation { triple: (i, j, k), defect: sum });
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of all brackets [a, b] with a in A, b in B.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        assert_eq!(a.ambient(), self.dim);
        assert_eq!(b.ambient(), self.dim);
        let mut acc = SpanAcc::new(&self.ctx, self.dim);
        'outer: for va in a.basis() {
            for vb in b.basis() {
                let w = self.bracket(va, vb);
                acc.add_vector(&w);
                if acc.dim() == self.dim {
                    break 'outer;
                }
            }
        }
        acc.into_subspace()
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(&self.ctx, self.dim)
    }

    pub fn is_perfect(&self) -> bool {
        let full = self.full_space();
        self.product_space(&full, &full).is_full()
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.is_empty()
    }

    /// Derived or lower central series until stabilization.
    pub fn series(&self, kind: SeriesKind) -> SeriesReport {
        let full = self.full_space();
        let mut terms = vec![full.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = match kind {
                SeriesKind::Derived => self.product_space(last, last),
                SeriesKind::LowerCentral => self.product_space(&full, last),
            };
            if &next == last {
                let nonzero = !last.is_zero();
                return SeriesReport { kind, terms, stabilized_nonzero: nonzero };
            }
            let is_zero = next.is_zero();
            terms.push(next);
            if is_zero {
                return SeriesReport { kind, terms, stabilized_nonzero: false };
            }
        }
    }

    pub fn derived_length(&self) -> Option<usize> {
        self.series(SeriesKind::Derived).length()
    }

    /// g^(infinity): the stable term of the derived series.
    pub fn g_inf_derived(&self) -> Subspace {
        self.series(SeriesKind::Derived).terms.last().unwrap().clone()
    }

    /// g^infinity: the stable term of the lower central series.
    pub fn g_inf_lower(&self) -> Subspace {
        self.series(SeriesKind::LowerCentral).terms.last().unwrap().clone()
    }

    /// Stable term of the lower central series of a bracket-closed
    /// subspace, computed inside the ambient coordinates.
    pub fn subspace_lower_central_limit(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let next = self.product_space(s, &cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.g_inf_derived().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.g_inf_lower().is_zero()
    }

    /// {x : [x, e_i] = 0 for all i} via one kernel computation.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut m = Mat::zeros(&self.ctx, n * n, n);
        for j in 0..n {
            for i in 0..n {
                let v = self.bracket_basis(i, j);
                for (r, &e) in v.iter().enumerate() {
                    if !e.is_zero() {
                        m.set(j * n + r, i, e);
                    }
                }
            }
        }
        m.kernel()
    }

    /// Smallest ideal containing S: iterate S <- S + [g, S].
    pub fn ideal_closure(&self, s: &Subspace) -> Subspace {
        let mut acc = SpanAcc::new(&self.ctx, self.dim);
        for v in s.basis() {
            acc.add_vector(v);
        }
        let mut frontier: Vec<Vec<FieldElem>> = s.basis().to_vec();
        while !frontier.is_empty() && acc.dim() < self.dim {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.dim {
                    let b = self.bracket_basis_vec(i, w);
                    if acc.add_vector(&b) {
                        next.push(b);
                        if acc.dim() == self.dim {
                            next.clear();
                            break;
                        }
                    }
                }
                if acc.dim() == self.dim {
                    break;
                }
            }
            frontier = next;
        }
        acc.into_subspace()
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let prod = self.product_space(&self.full_space(), s);
        s.contains_subspace(&prod)
    }

    /// Quotient by a verified ideal; the new basis consists of the
    /// non-pivot coordinates of the ideal's RREF basis. Also returns the
    /// projection matrix (new dim x old dim).
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Mat), LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotAnIdeal);
        }
        let n = self.dim;
        let mut is_pivot = vec![false; n];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let nq = complement.len();
        // projection: reduce mod the ideal, then read off complement coords
        let mut proj = Mat::zeros(&self.ctx, nq, n);
        for (col, ei) in (0..n).map(|i| (i, self.basis_vector(i))) {
            let red = ideal.reduce(&ei);
            for (r, &c) in complement.iter().enumerate() {
                proj.set(r, col, red[c]);
            }
        }
        let mut entries = Vec::new();
        for (a, &ca) in complement.iter().enumerate() {
            for (b, &cb) in complement.iter().enumerate().skip(a + 1) {
                let br = self.bracket_basis(ca, cb);
                let v = proj.apply(&br);
                entries.push(((a, b), v));
            }
        }
        let q = LieAlgebra::from_brackets(&self.ctx, nq, entries)?;
        Ok((q, proj))
    }

    /// Restriction of the bracket to a bracket-closed subspace, expressed
    /// in the RREF basis of the subspace.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieAlgebra, LieError> {
        let d = s.dim();
        let mut entries = Vec::new();
        for a in 0..d {
            for b in (a + 1)..d {
                let w = self.bracket(&s.basis()[a], &s.basis()[b]);
                let coords = s.coords_of(&w).ok_or(LieError::NotClosed)?;
                entries.push(((a, b), coords));
            }
        }
        LieAlgebra::from_brackets(&self.ctx, d, entries)
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra, LieError> {
        if self.ctx != other.ctx {
            return Err(LieError::FieldMismatch);
        }
        let n1 = self.dim;
        let n = n1 + other.dim;
        let mut entries = Vec::new();
        for (&(i, j), v) in &self.sc {
            let mut w = vec![FieldElem::ZERO; n];
            w[..n1].copy_from_slice(v);
            entries.push(((i, j), w));
        }
        for (&(i, j), v) in &other.sc {
            let mut w = vec![FieldElem::ZERO; n];
            w[n1..].copy_from_slice(v);
            entries.push(((i + n1, j + n1), w));
        }
        LieAlgebra::from_brackets(&self.ctx, n, entries)
    }

    /// Same structure constants over the target field of an embedding.
    pub fn map_scalars(&self, emb: &FieldEmbedding) -> LieAlgebra {
        let sc = self
            .sc
            .iter()
            .map(|(&k, v)| (k, v.iter().map(|&e| emb.apply(e)).collect()))
            .collect();
        LieAlgebra {
            ctx: emb.to.clone(),
            dim: self.dim,
            sc,
            labels: self.labels.clone(),
            certified_simple: false,
        }
    }

    /// g tensored up to the degree-k extension of its base field.
    pub fn extend_scalars(&self, k: u32) -> Result<LieAlgebra, LieError> {
        if k == 1 {
            return Ok(self.clone());
        }
        let target = FieldCtx::new(self.ctx.p(), self.ctx.k() * k, None)?;
        let emb = self.ctx.embed_into(&target)?;
        Ok(self.map_scalars(&emb))
    }

    /// Views an algebra over F_{p^k} as an algebra over F_p of dimension
    /// k*n; basis vector e_i expands to e_i, t*e_i, ..., t^{k-1}*e_i.
    pub fn restrict_scalars(&self) -> Result<LieAlgebra, LieError> {
        let k = self.ctx.k() as usize;
        if k == 1 {
            return Ok(self.clone());
        }
        let prime = FieldCtx::prime(self.ctx.p())?;
        let n = self.dim;
        let nn = n * k;
        let t = self.ctx.gen();
        // index (i, a) -> i*k + a for e_i * t^a
        let mut entries = Vec::new();
        for ia in 0..nn {
            for jb in (ia + 1)..nn {
                let (i, a) = (ia / k, ia % k);
                let (j, b) = (jb / k, jb % k);
                if i == j {
                    continue;
                }
                let base = self.bracket_basis(i, j);
                let tpow = self.ctx.pow(t, (a + b) as u64);
                let mut w = vec![FieldElem::ZERO; nn];
                for (m, &c) in base.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let coeffs = self.ctx.coeffs(self.ctx.mul(c, tpow));
                    for (s, &digit) in coeffs.iter().enumerate() {
                        if digit != 0 {
                            w[m * k + s] = prime.elem(digit as u64);
                        }
                    }
                }
                entries.push(((ia, jb), w));
            }
        }
        LieAlgebra::from_brackets(&prime, nn, entries)
    }

    /// Simplicity decision: a non-abelian algebra is simple iff the ideal
    /// closure of every nonzero vector is everything. Exhausts all q^n - 1
    /// nonzero vectors when that fits the budget; otherwise tests the
    /// documented deterministic sample (basis vectors, pairwise basis
    /// sums, the all-ones vector) and returns Unknown if all pass.
    pub fn simplicity(&self, budget: u64) -> SimplicityReport {
        let computed = self.simplicity_computed(budget);
        SimplicityReport { computed, certified_simple: self.certified_simple }
    }

    fn simplicity_computed(&self, budget: u64) -> Simplicity {
        let n = self.dim;
        if n == 0 {
            return Simplicity::NotSimple { witness: None, checked: 0 };
        }
        if self.is_abelian() {
            let witness = if n >= 2 {
                Some(Subspace::from_vectors(&self.ctx, n, vec![self.basis_vector(0)]))
            } else {
                None
            };
            return Simplicity::NotSimple { witness, checked: 0 };
        }
        let q = self.ctx.q();
        let total = q.checked_pow(n as u32);
        if let Some(total) = total {
            if total - 1 <= budget {
                let mut checked = 0u64;
                let mut digits = vec![0u64; n];
                for code in 1..total {
                    // canonical vector order: code digits base q, e_1 fastest
                    let mut c = code;
                    for d in digits.iter_mut() {
                        *d = c % q;
                        c /= q;
                    }
                    let v: Vec<FieldElem> =
                        digits.iter().map(|&d| self.ctx.elem(d)).collect();
                    checked += 1;
                    let closure = self.ideal_closure(&Subspace::from_vectors(
                        &self.ctx,
                        n,
                        vec![v],
                    ));
                    if !closure.is_full() {
                        return Simplicity::NotSimple { witness: Some(closure), checked };
                    }
                }
                return Simplicity::Simple { checked };
            }
        }
        // deterministic sample fallback
        let mut sample: Vec<Vec<FieldElem>> = Vec::new();
        for i in 0..n {
            sample.push(self.basis_vector(i));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut v = self.basis_vector(i);
                v[j] = FieldElem::ONE;
                sample.push(v);
            }
        }
        sample.push(vec![FieldElem::ONE; n]);
        let mut checked = 0u64;
        for v in sample {
            checked += 1;
            let closure =
                self.ideal_closure(&Subspace::from_vectors(&self.ctx, n, vec![v]));
            if !closure.is_full() {
                return Simplicity::NotSimple { witness: Some(closure), checked };
            }
        }
        Simplicity::Unknown { checked }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

/// Terms of a derived or lower central series, strictly decreasing; the
/// last term is either zero or the nonzero stable term.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized_nonzero: bool,
}

impl SeriesReport {
    /// Number of steps to reach zero; None when the series stabilizes at
    /// a nonzero term.
    pub fn length(&self) -> Option<usize> {
        if self.stabilized_nonzero {
            None
        } else {
            Some(self.terms.len() - 1)
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }
}

#[derive(Debug, Clone)]
pub enum Simplicity {
    Simple { checked: u64 },
    NotSimple { witness: Option<Subspace>, checked: u64 },
    Unknown { checked: u64 },
}

/// Computed simplicity verdict next to any constructor-attached
/// certificate; neither silently overrides the other.
#[derive(Debug, Clone)]
pub struct SimplicityReport {
    pub computed: Simplicity,
    pub certified_simple: bool,
}

impl SimplicityReport {
    /// Simple by exhaustive computation, or Unknown-but-certified.
    pub fn effective_simple(&self) -> bool {
        match self.computed {
            Simplicity::Simple { .. } => true,
            Simplicity::NotSimple { .. } => false,
            Simplicity::Unknown { .. } => self.certified_simple,
        }
    }

    pub fn verdict_str(&self) -> &'static str {
        match self.computed {
            Simplicity::Simple { .. } => "simple",
            Simplicity::NotSimple { .. } => "not simple",
            Simplicity::Unknown { .. } => {
                if self.certified_simple {
                    "unknown (certified simple by construction)"
                } else {
                    "unknown"
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn f2() -> FieldCtx {
        FieldCtx::prime(2).unwrap()
    }

    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    #[test]
    fn storage_convention_enforced() {
        let f = f2();
        let err = LieAlgebra::from_brackets(
            &f,
            2,
            vec![((1usize, 0usize), vec![f.one(), f.zero()])],
        )
        .unwrap_err();
        assert!(matches!(err, LieError::BadKey { .. }));
    }

    #[test]
    fn builtins_validate() {
        assert!(construct::builtin("w3").unwrap().validate().is_ok());
        assert!(construct::builtin("g6").unwrap().validate().is_ok());
        assert!(construct::builtin("psl3f3-table").unwrap().validate().is_ok());
    }

    #[test]
    fn validate_reports_failing_triple() {
        // sl2-like data with [e1,e2] changed from e3 to e4-direction junk:
        // over F_5 take [e1,e2]=e1, [e1,e3]=-2e1, [e2,e3]=e2 which breaks Jacobi
        let f = f5();
        let g = LieAlgebra::from_brackets(
            &f,
            3,
            vec![
                ((0usize, 1usize), vec![f.zero(), f.zero(), f.one()]),
                ((0, 2), vec![f.elem(3), f.zero(), f.zero()]),
                ((1, 2), vec![f.zero(), f.one(), f.zero()]),
            ],
        )
        .unwrap();
        let err = g.validate().unwrap_err();
        assert_eq!(err.triple, (0, 1, 2));
    }

    #[test]
    fn bracket_examples() {
        let w3 = construct::builtin("w3").unwrap();
        // [e,f] = h
        let h = w3.bracket(&w3.basis_vector(0), &w3.basis_vector(1));
        assert_eq!(h, w3.basis_vector(2));
        // alternating on vectors
        let f = w3.ctx().clone();
        let x = vec![f.one(), f.one(), f.zero()];
        assert!(w3.bracket(&x, &x).iter().all(|e| e.is_zero()));

        let psl = construct::builtin("psl3f3-table").unwrap();
        // [e1, e4] = e2
        assert_eq!(psl.bracket_basis(0, 3), psl.basis_vector(1));
        // [e2, e5] = 2 e7
        let f3 = psl.ctx().clone();
        let mut expect = vec![FieldElem::ZERO; 7];
        expect[6] = f3.elem(2);
        assert_eq!(psl.bracket_basis(1, 4), expect);
    }

    #[test]
    fn product_space_and_perfect() {
        let w3 = construct::builtin("w3").unwrap();
        let full = w3.full_space();
        assert!(w3.product_space(&full, &full).is_full());

        let psl = construct::builtin("psl3f3-table").unwrap();
        assert!(psl.is_perfect());

        // [Z, g] = 0
        let sl3 = construct::sl(3, &f3()).unwrap();
        let z = sl3.center();
        assert_eq!(z.dim(), 1);
        assert!(sl3.product_space(&z, &sl3.full_space()).is_zero());
    }

    #[test]
    fn series_examples() {
        let f3 = f3();
        // 2-dim algebra [e1,e2] = e2: derived length 2
        let g = LieAlgebra::from_brackets(
            &f3,
            2,
            vec![((0usize, 1usize), vec![f3.zero(), f3.one()])],
        )
        .unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(g.derived_length(), Some(2));
        let rep = g.series(SeriesKind::Derived);
        assert_eq!(rep.dims(), vec![2, 1, 0]);

        let ab = LieAlgebra::abelian(&f3, 4);
        assert_eq!(ab.derived_length(), Some(1));

        // psl_3(F_3) is perfect: derived series stabilizes at the full space
        let psl = construct::builtin("psl3f3-table").unwrap();
        let rep = psl.series(SeriesKind::Derived);
        assert!(rep.stabilized_nonzero);
        assert!(rep.terms.last().unwrap().is_full());
        assert_eq!(psl.derived_length(), None);
        assert!(!psl.is_solvable());
    }

    #[test]
    fn center_examples() {
        let sl3 = construct::sl(3, &f3()).unwrap();
        let z = sl3.center();
        assert_eq!(z.dim(), 1);
        // spanned by the image of the identity: e7 + 2 e8 in the sl basis
        let f3 = f3();
        let mut id_img = vec![FieldElem::ZERO; 8];
        id_img[6] = f3.one();
        id_img[7] = f3.elem(2);
        assert!(z.contains(&id_img));

        let sl2 = construct::sl(2, &f5()).unwrap();
        assert!(sl2.center().is_zero());

        let ab = LieAlgebra::abelian(&f3, 3);
        assert!(ab.center().is_full());
    }

    #[test]
    fn ideal_closure_examples() {
        let psl = construct::builtin("psl3f3-table").unwrap();
        let s = Subspace::from_vectors(psl.ctx(), 7, vec![psl.basis_vector(0)]);
        assert!(psl.ideal_closure(&s).is_full());

        let sl3 = construct::sl(3, &f3()).unwrap();
        let z = sl3.center();
        assert_eq!(sl3.ideal_closure(&z), z);
    }

    #[test]
    fn quotient_examples() {
        let f3 = f3();
        let sl3 = construct::sl(3, &f3).unwrap();
        let (psl, proj) = sl3.quotient(&sl3.center()).unwrap();
        assert_eq!(psl.dim(), 7);
        assert!(psl.validate().is_ok());
        assert_eq!(proj.rows(), 7);
        assert_eq!(proj.cols(), 8);

        // quotient by the zero ideal is an isomorphic copy
        let w3 = construct::builtin("w3").unwrap();
        let (same, _) = w3.quotient(&Subspace::zero(w3.ctx(), 3)).unwrap();
        assert_eq!(same.brackets(), w3.brackets());

        // not an ideal: span{e1} in w3 ([e1,e3] = e1 but [e1,e2] = e3)
        let s = Subspace::from_vectors(w3.ctx(), 3, vec![w3.basis_vector(0)]);
        assert_eq!(w3.quotient(&s).unwrap_err(), LieError::NotAnIdeal);
    }

    #[test]
    fn quotient_sl3_matches_paper_table() {
        let sl3 = construct::sl(3, &f3()).unwrap();
        let (psl, _) = sl3.quotient(&sl3.center()).unwrap();
        let table = construct::builtin("psl3f3-table").unwrap();
        assert_eq!(psl.brackets(), table.brackets());
    }

    #[test]
    fn direct_sum_examples() {
        let w3 = construct::builtin("w3").unwrap();
        let s = w3.direct_sum(&w3).unwrap();
        assert_eq!(s.dim(), 6);
        assert!(s.validate().is_ok());
        // both copies are ideals
        let ctx = s.ctx().clone();
        let left = Subspace::from_vectors(
            &ctx,
            6,
            (0..3).map(|i| s.basis_vector(i)).collect(),
        );
        let right = Subspace::from_vectors(
            &ctx,
            6,
            (3..6).map(|i| s.basis_vector(i)).collect(),
        );
        assert!(s.is_ideal(&left));
        assert!(s.is_ideal(&right));

        let zero = LieAlgebra::abelian(w3.ctx(), 0);
        let same = w3.direct_sum(&zero).unwrap();
        assert_eq!(same.brackets(), w3.brackets());
    }

    #[test]
    fn scalar_extension_and_restriction() {
        let w3 = construct::builtin("w3").unwrap();
        let same = w3.extend_scalars(1).unwrap();
        assert_eq!(same.brackets(), w3.brackets());

        let w3f4 = w3.extend_scalars(2).unwrap();
        assert_eq!(w3f4.ctx().q(), 4);
        assert!(w3f4.validate().is_ok());
        assert_eq!(w3f4.derived_length(), w3.derived_length());

        let restricted = w3f4.restrict_scalars().unwrap();
        assert_eq!(restricted.dim(), 6);
        assert_eq!(restricted.ctx().q(), 2);
        assert!(restricted.validate().is_ok());
        assert_eq!(restricted.is_solvable(), w3f4.is_solvable());
    }

    #[test]
    fn simplicity_examples() {
        let psl = construct::builtin("psl3f3-table").unwrap();
        let rep = psl.simplicity(SIMPLICITY_BUDGET);
        match rep.computed {
            Simplicity::Simple { checked } => assert_eq!(checked, 3u64.pow(7) - 1),
            _ => panic!("psl_3(F_3) must be simple"),
        }

        let w3 = construct::builtin("w3").unwrap();
        assert!(w3.simplicity(SIMPLICITY_BUDGET).effective_simple());

        let sl3 = construct::sl(3, &f3()).unwrap();
        let rep = sl3.simplicity(SIMPLICITY_BUDGET);
        match &rep.computed {
            Simplicity::NotSimple { witness, .. } => {
                let w = witness.as_ref().unwrap();
                assert_eq!(*w, sl3.ideal_closure(&sl3.center()));
            }
            _ => panic!("sl_3(F_3) is not simple"),
        }
        assert!(!rep.effective_simple());

        // simple => center zero and perfect
        assert!(psl.center().is_zero());
        assert!(psl.is_perfect());
    }

    #[test]
    fn jacobi_on_random_vector_triples() {
        // bilinear extension satisfies Jacobi once basis triples do
        let g = construct::builtin("g6").unwrap();
        let ctx = g.ctx().clone();
        let mut seed = 0x7fff_1234u64;
        let mut rnd = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..20 {
            let x: Vec<FieldElem> = (0..6).map(|_| ctx.elem(rnd() % 2)).collect();
            let y: Vec<FieldElem> = (0..6).map(|_| ctx.elem(rnd() % 2)).collect();
            let z: Vec<FieldElem> = (0..6).map(|_| ctx.elem(rnd() % 2)).collect();
            let t1 = g.bracket(&x, &g.bracket(&y, &z));
            let t2 = g.bracket(&y, &g.bracket(&z, &x));
            let t3 = g.bracket(&z, &g.bracket(&x, &y));
            for i in 0..6 {
                assert!(ctx.add(ctx.add(t1[i], t2[i]), t3[i]).is_zero());
            }
        }
    }

    #[test]
    fn derived_terms_are_ideals_with_abelian_quotients() {
        for g in [
            construct::sl(2, &f5()).unwrap(),
            construct::builtin("g6").unwrap(),
            construct::sl(3, &f3()).unwrap(),
        ] {
            let rep = g.series(SeriesKind::Derived);
            for pair in rep.terms.windows(2) {
                assert!(g.is_ideal(&pair[0]));
                // [T_i, T_i] subset T_{i+1}
                let prod = g.product_space(&pair[0], &pair[0]);
                assert!(pair[1].contains_subspace(&prod));
            }
        }
    }
}
