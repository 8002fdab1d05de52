//! Derivation algebra Der(g), inner derivations, the induced Lie
//! structure on Out(g) = Der(g)/Inn(g), the centroid, and central
//! simplicity.

use crate::field::FieldElem;
use crate::lie::{LieAlgebra, SeriesKind, SeriesReport, SimplicityReport, SIMPLICITY_BUDGET};
use crate::matrix::{Mat, SpanAcc, Subspace};

/// Der(g) with the inner/complement split and the outer algebra.
///
/// `der_basis` is the canonical kernel basis of the derivation system;
/// `inn_basis` the canonical basis of span{ad x}; `complement` the
/// der_basis members that extend inn_basis to a basis of Der(g), in
/// canonical order. `out` carries the bracket of the complement images.
pub struct DerAlgebra {
    pub base: LieAlgebra,
    pub der_basis: Vec<Mat>,
    pub inn_basis: Vec<Mat>,
    pub complement: Vec<Mat>,
    pub out: LieAlgebra,
    /// rows: inn_basis then complement, flattened; the coordinate system
    /// used by `project`.
    basis_rows: Mat,
}

impl DerAlgebra {
    pub fn der_dim(&self) -> usize {
        self.der_basis.len()
    }

    pub fn inn_dim(&self) -> usize {
        self.inn_basis.len()
    }

    pub fn out_dim(&self) -> usize {
        self.complement.len()
    }

    /// Coordinates of a derivation in the (inn, complement) basis;
    /// None if the matrix is not a derivation of the base algebra.
    pub fn project(&self, d: &Mat) -> Option<(Vec<FieldElem>, Vec<FieldElem>)> {
        let flat = d.flatten();
        let rhs = Mat::from_fn(self.base.ctx(), flat.len(), 1, |i, _| flat[i]);
        let sol = self.basis_rows.transpose().solve_multi(&rhs)?;
        let coords = sol.col(0);
        let r = self.inn_dim();
        Some((coords[..r].to_vec(), coords[r..].to_vec()))
    }

    /// Leibniz re-check of a single matrix on all basis pairs.
    pub fn is_derivation(&self, d: &Mat) -> bool {
        is_derivation_of(&self.base, d)
    }
}

pub fn is_derivation_of(g: &LieAlgebra, d: &Mat) -> bool {
    let n = g.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = d.apply(&g.bracket_basis(i, j));
            let rhs1 = g.bracket(&d.col(i), &g.basis_vector(j));
            let rhs2 = g.bracket(&g.basis_vector(i), &d.col(j));
            for m in 0..n {
                if lhs[m] != g.ctx().add(rhs1[m], rhs2[m]) {
                    return false;
                }
            }
        }
    }
    true
}

/// The derivation system: one n-row block per basis pair i < j over the
/// n^2 unknowns D_{ab}, assembled pair-major.
fn derivation_system(g: &LieAlgebra) -> Mat {
    let n = g.dim();
    let ctx = g.ctx();
    let mut m = Mat::zeros(ctx, n * n * (n - 1) / 2, n * n);
    let mut block = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let cij = g.bracket_basis(i, j);
            for (k, &c) in cij.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // + c_{ij}^k D_{mk} at row m
                for r in 0..n {
                    let row = block * n + r;
                    let col = r * n + k;
                    m.set(row, col, ctx.add(m.get(row, col), c));
                }
            }
            for a in 0..n {
                // - [D e_i, e_j]: coefficient -c(a,j)_m at var (a, i)
                let caj = g.bracket_basis(a, j);
                for (r, &c) in caj.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let row = block * n + r;
                    let col = a * n + i;
                    m.set(row, col, ctx.sub(m.get(row, col), c));
                }
                // - [e_i, D e_j]: coefficient -c(i,a)_m at var (a, j)
                let cia = g.bracket_basis(i, a);
                for (r, &c) in cia.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let row = block * n + r;
                    let col = a * n + j;
                    m.set(row, col, ctx.sub(m.get(row, col), c));
                }
            }
            block += 1;
        }
    }
    m
}

/// Canonical basis of Der(g) as matrices (kernel of the derivation
/// system), without the inner/outer split.
pub fn derivation_space(g: &LieAlgebra) -> Vec<Mat> {
    let n = g.dim();
    let kernel = derivation_system(g).kernel();
    kernel
        .basis()
        .iter()
        .map(|v| Mat::from_flat(g.ctx(), n, n, v.clone()))
        .collect()
}

/// Computes Der(g), Inn(g), the canonical complement and the Lie
/// structure on Out(g); the Out table is validated before returning.
pub fn derivations(g: &LieAlgebra) -> DerAlgebra {
    let n = g.dim();
    let ctx = g.ctx().clone();
    let der_basis = derivation_space(g);

    // inner span
    let ad_flat: Vec<Vec<FieldElem>> = (0..n).map(|i| g.ad_basis(i).flatten()).collect();
    let inn_space = Subspace::from_vectors(&ctx, n * n, ad_flat);
    let inn_basis: Vec<Mat> = inn_space
        .basis()
        .iter()
        .map(|v| Mat::from_flat(&ctx, n, n, v.clone()))
        .collect();
    debug_assert_eq!(inn_basis.len(), n - g.center().dim());

    // complement: der_basis members independent of Inn, in canonical order
    let mut acc = SpanAcc::new(&ctx, n * n);
    for v in inn_space.basis() {
        acc.add_vector(v);
    }
    let mut complement = Vec::new();
    for d in &der_basis {
        if acc.add_vector(&d.flatten()) {
            complement.push(d.clone());
        }
    }

    let r = inn_basis.len();
    let m = complement.len();
    let mut rows = Vec::with_capacity(r + m);
    for b in &inn_basis {
        rows.push(b.flatten());
    }
    for c in &complement {
        rows.push(c.flatten());
    }
    let basis_rows = Mat::from_rows(&ctx, rows);

    // Out structure constants: commutators of complement reps, reduced
    // modulo Inn
    let mut pairs = Vec::new();
    let mut comms = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            pairs.push((a, b));
            comms.push(
                complement[a]
                    .matmul(&complement[b])
                    .sub(&complement[b].matmul(&complement[a])),
            );
        }
    }
    let mut entries = Vec::new();
    if !pairs.is_empty() {
        let rhs = Mat::from_fn(&ctx, n * n, pairs.len(), |i, c| {
            comms[c].get(i / n, i % n)
        });
        let sol = basis_rows
            .transpose()
            .solve_multi(&rhs)
            .expect("Der(g) is closed under commutators");
        for (c, &(a, b)) in pairs.iter().enumerate() {
            let coords = sol.col(c);
            entries.push(((a, b), coords[r..].to_vec()));
        }
    }
    let out = LieAlgebra::from_brackets(&ctx, m, entries).expect("out table well formed");
    out.validate().expect("Out(g) satisfies Jacobi");

    DerAlgebra { base: g.clone(), der_basis, inn_basis, complement, out, basis_rows }
}

/// Derived series of Out(g).
pub fn out_solvability(d: &DerAlgebra) -> SeriesReport {
    d.out.series(SeriesKind::Derived)
}

/// Shape of Out(g)^(1): its dimension, nilpotency class and center
/// dimension. The 3-dimensional Heisenberg algebra reads (3, 2, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergProfile {
    pub derived_dim: usize,
    pub nilpotency_class: Option<usize>,
    pub center_dim: Option<usize>,
}

pub fn out_heisenberg_profile(d: &DerAlgebra) -> HeisenbergProfile {
    let full = d.out.full_space();
    let derived = d.out.product_space(&full, &full);
    if derived.is_zero() {
        return HeisenbergProfile { derived_dim: 0, nilpotency_class: None, center_dim: None };
    }
    let sub = d.out.subalgebra_on(&derived).expect("derived subalgebra is closed");
    let class = sub.series(SeriesKind::LowerCentral).length();
    HeisenbergProfile {
        derived_dim: derived.dim(),
        nilpotency_class: class,
        center_dim: Some(sub.center().dim()),
    }
}

/// The centroid: all matrices with phi([x,y]) = [phi(x), y].
pub struct Centroid {
    pub basis: Vec<Mat>,
}

impl Centroid {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Kernel of the commutant system over all ordered basis pairs:
/// phi([e_i,e_j]) = [phi(e_i), e_j].
pub fn centroid(g: &LieAlgebra) -> Centroid {
    let n = g.dim();
    let ctx = g.ctx();
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let cij = g.bracket_basis(i, j);
            let mut block = vec![vec![FieldElem::ZERO; n * n]; n];
            // phi([e_i,e_j])_r = sum_k c_{ij}^k phi_{rk}
            for (k, &c) in cij.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (r, row) in block.iter_mut().enumerate() {
                    row[r * n + k] = ctx.add(row[r * n + k], c);
                }
            }
            // - [phi(e_i), e_j]_r = - sum_a phi_{ai} c(a,j)_r
            for a in 0..n {
                let caj = g.bracket_basis(a, j);
                for (r, &c) in caj.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    block[r][a * n + i] = ctx.sub(block[r][a * n + i], c);
                }
            }
            rows.extend(block);
        }
    }
    let sys = Mat::from_rows(ctx, rows);
    let kernel = sys.kernel();
    let basis = kernel
        .basis()
        .iter()
        .map(|v| Mat::from_flat(ctx, n, n, v.clone()))
        .collect();
    Centroid { basis }
}

/// Simplicity report, centroid dimension and the combined verdict:
/// central simple means simple with one-dimensional centroid.
pub struct CentralSimplicity {
    pub simplicity: SimplicityReport,
    pub centroid_dim: usize,
    pub central_simple: bool,
}

pub fn central_simplicity(g: &LieAlgebra) -> CentralSimplicity {
    let simplicity = g.simplicity(SIMPLICITY_BUDGET);
    let centroid_dim = centroid(g).dim();
    let central_simple = simplicity.effective_simple() && centroid_dim == 1;
    CentralSimplicity { simplicity, centroid_dim, central_simple }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::field::FieldCtx;
    use crate::lie::Simplicity;

    fn f(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    #[test]
    fn psl3_f3_derivation_dimensions() {
        let g = construct::psl(3, &f(3)).unwrap();
        let d = derivations(&g);
        assert_eq!(d.der_dim(), 14);
        assert_eq!(d.inn_dim(), 7);
        assert_eq!(d.out_dim(), 7);
        // Out is non-solvable: Out^(1) = Out
        let rep = out_solvability(&d);
        assert!(rep.stabilized_nonzero);
        assert!(rep.terms.last().unwrap().is_full());
        // and simple
        let s = d.out.simplicity(SIMPLICITY_BUDGET);
        assert!(matches!(s.computed, Simplicity::Simple { .. }));
    }

    #[test]
    fn abelian_derivations_are_all_matrices() {
        let g = crate::lie::LieAlgebra::abelian(&f(3), 3);
        let d = derivations(&g);
        assert_eq!(d.der_dim(), 9);
        assert_eq!(d.inn_dim(), 0);
        assert_eq!(d.out_dim(), 9);
    }

    #[test]
    fn derivations_satisfy_leibniz_and_inn_is_ideal() {
        for g in [
            construct::builtin("w3").unwrap(),
            construct::builtin("g6").unwrap(),
            construct::sl(2, &f(5)).unwrap(),
            construct::jacobson_witt(1, &f(5)).unwrap(),
        ] {
            let d = derivations(&g);
            for m in &d.der_basis {
                assert!(d.is_derivation(m));
            }
            // [D, ad x] = ad(D x) for basis x and all D
            for dm in &d.der_basis {
                for i in 0..g.dim() {
                    let adx = g.ad_basis(i);
                    let lhs = dm.matmul(&adx).sub(&adx.matmul(dm));
                    let rhs = g.ad(&dm.col(i));
                    assert_eq!(lhs, rhs);
                }
            }
            // dim Out = dim Der - n + dim center
            assert_eq!(
                d.out_dim(),
                d.der_dim() - g.dim() + g.center().dim()
            );
        }
    }

    #[test]
    fn witt_f5_out_is_abelian() {
        // W(1;1) over F_5 is restricted, so it is its own p-envelope and
        // every derivation is inner: Out = 0, trivially abelian.
        let g = construct::jacobson_witt(1, &f(5)).unwrap();
        let d = derivations(&g);
        assert_eq!(d.out_dim(), 0);
        let rep = out_solvability(&d);
        assert!(rep.length().unwrap_or(usize::MAX) <= 1, "derived length <= 1 for type W");
        let prof = out_heisenberg_profile(&d);
        assert_eq!(prof.derived_dim, 0);
    }

    #[test]
    fn hamiltonian_f5_out_derived_length_three() {
        let g = construct::hamiltonian_p2(&f(5)).unwrap();
        let d = derivations(&g);
        assert_eq!((d.der_dim(), d.inn_dim(), d.out_dim()), (27, 23, 4));
        let rep = out_solvability(&d);
        assert_eq!(rep.length(), Some(3));
        let prof = out_heisenberg_profile(&d);
        assert_eq!(
            prof,
            HeisenbergProfile {
                derived_dim: 3,
                nilpotency_class: Some(2),
                center_dim: Some(1)
            }
        );
    }

    #[test]
    fn psl5_f5_outer_dimensions() {
        let g = construct::psl(5, &f(5)).unwrap();
        let d = derivations(&g);
        assert_eq!((d.der_dim(), d.inn_dim(), d.out_dim()), (24, 23, 1));
        let rep = out_solvability(&d);
        assert_eq!(rep.length(), Some(1), "Out is abelian");
        let prof = out_heisenberg_profile(&d);
        assert_eq!(prof.derived_dim, 0);
    }

    #[test]
    fn centroid_examples() {
        let w3 = construct::builtin("w3").unwrap();
        let c = centroid(&w3);
        assert_eq!(c.dim(), 1);
        let cs = central_simplicity(&w3);
        assert!(cs.central_simple);

        let g6 = construct::builtin("g6").unwrap();
        let c = centroid(&g6);
        assert_eq!(c.dim(), 2);
        let cs = central_simplicity(&g6);
        assert!(cs.simplicity.effective_simple());
        assert!(!cs.central_simple);

        let sl2 = construct::sl(2, &f(5)).unwrap();
        assert_eq!(centroid(&sl2).dim(), 1);
        assert!(central_simplicity(&sl2).central_simple);
    }

    #[test]
    fn centroid_contains_identity_and_is_a_field_for_simple_g() {
        for g in [construct::builtin("w3").unwrap(), construct::builtin("g6").unwrap()] {
            let c = centroid(&g);
            let n = g.dim();
            let ctx = g.ctx().clone();
            let id = Mat::identity(&ctx, n);
            // identity is in the span
            let rows: Vec<Vec<FieldElem>> = c.basis.iter().map(|b| b.flatten()).collect();
            let space = Subspace::from_vectors(&ctx, n * n, rows);
            assert!(space.contains(&id.flatten()));
            // closed under products and inverses of nonzero elements
            // (exhaustive for dim <= 2 over q <= 4)
            assert!(c.dim() <= 2 && ctx.q() <= 4);
            let qd = (ctx.q() as usize).pow(c.dim() as u32);
            for code_a in 0..qd {
                for code_b in 0..qd {
                    let lift = |code: usize| {
                        let mut m = Mat::zeros(&ctx, n, n);
                        let mut cc = code;
                        for b in &c.basis {
                            let coef = ctx.elem((cc % ctx.q() as usize) as u64);
                            cc /= ctx.q() as usize;
                            m = m.add(&b.scale(coef));
                        }
                        m
                    };
                    let prod = lift(code_a).matmul(&lift(code_b));
                    assert!(space.contains(&prod.flatten()));
                }
            }
            // nonzero elements invertible
            for code in 1..qd {
                let mut m = Mat::zeros(&ctx, n, n);
                let mut cc = code;
                for b in &c.basis {
                    let coef = ctx.elem((cc % ctx.q() as usize) as u64);
                    cc /= ctx.q() as usize;
                    m = m.add(&b.scale(coef));
                }
                if m.is_zero() {
                    continue;
                }
                assert_eq!(m.rank(), n, "nonzero centroid element is invertible");
            }
        }
    }

    #[test]
    fn simple_p5_algebras_have_out_of_derived_length_at_most_three() {
        for g in [
            construct::sl(2, &f(5)).unwrap(),
            construct::psl(5, &f(5)).unwrap(),
            construct::jacobson_witt(1, &f(5)).unwrap(),
            construct::hamiltonian_p2(&f(5)).unwrap(),
        ] {
            let d = derivations(&g);
            let rep = out_solvability(&d);
            let len = rep.length().expect("Out solvable for simple p > 3");
            assert!(len <= 3, "derived length {} exceeds 3", len);
        }
    }

    #[test]
    fn project_splits_inner_and_outer_parts() {
        let g = construct::psl(3, &f(3)).unwrap();
        let d = derivations(&g);
        // ad of a basis vector projects to inner coordinates only
        let adx = g.ad_basis(0);
        let (inn, out) = d.project(&adx).unwrap();
        assert!(out.iter().all(|e| e.is_zero()));
        assert!(inn.iter().any(|e| !e.is_zero()));
        // a complement member projects to a single outer coordinate
        let (inn, out) = d.project(&d.complement[0]).unwrap();
        assert!(inn.iter().all(|e| e.is_zero()));
        assert_eq!(out.iter().filter(|e| !e.is_zero()).count(), 1);
    }
}
