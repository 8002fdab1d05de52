//! The taut property: every homomorphism g -> Der(g) must land in
//! Inn(g). Decided through a criteria chain; the interesting case is the
//! exhaustive search for a section Out(g) -> Der(g) splitting
//! 0 -> Inn -> Der -> Out -> 0.

use crate::derivation::{derivations, is_derivation_of, out_solvability, DerAlgebra};
use crate::field::FieldElem;
use crate::lie::{LieAlgebra, SIMPLICITY_BUDGET};
use crate::matrix::Mat;
use crate::polysolve::{solve_all, Monomial, MultiPoly, PolySystem};
use std::fmt;

/// A linear section s(o_j) = d_j + sum_i A_ij inn_i of the projection
/// Der -> Out, in the (inn, complement) coordinates.
#[derive(Clone, Debug)]
pub struct Section {
    /// r x m block A.
    pub a: Mat,
    /// s(o_j) as explicit matrices, one per Out basis vector.
    pub maps: Vec<Mat>,
}

#[derive(Clone, Debug)]
pub enum SplitSearch {
    /// A verified section, first in canonical solution order.
    Found { section: Section, nodes: u64 },
    /// The search was exhaustive and no section exists.
    NoneComplete { nodes: u64 },
    /// Budget ran out before the search finished.
    Inconclusive { nodes: u64 },
}

/// Searches for a Lie algebra section of Der(g) -> Out(g). Any section
/// fixes the complement part, so the affine family d_j + A-block is
/// exactly the space of candidate sections and exhausting the A-search
/// is exhausting all sections. The homomorphism conditions on Out basis
/// pairs form a quadratic system in the m*r unknowns A_ij, solved
/// exhaustively; variables are numbered column-major so the search
/// effectively guesses one column at a time.
pub fn split_section_search(d: &DerAlgebra, budget: u64) -> SplitSearch {
    let ctx = d.base.ctx().clone();
    let r = d.inn_dim();
    let m = d.out_dim();
    if m == 0 {
        // vacuous section: the zero map splits trivially
        return SplitSearch::Found {
            section: Section { a: Mat::zeros(&ctx, r, 0), maps: Vec::new() },
            nodes: 0,
        };
    }

    // coordinates of all needed commutators in the (inn, complement) basis
    let mut queries: Vec<Mat> = Vec::new();
    let dd_base = 0;
    for a in 0..m {
        for b in (a + 1)..m {
            queries.push(
                d.complement[a]
                    .matmul(&d.complement[b])
                    .sub(&d.complement[b].matmul(&d.complement[a])),
            );
        }
    }
    let di_base = queries.len();
    for a in 0..m {
        for i in 0..r {
            queries.push(
                d.complement[a]
                    .matmul(&d.inn_basis[i])
                    .sub(&d.inn_basis[i].matmul(&d.complement[a])),
            );
        }
    }
    let ii_base = queries.len();
    for i in 0..r {
        for j in 0..r {
            queries.push(
                d.inn_basis[i]
                    .matmul(&d.inn_basis[j])
                    .sub(&d.inn_basis[j].matmul(&d.inn_basis[i])),
            );
        }
    }
    let coords: Vec<(Vec<FieldElem>, Vec<FieldElem>)> = queries
        .iter()
        .map(|q| d.project(q).expect("Der(g) is closed under commutators"))
        .collect();
    let pair_idx = |a: usize, b: usize| dd_base + (a * (2 * m - a - 1)) / 2 + (b - a - 1);
    let di_idx = |a: usize, i: usize| di_base + a * r + i;
    let ii_idx = |i: usize, j: usize| ii_base + i * r + j;

    // unknown A_{ij} gets variable index j*r + i (column-major)
    let nvars = m * r;
    let var = |i: usize, j: usize| j * r + i;
    let mut equations: Vec<MultiPoly> = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            let osc = d.out.bracket_basis(a, b);
            let (dd_inn, dd_out) = &coords[pair_idx(a, b)];
            // the complement parts cancel identically
            debug_assert_eq!(dd_out, &osc);
            for w in 0..r {
                let mut eq = MultiPoly::zero(nvars);
                eq.add_term(&ctx, Monomial::one(), dd_inn[w]);
                for j in 0..r {
                    // + A_{jb} [d_a, inn_j]_w
                    let c = coords[di_idx(a, j)].0[w];
                    eq.add_term(&ctx, Monomial::var(var(j, b)), c);
                    // - A_{ja} [d_b, inn_j]_w
                    let c = coords[di_idx(b, j)].0[w];
                    eq.add_term(&ctx, Monomial::var(var(j, a)), ctx.neg(c));
                }
                for i in 0..r {
                    for j in 0..r {
                        if i == j {
                            continue;
                        }
                        let c = coords[ii_idx(i, j)].0[w];
                        if !c.is_zero() {
                            let mono =
                                Monomial::var(var(i, a)).mul(&Monomial::var(var(j, b)));
                            eq.add_term(&ctx, mono, c);
                        }
                    }
                }
                // - s([o_a, o_b]) inner part: - sum_c osc_c A_{wc}
                for (c_out, &oc) in osc.iter().enumerate() {
                    if !oc.is_zero() {
                        eq.add_term(&ctx, Monomial::var(var(w, c_out)), ctx.neg(oc));
                    }
                }
                if !eq.is_zero() {
                    equations.push(eq);
                }
            }
        }
    }

    if equations.is_empty() {
        // no constraints (for instance a 1-dimensional Out): A = 0 works
        let a = Mat::zeros(&ctx, r, m);
        let section = build_section(d, &a);
        verify_section(d, &section);
        return SplitSearch::Found { section, nodes: 0 };
    }

    let sys = PolySystem::new(&ctx, nvars, equations);
    let sol = solve_all(&sys, budget).expect("solver self-check");
    if let Some(point) = sol.points.first() {
        let mut a = Mat::zeros(&ctx, r, m);
        for j in 0..m {
            for i in 0..r {
                a.set(i, j, point[var(i, j)]);
            }
        }
        let section = build_section(d, &a);
        verify_section(d, &section);
        return SplitSearch::Found { section, nodes: sol.nodes };
    }
    if sol.complete {
        SplitSearch::NoneComplete { nodes: sol.nodes }
    } else {
        SplitSearch::Inconclusive { nodes: sol.nodes }
    }
}

fn build_section(d: &DerAlgebra, a: &Mat) -> Section {
    let r = d.inn_dim();
    let m = d.out_dim();
    let maps = (0..m)
        .map(|j| {
            let mut s = d.complement[j].clone();
            for i in 0..r {
                let c = a.get(i, j);
                if !c.is_zero() {
                    s = s.add(&d.inn_basis[i].scale(c));
                }
            }
            s
        })
        .collect();
    Section { a: a.clone(), maps }
}

/// Independent re-verification: pi(s(o_j)) = o_j and s is a Lie algebra
/// homomorphism, checked on explicit matrices, not through the solver.
fn verify_section(d: &DerAlgebra, s: &Section) {
    let m = d.out_dim();
    for j in 0..m {
        let (_, out) = d.project(&s.maps[j]).expect("section lands in Der");
        let expected: Vec<FieldElem> = (0..m)
            .map(|c| if c == j { FieldElem::ONE } else { FieldElem::ZERO })
            .collect();
        assert_eq!(out, expected, "pi(s(o_j)) = o_j");
    }
    let ctx = d.base.ctx();
    for a in 0..m {
        for b in (a + 1)..m {
            let lhs = s.maps[a].matmul(&s.maps[b]).sub(&s.maps[b].matmul(&s.maps[a]));
            let osc = d.out.bracket_basis(a, b);
            let mut rhs = Mat::zeros(ctx, d.base.dim(), d.base.dim());
            for (c, &oc) in osc.iter().enumerate() {
                if !oc.is_zero() {
                    rhs = rhs.add(&s.maps[c].scale(oc));
                }
            }
            assert_eq!(lhs, rhs, "section respects the Out bracket");
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TautTag {
    Taut,
    NotTaut,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TautReason {
    OutZero,
    OutSolvablePerfect,
    OutSmallerSimple,
    NoSplitSection,
    SplitSectionFound,
    InsufficientCriteria,
}

impl fmt::Display for TautReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TautReason::OutZero => "all derivations are inner",
            TautReason::OutSolvablePerfect => "g perfect with solvable Out(g)",
            TautReason::OutSmallerSimple => "g simple with dim Out(g) < dim g",
            TautReason::NoSplitSection => "no split section; search complete",
            TautReason::SplitSectionFound => "split section found",
            TautReason::InsufficientCriteria => "no applicable criterion",
        };
        write!(f, "{}", s)
    }
}

/// A witness for NotTaut: a verified homomorphism g -> Der(g) whose
/// image is not inside Inn(g), given as images of the basis vectors.
#[derive(Clone, Debug)]
pub struct TautWitness {
    pub images: Vec<Mat>,
}

#[derive(Clone, Debug)]
pub struct TautVerdict {
    pub tag: TautTag,
    pub reason: TautReason,
    /// Present exactly for NotTaut, re-verified.
    pub witness: Option<TautWitness>,
    /// Any section found, attached for inspection even when the verdict
    /// stays Unknown for lack of an isomorphism g = Out(g).
    pub section: Option<Section>,
    pub search_complete: Option<bool>,
    pub search_nodes: Option<u64>,
    pub notes: Vec<String>,
}

impl TautVerdict {
    fn plain(tag: TautTag, reason: TautReason) -> TautVerdict {
        TautVerdict {
            tag,
            reason,
            witness: None,
            section: None,
            search_complete: None,
            search_nodes: None,
            notes: Vec::new(),
        }
    }
}

/// Decision chain, first hit wins:
/// (1) Out = 0; (2) g perfect and Out solvable; (3) g simple and
/// dim Out < dim g; (4) g simple, dim Out = dim g, Out simple: run the
/// split-section search (no section complete -> taut; a section plus a
/// supplied or asserted isomorphism g = Out(g) -> not taut); otherwise
/// (5) Unknown.
pub fn is_taut(g: &LieAlgebra, budget: u64, theta: Option<&Mat>, assert_iso: bool) -> TautVerdict {
    let d = derivations(g);
    let n = g.dim();
    if d.out_dim() == 0 {
        return TautVerdict::plain(TautTag::Taut, TautReason::OutZero);
    }
    if g.is_perfect() && out_solvability(&d).length().is_some() {
        return TautVerdict::plain(TautTag::Taut, TautReason::OutSolvablePerfect);
    }
    let simple = g.simplicity(SIMPLICITY_BUDGET).effective_simple();
    if simple && d.out_dim() < n {
        return TautVerdict::plain(TautTag::Taut, TautReason::OutSmallerSimple);
    }
    if simple
        && d.out_dim() == n
        && d.out.simplicity(SIMPLICITY_BUDGET).effective_simple()
    {
        match split_section_search(&d, budget) {
            SplitSearch::NoneComplete { nodes } => {
                let mut v = TautVerdict::plain(TautTag::Taut, TautReason::NoSplitSection);
                v.search_complete = Some(true);
                v.search_nodes = Some(nodes);
                return v;
            }
            SplitSearch::Found { section, nodes } => {
                if let Some(theta) = theta {
                    match compose_witness(g, &d, &section, theta) {
                        Ok(witness) => {
                            let mut v = TautVerdict::plain(
                                TautTag::NotTaut,
                                TautReason::SplitSectionFound,
                            );
                            v.witness = Some(witness);
                            v.section = Some(section);
                            v.search_nodes = Some(nodes);
                            return v;
                        }
                        Err(msg) => {
                            let mut v = TautVerdict::plain(
                                TautTag::Unknown,
                                TautReason::SplitSectionFound,
                            );
                            v.section = Some(section);
                            v.search_nodes = Some(nodes);
                            v.notes.push(format!("supplied map rejected: {}", msg));
                            return v;
                        }
                    }
                }
                let mut v = TautVerdict::plain(
                    if assert_iso { TautTag::NotTaut } else { TautTag::Unknown },
                    TautReason::SplitSectionFound,
                );
                v.section = Some(section);
                v.search_nodes = Some(nodes);
                v.notes.push(if assert_iso {
                    "not-taut under the caller-asserted isomorphism g = Out(g)".to_string()
                } else {
                    "section attached; supply an isomorphism g = Out(g) to conclude not-taut"
                        .to_string()
                });
                return v;
            }
            SplitSearch::Inconclusive { nodes } => {
                let mut v =
                    TautVerdict::plain(TautTag::Unknown, TautReason::InsufficientCriteria);
                v.search_complete = Some(false);
                v.search_nodes = Some(nodes);
                v.notes.push("split-section search exhausted its budget".to_string());
                return v;
            }
        }
    }
    TautVerdict::plain(TautTag::Unknown, TautReason::InsufficientCriteria)
}

/// Builds and verifies the NotTaut witness x -> s(theta(x)) from an
/// isomorphism theta: g -> Out(g) (an n x n matrix of Out coordinates).
fn compose_witness(
    g: &LieAlgebra,
    d: &DerAlgebra,
    s: &Section,
    theta: &Mat,
) -> Result<TautWitness, String> {
    let n = g.dim();
    if theta.rows() != d.out_dim() || theta.cols() != n {
        return Err("theta has the wrong shape".to_string());
    }
    if theta.rank() != n {
        return Err("theta is not bijective".to_string());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = theta.apply(&g.bracket_basis(i, j));
            let rhs = d.out.bracket(&theta.col(i), &theta.col(j));
            if lhs != rhs {
                return Err("theta is not a homomorphism".to_string());
            }
        }
    }
    let ctx = g.ctx();
    let images: Vec<Mat> = (0..n)
        .map(|i| {
            let oc = theta.col(i);
            let mut m = Mat::zeros(ctx, n, n);
            for (c, &w) in oc.iter().enumerate() {
                if !w.is_zero() {
                    m = m.add(&s.maps[c].scale(w));
                }
            }
            m
        })
        .collect();
    // re-verify: homomorphism into Der with image not inside Inn
    for img in &images {
        if !is_derivation_of(g, img) {
            return Err("witness image is not a derivation".to_string());
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = images[i].matmul(&images[j]).sub(&images[j].matmul(&images[i]));
            let br = g.bracket_basis(i, j);
            let mut rhs = Mat::zeros(ctx, n, n);
            for (m, &c) in br.iter().enumerate() {
                if !c.is_zero() {
                    rhs = rhs.add(&images[m].scale(c));
                }
            }
            if lhs != rhs {
                return Err("witness is not a homomorphism".to_string());
            }
        }
    }
    let escapes_inn = images.iter().any(|img| {
        let (_, out) = d.project(img).expect("image is a derivation");
        out.iter().any(|c| !c.is_zero())
    });
    if !escapes_inn {
        return Err("witness image lies inside Inn(g)".to_string());
    }
    Ok(TautWitness { images })
}

/// Criterion-(2) harness: when g is perfect with solvable Out, the
/// stable derived term of Der(g) must lie inside Inn(g).
pub fn derived_limit_of_der_inside_inn(d: &DerAlgebra) -> bool {
    let ctx = d.base.ctx();
    let n = d.base.dim();
    let mut current: Vec<Mat> = d.der_basis.clone();
    loop {
        let mut span = crate::matrix::SpanAcc::new(ctx, n * n);
        for a in 0..current.len() {
            for b in (a + 1)..current.len() {
                let c = current[a].matmul(&current[b]).sub(&current[b].matmul(&current[a]));
                span.add_vector(&c.flatten());
            }
        }
        let next = span.into_subspace();
        let next_mats: Vec<Mat> = next
            .basis()
            .iter()
            .map(|v| Mat::from_flat(ctx, n, n, v.clone()))
            .collect();
        if next_mats.len() == current.len() {
            // stabilized: check containment in Inn
            let inn_rows: Vec<Vec<FieldElem>> =
                d.inn_basis.iter().map(|m| m.flatten()).collect();
            let inn = crate::matrix::Subspace::from_vectors(ctx, n * n, inn_rows);
            return next
                .basis()
                .iter()
                .all(|v| inn.contains(v));
        }
        current = next_mats;
    }
}
