//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Everything is exact arithmetic (zero tolerance); runtime bounds
//! are asserted where stated.
//!
//! Run with: cargo test --test acceptance -- --nocapture

use modlie::construct;
use modlie::cpa::{
    classify, commutator_formula_check, cpa_all, eigen_decompose, nh_properties, CpaTag,
    SymProduct,
};
use modlie::derivation::{
    central_simplicity, derivations, out_heisenberg_profile, out_solvability,
};
use modlie::field::{FieldCtx, FieldElem};
use modlie::format::{parse_lie, print_lie};
use modlie::lie::{LieAlgebra, Simplicity, SIMPLICITY_BUDGET};
use modlie::polysolve::{solve_all, Monomial, MultiPoly, PolySystem, DEFAULT_NODE_BUDGET};
use modlie::taut::{is_taut, split_section_search, SplitSearch, TautReason, TautTag};
use std::time::{Duration, Instant};

fn f(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

fn pass(criterion: &str, detail: &str) {
    println!("criterion {}: PASS ({})", criterion, detail);
}

fn timed<T>(bound: Duration, what: &str, run: impl FnOnce() -> T) -> T {
    let t0 = Instant::now();
    let out = run();
    let elapsed = t0.elapsed();
    assert!(
        elapsed <= bound,
        "{} took {:?}, over the stated bound {:?}",
        what,
        elapsed,
        bound
    );
    out
}

#[test]
fn criterion_01_psl3_derivation_algebra() {
    timed(Duration::from_secs(2), "criterion 1", || {
        let g = construct::psl(3, &f(3)).unwrap();
        assert_eq!(g.dim(), 7);
        let d = derivations(&g);
        assert_eq!(d.der_dim(), 14);
        assert_eq!(d.inn_dim(), 7);
        assert_eq!(d.out_dim(), 7);
        // Out^(1) = Out: non-solvable
        let rep = out_solvability(&d);
        assert!(rep.stabilized_nonzero);
        assert!(rep.terms.last().unwrap().is_full());
        // Out is simple by exhaustion
        let s = d.out.simplicity(SIMPLICITY_BUDGET);
        assert!(matches!(s.computed, Simplicity::Simple { .. }));
    });
    pass("1", "dim 7, Der 14, Inn 7, Out 7, Out non-solvable and simple");
}

#[test]
fn criterion_02_no_split_section() {
    timed(Duration::from_secs(300), "criterion 2", || {
        let quotient = construct::psl(3, &f(3)).unwrap();
        let table = construct::builtin("psl3f3-table").unwrap();
        let mut nodes_total = 0;
        for g in [&quotient, &table] {
            let d = derivations(g);
            match split_section_search(&d, DEFAULT_NODE_BUDGET) {
                SplitSearch::NoneComplete { nodes } => {
                    assert!(nodes <= 10_000_000);
                    nodes_total += nodes;
                }
                other => panic!("expected exhaustive no-section, got {:?}", other),
            }
        }
        pass(
            "2",
            &format!(
                "no section on either construction, searches complete ({} nodes total)",
                nodes_total
            ),
        );
    });
}

#[test]
fn criterion_03_psl3_cpa_trivial() {
    timed(Duration::from_secs(60), "criterion 3", || {
        let g = construct::psl(3, &f(3)).unwrap();
        let set = cpa_all(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert!(set.complete);
        assert_eq!(set.products.len(), 1);
        assert!(set.products[0].is_zero());
    });
    pass("3", "cpa_all(psl_3(F_3)) = {trivial}, complete");
}

/// The explicit alpha-family of products on g6 (characteristic 2).
fn g6_alpha_product(ctx: &FieldCtx, alpha: FieldElem) -> SymProduct {
    let a = alpha;
    let a2 = ctx.mul(alpha, alpha);
    let c = ctx.mul(alpha, ctx.add(alpha, ctx.one()));
    let z = FieldElem::ZERO;
    let rows: Vec<((usize, usize), Vec<FieldElem>)> = vec![
        ((0, 1), vec![z, z, a, z, c, z]),
        ((0, 2), vec![z, c, z, a2, z, z]),
        ((0, 3), vec![z, z, c, z, a2, z]),
        ((0, 4), vec![z, a2, z, a, z, z]),
        ((1, 2), vec![a2, z, z, z, z, c]),
        ((1, 4), vec![a, z, z, z, z, a2]),
        ((1, 5), vec![z, z, a2, z, a, z]),
        ((2, 3), vec![a, z, z, z, z, a2]),
        ((2, 5), vec![z, a, z, c, z, z]),
        ((3, 4), vec![c, z, z, z, z, a]),
        ((3, 5), vec![z, z, a, z, c, z]),
        ((4, 5), vec![z, c, z, a2, z, z]),
    ];
    SymProduct::from_entries(ctx, 6, rows)
}

#[test]
fn criterion_04_g6_cpa_family() {
    let g = construct::builtin("g6").unwrap();
    timed(Duration::from_secs(60), "criterion 4 over F_2", || {
        let set = cpa_all(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert!(set.complete);
        assert_eq!(set.products.len(), 2);
        assert!(set.products[0].is_zero());
        assert_eq!(set.products[1], SymProduct::adjoint(&g));
    });
    timed(Duration::from_secs(60), "criterion 4 over F_4", || {
        let gf4 = g.extend_scalars(2).unwrap();
        let ctx = gf4.ctx().clone();
        let set = cpa_all(&gf4, DEFAULT_NODE_BUDGET).unwrap();
        assert!(set.complete);
        assert_eq!(set.products.len(), 4);
        // match the printed table at alpha in {0, 1, t, t+1}
        let mut expected: Vec<SymProduct> = ctx
            .elements()
            .map(|alpha| g6_alpha_product(&ctx, alpha))
            .collect();
        expected.sort_by_key(|p| {
            p.to_sym_coords().iter().map(|e| e.code()).collect::<Vec<_>>()
        });
        assert_eq!(set.products, expected);
    });
    pass("4", "g6: {trivial, adjoint} over F_2; the 4 alpha-table products over F_4");
}

#[test]
fn criterion_05_centroids() {
    timed(Duration::from_secs(1), "criterion 5", || {
        let w3 = construct::builtin("w3").unwrap();
        let cs = central_simplicity(&w3);
        assert_eq!(cs.centroid_dim, 1);
        assert!(cs.central_simple);

        let g6 = construct::builtin("g6").unwrap();
        let cs = central_simplicity(&g6);
        assert_eq!(cs.centroid_dim, 2);
        assert!(cs.simplicity.effective_simple());
        assert!(!cs.central_simple);
    });
    pass("5", "centroid dims 1 (w3, central simple) and 2 (g6, simple only)");
}

#[test]
fn criterion_06_classical_outer_dimensions() {
    let sl2 = construct::sl(2, &f(5)).unwrap();
    let d = derivations(&sl2);
    assert_eq!(d.out_dim(), 0);

    timed(Duration::from_secs(60), "criterion 6 psl(5,F_5)", || {
        let g = construct::psl(5, &f(5)).unwrap();
        assert_eq!(g.dim(), 23);
        let d = derivations(&g);
        assert_eq!(d.der_dim(), 24);
        assert_eq!(d.out_dim(), 1);
        let rep = out_solvability(&d);
        assert_eq!(rep.length(), Some(1), "Out is abelian");
    });
    pass("6", "sl(2,F_5): Out = 0; psl(5,F_5): Der 24, Out 1 abelian");
}

#[test]
fn criterion_07_cartan_outer_solvability() {
    timed(Duration::from_secs(300), "criterion 7", || {
        let w = construct::jacobson_witt(1, &f(5)).unwrap();
        let dw = derivations(&w);
        let rep = out_solvability(&dw);
        let len = rep.length().expect("Out(W) is solvable");
        assert!(len <= 1, "type W derived length is at most 1, got {}", len);

        let h = construct::hamiltonian_p2(&f(5)).unwrap();
        assert_eq!(h.dim(), 23);
        let dh = derivations(&h);
        let rep = out_solvability(&dh);
        assert_eq!(rep.length(), Some(3), "type H derived length exactly 3");
        let prof = out_heisenberg_profile(&dh);
        assert_eq!(prof.derived_dim, 3);
        assert_eq!(prof.nilpotency_class, Some(2));
        assert_eq!(prof.center_dim, Some(1));
    });
    pass("7", "Out(W) length <= 1; Out(H) length 3 with Heisenberg profile (3,2,1)");
}

#[test]
fn criterion_08_central_simple_cpa_trivial() {
    for (name, g) in [
        ("sl(2,F_5)", construct::sl(2, &f(5)).unwrap()),
        ("jacobson_witt(1,F_5)", construct::jacobson_witt(1, &f(5)).unwrap()),
        ("hamiltonian_p2(F_5)", construct::hamiltonian_p2(&f(5)).unwrap()),
    ] {
        let cs = central_simplicity(&g);
        assert!(cs.central_simple, "{} is central simple", name);
        let set = cpa_all(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert!(set.complete, "{} enumeration must be complete", name);
        assert_eq!(set.products.len(), 1, "{}", name);
        assert!(set.products[0].is_zero(), "{}", name);
    }
    pass("8", "three central simple p=5 algebras admit only the trivial structure");
}

#[test]
fn criterion_09a_taut_sl2() {
    let v = is_taut(&construct::sl(2, &f(5)).unwrap(), DEFAULT_NODE_BUDGET, None, false);
    assert_eq!(v.tag, TautTag::Taut);
    assert_eq!(v.reason, TautReason::OutZero);
    pass("9a", "sl(2,F_5) taut via OutZero");
}

#[test]
fn criterion_09b_taut_witt_reason_as_specified() {
    // Stated expectation: Taut with reason OutSolvablePerfect. The
    // computed fact is that Der(W(1;1)) = Inn over F_5 (the algebra is
    // restricted, so it equals its own p-envelope and all derivations
    // are inner), hence dim Out = 0 and the first criterion in the chain
    // necessarily fires. The tautness verdict itself holds either way.
    let v = is_taut(
        &construct::jacobson_witt(1, &f(5)).unwrap(),
        DEFAULT_NODE_BUDGET,
        None,
        false,
    );
    assert_eq!(v.tag, TautTag::Taut);
    if v.reason != TautReason::OutSolvablePerfect {
        println!(
            "criterion 9b: FAIL (stated reason OutSolvablePerfect unattainable: \
             computed dim Out(W(1;1)/F_5) = 0, so the chain reports {:?})",
            v.reason
        );
    }
    assert_eq!(
        v.reason,
        TautReason::OutSolvablePerfect,
        "unattainable as specified: Out(W(1;1)/F_5) = 0, the chain stops at OutZero"
    );
}

#[test]
fn criterion_09c_taut_psl3() {
    let v = is_taut(&construct::psl(3, &f(3)).unwrap(), DEFAULT_NODE_BUDGET, None, false);
    assert_eq!(v.tag, TautTag::Taut);
    assert_eq!(v.reason, TautReason::NoSplitSection);
    assert_eq!(v.search_complete, Some(true));
    pass("9c", "psl(3,F_3) taut via NoSplitSection, search complete");
}

fn inner_structures_under_test() -> Vec<(String, LieAlgebra, SymProduct)> {
    let mut out = Vec::new();
    let psl = construct::psl(3, &f(3)).unwrap();
    for p in cpa_all(&psl, DEFAULT_NODE_BUDGET).unwrap().products {
        out.push(("psl3".to_string(), psl.clone(), p));
    }
    let g6 = construct::builtin("g6").unwrap();
    for p in cpa_all(&g6, DEFAULT_NODE_BUDGET).unwrap().products {
        out.push(("g6/F2".to_string(), g6.clone(), p));
    }
    let g6f4 = g6.extend_scalars(2).unwrap();
    for p in cpa_all(&g6f4, DEFAULT_NODE_BUDGET).unwrap().products {
        out.push(("g6/F4".to_string(), g6f4.clone(), p));
    }
    for (name, g) in [
        ("sl2f5", construct::sl(2, &f(5)).unwrap()),
        ("wittf5", construct::jacobson_witt(1, &f(5)).unwrap()),
        ("hamf5", construct::hamiltonian_p2(&f(5)).unwrap()),
    ] {
        for p in cpa_all(&g, DEFAULT_NODE_BUDGET).unwrap().products {
            out.push((name.to_string(), g.clone(), p));
        }
    }
    out
}

#[test]
fn criterion_10a_b_eigenspace_properties() {
    let mut inner_count = 0;
    for (name, g, p) in inner_structures_under_test() {
        let cls = classify(&g, &p).unwrap();
        let Some(phi) = cls.phi.clone() else {
            panic!("{}: classification must recover phi here", name)
        };
        // (a) Lemma-style containments and direct-sum exhaustiveness are
        // verified inside eigen_decompose; it errors on any violation
        let e = eigen_decompose(&g, &phi).unwrap();
        let total: usize = e.spaces.iter().map(|(_, s)| s.dim()).sum();
        assert_eq!(total, g.dim(), "{}: eigenspaces exhaust the space", name);
        // (b) the n + h properties
        let nh = nh_properties(&e);
        assert!(nh.ok(), "{}: n+h properties hold: {:?}", name, nh);
        inner_count += 1;
    }
    assert!(inner_count >= 9, "expected the full family of products");
    pass("10a+10b", &format!("{} structures decomposed and checked", inner_count));
}

#[test]
fn criterion_10c_commutator_formula() {
    // f(n) = 2^n - 1 satisfies the recursion f(n+1) = 2 f(n) + 1
    let fmap = |n: u32| (1u64 << n) - 1;
    for n in 1..12 {
        assert_eq!(fmap(n + 1), 2 * fmap(n) + 1);
    }
    for (name, g, p) in inner_structures_under_test() {
        let phi = classify(&g, &p).unwrap().phi.unwrap();
        let rep = commutator_formula_check(&g, &phi, 4);
        assert!(rep.ok, "{}: commutator formula to depth 4", name);
    }
    pass("10c", "f(n) = 2^n - 1 and the formula to depth 4 on all stored structures");
}

#[test]
fn criterion_10d_solver_versus_brute_force() {
    fn brute_force(sys: &PolySystem) -> Vec<Vec<FieldElem>> {
        let q = sys.ctx.q();
        let total = (q as u128).pow(sys.nvars as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut point = vec![FieldElem::ZERO; sys.nvars];
            let mut rem = idx;
            for v in (0..sys.nvars).rev() {
                point[v] = sys.ctx.elem((rem % q as u128) as u64);
                rem /= q as u128;
            }
            if sys.equations.iter().all(|e| e.eval(&sys.ctx, &point).is_zero()) {
                out.push(point);
            }
        }
        out.sort();
        out
    }

    let mut seed = 0x0acce97ed_u64;
    let mut rnd = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let f2 = f(2);
    let f3 = f(3);
    for case in 0..200 {
        // keep brute force tractable: up to 12 variables over F_2,
        // up to 7 over F_3
        let (ctx, nvars) = if case % 2 == 0 {
            (&f2, 1 + (rnd() % 12) as usize)
        } else {
            (&f3, 1 + (rnd() % 7) as usize)
        };
        let neqs = 1 + (rnd() % 4) as usize;
        let mut eqs = Vec::new();
        for _ in 0..neqs {
            let mut p = MultiPoly::zero(nvars);
            for _ in 0..(1 + rnd() % 5) {
                let deg = rnd() % 3;
                let mut pairs = Vec::new();
                for _ in 0..deg {
                    pairs.push(((rnd() % nvars as u64) as usize, 1u32));
                }
                p.add_term(ctx, Monomial::from_pairs(pairs), ctx.elem(rnd() % ctx.q()));
            }
            eqs.push(p);
        }
        let sys = PolySystem::new(ctx, nvars, eqs);
        let sol = solve_all(&sys, DEFAULT_NODE_BUDGET).unwrap();
        assert!(sol.complete, "case {}", case);
        assert_eq!(sol.points, brute_force(&sys), "case {}", case);
    }
    pass("10d", "200 random systems agree with brute-force enumeration");
}

#[test]
fn criterion_10e_constructors_validate() {
    let list: Vec<(&str, LieAlgebra)> = vec![
        ("gl2/2", construct::gl(2, &f(2)).unwrap()),
        ("gl3/3", construct::gl(3, &f(3)).unwrap()),
        ("sl2/5", construct::sl(2, &f(5)).unwrap()),
        ("sl3/3", construct::sl(3, &f(3)).unwrap()),
        ("sl3/2", construct::sl(3, &f(2)).unwrap()),
        ("psl3/3", construct::psl(3, &f(3)).unwrap()),
        ("psl5/5", construct::psl(5, &f(5)).unwrap()),
        ("witt1/2", construct::jacobson_witt(1, &f(2)).unwrap()),
        ("witt1/5", construct::jacobson_witt(1, &f(5)).unwrap()),
        ("witt2/3", construct::jacobson_witt(2, &f(3)).unwrap()),
        ("ham/3", construct::hamiltonian_p2(&f(3)).unwrap()),
        ("ham/5", construct::hamiltonian_p2(&f(5)).unwrap()),
        ("ham/7", construct::hamiltonian_p2(&f(7)).unwrap()),
        ("w3", construct::builtin("w3").unwrap()),
        ("g6", construct::builtin("g6").unwrap()),
        ("psl3f3-table", construct::builtin("psl3f3-table").unwrap()),
    ];
    let n = list.len();
    for (name, g) in list {
        assert!(g.validate().is_ok(), "{} fails Jacobi", name);
    }
    pass("10e", &format!("{} constructor outputs validate", n));
}

#[test]
fn criterion_10f_lie_format_round_trip() {
    let algebras: Vec<LieAlgebra> = vec![
        construct::builtin("w3").unwrap(),
        construct::builtin("g6").unwrap(),
        construct::builtin("psl3f3-table").unwrap(),
        construct::sl(2, &f(5)).unwrap(),
        construct::builtin("g6").unwrap().extend_scalars(2).unwrap(),
        construct::jacobson_witt(2, &f(3)).unwrap(),
    ];
    let n = algebras.len();
    for g in algebras {
        let text = print_lie(&g);
        let back = parse_lie(&text).unwrap();
        assert_eq!(back.brackets(), g.brackets());
        assert_eq!(back.ctx(), g.ctx());
        assert_eq!(back.dim(), g.dim());
    }
    pass("10f", &format!("{} algebras round-trip through the .lie format", n));
}

/// Optional slow check (stated budget one hour): psl_6(F_3) has
/// dimension 6^2 - 2 = 34, its derivation algebra is the 35-dimensional
/// pgl_6, and the outer derivation algebra is 1-dimensional.
#[test]
#[ignore]
fn optional_psl6_f3_outer_dimension() {
    let g = construct::psl(6, &f(3)).unwrap();
    assert_eq!(g.dim(), 34);
    let d = derivations(&g);
    assert_eq!(d.der_dim(), 35);
    assert_eq!(d.inn_dim(), 34);
    assert_eq!(d.out_dim(), 1);
    pass("optional", "psl(6,F_3): dim 34, Der 35, Out 1");
}

#[test]
fn classifications_match_expected_tags() {
    // the family from criterion 4, classified
    let g6 = construct::builtin("g6").unwrap();
    let set = cpa_all(&g6, DEFAULT_NODE_BUDGET).unwrap();
    let tags: Vec<CpaTag> = set
        .products
        .iter()
        .map(|p| classify(&g6, p).unwrap().tag)
        .collect();
    assert_eq!(tags, vec![CpaTag::Trivial, CpaTag::Adjoint]);

    let gf4 = g6.extend_scalars(2).unwrap();
    let set = cpa_all(&gf4, DEFAULT_NODE_BUDGET).unwrap();
    let mut counts = (0, 0, 0);
    for p in &set.products {
        match classify(&gf4, p).unwrap().tag {
            CpaTag::Trivial => counts.0 += 1,
            CpaTag::Adjoint => counts.1 += 1,
            CpaTag::InnerNontrivial => counts.2 += 1,
            CpaTag::Other => panic!("unexpected classification"),
        }
    }
    assert_eq!(counts, (1, 1, 2));
}
