//! The exhaustive polynomial system solver: linear elimination,
//! branch-and-propagate, exact budgets, and a brute-force cross-check.
//!
//! Run with: cargo run --release --example polynomial_solver

use modlie::field::{FieldCtx, FieldElem};
use modlie::polysolve::{linear_reduce, solve_all, MultiPoly, PolySystem};

fn main() {
    let f3 = FieldCtx::prime(3).unwrap();

    // {x0*x1 + 1 = 0, x1 + x2 = 0} over F_3: x1 is eliminated linearly,
    // a quadratic in x0, x2 remains
    let e1 = MultiPoly::var(3, 0)
        .mul(&f3, &MultiPoly::var(3, 1))
        .add(&f3, &MultiPoly::constant(3, f3.one()));
    let e2 = MultiPoly::var(3, 1).add(&f3, &MultiPoly::var(3, 2));
    let sys = PolySystem::new(&f3, 3, vec![e1, e2]);
    let red = linear_reduce(&sys);
    println!("after linear elimination:");
    for (v, expr) in &red.eliminations {
        println!("  x{} = {}", v, expr.format(&f3));
    }
    for e in &red.remaining {
        println!("  remaining: {} = 0", e.format(&f3));
    }

    let sol = solve_all(&sys, 100_000).unwrap();
    println!(
        "solutions ({} nodes, complete: {}):",
        sol.nodes, sol.complete
    );
    for p in &sol.points {
        let vals: Vec<String> = p.iter().map(|e| f3.format_elem(*e)).collect();
        println!("  ({})", vals.join(", "));
    }

    // every point also survives a brute-force scan
    let brute = brute_force(&sys);
    println!("matches brute force: {}", sol.points == brute);

    // over F_4 the Artin-Schreier polynomial picks up its two roots
    let f4 = FieldCtx::extension(2, 2).unwrap();
    let p = MultiPoly::var(1, 0)
        .mul(&f4, &MultiPoly::var(1, 0))
        .add(&f4, &MultiPoly::var(1, 0))
        .add(&f4, &MultiPoly::constant(1, f4.one()));
    let sol = solve_all(&PolySystem::new(&f4, 1, vec![p]), 1000).unwrap();
    let roots: Vec<String> = sol
        .points
        .iter()
        .map(|p| f4.format_elem(p[0]))
        .collect();
    println!("x^2+x+1 = 0 over F_4: {{{}}}", roots.join(", "));
}

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
