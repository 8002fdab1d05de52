//! Complete enumeration of commutative post-Lie algebra structures:
//! the linear stage (left multiplications are derivations) followed by
//! an exhaustive quadratic solve.
//!
//! Run with: cargo run --release --example cpa_enumeration

use modlie::construct;
use modlie::cpa::{classify, cpa_all, cpa_linear_space};
use modlie::field::FieldCtx;
use modlie::polysolve::DEFAULT_NODE_BUDGET;

fn main() {
    // psl_3(F_3): even the linear axioms force the zero product
    let psl = construct::psl(3, &FieldCtx::prime(3).unwrap()).unwrap();
    let lin = cpa_linear_space(&psl);
    let set = cpa_all(&psl, DEFAULT_NODE_BUDGET).unwrap();
    println!(
        "psl(3,F_3): linear stage dim {}, {} CPA structure(s), complete: {}",
        lin.len(),
        set.products.len(),
        set.complete
    );

    // g6 over F_2: trivial and adjoint
    let g6 = construct::builtin("g6").unwrap();
    let set = cpa_all(&g6, DEFAULT_NODE_BUDGET).unwrap();
    println!(
        "\ng6 over F_2: linear stage dim {}, {} structures:",
        set.linear_dim,
        set.products.len()
    );
    for p in &set.products {
        let c = classify(&g6, p).unwrap();
        println!("  - {}", c.tag);
    }

    // the same structure constants over F_4: two more structures appear,
    // the whole family indexed by the roots of X(X^3-1)
    let g6f4 = g6.extend_scalars(2).unwrap();
    let set = cpa_all(&g6f4, DEFAULT_NODE_BUDGET).unwrap();
    println!(
        "\ng6 over F_4: {} structures (complete: {}):",
        set.products.len(),
        set.complete
    );
    for p in &set.products {
        let c = classify(&g6f4, p).unwrap();
        println!("[{}]", c.tag);
        for line in p.format_table(&|m| format!("x{}", m + 1)) {
            println!("    {}", line);
        }
    }

    // central simple algebras in characteristic 5 admit only the
    // trivial structure
    let f5 = FieldCtx::prime(5).unwrap();
    for (name, g) in [
        ("sl(2,F_5)", construct::sl(2, &f5).unwrap()),
        ("W(1;1)/F_5", construct::jacobson_witt(1, &f5).unwrap()),
        ("H(2;1)/F_5", construct::hamiltonian_p2(&f5).unwrap()),
    ] {
        let set = cpa_all(&g, DEFAULT_NODE_BUDGET).unwrap();
        println!(
            "\n{}: {} structure(s), trivial only: {}",
            name,
            set.products.len(),
            set.products.len() == 1 && set.products[0].is_zero()
        );
    }
}
