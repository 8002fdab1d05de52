//! Derived/lower central series, centers, ideal closures and the
//! simplicity decision procedure.
//!
//! Run with: cargo run --release --example series_and_simplicity

use modlie::construct;
use modlie::field::FieldCtx;
use modlie::lie::{LieAlgebra, SeriesKind, SIMPLICITY_BUDGET};
use modlie::matrix::Subspace;

fn main() {
    let f3 = FieldCtx::prime(3).unwrap();

    // a solvable example: [e1,e2] = e2
    let aff = LieAlgebra::from_brackets(
        &f3,
        2,
        vec![((0usize, 1usize), vec![f3.zero(), f3.one()])],
    )
    .unwrap();
    let rep = aff.series(SeriesKind::Derived);
    println!(
        "2-dim [e1,e2]=e2: derived dims {:?}, derived length {:?}",
        rep.dims(),
        rep.length()
    );

    // perfect algebras stabilize at the full space
    let psl = construct::psl(3, &f3).unwrap();
    let rep = psl.series(SeriesKind::Derived);
    println!(
        "psl(3,F_3): derived dims {:?} (stabilizes nonzero: {})",
        rep.dims(),
        rep.stabilized_nonzero
    );

    // center and the ideal it generates
    let sl3 = construct::sl(3, &f3).unwrap();
    let z = sl3.center();
    println!(
        "sl(3,F_3): center dim {}, ideal closure of the center has dim {}",
        z.dim(),
        sl3.ideal_closure(&z).dim()
    );

    // ideal closure of a single vector decides simplicity; small cases
    // are exhausted over all nonzero vectors
    for (name, g) in [
        ("w3/F_2", construct::builtin("w3").unwrap()),
        ("g6/F_2", construct::builtin("g6").unwrap()),
        ("psl(3,F_3)", psl.clone()),
        ("sl(3,F_3)", sl3.clone()),
        ("W(1;1)/F_5", construct::jacobson_witt(1, &FieldCtx::prime(5).unwrap()).unwrap()),
    ] {
        let rep = g.simplicity(SIMPLICITY_BUDGET);
        println!("  {:<12} {}", name, rep.verdict_str());
    }

    // a first basis vector generates everything in a simple algebra
    let e1 = Subspace::from_vectors(psl.ctx(), psl.dim(), vec![psl.basis_vector(0)]);
    println!(
        "psl(3,F_3): ideal closure of e1 has dim {}",
        psl.ideal_closure(&e1).dim()
    );
}
