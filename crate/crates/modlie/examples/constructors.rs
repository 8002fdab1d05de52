//! The named algebra constructors and builtin tables.
//!
//! Run with: cargo run --release --example constructors

use modlie::construct;
use modlie::field::FieldCtx;

fn main() {
    let f2 = FieldCtx::prime(2).unwrap();
    let f3 = FieldCtx::prime(3).unwrap();
    let f5 = FieldCtx::prime(5).unwrap();

    println!("classical type:");
    for (name, g) in [
        ("gl(2, F_2)", construct::gl(2, &f2).unwrap()),
        ("sl(2, F_5)", construct::sl(2, &f5).unwrap()),
        ("sl(3, F_3)", construct::sl(3, &f3).unwrap()),
        ("psl(3, F_3)", construct::psl(3, &f3).unwrap()),
        ("psl(5, F_5)", construct::psl(5, &f5).unwrap()),
    ] {
        println!(
            "  {:<12} dim {:>2}, center dim {}, perfect: {}",
            name,
            g.dim(),
            g.center().dim(),
            g.is_perfect()
        );
    }

    println!("Cartan type (W(m;1) has dim m*p^m, H(2;1)^(2) has dim p^2-2):");
    for (name, g) in [
        ("W(1;1)/F_2", construct::jacobson_witt(1, &f2).unwrap()),
        ("W(1;1)/F_5", construct::jacobson_witt(1, &f5).unwrap()),
        ("W(2;1)/F_3", construct::jacobson_witt(2, &f3).unwrap()),
        ("H(2;1)/F_3", construct::hamiltonian_p2(&f3).unwrap()),
        ("H(2;1)/F_5", construct::hamiltonian_p2(&f5).unwrap()),
        ("H(2;1)/F_7", construct::hamiltonian_p2(&FieldCtx::prime(7).unwrap()).unwrap()),
    ] {
        println!("  {:<12} dim {:>2}", name, g.dim());
    }

    println!("builtin tables:");
    for name in construct::builtin_names() {
        let g = construct::builtin(name).unwrap();
        println!(
            "  {:<14} dim {} over {}, validated: {}",
            name,
            g.dim(),
            g.ctx(),
            g.validate().is_ok()
        );
    }

    // every constructor output passes the Jacobi check at construction;
    // a deliberately corrupted table does not
    let w3 = construct::builtin("w3").unwrap();
    let mut broken: Vec<_> = w3
        .brackets()
        .iter()
        .map(|(&k, v)| (k, v.clone()))
        .collect();
    broken[0].1.swap(0, 2); // turn [e,f]=h into [e,f]=e
    let bad = modlie::lie::LieAlgebra::from_brackets(w3.ctx(), 3, broken).unwrap();
    match bad.validate() {
        Ok(()) => println!("unexpectedly valid"),
        Err(v) => println!("corrupted table rejected: {}", v),
    }
}
