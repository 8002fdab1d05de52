//! Derivation algebras, inner derivations and the Lie structure on the
//! outer derivation algebra Out(g) = Der(g)/Inn(g).
//!
//! Run with: cargo run --release --example derivations_outer

use modlie::construct;
use modlie::derivation::{derivations, out_heisenberg_profile, out_solvability};
use modlie::field::FieldCtx;
use modlie::lie::SIMPLICITY_BUDGET;

fn main() {
    let f3 = FieldCtx::prime(3).unwrap();
    let f5 = FieldCtx::prime(5).unwrap();

    for (name, g) in [
        ("sl(2,F_5)", construct::sl(2, &f5).unwrap()),
        ("psl(3,F_3)", construct::psl(3, &f3).unwrap()),
        ("psl(5,F_5)", construct::psl(5, &f5).unwrap()),
        ("W(1;1)/F_5", construct::jacobson_witt(1, &f5).unwrap()),
        ("H(2;1)/F_5", construct::hamiltonian_p2(&f5).unwrap()),
    ] {
        let d = derivations(&g);
        let sol = out_solvability(&d);
        print!(
            "{:<11} dim Der = {:>2}, dim Inn = {:>2}, dim Out = {:>2}; ",
            name,
            d.der_dim(),
            d.inn_dim(),
            d.out_dim()
        );
        match sol.length() {
            Some(l) => println!("Out solvable, derived length {}", l),
            None => {
                let simple = d.out.simplicity(SIMPLICITY_BUDGET).effective_simple();
                println!("Out NOT solvable (simple: {})", simple);
            }
        }
    }

    // the Hamiltonian algebra has the interesting outer structure:
    // Out^(1) is the 3-dimensional Heisenberg algebra
    let h = construct::hamiltonian_p2(&f5).unwrap();
    let d = derivations(&h);
    let prof = out_heisenberg_profile(&d);
    println!(
        "H(2;1)/F_5: Out^(1) has dim {}, nilpotency class {:?}, center dim {:?}",
        prof.derived_dim, prof.nilpotency_class, prof.center_dim
    );
    println!(
        "Out(H) derived series dims: {:?}",
        out_solvability(&d).dims()
    );
}
