//! Centroids, central simplicity, and how both interact with scalar
//! extension and restriction.
//!
//! Run with: cargo run --release --example centroid_and_scalars

use modlie::construct;
use modlie::derivation::central_simplicity;
use modlie::field::FieldCtx;

fn main() {
    // w3 is central simple: simple with a 1-dimensional centroid
    let w3 = construct::builtin("w3").unwrap();
    let cs = central_simplicity(&w3);
    println!(
        "w3/F_2:  centroid dim {}, simple: {}, central simple: {}",
        cs.centroid_dim,
        cs.simplicity.effective_simple(),
        cs.central_simple
    );

    // g6 is simple but NOT central simple: its centroid is a copy of F_4
    let g6 = construct::builtin("g6").unwrap();
    let cs = central_simplicity(&g6);
    println!(
        "g6/F_2:  centroid dim {}, simple: {}, central simple: {}",
        cs.centroid_dim,
        cs.simplicity.effective_simple(),
        cs.central_simple
    );

    // and indeed g6 is w3 with scalars extended to F_4 and then viewed
    // over F_2 again; the invariant profiles match
    let w3f4 = w3.extend_scalars(2).unwrap();
    let resc = w3f4.restrict_scalars().unwrap();
    println!(
        "restrict(extend(w3, F_4)): dim {} over {}, solvable: {}, perfect: {}",
        resc.dim(),
        resc.ctx(),
        resc.is_solvable(),
        resc.is_perfect()
    );
    let cs2 = central_simplicity(&resc);
    println!(
        "  profile vs g6: centroid {} vs {}, simple {} vs {}",
        cs2.centroid_dim,
        cs.centroid_dim,
        cs2.simplicity.effective_simple(),
        cs.simplicity.effective_simple()
    );

    // classical algebras over their prime field are central simple
    let sl2 = construct::sl(2, &FieldCtx::prime(5).unwrap()).unwrap();
    let cs = central_simplicity(&sl2);
    println!(
        "sl(2,F_5): centroid dim {}, central simple: {}",
        cs.centroid_dim, cs.central_simple
    );
}
