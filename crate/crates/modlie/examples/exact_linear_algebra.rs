//! Exact linear algebra over finite fields: RREF, kernels,
//! division-free characteristic polynomials, generalized eigenspaces.
//!
//! Run with: cargo run --release --example exact_linear_algebra

use modlie::field::{poly_roots, FieldCtx};
use modlie::matrix::Mat;

fn main() {
    let f3 = FieldCtx::prime(3).unwrap();

    let m = Mat::from_rows(
        &f3,
        vec![
            vec![f3.elem(1), f3.elem(2), f3.elem(0)],
            vec![f3.elem(2), f3.elem(1), f3.elem(1)],
            vec![f3.elem(0), f3.elem(0), f3.elem(2)],
        ],
    );
    let r = m.rref();
    println!("rank = {}, pivots = {:?}", r.rank, r.pivots);
    println!("kernel dim = {}", m.kernel().dim());

    // characteristic polynomial without division (works in any
    // characteristic)
    let cp = m.charpoly().unwrap();
    println!("charpoly = {}", cp.format(&f3, "X"));

    // generalized eigenspaces decompose the space when charpoly splits
    let roots = poly_roots(&f3, &cp).unwrap();
    for (alpha, mult) in &roots {
        let space = m.gen_eigenspace(*alpha).unwrap();
        println!(
            "eigenvalue {} (multiplicity {}): generalized eigenspace dim {}",
            f3.format_elem(*alpha),
            mult,
            space.dim()
        );
    }

    // a nilpotent Jordan block: the generalized eigenspace is everything
    let j = Mat::from_rows(
        &f3,
        vec![
            vec![f3.elem(1), f3.elem(1)],
            vec![f3.elem(0), f3.elem(1)],
        ],
    );
    println!(
        "Jordan block J_2(1): gen. eigenspace of 1 has dim {}",
        j.gen_eigenspace(f3.one()).unwrap().dim()
    );

    // solving runs through the same elimination
    let b = vec![f3.elem(1), f3.elem(0), f3.elem(2)];
    match m.solve(&b) {
        Some(x) => {
            let back = m.apply(&x);
            println!("solve: m*x = b reproduced: {}", back == b);
        }
        None => println!("inconsistent system"),
    }
}
