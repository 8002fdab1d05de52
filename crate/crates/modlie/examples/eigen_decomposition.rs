//! Inner CPA structures x.y = [phi(x), y]: recovering phi, the
//! generalized eigenspace decomposition g = n + h over the splitting
//! field, its structural properties, and the iterated commutator
//! formula.
//!
//! Run with: cargo run --release --example eigen_decomposition

use modlie::construct;
use modlie::cpa::{
    classify, commutator_formula_check, cpa_all, eigen_decompose, nh_properties,
};
use modlie::polysolve::DEFAULT_NODE_BUDGET;

fn main() {
    // work over F_4 where g6 carries four CPA structures
    let g6 = construct::builtin("g6").unwrap();
    let g = g6.extend_scalars(2).unwrap();
    let set = cpa_all(&g, DEFAULT_NODE_BUDGET).unwrap();
    println!("g6 over F_4 carries {} CPA structures\n", set.products.len());

    for p in &set.products {
        let cls = classify(&g, p).unwrap();
        let phi = cls.phi.clone().expect("all structures here are inner");
        let e = eigen_decompose(&g, &phi).unwrap();
        let evs: Vec<String> = e
            .spaces
            .iter()
            .map(|(a, s)| format!("{} (dim {})", e.ext.format_elem(*a), s.dim()))
            .collect();
        println!(
            "{}: eigenvalues {}; n dim {}, h dim {}",
            cls.tag,
            evs.join(", "),
            e.n_part.dim(),
            e.h_part.dim()
        );

        // the bracket containments of the eigenspaces are verified inside
        // eigen_decompose; the n + h properties are checked here
        let nh = nh_properties(&e);
        println!(
            "    componentwise products: {}, n-limit annihilates n: {}, char-2 depth-3 adjoint: {:?}",
            nh.componentwise, nh.n_limit_annihilates, nh.char2_adjoint_on_depth3
        );

        // iterated commutator formula with f(n) = 2^n - 1 up to depth 4
        let comm = commutator_formula_check(&g, &phi, 4);
        let signs: Vec<String> = comm
            .signs
            .iter()
            .enumerate()
            .map(|(i, (plus, minus))| {
                format!(
                    "depth {}: {}{}",
                    i + 1,
                    if *plus { "+" } else { "" },
                    if *minus { "-" } else { "" }
                )
            })
            .collect();
        println!("    commutator formula ok: {} ({})", comm.ok, signs.join(", "));
    }
}
