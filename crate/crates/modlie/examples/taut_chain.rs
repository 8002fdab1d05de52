//! The taut property (every homomorphism g -> Der(g) lands in Inn(g))
//! decided through the criteria chain, including the exhaustive
//! split-section search.
//!
//! Run with: cargo run --release --example taut_chain

use modlie::construct;
use modlie::derivation::derivations;
use modlie::field::FieldCtx;
use modlie::polysolve::DEFAULT_NODE_BUDGET;
use modlie::taut::{is_taut, split_section_search, SplitSearch, TautTag};

fn main() {
    let f3 = FieldCtx::prime(3).unwrap();
    let f5 = FieldCtx::prime(5).unwrap();

    for (name, g) in [
        ("sl(2,F_5)", construct::sl(2, &f5).unwrap()),
        ("W(1;1)/F_5", construct::jacobson_witt(1, &f5).unwrap()),
        ("H(2;1)/F_5", construct::hamiltonian_p2(&f5).unwrap()),
        ("psl(3,F_3)", construct::psl(3, &f3).unwrap()),
    ] {
        let v = is_taut(&g, DEFAULT_NODE_BUDGET, None, false);
        let tag = match v.tag {
            TautTag::Taut => "taut",
            TautTag::NotTaut => "not taut",
            TautTag::Unknown => "unknown",
        };
        print!("{:<11} {} ({})", name, tag, v.reason);
        if let Some(nodes) = v.search_nodes {
            print!(" [{} search nodes]", nodes);
        }
        println!();
    }

    // the split-section search in detail: psl(3,F_3) has Out isomorphic
    // to itself, so tautness hinges on the extension
    // 0 -> Inn -> Der -> Out -> 0 not splitting
    let psl = construct::psl(3, &f3).unwrap();
    let d = derivations(&psl);
    println!(
        "\npsl(3,F_3): dim Inn = {}, dim Out = {}; searching {}x{} section blocks over F_3",
        d.inn_dim(),
        d.out_dim(),
        d.inn_dim(),
        d.out_dim()
    );
    match split_section_search(&d, DEFAULT_NODE_BUDGET) {
        SplitSearch::NoneComplete { nodes } => {
            println!("no section exists; exhaustive search used {} nodes", nodes)
        }
        SplitSearch::Found { .. } => println!("section found (the extension splits)"),
        SplitSearch::Inconclusive { nodes } => println!("budget exhausted after {} nodes", nodes),
    }

    // with a 1-dimensional Out there are no pair constraints at all and
    // a section always exists
    let psl5 = construct::psl(5, &f5).unwrap();
    let d5 = derivations(&psl5);
    match split_section_search(&d5, DEFAULT_NODE_BUDGET) {
        SplitSearch::Found { section, .. } => println!(
            "psl(5,F_5): Out is {}-dimensional, section found immediately (A = 0: {})",
            d5.out_dim(),
            section.a.is_zero()
        ),
        other => println!("psl(5,F_5): unexpected {:?}", other),
    }
}
