//! The `.lie` and `.prod` text formats: printing, parsing, validation
//! errors with line numbers, and exact round trips.
//!
//! Run with: cargo run --release --example lie_files

use modlie::construct;
use modlie::cpa::SymProduct;
use modlie::format::{parse_lie, parse_prod, print_lie, print_prod};

fn main() {
    // serialize a builtin and read it back
    let g6 = construct::builtin("g6").unwrap();
    let text = print_lie(&g6);
    println!("--- g6.lie ---\n{}", text);
    let back = parse_lie(&text).unwrap();
    println!(
        "round trip exact: {}",
        back.brackets() == g6.brackets() && back.ctx() == g6.ctx()
    );

    // extension fields carry their modulus in the header
    let g6f4 = g6.extend_scalars(2).unwrap();
    let header = print_lie(&g6f4).lines().next().unwrap().to_string();
    println!("extension header: {}", header);

    // parse errors carry line numbers
    let bad = "field 2\ndim 3\n[2,1] = e3\n";
    println!("parsing a misordered key: {}", parse_lie(bad).unwrap_err());

    // Jacobi failures are semantic errors with a witnessing triple
    let not_jacobi = "field 5\ndim 3\n[1,2]=e3\n[1,3]=3*e1\n[2,3]=e2\n";
    println!("parsing a non-Lie table:  {}", parse_lie(not_jacobi).unwrap_err());

    // product files use dotted keys, unordered
    let p = SymProduct::adjoint(&g6);
    let ptext = print_prod(&p);
    println!("--- adjoint.prod (first lines) ---");
    for line in ptext.lines().take(4) {
        println!("{}", line);
    }
    let pback = parse_prod(&ptext).unwrap();
    println!("product round trip exact: {}", pback == p);
}
