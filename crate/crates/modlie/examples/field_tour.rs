//! Finite field arithmetic: contexts, canonical moduli, roots,
//! factorization and splitting fields.
//!
//! Run with: cargo run --release --example field_tour

use modlie::field::{poly_factor, poly_roots, splitting_extension, FieldCtx, UniPoly};

fn main() {
    // prime fields take just the characteristic
    let f3 = FieldCtx::prime(3).unwrap();
    println!("F_3: 2 + 2 = {}", f3.format_elem(f3.add(f3.elem(2), f3.elem(2))));

    // extensions pick the lexicographically least irreducible modulus
    let f4 = FieldCtx::extension(2, 2).unwrap();
    println!(
        "F_4 = F_2[t]/({}), t*t = {}, t^-1 = {}",
        UniPoly::from_coeffs(f4.modulus().unwrap().iter().map(|&c| f3_elem_to(&f4, c)).collect())
            .format(&f4, "t"),
        f4.format_elem(f4.mul(f4.gen(), f4.gen())),
        f4.format_elem(f4.inv(f4.gen()).unwrap()),
    );

    // X(X^3 - 1) over F_2 and over F_4
    for ctx in [FieldCtx::prime(2).unwrap(), f4.clone()] {
        let x = UniPoly::x();
        let x3 = x.mul(&ctx, &x).mul(&ctx, &x);
        let f = x.mul(&ctx, &x3.sub(&ctx, &UniPoly::constant(ctx.one())));
        let roots = poly_roots(&ctx, &f).unwrap();
        let names: Vec<String> = roots.iter().map(|(r, _)| ctx.format_elem(*r)).collect();
        println!("roots of X(X^3-1) over {}: {{{}}}", ctx, names.join(", "));
    }

    // factorization by trial division
    let f2 = FieldCtx::prime(2).unwrap();
    let x = UniPoly::x();
    let x4 = x.mul(&f2, &x).mul(&f2, &x).mul(&f2, &x);
    let g = x4.add(&f2, &x);
    let fct = poly_factor(&f2, &g).unwrap();
    println!("X^4 + X over F_2 factors as:");
    for (h, m) in &fct.factors {
        println!("  ({})^{}", h.format(&f2, "X"), m);
    }

    // splitting fields on demand
    let f = UniPoly::from_coeffs(vec![f2.one(), f2.one(), f2.zero(), f2.one()]); // X^3+X+1
    let (ext, emb) = splitting_extension(&f2, &f).unwrap();
    let fe = f.map(&emb);
    let nroots: u32 = poly_roots(&ext, &fe).unwrap().iter().map(|r| r.1).sum();
    println!("X^3+X+1 splits over {} with {} roots", ext, nroots);
}

fn f3_elem_to(ctx: &FieldCtx, c: u32) -> modlie::field::FieldElem {
    ctx.from_int(c as i64)
}
