//! Scan the catalog for the smallest exact disagreement density among
//! distinct irreducible pairs of a fixed degree, and compare it with the
//! universal floor 1/(2n^2). The floor is attained by no catalog pair in
//! degree 2 or 3; the minima below are regression values for this catalog,
//! not extremal claims.

use galdens::catalog::{catalog, sharpness_search};
use galdens::rational::{format_rat, rat};

fn main() {
    println!("{:>6} {:>10} {:>10}  witness", "degree", "floor", "minimum");
    for n in 1..=3u32 {
        let floor = rat(1, 2 * i128::from(n) * i128::from(n));
        match sharpness_search(n, catalog()) {
            Ok((min, witness)) => {
                println!(
                    "{:>6} {:>10} {:>10}  {} rows {},{}",
                    n,
                    format_rat(&floor),
                    format_rat(&min),
                    witness.entry,
                    witness.row_a,
                    witness.row_b
                );
                assert!(min >= floor, "floor violated");
            }
            Err(e) => println!("{n:>6} {:>10}        --  {e}", format_rat(&floor)),
        }
    }

    // Degree-2 pairs sit well above 1/8; the octahedral twist pair attains
    // exactly 1/4, which the eq4 pipeline also returns as its bound, so the
    // derived constant is tight there.
    let e = galdens::catalog::entry("binary-octahedral").unwrap();
    let i = e.role("pi").unwrap();
    let j = e.role("pi-twist").unwrap();
    let d = e
        .table
        .row(i)
        .disagreement_density(e.table.row(j))
        .unwrap();
    println!("\nbinary-octahedral (pi, pi-twist): exact density {}", format_rat(&d));
}
