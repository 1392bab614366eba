//! Adjoint norms across the catalog. An irreducible adjoint square (norm 1)
//! is the model analogue of a cuspidal adjoint lift; dihedral models and
//! central extraspecial models break it in two characteristic ways.

use galdens::catalog::catalog;
use galdens::rational::format_rat;

fn main() {
    println!(
        "{:<20} {:<8} {:>6} {:>12}  verdict",
        "entry", "role", "degree", "<Ad,Ad>"
    );
    for e in catalog() {
        let pi = e.role("pi").unwrap();
        let chi = e.table.row(pi);
        let norm = e.table.adjoint_norm(chi).unwrap();
        let verdict = if norm == galdens::rational::rat_int(1) {
            "irreducible"
        } else {
            "reducible"
        };
        println!(
            "{:<20} {:<8} {:>6} {:>12}  {verdict}",
            e.name,
            "pi",
            e.table.degree(pi),
            format_rat(&norm)
        );
    }

    // The two reducible shapes, spelled out.
    println!("\ndihedral-8 adjoint decomposition (induced models split):");
    let d8 = galdens::catalog::entry("dihedral-8").unwrap();
    let chi = d8.role_row("pi").unwrap();
    for (row, mult) in d8.table.adjoint(chi).unwrap() {
        if mult != 0 {
            println!("  {mult} x chi_{row} (degree {})", d8.table.degree(row));
        }
    }

    println!("\nextraspecial(3,1) adjoint values (regular character of the");
    println!("central quotient minus one: q-1 on the center, -1 elsewhere):");
    let h = galdens::catalog::entry("extraspecial(3,1)").unwrap();
    let chi = h.role_row("pi").unwrap();
    let ad = h.table.adjoint_character(chi).unwrap();
    for (c, v) in h.group.classes().iter().zip(ad.values()) {
        println!("  class of size {:>2}: Ad = {}", c.size, v);
    }
}
