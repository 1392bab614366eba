//! The exact tensor identities behind the bound engine, checked live:
//!
//!   <chi chibar, chi chibar> = <Ad, Ad> + 1       (fourth moment)
//!   Sym^2 chi + Alt^2 chi    = chi^2              (square split)
//!   Sym^4 pi = Sym^2 pi + mu + mu^2               (binary tetrahedral)
//!   Sym^4 pi = sigma + (Ad pi) eta                (binary octahedral)
//!   Ad(Ad pi) = mu + mu^2 + 2 Ad pi               (tetrahedral tower)
//!
//! Every equality is decided on cyclotomic values, not floats.

use galdens::catalog::{catalog, entry};
use galdens::rational::rat_int;

fn main() {
    println!("fourth-moment identity over the whole catalog:");
    for e in catalog() {
        for (i, chi) in e.table.rows().iter().enumerate() {
            let mm = chi.mul(&chi.conj()).unwrap();
            let lhs = mm.norm_sq();
            let rhs = e.table.adjoint_norm(chi).unwrap() + rat_int(1);
            assert_eq!(lhs, rhs, "{} row {i}", e.name);
        }
        println!("  {:<20} all {} rows exact", e.name, e.table.len());
    }

    println!("\nsquare split Sym^2 + Alt^2 = chi^2 (same sweep):");
    for e in catalog() {
        for chi in e.table.rows() {
            let sym = chi.sym_power(2);
            let alt = chi.alt_square();
            let sq = chi.mul(chi).unwrap();
            assert!(sym.add(&alt).unwrap().equal_values(&sq));
        }
        println!("  {:<20} ok", e.name);
    }

    let tetra = entry("binary-tetrahedral").unwrap();
    let pi = tetra.role_row("pi").unwrap();
    let ad = tetra.table.adjoint_character(pi).unwrap();
    let ad_row = tetra.table.find_row(&ad).unwrap();
    let twists = tetra.table.self_twists(&ad).unwrap();
    let mus: Vec<usize> = twists
        .into_iter()
        .filter(|&r| r != tetra.table.trivial_index())
        .collect();
    println!("\nbinary tetrahedral: Ad pi is chi_{ad_row}, self-twists mu = chi_{}, mu^2 = chi_{}", mus[0], mus[1]);

    let sym4 = pi.sym_power(4);
    let mut rhs = ad.clone();
    for &m in &mus {
        rhs = rhs.add(tetra.table.row(m)).unwrap();
    }
    println!("  Sym^4 pi = Sym^2 pi + mu + mu^2 exact: {}", sym4.equal_values(&rhs));

    let tower = tetra.table.adjoint_character(&ad).unwrap();
    let mut rhs = ad.scale(&rat_int(2));
    for &m in &mus {
        rhs = rhs.add(tetra.table.row(m)).unwrap();
    }
    println!("  Ad(Ad pi) = mu + mu^2 + 2 Ad pi exact: {}", tower.equal_values(&rhs));

    let octa = entry("binary-octahedral").unwrap();
    let pi = octa.role_row("pi").unwrap();
    let eta = octa.role_row("twist").unwrap();
    let ad = octa.table.adjoint_character(pi).unwrap();
    let sym4 = pi.sym_power(4);
    let twisted = ad.mul(eta).unwrap();
    for (i, row) in octa.table.rows().iter().enumerate() {
        if octa.table.degree(i) == 2
            && sym4.equal_values(&row.add(&twisted).unwrap()) {
                println!("\nbinary octahedral: Sym^4 pi = chi_{i} + (Ad pi) eta exact: true");
            }
    }
}
