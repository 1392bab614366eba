//! Pole orders of convolution Dirichlet series, read off a seeded stream.
//!
//! For characters chi, chi' the series with coefficients
//! chi^w conj(chi)^x chi'^y conj(chi')^z has a pole at s = 1 whose order
//! equals the inner product <chi^w chibar^x, chi'bar^y chi'^z>. The
//! estimator fits the monomial's partial sums against the character-free
//! sums near s = 1; slopes land near the exact integer orders.

use galdens::catalog::entry;
use galdens::density::{pole_order_estimate, DEFAULT_S_GRID};
use galdens::stream::PlaceStream;
use std::sync::Arc;

/// Exponents (w, x, y, z) of chi, conj(chi), chi', conj(chi').
type Monomial = (u32, u32, u32, u32);

fn run(name: &str, role_a: &str, role_b: &str, count: usize) {
    let e = entry(name).unwrap();
    let chi = e.role_row(role_a).unwrap();
    let chi_prime = e.role_row(role_b).unwrap();
    let stream = PlaceStream::new(Arc::clone(&e.group), 42, count).unwrap();

    let cases: [(Monomial, &str); 4] = [
        ((1, 1, 0, 0), "Rankin-Selberg of chi with itself"),
        ((2, 2, 0, 0), "fourth moment of chi"),
        ((1, 0, 0, 1), "cross pairing of chi with chi'"),
        ((1, 1, 1, 1), "joint square pairing"),
    ];

    println!("{name} ({role_a}, {role_b}), seed 42, {count} places:");
    for (monomial, label) in cases {
        let est =
            pole_order_estimate(&stream, chi, chi_prime, monomial, &DEFAULT_S_GRID).unwrap();
        println!(
            "  {:?} slope {:>8.4}   {label}",
            monomial,
            est.estimate()
        );
    }
    println!();
}

fn main() {
    // Exact orders: (1,1,0,0) -> 1, (2,2,0,0) -> 2, (1,0,0,1) -> 0 for the
    // twisted pair, (1,1,1,1) -> 2 when chi' is a linear twist of chi.
    run("G216", "pi", "pi-twist", 200_000);
    run("binary-tetrahedral", "pi", "pi-twist", 200_000);
}
