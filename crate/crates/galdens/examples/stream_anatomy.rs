//! Anatomy of the seeded place stream: norms are the first N primes, each
//! place draws a conjugacy class with probability |class|/|G| through a
//! splitmix64 sequence, and the frequency diagnostic compares the observed
//! class counts with their expectations in normalized units.

use galdens::catalog::entry;
use galdens::rational::format_real;
use galdens::stream::{first_primes, splitmix64, PlaceStream};
use std::sync::Arc;

fn main() {
    println!("splitmix64 draws for seed 42: ");
    for i in 0..5 {
        println!("  draw {i}: {:#018x}", splitmix64(42, i));
    }

    let e = entry("S3").unwrap();
    let stream = PlaceStream::new(Arc::clone(&e.group), 42, 20_000).unwrap();

    println!("\nfirst places of the S3 stream:");
    let pi = e.role_row("pi").unwrap();
    let values = stream.class_values(pi).unwrap();
    for k in 0..8 {
        println!(
            "  place {k}: norm {:>2}, class {}, a_pi = {}",
            stream.norms()[k],
            stream.classes()[k],
            format_real(values[stream.classes()[k] as usize].re)
        );
    }

    println!("\nclass frequencies over {} places:", stream.count());
    let mut counts = vec![0usize; e.group.class_count()];
    for &c in stream.classes() {
        counts[c as usize] += 1;
    }
    for (i, c) in e.group.classes().iter().enumerate() {
        let expected = stream.count() as f64 * c.size as f64 / e.group.order() as f64;
        println!(
            "  class {i} (size {}): observed {:>6}, expected {:>9.1}",
            c.size, counts[i], expected
        );
    }
    println!(
        "  frequency diagnostic: max |z| = {}, within tolerance: {}",
        format_real(stream.max_z()),
        stream.freq_ok()
    );

    println!(
        "\nnorm of the last place (the {}th prime): {}",
        stream.count(),
        stream.norms().last().unwrap()
    );
    assert_eq!(first_primes(3), vec![2, 3, 5]);
}
