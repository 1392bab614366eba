//! Soundness: for every ordered pair of distinct irreducibles in every
//! catalog entry, the best derived lower bound must sit at or below the
//! exact disagreement density. The comparison is exact (surds included via
//! sign tests on the difference), never through floats.

use galdens::bounds::best_bound;
use galdens::catalog::catalog;
use galdens::moments::moment_table_for;
use galdens::rational::{format_rat, format_real};
use galdens::verify::soundness_sweep;

fn main() {
    let summary = soundness_sweep();
    println!(
        "{} ordered pairs swept, {} bound violations, {} floor violations",
        summary.pairs,
        summary.bound_violations.len(),
        summary.floor_violations.len()
    );
    assert!(summary.clean());

    // A few pairs worth seeing next to their exact densities.
    let showcase = [
        ("binary-octahedral", "pi", "pi-twist"),
        ("binary-tetrahedral", "pi", "pi-twist"),
        ("G216", "pi", "pi-twist"),
        ("dihedral-16", "pi", "pi-twist"),
        ("C2", "trivial", "sign"),
    ];
    println!(
        "\n{:<20} {:<18} {:>12} {:>22}",
        "entry", "pair", "exact", "bound"
    );
    for (name, a, b) in showcase {
        let e = galdens::catalog::entry(name).unwrap();
        let (i, j) = (e.role(a).unwrap(), e.role(b).unwrap());
        let exact = e
            .table
            .row(i)
            .disagreement_density(e.table.row(j))
            .unwrap();
        let t = moment_table_for(&e.table, i, j).unwrap();
        let d = best_bound(&t).unwrap();
        println!(
            "{:<20} {:<18} {:>12} {:>14} = {}",
            name,
            format!("({a}, {b})"),
            format_rat(&exact),
            d.value.to_string(),
            format_real(d.value_f64())
        );
    }
    println!("\nthe octahedral pair is tight: bound equals density exactly.");

    // Catalog-wide tightness count.
    let mut tight = 0usize;
    let mut total = 0usize;
    for e in catalog() {
        for i in 0..e.table.len() {
            for j in 0..e.table.len() {
                if i == j {
                    continue;
                }
                total += 1;
                let exact = e
                    .table
                    .row(i)
                    .disagreement_density(e.table.row(j))
                    .unwrap();
                let t = moment_table_for(&e.table, i, j).unwrap();
                let d = best_bound(&t).unwrap();
                if d.value.as_rational() == Some(exact) {
                    tight += 1;
                }
            }
        }
    }
    println!("bound meets density exactly on {tight} of {total} pairs.");
}
