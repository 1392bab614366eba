//! Derive bounds from user-supplied moment tables. A full table feeds the
//! reconstructed fourth-moment pipeline directly; a table without P or Q
//! gets those entries defaulted to their Cauchy-Schwarz ceilings, so the
//! pipeline can never overclaim from missing data (at the ceilings it is
//! dominated by the direct split, which then wins the comparison).

use galdens::bounds::best_bound;
use galdens::moments::MomentTable;
use galdens::rational::format_real;
use galdens::report::{bound_json, parse_moment_table};

fn show(label: &str, t: &MomentTable) {
    let b = best_bound(t).unwrap();
    println!("{label}:");
    println!(
        "  method {} picked {}",
        b.method.tag(),
        b.picked.map(|m| m.tag()).unwrap_or("none")
    );
    println!("  value {} = {}", b.value, format_real(b.value_f64()));
    for step in &b.trace {
        println!("  [{}] {}", step.label, step.detail);
    }
    println!();
}

fn main() {
    let full: serde_json::Value = serde_json::from_str(
        r#"{"A": 2, "B": 2, "C": 1, "P": 1, "Q": [0, 0, 0, 0], "D": 2}"#,
    )
    .unwrap();
    show("full table (all cross terms known)", &parse_moment_table(&full).unwrap());

    let partial: serde_json::Value =
        serde_json::from_str(r#"{"A": 2, "B": 2, "C": 1, "D": 2}"#).unwrap();
    show("same table without P and Q (ceilings kick in)", &parse_moment_table(&partial).unwrap());

    let plain: serde_json::Value =
        serde_json::from_str(r#"{"A": 1, "B": 1, "C": 1, "D": 2}"#).unwrap();
    let t = parse_moment_table(&plain).unwrap();
    show("minimal table (the two pipelines tie; C = sqrt(AB))", &t);

    // The full derivation serializes to the same JSON document the CLI
    // prints for `bound --table`.
    let b = best_bound(&t).unwrap();
    let doc = bound_json(("table", "inline"), "user-supplied moment table", &b);
    println!("JSON export of the last derivation:\n{}", doc.render());
}
