//! Every named bound scenario, evaluated exactly. The value column is a
//! closed form (rational, or quadratic surd when the optimum sits at an
//! irrational point of the moment polytope); the decimal is for reading.

use galdens::bounds::{scenario, SCENARIO_NAMES};
use galdens::rational::format_real;

fn main() {
    println!(
        "{:<20} {:<20} {:>22} {:>22}",
        "scenario", "method", "closed form", "decimal"
    );
    for name in SCENARIO_NAMES {
        let s = scenario(name).unwrap();
        let b = s.bound().unwrap();
        println!(
            "{:<20} {:<20} {:>22} {:>22}",
            name,
            b.method.tag(),
            b.value.to_string(),
            format_real(b.value_f64())
        );
    }

    println!("\nderivation trace for gl3b-mixed:");
    let b = scenario("gl3b-mixed").unwrap().bound().unwrap();
    for step in &b.trace {
        println!("  [{}] {}", step.label, step.detail);
    }
    println!("  denominator: {}", b.denominator);
}
