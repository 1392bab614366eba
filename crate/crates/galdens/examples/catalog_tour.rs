//! Walk the built-in catalog: every finite model with its order, class
//! count, distinguished character degrees, and the roles the other tools
//! accept on the command line.

use galdens::catalog::{catalog, kind_tag, list_catalog};

fn main() {
    let entries = catalog();
    println!("{} catalog entries\n", entries.len());
    println!(
        "{:<20} {:>6} {:>8} {:>8}  distinguished degrees",
        "name", "order", "classes", "kind"
    );
    for row in list_catalog(entries) {
        let e = galdens::catalog::entry(&row.name).unwrap();
        let degrees: Vec<String> = row.degrees.iter().map(u32::to_string).collect();
        println!(
            "{:<20} {:>6} {:>8} {:>8}  {}",
            row.name,
            row.order,
            e.group.class_count(),
            kind_tag(&e.group),
            degrees.join(", ")
        );
    }

    println!("\nroles by entry:");
    for e in entries {
        let roles: Vec<String> = e
            .roles
            .iter()
            .map(|(role, &row)| format!("{role}={}d", e.table.degree(row)))
            .collect();
        println!("  {:<20} {}", e.name, roles.join("  "));
    }

    println!("\nnotes:");
    for e in entries {
        println!("  {:<20} {}", e.name, e.notes);
    }
}
