//! Print two character tables in full: S3 as a warm-up and G216, the
//! 3-dimensional model whose twists drive the sharpest density examples.
//! All values are exact cyclotomics; nothing here is floating point.

use galdens::catalog::entry;

fn print_table(name: &str) {
    let e = entry(name).unwrap();
    let t = &e.table;
    println!(
        "{name}: order {}, exponent {}, {} classes, splitting prime {}",
        e.group.order(),
        e.group.exponent(),
        e.group.class_count(),
        t.prime()
    );

    print!("{:>10}", "class size");
    for c in e.group.classes() {
        print!("{:>12}", c.size);
    }
    println!();
    print!("{:>10}", "rep order");
    for c in e.group.classes() {
        print!("{:>12}", c.rep_order);
    }
    println!();

    for (i, row) in t.rows().iter().enumerate() {
        print!("chi_{i:<2} deg{:<2}", t.degree(i));
        for v in row.values() {
            print!("{:>12}", v.to_string());
        }
        println!();
    }
    println!(
        "row orthogonality holds: {}\n",
        t.orthogonality_holds()
    );
}

fn main() {
    print_table("S3");
    print_table("G216");
}
