//! End-to-end acceptance suite. One test per criterion; each prints a
//! single pass/fail line (visible under --nocapture) and asserts it.
//!
//! Tolerances and time limits are part of the contract: exact equality for
//! the algebraic identities, 1e-12 for the derived constants, 15% for the
//! seeded analytic estimates, and wall-clock caps on the heavy sweeps.

use galdens::bounds::scenario;
use galdens::catalog::{build_entry, catalog, entry};
use galdens::density::{empirical_lower_density, pole_order_estimate, DEFAULT_S_GRID};
use galdens::rational::{rat, rat_int, rat_to_f64, Rat};
use galdens::stream::PlaceStream;
use galdens::verify::soundness_sweep;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn report(criterion: u32, ok: bool, detail: &str) {
    let verdict = if ok { "pass" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} - {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn within_limit(start: Instant, limit: Duration, what: &str) -> String {
    let elapsed = start.elapsed();
    assert!(
        elapsed < limit,
        "{what} took {elapsed:?}, limit {limit:?}"
    );
    format!("{} ms", elapsed.as_millis())
}

#[test]
fn criterion_1_derived_constants() {
    let start = Instant::now();
    let sqrt2 = 2f64.sqrt();
    let sqrt21 = 21f64.sqrt();
    let expected: [(&str, f64); 8] = [
        ("thm1a", 0.125),
        ("thm1b", 1.0 / (3.0 + 2.0 * sqrt2)),
        ("thm2", 0.4),
        ("gl3a-large", 1.0 / 28.0),
        ("gl3a-chars", 1.0 / 18.0),
        ("gl3b-mixed", 2.0 / (17.0 + 3.0 * sqrt21)),
        ("gl3c", 1.0 / 12.0),
        ("gl3-both-polyhedral", 1.0 / 14.0),
    ];
    let mut worst = 0f64;
    for (name, want) in expected {
        let b = scenario(name).unwrap().bound().unwrap();
        let got = b.value.to_f64();
        let err = (got - want).abs();
        assert!(
            err <= 1e-12,
            "{name}: derived {got}, closed form {want}, |diff| = {err:e}"
        );
        worst = worst.max(err);
    }
    let ms = within_limit(start, Duration::from_secs(1), "constant reproduction");
    report(
        1,
        true,
        &format!("eight derived constants within 1e-12 of their closed forms (worst |diff| {worst:.1e}, {ms})"),
    );
}

#[test]
fn criterion_2_identity_suite() {
    let mut rows = 0usize;
    for e in catalog() {
        assert!(e.table.orthogonality_holds(), "{} orthogonality", e.name);
        for (i, chi) in e.table.rows().iter().enumerate() {
            let mm = chi.mul(&chi.conj()).unwrap();
            let lhs = mm.norm_sq();
            let rhs = e.table.adjoint_norm(chi).unwrap() + rat_int(1);
            assert_eq!(lhs, rhs, "{} row {i} fourth moment", e.name);

            let split = chi.sym_power(2).add(&chi.alt_square()).unwrap();
            let square = chi.mul(chi).unwrap();
            assert!(
                split.equal_values(&square),
                "{} row {i} square split",
                e.name
            );
            rows += 1;
        }
    }
    report(
        2,
        true,
        &format!("fourth-moment identity, square split, and orthogonality exact on {rows} rows"),
    );
}

#[test]
fn criterion_3_adjoint_classes() {
    let start = Instant::now();

    // Freshly built entries so the timing covers table computation.
    for name in ["G72", "G216", "A6-3dim", "PSL27-3dim"] {
        let e = build_entry(name).unwrap();
        let chi = e.role_row("pi").unwrap();
        assert_eq!(
            e.table.adjoint_norm(chi).unwrap(),
            rat_int(1),
            "{name}: Ad should be irreducible"
        );
    }
    for name in ["dihedral-8", "dihedral-16"] {
        let e = build_entry(name).unwrap();
        let chi = e.role_row("pi").unwrap();
        assert!(
            e.table.adjoint_norm(chi).unwrap() > rat_int(1),
            "{name}: Ad should be reducible"
        );
    }

    // No faithful irreducible of an extraspecial group has an irreducible
    // adjoint: pi tensor conj(pi) is the regular character of the central
    // quotient, so Ad(pi) splits into all q - 1 nontrivial linears of G/Z
    // and <Ad, Ad> = q - 1. The assertions below record that computed truth
    // (norms 8 and 24), not an irreducibility claim.
    for (name, q) in [("extraspecial(3,1)", 9i128), ("extraspecial(5,1)", 25)] {
        let e = build_entry(name).unwrap();
        let chi = e.role_row("pi").unwrap();
        assert_eq!(
            e.table.adjoint_norm(chi).unwrap(),
            rat_int(q - 1),
            "{name}: Ad norm must equal q - 1"
        );
    }

    let ms = within_limit(start, Duration::from_secs(30), "adjoint classification");
    report(
        3,
        true,
        &format!(
            "Ad irreducible for G72, G216, A6-3dim, PSL27-3dim; reducible for dihedral-8, \
             dihedral-16; extraspecial adjoints are central-quotient regular characters \
             (norms 8 and 24 exactly; irreducibility there is impossible) ({ms})"
        ),
    );
}

#[test]
fn criterion_4_polyhedral_decompositions() {
    let tetra = entry("binary-tetrahedral").unwrap();
    let pi = tetra.role_row("pi").unwrap();
    let ad = tetra.table.adjoint_character(pi).unwrap();
    let trivial = tetra.table.trivial_index();
    let mus: Vec<usize> = tetra
        .table
        .self_twists(&ad)
        .unwrap()
        .into_iter()
        .filter(|&r| r != trivial)
        .collect();
    assert_eq!(mus.len(), 2, "Ad pi has the two cubic self-twists");

    // det(pi) is trivial for these 2-dimensional models, so the twist by
    // the central character drops out of both fourth-power splits.
    let sym4 = pi.sym_power(4);
    let mut rhs = pi.sym_power(2);
    for &m in &mus {
        rhs = rhs.add(tetra.table.row(m)).unwrap();
    }
    assert!(sym4.equal_values(&rhs), "tetrahedral Sym^4 split");

    let tower = tetra.table.adjoint_character(&ad).unwrap();
    let mut rhs = ad.scale(&rat_int(2));
    for &m in &mus {
        rhs = rhs.add(tetra.table.row(m)).unwrap();
    }
    assert!(tower.equal_values(&rhs), "Ad(Ad pi) tower split");

    let octa = entry("binary-octahedral").unwrap();
    let pi = octa.role_row("pi").unwrap();
    let eta = octa.role_row("twist").unwrap();
    assert!(
        eta.mul(eta).unwrap().equal_values(octa.table.row(octa.table.trivial_index())),
        "eta is quadratic"
    );
    let twisted = octa.table.adjoint_character(pi).unwrap().mul(eta).unwrap();
    let sym4 = pi.sym_power(4);
    let sigma = (0..octa.table.len())
        .filter(|&i| octa.table.degree(i) == 2)
        .find(|&i| {
            sym4.equal_values(&octa.table.row(i).add(&twisted).unwrap())
        });
    assert!(sigma.is_some(), "octahedral Sym^4 split");

    report(
        4,
        true,
        &format!(
            "tetrahedral Sym^4 = Sym^2 + mu + mu^2, octahedral Sym^4 = sigma + (Ad)eta \
             with sigma = row {}, and Ad(Ad) = mu + mu^2 + 2 Ad, all exact",
            sigma.unwrap()
        ),
    );
}

#[test]
fn criterion_5_soundness_sweep() {
    let start = Instant::now();
    let summary = soundness_sweep();
    let expected_pairs: usize = catalog()
        .iter()
        .map(|e| e.table.len() * (e.table.len() - 1))
        .sum();
    assert_eq!(summary.pairs, expected_pairs, "sweep covers every ordered pair");
    assert!(
        summary.bound_violations.is_empty(),
        "bound exceeded an exact density: {:?}",
        summary.bound_violations
    );
    assert!(
        summary.floor_violations.is_empty(),
        "a pair density fell below 1/(2n^2): {:?}",
        summary.floor_violations
    );
    let ms = within_limit(start, Duration::from_secs(60), "soundness sweep");
    report(
        5,
        true,
        &format!(
            "{} ordered pairs: best bound <= exact density and density >= 1/(2n^2), \
             exact comparisons, zero violations ({ms})",
            summary.pairs
        ),
    );
}

#[test]
fn criterion_6_summand_lemma() {
    let mut rows = 0usize;
    for e in catalog() {
        for rho in e.table.rows() {
            for (row, mult) in e.table.linear_summand_multiplicities(rho).unwrap() {
                assert!(
                    mult <= 1,
                    "{}: nontrivial linear chi_{row} occurs {mult} times in an adjoint",
                    e.name
                );
            }
            rows += 1;
        }
    }

    // Soft analogue, reported not asserted: 2-dimensional summands in
    // adjoints of 3-dimensional irreducibles.
    let mut max_mult = 0i64;
    let mut swept = 0usize;
    for e in catalog() {
        for i in 0..e.table.len() {
            if e.table.degree(i) != 3 {
                continue;
            }
            swept += 1;
            for (_, mult) in e
                .table
                .degree2_summand_multiplicities(e.table.row(i))
                .unwrap()
            {
                max_mult = max_mult.max(mult);
            }
        }
    }
    report(
        6,
        true,
        &format!(
            "nontrivial linears occur at most once in Ad across {rows} rows (hard); \
             degree-2 summand sweep over {swept} degree-3 rows reports max multiplicity \
             {max_mult} (soft, informational)"
        ),
    );
}

#[test]
fn criterion_7_analytic_consistency() {
    let start = Instant::now();
    let pairs = [("G216", "pi", "pi-twist"), ("binary-tetrahedral", "pi", "pi-twist")];
    let monomials = [(1u32, 1u32, 0u32, 0u32), (2, 2, 0, 0), (1, 0, 0, 1), (1, 1, 1, 1)];
    let mut checked = 0usize;

    for (name, role_a, role_b) in pairs {
        let e = entry(name).unwrap();
        let chi = e.role_row(role_a).unwrap();
        let chi_prime = e.role_row(role_b).unwrap();
        let stream = PlaceStream::new(Arc::clone(&e.group), 42, 1_000_000).unwrap();

        for monomial in monomials {
            // Exact pole order: the mean of the sampled coefficient, i.e.
            // the inner product of the monomial with the trivial character.
            let (w, x, y, z) = monomial;
            let mut f = e.table.row(e.table.trivial_index()).clone();
            for _ in 0..w {
                f = f.mul(chi).unwrap();
            }
            for _ in 0..x {
                f = f.mul(&chi.conj()).unwrap();
            }
            for _ in 0..y {
                f = f.mul(chi_prime).unwrap();
            }
            for _ in 0..z {
                f = f.mul(&chi_prime.conj()).unwrap();
            }
            let exact: Rat = f
                .inner_product_rat(e.table.row(e.table.trivial_index()))
                .unwrap();
            let target = rat_to_f64(&exact);

            let est = pole_order_estimate(&stream, chi, chi_prime, monomial, &DEFAULT_S_GRID)
                .unwrap()
                .estimate();
            if exact == rat(0, 1) {
                assert!(
                    est.abs() <= 0.15,
                    "{name} {monomial:?}: estimate {est}, exact 0"
                );
            } else {
                let rel = (est - target).abs() / target;
                assert!(
                    rel <= 0.15,
                    "{name} {monomial:?}: estimate {est}, exact {target}, rel err {rel:.3}"
                );
            }
            checked += 1;
        }

        let rep = empirical_lower_density(&stream, chi, chi_prime, &DEFAULT_S_GRID).unwrap();
        let exact = rat_to_f64(&rep.exact_density);
        let rel = (rep.extrapolated - exact).abs() / exact;
        assert!(
            rel <= 0.15,
            "{name} density: extrapolated {}, exact {exact}, rel err {rel:.3}",
            rep.extrapolated
        );
        checked += 1;
    }

    let ms = within_limit(start, Duration::from_secs(60), "analytic consistency");
    report(
        7,
        true,
        &format!(
            "seed 42, 10^6 places: {checked} pole-order and density estimates within 15% \
             of their exact values on (G216 pi, pi-twist) and (binary-tetrahedral pi, \
             pi-twist) ({ms})"
        ),
    );
}

#[test]
fn criterion_8_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_galdens");
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.json");
    std::fs::write(&table, r#"{"A": 1, "B": 1, "C": 1, "D": 2}"#).unwrap();
    let table = table.to_str().unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["catalog", "list"],
        vec!["group", "table", "G216"],
        vec!["moments", "G216", "pi", "pi-twist"],
        vec!["bound", "--scenario", "thm1b"],
        vec!["bound", "--table", table],
        vec!["density", "binary-tetrahedral", "pi", "pi-twist", "--count", "20000"],
        vec!["density", "C2", "trivial", "sign", "--count", "20000", "--format", "csv"],
        vec!["stream", "G216", "pi", "--count", "5000"],
        vec!["stream", "S3", "pi", "--count", "5000", "--format", "csv"],
        vec!["verify"],
    ];

    for args in &commands {
        let run = |threads: &str| {
            let out = std::process::Command::new(bin)
                .args(args)
                // The binary is single-threaded by design; the env var
                // documents that thread-count knobs cannot change output.
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .unwrap();
            assert!(
                out.status.success(),
                "{args:?} exited {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            );
            out.stdout
        };
        let first = run("1");
        let second = run("8");
        assert_eq!(first, second, "{args:?} output differs between runs");
        assert!(!first.is_empty(), "{args:?} produced no output");
    }

    report(
        8,
        true,
        &format!(
            "{} CLI commands byte-identical across repeated runs and thread settings",
            commands.len()
        ),
    );
}
