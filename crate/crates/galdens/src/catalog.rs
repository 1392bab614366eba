//! Built-in model catalog.
//!
//! Each entry packages a finite group given by explicit generators, its
//! character table, and a map of named rows ("roles") that the command line,
//! the examples, and the test suite refer to. Construction is deterministic:
//! generators are listed in a fixed order and every role is resolved by a
//! property of the table, never by a hardcoded row number.

use crate::chartab::{character_table, CharacterTable, TableError};
use crate::classfun::ClassFunction;
use crate::cyclotomic::Cyclotomic;
use crate::element::GroupElement;
use crate::group::{group_from_generators, FiniteGroup, GroupKind};
use crate::rational::{rat, rat_int, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
    #[error("sharpness search supports degrees 2 and 3, got {0}")]
    UnsupportedDegree(u32),
    #[error("no degree-{0} irreducibles in subset")]
    NoIrreducibles(u32),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Entry names in their canonical (byte-sorted) order.
pub const CATALOG_NAMES: [&str; 15] = [
    "A4",
    "A6-3dim",
    "C2",
    "G216",
    "G72",
    "PSL27-3dim",
    "Q8",
    "S3",
    "binary-octahedral",
    "binary-tetrahedral",
    "dihedral-16",
    "dihedral-8",
    "extraspecial(3,1)",
    "extraspecial(3,2)",
    "extraspecial(5,1)",
];

#[derive(Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub table: CharacterTable,
    /// Role name -> row index in `table`. "pi" and "trivial" always exist;
    /// "Pi", "rho", "sign" are aliases; "pi-dual", "twist", "pi-twist" exist
    /// when the corresponding row is genuinely distinct.
    pub roles: BTreeMap<String, usize>,
    pub notes: String,
}

impl CatalogEntry {
    pub fn role(&self, role: &str) -> Option<usize> {
        self.roles.get(role).copied()
    }

    pub fn role_row(&self, role: &str) -> Option<&ClassFunction> {
        self.role(role).map(|i| self.table.row(i))
    }

    /// Distinguished degrees: sorted, deduplicated degrees of the role rows.
    pub fn distinguished_degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.roles.values().map(|&i| self.table.degree(i)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

/// One line of `list_catalog` output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub name: String,
    pub order: usize,
    pub degrees: Vec<u32>,
}

pub fn list_catalog(entries: &[Arc<CatalogEntry>]) -> Vec<CatalogRow> {
    let mut rows: Vec<CatalogRow> = entries
        .iter()
        .map(|e| CatalogRow {
            name: e.name.clone(),
            order: e.group.order(),
            degrees: e.distinguished_degrees(),
        })
        .collect();
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    rows
}

/// The full catalog, built once per process and shared.
pub fn catalog() -> &'static [Arc<CatalogEntry>] {
    static CACHE: OnceLock<Vec<Arc<CatalogEntry>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        CATALOG_NAMES
            .iter()
            .map(|n| Arc::new(build_entry(n).expect("built-in catalog entry")))
            .collect()
    })
}

pub fn entry(name: &str) -> Result<Arc<CatalogEntry>, CatalogError> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .cloned()
        .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}

/// Build one entry from scratch (bypasses the shared cache).
pub fn build_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    let gens = generators_for(name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))?;
    let group = Arc::new(group_from_generators(&gens).expect("catalog generators close"));
    let table = character_table(Arc::clone(&group))?;
    let roles = assign_roles(name, &group, &table);
    Ok(CatalogEntry {
        name: name.to_string(),
        group,
        table,
        roles,
        notes: notes_for(name),
    })
}

// ---- generator sets ---------------------------------------------------

fn perm_el(images: &[u16]) -> GroupElement {
    GroupElement::perm(images.to_vec()).expect("catalog permutation generator")
}

fn mat_el(dim: usize, flat: Vec<Cyclotomic>) -> GroupElement {
    GroupElement::matrix(dim, flat).expect("catalog matrix generator")
}

fn diag_el(entries: Vec<Cyclotomic>) -> GroupElement {
    let dim = entries.len();
    let mut flat = vec![Cyclotomic::zero(1); dim * dim];
    for (i, e) in entries.into_iter().enumerate() {
        flat[i * dim + i] = e;
    }
    mat_el(dim, flat)
}

/// 3x3 cyclic shift e1 -> e2 -> e3 -> e1 over the given cyclotomic order.
fn shift3(order: u32) -> GroupElement {
    let o = Cyclotomic::one(order);
    let z = Cyclotomic::zero(order);
    mat_el(
        3,
        vec![
            z.clone(),
            z.clone(),
            o.clone(),
            o.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            o,
            z,
        ],
    )
}

/// Generators of the order-648 reflection lift. Its scalar subgroup has
/// order 3 and the projective image has order 216.
fn reflection_lift_gens() -> Vec<GroupElement> {
    let zeta = Cyclotomic::root(9, 1);
    let om = Cyclotomic::root(9, 6); // primitive cube root
    let om2 = om.pow(2);
    let one = Cyclotomic::one(9);
    let s = diag_el(vec![one.clone(), om.clone(), om2.clone()]);
    let t = shift3(9);
    let u = diag_el(vec![zeta.clone(), zeta.clone(), zeta.mul(&om)]);
    // 1/(om - om2) = (om2 - om)/3, the usual unitary normalization.
    let pref = om2.sub(&om).scale(&rat(1, 3));
    let v = mat_el(
        3,
        vec![
            pref.clone(),
            pref.clone(),
            pref.clone(),
            pref.clone(),
            pref.mul(&om),
            pref.mul(&om2),
            pref.clone(),
            pref.mul(&om2),
            pref.mul(&om),
        ],
    );
    vec![s, t, u, v]
}

/// Extraspecial group of order p^(2k+1) and exponent p, acting monomially
/// in dimension p^k: k coordinate shifts and k diagonal root-of-unity maps.
fn heisenberg_gens(p: u32, k: u32) -> Vec<GroupElement> {
    let dim = p.pow(k) as usize;
    let pu = p as usize;
    let mut gens = Vec::new();
    for j in 0..k {
        let stride = p.pow(j) as usize;
        let mut flat = vec![Cyclotomic::zero(p); dim * dim];
        for v in 0..dim {
            let digit = (v / stride) % pu;
            let w = if digit + 1 < pu {
                v + stride
            } else {
                v - (pu - 1) * stride
            };
            flat[w * dim + v] = Cyclotomic::one(p);
        }
        gens.push(mat_el(dim, flat));
    }
    for j in 0..k {
        let stride = p.pow(j) as usize;
        let mut flat = vec![Cyclotomic::zero(p); dim * dim];
        for v in 0..dim {
            let digit = (v / stride) % pu;
            flat[v * dim + v] = Cyclotomic::root(p, digit as i64);
        }
        gens.push(mat_el(dim, flat));
    }
    gens
}

/// i and w = (-1+i+j+k)/2 as 2x2 complex matrices; together with j they
/// generate the binary tetrahedral and octahedral groups.
fn quaternion_i() -> GroupElement {
    let i4 = Cyclotomic::root(4, 1);
    diag_el(vec![i4.clone(), i4.pow(3)])
}

fn quaternion_j() -> GroupElement {
    let one = Cyclotomic::one(4);
    let z = Cyclotomic::zero(4);
    mat_el(2, vec![z.clone(), one.clone(), one.scale(&rat_int(-1)), z])
}

fn quaternion_w() -> GroupElement {
    let i4 = Cyclotomic::root(4, 1);
    let half = rat(1, 2);
    let a = i4.add(&Cyclotomic::from_rat(4, rat_int(-1))).scale(&half); // (-1+i)/2
    let b = i4.add(&Cyclotomic::one(4)).scale(&half); // (1+i)/2
    let d = i4.add(&Cyclotomic::one(4)).scale(&rat(-1, 2)); // (-1-i)/2
    mat_el(2, vec![a.clone(), b, a, d])
}

fn generators_for(name: &str) -> Option<Vec<GroupElement>> {
    let gens = match name {
        "A4" => vec![perm_el(&[1, 2, 0, 3]), perm_el(&[1, 0, 3, 2])],
        "A6-3dim" => {
            // Triple cover of Alt(6) in dimension 3 over the 15th
            // cyclotomic field; tau is the golden ratio.
            let tau = Cyclotomic::new(15, &[(0, rat_int(1)), (3, rat_int(1)), (12, rat_int(1))]);
            let om = Cyclotomic::root(15, 5);
            let om2 = Cyclotomic::root(15, 10);
            let one = Cyclotomic::one(15);
            let zero = Cyclotomic::zero(15);
            let neg1 = Cyclotomic::from_rat(15, rat_int(-1));
            let half = rat(1, 2);
            let e3 = shift3(15);
            let b2 = diag_el(vec![one.clone(), neg1.clone(), neg1.clone()]);
            let tm1h = tau.add(&neg1).scale(&half); // (tau-1)/2
            let th = tau.scale(&half); // tau/2
            let m5 = mat_el(
                3,
                vec![
                    tm1h.clone(),
                    th.scale(&rat_int(-1)),
                    one.scale(&half),
                    th,
                    one.scale(&half),
                    tm1h.clone(),
                    one.scale(&rat(-1, 2)),
                    tm1h,
                    tau.scale(&half),
                ],
            );
            let m = mat_el(
                3,
                vec![
                    zero.clone(),
                    om,
                    zero.clone(),
                    one,
                    zero.clone(),
                    zero.clone(),
                    zero.clone(),
                    zero,
                    om2.scale(&rat_int(-1)),
                ],
            );
            vec![e3, b2, m5, m]
        }
        "C2" => vec![perm_el(&[1, 0])],
        "G216" => reflection_lift_gens(),
        "G72" => {
            let g = reflection_lift_gens();
            let (s, t, u, v) = (&g[0], &g[1], &g[2], &g[3]);
            let uvu = u.mul(v).mul(&u.inverse());
            vec![s.clone(), t.clone(), uvu, v.clone()]
        }
        "PSL27-3dim" => vec![perm_el(&[1, 3, 5, 4, 6, 0, 2]), perm_el(&[0, 1, 2, 4, 3, 6, 5])],
        "Q8" => vec![quaternion_i(), quaternion_j()],
        "S3" => vec![perm_el(&[1, 0, 2]), perm_el(&[1, 2, 0])],
        "binary-octahedral" => {
            let z8 = Cyclotomic::root(8, 1);
            let u8el = diag_el(vec![z8.clone(), z8.pow(7)]);
            vec![u8el, quaternion_j(), quaternion_w()]
        }
        "binary-tetrahedral" => vec![quaternion_i(), quaternion_w()],
        "dihedral-16" => vec![
            perm_el(&[1, 2, 3, 4, 5, 6, 7, 0]),
            perm_el(&[0, 7, 6, 5, 4, 3, 2, 1]),
        ],
        "dihedral-8" => vec![perm_el(&[1, 2, 3, 0]), perm_el(&[0, 3, 2, 1])],
        "extraspecial(3,1)" => heisenberg_gens(3, 1),
        "extraspecial(3,2)" => heisenberg_gens(3, 2),
        "extraspecial(5,1)" => heisenberg_gens(5, 1),
        _ => return None,
    };
    Some(gens)
}

// ---- roles -------------------------------------------------------------

fn first_of_degree(table: &CharacterTable, d: u32) -> usize {
    (0..table.len())
        .find(|&i| table.degree(i) == d)
        .expect("catalog table must contain a row of the requested degree")
}

/// A row is faithful when its value equals its degree only at the identity.
fn row_is_faithful(table: &CharacterTable, i: usize) -> bool {
    let row = table.row(i);
    let deg = Cyclotomic::from_rat(1, rat_int(table.degree(i) as i128));
    let id_class = table.group().class_of(0) as usize;
    (0..table.group().class_count()).all(|k| k == id_class || *row.value(k) != deg)
}

fn pick_pi(name: &str, group: &Arc<FiniteGroup>, table: &CharacterTable) -> usize {
    match name {
        "C2" => (0..table.len())
            .find(|&i| i != table.trivial_index())
            .expect("C2 has a nontrivial row"),
        "S3" | "dihedral-8" => first_of_degree(table, 2),
        "dihedral-16" => (0..table.len())
            .find(|&i| table.degree(i) == 2 && row_is_faithful(table, i))
            .expect("dihedral-16 has a faithful degree-2 row"),
        "A4" | "PSL27-3dim" => first_of_degree(table, 3),
        _ => {
            // Matrix models: the defining trace row.
            let def = ClassFunction::defining_character(Arc::clone(group));
            table
                .find_row(&def)
                .expect("defining character of a catalog matrix group is irreducible")
        }
    }
}

fn assign_roles(name: &str, group: &Arc<FiniteGroup>, table: &CharacterTable) -> BTreeMap<String, usize> {
    let mut roles = BTreeMap::new();
    roles.insert("trivial".to_string(), table.trivial_index());
    let pi = pick_pi(name, group, table);
    roles.insert("pi".to_string(), pi);
    if table.degree(pi) == 3 {
        roles.insert("Pi".to_string(), pi);
    }
    if matches!(name, "G72" | "G216") || name.starts_with("extraspecial") {
        roles.insert("rho".to_string(), pi);
    }
    if name == "C2" {
        roles.insert("sign".to_string(), pi);
    }
    let dual = table
        .find_row(&table.row(pi).conj())
        .expect("conjugate of an irreducible row is a row");
    if dual != pi {
        roles.insert("pi-dual".to_string(), dual);
    }
    // First linear row (in table order, skipping the trivial one) whose
    // product with pi lands on a different row.
    for i in table.linear_rows() {
        if i == table.trivial_index() {
            continue;
        }
        let prod = table
            .row(pi)
            .mul(table.row(i))
            .expect("rows live on one group");
        let j = table
            .find_row(&prod)
            .expect("linear twist of an irreducible row is a row");
        if j != pi {
            roles.insert("twist".to_string(), i);
            roles.insert("pi-twist".to_string(), j);
            break;
        }
    }
    roles
}

fn notes_for(name: &str) -> String {
    match name {
        "A4" => "alternating group on four points; the degree-3 row is the smallest faithful irreducible and twists onto itself".to_string(),
        "A6-3dim" => "triple cover of the alternating group on six points, generated by 3x3 matrices over the 15th cyclotomic field; the degree-3 generator row has an irreducible adjoint and a distinct dual".to_string(),
        "C2" => "cyclic group of order two; the sign row is the unique nontrivial character".to_string(),
        "G216" => "3x3 complex reflection group of order 648 over the 9th cyclotomic field; projective image of order 216, and the degree-3 generator row admits two distinct cubic twists".to_string(),
        "G72" => "index-3 subgroup of the order-648 reflection group with projective image of order 72; all three cubic twists of the generator row are distinct".to_string(),
        "PSL27-3dim" => "simple group of order 168 given by permutations on seven points; its two degree-3 rows form a dual pair with irreducible adjoints".to_string(),
        "Q8" => "quaternion group in its 2x2 matrix form; the degree-2 row is faithful, self-dual, and fixed by every linear twist".to_string(),
        "S3" => "symmetric group on three points; the degree-2 row is the reflection character".to_string(),
        "binary-octahedral" => "double cover of the symmetric group on four points inside the unit quaternions; the degree-2 generator row has a quadratic twist and an irreducible adjoint".to_string(),
        "binary-tetrahedral" => "double cover of the alternating group on four points inside the unit quaternions; the degree-2 generator row has two distinct cubic twists and an irreducible adjoint".to_string(),
        "dihedral-16" => "symmetries of the regular octagon; the faithful degree-2 rows pair up under a quadratic twist".to_string(),
        "dihedral-8" => "symmetries of the square; the unique degree-2 row is monomial with a reducible adjoint".to_string(),
        _ => {
            if let Some((p, k)) = parse_extraspecial(name) {
                let order = p.pow(2 * k + 1);
                let dim = p.pow(k);
                format!(
                    "extraspecial group of order {order} and exponent {p} in its monomial degree-{dim} representation; the adjoint of the faithful row is the regular character of the central quotient with the trivial row removed"
                )
            } else {
                String::new()
            }
        }
    }
}

fn parse_extraspecial(name: &str) -> Option<(u32, u32)> {
    let inner = name.strip_prefix("extraspecial(")?.strip_suffix(')')?;
    let (p, k) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, k.trim().parse().ok()?))
}

// ---- sharpness search --------------------------------------------------

#[derive(Clone, Debug)]
pub struct SharpnessWitness {
    pub entry: String,
    pub row_a: usize,
    pub row_b: usize,
    pub density: Rat,
}

/// Scan all ordered pairs of distinct degree-n irreducible rows within each
/// entry of the subset and return the smallest disagreement density found,
/// together with the pair attaining it. Every returned density is at least
/// 1/(2 n^2); that floor is asserted, not assumed.
pub fn sharpness_search(
    n: u32,
    entries: &[Arc<CatalogEntry>],
) -> Result<(Rat, SharpnessWitness), CatalogError> {
    if n != 2 && n != 3 {
        return Err(CatalogError::UnsupportedDegree(n));
    }
    let floor = Rat::new(1, 2 * (n as i128) * (n as i128));
    let mut best: Option<(Rat, SharpnessWitness)> = None;
    for e in entries {
        let rows: Vec<usize> = (0..e.table.len()).filter(|&i| e.table.degree(i) == n).collect();
        for &a in &rows {
            for &b in &rows {
                if a == b {
                    continue;
                }
                let d = e
                    .table
                    .row(a)
                    .disagreement_density(e.table.row(b))
                    .expect("rows live on one group");
                assert!(!d.is_zero(), "distinct irreducible rows must differ somewhere");
                assert!(
                    d >= floor,
                    "density floor 1/{} violated by {} rows {} and {}",
                    2 * n * n,
                    e.name,
                    a,
                    b
                );
                if best.as_ref().map_or(true, |(m, _)| d < *m) {
                    best = Some((
                        d,
                        SharpnessWitness {
                            entry: e.name.clone(),
                            row_a: a,
                            row_b: b,
                            density: d,
                        },
                    ));
                }
            }
        }
    }
    best.ok_or(CatalogError::NoIrreducibles(n))
}

/// Convenience: group kind tag for reports.
pub fn kind_tag(group: &FiniteGroup) -> &'static str {
    match group.kind() {
        GroupKind::Permutation { .. } => "permutation",
        GroupKind::Matrix { .. } => "matrix",
    }
}
