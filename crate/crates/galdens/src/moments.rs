//! Fourth-moment tables for pairs of irreducible characters.
//!
//! For a distinct pair (chi, chi') the table collects the exact inner
//! products that control the difference series: the fourth moments A and B
//! of each character, the cross moment C, the square cross term P, the four
//! mixed cubic terms Q1..Q4, and the disagreement numerator D (always 2 for
//! distinct irreducibles, by orthogonality). Downstream bound derivations
//! consume only this table, never the characters themselves.

use crate::chartab::CharacterTable;
use crate::classfun::ClassFunction;
use crate::radical::RadicalError;
use crate::rational::{rat_abs, rat_int, Rat};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MomentError {
    #[error("zero difference")]
    ZeroDifference,
    #[error("inconsistent moment table")]
    Inconsistent,
    #[error(transparent)]
    Radical(#[from] RadicalError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    /// <chi chibar, chi chibar>
    pub a: Rat,
    /// <chi' chibar', chi' chibar'>
    pub b: Rat,
    /// <chi chibar, chi' chibar'>
    pub c: Rat,
    /// |<chi^2, chi'^2>|; None when the table only carries second-order data.
    pub p: Option<Rat>,
    /// |<chi chibar chi, chi'>|, |<chi chibar chi', chi>|,
    /// |<chi' chibar' chi, chi'>|, |<chi' chibar' chi', chi>|.
    pub q: Option<[Rat; 4]>,
    /// Disagreement numerator.
    pub d: Rat,
}

impl MomentTable {
    /// Table with only A, B, C, D known.
    pub fn second_order(a: i128, b: i128, c: i128, d: i128) -> Self {
        MomentTable {
            a: rat_int(a),
            b: rat_int(b),
            c: rat_int(c),
            p: None,
            q: None,
            d: rat_int(d),
        }
    }

    /// Fully specified table from integers.
    pub fn full(a: i128, b: i128, c: i128, p: i128, q: [i128; 4], d: i128) -> Self {
        MomentTable {
            a: rat_int(a),
            b: rat_int(b),
            c: rat_int(c),
            p: Some(rat_int(p)),
            q: Some([rat_int(q[0]), rat_int(q[1]), rat_int(q[2]), rat_int(q[3])]),
            d: rat_int(d),
        }
    }

    /// Sum of the mixed cubic terms, when present.
    pub fn q_sum(&self) -> Option<Rat> {
        self.q.map(|q| q[0] + q[1] + q[2] + q[3])
    }
}

fn ip(f: &ClassFunction, g: &ClassFunction) -> Rat {
    f.inner_product_rat(g)
        .expect("rows of one character table share a group")
}

/// Exact moment table of a pair of distinct irreducible rows.
pub fn moment_table_for(
    table: &CharacterTable,
    i: usize,
    j: usize,
) -> Result<MomentTable, MomentError> {
    if i == j {
        return Err(MomentError::ZeroDifference);
    }
    let chi = table.row(i);
    let psi = table.row(j);
    let mul = |f: &ClassFunction, g: &ClassFunction| {
        f.mul(g).expect("rows of one character table share a group")
    };
    let mm = mul(chi, &chi.conj());
    let nn = mul(psi, &psi.conj());
    let a = ip(&mm, &mm);
    let b = ip(&nn, &nn);
    let c = ip(&mm, &nn);
    let p = rat_abs(&ip(&mul(chi, chi), &mul(psi, psi)));
    let q = [
        rat_abs(&ip(&mul(&mm, chi), psi)),
        rat_abs(&ip(&mul(&mm, psi), chi)),
        rat_abs(&ip(&mul(&nn, chi), psi)),
        rat_abs(&ip(&mul(&nn, psi), chi)),
    ];
    // Model invariants: C is a Cauchy-Schwarz cross term and P sits under it.
    assert!(c * c <= a * b, "cross moment exceeds its Cauchy-Schwarz ceiling");
    assert!(p <= c, "square cross term exceeds the cross moment");
    let out = MomentTable {
        a,
        b,
        c,
        p: Some(p),
        q: Some(q),
        d: rat_int(2),
    };
    if out.a.is_zero() && out.b.is_zero() && out.c.is_zero() {
        return Err(MomentError::Inconsistent);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::rational::rat;

    fn pair_table(name: &str, ra: &str, rb: &str) -> MomentTable {
        let e = entry(name).unwrap();
        moment_table_for(&e.table, e.role(ra).unwrap(), e.role(rb).unwrap()).unwrap()
    }

    #[test]
    fn zero_difference_is_rejected() {
        let e = entry("C2").unwrap();
        let pi = e.role("pi").unwrap();
        let err = moment_table_for(&e.table, pi, pi).unwrap_err();
        assert_eq!(err.to_string(), "zero difference");
    }

    #[test]
    fn pinned_model_tables() {
        let t = pair_table("G216", "pi", "pi-twist");
        assert_eq!(t, MomentTable::full(2, 2, 2, 0, [0, 0, 0, 0], 2));
        let t = pair_table("G216", "pi", "pi-dual");
        assert_eq!(t, MomentTable::full(2, 2, 2, 0, [0, 0, 0, 0], 2));
        let t = pair_table("binary-tetrahedral", "pi", "pi-twist");
        assert_eq!(t, MomentTable::full(2, 2, 2, 1, [1, 1, 1, 1], 2));
        let t = pair_table("binary-octahedral", "pi", "pi-twist");
        assert_eq!(t, MomentTable::full(2, 2, 2, 2, [0, 0, 0, 0], 2));
        let t = pair_table("dihedral-16", "pi", "pi-twist");
        assert_eq!(t, MomentTable::full(3, 3, 3, 3, [1, 1, 1, 1], 2));
        let t = pair_table("C2", "trivial", "pi");
        assert_eq!(t, MomentTable::full(1, 1, 1, 1, [0, 0, 0, 0], 2));
    }

    #[test]
    fn q_sum_and_accessors() {
        let t = MomentTable::full(2, 2, 2, 1, [1, 1, 1, 1], 2);
        assert_eq!(t.q_sum(), Some(rat_int(4)));
        let t = MomentTable::second_order(2, 2, 1, 2);
        assert_eq!(t.q_sum(), None);
        assert_eq!(t.c, rat(1, 1));
    }

    #[test]
    fn cross_moment_ceilings_hold_catalog_wide() {
        // Spot-check the asserted invariants on a spread of catalog pairs.
        for name in ["S3", "A4", "Q8", "dihedral-8", "PSL27-3dim"] {
            let e = entry(name).unwrap();
            let n = e.table.len();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let t = moment_table_for(&e.table, i, j).unwrap();
                        assert!(t.c * t.c <= t.a * t.b);
                        assert!(t.p.unwrap() <= t.c);
                    }
                }
            }
        }
    }
}
