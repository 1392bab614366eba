//! Exact character tables by the modular class-algebra method, plus every
//! table-dependent operation: decomposition, adjoints, twists, induction.
//!
//! The table is computed over a prime field F_p chosen so that p = 1 mod
//! exponent(G) (all needed roots of unity exist mod p), p > 2*sqrt|G| (degree
//! recovery is unambiguous), and p > class count + 1. Central characters are
//! found as the common eigenvectors of the class-sum structure matrices,
//! split deterministically one class at a time, then lifted to exact
//! cyclotomic values through eigenvalue multiplicities of the power maps.

use crate::classfun::{rat_as_int, rat_as_nonneg_int, ClassFunction};
use crate::cyclotomic::{Cyclotomic, ORDER_CAP};
use crate::group::{FiniteGroup, GroupError};
use crate::rational::{rat_int, Rat};
use num_traits::One;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("character table requires group exponent <= {ORDER_CAP} (got {0})")]
    ExponentCap(u64),
    #[error("no suitable prime below {0}")]
    PrimeSearch(u64),
    #[error("mismatched groups")]
    MismatchedGroups,
    #[error("input is not a virtual character")]
    NotVirtual,
    #[error("adjoint defined only for cuspidal model objects")]
    NotCuspidal,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Prime-field helpers (p < 2^32 so products fit u64 via u128).
#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
    /// Smallest primitive root mod p.
    fn primitive_root(&self) -> u64 {
        let mut factors = Vec::new();
        let mut m = self.p - 1;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        'outer: for g in 2..self.p {
            for &f in &factors {
                if self.pow(g, (self.p - 1) / f) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("every prime has a primitive root")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p = 1 mod modulus with p > floor plus margin conditions.
fn dixon_prime(exponent: u64, order: usize, classes: usize) -> Result<u64, TableError> {
    let lower = {
        let s = (order as f64).sqrt();
        let a = (2.0 * s).ceil() as u64 + 1;
        a.max(classes as u64 + 2)
    };
    // first candidate = 1 mod exponent that is >= lower
    let mut k = lower.div_ceil(exponent).max(1);
    let cap = 100_000_000u64;
    loop {
        let p = k * exponent + 1;
        if p > cap {
            return Err(TableError::PrimeSearch(cap));
        }
        if p >= lower && is_prime(p) {
            return Ok(p);
        }
        k += 1;
    }
}

#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    rows: Vec<ClassFunction>,
    degrees: Vec<u32>,
    trivial: usize,
    prime: u64,
}

/// Compute the full exact character table of a group.
pub fn character_table(group: Arc<FiniteGroup>) -> Result<CharacterTable, TableError> {
    let e = group.exponent();
    if e > ORDER_CAP as u64 {
        return Err(TableError::ExponentCap(e));
    }
    let n = group.order();
    let r = group.class_count();
    let p = dixon_prime(e, n, r)?;
    let f = Fp { p };

    // structure matrices: a[i][j][k] = #{x in C_i : x^{-1} z_k in C_j}
    let classes = group.classes();
    let mut mats: Vec<Vec<Vec<u64>>> = vec![vec![vec![0; r]; r]; r];
    for (i, ci) in classes.iter().enumerate() {
        for &x in &ci.members {
            let xi = group.inverse(x);
            for (k, ck) in classes.iter().enumerate() {
                let j = group.class_of(group.mul(xi, ck.rep)) as usize;
                mats[i][j][k] += 1;
            }
        }
    }

    // split the common eigenspaces deterministically, class by class
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![rref_identity(r)];
    for mat in mats.iter() {
        if spaces.iter().all(|w| w.len() == 1) {
            break;
        }
        let mut next: Vec<Vec<Vec<u64>>> = Vec::with_capacity(r);
        for w in spaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            let dim = w.len();
            let restr = restrict(&f, mat, &w);
            let mut found = 0usize;
            for lam in 0..p {
                if found == dim {
                    break;
                }
                let ker = kernel(&f, &sub_lambda(&f, &restr, lam));
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                // map kernel coordinates back to length-r vectors
                let base: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; r];
                        for (bi, b) in w.iter().enumerate() {
                            for (c, vc) in v.iter_mut().enumerate() {
                                *vc = f.add(*vc, f.mul(coef[bi], b[c]));
                            }
                        }
                        v
                    })
                    .collect();
                next.push(rref(&f, base));
            }
            assert_eq!(found, dim, "eigenspace dimensions must sum to the subspace dimension");
        }
        spaces = next;
    }
    assert!(
        spaces.iter().all(|w| w.len() == 1) && spaces.len() == r,
        "class algebra failed to split"
    );

    // normalize eigenvectors into central characters: omega(id class) = 1
    let id_class = group.class_of(0) as usize;
    let omegas: Vec<Vec<u64>> = spaces
        .into_iter()
        .map(|w| {
            let v = &w[0];
            let s = f.inv(v[id_class]);
            v.iter().map(|&x| f.mul(x, s)).collect()
        })
        .collect();

    // inverse-class map and class sizes mod p
    let inv_class: Vec<usize> = classes
        .iter()
        .map(|c| group.class_of(group.inverse(c.rep)) as usize)
        .collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.size as u64).collect();
    let n_mod = (n as u64) % p;

    // recover degrees and residue rows
    let sqrt_n = (n as f64).sqrt() as u64 + 1;
    let mut residue_rows: Vec<(u32, Vec<u64>)> = Vec::with_capacity(r);
    for om in &omegas {
        let mut s = 0u64;
        for k in 0..r {
            s = f.add(s, f.mul(f.mul(om[k], om[inv_class[k]]), f.inv(sizes[k] % p)));
        }
        let d2 = f.mul(n_mod, f.inv(s));
        let d = (1..=sqrt_n)
            .find(|&d| f.mul(d % p, d % p) == d2)
            .expect("degree recovery is unambiguous for p > 2 sqrt |G|");
        let row: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(d % p, om[k]), f.inv(sizes[k] % p)))
            .collect();
        residue_rows.push((d as u32, row));
    }
    debug_assert_eq!(
        residue_rows.iter().map(|(d, _)| (*d as u64) * (*d as u64)).sum::<u64>(),
        n as u64,
        "degree squares must sum to |G|"
    );

    // lift each residue row to exact cyclotomic values via eigenvalue
    // multiplicities of the power maps
    let root = f.primitive_root();
    let mut lifted: Vec<(u32, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for (d, row) in &residue_rows {
        let mut vals = Vec::with_capacity(r);
        #[allow(clippy::needless_range_loop)] // k tracks the class index in step with the table column
        for k in 0..r {
            let o = classes[k].rep_order as u64;
            let z = f.pow(root, (p - 1) / o);
            let zinv = f.inv(z);
            let oinv = f.inv(o % p);
            let mut terms: Vec<(i64, Rat)> = Vec::new();
            let mut total = 0u64;
            for j in 0..o {
                // multiplicity of zeta_o^j among the eigenvalues at z_k
                let mut acc = 0u64;
                for l in 0..o {
                    let kl = group.power_class(k, l) as usize;
                    acc = f.add(acc, f.mul(row[kl], f.pow(zinv, (j * l) % (p - 1).max(1))));
                }
                let m = f.mul(acc, oinv);
                assert!(m <= *d as u64, "eigenvalue multiplicity exceeds degree");
                total += m;
                if m > 0 {
                    terms.push((j as i64, rat_int(m as i128)));
                }
            }
            assert_eq!(total, *d as u64, "eigenvalue multiplicities must sum to the degree");
            vals.push(Cyclotomic::new(o as u32, &terms));
        }
        lifted.push((*d, vals));
    }

    // canonical row order: ascending degree, then value key
    lifted.sort_by(|a, b| {
        let ka: Vec<_> = a.1.iter().map(|v| v.sort_key()).collect();
        let kb: Vec<_> = b.1.iter().map(|v| v.sort_key()).collect();
        (a.0, ka).cmp(&(b.0, kb))
    });

    let degrees: Vec<u32> = lifted.iter().map(|(d, _)| *d).collect();
    let rows: Vec<ClassFunction> = lifted
        .into_iter()
        .map(|(_, vals)| ClassFunction::new(Arc::clone(&group), vals).expect("row length"))
        .collect();
    let trivial = rows
        .iter()
        .position(|row| row.values().iter().all(|v| v.as_rational() == Some(Rat::one())))
        .expect("trivial character is always present");

    Ok(CharacterTable { group, rows, degrees, trivial, prime: p })
}

fn rref_identity(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()
}

/// Reduced row echelon form over F_p; drops zero rows.
fn rref(f: &Fp, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivot_row = 0usize;
    for c in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let Some(pr) = (pivot_row..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(pivot_row, pr);
        let inv = f.inv(rows[pivot_row][c]);
        for x in rows[pivot_row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != pivot_row && rows[i][c] != 0 {
                let t = rows[i][c];
                #[allow(clippy::needless_range_loop)] // two rows of the same matrix are indexed together
                for j in 0..cols {
                    let s = f.mul(t, rows[pivot_row][j]);
                    rows[i][j] = f.sub(rows[i][j], s);
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

/// Matrix of the action of `mat` on the span of `basis` (basis in RREF).
fn restrict(f: &Fp, mat: &[Vec<u64>], basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let r = mat.len();
    let d = basis.len();
    // pivot column of each basis row
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis row"))
        .collect();
    let mut out = vec![vec![0u64; d]; d];
    for (bi, b) in basis.iter().enumerate() {
        // image = mat * b
        let mut img = vec![0u64; r];
        for (i, row) in mat.iter().enumerate() {
            let mut acc = 0u64;
            for k in 0..r {
                if row[k] != 0 && b[k] != 0 {
                    acc = f.add(acc, f.mul(row[k] % f.p, b[k]));
                }
            }
            img[i] = acc;
        }
        // express img in the basis by pivot elimination
        for (bj, bb) in basis.iter().enumerate() {
            let c = img[pivots[bj]];
            if c != 0 {
                out[bj][bi] = c;
                for k in 0..r {
                    let s = f.mul(c, bb[k]);
                    img[k] = f.sub(img[k], s);
                }
            }
        }
        debug_assert!(img.iter().all(|&x| x == 0), "invariant subspace violated");
    }
    out
}

fn sub_lambda(f: &Fp, m: &[Vec<u64>], lam: u64) -> Vec<Vec<u64>> {
    let mut out = m.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = f.sub(row[i], lam);
    }
    out
}

/// Nullspace basis of a square matrix over F_p (rows of the result).
fn kernel(f: &Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = m.len();
    let red = rref(f, m.to_vec());
    let mut pivot_cols = Vec::new();
    for row in &red {
        if let Some(c) = row.iter().position(|&x| x != 0) {
            pivot_cols.push(c);
        }
    }
    let mut out = Vec::new();
    for free in 0..d {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; d];
        v[free] = 1;
        for (ri, row) in red.iter().enumerate() {
            // pivot_cols[ri] coefficient = -row[free]
            if row[free] != 0 {
                v[pivot_cols[ri]] = f.sub(0, row[free]);
            }
        }
        out.push(v);
    }
    out
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Irreducible characters in canonical order (ascending degree, then
    /// lexicographic value key).
    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial
    }

    /// Modular prime used during construction (diagnostic only).
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn linear_rows(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == 1).collect()
    }

    fn check_same_group(&self, f: &ClassFunction) -> Result<(), TableError> {
        if Arc::ptr_eq(&self.group, f.group()) {
            Ok(())
        } else {
            Err(TableError::MismatchedGroups)
        }
    }

    /// Decompose a virtual character into row multiplicities (row, mult),
    /// only nonzero entries, ascending row index.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<(usize, i64)>, TableError> {
        self.check_same_group(f)?;
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let ip = f.inner_product(row).map_err(|_| TableError::MismatchedGroups)?;
            let r = ip.as_rational().ok_or(TableError::NotVirtual)?;
            let m = rat_as_int(&r).ok_or(TableError::NotVirtual)?;
            if m != 0 {
                out.push((i, m));
            }
        }
        Ok(out)
    }

    /// Multiplicity of one irreducible row inside a class function.
    pub fn multiplicity(&self, f: &ClassFunction, row: usize) -> Result<i64, TableError> {
        self.check_same_group(f)?;
        let ip = f
            .inner_product(&self.rows[row])
            .map_err(|_| TableError::MismatchedGroups)?;
        let r = ip.as_rational().ok_or(TableError::NotVirtual)?;
        rat_as_int(&r).ok_or(TableError::NotVirtual)
    }

    /// Row index of a class function that equals an irreducible row.
    pub fn find_row(&self, f: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|row| row.equal_values(f))
    }

    /// Is f an irreducible (genuine) character of this group?
    pub fn is_irreducible(&self, f: &ClassFunction) -> Result<bool, TableError> {
        self.check_same_group(f)?;
        match self.decompose(f) {
            Ok(terms) => Ok(terms.len() == 1 && terms[0].1 == 1),
            Err(TableError::NotVirtual) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Adjoint decomposition: chi * conj(chi) minus the trivial character,
    /// as nonnegative row multiplicities. Defined only for irreducible
    /// (cuspidal-model) characters.
    pub fn adjoint(&self, f: &ClassFunction) -> Result<Vec<(usize, i64)>, TableError> {
        self.check_same_group(f)?;
        if !self.is_irreducible(f)? {
            return Err(TableError::NotCuspidal);
        }
        let prod = f.mul(&f.conj()).map_err(|_| TableError::MismatchedGroups)?;
        let mut terms = self.decompose(&prod)?;
        // <chi chibar, 1> = <chi, chi> = 1 exactly
        let pos = terms
            .iter()
            .position(|&(i, _)| i == self.trivial)
            .expect("chi*conj(chi) contains the trivial character");
        if terms[pos].1 == 1 {
            terms.remove(pos);
        } else {
            terms[pos].1 -= 1;
        }
        debug_assert!(terms.iter().all(|&(_, m)| m > 0));
        Ok(terms)
    }

    /// Adjoint as a class function: chi * conj(chi) - 1.
    pub fn adjoint_character(&self, f: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.check_same_group(f)?;
        if !self.is_irreducible(f)? {
            return Err(TableError::NotCuspidal);
        }
        let prod = f.mul(&f.conj()).map_err(|_| TableError::MismatchedGroups)?;
        let one = ClassFunction::constant_one(Arc::clone(&self.group));
        prod.sub(&one).map_err(|_| TableError::MismatchedGroups)
    }

    /// Norm of the adjoint: <Ad, Ad> = <chi chibar, chi chibar> - 1.
    pub fn adjoint_norm(&self, f: &ClassFunction) -> Result<Rat, TableError> {
        let ad = self.adjoint_character(f)?;
        Ok(ad.norm_sq())
    }

    /// Rebuild a class function from (row, multiplicity) terms.
    pub fn assemble(&self, terms: &[(usize, i64)]) -> ClassFunction {
        let mut acc = ClassFunction::new(
            Arc::clone(&self.group),
            vec![Cyclotomic::zero(1); self.group.class_count()],
        )
        .expect("class count");
        for &(i, m) in terms {
            acc = acc.add_scaled(&self.rows[i], m).expect("same group");
        }
        acc
    }

    /// All degree-1 rows eta (including the trivial one) with chi*eta = chi.
    pub fn self_twists(&self, f: &ClassFunction) -> Result<Vec<usize>, TableError> {
        self.check_same_group(f)?;
        let mut out = Vec::new();
        for i in self.linear_rows() {
            let tw = f.mul(&self.rows[i]).map_err(|_| TableError::MismatchedGroups)?;
            if tw.equal_values(f) {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn is_self_dual(&self, f: &ClassFunction) -> Result<bool, TableError> {
        self.check_same_group(f)?;
        Ok(f.is_real_valued())
    }

    /// Self-dual up to a degree-1 twist: conj(chi) = chi * nu for some nu.
    pub fn is_essentially_self_dual(&self, f: &ClassFunction) -> Result<bool, TableError> {
        self.check_same_group(f)?;
        let dual = f.conj();
        for i in self.linear_rows() {
            let tw = f.mul(&self.rows[i]).map_err(|_| TableError::MismatchedGroups)?;
            if tw.equal_values(&dual) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Multiplicity of an irreducible row inside the adjoint of rho.
    pub fn summand_multiplicity(&self, rho: &ClassFunction, row: usize) -> Result<i64, TableError> {
        let terms = self.adjoint(rho)?;
        Ok(terms.iter().find(|&&(i, _)| i == row).map_or(0, |&(_, m)| m))
    }

    /// The degree-1 summand bound: every nontrivial linear character occurs
    /// in Ad(rho) with multiplicity at most one. Returns the per-row
    /// multiplicities for reporting.
    pub fn linear_summand_multiplicities(
        &self,
        rho: &ClassFunction,
    ) -> Result<Vec<(usize, i64)>, TableError> {
        let terms = self.adjoint(rho)?;
        Ok(terms
            .into_iter()
            .filter(|&(i, _)| self.degrees[i] == 1 && i != self.trivial)
            .collect())
    }

    /// Degree-2 constituents of Ad(rho) (the soft GL(2)-summand sweep).
    pub fn degree2_summand_multiplicities(
        &self,
        rho: &ClassFunction,
    ) -> Result<Vec<(usize, i64)>, TableError> {
        let terms = self.adjoint(rho)?;
        Ok(terms
            .into_iter()
            .filter(|&(i, _)| self.degrees[i] == 2)
            .collect())
    }

    /// Character induced from a subgroup (given as parent element indices)
    /// equipped with one of its own characters.
    pub fn induce(
        &self,
        sub: &FiniteGroup,
        embed: &[u32],
        lambda: &ClassFunction,
    ) -> Result<ClassFunction, TableError> {
        let g = &self.group;
        let mut parent_to_sub = std::collections::HashMap::new();
        for (si, &pi) in embed.iter().enumerate() {
            parent_to_sub.insert(pi, si as u32);
        }
        let h = sub.order() as i128;
        let mut values = Vec::with_capacity(g.class_count());
        for c in g.classes() {
            let mut acc = Cyclotomic::zero(1);
            for x in 0..g.order() as u32 {
                let y = g.mul(g.mul(g.inverse(x), c.rep), x);
                if let Some(&si) = parent_to_sub.get(&y) {
                    let sc = sub.class_of(si) as usize;
                    acc = acc.add(lambda.value(sc));
                }
            }
            values.push(acc.scale(&Rat::new(1, h)));
        }
        ClassFunction::new(Arc::clone(g), values).map_err(|_| TableError::MismatchedGroups)
    }

    /// Is chi induced from a degree-1 character of one of the provided
    /// subgroups (each given as ascending parent element indices)?
    pub fn is_monomial(
        &self,
        chi: &ClassFunction,
        subgroups: &[Vec<u32>],
    ) -> Result<bool, TableError> {
        self.check_same_group(chi)?;
        let deg = chi
            .degree_value()
            .as_rational()
            .and_then(|r| rat_as_nonneg_int(&r))
            .ok_or(TableError::NotVirtual)? as usize;
        if deg == 1 {
            // a linear character is trivially monomial (induced from itself)
            return Ok(true);
        }
        let n = self.group.order();
        for members in subgroups {
            if members.len() * deg != n {
                continue;
            }
            let gens: Vec<_> = members
                .iter()
                .map(|&i| self.group.element(i).clone())
                .collect();
            let sub = crate::group::group_from_generators(&gens)?;
            // map subgroup elements back to parent indices
            let embed: Vec<u32> = (0..sub.order() as u32)
                .map(|i| {
                    self.group
                        .index_of(sub.element(i))
                        .expect("subgroup elements live in the parent")
                })
                .collect();
            let sub_arc = Arc::new(sub);
            let sub_table = character_table(Arc::clone(&sub_arc))?;
            for li in sub_table.linear_rows() {
                let ind = self.induce(&sub_arc, &embed, sub_table.row(li))?;
                if ind.equal_values(chi) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Exact orthogonality audit: rows pairwise orthonormal and columns
    /// obeying the size-weighted relations. Expensive; used by tests and the
    /// verification suite.
    pub fn orthogonality_holds(&self) -> bool {
        let r = self.len();
        for i in 0..r {
            for j in i..r {
                let ip = self.rows[i]
                    .inner_product(&self.rows[j])
                    .expect("same group");
                let want = if i == j { Rat::one() } else { Rat::new(0, 1) };
                if ip.as_rational() != Some(want) {
                    return false;
                }
            }
        }
        // column orthogonality: sum_t chi_t(k) conj(chi_t(l)) = delta_kl |G|/|C_k|
        let classes = self.group.classes();
        for k in 0..classes.len() {
            for l in k..classes.len() {
                let mut acc = Cyclotomic::zero(1);
                for row in &self.rows {
                    acc = acc.add(&row.value(k).mul(&row.value(l).conj()));
                }
                let want = if k == l {
                    Rat::new(self.group.order() as i128, classes[k].size as i128)
                } else {
                    Rat::new(0, 1)
                };
                if acc.as_rational() != Some(want) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;
    use crate::group::group_from_generators;
    use crate::rational::rat;

    fn perm_group(gens: &[&[u16]]) -> Arc<FiniteGroup> {
        let gs: Vec<GroupElement> = gens
            .iter()
            .map(|v| GroupElement::perm(v.to_vec()).unwrap())
            .collect();
        Arc::new(group_from_generators(&gs).unwrap())
    }

    #[test]
    fn dixon_prime_selection() {
        // S3: exponent 6, order 6, classes 3 -> smallest p = 1 mod 6, p > 4, p > 4
        assert_eq!(dixon_prime(6, 6, 3).unwrap(), 7);
        // G216 lift: exponent 36, order 648, classes 24 -> 73
        assert_eq!(dixon_prime(36, 648, 24).unwrap(), 73);
        // triple cover of A6: exponent 60, order 1080, 17 classes -> 181
        // (61 is below 2*sqrt(1080), 121 = 11^2)
        assert_eq!(dixon_prime(60, 1080, 17).unwrap(), 181);
        // PSL(2,7): exponent 84, order 168, 6 classes -> 337
        assert_eq!(dixon_prime(84, 168, 6).unwrap(), 337);
    }

    #[test]
    fn trivial_group_table() {
        let g = Arc::new(group_from_generators(&[]).unwrap());
        let t = character_table(g).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.degree(0), 1);
        assert_eq!(t.trivial_index(), 0);
    }

    #[test]
    fn c2_table_is_exact() {
        let g = perm_group(&[&[1, 0]]);
        let t = character_table(g).unwrap();
        assert_eq!(t.degrees(), &[1, 1]);
        assert!(t.orthogonality_holds());
        // one row is trivial, the other is the sign character
        let tv = t.trivial_index();
        let sign = 1 - tv;
        let id_class = t.group().class_of(0) as usize;
        assert_eq!(t.row(sign).value(id_class).as_rational(), Some(rat(1, 1)));
        assert_eq!(
            t.row(sign).value(1 - id_class).as_rational(),
            Some(rat(-1, 1))
        );
    }

    #[test]
    fn s3_table() {
        let g = perm_group(&[&[1, 0, 2], &[1, 2, 0]]);
        let t = character_table(g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert!(t.orthogonality_holds());
        assert_eq!(t.prime(), 7);
    }

    #[test]
    fn a4_table_and_square_identity() {
        let g = perm_group(&[&[1, 2, 0, 3], &[1, 0, 3, 2]]);
        assert_eq!(g.order(), 12);
        let t = character_table(Arc::clone(&g)).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 3]);
        assert!(t.orthogonality_holds());
        // chi3^2 = 1 + nu + nu^2 + 2*chi3
        let chi3 = t.row(3);
        let sq = chi3.mul(chi3).unwrap();
        let d = t.decompose(&sq).unwrap();
        assert_eq!(d, vec![(0, 1), (1, 1), (2, 1), (3, 2)]);
        // and the adjoint therefore contains chi3 twice: the known failure
        // of the naive degree-3 summand analogue
        let ad = t.adjoint(chi3).unwrap();
        assert!(ad.contains(&(3, 2)));
    }

    #[test]
    fn q8_table() {
        let i = Cyclotomic::root(4, 1);
        let z = Cyclotomic::zero(4);
        let one = Cyclotomic::one(4);
        let iq = GroupElement::matrix(2, vec![i.clone(), z.clone(), z.clone(), i.conj()]).unwrap();
        let jq =
            GroupElement::matrix(2, vec![z.clone(), one.clone(), one.neg(), z.clone()]).unwrap();
        let g = Arc::new(group_from_generators(&[iq, jq]).unwrap());
        let t = character_table(Arc::clone(&g)).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert!(t.orthogonality_holds());
        // the degree-2 character matches the defining trace
        let def = ClassFunction::defining_character(Arc::clone(&g));
        assert_eq!(t.find_row(&def), Some(4));
        // its adjoint is reducible: norm 3
        assert_eq!(t.adjoint_norm(&def).unwrap(), rat(3, 1));
        // all four linears are self-twists of the defining character
        assert_eq!(t.self_twists(&def).unwrap().len(), 4);
    }

    #[test]
    fn decompose_rejects_non_virtual() {
        let g = perm_group(&[&[1, 0, 2], &[1, 2, 0]]);
        let t = character_table(Arc::clone(&g)).unwrap();
        let half = ClassFunction::constant_one(Arc::clone(&g)).scale(&rat(1, 2));
        assert!(matches!(t.decompose(&half), Err(TableError::NotVirtual)));
    }

    #[test]
    fn adjoint_requires_irreducible() {
        let g = perm_group(&[&[1, 0, 2], &[1, 2, 0]]);
        let t = character_table(Arc::clone(&g)).unwrap();
        let perm_char = ClassFunction::defining_character(Arc::clone(&g));
        // permutation character = trivial + standard: not irreducible
        assert!(matches!(
            t.adjoint(&perm_char),
            Err(TableError::NotCuspidal)
        ));
        let reg = ClassFunction::regular(Arc::clone(&g));
        assert!(matches!(t.adjoint(&reg), Err(TableError::NotCuspidal)));
    }

    #[test]
    fn dihedral8_monomial_two_dim() {
        let g = perm_group(&[&[1, 2, 3, 0], &[0, 3, 2, 1]]);
        let t = character_table(Arc::clone(&g)).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        let two = t.row(4).clone();
        let subs = g.subgroups_up_to_index(8, 1000).unwrap();
        assert!(t.is_monomial(&two, &subs).unwrap());
        // and the trivial character is monomial by convention
        let one = ClassFunction::constant_one(Arc::clone(&g));
        assert!(t.is_monomial(&one, &subs).unwrap());
    }

    #[test]
    fn regular_decomposes_with_degree_multiplicities() {
        let g = perm_group(&[&[1, 2, 3, 0], &[0, 3, 2, 1]]);
        let t = character_table(Arc::clone(&g)).unwrap();
        let reg = ClassFunction::regular(Arc::clone(&g));
        let d = t.decompose(&reg).unwrap();
        let want: Vec<(usize, i64)> = (0..5).map(|i| (i, t.degree(i) as i64)).collect();
        assert_eq!(d, want);
    }

    #[test]
    fn exponent_cap_reported() {
        // cyclic group of order 500 on 500 points: exponent 500 > 360
        let mut img: Vec<u16> = (1..500).collect();
        img.push(0);
        let g = Arc::new(group_from_generators(&[GroupElement::perm(img).unwrap()]).unwrap());
        assert!(matches!(
            character_table(g),
            Err(TableError::ExponentCap(500))
        ));
    }
}
