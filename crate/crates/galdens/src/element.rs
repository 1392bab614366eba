//! Group elements: permutations in one-line notation and exact cyclotomic
//! matrices, with just enough linear algebra to validate and invert them.

use crate::cyclotomic::{Cyclotomic, ORDER_CAP};
use num_integer::Integer;
use thiserror::Error;

/// Matrix models stay small; the catalog tops out at dimension 9.
pub const DIMENSION_CAP: usize = 12;
/// Permutation models act on few points; generous bound for user input.
pub const POINT_CAP: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElementError {
    #[error("not a permutation: images must be a bijection on 0..n")]
    NotAPermutation,
    #[error("permutation point cap exceeded ({0} > {POINT_CAP})")]
    PointCap(usize),
    #[error("matrix dimension cap exceeded ({0} > {DIMENSION_CAP})")]
    DimensionCap(usize),
    #[error("matrix entry count {0} does not match dimension {1}")]
    NotSquare(usize, usize),
    #[error("cyclotomic order cap exceeded (lcm of entry orders > {ORDER_CAP})")]
    OrderCap,
    #[error("singular matrix generator")]
    Singular,
}

/// Exact square matrix over a single cyclotomic order (all entries lifted).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycMatrix {
    dim: u8,
    /// Row-major, length dim^2, every entry at the same representation order.
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn entry(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.dim as usize + j]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    /// Common representation order of the entries.
    pub fn order(&self) -> u32 {
        self.entries[0].order()
    }

    pub fn trace(&self) -> Cyclotomic {
        let n = self.dim as usize;
        let mut t = Cyclotomic::zero(self.order());
        for i in 0..n {
            t = t.add(self.entry(i, i));
        }
        t
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.dim as usize;
        let d00 = self.entry(0, 0);
        for i in 0..n {
            for j in 0..n {
                let e = self.entry(i, j);
                if i == j {
                    if e != d00 {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn mul(&self, other: &CycMatrix) -> CycMatrix {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim as usize;
        let m = self.order();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Cyclotomic::zero(m);
                for k in 0..n {
                    let a = self.entry(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.push(acc);
            }
        }
        CycMatrix { dim: self.dim, entries: out }
    }

    /// Gauss-Jordan inverse; None if singular.
    fn inverse(&self) -> Option<CycMatrix> {
        let n = self.dim as usize;
        let m = self.order();
        let mut a: Vec<Vec<Cyclotomic>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut b: Vec<Vec<Cyclotomic>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Cyclotomic::one(m) } else { Cyclotomic::zero(m) })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let pinv = a[col][col].inv().expect("nonzero pivot");
            for j in 0..n {
                a[col][j] = a[col][j].mul(&pinv);
                b[col][j] = b[col][j].mul(&pinv);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                        b[r][j] = b[r][j].sub(&f.mul(&b[col][j]));
                    }
                }
            }
        }
        Some(CycMatrix {
            dim: self.dim,
            entries: b.into_iter().flatten().collect(),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    Perm(Vec<u16>),
    Matrix(CycMatrix),
}

impl GroupElement {
    pub fn perm(images: Vec<u16>) -> Result<GroupElement, ElementError> {
        if images.len() > POINT_CAP {
            return Err(ElementError::PointCap(images.len()));
        }
        if images.is_empty() {
            return Err(ElementError::NotAPermutation);
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n || seen[i] {
                return Err(ElementError::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(GroupElement::Perm(images))
    }

    /// Validated matrix constructor: square, within the dimension cap,
    /// entries lifted to one common order, and invertible.
    pub fn matrix(dim: usize, entries: Vec<Cyclotomic>) -> Result<GroupElement, ElementError> {
        if dim == 0 || dim > DIMENSION_CAP {
            return Err(ElementError::DimensionCap(dim));
        }
        if entries.len() != dim * dim {
            return Err(ElementError::NotSquare(entries.len(), dim));
        }
        let mut order: u32 = 1;
        for e in &entries {
            let l = order.lcm(&e.order());
            if l > ORDER_CAP {
                return Err(ElementError::OrderCap);
            }
            order = l;
        }
        let lifted: Vec<Cyclotomic> = entries.iter().map(|e| e.lift(order)).collect();
        let m = CycMatrix { dim: dim as u8, entries: lifted };
        if m.inverse().is_none() {
            return Err(ElementError::Singular);
        }
        Ok(GroupElement::Matrix(m))
    }

    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm((0..p.len() as u16).collect()),
            GroupElement::Matrix(m) => {
                let n = m.dim();
                let ord = m.order();
                let entries = (0..n * n)
                    .map(|k| {
                        if k % (n + 1) == 0 {
                            Cyclotomic::one(ord)
                        } else {
                            Cyclotomic::zero(ord)
                        }
                    })
                    .collect();
                GroupElement::Matrix(CycMatrix { dim: m.dim, entries })
            }
        }
    }

    /// Product; both operands must come from the same validated family
    /// (the group layer enforces homogeneity before any multiplication).
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => {
                debug_assert_eq!(a.len(), b.len());
                // (a*b)(x) = a(b(x))
                GroupElement::Perm(b.iter().map(|&x| a[x as usize]).collect())
            }
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => {
                GroupElement::Matrix(a.mul(b))
            }
            _ => panic!("heterogeneous element product"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => {
                let mut inv = vec![0u16; p.len()];
                for (i, &img) in p.iter().enumerate() {
                    inv[img as usize] = i as u16;
                }
                GroupElement::Perm(inv)
            }
            GroupElement::Matrix(m) => {
                GroupElement::Matrix(m.inverse().expect("group elements are invertible"))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &x)| i as u16 == x),
            GroupElement::Matrix(m) => {
                let one = self.identity_like();
                match one {
                    GroupElement::Matrix(ref id) => m == id,
                    _ => unreachable!(),
                }
            }
        }
    }

    pub fn as_matrix(&self) -> Option<&CycMatrix> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            GroupElement::Perm(_) => None,
        }
    }

    pub fn as_perm(&self) -> Option<&[u16]> {
        match self {
            GroupElement::Perm(p) => Some(p),
            GroupElement::Matrix(_) => None,
        }
    }

    /// Cycle type (cycle lengths, descending) for permutations.
    pub fn cycle_type(&self) -> Option<Vec<u32>> {
        let p = self.as_perm()?;
        let mut seen = vec![false; p.len()];
        let mut cycles = Vec::new();
        for start in 0..p.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = p[cur] as usize;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        Some(cycles)
    }
}

/// Class-invariant sort key: matrix classes order by trace, permutation
/// classes by cycle type. Comparable within one group (shared order/degree).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ClassKey {
    CycleType(Vec<u32>),
    Trace(u32, Vec<(u32, i128, i128)>),
}

impl GroupElement {
    pub fn class_key(&self) -> ClassKey {
        match self {
            GroupElement::Perm(_) => ClassKey::CycleType(self.cycle_type().unwrap()),
            GroupElement::Matrix(m) => {
                let t = m.trace();
                let (o, terms) = t.sort_key();
                ClassKey::Trace(o, terms)
            }
        }
    }
}
