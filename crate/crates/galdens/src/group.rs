//! Finite group closure, conjugacy classes, and index-level multiplication.
//!
//! Groups are built once by breadth-first closure over generator products;
//! after that every operation works on element indices. Products of arbitrary
//! indices are folded through the generator-multiplication table along the
//! BFS word of the right factor, so no matrix or permutation arithmetic
//! happens after construction.

use crate::element::{ClassKey, ElementError, GroupElement};
use num_integer::Integer;
use std::collections::HashMap;
use thiserror::Error;

/// Closure cap: fail fast on runaway generation.
pub const ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group too large")]
    TooLarge,
    #[error("heterogeneous generators")]
    Heterogeneous,
    #[error("invalid generator: {0}")]
    InvalidGenerator(ElementError),
    #[error("projective image undefined")]
    ProjectiveUndefined,
    #[error("subgroup enumeration exceeded {0} subgroups")]
    SubgroupCap(usize),
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Index of the canonical representative (smallest BFS index).
    pub rep: u32,
    /// Member indices, ascending.
    pub members: Vec<u32>,
    pub size: usize,
    /// Order of any member (class invariant).
    pub rep_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Permutation { points: usize },
    Matrix { dim: usize, order: u32 },
}

#[derive(Debug)]
pub struct FiniteGroup {
    kind: GroupKind,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    generators: Vec<u32>,
    /// mul_gen[x][k] = index of elements[x] * generator k.
    mul_gen: Vec<Vec<u32>>,
    /// BFS link: element = parent * generator; identity maps to itself.
    parent: Vec<(u32, u32)>,
    depth: Vec<u32>,
    inv: Vec<u32>,
    order_of: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
    exponent: u64,
}

/// Close a generator set into a finite group.
///
/// Generators must be homogeneous (all permutations on one point set or all
/// matrices of one dimension). An empty generator list yields the trivial
/// permutation group on one point. Enumeration is breadth-first over
/// right-products in generator order, so element numbering is deterministic.
pub fn group_from_generators(gens: &[GroupElement]) -> Result<FiniteGroup, GroupError> {
    let gens: Vec<GroupElement> = if gens.is_empty() {
        Vec::new()
    } else {
        gens.to_vec()
    };
    let identity = match gens.first() {
        Some(g) => g.identity_like(),
        None => GroupElement::Perm(vec![0]),
    };
    let kind = match &identity {
        GroupElement::Perm(p) => GroupKind::Permutation { points: p.len() },
        GroupElement::Matrix(m) => GroupKind::Matrix { dim: m.dim(), order: m.order() },
    };
    for g in &gens {
        let compatible = match (&identity, g) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => a.len() == b.len(),
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => a.dim() == b.dim(),
            _ => false,
        };
        if !compatible {
            return Err(GroupError::Heterogeneous);
        }
    }
    // Matrices arrive at possibly different representation orders; rebuild
    // them at a single common order so hashing is canonical.
    let (gens, kind) = if let GroupKind::Matrix { dim, .. } = kind {
        let mut common: u32 = 1;
        for g in &gens {
            let m = g.as_matrix().unwrap();
            let l = common.lcm(&m.order());
            if l > crate::cyclotomic::ORDER_CAP {
                return Err(GroupError::InvalidGenerator(ElementError::OrderCap));
            }
            common = l;
        }
        let mut lifted = Vec::with_capacity(gens.len());
        for g in gens {
            let m = g.as_matrix().unwrap();
            let entries = m.entries().iter().map(|e| e.lift(common)).collect();
            lifted.push(
                GroupElement::matrix(dim, entries).map_err(GroupError::InvalidGenerator)?,
            );
        }
        (lifted, GroupKind::Matrix { dim, order: common })
    } else {
        (gens, kind)
    };
    let identity = match gens.first() {
        Some(g) => g.identity_like(),
        None => identity,
    };

    let mut elements: Vec<GroupElement> = vec![identity.clone()];
    let mut index: HashMap<GroupElement, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut mul_gen: Vec<Vec<u32>> = vec![vec![0; gens.len()]];
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut depth: Vec<u32> = vec![0];
    let mut cursor = 0usize;
    while cursor < elements.len() {
        for (k, g) in gens.iter().enumerate() {
            let y = elements[cursor].mul(g);
            let yi = match index.get(&y) {
                Some(&i) => i,
                None => {
                    if elements.len() >= ELEMENT_CAP {
                        return Err(GroupError::TooLarge);
                    }
                    let i = elements.len() as u32;
                    elements.push(y.clone());
                    index.insert(y, i);
                    mul_gen.push(vec![0; gens.len()]);
                    parent.push((cursor as u32, k as u32));
                    depth.push(depth[cursor] + 1);
                    i
                }
            };
            mul_gen[cursor][k] = yi;
        }
        cursor += 1;
    }

    let generator_idx: Vec<u32> = gens
        .iter()
        .map(|g| *index.get(g).expect("generators are in the closure"))
        .collect();

    let mut g = FiniteGroup {
        kind,
        elements,
        index,
        generators: generator_idx,
        mul_gen,
        parent,
        depth,
        inv: Vec::new(),
        order_of: Vec::new(),
        classes: Vec::new(),
        class_of: Vec::new(),
        exponent: 1,
    };
    g.build_inverses();
    g.build_orders();
    g.build_classes();
    Ok(g)
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, e: &GroupElement) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, elem: u32) -> u32 {
        self.class_of[elem as usize]
    }

    pub fn inverse(&self, elem: u32) -> u32 {
        self.inv[elem as usize]
    }

    pub fn element_order(&self, elem: u32) -> u32 {
        self.order_of[elem as usize]
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Index product via the BFS word of the right factor: O(word length),
    /// no element arithmetic.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut word = [0u32; 64];
        let mut long_word: Vec<u32>;
        let d = self.depth[b as usize] as usize;
        let gens: &[u32] = if d <= 64 {
            let mut cur = b;
            let mut i = d;
            while cur != 0 {
                let (p, k) = self.parent[cur as usize];
                i -= 1;
                word[i] = k;
                cur = p;
            }
            &word[..d]
        } else {
            long_word = Vec::with_capacity(d);
            let mut cur = b;
            while cur != 0 {
                let (p, k) = self.parent[cur as usize];
                long_word.push(k);
                cur = p;
            }
            long_word.reverse();
            &long_word
        };
        let mut acc = a;
        for &k in gens {
            acc = self.mul_gen[acc as usize][k as usize];
        }
        acc
    }

    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        // g * x * g^{-1}
        self.mul(self.mul(g, x), self.inv[g as usize])
    }

    fn build_inverses(&mut self) {
        let n = self.order();
        let mut inv = vec![u32::MAX; n];
        inv[0] = 0;
        // generator inverses by power walk (index arithmetic only)
        let mut gen_inv = vec![0u32; self.generators.len()];
        for (k, &gi) in self.generators.iter().enumerate() {
            let mut prev = 0u32;
            let mut acc = gi;
            while acc != 0 {
                prev = acc;
                acc = self.mul_gen[acc as usize][k];
            }
            gen_inv[k] = prev;
        }
        // BFS order guarantees the parent inverse is already known
        for y in 1..n {
            let (p, k) = self.parent[y];
            let gi = gen_inv[k as usize];
            inv[y] = self.mul(gi, inv[p as usize]);
        }
        self.inv = inv;
        debug_assert!((0..n as u32).all(|i| self.mul(i, self.inv[i as usize]) == 0));
    }

    fn build_orders(&mut self) {
        let n = self.order();
        let mut ord = vec![1u32; n];
        let mut exponent: u64 = 1;
        for i in 1..n as u32 {
            let mut k = 1u32;
            let mut acc = i;
            while acc != 0 {
                acc = self.mul(acc, i);
                k += 1;
                debug_assert!(k as usize <= n + 1);
            }
            ord[i as usize] = k;
            exponent = exponent.lcm(&(k as u64));
        }
        self.order_of = ord;
        self.exponent = exponent;
    }

    fn build_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let cid = raw.len() as u32;
            class_of[start as usize] = cid;
            let mut members = vec![start];
            let mut frontier = vec![start];
            while let Some(x) = frontier.pop() {
                for &g in &self.generators {
                    let y = self.conjugate(g, x);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = cid;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        // canonical order: (size, class key, element order, first member)
        let mut order: Vec<usize> = (0..raw.len()).collect();
        let keys: Vec<(usize, ClassKey, u32, u32)> = raw
            .iter()
            .map(|members| {
                let rep = members[0];
                (
                    members.len(),
                    self.elements[rep as usize].class_key(),
                    self.order_of[rep as usize],
                    rep,
                )
            })
            .collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut classes = Vec::with_capacity(raw.len());
        let mut renumber = vec![0u32; raw.len()];
        for (new_id, &old_id) in order.iter().enumerate() {
            renumber[old_id] = new_id as u32;
            let members = raw[old_id].clone();
            classes.push(ConjugacyClass {
                rep: members[0],
                size: members.len(),
                rep_order: self.order_of[members[0] as usize],
                members,
            });
        }
        for c in class_of.iter_mut() {
            *c = renumber[*c as usize];
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Class of rep^k for a class index (power map used by character lifts).
    pub fn power_class(&self, class: usize, k: u64) -> u32 {
        let rep = self.classes[class].rep;
        let e = self.order_of[rep as usize] as u64;
        let k = (k % e) as u32;
        let mut acc = 0u32;
        for _ in 0..k {
            acc = self.mul(acc, rep);
        }
        self.class_of[acc as usize]
    }

    /// Scalar subgroup size for matrix groups (identity for permutations is
    /// handled by the error contract).
    pub fn projective_image_order(&self) -> Result<usize, GroupError> {
        match self.kind {
            GroupKind::Permutation { .. } => Err(GroupError::ProjectiveUndefined),
            GroupKind::Matrix { .. } => {
                let scalars = self
                    .elements
                    .iter()
                    .filter(|e| e.as_matrix().unwrap().is_scalar())
                    .count();
                Ok(self.order() / scalars)
            }
        }
    }

    /// Center (as element indices, ascending) and the central quotient order.
    pub fn central_quotient_or_center(&self) -> (Vec<u32>, usize) {
        // commuting with every generator is equivalent to commuting with the
        // whole closure, so test generators only
        let center: Vec<u32> = (0..self.order() as u32)
            .filter(|&x| {
                self.generators
                    .iter()
                    .all(|&g| self.mul(x, g) == self.mul(g, x))
            })
            .collect();
        let q = self.order() / center.len();
        (center, q)
    }

    /// Scalar-matrix element indices (the "scalar subgroup" of matrix models).
    pub fn scalar_indices(&self) -> Vec<u32> {
        match self.kind {
            GroupKind::Permutation { .. } => vec![0],
            GroupKind::Matrix { .. } => (0..self.order() as u32)
                .filter(|&i| self.elements[i as usize].as_matrix().unwrap().is_scalar())
                .collect(),
        }
    }

    /// All subgroups of index at most `max_index`, as ascending index sets.
    /// Enumerates the subgroup lattice bottom-up from cyclic subgroups by
    /// single-element extensions; `cap` bounds the total lattice size visited.
    pub fn subgroups_up_to_index(
        &self,
        max_index: usize,
        cap: usize,
    ) -> Result<Vec<Vec<u32>>, GroupError> {
        let n = self.order();
        let mut all: Vec<Vec<u32>> = Vec::new();
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        // cyclic subgroups
        for x in 0..n as u32 {
            let sub = self.cyclic_closure(&[x]);
            if !seen.contains_key(&sub) {
                seen.insert(sub.clone(), ());
                all.push(sub);
            }
        }
        // extend until no new subgroups appear
        let mut frontier: Vec<Vec<u32>> = all.clone();
        while let Some(h) = frontier.pop() {
            if h.len() == n {
                continue;
            }
            for x in 0..n as u32 {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens: Vec<u32> = h.clone();
                gens.push(x);
                let sub = self.cyclic_closure(&gens);
                if !seen.contains_key(&sub) {
                    if all.len() >= cap {
                        return Err(GroupError::SubgroupCap(cap));
                    }
                    seen.insert(sub.clone(), ());
                    all.push(sub.clone());
                    frontier.push(sub);
                }
            }
        }
        let mut out: Vec<Vec<u32>> = all
            .into_iter()
            .filter(|h| n / h.len() <= max_index)
            .collect();
        out.sort_by(|a, b| (b.len(), a).cmp(&(a.len(), b)));
        Ok(out)
    }

    /// Closure of a set of element indices inside this group.
    fn cyclic_closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut members: Vec<u32> = vec![0];
        let mut in_set = HashMap::new();
        in_set.insert(0u32, ());
        let mut frontier: Vec<u32> = vec![0];
        for &s in seed {
            if let std::collections::hash_map::Entry::Vacant(e) = in_set.entry(s) {
                e.insert(());
                members.push(s);
                frontier.push(s);
            }
        }
        while let Some(x) = frontier.pop() {
            for &s in seed {
                for y in [self.mul(x, s), self.mul(s, x)] {
                    if let std::collections::hash_map::Entry::Vacant(e) = in_set.entry(y) {
                        e.insert(());
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;
    use crate::rational::rat;

    fn perm(v: &[u16]) -> GroupElement {
        GroupElement::perm(v.to_vec()).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = group_from_generators(&[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.class_count(), 1);
    }

    #[test]
    fn s3_structure() {
        let g = group_from_generators(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.class_count(), 3);
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.exponent(), 6);
        let (center, q) = g.central_quotient_or_center();
        assert_eq!(center, vec![0]);
        assert_eq!(q, 6);
        // identity/inverse laws across the whole table
        for i in 0..6u32 {
            assert_eq!(g.mul(i, g.inverse(i)), 0);
            assert_eq!(g.mul(0, i), i);
            assert_eq!(g.mul(i, 0), i);
        }
        // associativity spot-check
        for (a, b, c) in [(1u32, 2u32, 3u32), (4, 5, 1), (3, 3, 2)] {
            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        }
    }

    #[test]
    fn q8_from_matrices() {
        let i = Cyclotomic::root(4, 1);
        let z = Cyclotomic::zero(4);
        let one = Cyclotomic::one(4);
        let iq = GroupElement::matrix(2, vec![i.clone(), z.clone(), z.clone(), i.conj()]).unwrap();
        let jq = GroupElement::matrix(2, vec![z.clone(), one.clone(), one.neg(), z.clone()]).unwrap();
        let g = group_from_generators(&[iq, jq]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.class_count(), 5);
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(g.projective_image_order().unwrap(), 4);
        let (center, q) = g.central_quotient_or_center();
        assert_eq!(center.len(), 2);
        assert_eq!(q, 4);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn heterogeneous_generators_rejected() {
        let p = perm(&[1, 0]);
        let m = GroupElement::matrix(2, vec![
            Cyclotomic::one(1),
            Cyclotomic::zero(1),
            Cyclotomic::zero(1),
            Cyclotomic::one(1),
        ])
        .unwrap();
        let err = group_from_generators(&[p.clone(), m]).unwrap_err();
        assert!(matches!(err, GroupError::Heterogeneous));
        // mismatched point sets are heterogeneous too
        let err2 = group_from_generators(&[p, perm(&[1, 2, 0])]).unwrap_err();
        assert!(matches!(err2, GroupError::Heterogeneous));
    }

    #[test]
    fn projective_image_of_permutation_group_is_an_error() {
        let g = group_from_generators(&[perm(&[1, 0])]).unwrap();
        assert!(matches!(
            g.projective_image_order().unwrap_err(),
            GroupError::ProjectiveUndefined
        ));
    }

    #[test]
    fn dihedral_8_classes_and_subgroups() {
        // 4-gon rotation + reflection
        let g = group_from_generators(&[perm(&[1, 2, 3, 0]), perm(&[0, 3, 2, 1])]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.class_count(), 5);
        assert_eq!(g.exponent(), 4);
        let subs = g.subgroups_up_to_index(8, 1000).unwrap();
        // D8 has 10 subgroups in total
        assert_eq!(subs.len(), 10);
        // every subgroup order divides 8
        assert!(subs.iter().all(|h| 8 % h.len() == 0));
        // index-2 subgroups: exactly 3
        assert_eq!(subs.iter().filter(|h| h.len() == 4).count(), 3);
    }

    #[test]
    fn class_partition_invariants() {
        let g = group_from_generators(&[perm(&[1, 2, 0, 4, 3]), perm(&[1, 0, 2, 3, 4])]).unwrap();
        // S3 x S2 acting on 5 points, order 12
        assert_eq!(g.order(), 12);
        let total: usize = g.classes().iter().map(|c| c.size).sum();
        assert_eq!(total, 12);
        let mut seen = [false; 12];
        for c in g.classes() {
            for &m in &c.members {
                assert!(!seen[m as usize]);
                seen[m as usize] = true;
            }
            assert_eq!(12 % c.size, 0);
        }
    }

    #[test]
    fn scalar_counting_matches_projective_order() {
        let w = Cyclotomic::root(3, 1);
        let z = Cyclotomic::zero(3);
        let scal = GroupElement::matrix(2, vec![w.clone(), z.clone(), z.clone(), w.clone()]).unwrap();
        let g = group_from_generators(&[scal]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.projective_image_order().unwrap(), 1);
        let (center, q) = g.central_quotient_or_center();
        assert_eq!(center.len(), 3);
        assert_eq!(q, 1);
    }

    #[test]
    fn half_entry_matrices_close_to_binary_tetrahedral() {
        let i = Cyclotomic::root(4, 1);
        let one = Cyclotomic::one(4);
        let z = Cyclotomic::zero(4);
        let h = rat(1, 2);
        let iq = GroupElement::matrix(2, vec![i.clone(), z.clone(), z.clone(), i.conj()]).unwrap();
        let wq = GroupElement::matrix(
            2,
            vec![
                i.sub(&one).scale(&h),
                i.add(&one).scale(&h),
                i.sub(&one).scale(&h),
                i.add(&one).neg().scale(&h),
            ],
        )
        .unwrap();
        let g = group_from_generators(&[iq, wq]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.class_count(), 7);
        assert_eq!(g.exponent(), 12);
        assert_eq!(g.projective_image_order().unwrap(), 12);
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 4, 4, 4, 4, 6]);
    }
}
