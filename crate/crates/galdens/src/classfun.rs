//! Class functions: exact cyclotomic-valued functions on conjugacy classes,
//! with the pointwise and plethystic operations the character layer needs.

use crate::cyclotomic::Cyclotomic;
use crate::group::FiniteGroup;
use crate::rational::{rat_int, Rat};
use num_traits::{One, Signed};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassFunError {
    #[error("mismatched groups")]
    MismatchedGroups,
    #[error("value count {0} does not match class count {1}")]
    WrongLength(usize, usize),
}

/// An exact function on the conjugacy classes of one group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    /// One value per class, in the group's canonical class order.
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self, ClassFunError> {
        if values.len() != group.class_count() {
            return Err(ClassFunError::WrongLength(values.len(), group.class_count()));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn constant_one(group: Arc<FiniteGroup>) -> Self {
        let v = vec![Cyclotomic::one(1); group.class_count()];
        ClassFunction { group, values: v }
    }

    /// |G| at the identity class, 0 elsewhere.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let id = group.class_of(0) as usize;
        let mut v = vec![Cyclotomic::zero(1); group.class_count()];
        v[id] = Cyclotomic::from_rat(1, rat_int(group.order() as i128));
        ClassFunction { group, values: v }
    }

    /// Trace of the defining representation (matrix groups) or the
    /// permutation character (fixed-point count).
    pub fn defining_character(group: Arc<FiniteGroup>) -> Self {
        let values = group
            .classes()
            .iter()
            .map(|c| {
                let el = group.element(c.rep);
                match el.as_matrix() {
                    Some(m) => m.trace(),
                    None => {
                        let p = el.as_perm().unwrap();
                        let fixed = p.iter().enumerate().filter(|(i, &x)| *i as u16 == x).count();
                        Cyclotomic::from_rat(1, rat_int(fixed as i128))
                    }
                }
            })
            .collect();
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity class (the degree, for genuine characters).
    pub fn degree_value(&self) -> &Cyclotomic {
        &self.values[self.group.class_of(0) as usize]
    }

    pub fn same_group(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    fn zip_with(
        &self,
        other: &ClassFunction,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<ClassFunction, ClassFunError> {
        if !self.same_group(other) {
            return Err(ClassFunError::MismatchedGroups);
        }
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(ClassFunction { group: Arc::clone(&self.group), values })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, ClassFunError> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, ClassFunError> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    /// Pointwise product (tensor product of characters).
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction, ClassFunError> {
        self.zip_with(other, |a, b| a.mul(b))
    }

    /// Complex conjugate (dual character).
    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    /// Exact inner product (1/|G|) sum |C| f(C) conj(g(C)).
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Cyclotomic, ClassFunError> {
        if !self.same_group(other) {
            return Err(ClassFunError::MismatchedGroups);
        }
        let mut acc = Cyclotomic::zero(1);
        for (k, c) in self.group.classes().iter().enumerate() {
            let term = self.values[k].mul(&other.values[k].conj());
            acc = acc.add(&term.scale(&rat_int(c.size as i128)));
        }
        Ok(acc.scale(&Rat::new(1, self.group.order() as i128)))
    }

    /// Exact rational inner product; panics if the value is irrational,
    /// which cannot happen for genuine (virtual) characters.
    pub fn inner_product_rat(&self, other: &ClassFunction) -> Result<Rat, ClassFunError> {
        let v = self.inner_product(other)?;
        Ok(v.as_rational().expect("character inner products are rational"))
    }

    /// Norm squared <f, f>, always a nonnegative rational.
    pub fn norm_sq(&self) -> Rat {
        let v = self
            .inner_product(self)
            .expect("same group by construction");
        v.as_rational().expect("<f,f> is rational")
    }

    /// Frobenius power map: g -> f(g^j) as a class function.
    pub fn power_map(&self, j: u64) -> ClassFunction {
        let values = (0..self.group.class_count())
            .map(|k| self.values[self.group.power_class(k, j) as usize].clone())
            .collect();
        ClassFunction { group: Arc::clone(&self.group), values }
    }

    /// Character of the k-th symmetric power via Newton's identities:
    /// h_k = (1/k) sum_{i=1..k} p_i h_{k-i} with p_i the power maps.
    pub fn sym_power(&self, k: u32) -> ClassFunction {
        let mut h: Vec<ClassFunction> = vec![ClassFunction::constant_one(Arc::clone(&self.group))];
        for j in 1..=k {
            let mut acc: Option<ClassFunction> = None;
            for i in 1..=j {
                let term = self
                    .power_map(i as u64)
                    .mul(&h[(j - i) as usize])
                    .expect("same group");
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term).expect("same group"),
                });
            }
            h.push(acc.unwrap().scale(&Rat::new(1, j as i128)));
        }
        h.pop().unwrap()
    }

    /// Character of the k-th alternating power:
    /// e_k = (1/k) sum_{i=1..k} (-1)^(i-1) p_i e_{k-i}.
    pub fn alt_power(&self, k: u32) -> ClassFunction {
        let mut e: Vec<ClassFunction> = vec![ClassFunction::constant_one(Arc::clone(&self.group))];
        for j in 1..=k {
            let mut acc: Option<ClassFunction> = None;
            for i in 1..=j {
                let mut term = self
                    .power_map(i as u64)
                    .mul(&e[(j - i) as usize])
                    .expect("same group");
                if i % 2 == 0 {
                    term = term.scale(&rat_int(-1));
                }
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term).expect("same group"),
                });
            }
            e.push(acc.unwrap().scale(&Rat::new(1, j as i128)));
        }
        e.pop().unwrap()
    }

    pub fn alt_square(&self) -> ClassFunction {
        self.alt_power(2)
    }

    /// Is this value-wise equal to another class function?
    pub fn equal_values(&self, other: &ClassFunction) -> bool {
        self.same_group(other) && self.values == other.values
    }

    /// True when every value is fixed by conjugation.
    pub fn is_real_valued(&self) -> bool {
        self.values.iter().all(|v| *v == v.conj())
    }

    /// Integer linear combination helper: self + c * other.
    pub fn add_scaled(&self, other: &ClassFunction, c: i64) -> Result<ClassFunction, ClassFunError> {
        self.add(&other.scale(&rat_int(c as i128)))
    }

    /// Exact disagreement density: the proportion of the group (by class
    /// size) where the two functions take different values.
    pub fn disagreement_density(&self, other: &ClassFunction) -> Result<Rat, ClassFunError> {
        if !self.same_group(other) {
            return Err(ClassFunError::MismatchedGroups);
        }
        let mut num: i128 = 0;
        for (k, c) in self.group.classes().iter().enumerate() {
            if self.values[k] != other.values[k] {
                num += c.size as i128;
            }
        }
        Ok(Rat::new(num, self.group.order() as i128))
    }
}

/// Is an exact rational a (possibly negative) integer?
pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Nonnegative integer check for multiplicities.
pub fn rat_as_nonneg_int(r: &Rat) -> Option<i64> {
    if r.denom().is_one() && !r.numer().is_negative() {
        i64::try_from(*r.numer()).ok()
    } else {
        None
    }
}

pub fn rat_as_int(r: &Rat) -> Option<i64> {
    if r.denom().is_one() {
        i64::try_from(*r.numer()).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_generators;
    use crate::rational::rat;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            group_from_generators(&[
                crate::element::GroupElement::perm(vec![1, 0, 2]).unwrap(),
                crate::element::GroupElement::perm(vec![1, 2, 0]).unwrap(),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn defining_character_of_s3_decomposes() {
        let g = s3();
        let perm_char = ClassFunction::defining_character(Arc::clone(&g));
        let one = ClassFunction::constant_one(Arc::clone(&g));
        // <perm, perm> = 2 (trivial + standard)
        assert_eq!(perm_char.norm_sq(), rat(2, 1));
        assert_eq!(
            perm_char.inner_product(&one).unwrap().as_rational(),
            Some(rat(1, 1))
        );
        let std = perm_char.sub(&one).unwrap();
        assert_eq!(std.norm_sq(), rat(1, 1));
        assert_eq!(std.degree_value().as_rational(), Some(rat(2, 1)));
    }

    #[test]
    fn sym_alt_square_sum_is_square() {
        let g = s3();
        let chi = ClassFunction::defining_character(Arc::clone(&g));
        let s2 = chi.sym_power(2);
        let a2 = chi.alt_square();
        let sq = chi.mul(&chi).unwrap();
        assert!(s2.add(&a2).unwrap().equal_values(&sq));
        // degrees: n(n+1)/2 and n(n-1)/2 for n = 3
        assert_eq!(s2.degree_value().as_rational(), Some(rat(6, 1)));
        assert_eq!(a2.degree_value().as_rational(), Some(rat(3, 1)));
    }

    #[test]
    fn regular_character_norm() {
        let g = s3();
        let reg = ClassFunction::regular(Arc::clone(&g));
        // <reg, reg> = |G|
        assert_eq!(reg.norm_sq(), rat(6, 1));
        // <reg, 1> = 1
        let one = ClassFunction::constant_one(Arc::clone(&g));
        assert_eq!(reg.inner_product(&one).unwrap().as_rational(), Some(rat(1, 1)));
    }

    #[test]
    fn mismatched_groups_error() {
        let a = ClassFunction::constant_one(s3());
        let b = ClassFunction::constant_one(s3()); // a different Arc
        assert_eq!(a.inner_product(&b).unwrap_err(), ClassFunError::MismatchedGroups);
        assert_eq!(a.mul(&b).unwrap_err(), ClassFunError::MismatchedGroups);
    }

    #[test]
    fn power_map_is_exact() {
        let g = s3();
        let chi = ClassFunction::defining_character(Arc::clone(&g));
        // squaring a transposition gives the identity: p_2 has value 3 there
        let p2 = chi.power_map(2);
        // classes sorted by size: [id], [3-cycles], [transpositions]
        assert_eq!(p2.values()[2].as_rational(), Some(rat(3, 1)));
        assert_eq!(p2.values()[1].as_rational(), Some(rat(0, 1)));
    }
}
