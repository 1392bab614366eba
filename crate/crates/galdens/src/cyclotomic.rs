//! Exact cyclotomic numbers: sparse rational combinations of roots of unity
//! in a fixed canonical basis, supporting the character arithmetic layer.
//!
//! A value of order `m` is stored as a rational polynomial in `z_m` reduced
//! modulo the m-th cyclotomic polynomial, so the power basis
//! `z^0 .. z^(phi(m)-1)` is a canonical form: two values are equal iff their
//! (order-lifted) coefficient vectors are equal. Mixed-order arithmetic lifts
//! both operands to the lcm order; the lcm is capped at 360, which covers
//! every group exponent the catalog needs while keeping polynomial degrees
//! small. Construction-time checks in the group and table layers guarantee
//! the cap cannot be hit afterwards, so in-module arithmetic treats a breach
//! as a programming error.

use crate::rational::{format_rat, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest supported cyclotomic order (after lcm lifts).
pub const ORDER_CAP: u32 = 360;

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i128>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i128>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact division of integer polynomials; `den` must be monic and divide
/// `num` exactly. Coefficient index = power.
fn poly_div_exact(mut num: Vec<i128>, den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    assert!(num.len() > dd);
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i128; qd + 1];
    for i in (0..=qd).rev() {
        let c = num[dd + i];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                num[i + j] -= c * dj;
            }
        }
    }
    assert!(num.iter().all(|&c| c == 0), "inexact polynomial division");
    q
}

/// Coefficients of the m-th cyclotomic polynomial, cached. Index = power.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i128>> {
    assert!((1..=ORDER_CAP).contains(&m), "cyclotomic order out of range");
    if let Some(p) = cyclo_cache().lock().unwrap().get(&m) {
        return Arc::clone(p);
    }
    let poly = if m == 1 {
        vec![-1, 1]
    } else {
        // (x^m - 1) / prod_{d | m, d < m} Phi_d
        let mut num = vec![0i128; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        let mut cur = num;
        for d in 1..m {
            if m % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                cur = poly_div_exact(cur, &phi_d);
            }
        }
        cur
    };
    let arc = Arc::new(poly);
    cyclo_cache()
        .lock()
        .unwrap()
        .insert(m, Arc::clone(&arc));
    arc
}

/// Degree of the basis for order m, i.e. Euler's totient.
pub fn cyclo_degree(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// Common representation order for mixed arithmetic. Panics past the cap;
/// the public constructors reject inputs that could ever reach it.
pub fn common_order(a: u32, b: u32) -> u32 {
    let l = a.lcm(&b);
    assert!(
        l <= ORDER_CAP,
        "cyclotomic order cap exceeded: lcm({a},{b}) = {l} > {ORDER_CAP}"
    );
    l
}

/// A sparse exact element of Q(zeta_order) in the canonical power basis.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    /// Sorted by exponent; all coefficients nonzero; exponents < phi(order).
    coeffs: Vec<(u32, Rat)>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!((1..=ORDER_CAP).contains(&order));
        Cyclotomic { order, coeffs: Vec::new() }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rat(order, Rat::one())
    }

    pub fn from_rat(order: u32, r: Rat) -> Self {
        assert!((1..=ORDER_CAP).contains(&order));
        if r.is_zero() {
            Self::zero(order)
        } else {
            Cyclotomic { order, coeffs: vec![(0, r)] }
        }
    }

    /// zeta_order^exp (exponent taken mod order, negatives allowed).
    pub fn root(order: u32, exp: i64) -> Self {
        Self::new(order, &[(exp, Rat::one())])
    }

    /// Build from raw terms sum c_i * zeta^(e_i); exponents arbitrary.
    pub fn new(order: u32, terms: &[(i64, Rat)]) -> Self {
        assert!((1..=ORDER_CAP).contains(&order), "unsupported cyclotomic order");
        let m = order as usize;
        let mut dense = vec![Rat::zero(); m.max(1)];
        for (e, c) in terms {
            let idx = e.rem_euclid(order as i64) as usize;
            dense[idx] += c;
        }
        Self::from_dense(order, dense)
    }

    fn from_dense(order: u32, mut dense: Vec<Rat>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let d = phi.len() - 1;
        for i in (d..dense.len()).rev() {
            if !dense[i].is_zero() {
                let c = std::mem::replace(&mut dense[i], Rat::zero());
                for (j, &pj) in phi.iter().take(d).enumerate() {
                    if pj != 0 {
                        dense[i - d + j] -= c * Rat::from_integer(pj);
                    }
                }
            }
        }
        let coeffs = dense
            .into_iter()
            .take(d)
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, c))
            .collect();
        Cyclotomic { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 if self.coeffs[0].0 == 0 => Some(self.coeffs[0].1),
            _ => None,
        }
    }

    /// Is every coefficient an integer (true for character values)?
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.denom().is_one())
    }

    /// Re-express at a multiple of the current order.
    pub fn lift(&self, target: u32) -> Cyclotomic {
        assert!(target % self.order == 0 && target <= ORDER_CAP);
        if target == self.order {
            return self.clone();
        }
        let k = (target / self.order) as i64;
        let terms: Vec<(i64, Rat)> = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e as i64 * k, *c))
            .collect();
        Cyclotomic::new(target, &terms)
    }

    fn lift_pair(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = common_order(a.order, b.order);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Self::lift_pair(self, other);
        let d = cyclo_degree(a.order);
        let mut dense = vec![Rat::zero(); d];
        for (e, c) in a.coeffs.iter().chain(b.coeffs.iter()) {
            dense[*e as usize] += c;
        }
        Cyclotomic::from_dense(a.order, dense)
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -*c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero(self.order);
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero(common_order(self.order, other.order));
        }
        // Fast path: rational factor needs no basis work.
        if let Some(r) = self.as_rational() {
            return other.lift(common_order(self.order, other.order)).scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.lift(common_order(self.order, other.order)).scale(&r);
        }
        let (a, b) = Self::lift_pair(self, other);
        let d = cyclo_degree(a.order);
        let mut dense = vec![Rat::zero(); 2 * d];
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in &b.coeffs {
                dense[(*ea + *eb) as usize] += ca * cb;
            }
        }
        Cyclotomic::from_dense(a.order, dense)
    }

    /// Complex conjugate: zeta^e -> zeta^(order - e).
    pub fn conj(&self) -> Cyclotomic {
        let terms: Vec<(i64, Rat)> = self
            .coeffs
            .iter()
            .map(|(e, c)| (-(*e as i64), *c))
            .collect();
        Cyclotomic::new(self.order, &terms)
    }

    /// |z|^2 = z * conj(z), exact.
    pub fn abs_sq(&self) -> Cyclotomic {
        self.mul(&self.conj())
    }

    pub fn pow(&self, n: u32) -> Cyclotomic {
        let mut acc = Cyclotomic::one(self.order);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the defining cyclotomic polynomial. None for zero.
    pub fn inv(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Cyclotomic::from_rat(self.order, r.recip()));
        }
        let d = cyclo_degree(self.order);
        let mut a = vec![Rat::zero(); d];
        for (e, c) in &self.coeffs {
            a[*e as usize] = *c;
        }
        let phi: Vec<Rat> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| Rat::from_integer(c))
            .collect();
        let (g, u) = poly_half_ext_gcd(&a, &phi);
        // gcd of a unit and the modulus is a nonzero constant
        assert_eq!(poly_deg(&g), Some(0), "noninvertible cyclotomic value");
        let ginv = g[0].recip();
        let inv_coeffs: Vec<Rat> = u.iter().map(|c| c * ginv).collect();
        Some(Cyclotomic::from_dense(self.order, inv_coeffs))
    }

    /// Numeric evaluation as (re, im).
    pub fn to_c64(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.coeffs {
            let cf = c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap();
            let th = std::f64::consts::TAU * (*e as f64) / m;
            re += cf * th.cos();
            im += cf * th.sin();
        }
        (re, im)
    }

    /// Stable total-order key (valid for sorting values that share an order,
    /// e.g. a character-table column).
    pub fn sort_key(&self) -> (u32, Vec<(u32, i128, i128)>) {
        (
            self.order,
            self.coeffs
                .iter()
                .map(|(e, c)| (*e, *c.numer(), *c.denom()))
                .collect(),
        )
    }

    /// Canonical term list `(exponent, numerator, denominator)`.
    pub fn terms(&self) -> Vec<(u32, i128, i128)> {
        self.coeffs
            .iter()
            .map(|(e, c)| (*e, *c.numer(), *c.denom()))
            .collect()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Hash/Eq consistency holds for values sharing a representation
        // order, which the group layer guarantees by lifting all generator
        // entries to one order up front.
        self.order.hash(state);
        for (e, c) in &self.coeffs {
            e.hash(state);
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0/1");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *e == 0 {
                out.push_str(&format_rat(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rat(&mag));
                    out.push('*');
                }
                out.push_str(&format!("z{}^{}", self.order, e));
            }
        }
        write!(f, "{out}")
    }
}

fn poly_deg(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Half-extended gcd over Q[x]: returns (g, u) with u*a = g mod b.
fn poly_half_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut u0 = vec![Rat::one()];
    let mut u1: Vec<Rat> = vec![];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let u = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    (r0, u0)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr] / b[db];
        let shift = dr - db;
        q[shift] = c;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            if !bj.is_zero() {
                rem[shift + j] -= c * bj;
            }
        }
    }
    (poly_trim(q), poly_trim(rem))
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] = *ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    poly_trim(out)
}
