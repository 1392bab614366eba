//! Exact arithmetic in Q adjoined with square roots of integers.
//!
//! A value is a rational plus a rational combination of sqrt(r) for distinct
//! squarefree integers r > 1. Sums, differences, and products stay in this
//! form; signs are decided by refining dyadic enclosures of each root until
//! the interval for the whole expression excludes zero. Distinct squarefree
//! roots are linearly independent over Q, so a normalized nonzero expression
//! always separates from zero at some finite precision.

use crate::rational::{rat_int, rat_to_f64, Rat};
use crate::stream::first_primes;
use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RadicalError {
    #[error("cannot take the square root of a negative rational")]
    NegativeRadicand,
    #[error("sign undecided at the precision cap; radicands may not be fully reduced")]
    PrecisionCap,
}

/// Trial-division bound for extracting square factors. Beyond this, perfect
/// squares are still caught by an integer square root, so a radicand can
/// stay unreduced only when it hides two distinct primes above the bound
/// with one of them squared.
const TRIAL_BOUND: i128 = 100_000;

/// Binary digits of enclosure precision where sign refinement gives up.
const PRECISION_CAP: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalExpr {
    q0: Rat,
    /// (radicand, coefficient), radicands distinct and > 1, sorted; the
    /// radicand is squarefree whenever trial division can make it so.
    terms: Vec<(i128, Rat)>,
}

/// Split n = s^2 * f with f squarefree whenever trial division plus a
/// perfect-square test can decide it.
fn extract_square_part(mut n: i128) -> (i128, i128) {
    debug_assert!(n > 0);
    let mut s: i128 = 1;
    let mut free: i128 = 1;
    for &p in first_primes(9_592).iter() {
        let p = p as i128;
        if p > TRIAL_BOUND || p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
    }
    // The residue has no prime factor below the bound (or below sqrt of
    // itself); it is 1, a prime, a square of a large prime, or out of reach.
    if n > 1 {
        let r = n.sqrt();
        if r * r == n {
            s *= r;
        } else {
            free *= n;
        }
    }
    (s, free)
}

impl RadicalExpr {
    pub fn zero() -> Self {
        RadicalExpr {
            q0: Rat::zero(),
            terms: Vec::new(),
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        RadicalExpr {
            q0: q,
            terms: Vec::new(),
        }
    }

    pub fn from_int(n: i128) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// sqrt(x) for a nonnegative rational x, as coeff * sqrt(squarefree).
    pub fn sqrt_rat(x: Rat) -> Result<Self, RadicalError> {
        if x.is_negative() {
            return Err(RadicalError::NegativeRadicand);
        }
        if x.is_zero() {
            return Ok(Self::zero());
        }
        // sqrt(n/d) = sqrt(n d) / d.
        let n = *x.numer();
        let d = *x.denom();
        let (s, f) = extract_square_part(n * d);
        let coeff = Rat::new(s, d);
        if f == 1 {
            Ok(Self::from_rat(coeff))
        } else {
            Ok(RadicalExpr {
                q0: Rat::zero(),
                terms: vec![(f, coeff)],
            })
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.terms.is_empty().then_some(self.q0)
    }

    pub fn rational_part(&self) -> Rat {
        self.q0
    }

    pub fn terms(&self) -> &[(i128, Rat)] {
        &self.terms
    }

    fn push_term(terms: &mut Vec<(i128, Rat)>, r: i128, c: Rat) {
        if c.is_zero() {
            return;
        }
        match terms.binary_search_by_key(&r, |t| t.0) {
            Ok(i) => {
                terms[i].1 += c;
                if terms[i].1.is_zero() {
                    terms.remove(i);
                }
            }
            Err(i) => terms.insert(i, (r, c)),
        }
    }

    pub fn add(&self, other: &RadicalExpr) -> RadicalExpr {
        let mut terms = self.terms.clone();
        for &(r, c) in &other.terms {
            Self::push_term(&mut terms, r, c);
        }
        RadicalExpr {
            q0: self.q0 + other.q0,
            terms,
        }
    }

    pub fn neg(&self) -> RadicalExpr {
        RadicalExpr {
            q0: -self.q0,
            terms: self.terms.iter().map(|&(r, c)| (r, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &RadicalExpr) -> RadicalExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: Rat) -> RadicalExpr {
        if k.is_zero() {
            return Self::zero();
        }
        RadicalExpr {
            q0: self.q0 * k,
            terms: self.terms.iter().map(|&(r, c)| (r, c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &RadicalExpr) -> RadicalExpr {
        let mut out = RadicalExpr {
            q0: self.q0 * other.q0,
            terms: Vec::new(),
        };
        for &(r, c) in &self.terms {
            Self::push_term(&mut out.terms, r, c * other.q0);
        }
        for &(s, d) in &other.terms {
            Self::push_term(&mut out.terms, s, d * self.q0);
        }
        for &(r, c) in &self.terms {
            for &(s, d) in &other.terms {
                // sqrt(r) sqrt(s) = g sqrt(r s / g^2) with g^2 the square
                // part; renormalize the product radicand.
                let (sq, f) = extract_square_part(r * s);
                let coeff = c * d * rat_int(sq);
                if f == 1 {
                    out.q0 += coeff;
                } else {
                    Self::push_term(&mut out.terms, f, coeff);
                }
            }
        }
        out
    }

    /// Sign of the expression: -1, 0, or +1.
    pub fn sign(&self) -> Result<i32, RadicalError> {
        if self.terms.is_empty() {
            return Ok(match self.q0.cmp(&Rat::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            });
        }
        let mut bits: u32 = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            if bits >= PRECISION_CAP {
                return Err(RadicalError::PrecisionCap);
            }
            bits *= 2;
        }
    }

    /// Dyadic enclosure of the value at the given precision.
    fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let big = |r: Rat| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
        let scale = BigInt::one() << bits;
        let scale_rat = BigRational::from_integer(scale.clone());
        let mut lo = big(self.q0);
        let mut hi = lo.clone();
        for &(r, c) in &self.terms {
            // a <= sqrt(r) 2^bits < a + 1
            let a = (BigInt::from(r) << (2 * bits)).sqrt();
            let root_lo = BigRational::new(a.clone(), BigInt::one()) / scale_rat.clone();
            let root_hi = BigRational::new(a + BigInt::one(), BigInt::one()) / scale_rat.clone();
            let coeff = big(c);
            if c.is_negative() {
                lo += coeff.clone() * root_hi;
                hi += coeff * root_lo;
            } else {
                lo += coeff.clone() * root_lo;
                hi += coeff * root_hi;
            }
        }
        (lo, hi)
    }

    /// Compare against another expression exactly.
    pub fn cmp_expr(&self, other: &RadicalExpr) -> Result<Ordering, RadicalError> {
        let s = self.sub(other).sign()?;
        Ok(s.cmp(&0))
    }

    pub fn is_zero_expr(&self) -> bool {
        self.q0.is_zero() && self.terms.is_empty()
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = rat_to_f64(&self.q0);
        for &(r, c) in &self.terms {
            v += rat_to_f64(&c) * (r as f64).sqrt();
        }
        v
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.q0.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.q0)?;
            wrote = true;
        }
        for &(r, c) in &self.terms {
            if wrote {
                if c.is_negative() {
                    write!(f, " - {}*sqrt({})", -c, r)?;
                } else {
                    write!(f, " + {}*sqrt({})", c, r)?;
                }
            } else {
                write!(f, "{}*sqrt({})", c, r)?;
                wrote = true;
            }
        }
        Ok(())
    }
}
