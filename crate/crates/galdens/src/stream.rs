//! Seeded place-stream simulator.
//!
//! A stream models the first `count` finite places of a field whose splitting
//! behaviour is governed by a finite group: the norms are the first primes in
//! order, and each place carries a conjugacy class drawn independently with
//! probability size/|G|. Draws come from a counter-based generator, so any
//! (seed, count) pair reproduces bit-for-bit on every platform and places can
//! be regenerated without storing state.

use crate::classfun::ClassFunction;
use crate::group::FiniteGroup;
use num_complex::Complex64;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// Hard cap on the number of simulated places.
pub const COUNT_CAP: usize = 100_000_000;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("place count {0} exceeds the cap of {COUNT_CAP}")]
    CountCap(usize),
    #[error("mismatched groups")]
    MismatchedGroups,
}

pub const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 output mixer.
#[inline]
fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z
}

/// The i-th draw of the counter-based splitmix64 sequence for a seed.
#[inline]
pub fn splitmix64(seed: u64, i: u64) -> u64 {
    mix(seed.wrapping_add(i.wrapping_add(1).wrapping_mul(SPLITMIX_GAMMA)))
}

/// Upper bound for the n-th prime with generous headroom.
fn sieve_limit(n: usize) -> usize {
    let nf = (n.max(6)) as f64;
    (nf * (nf.ln() + nf.ln().ln()) * 1.2) as usize + 16
}

fn sieve_first(n: usize) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut limit = sieve_limit(n);
    loop {
        // Bitset over odd numbers: index i stands for 2i+3.
        let m = (limit.saturating_sub(1)) / 2;
        let words = m / 64 + 1;
        let mut composite = vec![0u64; words];
        let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
        let mut i = 0usize;
        loop {
            let p = 2 * i + 3;
            if p * p > limit {
                break;
            }
            if !is_set(&composite, i) {
                let mut q = (p * p - 3) / 2;
                while q < m {
                    composite[q / 64] |= 1 << (q % 64);
                    q += p;
                }
            }
            i += 1;
        }
        let mut primes = Vec::with_capacity(n);
        primes.push(2u64);
        let mut i = 0usize;
        while primes.len() < n && i < m {
            if !is_set(&composite, i) {
                primes.push((2 * i + 3) as u64);
            }
            i += 1;
        }
        if primes.len() >= n {
            primes.truncate(n);
            return primes;
        }
        // The analytic bound fell short (tiny n edge cases): widen and retry.
        limit = limit * 2 + 64;
    }
}

/// First n primes, served from a process-wide growing cache.
pub fn first_primes(n: usize) -> Vec<u64> {
    static CACHE: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("prime cache lock");
    if guard.len() < n {
        *guard = sieve_first(n);
    }
    guard[..n].to_vec()
}

/// One simulated place paired with the values of two characters there.
#[derive(Clone, Copy, Debug)]
pub struct HeckeSample {
    pub norm: u64,
    pub a: Complex64,
    pub a_prime: Complex64,
}

#[derive(Debug)]
pub struct PlaceStream {
    group: Arc<FiniteGroup>,
    seed: u64,
    norms: Vec<u64>,
    classes: Vec<u32>,
    freq_ok: bool,
    max_z: f64,
}

impl PlaceStream {
    /// Draw `count` places. The class frequencies are audited against their
    /// expectations at three standard deviations; the outcome is recorded on
    /// the stream and never enforced here.
    pub fn new(group: Arc<FiniteGroup>, seed: u64, count: usize) -> Result<Self, StreamError> {
        if count > COUNT_CAP {
            return Err(StreamError::CountCap(count));
        }
        let order = group.order() as u128;
        let mut thresholds: Vec<u128> = Vec::with_capacity(group.class_count());
        let mut cum: u128 = 0;
        for c in group.classes() {
            cum += c.size as u128;
            thresholds.push(((1u128 << 64) * cum) / order);
        }
        let norms = first_primes(count);
        let mut classes = Vec::with_capacity(count);
        let mut counts = vec![0u64; group.class_count()];
        for i in 0..count {
            let u = splitmix64(seed, i as u64) as u128;
            let j = thresholds.partition_point(|&t| t <= u);
            classes.push(j as u32);
            counts[j] += 1;
        }
        let n = count as f64;
        let mut max_z = 0.0f64;
        for (j, c) in group.classes().iter().enumerate() {
            let p = c.size as f64 / group.order() as f64;
            let sigma = (n * p * (1.0 - p)).sqrt();
            if sigma > 0.0 {
                let z = (counts[j] as f64 - n * p) / sigma;
                max_z = max_z.max(z.abs());
            }
        }
        let freq_ok = count == 0 || max_z <= 3.0;
        Ok(PlaceStream {
            group,
            seed,
            norms,
            classes,
            freq_ok,
            max_z,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn norms(&self) -> &[u64] {
        &self.norms
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    /// Whether every class frequency sat within three standard deviations.
    pub fn freq_ok(&self) -> bool {
        self.freq_ok
    }

    /// Largest absolute frequency z-score observed.
    pub fn max_z(&self) -> f64 {
        self.max_z
    }

    /// Floating-point values of a class function in class order, checked
    /// against the trivial bound |chi(g)| <= chi(1) for genuine characters.
    pub fn class_values(&self, chi: &ClassFunction) -> Result<Vec<Complex64>, StreamError> {
        if !Arc::ptr_eq(chi.group(), &self.group) {
            return Err(StreamError::MismatchedGroups);
        }
        let bound = {
            let (re, im) = chi.degree_value().to_c64();
            (re * re + im * im).sqrt() + 1e-9
        };
        Ok(chi
            .values()
            .iter()
            .map(|v| {
                let (re, im) = v.to_c64();
                let z = Complex64::new(re, im);
                assert!(
                    z.norm() <= bound,
                    "class value exceeds the degree bound; not a genuine character"
                );
                z
            })
            .collect())
    }

    /// Iterate over the places, pairing each norm with the values of the two
    /// characters at its sampled class.
    pub fn samples<'a>(
        &'a self,
        chi: &ClassFunction,
        chi_prime: &ClassFunction,
    ) -> Result<impl Iterator<Item = HeckeSample> + 'a, StreamError> {
        let va = self.class_values(chi)?;
        let vb = self.class_values(chi_prime)?;
        Ok(self.classes.iter().zip(self.norms.iter()).map(move |(&c, &p)| HeckeSample {
            norm: p,
            a: va[c as usize],
            a_prime: vb[c as usize],
        }))
    }
}
