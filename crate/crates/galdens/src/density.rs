//! Dirichlet series over a place stream and density estimation.
//!
//! For a pair of characters evaluated along a stream, the module sums
//! monomials in the two values and their conjugates against norm^(-s),
//! estimates the pole order of the corresponding series at s = 1, and
//! compares the empirical disagreement density with its exact class-sum
//! value. Pole orders are read off as the slope of the monomial sum against
//! the stream's own character-free sum: that self-normalization cancels the
//! truncation bias of a finite stream, which dominates near s = 1.

use crate::classfun::ClassFunction;
use crate::rational::Rat;
use crate::stream::{PlaceStream, StreamError};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DensityError {
    #[error("dirichlet sums require s > 1 (got {0})")]
    BadExponent(f64),
    #[error("total monomial weight must be at most 4 (got {0})")]
    WeightCap(u32),
    #[error("pole estimation needs at least 3 strictly decreasing grid points above 1")]
    BadGrid,
    #[error(transparent)]
    Stream(#[from] StreamError),
}

/// Default evaluation grid, decreasing toward the edge of convergence.
pub const DEFAULT_S_GRID: [f64; 6] = [1.5, 1.2, 1.1, 1.05, 1.02, 1.01];

/// Report label for the empirical density: in this model the limit exists.
pub const DENSITY_LABEL: &str = "density (model has limit)";

#[inline]
fn kahan_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Sum of a^w conj(a)^x b^y conj(b)^z * norm^(-s) over the stream, in
/// ascending norm order with compensated accumulation.
pub fn dirichlet_sum(
    stream: &PlaceStream,
    chi: &ClassFunction,
    chi_prime: &ClassFunction,
    powers: (u32, u32, u32, u32),
    s: f64,
) -> Result<Complex64, DensityError> {
    let (w, x, y, z) = powers;
    let weight = w + x + y + z;
    if weight > 4 {
        return Err(DensityError::WeightCap(weight));
    }
    // negated compare so NaN is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(s > 1.0) {
        return Err(DensityError::BadExponent(s));
    }
    let va = stream.class_values(chi)?;
    let vb = stream.class_values(chi_prime)?;
    let table: Vec<Complex64> = va
        .iter()
        .zip(vb.iter())
        .map(|(a, b)| a.powu(w) * a.conj().powu(x) * b.powu(y) * b.conj().powu(z))
        .collect();
    Ok(weighted_sum(stream, &table, s))
}

/// Kahan-compensated sum of table[class] * norm^(-s) along the stream.
fn weighted_sum(stream: &PlaceStream, table: &[Complex64], s: f64) -> Complex64 {
    let (mut re, mut cre) = (0.0f64, 0.0f64);
    let (mut im, mut cim) = (0.0f64, 0.0f64);
    for (&c, &p) in stream.classes().iter().zip(stream.norms()) {
        let t = table[c as usize] * (p as f64).powf(-s);
        kahan_add(&mut re, &mut cre, t.re);
        kahan_add(&mut im, &mut cim, t.im);
    }
    Complex64::new(re, im)
}

// The negated compares reject NaN grid points along with the out-of-range
// ones; `<=` would let NaN through.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn check_grid(grid: &[f64]) -> Result<(), DensityError> {
    if grid.len() < 3 {
        return Err(DensityError::BadGrid);
    }
    for k in 0..grid.len() {
        if !(grid[k] > 1.0) {
            return Err(DensityError::BadGrid);
        }
        if k > 0 && !(grid[k] < grid[k - 1]) {
            return Err(DensityError::BadGrid);
        }
    }
    Ok(())
}

/// Least-squares line fit with intercept; returns (slope, intercept).
fn slope_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
    }
    (sxy / sxx, ybar - (sxy / sxx) * xbar)
}

/// How many trailing grid points enter the fit.
const FIT_POINTS: usize = 4;

#[derive(Clone, Debug)]
pub struct PoleEstimate {
    pub monomial: (u32, u32, u32, u32),
    pub s_grid: Vec<f64>,
    /// Real parts of the monomial sums at each grid point.
    pub sums: Vec<f64>,
    /// Character-free sums (the regressor) at each grid point.
    pub base_sums: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
}

impl PoleEstimate {
    pub fn estimate(&self) -> f64 {
        self.slope
    }
}

/// Estimate the pole order of the series with the given monomial by fitting
/// its partial sums against the character-free partial sums over the last
/// grid points. Grid points must be strictly decreasing and above 1.
pub fn pole_order_estimate(
    stream: &PlaceStream,
    chi: &ClassFunction,
    chi_prime: &ClassFunction,
    monomial: (u32, u32, u32, u32),
    grid: &[f64],
) -> Result<PoleEstimate, DensityError> {
    check_grid(grid)?;
    let mut sums = Vec::with_capacity(grid.len());
    let mut base_sums = Vec::with_capacity(grid.len());
    for &s in grid {
        sums.push(dirichlet_sum(stream, chi, chi_prime, monomial, s)?.re);
        base_sums.push(dirichlet_sum(stream, chi, chi_prime, (0, 0, 0, 0), s)?.re);
    }
    let take = grid.len().min(FIT_POINTS);
    let xs = &base_sums[grid.len() - take..];
    let ys = &sums[grid.len() - take..];
    let (slope, intercept) = slope_fit(xs, ys);
    Ok(PoleEstimate {
        monomial,
        s_grid: grid.to_vec(),
        sums,
        base_sums,
        slope,
        intercept,
    })
}

#[derive(Clone, Debug)]
pub struct DensityReport {
    /// Exact class-sum disagreement density.
    pub exact_density: Rat,
    pub s_grid: Vec<f64>,
    /// Disagreement sums divided by log(1/(s-1)) at each grid point; these
    /// converge only as fast as the full series, so they understate the
    /// density on a truncated stream.
    pub ratios: Vec<f64>,
    /// Disagreement partial sums at each grid point (the ratios' numerators).
    pub sums: Vec<f64>,
    /// Number of stream places whose two values differ.
    pub disagreements: usize,
    /// Slope of the disagreement sum against the character-free sum.
    pub extrapolated: f64,
    pub label: &'static str,
}

/// Empirical disagreement density of two characters along a stream, with the
/// exact value alongside. The disagreement indicator is decided exactly on
/// the cyclotomic values, never on floats.
pub fn empirical_lower_density(
    stream: &PlaceStream,
    chi: &ClassFunction,
    chi_prime: &ClassFunction,
    grid: &[f64],
) -> Result<DensityReport, DensityError> {
    check_grid(grid)?;
    // Touch the float tables first for the group check and value audit.
    let _ = stream.class_values(chi)?;
    let _ = stream.class_values(chi_prime)?;
    let exact = chi
        .disagreement_density(chi_prime)
        .map_err(|_| StreamError::MismatchedGroups)?;
    let table: Vec<Complex64> = chi
        .values()
        .iter()
        .zip(chi_prime.values())
        .map(|(a, b)| Complex64::new(if a == b { 0.0 } else { 1.0 }, 0.0))
        .collect();
    let mut sums = Vec::with_capacity(grid.len());
    let mut base_sums = Vec::with_capacity(grid.len());
    let mut ratios = Vec::with_capacity(grid.len());
    for &s in grid {
        let d = weighted_sum(stream, &table, s).re;
        let base = dirichlet_sum(stream, chi, chi_prime, (0, 0, 0, 0), s)?.re;
        ratios.push(d / (1.0 / (s - 1.0)).ln());
        sums.push(d);
        base_sums.push(base);
    }
    let take = grid.len().min(FIT_POINTS);
    let (slope, _) = slope_fit(
        &base_sums[grid.len() - take..],
        &sums[grid.len() - take..],
    );
    let disagreements = stream
        .classes()
        .iter()
        .filter(|&&c| table[c as usize].re != 0.0)
        .count();
    Ok(DensityReport {
        exact_density: exact,
        s_grid: grid.to_vec(),
        ratios,
        sums,
        disagreements,
        extrapolated: slope,
        label: DENSITY_LABEL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::rational::rat;
    use std::sync::Arc;

    #[test]
    fn input_validation() {
        let e = entry("C2").unwrap();
        let s = PlaceStream::new(Arc::clone(&e.group), 42, 50).unwrap();
        let pi = e.role_row("pi").unwrap();
        let err = dirichlet_sum(&s, pi, pi, (2, 2, 1, 0), 1.5).unwrap_err();
        assert!(matches!(err, DensityError::WeightCap(5)));
        let err = dirichlet_sum(&s, pi, pi, (1, 1, 0, 0), 1.0).unwrap_err();
        assert!(matches!(err, DensityError::BadExponent(_)));
        let err = pole_order_estimate(&s, pi, pi, (1, 1, 0, 0), &[1.5, 1.2]).unwrap_err();
        assert!(matches!(err, DensityError::BadGrid));
        let err = pole_order_estimate(&s, pi, pi, (1, 1, 0, 0), &[1.2, 1.5, 1.1]).unwrap_err();
        assert!(matches!(err, DensityError::BadGrid));
        let err = pole_order_estimate(&s, pi, pi, (1, 1, 0, 0), &[1.5, 1.2, 0.9]).unwrap_err();
        assert!(matches!(err, DensityError::BadGrid));
    }

    #[test]
    fn unimodular_monomial_tracks_the_base_sum_exactly() {
        // For the C2 sign character, a * conj(a) = 1 at every place, so the
        // monomial sum equals the character-free sum and the fitted slope is
        // exactly 1 up to float roundoff.
        let e = entry("C2").unwrap();
        let s = PlaceStream::new(Arc::clone(&e.group), 42, 20_000).unwrap();
        let pi = e.role_row("pi").unwrap();
        let triv = e.role_row("trivial").unwrap();
        let est = pole_order_estimate(&s, pi, triv, (1, 1, 0, 0), &DEFAULT_S_GRID).unwrap();
        assert!((est.slope - 1.0).abs() < 1e-9, "slope {}", est.slope);
        let est = pole_order_estimate(&s, pi, triv, (0, 0, 1, 1), &DEFAULT_S_GRID).unwrap();
        assert!((est.slope - 1.0).abs() < 1e-9, "slope {}", est.slope);
    }

    #[test]
    fn sign_character_series_has_no_pole() {
        // Sum of sign(p) p^{-s} stays bounded, so the slope against the
        // character-free sum should sit near zero.
        let e = entry("C2").unwrap();
        let s = PlaceStream::new(Arc::clone(&e.group), 42, 20_000).unwrap();
        let pi = e.role_row("pi").unwrap();
        let triv = e.role_row("trivial").unwrap();
        let est = pole_order_estimate(&s, pi, triv, (1, 0, 0, 0), &DEFAULT_S_GRID).unwrap();
        assert!(est.slope.abs() < 0.2, "slope {}", est.slope);
    }

    #[test]
    fn empirical_density_lands_near_the_exact_value() {
        let e = entry("C2").unwrap();
        let s = PlaceStream::new(Arc::clone(&e.group), 42, 50_000).unwrap();
        let pi = e.role_row("pi").unwrap();
        let triv = e.role_row("trivial").unwrap();
        let rep = empirical_lower_density(&s, pi, triv, &DEFAULT_S_GRID).unwrap();
        assert_eq!(rep.exact_density, rat(1, 2));
        assert_eq!(rep.label, "density (model has limit)");
        let rel = (rep.extrapolated - 0.5).abs() / 0.5;
        assert!(rel < 0.15, "extrapolated {} off by {rel}", rep.extrapolated);
        // Truncated per-s ratios understate the density near s = 1.
        assert!(rep.ratios.last().unwrap() < &rep.extrapolated);
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let c2 = entry("C2").unwrap();
        let s3 = entry("S3").unwrap();
        let s = PlaceStream::new(Arc::clone(&c2.group), 42, 10).unwrap();
        let err = dirichlet_sum(
            &s,
            c2.role_row("pi").unwrap(),
            s3.role_row("pi").unwrap(),
            (1, 1, 0, 0),
            1.5,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "mismatched groups");
    }
}
