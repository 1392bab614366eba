//! Exact rational scalars and the small formatting contract used everywhere.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational with wide integer parts. Group orders stay below 10^6 and
/// character values below 10^2, so i128 leaves orders of magnitude of slack
/// for fourth powers and |G|-denominators.
pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

pub fn rat_int(n: i128) -> Rat {
    Ratio::from_integer(n)
}

/// Canonical console rendering: always `p/q` in lowest terms with positive
/// denominator, including integers (`2/1`), so output is uniform and greppable.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite f64 into a rational, refusing values whose
/// dyadic expansion would overflow i128 (|exponent| too large). Sufficient
/// for human-scale moment tables; rejects 1e300-style inputs.
pub fn f64_to_rat_exact(x: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(Rat::zero());
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i128 } else { 1i128 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i128;
    let (mantissa, exp) = if exp_bits == 0 {
        (frac, -1074i64) // subnormal
    } else {
        (frac | (1i128 << 52), exp_bits - 1075)
    };
    if exp >= 0 {
        if exp > 70 {
            return None; // mantissa << exp would exceed i128 comfortably
        }
        Some(Rat::from_integer(sign * (mantissa << exp)))
    } else {
        if exp < -100 {
            return None;
        }
        Some(Ratio::new(sign * mantissa, 1i128 << (-exp)))
    }
}

/// 15-significant-digit rendering used for every real in reports. Scientific
/// notation keeps the format independent of magnitude, hence byte-stable.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        // normalize -0.0
        return format!("{:.14e}", 0.0f64);
    }
    format!("{x:.14e}")
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
