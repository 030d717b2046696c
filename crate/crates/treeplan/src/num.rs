//! Exact rational arithmetic used throughout the crate.
//!
//! Every coordinate, edge length, breakpoint time and probability is a
//! [`Frac`]. Predicates on them (equality, ordering, collision solving)
//! are therefore exact; floats only appear at the I/O boundary, where
//! they are snapped to rationals with tolerance [`SNAP_TOLERANCE`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Frac = BigRational;

/// Absolute tolerance used when converting floating-point input to rationals.
pub const SNAP_TOLERANCE: (i64, u32) = (1, 12); // 1 * 10^-12

pub fn frac(num: i64, den: i64) -> Frac {
    Frac::new(BigInt::from(num), BigInt::from(den))
}

pub fn frac_int(value: i64) -> Frac {
    Frac::from_integer(BigInt::from(value))
}

pub fn frac_zero() -> Frac {
    Frac::zero()
}

pub fn frac_one() -> Frac {
    Frac::one()
}

/// Canonical `"numerator/denominator"` rendering, always reduced, denominator positive.
pub fn frac_to_string(value: &Frac) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"a/b"` or a plain integer string.
pub fn frac_from_string(text: &str) -> Option<Frac> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Frac::new(num, den))
    } else {
        let num: BigInt = text.parse().ok()?;
        Some(Frac::from_integer(num))
    }
}

pub fn frac_to_f64(value: &Frac) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite f64 (every finite f64 is dyadic).
fn frac_exact_from_f64(value: f64) -> Option<Frac> {
    if !value.is_finite() {
        return None;
    }
    Some(Frac::from_float(value).expect("finite float"))
}

/// Converts a float to the simplest rational within [`SNAP_TOLERANCE`].
///
/// "Simplest" means minimal denominator; among equal denominators the value
/// closest to the input. `0.25` becomes `1/4`, the f64 nearest `1/3`
/// becomes exactly `1/3`, and a value like `0.123` becomes `123/1000`
/// rather than its 52-bit dyadic expansion.
pub fn frac_from_f64_snapped(value: f64) -> Option<Frac> {
    let exact = frac_exact_from_f64(value)?;
    let (tol_num, tol_exp) = SNAP_TOLERANCE;
    let tol = Frac::new(BigInt::from(tol_num), BigInt::from(10u8).pow(tol_exp));
    Some(simplest_in_interval(&(&exact - &tol), &(&exact + &tol)))
}

/// Simplest rational in the closed interval `[lo, hi]`, `lo <= hi`.
///
/// Continued-fraction walk: the simplest rational in `[lo, hi]` with
/// `lo > 0` is found by comparing integer parts and recursing on the
/// reciprocal remainder interval.
pub fn simplest_in_interval(lo: &Frac, hi: &Frac) -> Frac {
    assert!(lo <= hi, "empty interval");
    if lo.is_zero() || hi.is_zero() || (lo.is_negative() && hi.is_positive()) {
        return Frac::zero();
    }
    if hi.is_negative() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Frac, hi: &Frac) -> Frac {
    let lo_floor = lo.floor();
    if &lo_floor == lo {
        return lo.clone();
    }
    if lo_floor.to_integer() < hi.floor().to_integer() {
        return lo_floor + Frac::one();
    }
    // Same integer part; recurse on 1/(frac part), with the interval flipped.
    let int_part = lo_floor;
    let lo_rem = lo - &int_part;
    let hi_rem = hi - &int_part;
    let inner = simplest_positive(&hi_rem.recip(), &lo_rem.recip());
    int_part + inner.recip()
}
