//! Thin wrappers over `libm` so the crate works without `std`.
//!
//! Inherent `f64` methods like `sqrt` live in `std`, not `core`; routing all
//! transcendentals through these helpers keeps every call site identical in
//! `no_std` and test builds (where `std` is linked).

/// Square root.
#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Natural logarithm.
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

/// Exponential.
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

/// Absolute value.
#[inline]
pub fn fabs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Two-argument arctangent.
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

/// Cosine.
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

/// Sine.
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

/// Euclidean norm of a pair, overflow-safe.
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

/// Floating-point remainder with the sign of the dividend.
#[inline]
pub fn rem(x: f64, y: f64) -> f64 {
    libm::fmod(x, y)
}

/// Round to nearest integer, ties away from zero.
#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

/// `x` raised to an integer power (exact repeated squaring).
pub fn powi(x: f64, mut n: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}
