//! Even functions of `α` written in terms of `z = α²`.
//!
//! `z` is real on both sides of the barrier top: positive below it (real
//! `α`), negative above it (imaginary `α`). Each function switches to its
//! sixth-order Maclaurin form for `|α| < 10⁻³`.

use crate::Real;

/// `|α|` below which the Maclaurin forms are used.
pub const SERIES_RADIUS: f64 = 1.0e-3;

#[inline]
fn in_series_zone<T: Real>(z: T) -> bool {
    z.abs() < T::lit(SERIES_RADIUS * SERIES_RADIUS)
}

/// `sinh(α)/α`, which is `sin(β)/β` for `α = iβ`.
pub fn sinhc<T: Real>(z: T) -> T {
    if in_series_zone(z) {
        let one = T::one();
        return one + z / T::lit(6.0) * (one + z / T::lit(20.0) * (one + z / T::lit(42.0)));
    }
    if z > T::zero() {
        let a = z.sqrt();
        a.sinh() / a
    } else {
        let b = (-z).sqrt();
        b.sin() / b
    }
}

/// `cosh(α)`, which is `cos(β)` for `α = iβ`.
pub fn cosh_even<T: Real>(z: T) -> T {
    if z >= T::zero() {
        z.sqrt().cosh()
    } else {
        (-z).sqrt().cos()
    }
}

/// `(sinh(α)/α − 1)/α²`, tending to 1/6 at the barrier top.
///
/// The direct quotient loses about `log10(1/α²)` digits to cancellation,
/// so the full power series is used out to `|α| = 1`.
pub fn sinhc_m1_over_sq<T: Real>(z: T) -> T {
    let one = T::one();
    if in_series_zone(z) {
        // 1/3! + z/5! + z²/7! + z³/9!
        return (one
            + z / T::lit(20.0) * (one + z / T::lit(42.0) * (one + z / T::lit(72.0))))
            / T::lit(6.0);
    }
    if z.abs() < one {
        // Σ z^j / (2j+3)!, terms shrink by at least 1/((2j+4)(2j+5)).
        let mut term = one / T::lit(6.0);
        let mut sum = term;
        for j in 0..14 {
            let jj = T::from_usize_lossy(2 * j);
            term = term * z / ((jj + T::lit(4.0)) * (jj + T::lit(5.0)));
            sum = sum + term;
        }
        return sum;
    }
    (sinhc(z) - one) / z
}
