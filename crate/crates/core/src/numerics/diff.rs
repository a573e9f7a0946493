use crate::error::{Error, Result};
use crate::numerics::phase::unwrap_phase;
use crate::Real;

/// A derivative with an error estimate taken from the disagreement between
/// the plain central difference and its Richardson extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative<T> {
    pub value: T,
    pub error: T,
}

fn default_step<T: Real>(x: T) -> T {
    T::lit(1e-6) * x.abs().max(T::one())
}

// Stencil order: x-2h, x-h, x+h, x+2h.
fn richardson<T: Real>(s: [T; 4], h: T) -> Result<Derivative<T>> {
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric {
            what: "differentiate",
            detail: "non-finite sample in stencil".into(),
        });
    }
    let two = T::lit(2.0);
    let d1 = (s[2] - s[1]) / (two * h);
    let d2 = (s[3] - s[0]) / (T::lit(4.0) * h);
    let value = (T::lit(4.0) * d1 - d2) / T::lit(3.0);
    Ok(Derivative {
        value,
        error: (value - d1).abs(),
    })
}

/// Central difference at steps `h` and `2h` combined by one Richardson
/// level (fourth order). `h0` defaults to `10⁻⁶·max(1, |x|)`.
pub fn differentiate<T, F>(f: F, x: T, h0: Option<T>) -> Result<Derivative<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let h = h0.unwrap_or_else(|| default_step(x));
    let two = T::lit(2.0);
    richardson([f(x - two * h), f(x - h), f(x + h), f(x + two * h)], h)
}

/// Like [`differentiate`], for a phase known only modulo 2π. The five
/// stencil samples are unwrapped in order before differencing.
pub fn differentiate_phase<T, F>(phase: F, x: T, h0: Option<T>) -> Result<Derivative<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let h = h0.unwrap_or_else(|| default_step(x));
    let two = T::lit(2.0);
    let raw = [
        phase(x - two * h),
        phase(x - h),
        phase(x),
        phase(x + h),
        phase(x + two * h),
    ];
    let u = unwrap_phase(&raw);
    richardson([u[0], u[1], u[3], u[4]], h)
}

/// Phase derivative that must agree with itself under step halving to
/// relative tolerance `rtol`; returns the finer estimate.
pub fn differentiate_phase_converged<T, F>(phase: F, x: T, h0: Option<T>, rtol: T) -> Result<Derivative<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let h = h0.unwrap_or_else(|| default_step(x));
    let coarse = differentiate_phase(&phase, x, Some(h))?;
    let fine = differentiate_phase(&phase, x, Some(h * T::lit(0.5)))?;
    let gap = (fine.value - coarse.value).abs();
    if gap > rtol * fine.value.abs() {
        return Err(Error::NonConvergence {
            what: "phase derivative",
            achieved: (gap / fine.value.abs()).as_f64(),
            required: rtol.as_f64(),
            best: fine.value.as_f64(),
        });
    }
    Ok(Derivative {
        value: fine.value,
        error: fine.error.max(gap),
    })
}
