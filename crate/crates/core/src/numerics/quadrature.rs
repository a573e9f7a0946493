use crate::error::{domain, Error, Result};
use crate::Real;

/// Stopping rule for adaptive routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// Maximum number of bisections of any one subinterval.
    pub max_depth: u32,
}

impl<T: Real> Tolerance<T> {
    pub fn new(abs_tol: T, rel_tol: T, max_depth: u32) -> Result<Self> {
        if !(abs_tol >= T::zero() && rel_tol >= T::zero()) {
            return Err(domain("tolerance", "tolerances must be non-negative"));
        }
        if abs_tol <= T::zero() && rel_tol <= T::zero() {
            return Err(domain("tolerance", "at least one tolerance must be positive"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_depth,
        })
    }

    /// The bound an estimate of size `value` has to meet.
    pub fn bound(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-10),
            rel_tol: T::lit(1e-10),
            max_depth: 60,
        }
    }
}

/// A value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

// 15-point Kronrod extension of the 7-point Gauss rule (abscissae >= 0).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    depth: u32,
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, depth: u32) -> Result<Panel<T>> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let fc = f(center);
    let mut gauss = fc * T::lit(WG[3]);
    let mut kron = fc * T::lit(WGK[7]);
    let mut finite = fc.is_finite();
    for j in 0..7 {
        let dx = radius * T::lit(XGK[j]);
        let s = f(center - dx) + f(center + dx);
        finite &= s.is_finite();
        kron = kron + T::lit(WGK[j]) * s;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * s;
        }
    }
    if !finite {
        return Err(Error::Numeric {
            what: "integrate",
            detail: format!("integrand not finite on [{a}, {b}]"),
        });
    }
    Ok(Panel {
        a,
        b,
        value: kron * radius,
        error: ((kron - gauss) * radius).abs(),
        depth,
    })
}

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate meets `tol`. The raw Kronrod–Gauss difference is used as the
/// error estimate, which overstates the true error for smooth integrands.
pub fn integrate<T, F>(f: F, a: T, b: T, tol: &Tolerance<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain("bounds", format!("need finite a < b, got [{a}, {b}]")));
    }
    let mut panels = vec![kronrod(&f, a, b, 0)?];
    loop {
        let value = panels.iter().fold(T::zero(), |s, p| s + p.value);
        let error = panels.iter().fold(T::zero(), |s, p| s + p.error);
        if error <= tol.bound(value) {
            return Ok(Estimate { value, error });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |acc, (i, p)| {
                if p.error > acc.1 {
                    (i, p.error)
                } else {
                    acc
                }
            });
        let p = panels.swap_remove(worst);
        if p.depth >= tol.max_depth {
            return Err(Error::NonConvergence {
                what: "integrate",
                achieved: error.as_f64(),
                required: tol.bound(value).as_f64(),
                best: value.as_f64(),
            });
        }
        let mid = T::lit(0.5) * (p.a + p.b);
        panels.push(kronrod(&f, p.a, mid, p.depth + 1)?);
        panels.push(kronrod(&f, mid, p.b, p.depth + 1)?);
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
///
/// Roots are found by Newton iteration on the three-term recurrence,
/// started from the Tricomi asymptotic estimate.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let theta = std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (
        nodes.into_iter().map(T::lit).collect(),
        weights.into_iter().map(T::lit).collect(),
    )
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let r = integrate(|x: f64| x * x, 0.0, 1.0, &Tolerance::default()).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cosh_squared_antiderivative() {
        let l = 3.0_f64;
        let exact = ((2.0 * l).sinh() / 2.0 + l) / 2.0;
        let r = integrate(|x: f64| x.cosh().powi(2), 0.0, l, &Tolerance::default()).unwrap();
        assert!((r.value - exact).abs() <= 1e-10 * exact);
        assert!(r.error >= (r.value - exact).abs());
    }

    #[test]
    fn reversed_bounds_rejected() {
        let err = integrate(|x: f64| x, 1.0, 0.0, &Tolerance::default()).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn depth_limit_reports_best_estimate() {
        let tol = Tolerance::new(1e-14, 0.0, 2).unwrap();
        let err = integrate(|x: f64| x.abs().sqrt(), -1.0, 1.0, &tol).unwrap_err();
        match err {
            Error::NonConvergence { best, .. } => assert!((best - 4.0 / 3.0).abs() < 1e-3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tolerance_needs_a_positive_entry() {
        assert!(Tolerance::<f64>::new(0.0, 0.0, 10).is_err());
        assert!(Tolerance::<f64>::new(-1.0, 1e-3, 10).is_err());
    }

    #[test]
    fn gauss_legendre_moments() {
        for &n in &[1usize, 2, 5, 20, 2001] {
            let (x, w) = gauss_legendre::<f64>(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-12, "n = {n}: weight sum {s}");
            // exact for degree 2n-1
            let deg = (2 * n - 1).min(40) as i32;
            let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg - deg % 2)).sum();
            let exact = 2.0 / f64::from(deg - deg % 2 + 1);
            assert!((m - exact).abs() < 1e-12, "n = {n}");
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }
}
