use crate::Real;

/// Maps an angle difference into `(−π, π]`.
pub fn wrap_to_pi<T: Real>(d: T) -> T {
    let two_pi = T::TAU();
    d - two_pi * ((d - T::PI()) / two_pi).ceil()
}

/// Accumulates a continuous phase from a stream of wrapped samples.
///
/// One tracker follows one sweep; callers must sample densely enough that
/// the true phase moves by less than π between consecutive samples.
#[derive(Debug, Clone, Default)]
pub struct PhaseTracker<T> {
    last_raw: Option<T>,
    last: T,
}

impl<T: Real> PhaseTracker<T> {
    pub fn new() -> Self {
        Self {
            last_raw: None,
            last: T::zero(),
        }
    }

    /// Feeds the next raw angle and returns its continuous counterpart.
    pub fn push(&mut self, raw: T) -> T {
        let next = match self.last_raw {
            None => raw,
            Some(prev) => self.last + wrap_to_pi(raw - prev),
        };
        self.last_raw = Some(raw);
        self.last = next;
        next
    }
}

/// Adds multiples of 2π so that consecutive differences lie in `(−π, π]`.
pub fn unwrap_phase<T: Real>(samples: &[T]) -> Vec<T> {
    let mut tracker = PhaseTracker::new();
    samples.iter().map(|&s| tracker.push(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_jump() {
        let u = unwrap_phase(&[3.1_f64, -3.1]);
        assert_eq!(u[0], 3.1);
        assert!((u[1] - (2.0 * std::f64::consts::PI - 3.1)).abs() < 1e-15);
    }

    #[test]
    fn continuous_input_unchanged() {
        let s: Vec<f64> = (0..50).map(|i| 0.05 * i as f64 - 1.0).collect();
        assert_eq!(unwrap_phase(&s), s);
    }

    #[test]
    fn wrap_bounds() {
        let pi = std::f64::consts::PI;
        assert_eq!(wrap_to_pi(pi), pi);
        assert!((wrap_to_pi(-pi) - pi).abs() < 1e-15);
        assert!((wrap_to_pi(3.0 * pi) - pi).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn recovers_a_slow_ramp(start in -10.0f64..10.0, slope in -2.5f64..2.5) {
            let truth: Vec<f64> = (0..200).map(|i| start + slope * i as f64).collect();
            let wrapped: Vec<f64> = truth.iter().map(|t| t.sin().atan2(t.cos())).collect();
            let u = unwrap_phase(&wrapped);
            let offset = u[0] - truth[0];
            for (a, b) in u.iter().zip(&truth) {
                prop_assert!((a - b - offset).abs() < 1e-9);
            }
            prop_assert!(u.windows(2).all(|p| (p[1] - p[0]).abs() <= std::f64::consts::PI + 1e-12));
        }
    }
}
