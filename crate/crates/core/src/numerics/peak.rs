use crate::error::{domain, Result};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakRefinement<T> {
    pub position: T,
    /// Set when the three samples are collinear and the grid maximum is returned.
    pub degenerate: bool,
}

/// Vertex of the parabola through the samples at `i_max - 1`, `i_max`, `i_max + 1`.
pub fn refine_peak<T: Real>(xs: &[T], ys: &[T], i_max: usize) -> Result<PeakRefinement<T>> {
    if xs.len() != ys.len() {
        return Err(domain("samples", "x and y lengths differ"));
    }
    if i_max == 0 || i_max + 1 >= xs.len() {
        return Err(domain("i_max", "peak needs a neighbour on each side"));
    }
    let (x0, x1, x2) = (xs[i_max - 1], xs[i_max], xs[i_max + 1]);
    let (y0, y1, y2) = (ys[i_max - 1], ys[i_max], ys[i_max + 1]);
    if !(y1 >= y0 && y1 >= y2) {
        return Err(domain("i_max", "not a local maximum"));
    }
    let a = x1 - x0;
    let b = x1 - x2;
    let den = a * (y1 - y2) - b * (y1 - y0);
    if den == T::zero() {
        return Ok(PeakRefinement {
            position: x1,
            degenerate: true,
        });
    }
    let num = a * a * (y1 - y2) - b * b * (y1 - y0);
    Ok(PeakRefinement {
        position: x1 - T::lit(0.5) * num / den,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_parabola() {
        let xs = [0.0_f64, 0.7, 1.5];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 3.0 * (x - 0.61) * (x - 0.61)).collect();
        let p = refine_peak(&xs, &ys, 1).unwrap();
        assert!((p.position - 0.61).abs() < 1e-14);
        assert!(!p.degenerate);
    }

    #[test]
    fn symmetric_triple_gives_midpoint() {
        let p = refine_peak(&[1.0_f64, 2.0, 3.0], &[1.0, 5.0, 1.0], 1).unwrap();
        assert_eq!(p.position, 2.0);
    }

    #[test]
    fn sampled_gaussian() {
        let dx = 0.05_f64;
        let c = 0.013;
        let xs: Vec<f64> = (0..41).map(|i| -1.0 + dx * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (-(x - c) * (x - c) / 0.5).exp()).collect();
        let i = (0..ys.len()).max_by(|&a, &b| ys[a].total_cmp(&ys[b])).unwrap();
        let p = refine_peak(&xs, &ys, i).unwrap();
        // curvature of the Gaussian is 4 at the peak: error bound (dx)²·curvature
        assert!((p.position - c).abs() < dx * dx * 4.0);
    }

    #[test]
    fn flat_triple_is_degenerate() {
        let p = refine_peak(&[0.0_f64, 1.0, 2.0], &[1.0, 1.0, 1.0], 1).unwrap();
        assert!(p.degenerate);
        assert_eq!(p.position, 1.0);
    }

    #[test]
    fn rejects_edge_and_non_maximum() {
        assert!(refine_peak(&[0.0_f64, 1.0, 2.0], &[3.0, 2.0, 1.0], 0).is_err());
        assert!(refine_peak(&[0.0_f64, 1.0, 2.0], &[3.0, 2.0, 1.0], 1).is_err());
    }
}
