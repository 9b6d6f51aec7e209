//! Parameter grids over (s, t, w) with singular points removed.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tube::{Family, TubeSpec};

/// Half-width of the (t, w) window for the hyperbolic families.
pub const HYPERBOLIC_HALF_WIDTH: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSizes {
    pub s: usize,
    pub t: usize,
    pub w: usize,
}

impl Default for GridSizes {
    fn default() -> Self {
        GridSizes { s: 12, t: 12, w: 12 }
    }
}

impl GridSizes {
    pub fn cube(n: usize) -> Self {
        GridSizes { s: n, t: n, w: n }
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 2 || self.t < 2 || self.w < 2 {
            return Err(Error::Invalid(format!(
                "grid sizes must be at least 2, got {}x{}x{}",
                self.s, self.t, self.w
            )));
        }
        Ok(())
    }

    pub fn total(&self) -> usize {
        self.s * self.t * self.w
    }
}

/// `n` evenly spaced values on [a, b], endpoints included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Angle axis for the (t, w) directions: [0, 2π) for the timelike family,
/// [−1.5, 1.5] for the hyperbolic ones.
pub fn angle_axis(family: Family, n: usize) -> Vec<f64> {
    if family.is_hyperbolic() {
        linspace(-HYPERBOLIC_HALF_WIDTH, HYPERBOLIC_HALF_WIDTH, n)
    } else {
        (0..n).map(|i| TAU * i as f64 / n as f64).collect()
    }
}

/// Regular grid points in s-major order plus the number of excluded ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub points: Vec<(f64, f64, f64)>,
    pub excluded: usize,
    pub total: usize,
}

impl ParamGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Grid of explicit points with no exclusions.
    pub fn from_points(points: Vec<(f64, f64, f64)>) -> Self {
        let total = points.len();
        ParamGrid {
            points,
            excluded: 0,
            total,
        }
    }
}

/// Every lattice point in s-major order, singular or not.
pub fn lattice(spec: &TubeSpec, sizes: GridSizes) -> Vec<(f64, f64, f64)> {
    let (a, b) = spec.curve.s_range();
    let ts = angle_axis(spec.family, sizes.t);
    let ws = angle_axis(spec.family, sizes.w);
    let mut out = Vec::with_capacity(sizes.total());
    for s in linspace(a, b, sizes.s) {
        for &t in &ts {
            for &w in &ws {
                out.push((s, t, w));
            }
        }
    }
    out
}

pub fn build_grid(spec: &TubeSpec, sizes: GridSizes) -> ParamGrid {
    let all = lattice(spec, sizes);
    let total = all.len();
    let points: Vec<_> = all.into_iter().filter(|&(s, t, w)| spec.is_regular(s, t, w)).collect();
    ParamGrid {
        excluded: total - points.len(),
        points,
        total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{integrate_frame, CurvatureFunctions, FrenetFrame};
    use crate::minkowski::Vec4;

    fn spec(family: Family, k1: f64) -> TubeSpec {
        let curve = integrate_frame(
            &CurvatureFunctions::constant(k1, 0.2, 0.1),
            (0.0, 1.0),
            Vec4::ZERO,
            FrenetFrame::standard(family.curve_case()),
            1e-2,
        )
        .unwrap();
        TubeSpec::new(curve, 0.5, family).unwrap()
    }

    #[test]
    fn axes() {
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        let t = angle_axis(Family::Timelike, 4);
        assert_eq!(t.len(), 4);
        assert!(t[3] < TAU);
        let h = angle_axis(Family::Spacelike { j: 2, lambda: 1 }, 3);
        assert_eq!(h, vec![-1.5, 0.0, 1.5]);
    }

    #[test]
    fn counts_and_exclusions() {
        let g = build_grid(&spec(Family::Timelike, 0.3), GridSizes::cube(5));
        assert_eq!(g.total, 125);
        assert_eq!(g.len() + g.excluded, 125);
        assert_eq!(g.excluded, 0);
        // r·k₁ = 2 puts the focal set inside the angle window
        let g = build_grid(&spec(Family::Timelike, 2.0), GridSizes::cube(8));
        assert!(g.excluded > 0);
        let none = build_grid(&spec(Family::Timelike, 0.3).with_reg_tol(10.0), GridSizes::cube(4));
        assert!(none.is_empty());
        assert_eq!(none.excluded, 64);
    }

    #[test]
    fn sizes_validate() {
        assert!(GridSizes::default().validate().is_ok());
        assert!(GridSizes { s: 1, t: 4, w: 4 }.validate().is_err());
    }
}
