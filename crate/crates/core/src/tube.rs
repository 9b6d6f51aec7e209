//! Pointwise geometry of the seven tube families: position, unit normal,
//! first fundamental form and principal curvatures, in closed form and by
//! finite differences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet::{CurveCase, FramedCurve, FrenetFrame};
use crate::minkowski::{inner, triple_cross, Vec4};

/// Default lower bound on the regularity denominator.
pub const REG_TOL: f64 = 1e-3;
/// Default lower bound on |𝔤| for the gradient formula.
pub const METRIC_TOL: f64 = 1e-9;
/// Default finite-difference step.
pub const FD_STEP: f64 = 1e-5;

/// (−1)^n for a non-negative integer exponent.
pub fn neg_one_pow(n: u64) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// (−1)^{(4−j)!}: +1 for j = 2, −1 for j = 3, 4.
pub fn parity_4j(j: u8) -> f64 {
    neg_one_pow(factorial(4 - j as u64))
}

/// (−1)^{(5−j)!}: +1 for j = 2, 3, −1 for j = 4.
pub fn parity_5j(j: u8) -> f64 {
    neg_one_pow(factorial(5 - j as u64))
}

/// (−1)^j
pub fn parity_j(j: u8) -> f64 {
    neg_one_pow(j as u64)
}

/// λ^n for λ = ±1.
pub fn sign_pow(lambda: i8, n: u32) -> f64 {
    if lambda < 0 && n % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Tube family: around a timelike curve, or around a spacelike curve whose
/// Frenet vector F_j is timelike, foliated by pseudo hyperspheres (λ = 1) or
/// pseudo hyperbolic hyperspheres (λ = −1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Timelike,
    Spacelike { j: u8, lambda: i8 },
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Timelike,
        Family::Spacelike { j: 2, lambda: 1 },
        Family::Spacelike { j: 2, lambda: -1 },
        Family::Spacelike { j: 3, lambda: 1 },
        Family::Spacelike { j: 3, lambda: -1 },
        Family::Spacelike { j: 4, lambda: 1 },
        Family::Spacelike { j: 4, lambda: -1 },
    ];

    pub fn validate(self) -> Result<Self> {
        match self {
            Family::Timelike => Ok(self),
            Family::Spacelike { j, lambda } if (2..=4).contains(&j) && (lambda == 1 || lambda == -1) => {
                Ok(self)
            }
            Family::Spacelike { j, lambda } => Err(Error::Invalid(format!(
                "spacelike family needs j in {{2,3,4}} and lambda = ±1, got j = {j}, lambda = {lambda}"
            ))),
        }
    }

    pub fn curve_case(self) -> CurveCase {
        match self {
            Family::Timelike => CurveCase::TimelikeCenter,
            Family::Spacelike { j, .. } => {
                CurveCase::from_timelike_index(j as usize).unwrap_or(CurveCase::SpacelikeJ2)
            }
        }
    }

    /// Expected ⟨N, N⟩.
    pub fn normal_sign(self) -> f64 {
        match self {
            Family::Timelike => 1.0,
            Family::Spacelike { lambda, .. } => lambda as f64,
        }
    }

    /// Sign of the F₁ coefficient of F₂′ in the Frenet system of the centre curve;
    /// it enters the regularity denominator 1 + c·r·k₁·(profile coefficient of F₂).
    fn frenet_twist(self) -> f64 {
        match self {
            Family::Timelike => 1.0,
            Family::Spacelike { j, .. } => parity_4j(j),
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Family::Spacelike { .. })
    }

    pub fn label(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Timelike => f.write_str("timelike"),
            Family::Spacelike { j, lambda } => write!(f, "j{j}-lambda{lambda:+}"),
        }
    }
}

/// (μ₂, μ₃, μ₄) for the spacelike family (j, λ).
///
/// μ_j = h₊ cosh t, μ_{j+1} = h₋, μ_{j+2} = h₊ sinh t with h₊ = sinh w for
/// λ = 1 (cosh w for λ = −1) and h₋ the other one; indices wrap with
/// μ₅ = μ₂, μ₆ = μ₃.
pub fn mu(j: u8, lambda: i8, t: f64, w: f64) -> [f64; 3] {
    let (hp, hm) = if lambda > 0 {
        (w.sinh(), w.cosh())
    } else {
        (w.cosh(), w.sinh())
    };
    place_mu(j, [hp * t.cosh(), hm, hp * t.sinh()])
}

/// ∂μ/∂w, same layout as [`mu`].
pub fn mu_dw(j: u8, lambda: i8, t: f64, w: f64) -> [f64; 3] {
    let (hp, hm) = if lambda > 0 {
        (w.cosh(), w.sinh())
    } else {
        (w.sinh(), w.cosh())
    };
    place_mu(j, [hp * t.cosh(), hm, hp * t.sinh()])
}

/// ∂μ/∂t, same layout as [`mu`].
pub fn mu_dt(j: u8, lambda: i8, t: f64, w: f64) -> [f64; 3] {
    let hp = if lambda > 0 { w.sinh() } else { w.cosh() };
    place_mu(j, [hp * t.sinh(), 0.0, hp * t.cosh()])
}

fn place_mu(j: u8, values: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (offset, v) in values.into_iter().enumerate() {
        // index j + offset in 2..=6, wrapped onto 2..=4
        let idx = (j as usize - 2 + offset) % 3;
        out[idx] = v;
    }
    out
}

/// First fundamental form coefficients at a surface point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor3 {
    pub g11: f64,
    pub g12: f64,
    pub g13: f64,
    pub g22: f64,
    pub g23: f64,
    pub g33: f64,
}

impl MetricTensor3 {
    pub fn from_matrix(m: [[f64; 3]; 3]) -> Self {
        MetricTensor3 {
            g11: m[0][0],
            g12: m[0][1],
            g13: m[0][2],
            g22: m[1][1],
            g23: m[1][2],
            g33: m[2][2],
        }
    }

    /// Gram matrix of three tangent vectors under the ambient inner product.
    pub fn gram(tangents: &[Vec4; 3]) -> Self {
        let g = |a: usize, b: usize| inner(&tangents[a], &tangents[b]);
        MetricTensor3 {
            g11: g(0, 0),
            g12: g(0, 1),
            g13: g(0, 2),
            g22: g(1, 1),
            g23: g(1, 2),
            g33: g(2, 2),
        }
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.g11, self.g12, self.g13],
            [self.g12, self.g22, self.g23],
            [self.g13, self.g23, self.g33],
        ]
    }

    pub fn det(&self) -> f64 {
        let [[a, b, c], [_, d, e], [_, _, f]] = self.matrix();
        a * (d * f - e * e) - b * (b * f - c * e) + c * (b * e - c * d)
    }

    /// 𝔤 = g₁₃²g₂₂ − 2g₁₂g₁₃g₂₃ + g₁₁g₂₃² + g₁₂²g₃₃ − g₁₁g₂₂g₃₃
    pub fn frak_g(&self) -> f64 {
        let MetricTensor3 {
            g11,
            g12,
            g13,
            g22,
            g23,
            g33,
        } = *self;
        g13 * g13 * g22 - 2.0 * g12 * g13 * g23 + g11 * g23 * g23 + g12 * g12 * g33
            - g11 * g22 * g33
    }

    /// Coefficients of ∂s, ∂t, ∂w in ∇f for the partial derivatives
    /// (f_s, f_t, f_w), written out row by row with the common factor 1/𝔤.
    pub fn gradient(&self, f: [f64; 3], metric_tol: f64) -> Result<[f64; 3]> {
        let gg = self.frak_g();
        if !(gg.abs() > metric_tol) {
            return Err(Error::DegenerateMetric(gg));
        }
        let MetricTensor3 {
            g11,
            g12,
            g13,
            g22,
            g23,
            g33,
        } = *self;
        let [fs, ft, fw] = f;
        let row_s = (g23 * g23 - g22 * g33) * fs
            + (-g13 * g23 + g12 * g33) * ft
            + (g13 * g22 - g12 * g23) * fw;
        let row_t = (-g13 * g23 + g12 * g33) * fs
            + (g13 * g13 - g11 * g33) * ft
            + (-g12 * g13 + g11 * g23) * fw;
        let row_w = (g13 * g22 - g12 * g23) * fs
            + (-g12 * g13 + g11 * g23) * ft
            + (g12 * g12 - g11 * g22) * fw;
        Ok([row_s / gg, row_t / gg, row_w / gg])
    }

    pub fn max_rel_diff(&self, other: &MetricTensor3) -> f64 {
        let a = self.matrix();
        let b = other.matrix();
        let scale = a
            .iter()
            .flatten()
            .chain(b.iter().flatten())
            .fold(0.0f64, |m, x| m.max(x.abs()))
            .max(1e-300);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((a[i][j] - b[i][j]).abs() / scale);
            }
        }
        worst
    }
}

/// Geometric data attached to one surface parameter triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub s: f64,
    pub t: f64,
    pub w: f64,
    pub position: Vec4,
    pub normal: Vec4,
    pub center: Vec4,
    pub frame: FrenetFrame,
}

/// Tube of constant radius around a framed centre curve.
#[derive(Debug, Clone)]
pub struct TubeSpec {
    pub curve: FramedCurve,
    pub r: f64,
    pub family: Family,
    pub reg_tol: f64,
}

impl TubeSpec {
    pub fn new(curve: FramedCurve, r: f64, family: Family) -> Result<Self> {
        let family = family.validate()?;
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Invalid(format!("radius must be positive, got {r}")));
        }
        if curve.case != family.curve_case() {
            return Err(Error::Invalid(format!(
                "family {family} needs a {} centre curve, got {}",
                family.curve_case(),
                curve.case
            )));
        }
        Ok(TubeSpec {
            curve,
            r,
            family,
            reg_tol: REG_TOL,
        })
    }

    pub fn with_reg_tol(mut self, reg_tol: f64) -> Self {
        self.reg_tol = reg_tol;
        self
    }

    /// Coefficients of F₂, F₃, F₄ in the unit radial direction.
    pub fn profile(&self, t: f64, w: f64) -> [f64; 3] {
        match self.family {
            Family::Timelike => {
                let (st, ct) = t.sin_cos();
                let (sw, cw) = w.sin_cos();
                [ct * cw, st * cw, sw]
            }
            Family::Spacelike { j, lambda } => mu(j, lambda, t, w),
        }
    }

    /// Regularity denominator 1 + c·r·k₁·(profile coefficient of F₂).
    pub fn regularity(&self, s: f64, t: f64, w: f64) -> f64 {
        let k1 = self.curve.curvatures.k1.value(s);
        1.0 + self.family.frenet_twist() * self.r * k1 * self.profile(t, w)[0]
    }

    fn check_regular(&self, s: f64, t: f64, w: f64) -> Result<()> {
        let margin = self.regularity(s, t, w);
        if !(margin.abs() > self.reg_tol) {
            return Err(Error::SingularPoint { s, t, w, margin });
        }
        Ok(())
    }

    pub fn is_regular(&self, s: f64, t: f64, w: f64) -> bool {
        self.check_regular(s, t, w).is_ok()
    }

    fn normal_factor(&self) -> f64 {
        match self.family {
            Family::Timelike => -1.0,
            Family::Spacelike { j, lambda } => -parity_4j(j) * sign_pow(lambda, j as u32),
        }
    }

    /// Position, normal and frame in one pass.
    pub fn evaluate(&self, s: f64, t: f64, w: f64) -> Result<SurfacePoint> {
        self.check_regular(s, t, w)?;
        let (center, frame) = self.curve.frame_at(s)?;
        let p = self.profile(t, w);
        let radial = frame.combine([0.0, p[0], p[1], p[2]]);
        Ok(SurfacePoint {
            s,
            t,
            w,
            position: center + self.r * radial,
            normal: self.normal_factor() * radial,
            center,
            frame,
        })
    }

    /// Position and centre without the regularity check.
    pub fn position_unchecked(&self, s: f64, t: f64, w: f64) -> Result<(Vec4, Vec4)> {
        let (center, frame) = self.curve.frame_at(s)?;
        let p = self.profile(t, w);
        Ok((center + self.r * frame.combine([0.0, p[0], p[1], p[2]]), center))
    }

    /// β(s) + r·Σ (profile coefficient)·F_i(s)
    pub fn tube_point(&self, s: f64, t: f64, w: f64) -> Result<Vec4> {
        Ok(self.evaluate(s, t, w)?.position)
    }

    pub fn unit_normal(&self, s: f64, t: f64, w: f64) -> Result<Vec4> {
        Ok(self.evaluate(s, t, w)?.normal)
    }

    /// Closed-form first fundamental form.
    pub fn first_fundamental_form(&self, s: f64, t: f64, w: f64) -> Result<MetricTensor3> {
        self.check_regular(s, t, w)?;
        let [k1, k2, k3] = self.curve.curvatures.at(s);
        let r = self.r;
        let r2 = r * r;
        Ok(match self.family {
            Family::Timelike => {
                let (st, ct) = t.sin_cos();
                let (sw, cw) = w.sin_cos();
                let a = 1.0 + r * k1 * ct * cw;
                let b = r * k2 * ct * cw - r * k3 * sw;
                MetricTensor3 {
                    g11: -a * a + b * b + r2 * (k2 * k2 + k3 * k3) * st * st * cw * cw,
                    g12: r2 * (k2 * cw - k3 * ct * sw) * cw,
                    g13: r2 * k3 * st,
                    g22: r2 * cw * cw,
                    g23: 0.0,
                    g33: r2,
                }
            }
            Family::Spacelike { j, lambda } => {
                let [m2, m3, m4] = mu(j, lambda, t, w);
                let dw = mu_dw(j, lambda, t, w);
                let p4 = parity_4j(j);
                let p5 = parity_5j(j);
                let pj = parity_j(j);
                let lam = lambda as f64;
                // (μ_{j+1})_w, wrapped onto 2..=4
                let mj1_w = dw[(j as usize - 1) % 3];
                let g11 = 1.0
                    + r2 * k2 * k2 * (-p4 * m3 * m3 + pj * m2 * m2)
                    + r2 * k3 * k3 * (p5 * m3 * m3 + pj * m4 * m4)
                    + 2.0 * p4 * r * k1 * m2
                    + r2 * k1 * k1 * m2 * m2
                    - 2.0 * p5 * r2 * k2 * k3 * m2 * m4;
                let g12 = r2 * mj1_w * (pj * k3 * dw[0] - p4 * k2 * dw[2]);
                let g13 = match j {
                    2 => lam * r2 * (-k2 * t.cosh() + k3 * t.sinh()),
                    3 => -lam * r2 * k3 * t.cosh(),
                    _ => lam * r2 * k2 * t.sinh(),
                };
                MetricTensor3 {
                    g11,
                    g12,
                    g13,
                    g22: r2 * mj1_w * mj1_w,
                    g23: 0.0,
                    g33: -lam * r2,
                }
            }
        })
    }

    /// Closed-form principal curvatures (κ₁, κ₂, κ₃).
    pub fn principal_curvatures(&self, s: f64, t: f64, w: f64) -> Result<[f64; 3]> {
        self.check_regular(s, t, w)?;
        let k1 = self.curve.curvatures.k1.value(s);
        let r = self.r;
        Ok(match self.family {
            Family::Timelike => {
                let c = t.cos() * w.cos();
                [1.0 / r, 1.0 / r, k1 * c / (1.0 + r * k1 * c)]
            }
            Family::Spacelike { j, lambda } => {
                let m2 = mu(j, lambda, t, w)[0];
                let p4 = parity_4j(j);
                let lj = sign_pow(lambda, j as u32);
                let k = p4 * lj / r;
                [k, k, k1 * m2 / (lj * (1.0 + p4 * r * k1 * m2))]
            }
        })
    }

    /// Central-difference tangent vectors (∂s, ∂t, ∂w) of the tube.
    pub fn tangent_basis(&self, s: f64, t: f64, w: f64, h: f64) -> Result<[Vec4; 3]> {
        if !(h > 0.0) {
            return Err(Error::Invalid(format!("difference step must be positive, got {h}")));
        }
        let x = |ds: f64, dt: f64, dw: f64| self.tube_point(s + ds, t + dt, w + dw);
        let c = 1.0 / (2.0 * h);
        Ok([
            c * (x(h, 0.0, 0.0)? - x(-h, 0.0, 0.0)?),
            c * (x(0.0, h, 0.0)? - x(0.0, -h, 0.0)?),
            c * (x(0.0, 0.0, h)? - x(0.0, 0.0, -h)?),
        ])
    }

    /// Tangent vectors with one Richardson extrapolation over (h, h/2).
    pub fn tangent_basis_richardson(&self, s: f64, t: f64, w: f64, h: f64) -> Result<[Vec4; 3]> {
        let coarse = self.tangent_basis(s, t, w, h)?;
        let fine = self.tangent_basis(s, t, w, 0.5 * h)?;
        Ok(std::array::from_fn(|i| (1.0 / 3.0) * (4.0 * fine[i] - coarse[i])))
    }

    /// Gram metric of the finite-difference tangents.
    pub fn fd_metric(&self, s: f64, t: f64, w: f64, h: f64) -> Result<MetricTensor3> {
        Ok(MetricTensor3::gram(&self.tangent_basis_richardson(s, t, w, h)?))
    }

    /// Symmetric functions (a₁, a₂, a₃) of the shape operator S = −dN obtained
    /// from second differences of the position and a normal built from the
    /// difference tangents. Orientation follows [`TubeSpec::unit_normal`].
    pub fn fd_shape_invariants(&self, s: f64, t: f64, w: f64, h: f64) -> Result<[f64; 3]> {
        let x = |ds: f64, dt: f64, dw: f64| self.tube_point(s + ds, t + dt, w + dw);
        let tangents = self.tangent_basis_richardson(s, t, w, h.min(1e-5))?;
        let g = MetricTensor3::gram(&tangents);
        let mut n = triple_cross(&tangents[0], &tangents[1], &tangents[2]);
        n = (1.0 / inner(&n, &n).abs().sqrt()) * n;
        let closed = self.unit_normal(s, t, w)?;
        if inner(&n, &closed) * self.family.normal_sign() < 0.0 {
            n = -n;
        }
        let center = x(0.0, 0.0, 0.0)?;
        let unit = |i: usize| {
            let mut d = [0.0; 3];
            d[i] = h;
            d
        };
        let mut b = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let second = if i == j {
                    let d = unit(i);
                    (1.0 / (h * h))
                        * (x(d[0], d[1], d[2])? - 2.0 * center + x(-d[0], -d[1], -d[2])?)
                } else {
                    let (a, c) = (unit(i), unit(j));
                    let pp = x(a[0] + c[0], a[1] + c[1], a[2] + c[2])?;
                    let pm = x(a[0] - c[0], a[1] - c[1], a[2] - c[2])?;
                    let mp = x(-a[0] + c[0], -a[1] + c[1], -a[2] + c[2])?;
                    let mm = x(-a[0] - c[0], -a[1] - c[1], -a[2] - c[2])?;
                    (1.0 / (4.0 * h * h)) * ((pp - pm) - (mp - mm))
                };
                b[i][j] = inner(&second, &n);
                b[j][i] = b[i][j];
            }
        }
        let ginv = invert3(g.matrix()).ok_or(Error::DegenerateMetric(g.det()))?;
        let mut shape = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                shape[i][j] = (0..3).map(|k| ginv[i][k] * b[k][j]).sum();
            }
        }
        let tr = shape[0][0] + shape[1][1] + shape[2][2];
        let minors = shape[0][0] * shape[1][1] - shape[0][1] * shape[1][0]
            + shape[0][0] * shape[2][2]
            - shape[0][2] * shape[2][0]
            + shape[1][1] * shape[2][2]
            - shape[1][2] * shape[2][1];
        let det = det3(shape);
        Ok([-tr, minors, -det])
    }
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn invert3(m: [[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let d = det3(m);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    Some([
        [c(1, 2, 1, 2) / d, -c(0, 2, 1, 2) / d, c(0, 1, 1, 2) / d],
        [-c(1, 2, 0, 2) / d, c(0, 2, 0, 2) / d, -c(0, 1, 0, 2) / d],
        [c(1, 2, 0, 1) / d, -c(0, 2, 0, 1) / d, c(0, 1, 0, 1) / d],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{integrate_frame, Curvature, CurvatureFunctions};

    fn spec(family: Family, k: CurvatureFunctions, r: f64) -> TubeSpec {
        let frame = FrenetFrame::standard(family.curve_case());
        let curve = integrate_frame(&k, (0.0, 2.0), Vec4::ZERO, frame, 1e-3).unwrap();
        TubeSpec::new(curve, r, family).unwrap()
    }

    fn generic_k() -> CurvatureFunctions {
        CurvatureFunctions::new(
            Curvature::Sinusoid { a: 0.3, b: 0.1, omega: 1.0 },
            Curvature::Constant(0.2),
            Curvature::Constant(0.1),
        )
    }

    #[test]
    fn parity_factors() {
        assert_eq!([parity_4j(2), parity_4j(3), parity_4j(4)], [1.0, -1.0, -1.0]);
        assert_eq!([parity_5j(2), parity_5j(3), parity_5j(4)], [1.0, 1.0, -1.0]);
        assert_eq!([parity_j(2), parity_j(3), parity_j(4)], [1.0, -1.0, 1.0]);
        assert_eq!(sign_pow(-1, 3), -1.0);
        assert_eq!(sign_pow(-1, 4), 1.0);
    }

    #[test]
    fn mu_examples() {
        let (t, w) = (0.37, -0.81);
        let m = mu(2, 1, t, w);
        let expect = [t.cosh() * w.sinh(), w.cosh(), t.sinh() * w.sinh()];
        assert_eq!(m, expect);
        let m = mu(4, -1, t, w);
        let expect = [w.sinh(), t.sinh() * w.cosh(), t.cosh() * w.cosh()];
        assert_eq!(m, expect);
        assert_eq!(mu(3, 1, 0.0, 0.0), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn mu_matches_explicit_parametrizations() {
        // the six explicit tube parametrizations written out line by line
        let (t, w) = (0.41f64, 0.77f64);
        let (ct, st, cw, sw) = (t.cosh(), t.sinh(), w.cosh(), w.sinh());
        let table = [
            ((2, 1), [ct * sw, cw, st * sw]),
            ((2, -1), [ct * cw, sw, st * cw]),
            ((3, 1), [st * sw, ct * sw, cw]),
            ((3, -1), [st * cw, ct * cw, sw]),
            ((4, 1), [cw, st * sw, ct * sw]),
            ((4, -1), [sw, st * cw, ct * cw]),
        ];
        for ((j, lambda), expect) in table {
            assert_eq!(mu(j, lambda, t, w), expect, "j={j} lambda={lambda}");
        }
    }

    #[test]
    fn mu_derivatives_match_differences() {
        let h = 1e-6;
        for family in Family::ALL.iter().skip(1) {
            let Family::Spacelike { j, lambda } = *family else { unreachable!() };
            let (t, w) = (0.3, -0.6);
            let dw = mu_dw(j, lambda, t, w);
            let dt = mu_dt(j, lambda, t, w);
            let pw = mu(j, lambda, t, w + h);
            let mw = mu(j, lambda, t, w - h);
            let pt = mu(j, lambda, t + h, w);
            let mt = mu(j, lambda, t - h, w);
            for i in 0..3 {
                assert!(((pw[i] - mw[i]) / (2.0 * h) - dw[i]).abs() < 1e-8);
                assert!(((pt[i] - mt[i]) / (2.0 * h) - dt[i]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn point_examples() {
        let sp = spec(Family::Timelike, generic_k(), 0.5);
        let (c, fr) = sp.curve.frame_at(1.0).unwrap();
        let p = sp.tube_point(1.0, 0.0, 0.0).unwrap();
        assert!(p.max_abs_diff(&(c + 0.5 * fr.f[1])) < 1e-15);
        assert!(sp.unit_normal(1.0, 0.0, 0.0).unwrap().max_abs_diff(&(-fr.f[1])) < 1e-15);

        let sp = spec(Family::Spacelike { j: 2, lambda: 1 }, generic_k(), 0.5);
        let (c, fr) = sp.curve.frame_at(1.0).unwrap();
        let p = sp.tube_point(1.0, 0.8, 0.0).unwrap();
        assert!(p.max_abs_diff(&(c + 0.5 * fr.f[2])) < 1e-15);
    }

    #[test]
    fn normal_norms_and_foliation() {
        for family in Family::ALL {
            let sp = spec(family, generic_k(), 0.5);
            for &(s, t, w) in &[(0.3, 0.2, -0.4), (1.1, -0.9, 0.5), (1.7, 1.2, 1.0)] {
                if !sp.is_regular(s, t, w) {
                    continue;
                }
                let pt = sp.evaluate(s, t, w).unwrap();
                let nn = inner(&pt.normal, &pt.normal);
                assert!((nn - family.normal_sign()).abs() < 1e-10, "{family}");
                let d = pt.position - pt.center;
                let expected = family.normal_sign() * 0.25;
                assert!((inner(&d, &d) - expected).abs() < 1e-10, "{family}");
            }
        }
    }

    #[test]
    fn normal_is_tangent_orthogonal() {
        for family in Family::ALL {
            let sp = spec(family, generic_k(), 0.5);
            let (s, t, w) = (0.9, 0.35, -0.45);
            let n = sp.unit_normal(s, t, w).unwrap();
            for v in sp.tangent_basis(s, t, w, 1e-5).unwrap() {
                assert!(inner(&n, &v).abs() < 1e-6, "{family}");
            }
        }
    }

    #[test]
    fn closed_form_metric_matches_gram() {
        for family in Family::ALL {
            let sp = spec(family, generic_k(), 0.5);
            let (s, t, w) = (1.3, -0.25, 0.6);
            let closed = sp.first_fundamental_form(s, t, w).unwrap();
            let fd = sp.fd_metric(s, t, w, 1e-5).unwrap();
            assert!(closed.max_rel_diff(&fd) < 1e-6, "{family}: {closed:?} vs {fd:?}");
        }
    }

    #[test]
    fn metric_examples() {
        let sp = spec(Family::Timelike, generic_k(), 0.5);
        let g = sp.first_fundamental_form(0.5, 0.3, 0.7).unwrap();
        assert!((g.g22 - 0.25 * 0.7f64.cos().powi(2)).abs() < 1e-15);
        assert_eq!(g.g33, 0.25);
        assert_eq!(g.g23, 0.0);
        for family in Family::ALL.iter().skip(1) {
            let sp = spec(*family, generic_k(), 0.5);
            let g = sp.first_fundamental_form(0.5, 0.3, 0.2).unwrap();
            assert_eq!(g.g33, -family.normal_sign() * 0.25);
        }
    }

    #[test]
    fn curvature_examples() {
        let sp = spec(Family::Timelike, CurvatureFunctions::zero(), 0.5);
        assert_eq!(sp.principal_curvatures(0.3, 0.4, 0.5).unwrap(), [2.0, 2.0, 0.0]);
        let sp = spec(Family::Timelike, CurvatureFunctions::constant(0.5, 0.0, 0.0), 1.0);
        let k = sp.principal_curvatures(0.3, 0.0, 0.0).unwrap();
        assert!((k[2] - 1.0 / 3.0).abs() < 1e-15);
        let sp = spec(Family::Spacelike { j: 3, lambda: 1 }, generic_k(), 0.5);
        let k = sp.principal_curvatures(0.3, 0.1, 0.1).unwrap();
        assert_eq!(k[0], -2.0);
        assert_eq!(k[1], -2.0);
    }

    #[test]
    fn closed_curvatures_match_shape_operator() {
        for family in Family::ALL {
            let sp = spec(family, generic_k(), 0.5);
            let (s, t, w) = (1.2, 0.4, -0.3);
            let k = sp.principal_curvatures(s, t, w).unwrap();
            let closed = [
                -(k[0] + k[1] + k[2]),
                k[0] * k[1] + k[0] * k[2] + k[1] * k[2],
                -k[0] * k[1] * k[2],
            ];
            let fd = sp.fd_shape_invariants(s, t, w, 1e-4).unwrap();
            for i in 0..3 {
                assert!((closed[i] - fd[i]).abs() < 1e-5 * (1.0 + closed[i].abs()), "{family} a{}: {} vs {}", i + 1, closed[i], fd[i]);
            }
        }
    }

    #[test]
    fn tangents_at_origin_of_parameters() {
        let sp = spec(Family::Timelike, generic_k(), 0.5);
        let (_, fr) = sp.curve.frame_at(0.7).unwrap();
        let tb = sp.tangent_basis(0.7, 0.0, 0.0, 1e-5).unwrap();
        assert!(tb[1].max_abs_diff(&(0.5 * fr.f[2])) < 1e-8);
        assert!(tb[2].max_abs_diff(&(0.5 * fr.f[3])) < 1e-8);
    }

    #[test]
    fn singular_points_are_rejected() {
        // 1 + r k₁ cos t cos w = 0 at t = w = 0 for r k₁ = −1
        let sp = spec(Family::Timelike, CurvatureFunctions::constant(-2.0, 0.0, 0.0), 0.5);
        assert!(matches!(sp.tube_point(0.5, 0.0, 0.0), Err(Error::SingularPoint { .. })));
        assert!(matches!(sp.principal_curvatures(0.5, 0.0, 0.0), Err(Error::SingularPoint { .. })));
        assert!(sp.tube_point(0.5, 1.0, 1.0).is_ok());
    }

    #[test]
    fn rejects_mismatched_curve() {
        let k = CurvatureFunctions::zero();
        let frame = FrenetFrame::standard(CurveCase::TimelikeCenter);
        let curve = integrate_frame(&k, (0.0, 1.0), Vec4::ZERO, frame, 1e-2).unwrap();
        assert!(TubeSpec::new(curve.clone(), 1.0, Family::Spacelike { j: 2, lambda: 1 }).is_err());
        assert!(TubeSpec::new(curve.clone(), -1.0, Family::Timelike).is_err());
        assert!(TubeSpec::new(curve, 1.0, Family::Spacelike { j: 5, lambda: 1 }).is_err());
    }

    #[test]
    fn gradient_of_diagonal_and_identity() {
        let g = MetricTensor3 { g11: 2.0, g12: 0.0, g13: 0.0, g22: 3.0, g23: 0.0, g33: -4.0 };
        assert_eq!(g.gradient([0.0, 0.0, 2.0], METRIC_TOL).unwrap(), [0.0, 0.0, -0.5]);
        let id = MetricTensor3 { g11: 1.0, g12: 0.0, g13: 0.0, g22: 1.0, g23: 0.0, g33: 1.0 };
        assert_eq!(id.frak_g(), -1.0);
        assert_eq!(id.gradient([1.0, 2.0, 3.0], METRIC_TOL).unwrap(), [1.0, 2.0, 3.0]);
        let degenerate = MetricTensor3 { g11: 1.0, g12: 1.0, g13: 0.0, g22: 1.0, g23: 0.0, g33: 1.0 };
        assert!(matches!(degenerate.gradient([1.0, 0.0, 0.0], METRIC_TOL), Err(Error::DegenerateMetric(_))));
    }
}
