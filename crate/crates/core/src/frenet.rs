//! Frenet frames of non-null curves in E⁴₁ and their numerical propagation
//! from prescribed curvature functions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{inner, Vec4};
use crate::spline::NaturalSpline;

/// Orthonormality tolerance for frames.
pub const FRAME_TOL: f64 = 1e-8;
/// Default RK4 step.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Smallest admissible normalization denominator during re-orthonormalization.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-10;
/// Central-difference step for curvature derivatives without an analytic form.
pub const CURVATURE_FD_STEP: f64 = 1e-5;

/// Which Frenet vector is timelike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveCase {
    /// F₁ timelike.
    TimelikeCenter,
    /// Spacelike curve, F₂ timelike.
    SpacelikeJ2,
    /// Spacelike curve, F₃ timelike.
    SpacelikeJ3,
    /// Spacelike curve, F₄ timelike.
    SpacelikeJ4,
}

impl CurveCase {
    pub const ALL: [CurveCase; 4] = [
        CurveCase::TimelikeCenter,
        CurveCase::SpacelikeJ2,
        CurveCase::SpacelikeJ3,
        CurveCase::SpacelikeJ4,
    ];

    /// One-based index of the timelike Frenet vector.
    pub fn timelike_index(self) -> usize {
        match self {
            CurveCase::TimelikeCenter => 1,
            CurveCase::SpacelikeJ2 => 2,
            CurveCase::SpacelikeJ3 => 3,
            CurveCase::SpacelikeJ4 => 4,
        }
    }

    pub fn from_timelike_index(j: usize) -> Option<CurveCase> {
        match j {
            1 => Some(CurveCase::TimelikeCenter),
            2 => Some(CurveCase::SpacelikeJ2),
            3 => Some(CurveCase::SpacelikeJ3),
            4 => Some(CurveCase::SpacelikeJ4),
            _ => None,
        }
    }

    /// (ε₁, ε₂, ε₃, ε₄) with ⟨F_i, F_i⟩ = ε_i.
    pub fn signature(self) -> [f64; 4] {
        let mut eps = [1.0; 4];
        eps[self.timelike_index() - 1] = -1.0;
        eps
    }

    /// Coefficients A with F_i′ = Σ_j A[i][j] F_j.
    pub fn frenet_matrix(self, k: [f64; 3]) -> [[f64; 4]; 4] {
        let [k1, k2, k3] = k;
        match self {
            CurveCase::TimelikeCenter => [
                [0.0, k1, 0.0, 0.0],
                [k1, 0.0, k2, 0.0],
                [0.0, -k2, 0.0, k3],
                [0.0, 0.0, -k3, 0.0],
            ],
            CurveCase::SpacelikeJ2 => [
                [0.0, k1, 0.0, 0.0],
                [k1, 0.0, k2, 0.0],
                [0.0, k2, 0.0, k3],
                [0.0, 0.0, -k3, 0.0],
            ],
            CurveCase::SpacelikeJ3 => [
                [0.0, k1, 0.0, 0.0],
                [-k1, 0.0, k2, 0.0],
                [0.0, k2, 0.0, k3],
                [0.0, 0.0, k3, 0.0],
            ],
            CurveCase::SpacelikeJ4 => [
                [0.0, k1, 0.0, 0.0],
                [-k1, 0.0, k2, 0.0],
                [0.0, -k2, 0.0, k3],
                [0.0, 0.0, k3, 0.0],
            ],
        }
    }
}

impl fmt::Display for CurveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CurveCase::TimelikeCenter => "timelike",
            CurveCase::SpacelikeJ2 => "spacelike-j2",
            CurveCase::SpacelikeJ3 => "spacelike-j3",
            CurveCase::SpacelikeJ4 => "spacelike-j4",
        };
        f.write_str(name)
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A single curvature function of arclength.
#[derive(Clone)]
pub enum Curvature {
    Zero,
    Constant(f64),
    /// a + b·sin(ω s)
    Sinusoid { a: f64, b: f64, omega: f64 },
    Table(NaturalSpline),
    Custom {
        value: ScalarFn,
        derivative: Option<ScalarFn>,
    },
}

impl fmt::Debug for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curvature::Zero => f.write_str("Zero"),
            Curvature::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            Curvature::Sinusoid { a, b, omega } => f
                .debug_struct("Sinusoid")
                .field("a", a)
                .field("b", b)
                .field("omega", omega)
                .finish(),
            Curvature::Table(s) => f.debug_tuple("Table").field(&s.domain()).finish(),
            Curvature::Custom { derivative, .. } => f
                .debug_struct("Custom")
                .field("analytic_derivative", &derivative.is_some())
                .finish(),
        }
    }
}

impl Curvature {
    pub fn custom(value: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Curvature::Custom {
            value: Arc::new(value),
            derivative: None,
        }
    }

    pub fn custom_with_derivative(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Curvature::Custom {
            value: Arc::new(value),
            derivative: Some(Arc::new(derivative)),
        }
    }

    pub fn value(&self, s: f64) -> f64 {
        match self {
            Curvature::Zero => 0.0,
            Curvature::Constant(c) => *c,
            Curvature::Sinusoid { a, b, omega } => a + b * (omega * s).sin(),
            Curvature::Table(spline) => spline.value(s),
            Curvature::Custom { value, .. } => value(s),
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        match self {
            Curvature::Zero | Curvature::Constant(_) => 0.0,
            Curvature::Sinusoid { b, omega, .. } => b * omega * (omega * s).cos(),
            Curvature::Table(spline) => spline.derivative(s),
            Curvature::Custom {
                derivative: Some(d),
                ..
            } => d(s),
            Curvature::Custom { value, .. } => {
                let h = CURVATURE_FD_STEP;
                (value(s + h) - value(s - h)) / (2.0 * h)
            }
        }
    }

    /// True when the function vanishes identically by construction.
    pub fn is_identically_zero(&self) -> bool {
        matches!(self, Curvature::Zero) || matches!(self, Curvature::Constant(c) if *c == 0.0)
    }
}

/// The curvatures k₁, k₂, k₃ of a curve.
#[derive(Debug, Clone)]
pub struct CurvatureFunctions {
    pub k1: Curvature,
    pub k2: Curvature,
    pub k3: Curvature,
}

impl CurvatureFunctions {
    pub fn new(k1: Curvature, k2: Curvature, k3: Curvature) -> Self {
        CurvatureFunctions { k1, k2, k3 }
    }

    pub fn zero() -> Self {
        Self::new(Curvature::Zero, Curvature::Zero, Curvature::Zero)
    }

    pub fn constant(k1: f64, k2: f64, k3: f64) -> Self {
        Self::new(
            Curvature::Constant(k1),
            Curvature::Constant(k2),
            Curvature::Constant(k3),
        )
    }

    pub fn at(&self, s: f64) -> [f64; 3] {
        [self.k1.value(s), self.k2.value(s), self.k3.value(s)]
    }

    pub fn k1_prime(&self, s: f64) -> f64 {
        self.k1.derivative(s)
    }
}

/// Ordered Frenet vectors (F₁, F₂, F₃, F₄) of a curve of the given case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    pub f: [Vec4; 4],
    pub case: CurveCase,
}

impl FrenetFrame {
    pub fn new(f: [Vec4; 4], case: CurveCase) -> Self {
        FrenetFrame { f, case }
    }

    /// Coordinate basis arranged so the timelike Frenet vector is e₁ and the
    /// spacelike ones take e₂, e₃, e₄ in order.
    pub fn standard(case: CurveCase) -> Self {
        let j = case.timelike_index() - 1;
        let mut next = 1;
        let f = std::array::from_fn(|i| {
            if i == j {
                Vec4::basis(0)
            } else {
                let v = Vec4::basis(next);
                next += 1;
                v
            }
        });
        FrenetFrame { f, case }
    }

    pub fn signature(&self) -> [f64; 4] {
        self.case.signature()
    }

    /// Σ c_i F_i
    pub fn combine(&self, c: [f64; 4]) -> Vec4 {
        let mut out = Vec4::ZERO;
        for i in 0..4 {
            out += c[i] * self.f[i];
        }
        out
    }

    /// Frenet components c_i = ε_i ⟨v, F_i⟩ of an ambient vector.
    pub fn components(&self, v: &Vec4) -> [f64; 4] {
        let eps = self.signature();
        std::array::from_fn(|i| eps[i] * inner(v, &self.f[i]))
    }
}

/// Derivatives (F₁′, …, F₄′) given by the Frenet system of the frame's case.
pub fn frenet_derivative(frame: &FrenetFrame, k: [f64; 3]) -> [Vec4; 4] {
    let a = frame.case.frenet_matrix(k);
    std::array::from_fn(|i| frame.combine(a[i]))
}

/// max over i ≤ j of |⟨F_i, F_j⟩ − ε_i δ_ij|
pub fn check_orthonormality(frame: &FrenetFrame) -> f64 {
    let eps = frame.signature();
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in i..4 {
            let target = if i == j { eps[i] } else { 0.0 };
            worst = worst.max((inner(&frame.f[i], &frame.f[j]) - target).abs());
        }
    }
    worst
}

/// Signature-aware Gram-Schmidt in the order F₁ → F₄.
pub fn reorthonormalize(frame: &FrenetFrame, s: f64) -> Result<FrenetFrame> {
    let eps = frame.signature();
    let mut out = frame.f;
    for i in 0..4 {
        let mut v = frame.f[i];
        for j in 0..i {
            v = v - (eps[j] * inner(&frame.f[i], &out[j])) * out[j];
        }
        let d = inner(&v, &v).abs().sqrt();
        if !(d >= DEGENERATE_DENOMINATOR) {
            return Err(Error::DegenerateFrame {
                index: i + 1,
                s,
                denominator: d,
            });
        }
        out[i] = (1.0 / d) * v;
    }
    Ok(FrenetFrame::new(out, frame.case))
}

#[derive(Clone, Copy)]
struct State {
    point: Vec4,
    f: [Vec4; 4],
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        State {
            point: self.point + h * d.point,
            f: std::array::from_fn(|i| self.f[i] + h * d.f[i]),
        }
    }
}

fn state_derivative(case: CurveCase, curv: &CurvatureFunctions, s: f64, y: &State) -> State {
    let frame = FrenetFrame::new(y.f, case);
    State {
        point: y.f[0],
        f: frenet_derivative(&frame, curv.at(s)),
    }
}

fn rk4_step(case: CurveCase, curv: &CurvatureFunctions, s: f64, y: &State, h: f64) -> State {
    let k1 = state_derivative(case, curv, s, y);
    let k2 = state_derivative(case, curv, s + 0.5 * h, &y.axpy(0.5 * h, &k1));
    let k3 = state_derivative(case, curv, s + 0.5 * h, &y.axpy(0.5 * h, &k2));
    let k4 = state_derivative(case, curv, s + h, &y.axpy(h, &k3));
    State {
        point: y.point + (h / 6.0) * (k1.point + 2.0 * k2.point + 2.0 * k3.point + k4.point),
        f: std::array::from_fn(|i| {
            y.f[i] + (h / 6.0) * (k1.f[i] + 2.0 * k2.f[i] + 2.0 * k3.f[i] + k4.f[i])
        }),
    }
}

/// One classical RK4 step of the Frenet system and β′ = F₁ without
/// re-orthonormalization.
pub fn rk4_frame_step(
    curvatures: &CurvatureFunctions,
    s: f64,
    point: Vec4,
    frame: &FrenetFrame,
    h: f64,
) -> (Vec4, FrenetFrame) {
    let y = rk4_step(frame.case, curvatures, s, &State { point, f: frame.f }, h);
    (y.point, FrenetFrame::new(y.f, frame.case))
}

/// A curve sampled on a uniform arclength grid together with its frames.
#[derive(Debug, Clone)]
pub struct FramedCurve {
    pub s_grid: Vec<f64>,
    pub points: Vec<Vec4>,
    pub frames: Vec<FrenetFrame>,
    pub curvatures: CurvatureFunctions,
    pub case: CurveCase,
    step: f64,
}

impl FramedCurve {
    pub fn s_range(&self) -> (f64, f64) {
        (self.s_grid[0], self.s_grid[self.s_grid.len() - 1])
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.s_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_grid.is_empty()
    }

    /// Point and frame at an arbitrary s, reached by one RK4 step from the
    /// nearest stored sample. Evaluation up to one grid step outside the
    /// integrated range is admitted so difference stencils can straddle the ends.
    pub fn frame_at(&self, s: f64) -> Result<(Vec4, FrenetFrame)> {
        let (start, end) = self.s_range();
        let margin = self.step.max(1e-6);
        if !s.is_finite() || s < start - margin || s > end + margin {
            return Err(Error::OutOfRange { s, start, end });
        }
        let n = self.s_grid.len() - 1;
        let idx = if n == 0 {
            0
        } else {
            (((s - start) / self.step).round().max(0.0) as usize).min(n)
        };
        let delta = s - self.s_grid[idx];
        if delta == 0.0 {
            return Ok((self.points[idx], self.frames[idx]));
        }
        Ok(rk4_frame_step(
            &self.curvatures,
            self.s_grid[idx],
            self.points[idx],
            &self.frames[idx],
            delta,
        ))
    }

    /// Largest orthonormality defect over the stored samples.
    pub fn max_orthonormality_drift(&self) -> f64 {
        self.frames
            .iter()
            .map(check_orthonormality)
            .fold(0.0, f64::max)
    }

    /// Largest |⟨β′, β′⟩ − ε₁| over the samples, with β′ the integrated
    /// velocity F₁.
    pub fn max_unit_speed_drift(&self) -> f64 {
        let eps1 = self.case.signature()[0];
        self.frames
            .iter()
            .map(|f| (inner(&f.f[0], &f.f[0]) - eps1).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation between F₁ and the velocity of the sampled points,
    /// measured with fourth-order central differences on interior samples.
    pub fn max_velocity_defect(&self) -> f64 {
        let n = self.points.len();
        if n < 5 {
            return 0.0;
        }
        let h = self.step;
        (2..n - 2)
            .map(|i| {
                let p = &self.points;
                let d = (1.0 / (12.0 * h))
                    * ((p[i - 2] - p[i + 2]) + 8.0 * (p[i + 1] - p[i - 1]));
                d.max_abs_diff(&self.frames[i].f[0])
            })
            .fold(0.0, f64::max)
    }
}

/// Propagates frame and curve point over `s_range` with fixed-step RK4,
/// re-orthonormalizing after every step.
pub fn integrate_frame(
    curvatures: &CurvatureFunctions,
    s_range: (f64, f64),
    origin: Vec4,
    initial: FrenetFrame,
    step: f64,
) -> Result<FramedCurve> {
    let (start, end) = s_range;
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Invalid(format!("integration step must be positive, got {step}")));
    }
    if !start.is_finite() || !end.is_finite() || end < start {
        return Err(Error::Invalid(format!("invalid s-range [{start}, {end}]")));
    }
    let defect = check_orthonormality(&initial);
    if defect > FRAME_TOL {
        return Err(Error::Invalid(format!(
            "initial frame is not orthonormal (defect {defect:e})"
        )));
    }
    let case = initial.case;
    let length = end - start;
    let n = if length == 0.0 {
        0
    } else {
        (length / step).ceil().max(1.0) as usize
    };
    let h = if n == 0 { step } else { length / n as f64 };

    let mut s_grid = Vec::with_capacity(n + 1);
    let mut points = Vec::with_capacity(n + 1);
    let mut frames = Vec::with_capacity(n + 1);
    s_grid.push(start);
    points.push(origin);
    frames.push(initial);

    let mut y = State {
        point: origin,
        f: initial.f,
    };
    for i in 0..n {
        let s = start + i as f64 * h;
        let next = rk4_step(case, curvatures, s, &y, h);
        let s_next = if i + 1 == n { end } else { start + (i + 1) as f64 * h };
        let frame = reorthonormalize(&FrenetFrame::new(next.f, case), s_next)?;
        y = State {
            point: next.point,
            f: frame.f,
        };
        s_grid.push(s_next);
        points.push(y.point);
        frames.push(frame);
    }

    Ok(FramedCurve {
        s_grid,
        points,
        frames,
        curvatures: curvatures.clone(),
        case,
        step: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx_eq(a: Vec4, b: Vec4, tol: f64) -> bool {
        a.max_abs_diff(&b) <= tol
    }

    #[test]
    fn signatures_have_one_timelike_entry() {
        for case in CurveCase::ALL {
            let eps = case.signature();
            assert_eq!(eps.iter().filter(|e| **e < 0.0).count(), 1);
            assert_eq!(eps[case.timelike_index() - 1], -1.0);
            assert_eq!(check_orthonormality(&FrenetFrame::standard(case)), 0.0);
        }
    }

    #[test]
    fn derivative_examples() {
        let fr = FrenetFrame::standard(CurveCase::TimelikeCenter);
        let d = frenet_derivative(&fr, [1.0, 0.0, 0.0]);
        assert_eq!(d[0], fr.f[1]);
        assert_eq!(d[1], fr.f[0]);
        assert_eq!(d[2], Vec4::ZERO);
        assert_eq!(d[3], Vec4::ZERO);

        let fr = FrenetFrame::standard(CurveCase::SpacelikeJ2);
        let d = frenet_derivative(&fr, [1.0, 1.0, 0.0]);
        assert_eq!(d[1], fr.f[0] + fr.f[2]);
        assert_eq!(d[2], fr.f[1]);

        let fr = FrenetFrame::standard(CurveCase::SpacelikeJ4);
        let d = frenet_derivative(&fr, [0.0, 1.0, 1.0]);
        assert_eq!(d[1], fr.f[2]);
        assert_eq!(d[2], -fr.f[1] + fr.f[3]);
        assert_eq!(d[3], fr.f[2]);
    }

    #[test]
    fn frenet_systems_preserve_inner_products() {
        // d/ds ⟨F_i, F_j⟩ = ⟨F_i′, F_j⟩ + ⟨F_i, F_j′⟩ must vanish on an orthonormal frame.
        for case in CurveCase::ALL {
            let fr = FrenetFrame::standard(case);
            let d = frenet_derivative(&fr, [0.7, -1.3, 2.1]);
            for i in 0..4 {
                for j in 0..4 {
                    let rate = inner(&d[i], &fr.f[j]) + inner(&fr.f[i], &d[j]);
                    assert_eq!(rate, 0.0, "{case} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn orthonormality_of_scaled_frame() {
        let mut fr = FrenetFrame::standard(CurveCase::TimelikeCenter);
        fr.f[1] = (1.0 + 1e-3) * fr.f[1];
        let expected = (1.0 + 1e-3f64).powi(2) - 1.0;
        assert!((check_orthonormality(&fr) - expected).abs() < 1e-15);
    }

    #[test]
    fn zero_curvature_gives_straight_line() {
        for case in CurveCase::ALL {
            let fr = FrenetFrame::standard(case);
            let curve = integrate_frame(&CurvatureFunctions::zero(), (0.0, 1.0), Vec4::ZERO, fr, 1e-2).unwrap();
            for (s, (p, f)) in curve.s_grid.iter().zip(curve.points.iter().zip(&curve.frames)) {
                assert!(approx_eq(*p, *s * fr.f[0], 1e-13));
                assert_eq!(f.f, fr.f);
            }
        }
    }

    #[test]
    fn zero_length_range_returns_initial_data() {
        let fr = FrenetFrame::standard(CurveCase::SpacelikeJ3);
        let origin = Vec4::new(1.0, 2.0, 3.0, 4.0);
        let curve = integrate_frame(&CurvatureFunctions::constant(1.0, 2.0, 3.0), (0.5, 0.5), origin, fr, 1e-3)
            .unwrap();
        assert_eq!(curve.len(), 1);
        assert_eq!(curve.points[0], origin);
        assert_eq!(curve.frames[0], fr);
        let (p, f) = curve.frame_at(0.5).unwrap();
        assert_eq!((p, f), (origin, fr));
    }

    #[test]
    fn rejects_bad_steps_and_frames() {
        let fr = FrenetFrame::standard(CurveCase::TimelikeCenter);
        let k = CurvatureFunctions::zero();
        assert!(integrate_frame(&k, (0.0, 1.0), Vec4::ZERO, fr, 0.0).is_err());
        assert!(integrate_frame(&k, (1.0, 0.0), Vec4::ZERO, fr, 1e-3).is_err());
        let mut bad = fr;
        bad.f[2] = 2.0 * bad.f[2];
        assert!(integrate_frame(&k, (0.0, 1.0), Vec4::ZERO, bad, 1e-3).is_err());
    }

    #[test]
    fn degenerate_frame_is_reported() {
        let mut fr = FrenetFrame::standard(CurveCase::TimelikeCenter);
        fr.f[2] = fr.f[1];
        match reorthonormalize(&fr, 0.0) {
            Err(Error::DegenerateFrame { index, .. }) => assert_eq!(index, 3),
            other => panic!("expected DegenerateFrame, got {other:?}"),
        }
    }

    #[test]
    fn single_step_drift_is_fifth_order() {
        let k = CurvatureFunctions::new(
            Curvature::Sinusoid { a: 0.4, b: 0.2, omega: 1.0 },
            Curvature::Constant(0.3),
            Curvature::Sinusoid { a: 0.1, b: 0.05, omega: 2.0 },
        );
        let h = 1e-2;
        for case in CurveCase::ALL {
            let fr = FrenetFrame::standard(case);
            let (_, next) = rk4_frame_step(&k, 0.3, Vec4::ZERO, &fr, h);
            assert!(check_orthonormality(&next) < 10.0 * h.powi(5), "{case}");
        }
    }

    // β(s) = (√2 sinh s, √2 cosh s, cos s, sin s): unit-speed timelike with
    // k1 = √3, k2 = √(8/3), k3 = 1/√3.
    fn helix_frame(s: f64) -> (Vec4, FrenetFrame) {
        let r2 = 2f64.sqrt();
        let r3 = 3f64.sqrt();
        let (sh, ch, c, sn) = (s.sinh(), s.cosh(), s.cos(), s.sin());
        let point = Vec4::new(r2 * sh, r2 * ch, c, sn);
        let f = [
            Vec4::new(r2 * ch, r2 * sh, -sn, c),
            Vec4::new(r2 * sh, r2 * ch, -c, -sn) * (1.0 / r3),
            Vec4::new(-ch, -sh, r2 * sn, -r2 * c),
            Vec4::new(sh, ch, r2 * c, r2 * sn) * (1.0 / r3),
        ];
        (point, FrenetFrame::new(f, CurveCase::TimelikeCenter))
    }

    #[test]
    fn helix_fixture_is_reproduced() {
        let k = CurvatureFunctions::constant(3f64.sqrt(), (8.0f64 / 3.0).sqrt(), 1.0 / 3f64.sqrt());
        let (p0, f0) = helix_frame(0.0);
        assert!(check_orthonormality(&f0) < 1e-15);
        let curve = integrate_frame(&k, (0.0, 1.0), p0, f0, 1e-3).unwrap();
        for (i, s) in curve.s_grid.iter().enumerate() {
            let (p, f) = helix_frame(*s);
            assert!(approx_eq(curve.points[i], p, 1e-10), "s = {s}");
            for j in 0..4 {
                assert!(approx_eq(curve.frames[i].f[j], f.f[j], 1e-10), "s = {s}, F{}", j + 1);
            }
        }
    }

    #[test]
    fn frame_at_interpolates_between_samples() {
        let k = CurvatureFunctions::constant(0.5, 0.2, 0.1);
        let fr = FrenetFrame::standard(CurveCase::SpacelikeJ2);
        let coarse = integrate_frame(&k, (0.0, 1.0), Vec4::ZERO, fr, 1e-2).unwrap();
        let fine = integrate_frame(&k, (0.0, 0.4567), Vec4::ZERO, fr, 1e-4).unwrap();
        let (p, f) = coarse.frame_at(0.4567).unwrap();
        let last = fine.len() - 1;
        assert!(approx_eq(p, fine.points[last], 1e-10));
        for i in 0..4 {
            assert!(approx_eq(f.f[i], fine.frames[last].f[i], 1e-10));
        }
        assert!(coarse.frame_at(1.5).is_err());
    }
}
