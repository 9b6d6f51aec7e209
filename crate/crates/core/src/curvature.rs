//! Higher mean curvatures, the on-surface gradient and the operators L₁, L₂
//! applied to the Gauss map.
//!
//! Two routes are provided. [`lk_gauss_map_numeric`] evaluates the generic
//! operator formula
//!
//! ```text
//! L_k N = −ε 𝔠_k (∇H_{k+1} + (n H₁ H_{k+1} − (n − k − 1) H_{k+2}) N),  n = 3,
//! ```
//!
//! with ∇H_{k+1} from finite differences and the metric from difference
//! tangents. [`l1_closed_form`] and [`l2_closed_form`] evaluate the explicit
//! Frenet-component expressions for each family. The generic route is the
//! reference; the closed forms are checked against it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{inner, Vec4};
use crate::tube::{
    parity_4j, parity_5j, parity_j, sign_pow, Family, MetricTensor3, TubeSpec, METRIC_TOL,
};

/// Dimension of the hypersurface.
const DIM: f64 = 3.0;

/// Default difference step of the generic route. Near the focal set the
/// operator grows like 1/D³ and roundoff at h = 1e−5 exceeds 1e−6 relative.
pub const OPERATOR_FD_STEP: f64 = 1e-4;

/// a₁ = −Σκ_i, a₂ = Σ_{i<j} κ_iκ_j, a₃ = −κ₁κ₂κ₃
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricFunctions {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl SymmetricFunctions {
    pub fn get(&self, k: usize) -> f64 {
        match k {
            1 => self.a1,
            2 => self.a2,
            3 => self.a3,
            _ => 0.0,
        }
    }
}

pub fn symmetric_functions(kappa: [f64; 3]) -> SymmetricFunctions {
    let [k1, k2, k3] = kappa;
    SymmetricFunctions {
        a1: -(k1 + k2 + k3),
        a2: k1 * k2 + k1 * k3 + k2 * k3,
        a3: -k1 * k2 * k3,
    }
}

/// H₁, H₂, H₃ with C(3,k)·H_k = (−ε)^k a_k; H₄ is zero on a hypersurface of
/// dimension 3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanCurvatures {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub eps: f64,
}

impl MeanCurvatures {
    pub fn get(&self, k: usize) -> f64 {
        match k {
            0 => 1.0,
            1 => self.h1,
            2 => self.h2,
            3 => self.h3,
            _ => 0.0,
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

pub fn mean_curvatures(a: &SymmetricFunctions, eps: f64) -> MeanCurvatures {
    let h = |k: u64| {
        let sign = (-eps).powi(k as i32);
        sign * a.get(k as usize) / binomial(3, k) as f64
    };
    MeanCurvatures {
        h1: h(1),
        h2: h(2),
        h3: h(3),
        eps,
    }
}

/// 𝔠_k = C(3, k+1)·(−ε)^k
pub fn ck_constant(k: u8, eps: f64) -> f64 {
    binomial(3, k as u64 + 1) as f64 * (-eps).powi(k as i32)
}

/// Coefficients of ∂s, ∂t, ∂w of the gradient of a function with partials
/// `f_partials`.
pub fn gradient_on_m(f_partials: [f64; 3], g: &MetricTensor3, metric_tol: f64) -> Result<[f64; 3]> {
    g.gradient(f_partials, metric_tol)
}

/// A vector given both by its Frenet components and in ambient coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameVector {
    pub frenet: [f64; 4],
    pub ambient: Vec4,
}

/// L_kN at one surface point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LkResult {
    pub k: u8,
    pub point: (f64, f64, f64),
    /// Coefficients of F₁..F₄.
    pub frenet: [f64; 4],
    pub ambient: Vec4,
    /// The −ε𝔠_k∇H_{k+1} part (generic route only).
    pub tangential: Option<Vec4>,
}

impl LkResult {
    pub fn euclidean_norm(&self) -> f64 {
        self.frenet.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Difference settings for the generic route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericOptions {
    pub h: f64,
    pub richardson: bool,
    pub metric_tol: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            h: OPERATOR_FD_STEP,
            richardson: true,
            metric_tol: METRIC_TOL,
        }
    }
}

fn check_k(k: u8) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("operator index must be 1 or 2, got {k}")))
    }
}

fn runtime_eps(normal: &Vec4) -> f64 {
    if inner(normal, normal) >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Mean curvatures from the closed-form principal curvatures, with ε read
/// off the closed-form normal.
pub fn mean_curvatures_at(spec: &TubeSpec, s: f64, t: f64, w: f64) -> Result<MeanCurvatures> {
    let pt = spec.evaluate(s, t, w)?;
    let eps = runtime_eps(&pt.normal);
    let kappa = spec.principal_curvatures(s, t, w)?;
    Ok(mean_curvatures(&symmetric_functions(kappa), eps))
}

fn central_partials<F>(f: &F, s: f64, t: f64, w: f64, h: f64) -> Result<[f64; 3]>
where
    F: Fn(f64, f64, f64) -> Result<f64>,
{
    let c = 1.0 / (2.0 * h);
    Ok([
        c * (f(s + h, t, w)? - f(s - h, t, w)?),
        c * (f(s, t + h, w)? - f(s, t - h, w)?),
        c * (f(s, t, w + h)? - f(s, t, w - h)?),
    ])
}

/// Ambient gradient of a scalar function on the tube, with partials and
/// tangents from central differences.
pub fn surface_gradient<F>(
    spec: &TubeSpec,
    f: F,
    s: f64,
    t: f64,
    w: f64,
    opts: &NumericOptions,
) -> Result<Vec4>
where
    F: Fn(f64, f64, f64) -> Result<f64>,
{
    let h = opts.h;
    let (partials, tangents) = if opts.richardson {
        let coarse = central_partials(&f, s, t, w, h)?;
        let fine = central_partials(&f, s, t, w, 0.5 * h)?;
        (
            std::array::from_fn(|i| (4.0 * fine[i] - coarse[i]) / 3.0),
            spec.tangent_basis_richardson(s, t, w, h)?,
        )
    } else {
        (central_partials(&f, s, t, w, h)?, spec.tangent_basis(s, t, w, h)?)
    };
    let g = MetricTensor3::gram(&tangents);
    let coef = gradient_on_m(partials, &g, opts.metric_tol)?;
    Ok(coef[0] * tangents[0] + coef[1] * tangents[1] + coef[2] * tangents[2])
}

/// L_kN by the generic operator formula.
pub fn lk_gauss_map_numeric(
    spec: &TubeSpec,
    k: u8,
    s: f64,
    t: f64,
    w: f64,
    opts: &NumericOptions,
) -> Result<LkResult> {
    check_k(k)?;
    let pt = spec.evaluate(s, t, w)?;
    let eps = runtime_eps(&pt.normal);
    let order = k as usize + 1;
    let h_next = |s: f64, t: f64, w: f64| Ok(mean_curvatures_at(spec, s, t, w)?.get(order));
    let grad = surface_gradient(spec, h_next, s, t, w, opts)?;
    let hm = mean_curvatures_at(spec, s, t, w)?;
    let scalar = DIM * hm.h1 * hm.get(order) - (DIM - k as f64 - 1.0) * hm.get(order + 1);
    let factor = -eps * ck_constant(k, eps);
    let tangential = factor * grad;
    let ambient = tangential + (factor * scalar) * pt.normal;
    Ok(LkResult {
        k,
        point: (s, t, w),
        frenet: pt.frame.components(&ambient),
        ambient,
        tangential: Some(tangential),
    })
}

fn closed_result(spec: &TubeSpec, k: u8, s: f64, t: f64, w: f64, frenet: [f64; 4]) -> Result<LkResult> {
    let (_, frame) = spec.curve.frame_at(s)?;
    Ok(LkResult {
        k,
        point: (s, t, w),
        frenet,
        ambient: frame.combine(frenet),
        tangential: None,
    })
}

struct Local {
    k1: f64,
    k2: f64,
    dk1: f64,
    r: f64,
}

fn local(spec: &TubeSpec, s: f64, t: f64, w: f64) -> Result<Local> {
    if !spec.is_regular(s, t, w) {
        return Err(Error::SingularPoint {
            s,
            t,
            w,
            margin: spec.regularity(s, t, w),
        });
    }
    let [k1, k2, _] = spec.curve.curvatures.at(s);
    Ok(Local {
        k1,
        k2,
        dk1: spec.curve.curvatures.k1_prime(s),
        r: spec.r,
    })
}

/// Closed-form Frenet components of L₁N.
pub fn l1_closed_form(spec: &TubeSpec, s: f64, t: f64, w: f64) -> Result<LkResult> {
    let Local { k1, k2, dk1, r } = local(spec, s, t, w)?;
    let frenet = match spec.family {
        Family::Timelike => {
            let (st, ct) = t.sin_cos();
            let (sw, cw) = w.sin_cos();
            let c = ct * cw;
            let d = 1.0 + r * k1 * c;
            let r3 = r * r * r;
            [
                -2.0 * (k1 * k2 * st + dk1 * ct) * cw / (r * d.powi(3)),
                -2.0 * (r * k1 * (3.0 * r * k1 * c.powi(3) + 2.0 * ct * ct * (2.0 * w).cos() + (2.0 * t).cos()) + c)
                    / (r3 * d * d),
                -2.0 * (1.0 + 3.0 * r * k1 * c) * st * cw / (r3 * d),
                -2.0 * (3.0 * r * k1 * c + 1.0) * sw / (r3 * d),
            ]
        }
        Family::Spacelike { j, lambda } => {
            let [m2, m3, m4] = crate::tube::mu(j, lambda, t, w);
            let p4 = parity_4j(j);
            let p5 = parity_5j(j);
            let lam = lambda as f64;
            let d = p4 + r * k1 * m2;
            let r3 = r * r * r;
            [
                2.0 * (-p5 * k1 * k2 * m3 + dk1 * m2) / (r * d.powi(3)),
                -2.0 * lam * (m2 + 3.0 * r * r * m2.powi(3) * k1 * k1 + k1 * (lam * r + 4.0 * p4 * r * m2 * m2))
                    / (r3 * d * d),
                -2.0 * lam * p4 * m3 * (1.0 + 3.0 * p4 * r * k1 * m2) / (r3 * d),
                -2.0 * lam * m4 * (p4 + 3.0 * r * k1 * m2) / (r3 * d),
            ]
        }
    };
    closed_result(spec, 1, s, t, w, frenet)
}

/// Closed-form Frenet components of L₂N.
pub fn l2_closed_form(spec: &TubeSpec, s: f64, t: f64, w: f64) -> Result<LkResult> {
    let Local { k1, k2, dk1, r } = local(spec, s, t, w)?;
    let frenet = match spec.family {
        Family::Timelike => {
            let (st, ct) = t.sin_cos();
            let (sw, cw) = w.sin_cos();
            let c = ct * cw;
            let d = 1.0 + r * k1 * c;
            let r3 = r * r * r;
            let inner_poly = 24.0 * r * k1 * ct.powi(4) * cw.powi(4)
                + 12.0 * ct.powi(3) * (3.0 * w).cos()
                + 19.0 * c
                + 9.0 * (3.0 * t).cos() * cw;
            [
                (dk1 * ct + k1 * k2 * st) * cw / (r * r * d.powi(3)),
                k1 * (0.5 * r * k1 * inner_poly + 6.0 * ct * ct * (2.0 * w).cos() + 3.0 * (2.0 * t).cos() - 1.0)
                    / (4.0 * r3 * d.powi(3)),
                3.0 * k1 * st * ct * cw * cw / (r3 * d),
                3.0 * k1 * ct * sw * cw / (r3 * d),
            ]
        }
        Family::Spacelike { j, lambda } => {
            let [m2, m3, m4] = crate::tube::mu(j, lambda, t, w);
            let p4 = parity_4j(j);
            let p5 = parity_5j(j);
            let pj = parity_j(j);
            let lam = lambda as f64;
            let lj = sign_pow(lambda, j as u32);
            let lj1 = sign_pow(lambda, j as u32 + 1);
            let d = p4 + r * k1 * m2;
            let d5 = p5 + pj * r * k1 * m2;
            let r3 = r * r * r;
            let r4 = r3 * r;
            [
                lj * (pj * m3 * k1 * k2 - p4 * m2 * dk1) / (r * r * d.powi(3)),
                -lj1 * k1
                    * (2.0 * lam * p4 - 3.0 * pj * m4 * m4 - 3.0 * p5 * m3 * m3 - 3.0 * p4 * r * k1 * m2.powi(3))
                    / (r3 * d * d),
                lj1 * m3 * (3.0 * p5 * r * k1 * m2) / (r4 * d5),
                lj1 * m4 * (3.0 * p5 * r * k1 * m2) / (r4 * d5),
            ]
        }
    };
    closed_result(spec, 2, s, t, w, frenet)
}

/// Closed-form a₁, a₂, a₃ of the timelike-centre tube.
pub fn symmetric_functions_closed_timelike(spec: &TubeSpec, s: f64, t: f64, w: f64) -> Result<SymmetricFunctions> {
    if spec.family != Family::Timelike {
        return Err(Error::UnsupportedFamily);
    }
    let Local { k1, r, .. } = local(spec, s, t, w)?;
    let c = t.cos() * w.cos();
    let d = 1.0 + r * k1 * c;
    Ok(SymmetricFunctions {
        a1: (-2.0 - 3.0 * r * k1 * c) / (r * d),
        a2: (1.0 + 3.0 * r * k1 * c) / (r * r * d),
        a3: -k1 / (r * r * (r * k1 + 1.0 / t.cos() / w.cos())),
    })
}

fn frame_vector(spec: &TubeSpec, s: f64, frenet: [f64; 4]) -> Result<FrameVector> {
    let (_, frame) = spec.curve.frame_at(s)?;
    Ok(FrameVector {
        frenet,
        ambient: frame.combine(frenet),
    })
}

/// Closed-form ∇a₂ of the timelike-centre tube.
pub fn grad_a2_closed_form(spec: &TubeSpec, s: f64, t: f64, w: f64) -> Result<FrameVector> {
    if spec.family != Family::Timelike {
        return Err(Error::UnsupportedFamily);
    }
    let Local { k1, k2, dk1, r } = local(spec, s, t, w)?;
    let (st, ct) = t.sin_cos();
    let (sw, cw) = w.sin_cos();
    let d = 1.0 + r * k1 * ct * cw;
    let frenet = [
        -2.0 * (dk1 * ct + k1 * k2 * st) * cw / (r * d.powi(3)),
        -k1 * (2.0 * ct * ct * (2.0 * w).cos() + (2.0 * t).cos() - 3.0) / (2.0 * r * r * d * d),
        -2.0 * k1 * st * ct * cw * cw / (r * r * d * d),
        -2.0 * k1 * ct * sw * cw / (r * r * d * d),
    ];
    frame_vector(spec, s, frenet)
}

/// Closed-form ∇a₃ of the timelike-centre tube.
pub fn grad_a3_closed_form(spec: &TubeSpec, s: f64, t: f64, w: f64) -> Result<FrameVector> {
    if spec.family != Family::Timelike {
        return Err(Error::UnsupportedFamily);
    }
    let Local { k1, k2, dk1, r } = local(spec, s, t, w)?;
    let (st, ct) = t.sin_cos();
    let (sw, cw) = w.sin_cos();
    let d = 1.0 + r * k1 * ct * cw;
    let r3 = r * r * r;
    let frenet = [
        (dk1 * ct + k1 * k2 * st) * cw / (r * r * d.powi(3)),
        k1 * (2.0 * ct * ct * (2.0 * w).cos() + (2.0 * t).cos() - 3.0) / (4.0 * r3 * d * d),
        k1 * st * ct * cw * cw / (r3 * d * d),
        k1 * ct * sw * cw / (r3 * d * d),
    ];
    frame_vector(spec, s, frenet)
}

/// L_kN by the closed form for operator index `k`.
pub fn lk_closed_form(spec: &TubeSpec, k: u8, s: f64, t: f64, w: f64) -> Result<LkResult> {
    match k {
        1 => l1_closed_form(spec, s, t, w),
        2 => l2_closed_form(spec, s, t, w),
        _ => Err(Error::Invalid(format!("operator index must be 1 or 2, got {k}"))),
    }
}

/// Outcome of comparing one Frenet component of a closed form with the
/// generic route over a set of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermVerdict {
    Agreement,
    Discrepancy,
}

/// Per-term comparison record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermComparison {
    pub family: String,
    /// Closed-form term, e.g. `L1N.F3`.
    pub term: String,
    pub k: u8,
    /// 1..=4, the Frenet vector the term multiplies.
    pub component: usize,
    pub points: usize,
    pub max_abs_diff: f64,
    pub mean_abs_diff: f64,
    /// max |Δ| / max(1, |closed|)
    pub max_scaled_diff: f64,
    /// Parameters of the worst point.
    pub worst_point: (f64, f64, f64),
    /// Regularity margin 1 + c·r·k₁·(profile coefficient of F₂) there; a
    /// small value means the point sits next to the focal set, where the
    /// difference route loses accuracy.
    pub worst_margin: f64,
    pub verdict: TermVerdict,
}

/// Compare the closed form of L_k with the generic route at `points`;
/// a term agrees when |Δ| ≤ tol·max(1, |closed|) at every point.
pub fn adjudicate(
    spec: &TubeSpec,
    k: u8,
    points: &[(f64, f64, f64)],
    opts: &NumericOptions,
    tol: f64,
) -> Result<Vec<TermComparison>> {
    check_k(k)?;
    let pairs = points
        .iter()
        .map(|&(s, t, w)| {
            Ok((
                (s, t, w),
                lk_gauss_map_numeric(spec, k, s, t, w, opts)?,
                lk_closed_form(spec, k, s, t, w)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(compare_pairs(spec, k, &pairs, tol))
}

pub(crate) fn compare_pairs(
    spec: &TubeSpec,
    k: u8,
    pairs: &[((f64, f64, f64), LkResult, LkResult)],
    tol: f64,
) -> Vec<TermComparison> {
    (0..4)
        .map(|c| {
            let mut max_abs: f64 = 0.0;
            let mut sum = 0.0;
            let mut max_scaled: f64 = 0.0;
            let mut worst = (f64::NAN, f64::NAN, f64::NAN);
            for (p, numeric, closed) in pairs {
                let diff = (numeric.frenet[c] - closed.frenet[c]).abs();
                let scaled = diff / closed.frenet[c].abs().max(1.0);
                sum += diff;
                max_abs = max_abs.max(diff);
                if scaled >= max_scaled || worst.0.is_nan() {
                    max_scaled = max_scaled.max(scaled);
                    worst = *p;
                }
            }
            let verdict = if !pairs.is_empty() && max_scaled <= tol {
                TermVerdict::Agreement
            } else {
                TermVerdict::Discrepancy
            };
            TermComparison {
                family: spec.family.label(),
                term: format!("L{k}N.F{}", c + 1),
                k,
                component: c + 1,
                points: pairs.len(),
                max_abs_diff: max_abs,
                mean_abs_diff: if pairs.is_empty() { 0.0 } else { sum / pairs.len() as f64 },
                max_scaled_diff: max_scaled,
                worst_point: worst,
                worst_margin: spec.regularity(worst.0, worst.1, worst.2),
                verdict,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{integrate_frame, Curvature, CurvatureFunctions, FrenetFrame};

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

    // Gaussian elimination with partial pivoting; independent of the
    // cofactor rows used by the gradient.
    fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> [f64; 3] {
        let mut a = [[0.0; 4]; 3];
        for i in 0..3 {
            a[i][..3].copy_from_slice(&m[i]);
            a[i][3] = b[i];
        }
        for col in 0..3 {
            let piv = (col..3).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
            a.swap(col, piv);
            for row in 0..3 {
                if row != col {
                    let f = a[row][col] / a[col][col];
                    for c in col..4 {
                        a[row][c] -= f * a[col][c];
                    }
                }
            }
        }
        [a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]]
    }

    #[test]
    fn symmetric_function_examples() {
        let r = 0.5;
        let a = symmetric_functions([1.0 / r, 1.0 / r, 0.0]);
        assert_eq!((a.a1, a.a2, a.a3), (-2.0 / r, 1.0 / (r * r), 0.0));
        let a = symmetric_functions([1.0, 1.0, 1.0]);
        assert_eq!((a.a1, a.a2, a.a3), (-3.0, 3.0, -1.0));
    }

    #[test]
    fn symmetric_functions_match_closed_timelike() {
        let sp = spec(Family::Timelike, generic_k(), 0.5);
        for &(s, t, w) in &[(0.2, 0.3, 0.4), (1.5, -2.0, 1.1), (0.9, 2.8, -0.7)] {
            let a = symmetric_functions(sp.principal_curvatures(s, t, w).unwrap());
            let c = symmetric_functions_closed_timelike(&sp, s, t, w).unwrap();
            assert!((a.a1 - c.a1).abs() < 1e-9);
            assert!((a.a2 - c.a2).abs() < 1e-9);
            assert!((a.a3 - c.a3).abs() < 1e-9);
        }
    }

    #[test]
    fn mean_curvature_examples() {
        let r = 0.5;
        let h = mean_curvatures(&symmetric_functions([1.0 / r, 1.0 / r, 0.0]), 1.0);
        assert!((h.h1 - 2.0 / (3.0 * r)).abs() < 1e-15);
        assert!((h.h2 - 1.0 / (3.0 * r * r)).abs() < 1e-15);
        assert_eq!(h.h3, 0.0);
        let h = mean_curvatures(&SymmetricFunctions { a1: -3.0, a2: 3.0, a3: -1.0 }, -1.0);
        assert_eq!((h.h1, h.h2, h.h3), (-1.0, 1.0, -1.0));
        assert_eq!(h.get(4), 0.0);
    }

    #[test]
    fn ck_examples() {
        assert_eq!(ck_constant(1, 1.0), -3.0);
        assert_eq!(ck_constant(1, -1.0), 3.0);
        assert_eq!(ck_constant(2, 1.0), 1.0);
        assert_eq!(ck_constant(2, -1.0), 1.0);
    }

    #[test]
    fn gradient_matches_inverse_oracle() {
        let metrics = [
            [[1.3, 0.2, -0.4], [0.2, 0.7, 0.1], [-0.4, 0.1, -0.25]],
            [[-1.1, 0.3, 0.05], [0.3, 0.06, 0.0], [0.05, 0.0, 0.25]],
            [[2.0, -0.5, 0.3], [-0.5, 1.0, 0.2], [0.3, 0.2, 1.5]],
        ];
        let f = [0.7, -1.2, 2.5];
        for m in metrics {
            let g = MetricTensor3::from_matrix(m);
            assert!((g.frak_g() + g.det()).abs() < 1e-14);
            let got = gradient_on_m(f, &g, METRIC_TOL).unwrap();
            let want = solve3(m, f);
            for i in 0..3 {
                assert!((got[i] - want[i]).abs() < 1e-10 * (1.0 + want[i].abs()));
            }
        }
    }

    #[test]
    fn l1_of_flat_timelike_tube_is_multiple_of_normal() {
        let r = 0.5;
        let sp = spec(Family::Timelike, CurvatureFunctions::zero(), r);
        let (s, t, w) = (0.8, 0.6, -0.3);
        let lk = lk_gauss_map_numeric(&sp, 1, s, t, w, &NumericOptions::default()).unwrap();
        let m = 2.0 / (r * r * r);
        let expect = [0.0, -m * t.cos() * w.cos(), -m * t.sin() * w.cos(), -m * w.sin()];
        for i in 0..4 {
            assert!((lk.frenet[i] - expect[i]).abs() < 1e-8, "{:?}", lk.frenet);
        }
        let l2 = lk_gauss_map_numeric(&sp, 2, s, t, w, &NumericOptions::default()).unwrap();
        assert!(l2.euclidean_norm() < 1e-8);
        let c = l1_closed_form(&sp, s, t, w).unwrap();
        assert!((c.frenet[2] + 2.0 * t.sin() * w.cos() / (r * r * r)).abs() < 1e-12);
        assert!(l2_closed_form(&sp, s, t, w).unwrap().euclidean_norm() == 0.0);
    }

    #[test]
    fn closed_forms_agree_with_generic_route() {
        let opts = NumericOptions::default();
        for family in Family::ALL {
            let sp = spec(family, generic_k(), 0.5);
            for &(s, t, w) in &[(0.4, 0.3, -0.2), (1.3, -0.7, 0.5), (1.8, 1.1, 0.9)] {
                if !sp.is_regular(s, t, w) {
                    continue;
                }
                for k in [1u8, 2] {
                    let n = lk_gauss_map_numeric(&sp, k, s, t, w, &opts).unwrap();
                    let c = lk_closed_form(&sp, k, s, t, w).unwrap();
                    for i in 0..4 {
                        let tol = 1e-6 * c.frenet[i].abs().max(1.0);
                        assert!((n.frenet[i] - c.frenet[i]).abs() < tol, "{family} L{k} F{}: {} vs {}", i + 1, n.frenet[i], c.frenet[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn tangential_part_is_orthogonal_to_normal() {
        let sp = spec(Family::Spacelike { j: 3, lambda: -1 }, generic_k(), 0.5);
        let (s, t, w) = (1.0, 0.2, 0.3);
        let n = sp.unit_normal(s, t, w).unwrap();
        for k in [1u8, 2] {
            let lk = lk_gauss_map_numeric(&sp, k, s, t, w, &NumericOptions::default()).unwrap();
            assert!(inner(&lk.tangential.unwrap(), &n).abs() < 1e-8);
            let recon = FrenetFrame::new(sp.curve.frame_at(s).unwrap().1.f, sp.curve.case).combine(lk.frenet);
            assert!(recon.max_abs_diff(&lk.ambient) < 1e-12);
        }
    }

    #[test]
    fn closed_gradients() {
        let sp = spec(Family::Timelike, CurvatureFunctions::zero(), 0.5);
        assert_eq!(grad_a2_closed_form(&sp, 0.5, 0.3, 0.2).unwrap().frenet, [0.0; 4].map(|x: f64| -x));
        let sp = spec(Family::Timelike, generic_k(), 0.5);
        let opts = NumericOptions::default();
        for &(s, t, w) in &[(0.5, 0.3, 0.2), (1.4, -1.9, 0.8)] {
            let g2 = grad_a2_closed_form(&sp, s, t, w).unwrap();
            let g3 = grad_a3_closed_form(&sp, s, t, w).unwrap();
            for i in 0..4 {
                assert!((g3.frenet[i] + g2.frenet[i] / (2.0 * sp.r)).abs() < 1e-12);
            }
            let a2 = |s: f64, t: f64, w: f64| Ok(symmetric_functions_closed_timelike(&sp, s, t, w)?.a2);
            let fd = surface_gradient(&sp, a2, s, t, w, &opts).unwrap();
            let fd = sp.curve.frame_at(s).unwrap().1.components(&fd);
            for i in 0..4 {
                assert!((fd[i] - g2.frenet[i]).abs() < 1e-6, "F{}: {} vs {}", i + 1, fd[i], g2.frenet[i]);
            }
        }
        let sl = spec(Family::Spacelike { j: 2, lambda: 1 }, generic_k(), 0.5);
        assert_eq!(grad_a2_closed_form(&sl, 0.5, 0.1, 0.1), Err(Error::UnsupportedFamily));
    }

    #[test]
    fn scale_covariance_of_flat_l1() {
        let opts = NumericOptions::default();
        let a = spec(Family::Timelike, CurvatureFunctions::zero(), 0.5);
        let b = spec(Family::Timelike, CurvatureFunctions::zero(), 1.0);
        let (s, t, w) = (0.7, 0.4, 0.9);
        let la = lk_gauss_map_numeric(&a, 1, s, t, w, &opts).unwrap();
        let lb = lk_gauss_map_numeric(&b, 1, s, t, w, &opts).unwrap();
        for i in 1..4 {
            assert!((la.frenet[i] / lb.frenet[i] - 8.0).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_operator_index() {
        let sp = spec(Family::Timelike, CurvatureFunctions::zero(), 0.5);
        assert!(lk_gauss_map_numeric(&sp, 3, 0.5, 0.0, 0.0, &NumericOptions::default()).is_err());
        assert!(lk_closed_form(&sp, 0, 0.5, 0.0, 0.0).is_err());
    }
}
