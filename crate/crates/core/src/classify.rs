//! Numerical tests of the Gauss-map classes and the theorem suite.
//!
//! All residuals are Euclidean norms of Frenet-component vectors. The
//! indefinite norm vanishes on null vectors and would hide failures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{lk_gauss_map_numeric, NumericOptions};
use crate::error::{Error, Result};
use crate::frenet::{integrate_frame, CurveCase, CurvatureFunctions, FramedCurve, FrenetFrame};
use crate::grid::{build_grid, GridSizes, ParamGrid};
use crate::minkowski::Vec4;
use crate::optim::{coarse_then_refine, sphere_directions};
use crate::tube::{parity_4j, parity_5j, sign_pow, Family, SurfacePoint, TubeSpec};

/// Default threshold for "satisfied".
pub const CLASS_TOL: f64 = 1e-6;

/// Sup-norm below which a fitted coefficient function counts as zero.
pub const ZERO_FUNCTION_TOL: f64 = 1e-10;

/// Smallest grid accepted by the fitters.
pub const MIN_FIT_POINTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussMapClass {
    Harmonic,
    FirstKindPointwise,
    SecondKindPointwise,
    Generalized1Type,
}

impl GaussMapClass {
    pub const ALL: [GaussMapClass; 4] = [
        GaussMapClass::Harmonic,
        GaussMapClass::FirstKindPointwise,
        GaussMapClass::SecondKindPointwise,
        GaussMapClass::Generalized1Type,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GaussMapClass::Harmonic => "harmonic",
            GaussMapClass::FirstKindPointwise => "first_kind",
            GaussMapClass::SecondKindPointwise => "second_kind",
            GaussMapClass::Generalized1Type => "generalized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl Verdict {
    fn from_residual(residual: f64, tol: f64) -> Verdict {
        if residual <= tol {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }
}

/// L_kN (or a synthetic field) and N sampled on a grid, both in Frenet
/// components.
#[derive(Debug, Clone)]
pub struct FieldSample {
    pub s: f64,
    pub t: f64,
    pub w: f64,
    pub field: [f64; 4],
    pub normal: [f64; 4],
    pub frame: FrenetFrame,
}

#[derive(Debug, Clone)]
pub struct SampledField {
    pub k: u8,
    pub eps: f64,
    pub samples: Vec<FieldSample>,
    pub excluded: usize,
}

fn is_exclusion(e: &Error) -> bool {
    matches!(e, Error::SingularPoint { .. } | Error::DegenerateMetric(_))
}

fn sample_with<F>(spec: &TubeSpec, k: u8, grid: &ParamGrid, f: F) -> Result<SampledField>
where
    F: Fn(&SurfacePoint) -> Result<Vec4> + Sync,
{
    let evaluated: Vec<Result<Option<FieldSample>>> = grid
        .points
        .par_iter()
        .map(|&(s, t, w)| {
            let pt = match spec.evaluate(s, t, w) {
                Ok(pt) => pt,
                Err(e) if is_exclusion(&e) => return Ok(None),
                Err(e) => return Err(e),
            };
            match f(&pt) {
                Ok(v) => Ok(Some(FieldSample {
                    s,
                    t,
                    w,
                    field: pt.frame.components(&v),
                    normal: pt.frame.components(&pt.normal),
                    frame: pt.frame,
                })),
                Err(e) if is_exclusion(&e) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut samples = Vec::with_capacity(evaluated.len());
    let mut excluded = grid.excluded;
    for r in evaluated {
        match r? {
            Some(sample) => samples.push(sample),
            None => excluded += 1,
        }
    }
    if samples.is_empty() {
        return Err(Error::EmptyGrid { excluded });
    }
    Ok(SampledField {
        k,
        eps: spec.family.normal_sign(),
        samples,
        excluded,
    })
}

/// L_kN on the grid by the generic operator route.
pub fn sample_field(spec: &TubeSpec, k: u8, grid: &ParamGrid, opts: &NumericOptions) -> Result<SampledField> {
    sample_with(spec, k, grid, |pt| {
        Ok(lk_gauss_map_numeric(spec, k, pt.s, pt.t, pt.w, opts)?.ambient)
    })
}

/// A user-supplied ambient field on the tube, for fitter checks.
pub fn synthetic_field<F>(spec: &TubeSpec, grid: &ParamGrid, f: F) -> Result<SampledField>
where
    F: Fn(&SurfacePoint) -> Vec4 + Sync,
{
    sample_with(spec, 0, grid, |pt| Ok(f(pt)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussMapClassReport {
    pub k: u8,
    pub class_tested: GaussMapClass,
    /// sup over the grid of the per-point residual norm
    pub residual: f64,
    pub fitted_m: Option<Vec<f64>>,
    pub fitted_n: Option<Vec<f64>>,
    pub fitted_c: Option<Vec4>,
    /// First kind only: whether m is constant over the grid within tolerance.
    pub m_constant: Option<bool>,
    pub verdict: Verdict,
    pub points: usize,
    pub excluded: usize,
    /// Residual or coefficient sizes close to a decision threshold, or a fit
    /// whose simplex hit the iteration cap.
    pub borderline: bool,
    /// Generalized fit whose 𝔫 vanished: really a first-kind fit.
    pub impostor: bool,
    pub iterations: u64,
    /// False when the fit's last simplex run stopped at the iteration cap.
    pub converged: bool,
}

impl GaussMapClassReport {
    fn new(field: &SampledField, class_tested: GaussMapClass, residual: f64, tol: f64) -> Self {
        GaussMapClassReport {
            k: field.k,
            class_tested,
            residual,
            fitted_m: None,
            fitted_n: None,
            fitted_c: None,
            m_constant: None,
            verdict: Verdict::from_residual(residual, tol),
            points: field.samples.len(),
            excluded: field.excluded,
            borderline: residual > 0.1 * tol && residual < 10.0 * tol,
            impostor: false,
            iterations: 0,
            converged: true,
        }
    }
}

fn norm4(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    (0..4).map(|i| a[i] * b[i]).sum()
}

pub fn harmonic_report(field: &SampledField, tol: f64) -> GaussMapClassReport {
    let residual = field.samples.iter().map(|p| norm4(&p.field)).fold(0.0, f64::max);
    GaussMapClassReport::new(field, GaussMapClass::Harmonic, residual, tol)
}

/// m(p) = ε⟨L_kN, N⟩ and the sup of ‖L_kN − m N‖.
pub fn first_kind_report(field: &SampledField, tol: f64) -> GaussMapClassReport {
    let mut ms = Vec::with_capacity(field.samples.len());
    let mut residual: f64 = 0.0;
    for p in &field.samples {
        let sig = p.frame.signature();
        let ip: f64 = (0..4).map(|i| sig[i] * p.field[i] * p.normal[i]).sum();
        let m = field.eps * ip;
        let r: [f64; 4] = std::array::from_fn(|i| p.field[i] - m * p.normal[i]);
        residual = residual.max(norm4(&r));
        ms.push(m);
    }
    let (lo, hi) = ms.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &m| (a.min(m), b.max(m)));
    let mut report = GaussMapClassReport::new(field, GaussMapClass::FirstKindPointwise, residual, tol);
    report.m_constant = Some(hi - lo <= tol);
    report.fitted_m = Some(ms);
    report
}

fn check_fit_size(field: &SampledField) -> Result<()> {
    if field.samples.len() < MIN_FIT_POINTS {
        return Err(Error::Invalid(format!(
            "fitting needs at least {MIN_FIT_POINTS} grid points, got {}",
            field.samples.len()
        )));
    }
    Ok(())
}

// Per-point least squares for L ≈ m (N + C).
fn second_kind_point(p: &FieldSample, c: &Vec4) -> (f64, f64) {
    let cc = p.frame.components(c);
    let v: [f64; 4] = std::array::from_fn(|i| p.normal[i] + cc[i]);
    let vv = dot4(&v, &v);
    let m = if vv > 1e-300 { dot4(&p.field, &v) / vv } else { 0.0 };
    let r: [f64; 4] = std::array::from_fn(|i| p.field[i] - m * v[i]);
    (m, dot4(&r, &r))
}

// Per-point least squares for L ≈ m N + n C.
fn generalized_point(p: &FieldSample, c: &Vec4) -> (f64, f64, f64) {
    let cc = p.frame.components(c);
    let nn = dot4(&p.normal, &p.normal);
    let nc = dot4(&p.normal, &cc);
    let ccn = dot4(&cc, &cc);
    let ln = dot4(&p.field, &p.normal);
    let lc = dot4(&p.field, &cc);
    let det = nn * ccn - nc * nc;
    let (m, n) = if det > 1e-14 * nn * ccn {
        ((ln * ccn - lc * nc) / det, (lc * nn - ln * nc) / det)
    } else {
        (ln / nn, 0.0)
    };
    let r: [f64; 4] = std::array::from_fn(|i| p.field[i] - m * p.normal[i] - n * cc[i]);
    (m, n, dot4(&r, &r))
}

const SECOND_KIND_RADII: [f64; 7] = [0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0];

/// Best constant C for L_kN = m_p (N + C).
pub fn second_kind_fit(field: &SampledField, tol: f64, seed: u64) -> Result<GaussMapClassReport> {
    check_fit_size(field)?;
    let objective = |x: &[f64]| {
        let c = Vec4([x[0], x[1], x[2], x[3]]);
        field.samples.iter().map(|p| second_kind_point(p, &c).1).sum::<f64>()
    };
    let mut candidates = Vec::new();
    for d in sphere_directions(4, 40, seed) {
        for r in SECOND_KIND_RADII {
            candidates.push(d.iter().map(|x| r * x).collect::<Vec<f64>>());
        }
    }
    let best = coarse_then_refine(&objective, &candidates, 4, 0.2)?;
    let c = Vec4([best.x[0], best.x[1], best.x[2], best.x[3]]);
    let mut ms = Vec::with_capacity(field.samples.len());
    let mut residual: f64 = 0.0;
    for p in &field.samples {
        let (m, r2) = second_kind_point(p, &c);
        ms.push(m);
        residual = residual.max(r2.sqrt());
    }
    let mut report = GaussMapClassReport::new(field, GaussMapClass::SecondKindPointwise, residual, tol);
    report.fitted_c = Some(c);
    report.fitted_m = Some(ms);
    report.iterations = best.iterations;
    report.converged = best.converged;
    Ok(report)
}

fn unit(x: &[f64]) -> Option<Vec4> {
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    (n > 1e-12).then(|| Vec4([x[0] / n, x[1] / n, x[2] / n, x[3] / n]))
}

/// Best unit C for L_kN = m_p N + n_p C.
pub fn generalized_fit(field: &SampledField, tol: f64, seed: u64) -> Result<GaussMapClassReport> {
    check_fit_size(field)?;
    let fallback: f64 = field.samples.iter().map(|p| dot4(&p.field, &p.field)).sum::<f64>() + 1.0;
    let objective = |x: &[f64]| match unit(x) {
        Some(c) => field.samples.iter().map(|p| generalized_point(p, &c).2).sum::<f64>(),
        None => fallback,
    };
    let candidates = sphere_directions(4, 120, seed);
    let best = coarse_then_refine(&objective, &candidates, 4, 0.3)?;
    let c = unit(&best.x).ok_or_else(|| Error::Invalid("generalized fit collapsed to C = 0".into()))?;
    let mut ms = Vec::with_capacity(field.samples.len());
    let mut ns = Vec::with_capacity(field.samples.len());
    let mut residual: f64 = 0.0;
    for p in &field.samples {
        let (m, n, r2) = generalized_point(p, &c);
        ms.push(m);
        ns.push(n);
        residual = residual.max(r2.sqrt());
    }
    let n_sup = ns.iter().fold(0.0f64, |a, n| a.max(n.abs()));
    let mut report = GaussMapClassReport::new(field, GaussMapClass::Generalized1Type, residual, tol);
    if n_sup < ZERO_FUNCTION_TOL {
        report.impostor = true;
        report.verdict = Verdict::Violated;
    }
    report.borderline |= (ZERO_FUNCTION_TOL..1e2 * ZERO_FUNCTION_TOL).contains(&n_sup);
    report.fitted_c = Some(c);
    report.fitted_m = Some(ms);
    report.fitted_n = Some(ns);
    report.iterations = best.iterations;
    report.converged = best.converged;
    Ok(report)
}

pub fn check_harmonic(spec: &TubeSpec, k: u8, grid: &ParamGrid, tol: f64) -> Result<GaussMapClassReport> {
    Ok(harmonic_report(&sample_field(spec, k, grid, &NumericOptions::default())?, tol))
}

pub fn check_first_kind(spec: &TubeSpec, k: u8, grid: &ParamGrid, tol: f64) -> Result<GaussMapClassReport> {
    Ok(first_kind_report(&sample_field(spec, k, grid, &NumericOptions::default())?, tol))
}

pub fn fit_second_kind(spec: &TubeSpec, k: u8, grid: &ParamGrid, tol: f64, seed: u64) -> Result<GaussMapClassReport> {
    second_kind_fit(&sample_field(spec, k, grid, &NumericOptions::default())?, tol, seed)
}

pub fn fit_generalized(spec: &TubeSpec, k: u8, grid: &ParamGrid, tol: f64, seed: u64) -> Result<GaussMapClassReport> {
    generalized_fit(&sample_field(spec, k, grid, &NumericOptions::default())?, tol, seed)
}

/// Frenet components of a fixed ambient vector along a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantVectorTrack {
    pub s: Vec<f64>,
    pub c_frenet: Vec<[f64; 4]>,
    pub c_ambient: Vec4,
    /// Largest residual of the component ODE system on interior samples.
    pub ode_residual: f64,
    /// Largest |Σ C_i F_i − C| over the samples.
    pub ambient_drift: f64,
}

/// Residuals of the ODE system satisfied by the Frenet components of a
/// constant vector.
pub fn constant_vector_ode(case: CurveCase, c: [f64; 4], dc: [f64; 4], k: [f64; 3]) -> [f64; 4] {
    let [k1, k2, k3] = k;
    match case {
        CurveCase::TimelikeCenter => [
            dc[0] + c[1] * k1,
            dc[1] + c[0] * k1 - c[2] * k2,
            dc[2] + c[1] * k2 - c[3] * k3,
            dc[3] + c[2] * k3,
        ],
        _ => {
            let j = case.timelike_index() as u8;
            let p4 = parity_4j(j);
            let p5 = parity_5j(j);
            [
                dc[0] + p4 * c[1] * k1,
                dc[1] + c[0] * k1 + p5 * c[2] * k2,
                dc[2] + c[1] * k2 - p4 * c[3] * k3,
                dc[3] + c[2] * k3,
            ]
        }
    }
}

pub fn track_constant_vector(curve: &FramedCurve, c_ambient: Vec4) -> ConstantVectorTrack {
    let c_frenet: Vec<[f64; 4]> = curve.frames.iter().map(|f| f.components(&c_ambient)).collect();
    let ambient_drift = curve
        .frames
        .iter()
        .zip(&c_frenet)
        .map(|(f, c)| f.combine(*c).max_abs_diff(&c_ambient))
        .fold(0.0, f64::max);
    let n = c_frenet.len();
    let h = curve.step();
    let mut ode_residual: f64 = 0.0;
    if n >= 5 {
        for i in 2..n - 2 {
            let dc: [f64; 4] = std::array::from_fn(|j| {
                let c = |m: usize| c_frenet[m][j];
                (c(i - 2) - c(i + 2) + 8.0 * (c(i + 1) - c(i - 1))) / (12.0 * h)
            });
            let k = curve.curvatures.at(curve.s_grid[i]);
            let r = constant_vector_ode(curve.case, c_frenet[i], dc, k);
            ode_residual = r.iter().fold(ode_residual, |a, x| a.max(x.abs()));
        }
    }
    ConstantVectorTrack {
        s: curve.s_grid.clone(),
        c_frenet,
        c_ambient,
        ode_residual,
        ambient_drift,
    }
}

/// The constant in L₁N = m N for a tube with k₁ ≡ 0.
pub fn flat_first_kind_constant(family: Family, r: f64) -> f64 {
    let r3 = r * r * r;
    match family {
        Family::Timelike => 2.0 / r3,
        Family::Spacelike { j, lambda } => 2.0 * sign_pow(lambda, j as u32 + 1) * parity_4j(j) / r3,
    }
}

/// One curvature configuration the suite evaluates every family on.
#[derive(Debug, Clone)]
pub struct Witness {
    pub label: String,
    pub curvatures: CurvatureFunctions,
}

impl Witness {
    pub fn flat(&self) -> bool {
        self.curvatures.k1.is_identically_zero()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteSettings {
    pub families: Vec<Family>,
    pub r: f64,
    pub witnesses: Vec<Witness>,
    pub s_range: (f64, f64),
    pub step: f64,
    pub grid: GridSizes,
    pub class_tol: f64,
    /// Nonexistence runs must stay above floor_factor · class_tol.
    pub floor_factor: f64,
    /// Tolerance for m = expected constant.
    pub constant_tol: f64,
    pub reg_tol: f64,
    pub numeric: NumericOptions,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Consistent,
    Inconsistent,
    NoUsablePoints,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRun {
    pub witness: String,
    pub expected: Verdict,
    pub observed: Option<Verdict>,
    pub residual: Option<f64>,
    pub points: usize,
    pub excluded: usize,
    /// Nonexistence runs: residual ≥ floor_factor · class_tol.
    pub floor_met: Option<bool>,
    /// First-kind runs: m constant over the grid.
    pub m_constant: Option<bool>,
    /// First-kind runs: mean of m.
    pub m_value: Option<f64>,
    /// First-kind runs with k₁ ≡ 0: the value m must equal.
    pub m_expected: Option<f64>,
    pub fitted_c: Option<Vec4>,
    pub impostor: bool,
    pub borderline: bool,
    pub status: CheckStatus,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub id: String,
    pub family: String,
    pub k: u8,
    pub class: GaussMapClass,
    pub status: CheckStatus,
    pub excluded: usize,
    pub runs: Vec<WitnessRun>,
}

pub const SUITE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub class_tol: f64,
    pub floor_factor: f64,
    pub note: String,
    pub checks: Vec<SuiteCheck>,
    pub consistent: usize,
    pub total: usize,
}

impl SuiteReport {
    pub fn all_consistent(&self) -> bool {
        self.consistent == self.total && self.total > 0
    }

    pub fn any_without_points(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::NoUsablePoints)
    }
}

/// The verdict the classification theorems predict, or `None` when the
/// class is not meaningful for the witness (for instance second kind with
/// k₁ ≡ 0, where the infimum over C is approached only as C → 0).
pub fn expected_verdict(class: GaussMapClass, k: u8, flat: bool) -> Option<Verdict> {
    use GaussMapClass::*;
    if !flat {
        return Some(Verdict::Violated);
    }
    match (k, class) {
        (1, Harmonic) => Some(Verdict::Violated),
        (1, FirstKindPointwise) => Some(Verdict::Satisfied),
        (2, Harmonic) => Some(Verdict::Satisfied),
        _ => None,
    }
}

struct Prepared {
    witness: String,
    flat: bool,
    fields: Result<[SampledField; 2]>,
}

fn prepare(settings: &SuiteSettings, family: Family, witness: &Witness) -> Prepared {
    let fields = (|| {
        let curve = integrate_frame(
            &witness.curvatures,
            settings.s_range,
            Vec4::ZERO,
            FrenetFrame::standard(family.curve_case()),
            settings.step,
        )?;
        let spec = TubeSpec::new(curve, settings.r, family)?.with_reg_tol(settings.reg_tol);
        let grid = build_grid(&spec, settings.grid);
        if grid.is_empty() {
            return Err(Error::EmptyGrid { excluded: grid.excluded });
        }
        Ok([
            sample_field(&spec, 1, &grid, &settings.numeric)?,
            sample_field(&spec, 2, &grid, &settings.numeric)?,
        ])
    })();
    Prepared {
        witness: witness.label.clone(),
        flat: witness.flat(),
        fields,
    }
}

fn run_class(
    settings: &SuiteSettings,
    family: Family,
    class: GaussMapClass,
    k: u8,
    prepared: &Prepared,
    expected: Verdict,
) -> WitnessRun {
    let mut run = WitnessRun {
        witness: prepared.witness.clone(),
        expected,
        observed: None,
        residual: None,
        points: 0,
        excluded: 0,
        floor_met: None,
        m_constant: None,
        m_value: None,
        m_expected: None,
        fitted_c: None,
        impostor: false,
        borderline: false,
        status: CheckStatus::Error,
        error: None,
    };
    let field = match &prepared.fields {
        Ok(f) => &f[k as usize - 1],
        Err(Error::EmptyGrid { excluded }) => {
            run.excluded = *excluded;
            run.status = CheckStatus::NoUsablePoints;
            run.error = Some(Error::EmptyGrid { excluded: *excluded }.to_string());
            return run;
        }
        Err(e) => {
            run.error = Some(e.to_string());
            return run;
        }
    };
    let tol = settings.class_tol;
    let report = match class {
        GaussMapClass::Harmonic => Ok(harmonic_report(field, tol)),
        GaussMapClass::FirstKindPointwise => Ok(first_kind_report(field, tol)),
        GaussMapClass::SecondKindPointwise => second_kind_fit(field, tol, settings.seed),
        GaussMapClass::Generalized1Type => generalized_fit(field, tol, settings.seed),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            run.error = Some(e.to_string());
            return run;
        }
    };
    run.observed = Some(report.verdict);
    run.residual = Some(report.residual);
    run.points = report.points;
    run.excluded = report.excluded;
    run.m_constant = report.m_constant;
    run.fitted_c = report.fitted_c;
    run.impostor = report.impostor;
    run.borderline = report.borderline || !report.converged;
    let mut ok = report.verdict == expected;
    if expected == Verdict::Violated {
        let floor_met = report.residual >= settings.floor_factor * tol;
        run.floor_met = Some(floor_met);
        ok &= floor_met;
    }
    if let Some(ms) = &report.fitted_m {
        if class == GaussMapClass::FirstKindPointwise {
            let mean = ms.iter().sum::<f64>() / ms.len() as f64;
            run.m_value = Some(mean);
            if prepared.flat && k == 1 {
                let target = flat_first_kind_constant(family, settings.r);
                run.m_expected = Some(target);
                ok &= ms.iter().all(|m| (m - target).abs() <= settings.constant_tol);
                ok &= report.m_constant == Some(true);
            }
        }
    }
    run.status = if ok { CheckStatus::Consistent } else { CheckStatus::Inconsistent };
    run
}

fn check_status(runs: &[WitnessRun]) -> CheckStatus {
    if runs.iter().any(|r| r.status == CheckStatus::NoUsablePoints) {
        CheckStatus::NoUsablePoints
    } else if runs.iter().any(|r| r.status == CheckStatus::Error) {
        CheckStatus::Error
    } else if runs.is_empty() || runs.iter().any(|r| r.status == CheckStatus::Inconsistent) {
        CheckStatus::Inconsistent
    } else {
        CheckStatus::Consistent
    }
}

/// Runs every class × operator check on every family over the witness
/// configurations. Per-check failures are recorded, never propagated.
pub fn theorem_suite(settings: &SuiteSettings) -> SuiteReport {
    let prepared: Vec<(Family, Vec<Prepared>)> = settings
        .families
        .iter()
        .map(|&family| {
            let runs = settings
                .witnesses
                .par_iter()
                .map(|w| prepare(settings, family, w))
                .collect();
            (family, runs)
        })
        .collect();
    let mut jobs = Vec::new();
    for (family, witnesses) in &prepared {
        for k in [1u8, 2] {
            for class in GaussMapClass::ALL {
                jobs.push((*family, k, class, witnesses));
            }
        }
    }
    let checks: Vec<SuiteCheck> = jobs
        .par_iter()
        .map(|&(family, k, class, witnesses)| {
            let runs: Vec<WitnessRun> = witnesses
                .iter()
                .filter_map(|p| {
                    expected_verdict(class, k, p.flat).map(|e| run_class(settings, family, class, k, p, e))
                })
                .collect();
            SuiteCheck {
                id: format!("{}/L{}/{}", family.label(), k, class.label()),
                family: family.label(),
                k,
                class,
                status: check_status(&runs),
                excluded: runs.iter().map(|r| r.excluded).sum(),
                runs,
            }
        })
        .collect();
    let consistent = checks.iter().filter(|c| c.status == CheckStatus::Consistent).count();
    SuiteReport {
        schema_version: SUITE_SCHEMA_VERSION,
        class_tol: settings.class_tol,
        floor_factor: settings.floor_factor,
        note: "nonexistence results are numeric witnesses: a residual floor on the listed configurations, not proofs"
            .into(),
        total: checks.len(),
        consistent,
        checks,
    }
}
