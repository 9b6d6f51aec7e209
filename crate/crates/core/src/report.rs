//! Report rows, CSV/JSON/table rendering and atomic file output.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::SuiteReport;
use crate::curvature::{
    compare_pairs, lk_closed_form, lk_gauss_map_numeric, symmetric_functions, LkResult, NumericOptions,
    TermComparison,
};
use crate::error::{Error, Result};
use crate::frenet::FramedCurve;
use crate::grid::{lattice, GridSizes};
use crate::tube::{Family, TubeSpec};

/// Version of every JSON report emitted by the command line tool.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Ok,
    Singular,
    DegenerateMetric,
}

impl PointStatus {
    fn as_str(self) -> &'static str {
        match self {
            PointStatus::Ok => "ok",
            PointStatus::Singular => "singular",
            PointStatus::DegenerateMetric => "degenerate_metric",
        }
    }
}

/// One grid point of the L_k evaluation; all vectors in Frenet components.
/// Non-`Ok` rows carry NaN in the computed columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LkRow {
    pub family: String,
    pub s: f64,
    pub t: f64,
    pub w: f64,
    pub status: PointStatus,
    pub margin: f64,
    pub normal: [f64; 4],
    pub l1_numeric: [f64; 4],
    pub l2_numeric: [f64; 4],
    pub l1_closed: [f64; 4],
    pub l2_closed: [f64; 4],
    pub kappa: [f64; 3],
    pub a: [f64; 3],
    /// max over components of |numeric − closed|
    pub l1_residual: f64,
    pub l2_residual: f64,
}

const NAN4: [f64; 4] = [f64::NAN; 4];
const NAN3: [f64; 3] = [f64::NAN; 3];

struct Evaluated {
    row: LkRow,
    pairs: Option<[LkResult; 4]>,
}

fn evaluate_row(spec: &TubeSpec, s: f64, t: f64, w: f64, opts: &NumericOptions) -> Result<Evaluated> {
    let family = spec.family.label();
    let margin = spec.regularity(s, t, w);
    let flagged = |status| LkRow {
        family: family.clone(),
        s,
        t,
        w,
        status,
        margin,
        normal: NAN4,
        l1_numeric: NAN4,
        l2_numeric: NAN4,
        l1_closed: NAN4,
        l2_closed: NAN4,
        kappa: NAN3,
        a: NAN3,
        l1_residual: f64::NAN,
        l2_residual: f64::NAN,
    };
    if !spec.is_regular(s, t, w) {
        return Ok(Evaluated {
            row: flagged(PointStatus::Singular),
            pairs: None,
        });
    }
    let computed = (|| {
        let pt = spec.evaluate(s, t, w)?;
        let n1 = lk_gauss_map_numeric(spec, 1, s, t, w, opts)?;
        let n2 = lk_gauss_map_numeric(spec, 2, s, t, w, opts)?;
        let c1 = lk_closed_form(spec, 1, s, t, w)?;
        let c2 = lk_closed_form(spec, 2, s, t, w)?;
        let kappa = spec.principal_curvatures(s, t, w)?;
        Ok((pt, [n1, n2, c1, c2], kappa))
    })();
    let (pt, results, kappa) = match computed {
        Ok(v) => v,
        Err(Error::DegenerateMetric(_)) => {
            return Ok(Evaluated {
                row: flagged(PointStatus::DegenerateMetric),
                pairs: None,
            })
        }
        Err(e) => return Err(e),
    };
    let [n1, n2, c1, c2] = &results;
    let diff = |a: &[f64; 4], b: &[f64; 4]| (0..4).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max);
    let a = symmetric_functions(kappa);
    Ok(Evaluated {
        row: LkRow {
            family,
            s,
            t,
            w,
            status: PointStatus::Ok,
            margin,
            normal: pt.frame.components(&pt.normal),
            l1_numeric: n1.frenet,
            l2_numeric: n2.frenet,
            l1_closed: c1.frenet,
            l2_closed: c2.frenet,
            kappa,
            a: [a.a1, a.a2, a.a3],
            l1_residual: diff(&n1.frenet, &c1.frenet),
            l2_residual: diff(&n2.frenet, &c2.frenet),
        },
        pairs: Some(results),
    })
}

/// Rows and per-term adjudication for one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LkFamilyReport {
    pub family: String,
    pub points: usize,
    pub excluded: usize,
    pub terms: Vec<TermComparison>,
    #[serde(skip)]
    pub rows: Vec<LkRow>,
}

impl LkFamilyReport {
    pub fn agreement(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.verdict == crate::curvature::TermVerdict::Agreement)
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &TermComparison> {
        self.terms
            .iter()
            .filter(|t| t.verdict == crate::curvature::TermVerdict::Discrepancy)
    }
}

pub fn lk_family_report(
    spec: &TubeSpec,
    sizes: GridSizes,
    opts: &NumericOptions,
    agreement_tol: f64,
) -> Result<LkFamilyReport> {
    let points = lattice(spec, sizes);
    let evaluated: Vec<Evaluated> = points
        .par_iter()
        .map(|&(s, t, w)| evaluate_row(spec, s, t, w, opts))
        .collect::<Result<_>>()?;
    let family = spec.family.label();
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for e in &evaluated {
        if let Some([n1, n2, c1, c2]) = &e.pairs {
            let at = (e.row.s, e.row.t, e.row.w);
            p1.push((at, *n1, *c1));
            p2.push((at, *n2, *c2));
        }
    }
    let mut terms = compare_pairs(spec, 1, &p1, agreement_tol);
    terms.extend(compare_pairs(spec, 2, &p2, agreement_tol));
    Ok(LkFamilyReport {
        family,
        points: p1.len(),
        excluded: evaluated.len() - p1.len(),
        terms,
        rows: evaluated.into_iter().map(|e| e.row).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LkSummary {
    pub schema_version: u32,
    pub agreement_tol: f64,
    pub families: Vec<LkFamilyReport>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn lk_csv_header() -> Vec<String> {
    let mut h: Vec<String> = ["family", "s", "t", "w", "status", "margin"].map(String::from).to_vec();
    for prefix in ["n", "l1n", "l2n", "l1c", "l2c"] {
        h.extend((1..=4).map(|i| format!("{prefix}_{i}")));
    }
    h.extend((1..=3).map(|i| format!("kappa_{i}")));
    h.extend((1..=3).map(|i| format!("a_{i}")));
    h.push("l1_residual".into());
    h.push("l2_residual".into());
    h
}

pub fn write_lk_csv<W: Write>(out: W, rows: &[LkRow]) -> Result<()> {
    let io = |e: csv::Error| Error::Invalid(format!("csv write failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(lk_csv_header()).map_err(io)?;
    for r in rows {
        let mut rec = vec![r.family.clone(), num(r.s), num(r.t), num(r.w), r.status.as_str().into(), num(r.margin)];
        for v in [&r.normal, &r.l1_numeric, &r.l2_numeric, &r.l1_closed, &r.l2_closed] {
            rec.extend(v.iter().map(|x| num(*x)));
        }
        rec.extend(r.kappa.iter().chain(r.a.iter()).map(|x| num(*x)));
        rec.push(num(r.l1_residual));
        rec.push(num(r.l2_residual));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv write failed: {e}")))?;
    Ok(())
}

/// Frame integrity of one integrated curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameCaseReport {
    pub family: String,
    pub case: String,
    pub samples: usize,
    pub max_orthonormality_drift: f64,
    pub max_unit_speed_drift: f64,
    pub max_velocity_defect: f64,
    pub within_tolerance: bool,
}

pub fn frame_case_report(family: Family, curve: &FramedCurve, tol: f64) -> FrameCaseReport {
    let ortho = curve.max_orthonormality_drift();
    let speed = curve.max_unit_speed_drift();
    let velocity = curve.max_velocity_defect();
    FrameCaseReport {
        family: family.label(),
        case: curve.case.to_string(),
        samples: curve.len(),
        max_orthonormality_drift: ortho,
        max_unit_speed_drift: speed,
        max_velocity_defect: velocity,
        within_tolerance: ortho < tol && speed < tol && velocity < tol,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub schema_version: u32,
    pub step: f64,
    pub s_range: [f64; 2],
    pub tolerance: f64,
    pub cases: Vec<FrameCaseReport>,
}

impl FrameReport {
    pub fn within_tolerance(&self) -> bool {
        self.cases.iter().all(|c| c.within_tolerance)
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"))
}

/// Fixed-width rendering of the suite, one line per witness run.
pub fn suite_table(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<32} {:<24} {:<9} {:<9} {:>10} {:>8} {:>6}  status",
        "check", "witness", "expected", "observed", "residual", "excluded", "points"
    );
    for check in &report.checks {
        if check.runs.is_empty() {
            let _ = writeln!(out, "{:<32} (no applicable witness)", check.id);
        }
        for run in &check.runs {
            let verdict = |v: Option<crate::classify::Verdict>| match v {
                Some(crate::classify::Verdict::Satisfied) => "satisfied",
                Some(crate::classify::Verdict::Violated) => "violated",
                None => "-",
            };
            let status = match run.status {
                crate::classify::CheckStatus::Consistent => "ok".to_string(),
                crate::classify::CheckStatus::Inconsistent => "MISMATCH".to_string(),
                crate::classify::CheckStatus::NoUsablePoints => "NO POINTS".to_string(),
                crate::classify::CheckStatus::Error => {
                    format!("ERROR {}", run.error.as_deref().unwrap_or(""))
                }
            };
            let _ = writeln!(
                out,
                "{:<32} {:<24} {:<9} {:<9} {:>10} {:>8} {:>6}  {}",
                check.id,
                run.witness,
                verdict(Some(run.expected)),
                verdict(run.observed),
                fmt_opt(run.residual),
                run.excluded,
                run.points,
                status
            );
        }
    }
    let _ = writeln!(out, "{}/{} checks consistent", report.consistent, report.total);
    let _ = writeln!(out, "note: {}", report.note);
    out
}

/// Write `bytes` to `path` through a temporary file in the same directory
/// and an atomic rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{integrate_frame, CurvatureFunctions, FrenetFrame};
    use crate::minkowski::Vec4;

    fn spec(family: Family, k: CurvatureFunctions) -> TubeSpec {
        let curve = integrate_frame(&k, (0.0, 1.0), Vec4::ZERO, FrenetFrame::standard(family.curve_case()), 1e-3)
            .unwrap();
        TubeSpec::new(curve, 0.5, family).unwrap()
    }

    #[test]
    fn flat_timelike_rows() {
        let sp = spec(Family::Timelike, CurvatureFunctions::zero());
        let rep = lk_family_report(&sp, GridSizes::cube(3), &NumericOptions::default(), 1e-6).unwrap();
        assert_eq!(rep.rows.len(), 27);
        assert!(rep.agreement());
        for r in &rep.rows {
            for i in 0..4 {
                assert!((r.l1_numeric[i] - 16.0 * r.normal[i]).abs() < 1e-8);
            }
        }
        let mut buf = Vec::new();
        write_lk_csv(&mut buf, &rep.rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 28);
        assert_eq!(text.lines().next().unwrap().split(',').count(), lk_csv_header().len());
    }

    #[test]
    fn singular_rows_are_flagged() {
        let sp = spec(Family::Timelike, CurvatureFunctions::constant(2.0, 0.2, 0.1));
        let rep = lk_family_report(&sp, GridSizes::cube(4), &NumericOptions::default(), 1e-6).unwrap();
        assert_eq!(rep.rows.len(), 64);
        let flagged = rep.rows.iter().filter(|r| r.status != PointStatus::Ok).count();
        assert!(flagged > 0);
        assert_eq!(flagged, rep.excluded);
        assert!(rep.rows.iter().filter(|r| r.status == PointStatus::Ok).all(|r| r.l1_numeric[0].is_finite()));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/x.txt"), b"x").is_err());
    }
}
