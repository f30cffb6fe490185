//! The harness operations behind the CLI subcommands. Each returns a typed
//! report that renders to CSV (and to SVG where a plot makes sense).

use std::path::Path;

use log::warn;
use num_complex::Complex64 as C;
use rayon::prelude::*;

use super::config::{ExperimentConfig, YRule};
use super::csv::{self, Table};
use super::svg::{line_plot, Series};
use crate::contour::{extract_counts, radius_policy, ContourSpec};
use crate::error::{Error, Result};
use crate::predictors::{predict, Context, Prediction, PredictorId, Query};
use crate::sieve::{count_nk, count_nk_classical, eval_counts, phi_with_table, PrimeTable, MAX_X};
use crate::special::{buchstab_w, ell, m_z_solution, RhoTable};

fn sieve_counts(x: u64, y: u64) -> Result<Vec<u64>> {
    if x > MAX_X {
        return Err(Error::Resource(format!(
            "x = {x} exceeds the sieve limit {MAX_X}"
        )));
    }
    count_nk(x, y).map(|cv| cv.counts)
}

pub fn rel_error(pred: f64, exact: f64) -> f64 {
    (pred - exact).abs() / exact.max(1.0)
}

pub fn cmd_count(x: u64, y: u64, k_max: Option<usize>) -> Result<Table> {
    let mut counts = sieve_counts(x, y)?;
    if let Some(k) = k_max {
        counts.resize(k + 1, 0);
    }
    let mut t = Table::new(&["k", "N_k"]);
    for (k, n) in counts.iter().enumerate() {
        t.push(vec![k.to_string(), n.to_string()]);
    }
    Ok(t)
}

pub fn cmd_phi(x: u64, y: u64, cache_dir: &Path) -> Result<Table> {
    if y < 2 {
        return Err(Error::Domain(format!("y = {y} must be >= 2")));
    }
    let table = PrimeTable::load_or_build(x.max(2), cache_dir)?;
    let v = phi_with_table(x, y, &table)?;
    let mut t = Table::new(&["x", "y", "phi"]);
    t.push(vec![x.to_string(), y.to_string(), v.to_string()]);
    Ok(t)
}

const SUM_PREDICTORS: [PredictorId; 3] =
    [PredictorId::SelbergSum, PredictorId::SumLargeY, PredictorId::SumSmallY];

/// Exact S_z(x, y) followed by the S_z predictors (all three by default).
pub fn cmd_sum(x: u64, y: u64, z: C, models: &[PredictorId], ctx: &Context) -> Result<Table> {
    let counts = sieve_counts(x, y)?;
    let exact = eval_counts(
        &crate::sieve::CountVector { x, y, counts: counts.clone() },
        z,
    );
    let ids: Vec<PredictorId> = if models.is_empty() {
        SUM_PREDICTORS.to_vec()
    } else {
        models.to_vec()
    };
    let mut t = Table::new(&[
        "x", "y", "z_re", "z_im", "source", "re", "im", "rel_error", "valid", "notes",
    ]);
    let head = |source: &str| {
        vec![x.to_string(), y.to_string(), csv::float(z.re), csv::float(z.im), source.to_string()]
    };
    let mut row = head("exact");
    row.extend([csv::float(exact.re), csv::float(exact.im), csv::float(0.0), "true".into(), String::new()]);
    t.push(row);
    for id in ids {
        if !id.is_sum() {
            return Err(Error::Usage(format!("{id} predicts N_k, not S_z")));
        }
        let q = Query { x: x as f64, y: y as f64, k: 0, z, exact_counts: None };
        let mut row = head(id.name());
        match predict(id, &q, ctx) {
            Ok(p) => {
                let err = (p.value - exact).norm() / exact.norm().max(1.0);
                row.extend([
                    csv::float(p.value.re),
                    csv::float(p.value.im),
                    csv::float(err),
                    p.valid.to_string(),
                    csv::text(&p.notes.join("; ")),
                ]);
            }
            Err(e) => row.extend(failed_cells(&e, 3)),
        }
        t.push(row);
    }
    Ok(t)
}

fn failed_cells(e: &Error, numbers: usize) -> Vec<String> {
    let mut v = vec![csv::float(f64::NAN); numbers];
    v.push("false".into());
    v.push(csv::text(&e.to_string()));
    v
}

/// One predictor with all of its named terms, one row per term.
pub fn cmd_predict(id: PredictorId, x: u64, y: u64, k: u32, z: C, ctx: &Context) -> Result<Table> {
    let counts;
    let exact_counts = if id == PredictorId::Thm11 {
        counts = sieve_counts(x, y)?;
        Some(counts.as_slice())
    } else {
        None
    };
    let q = Query { x: x as f64, y: y as f64, k, z, exact_counts };
    let p = predict(id, &q, ctx)?;
    Ok(prediction_table(&p))
}

pub fn prediction_table(p: &Prediction) -> Table {
    let mut t = Table::new(&[
        "predictor", "x", "y", "k", "z_re", "z_im", "alpha", "beta", "r", "term", "re", "im",
        "valid", "notes",
    ]);
    let i = &p.inputs;
    let opt = |v: Option<f64>| v.map(csv::float).unwrap_or_default();
    let notes = csv::text(&p.notes.join("; "));
    let mut rows = vec![("value", p.value)];
    rows.extend(p.terms.iter().copied());
    for (name, v) in rows {
        t.push(vec![
            p.predictor.name().to_string(),
            csv::float(i.x),
            csv::float(i.y),
            i.k.map(|k| k.to_string()).unwrap_or_default(),
            opt(i.z.map(|z| z.re)),
            opt(i.z.map(|z| z.im)),
            csv::float(i.alpha),
            csv::float(i.beta),
            opt(i.r),
            name.to_string(),
            csv::float(v.re),
            csv::float(v.im),
            p.valid.to_string(),
            notes.clone(),
        ]);
    }
    t
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub x: u64,
    pub y: u64,
    pub alpha: f64,
    pub k: u32,
    pub exact: u64,
    pub predictor: PredictorId,
    pub value: f64,
    pub rel_error: f64,
    pub valid: bool,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PredictionReport {
    pub rows: Vec<ReportRow>,
}

const REPORT_HEADER: [&str; 10] = [
    "x", "y", "alpha", "k", "exact", "predictor", "value", "rel_error", "valid", "notes",
];

impl PredictionReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&REPORT_HEADER);
        for r in &self.rows {
            t.push(vec![
                r.x.to_string(),
                r.y.to_string(),
                csv::float(r.alpha),
                r.k.to_string(),
                r.exact.to_string(),
                r.predictor.name().to_string(),
                csv::float(r.value),
                csv::float(r.rel_error),
                r.valid.to_string(),
                csv::text(&r.notes),
            ]);
        }
        t
    }

    pub fn to_csv(&self) -> String {
        self.to_table().render()
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let t = Table::parse(text)?;
        if t.header != REPORT_HEADER {
            return Err(Error::Usage("not a prediction report".into()));
        }
        let rows = t
            .rows
            .iter()
            .map(|c| {
                Ok(ReportRow {
                    x: csv::parse_int(&c[0])?,
                    y: csv::parse_int(&c[1])?,
                    alpha: csv::parse_float(&c[2])?,
                    k: csv::parse_int(&c[3])?,
                    exact: csv::parse_int(&c[4])?,
                    predictor: c[5].parse()?,
                    value: csv::parse_float(&c[6])?,
                    rel_error: csv::parse_float(&c[7])?,
                    valid: csv::parse_bool(&c[8])?,
                    notes: c[9].clone(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(PredictionReport { rows })
    }

    pub fn rows_for(&self, id: PredictorId, k: u32) -> impl Iterator<Item = &ReportRow> {
        self.rows
            .iter()
            .filter(move |r| r.predictor == id && r.k == k)
    }

    /// Relative error against log10 x, one series per (predictor, k).
    pub fn svg(&self, title: &str) -> String {
        let mut series: Vec<Series> = Vec::new();
        for r in &self.rows {
            let label = format!("{} k={}", r.predictor, r.k);
            let point = ((r.x as f64).log10(), r.rel_error);
            match series.iter_mut().find(|s| s.label == label) {
                Some(s) => s.points.push(point),
                None => series.push(Series { label, points: vec![point] }),
            }
        }
        line_plot(title, "log10 x", "relative error", &series)
    }
}

/// One row per (x, k, predictor), in that order with predictors sorted by
/// name. Predictor failures become rows with a NaN value and the error
/// text in `notes`.
pub fn cmd_compare(cfg: &ExperimentConfig, ctx: &Context) -> Result<PredictionReport> {
    let rule = cfg.validate()?;
    if let Some(&x) = cfg.x_list.iter().find(|&&x| x > MAX_X) {
        return Err(Error::Resource(format!(
            "x = {x} exceeds the sieve limit {MAX_X}"
        )));
    }
    let mut ids = cfg.predictors.clone();
    ids.sort_by_key(|id| id.name());
    ids.dedup();
    let mut rows = Vec::new();
    for &x in &cfg.x_list {
        let y = rule.derive(x).y;
        let counts = if ids.is_empty() { Vec::new() } else { sieve_counts(x, y)? };
        let cells: Vec<(u32, PredictorId)> = (cfg.k_min..=cfg.k_max)
            .flat_map(|k| ids.iter().map(move |&id| (k, id)))
            .collect();
        let alpha = (x as f64).ln() / (y as f64).ln();
        let mut part: Vec<ReportRow> = cells
            .par_iter()
            .map(|&(k, id)| {
                let exact = counts.get(k as usize).copied().unwrap_or(0);
                let q = Query {
                    x: x as f64,
                    y: y as f64,
                    k,
                    z: C::new(1.0, 0.0),
                    exact_counts: Some(&counts),
                };
                let (value, valid, notes) = match predict(id, &q, ctx) {
                    Ok(p) => (p.value.re, p.valid, p.notes.join("; ")),
                    Err(e) => (f64::NAN, false, e.to_string()),
                };
                ReportRow {
                    x,
                    y,
                    alpha,
                    k,
                    exact,
                    predictor: id,
                    value,
                    rel_error: rel_error(value, exact as f64),
                    valid,
                    notes: csv::text(&notes),
                }
            })
            .collect();
        rows.append(&mut part);
    }
    Ok(PredictionReport { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhenomenonRow {
    pub k: u32,
    pub n_k_y: u64,
    pub n_k_x: u64,
    pub n_k1_x: u64,
    /// N_k(x, y)/N_{k+1}(x, x)
    pub ratio_next: f64,
    /// N_k(x, y)/N_k(x, x)
    pub ratio_same: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhenomenonReport {
    pub x: u64,
    pub c: f64,
    pub y: u64,
    pub y_raw: f64,
    pub clamped: bool,
    pub rows: Vec<PhenomenonRow>,
}

impl PhenomenonReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            "x", "y", "k", "N_k(x;y)", "N_k(x;x)", "N_k+1(x;x)", "ratio_next", "ratio_same",
        ]);
        for r in &self.rows {
            t.push(vec![
                self.x.to_string(),
                self.y.to_string(),
                r.k.to_string(),
                r.n_k_y.to_string(),
                r.n_k_x.to_string(),
                r.n_k1_x.to_string(),
                csv::float(r.ratio_next),
                csv::float(r.ratio_same),
            ]);
        }
        t
    }

    pub fn row(&self, k: u32) -> Option<&PhenomenonRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// N_k(x, y)/N_{k+1}(x, x) lies in [0.1, 10].
    pub fn same_order(&self, k: u32) -> bool {
        self.row(k)
            .is_some_and(|r| (0.1..=10.0).contains(&r.ratio_next))
    }

    /// N_k(x, y)/N_{k+1}(x, x) exceeds 10 N_k(x, y)/N_k(x, x).
    pub fn separated(&self, k: u32) -> bool {
        self.row(k).is_some_and(|r| r.ratio_next > 10.0 * r.ratio_same)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "x = {}, c = {}, y = exp(log x/(c loglog x)) = {:.6}",
            self.x, self.c, self.y_raw
        );
        if self.clamped {
            s += &format!(" (clamped to {})", self.y);
        }
        s.push('\n');
        for r in &self.rows {
            s += &format!(
                "k = {}: N_k(x,y)/N_k+1(x,x) = {:.4} ({}), N_k(x,y)/N_k(x,x) = {:.4} ({})\n",
                r.k,
                r.ratio_next,
                if self.same_order(r.k) { "bounded" } else { "not bounded" },
                r.ratio_same,
                if self.separated(r.k) { "separated" } else { "not separated" },
            );
        }
        s
    }
}

pub const DEFAULT_PHENOMENON_C: f64 = 12.0;

pub fn cmd_phenomenon(x: u64, c: f64, k_max: u32) -> Result<PhenomenonReport> {
    if x < 1_000_000 {
        return Err(Error::Domain(format!("x = {x} must be >= 10^6")));
    }
    if !(c > 0.0) {
        return Err(Error::Domain(format!("c = {c} must be positive")));
    }
    let d = YRule::Exp(c).derive(x);
    let small = sieve_counts(x, d.y)?;
    let full = count_nk_classical(x)?.counts;
    let get = |v: &[u64], k: u32| v.get(k as usize).copied().unwrap_or(0);
    let ratio = |a: u64, b: u64| if b == 0 { f64::NAN } else { a as f64 / b as f64 };
    let rows = (0..=k_max)
        .map(|k| {
            let (a, b, c1) = (get(&small, k), get(&full, k), get(&full, k + 1));
            PhenomenonRow {
                k,
                n_k_y: a,
                n_k_x: b,
                n_k1_x: c1,
                ratio_next: ratio(a, c1),
                ratio_same: ratio(a, b),
            }
        })
        .collect();
    Ok(PhenomenonReport { x, c, y: d.y, y_raw: d.raw, clamped: d.clamped, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialFn {
    W,
    Rho,
    M,
    Ell,
}

impl std::str::FromStr for SpecialFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w" => Ok(SpecialFn::W),
            "rho" => Ok(SpecialFn::Rho),
            "m" => Ok(SpecialFn::M),
            "ell" => Ok(SpecialFn::Ell),
            _ => Err(Error::Usage(format!("unknown function '{s}' (w, rho, m, ell)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialParams {
    pub from: Option<f64>,
    pub to: Option<f64>,
    /// Number of grid points; default 64 per unit length.
    pub points: Option<usize>,
    pub r: f64,
    pub z: C,
}

impl Default for SpecialParams {
    fn default() -> Self {
        SpecialParams { from: None, to: None, points: None, r: 1.0, z: C::new(1.0, 0.0) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialDump {
    pub function: SpecialFn,
    pub rows: Vec<(f64, C)>,
}

impl SpecialDump {
    pub fn to_table(&self) -> Table {
        let arg = if self.function == SpecialFn::Ell { "z" } else { "alpha" };
        let mut t = Table::new(&[arg, "re", "im"]);
        for &(a, v) in &self.rows {
            t.push(vec![csv::float(a), csv::float(v.re), csv::float(v.im)]);
        }
        t
    }

    pub fn svg(&self) -> String {
        let name = match self.function {
            SpecialFn::W => "w",
            SpecialFn::Rho => "rho",
            SpecialFn::M => "m",
            SpecialFn::Ell => "ell",
        };
        let mut series = vec![Series {
            label: format!("Re {name}"),
            points: self.rows.iter().map(|&(a, v)| (a, v.re)).collect(),
        }];
        if self.rows.iter().any(|(_, v)| v.im != 0.0) {
            series.push(Series {
                label: format!("Im {name}"),
                points: self.rows.iter().map(|&(a, v)| (a, v.im)).collect(),
            });
        }
        let arg = if self.function == SpecialFn::Ell { "z" } else { "alpha" };
        line_plot(name, arg, name, &series)
    }
}

pub fn cmd_special(function: SpecialFn, p: &SpecialParams) -> Result<SpecialDump> {
    let (from, to) = match function {
        SpecialFn::Ell => (p.from.unwrap_or(0.0), p.to.unwrap_or(3.0)),
        _ => (p.from.unwrap_or(1.0), p.to.unwrap_or(10.0)),
    };
    if !(to > from) {
        return Err(Error::Usage(format!("empty range [{from}, {to}]")));
    }
    let points = p
        .points
        .unwrap_or(((to - from) * 64.0).round() as usize + 1)
        .max(2);
    let step = (to - from) / (points - 1) as f64;
    let args: Vec<f64> = (0..points)
        .map(|i| if i + 1 == points { to } else { from + i as f64 * step })
        .collect();
    let rows = match function {
        SpecialFn::W => args
            .iter()
            .map(|&a| Ok((a, C::new(buchstab_w(a)?, 0.0))))
            .collect::<Result<_>>()?,
        SpecialFn::Rho => {
            let table = RhoTable::new(p.r, to)?;
            args.iter()
                .map(|&u| Ok((u, C::new(table.eval(u)?, 0.0))))
                .collect::<Result<_>>()?
        }
        SpecialFn::M => {
            let sol = m_z_solution(p.z, to.max(2.0))?;
            args.iter()
                .map(|&a| Ok((a, sol.eval(a)?)))
                .collect::<Result<_>>()?
        }
        SpecialFn::Ell => args
            .par_iter()
            .map(|&t| Ok((t, ell(C::new(t, p.z.im))?)))
            .collect::<Result<_>>()?,
    };
    Ok(SpecialDump { function, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluator {
    Exact,
    Predictor(PredictorId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourRow {
    pub k: usize,
    pub exact: u64,
    pub extracted: f64,
    pub abs_dev: f64,
    pub conditioning: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourCheck {
    pub x: u64,
    pub y: u64,
    pub points: usize,
    pub radius: f64,
    pub rows: Vec<ContourRow>,
}

impl ContourCheck {
    pub fn max_abs_deviation(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_dev).fold(0.0, f64::max)
    }

    pub fn max_rel_deviation(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| rel_error(r.extracted, r.exact as f64))
            .fold(0.0, f64::max)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["k", "exact", "extracted", "abs_dev", "conditioning"]);
        for r in &self.rows {
            t.push(vec![
                r.k.to_string(),
                r.exact.to_string(),
                csv::float(r.extracted),
                csv::float(r.abs_dev),
                csv::float(r.conditioning),
            ]);
        }
        t
    }
}

/// Extracts N_k(x, y) on |z| = r with m nodes and compares with the sieve.
/// Without an explicit radius the policy radius for k = round(loglog y)
/// is used.
pub fn cmd_contour_check(
    x: u64,
    y: u64,
    points: usize,
    radius: Option<f64>,
    evaluator: Evaluator,
    ctx: &Context,
) -> Result<ContourCheck> {
    let counts = sieve_counts(x, y)?;
    let k_max = counts.len() - 1;
    let radius = radius.unwrap_or_else(|| {
        let k = (y as f64).ln().ln().round().max(1.0) as u32;
        radius_policy(k, y as f64)
    });
    let spec = ContourSpec::new(radius, points, k_max)?;
    let cv = crate::sieve::CountVector { x, y, counts: counts.clone() };
    let ex = match evaluator {
        Evaluator::Exact => extract_counts(&spec, |z| Ok(eval_counts(&cv, z)))?,
        Evaluator::Predictor(id) => {
            if !id.is_sum() {
                return Err(Error::Usage(format!("{id} does not evaluate S_z")));
            }
            extract_counts(&spec, |z| {
                let q = Query { x: x as f64, y: y as f64, k: 0, z, exact_counts: None };
                predict(id, &q, ctx).map(|p| p.value)
            })?
        }
    };
    if ex.imag_residue > 1e-6 * ex.max_abs_s {
        warn!("extracted coefficients carry imaginary parts up to {}", ex.imag_residue);
    }
    let rows = counts
        .iter()
        .enumerate()
        .map(|(k, &n)| ContourRow {
            k,
            exact: n,
            extracted: ex.counts[k],
            abs_dev: (ex.counts[k] - n as f64).abs(),
            conditioning: ex.conditioning(k, n as f64),
        })
        .collect();
    Ok(ContourCheck { x, y, points, radius, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_examples() {
        let t = cmd_count(100, 11, None).unwrap();
        assert_eq!(t.rows[0], vec!["0", "22"]);
        assert_eq!(cmd_count(1, 7, None).unwrap().render(), "k,N_k\n0,1\n");
        let t = cmd_count(10_000, 100, None).unwrap();
        let total: u64 = t.rows.iter().map(|r| r[1].parse::<u64>().unwrap()).sum();
        assert_eq!(total, 10_000);
        assert_eq!(cmd_count(100, 11, Some(6)).unwrap().rows.len(), 7);
    }

    #[test]
    fn special_examples() {
        let w = cmd_special(SpecialFn::W, &SpecialParams::default()).unwrap();
        let row = w.rows.iter().find(|r| r.0 == 1.5).unwrap();
        assert!((row.1.re - 2.0 / 3.0).abs() < 1e-15);
        let p = SpecialParams { z: C::new(1.0, 0.0), ..SpecialParams::default() };
        let m = cmd_special(SpecialFn::M, &p).unwrap();
        assert!(m.rows.iter().all(|r| (r.1 - 1.0).norm() < 1e-12));
        let l = cmd_special(SpecialFn::Ell, &SpecialParams { points: Some(31), ..p }).unwrap();
        let at1 = l.rows.iter().find(|r| r.0 == 1.0).unwrap();
        assert!((at1.1.re - 1.0).abs() < 1e-12);
        assert_eq!(l.to_table().header[0], "z");
        assert!(cmd_special(SpecialFn::W, &SpecialParams { from: Some(0.5), ..p }).is_err());
    }

    #[test]
    fn contour_examples() {
        let ctx = Context::default();
        let c = cmd_contour_check(10_000, 100, 64, Some(1.0), Evaluator::Exact, &ctx).unwrap();
        assert!(c.max_abs_deviation() < 1e-6);
        let c = cmd_contour_check(10, 2, 8, Some(0.5), Evaluator::Exact, &ctx).unwrap();
        assert_eq!(c.max_abs_deviation(), 0.0);
        assert_eq!(c.rows.len(), 1);
        let c = cmd_contour_check(100_000, 1000, 128, None, Evaluator::Exact, &ctx).unwrap();
        assert!(c.max_abs_deviation() < 1e-6);
        let e = cmd_contour_check(10_000, 100, 4, Some(1.0), Evaluator::Exact, &ctx).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn compare_round_trip_and_order() {
        let cfg = ExperimentConfig::parse(
            "x = 100000, 30000\ny_rule = fixed:30\nk = 0..2\npredictors = thm3star, landau, thm2\n",
        )
        .unwrap();
        let ctx = Context::default();
        let rep = cmd_compare(&cfg, &ctx).unwrap();
        assert_eq!(rep.rows.len(), 2 * 3 * 3);
        let names: Vec<&str> = rep.rows[..3].iter().map(|r| r.predictor.name()).collect();
        assert_eq!(names, ["landau", "thm2", "thm3star"]);
        assert_eq!(rep.rows[0].x, 100_000);
        assert!(rep.rows.iter().any(|r| r.value.is_nan()));
        let text = rep.to_csv();
        let back = PredictionReport::parse_csv(&text).unwrap();
        assert_eq!(back.to_csv(), text);
        assert_eq!(cmd_compare(&cfg, &ctx).unwrap().to_csv(), text);
        let empty = ExperimentConfig::parse("x = 1000\ny_rule = fixed:30\npredictors =\n").unwrap();
        assert_eq!(
            cmd_compare(&empty, &ctx).unwrap().to_csv(),
            "x,y,alpha,k,exact,predictor,value,rel_error,valid,notes\n"
        );
        let huge = ExperimentConfig::parse("x = 1e12\ny_rule = fixed:30\npredictors = landau\n").unwrap();
        let e = cmd_compare(&huge, &ctx).unwrap_err();
        assert!(matches!(e, Error::Resource(ref m) if m.contains("1000000000000")));
    }

    #[test]
    fn sum_and_predict_tables() {
        let ctx = Context::default();
        let t = cmd_sum(100_000, 1000, C::new(0.5, 0.0), &[], &ctx).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.rows[0][4], "exact");
        assert!(cmd_sum(1000, 10, C::new(0.5, 0.0), &[PredictorId::Landau], &ctx).is_err());
        let t = cmd_predict(PredictorId::Thm3, 1_000_000, 100_000, 2, C::new(1.0, 0.0), &ctx).unwrap();
        assert_eq!(t.rows[0][9], "value");
        assert_eq!(t.rows.len(), 4);
    }
}
