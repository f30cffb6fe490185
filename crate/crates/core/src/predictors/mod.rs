//! Asymptotic main terms for N_k(x, y) and S_z(x, y), one predictor per
//! formula, with a uniform query/result interface for the harness.
//!
//! Every prediction carries the value, its separate terms, the inputs with
//! the derived shape parameters α = log x / log y, β = x / y and
//! r = k / loglog y, and a validity flag saying whether the inputs fall in
//! the range where the formula is claimed. An out-of-range prediction is
//! still computed and reported.

mod formulas;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

pub use formulas::*;

use crate::error::{Error, Result};
use crate::special::{m_z_solution, DelaySolution, M_Z_MAX_ALPHA};
use crate::ComplexValue as C;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredictorId {
    Landau,
    Selberg,
    Thm2,
    Thm3,
    Thm3Star,
    Cor2,
    Thm10,
    Thm11,
    Thm12,
    SumSmallY,
    SumLargeY,
    SelbergSum,
    Lemma4,
}

impl PredictorId {
    pub const ALL: [PredictorId; 13] = [
        PredictorId::Landau,
        PredictorId::Selberg,
        PredictorId::Thm2,
        PredictorId::Thm3,
        PredictorId::Thm3Star,
        PredictorId::Cor2,
        PredictorId::Thm10,
        PredictorId::Thm11,
        PredictorId::Thm12,
        PredictorId::SumSmallY,
        PredictorId::SumLargeY,
        PredictorId::SelbergSum,
        PredictorId::Lemma4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PredictorId::Landau => "landau",
            PredictorId::Selberg => "selberg",
            PredictorId::Thm2 => "thm2",
            PredictorId::Thm3 => "thm3",
            PredictorId::Thm3Star => "thm3star",
            PredictorId::Cor2 => "cor2",
            PredictorId::Thm10 => "thm10",
            PredictorId::Thm11 => "thm11",
            PredictorId::Thm12 => "thm12",
            PredictorId::SumSmallY => "sum_small_y",
            PredictorId::SumLargeY => "sum_large_y",
            PredictorId::SelbergSum => "selberg_sum",
            PredictorId::Lemma4 => "lemma4",
        }
    }

    /// Predictors of S_z rather than N_k.
    pub fn is_sum(self) -> bool {
        matches!(
            self,
            PredictorId::SumSmallY | PredictorId::SumLargeY | PredictorId::SelbergSum
        )
    }
}

impl fmt::Display for PredictorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PredictorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PredictorId::ALL
            .into_iter()
            .find(|id| id.name() == s.trim())
            .ok_or_else(|| Error::Usage(format!("unknown predictor '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inputs {
    pub x: f64,
    pub y: f64,
    pub k: Option<u32>,
    pub z: Option<C>,
    pub alpha: f64,
    pub beta: f64,
    pub r: Option<f64>,
}

impl Inputs {
    fn new(x: f64, y: f64) -> Self {
        Inputs {
            x,
            y,
            k: None,
            z: None,
            alpha: x.ln() / y.ln(),
            beta: x / y,
            r: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub predictor: PredictorId,
    pub value: C,
    pub terms: Vec<(&'static str, C)>,
    pub valid: bool,
    /// Why the inputs are outside the formula's range, or other remarks.
    pub notes: Vec<String>,
    pub inputs: Inputs,
}

impl Prediction {
    fn new(predictor: PredictorId, inputs: Inputs) -> Self {
        Prediction {
            predictor,
            value: C::new(0.0, 0.0),
            terms: Vec::new(),
            valid: true,
            notes: Vec::new(),
            inputs,
        }
    }

    fn invalid(&mut self, reason: impl Into<String>) {
        self.valid = false;
        self.notes.push(reason.into());
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn term(&mut self, name: &'static str, v: C) {
        self.terms.push((name, v));
    }

    pub fn term_value(&self, name: &str) -> Option<C> {
        self.terms.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

/// The unspecified constants in the validity ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// The small-y k-formula needs α > C loglog x.
    pub c_small_y: f64,
    /// The product form of S_z needs α >= K loglog x.
    pub k_small_y: f64,
    /// r must lie in [κ, 1/κ] for the S_r based predictors.
    pub kappa: f64,
    /// Selberg's formula is claimed for k <= R loglog x.
    pub selberg_r: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            c_small_y: 10.0,
            k_small_y: 10.0,
            kappa: 0.05,
            selberg_r: 10.0,
        }
    }
}

/// Settings plus a cache of m_z solutions keyed by z.
#[derive(Default)]
pub struct Context {
    pub settings: Settings,
    m_cache: Mutex<HashMap<(u64, u64), Arc<DelaySolution>>>,
}

impl Context {
    pub fn new(settings: Settings) -> Self {
        Context {
            settings,
            m_cache: Mutex::new(HashMap::new()),
        }
    }

    /// m_z(α) for Re z > 0, from a cached grid. Past the largest tabulated α
    /// the value is the limit ℓ(z), which m_z has reached to double
    /// precision there.
    pub fn m_z(&self, z: C, alpha: f64) -> Result<C> {
        if alpha > M_Z_MAX_ALPHA {
            return crate::special::ell(z);
        }
        let key = (z.re.to_bits(), z.im.to_bits());
        let cached = self.m_cache.lock().expect("cache lock").get(&key).cloned();
        let sol = match cached {
            Some(sol) if sol.end() >= alpha => sol,
            prev => {
                let end = prev
                    .map(|s| s.end())
                    .unwrap_or(0.0)
                    .max(alpha.ceil() + 1.0)
                    .min(M_Z_MAX_ALPHA);
                let sol = Arc::new(m_z_solution(z, end)?);
                self.m_cache
                    .lock()
                    .expect("cache lock")
                    .insert(key, Arc::clone(&sol));
                sol
            }
        };
        sol.eval(alpha)
    }
}

/// Query for the uniform interface: N_k predictors read `k`, S_z
/// predictors read `z`. `exact_counts` (N_0, N_1, ... for this x and y)
/// feeds the exact S_r into the saddle-point form when available.
#[derive(Debug, Clone, Copy)]
pub struct Query<'a> {
    pub x: f64,
    pub y: f64,
    pub k: u32,
    pub z: C,
    pub exact_counts: Option<&'a [u64]>,
}

pub fn predict(id: PredictorId, q: &Query<'_>, ctx: &Context) -> Result<Prediction> {
    let s = &ctx.settings;
    match id {
        PredictorId::Landau => predict_landau(q.x, q.k),
        PredictorId::Selberg => predict_selberg(q.x, q.k, s),
        PredictorId::Thm2 => predict_thm2(q.x, q.y, q.k),
        PredictorId::Thm3 => predict_thm3(q.x, q.y, q.k),
        PredictorId::Thm3Star => predict_thm3star(q.x, q.y, q.k),
        PredictorId::Cor2 => predict_cor2(q.x, q.y, q.k),
        PredictorId::Thm10 => predict_thm10(q.x, q.y, q.k, s),
        PredictorId::Thm11 => match q.exact_counts {
            Some(counts) => predict_thm11(q.x, q.y, q.k, s, &|r| {
                Ok(horner(counts, C::new(r, 0.0)))
            }),
            None => predict_thm11(q.x, q.y, q.k, s, &|r| {
                predict_sum_large_y(q.x, q.y, C::new(r, 0.0), ctx).map(|p| p.value)
            }),
        },
        PredictorId::Thm12 => predict_thm12(q.x, q.y, q.k, ctx),
        PredictorId::SumSmallY => predict_sum_small_y(q.x, q.y, q.z, s),
        PredictorId::SumLargeY => predict_sum_large_y(q.x, q.y, q.z, ctx),
        PredictorId::SelbergSum => predict_selberg_sum(q.x, q.z),
        PredictorId::Lemma4 => predict_lemma4(q.x, q.y),
    }
}

fn horner(counts: &[u64], z: C) -> C {
    counts
        .iter()
        .rev()
        .fold(C::new(0.0, 0.0), |acc, &n| acc * z + n as f64)
}
