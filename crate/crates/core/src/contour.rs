//! Cauchy coefficient extraction of N_k(x, y) from S_z(x, y) sampled on a
//! circle |z| = r at m equally spaced nodes.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::sieve::{count_nk, eval_counts};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub radius: f64,
    pub points: usize,
    pub k_max: usize,
}

impl ContourSpec {
    pub fn new(radius: f64, points: usize, k_max: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Spec(format!("radius must be positive, got {radius}")));
        }
        if !points.is_power_of_two() {
            return Err(Error::Spec(format!("m = {points} is not a power of two")));
        }
        if points <= k_max {
            return Err(Error::Spec(format!("m = {points} must exceed k_max = {k_max}")));
        }
        Ok(ContourSpec { radius, points, k_max })
    }
}

/// r = k/loglog y clamped to [0.05, 10]; 0.5 for k = 0.
pub fn radius_policy(k: u32, y: f64) -> f64 {
    if k == 0 {
        return 0.5;
    }
    (f64::from(k) / y.ln().ln()).clamp(0.05, 10.0)
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub radius: f64,
    pub points: usize,
    /// Real parts of the extracted coefficients, k = 0..=k_max.
    pub counts: Vec<f64>,
    /// Largest |imaginary part| over the extracted coefficients.
    pub imag_residue: f64,
    pub max_abs_s: f64,
}

impl Extraction {
    /// max_j |S(z_j)| / (r^k |N_k|), or infinity when N_k = 0.
    pub fn conditioning(&self, k: usize, n_k: f64) -> f64 {
        if n_k == 0.0 {
            return f64::INFINITY;
        }
        self.max_abs_s / (self.radius.powi(k as i32) * n_k.abs())
    }
}

/// Node j of the circle, r e^{2πij/m}.
pub fn node(radius: f64, points: usize, j: usize) -> Complex64 {
    let theta = std::f64::consts::TAU * j as f64 / points as f64;
    Complex64::from_polar(radius, theta)
}

pub fn extract_counts<F>(spec: &ContourSpec, evaluator: F) -> Result<Extraction>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let ContourSpec { radius, points, k_max } = *spec;
    let mut samples = (0..points)
        .into_par_iter()
        .map(|j| evaluator(node(radius, points, j)))
        .collect::<Result<Vec<_>>>()?;
    let max_abs_s = samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
    FftPlanner::new().plan_fft_forward(points).process(&mut samples);
    let scale = points as f64;
    let mut counts = Vec::with_capacity(k_max + 1);
    let mut imag_residue = 0.0f64;
    for (k, s) in samples.iter().take(k_max + 1).enumerate() {
        let c = s / (scale * radius.powi(k as i32));
        counts.push(c.re);
        imag_residue = imag_residue.max(c.im.abs());
    }
    Ok(Extraction { radius, points, counts, imag_residue, max_abs_s })
}

/// Extraction from the exact S_z(x, y); k_max is the observed max ω_y.
pub fn extract_exact(x: u64, y: u64, radius: f64, points: usize) -> Result<(Extraction, Vec<u64>)> {
    let cv = count_nk(x, y)?;
    let spec = ContourSpec::new(radius, points, cv.k_max())?;
    let ex = extract_counts(&spec, |z| Ok(eval_counts(&cv, z)))?;
    Ok((ex, cv.counts))
}
