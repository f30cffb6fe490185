//! Marching solver for the linear delay equations behind w, ρ_r and m_z.
//!
//! Every equation handled here can be written as
//!
//! ```text
//! (E(α) f(α))' = K(α) f(α - 1),   α > a + 1,
//! ```
//!
//! with a closed-form seed `f` on `(a, a + 1]`. Integrating over one grid
//! cell gives the update `E f (α + h) = E f (α) + ∫_α^{α+h} K(u) f(u - 1) du`,
//! which is what the marcher does. The delayed term is taken from the seed
//! or, inside the first marched unit interval, recomputed exactly from the
//! seed; further out it comes from cubic interpolation of earlier nodes,
//! with stencils that stay inside one unit interval. Cells whose delayed
//! argument sits just right of a breakpoint, where the solution has a
//! fractional-power singularity, are integrated with tanh-sinh; all others
//! with 6-point Gauss–Legendre.

use super::grid::{lagrange4, GridFunction};
use super::quad::{gl6, tanh_sinh};
use crate::error::{Error, Result};
use crate::ComplexValue as C;

pub const STEPS_PER_UNIT: usize = 1024;
pub const STEP: f64 = 1.0 / STEPS_PER_UNIT as f64;
const NEAR_CELLS: usize = 4;
const TS_TOL: f64 = 1e-14;

pub type RealFn = Box<dyn Fn(f64) -> C + Send + Sync>;

pub struct DelayDESpec {
    /// Left end `a` of the seed interval `(a, a + 1]`.
    pub seed_start: f64,
    /// `t ↦ f(a + t)` for `0 < t <= 1`, exact.
    pub seed: RealFn,
    /// E(α).
    pub factor: RealFn,
    /// K(α).
    pub kernel: RealFn,
}

/// Marched solution on `[a + 1, end]` together with its seed.
pub struct DelaySolution {
    spec: DelayDESpec,
    /// E(α_k) f(α_k) at α_k = a + 1 + k h.
    accum: Vec<C>,
    values: Vec<C>,
}

impl DelaySolution {
    pub fn solve(spec: DelayDESpec, end: f64) -> Result<Self> {
        let first = spec.seed_start + 1.0;
        if !(end >= first) || !end.is_finite() {
            return Err(Error::Domain(format!(
                "delay equation end {end} must be >= {first}"
            )));
        }
        let cells = ((end - first) / STEP - 1e-9).ceil().max(0.0) as usize;
        let f0 = (spec.seed)(1.0);
        let mut sol = DelaySolution {
            accum: Vec::with_capacity(cells + 1),
            values: Vec::with_capacity(cells + 1),
            spec,
        };
        sol.accum.push((sol.spec.factor)(first) * f0);
        sol.values.push(f0);
        for k in 0..cells {
            let next = sol.accum[k] + sol.partial(k, STEP);
            let alpha = sol.node(k + 1);
            sol.accum.push(next);
            sol.values.push(next / (sol.spec.factor)(alpha));
        }
        Ok(sol)
    }

    pub fn seed_start(&self) -> f64 {
        self.spec.seed_start
    }

    pub fn end(&self) -> f64 {
        self.node(self.values.len() - 1)
    }

    /// α_k = a + 1 + k h.
    pub fn node(&self, k: usize) -> f64 {
        self.spec.seed_start + 1.0 + k as f64 * STEP
    }

    /// Values at the marched nodes α_k.
    pub fn marched_values(&self) -> &[C] {
        &self.values
    }

    pub fn seed_value(&self, t: f64) -> C {
        (self.spec.seed)(t)
    }

    pub fn factor(&self, alpha: f64) -> C {
        (self.spec.factor)(alpha)
    }

    pub fn kernel(&self, alpha: f64) -> C {
        (self.spec.kernel)(alpha)
    }

    /// f(α) for a <= α <= end.
    pub fn eval(&self, alpha: f64) -> Result<C> {
        let a = self.spec.seed_start;
        if !(alpha >= a) {
            return Err(Error::Domain(format!("{alpha} is below the seed start {a}")));
        }
        if alpha <= a + 1.0 {
            return Ok((self.spec.seed)(alpha - a));
        }
        let end = self.end();
        if alpha > end + 1e-12 {
            return Err(Error::Domain(format!("{alpha} beyond the solved range (end {end})")));
        }
        let pos = ((alpha - a - 1.0) / STEP).max(0.0);
        let k = (pos.floor() as usize).min(self.values.len() - 1);
        let s = (alpha - self.node(k)).max(0.0);
        Ok(self.marched_value(k, s))
    }

    /// f(α_k + s), 0 <= s <= h.
    fn marched_value(&self, k: usize, s: f64) -> C {
        if s == 0.0 || k + 1 >= self.values.len() {
            return self.values[k];
        }
        if k < STEPS_PER_UNIT {
            let alpha = self.node(k) + s;
            (self.accum[k] + self.partial(k, s)) / (self.spec.factor)(alpha)
        } else {
            self.interpolate(k, s / STEP)
        }
    }

    fn interpolate(&self, k: usize, frac: f64) -> C {
        let n = self.values.len();
        let piece = k / STEPS_PER_UNIT;
        let lo = piece * STEPS_PER_UNIT;
        let hi = ((piece + 1) * STEPS_PER_UNIT).min(n - 1);
        if hi - lo < 3 {
            let (a, b) = (self.values[k], self.values[k + 1]);
            return a + (b - a) * frac;
        }
        let s = k.saturating_sub(1).clamp(lo, hi - 3);
        lagrange4(&self.values[s..s + 4], (k - s) as f64 + frac)
    }

    /// ∫_{α_k}^{α_k + d} K(u) f(u - 1) du for 0 < d <= h.
    fn partial(&self, k: usize, d: f64) -> C {
        let base = self.node(k);
        let integrand = |s: f64| -> C {
            let delayed = if k < STEPS_PER_UNIT {
                (self.spec.seed)(k as f64 * STEP + s)
            } else {
                self.marched_value(k - STEPS_PER_UNIT, s)
            };
            (self.spec.kernel)(base + s) * delayed
        };
        if k < 2 * STEPS_PER_UNIT && k % STEPS_PER_UNIT < NEAR_CELLS {
            tanh_sinh(d, TS_TOL, |l, _| integrand(l))
        } else {
            gl6().integrate(0.0, d, integrand)
        }
    }

    /// ∫ f over [a + 1, upper], cell by cell on the marching grid.
    pub fn integrate_marched(&self, upper: f64) -> Result<C> {
        let first = self.spec.seed_start + 1.0;
        if upper < first || upper > self.end() + 1e-12 {
            return Err(Error::Domain(format!("integration bound {upper} outside the solution")));
        }
        let mut total = C::new(0.0, 0.0);
        let mut k = 0;
        while k + 1 < self.values.len() && self.node(k) < upper {
            let d = (upper - self.node(k)).min(STEP);
            total += if k < NEAR_CELLS {
                tanh_sinh(d, TS_TOL, |l, _| self.marched_value(k, l))
            } else {
                gl6().integrate(0.0, d, |s| self.marched_value(k, s))
            };
            k += 1;
        }
        Ok(total)
    }

    /// Tabulation on the marching grid, optionally preceded by the seed
    /// nodes `a, a + h, ...` (the seed must then be finite at `a`).
    pub fn grid(&self, include_seed: bool) -> Result<GridFunction> {
        if !include_seed {
            return GridFunction::with_pieces(
                self.node(0),
                STEP,
                self.values.clone(),
                Some(STEPS_PER_UNIT),
            );
        }
        let mut values: Vec<C> = (0..STEPS_PER_UNIT)
            .map(|i| (self.spec.seed)(i as f64 * STEP))
            .collect();
        values.extend_from_slice(&self.values);
        GridFunction::with_pieces(self.spec.seed_start, STEP, values, Some(STEPS_PER_UNIT))
    }

    /// Largest |(E f)'(α_k) − K(α_k) f(α_k − 1)| over marched nodes, with
    /// (E f)' from the 5-point central difference of the node values.
    /// Nodes whose difference stencil would cross a unit breakpoint, or that
    /// lie within `skip` cells after one, are left out.
    pub fn residual(&self, skip: usize) -> Residual {
        let n = self.values.len();
        let mut worst = Residual {
            max_abs: 0.0,
            at: f64::NAN,
            checked: 0,
        };
        let ef: Vec<C> = (0..n).map(|k| self.values[k] * (self.spec.factor)(self.node(k))).collect();
        for k in 2..n.saturating_sub(2) {
            let r = k % STEPS_PER_UNIT;
            if r < 2 + skip || r > STEPS_PER_UNIT - 2 {
                continue;
            }
            let deriv = (ef[k - 2] - ef[k - 1] * 8.0 + ef[k + 1] * 8.0 - ef[k + 2]) / (12.0 * STEP);
            let delayed = if k < STEPS_PER_UNIT {
                (self.spec.seed)(k as f64 * STEP)
            } else {
                self.values[k - STEPS_PER_UNIT]
            };
            let res = (deriv - (self.spec.kernel)(self.node(k)) * delayed).norm();
            worst.checked += 1;
            if res > worst.max_abs {
                worst.max_abs = res;
                worst.at = self.node(k);
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Residual {
    pub max_abs: f64,
    pub at: f64,
    pub checked: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn dickman_first_interval() {
        // u ρ'(u) = -ρ(u - 1) with ρ = 1 on (0, 1]
        let spec = DelayDESpec {
            seed_start: 0.0,
            seed: Box::new(|_| real(1.0)),
            factor: Box::new(|_| real(1.0)),
            kernel: Box::new(|u| real(-1.0 / u)),
        };
        let sol = DelaySolution::solve(spec, 4.0).unwrap();
        for u in [1.0, 1.3, 1.5, 2.0] {
            assert!((sol.eval(u).unwrap().re - (1.0 - u.ln())).abs() < 1e-14, "{u}");
        }
        // ρ(3) = 0.04860838334150..., ρ(4) = 0.00491092053...
        assert!((sol.eval(3.0).unwrap().re - 0.048_608_388_291_131_26).abs() < 1e-11);
        assert!((sol.eval(4.0).unwrap().re - 0.004_910_925_647_760_83).abs() < 1e-11);
        assert!(sol.residual(0).max_abs < 1e-9);
    }

    #[test]
    fn range_errors() {
        let spec = DelayDESpec {
            seed_start: 1.0,
            seed: Box::new(|t| real(1.0 / (1.0 + t))),
            factor: Box::new(real),
            kernel: Box::new(|_| real(1.0)),
        };
        let sol = DelaySolution::solve(spec, 3.0).unwrap();
        assert!(sol.eval(0.5).is_err());
        assert!(sol.eval(3.5).is_err());
        assert!((sol.eval(1.5).unwrap().re - 2.0 / 3.0).abs() < 1e-15);
    }
}
