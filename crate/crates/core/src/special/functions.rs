//! Buchstab's w, the generalized Dickman ρ_r and m_z(α).

use std::sync::OnceLock;

use super::dde::{DelayDESpec, DelaySolution, Residual};
use super::euler::{selberg_g, EULER_GAMMA};
use super::gamma::{real_gamma, recip_gamma};
use super::grid::GridFunction;
use super::quad::{gl20, tanh_sinh};
use crate::error::{Error, Result};
use crate::ComplexValue as C;

/// Past this point w(α) is e^{-γ} to double precision.
pub const BUCHSTAB_TABLE_END: f64 = 100.0;
pub const M_Z_MAX_ALPHA: f64 = 100.0;
/// Residual bound for the marched m_z grids.
pub const RESIDUAL_TOLERANCE: f64 = 1e-7;
/// Cells after each breakpoint left out of the residual check; the
/// difference formula cannot resolve the fractional-power terms there.
pub const RESIDUAL_SKIP: usize = 24;
/// The series for ∫ τ^{z-1}(1+τ)^{-z} is used on [0, SERIES_SPLIT].
pub const SERIES_SPLIT: f64 = 0.5;

fn real(x: f64) -> C {
    C::new(x, 0.0)
}

pub fn buchstab_solution() -> &'static DelaySolution {
    static W: OnceLock<DelaySolution> = OnceLock::new();
    W.get_or_init(|| {
        let spec = DelayDESpec {
            seed_start: 1.0,
            seed: Box::new(|t| real(1.0 / (1.0 + t))),
            factor: Box::new(real),
            kernel: Box::new(|_| real(1.0)),
        };
        DelaySolution::solve(spec, BUCHSTAB_TABLE_END).expect("valid range")
    })
}

/// w(α): 1/α on [1, 2] and (α w(α))' = w(α - 1) beyond.
pub fn buchstab_w(alpha: f64) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(Error::Domain(format!("w(α) needs α >= 1, got {alpha}")));
    }
    if alpha <= 2.0 {
        return Ok(1.0 / alpha);
    }
    if alpha > BUCHSTAB_TABLE_END {
        return Ok((-EULER_GAMMA).exp());
    }
    buchstab_solution().eval(alpha).map(|v| v.re)
}

/// ρ_r marched from its seed u^{r-1}/Γ(r) on (0, 1].
pub struct RhoTable {
    r: f64,
    inv_gamma: f64,
    solution: DelaySolution,
}

impl RhoTable {
    pub fn new(r: f64, u_max: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("ρ_r needs r > 0, got {r}")));
        }
        let inv_gamma = 1.0 / real_gamma(r)?;
        let spec = DelayDESpec {
            seed_start: 0.0,
            seed: Box::new(move |t| real(t.powf(r - 1.0) * inv_gamma)),
            factor: Box::new(move |u| real(u.powf(1.0 - r))),
            kernel: Box::new(move |u| real(-r * u.powf(-r))),
        };
        let solution = DelaySolution::solve(spec, u_max.max(2.0))?;
        Ok(RhoTable {
            r,
            inv_gamma,
            solution,
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        if !(u > 0.0) {
            return Err(Error::Domain(format!("ρ_r(u) needs u > 0, got {u}")));
        }
        self.solution.eval(u).map(|v| v.re)
    }

    /// ∫_0^cutoff ρ_r, the first unit in closed form.
    pub fn integral(&self, cutoff: f64) -> Result<f64> {
        if !(cutoff > 0.0) {
            return Err(Error::Domain(format!("cutoff must be > 0, got {cutoff}")));
        }
        if cutoff <= 1.0 {
            return Ok(cutoff.powf(self.r) * self.inv_gamma / self.r);
        }
        let head = self.inv_gamma / self.r;
        Ok(head + self.solution.integrate_marched(cutoff)?.re)
    }

    pub fn solution(&self) -> &DelaySolution {
        &self.solution
    }

    pub fn grid(&self) -> Result<GridFunction> {
        self.solution.grid(false)
    }
}

pub fn rho_r(u: f64, r: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("ρ_r(u) needs u > 0, got {u}")));
    }
    RhoTable::new(r, u.max(2.0))?.eval(u)
}

pub fn rho_r_integral(r: f64, cutoff: f64) -> Result<f64> {
    RhoTable::new(r, cutoff.max(2.0))?.integral(cutoff)
}

/// ∫_0^t τ^{z-1} (1 + τ)^{-z} dτ for Re z > 0.
fn singular_integral(t: f64, z: C) -> C {
    if t <= 0.0 {
        return real(0.0);
    }
    let ts = t.min(SERIES_SPLIT);
    // (1+τ)^{-z} = Σ_j binom(-z, j) τ^j, integrated term by term
    let mut coef = real(1.0);
    let mut sum = (z).inv();
    for j in 1..2000 {
        let jf = j as f64;
        coef = coef * (-(z + (jf - 1.0)) / jf) * ts;
        let term = coef / (z + jf);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && jf > z.norm() {
            break;
        }
    }
    let mut total = real(ts).powc(z) * sum;
    if t > SERIES_SPLIT {
        total += gl20().integrate(SERIES_SPLIT, t, |s| {
            let tau = SERIES_SPLIT + s;
            real(tau).powc(z - 1.0) * real(1.0 + tau).powc(-z)
        });
    }
    total
}

fn check_re_positive(z: C) -> Result<()> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(Error::Domain(format!("m_z needs Re z > 0, got {z}")));
    }
    Ok(())
}

/// t ↦ m_z(1 + t) on [0, 1] from the closed form.
fn m_seed(z: C) -> Result<impl Fn(f64) -> C + Send + Sync + 'static> {
    check_re_positive(z)?;
    let s = selberg_g(z)? * recip_gamma(z);
    Ok(move |t: f64| {
        let alpha = real(1.0 + t);
        s * alpha.powc(z - 1.0) * (1.0 + (1.0 - z) * singular_integral(t, z))
    })
}

/// m_z(α) on [1, 2]:
/// g(1,z)/Γ(z) · α^{z-1} (1 + (1-z) ∫_1^α u^{-z} (u-1)^{z-1} du).
pub fn m_z_closed(alpha: f64, z: C) -> Result<C> {
    if !(1.0..=2.0).contains(&alpha) {
        return Err(Error::Domain(format!("closed form needs 1 <= α <= 2, got {alpha}")));
    }
    Ok(m_seed(z)?(alpha - 1.0))
}

/// m_z on [1, alpha_max], as a solution object that evaluates exactly on the
/// first two unit intervals.
pub fn m_z_solution(z: C, alpha_max: f64) -> Result<DelaySolution> {
    if !(1.0..=M_Z_MAX_ALPHA).contains(&alpha_max) {
        return Err(Error::Domain(format!(
            "alpha_max must lie in [1, {M_Z_MAX_ALPHA}], got {alpha_max}"
        )));
    }
    let seed = m_seed(z)?;
    let one_minus_z = 1.0 - z;
    let spec = DelayDESpec {
        seed_start: 1.0,
        seed: Box::new(seed),
        factor: Box::new(move |a| real(a).powc(one_minus_z)),
        kernel: Box::new(move |a| one_minus_z * real(a).powc(-z)),
    };
    let sol = DelaySolution::solve(spec, alpha_max.max(2.0))?;
    let res = sol.residual(RESIDUAL_SKIP);
    if res.max_abs > RESIDUAL_TOLERANCE {
        log::warn!(
            "m_z grid for z = {z}: residual {:.3e} at α = {} exceeds {RESIDUAL_TOLERANCE:e}",
            res.max_abs,
            res.at
        );
    }
    Ok(sol)
}

/// Tabulated m_z on [1, alpha_max] with step 2^-10.
pub fn m_z_grid(z: C, alpha_max: f64) -> Result<GridFunction> {
    m_z_solution(z, alpha_max)?.grid(true)
}

pub fn m_z_residual(sol: &DelaySolution) -> Residual {
    sol.residual(RESIDUAL_SKIP)
}

/// m_r(α) = C(r) (∫_0^{α-1} w(α - t) ρ_r(t) dt + ρ_r(α)).
pub fn m_r_convolution(alpha: f64, r: f64) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(Error::Domain(format!("α must be >= 1, got {alpha}")));
    }
    let rho = RhoTable::new(r, alpha.max(2.0))?;
    m_r_convolution_with(alpha, &rho)
}

/// [`m_r_convolution`] with a prebuilt ρ_r table covering α.
pub fn m_r_convolution_with(alpha: f64, rho: &RhoTable) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(Error::Domain(format!("α must be >= 1, got {alpha}")));
    }
    if alpha > BUCHSTAB_TABLE_END {
        return Err(Error::Domain(format!("α must be <= {BUCHSTAB_TABLE_END}")));
    }
    let r = rho.r();
    let c_r = selberg_g(real(r))?.re;
    let upper = alpha - 1.0;
    // break at the kinks of ρ_r (integers) and of w(α - t) (α - t integer)
    let mut cuts: Vec<f64> = vec![0.0, upper];
    let mut k = 1.0;
    while k < upper {
        cuts.push(k);
        cuts.push(alpha - 1.0 - k);
        k += 1.0;
    }
    cuts.retain(|&c| (0.0..=upper).contains(&c));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let w = buchstab_solution();
    let mut integral = 0.0;
    let mut failure = None;
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let piece = tanh_sinh(hi - lo, 1e-13, |dl, dr| {
            let t = if dl <= dr { lo + dl } else { hi - dr };
            let rho_t = if lo == 0.0 && t <= 1.0 {
                dl.powf(r - 1.0) / real_gamma(r).unwrap_or(f64::INFINITY)
            } else {
                match rho.eval(t) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            };
            let arg = if dr <= dl { alpha - hi + dr } else { alpha - t };
            let w_val = if arg <= 2.0 {
                1.0 / arg
            } else {
                w.eval(arg).map(|v| v.re).unwrap_or(f64::NAN)
            };
            real(w_val * rho_t)
        });
        integral += piece.re;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(c_r * (integral + rho.eval(alpha)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buchstab_examples() {
        assert_eq!(buchstab_w(1.5).unwrap(), 2.0 / 3.0);
        assert_eq!(buchstab_w(2.0).unwrap(), 0.5);
        assert!(buchstab_w(0.99).is_err());
        // on [2, 3]: α w(α) = 1 + ln(α - 1)
        for a in [2.25, 2.5, 3.0] {
            let want = (1.0 + (a - 1.0f64).ln()) / a;
            assert!((buchstab_w(a).unwrap() - want).abs() < 1e-14, "{a}");
        }
        assert!((buchstab_w(40.0).unwrap() - (-EULER_GAMMA).exp()).abs() < 1e-8);
        assert!(buchstab_solution().residual(RESIDUAL_SKIP).max_abs < 1e-9);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_r(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(rho_r(0.25, 1.0).unwrap(), 1.0);
        assert!((rho_r(2.0, 1.0).unwrap() - (1.0 - 2f64.ln())).abs() < 1e-14);
        assert!(rho_r(0.0, 1.0).is_err());
        assert!(rho_r(1.0, 0.0).is_err());
        // ρ_r(u) = u^{r-1}/Γ(r) on (0, 1]
        let g = real_gamma(0.5).unwrap();
        assert!((rho_r(0.36, 0.5).unwrap() - 0.6f64.recip() / g).abs() < 1e-14);
    }

    #[test]
    fn rho_integrals() {
        assert_eq!(rho_r_integral(1.0, 1.0).unwrap(), 1.0);
        for r in [0.5, 1.0, 2.0] {
            let got = rho_r_integral(r, 40.0).unwrap();
            assert!((got - (r * EULER_GAMMA).exp()).abs() < 1e-4, "r={r} got {got}");
        }
    }

    #[test]
    fn closed_form_examples() {
        for z in [C::new(0.5, 0.0), C::new(2.0, 1.0), C::new(0.1, -3.0)] {
            let want = selberg_g(z).unwrap() * recip_gamma(z);
            assert!((m_z_closed(1.0, z).unwrap() - want).norm() < 1e-15);
        }
        for a in [1.0, 1.3, 1.5, 1.77, 2.0] {
            assert!((m_z_closed(a, real(1.0)).unwrap() - 1.0).norm() < 1e-12);
        }
        assert!(m_z_closed(1.5, C::new(0.0, 1.0)).is_err());
        assert!(m_z_closed(2.5, real(0.5)).is_err());
    }

    #[test]
    fn singular_integral_against_quadrature() {
        for z in [C::new(0.3, 0.0), C::new(1.7, 2.0), C::new(5.0, -1.0), C::new(0.02, 0.0)] {
            for t in [0.1, 0.5, 0.9, 1.0] {
                let got = singular_integral(t, z);
                // t^z/z plus the regular remainder ∫ τ^{z-1}((1+τ)^{-z} - 1)
                let rest = tanh_sinh(t, 1e-15, |a, _| {
                    if a < 1e-200 {
                        return real(0.0);
                    }
                    real(a).powc(z - 1.0) * (real(1.0 + a).powc(-z) - 1.0)
                });
                let want = real(t).powc(z) / z + rest;
                assert!((got - want).norm() <= 1e-11 * want.norm(), "z={z} t={t} got={got} want={want}");
            }
        }
    }

    #[test]
    fn w_is_m_at_zero_in_structure() {
        // same marcher with z = 0 and the seed 1/α reproduces w
        let spec = DelayDESpec {
            seed_start: 1.0,
            seed: Box::new(|t| real(1.0 / (1.0 + t))),
            factor: Box::new(|a| real(a).powc(real(1.0))),
            kernel: Box::new(|a| real(a).powc(real(0.0))),
        };
        let sol = DelaySolution::solve(spec, 6.0).unwrap();
        for a in [2.5, 3.3, 5.9] {
            assert!((sol.eval(a).unwrap().re - buchstab_w(a).unwrap()).abs() < 1e-14);
        }
    }
}
