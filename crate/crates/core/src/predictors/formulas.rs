use std::sync::OnceLock;

use super::{Context, Inputs, Prediction, PredictorId, Settings};
use crate::error::{Error, Result};
use crate::sieve::{for_each_prime_power_product, PrimeTable};
use crate::special::{buchstab_w, ell, mertens_constant, recip_gamma, selberg_g};
use crate::ComplexValue as C;

/// Largest β = x / y for which the prime-power products are enumerated.
pub const MAX_ENUMERATED_BETA: f64 = 1e6;

fn real(v: f64) -> C {
    C::new(v, 0.0)
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 16.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x = {x} must be >= 16")));
    }
    Ok(())
}

fn check_xy(x: f64, y: f64) -> Result<()> {
    check_x(x)?;
    if !(y >= 2.0 && y <= x) {
        return Err(Error::Domain(format!("y = {y} must lie in [2, x = {x}]")));
    }
    Ok(())
}

/// loglog y, which must be positive.
fn loglog_y(y: f64) -> Result<f64> {
    if !(y >= 3.0) {
        return Err(Error::Domain(format!("loglog y needs y >= 3, got {y}")));
    }
    Ok(y.ln().ln())
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// L^k / k!
fn power_over_factorial(l: f64, k: u32) -> f64 {
    l.powi(k as i32) / factorial(k)
}

fn mertens_c1() -> f64 {
    static C1: OnceLock<f64> = OnceLock::new();
    *C1.get_or_init(mertens_constant)
}

fn with_k(x: f64, y: f64, k: u32) -> Inputs {
    let mut i = Inputs::new(x, y);
    i.k = Some(k);
    i
}

/// x (loglog x)^{k-1} / ((k-1)! log x).
pub fn predict_landau(x: f64, k: u32) -> Result<Prediction> {
    check_x(x)?;
    let mut p = Prediction::new(PredictorId::Landau, with_k(x, x, k));
    if k == 0 {
        p.value = real(1.0);
        p.note("k = 0: only n = 1 has no prime factor");
        return Ok(p);
    }
    let l = x.ln().ln();
    p.value = real(x / x.ln() * power_over_factorial(l, k - 1));
    Ok(p)
}

/// (x / log x) g(1, ρ)/Γ(1 + ρ) (loglog x)^{k-1}/(k-1)!, ρ = (k-1)/loglog x.
pub fn predict_selberg(x: f64, k: u32, s: &Settings) -> Result<Prediction> {
    check_x(x)?;
    if k == 0 {
        return Err(Error::Domain("Selberg's formula needs k >= 1".into()));
    }
    let l = x.ln().ln();
    let rho = f64::from(k - 1) / l;
    let mut inputs = with_k(x, x, k);
    inputs.r = Some(rho);
    let mut p = Prediction::new(PredictorId::Selberg, inputs);
    let factor = selberg_g(real(rho))? * recip_gamma(real(1.0 + rho));
    p.term("g_over_gamma", factor);
    p.value = factor * (x / x.ln() * power_over_factorial(l, k - 1));
    if f64::from(k) > s.selberg_r * l {
        p.invalid(format!("k = {k} exceeds {} loglog x", s.selberg_r));
    }
    Ok(p)
}

/// Σ (1/P - 1/β) over products P <= β of `k` prime powers with distinct
/// primes below y.
pub fn prime_power_product_sum(beta: f64, y: f64, k: u32) -> Result<f64> {
    if beta > MAX_ENUMERATED_BETA {
        return Err(Error::Resource(format!(
            "β = {beta} exceeds the enumeration limit {MAX_ENUMERATED_BETA}"
        )));
    }
    if beta < 2.0 || k == 0 {
        return Ok(0.0);
    }
    let limit = beta.floor() as u64;
    let table = PrimeTable::build(limit)?;
    let primes = table.primes_below(y.ceil() as u64);
    let mut sum = 0.0;
    for_each_prime_power_product(primes, k as usize, limit, &mut |prod| {
        sum += 1.0 / prod as f64 - 1.0 / beta;
    });
    Ok(sum)
}

fn beta_terms(id: PredictorId, x: f64, y: f64, k: u32) -> Result<Prediction> {
    check_xy(x, y)?;
    let beta = x / y;
    if !(beta > 1.0) {
        return Err(Error::Domain(format!("β = x/y = {beta} must exceed 1")));
    }
    let mut p = Prediction::new(id, with_k(x, y, k));
    if y <= x.sqrt() {
        p.invalid("needs y > √x");
    }
    let log_y = y.ln();
    let first = x / log_y * prime_power_product_sum(beta, y, k)?;
    p.term("prime_power_sum", real(first));
    let second = if k == 1 {
        x / (beta * log_y)
    } else {
        x / log_y * power_over_factorial(loglog_y(y)?, k - 1)
    };
    p.term("landau_term", real(second));
    p.value = real(first + second);
    Ok(p)
}

/// (x / log y) Σ_{p^e < β} (1/p^e - 1/β) + x / (β log y).
pub fn predict_lemma4(x: f64, y: f64) -> Result<Prediction> {
    beta_terms(PredictorId::Lemma4, x, y, 1)
}

/// (x / log y) Σ_{P <= β} (1/P - 1/β) + x (loglog y)^{k-1} / ((k-1)! log y),
/// P over products of k prime powers. For k = 1 the second term is the
/// x / (β log y) form of the single-prime case.
pub fn predict_thm2(x: f64, y: f64, k: u32) -> Result<Prediction> {
    if k == 0 {
        return Err(Error::Domain("the β-sum formula needs k >= 1".into()));
    }
    let mut p = beta_terms(PredictorId::Thm2, x, y, k)?;
    if k == 1 {
        p.note("k = 1: second term is x/(β log y)");
    }
    Ok(p)
}

fn buchstab_at(alpha: f64) -> Result<f64> {
    buchstab_w(alpha.max(1.0))
}

/// (x / log x)(loglog β*)^k / k! + (x / log x)(loglog x)^{k-1}/(k-1)!,
/// β* = max(β, 10).
pub fn predict_thm3(x: f64, y: f64, k: u32) -> Result<Prediction> {
    check_xy(x, y)?;
    let mut p = Prediction::new(PredictorId::Thm3, with_k(x, y, k));
    if y <= x.sqrt() {
        p.invalid("needs √x < y <= x");
    }
    let alpha = p.inputs.alpha;
    let w = buchstab_at(alpha)?;
    if k == 0 {
        p.value = real(w * x / y.ln());
        p.note("k = 0: Φ(x, y) main term w(α) x / log y");
        return Ok(p);
    }
    let beta_star = p.inputs.beta.max(10.0);
    let first = x / x.ln() * power_over_factorial(beta_star.ln().ln(), k);
    let second = x / x.ln() * power_over_factorial(x.ln().ln(), k - 1);
    p.term("beta_term", real(first));
    p.term("landau_term", real(second));
    // the rewriting with w(α) x / log y in place of x / log x
    let rewritten = w * x / y.ln() * power_over_factorial(beta_star.ln().ln(), k);
    p.term("w_beta_term", real(rewritten));
    if alpha >= 2.0 {
        p.note("w(α) rewriting is stated for α < 2 only");
    }
    p.value = real(first + second);
    Ok(p)
}

fn w_main_term(id: PredictorId, x: f64, y: f64, k: u32) -> Result<Prediction> {
    check_xy(x, y)?;
    let mut p = Prediction::new(id, with_k(x, y, k));
    let w = buchstab_at(p.inputs.alpha)?;
    p.term("w_alpha", real(w));
    p.value = real(w * x / y.ln() * power_over_factorial(loglog_y(y)?, k));
    Ok(p)
}

/// w(α) (x / log y)(loglog y)^k / k!, for fixed α > 2.
pub fn predict_thm3star(x: f64, y: f64, k: u32) -> Result<Prediction> {
    let mut p = w_main_term(PredictorId::Thm3Star, x, y, k)?;
    if !(p.inputs.alpha > 2.0) {
        p.invalid("needs α > 2");
    }
    Ok(p)
}

/// The same main term as [`predict_thm3star`], in the range
/// √x < y < x exp(-exp(k^{1/k} (loglog x)^{1-1/k})), or for fixed α > 2.
pub fn predict_cor2(x: f64, y: f64, k: u32) -> Result<Prediction> {
    let mut p = w_main_term(PredictorId::Cor2, x, y, k)?;
    if k >= 1 && p.inputs.alpha <= 2.0 {
        let kf = f64::from(k);
        let l = x.ln().ln();
        let log_upper = x.ln() - (kf.powf(1.0 / kf) * l.powf(1.0 - 1.0 / kf)).exp();
        if !(y > x.sqrt() && y.ln() < log_upper) {
            p.invalid("needs √x < y < x exp(-exp(k^{1/k} (loglog x)^{1-1/k})) or α > 2");
        }
    }
    Ok(p)
}

/// ℓ(k / loglog y)(x / log y)(loglog y)^k / k!.
pub fn predict_thm10(x: f64, y: f64, k: u32, s: &Settings) -> Result<Prediction> {
    check_xy(x, y)?;
    let l = loglog_y(y)?;
    let r = f64::from(k) / l;
    let mut inputs = with_k(x, y, k);
    inputs.r = Some(r);
    let mut p = Prediction::new(PredictorId::Thm10, inputs);
    let ell_r = ell(real(r))?;
    p.term("ell_r", ell_r);
    p.value = ell_r * (x / y.ln() * power_over_factorial(l, k));
    if k == 0 {
        p.invalid("needs k >= 1");
    }
    if !(p.inputs.alpha > s.c_small_y * x.ln().ln()) {
        p.invalid(format!("needs α > {} loglog x", s.c_small_y));
    }
    let landau = predict_landau(x, k + 1)?.value;
    p.term("ratio_to_landau_k_plus_1", p.value / landau);
    Ok(p)
}

/// S_r(x, y)(loglog y)^k / (k! e^k) with r = k / loglog y, alongside the
/// variant with loglog y + c₁ in place of loglog y (both in r and in the
/// power). `s_r` supplies S_r(x, y) at real r.
pub fn predict_thm11(
    x: f64,
    y: f64,
    k: u32,
    s: &Settings,
    s_r: &dyn Fn(f64) -> Result<C>,
) -> Result<Prediction> {
    check_xy(x, y)?;
    let l = loglog_y(y)?;
    let c1 = mertens_c1();
    let kf = f64::from(k);
    let r = kf / l;
    let r_shift = kf / (l + c1);
    let mut inputs = with_k(x, y, k);
    inputs.r = Some(r);
    let mut p = Prediction::new(PredictorId::Thm11, inputs);
    let e_k = kf.exp();
    let s_main = s_r(r)?;
    let plain = s_main * (power_over_factorial(l, k) / e_k);
    let s_shift = s_r(r_shift)?;
    let shifted = s_shift * (power_over_factorial(l + c1, k) / e_k);
    p.term("s_r", s_main);
    p.term("loglog_form", plain);
    p.term("s_r_shifted", s_shift);
    p.term("mertens_shifted_form", shifted);
    p.value = plain;
    if k >= 1 && !(s.kappa <= r && r <= 1.0 / s.kappa) {
        p.invalid(format!("needs {} <= r <= {}", s.kappa, 1.0 / s.kappa));
    }
    let lx = x.ln().ln();
    if !(p.inputs.alpha < lx * lx) {
        p.invalid("needs α < (loglog x)^2");
    }
    Ok(p)
}

/// m_r(α) x (loglog y)^k / (k! log y), r = k / loglog y.
pub fn predict_thm12(x: f64, y: f64, k: u32, ctx: &Context) -> Result<Prediction> {
    check_xy(x, y)?;
    let l = loglog_y(y)?;
    let r = f64::from(k) / l;
    let mut inputs = with_k(x, y, k);
    inputs.r = Some(r);
    let mut p = Prediction::new(PredictorId::Thm12, inputs);
    let alpha = p.inputs.alpha;
    let m = if k == 0 {
        p.note("k = 0: m_0 is taken as w(α)");
        real(buchstab_at(alpha)?)
    } else {
        ctx.m_z(real(r), alpha)?
    };
    p.term("m_r_alpha", m);
    p.value = m * (x / y.ln() * power_over_factorial(l, k));
    let kappa = ctx.settings.kappa;
    if k >= 1 && !(kappa < r && r < 1.0 / kappa) {
        p.invalid(format!("needs {kappa} < r < {}", 1.0 / kappa));
    }
    let lx = x.ln().ln();
    if !(alpha <= lx * lx) {
        p.invalid("needs α <= (loglog x)^2");
    }
    Ok(p)
}

fn with_z(x: f64, y: f64, z: C) -> Inputs {
    let mut i = Inputs::new(x, y);
    i.z = Some(z);
    i
}

/// x ∏_{p<y} (1 + (z-1)/p).
pub fn predict_sum_small_y(x: f64, y: f64, z: C, s: &Settings) -> Result<Prediction> {
    check_xy(x, y)?;
    let mut p = Prediction::new(PredictorId::SumSmallY, with_z(x, y, z));
    let table = PrimeTable::build((y.ceil() as u64).max(2))?;
    let w = z - 1.0;
    let mut log_sum = C::new(0.0, 0.0);
    let mut zero = false;
    for &q in table.primes_below(y.ceil() as u64) {
        let f = 1.0 + w / q as f64;
        if f == C::new(0.0, 0.0) {
            zero = true;
            break;
        }
        log_sum += f.ln();
    }
    p.value = if zero {
        C::new(0.0, 0.0)
    } else {
        log_sum.exp() * x
    };
    if z.norm() > 10.0 {
        p.invalid("needs |z| <= 10");
    }
    if !(p.inputs.alpha >= s.k_small_y * x.ln().ln()) {
        p.invalid(format!("needs α >= {} loglog x", s.k_small_y));
    }
    Ok(p)
}

/// m_z(α) x / (log y)^{1-z}.
pub fn predict_sum_large_y(x: f64, y: f64, z: C, ctx: &Context) -> Result<Prediction> {
    check_xy(x, y)?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("needs Re z > 0, got {z}")));
    }
    let mut p = Prediction::new(PredictorId::SumLargeY, with_z(x, y, z));
    let m = ctx.m_z(z, p.inputs.alpha)?;
    p.term("m_z_alpha", m);
    let log_y = real(y.ln());
    p.value = m * x / log_y.powc(1.0 - z);
    Ok(p)
}

/// g(1, z)/Γ(z) · x / (log x)^{1-z}.
pub fn predict_selberg_sum(x: f64, z: C) -> Result<Prediction> {
    check_x(x)?;
    let mut p = Prediction::new(PredictorId::SelbergSum, with_z(x, x, z));
    let factor = selberg_g(z)? * recip_gamma(z);
    p.term("g_over_gamma", factor);
    p.value = factor * x / real(x.ln()).powc(1.0 - z);
    Ok(p)
}
