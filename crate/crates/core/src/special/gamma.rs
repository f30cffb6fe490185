//! Complex Γ by the Lanczos approximation (g = 7, nine coefficients) with the
//! reflection formula for Re z < 1/2.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ComplexValue as C;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Non-positive integers, within a few ulps.
pub fn is_gamma_pole(z: C) -> bool {
    if z.im != 0.0 || z.re > 0.5 {
        return false;
    }
    let n = z.re.round();
    (z.re - n).abs() <= 4.0 * f64::EPSILON * n.abs().max(1.0)
}

/// Γ(z). Poles at 0, -1, -2, ... are reported as [`Error::Domain`].
pub fn complex_gamma(z: C) -> Result<C> {
    if is_gamma_pole(z) {
        return Err(Error::Domain(format!("Γ has a pole at {z}")));
    }
    Ok(gamma_unchecked(z))
}

/// 1/Γ(z), entire: exactly 0 at the poles of Γ.
pub fn recip_gamma(z: C) -> C {
    match complex_gamma(z) {
        Ok(g) => g.inv(),
        Err(_) => C::new(0.0, 0.0),
    }
}

/// Γ(x) for real x, same conventions as [`complex_gamma`].
pub fn real_gamma(x: f64) -> Result<f64> {
    complex_gamma(C::new(x, 0.0)).map(|g| g.re)
}

fn gamma_unchecked(z: C) -> C {
    if z.im == 0.0 && z.re.fract() == 0.0 && (1.0..=20.0).contains(&z.re) {
        let n = z.re as u32;
        return C::new((1..n).map(f64::from).product(), 0.0);
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        let s = (z * PI).sin();
        return C::new(PI, 0.0) / (s * gamma_unchecked(C::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut a = C::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * a
}
