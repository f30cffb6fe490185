//! Special functions: Γ, quadrature, tabulated functions, the delay-equation
//! engine, Euler products, w, ρ_r and m_z.

mod dde;
mod euler;
mod functions;
mod gamma;
mod grid;
mod quad;

pub use dde::{DelayDESpec, DelaySolution, RealFn, Residual, STEP, STEPS_PER_UNIT};
pub use euler::{
    ell, ell_with, mertens_constant, mertens_constant_with, selberg_g, selberg_g_with,
    EulerProduct, TruncatedSeries, CONSTANT_CUTOFF, DEFAULT_CUTOFF, EULER_GAMMA, PRIME_ZETA_2,
};
pub use functions::{
    buchstab_solution, buchstab_w, m_r_convolution, m_r_convolution_with, m_z_closed,
    m_z_grid, m_z_residual, m_z_solution, rho_r, rho_r_integral, RhoTable,
    BUCHSTAB_TABLE_END, M_Z_MAX_ALPHA, RESIDUAL_SKIP, RESIDUAL_TOLERANCE, SERIES_SPLIT,
};
pub use gamma::{complex_gamma, is_gamma_pole, real_gamma, recip_gamma};
pub use grid::{fmt17, GridFunction};
pub use quad::{gl20, gl6, tanh_sinh, GaussLegendre};
