//! Optimal condition widths.
//!
//! Two criteria are solved in closed form:
//!
//! * zero mean density error in the small-`k_H` limit, i.e. `F = 1`, a cubic
//!   without quadratic term
//!   `(ρ''/2)·C₂·σ³ + ρ·C₁·σ − 1/√(2π) = 0`;
//! * zero mean condition error, `FΔP − ΔF = 0`, whose positive root is
//!   `σ₄ = √(2C₁ρd³ / (C₂(24 − ρ''d³)))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;
/// Below this `|ρ''|` the cubic degenerates to its linear part.
const LINEAR_CUTOFF: f64 = 1e-12;
/// Imaginary-part threshold for calling a root real.
pub const REAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CubicSolution {
    /// `Δ = −ρ''((27/8π)ρ''C₂² + 2ρ³C₁³C₂)`; positive means three real roots.
    pub discriminant: f64,
    /// `ρ''₀ = −(16π/27)(C₁³/C₂)ρ³`, where the discriminant changes sign.
    pub rho2_critical: f64,
    /// `[σ₁, σ₂, σ₃]`, or `[σ₀]` when `ρ'' = 0`.
    pub roots: Vec<Complex64>,
    /// Real parts of roots that are real and positive, ascending.
    pub real_positive_roots: Vec<f64>,
}

impl CubicSolution {
    pub fn real_root_count(&self) -> usize {
        self.roots.iter().filter(|z| z.im.abs() < REAL_TOL).count()
    }
}

/// Coefficients `(a₃, a₁, a₀)` of the density-error cubic.
pub fn cubic_coefficients(rho_c: f64, rho2_c: f64, c1: f64, c2: f64) -> (f64, f64, f64) {
    (0.5 * rho2_c * c2, rho_c * c1, -1.0 / SQRT_2PI)
}

pub fn cubic_residual(rho_c: f64, rho2_c: f64, c1: f64, c2: f64, sigma: Complex64) -> Complex64 {
    let (a3, a1, a0) = cubic_coefficients(rho_c, rho2_c, c1, c2);
    sigma * (sigma * sigma * a3 + a1) + a0
}

pub fn discriminant(rho_c: f64, rho2_c: f64, c1: f64, c2: f64) -> f64 {
    // Adding zero turns a −0 at ρ'' = 0 into +0.
    -rho2_c * (27.0 / (8.0 * PI) * rho2_c * c2 * c2 + 2.0 * rho_c.powi(3) * c1.powi(3) * c2) + 0.0
}

pub fn critical_curvature(rho_c: f64, c1: f64, c2: f64) -> f64 {
    -(16.0 * PI / 27.0) * c1.powi(3) / c2 * rho_c.powi(3)
}

/// `σ₀ = 1/(√(2π)·C₁·ρ)`, the root when `ρ'' = 0`.
pub fn sigma0(rho_c: f64, c1: f64) -> f64 {
    1.0 / (SQRT_2PI * c1 * rho_c)
}

/// First-order approximation of `σ₁` for small positive `ρ''`.
pub fn sigma1_small_curvature(rho_c: f64, rho2_c: f64, c1: f64, c2: f64) -> f64 {
    sigma0(rho_c, c1) - c2 * rho2_c / (2.0 * SQRT_2PI.powi(3) * c1.powi(4) * rho_c.powi(4))
}

/// Solves the density-error cubic with the closed-form Cardano roots.
///
/// `A` is the cube root of `(1 + √(1 − ρ''₀/ρ''))/(√(2π)C₂ρ'')`. When the
/// radicand is nonnegative the real cube root is used, so `σ₁` is the real
/// root; otherwise the square root is imaginary and `A` is the principal
/// complex cube root. Each root receives two Newton polishing steps.
pub fn pdf_error_sigma(rho_c: f64, rho2_c: f64, c1: f64, c2: f64) -> Result<CubicSolution> {
    if !(rho_c > 0.0) {
        return Err(Error::NonPositiveDensity(rho_c));
    }
    if !(c1 > 0.0 && c1 <= 1.0) || !(c2 > 0.0 && c2 <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "truncation factors must lie in (0, 1], got C1 = {c1}, C2 = {c2}"
        )));
    }
    let disc = discriminant(rho_c, rho2_c, c1, c2);
    let rho2_critical = critical_curvature(rho_c, c1, c2);

    let roots = if rho2_c.abs() < LINEAR_CUTOFF {
        vec![Complex64::new(sigma0(rho_c, c1), 0.0)]
    } else {
        let b = 2.0 * c1 * rho_c / (3.0 * c2 * rho2_c);
        let pre = 1.0 / (SQRT_2PI * c2 * rho2_c);
        let radicand = 1.0 - rho2_critical / rho2_c;
        let a = if radicand >= 0.0 {
            Complex64::new((pre * (1.0 + radicand.sqrt())).cbrt(), 0.0)
        } else {
            (Complex64::new(1.0, (-radicand).sqrt()) * pre).powf(1.0 / 3.0)
        };
        let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let omega_bar = omega.conj();
        let b_over_a = b / a;
        [
            a - b_over_a,
            omega * a - omega_bar * b_over_a,
            omega_bar * a - omega * b_over_a,
        ]
        .into_iter()
        .map(|z| polish(rho_c, rho2_c, c1, c2, z))
        .collect()
    };

    let mut real_positive_roots: Vec<f64> = roots
        .iter()
        .filter(|z| z.im.abs() < REAL_TOL && z.re > 0.0)
        .map(|z| z.re)
        .collect();
    real_positive_roots.sort_by(f64::total_cmp);

    Ok(CubicSolution {
        discriminant: disc,
        rho2_critical,
        roots,
        real_positive_roots,
    })
}

fn polish(rho_c: f64, rho2_c: f64, c1: f64, c2: f64, mut z: Complex64) -> Complex64 {
    let (a3, a1, _) = cubic_coefficients(rho_c, rho2_c, c1, c2);
    for _ in 0..2 {
        let p = cubic_residual(rho_c, rho2_c, c1, c2, z);
        let dp = z * z * (3.0 * a3) + a1;
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if cubic_residual(rho_c, rho2_c, c1, c2, next).norm() < p.norm() {
            z = next;
        } else {
            break;
        }
    }
    // Real roots computed through complex arithmetic carry rounding noise
    // in the imaginary part.
    if z.im.abs() < 1e-12 * z.re.abs().max(1.0) {
        z.im = 0.0;
    }
    z
}

/// Width cancelling the mean condition error. Fails at or beyond the
/// asymptote `ρ'' = 24/d³`.
pub fn condition_error_sigma(rho_c: f64, rho2_c: f64, d: f64, c1: f64, c2: f64) -> Result<f64> {
    if !(rho_c > 0.0) {
        return Err(Error::NonPositiveDensity(rho_c));
    }
    if !(d > 0.0) {
        return Err(Error::NonPositiveInput("d"));
    }
    let curv = rho2_c * d.powi(3);
    if !(curv < 24.0) {
        return Err(Error::NoSolution(curv));
    }
    Ok((2.0 * c1 * rho_c * d.powi(3) / (c2 * (24.0 - curv))).sqrt())
}

/// One row of the bandwidth-versus-curvature table.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Row {
    pub rho2: f64,
    pub solution: CubicSolution,
    pub sigma4: Option<f64>,
}

/// Bandwidths from both criteria over a range of curvatures.
pub fn figure1_data(
    rho_c: f64,
    d: f64,
    c1: f64,
    c2: f64,
    rho2_range: &[f64],
) -> Result<Vec<Figure1Row>> {
    rho2_range
        .iter()
        .map(|&rho2| {
            Ok(Figure1Row {
                rho2,
                solution: pdf_error_sigma(rho_c, rho2, c1, c2)?,
                sigma4: condition_error_sigma(rho_c, rho2, d, c1, c2).ok(),
            })
        })
        .collect()
}

/// Curvatures from −5 to 30 in steps of 0.05, with 0 hit exactly.
pub fn default_rho2_range() -> Vec<f64> {
    (0..=700).map(|i| (i as f64 - 100.0) / 20.0).collect()
}
