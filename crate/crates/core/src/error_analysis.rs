//! Closed-form perturbation error model for a single Gaussian condition.
//!
//! The density is modelled near the center `c` by its quadratic Taylor
//! polynomial on the window `D = [c − d/2, c + d/2]`. Gaussian moments over
//! `D` are the full-line moments multiplied by truncation factors `C₁..C₄`.
//! The first-derivative term integrates to zero over the symmetric window
//! and never enters the formulas.

use std::f64::consts::SQRT_2;

use libm::erf;

use crate::error::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// Local density description around a condition center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalModel {
    /// `ρ(c)`
    pub rho_c: f64,
    /// `ρ''(c)`
    pub rho2_c: f64,
    /// Window width.
    pub d: f64,
    /// Condition width.
    pub sigma: f64,
    pub k_h: f64,
    /// Sample size.
    pub n: usize,
}

impl LocalModel {
    pub fn new(rho_c: f64, rho2_c: f64, d: f64, sigma: f64, k_h: f64, n: usize) -> Result<Self> {
        if !(rho_c > 0.0) {
            return Err(Error::NonPositiveDensity(rho_c));
        }
        if !(d > 0.0) {
            return Err(Error::NonPositiveInput("d"));
        }
        if !(sigma > 0.0) {
            return Err(Error::NonPositiveSigma(sigma));
        }
        if !(k_h > 0.0) {
            return Err(Error::NonPositiveInput("k_h"));
        }
        if n == 0 {
            return Err(Error::NonPositiveInput("n"));
        }
        Ok(Self {
            rho_c,
            rho2_c,
            d,
            sigma,
            k_h,
            n,
        })
    }

    /// Accepts `ρ'(c)` for callers holding a full Taylor triple; it has no
    /// effect on any result.
    pub fn with_slope(
        rho_c: f64,
        _rho1_c: f64,
        rho2_c: f64,
        d: f64,
        sigma: f64,
        k_h: f64,
        n: usize,
    ) -> Result<Self> {
        Self::new(rho_c, rho2_c, d, sigma, k_h, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationFactors {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Truncation factors for a condition of width `sigma` over a window of
/// width `d`:
///
/// * `C₁ = erf(u)`, zeroth moment of `e^(−t²/2σ²)`
/// * `C₂ = erf(u) − (2/√π)·u·e^(−u²)`, second moment of `e^(−t²/2σ²)`
/// * `C₃ = erf(v)`, zeroth moment of `e^(−t²/σ²)`
/// * `C₄ = ½·(erf(v) − (2/√π)·v·e^(−v²))`, second moment of `e^(−t²/σ²)`
///   scaled so that `F₂ = √π(ρ C₃ σ + (ρ''/2) C₄ σ³)`; tends to ½
///
/// with `u = d/(2√2σ)` and `v = d/(2σ)`.
pub fn truncation_factors(sigma: f64, d: f64) -> Result<TruncationFactors> {
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveInput("sigma"));
    }
    if !(d > 0.0) {
        return Err(Error::NonPositiveInput("d"));
    }
    let u = d / (2.0 * SQRT_2 * sigma);
    let v = d / (2.0 * sigma);
    let second = |z: f64| erf(z) - 2.0 / SQRT_PI * z * (-z * z).exp();
    Ok(TruncationFactors {
        c1: erf(u),
        c2: second(u),
        c3: erf(v),
        c4: 0.5 * second(v),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub factors: TruncationFactors,
    /// `F = ∫_D f₁ ρ`
    pub f: f64,
    /// `F₂ = ∫_D f₁² ρ`
    pub f2: f64,
    /// `Var(f₁(X)) = F₂ − F²`
    pub var_f: f64,
    /// `ΔP = ρ'' d³ / 24`
    pub delta_p: f64,
    /// `FΔP − ΔF`
    pub fdp_minus_df: f64,
}

pub fn moments(m: &LocalModel) -> Result<MomentSet> {
    let factors = truncation_factors(m.sigma, m.d)?;
    let TruncationFactors { c1, c2, c3, c4 } = factors;
    let s = m.sigma;
    let s3 = s * s * s;
    let half_curv = 0.5 * m.rho2_c;
    let d3 = m.d * m.d * m.d;
    let f = SQRT_2PI * (m.rho_c * c1 * s + half_curv * c2 * s3);
    let f2 = SQRT_PI * (m.rho_c * c3 * s + half_curv * c4 * s3);
    Ok(MomentSet {
        factors,
        f,
        f2,
        var_f: f2 - f * f,
        delta_p: m.rho2_c * d3 / 24.0,
        fdp_minus_df: half_curv * (f * d3 / 12.0 - s3 * SQRT_2PI * c2),
    })
}

/// Mean and variance of an approximately normal error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanVar {
    pub mean: f64,
    pub var: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    pub mean_drho: f64,
    pub var_drho: f64,
    pub mean_dftot: f64,
    pub var_dftot: f64,
}

/// `1 + (2/k_H)·Var(f₁)`
fn damping(m: &LocalModel, ms: &MomentSet) -> f64 {
    1.0 + 2.0 / m.k_h * ms.var_f
}

/// Error of the estimated density at the center.
pub fn drho_stats(m: &LocalModel) -> Result<MeanVar> {
    let ms = moments(m)?;
    let den = damping(m, &ms);
    let one_minus_f = 1.0 - ms.f;
    let mean = -2.0 / m.k_h * m.rho_c * one_minus_f * ms.fdp_minus_df / den + m.rho_c * ms.delta_p;
    let var = 4.0 / (m.n as f64 * m.k_h * m.k_h)
        * m.rho_c
        * m.rho_c
        * one_minus_f
        * one_minus_f
        * ms.var_f
        / (den * den);
    Ok(MeanVar { mean, var })
}

/// Total error of the condition average.
pub fn dftot_stats(m: &LocalModel) -> Result<MeanVar> {
    let ms = moments(m)?;
    let den = damping(m, &ms);
    Ok(MeanVar {
        mean: ms.fdp_minus_df / den,
        var: ms.var_f / (m.n as f64 * den * den),
    })
}

pub fn error_stats(m: &LocalModel) -> Result<ErrorStats> {
    let r = drho_stats(m)?;
    let t = dftot_stats(m)?;
    Ok(ErrorStats {
        mean_drho: r.mean,
        var_drho: r.var,
        mean_dftot: t.mean,
        var_dftot: t.var,
    })
}

/// Probability mass of the quadratic model over the window,
/// `ρ(c)·d + ρ''(c)·d³/24`. The variance `F₂ − F²` is only guaranteed
/// nonnegative when this is at most one.
pub fn window_mass(m: &LocalModel) -> f64 {
    m.rho_c * m.d + m.rho2_c * m.d.powi(3) / 24.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_tend_to_limits() {
        let t = truncation_factors(1e-3, 1.0).unwrap();
        assert!((t.c1 - 1.0).abs() < 1e-15);
        assert!((t.c2 - 1.0).abs() < 1e-15);
        assert!((t.c3 - 1.0).abs() < 1e-15);
        assert!((t.c4 - 0.5).abs() < 1e-15);
        let t = truncation_factors(1.0, 1.0).unwrap();
        for c in [t.c1, t.c2, t.c3, t.c4] {
            assert!(c > 0.0 && c < 1.0);
        }
        assert!(truncation_factors(0.0, 1.0).is_err());
        assert!(truncation_factors(1.0, -1.0).is_err());
    }

    #[test]
    fn flat_density_moments() {
        let m = LocalModel::new(0.7, 0.0, 1.0, 1e-3, 1e-3, 100).unwrap();
        let ms = moments(&m).unwrap();
        assert!((ms.f - SQRT_2PI * 0.7 * 1e-3).abs() < 1e-16);
        assert_eq!(ms.fdp_minus_df, 0.0);
        assert_eq!(ms.delta_p, 0.0);
        let r = drho_stats(&m).unwrap();
        assert_eq!(r.mean, 0.0);
        assert_eq!(dftot_stats(&m).unwrap().mean, 0.0);
    }

    #[test]
    fn density_variance_scales_inverse_n() {
        let a = drho_stats(&LocalModel::new(1.0, -0.5, 0.5, 0.05, 1e-3, 100).unwrap()).unwrap();
        let b = drho_stats(&LocalModel::new(1.0, -0.5, 0.5, 0.05, 1e-3, 10_000).unwrap()).unwrap();
        assert!((a.var / b.var - 100.0).abs() < 1e-9);
        assert_eq!(a.mean, b.mean);
    }

    #[test]
    fn condition_variance_large_entropy_weight() {
        let m = LocalModel::new(1.0, 0.3, 0.5, 0.05, 1e12, 1000).unwrap();
        let ms = moments(&m).unwrap();
        let t = dftot_stats(&m).unwrap();
        assert!((t.var - ms.var_f / 1000.0).abs() < 1e-12 * ms.var_f);
    }

    #[test]
    fn window_mass_of_uniform() {
        let m = LocalModel::new(1.0, 0.0, 1.0, 0.1, 1e-3, 10).unwrap();
        assert_eq!(window_mass(&m), 1.0);
    }
}
