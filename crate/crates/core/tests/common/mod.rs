//! Oracles shared by the integration suites. They deliberately avoid the
//! library's own numerics.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Composite 20-point Gauss–Legendre over `panels` equal panels.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre_rule(20);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut s = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            s += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * s;
    }
    total
}

/// Composite Gauss–Legendre, doubling the panel count until two
/// successive results agree to `rel_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let mut panels = 8;
    let mut prev = gauss_legendre(&f, a, b, panels);
    loop {
        panels *= 2;
        let next = gauss_legendre(&f, a, b, panels);
        if (next - prev).abs() <= rel_tol * next.abs().max(1e-300) || panels > 1 << 14 {
            return next;
        }
        prev = next;
    }
}

/// All complex roots of `Σ coeffs[i]·zⁱ` by Durand–Kerner iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-16 {
            break;
        }
    }
    // Newton polish on the original polynomial.
    for r in z.iter_mut() {
        for _ in 0..3 {
            let p = eval(*r);
            let dp = monic
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
                    acc * *r + c * i as f64
                });
            if dp.norm() == 0.0 {
                break;
            }
            *r -= p / dp;
        }
    }
    z
}

/// Density `ρ_c + (ρ''/2)(x − c)²` on `[c − d/2, c + d/2]` with `ρ_c`
/// chosen for unit mass.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticPdf {
    pub c: f64,
    pub d: f64,
    pub rho_c: f64,
    pub rho2: f64,
}

impl QuadraticPdf {
    pub fn new(c: f64, d: f64, rho2: f64) -> Self {
        let rho_c = (1.0 - rho2 * d.powi(3) / 24.0) / d;
        assert!(rho_c + rho2 * d * d / 8.0 > 0.0 && rho_c > 0.0);
        Self { c, d, rho_c, rho2 }
    }

    pub fn density(&self, x: f64) -> f64 {
        let t = x - self.c;
        self.rho_c + 0.5 * self.rho2 * t * t
    }

    fn cdf(&self, x: f64) -> f64 {
        let h = 0.5 * self.d;
        let t = x - self.c;
        self.rho_c * (t + h) + self.rho2 * (t.powi(3) + h.powi(3)) / 6.0
    }

    /// Inverse transform by bisection on the cubic CDF.
    pub fn draw(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| {
                let u: f64 = rng.gen();
                let (mut lo, mut hi) = (self.c - 0.5 * self.d, self.c + 0.5 * self.d);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < u {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
