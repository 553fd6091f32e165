//! The six-root benchmark density on `[0, 1]` and a tabulated-CDF sampler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::Selection;
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;

/// Roots of the polynomial in the exponent.
pub const ROOTS: [f64; 6] = [0.1, 0.2, 0.3, 0.5, 0.8, 0.9];
const SCALE: f64 = 1e4;
/// Number of CDF table intervals.
pub const CDF_TABLE_SIZE: usize = 1 << 16;

fn polynomial(x: f64) -> f64 {
    ROOTS.iter().map(|r| x - r).product()
}

fn unnormalized(x: f64) -> f64 {
    (-SCALE * polynomial(x)).exp()
}

/// `ρ(x) = exp(−10⁴ Π(x − r_i)) / Z` on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct TestPdf {
    z: f64,
    cdf_x: Vec<f64>,
    cdf: Vec<f64>,
}

impl TestPdf {
    pub fn new() -> Self {
        let z = adaptive_simpson(unnormalized, 0.0, 1.0, 1e-14, 256);
        let n = CDF_TABLE_SIZE;
        let cdf_x: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let mut cdf = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cdf.push(0.0);
        for w in cdf_x.windows(2) {
            let (a, b) = (w[0], w[1]);
            let m = 0.5 * (a + b);
            acc += (b - a) / 6.0 * (unnormalized(a) + 4.0 * unnormalized(m) + unnormalized(b));
            cdf.push(acc);
        }
        let total = acc;
        for c in &mut cdf {
            *c /= total;
        }
        cdf[n] = 1.0;
        Self { z, cdf_x, cdf }
    }

    /// Normalization constant.
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfSupport(x));
        }
        Ok(self.density(x))
    }

    /// Density without the support check; zero outside `[0, 1]`.
    pub fn density(&self, x: f64) -> f64 {
        if (0.0..=1.0).contains(&x) {
            unnormalized(x) / self.z
        } else {
            0.0
        }
    }

    pub fn cdf_table(&self) -> (&[f64], &[f64]) {
        (&self.cdf_x, &self.cdf)
    }

    /// Inverse CDF by binary search and linear interpolation.
    pub fn quantile(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        let i = self.cdf.partition_point(|&c| c <= u);
        if i == 0 {
            return 0.0;
        }
        if i > CDF_TABLE_SIZE {
            return 1.0;
        }
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let (x0, x1) = (self.cdf_x[i - 1], self.cdf_x[i]);
        if c1 > c0 {
            x0 + (x1 - x0) * (u - c0) / (c1 - c0)
        } else {
            x0
        }
    }

    /// Raw draws, deterministic per seed (ChaCha8).
    pub fn draw(&self, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| self.quantile(rng.gen::<f64>())).collect()
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Selection> {
        if n < 2 {
            return Err(Error::InvalidCount(n));
        }
        Selection::new(self.draw(n, seed))
    }

    /// Local maxima of the density, located to about `1e-7` by golden
    /// section search after a grid scan.
    pub fn modes(&self) -> Vec<f64> {
        let n = 10_000;
        let xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| self.density(x)).collect();
        (1..n)
            .filter(|&i| ys[i] > ys[i - 1] && ys[i] >= ys[i + 1])
            .map(|i| golden_max(|x| self.density(x), xs[i - 1], xs[i + 1]))
            .collect()
    }
}

impl Default for TestPdf {
    fn default() -> Self {
        Self::new()
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-9 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}
