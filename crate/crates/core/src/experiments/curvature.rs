use crate::error::{Error, Result};

/// `ρ(c)` and the central second difference
/// `(ρ(c+h) − 2ρ(c) + ρ(c−h)) / h²`. The stencil must lie inside `support`.
pub fn local_curvature<F: Fn(f64) -> f64>(
    density: F,
    support: (f64, f64),
    c: f64,
    h: f64,
) -> Result<(f64, f64)> {
    if !(h > 0.0) {
        return Err(Error::NonPositiveInput("h"));
    }
    let (lo, hi) = (c - h, c + h);
    if lo < support.0 || hi > support.1 {
        return Err(Error::StencilOutOfSupport { lo, hi });
    }
    let mid = density(c);
    Ok((mid, (density(hi) - 2.0 * mid + density(lo)) / (h * h)))
}

/// Piecewise-linear density through tabulated points, zero outside.
#[derive(Debug, Clone)]
pub struct TabulatedDensity {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl TabulatedDensity {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                expected: xs.len(),
                actual: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::InvalidPointCount(xs.len()));
        }
        Ok(Self { xs, ys })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x < lo || x > hi {
            return 0.0;
        }
        let i = self
            .xs
            .partition_point(|&v| v <= x)
            .clamp(1, self.xs.len() - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let t = (x - x0) / (x1 - x0);
        self.ys[i - 1] + t * (self.ys[i] - self.ys[i - 1])
    }
}
