//! Uniform radial grids, sampled functions with Simpson-rule norms, node
//! counting, and numerical normalization. Shared plumbing for the
//! wavefunction and oracle modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    Invalid(String),
    #[error("cannot normalize a function with vanishing norm")]
    ZeroNorm,
}

/// Uniform grid of `n` interior points on (r_lo, r_hi) with Dirichlet ends;
/// spacing h = (r_hi − r_lo)/(n + 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_lo: f64,
    pub r_hi: f64,
    pub n: usize,
    pub h: f64,
}

impl RadialGrid {
    pub fn new(r_lo: f64, r_hi: f64, n: usize) -> Result<Self, GridError> {
        if !r_lo.is_finite() || !r_hi.is_finite() || !(r_lo < r_hi) {
            return Err(GridError::Invalid(format!(
                "need finite r_lo < r_hi, got [{r_lo}, {r_hi}]"
            )));
        }
        if n < 50 {
            return Err(GridError::Invalid(format!(
                "need at least 50 interior points, got {n}"
            )));
        }
        let h = (r_hi - r_lo) / (n + 1) as f64;
        Ok(Self { r_lo, r_hi, n, h })
    }

    /// i-th interior point, i = 0 … n−1.
    pub fn point(&self, i: usize) -> f64 {
        self.r_lo + self.h * (i + 1) as f64
    }

    pub fn interior_points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }
}

/// Samples of a radial function χ(r) on a uniform grid, with a composite
/// Simpson estimate of ∫χ² dr.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub r_values: Vec<f64>,
    pub values: Vec<f64>,
    pub normalized: bool,
    pub quadrature_norm: f64,
}

impl GridFunction {
    /// Build from matching sample arrays; r_values must be strictly
    /// increasing and uniformly spaced.
    pub fn new(r_values: Vec<f64>, values: Vec<f64>) -> Result<Self, GridError> {
        if r_values.len() != values.len() {
            return Err(GridError::Invalid(format!(
                "{} abscissae vs {} values",
                r_values.len(),
                values.len()
            )));
        }
        if r_values.len() < 2 {
            return Err(GridError::Invalid("need at least 2 samples".into()));
        }
        let h = r_values[1] - r_values[0];
        if !(h > 0.0) {
            return Err(GridError::Invalid("r_values must be strictly increasing".into()));
        }
        for w in r_values.windows(2) {
            let d = w[1] - w[0];
            if !(d > 0.0) || (d - h).abs() > 1e-9 * h {
                return Err(GridError::Invalid(
                    "r_values must be strictly increasing and uniformly spaced".into(),
                ));
            }
        }
        let quadrature_norm = simpson_sq(h, &values);
        Ok(Self { r_values, values, normalized: false, quadrature_norm })
    }
}

/// Composite Simpson estimate of ∫ v² dr on a uniform grid of spacing h.
/// Even sample counts fall back to Simpson plus a 3/8-rule tail.
fn simpson_sq(h: f64, v: &[f64]) -> f64 {
    let n = v.len();
    let sq = |x: f64| x * x;
    if n == 2 {
        return 0.5 * h * (sq(v[0]) + sq(v[1]));
    }
    if n % 2 == 1 {
        let mut acc = sq(v[0]) + sq(v[n - 1]);
        for (i, &x) in v.iter().enumerate().take(n - 1).skip(1) {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * sq(x);
        }
        return acc * h / 3.0;
    }
    // even count: Simpson over the first n-3 points, 3/8 rule over the last 4
    let head = if n > 4 { simpson_sq(h, &v[..n - 3]) } else { 0.0 };
    let t = &v[n - 4..];
    head + 3.0 * h / 8.0 * (sq(t[0]) + 3.0 * sq(t[1]) + 3.0 * sq(t[2]) + sq(t[3]))
}

/// Rescale to unit quadrature norm.
pub fn normalize_grid(g: &GridFunction) -> Result<GridFunction, GridError> {
    if !(g.quadrature_norm > 0.0) || !g.quadrature_norm.is_finite() {
        return Err(GridError::ZeroNorm);
    }
    let s = 1.0 / g.quadrature_norm.sqrt();
    let values: Vec<f64> = g.values.iter().map(|v| v * s).collect();
    let h = g.r_values[1] - g.r_values[0];
    let quadrature_norm = simpson_sq(h, &values);
    Ok(GridFunction {
        r_values: g.r_values.clone(),
        values,
        normalized: true,
        quadrature_norm,
    })
}

/// Strict sign changes among samples above the noise floor
/// threshold·max|value|.
pub fn count_nodes(g: &GridFunction, threshold: f64) -> usize {
    let peak = g.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return 0;
    }
    let floor = threshold * peak;
    let mut nodes = 0;
    let mut last_sign = 0i8;
    for &v in &g.values {
        if v.abs() < floor {
            continue;
        }
        let s = if v > 0.0 { 1i8 } else { -1i8 };
        if last_sign != 0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}
