//! Brute-force verifier for the analytic spectra: a 3-point finite-difference
//! discretization of the radial Schrödinger operator −(ħ²/2M)χ'' + V(r)χ with
//! Dirichlet ends, eigenvalues by Sturm-sequence bisection, eigenvectors by
//! inverse iteration, and Richardson h² extrapolation.
//!
//! This module deliberately knows nothing about the analytic machinery: it
//! consumes only potential callables and never touches specfun or spectrum.

use crate::grid::{GridError, GridFunction, RadialGrid};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("potential is not finite at grid point r = {r}; start the grid strictly inside the domain")]
    PoleOnGrid { r: f64 },
    #[error("inverse iteration failed to converge for eigenvalue index {index}")]
    Stagnation { index: usize },
    #[error("invalid oracle request: {0}")]
    Invalid(String),
}

/// Symmetric tridiagonal matrix with constant off-diagonal, as produced by
/// the uniform-grid Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: f64,
}

impl Tridiagonal {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Row-sum norm ‖T‖∞.
    pub fn norm_inf(&self) -> f64 {
        let n = self.n();
        let mut m = 0.0f64;
        for (i, d) in self.diag.iter().enumerate() {
            let neighbors = if n == 1 {
                0.0
            } else if i == 0 || i == n - 1 {
                1.0
            } else {
                2.0
            };
            m = m.max(d.abs() + neighbors * self.off.abs());
        }
        m
    }

    /// y = T x.
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.off * x[i - 1];
            }
            if i + 1 < n {
                v += self.off * x[i + 1];
            }
            y[i] = v;
        }
        y
    }
}

/// Discretize −(ħ²/2M)d²/dr² + V(r) on the interior points of `grid`:
/// diagonal ħ²/(Mh²) + V(r_i), off-diagonal −ħ²/(2Mh²).
pub fn discretize<F>(
    mut potential: F,
    grid: &RadialGrid,
    mass: f64,
    hbar: f64,
) -> Result<Tridiagonal, OracleError>
where
    F: FnMut(f64) -> f64,
{
    let c = hbar * hbar / (2.0 * mass * grid.h * grid.h);
    let mut diag = Vec::with_capacity(grid.n);
    for i in 0..grid.n {
        let r = grid.point(i);
        let v = potential(r);
        if !v.is_finite() {
            return Err(OracleError::PoleOnGrid { r });
        }
        diag.push(2.0 * c + v);
    }
    Ok(Tridiagonal { diag, off: -c })
}

/// Number of eigenvalues of `t` strictly below `x` (Sturm sequence count).
pub fn eigenvalue_count_below(t: &Tridiagonal, x: f64) -> usize {
    let e2 = t.off * t.off;
    let pivmin = f64::MIN_POSITIVE * e2.max(1.0);
    let mut count = 0usize;
    let mut q = 1.0f64;
    for (i, d) in t.diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - e2 / q };
        if q.abs() <= pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin_bounds(t: &Tridiagonal) -> (f64, f64) {
    let two_e = 2.0 * t.off.abs();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for d in &t.diag {
        lo = lo.min(d - two_e);
        hi = hi.max(d + two_e);
    }
    let pad = 1e-10 * (hi - lo).max(1.0);
    (lo - pad, hi + pad)
}

/// Bisect for the eigenvalue of index `i` (0-based, ascending order) to
/// 1e-12 relative of the eigenvalue itself (the scale check runs on the
/// current bracket, so a huge Gershgorin span does not inflate it).
fn bisect_eigenvalue(t: &Tridiagonal, i: usize, glo: f64, ghi: f64) -> f64 {
    let (mut lo, mut hi) = (glo, ghi);
    for _ in 0..300 {
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        if hi - lo <= 1e-12 * scale {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eigenvalue_count_below(t, mid) <= i {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solve (T − λI) x = b in place by tridiagonal LU with partial pivoting.
fn solve_shifted(t: &Tridiagonal, lambda: f64, b: &mut [f64]) {
    let n = t.n();
    let tiny = f64::EPSILON * t.norm_inf().max(1.0) * 1e-30;
    let mut d: Vec<f64> = t.diag.iter().map(|v| v - lambda).collect();
    let mut du = vec![t.off; n.saturating_sub(1)];
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    for i in 0..n - 1 {
        let dl = t.off;
        if d[i].abs() >= dl.abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let m = dl / d[i];
            d[i + 1] -= m * du[i];
            b[i + 1] -= m * b[i];
        } else {
            let m = d[i] / dl;
            d[i] = dl;
            let tmp = d[i + 1];
            d[i + 1] = du[i] - m * tmp;
            du[i] = tmp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du[i + 1];
            }
            b.swap(i, i + 1);
            b[i + 1] -= m * b[i];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    b[n - 1] /= d[n - 1];
    if n >= 2 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
}

/// Deterministic pseudo-random unit seed vector for inverse iteration.
fn seed_vector(n: usize, index: usize) -> Vec<f64> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (index as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        v.push((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5);
    }
    v
}

fn renormalize(v: &mut [f64]) {
    // guard against overflow from near-singular solves before taking the l2 norm
    let amax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if amax > 0.0 && amax.is_finite() {
        for x in v.iter_mut() {
            *x /= amax;
        }
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

const MAX_INVERSE_ITERATIONS: usize = 25;

fn inverse_iteration(t: &Tridiagonal, lambda: f64, index: usize) -> Result<Vec<f64>, OracleError> {
    let tnorm = t.norm_inf().max(1.0);
    // offset the shift so the solve stays comfortably nonsingular; the
    // eigenvector direction is insensitive at this scale
    let shift = lambda + 1e-13 * tnorm;
    let mut x = seed_vector(t.n(), index);
    renormalize(&mut x);
    for _ in 0..MAX_INVERSE_ITERATIONS {
        solve_shifted(t, shift, &mut x);
        renormalize(&mut x);
        let tx = t.apply(&x);
        let resid = tx
            .iter()
            .zip(&x)
            .fold(0.0f64, |m, (a, b)| m.max((a - lambda * b).abs()));
        if resid <= 1e-9 * tnorm {
            // fix the overall sign: first significant component positive
            let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if let Some(first) = x.iter().find(|v| v.abs() > 1e-8 * peak) {
                if *first < 0.0 {
                    for v in x.iter_mut() {
                        *v = -*v;
                    }
                }
            }
            return Ok(x);
        }
    }
    Err(OracleError::Stagnation { index })
}

/// Lowest `k` eigenpairs of a symmetric tridiagonal matrix. Eigenvalues by
/// Sturm bisection with bracket width 1e-12 relative (absolute accuracy is
/// floored near ε·‖T‖ by rounding in the Sturm recurrence); eigenvectors
/// l2-normalized.
pub fn eigen_lowest(t: &Tridiagonal, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>), OracleError> {
    if k > t.n() {
        return Err(OracleError::Invalid(format!(
            "requested {k} eigenvalues from a matrix of order {}",
            t.n()
        )));
    }
    let (glo, ghi) = gershgorin_bounds(t);
    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = Vec::with_capacity(k);
    for i in 0..k {
        let lam = bisect_eigenvalue(t, i, glo, ghi);
        eigenvectors.push(inverse_iteration(t, lam, i)?);
        eigenvalues.push(lam);
    }
    Ok((eigenvalues, eigenvectors))
}

/// Grid-placement policy for `solve_radial`: offset from the domain floor,
/// radial extent, and interior point count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleWindow {
    pub eps_floor: f64,
    pub extent: f64,
    pub n: usize,
}

impl OracleWindow {
    pub fn new(eps_floor: f64, extent: f64, n: usize) -> Result<Self, OracleError> {
        if !(eps_floor >= 0.0) || !eps_floor.is_finite() {
            return Err(OracleError::Invalid(format!("eps_floor must be ≥ 0, got {eps_floor}")));
        }
        if !(extent > eps_floor) || !extent.is_finite() {
            return Err(OracleError::Invalid(format!(
                "extent must exceed eps_floor, got {extent} vs {eps_floor}"
            )));
        }
        if n < 50 {
            return Err(OracleError::Invalid(format!("need n ≥ 50, got {n}")));
        }
        Ok(Self { eps_floor, extent, n })
    }

    /// Window for a potential singular at the domain floor: start 1e-4/α
    /// above it, span 60 decay lengths.
    pub fn singular(alpha: f64) -> Self {
        Self { eps_floor: 1e-4 / alpha, extent: 60.0 / alpha, n: 4000 }
    }

    /// Window for a potential regular at the domain floor.
    pub fn regular(alpha: f64) -> Self {
        Self { eps_floor: 0.0, extent: 60.0 / alpha, n: 4000 }
    }
}

/// Finite-difference spectrum of a radial potential.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<GridFunction>,
    pub grid: RadialGrid,
    /// h → 0 extrapolation of each eigenvalue; equals `eigenvalues` when
    /// refinement was not requested.
    pub richardson_estimate: Vec<f64>,
    /// True when fewer than the requested k eigenvalues lie below the
    /// potential's asymptotic value.
    pub truncated: bool,
}

/// Solve the radial problem on [floor + eps_floor, floor + extent]. With
/// `refine`, recompute at doubled point count and Richardson-extrapolate the
/// h² error using the exact grid spacings; eigenvectors then come from the
/// fine grid. States above the potential value at the far end are box
/// artifacts and are not reported.
pub fn solve_radial<F>(
    mut potential: F,
    floor: f64,
    window: &OracleWindow,
    mass: f64,
    hbar: f64,
    k: usize,
    refine: bool,
) -> Result<OracleSpectrum, OracleError>
where
    F: FnMut(f64) -> f64,
{
    let grid1 = RadialGrid::new(floor + window.eps_floor, floor + window.extent, window.n)?;
    let t1 = discretize(&mut potential, &grid1, mass, hbar)?;
    let v_inf = potential(grid1.r_hi);
    if !v_inf.is_finite() {
        return Err(OracleError::PoleOnGrid { r: grid1.r_hi });
    }
    let below = eigenvalue_count_below(&t1, v_inf);
    let k_eff = k.min(below);
    let truncated = k_eff < k;
    let (ev1, vec1) = eigen_lowest(&t1, k_eff)?;
    let (grid, t, eigenvalues, vectors, richardson) = if refine {
        let grid2 = RadialGrid::new(grid1.r_lo, grid1.r_hi, 2 * window.n)?;
        let t2 = discretize(&mut potential, &grid2, mass, hbar)?;
        let (ev2, vec2) = eigen_lowest(&t2, k_eff)?;
        let (h1s, h2s) = (grid1.h * grid1.h, grid2.h * grid2.h);
        let rich = ev1
            .iter()
            .zip(&ev2)
            .map(|(e1, e2)| (h1s * e2 - h2s * e1) / (h1s - h2s))
            .collect();
        (grid2, t2, ev2, vec2, rich)
    } else {
        let rich = ev1.clone();
        (grid1, t1, ev1, vec1, rich)
    };
    drop(t);
    let r_values = grid.interior_points();
    let scale = 1.0 / grid.h.sqrt();
    let mut eigenvectors = Vec::with_capacity(vectors.len());
    for v in vectors {
        let values: Vec<f64> = v.iter().map(|x| x * scale).collect();
        eigenvectors.push(GridFunction::new(r_values.clone(), values)?);
    }
    Ok(OracleSpectrum { eigenvalues, eigenvectors, grid, richardson_estimate: richardson, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::count_nodes;

    fn box_matrix(n: usize, length: f64) -> (Tridiagonal, RadialGrid) {
        let grid = RadialGrid::new(0.0, length, n).unwrap();
        let t = discretize(|_| 0.0, &grid, 1.0, 1.0).unwrap();
        (t, grid)
    }

    #[test]
    fn discretize_structure() {
        let grid = RadialGrid::new(0.0, 1.0, 99).unwrap();
        let t = discretize(|r| r, &grid, 2.0, 3.0).unwrap();
        let c = 9.0 / (2.0 * 2.0 * grid.h * grid.h);
        assert!((t.off + c).abs() < 1e-12);
        for i in 0..99 {
            assert!((t.diag[i] - grid.point(i) - 2.0 * c).abs() < 1e-9);
        }
    }

    #[test]
    fn discretize_rejects_pole_on_grid() {
        let grid = RadialGrid::new(0.0, 1.0, 99).unwrap();
        // r = 0.5 is the 50th interior point
        let res = discretize(|r| 1.0 / (r - 0.5), &grid, 1.0, 1.0);
        assert!(matches!(res, Err(OracleError::PoleOnGrid { .. })));
    }

    #[test]
    fn sturm_count_monotone_and_exact_on_box() {
        let (t, grid) = box_matrix(200, 1.0);
        // discrete box eigenvalues are known in closed form
        let exact: Vec<f64> = (1..=200)
            .map(|k| {
                (1.0 - (k as f64 * std::f64::consts::PI / 201.0).cos()) / (grid.h * grid.h)
            })
            .collect();
        let mut prev = 0;
        for (i, e) in exact.iter().enumerate().take(20) {
            let below = eigenvalue_count_below(&t, e + 1e-9);
            assert_eq!(below, i + 1);
            assert!(below >= prev);
            prev = below;
        }
    }

    #[test]
    fn box_ground_state_matches_continuum() {
        let (t, grid) = box_matrix(4000, 1.0);
        let (ev, _) = eigen_lowest(&t, 1).unwrap();
        // the Sturm recurrence floors the absolute accuracy near ε·‖T‖;
        // 5e-9 relative sits above that and an order below the h² error
        let discrete = (1.0 - (std::f64::consts::PI / 4001.0).cos()) / (grid.h * grid.h);
        assert!((ev[0] - discrete).abs() <= 5e-9 * discrete);
        let continuum = std::f64::consts::PI.powi(2) / 2.0;
        assert!((ev[0] - continuum).abs() <= 1e-6 * continuum);
    }

    #[test]
    fn box_low_modes_scale_quadratically() {
        let (t, _) = box_matrix(2000, 1.0);
        let (ev, vecs) = eigen_lowest(&t, 3).unwrap();
        let continuum = std::f64::consts::PI.powi(2) / 2.0;
        for (i, e) in ev.iter().enumerate() {
            let k = (i + 1) as f64;
            assert!((e - k * k * continuum).abs() <= 1e-5 * k * k * continuum);
        }
        // Sturm oscillation: i-th eigenvector has i sign changes
        let r: Vec<f64> = (0..2000).map(|i| (i + 1) as f64 / 2001.0).collect();
        for (i, v) in vecs.iter().enumerate() {
            let g = GridFunction::new(r.clone(), v.clone()).unwrap();
            assert_eq!(count_nodes(&g, 1e-9), i);
        }
    }

    #[test]
    fn diagonal_matrix_eigenvalues_exact() {
        let t = Tridiagonal { diag: vec![3.0, 1.0, 2.0], off: 0.0 };
        // order is too small for RadialGrid but fine for the raw solver
        let (glo, ghi) = gershgorin_bounds(&t);
        let evs: Vec<f64> = (0..3).map(|i| bisect_eigenvalue(&t, i, glo, ghi)).collect();
        assert!((evs[0] - 1.0).abs() < 1e-10);
        assert!((evs[1] - 2.0).abs() < 1e-10);
        assert!((evs[2] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvector_residual_bound() {
        let grid = RadialGrid::new(0.0, 10.0, 500).unwrap();
        let t = discretize(|r| (r - 5.0) * (r - 5.0), &grid, 1.0, 1.0).unwrap();
        let (ev, vecs) = eigen_lowest(&t, 4).unwrap();
        let tnorm = t.norm_inf();
        for (lam, v) in ev.iter().zip(&vecs) {
            let tv = t.apply(v);
            let resid = tv
                .iter()
                .zip(v)
                .fold(0.0f64, |m, (a, b)| m.max((a - lam * b).abs()));
            assert!(resid <= 1e-9 * tnorm, "residual {resid:e} vs norm {tnorm:e}");
        }
        // harmonic-like well: near-uniform level spacing as a sanity check
        let gap1 = ev[1] - ev[0];
        let gap2 = ev[2] - ev[1];
        assert!((gap2 / gap1 - 1.0).abs() < 0.05);
    }

    #[test]
    fn eigen_lowest_rejects_oversized_request() {
        let t = Tridiagonal { diag: vec![1.0, 2.0], off: 0.0 };
        assert!(matches!(eigen_lowest(&t, 3), Err(OracleError::Invalid(_))));
    }

    #[test]
    fn morse_well_matches_analytic_levels() {
        // V = De(1 − e^{−2α(r−re)})², De=8, α=0.5, re=1.2, ħ=M=1: analytic
        // levels 1.875, 4.875, 6.875, 7.875. Those formulas solve the
        // full-line problem, so push the floor deep into the inner wall
        // where the wavefunctions are exponentially dead.
        let (de, re, alpha) = (8.0, 1.2, 0.5);
        let pot = move |r: f64| {
            let t = 1.0 - (-2.0 * alpha * (r - re)).exp();
            de * t * t
        };
        let window = OracleWindow::regular(alpha);
        let floor = re - 12.0 / alpha;
        let spec = solve_radial(pot, floor, &window, 1.0, 1.0, 4, true).unwrap();
        let analytic = [1.875, 4.875, 6.875, 7.875];
        assert_eq!(spec.eigenvalues.len(), 4);
        assert!(!spec.truncated);
        for (got, want) in spec.richardson_estimate.iter().zip(analytic) {
            assert!(
                (got - want).abs() <= 1e-6 * want,
                "richardson {got} vs analytic {want}"
            );
        }
        // refinement must actually tighten the raw grid eigenvalues
        for (raw, want) in spec.eigenvalues.iter().zip(analytic) {
            let raw_err = (raw - want).abs() / want;
            assert!(raw_err < 1e-4);
        }
    }

    #[test]
    fn truncation_flag_on_shallow_well() {
        let (de, re, alpha) = (8.0, 1.2, 0.5);
        let pot = move |r: f64| {
            let t = 1.0 - (-2.0 * alpha * (r - re)).exp();
            de * t * t
        };
        let window = OracleWindow { n: 1200, ..OracleWindow::regular(alpha) };
        let spec = solve_radial(pot, 0.0, &window, 1.0, 1.0, 10, false).unwrap();
        assert!(spec.truncated);
        assert_eq!(spec.eigenvalues.len(), 4);
        for e in &spec.eigenvalues {
            assert!(*e < de);
        }
    }

    #[test]
    fn eigenvector_grid_functions_are_continuum_normalized() {
        let (de, re, alpha) = (8.0, 1.2, 0.5);
        let pot = move |r: f64| {
            let t = 1.0 - (-2.0 * alpha * (r - re)).exp();
            de * t * t
        };
        let window = OracleWindow { n: 1500, ..OracleWindow::regular(alpha) };
        let spec = solve_radial(pot, 0.0, &window, 1.0, 1.0, 2, false).unwrap();
        for gf in &spec.eigenvectors {
            assert!((gf.quadrature_norm - 1.0).abs() < 1e-4, "norm {}", gf.quadrature_norm);
        }
        // ground state: no interior nodes; first excited: one
        assert_eq!(count_nodes(&spec.eigenvectors[0], 1e-9), 0);
        assert_eq!(count_nodes(&spec.eigenvectors[1], 1e-9), 1);
    }

    #[test]
    fn window_validation() {
        assert!(OracleWindow::new(-1.0, 10.0, 4000).is_err());
        assert!(OracleWindow::new(0.5, 0.4, 4000).is_err());
        assert!(OracleWindow::new(0.0, 10.0, 10).is_err());
        assert!(OracleWindow::new(0.0, 10.0, 4000).is_ok());
    }
}
