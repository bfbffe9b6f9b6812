//! Radial bound-state wavefunctions: normalized closed forms for the strong
//! regime (Jacobi-polynomial and hypergeometric representations), the
//! unnormalized hypergeometric forms for the weak and Rosen-Morse regimes,
//! and the Morse-limit form. Sampling, numerical normalization, and node
//! counting ride on the grid module.

use crate::potential::{
    manning_rosen_constants, rosen_morse_constants, CentrifugalCoeffs, MoleculeParams,
    PotentialError, RegimeTag,
};
use crate::specfun::{
    gauss_2f1, jacobi_poly, kummer_1f1, ln_gamma, SeriesControl, SpecFunError,
};
use crate::spectrum::{
    max_quantum_number, require_regime, strong_shape, SpectrumError,
};
use thiserror::Error;

pub use crate::grid::{count_nodes, normalize_grid, GridError, GridFunction};

#[derive(Debug, Error)]
pub enum WavefnError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("r = {r} is outside the wavefunction domain (floor {floor})")]
    Domain { r: f64, floor: f64 },
    #[error("E = {e} is outside the bound-state window")]
    EnergyOutOfRange { e: f64 },
    #[error("invalid sampling request: {0}")]
    Invalid(String),
}

/// Default sampling window [floor + 1e-8/α, floor + 60/α]; the floor is the
/// potential pole r0 in the strong regime and 0 otherwise. The inner offset
/// is small enough that the linear ramp of a Dirichlet zero stays below
/// 1e-6 of the peak at the first sample (|χ'(0)|/peak is O(1) per unit r).
pub fn sampling_window(params: &MoleculeParams) -> (f64, f64) {
    let floor = crate::potential::classify(params).r0;
    (floor + 1e-8 / params.alpha, floor + 60.0 / params.alpha)
}

pub const DEFAULT_SAMPLE_POINTS: usize = 4001;

/// Shared pieces of the two strong-regime representations. Returns
/// (σ, N_r, t, envelope-free prefactors are handled by the callers).
fn strong_setup(
    params: &MoleculeParams,
    nr: u32,
    l: u32,
    cc: &CentrifugalCoeffs,
    r: f64,
) -> Result<(f64, f64, f64, f64, f64), WavefnError> {
    let regime = require_regime(params, RegimeTag::DeformedManningRosenStrong, "strong-regime wavefunction")?;
    let (delta_l, lambda_l) = strong_shape(params, l, cc)?;
    let nr_max = max_quantum_number(params, l, cc)?;
    if i64::from(nr) > nr_max {
        return Err(SpectrumError::NoSuchState { nr, nr_max }.into());
    }
    if r <= regime.r0 {
        return Err(WavefnError::Domain { r, floor: regime.r0 });
    }
    let big_n = f64::from(nr) + delta_l + 0.5;
    let sigma = lambda_l / big_n - big_n;
    let t = params.q.abs() * (-2.0 * params.alpha * r).exp();
    Ok((delta_l, lambda_l, big_n, sigma, t))
}

/// Normalized strong-regime wavefunction in the Jacobi-polynomial
/// representation:
/// χ = C · t^{σ/2} (1−t)^{δ_l+1/2} P_{nr}^{(σ, 2δ_l)}(1−2t), t = |q|e^{−2αr},
/// σ = λ_l/N_r − N_r, with the closed-form normalization evaluated as exp of
/// ln_gamma sums (all gamma arguments are positive for admissible states).
pub fn wf_strong(
    params: &MoleculeParams,
    nr: u32,
    l: u32,
    cc: &CentrifugalCoeffs,
    r: f64,
) -> Result<f64, WavefnError> {
    let (delta_l, lambda_l, big_n, sigma, t) = strong_setup(params, nr, l, cc, r)?;
    let fnr = f64::from(nr);
    let ln_pref2 = (params.alpha / big_n).ln()
        + (lambda_l / big_n + big_n).ln()
        + sigma.ln()
        + ln_gamma(fnr + 1.0)?
        + ln_gamma(lambda_l / big_n + big_n - fnr)?
        - ln_gamma(2.0 * big_n - fnr)?
        - ln_gamma(1.0 + fnr + sigma)?;
    let envelope = 0.5 * ln_pref2 + 0.5 * sigma * t.ln() + (delta_l + 0.5) * (-t).ln_1p();
    Ok(envelope.exp() * jacobi_poly(nr, sigma, 2.0 * delta_l, 1.0 - 2.0 * t))
}

/// The same state through the hypergeometric representation
/// χ = C' · t^{σ/2} (1−t)^{δ_l+1/2} ₂F₁(−nr, λ_l/N_r+N_r−nr, σ+1; t);
/// agrees with `wf_strong` pointwise (the representations are connected by
/// the Jacobi-polynomial identity).
pub fn wf_strong_2f1(
    params: &MoleculeParams,
    nr: u32,
    l: u32,
    cc: &CentrifugalCoeffs,
    r: f64,
) -> Result<f64, WavefnError> {
    let (delta_l, lambda_l, big_n, sigma, t) = strong_setup(params, nr, l, cc, r)?;
    let fnr = f64::from(nr);
    let ln_c2 = (params.alpha / big_n).ln()
        + (lambda_l / big_n + big_n).ln()
        + sigma.ln()
        + ln_gamma(lambda_l / big_n + big_n - fnr)?
        + ln_gamma(1.0 + fnr + sigma)?
        - ln_gamma(fnr + 1.0)?
        - ln_gamma(2.0 * big_n - fnr)?
        - 2.0 * ln_gamma(1.0 + sigma)?;
    let f = gauss_2f1(
        -fnr,
        lambda_l / big_n + big_n - fnr,
        sigma + 1.0,
        t,
        SeriesControl::default(),
    )?;
    let envelope = 0.5 * ln_c2 + 0.5 * sigma * t.ln() + (delta_l + 0.5) * (-t).ln_1p();
    Ok(envelope.exp() * f)
}

/// Unnormalized weak-regime s-wave at a transcendental root:
/// χ = (1−t)^{δ_0+1/2} t^{√(2M(De−E))/2ħα} ₂F₁(M1−L_E, L_E+M1+1, M1−M2+1; t).
pub fn wf_weak(params: &MoleculeParams, e_root: f64, r: f64) -> Result<f64, WavefnError> {
    require_regime(params, RegimeTag::DeformedManningRosenWeak, "weak-regime wavefunction")?;
    if r <= 0.0 {
        return Err(WavefnError::Domain { r, floor: 0.0 });
    }
    let mr = manning_rosen_constants(params)?;
    let ha = params.hbar * params.alpha;
    let top = params.de * (4.0 * params.alpha * params.re).exp() / (params.q * params.q);
    if e_root > params.de || e_root > top {
        return Err(WavefnError::EnergyOutOfRange { e: e_root });
    }
    let delta0 = 0.5 * (1.0 + 8.0 * params.mass * mr.u2 / (ha * ha)).sqrt();
    let kexp = (2.0 * params.mass * (params.de - e_root)).sqrt() / (2.0 * ha);
    let le = -0.5 + (2.0 * params.mass * (top - e_root)).sqrt() / (2.0 * ha);
    let (m1, m2) = (delta0 + kexp, delta0 - kexp);
    let t = params.q.abs() * (-2.0 * params.alpha * r).exp();
    let f = gauss_2f1(m1 - le, le + m1 + 1.0, m1 - m2 + 1.0, t, SeriesControl::default())?;
    Ok((1.0 - t).powf(delta0 + 0.5) * t.powf(kexp) * f)
}

/// Unnormalized Rosen-Morse s-wave at a transcendental root:
/// χ = z^{√(2M(De−E))/2ħα} w^{√(2M(De·e^{4αre}/q²−E))/2ħα}
///     · ₂F₁(M1−L_E0, L_E0+M1+1, M1+M2+1; z)
/// with z = q/(e^{2αr}+q), w = 1/(1+q e^{−2αr}); the power factors are
/// evaluated in log-space since their exponents grow as q → 0.
pub fn wf_rm(params: &MoleculeParams, e_root: f64, r: f64) -> Result<f64, WavefnError> {
    require_regime(params, RegimeTag::DeformedRosenMorse, "Rosen-Morse wavefunction")?;
    if r <= 0.0 {
        return Err(WavefnError::Domain { r, floor: 0.0 });
    }
    let rm = rosen_morse_constants(params)?;
    let ha = params.hbar * params.alpha;
    let sum_high = rm.v0 + rm.v1 + rm.v2;
    let sum_low = rm.v0 - rm.v1 + rm.v2;
    if e_root > sum_high || e_root > sum_low {
        return Err(WavefnError::EnergyOutOfRange { e: e_root });
    }
    let le0 = -0.5 + (0.25 + 2.0 * params.mass * rm.v2 / (ha * ha)).sqrt();
    let sa = (2.0 * params.mass * (sum_high - e_root)).sqrt();
    let sb = (2.0 * params.mass * (sum_low - e_root)).sqrt();
    let m1 = (sa + sb) / (2.0 * ha);
    let m2 = (sa - sb) / (2.0 * ha);
    let e1 = (2.0 * params.mass * (params.de - e_root)).sqrt() / (2.0 * ha);
    let e2 = sb / (2.0 * ha);
    let z = params.q / ((2.0 * params.alpha * r).exp() + params.q);
    let w = 1.0 / (1.0 + params.q * (-2.0 * params.alpha * r).exp());
    let f = gauss_2f1(m1 - le0, le0 + m1 + 1.0, m1 + m2 + 1.0, z, SeriesControl::default())?;
    let ln_env = e1 * z.ln() + e2 * w.ln();
    Ok(f.signum() * (ln_env + f.abs().ln()).exp())
}

/// Morse-limit wavefunction, unnormalized (N = 1):
/// χ = e^{−λy} y^{λ−nr−1/2} ₁F₁(−nr, 2(λ−nr); 2λy), y = e^{−2α(r−re)},
/// λ = √(2MDe)/2ħα. The confluent factor terminates at degree nr.
///
/// Defined for all real r: this limit form is the full-line Morse
/// eigenfunction, which decays doubly-exponentially for r < re and only
/// approximately vanishes at r = 0 (to ~e^{−λe^{2αre}}·poly relative size).
pub fn wf_morse(params: &MoleculeParams, nr: u32, r: f64) -> Result<f64, WavefnError> {
    require_regime(params, RegimeTag::Morse, "Morse wavefunction")?;
    let ha = params.hbar * params.alpha;
    let lam = (2.0 * params.mass * params.de).sqrt() / (2.0 * ha);
    let nr_max = ((lam - 0.5).ceil() as i64) - 1;
    if i64::from(nr) > nr_max {
        return Err(SpectrumError::NoSuchState { nr, nr_max }.into());
    }
    let fnr = f64::from(nr);
    let y = (-2.0 * params.alpha * (r - params.re)).exp();
    let s = lam - fnr - 0.5;
    let f = kummer_1f1(-fnr, 2.0 * (lam - fnr), 2.0 * lam * y, SeriesControl::default())?;
    let ln_env = -lam * y + s * y.ln();
    Ok(f.signum() * (ln_env + f.abs().ln()).exp())
}

/// Sample a wavefunction closure on a uniform grid and attach its Simpson
/// norm estimate.
pub fn sample<F>(mut wf: F, r_lo: f64, r_hi: f64, n_points: usize) -> Result<GridFunction, WavefnError>
where
    F: FnMut(f64) -> Result<f64, WavefnError>,
{
    if n_points < 2 {
        return Err(WavefnError::Invalid(format!("need at least 2 points, got {n_points}")));
    }
    if !(r_lo < r_hi) || !r_lo.is_finite() || !r_hi.is_finite() {
        return Err(WavefnError::Invalid(format!("bad sampling range [{r_lo}, {r_hi}]")));
    }
    let step = (r_hi - r_lo) / (n_points - 1) as f64;
    let mut r_values = Vec::with_capacity(n_points);
    let mut values = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let r = if i == n_points - 1 { r_hi } else { r_lo + step * i as f64 };
        r_values.push(r);
        values.push(wf(r)?);
    }
    Ok(GridFunction::new(r_values, values)?)
}
