//! Bound-state energies for the improved Tietz potential: closed-form levels
//! in the strong-deformation regime (q ≤ −1, any l), numerical roots of the
//! transcendental quantization conditions for the weak (−1 < q < 0) and
//! Rosen-Morse (q > 0) regimes (s-waves), and the Morse-limit formula (q = 0).

use crate::potential::{
    classify, manning_rosen_constants, rosen_morse_constants, CentrifugalCoeffs, MoleculeParams,
    PotentialError, Regime, RegimeTag,
};
use crate::specfun::{gauss_2f1, SeriesControl, SpecFunError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("energy out of range: {0}")]
    EnergyOutOfRange(String),
    #[error("no such state: nr = {nr} exceeds nr_max = {nr_max}")]
    NoSuchState { nr: u32, nr_max: i64 },
    #[error("wrong regime: {0}")]
    Regime(String),
    #[error("invalid root-search config: {0}")]
    Config(String),
}

/// Dimensionless quantities entering the strong-regime quantization
/// condition and wavefunctions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub le: f64,
    pub m1: f64,
    pub m2: f64,
    pub delta_l: f64,
    /// N_r = nr + delta_l + 1/2; populated once a radial quantum number is
    /// chosen, absent for a bare energy probe.
    pub big_n: Option<f64>,
    pub lambda_l: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    ClosedForm,
    TranscendentalRoot,
    MorseFormula,
}

impl SolveMethod {
    pub fn label(&self) -> &'static str {
        match self {
            SolveMethod::ClosedForm => "closed-form",
            SolveMethod::TranscendentalRoot => "transcendental-root",
            SolveMethod::MorseFormula => "morse-formula",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub nr: u32,
    pub l: u32,
    pub energy: f64,
    pub regime: Regime,
    pub method: SolveMethod,
    /// |quantization function| at the accepted root; 0 for closed-form and
    /// Morse-formula states.
    pub residual: f64,
}

/// Bracket window and termination knobs for the transcendental root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSearchConfig {
    pub e_min: f64,
    pub e_max: f64,
    pub scan_points: usize,
    pub energy_rel_tol: f64,
    pub max_bisections: usize,
}

impl RootSearchConfig {
    pub fn new(
        e_min: f64,
        e_max: f64,
        scan_points: usize,
        energy_rel_tol: f64,
        max_bisections: usize,
    ) -> Result<Self, SpectrumError> {
        if !(e_min < e_max) {
            return Err(SpectrumError::Config(format!(
                "e_min = {e_min} must be below e_max = {e_max}"
            )));
        }
        if scan_points < 16 {
            return Err(SpectrumError::Config(format!(
                "scan_points = {scan_points} must be at least 16"
            )));
        }
        if !(energy_rel_tol > 0.0) || !energy_rel_tol.is_finite() {
            return Err(SpectrumError::Config(format!(
                "energy_rel_tol must be finite and > 0, got {energy_rel_tol}"
            )));
        }
        if max_bisections == 0 {
            return Err(SpectrumError::Config("max_bisections must be >= 1".into()));
        }
        Ok(Self { e_min, e_max, scan_points, energy_rel_tol, max_bisections })
    }

    /// Default window for a well with minimum 0 and dissociation energy
    /// `de`: nudged just inside (0, De) since bound states live strictly
    /// between the well floor and the continuum threshold.
    pub fn for_dissociation(de: f64) -> Self {
        Self {
            e_min: 1e-12 * de,
            e_max: de * (1.0 - 1e-12),
            scan_points: 2001,
            energy_rel_tol: 1e-8,
            max_bisections: 200,
        }
    }
}

pub(crate) fn require_regime(
    params: &MoleculeParams,
    tag: RegimeTag,
    what: &str,
) -> Result<Regime, SpectrumError> {
    let regime = classify(params);
    if regime.tag != tag {
        return Err(SpectrumError::Regime(format!(
            "{what} requires the {tag:?} regime, but q = {} gives {:?}",
            params.q, regime.tag
        )));
    }
    Ok(regime)
}

/// E-independent shape quantities (δ_l, λ_l) of the strong regime.
pub(crate) fn strong_shape(
    params: &MoleculeParams,
    l: u32,
    cc: &CentrifugalCoeffs,
) -> Result<(f64, f64), SpectrumError> {
    require_regime(params, RegimeTag::DeformedManningRosenStrong, "strong-regime shape")?;
    let mr = manning_rosen_constants(params)?;
    let aq = params.q.abs();
    let ll = f64::from(l) * f64::from(l + 1);
    let ha = params.hbar * params.alpha;
    let delta_l = 0.5
        * (1.0 + 8.0 * params.mass * mr.u2 / (ha * ha) + ll / (params.alpha * params.alpha) * cc.a0 / (aq * aq))
            .sqrt();
    let lambda_l = params.mass * mr.u1 / (ha * ha)
        + ll / (4.0 * params.alpha * params.alpha) * (cc.a0 / (aq * aq) - cc.b0 / aq);
    Ok((delta_l, lambda_l))
}

/// (L_E, M1, M2, δ_l, λ_l) of the strong-regime quantization condition at
/// probe energy `e`.
pub fn spectral_params_strong(
    params: &MoleculeParams,
    l: u32,
    cc: &CentrifugalCoeffs,
    e: f64,
) -> Result<SpectralParams, SpectrumError> {
    let (delta_l, lambda_l) = strong_shape(params, l, cc)?;
    let mr = manning_rosen_constants(params)?;
    let aq = params.q.abs();
    let ll = f64::from(l) * f64::from(l + 1);
    let two_m = 2.0 * params.mass / (params.hbar * params.hbar);
    let rad_le = two_m * (mr.u0 + mr.u1 + mr.u2 - e)
        + ll * (cc.c0 + cc.a0 / (aq * aq) - cc.b0 / aq);
    let rad_m = two_m * (mr.u0 - mr.u1 + mr.u2 - e) + ll * cc.c0;
    if rad_le < 0.0 || rad_m < 0.0 {
        return Err(SpectrumError::EnergyOutOfRange(format!(
            "E = {e} puts a square-root argument below zero (L_E radicand {rad_le}, M radicand {rad_m})"
        )));
    }
    let le = -0.5 + rad_le.sqrt() / (2.0 * params.alpha);
    let half_gap = rad_m.sqrt() / (2.0 * params.alpha);
    Ok(SpectralParams {
        le,
        m1: delta_l + half_gap,
        m2: delta_l - half_gap,
        delta_l,
        big_n: None,
        lambda_l,
    })
}

fn nr_max_from_shape(delta_l: f64, lambda_l: f64) -> i64 {
    if lambda_l <= 0.0 {
        return -1;
    }
    // largest integer strictly below sqrt(lambda_l) - delta_l - 1/2
    let bound = lambda_l.sqrt() - delta_l - 0.5;
    let nmax = (bound.ceil() as i64) - 1;
    nmax.max(-1)
}

/// Highest radial quantum number supporting a bound state in the strong
/// regime; −1 when none exist.
pub fn max_quantum_number(
    params: &MoleculeParams,
    l: u32,
    cc: &CentrifugalCoeffs,
) -> Result<i64, SpectrumError> {
    let (delta_l, lambda_l) = strong_shape(params, l, cc)?;
    Ok(nr_max_from_shape(delta_l, lambda_l))
}

/// Closed-form strong-regime level
/// E = U0 + U2 + (ħ²l(l+1)/2M)(A0/2q² − B0/2|q| + C0) − (ħ²α²/2M)(N² + λ²/N²)
/// with N = nr + δ_l + 1/2.
pub fn energy_closed_form(
    params: &MoleculeParams,
    nr: u32,
    l: u32,
    cc: &CentrifugalCoeffs,
) -> Result<BoundState, SpectrumError> {
    let regime = require_regime(params, RegimeTag::DeformedManningRosenStrong, "closed-form level")?;
    let (delta_l, lambda_l) = strong_shape(params, l, cc)?;
    let nr_max = nr_max_from_shape(delta_l, lambda_l);
    if i64::from(nr) > nr_max {
        return Err(SpectrumError::NoSuchState { nr, nr_max });
    }
    let mr = manning_rosen_constants(params)?;
    let aq = params.q.abs();
    let ll = f64::from(l) * f64::from(l + 1);
    let kappa = params.hbar * params.hbar * ll / (2.0 * params.mass);
    let big_n = f64::from(nr) + delta_l + 0.5;
    let ha2 = params.hbar * params.hbar * params.alpha * params.alpha / (2.0 * params.mass);
    let energy = mr.u0
        + mr.u2
        + kappa * (cc.a0 / (2.0 * aq * aq) - cc.b0 / (2.0 * aq) + cc.c0)
        - ha2 * (big_n * big_n + lambda_l * lambda_l / (big_n * big_n));
    Ok(BoundState { nr, l, energy, regime, method: SolveMethod::ClosedForm, residual: 0.0 })
}

/// Accepted-root residual bound: |f| at the root must not exceed this
/// fraction of the scan's magnitude scale (f has huge dynamic range, so an
/// absolute bound would be meaningless).
const RESIDUAL_REL: f64 = 1e-8;

/// Scan f over [lo, hi], bisect every strict sign change between finite
/// samples, return (energy, residual) pairs in increasing energy order.
fn scan_roots<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    cfg: &RootSearchConfig,
    de: f64,
) -> Result<Vec<(f64, f64)>, SpectrumError>
where
    F: FnMut(f64) -> Result<f64, SpectrumError>,
{
    let n = cfg.scan_points;
    let step = (hi - lo) / (n - 1) as f64;
    let mut energies = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let e = if i == n - 1 { hi } else { lo + step * i as f64 };
        energies.push(e);
        values.push(f(e)?);
    }
    let scale = values
        .iter()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let width_goal = cfg.energy_rel_tol * de;
    let res_goal = RESIDUAL_REL * scale.max(1.0);
    let mut roots = Vec::new();
    for i in 0..n - 1 {
        if values[i] == 0.0 {
            roots.push((energies[i], 0.0));
            continue;
        }
        if !values[i].is_finite()
            || !values[i + 1].is_finite()
            || values[i + 1] == 0.0
            || values[i].signum() == values[i + 1].signum()
        {
            continue;
        }
        let (mut a, mut b) = (energies[i], energies[i + 1]);
        let mut fa = values[i];
        let mut root = 0.5 * (a + b);
        let mut residual = f64::INFINITY;
        for _ in 0..cfg.max_bisections {
            if b - a <= width_goal && residual <= res_goal {
                break;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = f(mid)?;
            root = mid;
            residual = fm.abs();
            if fm == 0.0 {
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        roots.push((root, residual));
    }
    if values[n - 1] == 0.0 {
        roots.push((energies[n - 1], 0.0));
    }
    Ok(roots)
}

fn roots_to_states(
    roots: Vec<(f64, f64)>,
    regime: Regime,
) -> Vec<BoundState> {
    roots
        .into_iter()
        .enumerate()
        .map(|(i, (energy, residual))| BoundState {
            nr: i as u32,
            l: 0,
            energy,
            regime,
            method: SolveMethod::TranscendentalRoot,
            residual,
        })
        .collect()
}

/// s-wave bound states in the weak regime (−1 < q < 0) as roots of
/// ₂F₁(M1−L_E, L_E+M1+1, M1−M2+1; |q|) = 0.
pub fn solve_transcendental_weak(
    params: &MoleculeParams,
    cfg: &RootSearchConfig,
) -> Result<Vec<BoundState>, SpectrumError> {
    let regime = require_regime(params, RegimeTag::DeformedManningRosenWeak, "weak-regime solver")?;
    let mr = manning_rosen_constants(params)?;
    let aq = params.q.abs();
    let ha = params.hbar * params.alpha;
    let delta0 = 0.5 * (1.0 + 8.0 * params.mass * mr.u2 / (ha * ha)).sqrt();
    let top = params.de * (4.0 * params.alpha * params.re).exp() / (params.q * params.q);
    let ctl = SeriesControl::default();
    let two_m = 2.0 * params.mass;
    let eval = |e: f64| -> Result<f64, SpectrumError> {
        let le = -0.5 + (two_m * (top - e)).sqrt() / (2.0 * ha);
        let s = (two_m * (params.de - e)).sqrt() / (2.0 * ha);
        let (m1, m2) = (delta0 + s, delta0 - s);
        Ok(gauss_2f1(m1 - le, le + m1 + 1.0, m1 - m2 + 1.0, aq, ctl)?)
    };
    // both radicands stay nonnegative on (0, De) since top > De, so the only
    // clipping needed is the window itself
    let lo = cfg.e_min.max(0.0);
    let hi = cfg.e_max.min(params.de);
    if !(lo < hi) {
        return Ok(Vec::new());
    }
    let roots = scan_roots(eval, lo, hi, cfg, params.de)?;
    Ok(roots_to_states(roots, regime))
}

/// s-wave bound states in the Rosen-Morse regime (q > 0) as roots of
/// ₂F₁(M1−L_E0, L_E0+M1+1, M1+M2+1; q/(1+q)) = 0.
pub fn solve_transcendental_rm(
    params: &MoleculeParams,
    cfg: &RootSearchConfig,
) -> Result<Vec<BoundState>, SpectrumError> {
    let regime = require_regime(params, RegimeTag::DeformedRosenMorse, "Rosen-Morse solver")?;
    let rm = rosen_morse_constants(params)?;
    let ha = params.hbar * params.alpha;
    let le0 = -0.5 + (0.25 + 2.0 * params.mass * rm.v2 / (ha * ha)).sqrt();
    let sum_high = rm.v0 + rm.v1 + rm.v2;
    let sum_low = rm.v0 - rm.v1 + rm.v2;
    let z = params.q / (1.0 + params.q);
    let ctl = SeriesControl::default();
    let two_m = 2.0 * params.mass;
    let eval = |e: f64| -> Result<f64, SpectrumError> {
        let sa = (two_m * (sum_high - e)).sqrt();
        let sb = (two_m * (sum_low - e)).sqrt();
        let m1 = (sa + sb) / (2.0 * ha);
        let m2 = (sa - sb) / (2.0 * ha);
        Ok(gauss_2f1(m1 - le0, le0 + m1 + 1.0, m1 + m2 + 1.0, z, ctl)?)
    };
    // keep both square roots real across the scan: M2's radicand vanishes
    // below De for q > e^{2αre}, and the summed sa zero (exactly De in exact
    // arithmetic) can land a few ulps below it at extreme q, where the
    // constants cancel across ~e^{4αre}/q² scales
    let cap = params.de.min(sum_low).min(sum_high);
    let lo = cfg.e_min.max(0.0);
    let hi = cfg.e_max.min(cap * (1.0 - f64::EPSILON));
    if !(lo < hi) {
        return Ok(Vec::new());
    }
    let roots = scan_roots(eval, lo, hi, cfg, params.de)?;
    Ok(roots_to_states(roots, regime))
}

/// Morse-limit spectrum E_nr = −(2ħ²α²/M)[(nr+1/2)² − (nr+1/2)·√(2MDe)/(ħα)]
/// for nr = 0 … ⌈λ − 1/2⌉ − 1 with λ = √(2MDe)/(2ħα).
pub fn morse_energies(params: &MoleculeParams) -> Result<Vec<BoundState>, SpectrumError> {
    let regime = require_regime(params, RegimeTag::Morse, "Morse formula")?;
    let root2mde = (2.0 * params.mass * params.de).sqrt();
    let ha = params.hbar * params.alpha;
    let lam = root2mde / (2.0 * ha);
    if lam <= 0.5 {
        return Ok(Vec::new());
    }
    let nr_max = ((lam - 0.5).ceil() as i64) - 1;
    let pref = 2.0 * ha * ha / params.mass;
    let mut states = Vec::new();
    for nr in 0..=nr_max {
        let x = nr as f64 + 0.5;
        let energy = -pref * (x * x - x * root2mde / ha);
        states.push(BoundState {
            nr: nr as u32,
            l: 0,
            energy,
            regime,
            method: SolveMethod::MorseFormula,
            residual: 0.0,
        });
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{centrifugal_coeffs, Scheme};

    fn desk(q: f64) -> MoleculeParams {
        MoleculeParams::new(10.0, 1.2, 0.5, q, 1.0, 1.0).unwrap()
    }

    fn desk_cc() -> (MoleculeParams, CentrifugalCoeffs) {
        let p = desk(-2.0);
        let cc = centrifugal_coeffs(Scheme::GreeneAldrich, &p).unwrap();
        (p, cc)
    }

    fn tight_cfg(de: f64) -> RootSearchConfig {
        RootSearchConfig { energy_rel_tol: 1e-12, ..RootSearchConfig::for_dissociation(de) }
    }

    #[test]
    fn shape_frozen_values() {
        let (p, cc) = desk_cc();
        let (d0, lam0) = strong_shape(&p, 0, &cc).unwrap();
        assert!((d0 - 2.9939177424366648).abs() < 1e-13);
        assert!((lam0 - 35.115881903208).abs() < 1e-11);
        let (d1, lam1) = strong_shape(&p, 1, &cc).unwrap();
        assert!((d1 - 3.07628728315108).abs() < 1e-13);
        // Greene-Aldrich has A0/|q|² = B0/|q|, so λ_l is l-independent
        assert!((lam1 - lam0).abs() < 1e-12);
        let (d2, _) = strong_shape(&p, 2, &cc).unwrap();
        assert!((d2 - 3.234740089787285).abs() < 1e-13);
    }

    #[test]
    fn closed_form_frozen_spectrum() {
        let (p, cc) = desk_cc();
        let expected = [
            [4.626280893666795, 8.62205624468713, 9.899231713705657],
            [5.128428872758917, 8.800952921700643, 9.935006979914327],
            [5.984566673469336, 9.100923895225037, 9.981121755838052],
        ];
        for l in 0..3u32 {
            for nr in 0..3u32 {
                let st = energy_closed_form(&p, nr, l, &cc).unwrap();
                let want = expected[l as usize][nr as usize];
                assert!(
                    (st.energy - want).abs() <= 1e-12 * want,
                    "nr={nr} l={l}: {} vs {want}",
                    st.energy
                );
                assert_eq!(st.method, SolveMethod::ClosedForm);
                assert_eq!(st.residual, 0.0);
                assert!(st.energy < p.de);
            }
        }
    }

    #[test]
    fn pole_condition_consistency() {
        // the closed-form energy must solve M1 - L_E = -nr
        let (p, cc) = desk_cc();
        for l in 0..3u32 {
            for nr in 0..3u32 {
                let st = energy_closed_form(&p, nr, l, &cc).unwrap();
                let sp = spectral_params_strong(&p, l, &cc, st.energy).unwrap();
                let defect = sp.m1 - sp.le + f64::from(nr);
                assert!(defect.abs() < 1e-10, "nr={nr} l={l}: defect {defect:e}");
            }
        }
    }

    #[test]
    fn spectral_params_identities() {
        let (p, cc) = desk_cc();
        for e in [1.0, 4.0, 7.5, 9.9] {
            for l in [0u32, 1, 2] {
                let sp = spectral_params_strong(&p, l, &cc, e).unwrap();
                assert!((sp.m1 + sp.m2 - 2.0 * sp.delta_l).abs() < 1e-12);
                assert!(sp.m1 - sp.m2 > 0.0);
                assert!(sp.delta_l >= 0.5);
                assert!(sp.big_n.is_none());
                // with U0-U1+U2 = De the M-radicand reduces to 2M(De-E)/hbar^2 + l(l+1)C0
                let want = (2.0 * p.mass * (p.de - e) / (p.hbar * p.hbar)
                    + f64::from(l) * f64::from(l + 1) * cc.c0)
                    .sqrt()
                    / (2.0 * p.alpha);
                assert!((sp.m1 - sp.delta_l - want).abs() < 1e-11, "l={l} e={e}");
            }
        }
    }

    #[test]
    fn spectral_params_rejects_out_of_range_energy() {
        let (p, cc) = desk_cc();
        assert!(matches!(
            spectral_params_strong(&p, 0, &cc, 15.0),
            Err(SpectrumError::EnergyOutOfRange(_))
        ));
    }

    #[test]
    fn max_quantum_number_desk_and_synthetic() {
        let (p, cc) = desk_cc();
        for l in 0..3u32 {
            assert_eq!(max_quantum_number(&p, l, &cc).unwrap(), 2, "l={l}");
        }
        // sqrt(30.25) - 2 - 0.5 = 3.0, strict inequality keeps nr = 2
        assert_eq!(nr_max_from_shape(2.0, 30.25), 2);
        assert_eq!(nr_max_from_shape(2.0, 30.0), 2);
        // empty spectrum when lambda_l <= (delta_l + 1/2)^2
        assert_eq!(nr_max_from_shape(2.0, 6.25), -1);
        assert_eq!(nr_max_from_shape(2.0, -1.0), -1);
    }

    #[test]
    fn closed_form_rejects_nr_above_cutoff() {
        let (p, cc) = desk_cc();
        assert!(matches!(
            energy_closed_form(&p, 3, 0, &cc),
            Err(SpectrumError::NoSuchState { nr: 3, nr_max: 2 })
        ));
    }

    #[test]
    fn closed_form_rejects_wrong_regime() {
        let p = desk(-0.5);
        let (_, cc) = desk_cc();
        assert!(matches!(
            energy_closed_form(&p, 0, 0, &cc),
            Err(SpectrumError::Regime(_))
        ));
    }

    #[test]
    fn weak_roots_frozen() {
        let p = desk(-0.5);
        let states = solve_transcendental_weak(&p, &tight_cfg(p.de)).unwrap();
        let expected = [
            2.455851983519848,
            6.197416032326487,
            8.594968434278503,
            9.79814718524964,
        ];
        assert_eq!(states.len(), expected.len());
        for (st, want) in states.iter().zip(expected) {
            assert!(
                (st.energy - want).abs() <= 1e-9 * want,
                "nr={}: {} vs {want}",
                st.nr,
                st.energy
            );
            assert_eq!(st.method, SolveMethod::TranscendentalRoot);
            assert_eq!(st.l, 0);
            assert!(st.energy < p.de);
        }
        for w in states.windows(2) {
            assert!(w[1].energy > w[0].energy + 1e-8);
            assert_eq!(w[1].nr, w[0].nr + 1);
        }
    }

    #[test]
    fn rosen_morse_roots_frozen() {
        let cases: [(f64, &[f64]); 2] = [
            (1.0, &[
                1.646498804034,
                4.621420447903,
                7.055306370297,
                8.835808572311,
                9.832985151385,
            ]),
            (3.0, &[
                1.191354991405,
                3.587690153757,
                5.877766117371,
                7.841376374191,
                9.267129395079,
                9.963153998687,
            ]),
        ];
        for (q, expected) in cases {
            let p = desk(q);
            let states = solve_transcendental_rm(&p, &tight_cfg(p.de)).unwrap();
            assert_eq!(states.len(), expected.len(), "q={q}");
            for (st, want) in states.iter().zip(expected) {
                assert!(
                    (st.energy - want).abs() <= 1e-9 * want,
                    "q={q} nr={}: {} vs {want}",
                    st.nr,
                    st.energy
                );
            }
        }
    }

    #[test]
    fn transcendental_residuals_meet_acceptance_bound() {
        // accepted roots must satisfy |f(E)| <= 1e-8 * max(1, scan scale of |f|);
        // rebuild the weak quantization function here to measure that scale
        let p = desk(-0.5);
        let cfg = RootSearchConfig::for_dissociation(p.de);
        let states = solve_transcendental_weak(&p, &cfg).unwrap();
        let mr = manning_rosen_constants(&p).unwrap();
        let ha = p.hbar * p.alpha;
        let delta0 = 0.5 * (1.0 + 8.0 * p.mass * mr.u2 / (ha * ha)).sqrt();
        let top = p.de * (4.0 * p.alpha * p.re).exp() / (p.q * p.q);
        let ctl = SeriesControl::default();
        let f = |e: f64| {
            let le = -0.5 + (2.0 * p.mass * (top - e)).sqrt() / (2.0 * ha);
            let s = (2.0 * p.mass * (p.de - e)).sqrt() / (2.0 * ha);
            gauss_2f1(delta0 + s - le, le + delta0 + s + 1.0, 2.0 * s + 1.0, p.q.abs(), ctl)
                .unwrap()
        };
        let lo = cfg.e_min;
        let hi = cfg.e_max.min(p.de);
        let mut scale = 0.0f64;
        for i in 0..cfg.scan_points {
            let e = lo + (hi - lo) * i as f64 / (cfg.scan_points - 1) as f64;
            scale = scale.max(f(e).abs());
        }
        assert!(!states.is_empty());
        for st in &states {
            assert!(
                st.residual <= 1e-8 * scale.max(1.0),
                "nr={}: residual {} vs scale {scale}",
                st.nr,
                st.residual
            );
        }
    }

    #[test]
    fn weak_solver_rejects_strong_q() {
        let p = desk(-2.0);
        assert!(matches!(
            solve_transcendental_weak(&p, &RootSearchConfig::for_dissociation(p.de)),
            Err(SpectrumError::Regime(_))
        ));
    }

    #[test]
    fn morse_frozen_spectrum() {
        let p = desk(0.0);
        let states = morse_energies(&p).unwrap();
        let expected = [
            2.11106797749979,
            5.583203932499369,
            8.055339887498949,
            9.527475842498529,
        ];
        assert_eq!(states.len(), expected.len());
        for (st, want) in states.iter().zip(expected) {
            assert!((st.energy - want).abs() <= 1e-13 * want);
            assert_eq!(st.method, SolveMethod::MorseFormula);
        }
        for w in states.windows(2) {
            assert!(w[1].energy > w[0].energy);
        }
    }

    #[test]
    fn morse_textbook_case() {
        // De = 8 with hbar = M = 1, alpha = 1/2: lambda = 4, cutoff 3, E0 = 1.875
        let p = MoleculeParams::new(8.0, 1.2, 0.5, 0.0, 1.0, 1.0).unwrap();
        let states = morse_energies(&p).unwrap();
        assert_eq!(states.len(), 4);
        assert!((states[0].energy - 1.875).abs() < 1e-14);
        assert!((states[3].energy - 7.875).abs() < 1e-14);
    }

    #[test]
    fn morse_empty_for_shallow_well() {
        // lambda <= 1/2 when De <= hbar^2 alpha^2 / (2M)
        let p = MoleculeParams::new(0.1, 1.2, 0.5, 0.0, 1.0, 1.0).unwrap();
        assert!(morse_energies(&p).unwrap().is_empty());
    }

    #[test]
    fn morse_rejects_nonzero_q() {
        assert!(matches!(morse_energies(&desk(0.5)), Err(SpectrumError::Regime(_))));
    }

    #[test]
    fn root_search_config_validation() {
        assert!(RootSearchConfig::new(1.0, 0.5, 100, 1e-8, 50).is_err());
        assert!(RootSearchConfig::new(0.0, 10.0, 15, 1e-8, 50).is_err());
        assert!(RootSearchConfig::new(0.0, 10.0, 100, 0.0, 50).is_err());
        assert!(RootSearchConfig::new(0.0, 10.0, 100, 1e-8, 0).is_err());
        assert!(RootSearchConfig::new(0.0, 10.0, 100, 1e-8, 50).is_ok());
    }

    #[test]
    fn narrow_window_yields_subset() {
        let p = desk(-0.5);
        let cfg = RootSearchConfig {
            e_min: 5.0,
            e_max: 9.0,
            ..tight_cfg(p.de)
        };
        let states = solve_transcendental_weak(&p, &cfg).unwrap();
        assert_eq!(states.len(), 2);
        assert!((states[0].energy - 6.197416032326487).abs() < 1e-8);
        assert!((states[1].energy - 8.594968434278503).abs() < 1e-8);
        // labels restart from 0 inside the window
        assert_eq!(states[0].nr, 0);
    }
}
