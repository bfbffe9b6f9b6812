//! The improved Tietz potential, its deformation regimes, and the parameter
//! mappings used by the spectral solvers: q-deformed hyperbolic functions,
//! Manning-Rosen and Rosen-Morse constant sets, the centrifugal
//! approximation, and the effective-potential coefficients.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PotentialError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("evaluation at a pole (location {location})")]
    Pole { location: f64 },
    #[error("wrong regime: {0}")]
    Regime(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Diatomic-molecule model parameters. All quantities are carried in one
/// consistent unit system chosen by the caller; ħ is explicit so natural-unit
/// and physical-unit runs share a single code path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoleculeParams {
    /// Dissociation energy.
    pub de: f64,
    /// Equilibrium bond length.
    pub re: f64,
    /// Range parameter of the potential (inverse length).
    pub alpha: f64,
    /// Deformation parameter; sign and magnitude select the regime.
    pub q: f64,
    /// Reduced mass.
    pub mass: f64,
    /// Reduced Planck constant in the caller's unit system.
    pub hbar: f64,
}

impl MoleculeParams {
    pub fn new(
        de: f64,
        re: f64,
        alpha: f64,
        q: f64,
        mass: f64,
        hbar: f64,
    ) -> Result<Self, PotentialError> {
        let check_pos = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(PotentialError::InvalidParams(format!(
                    "{name} must be finite and > 0, got {v}"
                )))
            }
        };
        check_pos("De", de)?;
        check_pos("re", re)?;
        check_pos("alpha", alpha)?;
        check_pos("mass", mass)?;
        check_pos("hbar", hbar)?;
        if !q.is_finite() {
            return Err(PotentialError::InvalidParams(format!("q must be finite, got {q}")));
        }
        Ok(Self { de, re, alpha, q, mass, hbar })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeTag {
    /// q ≤ −1: deformed Manning-Rosen with a singularity at r0 > 0
    /// (r0 = 0 exactly at q = −1).
    DeformedManningRosenStrong,
    /// −1 < q < 0: deformed Manning-Rosen, regular on r > 0.
    DeformedManningRosenWeak,
    /// q > 0: deformed Rosen-Morse, regular on r > 0.
    DeformedRosenMorse,
    /// q = 0: Morse limit.
    Morse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub tag: RegimeTag,
    /// Radius of the potential singularity, (1/2α)·ln|q| for q ≤ −1; zero in
    /// every other regime (for q > 0 the denominator e^{2αr}+q never
    /// vanishes, so no pole exists no matter how large q is).
    pub r0: f64,
}

/// Regime selection by the sign and magnitude of q alone.
pub fn classify(params: &MoleculeParams) -> Regime {
    let q = params.q;
    if q == 0.0 {
        Regime { tag: RegimeTag::Morse, r0: 0.0 }
    } else if q > 0.0 {
        Regime { tag: RegimeTag::DeformedRosenMorse, r0: 0.0 }
    } else if q > -1.0 {
        Regime { tag: RegimeTag::DeformedManningRosenWeak, r0: 0.0 }
    } else {
        let r0 = (q.abs().ln() / (2.0 * params.alpha)).max(0.0);
        Regime { tag: RegimeTag::DeformedManningRosenStrong, r0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyperbolic {
    Sinh,
    Cosh,
    Tanh,
    Coth,
}

pub(crate) fn sinh_q(q: f64, x: f64) -> f64 {
    (x.exp() - q * (-x).exp()) / 2.0
}

pub(crate) fn cosh_q(q: f64, x: f64) -> f64 {
    (x.exp() + q * (-x).exp()) / 2.0
}

/// q-deformed hyperbolic functions: sinh_q x = (e^x − q e^{−x})/2,
/// cosh_q x = (e^x + q e^{−x})/2, and their ratio forms. They satisfy
/// cosh²_q − sinh²_q = q.
pub fn deformed_hyperbolic(kind: Hyperbolic, q: f64, x: f64) -> Result<f64, PotentialError> {
    let pole = || PotentialError::Pole { location: 0.5 * q.abs().ln() };
    match kind {
        Hyperbolic::Sinh => Ok(sinh_q(q, x)),
        Hyperbolic::Cosh => Ok(cosh_q(q, x)),
        Hyperbolic::Tanh => {
            let c = cosh_q(q, x);
            if c == 0.0 {
                return Err(pole());
            }
            Ok(sinh_q(q, x) / c)
        }
        Hyperbolic::Coth => {
            let s = sinh_q(q, x);
            if s == 0.0 {
                return Err(pole());
            }
            Ok(cosh_q(q, x) / s)
        }
    }
}

/// Half-width of the guard band around the strong-regime singularity, in
/// units of 1/α. Evaluation inside it raises the pole error instead of
/// returning a huge number, which protects grid builders from overflow.
const POLE_BAND: f64 = 1e-9;

/// The improved Tietz potential
/// V(r) = De·(1 − (e^{2αre}+q)/(e^{2αr}+q))².
pub fn tietz_potential(params: &MoleculeParams, r: f64) -> Result<f64, PotentialError> {
    if !(r > 0.0) {
        return Err(PotentialError::InvalidParams(format!("r must be > 0, got {r}")));
    }
    let regime = classify(params);
    if regime.r0 > 0.0 && (r - regime.r0).abs() < POLE_BAND / params.alpha {
        return Err(PotentialError::Pole { location: regime.r0 });
    }
    let num = (2.0 * params.alpha * params.re).exp() + params.q;
    let den = (2.0 * params.alpha * r).exp() + params.q;
    if den == 0.0 {
        return Err(PotentialError::Pole { location: regime.r0 });
    }
    let f = 1.0 - num / den;
    Ok(params.de * f * f)
}

/// Morse potential De·(1 − e^{−2α(r−re)})², the q = 0 limit of the Tietz
/// form. Only De, re, alpha are read.
pub fn morse_potential(params: &MoleculeParams, r: f64) -> f64 {
    let f = 1.0 - (-2.0 * params.alpha * (r - params.re)).exp();
    params.de * f * f
}

/// Constants of the deformed Manning-Rosen form
/// V(r) = U0 − U1·coth_|q|(αr) + U2·coth²_|q|(αr), valid for q < 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManningRosenConstants {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
}

pub fn manning_rosen_constants(
    params: &MoleculeParams,
) -> Result<ManningRosenConstants, PotentialError> {
    if params.q >= 0.0 {
        return Err(PotentialError::Regime(format!(
            "Manning-Rosen constants require q < 0, got q = {}",
            params.q
        )));
    }
    let x = (2.0 * params.alpha * params.re).exp() / params.q.abs();
    let de4 = params.de / 4.0;
    Ok(ManningRosenConstants {
        u0: de4 * (x + 1.0) * (x + 1.0),
        u1: 2.0 * de4 * (x + 1.0) * (x - 1.0),
        u2: de4 * (x - 1.0) * (x - 1.0),
    })
}

/// Constants of the deformed Rosen-Morse form
/// V(r) = V0 + V1·tanh_q(αr) + V2·tanh²_q(αr), valid for q > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RosenMorseConstants {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
}

pub fn rosen_morse_constants(
    params: &MoleculeParams,
) -> Result<RosenMorseConstants, PotentialError> {
    if params.q <= 0.0 {
        return Err(PotentialError::Regime(format!(
            "Rosen-Morse constants require q > 0, got q = {}",
            params.q
        )));
    }
    let x = (2.0 * params.alpha * params.re).exp() / params.q;
    let de4 = params.de / 4.0;
    Ok(RosenMorseConstants {
        v0: de4 * (x - 1.0) * (x - 1.0),
        v1: -2.0 * de4 * (x + 1.0) * (x - 1.0),
        v2: de4 * (x + 1.0) * (x + 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// C0 = 0, B0 = A0/|q|, A0 = α²q²: the classic short-range reduction.
    GreeneAldrich,
    /// C0 = α²/12; A0, B0 solved so the approximation matches 1/r² in value
    /// and first derivative at r = re.
    TaylorMatch,
}

/// Coefficients of the centrifugal approximation
/// 1/r² ≈ C0 + B0/(e^{2αr}−|q|) + A0/(e^{2αr}−|q|)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentrifugalCoeffs {
    pub a0: f64,
    pub b0: f64,
    pub c0: f64,
    pub scheme: Scheme,
}

impl CentrifugalCoeffs {
    /// The approximated 1/r² at radius r.
    pub fn approx_inv_r2(&self, params: &MoleculeParams, r: f64) -> f64 {
        let s = 1.0 / ((2.0 * params.alpha * r).exp() - params.q.abs());
        self.c0 + self.b0 * s + self.a0 * s * s
    }
}

pub fn centrifugal_coeffs(
    scheme: Scheme,
    params: &MoleculeParams,
) -> Result<CentrifugalCoeffs, PotentialError> {
    if !(params.q < 0.0 && params.q.abs() >= 1.0) {
        return Err(PotentialError::Regime(format!(
            "centrifugal approximation requires q ≤ −1, got q = {}",
            params.q
        )));
    }
    let alpha = params.alpha;
    let aq = params.q.abs();
    match scheme {
        Scheme::GreeneAldrich => Ok(CentrifugalCoeffs {
            a0: alpha * alpha * params.q * params.q,
            b0: alpha * alpha * aq,
            c0: 0.0,
            scheme,
        }),
        Scheme::TaylorMatch => {
            let c0 = alpha * alpha / 12.0;
            let e2 = (2.0 * alpha * params.re).exp();
            let denom = e2 - aq;
            if denom <= 0.0 {
                return Err(PotentialError::Internal(format!(
                    "TaylorMatch anchor re = {} does not lie beyond the singularity",
                    params.re
                )));
            }
            // match value and slope of 1/r² at re: with g(r) = 1/(e^{2αr}−|q|),
            //   A0 g² + B0 g = 1/re² − C0
            //   A0 2gg' + B0 g' = −2/re³
            let g = 1.0 / denom;
            let gp = -2.0 * alpha * e2 * g * g;
            let rhs1 = 1.0 / (params.re * params.re) - c0;
            let rhs2 = -2.0 / (params.re * params.re * params.re);
            let a0 = (rhs2 * g / gp - rhs1) / (g * g);
            let b0 = rhs2 / gp - 2.0 * a0 * g;
            if !(a0.is_finite() && b0.is_finite()) {
                return Err(PotentialError::Internal(
                    "TaylorMatch system produced non-finite coefficients".into(),
                ));
            }
            Ok(CentrifugalCoeffs { a0, b0, c0, scheme })
        }
    }
}

/// Coefficients of the effective potential
/// V_eff(r) = V0l − V1l·coth_|q|(αr) + V2l/sinh²_|q|(αr),
/// which is the deformed Manning-Rosen potential plus the approximated
/// centrifugal term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePotentialCoeffs {
    pub v0l: f64,
    pub v1l: f64,
    pub v2l: f64,
}

impl EffectivePotentialCoeffs {
    pub fn eval(&self, params: &MoleculeParams, r: f64) -> Result<f64, PotentialError> {
        let aq = params.q.abs();
        let x = params.alpha * r;
        let s = sinh_q(aq, x);
        if s == 0.0 {
            return Err(PotentialError::Pole { location: 0.5 * aq.ln() / params.alpha });
        }
        let coth = cosh_q(aq, x) / s;
        Ok(self.v0l - self.v1l * coth + self.v2l / (s * s))
    }

    /// Large-r limit V0l − V1l, the continuum threshold of the effective
    /// potential.
    pub fn asymptote(&self) -> f64 {
        self.v0l - self.v1l
    }
}

pub fn effective_coeffs(
    params: &MoleculeParams,
    l: u32,
    cc: &CentrifugalCoeffs,
) -> Result<EffectivePotentialCoeffs, PotentialError> {
    let mr = manning_rosen_constants(params)?;
    let aq = params.q.abs();
    let ll = f64::from(l) * f64::from(l + 1);
    let kappa = params.hbar * params.hbar * ll / (2.0 * params.mass);
    let gap = cc.a0 / aq - cc.b0;
    Ok(EffectivePotentialCoeffs {
        v0l: kappa * (cc.c0 + gap / (2.0 * aq)) + mr.u0 + mr.u2,
        v1l: kappa * gap / (2.0 * aq) + mr.u1,
        v2l: kappa * cc.a0 / (4.0 * aq) + aq * mr.u2,
    })
}
