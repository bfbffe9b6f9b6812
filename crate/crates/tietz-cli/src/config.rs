//! Run-configuration ingestion: flat `key = value` text with `#` comments,
//! unit-system handling, and translation into the library parameter structs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use tietz::potential::{classify, MoleculeParams, RegimeTag, Scheme};
use tietz::spectrum::RootSearchConfig;

/// ħ²/(2·(1 amu)·(1 Å)²) expressed in cm⁻¹, from the SI-exact
/// h = 6.62607015e-34 J·s and c = 299792458 m/s together with the CODATA
/// 2018 atomic mass constant 1 amu = 1.66053906660e-27 kg.
pub const HBAR2_OVER_2_AMU_ANGSTROM2_CM: f64 = 16.857629191640175;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    /// All quantities in one consistent system with explicit mass and ħ.
    Natural,
    /// De in cm⁻¹, re in Å, α in Å⁻¹, mass in amu; ħ is fixed by the
    /// conversion constant and energies come out in cm⁻¹.
    Molecular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub molecule: MoleculeParams,
    pub unit_system: UnitSystem,
    pub l_max: u32,
    pub scheme: Scheme,
    pub root_search: RootSearchConfig,
}

pub fn load_config(path: &Path) -> Result<RunConfig, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    build_config(parse_pairs(&text)?)
}

fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut kv = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`, got `{line}`", idx + 1))?;
        let key = k.trim().to_string();
        let value = v.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(format!("line {}: empty key or value", idx + 1));
        }
        if kv.insert(key.clone(), value).is_some() {
            return Err(format!("duplicate key `{key}`"));
        }
    }
    Ok(kv)
}

fn take(kv: &mut BTreeMap<String, String>, key: &str) -> Result<String, String> {
    kv.remove(key).ok_or_else(|| format!("missing key `{key}`"))
}

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value.parse().map_err(|_| format!("`{key}`: not a number: `{value}`"))
}

fn build_config(mut kv: BTreeMap<String, String>) -> Result<RunConfig, String> {
    let unit_system = match take(&mut kv, "unit_system")?.as_str() {
        "natural" => UnitSystem::Natural,
        "molecular" => UnitSystem::Molecular,
        other => return Err(format!("`unit_system`: unknown unit system `{other}`")),
    };
    let de = parse_f64("De", &take(&mut kv, "De")?)?;
    let re = parse_f64("re", &take(&mut kv, "re")?)?;
    let alpha = parse_f64("alpha", &take(&mut kv, "alpha")?)?;
    let q = parse_f64("q", &take(&mut kv, "q")?)?;
    let mass = parse_f64("mass", &take(&mut kv, "mass")?)?;
    for (key, v) in [("De", de), ("re", re), ("alpha", alpha), ("mass", mass)] {
        if !v.is_finite() || !(v > 0.0) {
            return Err(format!("`{key}` must be positive and finite, got {v}"));
        }
    }
    if !q.is_finite() {
        return Err(format!("`q` must be finite, got {q}"));
    }

    let hbar = match unit_system {
        UnitSystem::Natural => match kv.remove("hbar") {
            Some(v) => {
                let h = parse_f64("hbar", &v)?;
                if !h.is_finite() || !(h > 0.0) {
                    return Err(format!("`hbar` must be positive and finite, got {h}"));
                }
                h
            }
            None => 1.0,
        },
        UnitSystem::Molecular => {
            if kv.remove("hbar").is_some() {
                return Err(
                    "`hbar` applies to natural units only; molecular units fix it through the \
                     amu/Å/cm⁻¹ conversion constant"
                        .into(),
                );
            }
            // with mass kept in amu, this hbar makes ħ²/(2M) = C/mass in
            // cm⁻¹·Å², so energies come out in cm⁻¹ directly
            (2.0 * HBAR2_OVER_2_AMU_ANGSTROM2_CM).sqrt()
        }
    };

    let l_max: u32 = match kv.remove("l_max") {
        Some(v) => v.parse().map_err(|_| format!("`l_max`: not a non-negative integer: `{v}`"))?,
        None => 0,
    };
    let scheme = match kv.remove("scheme").as_deref() {
        None | Some("greene-aldrich") => Scheme::GreeneAldrich,
        Some("taylor-match") => Scheme::TaylorMatch,
        Some(other) => return Err(format!("`scheme`: unknown scheme `{other}`")),
    };

    let defaults = RootSearchConfig::for_dissociation(de);
    let scan_points: usize = match kv.remove("e_scan_points") {
        Some(v) => v.parse().map_err(|_| format!("`e_scan_points`: not a positive integer: `{v}`"))?,
        None => defaults.scan_points,
    };
    let energy_rel_tol = match kv.remove("energy_rel_tol") {
        Some(v) => parse_f64("energy_rel_tol", &v)?,
        None => defaults.energy_rel_tol,
    };
    let root_search = RootSearchConfig::new(
        defaults.e_min,
        defaults.e_max,
        scan_points,
        energy_rel_tol,
        defaults.max_bisections,
    )
    .map_err(|e| e.to_string())?;

    if let Some(key) = kv.keys().next() {
        return Err(format!("unknown key `{key}`"));
    }

    let molecule = MoleculeParams::new(de, re, alpha, q, mass, hbar).map_err(|e| e.to_string())?;
    if l_max > 0 && classify(&molecule).tag != RegimeTag::DeformedManningRosenStrong {
        return Err(format!(
            "`l_max` = {l_max}: only s-waves (l = 0) are available for q = {q}"
        ));
    }

    Ok(RunConfig { molecule, unit_system, l_max, scheme, root_search })
}

/// Inverse of `load_config`: a flat document that reloads to an identical
/// `RunConfig`. Floats print in Rust's shortest round-trip form. Not wired
/// to a subcommand yet; the round-trip property is pinned by tests.
#[allow(dead_code)]
pub fn emit_config(cfg: &RunConfig) -> String {
    let m = &cfg.molecule;
    let mut out = String::new();
    let system = match cfg.unit_system {
        UnitSystem::Natural => "natural",
        UnitSystem::Molecular => "molecular",
    };
    out.push_str(&format!("unit_system = {system}\n"));
    out.push_str(&format!("De = {}\n", m.de));
    out.push_str(&format!("re = {}\n", m.re));
    out.push_str(&format!("alpha = {}\n", m.alpha));
    out.push_str(&format!("q = {}\n", m.q));
    out.push_str(&format!("mass = {}\n", m.mass));
    if cfg.unit_system == UnitSystem::Natural {
        out.push_str(&format!("hbar = {}\n", m.hbar));
    }
    out.push_str(&format!("l_max = {}\n", cfg.l_max));
    let scheme = match cfg.scheme {
        Scheme::GreeneAldrich => "greene-aldrich",
        Scheme::TaylorMatch => "taylor-match",
    };
    out.push_str(&format!("scheme = {scheme}\n"));
    out.push_str(&format!("e_scan_points = {}\n", cfg.root_search.scan_points));
    out.push_str(&format!("energy_rel_tol = {}\n", cfg.root_search.energy_rel_tol));
    out
}
