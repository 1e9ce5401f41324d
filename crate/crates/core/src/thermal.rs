//! Thermal (Gibbs) states of the trapped particle and the temperature sweep
//! of the three-qubit correlation measures.
//!
//! The Hamiltonian is diagonal in the energy eigenbasis, so the Gibbs state
//! is built directly from Boltzmann weights. Weights are shifted by the
//! ground energy before exponentiation, which keeps `T -> 0` finite.

use std::io::{self, Write};

use crate::encodings::{InformationProfile, ThreeQubitView};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Population a zero-energy continuum level may reach before a sweep point
/// is flagged.
pub const CONTINUUM_WARN_POPULATION: f64 = 0.01;

pub const DEFAULT_TMIN: f64 = 0.1;
pub const DEFAULT_TMAX: f64 = 50.0;
pub const DEFAULT_POINTS: usize = 200;

pub const CSV_HEADER: &str = "T,I_AB,I_AC,I_BC,I_AB_given_C,I_AC_given_B,I_BC_given_A";

#[derive(Debug, Clone, PartialEq)]
pub struct GibbsSpec {
    energies: Vec<f64>,
    temperature: f64,
}

impl GibbsSpec {
    pub fn new(energies: Vec<f64>, temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::InvalidTemperature(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        if energies.is_empty() || energies.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidTemperature(
                "energies must be non-empty and strictly increasing".into(),
            ));
        }
        Ok(Self {
            energies,
            temperature,
        })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    fn shifted_weights(&self) -> Vec<f64> {
        let ground = self.energies[0];
        self.energies
            .iter()
            .map(|&e| (-(e - ground) / self.temperature).exp())
            .collect()
    }

    /// Boltzmann populations `exp(-E_n / T) / Z`.
    pub fn populations(&self) -> Vec<f64> {
        let w = self.shifted_weights();
        let z: f64 = w.iter().sum();
        w.into_iter().map(|x| x / z).collect()
    }

    /// `ln Z` with `Z = sum_n exp(-E_n / T)`.
    pub fn log_partition_function(&self) -> f64 {
        let z_shifted: f64 = self.shifted_weights().iter().sum();
        -self.energies[0] / self.temperature + z_shifted.ln()
    }

    /// Population a hypothetical extra level at `E = 0` would take if it
    /// joined the spectrum; a proxy for leakage into the continuum.
    pub fn continuum_leakage(&self) -> f64 {
        let w = self.shifted_weights();
        let w0 = (self.energies[0] / self.temperature).exp();
        w0 / (w.iter().sum::<f64>() + w0)
    }
}

pub fn gibbs_state(spec: &GibbsSpec) -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&spec.populations())
}

/// `points` temperatures evenly spaced on `[tmin, tmax]`.
pub fn linear_grid(tmin: f64, tmax: f64, points: usize) -> Result<Vec<f64>> {
    if !(tmin.is_finite() && tmax.is_finite() && tmin > 0.0 && tmax >= tmin) || points == 0 {
        return Err(Error::InvalidTemperature(format!(
            "grid needs 0 < tmin <= tmax and at least one point (got {tmin}, {tmax}, {points})"
        )));
    }
    if points == 1 {
        return Ok(vec![tmin]);
    }
    if tmax == tmin {
        return Err(Error::InvalidTemperature(
            "tmax must exceed tmin for more than one point".into(),
        ));
    }
    let step = (tmax - tmin) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { tmax } else { tmin + step * i as f64 })
        .collect())
}

pub fn default_grid() -> Vec<f64> {
    linear_grid(DEFAULT_TMIN, DEFAULT_TMAX, DEFAULT_POINTS).expect("default grid is valid")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub temperature: f64,
    pub info: InformationProfile,
}

/// Correlation measures of the Gibbs state at each temperature of `grid`.
pub fn information_sweep(energies: &[f64], grid: &[f64]) -> Result<Vec<SweepRecord>> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidTemperature("temperature grid must be ascending".into()));
    }
    grid.iter()
        .map(|&t| {
            let spec = GibbsSpec::new(energies.to_vec(), t)?;
            let info = ThreeQubitView::new(&gibbs_state(&spec))?.information_profile()?;
            Ok(SweepRecord {
                temperature: t,
                info,
            })
        })
        .collect()
}

/// Lowest grid temperature whose continuum-leakage proxy exceeds
/// [`CONTINUUM_WARN_POPULATION`].
pub fn continuum_warning(energies: &[f64], grid: &[f64]) -> Result<Option<f64>> {
    for &t in grid {
        if GibbsSpec::new(energies.to_vec(), t)?.continuum_leakage() > CONTINUUM_WARN_POPULATION {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Writes the sweep as CSV: header row, `\n` endings, 12 significant digits.
pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        let mut line = format_significant(r.temperature, 12);
        for v in r.info.values() {
            line.push(',');
            line.push_str(&format_significant(v, 12));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let precision = digits.saturating_sub(1);
    let sci = format!("{x:.precision$e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (precision as i32 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
