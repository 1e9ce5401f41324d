//! Resonant laser pulses on adjacent-level transitions.
//!
//! A pulse on the `n <-> n+1` transition with complex field amplitude `E`
//! adds the interaction `V = E d |n><m| + E* d |m><n|` (real dipole `d`).
//! With `E = E0 exp(3 i pi / 2)` and duration `t = theta / (2 E0 d)`, the
//! evolution `exp(-i V t)` is the real rotation `R_nm(theta)` on
//! `span{|n>, |m>}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::well::DipoleMatrix;

pub const LEVELS: usize = 7;
/// Field phase that turns the pulse evolution into a real rotation.
pub const FIELD_PHASE: f64 = 3.0 * PI / 2.0;
pub const DEFAULT_FIELD_AMPLITUDE: f64 = 1.0;
/// Dipole moments below this magnitude cannot drive a transition.
pub const MIN_DIPOLE: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;

/// A normalized state of the seven-level system.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState {
    amplitudes: Vec<Complex64>,
}

impl QuditState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != LEVELS {
            return Err(Error::DimensionMismatch(format!(
                "qudit state needs {LEVELS} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::DimensionMismatch(format!("state norm^2 is {norm}, not 1")));
        }
        Ok(Self { amplitudes })
    }

    /// Energy eigenstate `|level>`, 1-based.
    pub fn basis(level: usize) -> Result<Self> {
        if !(1..=LEVELS).contains(&level) {
            return Err(Error::BadLevels { n: level, m: level });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); LEVELS];
        amplitudes[level - 1] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of 1-based `level`.
    pub fn amplitude(&self, level: usize) -> Complex64 {
        self.amplitudes[level - 1]
    }

    pub fn population(&self, level: usize) -> f64 {
        self.amplitude(level).norm_sqr()
    }

    pub fn apply(&self, unitary: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            amplitudes: unitary.mul_vec(&self.amplitudes)?,
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `R_nm(theta)`: the rotation `[[cos, -sin], [sin, cos]](theta / 2)` on
/// levels `n < m` (1-based), identity elsewhere.
pub fn rotation(n: usize, m: usize, theta: f64) -> Result<ComplexMatrix> {
    if !(1 <= n && n < m && m <= LEVELS) {
        return Err(Error::BadLevels { n, m });
    }
    let (s, c) = (theta / 2.0).sin_cos();
    let mut r = ComplexMatrix::identity(LEVELS);
    r[(n - 1, n - 1)] = Complex64::new(c, 0.0);
    r[(n - 1, m - 1)] = Complex64::new(-s, 0.0);
    r[(m - 1, n - 1)] = Complex64::new(s, 0.0);
    r[(m - 1, m - 1)] = Complex64::new(c, 0.0);
    Ok(r)
}

/// A resonant pulse on the adjacent-level transition `n <-> n + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    n: usize,
    theta: f64,
}

impl Pulse {
    /// Only adjacent transitions (`m = n + 1`) are accepted.
    pub fn new(n: usize, m: usize, theta: f64) -> Result<Self> {
        if !(1 <= n && m == n + 1 && m <= LEVELS) {
            return Err(Error::BadLevels { n, m });
        }
        Ok(Self { n, theta })
    }

    pub fn lower(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> usize {
        self.n + 1
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn dipole(&self, dipole: &DipoleMatrix) -> Result<f64> {
        let (n, m) = (self.lower(), self.upper());
        if m > dipole.dim() {
            return Err(Error::BadLevels { n, m });
        }
        let d = dipole.get(n, m);
        if d.abs() < MIN_DIPOLE {
            return Err(Error::ZeroDipole { n, m });
        }
        Ok(d)
    }

    /// `t = theta / (2 E0 d_nm)`.
    pub fn duration(&self, dipole: &DipoleMatrix, field_amplitude: f64) -> Result<f64> {
        Ok(self.theta / (2.0 * field_amplitude * self.dipole(dipole)?))
    }

    /// The 2x2 block of `exp(-i V t)` in the basis `{|n>, |n+1>}`, from the
    /// closed form `cos(|g| t) I - i sin(|g| t) V / |g|`, `g = E d`.
    pub fn evolution_block(
        &self,
        dipole: &DipoleMatrix,
        field_amplitude: f64,
    ) -> Result<[[Complex64; 2]; 2]> {
        let d = self.dipole(dipole)?;
        let t = self.duration(dipole, field_amplitude)?;
        let field = Complex64::from_polar(field_amplitude, FIELD_PHASE);
        let coupling = field * d;
        let strength = coupling.norm();
        let unit = coupling / strength;
        let (s, c) = (strength * t).sin_cos();
        let minus_i = Complex64::new(0.0, -1.0);
        Ok([
            [Complex64::new(c, 0.0), minus_i * s * unit],
            [minus_i * s * unit.conj(), Complex64::new(c, 0.0)],
        ])
    }

    /// Full 7x7 evolution operator of the pulse.
    pub fn evolution_matrix(
        &self,
        dipole: &DipoleMatrix,
        field_amplitude: f64,
    ) -> Result<ComplexMatrix> {
        let block = self.evolution_block(dipole, field_amplitude)?;
        let (i, j) = (self.lower() - 1, self.upper() - 1);
        let mut u = ComplexMatrix::identity(LEVELS);
        u[(i, i)] = block[0][0];
        u[(i, j)] = block[0][1];
        u[(j, i)] = block[1][0];
        u[(j, j)] = block[1][1];
        Ok(u)
    }

    pub fn rotation_matrix(&self) -> ComplexMatrix {
        rotation(self.lower(), self.upper(), self.theta).expect("pulse levels are valid")
    }
}

/// Evolves `state` under `pulse` with the default field amplitude.
pub fn evolve_pulse(state: &QuditState, pulse: &Pulse, dipole: &DipoleMatrix) -> Result<QuditState> {
    evolve_pulse_with_amplitude(state, pulse, dipole, DEFAULT_FIELD_AMPLITUDE)
}

pub fn evolve_pulse_with_amplitude(
    state: &QuditState,
    pulse: &Pulse,
    dipole: &DipoleMatrix,
    field_amplitude: f64,
) -> Result<QuditState> {
    let block = pulse.evolution_block(dipole, field_amplitude)?;
    let (i, j) = (pulse.lower() - 1, pulse.upper() - 1);
    let mut amplitudes = state.amplitudes.clone();
    let (a, b) = (amplitudes[i], amplitudes[j]);
    amplitudes[i] = block[0][0] * a + block[0][1] * b;
    amplitudes[j] = block[1][0] * a + block[1][1] * b;
    Ok(QuditState { amplitudes })
}

/// An ordered pulse sequence; `pulses[0]` is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    pub label: String,
    pub pulses: Vec<Pulse>,
}

impl PulseSchedule {
    /// Builds a schedule from an operator product written left to right,
    /// e.g. `R_23 R_12` is `[(2, a), (1, b)]` and applies `R_12` first.
    /// Each factor is `(lower level, theta)`.
    pub fn from_operator_product(label: &str, factors: &[(usize, f64)]) -> Result<Self> {
        let pulses = factors
            .iter()
            .rev()
            .map(|&(n, theta)| Pulse::new(n, n + 1, theta))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            label: label.to_string(),
            pulses,
        })
    }

    /// Product of the ideal rotation matrices.
    pub fn rotation_product(&self) -> ComplexMatrix {
        self.pulses.iter().fold(ComplexMatrix::identity(LEVELS), |acc, p| {
            &p.rotation_matrix() * &acc
        })
    }

    /// Product of the pulse evolution operators.
    pub fn evolution_product(&self, dipole: &DipoleMatrix, field_amplitude: f64) -> Result<ComplexMatrix> {
        self.pulses.iter().try_fold(ComplexMatrix::identity(LEVELS), |acc, p| {
            Ok(&p.evolution_matrix(dipole, field_amplitude)? * &acc)
        })
    }

    pub fn evolve(&self, state: &QuditState, dipole: &DipoleMatrix) -> Result<QuditState> {
        self.pulses
            .iter()
            .try_fold(state.clone(), |s, p| evolve_pulse(&s, p, dipole))
    }

    pub fn durations(&self, dipole: &DipoleMatrix, field_amplitude: f64) -> Result<Vec<f64>> {
        self.pulses
            .iter()
            .map(|p| p.duration(dipole, field_amplitude))
            .collect()
    }

    pub fn then(mut self, other: &PulseSchedule) -> Self {
        self.pulses.extend_from_slice(&other.pulses);
        self
    }
}
