//! Parity of a six-bit string with three oracle queries on the qubit–qutrit
//! encoding.
//!
//! Starting from `|00>` (level 1) the circuit applies, in time order,
//! `H_B, O_s, U01_A, O_s, U12_A, O_s, H_B`. The result is `+-|20>` (level 5)
//! for even strings and `+-|21>` (level 6) for odd ones, with overall sign
//! `(-1)^{s1 + s3 + s5}`.

use std::fmt;
use std::str::FromStr;

use crate::encodings::ANCILLA_TOL;
use crate::error::{Error, Result};
use crate::gates::{
    hadamard_b, hadamard_schedule, oracle, oracle_schedule, sigma_z_b, u01_a, u01_schedule, u12_a,
    u12_schedule, BitString6,
};
use crate::linalg::ComplexMatrix;
use crate::pulse::{PulseSchedule, QuditState, LEVELS};
use crate::well::{BoundState, DipoleMatrix};

pub const EVEN_LEVEL: usize = 5;
pub const ODD_LEVEL: usize = 6;

/// How the gates are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Explicit gate matrices.
    Gate,
    /// Resonant pulse schedules driven through the well's dipole moments.
    Pulse,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gate" => Ok(Level::Gate),
            "pulse" => Ok(Level::Pulse),
            other => Err(Error::InvalidLevel(format!(
                "unknown level {other:?}, expected gate or pulse"
            ))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Gate => "gate",
            Level::Pulse => "pulse",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ParityRun {
    pub outcome: u8,
    pub final_state: QuditState,
    /// Sign of the amplitude on the outcome level.
    pub global_phase: f64,
    pub oracle_queries: usize,
}

impl ParityRun {
    pub fn target_level(&self) -> usize {
        if self.outcome == 0 {
            EVEN_LEVEL
        } else {
            ODD_LEVEL
        }
    }

    /// Population outside the outcome level.
    pub fn off_target_population(&self) -> f64 {
        let target = self.target_level();
        (1..=LEVELS)
            .filter(|&l| l != target)
            .map(|l| self.final_state.population(l))
            .sum()
    }
}

enum Step<'a> {
    Unitary(&'a ComplexMatrix, &'a PulseSchedule),
    Oracle,
}

/// Runs the parity circuit for `s`. The dipole matrix drives the pulses
/// and is not consulted at gate level.
pub fn run_parity_algorithm(s: &BitString6, level: Level, dipole: &DipoleMatrix) -> Result<ParityRun> {
    let (h, u01, u12) = (hadamard_b(), u01_a(), u12_a());
    let (h_pulses, u01_pulses, u12_pulses) = (hadamard_schedule(), u01_schedule(), u12_schedule());
    let o = oracle(s);
    let o_pulses = oracle_schedule(s);
    let steps = [
        Step::Unitary(&h, &h_pulses),
        Step::Oracle,
        Step::Unitary(&u01, &u01_pulses),
        Step::Oracle,
        Step::Unitary(&u12, &u12_pulses),
        Step::Oracle,
        Step::Unitary(&h, &h_pulses),
    ];

    let mut state = QuditState::basis(1)?;
    let mut oracle_queries = 0;
    for step in &steps {
        let (matrix, schedule) = match step {
            Step::Unitary(m, p) => (*m, *p),
            Step::Oracle => {
                oracle_queries += 1;
                (&o, &o_pulses)
            }
        };
        state = match level {
            Level::Gate => state.apply(matrix)?,
            Level::Pulse => schedule.evolve(&state, dipole)?,
        };
    }

    let outcome = if state.population(ODD_LEVEL) > state.population(EVEN_LEVEL) {
        1
    } else {
        0
    };
    let target = if outcome == 0 { EVEN_LEVEL } else { ODD_LEVEL };
    let global_phase = if state.amplitude(target).re >= 0.0 { 1.0 } else { -1.0 };
    Ok(ParityRun {
        outcome,
        final_state: state,
        global_phase,
        oracle_queries,
    })
}

/// `<psi| sigma_z^B |psi>`; the ancilla must be empty.
pub fn measure_parity_observable(state: &QuditState) -> Result<f64> {
    let population = state.population(LEVELS);
    if population >= ANCILLA_TOL {
        return Err(Error::AncillaOccupied { population });
    }
    let sz = sigma_z_b();
    Ok((1..=LEVELS)
        .map(|l| sz[(l - 1, l - 1)].re * state.population(l))
        .sum())
}

/// `|sum_n c_n psi_n(0)|^2`, the probability density at the well center.
pub fn position_density_readout(state: &QuditState, states: &[BoundState]) -> f64 {
    state
        .amplitudes()
        .iter()
        .zip(states)
        .map(|(c, s)| c * s.wavefunction(0.0))
        .sum::<num_complex::Complex64>()
        .norm_sqr()
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::well::{dipole_matrix, solve_bound_states, WellSpec};

    fn well() -> (Vec<BoundState>, DipoleMatrix) {
        let states = solve_bound_states(&WellSpec::default()).unwrap();
        let d = dipole_matrix(&states);
        (states, d)
    }

    #[test]
    fn all_zero_string() {
        let (_, d) = well();
        let s = BitString6::from_index(0).unwrap();
        let run = run_parity_algorithm(&s, Level::Gate, &d).unwrap();
        assert_eq!(run.outcome, 0);
        assert_eq!(run.global_phase, 1.0);
        assert_eq!(run.oracle_queries, 3);
        assert!((run.final_state.amplitude(5) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn all_ones_string() {
        let (_, d) = well();
        let s: BitString6 = "111111".parse().unwrap();
        let run = run_parity_algorithm(&s, Level::Gate, &d).unwrap();
        assert_eq!(run.outcome, 0);
        assert_eq!(run.global_phase, -1.0);
        assert!((run.final_state.amplitude(5) + Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn single_bit_string() {
        let (_, d) = well();
        let s: BitString6 = "100000".parse().unwrap();
        for level in [Level::Gate, Level::Pulse] {
            let run = run_parity_algorithm(&s, level, &d).unwrap();
            assert_eq!(run.outcome, 1);
            assert_eq!(run.global_phase, -1.0);
            assert!((run.final_state.amplitude(6) + Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn observable_examples() {
        assert_eq!(measure_parity_observable(&QuditState::basis(5).unwrap()).unwrap(), 1.0);
        assert_eq!(measure_parity_observable(&QuditState::basis(6).unwrap()).unwrap(), -1.0);
        let a = Complex64::new(1.0 / 6f64.sqrt(), 0.0);
        let mut amps = vec![a; 6];
        amps.push(Complex64::new(0.0, 0.0));
        let uniform = QuditState::new(amps).unwrap();
        assert!(measure_parity_observable(&uniform).unwrap().abs() < 1e-15);
        assert!(matches!(
            measure_parity_observable(&QuditState::basis(7).unwrap()),
            Err(Error::AncillaOccupied { .. })
        ));
    }

    #[test]
    fn center_density() {
        let (states, _) = well();
        assert_eq!(position_density_readout(&QuditState::basis(2).unwrap(), &states), 0.0);
        let even = position_density_readout(&QuditState::basis(5).unwrap(), &states);
        let psi5 = states[4].wavefunction(0.0);
        assert!((even - psi5 * psi5).abs() < 1e-15);
        assert!(even > 0.1);
    }

    #[test]
    fn level_parsing() {
        assert_eq!("gate".parse::<Level>().unwrap(), Level::Gate);
        assert_eq!("pulse".parse::<Level>().unwrap(), Level::Pulse);
        assert!("laser".parse::<Level>().is_err());
    }
}
