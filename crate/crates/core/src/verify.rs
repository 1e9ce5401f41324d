//! The invariant suite behind `sevenlevel verify`.

use std::f64::consts::PI;

use crate::encodings::INFO_TOL;
use crate::error::Result;
use crate::gates::{gate_library, oracle, oracle_from_z, BitString6};
use crate::parity::{measure_parity_observable, run_parity_algorithm, Level};
use crate::pulse::rotation;
use crate::thermal::{default_grid, information_sweep};
use crate::well::{dipole_matrix, solve_bound_states, WellSpec};

pub const UNITARY_TOL: f64 = 1e-12;
pub const OFF_TARGET_TOL: f64 = 1e-10;
pub const GATE_PULSE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

/// Runs every check against the given well.
pub fn run_suite(well: &WellSpec) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let states = solve_bound_states(well)?;
    let dipole = dipole_matrix(&states);

    // unitarity
    let mut worst: f64 = 0.0;
    for n in 1..7 {
        for step in 0..16 {
            let theta = step as f64 * PI / 4.0;
            worst = worst.max(rotation(n, n + 1, theta)?.unitarity_deviation());
        }
    }
    report.push("unitarity: R_n,n+1(theta)", worst < UNITARY_TOL, format!("max deviation {worst:e}"));

    let library = gate_library();
    for gate in library.iter().filter(|g| g.schedule.is_some()) {
        let dev = gate.matrix.unitarity_deviation();
        report.push(format!("unitarity: {}", gate.name), dev < UNITARY_TOL, format!("deviation {dev:e}"));
    }
    let worst_oracle = BitString6::all()
        .map(|s| oracle(&s).unitarity_deviation())
        .fold(0.0, f64::max);
    report.push("unitarity: O_s (64 strings)", worst_oracle < UNITARY_TOL, format!("max deviation {worst_oracle:e}"));

    // subadditivity / strong subadditivity over the default sweep
    if states.len() == 7 {
        let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
        let records = information_sweep(&energies, &default_grid())?;
        let min = records
            .iter()
            .flat_map(|r| r.info.values())
            .fold(f64::INFINITY, f64::min);
        report.push(
            "subadditivity: default thermal sweep",
            min >= -INFO_TOL,
            format!("{} points, min value {min:e} bits", records.len()),
        );
    } else {
        report.push("subadditivity: default thermal sweep", false, format!("well has {} levels, need 7", states.len()));
    }

    // gate schedules against explicit matrices
    for name in ["H_B", "U01_A", "U12_A", "Z_1", "Z_3", "Z_6"] {
        let gate = library.iter().find(|g| g.name == name).expect("library gate");
        report.push(
            format!("schedule: {name}"),
            gate.schedule_matches(),
            format!("global phase {:+}, deviation {:e}", gate.global_phase, gate.schedule_deviation),
        );
    }
    let oracle_mismatch = BitString6::all().filter(|s| oracle(s) != oracle_from_z(s)).count();
    report.push("oracle: label signs vs Z products", oracle_mismatch == 0, format!("{oracle_mismatch} mismatches"));

    // exhaustive parity
    if dipole.dim() >= 7 {
        let mut agree = 0;
        for s in BitString6::all() {
            let gate = run_parity_algorithm(&s, Level::Gate, &dipole)?;
            let pulse = run_parity_algorithm(&s, Level::Pulse, &dipole)?;
            let expected_phase = if (s.bit(1) + s.bit(3) + s.bit(5)) % 2 == 0 { 1.0 } else { -1.0 };
            let readout = measure_parity_observable(&gate.final_state)?;
            let ok = gate.outcome == s.parity()
                && pulse.outcome == s.parity()
                && gate.global_phase == expected_phase
                && gate.oracle_queries == 3
                && gate.off_target_population() < OFF_TARGET_TOL
                && gate.final_state.max_abs_diff(&pulse.final_state) < GATE_PULSE_TOL
                && (readout - (1.0 - 2.0 * s.parity() as f64)).abs() < OFF_TARGET_TOL;
            if ok {
                agree += 1;
            }
        }
        report.push("parity: exhaustive 64 strings", agree == 64, format!("{agree}/64 agreements"));
    } else {
        report.push("parity: exhaustive 64 strings", false, format!("well has {} levels, need 7", dipole.dim()));
    }

    Ok(report)
}
