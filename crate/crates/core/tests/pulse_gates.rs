mod common;

use rand::Rng;
use sevenlevel::gates::{gate_library, oracle, oracle_from_z, oracle_schedule, BitString6};
use sevenlevel::parity::{measure_parity_observable, position_density_readout, run_parity_algorithm, Level};
use sevenlevel::pulse::{evolve_pulse, evolve_pulse_with_amplitude, rotation, Pulse, QuditState};
use sevenlevel::well::{dipole_matrix, solve_bound_states, BoundState, DipoleMatrix, WellSpec};
use sevenlevel::Complex64;

fn well() -> (Vec<BoundState>, DipoleMatrix) {
    let states = solve_bound_states(&WellSpec::default()).unwrap();
    let d = dipole_matrix(&states);
    (states, d)
}

fn random_state(rng: &mut impl Rng) -> QuditState {
    let amps: Vec<Complex64> = (0..7)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    QuditState::new(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn exponential_path_matches_rotation_path() {
    let (_, d) = well();
    let mut rng = common::rng(100);
    for _ in 0..100 {
        let n = rng.gen_range(1..7);
        let theta = rng.gen_range(-4.0 * std::f64::consts::PI..4.0 * std::f64::consts::PI);
        let psi = random_state(&mut rng);
        let pulse = Pulse::new(n, n + 1, theta).unwrap();
        let via_pulse = evolve_pulse(&psi, &pulse, &d).unwrap();
        let via_rotation = psi.apply(&rotation(n, n + 1, theta).unwrap()).unwrap();
        assert!(via_pulse.max_abs_diff(&via_rotation) < 1e-12);
        let amp = rng.gen_range(0.1..10.0);
        let scaled = evolve_pulse_with_amplitude(&psi, &pulse, &d, amp).unwrap();
        assert!(scaled.max_abs_diff(&via_rotation) < 1e-12);
    }
}

#[test]
fn pulse_products_reproduce_explicit_gates() {
    let (_, d) = well();
    for gate in gate_library() {
        let Some(schedule) = &gate.schedule else { continue };
        let product = schedule.evolution_product(&d, 1.0).unwrap();
        let expected = gate.matrix.scale(Complex64::new(gate.global_phase, 0.0));
        assert!(product.max_abs_diff(&expected).unwrap() < 1e-10, "{}", gate.name);
        assert!(product.is_unitary(1e-12));
        assert!(schedule.durations(&d, 1.0).unwrap().iter().all(|&t| t > 0.0));
    }
}

#[test]
fn all_generated_matrices_are_unitary() {
    for n in 1..7 {
        for m in (n + 1)..=7 {
            assert!(rotation(n, m, 1.234 * n as f64).unwrap().is_unitary(1e-12));
        }
    }
    for gate in gate_library().iter().filter(|g| g.name != "sigma_z_B") {
        assert!(gate.matrix.is_unitary(1e-12), "{}", gate.name);
        assert!(gate.schedule.as_ref().unwrap().rotation_product().is_unitary(1e-12));
    }
    for s in BitString6::all() {
        assert!(oracle(&s).is_unitary(1e-12));
    }
}

#[test]
fn oracle_constructions_identical() {
    let (_, d) = well();
    for s in BitString6::all() {
        assert_eq!(oracle(&s), oracle_from_z(&s));
        let pulsed = oracle_schedule(&s).evolution_product(&d, 1.0).unwrap();
        assert!(pulsed.max_abs_diff(&oracle(&s)).unwrap() < 1e-10);
    }
}

#[test]
fn exhaustive_parity() {
    let (states, d) = well();
    for s in BitString6::all() {
        let classical = s.bits().iter().fold(0, |acc, b| acc ^ b);
        let gate = run_parity_algorithm(&s, Level::Gate, &d).unwrap();
        let pulse = run_parity_algorithm(&s, Level::Pulse, &d).unwrap();
        assert_eq!(gate.outcome, classical, "{s}");
        assert_eq!(pulse.outcome, classical, "{s}");
        assert_eq!(gate.oracle_queries, 3);
        assert!(gate.off_target_population() < 1e-10);
        assert!(pulse.off_target_population() < 1e-10);
        assert!(gate.final_state.population(7) < 1e-10);
        let phase = if (s.bit(1) + s.bit(3) + s.bit(5)) % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(gate.global_phase, phase, "{s}");
        assert_eq!(pulse.global_phase, phase, "{s}");
        assert!(gate.final_state.max_abs_diff(&pulse.final_state) < 1e-9);

        let sz = measure_parity_observable(&gate.final_state).unwrap();
        assert!((sz - (1.0 - 2.0 * classical as f64)).abs() < 1e-10);
        let density = position_density_readout(&gate.final_state, &states);
        if classical == 1 {
            assert!(density < 1e-12);
        } else {
            assert!(density > 0.1);
        }
    }
}

#[test]
fn two_bit_strings_reduce_to_deutsch() {
    // only s1, s2 set: the qubit sees a one-bit function and the answer is s1 xor s2
    let (_, d) = well();
    for (s1, s2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let s = BitString6::new([s1, s2, 0, 0, 0, 0]).unwrap();
        let run = run_parity_algorithm(&s, Level::Pulse, &d).unwrap();
        assert_eq!(run.outcome, s1 ^ s2);
        let expected_phase = if s1 == 0 { 1.0 } else { -1.0 };
        assert_eq!(run.global_phase, expected_phase);
    }
}

#[test]
fn ancilla_stays_empty_under_explicit_circuit() {
    let h = sevenlevel::gates::hadamard_b();
    let psi = QuditState::basis(1).unwrap().apply(&h).unwrap();
    assert_eq!(psi.population(7), 0.0);
}
