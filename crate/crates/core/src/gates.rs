//! Qubit and qutrit gates of the qubit–qutrit encoding, each given both as
//! an explicit 7x7 matrix and as a resonant pulse schedule.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pulse::{PulseSchedule, LEVELS};

/// Schedules must reproduce their explicit matrix to this accuracy, up to
/// a global sign.
pub const SCHEDULE_TOL: f64 = 1e-10;

/// Six classical bits `s1..s6`, queried through the phase oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString6([u8; 6]);

impl BitString6 {
    pub fn new(bits: [u8; 6]) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidBitString(format!("bits must be 0 or 1: {bits:?}")));
        }
        Ok(Self(bits))
    }

    /// `s1` is the most significant bit of `index`.
    pub fn from_index(index: u8) -> Result<Self> {
        if index >= 64 {
            return Err(Error::InvalidBitString(format!("index {index} exceeds 63")));
        }
        let mut bits = [0u8; 6];
        for (i, b) in bits.iter_mut().enumerate() {
            *b = (index >> (5 - i)) & 1;
        }
        Ok(Self(bits))
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..64u8).map(|i| Self::from_index(i).expect("index below 64"))
    }

    pub fn bits(&self) -> [u8; 6] {
        self.0
    }

    /// Bit `s_i`, 1-based.
    pub fn bit(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    pub fn parity(&self) -> u8 {
        self.0.iter().fold(0, |acc, b| acc ^ b)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|&b| b as u32).sum()
    }
}

impl FromStr for BitString6 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 6 {
            return Err(Error::InvalidBitString(format!(
                "expected 6 bits, got {} in {s:?}",
                chars.len()
            )));
        }
        let mut bits = [0u8; 6];
        for (b, ch) in bits.iter_mut().zip(&chars) {
            *b = match ch {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(Error::InvalidBitString(format!("invalid character {other:?} in {s:?}")))
                }
            };
        }
        Ok(Self(bits))
    }
}

impl fmt::Display for BitString6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn sign(bits: u32) -> f64 {
    if bits % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Hadamard on qubit B: 2x2 Hadamard blocks on levels (1,2), (3,4), (5,6)
/// and `-1` on the ancilla.
pub fn hadamard_b() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    let mut m = ComplexMatrix::zeros(LEVELS);
    for pair in 0..3 {
        let (i, j) = (2 * pair, 2 * pair + 1);
        m[(i, i)] = Complex64::new(h, 0.0);
        m[(i, j)] = Complex64::new(h, 0.0);
        m[(j, i)] = Complex64::new(h, 0.0);
        m[(j, j)] = Complex64::new(-h, 0.0);
    }
    m[(6, 6)] = Complex64::new(-1.0, 0.0);
    m
}

fn level_swap(pairs: &[(usize, usize)]) -> ComplexMatrix {
    let mut perm: Vec<usize> = (0..LEVELS).collect();
    for &(a, b) in pairs {
        perm.swap(a - 1, b - 1);
    }
    let mut m = ComplexMatrix::zeros(LEVELS);
    for (col, &row) in perm.iter().enumerate() {
        m[(row, col)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Qutrit swap `|0> <-> |1>`: levels 1 <-> 3 and 2 <-> 4.
pub fn u01_a() -> ComplexMatrix {
    level_swap(&[(1, 3), (2, 4)])
}

/// Qutrit swap `|1> <-> |2>`: levels 3 <-> 5 and 4 <-> 6.
pub fn u12_a() -> ComplexMatrix {
    level_swap(&[(3, 5), (4, 6)])
}

/// `Z_n`: sign flip on level `n` and on the ancilla.
pub fn z_gate(n: usize) -> Result<ComplexMatrix> {
    if !(1..=6).contains(&n) {
        return Err(Error::BadLevels { n, m: n + 1 });
    }
    let mut diag = [1.0; LEVELS];
    diag[n - 1] = -1.0;
    diag[LEVELS - 1] = -1.0;
    Ok(ComplexMatrix::from_real_diag(&diag))
}

/// Qubit-B `sigma_z`: `+1` on levels 1, 3, 5 and `-1` on 2, 4, 6.
pub fn sigma_z_b() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 0.0])
}

pub fn hadamard_schedule() -> PulseSchedule {
    PulseSchedule::from_operator_product(
        "H_B",
        &[
            (6, 2.0 * PI),
            (5, 3.5 * PI),
            (3, 2.5 * PI),
            (2, 2.0 * PI),
            (1, 3.5 * PI),
        ],
    )
    .expect("adjacent levels")
}

pub fn u01_schedule() -> PulseSchedule {
    PulseSchedule::from_operator_product("U01_A", &[(2, PI), (3, PI), (1, PI), (2, PI)])
        .expect("adjacent levels")
}

pub fn u12_schedule() -> PulseSchedule {
    PulseSchedule::from_operator_product("U12_A", &[(4, PI), (5, PI), (3, PI), (4, PI)])
        .expect("adjacent levels")
}

/// `Z_n = R_{n,n+1}(2pi) R_{n+1,n+2}(2pi) ... R_{6,7}(2pi)`.
pub fn z_schedule(n: usize) -> Result<PulseSchedule> {
    if !(1..=6).contains(&n) {
        return Err(Error::BadLevels { n, m: n + 1 });
    }
    let factors: Vec<(usize, f64)> = (n..=6).map(|m| (m, 2.0 * PI)).collect();
    PulseSchedule::from_operator_product(&format!("Z_{n}"), &factors)
}

/// Phase oracle from the qutrit–qubit labelling: `|jk>` (level
/// `2j + k + 1`) picks up `(-1)^{s_{2j+k+1}}`, the ancilla the total parity.
pub fn oracle(s: &BitString6) -> ComplexMatrix {
    let mut diag = [0.0; LEVELS];
    for j in 0..3 {
        for k in 0..2 {
            let level = 2 * j + k + 1;
            diag[level - 1] = sign(s.bit(level) as u32);
        }
    }
    diag[LEVELS - 1] = sign(s.weight());
    ComplexMatrix::from_real_diag(&diag)
}

/// The same oracle assembled as `prod_n Z_n^{s_n}`.
pub fn oracle_from_z(s: &BitString6) -> ComplexMatrix {
    (1..=6)
        .filter(|&n| s.bit(n) == 1)
        .fold(ComplexMatrix::identity(LEVELS), |acc, n| {
            &z_gate(n).expect("n in 1..=6") * &acc
        })
}

/// Pulse schedule realizing the oracle: the `Z_n` schedules for set bits.
pub fn oracle_schedule(s: &BitString6) -> PulseSchedule {
    let empty = PulseSchedule {
        label: format!("O_{s}"),
        pulses: Vec::new(),
    };
    (1..=6)
        .filter(|&n| s.bit(n) == 1)
        .fold(empty, |acc, n| acc.then(&z_schedule(n).expect("n in 1..=6")))
}

#[derive(Debug, Clone)]
pub struct GateEntry {
    pub name: String,
    pub matrix: ComplexMatrix,
    pub schedule: Option<PulseSchedule>,
    /// Sign `g` with `schedule product = g * matrix`; `1` without schedule.
    pub global_phase: f64,
    /// Max-abs difference between the schedule product and
    /// `global_phase * matrix`.
    pub schedule_deviation: f64,
}

impl GateEntry {
    fn explicit(name: &str, matrix: ComplexMatrix) -> Self {
        Self {
            name: name.into(),
            matrix,
            schedule: None,
            global_phase: 1.0,
            schedule_deviation: 0.0,
        }
    }

    fn scheduled(name: &str, matrix: ComplexMatrix, schedule: PulseSchedule) -> Self {
        let (global_phase, schedule_deviation) = match_global_sign(&schedule.rotation_product(), &matrix);
        Self {
            name: name.into(),
            matrix,
            schedule: Some(schedule),
            global_phase,
            schedule_deviation,
        }
    }

    pub fn schedule_matches(&self) -> bool {
        self.schedule_deviation <= SCHEDULE_TOL
    }
}

/// Picks the sign `g` in `{+1, -1}` minimizing `|product - g * target|`.
pub fn match_global_sign(product: &ComplexMatrix, target: &ComplexMatrix) -> (f64, f64) {
    [1.0, -1.0]
        .into_iter()
        .map(|g| {
            let dev = product
                .max_abs_diff(&target.scale(Complex64::new(g, 0.0)))
                .expect("gates are 7x7");
            (g, dev)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("two candidates")
}

/// `H_B`, `U01_A`, `U12_A`, `Z_1..Z_6` with their schedules, and the
/// readout observable `sigma_z_B`.
pub fn gate_library() -> Vec<GateEntry> {
    let mut gates = vec![
        GateEntry::scheduled("H_B", hadamard_b(), hadamard_schedule()),
        GateEntry::scheduled("U01_A", u01_a(), u01_schedule()),
        GateEntry::scheduled("U12_A", u12_a(), u12_schedule()),
    ];
    for n in 1..=6 {
        gates.push(GateEntry::scheduled(
            &format!("Z_{n}"),
            z_gate(n).expect("n in 1..=6"),
            z_schedule(n).expect("n in 1..=6"),
        ));
    }
    gates.push(GateEntry::explicit("sigma_z_B", sigma_z_b()));
    gates
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstring_parsing() {
        let s: BitString6 = "010101".parse().unwrap();
        assert_eq!(s.bits(), [0, 1, 0, 1, 0, 1]);
        assert_eq!(s.to_string(), "010101");
        assert_eq!(s.parity(), 1);
        assert!("01010".parse::<BitString6>().is_err());
        assert!("0101012".parse::<BitString6>().is_err());
        assert!("01a101".parse::<BitString6>().is_err());
        assert!(BitString6::new([0, 0, 2, 0, 0, 0]).is_err());
        assert_eq!(BitString6::from_index(0b100000).unwrap().bits(), [1, 0, 0, 0, 0, 0]);
        assert_eq!(BitString6::all().count(), 64);
    }

    #[test]
    fn u01_is_printed_permutation() {
        let expected = ComplexMatrix::from_real_rows(&[
            vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(u01_a(), expected);
    }

    #[test]
    fn z1_and_hadamard_shape() {
        assert_eq!(
            z_gate(1).unwrap(),
            ComplexMatrix::from_real_diag(&[-1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0])
        );
        let z1 = z_schedule(1).unwrap().rotation_product();
        assert!(z1.max_abs_diff(&z_gate(1).unwrap()).unwrap() < 1e-12);
        let h = hadamard_b();
        assert_eq!(h[(6, 6)], Complex64::new(-1.0, 0.0));
        assert_eq!(h[(1, 1)], Complex64::new(-FRAC_1_SQRT_2, 0.0));
        assert!(z_gate(7).is_err());
        assert!(z_schedule(0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let zero = BitString6::from_index(0).unwrap();
        assert_eq!(oracle(&zero), ComplexMatrix::identity(7));
        let first: BitString6 = "100000".parse().unwrap();
        assert_eq!(
            oracle(&first),
            ComplexMatrix::from_real_diag(&[-1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0])
        );
        for s in BitString6::all() {
            let o = oracle(&s);
            assert_eq!(&o * &o, ComplexMatrix::identity(7));
            assert_eq!(o, oracle_from_z(&s));
        }
    }

    #[test]
    fn library_schedules_match() {
        let lib = gate_library();
        assert_eq!(lib.len(), 10);
        for g in &lib {
            assert!(g.matrix.is_unitary(1e-12) || g.name == "sigma_z_B", "{}", g.name);
            assert!(g.schedule_matches(), "{} deviates by {:e}", g.name, g.schedule_deviation);
            assert!(g.global_phase == 1.0 || g.global_phase == -1.0);
        }
    }
}
