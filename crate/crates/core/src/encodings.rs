//! Virtual-subsystem encodings of the seven-level system.
//!
//! The three-qubit encoding maps level `n` to the binary label of `n - 1`
//! (`|1> -> |000>`, ..., `|7> -> |110>`) and pads the missing `|111>` with an
//! unoccupied fictitious level. The qubit–qutrit encoding maps levels 1..6
//! to `|00>, |01>, |10>, |11>, |20>, |21>` (qutrit A slow, qubit B fast) and
//! keeps level 7 as an ancilla.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{density_eigenvalues, partial_trace, von_neumann_entropy, ComplexMatrix};

/// Ancilla population tolerated by the qubit–qutrit split.
pub const ANCILLA_TOL: f64 = 1e-9;
/// Information quantities above `-INFO_TOL` count as nonnegative.
pub const INFO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingKind {
    ThreeQubit,
    QubitQutrit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMap {
    pub kind: EncodingKind,
    pub source_dim: usize,
    pub factor_dims: Vec<usize>,
    /// Basis label of each energy level, index 0 being level 1. `None`
    /// marks a level outside the product space (the ancilla).
    pub level_labels: Vec<Option<String>>,
    /// Product-space labels not occupied by any level.
    pub padding: Vec<String>,
}

impl EncodingMap {
    pub fn three_qubit() -> Self {
        Self {
            kind: EncodingKind::ThreeQubit,
            source_dim: 7,
            factor_dims: vec![2, 2, 2],
            level_labels: (0..7).map(|i| Some(format!("{i:03b}"))).collect(),
            padding: vec!["111".into()],
        }
    }

    pub fn qubit_qutrit() -> Self {
        let mut level_labels: Vec<Option<String>> = (0..6)
            .map(|i| Some(format!("{}{}", i / 2, i % 2)))
            .collect();
        level_labels.push(None);
        Self {
            kind: EncodingKind::QubitQutrit,
            source_dim: 7,
            factor_dims: vec![3, 2],
            level_labels,
            padding: Vec::new(),
        }
    }

    /// Product-space basis index of a 1-based level, if it has one.
    pub fn basis_index(&self, level: usize) -> Option<usize> {
        let label = self.level_labels.get(level.checked_sub(1)?)?.as_ref()?;
        Some(
            label
                .chars()
                .zip(&self.factor_dims)
                .fold(0, |acc, (ch, &d)| acc * d + ch.to_digit(10).unwrap() as usize),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    fn factor(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
            Qubit::C => 2,
        }
    }
}

/// A subset of the three virtual qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
    C,
    AB,
    AC,
    BC,
    ABC,
}

impl Subsystem {
    pub const ALL: [Subsystem; 7] = [
        Subsystem::A,
        Subsystem::B,
        Subsystem::C,
        Subsystem::AB,
        Subsystem::AC,
        Subsystem::BC,
        Subsystem::ABC,
    ];

    pub fn factors(self) -> &'static [usize] {
        match self {
            Subsystem::A => &[0],
            Subsystem::B => &[1],
            Subsystem::C => &[2],
            Subsystem::AB => &[0, 1],
            Subsystem::AC => &[0, 2],
            Subsystem::BC => &[1, 2],
            Subsystem::ABC => &[0, 1, 2],
        }
    }

    pub fn of(qubits: &[Qubit]) -> Result<Self> {
        let mut mask = 0u8;
        for q in qubits {
            let bit = 1 << q.factor();
            if mask & bit != 0 {
                return Err(Error::DimensionMismatch(format!("repeated qubit in {qubits:?}")));
            }
            mask |= bit;
        }
        Ok(match mask {
            0b001 => Subsystem::A,
            0b010 => Subsystem::B,
            0b100 => Subsystem::C,
            0b011 => Subsystem::AB,
            0b101 => Subsystem::AC,
            0b110 => Subsystem::BC,
            0b111 => Subsystem::ABC,
            _ => return Err(Error::DimensionMismatch("empty subsystem".into())),
        })
    }
}

fn check_density7(rho7: &ComplexMatrix) -> Result<()> {
    if rho7.dim() != 7 {
        return Err(Error::NotDensityMatrix {
            reason: format!("expected a 7x7 matrix, got {}x{}", rho7.dim(), rho7.dim()),
        });
    }
    density_eigenvalues(rho7).map(|_| ())
}

/// Pads a 7-level density matrix with an empty eighth level.
pub fn embed_7_to_8(rho7: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_density7(rho7)?;
    Ok(embed_unchecked(rho7))
}

fn embed_unchecked(rho7: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(8);
    for i in 0..7 {
        for j in 0..7 {
            out[(i, j)] = rho7[(i, j)];
        }
    }
    out
}

/// A validated seven-level state viewed as three virtual qubits.
#[derive(Debug, Clone)]
pub struct ThreeQubitView {
    rho8: ComplexMatrix,
}

impl ThreeQubitView {
    pub fn new(rho7: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            rho8: embed_7_to_8(rho7)?,
        })
    }

    pub fn embedded(&self) -> &ComplexMatrix {
        &self.rho8
    }

    pub fn reduced(&self, which: Subsystem) -> ComplexMatrix {
        partial_trace(&self.rho8, &[2, 2, 2], which.factors())
            .expect("embedded state is Hermitian with dims (2,2,2)")
    }

    pub fn entropy(&self, which: Subsystem) -> Result<f64> {
        von_neumann_entropy(&self.reduced(which))
    }

    /// `S[X] + S[Y] - S[XY]`.
    pub fn mutual_information(&self, x: Qubit, y: Qubit) -> Result<f64> {
        let xy = Subsystem::of(&[x, y])?;
        Ok(self.entropy(Subsystem::of(&[x])?)? + self.entropy(Subsystem::of(&[y])?)?
            - self.entropy(xy)?)
    }

    /// `S[XZ] + S[YZ] - S[Z] - S[XYZ]`.
    pub fn conditional_mutual_information(&self, x: Qubit, y: Qubit, given: Qubit) -> Result<f64> {
        let xyz = Subsystem::of(&[x, y, given])?;
        Ok(self.entropy(Subsystem::of(&[x, given])?)?
            + self.entropy(Subsystem::of(&[y, given])?)?
            - self.entropy(Subsystem::of(&[given])?)?
            - self.entropy(xyz)?)
    }

    /// The six correlation measures of the three-qubit partition, sharing
    /// one entropy evaluation per subsystem.
    pub fn information_profile(&self) -> Result<InformationProfile> {
        let mut s = [0.0; 7];
        for (slot, which) in s.iter_mut().zip(Subsystem::ALL) {
            *slot = self.entropy(which)?;
        }
        let [a, b, c, ab, ac, bc, abc] = s;
        Ok(InformationProfile {
            i_ab: a + b - ab,
            i_ac: a + c - ac,
            i_bc: b + c - bc,
            i_ab_given_c: ac + bc - c - abc,
            i_ac_given_b: ab + bc - b - abc,
            i_bc_given_a: ab + ac - a - abc,
        })
    }
}

/// Pairwise mutual informations and conditional mutual informations, bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformationProfile {
    pub i_ab: f64,
    pub i_ac: f64,
    pub i_bc: f64,
    pub i_ab_given_c: f64,
    pub i_ac_given_b: f64,
    pub i_bc_given_a: f64,
}

impl InformationProfile {
    pub fn values(&self) -> [f64; 6] {
        [
            self.i_ab,
            self.i_ac,
            self.i_bc,
            self.i_ab_given_c,
            self.i_ac_given_b,
            self.i_bc_given_a,
        ]
    }

    /// Subadditivity and strong subadditivity up to [`INFO_TOL`].
    pub fn is_nonnegative(&self) -> bool {
        self.values().iter().all(|&v| v >= -INFO_TOL)
    }
}

pub fn reduced_state(rho7: &ComplexMatrix, which: Subsystem) -> Result<ComplexMatrix> {
    Ok(ThreeQubitView::new(rho7)?.reduced(which))
}

pub fn mutual_information(rho7: &ComplexMatrix, x: Qubit, y: Qubit) -> Result<f64> {
    ThreeQubitView::new(rho7)?.mutual_information(x, y)
}

pub fn conditional_mutual_information(
    rho7: &ComplexMatrix,
    x: Qubit,
    y: Qubit,
    given: Qubit,
) -> Result<f64> {
    ThreeQubitView::new(rho7)?.conditional_mutual_information(x, y, given)
}

/// Reduced qutrit-A (3x3) and qubit-B (2x2) states of a seven-level state
/// whose ancilla is empty.
pub fn qutrit_qubit_split(rho7: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if rho7.dim() != 7 {
        return Err(Error::NotDensityMatrix {
            reason: format!("expected a 7x7 matrix, got {}x{}", rho7.dim(), rho7.dim()),
        });
    }
    let population = rho7[(6, 6)].re;
    if population.abs() > ANCILLA_TOL {
        return Err(Error::AncillaOccupied { population });
    }
    check_density7(rho7)?;
    let mut block = ComplexMatrix::zeros(6);
    for i in 0..6 {
        for j in 0..6 {
            block[(i, j)] = rho7[(i, j)];
        }
    }
    let block = block.scale(Complex64::new(1.0 / block.trace().re, 0.0));
    let qutrit = partial_trace(&block, &[3, 2], &[0])?;
    let qubit = partial_trace(&block, &[3, 2], &[1])?;
    Ok((qutrit, qubit))
}

/// Reductions written out entry by entry in terms of the 7x7 density
/// matrix elements. These are independent of [`partial_trace`] and serve as
/// a regression oracle for it.
pub mod closed_form {
    use num_complex::Complex64;

    use super::Subsystem;
    use crate::linalg::ComplexMatrix;

    pub fn reduced(rho7: &ComplexMatrix, which: Subsystem) -> ComplexMatrix {
        // 1-based element access, matching the usual rho_{i,j} notation
        let r = |i: usize, j: usize| -> Complex64 { rho7[(i - 1, j - 1)] };
        let z = Complex64::new(0.0, 0.0);
        let rows: Vec<Vec<Complex64>> = match which {
            Subsystem::ABC => {
                let mut rows: Vec<Vec<Complex64>> = (1..=7)
                    .map(|i| (1..=7).map(|j| r(i, j)).chain([z]).collect())
                    .collect();
                rows.push(vec![z; 8]);
                rows
            }
            Subsystem::AB => vec![
                vec![r(1, 1) + r(2, 2), r(1, 3) + r(2, 4), r(1, 5) + r(2, 6), r(1, 7)],
                vec![r(3, 1) + r(4, 2), r(3, 3) + r(4, 4), r(3, 5) + r(4, 6), r(3, 7)],
                vec![r(5, 1) + r(6, 2), r(5, 3) + r(6, 4), r(5, 5) + r(6, 6), r(5, 7)],
                vec![r(7, 1), r(7, 3), r(7, 5), r(7, 7)],
            ],
            Subsystem::AC => vec![
                vec![r(1, 1) + r(3, 3), r(1, 2) + r(3, 4), r(1, 5) + r(3, 7), r(1, 6)],
                vec![r(2, 1) + r(4, 3), r(2, 2) + r(4, 4), r(2, 5) + r(4, 7), r(2, 6)],
                vec![r(5, 1) + r(7, 3), r(5, 2) + r(7, 4), r(5, 5) + r(7, 7), r(5, 6)],
                vec![r(6, 1), r(6, 2), r(6, 5), r(6, 6)],
            ],
            Subsystem::BC => vec![
                vec![r(1, 1) + r(5, 5), r(1, 2) + r(5, 6), r(1, 3) + r(5, 7), r(1, 4)],
                vec![r(2, 1) + r(6, 5), r(2, 2) + r(6, 6), r(2, 3) + r(6, 7), r(2, 4)],
                vec![r(3, 1) + r(7, 5), r(3, 2) + r(7, 6), r(3, 3) + r(7, 7), r(3, 4)],
                vec![r(4, 1), r(4, 2), r(4, 3), r(4, 4)],
            ],
            Subsystem::A => vec![
                vec![
                    r(1, 1) + r(2, 2) + r(3, 3) + r(4, 4),
                    r(1, 5) + r(2, 6) + r(3, 7),
                ],
                vec![r(5, 1) + r(6, 2) + r(7, 3), r(5, 5) + r(6, 6) + r(7, 7)],
            ],
            Subsystem::B => vec![
                vec![
                    r(1, 1) + r(5, 5) + r(2, 2) + r(6, 6),
                    r(1, 3) + r(5, 7) + r(2, 4),
                ],
                vec![r(3, 1) + r(7, 5) + r(4, 2), r(3, 3) + r(7, 7) + r(4, 4)],
            ],
            Subsystem::C => vec![
                vec![
                    r(1, 1) + r(3, 3) + r(5, 5) + r(7, 7),
                    r(1, 2) + r(3, 4) + r(5, 6),
                ],
                vec![r(2, 1) + r(4, 3) + r(6, 5), r(2, 2) + r(4, 4) + r(6, 6)],
            ],
        };
        ComplexMatrix::from_rows(&rows).expect("closed forms are square")
    }
}
