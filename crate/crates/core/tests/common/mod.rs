#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sevenlevel::pulse::rotation;
use sevenlevel::{Complex64, ComplexMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// `G G^dagger / tr` with complex Gaussian `G` of the given rank.
pub fn random_density(rng: &mut impl Rng, dim: usize, rank: usize) -> ComplexMatrix {
    let mut rho = ComplexMatrix::zeros(dim);
    for _ in 0..rank {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        rho = rho.add(&ComplexMatrix::projector(&v)).unwrap();
    }
    let tr = rho.trace().re;
    rho.scale(Complex64::new(1.0 / tr, 0.0))
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(gaussian(rng), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(gaussian(rng), gaussian(rng));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random unitary on seven levels built from rotations and phases.
pub fn random_unitary7(rng: &mut impl Rng) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(7);
    for _ in 0..40 {
        let n = rng.gen_range(1..7);
        let m = rng.gen_range(n + 1..=7);
        let r = rotation(n, m, rng.gen_range(0.0..std::f64::consts::TAU)).unwrap();
        let mut phase = ComplexMatrix::identity(7);
        phase[(n - 1, n - 1)] = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        u = &phase * &(&r * &u);
    }
    u
}

/// Brute-force partial trace of an 8x8 three-qubit matrix keeping the
/// listed qubits (0 = A, slowest), by explicit bit manipulation.
pub fn brute_force_reduce(rho8: &ComplexMatrix, keep: &[usize]) -> ComplexMatrix {
    let dim = 1 << keep.len();
    let mut out = ComplexMatrix::zeros(dim);
    let bit = |index: usize, qubit: usize| (index >> (2 - qubit)) & 1;
    for r in 0..8 {
        for c in 0..8 {
            let traced_equal = (0..3)
                .filter(|q| !keep.contains(q))
                .all(|q| bit(r, q) == bit(c, q));
            if !traced_equal {
                continue;
            }
            let ri = keep.iter().fold(0, |acc, &q| acc * 2 + bit(r, q));
            let ci = keep.iter().fold(0, |acc, &q| acc * 2 + bit(c, q));
            out[(ri, ci)] += rho8[(r, c)];
        }
    }
    out
}

/// Pads a 7x7 matrix with a zero eighth row and column.
pub fn embed(rho7: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(8);
    for i in 0..7 {
        for j in 0..7 {
            out[(i, j)] = rho7[(i, j)];
        }
    }
    out
}

/// Lowest `count` eigenvalues of the finite-difference Hamiltonian
/// `-1/(2m) d^2/dx^2 + V(x)` on `points` interior grid points of
/// `[-extent, extent]` with Dirichlet ends, using the cell-averaged
/// potential so the well edges need not sit on grid nodes. Eigenvalues come from Sturm
/// sequence bisection on the tridiagonal matrix.
pub fn finite_difference_levels(depth: f64, width: f64, mass: f64, extent: f64, points: usize, count: usize) -> Vec<f64> {
    let h = 2.0 * extent / (points + 1) as f64;
    let off = -1.0 / (2.0 * mass * h * h);
    let diag: Vec<f64> = (1..=points)
        .map(|i| {
            let x = -extent + i as f64 * h;
            // fraction of the cell [x - h/2, x + h/2] inside the well
            let inside = ((x + h / 2.0).min(width / 2.0) - (x - h / 2.0).max(-width / 2.0)).max(0.0) / h;
            let v = -depth * inside;
            1.0 / (mass * h * h) + v
        })
        .collect();
    // number of eigenvalues strictly below lambda
    let count_below = |lambda: f64| -> usize {
        let mut below = 0;
        let mut q = diag[0] - lambda;
        if q < 0.0 {
            below += 1;
        }
        for &d in &diag[1..] {
            let prev = if q == 0.0 { f64::EPSILON } else { q };
            q = d - lambda - off * off / prev;
            if q < 0.0 {
                below += 1;
            }
        }
        below
    };
    let lo0 = -depth - 1.0;
    let hi0 = diag.iter().cloned().fold(f64::MIN, f64::max) + 2.0 * off.abs();
    (0..count)
        .map(|k| {
            let (mut lo, mut hi) = (lo0, hi0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}
