//! Bound states of a particle in a one-dimensional finite square well
//! `V(x) = -V0` for `|x| <= a/2`, zero outside, in units with `hbar = 1`.
//!
//! With `z = k a / 2` and `z0 = K a / 2`, `K = sqrt(2 m V0)`, even states
//! solve `z tan z = sqrt(z0^2 - z^2)` and odd states
//! `-z cot z = sqrt(z0^2 - z^2)`. Each branch is monotone on a quarter
//! period, so every root is bracketed and found by bisection.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Below this `K a` the single bound state is so weakly bound (binding
/// energy of order `(K a)^4 / (8 m a^2)`) that it is reported as absent.
pub const MIN_KA: f64 = 1e-2;
const BISECTION_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec {
    /// Magnitude of the well depth; the potential inside is `-depth`.
    pub depth: f64,
    pub width: f64,
    pub mass: f64,
}

impl Default for WellSpec {
    fn default() -> Self {
        Self {
            depth: 200.0,
            width: 1.0,
            mass: 1.0,
        }
    }
}

impl WellSpec {
    pub fn new(depth: f64, width: f64, mass: f64) -> Result<Self> {
        let spec = Self { depth, width, mass };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("depth", self.depth), ("width", self.width), ("mass", self.mass)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidWell(format!("{name} must be positive, got {value}")));
            }
        }
        Ok(())
    }

    /// `K = sqrt(2 m V0)`.
    pub fn wavenumber_scale(&self) -> f64 {
        (2.0 * self.mass * self.depth).sqrt()
    }

    /// Number of bound states `N`, the smallest integer with `K a / pi <= N`.
    pub fn predicted_count(&self) -> usize {
        (self.wavenumber_scale() * self.width / PI).ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    /// 1-based level index.
    pub n: usize,
    pub energy: f64,
    pub parity: Parity,
    /// Wavenumber inside the well.
    pub k: f64,
    /// Decay constant outside the well.
    pub kappa: f64,
    /// Signed amplitude of the cosine / sine inside the well.
    pub inner_amplitude: f64,
    /// Signed amplitude of the exponential tail at `x = +a/2`.
    pub outer_amplitude: f64,
    half_width: f64,
}

impl BoundState {
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Normalized wavefunction value at `x`.
    pub fn wavefunction(&self, x: f64) -> f64 {
        let h = self.half_width;
        if x.abs() <= h {
            match self.parity {
                Parity::Even => self.inner_amplitude * (self.k * x).cos(),
                Parity::Odd => self.inner_amplitude * (self.k * x).sin(),
            }
        } else {
            let tail = self.outer_amplitude * (-self.kappa * (x.abs() - h)).exp();
            match self.parity {
                Parity::Even => tail,
                Parity::Odd => tail * x.signum(),
            }
        }
    }

    /// Residual of the transcendental matching condition for this state.
    pub fn matching_residual(&self) -> f64 {
        let z = self.k * self.half_width;
        match self.parity {
            Parity::Even => self.k * z.tan() - self.kappa,
            Parity::Odd => -self.k / z.tan() - self.kappa,
        }
    }
}

/// Normalized wavefunction of `state` at `x`.
pub fn wavefunction(state: &BoundState, x: f64) -> f64 {
    state.wavefunction(x)
}

/// All bound states of the well, ordered by energy.
///
/// Wavefunction signs are fixed so that the dipole moment between each
/// pair of adjacent levels is positive.
pub fn solve_bound_states(spec: &WellSpec) -> Result<Vec<BoundState>> {
    spec.validate()?;
    let big_k = spec.wavenumber_scale();
    let ka = big_k * spec.width;
    if ka < MIN_KA {
        return Err(Error::NoBoundStates { ka });
    }
    let half = spec.width / 2.0;
    let z0 = big_k * half;

    let mut states = Vec::new();
    let mut j = 0usize;
    loop {
        let even_lo = j as f64 * PI;
        if even_lo >= z0 {
            break;
        }
        let even_hi = (even_lo + FRAC_PI_2).min(z0);
        let z = bisect(|z| z * z.tan() - (z0 * z0 - z * z).max(0.0).sqrt(), even_lo, even_hi);
        states.push(make_state(spec, z, Parity::Even));

        let odd_lo = even_lo + FRAC_PI_2;
        if odd_lo >= z0 {
            break;
        }
        let odd_hi = (odd_lo + FRAC_PI_2).min(z0);
        let z = bisect(|z| -z / z.tan() - (z0 * z0 - z * z).max(0.0).sqrt(), odd_lo, odd_hi);
        states.push(make_state(spec, z, Parity::Odd));
        j += 1;
    }
    if states.is_empty() {
        return Err(Error::NoBoundStates { ka });
    }
    for (i, s) in states.iter_mut().enumerate() {
        s.n = i + 1;
    }
    for i in 1..states.len() {
        if dipole_element(&states[i - 1], &states[i]) < 0.0 {
            states[i].inner_amplitude = -states[i].inner_amplitude;
            states[i].outer_amplitude = -states[i].outer_amplitude;
        }
    }
    Ok(states)
}

/// Bisection for an increasing function on the open interval `(lo, hi)`;
/// the endpoints themselves may be singular.
fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > BISECTION_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn make_state(spec: &WellSpec, z: f64, parity: Parity) -> BoundState {
    let half = spec.width / 2.0;
    let k = z / half;
    let k_sq_total = 2.0 * spec.mass * spec.depth;
    let kappa = (k_sq_total - k * k).max(0.0).sqrt();
    let energy = k * k / (2.0 * spec.mass) - spec.depth;
    let (edge, inner_norm) = match parity {
        Parity::Even => (z.cos(), half + (k * spec.width).sin() / (2.0 * k)),
        Parity::Odd => (z.sin(), half - (k * spec.width).sin() / (2.0 * k)),
    };
    // tails integrate to edge^2 / (2 kappa) on each side
    let norm = (inner_norm + edge * edge / kappa).sqrt();
    let inner_amplitude = 1.0 / norm;
    BoundState {
        n: 0,
        energy,
        parity,
        k,
        kappa,
        inner_amplitude,
        outer_amplitude: inner_amplitude * edge,
        half_width: half,
    }
}

/// Transition dipole moments `d[n][m] = <psi_n| x |psi_m>`, zero-indexed.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleMatrix {
    entries: Vec<Vec<f64>>,
}

impl DipoleMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entry for 1-based levels `n`, `m`.
    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.entries[n - 1][m - 1]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.entries
    }
}

/// Dipole matrix over `states`, from exact piecewise antiderivatives.
pub fn dipole_matrix(states: &[BoundState]) -> DipoleMatrix {
    let n = states.len();
    let mut entries = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dipole_element(&states[i], &states[j]);
            entries[i][j] = d;
            entries[j][i] = d;
        }
    }
    DipoleMatrix { entries }
}

fn dipole_element(a: &BoundState, b: &BoundState) -> f64 {
    let (even, odd) = match (a.parity, b.parity) {
        (Parity::Even, Parity::Odd) => (a, b),
        (Parity::Odd, Parity::Even) => (b, a),
        _ => return 0.0,
    };
    let h = even.half_width;
    // x cos(ae x) sin(ao x) = x/2 [sin((ao+ae)x) + sin((ao-ae)x)]
    let inner = 0.5
        * (x_sin_integral(odd.k + even.k, h) + x_sin_integral(odd.k - even.k, h))
        * even.inner_amplitude
        * odd.inner_amplitude;
    let lambda = even.kappa + odd.kappa;
    let outer = even.outer_amplitude * odd.outer_amplitude * (h / lambda + 1.0 / (lambda * lambda));
    // the integrand is even in x
    2.0 * (inner + outer)
}

/// `int_0^L x sin(w x) dx`.
fn x_sin_integral(w: f64, l: f64) -> f64 {
    if w == 0.0 {
        return 0.0;
    }
    (w * l).sin() / (w * w) - l * (w * l).cos() / w
}
