//! Dense complex matrices, a cyclic Jacobi Hermitian eigensolver, and the
//! entropy / partial-trace primitives the rest of the crate builds on.
//!
//! Matrices are small (at most 8x8 here) and stored row-major. Tensor
//! factors follow the usual convention: factor 0 is the slowest-varying
//! (leftmost) index, so for dims `(2, 2, 2)` the basis index of `|abc>` is
//! `4a + 2b + c`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `max |m - m^dagger|` for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `(-EIGEN_CLIP, 0)` are treated as round-off and clipped.
pub const EIGEN_CLIP: f64 = 1e-10;
/// Allowed deviation of a density matrix trace from one.
pub const TRACE_TOL: f64 = 1e-9;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a
    /// perfect square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() || dim == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries do not form a square matrix",
                entries.len()
            )));
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("rows do not form a square matrix".into()));
        }
        Ok(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Outer product `|v><v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs, "matmul")?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix of dim {} applied to vector of length {}",
                self.dim,
                v.len()
            )));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.check_same_dim(rhs, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs, "add")?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Kronecker product `self ⊗ rhs`, `self` being the slow index.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (p, q) = (self.dim, rhs.dim);
        let mut out = Self::zeros(p * q);
        for i in 0..p {
            for j in 0..p {
                let a = self[(i, j)];
                for k in 0..q {
                    for l in 0..q {
                        out[(i * q + k, j * q + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `max |U U^dagger - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self
            .matmul(&self.dagger())
            .expect("a matrix always conforms with its own adjoint");
        prod.max_abs_diff(&Self::identity(self.dim))
            .expect("identity has matching dimension")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// `U self U^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.dagger())
    }

    fn check_same_dim(&self, rhs: &Self, op: &str) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {} vs {}",
                self.dim, rhs.dim
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of bounds");
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on mismatched dimensions; use [`ComplexMatrix::matmul`] for
    /// the fallible form.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted in
/// descending order and column `i` of `eigenvectors` belongs to
/// `eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj())
                    .sum();
            }
        }
        out
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each (p, q) step first rotates the phase of `a_pq` away so the 2x2 block
/// is real symmetric, then applies the classical symmetric Schur rotation.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Spectrum> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    // symmetrize so round-off in the input cannot bias the result
    let mut a = m.add(&m.dagger())?.scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    let scale = frobenius(&a).max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn frobenius(a: &ComplexMatrix) -> f64 {
    a.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    let phase = (apq / r).conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // W acts on columns p, q: W = D J with D = diag(.., e^{-i phi} at q, ..)
    let w_pp = Complex64::new(c, 0.0);
    let w_qp = -phase * s;
    let w_pq = Complex64::new(s, 0.0);
    let w_qq = phase * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * w_pp + akq * w_qp;
        a[(k, q)] = akp * w_pq + akq * w_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
        a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}

/// Checks trace and positivity, returning the (clipped) spectrum.
pub fn density_eigenvalues(sigma: &ComplexMatrix) -> Result<Vec<f64>> {
    let tr = sigma.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::NotDensityMatrix {
            reason: format!("trace {tr} differs from 1"),
        });
    }
    let spectrum = eig_hermitian(sigma).map_err(|e| match e {
        Error::NotHermitian { deviation } => Error::NotDensityMatrix {
            reason: format!("not Hermitian (deviation {deviation:e})"),
        },
        other => other,
    })?;
    spectrum
        .eigenvalues
        .into_iter()
        .map(|lambda| {
            if lambda < -EIGEN_CLIP {
                Err(Error::NotDensityMatrix {
                    reason: format!("negative eigenvalue {lambda:e}"),
                })
            } else {
                Ok(lambda.max(0.0))
            }
        })
        .collect()
}

/// `-sum lambda log2 lambda`, in bits, with `0 log 0 = 0`.
pub fn von_neumann_entropy(sigma: &ComplexMatrix) -> Result<f64> {
    let eigenvalues = density_eigenvalues(sigma)?;
    Ok(-eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.log2())
        .sum::<f64>())
}

/// Traces out every factor not listed in `kept`.
///
/// `factor_dims` lists the tensor factor dimensions (slowest first) and
/// `kept` the factor indices to retain; the kept factors stay in their
/// original order regardless of the order given.
pub fn partial_trace(
    m: &ComplexMatrix,
    factor_dims: &[usize],
    kept: &[usize],
) -> Result<ComplexMatrix> {
    let total: usize = factor_dims.iter().product();
    if factor_dims.is_empty() || factor_dims.contains(&0) || total != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "factor dims {factor_dims:?} do not multiply to {}",
            m.dim()
        )));
    }
    let mut keep = vec![false; factor_dims.len()];
    for &k in kept {
        if k >= factor_dims.len() || keep[k] {
            return Err(Error::DimensionMismatch(format!(
                "kept factor list {kept:?} invalid for {} factors",
                factor_dims.len()
            )));
        }
        keep[k] = true;
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let kept_dims: Vec<usize> = (0..factor_dims.len())
        .filter(|&f| keep[f])
        .map(|f| factor_dims[f])
        .collect();
    let out_dim: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim);

    let digits = |mut index: usize| -> Vec<usize> {
        let mut d = vec![0; factor_dims.len()];
        for f in (0..factor_dims.len()).rev() {
            d[f] = index % factor_dims[f];
            index /= factor_dims[f];
        }
        d
    };
    let compose = |d: &[usize]| -> usize {
        (0..factor_dims.len())
            .filter(|&f| keep[f])
            .fold(0, |acc, f| acc * factor_dims[f] + d[f])
    };

    let all_digits: Vec<Vec<usize>> = (0..total).map(digits).collect();
    for (r, dr) in all_digits.iter().enumerate() {
        for (c, dc) in all_digits.iter().enumerate() {
            let traced_match = (0..factor_dims.len()).all(|f| keep[f] || dr[f] == dc[f]);
            if traced_match {
                out[(compose(dr), compose(dc))] += m[(r, c)];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_eigenvalues() {
        let s = eig_hermitian(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let s = eig_hermitian(&ComplexMatrix::from_real_diag(&[0.3, 0.7])).unwrap();
        assert_eq!(s.eigenvalues, vec![0.7, 0.3]);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = eig_hermitian(&x).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
        assert!(s.reconstruct().max_abs_diff(&x).unwrap() < 1e-12);
    }

    #[test]
    fn pauli_y_complex_offdiagonal() {
        let y = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap();
        let s = eig_hermitian(&y).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!(s.reconstruct().max_abs_diff(&y).unwrap() < 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn entropy_examples() {
        let pure = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        assert_eq!(von_neumann_entropy(&pure).unwrap(), 0.0);
        let mixed = ComplexMatrix::from_real_diag(&[0.5, 0.5]);
        assert!((von_neumann_entropy(&mixed).unwrap() - 1.0).abs() < 1e-15);
        let mixed4 = ComplexMatrix::from_real_diag(&[0.25; 4]);
        assert!((von_neumann_entropy(&mixed4).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn entropy_clips_roundoff_but_rejects_negative() {
        let slightly = ComplexMatrix::from_real_diag(&[1.0 + 5e-11, -5e-11]);
        assert!(von_neumann_entropy(&slightly).unwrap().abs() < 1e-9);
        let bad = ComplexMatrix::from_real_diag(&[1.1, -0.1]);
        assert!(matches!(
            von_neumann_entropy(&bad),
            Err(Error::NotDensityMatrix { .. })
        ));
        let bad_trace = ComplexMatrix::from_real_diag(&[0.5, 0.4]);
        assert!(matches!(
            von_neumann_entropy(&bad_trace),
            Err(Error::NotDensityMatrix { .. })
        ));
    }

    #[test]
    fn partial_trace_maximally_mixed() {
        let m = ComplexMatrix::from_real_diag(&[0.125; 8]);
        let r = partial_trace(&m, &[2, 2, 2], &[0]).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.5, 0.5])).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_ground_state_pair() {
        let mut m = ComplexMatrix::zeros(8);
        m[(0, 0)] = c(1.0, 0.0);
        let r = partial_trace(&m, &[2, 2, 2], &[0, 1]).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(r, expected);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(8);
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[0]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 2, 2], &[3]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 2, 2], &[1, 1]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn basic_ops() {
        assert_eq!(ComplexMatrix::identity(7).trace(), c(7.0, 0.0));
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 2.0), c(3.0, -1.0)], vec![c(0.5, 0.0), c(-2.0, 4.0)]])
            .unwrap();
        assert_eq!(m.dagger().dagger(), m);
        assert!(m.matmul(&ComplexMatrix::identity(3)).is_err());
        assert!(m.max_abs_diff(&ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn kron_matches_partial_trace() {
        let a = ComplexMatrix::from_real_diag(&[0.25, 0.75]);
        let b = ComplexMatrix::from_real_diag(&[0.5, 0.2, 0.3]);
        let ab = a.kron(&b);
        let back = partial_trace(&ab, &[2, 3], &[0]).unwrap();
        assert!(back.max_abs_diff(&a).unwrap() < 1e-15);
        let back_b = partial_trace(&ab, &[2, 3], &[1]).unwrap();
        assert!(back_b.max_abs_diff(&b).unwrap() < 1e-15);
    }
}
