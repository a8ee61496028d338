//! Dense square complex matrices sized for a handful of qubits.
//!
//! Storage is row-major. Nothing here is tuned for large dimensions: the
//! largest matrix the crate builds is the 16x16 two-qubit generator.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{c, cr, tol, Real};

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from a row-major entry list; fails unless its length is a square.
    pub fn from_row_major(data: Vec<Complex<T>>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::InvalidDimensions(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    /// Build from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self {
            dim,
            data: entries.iter().map(|&x| cr(T::lit(x))).collect(),
        }
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = cr(d);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex<T>], v: &[Complex<T>]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_row_major(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> T {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Largest entry-wise deviation from Hermiticity.
    pub fn hermitian_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `A * B * A^dagger`, the conjugation used for every Kraus and projector update.
    pub fn sandwich(&self, inner: &Self) -> Self {
        &(self * inner) * &self.adjoint()
    }

    /// Column-stacked vectorization: `vec(M)[i + d*j] = M[i, j]`.
    pub fn vectorize(&self) -> Vec<Complex<T>> {
        let d = self.dim;
        let mut v = vec![Complex::zero(); d * d];
        for j in 0..d {
            for i in 0..d {
                v[i + d * j] = self[(i, j)];
            }
        }
        v
    }

    /// Inverse of [`vectorize`](Self::vectorize).
    pub fn unvectorize(v: &[Complex<T>]) -> Result<Self> {
        let d = (v.len() as f64).sqrt().round() as usize;
        if d == 0 || d * d != v.len() {
            return Err(Error::InvalidDimensions(format!(
                "vector of length {} is not a vectorized square matrix",
                v.len()
            )));
        }
        Ok(Self::from_fn(d, |i, j| v[i + d * j]))
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] = out.data[i * d + j] + a * rhs.data[k * d + j];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<T: Real> $tr for ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;
            fn $f(self, rhs: ComplexMatrix<T>) -> ComplexMatrix<T> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Mul, mul);
forward_owned!(Add, add);
forward_owned!(Sub, sub);

/// Kronecker product; block `(i, j)` of the result is `a[i, j] * b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (da, db) = (a.dim, b.dim);
    ComplexMatrix::from_fn(da * db, |r, s| a[(r / db, s / db)] * b[(r % db, s % db)])
}

/// Trace out one factor of a bipartite operator on `C^d1 (x) C^d2`, keeping
/// factor `keep` (0 or 1).
pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    dims: (usize, usize),
    keep: usize,
) -> Result<ComplexMatrix<T>> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 || d1 * d2 != m.dim() {
        return Err(Error::InvalidDimensions(format!(
            "cannot split a {0}x{0} matrix as {1}x{2}",
            m.dim(),
            d1,
            d2
        )));
    }
    match keep {
        0 => Ok(ComplexMatrix::from_fn(d1, |i, j| {
            (0..d2).fold(Complex::zero(), |acc, k| acc + m[(i * d2 + k, j * d2 + k)])
        })),
        1 => Ok(ComplexMatrix::from_fn(d2, |i, j| {
            (0..d1).fold(Complex::zero(), |acc, k| acc + m[(k * d2 + i, k * d2 + j)])
        })),
        other => Err(Error::InvalidDimensions(format!(
            "subsystem index {other} out of range for a bipartite split"
        ))),
    }
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let v = &self.eigenvectors;
        let d = ComplexMatrix::from_diag(&self.eigenvalues);
        &(v * &d) * &v.adjoint()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.eigenvectors.dim())
            .map(|i| self.eigenvectors[(i, k)])
            .collect()
    }
}

const MAX_JACOBI_SWEEPS: usize = 100;

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
pub fn hermitian_eig<T: Real>(m: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let asym = m.hermitian_asymmetry();
    let scale = m.max_abs().max(T::one());
    if asym > tol::<T>(|t| t.hermitian) * scale {
        return Err(Error::NotHermitian(asym.as_f64()));
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(n);
    let target = tol::<T>(|t| t.jacobi_offdiag) * a.frobenius_norm().max(T::one());

    let offdiag = |a: &ComplexMatrix<T>| {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = offdiag(&a);
        if off < target {
            break;
        }
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                offdiag: off.as_f64(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let gabs = g.norm();
                if gabs <= T::min_positive_value() {
                    continue;
                }
                let phase = g / gabs;
                let zeta = (a[(q, q)].re - a[(p, p)].re) / (gabs + gabs);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = t * cs;
                // U = [[c, s e^{ia}], [-s e^{-ia}, c]] on the (p, q) plane; A <- U^dag A U.
                let u_pq = phase * sn;
                let u_qp = -phase.conj() * sn;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * cs + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * cs;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * cs + aqk * u_qp.conj();
                    a[(q, k)] = apk * u_pq.conj() + aqk * cs;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = cr(a[(p, p)].re);
                a[(q, q)] = cr(a[(q, q)].re);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cs + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * cs;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, col| v[(i, order[col])]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    Ok(hermitian_eig(m)?.eigenvalues)
}

const MAX_TAYLOR_TERMS: usize = 64;

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
pub fn matrix_exp<T: Real>(m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = m.dim();
    let norm = m.norm_one();
    let half = T::lit(0.5);
    let mut squarings = 0i32;
    if norm > half {
        squarings = (norm / half).log2().ceil().to_i32().unwrap_or(0).max(0);
    }
    let scaled = m.scale_real(T::lit(2.0).powi(-squarings));
    let eps = tol::<T>(|t| t.expm_residual);

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TAYLOR_TERMS {
        term = (&term * &scaled).scale_real(T::one() / T::lit(k as f64));
        sum = &sum + &term;
        if term.norm_one() <= eps * sum.norm_one() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real>(a: &ComplexMatrix<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::InvalidDimensions(format!(
            "right-hand side of length {} for a {n}x{n} system",
            b.len()
        )));
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    let scale = a.max_abs().max(T::min_positive_value());
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[(i, col)].norm().partial_cmp(&m[(j, col)].norm()).unwrap())
            .unwrap();
        if m[(pivot, col)].norm() <= T::epsilon() * T::lit(64.0) * scale {
            return Err(Error::Consistency("singular linear system".into()));
        }
        if pivot != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            x.swap(col, pivot);
        }
        let inv = m[(col, col)].inv();
        for row in (col + 1)..n {
            let f = m[(row, col)] * inv;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let sub = f * m[(col, j)];
                m[(row, j)] = m[(row, j)] - sub;
            }
            let sub = f * x[col];
            x[row] = x[row] - sub;
        }
    }
    for row in (0..n).rev() {
        let mut acc = x[row];
        for j in (row + 1)..n {
            acc = acc - m[(row, j)] * x[j];
        }
        x[row] = acc / m[(row, row)];
    }
    Ok(x)
}

/// Named qubit operators. `|0>` is the lower level: `sigma_minus = |0><1|`.
pub mod ops {
    use super::*;

    pub fn sigma_x<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn sigma_y<T: Real>() -> ComplexMatrix<T> {
        let z = Complex::zero();
        let i = c(T::zero(), T::one());
        ComplexMatrix::from_row_major(vec![z, -i, i, z]).unwrap()
    }

    pub fn sigma_z<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0])
    }

    /// Lowering operator `|0><1|`.
    pub fn sigma_minus<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0])
    }

    /// Raising operator `|1><0|`.
    pub fn sigma_plus<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_real(2, &[0.0, 0.0, 1.0, 0.0])
    }

    /// `|i><j|` in dimension `dim`.
    pub fn ket_bra<T: Real>(dim: usize, i: usize, j: usize) -> ComplexMatrix<T> {
        let mut m = ComplexMatrix::zeros(dim);
        m[(i, j)] = Complex::one();
        m
    }
}

#[cfg(test)]
mod tests {
    use super::ops::*;
    use super::*;

    type M = ComplexMatrix<f64>;

    #[test]
    fn kron_identities() {
        assert_eq!(kron(&M::identity(2), &M::identity(2)), M::identity(4));
        let a = M::from_real(2, &[1.5, 2.0, 3.0, 4.0]);
        let b = M::from_fn(3, |i, j| c(i as f64 + 1.0, j as f64));
        let k = kron(&a, &b);
        assert_eq!(k.dim(), 6);
        assert_eq!(k[(0, 0)], a[(0, 0)] * b[(0, 0)]);
    }

    #[test]
    fn kron_sigma_x_sigma_z_by_hand() {
        // sigma_x (x) sigma_z = [[0, Z], [Z, 0]] with Z = diag(1, -1).
        let expected = M::from_real(
            4,
            &[
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, -1.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, -1.0, 0.0, 0.0,
            ],
        );
        assert_eq!(kron(&sigma_x(), &sigma_z()), expected);
    }

    #[test]
    fn partial_trace_product_and_bell() {
        let a = M::from_real(2, &[0.7, 0.1, 0.1, 0.3]);
        let b = M::from_real(2, &[0.5, 0.0, 0.0, 0.5]);
        let ab = kron(&a, &b);
        assert!(partial_trace(&ab, (2, 2), 0).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(partial_trace(&ab, (2, 2), 1).unwrap().max_abs_diff(&b) < 1e-15);

        let s = 0.5f64.sqrt();
        let phi = [cr(s), cr(0.0), cr(0.0), cr(s)];
        let bell = M::outer(&phi, &phi);
        let half_id = M::identity(2).scale_real(0.5);
        assert!(partial_trace(&bell, (2, 2), 1).unwrap().max_abs_diff(&half_id) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_split() {
        let m = M::identity(4);
        assert!(matches!(
            partial_trace(&m, (3, 2), 0),
            Err(Error::InvalidDimensions(_))
        ));
        assert!(partial_trace(&m, (2, 2), 2).is_err());
    }

    #[test]
    fn eig_simple_spectra() {
        let e = hermitian_eig(&M::from_real(2, &[0.3, 0.0, 0.0, 0.7])).unwrap();
        assert_eq!(e.eigenvalues, vec![0.3, 0.7]);
        let e = hermitian_eig(&sigma_x::<f64>()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let e = hermitian_eig(&sigma_y::<f64>()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!(e.reconstruct().max_abs_diff(&sigma_y()) < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = M::from_real(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn exp_special_cases() {
        assert_eq!(matrix_exp(&M::zeros(4)), M::identity(4));
        let e = matrix_exp(&M::from_diag(&[0.5, -2.0]));
        assert!((e[(0, 0)].re - 0.5f64.exp()).abs() < 1e-14);
        assert!((e[(1, 1)].re - (-2.0f64).exp()).abs() < 1e-15);
        assert!(e[(0, 1)].norm() < 1e-16);
        // exp(i pi/2 sigma_x) = i sigma_x
        let r = matrix_exp(&sigma_x::<f64>().scale(c(0.0, std::f64::consts::FRAC_PI_2)));
        assert!(r.max_abs_diff(&sigma_x().scale(c(0.0, 1.0))) < 1e-14);
    }

    #[test]
    fn vectorize_column_stacking() {
        let m = M::from_real(2, &[1.0, 2.0, 3.0, 4.0]);
        let v: Vec<f64> = m.vectorize().iter().map(|z| z.re).collect();
        assert_eq!(v, vec![1.0, 3.0, 2.0, 4.0]);
        assert_eq!(M::unvectorize(&m.vectorize()).unwrap(), m);
    }

    #[test]
    fn solve_small_system() {
        let a = M::from_fn(3, |i, j| c((i + 2 * j) as f64 + if i == j { 5.0 } else { 0.0 }, i as f64 - j as f64));
        let x = vec![cr(1.0), c(0.5, -1.0), c(-2.0, 0.25)];
        let b = a.mul_vec(&x);
        let got = solve(&a, &b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-13);
        }
        assert!(solve(&M::zeros(2), &[cr(1.0), cr(1.0)]).is_err());
    }
}
