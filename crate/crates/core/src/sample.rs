//! Random states, unitaries and channels for property checks.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::KrausChannel;
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::state::{DensityMatrix, Ordering};

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Ginibre matrix with i.i.d. standard complex normal entries.
pub fn ginibre<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(dim, |_, _| gaussian(rng))
}

/// Random Hermitian matrix `(G + G^dag) / 2`.
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    ginibre(dim, rng).hermitian_part()
}

/// Mixed state `G G^dag / tr(G G^dag)` (Hilbert-Schmidt measure).
pub fn random_state<T: Real, R: Rng + ?Sized>(
    dims: Vec<usize>,
    ordering: Ordering,
    rng: &mut R,
) -> DensityMatrix<T> {
    let d = dims.iter().product();
    let g = ginibre::<T, _>(d, rng);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(T::one() / tr).hermitian_part(), dims, ordering)
        .expect("Wishart matrices are valid states")
}

pub fn random_two_qubit_state<T: Real, R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix<T> {
    random_state(vec![2, 2], Ordering::SX, rng)
}

/// Orthonormalize the columns of a tall `rows x cols` block (row-major input).
fn orthonormal_columns<T: Real>(rows: usize, cols: usize, mut a: Vec<Complex<T>>) -> Vec<Complex<T>> {
    for j in 0..cols {
        for k in 0..j {
            let mut dot = Complex::<T>::zero();
            for i in 0..rows {
                dot = dot + a[i * cols + k].conj() * a[i * cols + j];
            }
            for i in 0..rows {
                let sub = dot * a[i * cols + k];
                a[i * cols + j] = a[i * cols + j] - sub;
            }
        }
        let norm = (0..rows).map(|i| a[i * cols + j].norm_sqr()).sum::<T>().sqrt();
        for i in 0..rows {
            a[i * cols + j] = a[i * cols + j] / norm;
        }
    }
    a
}

/// Haar-ish random unitary from Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let raw = (0..dim * dim).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_row_major(orthonormal_columns(dim, dim, raw)).expect("square")
}

/// Random channel with `n_kraus` operators, cut from a random isometry.
pub fn random_channel<T: Real, R: Rng + ?Sized>(
    dim: usize,
    n_kraus: usize,
    rng: &mut R,
) -> KrausChannel<T> {
    let rows = dim * n_kraus;
    let raw = (0..rows * dim).map(|_| gaussian(rng)).collect();
    let v = orthonormal_columns(rows, dim, raw);
    let ops = (0..n_kraus)
        .map(|k| ComplexMatrix::from_fn(dim, |i, j| v[(k * dim + i) * dim + j]))
        .collect();
    KrausChannel::new(ops, format!("random({n_kraus})")).expect("isometry blocks are complete")
}
