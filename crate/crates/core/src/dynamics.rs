//! Cascaded relaxation of the S-X pair.
//!
//! The generator is
//!
//! ```text
//! d rho / dt = -i [H, rho] + D[C] rho
//! H = i kappa sigma_x^X (sigma_-^S - sigma_+^S)
//! C = sqrt(2 kappa) (sigma_x^X + sigma_-^S)
//! D[O] rho = O rho O^dag - O^dag O rho / 2 - rho O^dag O / 2
//! ```
//!
//! and is stored as a superoperator on column-stacked density matrices, where
//! `vec(A rho B) = (B^T (x) A) vec(rho)`.
//!
//! `sigma_x^X` commutes with both `H` and `C`, so its expectation value is
//! conserved and the kernel of the generator is two-dimensional. A steady
//! state is therefore only defined relative to a starting point; see
//! [`steady_state_from`].

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, kron, matrix_exp, ops, solve, ComplexMatrix};
use crate::scalar::{c, cr, tol, Real};
use crate::state::{on_s, on_x, DensityMatrix, Ordering};

/// Superoperator generator of the cascaded master equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian<T: Real> {
    mat: ComplexMatrix<T>,
    kappa: T,
    ordering: Ordering,
}

/// `H = i kappa sigma_x^X (sigma_-^S - sigma_+^S)`.
pub fn hamiltonian<T: Real>(kappa: T, ordering: Ordering) -> ComplexMatrix<T> {
    let lowering = &ops::sigma_minus::<T>() - &ops::sigma_plus::<T>();
    ordering
        .tensor(&lowering, &ops::sigma_x())
        .scale(c(T::zero(), kappa))
}

/// `C = sqrt(2 kappa) (sigma_x^X + sigma_-^S)`.
pub fn jump_operator<T: Real>(kappa: T, ordering: Ordering) -> ComplexMatrix<T> {
    let sum = &on_x(&ops::sigma_x(), ordering) + &on_s(&ops::sigma_minus(), ordering);
    sum.scale_real((kappa + kappa).sqrt())
}

/// `-i [H, rho] + D[C] rho` evaluated directly on a matrix.
pub fn generator_action<T: Real>(
    h: &ComplexMatrix<T>,
    jump: &ComplexMatrix<T>,
    rho: &ComplexMatrix<T>,
) -> ComplexMatrix<T> {
    let minus_i = c(T::zero(), -T::one());
    let comm = &(h * rho) - &(rho * h);
    let cdc = &jump.adjoint() * jump;
    let half = T::lit(0.5);
    let anti = (&(&cdc * rho) + &(rho * &cdc)).scale_real(half);
    &(&comm.scale(minus_i) + &jump.sandwich(rho)) - &anti
}

/// Build the 16x16 generator. `kappa` must be positive.
pub fn build_liouvillian<T: Real>(kappa: T, ordering: Ordering) -> Result<Liouvillian<T>> {
    if !(kappa > T::zero() && kappa.is_finite()) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let h = hamiltonian(kappa, ordering);
    let jump = jump_operator(kappa, ordering);
    let d = h.dim();
    let id = ComplexMatrix::identity(d);
    let minus_i = c(T::zero(), -T::one());
    let half = T::lit(0.5);

    let commutator = (&kron(&id, &h) - &kron(&h.transpose(), &id)).scale(minus_i);
    let cdc = &jump.adjoint() * &jump;
    let dissipator = &kron(&jump.conj(), &jump)
        - &(&kron(&id, &cdc) + &kron(&cdc.transpose(), &id)).scale_real(half);
    Ok(Liouvillian {
        mat: &commutator + &dissipator,
        kappa,
        ordering,
    })
}

impl<T: Real> Liouvillian<T> {
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    /// Hilbert-space dimension `d` (the generator is `d^2 x d^2`).
    pub fn hilbert_dim(&self) -> usize {
        (self.mat.dim() as f64).sqrt().round() as usize
    }

    /// `max_j |(vec(I)^dag L)_j|`; zero for a trace-preserving generator.
    pub fn trace_defect(&self) -> T {
        let d = self.hilbert_dim();
        (0..self.mat.dim())
            .map(|col| {
                (0..d)
                    .fold(Complex::zero(), |acc, i| acc + self.mat[(i + d * i, col)])
                    .norm()
            })
            .fold(T::zero(), T::max)
    }

    /// `L vec(rho)` reshaped back to a matrix.
    pub fn apply(&self, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        ComplexMatrix::unvectorize(&self.mat.mul_vec(&rho.vectorize()))
            .expect("generator and state dimensions agree")
    }

    /// `exp(L t)` for repeated propagation over the same interval.
    pub fn propagator(&self, duration: T) -> Result<Propagator<T>> {
        if !(duration >= T::zero() && duration.is_finite()) {
            return Err(Error::Domain(format!("duration must be non-negative, got {duration}")));
        }
        Ok(Propagator {
            mat: matrix_exp(&self.mat.scale_real(duration)),
            duration,
        })
    }

    /// Orthonormal basis of the kernel, from the near-zero spectrum of `L^dag L`.
    pub fn kernel(&self) -> Result<Vec<Vec<Complex<T>>>> {
        near_null_vectors(&(&self.mat.adjoint() * &self.mat))
    }

    /// Orthonormal basis of the left kernel (conserved observables).
    pub fn conserved(&self) -> Result<Vec<Vec<Complex<T>>>> {
        near_null_vectors(&(&self.mat * &self.mat.adjoint()))
    }

    /// `|| L vec(rho) ||_2`.
    pub fn residual(&self, rho: &DensityMatrix<T>) -> T {
        self.apply(rho.matrix()).frobenius_norm()
    }
}

fn near_null_vectors<T: Real>(gram: &ComplexMatrix<T>) -> Result<Vec<Vec<Complex<T>>>> {
    let eig = hermitian_eig(gram)?;
    let scale = gram.frobenius_norm().max(T::one());
    let cut = tol::<T>(|t| t.null_space) * scale;
    Ok(eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l.abs() < cut)
        .map(|(k, _)| eig.eigenvector(k))
        .collect())
}

/// Precomputed `exp(L t)`.
#[derive(Debug, Clone)]
pub struct Propagator<T: Real> {
    mat: ComplexMatrix<T>,
    duration: T,
}

impl<T: Real> Propagator<T> {
    pub fn duration(&self) -> T {
        self.duration
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        let out = ComplexMatrix::unvectorize(&self.mat.mul_vec(&rho.matrix().vectorize()))?;
        if out.dim() != rho.dim() {
            return Err(Error::InvalidDimensions(format!(
                "propagator for dimension {} applied to dimension {}",
                out.dim(),
                rho.dim()
            )));
        }
        let trace_err = (out.trace() - cr(T::one())).norm();
        let herm_err = out.hermitian_asymmetry();
        DensityMatrix::new(out, rho.dims().to_vec(), rho.ordering()).map_err(|e| {
            Error::Integrator(format!(
                "{e} (trace residual {trace_err:e}, Hermiticity residual {herm_err:e}, t = {})",
                self.duration
            ))
        })
    }
}

/// Evolve `rho` under `l` for `duration`.
pub fn propagate<T: Real>(
    rho: &DensityMatrix<T>,
    l: &Liouvillian<T>,
    duration: T,
) -> Result<DensityMatrix<T>> {
    if duration == T::zero() {
        return Ok(rho.clone());
    }
    l.propagator(duration)?.apply(rho)
}

/// Long-time limit of the relaxation started from the maximally mixed state.
/// For the cascaded generator this is the stationary state with
/// `<sigma_x^X> = 0`, the sector reached from the protocol's initial state.
pub fn steady_state<T: Real>(l: &Liouvillian<T>) -> Result<DensityMatrix<T>> {
    let d = l.hilbert_dim();
    let reference = DensityMatrix::maximally_mixed(vec![2, d / 2], l.ordering());
    steady_state_from(l, &reference)
}

/// `lim_{t -> inf} exp(L t) rho_ref`: projects `reference` onto the kernel
/// along the conserved quantities, so every conserved expectation value of
/// the reference is preserved.
pub fn steady_state_from<T: Real>(
    l: &Liouvillian<T>,
    reference: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    let right = l.kernel()?;
    let left = l.conserved()?;
    if right.is_empty() {
        return Err(Error::AmbiguousSteadyState("generator has no kernel".into()));
    }
    if right.len() != left.len() {
        return Err(Error::AmbiguousSteadyState(format!(
            "left and right kernels differ in dimension ({} vs {})",
            left.len(),
            right.len()
        )));
    }
    let k = right.len();
    let inner = |a: &[Complex<T>], b: &[Complex<T>]| {
        a.iter()
            .zip(b)
            .fold(Complex::<T>::zero(), |acc, (x, y)| acc + x.conj() * y)
    };
    // Solve (M^dag N) coeffs = M^dag vec(ref); steady vec = N coeffs.
    let overlap = ComplexMatrix::from_fn(k, |i, j| inner(&left[i], &right[j]));
    let r = reference.matrix().vectorize();
    let rhs: Vec<_> = left.iter().map(|m| inner(m, &r)).collect();
    let coeffs = solve(&overlap, &rhs).map_err(|_| {
        Error::AmbiguousSteadyState("kernel and conserved quantities are degenerate".into())
    })?;
    let mut v: Vec<Complex<T>> = vec![Complex::zero(); r.len()];
    for (coef, basis) in coeffs.iter().zip(&right) {
        for (vi, bi) in v.iter_mut().zip(basis) {
            *vi = *vi + *coef * *bi;
        }
    }
    let m = ComplexMatrix::unvectorize(&v)?.hermitian_part();
    let tr = m.trace().re;
    if tr.abs() < tol::<T>(|t| t.trace) {
        return Err(Error::AmbiguousSteadyState(
            "reference has no overlap with a unit-trace stationary state".into(),
        ));
    }
    let rho = DensityMatrix::new(
        m.scale_real(T::one() / tr),
        reference.dims().to_vec(),
        reference.ordering(),
    )?;
    let residual = l.residual(&rho);
    if residual > tol::<T>(|t| t.steady_residual) {
        return Err(Error::Integrator(format!(
            "steady-state residual {residual:e} exceeds tolerance"
        )));
    }
    Ok(rho)
}
