//! Validated density matrices, subsystem bookkeeping and Bloch-parametrized
//! projective qubit measurements.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, kron, partial_trace, ComplexMatrix};
use crate::scalar::{c, cr, tol, Real};

/// One of the two parties of the predictive process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Party {
    /// The observing system.
    S,
    /// The environment being observed.
    X,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::S => Party::X,
            Party::X => Party::S,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::S => "S",
            Party::X => "X",
        })
    }
}

/// Tensor order of a bipartite state. `SX` puts S on the slow (left) index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Ordering {
    #[default]
    SX,
    XS,
}

impl Ordering {
    /// Position of `party` in the tensor product.
    pub fn index_of(self, party: Party) -> usize {
        match (self, party) {
            (Ordering::SX, Party::S) | (Ordering::XS, Party::X) => 0,
            _ => 1,
        }
    }

    pub fn flipped(self) -> Ordering {
        match self {
            Ordering::SX => Ordering::XS,
            Ordering::XS => Ordering::SX,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Ordering::SX => "S⊗X",
            Ordering::XS => "X⊗S",
        }
    }

    /// Accepts the tensor label or the short form (`SX`, `XS`).
    pub fn parse(s: &str) -> Option<Ordering> {
        match s.trim() {
            "S⊗X" | "SX" | "sx" | "S*X" => Some(Ordering::SX),
            "X⊗S" | "XS" | "xs" | "X*S" => Some(Ordering::XS),
            _ => None,
        }
    }

    /// Place two single-party operators into the tensor order.
    pub fn tensor<T: Real>(
        self,
        on_s: &ComplexMatrix<T>,
        on_x: &ComplexMatrix<T>,
    ) -> ComplexMatrix<T> {
        match self {
            Ordering::SX => kron(on_s, on_x),
            Ordering::XS => kron(on_x, on_s),
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which density-matrix invariant failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Dimensions,
    Hermitian,
    UnitTrace,
    Positivity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub invariant: Invariant,
    /// Size of the violation: asymmetry, trace deviation or most negative eigenvalue.
    pub magnitude: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.invariant {
            Invariant::Dimensions => write!(f, "subsystem dimensions do not match the matrix"),
            Invariant::Hermitian => write!(f, "not Hermitian (max asymmetry {:e})", self.magnitude),
            Invariant::UnitTrace => write!(f, "trace deviates from 1 by {:e}", self.magnitude),
            Invariant::Positivity => {
                write!(f, "not positive semidefinite (min eigenvalue {:e})", self.magnitude)
            }
        }
    }
}

/// Outcome of [`validate`]; empty means the state is valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub min_eigenvalue: Option<f64>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A quantum state on one or two subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    mat: ComplexMatrix<T>,
    dims: Vec<usize>,
    ordering: Ordering,
}

/// Check the density-matrix invariants without constructing a state.
pub fn validate<T: Real>(mat: &ComplexMatrix<T>, dims: &[usize]) -> ValidationReport {
    let mut report = ValidationReport::default();
    if dims.is_empty() || dims.iter().product::<usize>() != mat.dim() {
        report.violations.push(Violation {
            invariant: Invariant::Dimensions,
            magnitude: mat.dim() as f64,
        });
        return report;
    }
    let asym = mat.hermitian_asymmetry();
    if asym > tol::<T>(|t| t.hermitian) {
        report.violations.push(Violation {
            invariant: Invariant::Hermitian,
            magnitude: asym.as_f64(),
        });
        return report;
    }
    let tr_dev = (mat.trace() - Complex::<T>::one()).norm();
    if tr_dev > tol::<T>(|t| t.trace) {
        report.violations.push(Violation {
            invariant: Invariant::UnitTrace,
            magnitude: tr_dev.as_f64(),
        });
    }
    match hermitian_eig(mat) {
        Ok(eig) => {
            let min = eig.eigenvalues[0];
            report.min_eigenvalue = Some(min.as_f64());
            if min < -tol::<T>(|t| t.positivity) {
                report.violations.push(Violation {
                    invariant: Invariant::Positivity,
                    magnitude: min.as_f64(),
                });
            }
        }
        Err(_) => report.violations.push(Violation {
            invariant: Invariant::Hermitian,
            magnitude: f64::NAN,
        }),
    }
    report
}

impl<T: Real> DensityMatrix<T> {
    /// Validate and wrap. Eigenvalues slightly below zero (within the
    /// positivity tolerance) are clamped and the state renormalized.
    pub fn new(mat: ComplexMatrix<T>, dims: Vec<usize>, ordering: Ordering) -> Result<Self> {
        let report = validate(&mat, &dims);
        if let Some(v) = report.violations.into_iter().next() {
            return Err(match v.invariant {
                Invariant::Dimensions => Error::InvalidDimensions(format!(
                    "dims {:?} do not multiply to {}",
                    dims,
                    mat.dim()
                )),
                _ => Error::InvalidState(v),
            });
        }
        let mat = if report.min_eigenvalue.unwrap_or(0.0) < 0.0 {
            clamp_negative(&mat)?
        } else {
            mat
        };
        Ok(Self {
            mat,
            dims,
            ordering,
        })
    }

    /// Two-qubit state in the given order.
    pub fn two_qubit(mat: ComplexMatrix<T>, ordering: Ordering) -> Result<Self> {
        Self::new(mat, vec![2, 2], ordering)
    }

    /// Single-system state.
    pub fn single(mat: ComplexMatrix<T>) -> Result<Self> {
        let d = mat.dim();
        Self::new(mat, vec![d], Ordering::default())
    }

    /// Wrap without validation; for states produced by trusted arithmetic.
    pub(crate) fn from_parts_unchecked(
        mat: ComplexMatrix<T>,
        dims: Vec<usize>,
        ordering: Ordering,
    ) -> Self {
        Self {
            mat,
            dims,
            ordering,
        }
    }

    pub fn pure(amplitudes: &[Complex<T>], dims: Vec<usize>, ordering: Ordering) -> Result<Self> {
        let norm: T = amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        let psi: Vec<_> = amplitudes.iter().map(|a| a / norm).collect();
        Self::new(ComplexMatrix::outer(&psi, &psi), dims, ordering)
    }

    pub fn maximally_mixed(dims: Vec<usize>, ordering: Ordering) -> Self {
        let d: usize = dims.iter().product();
        let mat = ComplexMatrix::identity(d).scale_real(T::one() / T::lit(d as f64));
        Self::from_parts_unchecked(mat, dims, ordering)
    }

    /// `rho_S (x) rho_X` placed in `ordering`.
    pub fn product(
        rho_s: &DensityMatrix<T>,
        rho_x: &DensityMatrix<T>,
        ordering: Ordering,
    ) -> Self {
        let mat = ordering.tensor(&rho_s.mat, &rho_x.mat);
        let mut dims = vec![0, 0];
        dims[ordering.index_of(Party::S)] = rho_s.dim();
        dims[ordering.index_of(Party::X)] = rho_x.dim();
        Self::from_parts_unchecked(mat, dims, ordering)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    pub(crate) fn split(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            &[a, b] => Ok((a, b)),
            other => Err(Error::InvalidDimensions(format!(
                "expected a bipartite state, got dims {other:?}"
            ))),
        }
    }

    pub fn party_dim(&self, party: Party) -> Result<usize> {
        self.split()?;
        Ok(self.dims[self.ordering.index_of(party)])
    }

    /// Reduced state of `party`.
    pub fn marginal(&self, party: Party) -> Result<DensityMatrix<T>> {
        let dims = self.split()?;
        let keep = self.ordering.index_of(party);
        let mat = partial_trace(&self.mat, dims, keep)?;
        let d = mat.dim();
        Ok(Self::from_parts_unchecked(mat, vec![d], Ordering::default()))
    }

    /// The same state expressed in the opposite tensor order.
    pub fn reordered(&self, ordering: Ordering) -> Result<DensityMatrix<T>> {
        if ordering == self.ordering {
            return Ok(self.clone());
        }
        let (a, b) = self.split()?;
        // |i j> -> |j i>
        let perm = |r: usize| (r % b) * a + r / b;
        let mut mat = ComplexMatrix::zeros(a * b);
        for r in 0..a * b {
            for s in 0..a * b {
                mat[(perm(r), perm(s))] = self.mat[(r, s)];
            }
        }
        Ok(Self::from_parts_unchecked(mat, vec![b, a], ordering))
    }

    /// Full validation report for this state.
    pub fn validate(&self) -> ValidationReport {
        validate(&self.mat, &self.dims)
    }
}

fn clamp_negative<T: Real>(mat: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let mut eig = hermitian_eig(mat)?;
    for l in eig.eigenvalues.iter_mut() {
        if *l < T::zero() {
            *l = T::zero();
        }
    }
    let total: T = eig.eigenvalues.iter().copied().sum();
    for l in eig.eigenvalues.iter_mut() {
        *l = *l / total;
    }
    Ok(eig.reconstruct().hermitian_part())
}

/// `|0><0|_S (x) (|+><+| + |-><-|)_X / 2`, the uncorrelated starting point of
/// the predictive process.
pub fn initial_state<T: Real>(ordering: Ordering) -> DensityMatrix<T> {
    let ground = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]);
    // (|+><+| + |-><-|)/2 is exactly I/2.
    let mixed = ComplexMatrix::identity(2).scale_real(T::lit(0.5));
    let mat = ordering.tensor(&ground, &mixed);
    let mut dims = vec![2, 2];
    dims[ordering.index_of(Party::S)] = 2;
    DensityMatrix::from_parts_unchecked(mat, dims, ordering)
}

/// Bell state `(|00> + |11>)/sqrt(2)`; symmetric, so the ordering tag is cosmetic.
pub fn bell_phi_plus<T: Real>(ordering: Ordering) -> DensityMatrix<T> {
    let s = T::lit(0.5).sqrt();
    let phi = [cr(s), cr(T::zero()), cr(T::zero()), cr(s)];
    let mut mat = ComplexMatrix::outer(&phi, &phi);
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        mat[(i, j)] = cr(T::lit(0.5));
    }
    DensityMatrix::from_parts_unchecked(mat, vec![2, 2], ordering)
}

/// `(|00><00| + |11><11|)/2`.
pub fn classical_copy<T: Real>(ordering: Ordering) -> DensityMatrix<T> {
    let h = T::lit(0.5);
    DensityMatrix::from_parts_unchecked(
        ComplexMatrix::from_diag(&[h, T::zero(), T::zero(), h]),
        vec![2, 2],
        ordering,
    )
}

/// Rank-one projective qubit measurement along the Bloch axis `(theta, phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis<T: Real> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> MeasurementBasis<T> {
    /// Fold arbitrary angles into `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`;
    /// the azimuth is zeroed at the poles.
    pub fn new(theta: T, phi: T) -> Self {
        let two_pi = T::PI() + T::PI();
        let mut theta = theta % two_pi;
        let mut phi = phi;
        if theta < T::zero() {
            theta = theta + two_pi;
        }
        if theta > T::PI() {
            // (theta, phi) and (2 pi - theta, phi + pi) name the same axis.
            theta = two_pi - theta;
            phi = phi + T::PI();
        }
        phi = phi % two_pi;
        if phi < T::zero() {
            phi = phi + two_pi;
        }
        if phi >= two_pi {
            phi = T::zero();
        }
        if theta.sin().abs() < tol::<T>(|t| t.pole) {
            phi = T::zero();
        }
        Self { theta, phi }
    }

    pub fn computational() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn axis(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `(P+, P-)` with `P± = (I ± n.sigma)/2`.
    pub fn projectors(&self) -> (ComplexMatrix<T>, ComplexMatrix<T>) {
        let [nx, ny, nz] = self.axis();
        let h = T::lit(0.5);
        let off = c(nx, -ny) * h;
        let p_plus = ComplexMatrix::from_row_major(vec![
            cr(h + h * nz),
            off,
            off.conj(),
            cr(h - h * nz),
        ])
        .unwrap();
        let p_minus = &ComplexMatrix::identity(2) - &p_plus;
        (p_plus, p_minus)
    }

    /// Smallest angle between this axis and the z axis, in degrees; the
    /// projector pair is invariant under `theta -> pi - theta`.
    pub fn polar_distance_from_z_deg(&self) -> T {
        let d = self.theta.min(T::PI() - self.theta);
        d.to_degrees()
    }

    pub fn is_computational(&self, max_deg: T) -> bool {
        self.polar_distance_from_z_deg() < max_deg
    }
}

/// Outcome of a single branch of a projective measurement.
#[derive(Debug, Clone)]
pub struct Branch<T: Real> {
    pub probability: T,
    /// Post-measurement joint state, `None` for a null outcome.
    pub state: Option<DensityMatrix<T>>,
}

/// `I (x) P` with `P` on the `measured` factor.
pub(crate) fn lifted_projector<T: Real>(
    p: &ComplexMatrix<T>,
    measured: Party,
    ordering: Ordering,
    other_dim: usize,
) -> ComplexMatrix<T> {
    let id = ComplexMatrix::identity(other_dim);
    match measured {
        Party::X => ordering.tensor(&id, p),
        Party::S => ordering.tensor(p, &id),
    }
}

/// Probability and normalized post-measurement state for outcome `outcome`
/// (0 for `P+`, 1 for `P-`) of a projective measurement of `measured`.
pub fn conditioned_state<T: Real>(
    rho: &DensityMatrix<T>,
    basis: &MeasurementBasis<T>,
    measured: Party,
    outcome: usize,
) -> Result<Branch<T>> {
    if rho.party_dim(measured)? != 2 {
        return Err(Error::InvalidDimensions(
            "measured subsystem must be a qubit".into(),
        ));
    }
    let (pp, pm) = basis.projectors();
    let p = match outcome {
        0 => pp,
        1 => pm,
        _ => return Err(Error::Domain(format!("outcome {outcome} of a two-outcome measurement"))),
    };
    let other = rho.party_dim(measured.other())?;
    let lifted = lifted_projector(&p, measured, rho.ordering(), other);
    let unnorm = &(&lifted * rho.matrix()) * &lifted;
    let prob = unnorm.trace().re;
    let state = if prob > tol::<T>(|t| t.null_probability) {
        Some(DensityMatrix::from_parts_unchecked(
            unnorm.scale_real(T::one() / prob),
            rho.dims().to_vec(),
            rho.ordering(),
        ))
    } else {
        None
    };
    Ok(Branch {
        probability: prob.max(T::zero()),
        state,
    })
}

/// Both branches of the measurement.
pub fn measure<T: Real>(
    rho: &DensityMatrix<T>,
    basis: &MeasurementBasis<T>,
    measured: Party,
) -> Result<[Branch<T>; 2]> {
    Ok([
        conditioned_state(rho, basis, measured, 0)?,
        conditioned_state(rho, basis, measured, 1)?,
    ])
}

/// Named single-qubit states.
pub fn qubit_state<T: Real>(name: &str) -> Option<DensityMatrix<T>> {
    let s = T::lit(0.5).sqrt();
    let z = T::zero();
    let amps: [Complex<T>; 2] = match name {
        "0" => [Complex::one(), Complex::zero()],
        "1" => [Complex::zero(), Complex::one()],
        "+" => [cr(s), cr(s)],
        "-" => [cr(s), cr(-s)],
        "+i" => [cr(s), c(z, s)],
        _ => return None,
    };
    Some(DensityMatrix::from_parts_unchecked(
        ComplexMatrix::outer(&amps, &amps),
        vec![2],
        Ordering::default(),
    ))
}

/// Operator acting as `op_x` on X and identity on S.
pub fn on_x<T: Real>(op_x: &ComplexMatrix<T>, ordering: Ordering) -> ComplexMatrix<T> {
    ordering.tensor(&ComplexMatrix::identity(2), op_x)
}

/// Operator acting as `op_s` on S and identity on X.
pub fn on_s<T: Real>(op_s: &ComplexMatrix<T>, ordering: Ordering) -> ComplexMatrix<T> {
    ordering.tensor(op_s, &ComplexMatrix::identity(2))
}
