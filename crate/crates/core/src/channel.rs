//! Kraus-form quantum channels and local decoherence.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{cr, tol, Real};
use crate::state::{lifted_projector, DensityMatrix, MeasurementBasis, Ordering, Party};

/// A completely positive trace-preserving map `rho -> sum_j K_j rho K_j^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel<T: Real> {
    operators: Vec<ComplexMatrix<T>>,
    label: String,
}

impl<T: Real> KrausChannel<T> {
    /// Checks dimensions and completeness `sum K^dagger K = I`.
    pub fn new(operators: Vec<ComplexMatrix<T>>, label: impl Into<String>) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::InvalidDimensions("a channel needs at least one Kraus operator".into()));
        };
        let dim = first.dim();
        if operators.iter().any(|k| k.dim() != dim) {
            return Err(Error::InvalidDimensions(
                "Kraus operators have mismatched dimensions".into(),
            ));
        }
        let ch = Self {
            operators,
            label: label.into(),
        };
        let dev = ch.completeness_defect();
        if dev > tol::<T>(|t| t.kraus_completeness) {
            return Err(Error::IncompleteKraus(dev.as_f64()));
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(dim)],
            label: "identity".into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    pub fn operators(&self) -> &[ComplexMatrix<T>] {
        &self.operators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `max |sum K^dagger K - I|`.
    pub fn completeness_defect(&self) -> T {
        let d = self.dim();
        let mut sum = ComplexMatrix::zeros(d);
        for k in &self.operators {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(d))
    }

    fn apply_matrix(&self, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let mut out = ComplexMatrix::zeros(rho.dim());
        for k in &self.operators {
            out = &out + &k.sandwich(rho);
        }
        out
    }
}

/// Amplitude-damping update of X: `K0 = |0><0| + sqrt(1-p)|1><1|`,
/// `K1 = sqrt(p)|0><1|`.
pub fn update_channel<T: Real>(p: T) -> Result<KrausChannel<T>> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::Domain(format!("damping probability p = {p} not in [0, 1]")));
    }
    let mut k0 = ComplexMatrix::zeros(2);
    k0[(0, 0)] = cr(T::one());
    k0[(1, 1)] = cr((T::one() - p).sqrt());
    let mut k1 = ComplexMatrix::zeros(2);
    k1[(0, 1)] = cr(p.sqrt());
    KrausChannel::new(vec![k0, k1], format!("update(p={p})"))
}

/// Apply a channel to a state of matching dimension.
pub fn apply<T: Real>(ch: &KrausChannel<T>, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    if ch.dim() != rho.dim() {
        return Err(Error::InvalidDimensions(format!(
            "channel on dimension {} applied to a state of dimension {}",
            ch.dim(),
            rho.dim()
        )));
    }
    DensityMatrix::new(
        ch.apply_matrix(rho.matrix()),
        rho.dims().to_vec(),
        rho.ordering(),
    )
}

/// Lift a channel on X to `I_S (x) E` on the joint space.
pub fn lift_local<T: Real>(
    ch: &KrausChannel<T>,
    dims: &[usize],
    ordering: Ordering,
) -> Result<KrausChannel<T>> {
    lift_to(ch, Party::X, dims, ordering)
}

/// Lift a channel on `party` to the joint space with identity on the other factor.
pub fn lift_to<T: Real>(
    ch: &KrausChannel<T>,
    party: Party,
    dims: &[usize],
    ordering: Ordering,
) -> Result<KrausChannel<T>> {
    let &[a, b] = dims else {
        return Err(Error::InvalidDimensions(format!(
            "lifting needs bipartite dims, got {dims:?}"
        )));
    };
    let here = if ordering.index_of(party) == 0 { a } else { b };
    let other = if ordering.index_of(party) == 0 { b } else { a };
    if here != ch.dim() {
        return Err(Error::InvalidDimensions(format!(
            "channel on dimension {} cannot act on a factor of dimension {here}",
            ch.dim()
        )));
    }
    let id = ComplexMatrix::identity(other);
    let operators = ch
        .operators
        .iter()
        .map(|k| match party {
            Party::X => ordering.tensor(&id, k),
            Party::S => ordering.tensor(k, &id),
        })
        .collect();
    Ok(KrausChannel {
        operators,
        label: format!("I_{} ⊗ {}", party.other(), ch.label),
    })
}

/// Dephase `measured` in `basis`: `rho -> sum_k (I (x) P_k) rho (I (x) P_k)`.
pub fn decohere<T: Real>(
    rho: &DensityMatrix<T>,
    basis: &MeasurementBasis<T>,
    measured: Party,
) -> Result<DensityMatrix<T>> {
    if rho.party_dim(measured)? != 2 {
        return Err(Error::InvalidDimensions("decoherence needs a qubit factor".into()));
    }
    let other = rho.party_dim(measured.other())?;
    let (pp, pm) = basis.projectors();
    let mut out = ComplexMatrix::zeros(rho.dim());
    for p in [pp, pm] {
        let lifted = lifted_projector(&p, measured, rho.ordering(), other);
        out = &out + &(&(&lifted * rho.matrix()) * &lifted);
    }
    Ok(DensityMatrix::from_parts_unchecked(
        out,
        rho.dims().to_vec(),
        rho.ordering(),
    ))
}

pub(crate) fn zero_pattern_violation<T: Real>(m: &ComplexMatrix<T>) -> T {
    // Largest entry outside the diagonal/anti-diagonal of a 4x4 matrix.
    let mut worst = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i != j && i + j != 3 {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Largest magnitude outside the X-state pattern (diagonal plus anti-diagonal).
pub fn x_state_defect<T: Real>(rho: &DensityMatrix<T>) -> T {
    if rho.dim() != 4 {
        return T::infinity();
    }
    zero_pattern_violation(rho.matrix())
}
