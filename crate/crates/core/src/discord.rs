//! Quantum discord and classical correlations under rank-one projective
//! measurement of one qubit party.
//!
//! With `measured = X` the quantities are `H(S|X^C)`, `delta(S|X)` and
//! `I^C(S|X)`; with `measured = S` the roles swap and the results are
//! `delta(X|S)` and `I^C(X|S)`.

use crate::error::{Error, Result};
use crate::info::{entropy_of_matrix, InfoReport};
use crate::matrix::partial_trace;
use crate::optimize::{minimize_on_sphere, OptimizerConfig, OptimizerTrace};
use crate::scalar::{tol, Real};
use crate::state::{lifted_projector, DensityMatrix, MeasurementBasis, Party};

/// `sum_k p_k H(unmeasured | k)` for one measurement basis.
pub fn branch_entropy<T: Real>(
    rho: &DensityMatrix<T>,
    basis: &MeasurementBasis<T>,
    measured: Party,
) -> Result<T> {
    check_measurable(rho, measured)?;
    let dims = rho.split()?;
    let keep = rho.ordering().index_of(measured.other());
    let other = rho.party_dim(measured.other())?;
    let null = tol::<T>(|t| t.null_probability);
    let (pp, pm) = basis.projectors();
    let mut total = T::zero();
    for p in [pp, pm] {
        let lifted = lifted_projector(&p, measured, rho.ordering(), other);
        let branch = &(&lifted * rho.matrix()) * &lifted;
        let prob = branch.trace().re;
        if prob <= null {
            continue;
        }
        let reduced = partial_trace(&branch, dims, keep)?.scale_real(T::one() / prob);
        total = total + prob * entropy_of_matrix(&reduced)?;
    }
    Ok(total)
}

fn check_measurable<T: Real>(rho: &DensityMatrix<T>, measured: Party) -> Result<()> {
    if rho.party_dim(measured)? != 2 {
        return Err(Error::InvalidDimensions(format!(
            "measured party {measured} must be a qubit"
        )));
    }
    Ok(())
}

/// Minimized post-measurement conditional entropy and its basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalEntropy<T: Real> {
    pub value: T,
    pub basis: MeasurementBasis<T>,
    pub trace: OptimizerTrace<T>,
}

/// `H(unmeasured | measured^C) = min over bases of sum_k p_k H(unmeasured | k)`.
pub fn semiclassical_conditional_entropy<T: Real>(
    rho: &DensityMatrix<T>,
    measured: Party,
    cfg: &OptimizerConfig,
) -> Result<SemiclassicalEntropy<T>> {
    check_measurable(rho, measured)?;
    let objective = |theta: T, phi: T| {
        branch_entropy(rho, &MeasurementBasis::new(theta, phi), measured).unwrap_or(T::nan())
    };
    let min = minimize_on_sphere(objective, cfg)?;
    Ok(SemiclassicalEntropy {
        value: min.value,
        basis: min.basis,
        trace: min.trace,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult<T: Real> {
    pub measured: Party,
    pub semiclassical_cond_entropy: T,
    /// Quantum conditional entropy `H(unmeasured | measured)`.
    pub conditional_entropy: T,
    pub discord: T,
    pub classical_correlations: T,
    pub mutual_information: T,
    pub argmin_basis: MeasurementBasis<T>,
    pub optimizer_trace: OptimizerTrace<T>,
}

/// Discord with `measured` as the apparatus.
pub fn discord<T: Real>(
    rho: &DensityMatrix<T>,
    measured: Party,
    cfg: &OptimizerConfig,
) -> Result<DiscordResult<T>> {
    let info = InfoReport::of(rho)?;
    discord_with_info(rho, &info, measured, cfg)
}

pub(crate) fn discord_with_info<T: Real>(
    rho: &DensityMatrix<T>,
    info: &InfoReport<T>,
    measured: Party,
    cfg: &OptimizerConfig,
) -> Result<DiscordResult<T>> {
    let semi = semiclassical_conditional_entropy(rho, measured, cfg)?;
    let (h_target, cond) = match measured {
        Party::X => (info.h_marginal_s, info.h_cond_s_given_x),
        Party::S => (info.h_marginal_x, info.h_cond_x_given_s()),
    };
    Ok(DiscordResult {
        measured,
        semiclassical_cond_entropy: semi.value,
        conditional_entropy: cond,
        discord: semi.value - cond,
        classical_correlations: h_target - semi.value,
        mutual_information: info.mutual_info,
        argmin_basis: semi.basis,
        optimizer_trace: semi.trace,
    })
}
