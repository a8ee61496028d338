//! Work bookkeeping for a memory S holding side information about X.
//!
//! All Hamiltonians are fully degenerate, so the extractable work is purely
//! entropic: `W_ext[S|X] = beta^-1 (N - H(S|X)) ln 2`. Energies are returned in
//! units of `1/beta`; the `_bits` variants return the dimensionless
//! `beta W / ln 2`.

use crate::channel::decohere;
use crate::discord::{discord_with_info, DiscordResult};
use crate::error::{Error, Result};
use crate::info::InfoReport;
use crate::optimize::{minimize_on_sphere, OptimizerConfig};
use crate::scalar::{tol, Real};
use crate::state::{DensityMatrix, MeasurementBasis, Party};

fn check_beta<T: Real>(beta: T) -> Result<()> {
    if !(beta > T::zero() && beta.is_finite()) {
        return Err(Error::Domain(format!("inverse temperature must be positive, got {beta}")));
    }
    Ok(())
}

/// Converts `beta W / ln 2` to `W`.
pub fn bits_to_energy<T: Real>(bits: T, beta: T) -> T {
    bits * T::LN_2() / beta
}

/// Work extractable from an `n_qubits` memory S keeping X intact.
pub fn extractable_work<T: Real>(rho: &DensityMatrix<T>, beta: T, n_qubits: u32) -> Result<T> {
    check_beta(beta)?;
    let d_s = rho.party_dim(Party::S)?;
    if (d_s as f64).log2() > n_qubits as f64 + 1e-12 {
        return Err(Error::Domain(format!(
            "{n_qubits} qubits cannot hold a system of dimension {d_s}"
        )));
    }
    let info = InfoReport::of(rho)?;
    Ok(bits_to_energy(T::lit(n_qubits as f64) - info.h_cond_s_given_x, beta))
}

/// `beta W_lost / ln 2` for `before -> after`, computed as a conditional
/// entropy difference and cross-checked against the mutual-information form.
pub fn lost_work_bits<T: Real>(before: &DensityMatrix<T>, after: &DensityMatrix<T>) -> Result<T> {
    let a = InfoReport::of(before)?;
    let b = InfoReport::of(after)?;
    lost_work_bits_from(&a, &b)
}

fn lost_work_bits_from<T: Real>(before: &InfoReport<T>, after: &InfoReport<T>) -> Result<T> {
    let by_conditional = after.h_cond_s_given_x - before.h_cond_s_given_x;
    let by_information = before.mutual_info - after.mutual_info;
    let gap = (by_conditional - by_information).abs();
    if gap > tol::<T>(|t| t.work_crosscheck) {
        return Err(Error::Consistency(format!(
            "lost-work forms disagree by {gap} bits; the S marginal changed, so the map was not local on X"
        )));
    }
    Ok(by_conditional)
}

/// `W_lost` in energy units.
pub fn lost_work<T: Real>(
    before: &DensityMatrix<T>,
    after: &DensityMatrix<T>,
    beta: T,
) -> Result<T> {
    check_beta(beta)?;
    Ok(bits_to_energy(lost_work_bits(before, after)?, beta))
}

/// Extractable and lost work with the classical/quantum split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkLedger<T: Real> {
    pub beta: T,
    pub w_ext_before: T,
    pub w_ext_after: T,
    pub w_lost: T,
    pub w_lost_classical: T,
    pub w_lost_quantum: T,
    /// Party measured in the classical/quantum split.
    pub side: Party,
    pub discord_before: DiscordResult<T>,
    pub discord_after: DiscordResult<T>,
}

impl<T: Real> WorkLedger<T> {
    /// `(beta W_lost, beta W^C, beta W^Q) / ln 2`.
    pub fn in_bits(&self) -> (T, T, T) {
        let k = self.beta / T::LN_2();
        (self.w_lost * k, self.w_lost_classical * k, self.w_lost_quantum * k)
    }
}

/// Lost work and its classical and quantum parts with `side` measured.
pub fn lost_work_decomposition<T: Real>(
    before: &DensityMatrix<T>,
    after: &DensityMatrix<T>,
    beta: T,
    side: Party,
    cfg: &OptimizerConfig,
) -> Result<WorkLedger<T>> {
    check_beta(beta)?;
    let info_before = InfoReport::of(before)?;
    let info_after = InfoReport::of(after)?;
    let d_before = discord_with_info(before, &info_before, side, cfg)?;
    let d_after = discord_with_info(after, &info_after, side, cfg)?;
    assemble_ledger(&info_before, &info_after, d_before, d_after, beta, before.party_dim(Party::S)?)
}

pub(crate) fn assemble_ledger<T: Real>(
    info_before: &InfoReport<T>,
    info_after: &InfoReport<T>,
    d_before: DiscordResult<T>,
    d_after: DiscordResult<T>,
    beta: T,
    d_s: usize,
) -> Result<WorkLedger<T>> {
    let lost = lost_work_bits_from(info_before, info_after)?;
    let classical = d_before.classical_correlations - d_after.classical_correlations;
    let quantum = d_before.discord - d_after.discord;
    let gap = (classical + quantum - lost).abs();
    if gap > tol::<T>(|t| t.work_crosscheck) {
        return Err(Error::Consistency(format!(
            "classical + quantum lost work misses the total by {gap} bits"
        )));
    }
    let n = T::lit((d_s as f64).log2().ceil());
    Ok(WorkLedger {
        beta,
        w_ext_before: bits_to_energy(n - info_before.h_cond_s_given_x, beta),
        w_ext_after: bits_to_energy(n - info_after.h_cond_s_given_x, beta),
        w_lost: bits_to_energy(lost, beta),
        w_lost_classical: bits_to_energy(classical, beta),
        w_lost_quantum: bits_to_energy(quantum, beta),
        side: d_before.measured,
        discord_before: d_before,
        discord_after: d_after,
    })
}

/// Smallest lost work over local decoherence channels on X, with the
/// minimizing basis. Evaluated through joint-state entropies of the
/// decohered state.
pub fn min_decoherence_lost_work<T: Real>(
    rho: &DensityMatrix<T>,
    beta: T,
    cfg: &OptimizerConfig,
) -> Result<(T, MeasurementBasis<T>)> {
    check_beta(beta)?;
    if rho.party_dim(Party::X)? != 2 {
        return Err(Error::InvalidDimensions("X must be a qubit".into()));
    }
    let before = InfoReport::of(rho)?;
    let objective = |theta: T, phi: T| {
        let basis = MeasurementBasis::new(theta, phi);
        decohere(rho, &basis, Party::X)
            .and_then(|dec| InfoReport::of(&dec))
            .and_then(|after| lost_work_bits_from(&before, &after))
            .unwrap_or(T::nan())
    };
    let min = minimize_on_sphere(objective, cfg)?;
    Ok((bits_to_energy(min.value, beta), min.basis))
}
