//! Entropies in bits: von Neumann entropy, conditional entropy and mutual
//! information.

use crate::error::Result;
use crate::matrix::{hermitian_eigenvalues, ComplexMatrix};
use crate::scalar::{tol, xlog2x, Real};
use crate::state::{DensityMatrix, Party};

/// `-sum lambda log2 lambda` over the spectrum of a Hermitian matrix,
/// with eigenvalues below the clamp treated as zero.
pub fn entropy_of_matrix<T: Real>(m: &ComplexMatrix<T>) -> Result<T> {
    let clamp = tol::<T>(|t| t.entropy_clamp);
    let h: T = hermitian_eigenvalues(m)?
        .into_iter()
        .map(|l| -xlog2x(l, clamp))
        .sum();
    Ok(h.max(T::zero()))
}

pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    entropy_of_matrix(rho.matrix())
}

/// `H(target | other) = H(joint) - H(other)`.
pub fn conditional_entropy_of<T: Real>(rho: &DensityMatrix<T>, target: Party) -> Result<T> {
    let joint = von_neumann_entropy(rho)?;
    let other = von_neumann_entropy(&rho.marginal(target.other())?)?;
    Ok(joint - other)
}

/// `H(S|X)`.
pub fn conditional_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    conditional_entropy_of(rho, Party::S)
}

/// `I(S:X) = H(S) - H(S|X)`.
pub fn mutual_information<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(InfoReport::of(rho)?.mutual_info)
}

/// All the entropic quantities of a bipartite state at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoReport<T: Real> {
    pub h_joint: T,
    pub h_marginal_s: T,
    pub h_marginal_x: T,
    pub h_cond_s_given_x: T,
    pub mutual_info: T,
}

impl<T: Real> InfoReport<T> {
    pub fn of(rho: &DensityMatrix<T>) -> Result<Self> {
        let h_joint = von_neumann_entropy(rho)?;
        let h_marginal_s = von_neumann_entropy(&rho.marginal(Party::S)?)?;
        let h_marginal_x = von_neumann_entropy(&rho.marginal(Party::X)?)?;
        let h_cond_s_given_x = h_joint - h_marginal_x;
        Ok(Self {
            h_joint,
            h_marginal_s,
            h_marginal_x,
            h_cond_s_given_x,
            mutual_info: h_marginal_s - h_cond_s_given_x,
        })
    }

    /// `H(X|S)`.
    pub fn h_cond_x_given_s(&self) -> T {
        self.h_joint - self.h_marginal_s
    }
}
