//! Maximal extractable work under cyclic Hamiltonian driving.
//!
//! The driving enters only through the unitary it generates, so the
//! optimization over smooth cyclic Hamiltonians reduces to an optimization
//! over unitaries. Its optimum pairs the eigenvalues of the state, sorted
//! non-increasingly, with the energy levels sorted ascendingly; the work
//! gained is the ergotropy. The restricted variant allows only permutations
//! of the energy-basis diagonal, modeling coarser instruments.

use crate::error::{Error, Result};
use crate::spectral::{
    decompose, trace_product, ComplexMatrix, DensityMatrix, EigenOrdering, HermitianOperator,
    SpectralDecomposition,
};
use crate::states::energy_diagonal;

/// Work bookkeeping for unrestricted cyclic processes.
#[derive(Debug, Clone)]
pub struct ErgotropyReport {
    /// `tr(rho H)`.
    pub initial_energy: f64,
    /// `sum_k p_k^down e_k` with energies ascending.
    pub passive_energy: f64,
    /// `initial_energy - passive_energy`, non-negative.
    pub ergotropy: f64,
    /// Position `k` holds the index (ascending energy order) of the level
    /// that receives the `k`-th largest eigenvalue of `rho`; the optimal
    /// pairing is the in-order one, with degeneracies resolved by the
    /// deterministic stable sort.
    pub optimal_permutation: Vec<usize>,
}

/// Work bookkeeping when only diagonal permutations are allowed.
#[derive(Debug, Clone)]
pub struct RestrictedErgotropyReport {
    /// `pi_k = <e_k|rho|e_k>` in ascending energy order.
    pub diagonal: Vec<f64>,
    /// The same values sorted non-increasingly.
    pub sorted_diagonal: Vec<f64>,
    /// `sum_k e_k pi_k - min_sigma sum_k e_k pi_sigma(k)`, non-negative.
    pub restricted_ergotropy: f64,
    /// `permutation[k]` is the original diagonal index landing on level `k`.
    pub permutation: Vec<usize>,
}

fn check_dims(rho: &DensityMatrix, h: &HermitianOperator) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

fn passive_energy_of(spectrum: &[f64], energies: &[f64]) -> f64 {
    spectrum.iter().zip(energies).map(|(p, e)| p * e).sum()
}

/// Maximal work extractable from `rho` by cyclic processes with terminal
/// Hamiltonian `h`.
pub fn ergotropy(rho: &DensityMatrix, h: &HermitianOperator) -> Result<ErgotropyReport> {
    check_dims(rho, h)?;
    let energies = decompose(h, EigenOrdering::Ascending)?.eigenvalues;
    let initial_energy = trace_product(rho.operator(), h)?;
    let passive_energy = passive_energy_of(rho.spectrum(), &energies);
    Ok(ErgotropyReport {
        initial_energy,
        passive_energy,
        ergotropy: initial_energy - passive_energy,
        optimal_permutation: (0..h.dim()).collect(),
    })
}

/// The state reached by the optimal extraction:
/// `sum_k p_k^down |e_k><e_k|`. Same spectrum as `rho`, zero ergotropy.
pub fn passive_state(rho: &DensityMatrix, h: &HermitianOperator) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    let basis = decompose(h, EigenOrdering::Ascending)?;
    let n = h.dim();
    let mut m = ComplexMatrix::zeros(n);
    for k in 0..n {
        let p = rho.spectrum()[k];
        if p == 0.0 {
            continue;
        }
        let v = basis.eigenvector(k);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += v[i] * v[j].conj() * p;
            }
        }
    }
    DensityMatrix::from_matrix(m)
}

/// True iff no more than `tol` of work is unitarily extractable. Holds for
/// every state that is a non-increasing function of `h`, Gibbs states in
/// particular.
pub fn is_passive(rho: &DensityMatrix, h: &HermitianOperator, tol: f64) -> Result<bool> {
    Ok(ergotropy(rho, h)?.ergotropy <= tol)
}

/// Maximal work when the allowed unitaries only permute the diagonal of
/// `rho` in the energy eigenbasis. Never exceeds the full ergotropy; equals
/// it when `rho` and `h` commute.
pub fn restricted_ergotropy(
    rho: &DensityMatrix,
    h: &HermitianOperator,
) -> Result<RestrictedErgotropyReport> {
    check_dims(rho, h)?;
    let energies = decompose(h, EigenOrdering::Ascending)?.eigenvalues;
    let diagonal = energy_diagonal(rho, h)?;
    let n = diagonal.len();

    // Largest occupation onto the lowest level: optimal by rearrangement.
    let mut permutation: Vec<usize> = (0..n).collect();
    permutation.sort_by(|&i, &j| diagonal[j].partial_cmp(&diagonal[i]).expect("finite"));
    let sorted_diagonal: Vec<f64> = permutation.iter().map(|&i| diagonal[i]).collect();

    let current: f64 = energies.iter().zip(&diagonal).map(|(e, p)| e * p).sum();
    let rearranged: f64 = energies
        .iter()
        .zip(&sorted_diagonal)
        .map(|(e, p)| e * p)
        .sum();

    Ok(RestrictedErgotropyReport {
        diagonal,
        sorted_diagonal,
        restricted_ergotropy: current - rearranged,
        permutation,
    })
}

/// The unitary realizing the optimal extraction: maps the `k`-th largest
/// eigenvector of `rho` onto the `k`-th lowest eigenvector of `h`, so
/// `U rho U^dagger` is the passive state.
pub fn optimal_unitary(rho: &DensityMatrix, h: &HermitianOperator) -> Result<ComplexMatrix> {
    check_dims(rho, h)?;
    let h_basis = decompose(h, EigenOrdering::Ascending)?;
    Ok(pairing_unitary(rho.decomposition(), &h_basis))
}

fn pairing_unitary(
    rho_dec: &SpectralDecomposition,
    h_dec: &SpectralDecomposition,
) -> ComplexMatrix {
    let n = rho_dec.dim();
    let mut u = ComplexMatrix::zeros(n);
    // U = sum_k |e_k><p_k|
    for k in 0..n {
        let ek = h_dec.eigenvector(k);
        let pk = rho_dec.eigenvector(k);
        for i in 0..n {
            for j in 0..n {
                u[(i, j)] += ek[i] * pk[j].conj();
            }
        }
    }
    u
}
