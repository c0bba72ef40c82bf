//! Majorization order on weight vectors and the degree-of-mixing analysis.
//!
//! A weight vector majorizes another when every prefix sum of its sorted
//! entries dominates; it is then the more inhomogeneous (less mixed) one.
//! For mixtures of mutually orthogonal pure components the mixing ergotropy
//! respects this order — less inhomogeneous weights never yield less mixing
//! work. With non-orthogonal qubit components that intuition can fail, and
//! this module carries the detector for such violations together with its
//! first-order predictor.

use crate::error::{Error, Result};
use crate::mixing::pair_mixing_work;
use crate::spectral::{decompose, EigenOrdering, HermitianOperator};
use crate::states::BlochState;

/// Probability vector for mixture weights: non-negative entries summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    entries: Vec<f64>,
}

impl WeightVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Weight("weight vector must be non-empty".into()));
        }
        if entries.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::Weight("weights must be non-negative".into()));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Weight(format!("weights sum to {sum}, not 1")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entries sorted non-increasingly, zero-padded to `len`.
    fn sorted_padded(&self, len: usize) -> Vec<f64> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite weights"));
        v.resize(len, 0.0);
        v
    }
}

const MAJORIZATION_TOL: f64 = 1e-12;

/// True iff `lambda` majorizes `mu`: every prefix sum of the sorted
/// `lambda` dominates the corresponding prefix of the sorted `mu` (within
/// `1e-12` per comparison). Vectors of different lengths are zero-padded.
pub fn majorizes(lambda: &WeightVector, mu: &WeightVector) -> bool {
    let len = lambda.len().max(mu.len());
    let l = lambda.sorted_padded(len);
    let m = mu.sorted_padded(len);
    let mut prefix_l = 0.0;
    let mut prefix_m = 0.0;
    for k in 0..len {
        prefix_l += l[k];
        prefix_m += m[k];
        if prefix_l < prefix_m - MAJORIZATION_TOL {
            return false;
        }
    }
    true
}

/// Mixing ergotropies for two weight vectors over quasi-classical
/// components: mutually orthogonal pure states, by default the lowest
/// eigenvectors of `h`. Returns `(dW(mu), dW(lambda))` per particle.
///
/// Requires `lambda` to majorize `mu`; the returned pair then satisfies
/// `dW(mu) >= dW(lambda)` up to roundoff — more mixed weights cost more
/// work, with no quantum exceptions in the orthogonal case.
pub fn quasiclassical_mixing_monotone(
    lambda: &WeightVector,
    mu: &WeightVector,
    h: &HermitianOperator,
) -> Result<(f64, f64)> {
    if lambda.len() != mu.len() {
        return Err(Error::Precondition(format!(
            "weight vectors have different lengths {} and {}",
            lambda.len(),
            mu.len()
        )));
    }
    if h.dim() < lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            found: h.dim(),
        });
    }
    if !majorizes(lambda, mu) {
        return Err(Error::Precondition(
            "lambda must majorize mu".into(),
        ));
    }
    let energies = decompose(h, EigenOrdering::Ascending)?.eigenvalues;
    Ok((
        quasiclassical_mixing_work(mu, &energies),
        quasiclassical_mixing_work(lambda, &energies),
    ))
}

/// Per-particle mixing ergotropy for orthonormal pure components occupying
/// distinct levels of a Hamiltonian with ascending spectrum `energies`:
/// `sum_k e_k w_k^down - e_1`. Independent of which levels the components
/// occupy.
pub(crate) fn quasiclassical_mixing_work(weights: &WeightVector, energies: &[f64]) -> f64 {
    let sorted = weights.sorted_padded(energies.len());
    let dressed: f64 = energies.iter().zip(&sorted).map(|(e, w)| e * w).sum();
    dressed - energies[0]
}

/// Outcome of the qubit monotonicity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    /// `dW(mu) >= dW(lambda)`: more mixing, more mixing work.
    Holds,
    /// `dW(mu) < dW(lambda)`: the degree-of-mixing intuition fails.
    Violated,
}

/// Diagnosis of a two-component qubit instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityReport {
    pub diagnosis: Monotonicity,
    /// Per-particle mixing ergotropy at weights `mu` (unit splitting).
    pub mixing_work_mu: f64,
    /// Per-particle mixing ergotropy at weights `lambda` (unit splitting).
    pub mixing_work_lambda: f64,
}

const ORDER_TOL: f64 = 1e-12;

/// Check whether the mixing ergotropy respects the majorization order for a
/// two-component qubit mixture with the given Bloch vectors.
///
/// Preconditions (each within `1e-12`): both vectors of length 2 with
/// `lambda_1 >= lambda_2`, `mu_1 >= mu_2`, and `lambda_1 >= mu_1`, so that
/// `lambda` majorizes `mu`. Pure components can never violate; a violation
/// needs the first state to be substantially more mixed than the second.
pub fn quantum_monotonicity_violation(
    lambda: &WeightVector,
    mu: &WeightVector,
    n1: &BlochState,
    n2: &BlochState,
) -> Result<MonotonicityReport> {
    if lambda.len() != 2 || mu.len() != 2 {
        return Err(Error::Precondition(
            "the detector handles exactly two components".into(),
        ));
    }
    let l1 = lambda.entries()[0];
    let m1 = mu.entries()[0];
    if l1 < lambda.entries()[1] - ORDER_TOL {
        return Err(Error::Precondition("lambda_1 must be >= lambda_2".into()));
    }
    if m1 < mu.entries()[1] - ORDER_TOL {
        return Err(Error::Precondition("mu_1 must be >= mu_2".into()));
    }
    if l1 < m1 - ORDER_TOL {
        return Err(Error::Precondition("lambda_1 must be >= mu_1".into()));
    }

    let r1 = n1.norm();
    let r2 = n2.norm();
    let phi = if r1 == 0.0 || r2 == 0.0 {
        0.0
    } else {
        (n1.dot(n2) / (r1 * r2)).clamp(-1.0, 1.0).acos()
    };
    let mixing_work_lambda = pair_mixing_work(r1, r2, phi, l1, 1.0)?;
    let mixing_work_mu = pair_mixing_work(r1, r2, phi, m1, 1.0)?;
    let diagnosis = if mixing_work_mu >= mixing_work_lambda - ORDER_TOL {
        Monotonicity::Holds
    } else {
        Monotonicity::Violated
    };
    Ok(MonotonicityReport {
        diagnosis,
        mixing_work_mu,
        mixing_work_lambda,
    })
}

/// First-order (small mutual angle) predictor for monotonicity:
/// `lambda_1 + mu_1 >= 1 + lambda_1 mu_1 (1 - ratio)` with
/// `ratio = |n_1| / |n_2|`. Returns the truth of the inequality; `false`
/// predicts a violation. Being a first-order truncation it can misclassify
/// instances within a narrow band around equality.
pub fn gadi_first_order_check(lambda1: f64, mu1: f64, ratio: f64) -> Result<bool> {
    if !(0.5..=1.0).contains(&lambda1) || !(0.5..=1.0).contains(&mu1) {
        return Err(Error::Domain(
            "leading weights must lie in [1/2, 1]".into(),
        ));
    }
    if !(0.0..=1.0).contains(&ratio) {
        return Err(Error::Domain("radius ratio must lie in [0, 1]".into()));
    }
    Ok(lambda1 + mu1 >= 1.0 + lambda1 * mu1 * (1.0 - ratio))
}
