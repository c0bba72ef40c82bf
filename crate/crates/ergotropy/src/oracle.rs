//! Independent brute-force and sampling oracles.
//!
//! Nothing in this module is needed to compute an ergotropy; everything here
//! exists to check the optimized or closed-form routes from a second,
//! slower direction: Haar-random unitary extraction attempts, factorial
//! permutation enumeration, and finite-difference derivatives. All sampling
//! is seed-deterministic — identical seeds reproduce identical streams
//! bit-for-bit.

use itertools::Itertools;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::spectral::{ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::work::optimal_unitary;

/// Enumeration guard for the factorial permutation oracle.
pub const ENUMERATION_MAX_DIM: usize = 8;

/// Reproducible RNG seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    pub fn new(value: u64) -> Self {
        Seed(value)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub(crate) fn rng(self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.0)
    }
}

fn standard_complex_gaussian(rng: &mut ChaCha20Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / 2.0_f64.sqrt()
}

/// Draw a Haar-distributed unitary from an existing stream.
///
/// A matrix of independent standard complex Gaussians is orthonormalized
/// column by column (modified Gram-Schmidt). The diagonal of the implicit
/// triangular factor is the positive real column norm, which fixes the phase
/// convention and makes the result Haar rather than merely unitary.
pub fn haar_unitary_from_rng(dim: usize, rng: &mut ChaCha20Rng) -> ComplexMatrix {
    let n = dim;
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| standard_complex_gaussian(rng)).collect())
        .collect();
    for j in 0..n {
        for i in 0..j {
            let proj: Complex64 = (0..n).map(|r| cols[i][r].conj() * cols[j][r]).sum();
            for r in 0..n {
                let correction = proj * cols[i][r];
                cols[j][r] -= correction;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            cols[j][r] /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            u[(i, j)] = cols[j][i];
        }
    }
    u
}

/// Single Haar-distributed unitary for the given seed.
pub fn sample_haar_unitary(dim: usize, seed: Seed) -> ComplexMatrix {
    haar_unitary_from_rng(dim, &mut seed.rng())
}

/// Random Hermitian matrix with Gaussian entries, `(G + G^dagger)/2`.
pub fn random_hermitian(dim: usize, seed: Seed) -> HermitianOperator {
    let mut rng = seed.rng();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = standard_complex_gaussian(&mut rng);
        }
    }
    let mut h = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            h[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    HermitianOperator::new(h).expect("symmetrized matrix is Hermitian")
}

/// Random full-rank density matrix `G G^dagger / tr(G G^dagger)`.
pub fn random_density(dim: usize, seed: Seed) -> DensityMatrix {
    let mut rng = seed.rng();
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = standard_complex_gaussian(&mut rng);
        }
    }
    let gg = g.mul(&g.adjoint());
    let trace = gg.trace().re;
    let normalized = gg.scaled(Complex64::new(1.0 / trace, 0.0));
    DensityMatrix::from_matrix(normalized).expect("Gram matrix is PSD with unit trace")
}

fn extraction(rho: &DensityMatrix, h: &HermitianOperator, u: &ComplexMatrix) -> f64 {
    // tr(rho H) - tr(U rho U^dagger H)
    let rotated = u.mul(rho.matrix()).mul(&u.adjoint());
    let n = h.dim();
    let mut before = Complex64::new(0.0, 0.0);
    let mut after = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            before += rho.matrix()[(i, j)] * h.matrix()[(j, i)];
            after += rotated[(i, j)] * h.matrix()[(j, i)];
        }
    }
    before.re - after.re
}

/// Best work extraction over `samples` Haar-random unitaries: a lower bound
/// on the ergotropy. Convergence toward the optimum is slow; the value is a
/// bound, not an estimate.
pub fn ergotropy_by_sampling(
    rho: &DensityMatrix,
    h: &HermitianOperator,
    samples: usize,
    seed: Seed,
) -> Result<f64> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    if samples == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    let mut rng = seed.rng();
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let u = haar_unitary_from_rng(rho.dim(), &mut rng);
        best = best.max(extraction(rho, h, &u));
    }
    Ok(best)
}

/// Same as [`ergotropy_by_sampling`] with the constructed optimal permutation
/// unitary appended to the sample set, which makes the bound exact.
pub fn ergotropy_by_sampling_with_optimal(
    rho: &DensityMatrix,
    h: &HermitianOperator,
    samples: usize,
    seed: Seed,
) -> Result<f64> {
    let sampled = ergotropy_by_sampling(rho, h, samples, seed)?;
    let u = optimal_unitary(rho, h)?;
    Ok(sampled.max(extraction(rho, h, &u)))
}

/// Restricted ergotropy by exhaustive enumeration of all `dim!` permutations
/// of the energy-basis diagonal. Exact; guards against dimensions above
/// [`ENUMERATION_MAX_DIM`].
pub fn restricted_ergotropy_by_enumeration(
    rho: &DensityMatrix,
    h: &HermitianOperator,
) -> Result<f64> {
    let n = h.dim();
    if n > ENUMERATION_MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: ENUMERATION_MAX_DIM,
        });
    }
    let report = crate::work::restricted_ergotropy(rho, h)?;
    let energies = crate::spectral::decompose(h, crate::spectral::EigenOrdering::Ascending)?
        .eigenvalues;
    let pi = report.diagonal.clone();
    let current: f64 = energies.iter().zip(&pi).map(|(e, p)| e * p).sum();
    let mut min_energy = f64::INFINITY;
    for perm in (0..n).permutations(n) {
        let energy: f64 = perm.iter().enumerate().map(|(k, &j)| energies[k] * pi[j]).sum();
        min_energy = min_energy.min(energy);
    }
    Ok(current - min_energy)
}

/// Central finite difference `(f(x+step) - f(x-step)) / (2 step)`.
pub fn finite_difference<F>(f: F, x: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if step <= 0.0 {
        return Err(Error::Domain("finite-difference step must be positive".into()));
    }
    Ok((f(x + step)? - f(x - step)?) / (2.0 * step))
}

/// Central difference with one Richardson refinement when the full-step and
/// half-step estimates disagree by more than `1e-7`. Needed near the edge of
/// the Bloch ball where derivative curvature blows up.
pub fn refined_finite_difference<F>(f: F, x: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let d1 = finite_difference(&f, x, step)?;
    let d2 = finite_difference(&f, x, step / 2.0)?;
    if (d1 - d2).abs() > 1e-7 {
        Ok((4.0 * d2 - d1) / 3.0)
    } else {
        Ok(d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::EigenOrdering;
    use crate::states::gibbs_state;

    #[test]
    fn haar_unitary_is_unitary() {
        for dim in 1..=6 {
            let u = sample_haar_unitary(dim, Seed::new(dim as u64));
            let gram = u.adjoint().mul(&u);
            let residual = gram.sub(&ComplexMatrix::identity(dim)).max_abs_entry();
            assert!(residual < 1e-10, "dim {dim}: residual {residual:.3e}");
        }
    }

    #[test]
    fn dim_one_unitary_is_unit_modulus_scalar() {
        let u = sample_haar_unitary(1, Seed::new(3));
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_seed_replays_bit_for_bit() {
        let a = sample_haar_unitary(3, Seed::new(42));
        let b = sample_haar_unitary(3, Seed::new(42));
        assert_eq!(a.entries(), b.entries());
        let c = sample_haar_unitary(3, Seed::new(43));
        assert_ne!(a.entries(), c.entries());
    }

    #[test]
    fn haar_moments_match_left_invariance() {
        // E[|u_00|^2] = 1/n, and the statistic is unchanged under a fixed
        // left factor. Loose 4-sigma bands; this is a spot check.
        let dim = 3;
        let samples = 3000;
        let f = sample_haar_unitary(dim, Seed::new(999));
        let mut rng = Seed::new(7).rng();
        let (mut plain, mut shifted) = (0.0, 0.0);
        for _ in 0..samples {
            let u = haar_unitary_from_rng(dim, &mut rng);
            plain += u[(0, 0)].norm_sqr();
            shifted += f.mul(&u)[(0, 0)].norm_sqr();
        }
        plain /= samples as f64;
        shifted /= samples as f64;
        let expect = 1.0 / dim as f64;
        // Var(|u_00|^2) for Haar is about 1/n^2 * (n-1)/(n+1); band ~ 4/sqrt(N)/n.
        let band = 4.0 / (samples as f64).sqrt() / dim as f64;
        assert!((plain - expect).abs() < band, "plain moment {plain}");
        assert!((shifted - expect).abs() < band, "shifted moment {shifted}");
    }

    #[test]
    fn sampling_respects_passive_input() {
        let h = HermitianOperator::from_real_diagonal(&[0.0, 1.0]);
        let gibbs = gibbs_state(&h, 0.5).unwrap();
        let best = ergotropy_by_sampling(&gibbs, &h, 200, Seed::new(5)).unwrap();
        assert!(best <= 1e-9, "extracted {best:.3e} from a passive state");
    }

    #[test]
    fn sampling_bounds_and_optimal_attains() {
        let rho = DensityMatrix::from_probabilities(&[0.3, 0.7]).unwrap();
        let h = HermitianOperator::from_real_diagonal(&[0.0, 1.0]);
        let bound = ergotropy_by_sampling(&rho, &h, 2000, Seed::new(11)).unwrap();
        assert!(bound <= 0.4 + 1e-9);
        assert!(bound > 0.38, "2000 qubit samples should come close: {bound}");
        let exact = ergotropy_by_sampling_with_optimal(&rho, &h, 10, Seed::new(11)).unwrap();
        assert!((exact - 0.4).abs() < 1e-10);
    }

    #[test]
    fn enumeration_matches_sorted_formula() {
        let h = HermitianOperator::from_real_diagonal(&[0.0, 1.0]);
        let rho = DensityMatrix::from_probabilities(&[0.3, 0.7]).unwrap();
        let by_enum = restricted_ergotropy_by_enumeration(&rho, &h).unwrap();
        assert!((by_enum - 0.4).abs() < 1e-12);

        for trial in 0..20 {
            let rho = random_density(3, Seed::new(300 + trial));
            let h = random_hermitian(3, Seed::new(400 + trial));
            let by_enum = restricted_ergotropy_by_enumeration(&rho, &h).unwrap();
            let direct = crate::work::restricted_ergotropy(&rho, &h)
                .unwrap()
                .restricted_ergotropy;
            assert!((by_enum - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn enumeration_guard() {
        let rho = DensityMatrix::maximally_mixed(9);
        let h = random_hermitian(9, Seed::new(1));
        assert!(matches!(
            restricted_ergotropy_by_enumeration(&rho, &h),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn already_sorted_diagonal_has_zero_restricted_ergotropy() {
        let h = HermitianOperator::from_real_diagonal(&[0.0, 0.5, 1.0]);
        let rho = DensityMatrix::from_probabilities(&[0.5, 0.3, 0.2]).unwrap();
        let by_enum = restricted_ergotropy_by_enumeration(&rho, &h).unwrap();
        assert!(by_enum.abs() < 1e-12);
    }

    #[test]
    fn finite_difference_of_identity() {
        let d = finite_difference(|x| Ok(x), 0.3, 1e-5).unwrap();
        assert!((d - 1.0).abs() < 1e-10);
        let d = refined_finite_difference(|x| Ok(x * x), 2.0, 1e-4).unwrap();
        assert!((d - 4.0).abs() < 1e-8);
    }

    #[test]
    fn random_density_is_valid_and_deterministic() {
        let a = random_density(4, Seed::new(77));
        let b = random_density(4, Seed::new(77));
        assert_eq!(a.matrix().entries(), b.matrix().entries());
        let dec = crate::spectral::decompose(a.operator(), EigenOrdering::NonIncreasing).unwrap();
        assert!(dec.eigenvalues.iter().all(|&p| p > -1e-12));
    }
}
