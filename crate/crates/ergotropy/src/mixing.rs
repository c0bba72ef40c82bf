//! Mixing ergotropy: the maximal work lost by letting gases mix.
//!
//! Before mixing, a separate work source can drive each component; after
//! mixing, one source drives the homogeneous whole. The drop in extractable
//! work is the mixing ergotropy. It is non-negative, vanishes for identical
//! components, and goes to zero continuously as the components approach one
//! another — in contrast to the classical mixing entropy, which jumps.
//!
//! Two-level mixtures admit closed forms in terms of Bloch vectors; those
//! fast paths live here beside the general matrix route, each validating the
//! other in the test suites.

use crate::error::{Error, Result};
use crate::spectral::{decompose, EigenOrdering, HermitianOperator};
use crate::states::{mix, BlochState, MixtureSpec};
use crate::work::ergotropy;

/// Work bookkeeping for a mixing process, in per-particle and extensive
/// (total, scaled by the particle number) units.
#[derive(Debug, Clone)]
pub struct MixingReport {
    /// Total particle number used for the extensive values.
    pub n_total: f64,
    /// `sum_a lambda_a W(rho_a, H)`.
    pub per_particle_initial: f64,
    /// `W(sum_a lambda_a rho_a, H)`.
    pub per_particle_final: f64,
    /// `per_particle_initial - per_particle_final`, non-negative.
    pub mixing_ergotropy_per_particle: f64,
    /// Per-particle value scaled by `n_total`.
    pub total: f64,
    /// Restricted counterparts (diagonal permutations only).
    pub restricted_per_particle_initial: f64,
    pub restricted_per_particle_final: f64,
    pub restricted_mixing_ergotropy_per_particle: f64,
    pub restricted_total: f64,
}

/// Mixing ergotropy of a mixture under Hamiltonian `h`, with both the
/// unrestricted and the diagonal-permutation-restricted accounting.
pub fn mixing_ergotropy(spec: &MixtureSpec, h: &HermitianOperator) -> Result<MixingReport> {
    if spec.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: spec.dim(),
        });
    }
    let weights = spec.weights();
    let mixed = mix(spec)?;

    let mut per_particle_initial = 0.0;
    let mut restricted_initial = 0.0;
    for (rho, &w) in spec.components().iter().zip(&weights) {
        per_particle_initial += w * ergotropy(rho, h)?.ergotropy;
        restricted_initial += w * crate::work::restricted_ergotropy(rho, h)?.restricted_ergotropy;
    }
    let per_particle_final = ergotropy(&mixed, h)?.ergotropy;
    let restricted_final =
        crate::work::restricted_ergotropy(&mixed, h)?.restricted_ergotropy;

    let n_total = spec.n_total();
    let per_particle = per_particle_initial - per_particle_final;
    let restricted_per_particle = restricted_initial - restricted_final;
    Ok(MixingReport {
        n_total,
        per_particle_initial,
        per_particle_final,
        mixing_ergotropy_per_particle: per_particle,
        total: n_total * per_particle,
        restricted_per_particle_initial: restricted_initial,
        restricted_per_particle_final: restricted_final,
        restricted_mixing_ergotropy_per_particle: restricted_per_particle,
        restricted_total: n_total * restricted_per_particle,
    })
}

/// Per-particle mixing ergotropy through the spectral route:
/// `sum_k e_k (p_k^down - sum_a lambda_a p_(k,a)^down)`.
///
/// Algebraically identical to the definitional route in
/// [`mixing_ergotropy`]; kept as an independent computation path so the two
/// can be checked against each other.
pub fn mixing_ergotropy_eigenvalue_form(
    spec: &MixtureSpec,
    h: &HermitianOperator,
) -> Result<f64> {
    if spec.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: spec.dim(),
        });
    }
    let energies = decompose(h, EigenOrdering::Ascending)?.eigenvalues;
    let weights = spec.weights();
    let mixed = mix(spec)?;
    let n = h.dim();
    let mut value = 0.0;
    for k in 0..n {
        let mut averaged = 0.0;
        for (rho, &w) in spec.components().iter().zip(&weights) {
            averaged += w * rho.spectrum()[k];
        }
        value += energies[k] * (mixed.spectrum()[k] - averaged);
    }
    Ok(value)
}

/// Closed form for a pair of equally weighted pure states on a two-level
/// system with splitting `epsilon`: `(N epsilon / 2) (1 - overlap)` where
/// `overlap = |<a1|a2>|`. Continuous in the overlap, zero at coincidence.
pub fn mixing_ergotropy_pure_overlap(overlap: f64, epsilon: f64, n_total: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&overlap) {
        return Err(Error::Domain(format!("overlap {overlap} outside [0, 1]")));
    }
    if !(epsilon >= 0.0) || !(n_total > 0.0) {
        return Err(Error::Domain(
            "level splitting must be non-negative and the particle number positive".into(),
        ));
    }
    Ok(n_total * epsilon / 2.0 * (1.0 - overlap))
}

fn validated_weights(states: &[BlochState], weights: &[f64]) -> Result<()> {
    if states.is_empty() {
        return Err(Error::Weight("need at least one state".into()));
    }
    if states.len() != weights.len() {
        return Err(Error::Weight(format!(
            "{} states but {} weights",
            states.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::Weight("weights must be positive".into()));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::Weight(format!("weights sum to {sum}, not 1")));
    }
    Ok(())
}

/// Per-particle mixing ergotropy of two-level states from their Bloch
/// vectors: `(epsilon/2) (sum_a lambda_a |n_a| - |sum_a lambda_a n_a|)`.
pub fn bloch_mixing_ergotropy(
    states: &[BlochState],
    weights: &[f64],
    epsilon: f64,
) -> Result<f64> {
    validated_weights(states, weights)?;
    let mut sum_norm = 0.0;
    let mut resultant = [0.0; 3];
    for (s, &w) in states.iter().zip(weights) {
        sum_norm += w * s.norm();
        let c = s.components();
        for i in 0..3 {
            resultant[i] += w * c[i];
        }
    }
    let resultant_norm =
        (resultant[0].powi(2) + resultant[1].powi(2) + resultant[2].powi(2)).sqrt();
    Ok(epsilon / 2.0 * (sum_norm - resultant_norm))
}

/// Restricted counterpart of [`bloch_mixing_ergotropy`], where the allowed
/// operations only permute energy-basis diagonals. Only the third Bloch
/// components survive:
/// `(epsilon/2) (sum_a lambda_a |n3_a| - |sum_a lambda_a n3_a|)`.
pub fn bloch_restricted_mixing_ergotropy(
    states: &[BlochState],
    weights: &[f64],
    epsilon: f64,
) -> Result<f64> {
    validated_weights(states, weights)?;
    let mut sum_abs = 0.0;
    let mut resultant = 0.0;
    for (s, &w) in states.iter().zip(weights) {
        let n3 = s.components()[2];
        sum_abs += w * n3.abs();
        resultant += w * n3;
    }
    Ok(epsilon / 2.0 * (sum_abs - resultant.abs()))
}

/// How much the mixing work changes when the instruments get coarser:
/// restricted minus unrestricted mixing ergotropy. Positive values mean the
/// less precise instruments see *more* mixing work.
pub fn instrument_gap(states: &[BlochState], weights: &[f64], epsilon: f64) -> Result<f64> {
    let restricted = bloch_restricted_mixing_ergotropy(states, weights, epsilon)?;
    let unrestricted = bloch_mixing_ergotropy(states, weights, epsilon)?;
    Ok(restricted - unrestricted)
}

/// Per-particle lower bound on the instrument gap for balanced
/// configurations: all `lambda_a n1_a = lambda_a n2_a = b`,
/// `|lambda_a n3_a| = a`, and the weighted third components summing to zero
/// (which requires an even number of components `m`):
///
/// `gap >= (epsilon/2) sqrt(2) m |b| (1 - |b| / (a sqrt(2)))`.
///
/// The `epsilon/2` prefactor carries over from the closed forms the gap is
/// built from.
pub fn instrument_gap_lower_bound(a: f64, b: f64, m: usize, epsilon: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain("third-component magnitude a must be positive".into()));
    }
    Ok(epsilon / 2.0 * 2.0_f64.sqrt() * m as f64 * b.abs() * (1.0 - b.abs() / (a * 2.0_f64.sqrt())))
}

/// Derivative of the two-component per-particle mixing ergotropy with
/// respect to the first radius, at fixed second radius and mutual angle:
///
/// `(epsilon lambda1 / 2) (1 - (lambda1 r1 + lambda2 r2 cos phi) / R)`
///
/// with `R = |lambda1 n1 + lambda2 n2|`. Non-negative wherever defined:
/// purifying one component never lowers the mixing work.
pub fn bloch_mixing_ergotropy_derivative(
    r1: f64,
    r2: f64,
    phi: f64,
    lambda1: f64,
    epsilon: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&r1) || !(0.0..=1.0).contains(&r2) {
        return Err(Error::Domain("radii must lie in [0, 1]".into()));
    }
    if !(0.0 < lambda1 && lambda1 < 1.0) {
        return Err(Error::Domain("lambda1 must lie strictly inside (0, 1)".into()));
    }
    let lambda2 = 1.0 - lambda1;
    let resultant_sq = (lambda1 * r1).powi(2)
        + (lambda2 * r2).powi(2)
        + 2.0 * lambda1 * lambda2 * r1 * r2 * phi.cos();
    let resultant = resultant_sq.max(0.0).sqrt();
    if resultant == 0.0 {
        return Err(Error::Domain(
            "derivative undefined where the weighted Bloch vectors cancel".into(),
        ));
    }
    Ok(epsilon * lambda1 / 2.0 * (1.0 - (lambda1 * r1 + lambda2 * r2 * phi.cos()) / resultant))
}

/// Two-component per-particle mixing ergotropy as a function of radii,
/// mutual angle and first weight.
pub fn pair_mixing_work(r1: f64, r2: f64, phi: f64, lambda1: f64, epsilon: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r1) || !(0.0..=1.0).contains(&r2) {
        return Err(Error::Domain("radii must lie in [0, 1]".into()));
    }
    if !(0.0..=1.0).contains(&lambda1) {
        return Err(Error::Domain("lambda1 must lie in [0, 1]".into()));
    }
    let lambda2 = 1.0 - lambda1;
    let resultant_sq = (lambda1 * r1).powi(2)
        + (lambda2 * r2).powi(2)
        + 2.0 * lambda1 * lambda2 * r1 * r2 * phi.cos();
    Ok(epsilon / 2.0 * (lambda1 * r1 + lambda2 * r2 - resultant_sq.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_density, Seed};
    use crate::spectral::DensityMatrix;
    use crate::states::{bloch_to_density, gibbs_state};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bloch(n: [f64; 3]) -> BlochState {
        BlochState::new(n).unwrap()
    }

    #[test]
    fn identical_components_mix_for_free() {
        let rho = random_density(3, Seed::new(10));
        let spec = MixtureSpec::new(vec![rho.clone(), rho], vec![1.0, 3.0]).unwrap();
        let h = crate::oracle::random_hermitian(3, Seed::new(11));
        let report = mixing_ergotropy(&spec, &h).unwrap();
        assert!(report.mixing_ergotropy_per_particle.abs() < 1e-10);
        assert!(report.restricted_mixing_ergotropy_per_particle.abs() < 1e-10);
    }

    #[test]
    fn gibbs_components_at_different_temperatures_mix_for_free() {
        let h = crate::oracle::random_hermitian(4, Seed::new(12));
        let hot = gibbs_state(&h, 5.0).unwrap();
        let cold = gibbs_state(&h, 0.5).unwrap();
        let spec = MixtureSpec::equal_weights(vec![hot, cold]).unwrap();
        let report = mixing_ergotropy(&spec, &h).unwrap();
        assert!(report.mixing_ergotropy_per_particle.abs() < 1e-10);
    }

    #[test]
    fn orthogonal_pure_qubits_cost_half_the_gap() {
        let up = DensityMatrix::pure_state(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let down = DensityMatrix::pure_state(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let spec = MixtureSpec::equal_weights(vec![up, down]).unwrap();
        let h = HermitianOperator::from_real_diagonal(&[0.0, 1.0]);
        let report = mixing_ergotropy(&spec, &h).unwrap();
        assert!((report.mixing_ergotropy_per_particle - 0.5).abs() < 1e-10);
        assert!((report.total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvalue_form_agrees_with_definition() {
        for trial in 0..40 {
            let dim = 2 + (trial as usize % 4);
            let m = 2 + (trial as usize % 3);
            let components: Vec<DensityMatrix> = (0..m)
                .map(|k| random_density(dim, Seed::new(100 * trial + k as u64)))
                .collect();
            let counts: Vec<f64> = (0..m).map(|k| 1.0 + k as f64).collect();
            let spec = MixtureSpec::new(components, counts).unwrap();
            let h = crate::oracle::random_hermitian(dim, Seed::new(9000 + trial));
            let definitional = mixing_ergotropy(&spec, &h)
                .unwrap()
                .mixing_ergotropy_per_particle;
            let spectral = mixing_ergotropy_eigenvalue_form(&spec, &h).unwrap();
            assert!(
                (definitional - spectral).abs() < 1e-10,
                "routes differ: {definitional} vs {spectral}"
            );
            assert!(definitional >= -1e-10);
        }
    }

    #[test]
    fn pure_overlap_closed_form() {
        assert!((mixing_ergotropy_pure_overlap(0.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(mixing_ergotropy_pure_overlap(1.0, 1.0, 1.0).unwrap(), 0.0);
        assert!((mixing_ergotropy_pure_overlap(0.6, 2.0, 10.0).unwrap() - 4.0).abs() < 1e-12);
        assert!(mixing_ergotropy_pure_overlap(1.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn pure_overlap_matches_general_path() {
        let h = HermitianOperator::two_level(1.0);
        for step in 0..=20 {
            let overlap = step as f64 / 20.0;
            let a = DensityMatrix::pure_state(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
            let b = DensityMatrix::pure_state(&[
                c(overlap, 0.0),
                c((1.0 - overlap * overlap).sqrt(), 0.0),
            ])
            .unwrap();
            let spec = MixtureSpec::equal_weights(vec![a, b]).unwrap();
            let general = mixing_ergotropy(&spec, &h)
                .unwrap()
                .mixing_ergotropy_per_particle;
            let closed = mixing_ergotropy_pure_overlap(overlap, 1.0, 1.0).unwrap();
            assert!(
                (general - closed).abs() < 1e-10,
                "overlap {overlap}: {general} vs {closed}"
            );
        }
    }

    #[test]
    fn bloch_closed_forms() {
        // Collinear states mix for free.
        let s = bloch([0.1, 0.2, 0.3]);
        assert!(bloch_mixing_ergotropy(&[s, s], &[0.5, 0.5], 1.0).unwrap().abs() < 1e-15);

        // Antipodal pure states along x.
        let plus = bloch([1.0, 0.0, 0.0]);
        let minus = bloch([-1.0, 0.0, 0.0]);
        let dw = bloch_mixing_ergotropy(&[plus, minus], &[0.5, 0.5], 1.0).unwrap();
        assert!((dw - 0.5).abs() < 1e-15);

        // The worked pair with transverse components.
        let a = bloch([0.2, 0.2, 0.8]);
        let b = bloch([0.2, 0.2, -0.8]);
        let dw = bloch_mixing_ergotropy(&[a, b], &[0.5, 0.5], 1.0).unwrap();
        let expected = 0.5 * (0.72_f64.sqrt() - 0.08_f64.sqrt());
        assert!((dw - expected).abs() < 1e-15);
        assert!((dw - 0.282843).abs() < 1e-6);

        let dwr = bloch_restricted_mixing_ergotropy(&[a, b], &[0.5, 0.5], 1.0).unwrap();
        assert!((dwr - 0.4).abs() < 1e-15);

        let gap = instrument_gap(&[a, b], &[0.5, 0.5], 1.0).unwrap();
        assert!((gap - (0.4 - 0.08_f64.sqrt())).abs() < 1e-15);
        assert!(gap > 0.0);
    }

    #[test]
    fn restricted_closed_form_same_sign_components() {
        let a = bloch([0.3, -0.1, 0.5]);
        let b = bloch([-0.2, 0.4, 0.2]);
        let dwr = bloch_restricted_mixing_ergotropy(&[a, b], &[0.4, 0.6], 1.0).unwrap();
        assert!(dwr.abs() < 1e-15);

        // Equatorial states: nothing in the diagonal at all.
        let e1 = bloch([0.7, 0.0, 0.0]);
        let e2 = bloch([0.0, 0.7, 0.0]);
        let dwr = bloch_restricted_mixing_ergotropy(&[e1, e2], &[0.5, 0.5], 1.0).unwrap();
        assert!(dwr.abs() < 1e-15);

        // And a negative gap: unrestricted work lost, restricted zero.
        let gap = instrument_gap(&[a, b], &[0.4, 0.6], 1.0).unwrap();
        assert!(gap < 0.0);
    }

    #[test]
    fn weight_validation() {
        let s = bloch([0.1, 0.0, 0.0]);
        assert!(matches!(
            bloch_mixing_ergotropy(&[s, s], &[0.6, 0.6], 1.0),
            Err(Error::Weight(_))
        ));
        assert!(matches!(
            bloch_mixing_ergotropy(&[s], &[0.5, 0.5], 1.0),
            Err(Error::Weight(_))
        ));
    }

    #[test]
    fn closed_forms_match_matrix_route() {
        let h = HermitianOperator::two_level(1.0);
        let mut seed = 0u64;
        for _ in 0..60 {
            seed += 1;
            let mut rng = Seed::new(seed).rng();
            use rand::Rng;
            let sample_ball = |rng: &mut rand_chacha::ChaCha20Rng| loop {
                let v = [
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ];
                if v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0 {
                    return v;
                }
            };
            let a = bloch(sample_ball(&mut rng));
            let b = bloch(sample_ball(&mut rng));
            let w1: f64 = rng.random_range(0.05..0.95);

            let closed = bloch_mixing_ergotropy(&[a, b], &[w1, 1.0 - w1], 1.0).unwrap();
            let closed_restricted =
                bloch_restricted_mixing_ergotropy(&[a, b], &[w1, 1.0 - w1], 1.0).unwrap();

            let spec = MixtureSpec::new(
                vec![bloch_to_density(&a), bloch_to_density(&b)],
                vec![w1, 1.0 - w1],
            )
            .unwrap();
            let report = mixing_ergotropy(&spec, &h).unwrap();
            assert!(
                (report.mixing_ergotropy_per_particle - closed).abs() < 1e-10,
                "matrix {} vs closed {closed}",
                report.mixing_ergotropy_per_particle
            );
            assert!(
                (report.restricted_mixing_ergotropy_per_particle - closed_restricted).abs()
                    < 1e-10
            );
        }
    }

    #[test]
    fn shifting_the_hamiltonian_changes_nothing() {
        let h = HermitianOperator::two_level(1.0);
        let shifted = HermitianOperator::from_real_diagonal(&[3.5, 4.5]);
        let rho = random_density(2, Seed::new(77));
        let w = ergotropy(&rho, &h).unwrap().ergotropy;
        let w_shifted = ergotropy(&rho, &shifted).unwrap().ergotropy;
        assert!((w - w_shifted).abs() < 1e-12);

        let spec = MixtureSpec::equal_weights(vec![
            random_density(2, Seed::new(78)),
            random_density(2, Seed::new(79)),
        ])
        .unwrap();
        let dw = mixing_ergotropy(&spec, &h).unwrap().mixing_ergotropy_per_particle;
        let dw_shifted = mixing_ergotropy(&spec, &shifted)
            .unwrap()
            .mixing_ergotropy_per_particle;
        assert!((dw - dw_shifted).abs() < 1e-12);
    }

    #[test]
    fn degenerate_hamiltonian_gives_zero_work() {
        let h = HermitianOperator::two_level(0.0);
        let rho = random_density(2, Seed::new(80));
        assert!(ergotropy(&rho, &h).unwrap().ergotropy.abs() < 1e-14);
        let a = bloch([0.9, 0.0, 0.1]);
        let b = bloch([0.0, 0.0, -0.9]);
        assert_eq!(bloch_mixing_ergotropy(&[a, b], &[0.5, 0.5], 0.0).unwrap(), 0.0);
    }

    #[test]
    fn gap_lower_bound_holds_on_balanced_configurations() {
        // lambda = 1/2 each, so n1 = n2 = 2b and n3 = +-2a.
        for (a, b) in [(0.3, 0.1), (0.25, 0.05), (0.4, 0.2), (0.35, 0.12)] {
            let up = bloch([2.0 * b, 2.0 * b, 2.0 * a]);
            let down = bloch([2.0 * b, 2.0 * b, -2.0 * a]);
            let gap = instrument_gap(&[up, down], &[0.5, 0.5], 1.0).unwrap();
            let bound = instrument_gap_lower_bound(a, b, 2, 1.0).unwrap();
            assert!(
                gap >= bound - 1e-9,
                "a={a}, b={b}: gap {gap} below bound {bound}"
            );
        }
    }

    #[test]
    fn mixing_work_derivative_matches_finite_differences_and_sign() {
        use crate::oracle::refined_finite_difference;
        let cases = [
            (0.3, 0.7, 0.9, 0.5),
            (0.05, 0.95, 0.3, 0.5),
            (0.5, 0.5, 2.0, 0.3),
            (0.8, 0.2, 1.2, 0.7),
        ];
        for (r1, r2, phi, lambda1) in cases {
            let analytic =
                bloch_mixing_ergotropy_derivative(r1, r2, phi, lambda1, 1.0).unwrap();
            let numeric = refined_finite_difference(
                |r| pair_mixing_work(r, r2, phi, lambda1, 1.0),
                r1,
                1e-5,
            )
            .unwrap();
            assert!(
                (analytic - numeric).abs() < 1e-6,
                "({r1},{r2},{phi},{lambda1}): {analytic} vs {numeric}"
            );
            assert!(analytic >= -1e-9);
        }
    }
}
