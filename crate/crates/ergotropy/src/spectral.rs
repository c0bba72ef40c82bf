//! Dense complex Hermitian linear algebra.
//!
//! Everything here is sized for the internal states of gas particles:
//! matrices of dimension two to a few dozen. The eigensolver is a cyclic
//! Jacobi iteration with complex rotations, chosen for determinism (fixed
//! sweep schedule, stable sorts) rather than asymptotic speed. Two calls on
//! identical input produce bit-identical spectra.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Per-entry tolerance for the hermiticity check.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Trace-normalization tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues of a density matrix may undershoot zero by this much; they are
/// clipped to zero and the spectrum renormalized. Anything lower is an error.
pub const EIGENVALUE_CLIP_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm threshold for Jacobi convergence, relative to
/// the scale of the input (absolute for unit-scale matrices).
const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from nested rows of `(re, im)` pairs. Convenience for tests and
    /// scenario configs.
    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&(re, im)| Complex64::new(re, im)));
        }
        Self::new(dim, entries)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            entries,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Kronecker product; the right factor varies fastest.
    pub fn kron(&self, other: &Self) -> Self {
        let n = self.dim;
        let m = other.dim;
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Hermitian matrix, validated on construction. Houses both Hamiltonians and
/// the raw matrices behind density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.dim();
        let mut max_violation: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let v = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                max_violation = max_violation.max(v);
            }
        }
        // NaN entries fail this comparison and are rejected here too.
        if !(max_violation <= HERMITICITY_TOL) {
            return Err(Error::NotHermitian { max_violation });
        }
        Ok(Self { matrix })
    }

    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_rows(rows)?)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diagonal(diag),
        }
    }

    /// Two-level Hamiltonian `diag(0, gap)`: ground level first, splitting
    /// `gap` between the levels. All ergotropies depend on the splitting only.
    pub fn two_level(gap: f64) -> Self {
        Self::from_real_diagonal(&[0.0, gap])
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Real part of the trace (the imaginary part is zero up to the
    /// hermiticity tolerance).
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

/// Requested eigenvalue ordering of a [`SpectralDecomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenOrdering {
    /// `e_1 <= e_2 <= ...` — the convention for Hamiltonians.
    Ascending,
    /// `p_1 >= p_2 >= ...` — the convention for density-matrix spectra.
    NonIncreasing,
}

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix.
/// Column `k` of `eigenvectors` pairs with `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
    pub ordering: EigenOrdering,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column `k` as an owned vector.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// Rebuild `sum_k lambda_k v_k v_k^dagger`; used by reconstruction checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let lk = self.eigenvalues[k];
            for i in 0..n {
                let vik = self.eigenvectors[(i, k)];
                for j in 0..n {
                    out[(i, j)] += vik * self.eigenvectors[(j, k)].conj() * lk;
                }
            }
        }
        out
    }

    /// Rebuild with a substituted spectrum (same eigenvectors).
    fn rebuild_with(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let lk = values[k];
            if lk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.eigenvectors[(i, k)];
                for j in 0..n {
                    out[(i, j)] += vik * self.eigenvectors[(j, k)].conj() * lk;
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Spectral decomposition by cyclic Jacobi rotations.
///
/// Sweeps run over pivots `(p, q)` in fixed row-major order until the
/// off-diagonal Frobenius norm falls below `1e-13` (relative to the input
/// scale), capped at 100 sweeps. Sorting is stable with original-index
/// tie-break, so degenerate blocks keep a deterministic order.
pub fn decompose(op: &HermitianOperator, ordering: EigenOrdering) -> Result<SpectralDecomposition> {
    let n = op.dim();
    // Work on an exactly Hermitian copy: average the validated halves.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = Complex64::new(op.matrix()[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let v = (op.matrix()[(i, j)] + op.matrix()[(j, i)].conj()) * 0.5;
            a[(i, j)] = v;
            a[(j, i)] = v.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a) <= threshold;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Unit phase of the pivot entry.
                let phase = apq / b;
                // tan of the rotation angle, smaller-magnitude root.
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c);

                // A <- J^dagger A J with J mixing columns p and q:
                // J[p][p] = c, J[p][q] = s, J[q][p] = -conj(s), J[q][q] = c.
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * s.conj();
                    a[(i, q)] = aip * s + aiq * c;
                    a[(p, i)] = a[(i, p)].conj();
                    a[(q, i)] = a[(i, q)].conj();
                }
                a[(p, p)] = Complex64::new(app - t * b, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * b, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s.conj();
                    v[(i, q)] = vip * s + viq * c;
                }
            }
        }
        converged = off_diagonal_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence {
            residual: off_diagonal_norm(&a),
        });
    }

    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    match ordering {
        // Stable sorts; ties keep the original Jacobi output order.
        EigenOrdering::Ascending => {
            order.sort_by(|&i, &j| raw[i].partial_cmp(&raw[j]).expect("finite eigenvalues"))
        }
        EigenOrdering::NonIncreasing => {
            order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).expect("finite eigenvalues"))
        }
    }
    let eigenvalues: Vec<f64> = order.iter().map(|&k| raw[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, new_k)] = v[(i, old_k)];
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        ordering,
    })
}

/// Density matrix: unit-trace positive semidefinite Hermitian operator.
///
/// Validation decomposes the matrix once at construction; eigenvalues in
/// `[-1e-10, 0)` are clipped to zero and the spectrum renormalized to sum 1.
/// The clipped, non-increasing decomposition is cached, so spectral
/// consumers (entropies, ergotropy, square roots) are infallible afterwards.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    operator: HermitianOperator,
    decomposition: SpectralDecomposition,
}

impl DensityMatrix {
    pub fn new(operator: HermitianOperator) -> Result<Self> {
        let trace = operator.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("trace {trace} differs from 1 by more than {TRACE_TOL:.0e}"),
            });
        }
        let mut decomposition = decompose(&operator, EigenOrdering::NonIncreasing)?;
        let min = decomposition
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min < -EIGENVALUE_CLIP_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("eigenvalue {min:.3e} below -{EIGENVALUE_CLIP_TOL:.0e}"),
            });
        }
        for p in decomposition.eigenvalues.iter_mut() {
            // Noise-level positives are flushed too: the square root is not
            // Lipschitz at zero and would amplify solver roundoff to ~1e-8.
            if *p < 1e-14 {
                *p = 0.0;
            }
        }
        let sum: f64 = decomposition.eigenvalues.iter().sum();
        for p in decomposition.eigenvalues.iter_mut() {
            *p /= sum;
        }
        Ok(Self {
            operator,
            decomposition,
        })
    }

    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(matrix)?)
    }

    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        Self::new(HermitianOperator::from_rows(rows)?)
    }

    /// Diagonal density matrix from a probability vector.
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_real_diagonal(probs))
    }

    /// Projector onto the (normalized) given vector.
    pub fn pure_state(amplitudes: &[Complex64]) -> Result<Self> {
        let n = amplitudes.len();
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::Domain("pure state vector must be nonzero".into()));
        }
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = amplitudes[i] * amplitudes[j].conj() / norm_sq;
            }
        }
        Self::from_matrix(m)
    }

    /// `I/n`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let p = 1.0 / dim as f64;
        Self::from_probabilities(&vec![p; dim]).expect("uniform spectrum is valid")
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.operator.matrix()
    }

    /// Cached decomposition: clipped spectrum in non-increasing order,
    /// renormalized to sum 1.
    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    /// Clipped eigenvalues `p_1 >= p_2 >= ... >= 0`, summing to 1.
    pub fn spectrum(&self) -> &[f64] {
        &self.decomposition.eigenvalues
    }
}

/// Positive semidefinite square root of a density matrix, computed
/// spectrally: the square root applied to the clipped spectrum.
pub fn matrix_sqrt(rho: &DensityMatrix) -> HermitianOperator {
    let dec = rho.decomposition();
    let roots: Vec<f64> = dec.eigenvalues.iter().map(|&p| p.sqrt()).collect();
    let m = dec.rebuild_with(&roots);
    HermitianOperator::new(m).expect("spectral rebuild is Hermitian")
}

/// Square root of a PSD Hermitian operator that is not trace-normalized
/// (clips eigenvalues in `[-tol, 0)` to zero, no renormalization). Serves the
/// inner factor of the Uhlmann fidelity.
pub(crate) fn psd_sqrt(op: &HermitianOperator, clip_tol: f64) -> Result<HermitianOperator> {
    let dec = decompose(op, EigenOrdering::NonIncreasing)?;
    let scale = dec
        .eigenvalues
        .iter()
        .map(|p| p.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let flush = 64.0 * f64::EPSILON * scale;
    let mut roots = Vec::with_capacity(dec.dim());
    for &p in &dec.eigenvalues {
        if p < -clip_tol * scale {
            return Err(Error::InvalidDensity {
                reason: format!("operator eigenvalue {p:.3e} is negative beyond tolerance"),
            });
        }
        // Solver roundoff around zero must not leak through the square root.
        roots.push(if p < flush { 0.0 } else { p.sqrt() });
    }
    let m = dec.rebuild_with(&roots);
    Ok(HermitianOperator::new(m).expect("spectral rebuild is Hermitian"))
}

/// `tr(a b)` for Hermitian factors; the product trace is real, the imaginary
/// residual is checked and discarded.
pub fn trace_product(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let n = a.dim();
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            t += a.matrix()[(i, j)] * b.matrix()[(j, i)];
        }
    }
    let scale = (a.matrix().max_abs_entry() * b.matrix().max_abs_entry() * n as f64).max(1.0);
    debug_assert!(
        t.im.abs() <= 1e-12 * scale,
        "trace of Hermitian product has imaginary residual {:.3e}",
        t.im
    );
    Ok(t.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_density, random_hermitian, Seed};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_matrix_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        assert_eq!(a.dim(), b.dim());
        let diff = a.sub(b).max_abs_entry();
        assert!(diff < tol, "matrices differ by {diff:.3e} (tol {tol:.0e})");
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![
            (0.5, 0.0),
            (0.0, 0.0),
        ]])
        .unwrap();
        assert!(matches!(
            HermitianOperator::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn diagonal_matrix_decomposes_to_standard_basis() {
        let h = HermitianOperator::from_real_diagonal(&[0.0, 1.0]);
        let dec = decompose(&h, EigenOrdering::Ascending).unwrap();
        assert_eq!(dec.eigenvalues, vec![0.0, 1.0]);
        assert_matrix_close(&dec.eigenvectors, &ComplexMatrix::identity(2), 1e-15);
    }

    #[test]
    fn pauli_x_spectrum() {
        let h = HermitianOperator::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![
            (1.0, 0.0),
            (0.0, 0.0),
        ]])
        .unwrap();
        let dec = decompose(&h, EigenOrdering::Ascending).unwrap();
        assert!((dec.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((dec.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert_matrix_close(&dec.reconstruct(), h.matrix(), 1e-9);
    }

    #[test]
    fn seeded_reconstruction_and_orthonormality() {
        for dim in 2..=8 {
            for trial in 0..20 {
                let h = random_hermitian(dim, Seed::new(1000 * dim as u64 + trial));
                let dec = decompose(&h, EigenOrdering::Ascending).unwrap();
                assert_matrix_close(&dec.reconstruct(), h.matrix(), 1e-9);
                let gram = dec.eigenvectors.adjoint().mul(&dec.eigenvectors);
                assert_matrix_close(&gram, &ComplexMatrix::identity(dim), 1e-9);
                let sum: f64 = dec.eigenvalues.iter().sum();
                assert!((sum - h.trace()).abs() < 1e-9);
                for k in 1..dim {
                    assert!(dec.eigenvalues[k - 1] <= dec.eigenvalues[k]);
                }
            }
        }
    }

    #[test]
    fn decompose_is_bit_deterministic() {
        let h = random_hermitian(5, Seed::new(7));
        let a = decompose(&h, EigenOrdering::NonIncreasing).unwrap();
        let b = decompose(&h, EigenOrdering::NonIncreasing).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
        assert_eq!(a.eigenvectors.entries(), b.eigenvectors.entries());
    }

    #[test]
    fn density_matrix_clips_and_renormalizes() {
        let rho = DensityMatrix::from_probabilities(&[1.0 + 5e-11, -5e-11]).unwrap();
        assert_eq!(rho.spectrum().len(), 2);
        assert!(rho.spectrum()[1] >= 0.0);
        let sum: f64 = rho.spectrum().iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);

        let err = DensityMatrix::from_probabilities(&[1.001, -0.001]);
        assert!(matches!(err, Err(Error::InvalidDensity { .. })));

        let err = DensityMatrix::from_probabilities(&[0.6, 0.3]);
        assert!(matches!(err, Err(Error::InvalidDensity { .. })));
    }

    #[test]
    fn sqrt_of_maximally_mixed_qubit() {
        let rho = DensityMatrix::maximally_mixed(2);
        let root = matrix_sqrt(&rho);
        let expected = ComplexMatrix::identity(2).scaled(c(1.0 / 2.0_f64.sqrt(), 0.0));
        assert_matrix_close(root.matrix(), &expected, 1e-12);
    }

    #[test]
    fn sqrt_of_projector_is_projector() {
        let rho = DensityMatrix::pure_state(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let root = matrix_sqrt(&rho);
        assert_matrix_close(root.matrix(), rho.matrix(), 1e-12);
    }

    #[test]
    fn qubit_sqrt_closed_form() {
        // rho = (1 + sin(theta) chi.sigma)/2 has square root
        // sqrt(1/2) (cos(theta/2) + sin(theta/2) chi.sigma).
        let theta: f64 = 0.7;
        let chi = [1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0];
        let s = theta.sin();
        let rho = DensityMatrix::from_rows(&[
            vec![((1.0 + s * chi[2]) / 2.0, 0.0), (s * chi[0] / 2.0, -s * chi[1] / 2.0)],
            vec![(s * chi[0] / 2.0, s * chi[1] / 2.0), ((1.0 - s * chi[2]) / 2.0, 0.0)],
        ])
        .unwrap();
        let root = matrix_sqrt(&rho);

        let a = (0.5_f64).sqrt() * (theta / 2.0).cos();
        let b = (0.5_f64).sqrt() * (theta / 2.0).sin();
        let expected = ComplexMatrix::from_rows(&[
            vec![(a + b * chi[2], 0.0), (b * chi[0], -b * chi[1])],
            vec![(b * chi[0], b * chi[1]), (a - b * chi[2], 0.0)],
        ])
        .unwrap();
        assert_matrix_close(root.matrix(), &expected, 1e-9);

        // tr sqrt(rho) = sqrt(1 + sqrt(1 - |n|^2)) for |n| = sin(theta).
        let expected_trace = (1.0 + (1.0 - s * s).sqrt()).sqrt();
        assert!((root.trace() - expected_trace).abs() < 1e-9);
    }

    #[test]
    fn sqrt_squares_back_to_density() {
        for trial in 0..30 {
            let rho = random_density(4, Seed::new(50 + trial));
            let root = matrix_sqrt(&rho);
            let squared = root.matrix().mul(root.matrix());
            assert_matrix_close(&squared, rho.matrix(), 1e-9);
        }
    }

    #[test]
    fn trace_products() {
        let id = HermitianOperator::from_real_diagonal(&[1.0, 1.0]);
        assert!((trace_product(&id, &id).unwrap() - 2.0).abs() < 1e-15);

        let sz = HermitianOperator::from_real_diagonal(&[1.0, -1.0]);
        assert!((trace_product(&sz, &sz).unwrap() - 2.0).abs() < 1e-15);

        let rho = HermitianOperator::from_real_diagonal(&[0.3, 0.7]);
        let h = HermitianOperator::from_real_diagonal(&[0.0, 1.0]);
        assert!((trace_product(&rho, &h).unwrap() - 0.7).abs() < 1e-15);

        let h3 = HermitianOperator::from_real_diagonal(&[0.0, 1.0, 2.0]);
        assert!(matches!(
            trace_product(&rho, &h3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_dimensions_and_entries() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        let b = ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![
            (1.0, 0.0),
            (0.0, 0.0),
        ]])
        .unwrap();
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        assert_eq!(k[(0, 1)], c(1.0, 0.0));
        assert_eq!(k[(2, 3)], c(2.0, 0.0));
        assert_eq!(k[(0, 2)], c(0.0, 0.0));
    }
}
