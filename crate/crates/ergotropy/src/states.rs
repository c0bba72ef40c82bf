//! Domain state types, entropy functionals and distinguishability measures.
//!
//! All entropies are in nats. Conversion to bits is a presentation concern
//! handled by the scenario layer.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    decompose, matrix_sqrt, psd_sqrt, ComplexMatrix, DensityMatrix, EigenOrdering,
    HermitianOperator,
};

/// Spin-1/2 state as a Bloch vector `n` with `|n| <= 1`.
///
/// Norms in `(1, 1 + 1e-12]` are clamped back to the unit sphere; anything
/// larger is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    n: [f64; 3],
}

impl BlochState {
    pub fn new(n: [f64; 3]) -> Result<Self> {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if !(norm <= 1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "Bloch vector norm {norm} exceeds 1"
            )));
        }
        if norm > 1.0 {
            let s = 1.0 / norm;
            return Ok(Self {
                n: [n[0] * s, n[1] * s, n[2] * s],
            });
        }
        Ok(Self { n })
    }

    pub fn components(&self) -> [f64; 3] {
        self.n
    }

    pub fn norm(&self) -> f64 {
        let n = self.n;
        (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.n[0] * other.n[0] + self.n[1] * other.n[1] + self.n[2] * other.n[2]
    }

    /// A pair with given radii and mutual angle: the second vector along `z`,
    /// the first in the `xz` plane.
    pub fn pair_with_angle(r1: f64, r2: f64, phi: f64) -> Result<(Self, Self)> {
        let a = Self::new([r1 * phi.sin(), 0.0, r1 * phi.cos()])?;
        let b = Self::new([0.0, 0.0, r2])?;
        Ok((a, b))
    }
}

/// Pre-mixed ensemble: component states with particle counts. Weights are
/// the count fractions.
#[derive(Debug, Clone)]
pub struct MixtureSpec {
    components: Vec<DensityMatrix>,
    counts: Vec<f64>,
}

impl MixtureSpec {
    pub fn new(components: Vec<DensityMatrix>, counts: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Weight("mixture needs at least one component".into()));
        }
        if components.len() != counts.len() {
            return Err(Error::Weight(format!(
                "{} components but {} counts",
                components.len(),
                counts.len()
            )));
        }
        let dim = components[0].dim();
        for c in &components {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
        }
        if counts.iter().any(|&n| !(n > 0.0) || !n.is_finite()) {
            return Err(Error::Weight("particle counts must be positive".into()));
        }
        Ok(Self { components, counts })
    }

    /// Equal-count shorthand.
    pub fn equal_weights(components: Vec<DensityMatrix>) -> Result<Self> {
        let counts = vec![1.0; components.len()];
        Self::new(components, counts)
    }

    pub fn components(&self) -> &[DensityMatrix] {
        &self.components
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total particle number.
    pub fn n_total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// Weights `N_a / N`, summing to 1.
    pub fn weights(&self) -> Vec<f64> {
        let total = self.n_total();
        self.counts.iter().map(|&n| n / total).collect()
    }
}

/// Ideal classical gas: `N` particles in volume `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalGasSpec {
    pub n_particles: f64,
    pub volume: f64,
}

impl ClassicalGasSpec {
    pub fn new(n_particles: f64, volume: f64) -> Result<Self> {
        if !(n_particles > 0.0) || !n_particles.is_finite() {
            return Err(Error::Domain("particle number must be positive".into()));
        }
        if !(volume > 0.0) || !volume.is_finite() {
            return Err(Error::Domain("volume must be positive".into()));
        }
        Ok(Self { n_particles, volume })
    }
}

/// Weighted mixture `sum_a lambda_a rho_a`.
pub fn mix(spec: &MixtureSpec) -> Result<DensityMatrix> {
    let weights = spec.weights();
    let dim = spec.dim();
    let mut m = ComplexMatrix::zeros(dim);
    for (component, &w) in spec.components().iter().zip(&weights) {
        m = m.add(&component.matrix().scaled(Complex64::new(w, 0.0)));
    }
    DensityMatrix::from_matrix(m)
}

/// Von Neumann entropy `-sum_k p_k ln p_k` in nats, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .spectrum()
        .iter()
        .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
        .sum();
    s.max(0.0)
}

/// Binary entropy `h(x) = -x ln x - (1-x) ln(1-x)` in nats.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// Shannon entropy of the energy-level occupations `pi_k = <e_k|rho|e_k>`
/// in the eigenbasis of `h`. Unlike the von Neumann entropy this changes
/// under unitary driving, which is what makes it a useful bookkeeping
/// entropy for cyclic processes.
pub fn tolman_entropy(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    let pi = energy_diagonal(rho, h)?;
    let s: f64 = pi
        .iter()
        .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
        .sum();
    Ok(s.max(0.0))
}

/// Diagonal of `rho` in the ascending eigenbasis of `h`.
pub(crate) fn energy_diagonal(rho: &DensityMatrix, h: &HermitianOperator) -> Result<Vec<f64>> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    let n = h.dim();
    let basis = decompose(h, EigenOrdering::Ascending)?;
    let mut pi = Vec::with_capacity(n);
    for k in 0..n {
        let v = basis.eigenvector(k);
        let mut p = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                p += v[i].conj() * rho.matrix()[(i, j)] * v[j];
            }
        }
        // <v|rho|v> is real for Hermitian rho; clamp tiny negatives.
        pi.push(p.re.max(0.0));
    }
    Ok(pi)
}

/// Uhlmann fidelity `d = [tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2`,
/// clamped to `[0, 1]`. Equals 1 iff the states coincide, 0 iff their
/// supports are orthogonal.
pub fn distinguishability(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho1.dim(),
            found: rho2.dim(),
        });
    }
    let root = matrix_sqrt(rho1);
    let inner_raw = root.matrix().mul(rho2.matrix()).mul(root.matrix());
    // The product is Hermitian PSD in exact arithmetic; symmetrize roundoff.
    let n = inner_raw.dim();
    let mut inner = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            inner[(i, j)] = (inner_raw[(i, j)] + inner_raw[(j, i)].conj()) * 0.5;
        }
    }
    let inner = HermitianOperator::new(inner).expect("symmetrized product is Hermitian");
    let sqrt_inner = psd_sqrt(&inner, 1e-9)?;
    let d = sqrt_inner.trace().powi(2);
    Ok(d.clamp(0.0, 1.0))
}

/// Closed-form distinguishability for two qubits:
/// `d = (1 + n1.n2 + sqrt(1-|n1|^2) sqrt(1-|n2|^2)) / 2`.
pub fn bloch_distinguishability(a: &BlochState, b: &BlochState) -> f64 {
    let purity = |s: &BlochState| (1.0 - s.norm().powi(2)).max(0.0).sqrt();
    let d = 0.5 * (1.0 + a.dot(b) + purity(a) * purity(b));
    d.clamp(0.0, 1.0)
}

/// Derivative of the qubit distinguishability with respect to `|n1|` at
/// fixed `|n2|` and mutual angle `phi`. Positive values mean the states get
/// closer as the first one becomes purer.
pub fn bloch_distinguishability_derivative(r1: f64, r2: f64, phi: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r1) || !(0.0..=1.0).contains(&r2) {
        return Err(Error::Domain(format!(
            "radii (r1={r1}, r2={r2}) outside the Bloch ball (r1 strictly below 1)"
        )));
    }
    let s1 = (1.0 - r1 * r1).sqrt();
    let s2 = (1.0 - r2 * r2).sqrt();
    Ok((phi.cos() * r2 * s1 - r1 * s2) / (2.0 * s1))
}

/// Squared Hilbert-Schmidt distance `tr[(rho1 - rho2)^2]` for the qubit pair
/// parameterized by radii and mutual angle: `|n1 - n2|^2 / 2`.
pub fn bloch_pair_distance_sq(r1: f64, r2: f64, phi: f64) -> f64 {
    0.5 * (r1 * r1 - 2.0 * r1 * r2 * phi.cos() + r2 * r2)
}

const PAULI_X: [[(f64, f64); 2]; 2] = [[(0.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]];
const PAULI_Y: [[(f64, f64); 2]; 2] = [[(0.0, 0.0), (0.0, -1.0)], [(0.0, 1.0), (0.0, 0.0)]];
const PAULI_Z: [[(f64, f64); 2]; 2] = [[(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (-1.0, 0.0)]];

/// The Pauli matrix triple `(sigma_1, sigma_2, sigma_3)`.
pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    let build = |m: [[(f64, f64); 2]; 2]| {
        ComplexMatrix::from_rows(&[m[0].to_vec(), m[1].to_vec()]).expect("2x2")
    };
    [build(PAULI_X), build(PAULI_Y), build(PAULI_Z)]
}

/// Qubit density matrix `rho = (1 + n.sigma)/2`.
pub fn bloch_to_density(a: &BlochState) -> DensityMatrix {
    let [n1, n2, n3] = a.components();
    DensityMatrix::from_rows(&[
        vec![((1.0 + n3) / 2.0, 0.0), (n1 / 2.0, -n2 / 2.0)],
        vec![(n1 / 2.0, n2 / 2.0), ((1.0 - n3) / 2.0, 0.0)],
    ])
    .expect("Bloch vector inside the ball gives a valid density matrix")
}

/// Bloch vector of a qubit density matrix, `n_i = tr(rho sigma_i)`.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochState> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    let m = rho.matrix();
    let n1 = 2.0 * m[(0, 1)].re;
    let n2 = -2.0 * m[(0, 1)].im;
    let n3 = m[(0, 0)].re - m[(1, 1)].re;
    BlochState::new([n1, n2, n3])
}

/// Gibbs state `exp(-h/temperature) / Z` for `temperature > 0`.
pub fn gibbs_state(h: &HermitianOperator, temperature: f64) -> Result<DensityMatrix> {
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive".into()));
    }
    let dec = decompose(h, EigenOrdering::Ascending)?;
    let e0 = dec.eigenvalues[0];
    let boltzmann: Vec<f64> = dec
        .eigenvalues
        .iter()
        .map(|&e| (-(e - e0) / temperature).exp())
        .collect();
    let z: f64 = boltzmann.iter().sum();
    let n = h.dim();
    let mut m = ComplexMatrix::zeros(n);
    for k in 0..n {
        let p = boltzmann[k] / z;
        let v = dec.eigenvector(k);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += v[i] * v[j].conj() * p;
            }
        }
    }
    DensityMatrix::from_matrix(m)
}

/// Tensor product of two density matrices.
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix(a.matrix().kron(b.matrix()))
}

/// Sackur-Tetrode-style configurational entropy `N ln(V/N)`. The purely
/// temperature-dependent term is dropped; it cancels in every entropy
/// difference this library computes.
pub fn classical_entropy(gas: &ClassicalGasSpec) -> f64 {
    gas.n_particles * (gas.volume / gas.n_particles).ln()
}

const PRESSURE_TOL: f64 = 1e-9;

/// Mixing entropy of distinct ideal gases at common pressure and
/// temperature: `sum_a N_a ln(V_total / V_a)`.
///
/// The common-pressure precondition is encoded through the particle
/// densities `N_a / V_a`, which must agree to relative `1e-9`.
pub fn classical_mixing_entropy(gases: &[ClassicalGasSpec]) -> Result<f64> {
    if gases.is_empty() {
        return Err(Error::Domain("need at least one gas".into()));
    }
    let d0 = gases[0].n_particles / gases[0].volume;
    for (idx, g) in gases.iter().enumerate() {
        let d = g.n_particles / g.volume;
        if (d - d0).abs() > PRESSURE_TOL * d0.max(d) {
            return Err(Error::PressureMismatch(format!(
                "gas {idx} has density {d}, gas 0 has {d0}"
            )));
        }
    }
    let v_total: f64 = gases.iter().map(|g| g.volume).sum();
    Ok(gases
        .iter()
        .map(|g| g.n_particles * (v_total / g.volume).ln())
        .sum())
}

/// Mixing entropy per particle:
/// `S_vN(sum_a lambda_a rho_a) - sum_a lambda_a S_vN(rho_a)`.
///
/// Non-negative by concavity of the von Neumann entropy. Multiply by the
/// mixture's total particle number for the extensive value.
pub fn quantum_mixing_entropy(spec: &MixtureSpec) -> Result<f64> {
    let mixed = mix(spec)?;
    let weights = spec.weights();
    let component_term: f64 = spec
        .components()
        .iter()
        .zip(&weights)
        .map(|(rho, &w)| w * von_neumann_entropy(rho))
        .sum();
    Ok(von_neumann_entropy(&mixed) - component_term)
}
