//! Maximal extractable work for finite-dimensional quantum states.
//!
//! This crate computes the ergotropy — the largest average work a cyclic
//! Hamiltonian process can draw from a quantum state — together with the
//! quantities built on it: passive states, restricted (diagonal-permutation)
//! ergotropy, the mixing ergotropy of multi-component gas mixtures, the
//! majorization order on mixture weights, von Neumann / Tolman / classical
//! mixing entropies, and the Uhlmann distinguishability of states.
//!
//! The mixing ergotropy is the work irreversibly lost by letting gases mix.
//! Unlike the classical mixing entropy, which jumps discontinuously between
//! "different" and "identical" gases, it vanishes continuously as the
//! component states approach each other, and it exposes some genuinely
//! quantum behavior along the way: coarser instruments can see *more*
//! mixing work, and less mixed or less distinguishable components can too.
//!
//! Everything is dense, double-precision and deterministic: fixed-schedule
//! Jacobi eigensolver, stable sorts, seeded sampling. Each optimized or
//! closed-form quantity has an independent oracle (Haar sampling, factorial
//! enumeration, finite differences) in [`oracle`].
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability, and the `ergotropy` binary for the scenario/sweep CLI.

pub mod error;
pub mod majorization;
pub mod mixing;
pub mod oracle;
pub mod scenario;
pub mod spectral;
pub mod states;
pub mod work;

pub use error::{Error, Result};
pub use majorization::{
    gadi_first_order_check, majorizes, quantum_monotonicity_violation,
    quasiclassical_mixing_monotone, Monotonicity, MonotonicityReport, WeightVector,
};
pub use mixing::{
    bloch_mixing_ergotropy, bloch_restricted_mixing_ergotropy, instrument_gap,
    mixing_ergotropy, mixing_ergotropy_pure_overlap, MixingReport,
};
pub use oracle::{
    ergotropy_by_sampling, finite_difference, restricted_ergotropy_by_enumeration,
    sample_haar_unitary, Seed,
};
pub use spectral::{
    decompose, matrix_sqrt, trace_product, ComplexMatrix, DensityMatrix, EigenOrdering,
    HermitianOperator, SpectralDecomposition,
};
pub use states::{
    binary_entropy, bloch_distinguishability, bloch_to_density, classical_entropy,
    classical_mixing_entropy, density_to_bloch, distinguishability, gibbs_state, mix,
    quantum_mixing_entropy, tolman_entropy, von_neumann_entropy, BlochState,
    ClassicalGasSpec, MixtureSpec,
};
pub use work::{
    ergotropy, is_passive, optimal_unitary, passive_state, restricted_ergotropy,
    ErgotropyReport, RestrictedErgotropyReport,
};
