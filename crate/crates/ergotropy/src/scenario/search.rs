//! Seeded randomized searches for the two counterintuitive effects: coarser
//! instruments seeing more mixing work, and less mixed weights producing
//! more mixing work. Both searches are deterministic per seed and report
//! the best instance found with a full parameter dump.

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::majorization::{
    gadi_first_order_check, quantum_monotonicity_violation, Monotonicity, WeightVector,
};
use crate::mixing::{bloch_mixing_ergotropy, bloch_restricted_mixing_ergotropy};
use crate::states::BlochState;
use crate::Seed;

/// A two-component Bloch configuration whose restricted mixing work exceeds
/// the unrestricted one.
#[derive(Debug, Clone, Serialize)]
pub struct GapInstance {
    pub weights: Vec<f64>,
    pub states: Vec<[f64; 3]>,
    #[serde(rename = "Δ𝒲")]
    pub mixing_work: f64,
    #[serde(rename = "Δ𝒲′")]
    pub restricted_mixing_work: f64,
    #[serde(rename = "Δ𝒲′−Δ𝒲")]
    pub gap: f64,
}

/// Outcome of [`search_instrument_gap`]. `best` is present iff a strictly
/// positive gap was found.
#[derive(Debug, Clone, Serialize)]
pub struct GapSearchReport {
    pub kind: &'static str,
    pub seed: u64,
    pub trials: u64,
    /// Trials whose balanced third component fit inside the Bloch ball.
    pub valid_trials: u64,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best: Option<GapInstance>,
}

fn sample_in_ball(rng: &mut ChaCha20Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0 {
            return v;
        }
    }
}

/// Random search over two-component Bloch configurations with vanishing
/// weighted third component (so the restricted mixing work keeps its full
/// sorted-diagonal value), maximizing `gap = restricted - unrestricted`
/// mixing work at unit splitting.
pub fn search_instrument_gap(seed: Seed, trials: u64) -> Result<GapSearchReport> {
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let mut rng = seed.rng();
    let mut best: Option<GapInstance> = None;
    let mut valid = 0u64;
    for _ in 0..trials {
        let w1: f64 = rng.random_range(0.1..0.9);
        let w2 = 1.0 - w1;
        let n1 = sample_in_ball(&mut rng);
        // Balance the weighted third components exactly.
        let n3_second = -w1 * n1[2] / w2;
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        if n3_second.abs() > 1.0 {
            continue;
        }
        let budget = (1.0 - n3_second * n3_second).sqrt();
        let t: f64 = rng.random_range(0.0..budget.max(f64::MIN_POSITIVE));
        let n2 = [t * theta.cos(), t * theta.sin(), n3_second];
        valid += 1;

        let states = [BlochState::new(n1)?, BlochState::new(n2)?];
        let weights = [w1, w2];
        let unrestricted = bloch_mixing_ergotropy(&states, &weights, 1.0)?;
        let restricted = bloch_restricted_mixing_ergotropy(&states, &weights, 1.0)?;
        let gap = restricted - unrestricted;
        if gap > 0.0 && best.as_ref().map_or(true, |b| gap > b.gap) {
            best = Some(GapInstance {
                weights: weights.to_vec(),
                states: vec![n1, n2],
                mixing_work: unrestricted,
                restricted_mixing_work: restricted,
                gap,
            });
        }
    }
    Ok(GapSearchReport {
        kind: "search-gap",
        seed: seed.value(),
        trials,
        valid_trials: valid,
        found: best.is_some(),
        best,
    })
}

/// A weight/state configuration where the more mixed weights `mu` yield
/// *less* mixing work than the more ordered `lambda`.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationInstance {
    pub lambda1: f64,
    pub mu1: f64,
    pub r1: f64,
    pub r2: f64,
    pub phi: f64,
    #[serde(rename = "Δ𝒲(λ)")]
    pub mixing_work_lambda: f64,
    #[serde(rename = "Δ𝒲(μ)")]
    pub mixing_work_mu: f64,
    /// `Δ𝒲(λ) − Δ𝒲(μ) > 0` certifies the violation.
    pub deficit: f64,
    /// Slack of the first-order monotonicity inequality; negative values
    /// predict the violation.
    pub first_order_margin: f64,
    pub first_order_predicts_monotone: bool,
}

/// Outcome of [`search_monotonicity_violation`].
#[derive(Debug, Clone, Serialize)]
pub struct ViolationSearchReport {
    pub kind: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub pure_only: bool,
    pub violations_found: u64,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best: Option<ViolationInstance>,
}

/// Random search over qubit pairs and majorization-ordered weight pairs for
/// violations of "more mixed weights give more mixing work". With
/// `pure_only` both states are confined to the sphere, where no violation
/// exists.
pub fn search_monotonicity_violation(
    seed: Seed,
    trials: u64,
    pure_only: bool,
) -> Result<ViolationSearchReport> {
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let mut rng = seed.rng();
    let mut best: Option<ViolationInstance> = None;
    let mut violations = 0u64;
    for _ in 0..trials {
        let lambda1: f64 = rng.random_range(0.5..1.0);
        let mu1: f64 = rng.random_range(0.5..lambda1.max(0.5 + f64::MIN_POSITIVE));
        let (r1, r2) = if pure_only {
            (1.0, 1.0)
        } else {
            let r2: f64 = rng.random_range(0.01..1.0);
            let r1: f64 = rng.random_range(0.0..r2);
            (r1, r2)
        };
        let phi: f64 = rng.random_range(0.0..std::f64::consts::PI);

        let (n1, n2) = BlochState::pair_with_angle(r1, r2, phi)?;
        let lambda = WeightVector::new(vec![lambda1, 1.0 - lambda1])?;
        let mu = WeightVector::new(vec![mu1, 1.0 - mu1])?;
        let report = quantum_monotonicity_violation(&lambda, &mu, &n1, &n2)?;
        if report.diagnosis == Monotonicity::Violated {
            violations += 1;
            let deficit = report.mixing_work_lambda - report.mixing_work_mu;
            if best.as_ref().map_or(true, |b| deficit > b.deficit) {
                let ratio = r1 / r2;
                let margin = (lambda1 + mu1) - (1.0 + lambda1 * mu1 * (1.0 - ratio));
                best = Some(ViolationInstance {
                    lambda1,
                    mu1,
                    r1,
                    r2,
                    phi,
                    mixing_work_lambda: report.mixing_work_lambda,
                    mixing_work_mu: report.mixing_work_mu,
                    deficit,
                    first_order_margin: margin,
                    first_order_predicts_monotone: gadi_first_order_check(
                        lambda1, mu1, ratio,
                    )?,
                });
            }
        }
    }
    Ok(ViolationSearchReport {
        kind: "search-violation",
        seed: seed.value(),
        trials,
        pure_only,
        violations_found: violations,
        found: best.is_some(),
        best,
    })
}
