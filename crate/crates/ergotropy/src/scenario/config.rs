//! Scenario configuration: TOML files with one `kind` each, validated into
//! domain objects before anything numerical runs. Validation errors carry
//! the offending field name.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::spectral::{ComplexMatrix, DensityMatrix, HermitianOperator};
use crate::states::{density_to_bloch, BlochState, ClassicalGasSpec, MixtureSpec};
use crate::Seed;

/// Output format for rendered scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::config("format", format!("unknown format `{other}`"))),
        }
    }
}

/// Entropy presentation units. Everything is computed in nats; bits divide
/// by ln 2 at output time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStateSpec {
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    bloch: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHamiltonianSpec {
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    gap: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponentSpec {
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    bloch: Option<[f64; 3]>,
    count: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGasSpec {
    n: f64,
    v: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGridSpec {
    parameter: String,
    start: f64,
    stop: f64,
    points: usize,
}

/// The raw file shape; every kind shares this surface and validation picks
/// the fields it needs.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    kind: Option<String>,
    seed: Option<u64>,
    format: Option<String>,
    out: Option<String>,
    units: Option<String>,
    epsilon: Option<f64>,
    n_total: Option<f64>,
    state: Option<RawStateSpec>,
    state1: Option<RawStateSpec>,
    state2: Option<RawStateSpec>,
    hamiltonian: Option<RawHamiltonianSpec>,
    components: Option<Vec<RawComponentSpec>>,
    gases: Option<Vec<RawGasSpec>>,
    grid: Option<RawGridSpec>,
    mu: Option<Vec<f64>>,
    r2: Option<f64>,
    phi: Option<f64>,
}

/// Validated sweep grid: at least two points, `start < stop`, endpoints hit
/// exactly.
#[derive(Debug, Clone)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.stop - self.start;
        let last = self.points - 1;
        (0..self.points).map(move |i| {
            if i == 0 {
                self.start
            } else if i == last {
                self.stop
            } else {
                self.start + span * (i as f64 / last as f64)
            }
        })
    }
}

/// A validated scenario, ready to run.
#[derive(Debug, Clone)]
pub enum Scenario {
    Ergotropy {
        state: DensityMatrix,
        hamiltonian: HermitianOperator,
    },
    Mixing {
        mixture: MixtureSpec,
        hamiltonian: HermitianOperator,
    },
    OverlapSweep {
        grid: Grid,
        epsilon: f64,
        n_total: f64,
    },
    InstrumentGap {
        states: Vec<BlochState>,
        weights: Vec<f64>,
        epsilon: f64,
    },
    MajorizationScan {
        mu1: f64,
        n1: BlochState,
        n2: BlochState,
        grid: Grid,
    },
    DistinguishabilitySweep {
        r2: f64,
        phi: f64,
        grid: Grid,
    },
    EntropyReport {
        gases: Option<Vec<ClassicalGasSpec>>,
        mixture: Option<MixtureSpec>,
        hamiltonian: Option<HermitianOperator>,
        units: Units,
    },
    Fidelity {
        state1: DensityMatrix,
        state2: DensityMatrix,
    },
}

impl Scenario {
    /// Sweeps default to CSV, single reports to JSON.
    pub fn default_format(&self) -> Format {
        match self {
            Scenario::OverlapSweep { .. }
            | Scenario::MajorizationScan { .. }
            | Scenario::DistinguishabilitySweep { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// A scenario together with its output disposition.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub seed: Seed,
    pub format: Format,
    pub out: Option<std::path::PathBuf>,
}

/// CLI flag overrides applied on top of a config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<std::path::PathBuf>,
}

fn parse_matrix(field: &str, rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    let dim = rows.len();
    let as_pairs: Vec<Vec<(f64, f64)>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| (re, im)).collect())
        .collect();
    for row in &as_pairs {
        if row.len() != dim {
            return Err(Error::config(
                field,
                format!("matrix must be square, got a row of length {} in dimension {dim}", row.len()),
            ));
        }
    }
    ComplexMatrix::from_rows(&as_pairs)
        .map_err(|e| Error::config(field, e.to_string()))
}

fn parse_state(field: &str, raw: &RawStateSpec) -> Result<DensityMatrix> {
    match (&raw.matrix, &raw.bloch) {
        (Some(rows), None) => {
            let m = parse_matrix(field, rows)?;
            DensityMatrix::from_matrix(m).map_err(|e| Error::config(field, e.to_string()))
        }
        (None, Some(&n)) => {
            let bloch =
                BlochState::new(n).map_err(|e| Error::config(field, e.to_string()))?;
            Ok(crate::states::bloch_to_density(&bloch))
        }
        (Some(_), Some(_)) => Err(Error::config(
            field,
            "give either `matrix` or `bloch`, not both",
        )),
        (None, None) => Err(Error::config(field, "needs `matrix` or `bloch`")),
    }
}

fn parse_bloch_state(field: &str, raw: &RawStateSpec) -> Result<BlochState> {
    if let Some(&n) = raw.bloch.as_ref() {
        return BlochState::new(n).map_err(|e| Error::config(field, e.to_string()));
    }
    let state = parse_state(field, raw)?;
    if state.dim() != 2 {
        return Err(Error::config(
            field,
            "Bloch-form scenarios need a two-level state",
        ));
    }
    density_to_bloch(&state).map_err(|e| Error::config(field, e.to_string()))
}

fn parse_hamiltonian(field: &str, raw: &RawHamiltonianSpec) -> Result<HermitianOperator> {
    match (&raw.matrix, raw.gap) {
        (Some(rows), None) => {
            let m = parse_matrix(field, rows)?;
            HermitianOperator::new(m).map_err(|e| Error::config(field, e.to_string()))
        }
        (None, Some(gap)) => {
            if !(gap >= 0.0) || !gap.is_finite() {
                return Err(Error::config(field, "level splitting `gap` must be >= 0"));
            }
            Ok(HermitianOperator::two_level(gap))
        }
        (Some(_), Some(_)) => Err(Error::config(
            field,
            "give either `matrix` or `gap`, not both",
        )),
        (None, None) => Err(Error::config(field, "needs `matrix` or `gap`")),
    }
}

fn parse_grid(raw: &Option<RawGridSpec>, expected_parameter: &str) -> Result<Grid> {
    let raw = raw
        .as_ref()
        .ok_or_else(|| Error::config("grid", "this kind needs a sweep grid"))?;
    if raw.parameter != expected_parameter {
        return Err(Error::config(
            "grid.parameter",
            format!("expected `{expected_parameter}`, got `{}`", raw.parameter),
        ));
    }
    if raw.points < 2 {
        return Err(Error::config("grid.points", "need at least 2 points"));
    }
    if !(raw.start < raw.stop) {
        return Err(Error::config("grid.start", "grid needs start < stop"));
    }
    Ok(Grid {
        start: raw.start,
        stop: raw.stop,
        points: raw.points,
    })
}

fn parse_mixture(components: &Option<Vec<RawComponentSpec>>) -> Result<MixtureSpec> {
    let raw = components
        .as_ref()
        .ok_or_else(|| Error::config("components", "this kind needs mixture components"))?;
    if raw.is_empty() {
        return Err(Error::config("components", "need at least one component"));
    }
    let mut states = Vec::with_capacity(raw.len());
    let mut counts = Vec::with_capacity(raw.len());
    for (idx, comp) in raw.iter().enumerate() {
        let field = format!("components[{idx}]");
        let spec = RawStateSpec {
            matrix: comp.matrix.clone(),
            bloch: comp.bloch,
        };
        states.push(parse_state(&field, &spec)?);
        counts.push(comp.count.unwrap_or(1.0));
    }
    MixtureSpec::new(states, counts).map_err(|e| Error::config("components", e.to_string()))
}

fn parse_bloch_components(
    components: &Option<Vec<RawComponentSpec>>,
) -> Result<(Vec<BlochState>, Vec<f64>)> {
    let raw = components
        .as_ref()
        .ok_or_else(|| Error::config("components", "this kind needs Bloch components"))?;
    if raw.is_empty() {
        return Err(Error::config("components", "need at least one component"));
    }
    let mut states = Vec::with_capacity(raw.len());
    let mut counts = Vec::with_capacity(raw.len());
    for (idx, comp) in raw.iter().enumerate() {
        let field = format!("components[{idx}]");
        let spec = RawStateSpec {
            matrix: comp.matrix.clone(),
            bloch: comp.bloch,
        };
        states.push(parse_bloch_state(&field, &spec)?);
        let count = comp.count.unwrap_or(1.0);
        if !(count > 0.0) || !count.is_finite() {
            return Err(Error::config(
                &format!("components[{idx}].count"),
                "counts must be positive",
            ));
        }
        counts.push(count);
    }
    let total: f64 = counts.iter().sum();
    let weights = counts.iter().map(|c| c / total).collect();
    Ok((states, weights))
}

fn parse_epsilon(epsilon: Option<f64>) -> Result<f64> {
    let eps = epsilon.unwrap_or(1.0);
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::config("epsilon", "level splitting must be >= 0"));
    }
    Ok(eps)
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text)
            .map_err(|e| Error::config("<config>", e.to_string()))?;
        Self::from_raw(raw, None)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Parse with a kind imposed by the subcommand (`ergotropy`, `fidelity`),
    /// in which case the file may omit `kind`.
    pub fn from_toml_str_as(text: &str, kind: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text)
            .map_err(|e| Error::config("<config>", e.to_string()))?;
        if let Some(declared) = raw.kind.as_deref() {
            if declared != kind {
                return Err(Error::config(
                    "kind",
                    format!("file declares kind `{declared}` but the subcommand expects `{kind}`"),
                ));
            }
        }
        Self::from_raw(raw, Some(kind))
    }

    pub fn from_file_as(path: &std::path::Path, kind: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str_as(&text, kind)
    }

    fn from_raw(raw: RawConfig, imposed_kind: Option<&str>) -> Result<Self> {
        let kind = match (raw.kind.as_deref(), imposed_kind) {
            (Some(k), _) => k.to_string(),
            (None, Some(k)) => k.to_string(),
            (None, None) => return Err(Error::config("kind", "missing scenario kind")),
        };

        let units = match raw.units.as_deref() {
            None | Some("nats") => Units::Nats,
            Some("bits") => Units::Bits,
            Some(other) => {
                return Err(Error::config(
                    "units",
                    format!("unknown units `{other}` (nats or bits)"),
                ))
            }
        };

        let scenario = match kind.as_str() {
            "ergotropy" => {
                let state = parse_state(
                    "state",
                    raw.state
                        .as_ref()
                        .ok_or_else(|| Error::config("state", "kind `ergotropy` needs a state"))?,
                )?;
                let hamiltonian = parse_hamiltonian(
                    "hamiltonian",
                    raw.hamiltonian.as_ref().ok_or_else(|| {
                        Error::config("hamiltonian", "kind `ergotropy` needs a Hamiltonian")
                    })?,
                )?;
                if state.dim() != hamiltonian.dim() {
                    return Err(Error::config(
                        "state",
                        format!(
                            "state dimension {} does not match Hamiltonian dimension {}",
                            state.dim(),
                            hamiltonian.dim()
                        ),
                    ));
                }
                Scenario::Ergotropy { state, hamiltonian }
            }
            "mixing" => {
                let mixture = parse_mixture(&raw.components)?;
                let hamiltonian = parse_hamiltonian(
                    "hamiltonian",
                    raw.hamiltonian.as_ref().ok_or_else(|| {
                        Error::config("hamiltonian", "kind `mixing` needs a Hamiltonian")
                    })?,
                )?;
                if mixture.dim() != hamiltonian.dim() {
                    return Err(Error::config(
                        "components",
                        "component dimension does not match the Hamiltonian",
                    ));
                }
                Scenario::Mixing {
                    mixture,
                    hamiltonian,
                }
            }
            "overlap-sweep" => {
                let grid = parse_grid(&raw.grid, "overlap")?;
                if grid.start < 0.0 || grid.stop > 1.0 {
                    return Err(Error::config("grid.start", "overlap must stay within [0, 1]"));
                }
                let n_total = raw.n_total.unwrap_or(1.0);
                if !(n_total > 0.0) {
                    return Err(Error::config("n_total", "particle number must be positive"));
                }
                Scenario::OverlapSweep {
                    grid,
                    epsilon: parse_epsilon(raw.epsilon)?,
                    n_total,
                }
            }
            "instrument-gap" => {
                let (states, weights) = parse_bloch_components(&raw.components)?;
                Scenario::InstrumentGap {
                    states,
                    weights,
                    epsilon: parse_epsilon(raw.epsilon)?,
                }
            }
            "majorization-scan" => {
                let mu = raw
                    .mu
                    .as_ref()
                    .ok_or_else(|| Error::config("mu", "kind `majorization-scan` needs `mu`"))?;
                if mu.len() != 2 {
                    return Err(Error::config("mu", "needs exactly two weights"));
                }
                crate::majorization::WeightVector::new(mu.clone())
                    .map_err(|e| Error::config("mu", e.to_string()))?;
                if mu[0] < mu[1] {
                    return Err(Error::config("mu", "mu[0] must be the larger weight"));
                }
                let grid = parse_grid(&raw.grid, "lambda1")?;
                if grid.start < mu[0] - 1e-12 {
                    return Err(Error::config(
                        "grid.start",
                        "lambda1 must start at or above mu[0] so lambda majorizes mu",
                    ));
                }
                if grid.stop > 1.0 {
                    return Err(Error::config("grid.stop", "lambda1 cannot exceed 1"));
                }
                let n1 = parse_bloch_state(
                    "state1",
                    raw.state1.as_ref().ok_or_else(|| {
                        Error::config("state1", "kind `majorization-scan` needs two states")
                    })?,
                )?;
                let n2 = parse_bloch_state(
                    "state2",
                    raw.state2.as_ref().ok_or_else(|| {
                        Error::config("state2", "kind `majorization-scan` needs two states")
                    })?,
                )?;
                Scenario::MajorizationScan {
                    mu1: mu[0],
                    n1,
                    n2,
                    grid,
                }
            }
            "distinguishability-sweep" => {
                let grid = parse_grid(&raw.grid, "r1")?;
                if grid.start < 0.0 || grid.stop >= 1.0 {
                    return Err(Error::config(
                        "grid.stop",
                        "r1 must stay within [0, 1) for the derivative columns",
                    ));
                }
                let r2 = raw
                    .r2
                    .ok_or_else(|| Error::config("r2", "needs the second radius `r2`"))?;
                if !(0.0..=1.0).contains(&r2) {
                    return Err(Error::config("r2", "r2 must lie in [0, 1]"));
                }
                let phi = raw
                    .phi
                    .ok_or_else(|| Error::config("phi", "needs the mutual angle `phi`"))?;
                if !phi.is_finite() {
                    return Err(Error::config("phi", "phi must be finite"));
                }
                Scenario::DistinguishabilitySweep { r2, phi, grid }
            }
            "entropy-report" => {
                let gases = match raw.gases.as_ref() {
                    None => None,
                    Some(list) => {
                        let mut gases = Vec::with_capacity(list.len());
                        for (idx, g) in list.iter().enumerate() {
                            gases.push(ClassicalGasSpec::new(g.n, g.v).map_err(|e| {
                                Error::config(&format!("gases[{idx}]"), e.to_string())
                            })?);
                        }
                        Some(gases)
                    }
                };
                let mixture = match raw.components.as_ref() {
                    None => None,
                    Some(_) => Some(parse_mixture(&raw.components)?),
                };
                if gases.is_none() && mixture.is_none() {
                    return Err(Error::config(
                        "gases",
                        "kind `entropy-report` needs `gases`, `components`, or both",
                    ));
                }
                let hamiltonian = match raw.hamiltonian.as_ref() {
                    None => None,
                    Some(h) => Some(parse_hamiltonian("hamiltonian", h)?),
                };
                if let (Some(m), Some(h)) = (&mixture, &hamiltonian) {
                    if m.dim() != h.dim() {
                        return Err(Error::config(
                            "hamiltonian",
                            "Hamiltonian dimension does not match the components",
                        ));
                    }
                }
                Scenario::EntropyReport {
                    gases,
                    mixture,
                    hamiltonian,
                    units,
                }
            }
            "fidelity" => {
                let state1 = parse_state(
                    "state1",
                    raw.state1
                        .as_ref()
                        .ok_or_else(|| Error::config("state1", "fidelity needs two states"))?,
                )?;
                let state2 = parse_state(
                    "state2",
                    raw.state2
                        .as_ref()
                        .ok_or_else(|| Error::config("state2", "fidelity needs two states"))?,
                )?;
                if state1.dim() != state2.dim() {
                    return Err(Error::config(
                        "state2",
                        "states must share a dimension",
                    ));
                }
                Scenario::Fidelity { state1, state2 }
            }
            other => {
                return Err(Error::config(
                    "kind",
                    format!("unknown scenario kind `{other}`"),
                ))
            }
        };

        let format = match raw.format.as_deref() {
            None => scenario.default_format(),
            Some(f) => f.parse()?,
        };
        Ok(ScenarioConfig {
            scenario,
            seed: Seed::new(raw.seed.unwrap_or(0)),
            format,
            out: raw.out.map(std::path::PathBuf::from),
        })
    }

    pub fn apply_overrides(&mut self, overrides: &Overrides) {
        if let Some(seed) = overrides.seed {
            self.seed = Seed::new(seed);
        }
        if let Some(format) = overrides.format {
            self.format = format;
        }
        if let Some(out) = &overrides.out {
            self.out = Some(out.clone());
        }
    }
}
