//! Line-oriented experiment plan files.
//!
//! ```text
//! schema = 1
//! topology = small-world n=100 degree=10 rewire=0.1 seed=7
//! topology = spectrum n=100 per-segment=80
//! objectives = shekel, ackley
//! death_fractions = 0, 0.15, 0.3
//! base_seed = 42
//! repetitions = 20
//! ```
//!
//! `#` starts a comment. `topology` may repeat; every other key appears at
//! most once. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::engine::NeighborhoodMode;
use crate::error::{Error, Result};
use crate::harness::{spectrum_topologies, ExperimentPlan, PlanTopology, SuccessMode, Tolerance};
use crate::objectives::{ObjectiveName, ObjectiveSpec};
use crate::topology::{TopologyKind, TopologySpec};

pub const PLAN_SCHEMA_VERSION: u32 = 1;

const REQUIRED: [&str; 5] = ["schema", "topology", "objectives", "death_fractions", "base_seed"];
const SCALARS: [&str; 16] = [
    "schema",
    "objectives",
    "death_fractions",
    "death_horizon",
    "repetitions",
    "base_seed",
    "success",
    "tolerance",
    "tolerance_fraction",
    "alpha",
    "agents",
    "max_iters",
    "chi",
    "phi1",
    "phi2",
    "velocity",
];
const OTHER: [&str; 2] = ["topology", "neighborhood"];

fn number<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse::<T>()
        .map_err(|_| Error::parse(line, format!("bad value `{value}` for `{key}`")))
}

/// Build a topology spec from a family name and `key=value` parameters.
/// `n` is required; `id` is not consumed here.
pub fn topology_from_params(kind: &str, params: &BTreeMap<String, String>) -> Result<TopologySpec> {
    let get = |key: &str| -> Result<&str> {
        params
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::invalid(format!("{kind} topology needs `{key}`")))
    };
    let int = |key: &str| -> Result<usize> {
        get(key)?
            .parse()
            .map_err(|_| Error::invalid(format!("`{key}` must be a non-negative integer")))
    };
    let real = |key: &str| -> Result<f64> {
        get(key)?
            .parse()
            .map_err(|_| Error::invalid(format!("`{key}` must be a number")))
    };
    let allowed: &[&str] = match kind {
        "complete" | "star" | "ring" => &[],
        "core-periphery" => &["core"],
        "ring-core-star" => &["hubs"],
        "multi-ring" => &["levels"],
        "von-neumann" => &["rows", "cols"],
        "scale-free" => &["attach", "seed"],
        "random" => &["p", "seed"],
        "small-world" => &["degree", "rewire", "seed"],
        other => return Err(Error::invalid(format!("unknown topology kind `{other}`"))),
    };
    for key in params.keys() {
        if key != "n" && key != "id" && !allowed.contains(&key.as_str()) {
            return Err(Error::invalid(format!("`{key}` does not apply to {kind} topologies")));
        }
    }
    let n = int("n")?;
    let spec_kind = match kind {
        "complete" => TopologyKind::Complete,
        "star" => TopologyKind::Star,
        "ring" => TopologyKind::Ring,
        "core-periphery" => TopologyKind::CorePeriphery { core_size: int("core")? },
        "ring-core-star" => TopologyKind::RingCoreStar { hub_count: int("hubs")? },
        "multi-ring" => TopologyKind::MultiRing { ring_levels: int("levels")? },
        "von-neumann" => TopologyKind::VonNeumann {
            rows: int("rows")?,
            cols: int("cols")?,
        },
        "scale-free" => TopologyKind::ScaleFree {
            attach_count: int("attach")?,
        },
        "random" => TopologyKind::Random { edge_prob: real("p")? },
        _ => TopologyKind::SmallWorld {
            degree: int("degree")?,
            rewire_prob: real("rewire")?,
        },
    };
    let mut spec = TopologySpec::new(spec_kind, n);
    if params.contains_key("seed") {
        spec.seed = Some(
            get("seed")?
                .parse()
                .map_err(|_| Error::invalid("`seed` must be a non-negative integer"))?,
        );
    }
    Ok(spec)
}

/// The `topology = ...` value that reproduces `spec`.
pub fn topology_params(spec: &TopologySpec) -> String {
    let mut s = format!("{} n={}", spec.kind.name(), spec.node_count);
    match spec.kind {
        TopologyKind::Complete | TopologyKind::Star | TopologyKind::Ring => {}
        TopologyKind::CorePeriphery { core_size } => write!(s, " core={core_size}").unwrap(),
        TopologyKind::RingCoreStar { hub_count } => write!(s, " hubs={hub_count}").unwrap(),
        TopologyKind::MultiRing { ring_levels } => write!(s, " levels={ring_levels}").unwrap(),
        TopologyKind::VonNeumann { rows, cols } => write!(s, " rows={rows} cols={cols}").unwrap(),
        TopologyKind::ScaleFree { attach_count } => write!(s, " attach={attach_count}").unwrap(),
        TopologyKind::Random { edge_prob } => write!(s, " p={edge_prob}").unwrap(),
        TopologyKind::SmallWorld { degree, rewire_prob } => {
            write!(s, " degree={degree} rewire={rewire_prob}").unwrap()
        }
    }
    if let Some(seed) = spec.seed {
        write!(s, " seed={seed}").unwrap();
    }
    s
}

fn parse_topology_line(line: usize, value: &str) -> Result<Vec<PlanTopology>> {
    let mut words = value.split_whitespace();
    let kind = words
        .next()
        .ok_or_else(|| Error::parse(line, "topology needs a kind"))?;
    let mut params = BTreeMap::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value, got `{w}`")))?;
        if params.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(line, format!("repeated topology parameter `{k}`")));
        }
    }
    let at_line = |e: Error| match e {
        Error::InvalidParameter(m) => Error::parse(line, m),
        other => other,
    };
    if kind == "spectrum" {
        for k in params.keys() {
            if k != "n" && k != "per-segment" {
                return Err(Error::parse(line, format!("`{k}` does not apply to spectrum")));
            }
        }
        let field = |k: &str| -> Result<usize> {
            params
                .get(k)
                .ok_or_else(|| Error::parse(line, format!("spectrum needs `{k}`")))
                .and_then(|v| number(line, k, v))
        };
        return spectrum_topologies(field("n")?, field("per-segment")?).map_err(at_line);
    }
    let spec = topology_from_params(kind, &params).map_err(at_line)?;
    Ok(vec![match params.get("id") {
        Some(id) => PlanTopology::named(id.clone(), spec),
        None => PlanTopology::new(spec),
    }])
}

fn list<T: FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|v| v.trim())
        .filter(|v| !v.is_empty())
        .map(|v| number(line, key, v))
        .collect()
}

/// Parse a plan file.
pub fn parse_plan(text: &str) -> Result<ExperimentPlan> {
    let mut topologies = Vec::new();
    let mut scalars: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut neighborhood = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| Error::parse(line, "expected `key = value`"))?;
        match key {
            "topology" => topologies.extend(parse_topology_line(line, value)?),
            "neighborhood" => {
                if neighborhood.is_some() {
                    return Err(Error::parse(line, "repeated key `neighborhood`"));
                }
                neighborhood = Some(match value {
                    "include-self" => NeighborhoodMode::IncludeSelf,
                    "strict" => NeighborhoodMode::StrictNeighbors,
                    other => return Err(Error::parse(line, format!("unknown neighborhood `{other}`"))),
                });
            }
            k if SCALARS.contains(&k) => {
                if scalars.insert(k, (line, value)).is_some() {
                    return Err(Error::parse(line, format!("repeated key `{k}`")));
                }
            }
            other => {
                debug_assert!(!OTHER.contains(&other));
                return Err(Error::UnknownKey {
                    key: other.to_string(),
                    line,
                });
            }
        }
    }

    for key in REQUIRED {
        let present = if key == "topology" {
            !topologies.is_empty()
        } else {
            scalars.contains_key(key)
        };
        if !present {
            return Err(Error::MissingKey(key.to_string()));
        }
    }

    let (line, schema) = scalars["schema"];
    let schema: u32 = number(line, "schema", schema)?;
    if schema != PLAN_SCHEMA_VERSION {
        return Err(Error::parse(line, format!("unsupported schema version {schema}")));
    }

    let (line, objectives) = scalars["objectives"];
    let objectives = objectives
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            ObjectiveName::from_str(s)
                .map(ObjectiveSpec::default_spec)
                .map_err(|_| Error::parse(line, format!("unknown objective `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let (line, deaths) = scalars["death_fractions"];
    let death_fractions = list::<f64>(line, "death_fractions", deaths)?;

    let mut plan = ExperimentPlan::new(topologies, objectives, death_fractions);
    let get = |key: &str| scalars.get(key).copied();
    let (line, seed) = scalars["base_seed"];
    plan.base_seed = number(line, "base_seed", seed)?;
    if let Some((line, v)) = get("death_horizon") {
        plan.death_horizon = number(line, "death_horizon", v)?;
    }
    if let Some((line, v)) = get("repetitions") {
        plan.repetitions = number(line, "repetitions", v)?;
    }
    if let Some((line, v)) = get("alpha") {
        plan.alpha = number(line, "alpha", v)?;
    }
    if let Some((line, v)) = get("success") {
        plan.success.mode = match v {
            "position-radius" => SuccessMode::PositionRadius,
            "value-gap" => SuccessMode::ValueGap,
            other => return Err(Error::parse(line, format!("unknown success mode `{other}`"))),
        };
    }
    match (get("tolerance"), get("tolerance_fraction")) {
        (Some(_), Some((line, _))) => {
            return Err(Error::parse(line, "give either `tolerance` or `tolerance_fraction`, not both"))
        }
        (Some((line, v)), None) => plan.success.tolerance = Tolerance::Absolute(number(line, "tolerance", v)?),
        (None, Some((line, v))) => {
            plan.success.tolerance = Tolerance::RangeFraction(number(line, "tolerance_fraction", v)?)
        }
        (None, None) => {}
    }
    if let Some((line, v)) = get("agents") {
        plan.swarm.n_agents = number(line, "agents", v)?;
    }
    if let Some((line, v)) = get("max_iters") {
        plan.swarm.max_iters = number(line, "max_iters", v)?;
    }
    if let Some((line, v)) = get("chi") {
        plan.swarm.chi = number(line, "chi", v)?;
    }
    if let Some((line, v)) = get("phi1") {
        plan.swarm.phi1 = number(line, "phi1", v)?;
    }
    if let Some((line, v)) = get("phi2") {
        plan.swarm.phi2 = number(line, "phi2", v)?;
    }
    if let Some((line, v)) = get("velocity") {
        let bounds = list::<f64>(line, "velocity", v)?;
        let [lo, hi] = bounds.as_slice() else {
            return Err(Error::parse(line, "`velocity` takes two values: min, max"));
        };
        plan.swarm.v_min = *lo;
        plan.swarm.v_max = *hi;
    }
    if let Some(mode) = neighborhood {
        plan.swarm.neighborhood = mode;
    }
    plan.validate()?;
    Ok(plan)
}

/// Render a plan in the file format; `parse_plan` reads it back unchanged.
pub fn plan_to_text(plan: &ExperimentPlan) -> String {
    let mut s = String::new();
    let join = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(", ");
    writeln!(s, "schema = {PLAN_SCHEMA_VERSION}").unwrap();
    for t in &plan.topologies {
        writeln!(s, "topology = {} id={}", topology_params(&t.spec), t.id).unwrap();
    }
    let names: Vec<&str> = plan.objectives.iter().map(|o| o.name.as_str()).collect();
    writeln!(s, "objectives = {}", names.join(", ")).unwrap();
    writeln!(s, "death_fractions = {}", join(&plan.death_fractions)).unwrap();
    writeln!(s, "death_horizon = {}", plan.death_horizon).unwrap();
    writeln!(s, "repetitions = {}", plan.repetitions).unwrap();
    writeln!(s, "base_seed = {}", plan.base_seed).unwrap();
    let mode = match plan.success.mode {
        SuccessMode::PositionRadius => "position-radius",
        SuccessMode::ValueGap => "value-gap",
    };
    writeln!(s, "success = {mode}").unwrap();
    match plan.success.tolerance {
        Tolerance::Absolute(t) => writeln!(s, "tolerance = {t}").unwrap(),
        Tolerance::RangeFraction(f) => writeln!(s, "tolerance_fraction = {f}").unwrap(),
    }
    writeln!(s, "alpha = {}", plan.alpha).unwrap();
    let w = &plan.swarm;
    writeln!(s, "agents = {}", w.n_agents).unwrap();
    writeln!(s, "max_iters = {}", w.max_iters).unwrap();
    writeln!(s, "chi = {}", w.chi).unwrap();
    writeln!(s, "phi1 = {}", w.phi1).unwrap();
    writeln!(s, "phi2 = {}", w.phi2).unwrap();
    writeln!(s, "velocity = {}", join(&[w.v_min, w.v_max])).unwrap();
    let mode = match w.neighborhood {
        NeighborhoodMode::IncludeSelf => "include-self",
        NeighborhoodMode::StrictNeighbors => "strict",
    };
    writeln!(s, "neighborhood = {mode}").unwrap();
    s
}
