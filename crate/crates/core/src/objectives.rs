//! Benchmark objective functions.
//!
//! Shekel is maximized; Ackley, Griewank, Schwefel and Rastrigin are
//! minimized. The engine always maximizes a *score*, which is the objective
//! value for maximized functions and its negation otherwise.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameter file shipped with the crate.
pub const OBJECTIVE_DATA: &str = include_str!("../data/objectives.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveName {
    Shekel,
    Ackley,
    Griewank,
    Schwefel,
    Rastrigin,
}

impl ObjectiveName {
    pub const ALL: [ObjectiveName; 5] = [
        ObjectiveName::Shekel,
        ObjectiveName::Ackley,
        ObjectiveName::Griewank,
        ObjectiveName::Schwefel,
        ObjectiveName::Rastrigin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ObjectiveName::Shekel => "shekel",
            ObjectiveName::Ackley => "ackley",
            ObjectiveName::Griewank => "griewank",
            ObjectiveName::Schwefel => "schwefel",
            ObjectiveName::Rastrigin => "rastrigin",
        }
    }
}

impl fmt::Display for ObjectiveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObjectiveName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ObjectiveName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::invalid(format!("unknown objective `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Maximize,
    Minimize,
}

/// Shekel foxholes: `m` optima with depths `c` and locations `a` (one row
/// per optimum).
#[derive(Debug, Clone, PartialEq)]
pub struct ShekelParams {
    pub c: Vec<f64>,
    pub a: Vec<Vec<f64>>,
}

impl ShekelParams {
    pub fn m(&self) -> usize {
        self.c.len()
    }

    pub fn dimension(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AckleyParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveParams {
    pub shekel: ShekelParams,
    pub ackley: AckleyParams,
}

impl ObjectiveParams {
    /// Parameters from the shipped data file.
    pub fn standard() -> &'static ObjectiveParams {
        static PARAMS: OnceLock<ObjectiveParams> = OnceLock::new();
        PARAMS.get_or_init(|| parse_objective_data(OBJECTIVE_DATA).expect("shipped objective data parses"))
    }
}

/// Parse the objective parameter format: `#` comments, `shekel c a1 .. an`
/// lines and a single `ackley a b c` line.
pub fn parse_objective_data(text: &str) -> Result<ObjectiveParams> {
    let mut c = Vec::new();
    let mut a: Vec<Vec<f64>> = Vec::new();
    let mut ackley = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let key = fields.next().unwrap_or_default();
        let values = fields
            .map(|f| f.parse::<f64>().map_err(|_| Error::parse(line, format!("bad number `{f}`"))))
            .collect::<Result<Vec<f64>>>()?;
        match key {
            "shekel" => {
                if values.len() < 2 {
                    return Err(Error::parse(line, "shekel line needs c and a location"));
                }
                if values[0] <= 0.0 {
                    return Err(Error::parse(line, "shekel c must be positive"));
                }
                if let Some(first) = a.first() {
                    if first.len() != values.len() - 1 {
                        return Err(Error::parse(line, "shekel locations differ in dimension"));
                    }
                }
                c.push(values[0]);
                a.push(values[1..].to_vec());
            }
            "ackley" => {
                let [pa, pb, pc] = values.as_slice() else {
                    return Err(Error::parse(line, "ackley line needs a, b, c"));
                };
                ackley = Some(AckleyParams { a: *pa, b: *pb, c: *pc });
            }
            other => return Err(Error::parse(line, format!("unknown entry `{other}`"))),
        }
    }
    if c.is_empty() {
        return Err(Error::MissingKey("shekel".into()));
    }
    Ok(ObjectiveParams {
        shekel: ShekelParams { c, a },
        ackley: ackley.ok_or_else(|| Error::MissingKey("ackley".into()))?,
    })
}

/// A benchmark function with its search box and known optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub name: ObjectiveName,
    pub dimension: usize,
    /// Closed interval per coordinate.
    pub range: Vec<(f64, f64)>,
    pub direction: Direction,
    pub optimum_location: Vec<f64>,
    pub optimum_value: f64,
}

impl ObjectiveSpec {
    /// Default dimension, range and optimum for `name`.
    pub fn default_spec(name: ObjectiveName) -> Self {
        let dimension = match name {
            ObjectiveName::Shekel => ObjectiveParams::standard().shekel.dimension(),
            _ => 2,
        };
        Self::build(name, dimension)
    }

    /// Same function at another dimension. Shekel is fixed by its parameter
    /// matrix and cannot be resized.
    pub fn with_dimension(name: ObjectiveName, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if name == ObjectiveName::Shekel && dimension != ObjectiveParams::standard().shekel.dimension() {
            return Err(Error::invalid("Shekel dimension is fixed by its parameter set"));
        }
        Ok(Self::build(name, dimension))
    }

    fn build(name: ObjectiveName, dimension: usize) -> Self {
        let (bounds, optimum, direction) = match name {
            ObjectiveName::Shekel => ((0.0, 10.0), 4.0, Direction::Maximize),
            ObjectiveName::Ackley => ((-15.0, 30.0), 0.0, Direction::Minimize),
            ObjectiveName::Griewank => ((-600.0, 600.0), 0.0, Direction::Minimize),
            ObjectiveName::Schwefel => ((-500.0, 500.0), 420.9687, Direction::Minimize),
            ObjectiveName::Rastrigin => ((-5.12, 5.12), 0.0, Direction::Minimize),
        };
        let optimum_location = vec![optimum; dimension];
        let optimum_value = value(name, &optimum_location);
        ObjectiveSpec {
            name,
            dimension,
            range: vec![bounds; dimension],
            direction,
            optimum_location,
            optimum_value,
        }
    }

    /// Objective value at `x`. Points outside the range are evaluated as-is.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::invalid(format!(
                "{} expects {} coordinates, got {}",
                self.name,
                self.dimension,
                x.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite coordinate"));
        }
        Ok(value(self.name, x))
    }

    /// Length of the diagonal of the search box.
    pub fn range_diagonal(&self) -> f64 {
        self.range.iter().map(|(lo, hi)| (hi - lo).powi(2)).sum::<f64>().sqrt()
    }

    /// Whether `a` is a better objective value than `b`.
    pub fn is_better(&self, a: f64, b: f64) -> bool {
        match self.direction {
            Direction::Maximize => a > b,
            Direction::Minimize => a < b,
        }
    }
}

fn value(name: ObjectiveName, x: &[f64]) -> f64 {
    let params = ObjectiveParams::standard();
    match name {
        ObjectiveName::Shekel => shekel(&params.shekel, x),
        ObjectiveName::Ackley => ackley(&params.ackley, x),
        ObjectiveName::Griewank => griewank(x),
        ObjectiveName::Schwefel => schwefel(x),
        ObjectiveName::Rastrigin => rastrigin(x),
    }
}

pub fn shekel(p: &ShekelParams, x: &[f64]) -> f64 {
    p.c.iter()
        .zip(&p.a)
        .map(|(ci, ai)| {
            let d2: f64 = x.iter().zip(ai).map(|(xj, aj)| (xj - aj).powi(2)).sum();
            1.0 / (ci + d2)
        })
        .sum()
}

pub fn ackley(p: &AckleyParams, x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cos = x.iter().map(|v| (p.c * v).cos()).sum::<f64>() / n;
    -p.a * (-p.b * sq.sqrt()).exp() - cos.exp() + p.a + E
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

pub fn schwefel(x: &[f64]) -> f64 {
    418.9829 * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos())
            .sum::<f64>()
}

/// A search landscape as seen by the swarm: higher score is better.
pub trait Landscape: Sync {
    fn dimension(&self) -> usize;

    /// Initialization interval for coordinate `i`.
    fn bounds(&self, i: usize) -> (f64, f64);

    /// Score at `x`; `x.len()` equals `dimension()`.
    fn score(&self, x: &[f64]) -> f64;
}

impl Landscape for ObjectiveSpec {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn bounds(&self, i: usize) -> (f64, f64) {
        self.range[i]
    }

    fn score(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        let v = value(self.name, x);
        match self.direction {
            Direction::Maximize => v,
            Direction::Minimize => -v,
        }
    }
}
