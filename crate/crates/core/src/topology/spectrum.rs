//! The complete → star → ring → complete traversal of deterministic graphs.

use serde::{Deserialize, Serialize};

use super::{Graph, TopologyKind, TopologySpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Segment {
    CompleteToStar,
    StarToRing,
    RingToComplete,
}

impl Segment {
    pub const ALL: [Segment; 3] = [Segment::CompleteToStar, Segment::StarToRing, Segment::RingToComplete];

    pub fn ordinal(self) -> usize {
        self as usize
    }
}

/// Position of a graph on the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectrumIndex {
    pub segment: Segment,
    pub step: usize,
}

impl SpectrumIndex {
    pub fn from_flat(index: usize, per_segment: usize) -> Result<Self> {
        if per_segment == 0 || index >= 3 * per_segment {
            return Err(Error::invalid(format!(
                "spectrum index {index} out of range for {per_segment} per segment"
            )));
        }
        Ok(SpectrumIndex {
            segment: Segment::ALL[index / per_segment],
            step: index % per_segment,
        })
    }

    pub fn flat(&self, per_segment: usize) -> usize {
        self.segment.ordinal() * per_segment + self.step
    }
}

/// One spectrum graph with the family parameter that produced it.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub index: SpectrumIndex,
    pub spec: TopologySpec,
    pub graph: Graph,
}

impl SpectrumEntry {
    /// The realized core size, hub count or ring level.
    pub fn parameter(&self) -> usize {
        match self.spec.kind {
            TopologyKind::CorePeriphery { core_size } => core_size,
            TopologyKind::RingCoreStar { hub_count } => hub_count,
            TopologyKind::MultiRing { ring_levels } => ring_levels,
            _ => unreachable!("spectrum entries are built from the three spectrum families"),
        }
    }
}

/// `count` integers evenly spaced from `start` to `end` inclusive, rounded to
/// nearest. When the range holds fewer than `count` distinct values the
/// nearest levels repeat.
fn sample_levels(start: usize, end: usize, count: usize) -> Vec<usize> {
    let (a, b) = (start as f64, end as f64);
    (0..count)
        .map(|s| (a + (b - a) * s as f64 / (count - 1) as f64).round() as usize)
        .collect()
}

/// Topology specs along the spectrum, without building the graphs.
pub fn spectrum_specs(n: usize, per_segment: usize) -> Result<Vec<(SpectrumIndex, TopologySpec)>> {
    if n < 3 {
        return Err(Error::invalid("spectrum needs n >= 3"));
    }
    if per_segment < 2 {
        return Err(Error::invalid("spectrum needs at least 2 graphs per segment"));
    }
    let mut out = Vec::with_capacity(3 * per_segment);
    for segment in Segment::ALL {
        let levels = match segment {
            Segment::CompleteToStar => sample_levels(n, 1, per_segment),
            Segment::StarToRing => sample_levels(1, n, per_segment),
            Segment::RingToComplete => sample_levels(1, n / 2, per_segment),
        };
        for (step, level) in levels.into_iter().enumerate() {
            let kind = match segment {
                Segment::CompleteToStar => TopologyKind::CorePeriphery { core_size: level },
                Segment::StarToRing => TopologyKind::RingCoreStar { hub_count: level },
                Segment::RingToComplete => TopologyKind::MultiRing { ring_levels: level },
            };
            out.push((SpectrumIndex { segment, step }, TopologySpec::new(kind, n)));
        }
    }
    Ok(out)
}

/// All `3 * per_segment` spectrum graphs in topology-index order.
pub fn build_spectrum(n: usize, per_segment: usize) -> Result<Vec<SpectrumEntry>> {
    spectrum_specs(n, per_segment)?
        .into_iter()
        .map(|(index, spec)| {
            Ok(SpectrumEntry {
                index,
                spec,
                graph: spec.build()?,
            })
        })
        .collect()
}
