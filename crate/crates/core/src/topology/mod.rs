//! Communication graphs for the swarm.

mod edgelist;
mod generators;
mod graph;
mod spec;
mod spectrum;

pub use edgelist::{parse_edge_list, to_edge_list};
pub use generators::{
    make_complete, make_core_periphery, make_multi_ring, make_random, make_random_with_edges,
    make_ring, make_ring_core_star, make_scale_free, make_small_world, make_star, make_von_neumann,
};
pub use graph::Graph;
pub use spec::{TopologyKind, TopologySpec};
pub use spectrum::{build_spectrum, spectrum_specs, Segment, SpectrumEntry, SpectrumIndex};
