//! Reductions between path problems, explicit constructions and generators
//! of synthetic inputs.

mod counterexample;
mod gadget;
pub mod generate;
mod split;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use counterexample::{build_counterexample, d2_reduction, Counterexample};
pub use gadget::{
    block_gadget, gadget_precondition, pullback_gadget_hitting_set, GadgetInstance, GadgetTree, GADGET_DEPTHS,
};
pub use split::{bipartite_split, build_gamma_instance, pullback_split_hitting_set, SplitInstance};

use crate::graph::Vertex;

/// How a reduction maps the original instance into the new one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Original vertex to its images; absent vertices were deleted.
    pub forward_vertex_map: BTreeMap<Vertex, Vec<Vertex>>,
    /// Terminal to its images.
    pub a_map: BTreeMap<Vertex, Vec<Vertex>>,
    pub notes: BTreeMap<String, serde_json::Value>,
}
