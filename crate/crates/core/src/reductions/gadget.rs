//! Replacing the bridges of a bipartite block by small trees.

use serde::Serialize;
use serde_json::json;

use super::ReductionTrace;
use crate::connectivity::{b_bridges, blocks_and_cutvertices, is_bipartite};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::modpath::{enumerate_a_paths, find_zero_a_path, ResidueSpec, DEFAULT_CAP};

/// Length of the path from a terminal through leaf `t_p` to the root, for
/// `p = 0, 1, 2, 3`. Each is congruent to `p` modulo 4.
pub const GADGET_DEPTHS: [usize; 4] = [4, 5, 2, 3];

/// One replacement tree, rooted at the cutvertex shared with the block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetTree {
    pub root: Vertex,
    /// The bridge the tree replaces.
    pub bridge: VertexSet,
    /// Tree vertices other than the root.
    pub vertices: Vec<Vertex>,
    /// `t_0, t_1, t_2, t_3`.
    pub leaves: [Vertex; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub trees: Vec<GadgetTree>,
    pub trace: ReductionTrace,
}

/// Fails with a witness if some zero `A`-path has its interior inside one
/// bridge of `block` in `g - a`; returns the bridges otherwise.
pub fn gadget_precondition(g: &Graph, a: &VertexSet, block: &VertexSet) -> Result<Vec<VertexSet>> {
    let h = g.without(a);
    if !h.is_connected() {
        return Err(Error::Precondition("graph minus terminals is not connected".into()));
    }
    if !blocks_and_cutvertices(&h).iter().any(|b| &b.vertices == block) {
        return Err(Error::NotABlock(block.iter().copied().collect()));
    }
    if !is_bipartite(&h.induced(block)) {
        return Err(Error::NotBipartite("block is not bipartite".into()));
    }
    let bridges = b_bridges(&h, block)?;
    for bridge in &bridges {
        let keep: VertexSet = bridge.union(a).copied().collect();
        if let Some(p) = find_zero_a_path(&g.induced(&keep), a, ResidueSpec::zero_mod_4()) {
            return Err(Error::PreconditionWitness {
                reason: "a zero A-path runs inside a bridge".into(),
                witness: p,
            });
        }
    }
    Ok(bridges)
}

/// `G[A ∪ B]` with each `B`-bridge replaced by a tree whose leaf `t_p` is
/// joined to every terminal that reaches the bridge's cutvertex through the
/// bridge by a path of length `p` modulo 4.
pub fn block_gadget(g: &Graph, a: &VertexSet, block: &VertexSet) -> Result<GadgetInstance> {
    let bridges = gadget_precondition(g, a, block)?;
    let keep: VertexSet = block.union(a).copied().collect();
    let mut h = g.induced(&keep);
    let mut trace = ReductionTrace::default();
    for &v in &keep {
        trace.forward_vertex_map.insert(v, vec![v]);
    }
    for &v in a {
        trace.a_map.insert(v, vec![v]);
    }
    // Tree vertices get ids above every vertex of `g`, so they never collide
    // with deleted bridge vertices.
    let mut next = g.next_id();
    let mut trees = Vec::new();
    for bridge in bridges {
        let root = *bridge.intersection(block).next().expect("bridge meets the block");
        let ids: Vec<Vertex> = (next..next + 9).collect();
        next += 9;
        for &v in &ids {
            h.add_vertex(v);
        }
        let [z, n1, n2, t1, t3, t2, m1, m2, t0] = ids[..] else { unreachable!() };
        for (u, v) in [(root, z), (z, n1), (n1, n2), (n2, t1), (z, t3), (root, t2), (root, m1), (m1, m2), (m2, t0)] {
            h.add_edge(u, v)?;
        }
        let leaves = [t0, t1, t2, t3];
        for &x in a {
            let mut sub: VertexSet = bridge.clone();
            sub.insert(x);
            let ends: VertexSet = [x, root].into();
            let paths = enumerate_a_paths(&g.induced(&sub), &ends, ResidueSpec::any(), Some(DEFAULT_CAP))?;
            let residues: VertexSet = paths.iter().map(|p| p.length() % 4).collect();
            for p in residues {
                h.add_edge(x, leaves[p])?;
            }
        }
        trees.push(GadgetTree { root, bridge, vertices: ids, leaves });
    }
    for t in &trees {
        let mut keep: VertexSet = t.vertices.iter().copied().collect();
        keep.insert(t.root);
        keep.extend(a);
        if let Some(p) = find_zero_a_path(&h.induced(&keep), a, ResidueSpec::zero_mod_4()) {
            return Err(Error::Internal(format!("zero A-path {p:?} inside a gadget tree")));
        }
    }
    trace.notes.insert("trees".into(), json!(trees));
    Ok(GadgetInstance { graph: h, trees, trace })
}

/// `(X* ∩ V(G)) ∪ {b_i : X* meets T_i}`.
pub fn pullback_gadget_hitting_set(g: &Graph, inst: &GadgetInstance, x_star: &VertexSet) -> VertexSet {
    let mut x: VertexSet = x_star.iter().copied().filter(|&v| g.contains(v)).collect();
    for t in &inst.trees {
        if x_star.contains(&t.root) || t.vertices.iter().any(|v| x_star.contains(v)) {
            x.insert(t.root);
        }
    }
    x
}
