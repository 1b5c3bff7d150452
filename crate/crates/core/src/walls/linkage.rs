//! Linkages: disjoint nail-to-nail paths outside a wall.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Wall;
use crate::connectivity::{is_bipartite, two_colouring};
use crate::error::{Error, Result};
use crate::graph::{pairwise_disjoint, Graph, Path, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkageKind {
    InSeries,
    Crossing,
    Nested,
    Mixed,
}

impl LinkageKind {
    pub fn is_pure(self) -> bool {
        self != LinkageKind::Mixed
    }
}

/// Classifies endpoint pairs given as positions in the nail order. A family
/// with fewer than two paths counts as in series.
pub fn classify_endpoint_pairs(pairs: &[(usize, usize)]) -> LinkageKind {
    let mut ps: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    ps.sort_unstable();
    let all = |f: &dyn Fn((usize, usize), (usize, usize)) -> bool| {
        ps.iter().enumerate().all(|(i, &p)| ps[i + 1..].iter().all(|&q| f(p, q)))
    };
    // Pairs are sorted, so p.0 < q.0 below.
    if all(&|p, q| p.1 < q.0) {
        LinkageKind::InSeries
    } else if all(&|p, q| q.0 < p.1 && p.1 < q.1) {
        LinkageKind::Crossing
    } else if all(&|p, q| q.1 < p.1) {
        LinkageKind::Nested
    } else {
        LinkageKind::Mixed
    }
}

/// Nail positions (0-based, left to right) of a path's ends, smaller first.
pub fn endpoint_positions(w: &Wall, p: &Path) -> Result<(usize, usize)> {
    let pos: BTreeMap<Vertex, usize> = w.nails().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let (a, b) = (pos.get(&p.first()), pos.get(&p.last()));
    match (a, b) {
        (Some(&a), Some(&b)) if a != b => Ok((a.min(b), a.max(b))),
        _ => Err(Error::InvalidLinkage(format!("{p:?} does not join two distinct nails"))),
    }
}

/// Checks that `paths` form a linkage of `w` in `g`: disjoint nail-to-nail
/// paths living in `g - (W - N)`.
pub fn validate_linkage(g: &Graph, w: &Wall, paths: &[Path]) -> Result<()> {
    if !pairwise_disjoint(paths) {
        return Err(Error::InvalidLinkage("paths intersect".into()));
    }
    let nails = w.nail_set();
    for p in paths {
        p.validate_in(g)?;
        endpoint_positions(w, p)?;
        if let Some(v) = p.interior().iter().find(|v| w.graph().contains(**v)) {
            return Err(Error::InvalidLinkage(format!("{p:?} meets the wall at {v}")));
        }
        if p.length() == 1 && w.graph().has_edge(p.first(), p.last()) {
            return Err(Error::InvalidLinkage(format!("{p:?} is a wall edge")));
        }
        debug_assert!(nails.contains(&p.first()));
    }
    Ok(())
}

pub fn classify_linkage(g: &Graph, w: &Wall, paths: &[Path]) -> Result<LinkageKind> {
    validate_linkage(g, w, paths)?;
    let pairs = paths.iter().map(|p| endpoint_positions(w, p)).collect::<Result<Vec<_>>>()?;
    Ok(classify_endpoint_pairs(&pairs))
}

/// Whether every path `P` makes `W ∪ P` non-bipartite. Requires a bipartite
/// wall.
pub fn is_odd_linkage(g: &Graph, w: &Wall, paths: &[Path]) -> Result<bool> {
    validate_linkage(g, w, paths)?;
    let colour = two_colouring(w.graph(), &VertexSet::new())
        .ok_or_else(|| Error::InvalidWall("wall is not bipartite".into()))?;
    Ok(paths.iter().all(|p| {
        // W is connected, so W ∪ P is bipartite iff P's parity matches the
        // colours of its ends.
        let same = colour[&p.first()] == colour[&p.last()];
        same == (p.length() % 2 == 1)
    }))
}

/// Direct check of `W ∪ P` by 2-colouring, independent of parity shortcuts.
pub fn union_is_bipartite(w: &Wall, p: &Path) -> bool {
    let mut h = w.graph().clone();
    for &v in p.vertices() {
        h.add_vertex(v);
    }
    for (u, v) in p.edges() {
        h.add_edge(u, v).expect("path edges are simple");
    }
    is_bipartite(&h)
}
