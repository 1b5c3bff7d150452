//! Paths from `A` into walls: nice links, linkage selection and windmills
//! over odd bricks.

use std::collections::BTreeMap;

use serde::Serialize;

use super::reroute::reroute_two_families;
use super::Windmill;
use crate::error::{Error, Result};
use crate::flow::{menger_paths, min_cost_paths};
use crate::graph::{edge_key, pairwise_disjoint, Graph, Path, Vertex, VertexSet};
use crate::walls::{extract_subwall, Wall, WallWindow};

/// Checks that `paths` nicely link `a` to `w`: disjoint paths from `a`, each
/// ending in a distinct nail and otherwise avoiding `w` and `a`. Returns the
/// paths oriented from `a` to the nail.
pub fn nicely_linked_to_wall(g: &Graph, a: &VertexSet, w: &Wall, paths: &[Path]) -> Result<Vec<Path>> {
    if !pairwise_disjoint(paths) {
        return Err(Error::Precondition("linking paths are not disjoint".into()));
    }
    let nails = w.nail_set();
    paths
        .iter()
        .map(|p| {
            p.validate_in(g)?;
            let p = if nails.contains(&p.last()) { p.clone() } else { p.reversed() };
            let bad = !a.contains(&p.first())
                || !nails.contains(&p.last())
                || p.vertices()[..p.vertices().len() - 1].iter().any(|v| w.graph().contains(*v))
                || p.vertices()[1..].iter().any(|v| a.contains(v));
            if bad {
                return Err(Error::PreconditionWitness {
                    reason: "path does not nicely link to the wall".into(),
                    witness: p,
                });
            }
            Ok(p)
        })
        .collect()
}

/// Outcome of [`link_a_to_subwall`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubwallLink {
    Paths { subwall: Wall, paths: Vec<Path> },
    Separator { subwall: Wall, separator: VertexSet },
}

fn windows(w: &Wall, r: usize) -> impl Iterator<Item = Wall> + '_ {
    let last = w.size() + 1 - r;
    (1..=last)
        .flat_map(move |r0| (1..=last).map(move |k0| (r0, k0)))
        .map(move |(r0, k0)| extract_subwall(w, &WallWindow::square(r0, k0, r)).expect("window fits"))
}

/// A subwall `W1` of size `r` together with either `t` paths nicely linking
/// `a` to `W1` or fewer than `3t²` vertices separating `a` from `W1`.
pub fn link_a_to_subwall(g: &Graph, a: &VertexSet, w: &Wall, t: usize, r: usize) -> Result<SubwallLink> {
    let n = w.size();
    if t == 0 || r < t.max(2) || n < 4 * t * r {
        return Err(Error::InvalidParameters(format!(
            "need r >= t >= 1, r >= 2 and wall size >= 4tr, got t={t}, r={r}, size {n}"
        )));
    }
    if let Some(v) = a.iter().find(|v| w.graph().contains(**v)) {
        return Err(Error::Precondition(format!("terminal {v} lies on the wall")));
    }
    let w0 = extract_subwall(w, &WallWindow::square(t + 1, t + 1, n - 2 * t))?;
    let b = w0.branch_vertices();
    let target = 3 * t * t;
    let m = menger_paths(g, a, &b, &VertexSet::new());
    if m.paths.len() < target {
        let x = m.separator;
        let sub = windows(&w0, r)
            .find(|s| s.graph().vertices().all(|v| !x.contains(&v)))
            .ok_or_else(|| Error::Internal("every subwall meets the separator".into()))?;
        return Ok(SubwallLink::Separator { subwall: sub, separator: x });
    }
    let in_w0 = |u: Vertex, v: Vertex| w0.graph().has_edge(u, v);
    let q1 = min_cost_paths(g, a, &b, &VertexSet::new(), Some(target), |u, v| i64::from(!in_w0(u, v)));
    let used: VertexSet = q1.paths.iter().flat_map(|p| p.vertices()).copied().collect();
    for sub in windows(&w0, r).filter(|s| s.graph().vertices().all(|v| !used.contains(&v))) {
        let nails = sub.nail_set();
        let inner: VertexSet = sub.graph().vertices().filter(|v| !nails.contains(v)).collect();
        let m = menger_paths(g, a, &nails, &inner);
        if m.paths.len() >= t {
            let paths = m.paths.into_iter().take(t).collect();
            return Ok(SubwallLink::Paths { subwall: sub, paths });
        }
    }
    Err(Error::Internal("no subwall avoiding the routed paths could be linked".into()))
}

/// Output of [`select_link_and_linkage`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkSelection {
    /// `t` paths oriented from `A` to their nail.
    pub paths: Vec<Path>,
    pub linkage: Vec<Path>,
    /// Edge of the outer cycle removed to open it.
    pub edge: (Vertex, Vertex),
    /// The outer cycle minus `edge`, starting with the block of path ends.
    pub order: Vec<Vertex>,
}

/// Whether every vertex of `first` appears before every vertex of `second`
/// in `order`.
pub fn precedes(order: &[Vertex], first: &VertexSet, second: &VertexSet) -> bool {
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let last_first = first.iter().map(|v| pos.get(v)).max();
    let first_second = second.iter().map(|v| pos.get(v)).min();
    match (last_first, first_second) {
        (Some(Some(x)), Some(Some(y))) => x < y,
        (Some(None), _) | (_, Some(None)) => false,
        _ => true,
    }
}

/// From `3t` paths nicely linking `a` to `w` and a linkage of size `6t`,
/// selects `t` paths and `t` linkage paths, pairwise disjoint, with the path
/// ends preceding the linkage ends along the opened outer cycle.
pub fn select_link_and_linkage(
    g: &Graph,
    a: &VertexSet,
    w: &Wall,
    ps: &[Path],
    ls: &[Path],
) -> Result<LinkSelection> {
    let t = ps.len() / 3;
    if t < 2 || ps.len() != 3 * t || ls.len() != 6 * t {
        return Err(Error::Precondition(format!(
            "need 3t paths and 6t linkage paths with t >= 2, got {} and {}",
            ps.len(),
            ls.len()
        )));
    }
    crate::walls::linkage::validate_linkage(g, w, ls)?;
    let ps = nicely_linked_to_wall(g, a, w, ps)?;
    let nails = w.nail_set();
    let out = reroute_two_families(g, &nails, a, &nails, ls, &ps)?;
    let (l1, p1) = (out.kept, out.rerouted);

    let cycle = w.outer_cycle();
    let pos: BTreeMap<Vertex, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut p1: Vec<(usize, Path)> = p1.into_iter().map(|p| (pos[&p.last()], p)).collect();
    p1.sort();
    let groups: Vec<&[(usize, Path)]> = p1.chunks(t).collect();
    let mut best: Option<(usize, Vec<&Path>)> = None;
    for (i, grp) in groups.iter().enumerate() {
        let (lo, hi) = (grp[0].0, grp[t - 1].0);
        let j: Vec<&Path> = l1
            .iter()
            .filter(|l| [l.first(), l.last()].iter().all(|v| !(lo..=hi).contains(&pos[v])))
            .collect();
        if best.as_ref().is_none_or(|(_, b)| j.len() > b.len()) {
            best = Some((i, j));
        }
    }
    let (i, j) = best.expect("three groups");
    if j.len() < t {
        return Err(Error::Internal(format!("largest excluded linkage set has {} < {t} paths", j.len())));
    }
    let start = groups[i][0].0;
    let len = cycle.len();
    let order: Vec<Vertex> = (0..len).map(|k| cycle[(start + k) % len]).collect();
    Ok(LinkSelection {
        paths: groups[i].iter().map(|(_, p)| p.clone()).collect(),
        linkage: j.into_iter().take(t).cloned().collect(),
        edge: edge_key(cycle[(start + len - 1) % len], cycle[start]),
        order,
    })
}

/// Builds `k` disjoint windmills with tips in `a` from paths nicely linking
/// `a` to a wall whose bricks are all odd. Paths are taken left to right so
/// that their top bricks are disjoint; consecutive triples form a windmill
/// hung from the third row.
pub fn windmills_from_odd_wall(
    g: &Graph,
    a: &VertexSet,
    w: &Wall,
    paths: &[Path],
    k: usize,
) -> Result<Vec<Windmill>> {
    let n = w.size();
    for r in 1..=n {
        for j in 1..=n {
            if w.brick(r, j).len().is_multiple_of(2) {
                return Err(Error::Precondition(format!("brick ({r}, {j}) is even")));
            }
        }
    }
    let paths = nicely_linked_to_wall(g, a, w, paths)?;
    let index: BTreeMap<Vertex, usize> = w.nails().iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
    let mut by_nail: Vec<(usize, Path)> = paths.into_iter().map(|p| (index[&p.last()], p)).collect();
    by_nail.sort();
    let mut chosen: Vec<(usize, Path)> = Vec::new();
    for (j, p) in by_nail {
        if chosen.last().is_none_or(|(i, _)| j >= i + 2) {
            chosen.push((j, p));
        }
    }
    if chosen.len() < 3 * k {
        return Err(Error::Precondition(format!(
            "only {} paths end in pairwise disjoint bricks, need {}",
            chosen.len(),
            3 * k
        )));
    }
    let mut out = Vec::new();
    for trio in chosen.chunks(3).take(k) {
        let hub_col = 2 * trio[1].0;
        let mut arms = Vec::new();
        let mut cycles = Vec::new();
        for (j, p) in trio {
            let c = 2 * j;
            let mut walk: Vec<(usize, usize)> = if c <= hub_col {
                (c..=hub_col).rev().map(|x| (3, x)).collect()
            } else {
                (hub_col..=c).map(|x| (3, x)).collect()
            };
            walk.extend([(2, c), (2, c - 1), (1, c - 1), (1, c)]);
            arms.push(w.trace(&walk)?.join(&p.reversed())?);
            cycles.push(w.brick(1, *j));
        }
        let wm = Windmill {
            hub: w.coord((3, hub_col)).expect("third row exists"),
            arms: arms.try_into().expect("three arms"),
            cycles: cycles.try_into().expect("three cycles"),
        };
        wm.validate()?;
        out.push(wm);
    }
    Ok(out)
}
