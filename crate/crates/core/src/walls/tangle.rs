//! Brute-force tangle predicates for small graphs.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Wall;
use crate::connectivity::blocks_and_cutvertices;
use crate::error::{Error, Result};
use crate::graph::{Graph, Separation, Vertex, VertexSet};

/// Upper limit on the number of separators examined by exhaustive checks.
pub const SEPARATOR_LIMIT: u64 = 2_000_000;

/// A set of separations of order below `order()`, given by membership.
pub trait TangleOracle {
    fn order(&self) -> usize;
    /// Whether `(left, right)` is in the tangle, i.e. `right` is the big side.
    fn contains(&self, left: &VertexSet, right: &VertexSet) -> bool;
}

/// `T_W`: the big side holds a complete horizontal path of the wall.
pub struct WallTangle {
    rows: Vec<VertexSet>,
    order: usize,
}

impl WallTangle {
    pub fn new(w: &Wall) -> Self {
        WallTangle {
            rows: w.horizontal_paths().iter().map(|p| p.vertex_set()).collect(),
            order: w.size(),
        }
    }

    fn holds_row(&self, side: &VertexSet) -> bool {
        self.rows.iter().any(|r| r.is_subset(side))
    }
}

impl TangleOracle for WallTangle {
    fn order(&self) -> usize {
        self.order
    }

    fn contains(&self, _left: &VertexSet, right: &VertexSet) -> bool {
        self.holds_row(right)
    }
}

/// The tangle of a clique: the big side holds the whole clique.
pub struct CliqueTangle {
    clique: VertexSet,
    order: usize,
}

impl CliqueTangle {
    /// Order `⌈2t/3⌉` for a clique on `t` vertices.
    pub fn new(clique: VertexSet) -> Self {
        let t = clique.len();
        CliqueTangle { order: (2 * t).div_ceil(3), clique }
    }
}

impl TangleOracle for CliqueTangle {
    fn order(&self) -> usize {
        self.order
    }

    fn contains(&self, _left: &VertexSet, right: &VertexSet) -> bool {
        self.clique.is_subset(right)
    }
}

/// Oracle from a closure, for experiments and negative tests.
pub struct FnOracle<F> {
    pub order: usize,
    pub f: F,
}

impl<F: Fn(&VertexSet, &VertexSet) -> bool> TangleOracle for FnOracle<F> {
    fn order(&self) -> usize {
        self.order
    }

    fn contains(&self, left: &VertexSet, right: &VertexSet) -> bool {
        (self.f)(left, right)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Side of `s` holding a complete horizontal path of `w`.
pub fn wall_tangle_side(w: &Wall, s: &Separation) -> Result<Side> {
    if s.order() >= w.size() {
        return Err(Error::OrderTooLarge { order: s.order(), limit: w.size() });
    }
    let t = WallTangle::new(w);
    match (t.holds_row(s.left()), t.holds_row(s.right())) {
        (false, true) => Ok(Side::Right),
        (true, false) => Ok(Side::Left),
        (l, r) => Err(Error::TangleViolation(format!(
            "horizontal paths on left: {l}, on right: {r}"
        ))),
    }
}

fn binomial_sum(n: usize, k: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for i in 0..k.min(n + 1) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    total
}

/// Every separation of order below `order`, both orientations. Sides are the
/// separator plus a union of components of `g - separator`.
pub fn enumerate_separations(g: &Graph, order: usize) -> Result<Vec<Separation>> {
    let n = g.vertex_count();
    let count = binomial_sum(n, order);
    if count > SEPARATOR_LIMIT {
        return Err(Error::TooLarge(format!(
            "{count} separators of order below {order} on {n} vertices"
        )));
    }
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    subsets(&verts, 0, order.saturating_sub(1), &mut chosen, &mut |sep: &[Vertex]| {
        let s: VertexSet = sep.iter().copied().collect();
        let comps = g.without(&s).components();
        if comps.len() > 24 {
            return Err(Error::TooLarge(format!("{} components after deleting {s:?}", comps.len())));
        }
        for mask in 0u32..(1 << comps.len()) {
            let mut left = s.clone();
            let mut right = s.clone();
            for (i, c) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 { right.extend(c) } else { left.extend(c) }
            }
            out.push(Separation::new_unchecked(left, right));
        }
        Ok(())
    })?;
    Ok(out)
}

fn subsets(
    verts: &[Vertex],
    from: usize,
    room: usize,
    chosen: &mut Vec<Vertex>,
    f: &mut dyn FnMut(&[Vertex]) -> Result<()>,
) -> Result<()> {
    f(chosen)?;
    if room == 0 {
        return Ok(());
    }
    for i in from..verts.len() {
        chosen.push(verts[i]);
        subsets(verts, i + 1, room - 1, chosen, f)?;
        chosen.pop();
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum Violation {
    /// Both or neither orientation is in the tangle.
    T1 { left: VertexSet, right: VertexSet },
    /// A small side is the whole vertex set.
    T2 { left: VertexSet, right: VertexSet },
    /// Three small sides cover the graph.
    T3 { sides: [VertexSet; 3] },
}

/// Checks (T1)-(T3) over every separation of order below the oracle's order.
pub fn check_tangle_axioms(g: &Graph, oracle: &dyn TangleOracle) -> Result<Option<Violation>> {
    let seps = enumerate_separations(g, oracle.order())?;
    let all = g.vertex_set();
    let mut small: Vec<VertexSet> = Vec::new();
    for s in &seps {
        let fwd = oracle.contains(s.left(), s.right());
        let back = oracle.contains(s.right(), s.left());
        if fwd == back {
            return Ok(Some(Violation::T1 { left: s.left().clone(), right: s.right().clone() }));
        }
        if fwd {
            if s.left() == &all {
                return Ok(Some(Violation::T2 { left: s.left().clone(), right: s.right().clone() }));
            }
            small.push(s.left().clone());
        }
    }
    Ok(find_cover(g, small))
}

/// Looks for three small sides whose induced subgraphs cover `g`.
fn find_cover(g: &Graph, mut small: Vec<VertexSet>) -> Option<Violation> {
    small.sort();
    small.dedup();
    // Only inclusion-maximal sides matter: unions are monotone.
    let maximal: Vec<VertexSet> = small
        .iter()
        .filter(|c| !small.iter().any(|d| d != *c && c.is_subset(d)))
        .cloned()
        .collect();
    let verts: Vec<Vertex> = g.vertices().collect();
    let index = |v: Vertex| verts.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (index(u), index(v))).collect();
    let bits: Vec<FixedBitSet> = maximal
        .iter()
        .map(|c| {
            let mut b = FixedBitSet::with_capacity(verts.len());
            for &v in c {
                b.insert(index(v));
            }
            b
        })
        .collect();
    let full = verts.len();
    for i in 0..bits.len() {
        for j in i..bits.len() {
            let ij = &bits[i] | &bits[j];
            for k in j..bits.len() {
                let u = &ij | &bits[k];
                if u.count_ones(..) != full {
                    continue;
                }
                let covered = edges.iter().all(|&(x, y)| {
                    [i, j, k].iter().any(|&t| bits[t].contains(x) && bits[t].contains(y))
                });
                if covered {
                    return Some(Violation::T3 {
                        sides: [maximal[i].clone(), maximal[j].clone(), maximal[k].clone()],
                    });
                }
            }
        }
    }
    None
}

/// The unique block `U` of `g - x` such that no separation in the tangle has
/// `x ∪ V(U)` inside its small side.
pub fn large_block(g: &Graph, oracle: &dyn TangleOracle, x: &VertexSet) -> Result<VertexSet> {
    if x.len() + 2 > oracle.order() {
        return Err(Error::OrderTooLarge { order: x.len(), limit: oracle.order().saturating_sub(2) });
    }
    let seps = enumerate_separations(g, oracle.order())?;
    let small: Vec<&VertexSet> = seps
        .iter()
        .filter(|s| oracle.contains(s.left(), s.right()))
        .map(|s| s.left())
        .collect();
    let rest = g.without(x);
    let found: Vec<VertexSet> = blocks_and_cutvertices(&rest)
        .into_iter()
        .map(|b| b.vertices)
        .filter(|u| {
            let xu: VertexSet = u.union(x).copied().collect();
            !small.iter().any(|c| xu.is_subset(c))
        })
        .collect();
    match <[VertexSet; 1]>::try_from(found) {
        Ok([u]) => Ok(u),
        Err(found) => Err(Error::TangleViolation(format!(
            "{} candidate large blocks",
            found.len()
        ))),
    }
}

/// Whether every separation of the wall's graph of order below `sub`'s size
/// is oriented the same way by both wall tangles.
pub fn subwall_tangle_truncation_check(w: &Wall, sub: &Wall) -> Result<bool> {
    let g = w.graph();
    let big = WallTangle::new(w);
    let small = WallTangle::new(sub);
    for s in enumerate_separations(g, sub.size())? {
        if big.contains(s.left(), s.right()) != small.contains(s.left(), s.right()) {
            return Ok(false);
        }
    }
    Ok(true)
}
