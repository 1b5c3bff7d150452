//! Seeded generators of synthetic inputs. Every output is a deterministic
//! function of the seed and the parameters.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gadget_precondition;
use crate::connectivity::two_colouring;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex, VertexSet};
use crate::surgery::{CliqueModel, Windmill};
use crate::walls::linkage::{is_odd_linkage, LinkageKind};
use crate::walls::{build_elementary_wall, subdivide_wall, SubdivisionRule, Wall};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A windmill with the given arm lengths and odd cycle lengths, and the host
/// graph it spans. Arm `i` shares a random stretch of at least one edge with
/// cycle `i`; the stretch may start at the hub.
pub fn generate_windmill(seed: u64, arms: [usize; 3], cycles: [usize; 3]) -> Result<(Windmill, Graph)> {
    for i in 0..3 {
        if cycles[i] < 3 || cycles[i].is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!("cycle length {} is not odd and >= 3", cycles[i])));
        }
        if arms[i] == 0 {
            return Err(Error::InvalidParameters("arm lengths must be positive".into()));
        }
    }
    let mut rng = rng(seed);
    let mut g = Graph::with_vertices(1);
    let hub = 0;
    let mut out_arms = Vec::new();
    let mut out_cycles = Vec::new();
    for i in 0..3 {
        let arm = {
            let tip = g.fresh_vertex();
            g.add_path(hub, tip, arms[i])?
        };
        let s = rng.random_range(1..=arms[i].min(cycles[i] - 2));
        let p = rng.random_range(0..=arms[i] - s);
        let (x, y) = (arm.vertices()[p], arm.vertices()[p + s]);
        let back = g.add_path(y, x, cycles[i] - s)?;
        let mut cyc = arm.vertices()[p..=p + s].to_vec();
        cyc.extend(&back.vertices()[1..back.vertices().len() - 1]);
        out_arms.push(arm);
        out_cycles.push(cyc);
    }
    let w = Windmill {
        hub,
        arms: out_arms.try_into().expect("three arms"),
        cycles: out_cycles.try_into().expect("three cycles"),
    };
    w.validate()?;
    Ok((w, g))
}

/// A windmill with arms of length 1 to 6 and odd cycles of length 3 to 9.
pub fn generate_random_windmill(seed: u64) -> Result<(Windmill, Graph)> {
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let arms = [0; 3].map(|_| rng.random_range(1..=6));
    let cycles = [0; 3].map(|_| 2 * rng.random_range(1..=4) + 1);
    generate_windmill(seed, arms, cycles)
}

/// An `n`-wall in which every brick is an odd cycle. Elementary edges get
/// random lengths 1 to 4; bricks are then fixed layer by layer by changing
/// the length of their lower-left bottom edge, which no earlier brick uses.
pub fn generate_odd_brick_wall(seed: u64, n: usize) -> Result<Wall> {
    let w = build_elementary_wall(n)?;
    let mut rng = rng(seed);
    let mut rule = SubdivisionRule::uniform(1);
    let edges: Vec<_> = w.elementary_edges().collect();
    for &(a, b) in &edges {
        rule = rule.with(a, b, rng.random_range(1..=4));
    }
    for r in 1..=n {
        for j in 1..=n {
            let walk = w.brick_walk(r, j);
            let len: usize = (0..6).map(|k| rule.length(walk[k], walk[(k + 1) % 6])).sum();
            if len.is_multiple_of(2) {
                let (a, b) = (walk[5], walk[4]);
                let l = rule.length(a, b);
                rule = rule.with(a, b, if l == 1 { 2 } else { l - 1 });
            }
        }
    }
    let out = subdivide_wall(&w, &rule)?;
    debug_assert!(out.bricks().iter().all(|c| c.len() % 2 == 1));
    Ok(out)
}

/// Endpoint pairs (0-based positions among the chosen nails) of a pure
/// linkage of the given kind and size.
pub fn linkage_pattern(kind: LinkageKind, size: usize) -> Result<Vec<(usize, usize)>> {
    Ok(match kind {
        LinkageKind::InSeries => (0..size).map(|i| (2 * i, 2 * i + 1)).collect(),
        LinkageKind::Crossing => (0..size).map(|i| (i, size + i)).collect(),
        LinkageKind::Nested => (0..size).map(|i| (i, 2 * size - 1 - i)).collect(),
        LinkageKind::Mixed => return Err(Error::InvalidParameters("mixed is not a pure pattern".into())),
    })
}

/// Adds an odd linkage of `size` paths to a copy of the bipartite wall `w`.
/// The nails used are `nails` (0-based, increasing) or a random choice;
/// path lengths are random, or congruent to `residue` modulo 4 when given.
pub fn generate_odd_linkage(
    seed: u64,
    w: &Wall,
    kind: LinkageKind,
    size: usize,
    nails: Option<&[usize]>,
    residue: Option<usize>,
) -> Result<(Graph, Vec<Path>)> {
    let mut rng = rng(seed);
    let all = w.nails();
    let chosen: Vec<usize> = match nails {
        Some(ns) => ns.to_vec(),
        None => {
            if 2 * size > all.len() {
                return Err(Error::InvalidParameters(format!("{} nails cannot carry {size} paths", all.len())));
            }
            let mut ns = sample(&mut rng, all.len(), 2 * size).into_vec();
            ns.sort_unstable();
            ns
        }
    };
    if chosen.len() != 2 * size || chosen.windows(2).any(|p| p[0] >= p[1]) || chosen.last() >= Some(&all.len()) {
        return Err(Error::InvalidParameters("nail positions must be increasing and in range".into()));
    }
    let colour = two_colouring(w.graph(), &VertexSet::new())
        .ok_or_else(|| Error::InvalidWall("wall is not bipartite".into()))?;
    let mut g = w.graph().clone();
    let mut paths = Vec::new();
    for (x, y) in linkage_pattern(kind, size)? {
        let (u, v) = (all[chosen[x]], all[chosen[y]]);
        let parity = usize::from(colour[&u] == colour[&v]);
        let len = match residue {
            Some(r) if r % 2 != parity => {
                return Err(Error::InvalidParameters(format!("residue {r} has the wrong parity for an odd path")));
            }
            Some(r) => {
                let base = if r < 2 { r + 4 } else { r };
                base + 4 * rng.random_range(0..2)
            }
            None => 2 * rng.random_range(1..=4) + parity,
        };
        paths.push(g.add_path(u, v, len)?);
    }
    debug_assert!(is_odd_linkage(&g, w, &paths).unwrap_or(false));
    Ok((g, paths))
}

/// An odd `K_t`-model: each branch set is a spider whose legs end in the
/// ports towards the other sets. The legs towards each other of two sets
/// have lengths of equal parity, so every triangle cycle is odd.
pub fn generate_odd_clique_model(seed: u64, t: usize) -> Result<(Graph, CliqueModel)> {
    if t < 3 {
        return Err(Error::InvalidParameters(format!("need t >= 3, got {t}")));
    }
    let mut rng = rng(seed);
    let mut legs = BTreeMap::new();
    for i in 0..t {
        for j in i + 1..t {
            let a: usize = rng.random_range(1..=3);
            let b = if a == 2 { 2 } else { [1, 3][rng.random_range(0..2)] };
            legs.insert((i, j), a);
            legs.insert((j, i), b);
        }
    }
    let mut g = Graph::with_vertices(t);
    let mut branch_sets: Vec<VertexSet> = (0..t).map(|i| [i].into()).collect();
    let mut ports = BTreeMap::new();
    for i in 0..t {
        for j in (0..t).filter(|&j| j != i) {
            let port = g.fresh_vertex();
            let leg = g.add_path(i, port, legs[&(i, j)])?;
            branch_sets[i].extend(leg.vertices());
            ports.insert((i, j), port);
        }
    }
    let mut edges = BTreeMap::new();
    for i in 0..t {
        for j in i + 1..t {
            let (u, v) = (ports[&(i, j)], ports[&(j, i)]);
            g.add_edge(u, v)?;
            edges.insert((i, j), (u, v));
        }
    }
    let model = CliqueModel { branch_sets, edges };
    model.check_odd(&g)?;
    Ok((g, model))
}

/// `G(n, p)` on vertices `0..n` with `a_size` random terminals.
pub fn generate_random_instance(seed: u64, n: usize, p: f64, a_size: usize) -> Result<(Graph, VertexSet)> {
    if a_size > n || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameters(format!("need |A| <= n and p in [0, 1], got {a_size}, {p}")));
    }
    let mut rng = rng(seed);
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    let a = sample(&mut rng, n, a_size).into_iter().collect();
    Ok((g, a))
}

/// Like [`generate_random_instance`], but `g - A` is bipartite: non-terminal
/// edges only join the two random classes.
pub fn generate_bipartite_instance(seed: u64, n: usize, p: f64, a_size: usize) -> Result<(Graph, VertexSet)> {
    let (_, a) = generate_random_instance(seed, n, 0.0, a_size)?;
    let mut rng = rng(seed.wrapping_add(1));
    let side: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            let allowed = a.contains(&u) || a.contains(&v) || side[u] != side[v];
            if allowed && rng.random_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok((g, a))
}

/// Input for the block gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInstance {
    pub graph: Graph,
    pub a: VertexSet,
    pub block: VertexSet,
}

/// An even cycle with chords across the bipartition as the block, one to
/// three small bridges hung from its vertices, and terminals adjacent to
/// both. Seeds whose instance violates the gadget precondition are skipped,
/// up to `tries` attempts.
pub fn generate_block_instance(seed: u64, tries: usize) -> Result<BlockInstance> {
    for attempt in 0..tries as u64 {
        let mut rng = rng(seed.wrapping_mul(1_000_003).wrapping_add(attempt));
        let m = rng.random_range(2..=4);
        let mut g = Graph::with_vertices(2 * m);
        for i in 0..2 * m {
            g.add_edge(i, (i + 1) % (2 * m))?;
        }
        for _ in 0..rng.random_range(0..=m - 1) {
            let u = rng.random_range(0..2 * m);
            let v = (u + 2 * rng.random_range(1..m) + 1) % (2 * m);
            g.add_edge(u, v)?;
        }
        let block: VertexSet = (0..2 * m).collect();
        let k = rng.random_range(1..=3usize);
        let mut roots: Vec<Vertex> = sample(&mut rng, 2 * m, k).into_vec();
        roots.sort_unstable();
        let mut rest = Vec::new();
        for &b in &roots {
            let len = rng.random_range(1..=3);
            let tip = g.fresh_vertex();
            let p = g.add_path(b, tip, len)?;
            rest.extend(&p.vertices()[1..]);
            if len >= 2 && rng.random_bool(0.5) {
                // Close a triangle or a 4-cycle inside the bridge.
                let x = g.fresh_vertex();
                g.add_edge(p.vertices()[len - 1], x)?;
                g.add_edge(x, tip)?;
                rest.push(x);
            }
        }
        let non_terminal: Vec<Vertex> = g.vertices().collect();
        let mut a = VertexSet::new();
        for _ in 0..rng.random_range(3..=4) {
            let x = g.fresh_vertex();
            a.insert(x);
            let k = rng.random_range(2..=3);
            for i in sample(&mut rng, non_terminal.len(), k) {
                g.add_edge(x, non_terminal[i])?;
            }
        }
        if gadget_precondition(&g, &a, &block).is_ok() {
            return Ok(BlockInstance { graph: g, a, block });
        }
    }
    Err(Error::Internal(format!("no valid block instance within {tries} attempts")))
}

/// Input for zero-path assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblyInstance {
    pub graph: Graph,
    pub a: VertexSet,
    /// Wall with every elementary edge subdivided to length 4.
    pub wall: Wall,
    pub linkage: Vec<Path>,
    pub paths: Vec<Path>,
    pub k: usize,
}

/// A wall of size `12k + 1` with all edges of length 4, `2k` terminals
/// joined to every other nail on the left by paths of length `residue`
/// modulo 4, and, when `residue` is odd, a pure odd linkage of `2k` paths
/// of a random odd residue on every other nail to the right of them.
pub fn generate_assembly_instance(seed: u64, k: usize, residue: usize, kind: LinkageKind) -> Result<AssemblyInstance> {
    if k == 0 || residue > 3 {
        return Err(Error::InvalidParameters(format!("need k >= 1 and residue < 4, got {k}, {residue}")));
    }
    let mut rng = rng(seed);
    let w = subdivide_wall(&build_elementary_wall(12 * k + 1)?, &SubdivisionRule::uniform(4))?;
    let (mut g, linkage) = if residue % 2 == 1 {
        let lr = [1, 3][rng.random_range(0..2)];
        let nails: Vec<usize> = (0..4 * k).map(|j| 4 * k + 2 * j).collect();
        generate_odd_linkage(rng.random(), &w, kind, 2 * k, Some(&nails), Some(lr))?
    } else {
        (w.graph().clone(), Vec::new())
    };
    let mut a = VertexSet::new();
    let mut paths = Vec::new();
    for j in 0..2 * k {
        let x = g.fresh_vertex();
        a.insert(x);
        let len = if residue == 0 { 4 } else { residue } + 4 * rng.random_range(0..2);
        paths.push(g.add_path(x, w.nails()[2 * j], len)?);
    }
    Ok(AssemblyInstance { graph: g, a, wall: w, linkage, paths, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walls::linkage::classify_linkage;

    #[test]
    fn windmill_shapes() {
        assert!(generate_windmill(1, [2; 3], [3; 3]).is_ok());
        assert!(generate_windmill(2, [3; 3], [5; 3]).is_ok());
        assert!(generate_windmill(3, [2; 3], [3, 4, 3]).is_err());
        for s in 0..50 {
            generate_random_windmill(s).unwrap();
        }
    }

    #[test]
    fn odd_structures() {
        for s in 0..5 {
            let w = generate_odd_brick_wall(s, 4).unwrap();
            assert!(w.bricks().iter().all(|c| c.len() % 2 == 1));
        }
        let w = build_elementary_wall(10).unwrap();
        let (g, ls) = generate_odd_linkage(7, &w, LinkageKind::InSeries, 3, None, None).unwrap();
        assert!(is_odd_linkage(&g, &w, &ls).unwrap());
        assert_eq!(classify_linkage(&g, &w, &ls).unwrap(), LinkageKind::InSeries);
        let (g, m) = generate_odd_clique_model(3, 4).unwrap();
        m.check_odd(&g).unwrap();
    }

    #[test]
    fn deterministic() {
        assert_eq!(generate_random_instance(5, 10, 0.3, 3).unwrap(), generate_random_instance(5, 10, 0.3, 3).unwrap());
        assert_eq!(generate_random_instance(5, 6, 0.0, 2).unwrap().0.edge_count(), 0);
        assert_eq!(generate_random_instance(5, 6, 1.0, 2).unwrap().0.edge_count(), 15);
        let b = generate_block_instance(9, 100).unwrap();
        assert_eq!(b, generate_block_instance(9, 100).unwrap());
    }

    #[test]
    fn assembly_inputs_assemble() {
        use crate::surgery::assemble_zero_paths;
        for k in 1..=2 {
            for r in 0..4 {
                for kind in [LinkageKind::InSeries, LinkageKind::Crossing, LinkageKind::Nested] {
                    let inst = generate_assembly_instance(r as u64, k, r, kind).unwrap();
                    let out = assemble_zero_paths(&inst.graph, &inst.a, &inst.wall, &inst.linkage, &inst.paths, k);
                    assert_eq!(out.map(|o| o.len()).unwrap_or_else(|e| panic!("k={k} r={r} {kind:?}: {e}")), k);
                }
            }
        }
    }
}
