//! Zero `A`-paths from a wall with mod-4 subdivisions, a linkage and paths
//! linking `A` to the nails.

use std::collections::BTreeMap;

use super::wall_links::nicely_linked_to_wall;
use crate::error::{Error, Result};
use crate::graph::{pairwise_disjoint, Graph, Path, Vertex, VertexSet};
use crate::modpath::is_a_path;
use crate::walls::linkage::{classify_linkage, LinkageKind};
use crate::walls::Wall;

fn residue_of(paths: &[Path], what: &str) -> Result<usize> {
    let r = paths.first().map_or(0, |p| p.length() % 4);
    match paths.iter().find(|p| p.length() % 4 != r) {
        Some(p) => Err(Error::PreconditionWitness {
            reason: format!("{what} lengths differ modulo 4"),
            witness: p.clone(),
        }),
        None => Ok(r),
    }
}

/// `k` disjoint `A`-paths of length divisible by 4.
///
/// `w4` must have every subdivided edge of length divisible by 4, and the
/// paths `ps` nicely link `a` to it with a common length modulo 4. When that
/// residue is even, consecutive paths are joined along the top row. When it
/// is odd, `ls` must be a pure linkage whose paths share an odd residue and
/// whose ends all lie on one side of the path ends along the top row; paths
/// are then extended through the wall, innermost first, and joined in pairs
/// through the linkage.
pub fn assemble_zero_paths(
    g: &Graph,
    a: &VertexSet,
    w4: &Wall,
    ls: &[Path],
    ps: &[Path],
    k: usize,
) -> Result<Vec<Path>> {
    for (x, y) in w4.elementary_edges() {
        if !w4.edge_path(x, y).unwrap().length().is_multiple_of(4) {
            return Err(Error::Precondition(format!(
                "subdivided edge {x:?}-{y:?} has length not divisible by 4"
            )));
        }
    }
    let ps = nicely_linked_to_wall(g, a, w4, ps)?;
    let r = residue_of(&ps, "linking path")?;
    if ps.len() < 2 * k {
        return Err(Error::Precondition(format!("need {} linking paths, got {}", 2 * k, ps.len())));
    }
    let q = w4.top_row();
    let pos: BTreeMap<Vertex, usize> = q.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let out = if r % 2 == 0 {
        let mut ps = ps;
        ps.sort_by_key(|p| pos[&p.last()]);
        ps.chunks(2)
            .take(k)
            .map(|pair| {
                let seg = q.segment(pos[&pair[0].last()], pos[&pair[1].last()]);
                pair[0].join(&seg)?.join(&pair[1].reversed())
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        weave(g, w4, &q, &pos, ls, ps, k)?
    };
    if !pairwise_disjoint(&out) {
        return Err(Error::Internal("assembled paths intersect".into()));
    }
    for p in &out {
        p.validate_in(g)?;
        if !is_a_path(g, a, p) || p.length() % 4 != 0 {
            return Err(Error::Internal(format!("assembled path {p:?} is not a zero A-path")));
        }
    }
    Ok(out)
}

fn weave(
    g: &Graph,
    w4: &Wall,
    q: &Path,
    pos: &BTreeMap<Vertex, usize>,
    ls: &[Path],
    ps: Vec<Path>,
    k: usize,
) -> Result<Vec<Path>> {
    let kind = classify_linkage(g, w4, ls)?;
    if !kind.is_pure() {
        return Err(Error::Precondition("linkage is not pure".into()));
    }
    let lr = residue_of(ls, "linkage path")?;
    if lr % 2 == 0 {
        return Err(Error::Precondition("linkage paths have even length".into()));
    }
    if ls.len() < 2 * k {
        return Err(Error::Precondition(format!("need {} linkage paths, got {}", 2 * k, ls.len())));
    }
    // Orient the top row so that path ends come first.
    let p_max = ps.iter().map(|p| pos[&p.last()]).max().unwrap();
    let p_min = ps.iter().map(|p| pos[&p.last()]).min().unwrap();
    let l_ends: Vec<usize> = ls.iter().flat_map(|l| [pos[&l.first()], pos[&l.last()]]).collect();
    let (l_min, l_max) = (*l_ends.iter().min().unwrap(), *l_ends.iter().max().unwrap());
    let flip = if p_max < l_min {
        false
    } else if l_max < p_min {
        true
    } else {
        return Err(Error::Precondition("path ends and linkage ends interleave on the top row".into()));
    };
    let len = q.length();
    let at = |v: Vertex| if flip { len - pos[&v] } else { pos[&v] };

    // Each linkage path becomes (a, b, path from a to b), ordered by first end.
    let mut links: Vec<(Vertex, Vertex, Path)> = ls
        .iter()
        .map(|l| if at(l.first()) < at(l.last()) { l.clone() } else { l.reversed() })
        .map(|l| (l.first(), l.last(), l))
        .collect();
    links.sort_by_key(|(x, _, _)| at(*x));
    for (i, link) in links.iter_mut().enumerate() {
        if kind == LinkageKind::InSeries && i % 2 == 1 {
            *link = (link.1, link.0, link.2.reversed());
        }
    }
    let mut ends: VertexSet = ps.iter().map(|p| p.last()).collect();
    ends.extend(ls.iter().flat_map(|l| [l.first(), l.last()]));
    let segment = |b1: Vertex, b2: Vertex| q.segment(pos[&b1], pos[&b2]);
    let mut pairs = Vec::new();
    for pair in links.chunks_exact(2) {
        let seg = segment(pair[0].1, pair[1].1);
        // Only b-ends may lie on the joining segment.
        if seg.interior().iter().all(|v| !ends.contains(v)) {
            pairs.push((pair[0].clone(), pair[1].clone(), seg));
        }
    }
    if pairs.len() < k {
        return Err(Error::Internal(format!("only {} usable linkage pairs", pairs.len())));
    }
    pairs.truncate(k);

    // The 2k path ends nearest the linkage, matched outward: the last path
    // end goes to the nearest a-end.
    let mut ps = ps;
    ps.sort_by_key(|p| at(p.last()));
    let ps = ps.split_off(ps.len() - 2 * k);
    let mut a_ends: Vec<Vertex> = pairs.iter().flat_map(|(x, y, _)| [x.0, y.0]).collect();
    a_ends.sort_by_key(|&v| at(v));
    let mut matched: BTreeMap<Vertex, Path> = BTreeMap::new();
    let mut used = VertexSet::new();
    let mut blocked: VertexSet = q.vertex_set();
    for (_, _, seg) in &pairs {
        blocked.extend(seg.vertices());
    }
    for (i, &av) in a_ends.iter().enumerate() {
        let p = &ps[2 * k - 1 - i];
        let open: VertexSet = [near(w4, q, pos, p.last()), near(w4, q, pos, av)].concat().into_iter().collect();
        let mut block: VertexSet = blocked.difference(&open).copied().collect();
        block.extend(&used);
        block.extend(ps.iter().filter(|x| x.last() != p.last()).map(|x| x.last()));
        let route = w4
            .graph()
            .shortest_path(p.last(), &[av].into(), &block)
            .ok_or_else(|| Error::Internal("no disjoint route through the wall".into()))?;
        used.extend(route.vertices());
        matched.insert(av, p.join(&route)?);
    }
    pairs
        .into_iter()
        .map(|((a1, _, l1), (a2, _, l2), seg)| {
            matched[&a1].join(&l1)?.join(&seg)?.join(&l2.reversed())?.join(&matched[&a2].reversed())
        })
        .collect()
}

/// A nail and the top-row stretches to the branch vertices beside it.
fn near(w4: &Wall, q: &Path, pos: &BTreeMap<Vertex, usize>, nail: Vertex) -> Vec<Vertex> {
    let branch = w4.branch_vertices();
    let i = pos[&nail];
    let left = (0..i).rev().find(|&j| branch.contains(&q.vertices()[j])).unwrap_or(i);
    let right = (i + 1..q.vertices().len()).find(|&j| branch.contains(&q.vertices()[j])).unwrap_or(i);
    q.vertices()[left..=right].to_vec()
}
