//! Brute-force oracles written independently of the library's solvers.
#![allow(dead_code)]

use std::collections::BTreeSet;

use zeropath::graph::{Graph, Path, Vertex, VertexSet};

/// Every A-path whose length satisfies `keep`, each once, as vertex
/// sequences starting at the smaller end.
pub fn a_paths(g: &Graph, a: &VertexSet, keep: impl Fn(usize) -> bool) -> Vec<Vec<Vertex>> {
    fn grow(
        g: &Graph,
        a: &VertexSet,
        keep: &dyn Fn(usize) -> bool,
        seq: &mut Vec<Vertex>,
        on: &mut BTreeSet<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let last = *seq.last().unwrap();
        for w in g.neighbors(last).collect::<Vec<_>>() {
            if on.contains(&w) {
                continue;
            }
            if a.contains(&w) {
                if w > seq[0] && keep(seq.len()) {
                    let mut p = seq.clone();
                    p.push(w);
                    out.push(p);
                }
                continue;
            }
            seq.push(w);
            on.insert(w);
            grow(g, a, keep, seq, on, out);
            on.remove(&w);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    for &s in a {
        if g.contains(s) {
            let mut seq = vec![s];
            let mut on = BTreeSet::from([s]);
            grow(g, a, &keep, &mut seq, &mut on, &mut out);
        }
    }
    out
}

pub fn zero_paths(g: &Graph, a: &VertexSet) -> Vec<Vec<Vertex>> {
    a_paths(g, a, |l| l % 4 == 0)
}

/// Largest number of pairwise disjoint sets, by plain branching.
pub fn packing(paths: &[Vec<Vertex>]) -> usize {
    fn go(sets: &[BTreeSet<Vertex>], i: usize, used: &mut BTreeSet<Vertex>) -> usize {
        if i == sets.len() {
            return 0;
        }
        let skip = go(sets, i + 1, used);
        if sets[i].is_disjoint(used) {
            used.extend(&sets[i]);
            let take = 1 + go(sets, i + 1, used);
            for v in &sets[i] {
                used.remove(v);
            }
            return skip.max(take);
        }
        skip
    }
    let sets: Vec<BTreeSet<Vertex>> = paths.iter().map(|p| p.iter().copied().collect()).collect();
    go(&sets, 0, &mut BTreeSet::new())
}

/// Smallest vertex set meeting every path, by trying all subsets of the
/// vertices on the paths in order of size.
pub fn hitting(paths: &[Vec<Vertex>]) -> usize {
    let sets: Vec<BTreeSet<Vertex>> = paths.iter().map(|p| p.iter().copied().collect()).collect();
    let verts: Vec<Vertex> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    fn choose(verts: &[Vertex], k: usize, start: usize, pick: &mut Vec<Vertex>, sets: &[BTreeSet<Vertex>]) -> bool {
        if pick.len() == k {
            return sets.iter().all(|s| pick.iter().any(|v| s.contains(v)));
        }
        for i in start..verts.len() {
            pick.push(verts[i]);
            if choose(verts, k, i + 1, pick, sets) {
                return true;
            }
            pick.pop();
        }
        false
    }
    (0..=verts.len()).find(|&k| choose(&verts, k, 0, &mut Vec::new(), &sets)).unwrap()
}

pub fn is_path_in(g: &Graph, p: &Path) -> bool {
    let set: BTreeSet<Vertex> = p.vertices().iter().copied().collect();
    set.len() == p.vertices().len() && p.vertices().windows(2).all(|w| g.has_edge(w[0], w[1]))
}

pub fn canonical(p: &[Vertex]) -> Vec<Vertex> {
    if p.first() <= p.last() {
        p.to_vec()
    } else {
        p.iter().rev().copied().collect()
    }
}
