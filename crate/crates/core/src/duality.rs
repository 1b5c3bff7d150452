//! Exact packing and covering numbers for qualifying A-paths.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Separation, Vertex, VertexSet};
use crate::modpath::{enumerate_a_paths, find_zero_a_path, qualifies, ResidueSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub packing_number: usize,
    pub packing_witness: Vec<Path>,
    pub covering_number: usize,
    pub covering_witness: VertexSet,
    pub path_family_size: usize,
    pub exact: bool,
}

/// Maximum number of disjoint qualifying A-paths, with the lexicographically
/// least optimal family.
pub fn max_packing(g: &Graph, a: &VertexSet, spec: ResidueSpec) -> Result<(usize, Vec<Path>)> {
    let paths = enumerate_a_paths(g, a, spec, None)?;
    let chosen = max_disjoint(&paths);
    let witness: Vec<Path> = chosen.into_iter().map(|i| paths[i].clone()).collect();
    Ok((witness.len(), witness))
}

/// Minimum vertex set meeting every qualifying A-path, with the
/// lexicographically least optimal set. The witness is re-checked by a fresh
/// search in `g - X`.
pub fn min_hitting_set(g: &Graph, a: &VertexSet, spec: ResidueSpec) -> Result<(usize, VertexSet)> {
    let paths = enumerate_a_paths(g, a, spec, None)?;
    let sets: Vec<VertexSet> = paths.iter().map(Path::vertex_set).collect();
    let x = min_hitting_set_of(&sets);
    if let Some(p) = find_zero_a_path(&g.without(&x), a, spec) {
        return Err(Error::Internal(format!("hitting set {x:?} misses path {p:?}")));
    }
    Ok((x.len(), x))
}

pub fn duality_report(g: &Graph, a: &VertexSet, spec: ResidueSpec) -> Result<DualityReport> {
    let paths = enumerate_a_paths(g, a, spec, None)?;
    let packing_witness: Vec<Path> =
        max_disjoint(&paths).into_iter().map(|i| paths[i].clone()).collect();
    let sets: Vec<VertexSet> = paths.iter().map(Path::vertex_set).collect();
    let covering_witness = min_hitting_set_of(&sets);
    if let Some(p) = find_zero_a_path(&g.without(&covering_witness), a, spec) {
        return Err(Error::Internal(format!("hitting set misses path {p:?}")));
    }
    for p in &packing_witness {
        if !qualifies(g, a, spec, p) {
            return Err(Error::Internal(format!("packing path {p:?} does not qualify")));
        }
    }
    let report = DualityReport {
        packing_number: packing_witness.len(),
        packing_witness,
        covering_number: covering_witness.len(),
        covering_witness,
        path_family_size: paths.len(),
        exact: true,
    };
    if report.packing_number > report.covering_number {
        return Err(Error::Internal("packing exceeds covering".into()));
    }
    Ok(report)
}

/// Dense re-indexing of the vertices occurring in a family of sets.
struct Universe {
    ids: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
}

impl Universe {
    fn of<'a>(sets: impl IntoIterator<Item = &'a VertexSet>) -> Self {
        let all: VertexSet = sets.into_iter().flatten().copied().collect();
        let ids: Vec<Vertex> = all.into_iter().collect();
        let index = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Universe { ids, index }
    }

    fn bits(&self, s: &VertexSet) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.ids.len());
        for v in s {
            b.insert(self.index[v]);
        }
        b
    }
}

/// Indices of a maximum pairwise vertex-disjoint subfamily; among optima the
/// lexicographically least index sequence.
pub fn max_disjoint(paths: &[Path]) -> Vec<usize> {
    let sets: Vec<VertexSet> = paths.iter().map(Path::vertex_set).collect();
    let uni = Universe::of(&sets);
    let bits: Vec<FixedBitSet> = sets.iter().map(|s| uni.bits(s)).collect();
    let ends: Vec<(usize, usize)> = paths
        .iter()
        .map(|p| (uni.index[&p.first()], uni.index[&p.last()]))
        .collect();
    let mut search = Packer { bits: &bits, ends: &ends, best: Vec::new(), current: Vec::new() };
    let cand: Vec<usize> = (0..paths.len()).collect();
    search.run(&cand);
    search.best
}

struct Packer<'a> {
    bits: &'a [FixedBitSet],
    ends: &'a [(usize, usize)],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Packer<'_> {
    /// For each suffix of `cand`, an upper bound on how many of its paths
    /// can be added: every path owns its two ends, and paths sharing an end
    /// conflict.
    fn suffix_bounds(&self, cand: &[usize]) -> Vec<usize> {
        let mut firsts = VertexSet::new();
        let mut lasts = VertexSet::new();
        let mut endpoints = VertexSet::new();
        let mut out = vec![0; cand.len()];
        for (i, &c) in cand.iter().enumerate().rev() {
            let (f, l) = self.ends[c];
            firsts.insert(f);
            lasts.insert(l);
            endpoints.insert(f);
            endpoints.insert(l);
            out[i] = (cand.len() - i).min(firsts.len()).min(lasts.len()).min(endpoints.len() / 2);
        }
        out
    }

    /// Branches on including `cand[i]`; excluding it moves on to `i + 1`
    /// iteratively, so recursion depth is bounded by the packing size.
    fn run(&mut self, cand: &[usize]) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        let bounds = self.suffix_bounds(cand);
        for (i, &c) in cand.iter().enumerate() {
            if self.current.len() + bounds[i] <= self.best.len() {
                return;
            }
            let rest: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&d| self.bits[c].is_disjoint(&self.bits[d]))
                .collect();
            self.current.push(c);
            self.run(&rest);
            self.current.pop();
        }
    }
}

/// Minimum set meeting every member of `sets`; lexicographically least among
/// optima. An empty member makes the instance infeasible and is ignored.
pub fn min_hitting_set_of(sets: &[VertexSet]) -> VertexSet {
    let mut family: Vec<&VertexSet> = sets.iter().filter(|s| !s.is_empty()).collect();
    family.sort_by_key(|s| s.len());
    family.dedup();
    let uni = Universe::of(family.iter().copied());
    let mut bits: Vec<FixedBitSet> = Vec::new();
    for s in family {
        let b = uni.bits(s);
        if !bits.iter().any(|m| m.is_subset(&b)) {
            bits.push(b);
        }
    }
    let n = uni.ids.len();
    let all: Vec<usize> = (0..bits.len()).collect();
    let none = FixedBitSet::with_capacity(n);
    let mut tau = packing_lower_bound(&bits, &all, &none);
    while !feasible(&bits, &all, tau, &none) {
        tau += 1;
    }
    // Fix elements one at a time, each as small as possible.
    let mut chosen: Vec<usize> = Vec::new();
    let mut unhit = all;
    let mut start = 0;
    while chosen.len() < tau {
        let budget = tau - chosen.len() - 1;
        let mut forbid = FixedBitSet::with_capacity(n);
        forbid.insert_range(..start);
        let mut picked = None;
        for v in start..n {
            forbid.insert(v);
            let rest: Vec<usize> = unhit.iter().copied().filter(|&i| !bits[i].contains(v)).collect();
            if feasible(&bits, &rest, budget, &forbid) {
                picked = Some((v, rest));
                break;
            }
        }
        let (v, rest) = picked.expect("optimum has a lexicographic witness");
        chosen.push(v);
        unhit = rest;
        start = v + 1;
    }
    chosen.into_iter().map(|i| uni.ids[i]).collect()
}

/// Greedy count of unhit sets that are pairwise disjoint outside `forbid`.
fn packing_lower_bound(bits: &[FixedBitSet], unhit: &[usize], forbid: &FixedBitSet) -> usize {
    let mut used = FixedBitSet::with_capacity(forbid.len());
    let mut count = 0;
    for &i in unhit {
        let mut avail = bits[i].clone();
        avail.difference_with(forbid);
        if avail.is_disjoint(&used) {
            used.union_with(&avail);
            count += 1;
        }
    }
    count
}

/// Can the `unhit` sets be met by at most `budget` vertices outside `forbid`?
fn feasible(bits: &[FixedBitSet], unhit: &[usize], budget: usize, forbid: &FixedBitSet) -> bool {
    if unhit.is_empty() {
        return true;
    }
    if budget == 0 || packing_lower_bound(bits, unhit, forbid) > budget {
        return false;
    }
    // Branch on the set with the fewest allowed vertices.
    let mut pick = None;
    let mut best = usize::MAX;
    for &i in unhit {
        let k = bits[i].ones().filter(|&v| !forbid.contains(v)).count();
        if k < best {
            best = k;
            pick = Some(i);
        }
        if k == 0 {
            return false;
        }
    }
    let pick = pick.unwrap();
    let mut forbid = forbid.clone();
    let choices: Vec<usize> = bits[pick].ones().filter(|&v| !forbid.contains(v)).collect();
    for v in choices {
        let rest: Vec<usize> = unhit.iter().copied().filter(|&i| !bits[i].contains(v)).collect();
        if feasible(bits, &rest, budget - 1, &forbid) {
            return true;
        }
        // Later branches may assume `v` is not used.
        forbid.insert(v);
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideClass {
    LeftOnly,
    RightOnly,
    Both,
    Neither,
}

/// Which of `G[A ∪ C]` and `G[A ∪ D]` contain a qualifying A-path, for a
/// separation `(C, D)` of `g - a`.
pub fn classify_separation(
    g: &Graph,
    a: &VertexSet,
    spec: ResidueSpec,
    left: &VertexSet,
    right: &VertexSet,
) -> Result<SideClass> {
    let rest = g.without(a);
    let s = Separation::new(&rest, left.clone(), right.clone())?;
    let side = |x: &VertexSet| {
        let keep: VertexSet = x.union(a).copied().collect();
        find_zero_a_path(&g.induced(&keep), a, spec).is_some()
    };
    Ok(match (side(s.left()), side(s.right())) {
        (true, true) => SideClass::Both,
        (true, false) => SideClass::LeftOnly,
        (false, true) => SideClass::RightOnly,
        (false, false) => SideClass::Neither,
    })
}
