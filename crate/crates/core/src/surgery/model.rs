//! Linking terminals to clique models, and windmills inside odd models.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{tree_path, CliqueModel, Windmill};
use crate::error::{Error, Result};
use crate::flow::menger_paths;
use crate::graph::{pairwise_disjoint, Graph, Path, Vertex, VertexSet};

/// Outcome of [`find_model_linkage`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelLinkage {
    Paths { submodel: CliqueModel, paths: Vec<Path> },
    Separator { submodel: CliqueModel, separator: VertexSet },
}

/// Checks that `paths` nicely link `a` to `model`: disjoint paths from `a`,
/// each meeting exactly one branch set, distinct sets for distinct paths.
/// Returns each path oriented from `a` and cut at its first vertex in the
/// model, with the index of its branch set.
pub fn nicely_linked_to_model(
    g: &Graph,
    a: &VertexSet,
    model: &CliqueModel,
    paths: &[Path],
) -> Result<Vec<(usize, Path)>> {
    if !pairwise_disjoint(paths) {
        return Err(Error::Precondition("linking paths are not disjoint".into()));
    }
    let mut used = BTreeSet::new();
    paths
        .iter()
        .map(|p| {
            p.validate_in(g)?;
            let bad = |reason: &str| Error::PreconditionWitness { reason: reason.into(), witness: p.clone() };
            let p = if a.contains(&p.first()) { p.clone() } else { p.reversed() };
            if !a.contains(&p.first()) || p.vertices()[1..].iter().any(|v| a.contains(v)) {
                return Err(bad("path is not an A-path into the model"));
            }
            let sets: BTreeSet<usize> = p.vertices().iter().filter_map(|&v| model.set_of(v)).collect();
            let [i] = <[usize; 1]>::try_from(sets.into_iter().collect::<Vec<_>>())
                .map_err(|_| bad("path does not meet exactly one branch set"))?;
            if !used.insert(i) {
                return Err(bad("two paths end in the same branch set"));
            }
            let k = p.vertices().iter().position(|v| model.branch_sets[i].contains(v)).unwrap();
            Ok((i, p.segment(0, k)))
        })
        .collect()
}

struct Linker<'a> {
    model: &'a CliqueModel,
    label: BTreeMap<Vertex, usize>,
}

impl Linker<'_> {
    fn labels(&self, p: &Path) -> Vec<usize> {
        p.vertices().iter().filter_map(|v| self.label.get(v).copied()).collect()
    }

    fn end(&self, p: &Path) -> usize {
        self.label[&p.last()]
    }

    fn met(&self, paths: &[Path]) -> BTreeSet<usize> {
        paths.iter().flat_map(|p| self.labels(p)).collect()
    }

    /// Indices of paths whose end set meets no other path.
    fn private(&self, paths: &[Path]) -> Vec<usize> {
        (0..paths.len())
            .filter(|&k| {
                let e = self.end(&paths[k]);
                paths.iter().enumerate().all(|(j, q)| j == k || !self.labels(q).contains(&e))
            })
            .collect()
    }

    fn vis(&self, paths: &[Path]) -> usize {
        paths
            .iter()
            .map(|p| {
                let l = self.labels(p);
                l.windows(2).filter(|w| w[0] != w[1]).count() + usize::from(!l.is_empty())
            })
            .sum()
    }

    /// Sets entered just before the private end of a path.
    fn pe_minus(&self, paths: &[Path], private: &[usize]) -> BTreeSet<usize> {
        private
            .iter()
            .filter_map(|&k| {
                let l = self.labels(&paths[k]);
                let e = *l.last().unwrap();
                l.iter().rev().find(|&&x| x != e).copied()
            })
            .collect()
    }

    /// Cuts paths at branch sets that are nobody's end, until none remain.
    fn normalise(&self, paths: &mut [Path]) {
        loop {
            let ends: BTreeSet<usize> = paths.iter().map(|p| self.end(p)).collect();
            let cut = paths.iter().enumerate().find_map(|(k, p)| {
                let i = p.vertices().iter().position(|v| self.label.get(v).is_some_and(|x| !ends.contains(x)))?;
                Some((k, i))
            });
            match cut {
                Some((k, i)) => paths[k] = paths[k].segment(0, i),
                None => return,
            }
        }
    }

    /// One improving move, or `None` when the paths meet no set outside
    /// their private ends and the sets just before them.
    fn step(&self, g: &Graph, paths: &[Path]) -> Option<Vec<Path>> {
        let met = self.met(paths);
        let private = self.private(paths);
        let pe: BTreeSet<usize> = private.iter().map(|&k| self.end(&paths[k])).collect();
        let pe_minus = self.pe_minus(paths, &private);
        let t = self.model.order();
        let v1 = (0..t).find(|i| !met.contains(i))?;
        let v2 = met.iter().copied().find(|i| !pe.contains(i) && !pe_minus.contains(i))?;
        let on_paths: VertexSet = paths.iter().flat_map(|p| p.vertices()).copied().collect();
        let (x, y) = self.model.edge(v1, v2);
        let u1 = *self.model.branch_sets[v1].first().unwrap();
        let mut q = self.model.tree_path(g, v1, u1, x).into_vertices();
        q.extend(bfs_to(g, &self.model.branch_sets[v2], y, &on_paths));
        let qv = *q.last().unwrap();
        let k = paths.iter().position(|p| p.contains(qv)).unwrap();
        let head = paths[k].segment(0, paths[k].position(qv).unwrap());
        let tail = Path::new(q.into_iter().rev().collect());
        let mut next = paths.to_vec();
        next[k] = head.join(&tail).ok()?;
        Some(next)
    }
}

/// Shortest path inside `set` from `from` to the nearest vertex of
/// `targets`.
fn bfs_to(g: &Graph, set: &VertexSet, from: Vertex, targets: &VertexSet) -> Vec<Vertex> {
    let mut parent = BTreeMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if targets.contains(&u) {
            let mut seq = vec![u];
            let mut v = u;
            while v != from {
                v = parent[&v];
                seq.push(v);
            }
            seq.reverse();
            return seq;
        }
        for v in g.neighbors(u) {
            if set.contains(&v) && !parent.contains_key(&v) {
                parent.insert(v, u);
                queue.push_back(v);
            }
        }
    }
    vec![from]
}

/// Either `l` disjoint paths nicely linking `a` to a submodel on
/// `order - 2l` branch sets, or fewer than `2l` vertices separating `a`
/// from such a submodel.
///
/// Paths are first routed to one representative per branch set, then
/// improved move by move: more private ends, else fewer visits. Should a
/// move fail to improve, every choice of `2l` sacrificed branch sets is
/// tried directly.
pub fn find_model_linkage(g: &Graph, a: &VertexSet, model: &CliqueModel, l: usize) -> Result<ModelLinkage> {
    model.validate(g)?;
    let t = model.order();
    if l == 0 || t < 3 * l {
        return Err(Error::InvalidParameters(format!("need order >= 3l and l >= 1, got order {t}, l {l}")));
    }
    if let Some(v) = a.iter().find(|v| model.set_of(**v).is_some()) {
        return Err(Error::Precondition(format!("terminal {v} lies in the model")));
    }
    let u: VertexSet = model.branch_sets.iter().map(|s| *s.first().unwrap()).collect();
    let m = menger_paths(g, a, &u, &VertexSet::new());
    if m.paths.len() < 2 * l {
        let x = m.separator;
        let reach = g.reachable_from(a.iter().copied(), &x);
        let keep: Vec<usize> = (0..t)
            .filter(|&i| model.branch_sets[i].iter().all(|v| !reach.contains(v) && !x.contains(v)))
            .take(t - 2 * l)
            .collect();
        if keep.len() < t - 2 * l {
            return Err(Error::Internal("too few branch sets behind the separator".into()));
        }
        return Ok(ModelLinkage::Separator { submodel: model.submodel(&keep), separator: x });
    }
    let label = (0..t).flat_map(|i| model.branch_sets[i].iter().map(move |&v| (v, i))).collect();
    let lk = Linker { model, label };
    let mut paths: Vec<Path> = m.paths.into_iter().take(2 * l).collect();
    lk.normalise(&mut paths);
    let score = |ps: &[Path]| (lk.private(ps).len(), std::cmp::Reverse(lk.vis(ps)));
    let cond_i = |ps: &[Path]| lk.met(ps).len() <= 2 * l + lk.private(ps).len();
    while lk.private(&paths).len() < l {
        match lk.step(g, &paths) {
            Some(next) if cond_i(&next) && score(&next) > score(&paths) => paths = next,
            _ => return sacrifice_search(g, a, model, l),
        }
    }
    let mut chosen: Vec<(usize, Path)> = lk
        .private(&paths)
        .into_iter()
        .map(|k| (lk.end(&paths[k]), paths[k].clone()))
        .collect();
    chosen.sort();
    chosen.truncate(l);
    let ends: BTreeSet<usize> = chosen.iter().map(|(i, _)| *i).collect();
    let dropped: BTreeSet<usize> = chosen
        .iter()
        .flat_map(|(_, p)| lk.labels(p))
        .filter(|i| !ends.contains(i))
        .collect();
    if dropped.len() > 2 * l {
        return sacrifice_search(g, a, model, l);
    }
    let keep = fill(t, &ends, &dropped, t - 2 * l);
    let paths = chosen
        .into_iter()
        .map(|(i, p)| {
            let k = p.vertices().iter().position(|v| model.branch_sets[i].contains(v)).unwrap();
            p.segment(0, k)
        })
        .collect();
    Ok(ModelLinkage::Paths { submodel: model.submodel(&keep), paths })
}

/// `size` indices: all of `must`, then the lowest others outside `banned`.
fn fill(t: usize, must: &BTreeSet<usize>, banned: &BTreeSet<usize>, size: usize) -> Vec<usize> {
    let mut keep: Vec<usize> = must.iter().copied().collect();
    keep.extend((0..t).filter(|i| !must.contains(i) && !banned.contains(i)).take(size - must.len()));
    keep.sort_unstable();
    keep
}

/// Tries every set `Z` of `2l` branch sets: deletes them and routes to the
/// rest, each contracted to a single vertex.
fn sacrifice_search(g: &Graph, a: &VertexSet, model: &CliqueModel, l: usize) -> Result<ModelLinkage> {
    let t = model.order();
    let base = g.next_id();
    let mut z: Vec<usize> = (0..2 * l).collect();
    loop {
        let rest: Vec<usize> = (0..t).filter(|i| !z.contains(i)).collect();
        let mut h = g.without(&model.vertex_set());
        for &i in &rest {
            h.add_vertex(base + i);
        }
        for &i in &rest {
            for &v in &model.branch_sets[i] {
                for w in g.neighbors(v) {
                    if h.contains(w) && model.set_of(w).is_none() {
                        h.add_edge(base + i, w)?;
                    }
                }
            }
        }
        let sinks: VertexSet = rest.iter().map(|i| base + i).collect();
        let m = menger_paths(&h, a, &sinks, &VertexSet::new());
        if m.paths.len() >= l {
            let mut paths = Vec::new();
            for p in m.paths.into_iter().take(l) {
                let i = p.last() - base;
                let mut seq = p.into_vertices();
                seq.pop();
                let prev = *seq.last().unwrap();
                let y = *model.branch_sets[i].iter().find(|y| g.has_edge(prev, **y)).unwrap();
                seq.push(y);
                paths.push(Path::new(seq));
            }
            return Ok(ModelLinkage::Paths { submodel: model.submodel(&rest), paths });
        }
        // Next combination in lexicographic order.
        let Some(k) = (0..z.len()).rev().find(|&k| z[k] < t - z.len() + k) else { break };
        z[k] += 1;
        for j in k + 1..z.len() {
            z[j] = z[j - 1] + 1;
        }
    }
    Err(Error::Internal("no sacrificed family admits a nice linkage".into()))
}

/// Builds `k` disjoint windmills with tips in `a` inside an odd clique model
/// on at least `10k` branch sets, from `3k` paths nicely linking `a` to it.
///
/// Each windmill uses ten branch sets: the three sets `Y1..Y3` where paths
/// end, two more per path carrying an odd triangle cycle, and a hub set
/// joining the three parts.
pub fn windmills_from_odd_model(
    g: &Graph,
    a: &VertexSet,
    model: &CliqueModel,
    paths: &[Path],
    k: usize,
) -> Result<Vec<Windmill>> {
    model.check_odd(g)?;
    if model.order() < 10 * k {
        return Err(Error::Precondition(format!("need {} branch sets, model has {}", 10 * k, model.order())));
    }
    let mut linked = nicely_linked_to_model(g, a, model, paths)?;
    if linked.len() < 3 * k {
        return Err(Error::Precondition(format!("need {} linking paths, got {}", 3 * k, linked.len())));
    }
    linked.sort();
    linked.truncate(3 * k);
    let ends: BTreeSet<usize> = linked.iter().map(|(i, _)| *i).collect();
    let mut spare = (0..model.order()).filter(|i| !ends.contains(i));
    let mut out = Vec::new();
    for trio in linked.chunks(3) {
        let others: Vec<usize> = spare.by_ref().take(7).collect();
        let hub_set = others[6];
        let hub_tree = model.tree(g, hub_set);
        let mut parts = Vec::new();
        for (n, (y1, p)) in trio.iter().enumerate() {
            let (y4, y5) = (others[2 * n], others[2 * n + 1]);
            let cycle = model.triangle_cycle(g, *y1, y4, y5);
            let on_c: VertexSet = cycle.iter().copied().collect();
            // Q from the path's end into the cycle, within Y1.
            let q = cut_at(&bfs_to(g, &model.branch_sets[*y1], p.last(), &on_c), &on_c);
            // R from the cycle through Y4 to the hub set.
            let (x4, r) = model.edge(y4, hub_set);
            let mut rr = bfs_to(g, &model.branch_sets[y4], x4, &on_c);
            rr.reverse();
            rr.push(r);
            parts.push((p.clone(), q, cycle, rr));
        }
        let rs: Vec<Vertex> = parts.iter().map(|(_, _, _, rr)| *rr.last().unwrap()).collect();
        let hub = median(&hub_tree, rs[0], rs[1], rs[2]);
        let mut arms = Vec::new();
        let mut cycles = Vec::new();
        for (p, q, cycle, rr) in parts {
            let mut seq = tree_path(&hub_tree, hub, *rr.last().unwrap()).into_vertices();
            seq.extend(rr.iter().rev().skip(1));
            seq.extend(arc(&cycle, rr[0], *q.last().unwrap()).into_iter().skip(1));
            seq.extend(q.iter().rev().skip(1));
            seq.extend(p.vertices().iter().rev().skip(1));
            arms.push(Path::new(seq));
            cycles.push(cycle);
        }
        let wm = Windmill {
            hub,
            arms: arms.try_into().expect("three arms"),
            cycles: cycles.try_into().expect("three cycles"),
        };
        wm.validate()?;
        out.push(wm);
    }
    Ok(out)
}

/// Prefix of `seq` up to its first vertex in `stop`.
fn cut_at(seq: &[Vertex], stop: &VertexSet) -> Vec<Vertex> {
    let k = seq.iter().position(|v| stop.contains(v)).unwrap_or(seq.len() - 1);
    seq[..=k].to_vec()
}

/// The vertices of `cycle` from `from` forward to `to`.
fn arc(cycle: &[Vertex], from: Vertex, to: Vertex) -> Vec<Vertex> {
    let n = cycle.len();
    let mut k = cycle.iter().position(|&v| v == from).unwrap();
    let mut seq = vec![from];
    while cycle[k] != to {
        k = (k + 1) % n;
        seq.push(cycle[k]);
    }
    seq
}

/// The vertex of a tree on all three paths between `x`, `y`, `z`.
fn median(parent: &BTreeMap<Vertex, Option<Vertex>>, x: Vertex, y: Vertex, z: Vertex) -> Vertex {
    let xy = tree_path(parent, x, y).vertex_set();
    let xz = tree_path(parent, x, z).vertex_set();
    let yz = tree_path(parent, y, z).vertex_set();
    *xy.iter().find(|v| xz.contains(v) && yz.contains(v)).expect("trees have medians")
}
