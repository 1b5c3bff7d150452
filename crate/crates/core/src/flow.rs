//! Vertex-disjoint path routing via unit vertex capacities.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{Graph, Path, Vertex, VertexSet};

const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Residual network with paired arcs (`i ^ 1` is the reverse of `i`).
#[derive(Debug, Clone, Default)]
struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn with_nodes(n: usize) -> Self {
        Network { arcs: Vec::new(), out: vec![Vec::new(); n] }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) {
        self.out[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap, cost });
        self.out[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: 0, cost: -cost });
    }

    /// Shortest augmenting path by cost (Bellman-Ford over the residual graph);
    /// with all costs zero this is plain BFS order.
    fn augmenting_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let n = self.out.len();
        let mut dist = vec![INF; n];
        let mut via = vec![usize::MAX; n];
        let mut queued = vec![false; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        queued[s] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] {
                    dist[arc.to] = dist[u] + arc.cost;
                    via[arc.to] = a;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        if dist[t] == INF {
            return None;
        }
        let mut arcs = Vec::new();
        let mut x = t;
        while x != s {
            let a = via[x];
            arcs.push(a);
            x = self.arcs[a ^ 1].to;
        }
        arcs.reverse();
        Some(arcs)
    }

    fn flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut value = 0;
        while value < limit {
            let Some(arcs) = self.augmenting_path(s, t) else { break };
            for a in arcs {
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
            }
            value += 1;
        }
        value
    }

    fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

/// Maximum family of disjoint source-sink paths together with a minimum
/// separator of the same size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MengerResult {
    pub paths: Vec<Path>,
    pub separator: VertexSet,
}

/// Disjoint `source`-`sink` paths in `g - avoid`. Each path meets `source`
/// only in its first vertex and `sink` only in its last; a vertex in both
/// sets is a one-vertex path.
pub fn menger_paths(
    g: &Graph,
    source: &VertexSet,
    sink: &VertexSet,
    avoid: &VertexSet,
) -> MengerResult {
    route(g, source, sink, avoid, None, |_, _| 0)
}

/// Like [`menger_paths`] but stops at `limit` paths and, among families of
/// that size, minimises the total `cost` of the used edges.
pub fn min_cost_paths(
    g: &Graph,
    source: &VertexSet,
    sink: &VertexSet,
    avoid: &VertexSet,
    limit: Option<usize>,
    cost: impl Fn(Vertex, Vertex) -> i64,
) -> MengerResult {
    route(g, source, sink, avoid, limit, cost)
}

fn route(
    g: &Graph,
    source: &VertexSet,
    sink: &VertexSet,
    avoid: &VertexSet,
    limit: Option<usize>,
    cost: impl Fn(Vertex, Vertex) -> i64,
) -> MengerResult {
    let verts: Vec<Vertex> = g.vertices().filter(|v| !avoid.contains(v)).collect();
    let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = Network::with_nodes(2 * n + 2);
    for (i, &v) in verts.iter().enumerate() {
        if source.contains(&v) {
            net.add(s, 2 * i, INF, 0);
        }
    }
    for (i, &v) in verts.iter().enumerate() {
        net.add(2 * i, 2 * i + 1, 1, 0);
        if sink.contains(&v) {
            net.add(2 * i + 1, t, INF, 0);
        }
        for w in g.neighbors(v) {
            if let Some(&j) = index.get(&w) {
                net.add(2 * i + 1, 2 * j, INF, cost(v, w));
            }
        }
    }
    net.flow(s, t, limit.unwrap_or(usize::MAX));

    let reach = net.residual_reach(s);
    let separator = (0..n)
        .filter(|&i| reach[2 * i] && !reach[2 * i + 1])
        .map(|i| verts[i])
        .collect();

    // Flow decomposition: follow saturated arcs out of the super source.
    let used = |net: &Network, a: usize| a.is_multiple_of(2) && net.arcs[a ^ 1].cap > 0;
    let mut paths = Vec::new();
    let starts: Vec<usize> = net.out[s].clone();
    for a in starts {
        if !used(&net, a) {
            continue;
        }
        let mut seq = Vec::new();
        let mut node = net.arcs[a].to;
        loop {
            if node == t {
                break;
            }
            if node.is_multiple_of(2) {
                seq.push(verts[node / 2]);
            }
            let next = net.out[node].iter().copied().find(|&b| used(&net, b));
            let Some(b) = next else { break };
            net.arcs[b ^ 1].cap -= 1;
            node = net.arcs[b].to;
        }
        paths.push(trim(seq, source, sink));
    }
    paths.sort();
    MengerResult { paths, separator }
}

/// Cuts a walk down to its last source vertex and the first sink vertex after it.
fn trim(seq: Vec<Vertex>, source: &VertexSet, sink: &VertexSet) -> Path {
    let start = seq.iter().rposition(|v| source.contains(v)).unwrap_or(0);
    let end = seq[start..]
        .iter()
        .position(|v| sink.contains(v))
        .map_or(seq.len() - 1, |k| start + k);
    Path::new(seq[start..=end].to_vec())
}
