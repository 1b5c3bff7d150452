//! Bipartitions, biconnected blocks and B-bridges.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// 2-colouring of `g - forbidden`, or `None` if that graph has an odd cycle.
/// Each component's smallest vertex goes to the first class.
pub fn bipartition(g: &Graph, forbidden: &VertexSet) -> Option<(VertexSet, VertexSet)> {
    let colour = two_colouring(g, forbidden)?;
    let mut sides = (VertexSet::new(), VertexSet::new());
    for (v, c) in colour {
        if c { sides.1.insert(v) } else { sides.0.insert(v) };
    }
    Some(sides)
}

/// Colour map of `g - forbidden` (false for the first class).
pub fn two_colouring(g: &Graph, forbidden: &VertexSet) -> Option<BTreeMap<Vertex, bool>> {
    let mut colour: BTreeMap<Vertex, bool> = BTreeMap::new();
    for s in g.vertices() {
        if forbidden.contains(&s) || colour.contains_key(&s) {
            continue;
        }
        colour.insert(s, false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[&u];
            for w in g.neighbors(u) {
                if forbidden.contains(&w) {
                    continue;
                }
                match colour.get(&w) {
                    Some(&cw) if cw == cu => return None,
                    Some(_) => {}
                    None => {
                        colour.insert(w, !cu);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Some(colour)
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_colouring(g, &VertexSet::new()).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: VertexSet,
    /// Cutvertices of the whole graph that lie in this block.
    pub cutvertices: VertexSet,
}

/// Biconnected components. Isolated vertices form singleton blocks. Blocks
/// are sorted by their vertex sets.
pub fn blocks_and_cutvertices(g: &Graph) -> Vec<Block> {
    let mut st = Tarjan {
        g,
        disc: BTreeMap::new(),
        low: BTreeMap::new(),
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in g.vertices() {
        if st.disc.contains_key(&v) {
            continue;
        }
        if g.degree(v) == 0 {
            st.blocks.push([v].into());
            st.disc.insert(v, 0);
            continue;
        }
        st.visit(v, None);
    }
    let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
    for b in &st.blocks {
        for &v in b {
            *count.entry(v).or_default() += 1;
        }
    }
    let mut out: Vec<Block> = st
        .blocks
        .into_iter()
        .map(|vertices| {
            let cutvertices = vertices.iter().copied().filter(|v| count[v] > 1).collect();
            Block { vertices, cutvertices }
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

pub fn cutvertices(g: &Graph) -> VertexSet {
    blocks_and_cutvertices(g).into_iter().flat_map(|b| b.cutvertices).collect()
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: BTreeMap<Vertex, usize>,
    low: BTreeMap<Vertex, usize>,
    time: usize,
    stack: Vec<(Vertex, Vertex)>,
    blocks: Vec<VertexSet>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: Vertex, parent: Option<Vertex>) {
        self.time += 1;
        self.disc.insert(u, self.time);
        self.low.insert(u, self.time);
        let nbrs: Vec<Vertex> = self.g.neighbors(u).collect();
        for w in nbrs {
            if Some(w) == parent {
                continue;
            }
            match self.disc.get(&w).copied() {
                None => {
                    self.stack.push((u, w));
                    self.visit(w, Some(u));
                    let lw = self.low[&w];
                    if lw < self.low[&u] {
                        self.low.insert(u, lw);
                    }
                    if lw >= self.disc[&u] {
                        let mut block = VertexSet::new();
                        while let Some((x, y)) = self.stack.pop() {
                            block.insert(x);
                            block.insert(y);
                            if (x, y) == (u, w) {
                                break;
                            }
                        }
                        self.blocks.push(block);
                    }
                }
                Some(dw) if dw < self.disc[&u] => {
                    self.stack.push((u, w));
                    if dw < self.low[&u] {
                        self.low.insert(u, dw);
                    }
                }
                Some(_) => {}
            }
        }
    }
}

/// Components of `G - (V(B) minus its cutvertices) - E(B)` that contain a
/// cutvertex of `B`, in order of their smallest vertex.
pub fn b_bridges(g: &Graph, block: &VertexSet) -> Result<Vec<VertexSet>> {
    let blocks = blocks_and_cutvertices(g);
    let b = blocks
        .iter()
        .find(|b| &b.vertices == block)
        .ok_or_else(|| Error::NotABlock(block.iter().copied().collect()))?;
    let interior: VertexSet = b.vertices.difference(&b.cutvertices).copied().collect();
    let mut h = g.without(&interior);
    let cuts: Vec<Vertex> = b.cutvertices.iter().copied().collect();
    for (i, &x) in cuts.iter().enumerate() {
        for &y in &cuts[i + 1..] {
            h.remove_edge(x, y);
        }
    }
    Ok(h
        .components()
        .into_iter()
        .filter(|c| c.iter().any(|v| b.cutvertices.contains(v)))
        .collect())
}
