//! Windmills and the zero tip-to-tip path they always contain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex, VertexSet};

/// Three arms from a common hub, each overlapping its own odd cycle.
///
/// A cycle may pass through the hub, but otherwise avoids the other arms
/// and cycles; this admits arms of length one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Windmill {
    pub hub: Vertex,
    /// Arms run from the hub to their tips.
    pub arms: [Path; 3],
    /// Cyclic vertex sequences.
    pub cycles: [Vec<Vertex>; 3],
}

impl Windmill {
    pub fn tips(&self) -> [Vertex; 3] {
        [self.arms[0].last(), self.arms[1].last(), self.arms[2].last()]
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mut s = VertexSet::new();
        for i in 0..3 {
            s.extend(self.arms[i].vertices());
            s.extend(&self.cycles[i]);
        }
        s
    }

    /// The union of arms and cycles.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for v in self.vertex_set() {
            g.add_vertex(v);
        }
        for i in 0..3 {
            for (u, v) in self.arms[i].edges() {
                g.add_edge(u, v).expect("validated arm");
            }
            let c = &self.cycles[i];
            for j in 0..c.len() {
                g.add_edge(c[j], c[(j + 1) % c.len()]).expect("validated cycle");
            }
        }
        g
    }

    /// Positions `(p, q)`, `p < q`, of the stretch of arm `i` shared with its
    /// cycle.
    fn overlap(&self, i: usize) -> Result<(usize, usize)> {
        let fail = |m: String| Error::InvalidWindmill(format!("arm {i}: {m}"));
        let arm = &self.arms[i];
        let on: VertexSet = self.cycles[i].iter().copied().collect();
        let hits: Vec<usize> =
            (0..arm.vertices().len()).filter(|&k| on.contains(&arm.vertices()[k])).collect();
        let (&p, &q) = match (hits.first(), hits.last()) {
            (Some(p), Some(q)) if q > p => (p, q),
            _ => return Err(fail("shares fewer than two vertices with its cycle".into())),
        };
        if hits.len() != q - p + 1 {
            return Err(fail("meets its cycle in a disconnected set".into()));
        }
        let c = &self.cycles[i];
        let pos = |v: Vertex| c.iter().position(|&x| x == v).unwrap();
        for k in p..q {
            let (a, b) = (pos(arm.vertices()[k]), pos(arm.vertices()[k + 1]));
            if (a + 1) % c.len() != b && (b + 1) % c.len() != a {
                return Err(fail("overlap does not follow cycle edges".into()));
            }
        }
        Ok((p, q))
    }

    /// Checks every defining condition.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidWindmill(m));
        for (i, arm) in self.arms.iter().enumerate() {
            if arm.is_empty() || arm.first() != self.hub || arm.length() == 0 || !arm.is_simple() {
                return fail(format!("arm {i} is not a path of positive length from the hub"));
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let meet: VertexSet =
                    self.arms[i].vertex_set().intersection(&self.arms[j].vertex_set()).copied().collect();
                if meet != [self.hub].into() {
                    return fail(format!("arms {i} and {j} meet outside the hub"));
                }
            }
        }
        for (i, c) in self.cycles.iter().enumerate() {
            let set: VertexSet = c.iter().copied().collect();
            if c.len() < 3 || set.len() != c.len() || c.len() % 2 == 0 {
                return fail(format!("cycle {i} is not a simple odd cycle"));
            }
        }
        for i in 0..3 {
            let ci: VertexSet = self.cycles[i].iter().copied().collect();
            for j in (0..3).filter(|&j| j != i) {
                let other: VertexSet = self.arms[j]
                    .vertices()
                    .iter()
                    .chain(&self.cycles[j])
                    .copied()
                    .collect();
                if ci.intersection(&other).any(|&v| v != self.hub) {
                    return fail(format!("cycle {i} meets arm or cycle {j}"));
                }
            }
            self.overlap(i)?;
        }
        Ok(())
    }

    /// The two hub-to-tip routes of arm `i`: the arm itself and the detour
    /// around the other side of its cycle. Their lengths differ in parity.
    pub fn arm_routes(&self, i: usize) -> Result<[Path; 2]> {
        let (p, q) = self.overlap(i)?;
        let arm = &self.arms[i];
        let c = &self.cycles[i];
        let n = c.len();
        let (s, t) = (arm.vertices()[p], arm.vertices()[q]);
        let ps = c.iter().position(|&x| x == s).unwrap();
        let next = arm.vertices()[p + 1];
        // Walk around the cycle from s away from the arm until t.
        let forward = c[(ps + 1) % n] != next;
        let mut detour = vec![s];
        let mut k = ps;
        while *detour.last().unwrap() != t {
            k = if forward { (k + 1) % n } else { (k + n - 1) % n };
            detour.push(c[k]);
        }
        let mut seq = arm.vertices()[..p].to_vec();
        seq.extend(detour);
        seq.extend_from_slice(&arm.vertices()[q + 1..]);
        Ok([arm.clone(), Path::new(seq)])
    }
}

/// A tip-to-tip path of length divisible by 4, following the case analysis
/// on route lengths modulo 4.
pub fn extract_zero_path_from_windmill(w: &Windmill) -> Result<Path> {
    w.validate()?;
    let routes = [w.arm_routes(0)?, w.arm_routes(1)?, w.arm_routes(2)?];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for ri in &routes[i] {
            for rj in &routes[j] {
                if (ri.length() + rj.length()) % 4 == 0 {
                    return ri.reversed().join(rj);
                }
            }
        }
    }
    Err(Error::Internal("windmill without a zero tip-to-tip path".into()))
}
