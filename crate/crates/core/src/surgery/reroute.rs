//! Untangling two families of paths that end on a common set `X`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{edge_key, pairwise_disjoint, Graph, Path, Vertex, VertexSet};

/// Output of [`reroute_two_families`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rerouted {
    /// `t` members of the first family, in input order.
    pub kept: Vec<Path>,
    /// `t` disjoint `B`–`X` paths, each oriented from `B` to `X`.
    pub rerouted: Vec<Path>,
}

fn orient(p: &Path, from: &VertexSet, to: &VertexSet) -> Option<Path> {
    if from.contains(&p.first()) && to.contains(&p.last()) {
        Some(p.clone())
    } else if from.contains(&p.last()) && to.contains(&p.first()) {
        Some(p.reversed())
    } else {
        None
    }
}

fn check_family(h: &Graph, ps: &[Path], from: &VertexSet, x: &VertexSet, what: &str) -> Result<Vec<Path>> {
    if !pairwise_disjoint(ps) {
        return Err(Error::Precondition(format!("{what} paths are not disjoint")));
    }
    ps.iter()
        .map(|p| {
            p.validate_in(h)?;
            orient(p, from, x).ok_or_else(|| Error::PreconditionWitness {
                reason: format!("{what} path does not join its two terminal sets"),
                witness: p.clone(),
            })
        })
        .collect()
}

/// Number of edges of `paths` outside `union`.
fn potential(paths: &[Path], union: &BTreeSet<(Vertex, Vertex)>) -> usize {
    paths
        .iter()
        .flat_map(|p| p.edges())
        .filter(|&(u, v)| !union.contains(&edge_key(u, v)))
        .count()
}

/// Given `2t` disjoint `A`–`X` paths `qs` and `t` disjoint `B`–`X` paths
/// `rs`, returns `t` of the `qs` together with `t` disjoint `B`–`X` paths,
/// all pairwise disjoint and inside the union of the inputs.
///
/// The `B`–`X` family starts as `rs` and is rerouted along `qs` while the
/// number of its edges outside the `qs` strictly decreases.
pub fn reroute_two_families(
    h: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    x: &VertexSet,
    qs: &[Path],
    rs: &[Path],
) -> Result<Rerouted> {
    let t = rs.len();
    if qs.len() < 2 * t {
        return Err(Error::Precondition(format!(
            "need {} paths in the first family, found {}",
            2 * t,
            qs.len()
        )));
    }
    let qs = check_family(h, qs, a, x, "first-family")?;
    let mut s = check_family(h, rs, b, x, "second-family")?;
    let q_edges: BTreeSet<(Vertex, Vertex)> =
        qs.iter().flat_map(|q| q.edges()).map(|(u, v)| edge_key(u, v)).collect();
    let mut pot = potential(&s, &q_edges);
    loop {
        let on_s: VertexSet = s.iter().flat_map(|p| p.vertices()).copied().collect();
        let s_ends: VertexSet = s.iter().map(|p| p.last()).collect();
        let bad = qs.iter().find(|q| {
            q.vertices().iter().any(|v| on_s.contains(v))
                && ![q.first(), q.last()].iter().any(|v| x.contains(v) && s_ends.contains(v))
        });
        let Some(q) = bad else { break };
        // Walk from the X-end of q to the first vertex on some S.
        let q = if x.contains(&q.last()) { q.reversed() } else { q.clone() };
        let k = q.vertices().iter().position(|v| on_s.contains(v)).unwrap();
        let y = q.vertices()[k];
        let i = s.iter().position(|p| p.contains(y)).unwrap();
        let head = s[i].segment(0, s[i].position(y).unwrap());
        let new = head.join(&q.segment(k, 0))?;
        // Start again at the last vertex of B, should q pass through B.
        let from = (0..new.vertices().len()).rev().find(|&j| b.contains(&new.vertices()[j])).unwrap();
        s[i] = new.segment(from, new.length());
        let next = potential(&s, &q_edges);
        if next >= pot {
            return Err(Error::Internal("rerouting did not decrease the potential".into()));
        }
        pot = next;
    }
    let on_s: VertexSet = s.iter().flat_map(|p| p.vertices()).copied().collect();
    let kept: Vec<Path> = qs
        .iter()
        .filter(|q| q.vertices().iter().all(|v| !on_s.contains(v)))
        .take(t)
        .cloned()
        .collect();
    if kept.len() < t {
        return Err(Error::Internal(format!("only {} untouched paths remain", kept.len())));
    }
    Ok(Rerouted { kept, rerouted: s })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_inputs_pass_through() {
        // Paths 0-1, 2-3 (A to X) and 4-5 (B to X).
        let h = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let qs = [Path::new(vec![0, 1]), Path::new(vec![2, 3])];
        let rs = [Path::new(vec![4, 5])];
        let r = reroute_two_families(&h, &[0, 2].into(), &[4].into(), &[1, 3, 5].into(), &qs, &rs)
            .unwrap();
        assert_eq!(r.kept, vec![qs[0].clone()]);
        assert_eq!(r.rerouted, vec![rs[0].clone()]);
    }

    #[test]
    fn crossing_path_is_rerouted() {
        // Q1 = 0-1-2, Q2 = 3-4-5; R = 6-1-7 crosses Q1 at 1 and ends at 7.
        let h = Graph::from_edges(8, &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 1), (1, 7)]).unwrap();
        let qs = [Path::new(vec![0, 1, 2]), Path::new(vec![3, 4, 5])];
        let rs = [Path::new(vec![6, 1, 7])];
        let x: VertexSet = [2, 5, 7].into();
        let r = reroute_two_families(&h, &[0, 3].into(), &[6].into(), &x, &qs, &rs).unwrap();
        assert_eq!(r.rerouted, vec![Path::new(vec![6, 1, 2])]);
        assert_eq!(r.kept, vec![qs[1].clone()]);
    }
}
