//! A-paths with a prescribed length residue.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{path_weight, Graph, Path, Vertex, VertexSet};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Length residue `d` modulo `m`. `m = 1` accepts every length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueSpec {
    modulus: u32,
    residue: u32,
}

impl ResidueSpec {
    pub fn new(modulus: u32, residue: u32) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::InvalidResidue { modulus, residue });
        }
        Ok(ResidueSpec { modulus, residue })
    }

    /// Lengths divisible by 4.
    pub fn zero_mod_4() -> Self {
        ResidueSpec { modulus: 4, residue: 0 }
    }

    /// Every A-path qualifies.
    pub fn any() -> Self {
        ResidueSpec { modulus: 1, residue: 0 }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn accepts(&self, length: usize) -> bool {
        length % self.modulus as usize == self.residue as usize
    }
}

impl Default for ResidueSpec {
    fn default() -> Self {
        Self::zero_mod_4()
    }
}

/// Both endpoints in `a`, distinct, and no interior vertex in `a`.
pub fn is_a_path(g: &Graph, a: &VertexSet, p: &Path) -> bool {
    p.vertices().len() >= 2
        && p.validate_in(g).is_ok()
        && a.contains(&p.first())
        && a.contains(&p.last())
        && p.interior().iter().all(|v| !a.contains(v))
}

/// `is_a_path` plus the residue condition.
pub fn qualifies(g: &Graph, a: &VertexSet, spec: ResidueSpec, p: &Path) -> bool {
    is_a_path(g, a, p) && spec.accepts(p.length())
}

/// What a completed A-path is measured by.
#[derive(Clone, Copy)]
enum Measure {
    Length(ResidueSpec),
    /// Label sum must be non-zero.
    Nonzero(u32),
}

/// Visits every A-path once, lower endpoint first, in lexicographic order.
fn walk(
    g: &Graph,
    a: &VertexSet,
    measure: Measure,
    mut visit: impl FnMut(&[Vertex]) -> ControlFlow<()>,
) {
    let label = |u, v| g.label(u, v).unwrap_or(0);
    let mut on_path = VertexSet::new();
    // Explicit stack of (vertex, neighbour list, next index, weight so far).
    for &s in a.iter().filter(|&&s| g.contains(s)) {
        let mut seq = vec![s];
        on_path.clear();
        on_path.insert(s);
        let mut stack: Vec<(Vec<Vertex>, usize, u32)> = vec![(g.neighbors(s).collect(), 0, 0)];
        while let Some((nbrs, idx, weight)) = stack.last_mut() {
            let Some(&w) = nbrs.get(*idx) else {
                stack.pop();
                let v = seq.pop().unwrap();
                on_path.remove(&v);
                continue;
            };
            *idx += 1;
            if on_path.contains(&w) {
                continue;
            }
            let u = *seq.last().unwrap();
            let wt = match measure {
                Measure::Length(_) => 0,
                Measure::Nonzero(m) => (*weight + label(u, w)) % m,
            };
            if a.contains(&w) {
                if w > s {
                    seq.push(w);
                    let ok = match measure {
                        Measure::Length(spec) => spec.accepts(seq.len() - 1),
                        Measure::Nonzero(_) => wt != 0,
                    };
                    let flow = if ok { visit(&seq) } else { ControlFlow::Continue(()) };
                    seq.pop();
                    if flow.is_break() {
                        return;
                    }
                }
                continue;
            }
            seq.push(w);
            on_path.insert(w);
            stack.push((g.neighbors(w).collect(), 0, wt));
        }
    }
}

/// All qualifying A-paths, canonically oriented and in lexicographic order.
/// Fails with `EnumerationOverflow` once more than `cap` paths are found.
pub fn enumerate_a_paths(
    g: &Graph,
    a: &VertexSet,
    spec: ResidueSpec,
    cap: Option<usize>,
) -> Result<Vec<Path>> {
    collect(g, a, Measure::Length(spec), cap.unwrap_or(DEFAULT_CAP))
}

fn collect(g: &Graph, a: &VertexSet, measure: Measure, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    let mut overflow = false;
    walk(g, a, measure, |seq| {
        if out.len() == cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(Path::new(seq.to_vec()));
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::EnumerationOverflow { cap });
    }
    Ok(out)
}

/// The lexicographically first qualifying A-path, if any.
pub fn find_zero_a_path(g: &Graph, a: &VertexSet, spec: ResidueSpec) -> Option<Path> {
    let mut found = None;
    walk(g, a, Measure::Length(spec), |seq| {
        found = Some(Path::new(seq.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// A-paths of non-zero label weight.
pub fn gamma_nonzero_a_paths(g: &Graph, a: &VertexSet) -> Result<Vec<Path>> {
    let m = g.modulus().ok_or(Error::MissingLabels)?;
    collect(g, a, Measure::Nonzero(m), DEFAULT_CAP)
}

/// Whether `p` is an A-path of non-zero weight.
pub fn is_gamma_nonzero(g: &Graph, a: &VertexSet, p: &Path) -> Result<bool> {
    Ok(is_a_path(g, a, p) && path_weight(g, p)? != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn recognises_a_paths() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let a: VertexSet = [0, 1, 3].into();
        assert!(is_a_path(&g, &a, &Path::new(vec![0, 1])));
        assert!(!is_a_path(&g, &a, &Path::new(vec![0, 1, 2, 3])));
        assert!(!is_a_path(&g, &a, &Path::new(vec![1, 2])));
    }

    #[test]
    fn four_cycle_halves() {
        let g = cycle(4);
        let a: VertexSet = [0, 2].into();
        let two = enumerate_a_paths(&g, &a, ResidueSpec::new(4, 2).unwrap(), None).unwrap();
        assert_eq!(two, vec![Path::new(vec![0, 1, 2]), Path::new(vec![0, 3, 2])]);
        assert!(enumerate_a_paths(&g, &a, ResidueSpec::zero_mod_4(), None).unwrap().is_empty());
    }

    #[test]
    fn eight_cycle_zero_path() {
        let g = cycle(8);
        let p = find_zero_a_path(&g, &[0, 4].into(), ResidueSpec::zero_mod_4()).unwrap();
        assert_eq!(p.length(), 4);
        assert_eq!(find_zero_a_path(&g, &VertexSet::new(), ResidueSpec::zero_mod_4()), None);
    }

    #[test]
    fn overflow_is_an_error() {
        let g = cycle(4);
        let r = enumerate_a_paths(&g, &[0, 2].into(), ResidueSpec::any(), Some(1));
        assert_eq!(r, Err(Error::EnumerationOverflow { cap: 1 }));
    }

    #[test]
    fn gamma_all_zero_labels() {
        let mut g = cycle(6);
        g.set_modulus(4).unwrap();
        assert!(gamma_nonzero_a_paths(&g, &[0, 3].into()).unwrap().is_empty());
        assert_eq!(gamma_nonzero_a_paths(&cycle(3), &[0].into()), Err(Error::MissingLabels));
    }

    #[test]
    fn residue_spec_bounds() {
        assert!(ResidueSpec::new(4, 4).is_err());
        assert!(ResidueSpec::new(0, 0).is_err());
        assert!(ResidueSpec::any().accepts(7));
    }
}
