//! Named property suites run by `zeropath verify`.

use serde::Serialize;

use crate::duality::{duality_report, max_packing, min_hitting_set};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::modpath::{enumerate_a_paths, find_zero_a_path, gamma_nonzero_a_paths, is_a_path, ResidueSpec};
use crate::reductions::generate::{
    generate_bipartite_instance, generate_block_instance, generate_random_instance, generate_random_windmill,
    linkage_pattern,
};
use crate::reductions::{
    bipartite_split, block_gadget, build_gamma_instance, pullback_gadget_hitting_set, pullback_split_hitting_set,
};
use crate::surgery::extract_zero_path_from_windmill;
use crate::walls::linkage::{classify_endpoint_pairs, LinkageKind};
use crate::walls::tangle::{check_tangle_axioms, subwall_tangle_truncation_check, CliqueTangle, WallTangle};
use crate::walls::{build_elementary_wall, extract_subwall, subdivide_wall, SubdivisionRule, WallWindow};

pub const SUITES: [&str; 7] = ["windmill", "gadget", "split", "duality", "wall", "linkage", "tangle"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    /// One line per failed trial.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn default_trials(suite: &str) -> Option<usize> {
    Some(match suite {
        "windmill" => 500,
        "gadget" => 100,
        "split" => 200,
        "duality" => 300,
        "wall" => 7,
        "linkage" => 200,
        "tangle" => 3,
        _ => return None,
    })
}

/// Runs `trials` trials of `suite`; trial `i` uses seed `seed + i`.
pub fn run_suite(suite: &str, trials: Option<usize>, seed: u64) -> Result<SuiteReport> {
    let trials = trials
        .or_else(|| default_trials(suite))
        .ok_or_else(|| Error::InvalidParameters(format!("unknown suite `{suite}`; known: {}", SUITES.join(", "))))?;
    let trial: fn(u64, usize) -> Result<()> = match suite {
        "windmill" => windmill_trial,
        "gadget" => gadget_trial,
        "split" => split_trial,
        "duality" => duality_trial,
        "wall" => wall_trial,
        "linkage" => linkage_trial,
        _ => tangle_trial,
    };
    let mut failures = Vec::new();
    for i in 0..trials {
        let s = seed.wrapping_add(i as u64);
        if let Err(e) = trial(s, i) {
            failures.push(format!("trial {i} (seed {s}): {e}"));
        }
    }
    Ok(SuiteReport { suite: suite.into(), seed, trials, passed: trials - failures.len(), failures })
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(what()))
    }
}

fn windmill_trial(seed: u64, _: usize) -> Result<()> {
    let (w, g) = generate_random_windmill(seed)?;
    let p = extract_zero_path_from_windmill(&w)?;
    p.validate_in(&g)?;
    let tips: VertexSet = w.tips().into_iter().collect();
    check(is_a_path(&g, &tips, &p) && p.length() % 4 == 0, || format!("{p:?} is not a zero tip path"))
}

fn gadget_trial(seed: u64, _: usize) -> Result<()> {
    let zero = ResidueSpec::zero_mod_4();
    let b = generate_block_instance(seed, 200)?;
    let inst = block_gadget(&b.graph, &b.a, &b.block)?;
    let before = find_zero_a_path(&b.graph, &b.a, zero).is_some();
    let after = find_zero_a_path(&inst.graph, &b.a, zero).is_some();
    check(before == after, || format!("zero path existence {before} in g but {after} in g*"))?;
    let (_, x_star) = min_hitting_set(&inst.graph, &b.a, zero)?;
    let x = pullback_gadget_hitting_set(&b.graph, &inst, &x_star);
    check(find_zero_a_path(&b.graph.without(&x), &b.a, zero).is_none(), || {
        format!("pulled-back set {x:?} misses a zero path")
    })
}

fn split_trial(seed: u64, i: usize) -> Result<()> {
    let zero = ResidueSpec::zero_mod_4();
    let (g, a) = generate_bipartite_instance(seed, 6 + i % 5, 0.35, 2 + i % 3)?;
    let s = bipartite_split(&g, &a)?;
    let (nu, _) = max_packing(&g, &a, zero)?;
    let mut nus = Vec::new();
    let mut xs = Vec::new();
    for side in [1, 2] {
        let (h, ai) = s.side(side);
        let gamma = build_gamma_instance(&h, &ai)?;
        let mut nonzero: Vec<_> = gamma_nonzero_a_paths(&gamma, &ai)?.iter().map(|p| p.canonical()).collect();
        let mut zeros: Vec<_> = enumerate_a_paths(&h, &ai, zero, None)?.iter().map(|p| p.canonical()).collect();
        nonzero.sort();
        zeros.sort();
        check(nonzero == zeros, || format!("side {side}: non-zero paths differ from zero paths"))?;
        nus.push(max_packing(&h, &ai, zero)?.0);
        xs.push(min_hitting_set(&h, &ai, zero)?.1);
    }
    check(nus[0].max(nus[1]) <= nu && nu <= nus[0] + nus[1], || {
        format!("packing {nu} in g against {nus:?} in the sides")
    })?;
    let x = pullback_split_hitting_set(&s, &xs[0], &xs[1]);
    check(find_zero_a_path(&g.without(&x), &a, zero).is_none(), || format!("pulled-back set {x:?} misses a path"))
}

fn duality_trial(seed: u64, i: usize) -> Result<()> {
    let n = 6 + i % 7;
    let (g, a) = generate_random_instance(seed, n, 0.3, 2 + i % 4)?;
    let r = duality_report(&g, &a, ResidueSpec::any())?;
    let (nu, tau) = (r.packing_number, r.covering_number);
    check(nu <= tau && tau <= 2 * nu, || format!("packing {nu}, covering {tau}"))
}

fn wall_trial(_: u64, i: usize) -> Result<()> {
    let n = 2 + i;
    let w = build_elementary_wall(n)?;
    w.validate()?;
    check(w.bricks().iter().all(|b| b.len() == 6), || "brick is not a 6-cycle".into())?;
    check(w.graph().vertices().all(|v| (2..=3).contains(&w.graph().degree(v))), || "degree outside 2..3".into())?;
    let w4 = subdivide_wall(&w, &SubdivisionRule::uniform(4))?;
    w4.validate()?;
    let top = w4.top_row();
    let pos: Vec<usize> = w4.nails().iter().map(|&x| top.position(x).unwrap()).collect();
    for x in 0..pos.len() {
        for y in x + 1..pos.len() {
            check((pos[y] - pos[x]).is_multiple_of(4), || format!("nails {x} and {y} are not 0 mod 4 apart"))?;
        }
    }
    Ok(())
}

fn linkage_trial(seed: u64, i: usize) -> Result<()> {
    let size = 1 + i % 4;
    if i < 3 {
        let kind = [LinkageKind::InSeries, LinkageKind::Crossing, LinkageKind::Nested][i];
        let got = classify_endpoint_pairs(&linkage_pattern(kind, 2 + size)?);
        return check(got == kind, || format!("{kind:?} pattern classified as {got:?}"));
    }
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ends: Vec<usize> = (0..2 * size).collect();
    ends.shuffle(&mut rng);
    let pairs: Vec<(usize, usize)> = ends.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
    let pure = |f: fn((usize, usize), (usize, usize)) -> bool| {
        pairs.iter().all(|&p| pairs.iter().all(|&q| p == q || p.0 > q.0 || f(p, q)))
    };
    let expect = if pure(|p, q| p.1 < q.0) {
        LinkageKind::InSeries
    } else if pure(|p, q| q.0 < p.1 && p.1 < q.1) {
        LinkageKind::Crossing
    } else if pure(|p, q| q.1 < p.1) {
        LinkageKind::Nested
    } else {
        LinkageKind::Mixed
    };
    let got = classify_endpoint_pairs(&pairs);
    check(got == expect, || format!("{pairs:?}: expected {expect:?}, got {got:?}"))
}

fn tangle_trial(_: u64, i: usize) -> Result<()> {
    match i % 3 {
        0 => {
            let w = build_elementary_wall(3)?;
            let v = check_tangle_axioms(w.graph(), &WallTangle::new(&w))?;
            check(v.is_none(), || format!("wall tangle violates {v:?}"))
        }
        1 => {
            for t in [5, 6] {
                let mut g = crate::graph::Graph::with_vertices(t);
                for u in 0..t {
                    for v in u + 1..t {
                        g.add_edge(u, v)?;
                    }
                }
                let v = check_tangle_axioms(&g, &CliqueTangle::new(g.vertex_set()))?;
                check(v.is_none(), || format!("K{t} tangle violates {v:?}"))?;
            }
            Ok(())
        }
        _ => {
            let w = build_elementary_wall(4)?;
            let sub = extract_subwall(&w, &WallWindow::square(2, 2, 2))?;
            check(subwall_tangle_truncation_check(&w, &sub)?, || "truncation check failed".into())
        }
    }
}
