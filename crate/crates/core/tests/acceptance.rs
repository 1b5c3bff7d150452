//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zeropath::connectivity::is_bipartite;
use zeropath::duality::{max_packing, min_hitting_set};
use zeropath::graph::{Graph, Path, Vertex, VertexSet};
use zeropath::modpath::ResidueSpec;
use zeropath::reductions::generate::{
    generate_assembly_instance, generate_bipartite_instance, generate_block_instance, generate_odd_linkage,
    generate_random_instance, generate_random_windmill,
};
use zeropath::reductions::{
    bipartite_split, block_gadget, build_counterexample, build_gamma_instance, d2_reduction,
    pullback_gadget_hitting_set, pullback_split_hitting_set,
};
use zeropath::surgery::{assemble_zero_paths, extract_zero_path_from_windmill, reroute_two_families};
use zeropath::walls::linkage::{classify_endpoint_pairs, classify_linkage, LinkageKind};
use zeropath::walls::tangle::{
    check_tangle_axioms, subwall_tangle_truncation_check, CliqueTangle, FnOracle, WallTangle,
};
use zeropath::walls::{build_elementary_wall, extract_subwall, subdivide_wall, SubdivisionRule, WallWindow};

use common::*;

type Outcome = Result<String, String>;

/// `(ν, τ)` pairs from every exact solve, for the weak duality criterion.
#[derive(Default)]
struct Solved(Vec<(String, usize, usize)>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn zero() -> ResidueSpec {
    ResidueSpec::zero_mod_4()
}

/// Exact ν and τ from the library, each cross-checked against the oracles.
fn solve_checked(g: &Graph, a: &VertexSet, spec: ResidueSpec, tag: &str, solved: &mut Solved) -> Result<(usize, usize), String> {
    let (nu, _) = max_packing(g, a, spec).map_err(e2s)?;
    let (tau, _) = min_hitting_set(g, a, spec).map_err(e2s)?;
    let paths = a_paths(g, a, |l| spec.accepts(l));
    let (onu, otau) = (packing(&paths), hitting(&paths));
    ensure(nu == onu && tau == otau, || format!("{tag}: solver ({nu}, {tau}) vs oracle ({onu}, {otau})"))?;
    solved.0.push((tag.into(), nu, tau));
    Ok((nu, tau))
}

fn c1_windmills(_: &mut Solved) -> Outcome {
    for seed in 0..500 {
        let (w, _) = generate_random_windmill(seed).map_err(e2s)?;
        let p = extract_zero_path_from_windmill(&w).map_err(|e| format!("seed {seed}: {e}"))?;
        let h = w.graph();
        let tips: VertexSet = w.tips().into_iter().collect();
        let all: BTreeSet<Vec<Vertex>> = zero_paths(&h, &tips).into_iter().collect();
        ensure(is_path_in(&h, &p) && all.contains(&canonical(p.vertices())), || {
            format!("seed {seed}: {p:?} is not among the {} zero tip paths", all.len())
        })?;
    }
    Ok("500 windmills, every extracted path found by exhaustive enumeration".into())
}

fn c2_gallai(solved: &mut Solved) -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..300u64 {
        let n = 4 + (i % 9) as usize;
        let a = 2 + (i % 4) as usize;
        let (g, a) = generate_random_instance(1000 + i, n, 0.3, a.min(n)).map_err(e2s)?;
        let (nu, tau) = solve_checked(&g, &a, ResidueSpec::any(), &format!("gallai {i}"), solved)?;
        ensure(tau <= 2 * nu, || format!("instance {i}: tau {tau} > 2 nu = {}", 2 * nu))?;
        if nu > 0 {
            worst = worst.max(tau as f64 / nu as f64);
        }
    }
    Ok(format!("300 instances, max tau/nu = {worst:.2}"))
}

fn c4_bipartite(solved: &mut Solved) -> Outcome {
    let mut with_paths = 0;
    for i in 0..200u64 {
        let n = 6 + (i % 5) as usize;
        let (g, a) = generate_bipartite_instance(2000 + i, n, 0.4, 2 + (i % 3) as usize).map_err(e2s)?;
        let s = bipartite_split(&g, &a).map_err(e2s)?;
        ensure(is_bipartite(&s.graph), || format!("instance {i}: split graph not bipartite"))?;
        let (nu, _) = solve_checked(&g, &a, zero(), &format!("split {i}"), solved)?;
        let mut side_nu = Vec::new();
        let mut side_x = Vec::new();
        for side in [1, 2] {
            let (h, ai) = s.side(side);
            let gamma = build_gamma_instance(&h, &ai).map_err(e2s)?;
            let weight = |p: &Vec<Vertex>| p.windows(2).map(|w| gamma.label(w[0], w[1]).unwrap()).sum::<u32>() % 4;
            let nonzero: BTreeSet<Vec<Vertex>> = a_paths(&h, &ai, |_| true).into_iter().filter(|p| weight(p) != 0).collect();
            let zeros: BTreeSet<Vec<Vertex>> = zero_paths(&h, &ai).into_iter().collect();
            ensure(nonzero == zeros, || format!("instance {i} side {side}: non-zero and zero paths differ"))?;
            let (nu_i, _) = solve_checked(&h, &ai, zero(), &format!("split {i}.{side}"), solved)?;
            side_nu.push(nu_i);
            side_x.push(min_hitting_set(&h, &ai, zero()).map_err(e2s)?.1);
        }
        ensure((nu > 0) == (side_nu[0] + side_nu[1] > 0), || format!("instance {i}: existence differs"))?;
        ensure(side_nu[0].max(side_nu[1]) <= nu && nu <= side_nu[0] + side_nu[1], || {
            format!("instance {i}: nu {nu} against sides {side_nu:?}")
        })?;
        let x = pullback_split_hitting_set(&s, &side_x[0], &side_x[1]);
        ensure(zero_paths(&g.without(&x), &a).is_empty(), || format!("instance {i}: pulled-back set misses a path"))?;
        with_paths += usize::from(nu > 0);
    }
    Ok(format!("200 instances ({with_paths} with zero paths): existence, packing bounds, gamma, pullback"))
}

fn c5_gadget(solved: &mut Solved) -> Outcome {
    let (mut pairs, mut nonempty) = (0, 0);
    for i in 0..100u64 {
        let b = generate_block_instance(3000 + i, 500).map_err(e2s)?;
        let inst = block_gadget(&b.graph, &b.a, &b.block).map_err(e2s)?;
        let keep: VertexSet = b.block.union(&b.a).copied().collect();
        let trace = |p: &Vec<Vertex>| p.iter().copied().filter(|v| keep.contains(v)).collect::<BTreeSet<_>>();
        let in_g = zero_paths(&b.graph, &b.a);
        let in_star = zero_paths(&inst.graph, &b.a);
        let tg: BTreeSet<_> = in_g.iter().map(trace).collect();
        let ts: BTreeSet<_> = in_star.iter().map(trace).collect();
        ensure(tg == ts, || format!("instance {i}: traces differ, {} in g vs {} in g*", tg.len(), ts.len()))?;
        nonempty += usize::from(!in_g.is_empty());
        let mut by_trace: BTreeMap<BTreeSet<Vertex>, Vec<BTreeSet<Vertex>>> = BTreeMap::new();
        for p in &in_g {
            by_trace.entry(trace(p)).or_default().push(p.iter().copied().collect());
        }
        for (x, p1) in in_star.iter().enumerate() {
            for p2 in &in_star[x + 1..] {
                let s1: BTreeSet<Vertex> = p1.iter().copied().collect();
                if !p2.iter().all(|v| !s1.contains(v)) {
                    continue;
                }
                pairs += 1;
                let ok = by_trace[&trace(p1)]
                    .iter()
                    .any(|q1| by_trace[&trace(p2)].iter().any(|q2| q1.is_disjoint(q2)));
                ensure(ok, || format!("instance {i}: disjoint pair in g* has no disjoint preimage"))?;
            }
        }
        let (_, x_star) = min_hitting_set(&inst.graph, &b.a, zero()).map_err(e2s)?;
        let x = pullback_gadget_hitting_set(&b.graph, &inst, &x_star);
        ensure(zero_paths(&b.graph.without(&x), &b.a).is_empty(), || format!("instance {i}: pullback misses a path"))?;
        solve_checked(&b.graph, &b.a, zero(), &format!("gadget {i}"), solved)?;
        solve_checked(&inst.graph, &b.a, zero(), &format!("gadget* {i}"), solved)?;
    }
    Ok(format!("100 instances ({nonempty} with zero paths), traces equal, {pairs} disjoint pairs lifted, pullbacks hit"))
}

fn c6_d2(solved: &mut Solved) -> Outcome {
    let two = ResidueSpec::new(4, 2).unwrap();
    for i in 0..100u64 {
        let (g, a) = generate_random_instance(4000 + i, 5 + (i % 5) as usize, 0.35, 2 + (i % 3) as usize).map_err(e2s)?;
        let (h, _) = d2_reduction(&g, &a).map_err(e2s)?;
        let (nu2, _) = solve_checked(&g, &a, two, &format!("d2 {i}"), solved)?;
        let (nu0, _) = solve_checked(&h, &a, zero(), &format!("d2' {i}"), solved)?;
        ensure(nu2 == nu0, || format!("instance {i}: residue-2 packing {nu2} vs residue-0 packing {nu0}"))?;
    }
    Ok("100 instances, packing numbers equal".into())
}

fn c7_counterexample(solved: &mut Solved) -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for d in [1usize, 3] {
        let spec = ResidueSpec::new(4, d as u32).unwrap();
        let mut taus = Vec::new();
        for n in 2..=4 {
            let c = build_counterexample(n, d).map_err(e2s)?;
            let left: BTreeSet<Vertex> = c.left.iter().copied().collect();
            for p in a_paths(&c.graph, &c.a, |_| true) {
                let lr = left.contains(&p[0]) != left.contains(p.last().unwrap());
                let odd_top = c.top_edges(&Path::new(p.clone())) % 2 == 1;
                ensure((p.len() - 1) % 4 == d || !(lr && odd_top), || format!("n={n}: {p:?} should qualify"))?;
                ensure((p.len() - 1) % 4 != d || (lr && odd_top), || format!("n={n}: {p:?} should not qualify"))?;
            }
            let (nu, tau) = solve_checked(&c.graph, &c.a, spec, &format!("counterexample d={d} n={n}"), solved)?;
            ok &= nu == 1;
            taus.push(tau);
        }
        ok &= taus.windows(2).all(|w| w[0] < w[1]);
        lines.push(format!("d={d}: nu=1 at n=2..4, tau(2..4)={taus:?}"));
    }
    let text = lines.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(format!("tau is not strictly increasing: {text}"))
    }
}

fn c8_walls(_: &mut Solved) -> Outcome {
    for n in 2..=8 {
        let w = build_elementary_wall(n).map_err(e2s)?;
        w.validate().map_err(e2s)?;
        let g = w.graph();
        ensure(w.bricks().iter().all(|b| b.len() == 6), || format!("n={n}: brick not a 6-cycle"))?;
        ensure(g.vertices().all(|v| (2..=3).contains(&g.degree(v))), || format!("n={n}: degree out of range"))?;
        ensure(two_colourable(g), || format!("n={n}: not bipartite"))?;
        let (h, v) = (w.horizontal_paths(), w.vertical_paths());
        ensure(h.len() == n + 1 && v.len() == n + 1, || format!("n={n}: wrong path counts"))?;
        ensure(h.iter().chain(&v).all(|p| is_path_in(g, p)), || format!("n={n}: row or column is not a path"))?;
        let w4 = subdivide_wall(&w, &SubdivisionRule::uniform(4)).map_err(e2s)?;
        let top = w4.top_row();
        for (x, &u) in w4.nails().iter().enumerate() {
            for &v in &w4.nails()[x + 1..] {
                let seg = top.segment(top.position(u).unwrap(), top.position(v).unwrap());
                ensure(seg.length() % 4 == 0 && is_path_in(w4.graph(), &seg), || format!("n={n}: nail segment {}", seg.length()))?;
            }
        }
    }
    Ok("walls 2..8 valid, subdivided nail segments all 0 mod 4".into())
}

fn two_colourable(g: &Graph) -> bool {
    let mut colour: BTreeMap<Vertex, bool> = BTreeMap::new();
    for s in g.vertices() {
        if colour.contains_key(&s) {
            continue;
        }
        colour.insert(s, false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                match colour.get(&v) {
                    Some(&c) if c == colour[&u] => return false,
                    Some(_) => {}
                    None => {
                        colour.insert(v, !colour[&u]);
                        stack.push(v);
                    }
                }
            }
        }
    }
    true
}

fn direct_kind(pairs: &[(usize, usize)]) -> LinkageKind {
    let norm: Vec<(usize, usize)> = pairs.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    let every = |f: &dyn Fn((usize, usize), (usize, usize)) -> bool| {
        norm.iter().all(|&p| norm.iter().all(|&q| p == q || p.0 > q.0 || f(p, q)))
    };
    if every(&|p, q| p.1 < q.0) {
        LinkageKind::InSeries
    } else if every(&|p, q| q.0 < p.1 && p.1 < q.1) {
        LinkageKind::Crossing
    } else if every(&|p, q| q.1 < p.1) {
        LinkageKind::Nested
    } else {
        LinkageKind::Mixed
    }
}

fn c9_linkages(_: &mut Solved) -> Outcome {
    let w = build_elementary_wall(10).map_err(e2s)?;
    for (kind, nails) in [
        (LinkageKind::InSeries, [0, 1, 2, 3, 4, 5]),
        (LinkageKind::Crossing, [0, 1, 2, 3, 4, 5]),
        (LinkageKind::Nested, [0, 1, 2, 3, 4, 5]),
    ] {
        let (g, ls) = generate_odd_linkage(1, &w, kind, 3, Some(&nails), None).map_err(e2s)?;
        let got = classify_linkage(&g, &w, &ls).map_err(e2s)?;
        ensure(got == kind, || format!("{kind:?} pattern classified as {got:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut mixed = 0;
    for trial in 0..1000 {
        let size = rng.random_range(2..=5);
        let mut ends: Vec<usize> = (0..2 * size).collect();
        ends.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = ends.chunks(2).map(|c| (c[0], c[1])).collect();
        let (got, want) = (classify_endpoint_pairs(&pairs), direct_kind(&pairs));
        ensure(got == want, || format!("trial {trial}: {pairs:?} gave {got:?}, expected {want:?}"))?;
        mixed += usize::from(got == LinkageKind::Mixed);
    }
    Ok(format!("three pure patterns, 1000 random pairings ({mixed} mixed)"))
}

fn c10_tangles(_: &mut Solved) -> Outcome {
    let w = build_elementary_wall(3).map_err(e2s)?;
    let v = check_tangle_axioms(w.graph(), &WallTangle::new(&w)).map_err(e2s)?;
    ensure(v.is_none(), || format!("3-wall tangle: {v:?}"))?;
    for t in [5usize, 6] {
        let mut g = Graph::with_vertices(t);
        for u in 0..t {
            for v in u + 1..t {
                g.add_edge(u, v).unwrap();
            }
        }
        let v = check_tangle_axioms(&g, &CliqueTangle::new(g.vertex_set())).map_err(e2s)?;
        ensure(v.is_none(), || format!("K{t} tangle: {v:?}"))?;
        let bad = FnOracle { order: 4, f: |l: &VertexSet, _: &VertexSet| l.len() > 2 };
        ensure(check_tangle_axioms(&g, &bad).map_err(e2s)?.is_some(), || format!("K{t}: bogus oracle accepted"))?;
    }
    let w4 = build_elementary_wall(4).map_err(e2s)?;
    let sub = extract_subwall(&w4, &WallWindow::square(2, 2, 2)).map_err(e2s)?;
    ensure(subwall_tangle_truncation_check(&w4, &sub).map_err(e2s)?, || "truncation check failed".into())?;
    Ok("3-wall, K5 and K6 tangles satisfy the axioms; central subwall truncates".into())
}

fn c11_assembly(_: &mut Solved) -> Outcome {
    let mut runs = 0;
    for k in 1..=2 {
        for r in 0..4 {
            let kinds: &[LinkageKind] = if r % 2 == 0 {
                &[LinkageKind::InSeries]
            } else {
                &[LinkageKind::InSeries, LinkageKind::Crossing, LinkageKind::Nested]
            };
            for &kind in kinds {
                let inst = generate_assembly_instance(50 + r as u64, k, r, kind).map_err(e2s)?;
                let out = assemble_zero_paths(&inst.graph, &inst.a, &inst.wall, &inst.linkage, &inst.paths, k)
                    .map_err(|e| format!("k={k} r={r} {kind:?}: {e}"))?;
                ensure(out.len() == k, || format!("k={k} r={r}: {} paths", out.len()))?;
                let mut seen = BTreeSet::new();
                for p in &out {
                    let v = p.vertices();
                    let a_ok = inst.a.contains(&v[0])
                        && inst.a.contains(v.last().unwrap())
                        && v[1..v.len() - 1].iter().all(|x| !inst.a.contains(x));
                    ensure(is_path_in(&inst.graph, p) && a_ok && p.length() % 4 == 0, || {
                        format!("k={k} r={r}: {p:?} is not a zero A-path")
                    })?;
                    ensure(v.iter().all(|x| seen.insert(*x)), || format!("k={k} r={r}: paths intersect"))?;
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} assemblies over k=1,2 and residues 0..3"))
}

/// A grid of `2t` columns (the first family, top to bottom into `X`) and
/// `t` second-family paths entering from the left on distinct rows, each
/// turning down a column. Lower rows turn further left, so the second
/// family is disjoint while overlapping the first.
fn reroute_instance(seed: u64) -> (Graph, VertexSet, VertexSet, VertexSet, Vec<Path>, Vec<Path>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = rng.random_range(1..=4);
    let height = t + rng.random_range(1..=4);
    let cols = 2 * t;
    let id = |r: usize, c: usize| r * cols + c;
    let mut g = Graph::with_vertices((height + 1) * cols);
    let qs: Vec<Path> = (0..cols).map(|c| Path::new((0..=height).map(|r| id(r, c)).collect())).collect();
    let mut rows: Vec<usize> = (1..height).collect();
    rows.shuffle(&mut rng);
    rows.truncate(t);
    rows.sort_unstable();
    let mut turn: Vec<usize> = (0..cols).collect();
    turn.shuffle(&mut rng);
    turn.truncate(t);
    turn.sort_unstable_by(|x, y| y.cmp(x));
    let mut b = VertexSet::new();
    let mut rs = Vec::new();
    for (&r, &c) in rows.iter().zip(&turn) {
        let start = g.fresh_vertex();
        b.insert(start);
        let mut seq = vec![start];
        seq.extend((0..=c).map(|x| id(r, x)));
        seq.extend((r + 1..=height).map(|y| id(y, c)));
        rs.push(Path::new(seq));
    }
    for p in qs.iter().chain(&rs) {
        for (u, v) in p.edges() {
            g.add_edge(u, v).unwrap();
        }
    }
    let a = (0..cols).map(|c| id(0, c)).collect();
    let x = (0..cols).map(|c| id(height, c)).collect();
    (g, a, b, x, qs, rs)
}

fn c12_reroute(_: &mut Solved) -> Outcome {
    let mut moved = 0;
    for seed in 0..100 {
        let (g, a, b, x, qs, rs) = reroute_instance(seed);
        let t = rs.len();
        let out = reroute_two_families(&g, &a, &b, &x, &qs, &rs).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(out.kept.len() == t && out.rerouted.len() == t, || format!("seed {seed}: wrong family sizes"))?;
        let union: BTreeSet<(Vertex, Vertex)> =
            qs.iter().chain(&rs).flat_map(|p| p.edges()).map(|(u, v)| (u.min(v), u.max(v))).collect();
        let mut seen = BTreeSet::new();
        for p in out.kept.iter().chain(&out.rerouted) {
            ensure(p.edges().all(|(u, v)| union.contains(&(u.min(v), u.max(v)))), || format!("seed {seed}: edge outside union"))?;
            ensure(p.vertices().iter().all(|v| seen.insert(*v)), || format!("seed {seed}: output paths intersect"))?;
        }
        ensure(out.kept.iter().all(|p| qs.contains(p)), || format!("seed {seed}: kept path not from the first family"))?;
        for p in &out.rerouted {
            ensure(b.contains(&p.first()) && x.contains(&p.last()), || format!("seed {seed}: {p:?} is not a B-X path"))?;
        }
        moved += usize::from(out.rerouted != rs);
    }
    Ok(format!("100 instances, {moved} needed rerouting"))
}

type Criterion = (usize, &'static str, fn(&mut Solved) -> Outcome);

fn main() {
    let mut solved = Solved::default();
    let criteria: Vec<Criterion> = vec![
        (1, "windmill zero paths", c1_windmills),
        (2, "Gallai bound tau <= 2 nu", c2_gallai),
        (4, "bipartite split and gamma labelling", c4_bipartite),
        (5, "block gadget", c5_gadget),
        (6, "residue-2 reduction", c6_d2),
        (7, "counterexample family", c7_counterexample),
        (8, "wall structure", c8_walls),
        (9, "linkage classification", c9_linkages),
        (10, "tangle axioms", c10_tangles),
        (11, "zero-path assembly", c11_assembly),
        (12, "path rerouting", c12_reroute),
    ];
    let mut results: BTreeMap<usize, (String, Outcome, f64)> = BTreeMap::new();
    for (n, name, f) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| f(&mut solved)))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())))));
        results.insert(n, (name.into(), out, start.elapsed().as_secs_f64()));
    }
    let bad: Vec<&(String, usize, usize)> = solved.0.iter().filter(|(_, nu, tau)| nu > tau).collect();
    let weak = if bad.is_empty() {
        Ok(format!("nu <= tau on all {} solved instances", solved.0.len()))
    } else {
        Err(format!("violated on {:?}", bad))
    };
    results.insert(3, ("weak duality nu <= tau".into(), weak, 0.0));
    let mut failed = 0;
    for (n, (name, out, secs)) in &results {
        match out {
            Ok(d) => println!("criterion {n:>2} {name}: PASS ({d}) [{secs:.1}s]"),
            Err(d) => {
                failed += 1;
                println!("criterion {n:>2} {name}: FAIL ({d}) [{secs:.1}s]");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
