//! The `zeropath` command line.
//!
//! Graphs travel as JSON on stdin/stdout unless `--graph`/`--out` name
//! files. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::connectivity::{blocks_and_cutvertices, is_bipartite};
use crate::duality::{duality_report, max_packing, min_hitting_set};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexSet};
use crate::io::{from_dot, to_dot, GraphDoc};
use crate::modpath::{enumerate_a_paths, ResidueSpec};
use crate::reductions::generate::{
    generate_assembly_instance, generate_bipartite_instance, generate_block_instance, generate_odd_brick_wall,
    generate_odd_clique_model, generate_odd_linkage, generate_random_instance, generate_windmill,
};
use crate::reductions::{bipartite_split, block_gadget, build_counterexample, d2_reduction};
use crate::surgery::{assemble_zero_paths, extract_zero_path_from_windmill, reroute_two_families, Windmill};
use crate::verify::{run_suite, SUITES};
use crate::walls::linkage::LinkageKind;
use crate::walls::{build_elementary_wall, subdivide_wall, SubdivisionRule, Wall, WallDoc};

#[derive(Parser, Debug)]
#[command(name = "zeropath", version, about = "Packing and covering of A-paths with lengths fixed modulo m")]
struct Cli {
    /// Seed for generators and suites.
    #[arg(long, global = true, env = "ZEROPATH_SEED", default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Input JSON file; stdin when omitted or `-`.
    #[arg(long)]
    graph: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Spec {
    #[arg(long = "mod", default_value_t = 4)]
    modulus: u32,
    #[arg(long, default_value_t = 0)]
    residue: u32,
}

impl Spec {
    fn get(self) -> Result<ResidueSpec> {
        ResidueSpec::new(self.modulus, self.residue)
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a structure as JSON.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// List the qualifying A-paths.
    Paths {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spec: Spec,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Exact packing and covering numbers.
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spec: Spec,
        #[arg(long, conflicts_with_all = ["cover", "report"])]
        pack: bool,
        #[arg(long, conflicts_with = "report")]
        cover: bool,
        #[arg(long)]
        report: bool,
    },
    /// Apply a reduction and print the new graph with its trace.
    Reduce {
        kind: ReduceKind,
        #[command(flatten)]
        input: Input,
        /// Comma-separated block for `gadget`; defaults to the input's
        /// `block` field, else the largest bipartite block of the graph minus A.
        #[arg(long, value_delimiter = ',')]
        block: Option<Vec<usize>>,
    },
    /// Run a constructive step on a JSON structure.
    Surgery {
        kind: SurgeryKind,
        /// Structure file; stdin when omitted or `-`.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
    },
    /// Run property suites and print a JSON summary.
    Verify {
        /// Suite name or `all`.
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Convert between JSON and DOT.
    Export {
        #[command(flatten)]
        input: Input,
        /// Emit DOT (the default).
        #[arg(long, conflicts_with = "from_dot")]
        dot: bool,
        /// Read DOT and emit JSON.
        #[arg(long)]
        from_dot: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// Elementary wall, optionally with every edge subdivided.
    Wall {
        #[arg(long)]
        size: usize,
        /// Length of every subdivided edge.
        #[arg(long)]
        subdivide: Option<usize>,
    },
    /// Wall whose bricks are all odd cycles.
    OddWall {
        #[arg(long)]
        size: usize,
    },
    /// Odd linkage on an elementary wall.
    OddLinkage {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        paths: usize,
        #[arg(long, value_enum, default_value = "in-series")]
        kind: Pure,
    },
    /// Odd clique model.
    OddModel {
        #[arg(long)]
        t: usize,
    },
    Windmill {
        #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [2, 2, 2])]
        arms: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [3, 3, 3])]
        cycles: Vec<usize>,
    },
    /// Grid showing that odd residues lack the packing-covering duality.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        a: usize,
        /// Keep the graph minus A bipartite.
        #[arg(long)]
        bipartite: bool,
    },
    /// Instance with a bipartite block and small bridges.
    Block,
    /// Input for `surgery assemble`.
    Assembly {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        residue: usize,
        #[arg(long, value_enum, default_value = "in-series")]
        kind: Pure,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Pure {
    InSeries,
    Crossing,
    Nested,
}

impl From<Pure> for LinkageKind {
    fn from(p: Pure) -> Self {
        match p {
            Pure::InSeries => LinkageKind::InSeries,
            Pure::Crossing => LinkageKind::Crossing,
            Pure::Nested => LinkageKind::Nested,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ReduceKind {
    BipartiteSplit,
    Gadget,
    D2,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SurgeryKind {
    Windmill,
    Assemble,
    Reroute,
}

/// Input of `surgery assemble`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssembleDoc {
    graph: GraphDoc,
    wall: WallDoc,
    linkage: Vec<Path>,
    paths: Vec<Path>,
    k: usize,
}

/// Input of `surgery reroute`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RerouteDoc {
    graph: GraphDoc,
    a: Vec<usize>,
    b: Vec<usize>,
    x: Vec<usize>,
    q: Vec<Path>,
    r: Vec<Path>,
}

#[derive(Deserialize)]
struct WindmillDoc {
    windmill: Windmill,
}

fn graph_json(g: &Graph, a: &VertexSet) -> Value {
    serde_json::to_value(GraphDoc::from_graph(g, Some(a))).expect("graph docs serialise")
}

fn wall_json(w: &Wall) -> Value {
    serde_json::to_value(w.to_doc()).expect("wall docs serialise")
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Accepts a graph document or any object with a `graph` field holding one,
/// such as a wall.
fn read_graph(text: &str) -> Result<(Graph, VertexSet)> {
    let v: Value = parse(text)?;
    let doc = match v.get("graph") {
        Some(inner) if inner.is_object() => inner.clone(),
        _ => v,
    };
    let doc: GraphDoc = serde_json::from_value(doc).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_graph()
}

fn gen(what: &Gen, seed: u64) -> Result<Value> {
    Ok(match *what {
        Gen::Wall { size, subdivide } => {
            let mut w = build_elementary_wall(size)?;
            if let Some(l) = subdivide {
                w = subdivide_wall(&w, &SubdivisionRule::uniform(l))?;
            }
            wall_json(&w)
        }
        Gen::OddWall { size } => wall_json(&generate_odd_brick_wall(seed, size)?),
        Gen::OddLinkage { size, paths, kind } => {
            let w = build_elementary_wall(size)?;
            let (g, ls) = generate_odd_linkage(seed, &w, kind.into(), paths, None, None)?;
            json!({ "graph": graph_json(&g, &VertexSet::new()), "wall": wall_json(&w), "linkage": ls })
        }
        Gen::OddModel { t } => {
            let (g, m) = generate_odd_clique_model(seed, t)?;
            json!({ "graph": graph_json(&g, &VertexSet::new()), "model": m })
        }
        Gen::Windmill { ref arms, ref cycles } => {
            let (w, g) = generate_windmill(seed, [arms[0], arms[1], arms[2]], [cycles[0], cycles[1], cycles[2]])?;
            let tips: VertexSet = w.tips().into_iter().collect();
            json!({ "graph": graph_json(&g, &tips), "windmill": w })
        }
        Gen::Counterexample { n, d } => {
            let c = build_counterexample(n, d)?;
            graph_json(&c.graph, &c.a)
        }
        Gen::Random { n, p, a, bipartite } => {
            let (g, a) = if bipartite {
                generate_bipartite_instance(seed, n, p, a)?
            } else {
                generate_random_instance(seed, n, p, a)?
            };
            graph_json(&g, &a)
        }
        Gen::Block => {
            let b = generate_block_instance(seed, 1000)?;
            json!({ "graph": graph_json(&b.graph, &b.a), "block": b.block })
        }
        Gen::Assembly { k, residue, kind } => {
            let inst = generate_assembly_instance(seed, k, residue, kind.into())?;
            serde_json::to_value(AssembleDoc {
                graph: GraphDoc::from_graph(&inst.graph, Some(&inst.a)),
                wall: inst.wall.to_doc(),
                linkage: inst.linkage,
                paths: inst.paths,
                k,
            })
            .expect("assembly docs serialise")
        }
    })
}

fn largest_bipartite_block(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    let h = g.without(a);
    blocks_and_cutvertices(&h)
        .into_iter()
        .map(|b| b.vertices)
        .filter(|b| is_bipartite(&h.induced(b)))
        .max_by_key(|b| b.len())
        .ok_or_else(|| Error::Precondition("no bipartite block".into()))
}

fn reduce(kind: ReduceKind, g: &Graph, a: &VertexSet, block: Option<&[usize]>) -> Result<Value> {
    Ok(match kind {
        ReduceKind::BipartiteSplit => {
            let s = bipartite_split(g, a)?;
            let all: VertexSet = s.a1.union(&s.a2).copied().collect();
            json!({ "graph": graph_json(&s.graph, &all), "a1": s.a1, "a2": s.a2, "trace": s.trace })
        }
        ReduceKind::Gadget => {
            let block = match block {
                Some(b) => b.iter().copied().collect(),
                None => largest_bipartite_block(g, a)?,
            };
            let inst = block_gadget(g, a, &block)?;
            json!({ "graph": graph_json(&inst.graph, a), "trees": inst.trees, "trace": inst.trace })
        }
        ReduceKind::D2 => {
            let (h, trace) = d2_reduction(g, a)?;
            json!({ "graph": graph_json(&h, a), "trace": trace })
        }
    })
}

fn surgery(kind: SurgeryKind, text: &str) -> Result<Value> {
    Ok(match kind {
        SurgeryKind::Windmill => {
            let doc: WindmillDoc = parse(text)?;
            doc.windmill.validate()?;
            json!({ "path": extract_zero_path_from_windmill(&doc.windmill)? })
        }
        SurgeryKind::Assemble => {
            let doc: AssembleDoc = parse(text)?;
            let (g, a) = doc.graph.to_graph()?;
            let w = Wall::from_doc(&doc.wall)?;
            json!({ "paths": assemble_zero_paths(&g, &a, &w, &doc.linkage, &doc.paths, doc.k)? })
        }
        SurgeryKind::Reroute => {
            let doc: RerouteDoc = parse(text)?;
            let (g, _) = doc.graph.to_graph()?;
            let set = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
            let out = reroute_two_families(&g, &set(&doc.a), &set(&doc.b), &set(&doc.x), &doc.q, &doc.r)?;
            json!({ "kept": out.kept, "rerouted": out.rerouted })
        }
    })
}

fn read_input(path: Option<&std::path::Path>, stdin: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    match path {
        Some(p) if p != std::path::Path::new("-") => {
            s = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<(String, bool)> {
    let spec_json = |v: Value| (format!("{v}\n"), true);
    Ok(match &cli.cmd {
        Cmd::Gen { what } => spec_json(gen(what, cli.seed)?),
        Cmd::Paths { input, spec, cap } => {
            let (g, a) = read_graph(&read_input(input.graph.as_deref(), stdin)?)?;
            spec_json(json!(enumerate_a_paths(&g, &a, spec.get()?, *cap)?))
        }
        Cmd::Solve { input, spec, pack, cover, .. } => {
            let (g, a) = read_graph(&read_input(input.graph.as_deref(), stdin)?)?;
            let spec = spec.get()?;
            let v = if *pack {
                let (nu, paths) = max_packing(&g, &a, spec)?;
                json!({ "packing_number": nu, "packing_witness": paths })
            } else if *cover {
                let (tau, x) = min_hitting_set(&g, &a, spec)?;
                json!({ "covering_number": tau, "covering_witness": x })
            } else {
                json!(duality_report(&g, &a, spec)?)
            };
            spec_json(v)
        }
        Cmd::Reduce { kind, input, block } => {
            let text = read_input(input.graph.as_deref(), stdin)?;
            let (g, a) = read_graph(&text)?;
            let stored: Option<Vec<usize>> = match block {
                Some(_) => None,
                None => parse::<Value>(&text)?.get("block").and_then(|b| serde_json::from_value(b.clone()).ok()),
            };
            spec_json(reduce(*kind, &g, &a, block.as_deref().or(stored.as_deref()))?)
        }
        Cmd::Surgery { kind, input } => spec_json(surgery(*kind, &read_input(input.as_deref(), stdin)?)?),
        Cmd::Verify { suite, trials } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let reports = names.iter().map(|s| run_suite(s, *trials, cli.seed)).collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.ok());
            (format!("{}\n", json!({ "ok": ok, "suites": reports })), ok)
        }
        Cmd::Export { input, from_dot: true, .. } => {
            let (g, a) = from_dot(&read_input(input.graph.as_deref(), stdin)?)?;
            spec_json(graph_json(&g, &a))
        }
        Cmd::Export { input, .. } => {
            let (g, a) = read_graph(&read_input(input.graph.as_deref(), stdin)?)?;
            (to_dot(&g, &a), true)
        }
    })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, stdin) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 1;
            }
            i32::from(!ok)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let Error::PreconditionWitness { witness, .. } = &e {
                let _ = writeln!(stderr, "witness: {}", json!(witness));
            }
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("zeropath").chain(args.iter().copied()), &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn wall_pipes_into_solve() {
        let (code, wall, _) = call(&["gen", "wall", "--size", "4"], "");
        assert_eq!(code, 0);
        let (code, report, _) = call(&["solve", "--report"], &wall);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["packing_number"], 0);
    }

    #[test]
    fn block_pipes_into_gadget() {
        let (code, inst, _) = call(&["--seed", "2", "gen", "block"], "");
        assert_eq!(code, 0);
        let (code, out, err) = call(&["reduce", "gadget"], &inst);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let block = serde_json::from_str::<Value>(&inst).unwrap()["block"].clone();
        let roots: Vec<&Value> = v["trees"].as_array().unwrap().iter().map(|t| &t["root"]).collect();
        assert!(!roots.is_empty());
        assert!(roots.iter().all(|r| block.as_array().unwrap().contains(r)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["frobnicate"], "").0, 2);
        let (code, _, err) = call(&["solve"], "{\"vertices\": [0,");
        assert_eq!(code, 1);
        assert!(err.contains("line 1"), "{err}");
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn deterministic_output() {
        let a = call(&["--seed", "3", "gen", "random", "--n", "8"], "");
        assert_eq!(a, call(&["--seed", "3", "gen", "random", "--n", "8"], ""));
    }

    #[test]
    fn surgery_round_trips() {
        let (_, w, _) = call(&["gen", "windmill"], "");
        let (code, out, _) = call(&["surgery", "windmill"], &w);
        assert_eq!(code, 0, "{out}");
        let (_, inst, _) = call(&["gen", "assembly", "--k", "1", "--residue", "3"], "");
        let (code, out, err) = call(&["surgery", "assemble"], &inst);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["paths"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn dot_round_trip() {
        let (_, g, _) = call(&["gen", "counterexample", "--n", "2", "--d", "1"], "");
        let (_, dot, _) = call(&["export", "--dot"], &g);
        let (code, back, _) = call(&["export", "--from-dot"], &dot);
        assert_eq!(code, 0);
        assert_eq!(read_graph(&back).unwrap(), read_graph(&g).unwrap());
    }
}
