//! The `gogrig` command line: one instance file in, one JSON report out.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting::{banana_flex_test, maxwell_bound, sparsity_scan, ScanOptions};
use crate::error::{Error, Result};
use crate::finite::{analyse, colouring_edge_bound, tensor_sections};
use crate::hypergraph::Hypergraph;
use crate::instance::{dualize, parse_instance, FiniteInstance, Instance, LieInstance, SCHEMA};
use crate::json::to_json_vec;
use crate::liemodels::AlgebraMap;
use crate::linalg::approx::DEFAULT_CUTOFF;
use crate::motionspace::{constrained_report, motion_space, motion_space_approx, nontrivial_motions};
use crate::oracles::{homomorphism_count, proper_colourings, rigidity_nullity, unique_colourability_bruteforce};
use crate::realisation::{Realisation, RealisationSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gogrig", version, about = "Infinitesimal rigidity of hypergraphs realised in Lie group models")]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Print the instance JSON schema and exit.
    #[arg(long)]
    pub schema: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Motion space dimensions and the rigidity verdict.
    Analyze {
        file: PathBuf,
        /// Use floating-point rank with a relative cutoff instead of exact elimination.
        #[arg(long)]
        approximate: bool,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: f64,
        /// Include a basis of nontrivial motions.
        #[arg(long)]
        motions: bool,
    },
    /// Maxwell-type lower bound on the motion space and the sparsity profile.
    Bound { file: PathBuf },
    /// Scan incidence subsets for violated sparsity inequalities.
    Sparsity {
        file: PathBuf,
        /// Enumerate all incidence subsets when there are at most this many incidences.
        #[arg(long, default_value_t = 20)]
        max_subset: usize,
        /// Only scan incidence sets induced by vertex subsets.
        #[arg(long)]
        vertex_induced: bool,
    },
    /// Build a flex from a disconnecting vertex set.
    Banana {
        file: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', required = true)]
        cut: Vec<String>,
    },
    /// Compare against classical computations.
    Oracle { file: PathBuf },
    /// Sections, global rigidity and colouring checks for finite instances.
    Finite { file: PathBuf },
    /// Emit the instance transported along a duality.
    Dualize {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
    },
    /// Run the built-in worked examples.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    ProjectiveDual,
    SceneToParallel,
}

impl From<Target> for AlgebraMap {
    fn from(t: Target) -> Self {
        match t {
            Target::ProjectiveDual => AlgebraMap::ProjectiveDual,
            Target::SceneToParallel => AlgebraMap::SceneToParallel,
        }
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    if cli.schema {
        let _ = write!(out, "{SCHEMA}");
        return EXIT_OK;
    }
    let Some(command) = cli.command else {
        let _ = writeln!(err, "error: a subcommand is required (see --help)");
        return EXIT_INPUT;
    };
    let mut warnings = Vec::new();
    match execute(&command, &mut warnings) {
        Ok((value, code)) => {
            for w in warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let text = if cli.pretty { serde_json::to_string_pretty(&value) } else { serde_json::to_string(&value) };
            let _ = writeln!(out, "{}", text.expect("reports serialise"));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Instance(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

fn lie(path: &PathBuf) -> Result<LieInstance> {
    match read(path)? {
        Instance::Lie(l) => Ok(l),
        Instance::Finite(_) => Err(Error::Instance("finite instances are handled by `finite` and `oracle`".into())),
    }
}

fn build(inst: &LieInstance, warnings: &mut Vec<String>) -> Result<Realisation> {
    let r = inst.build()?;
    warnings.extend(r.warnings().iter().cloned());
    Ok(r)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

fn execute(command: &Command, warnings: &mut Vec<String>) -> Result<(Value, i32)> {
    let ok = |v: Value| Ok((v, EXIT_OK));
    match command {
        Command::Analyze { file, approximate, cutoff, motions } => {
            let r = build(&lie(file)?, warnings)?;
            let report = if *approximate { motion_space_approx(&r, *cutoff)? } else { motion_space(&r)? };
            let mut v = to_value(&report);
            if *approximate {
                v["approximate"] = json!(true);
            }
            if *motions {
                let ms = nontrivial_motions(&r)?;
                v["motions"] = to_value(&ms.iter().map(|m| to_json_vec(m)).collect::<Vec<_>>());
            }
            if r.constraints().is_some() {
                v["constrained"] = to_value(&constrained_report(&r)?);
            }
            ok(v)
        }
        Command::Bound { file } => {
            let r = build(&lie(file)?, warnings)?;
            let mut v = to_value(&maxwell_bound(&r)?);
            if r.constraints().is_some() {
                let c = constrained_report(&r)?;
                v["constrained_bound"] = json!(c.lower_bound);
                v["constrained_closed_form"] = json!(c.closed_form_bound);
            }
            ok(v)
        }
        Command::Sparsity { file, max_subset, vertex_induced } => {
            let r = build(&lie(file)?, warnings)?;
            ok(to_value(&sparsity_scan(&r, ScanOptions { max_subset: *max_subset, vertex_induced_only: *vertex_induced })?))
        }
        Command::Banana { file, cut } => {
            let r = build(&lie(file)?, warnings)?;
            let cut: Vec<String> = cut.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            ok(to_value(&banana_flex_test(&r, &cut)?))
        }
        Command::Oracle { file } => match read(file)? {
            Instance::Lie(inst) => bar_joint_oracle(&inst, warnings),
            Instance::Finite(f) => finite_report(&f),
        },
        Command::Finite { file } => match read(file)? {
            Instance::Finite(f) => finite_report(&f),
            Instance::Lie(_) => Err(Error::Instance("`finite` needs a colouring or tensor instance".into())),
        },
        Command::Dualize { file, target } => ok(to_value(&dualize(&lie(file)?, (*target).into())?)),
        Command::Selftest => {
            let checks = selftest();
            let passed = checks.iter().all(|c| c.pass);
            Ok((json!({ "passed": passed, "checks": checks }), if passed { EXIT_OK } else { EXIT_INTERNAL }))
        }
    }
}

fn bar_joint_oracle(inst: &LieInstance, warnings: &mut Vec<String>) -> Result<(Value, i32)> {
    let RealisationSpec::BarJoint { coords } = &inst.realisation else {
        return Err(Error::Instance("the rigidity-matrix oracle needs a bar_joint instance".into()));
    };
    let crate::liemodels::ModelKind::Euclidean { d } = inst.group else {
        return Err(Error::Instance("bar_joint instances live in a euclidean group".into()));
    };
    let r = build(inst, warnings)?;
    let engine = motion_space(&r)?;
    let h = r.hypergraph();
    let pts = h.vertices().iter().map(|v| coords[v].clone()).collect::<Vec<_>>();
    let classical = rigidity_nullity(h, &pts, d)?;
    let dimension = engine.dim_pi_a == classical.nullity;
    let rigid = engine.rigid == classical.rigid;
    if !(dimension && rigid) {
        return Err(Error::Invariant(format!(
            "engine (dim_piA {}, rigid {}) disagrees with the rigidity matrix (nullity {}, rigid {})",
            engine.dim_pi_a, engine.rigid, classical.nullity, classical.rigid
        )));
    }
    Ok((json!({ "engine": engine, "rigidity_matrix": classical, "agree": true }), EXIT_OK))
}

fn finite_report(f: &FiniteInstance) -> Result<(Value, i32)> {
    match f {
        FiniteInstance::Colouring { n, graph, .. } => {
            let r = f.colouring_realisation()?;
            let rep = analyse(&r);
            let g = Hypergraph::new(graph.clone())?;
            let colourings = proper_colourings(&g, *n)?.len();
            let unique = unique_colourability_bruteforce(&g, *n)?;
            if rep.sections != colourings || rep.globally_rigid != unique {
                return Err(Error::Invariant(format!(
                    "{} sections / globally rigid {} against {colourings} colourings / uniquely colourable {unique}",
                    rep.sections, rep.globally_rigid
                )));
            }
            let required = colouring_edge_bound(*n, g.vertex_count());
            let edges = g.edge_count() as i64;
            if rep.globally_rigid && edges < required {
                return Err(Error::Invariant(format!("globally rigid with {edges} edges, below the bound {required}")));
            }
            Ok((
                json!({
                    "kind": "colouring",
                    "n": n,
                    "group_order": rep.group_order,
                    "coset_graph": { "nodes": rep.coset_graph_nodes, "edges": rep.coset_graph_edges },
                    "sections": rep.sections,
                    "trivial_sections": rep.trivial_sections,
                    "globally_rigid": rep.globally_rigid,
                    "oracle": { "proper_colourings": colourings, "uniquely_colourable": unique },
                    "agree": true,
                    "edge_bound": { "edges": edges, "required": required, "holds": edges >= required },
                }),
                EXIT_OK,
            ))
        }
        FiniteInstance::Tensor { gamma, lambda } => {
            let (g, l) = (Hypergraph::new(gamma.clone())?, Hypergraph::new(lambda.clone())?);
            let sections = tensor_sections(&g, &l)?;
            let brute = homomorphism_count(&g, &l)?;
            if sections != brute {
                return Err(Error::Invariant(format!("{sections} sections but {brute} homomorphisms")));
            }
            Ok((json!({ "kind": "tensor", "sections": sections, "homomorphisms": brute, "agree": true }), EXIT_OK))
        }
    }
}

pub mod fixtures {
    pub const TRIANGLE: &str = include_str!("../fixtures/triangle.json");
    pub const DOUBLE_BANANA: &str = include_str!("../fixtures/double_banana.json");
    pub const K3_S3: &str = include_str!("../fixtures/k3_s3.json");
    pub const C5_S3: &str = include_str!("../fixtures/c5_s3.json");
    pub const SCENE: &str = include_str!("../fixtures/scene.json");
    pub const PARALLEL: &str = include_str!("../fixtures/parallel.json");
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check { name, pass: false, detail: format!("error: {e}") },
    }
}

fn fixture_lie(text: &str) -> Result<LieInstance> {
    match parse_instance(text)? {
        Instance::Lie(l) => Ok(l),
        Instance::Finite(_) => Err(Error::Invariant("fixture is not a Lie instance".into())),
    }
}

fn fixture_finite(text: &str) -> Result<FiniteInstance> {
    match parse_instance(text)? {
        Instance::Finite(f) => Ok(f),
        Instance::Lie(_) => Err(Error::Invariant("fixture is not a finite instance".into())),
    }
}

/// The built-in worked examples.
pub fn selftest() -> Vec<Check> {
    vec![
        check("triangle", || {
            let m = motion_space(&fixture_lie(fixtures::TRIANGLE)?.build()?)?;
            Ok((m.dim_pi_a == 3 && m.dofs == 0 && m.rigid, format!("dim_piA {} dofs {}", m.dim_pi_a, m.dofs)))
        }),
        check("double_banana", || {
            let r = fixture_lie(fixtures::DOUBLE_BANANA)?.build()?;
            let m = motion_space(&r)?;
            let out = banana_flex_test(&r, &["v".into(), "w".into()])?;
            let w = out.certificate().map(|c| c.witness_space_dim);
            Ok((m.dofs == 1 && w == Some(1), format!("dofs {} witness dimension {w:?}", m.dofs)))
        }),
        check("k3_s3", || {
            let rep = analyse(&fixture_finite(fixtures::K3_S3)?.colouring_realisation()?);
            Ok((rep.sections == 6 && rep.globally_rigid, format!("{} sections", rep.sections)))
        }),
        check("c5_s3", || {
            let rep = analyse(&fixture_finite(fixtures::C5_S3)?.colouring_realisation()?);
            Ok((rep.sections == 30 && !rep.globally_rigid, format!("{} sections", rep.sections)))
        }),
        check("scene_parallel", || {
            let scene = fixture_lie(fixtures::SCENE)?;
            let parallel = fixture_lie(fixtures::PARALLEL)?;
            let a = motion_space(&scene.build()?)?;
            let b = motion_space(&parallel.build()?)?;
            let transported = dualize(&scene, AlgebraMap::SceneToParallel)? == parallel;
            Ok((
                a.dim_pi_a == b.dim_pi_a && transported,
                format!("dim_piA {} / {}, fixture matches transport: {transported}", a.dim_pi_a, b.dim_pi_a),
            ))
        }),
    ]
}
