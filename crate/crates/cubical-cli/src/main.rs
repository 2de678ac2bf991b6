//! Batch CLI over the cubical toolkit. One command per invocation, JSON
//! reports with sorted keys, and a strict exit-code contract:
//! 0 success, 1 domain error, 2 indeterminate verdict, 3 malformed input.

mod docs;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cubical::bridge::{self, BoundaryVerdict};
use cubical::complex::{self, ComplexDescription, CubeComplex};
use cubical::gates;
use cubical::geometry;
use cubical::graph::{DefiningGraph, GraphDescription, VertexSet};
use cubical::invariants::{self, EventuallyPeriodic, FnVerdict};
use cubical::rays::{self, SeparatorVerdict};
use cubical::words::Raag;
use cubical::{Config, Error};

use docs::*;

const EXIT_DOMAIN: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_MALFORMED: u8 = 3;

#[derive(Parser)]
#[command(name = "cubical", version, about = "Exact computations in right-angled Artin groups and cube complexes")]
struct Cli {
    /// Configuration file overriding the default limits.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file: {"vertices": [...], "edges": [["a","b"], ...]}.
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
struct ComplexArg {
    /// Complex file: {"vertices", "edges": [{id,src,dst}], "squares"}.
    #[arg(long)]
    complex: String,
}

#[derive(Args)]
struct RayArgs {
    #[arg(long)]
    base: String,
    #[arg(long)]
    period: String,
}

#[derive(Args)]
struct TwoRayArgs {
    #[arg(long)]
    base1: String,
    #[arg(long)]
    period1: String,
    #[arg(long)]
    base2: String,
    #[arg(long)]
    period2: String,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical normal form of a word.
    Nf {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        word: String,
    },
    /// Product of two elements.
    Mul {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Geodesic length of a word.
    Len {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        word: String,
    },
    /// Distance between two elements.
    Dist {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Median of three elements.
    Median {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    /// Gate (nearest-point projection) of a point onto a standard coset.
    Gate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        point: String,
        #[arg(long)]
        base: String,
        /// Comma-separated generator names of the coset.
        #[arg(long, default_value = "")]
        gens: String,
    },
    /// Gate data of a pair of standard cosets.
    GatePair {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        base_a: String,
        #[arg(long, default_value = "")]
        gens_a: String,
        #[arg(long)]
        base_b: String,
        #[arg(long, default_value = "")]
        gens_b: String,
    },
    /// Hyperplane dual to the edge at a vertex with a letter.
    HpOfEdge {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        at: String,
        #[arg(long)]
        letter: String,
    },
    /// Hyperplanes dual to the canonical geodesic between two elements.
    Duals {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Crossing and contact of two hyperplanes (inline JSON).
    Cross {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    /// Contact graph on the hyperplanes dual to edges within a ball.
    ContactBall {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: usize,
    },
    /// Classifying invariant of a hyperplane sequence file.
    Invariant {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        seq: String,
    },
    /// Orbit-equivalence decision for two hyperplane sequence files.
    OrbitEquiv {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        seq1: String,
        #[arg(long)]
        seq2: String,
    },
    /// Act on a hyperplane sequence file by a group element.
    Act {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        g: String,
        #[arg(long)]
        seq: String,
    },
    /// Tail equivalence of two eventually periodic symbol sequences.
    TailEquiv {
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Horizon-bounded tuple decider over hyperplane sequences.
    FnEquiv {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Witness search radius; defaults to the configured value.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// The k-th vertex along a periodic ray.
    RayVertex {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        ray: RayArgs,
        #[arg(long)]
        k: usize,
    },
    /// Labels crossed infinitely often by a ray.
    RayClasses {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        ray: RayArgs,
    },
    /// Initial segment of the separating hyperplanes of one label.
    Spectrum {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        ray: RayArgs,
        #[arg(long)]
        at: String,
        #[arg(long)]
        label: String,
        #[arg(long)]
        count: usize,
    },
    /// Order-consistency diagnostic between two basepoints.
    OrderCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        ray: RayArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        label: String,
        #[arg(long)]
        count: usize,
    },
    /// Hyperplanes separating two boundary rays.
    Separators {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        rays: TwoRayArgs,
    },
    /// Roller-graph adjacency of two boundary rays.
    RollerAdjacent {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        rays: TwoRayArgs,
    },
    /// Specialness report of a cube complex.
    CheckSpecial {
        #[command(flatten)]
        complex: ComplexArg,
    },
    /// Crossing graph of a special cube complex.
    CrossingGraph {
        #[command(flatten)]
        complex: ComplexArg,
    },
    /// Verified local isometry onto the Salvetti complex of the crossing graph.
    SalvettiMap {
        #[command(flatten)]
        complex: ComplexArg,
    },
    /// Fundamental-group embedding through the Salvetti map.
    Pi1Embed {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Develop a directed edge path through the Salvetti map.
    Develop {
        #[command(flatten)]
        complex: ComplexArg,
        /// Whitespace-separated edge ids, `e` or `e^-1`.
        #[arg(long)]
        path: String,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Convexity diagnostic of the developed lift.
    ConvexityProbe {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Gromov product of two elements at a basepoint.
    GromovProduct {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        at: String,
    },
    /// Four-point hyperbolicity defect over a ball.
    Delta {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: usize,
    },
    /// Gromov-boundary comparison of two rays.
    BoundaryEqual {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        rays: TwoRayArgs,
    },
    /// Partition of a ray family by Gromov-boundary equality.
    FiberSample {
        #[command(flatten)]
        graph: GraphArg,
        /// File with a JSON list of {"base": word, "period": word}.
        #[arg(long)]
        rays: String,
    },
}

/// How a failed or preliminary outcome maps to the exit contract.
enum Outcome {
    Ok(Value),
    Indeterminate(Value),
    Domain(Error),
    Malformed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            print_report("config", &Config::default(), None, json!({ "error": msg }));
            return ExitCode::from(EXIT_MALFORMED);
        }
    };
    let (name, digest, outcome) = dispatch(&cli.command, &config);
    match outcome {
        Outcome::Ok(result) => {
            print_report(name, &config, digest.as_deref(), result);
            ExitCode::SUCCESS
        }
        Outcome::Indeterminate(result) => {
            print_report(name, &config, digest.as_deref(), result);
            ExitCode::from(EXIT_INDETERMINATE)
        }
        Outcome::Domain(err) => {
            let code = if matches!(err, Error::HorizonInsufficient(_)) {
                EXIT_INDETERMINATE
            } else {
                EXIT_DOMAIN
            };
            print_report(name, &config, digest.as_deref(), json!({ "error": err.to_string() }));
            ExitCode::from(code)
        }
        Outcome::Malformed(msg) => {
            print_report(name, &config, digest.as_deref(), json!({ "error": msg }));
            ExitCode::from(EXIT_MALFORMED)
        }
    }
}

fn print_report(command: &str, config: &Config, digest: Option<&str>, result: Value) {
    let report = json!({
        "command": command,
        "config": config,
        "inputDigest": digest,
        "result": result,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
}

fn load_config(path: Option<&str>) -> Result<Config, String> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| format!("cannot read config `{p}`: {e}"))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config `{p}`: {e}"))
        }
    }
}

struct GraphCtx {
    raag: Raag,
    digest: String,
}

fn load_graph(path: &str) -> Result<GraphCtx, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read graph `{path}`: {e}"))?;
    let desc: GraphDescription =
        serde_json::from_str(&text).map_err(|e| format!("bad graph file `{path}`: {e}"))?;
    let graph = DefiningGraph::from_description(&desc).map_err(|e| e.to_string())?;
    let canonical = serde_json::to_string(&graph.description()).expect("canonical graph");
    Ok(GraphCtx { raag: Raag::new(graph), digest: hex_digest(&canonical) })
}

struct ComplexCtx {
    complex: CubeComplex,
    digest: String,
}

fn load_complex(path: &str) -> Result<ComplexCtx, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read complex `{path}`: {e}"))?;
    let desc: ComplexDescription =
        serde_json::from_str(&text).map_err(|e| format!("bad complex file `{path}`: {e}"))?;
    let complex = CubeComplex::from_description(&desc).map_err(|e| e.to_string())?;
    let canonical = serde_json::to_string(&complex.description()).expect("canonical complex");
    Ok(ComplexCtx { complex, digest: hex_digest(&canonical) })
}

fn hex_digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

macro_rules! ok_or_malformed {
    ($e:expr, $name:expr, $digest:expr) => {
        match $e {
            Ok(v) => v,
            Err(msg) => return ($name, $digest, Outcome::Malformed(msg.to_string())),
        }
    };
}

fn dispatch(cmd: &Command, config: &Config) -> (&'static str, Option<String>, Outcome) {
    match cmd {
        Command::Nf { graph, word } => with_graph("nf", graph, |ctx| {
            let g = ctx.raag.parse_element(word)?;
            Ok(Outcome::Ok(json!({ "word": ctx.raag.format(&g), "length": g.len() })))
        }),
        Command::Mul { graph, left, right } => with_graph("mul", graph, |ctx| {
            let l = ctx.raag.parse_element(left)?;
            let r = ctx.raag.parse_element(right)?;
            let p = ctx.raag.multiply(&l, &r)?;
            Ok(Outcome::Ok(json!({ "word": ctx.raag.format(&p), "length": p.len() })))
        }),
        Command::Len { graph, word } => with_graph("len", graph, |ctx| {
            let g = ctx.raag.parse_element(word)?;
            Ok(Outcome::Ok(json!({ "length": g.len() })))
        }),
        Command::Dist { graph, a, b } => with_graph("dist", graph, |ctx| {
            let a = ctx.raag.parse_element(a)?;
            let b = ctx.raag.parse_element(b)?;
            Ok(Outcome::Ok(json!({ "distance": geometry::distance(&ctx.raag, &a, &b) })))
        }),
        Command::Median { graph, a, b, c } => with_graph("median", graph, |ctx| {
            let a = ctx.raag.parse_element(a)?;
            let b = ctx.raag.parse_element(b)?;
            let c = ctx.raag.parse_element(c)?;
            let m = geometry::median(&ctx.raag, &a, &b, &c);
            Ok(Outcome::Ok(json!({ "median": ctx.raag.format(&m) })))
        }),
        Command::Gate { graph, point, base, gens } => with_graph("gate", graph, |ctx| {
            let x = ctx.raag.parse_element(point)?;
            let coset = parse_coset(&ctx.raag, base, gens)?;
            let g = gates::gate_point(&ctx.raag, &x, &coset);
            Ok(Outcome::Ok(json!({
                "gate": ctx.raag.format(&g),
                "distance": geometry::distance(&ctx.raag, &x, &g),
            })))
        }),
        Command::GatePair { graph, base_a, gens_a, base_b, gens_b } => {
            with_graph("gate-pair", graph, |ctx| {
                let a = parse_coset(&ctx.raag, base_a, gens_a)?;
                let b = parse_coset(&ctx.raag, base_b, gens_b)?;
                let pair = gates::gate_pair(&ctx.raag, &a, &b);
                Ok(Outcome::Ok(json!({
                    "translation": ctx.raag.format(&pair.translation),
                    "common": names_of(&ctx.raag, pair.common),
                    "rhoA": coset_doc(&ctx.raag, &pair.rho_a),
                    "rhoB": coset_doc(&ctx.raag, &pair.rho_b),
                    "distance": pair.translation.len(),
                })))
            })
        }
        Command::HpOfEdge { graph, at, letter } => with_graph("hp-of-edge", graph, |ctx| {
            let x = ctx.raag.parse_element(at)?;
            let l = parse_letter(&ctx.raag, letter)?;
            let h = geometry::hyperplane_of_edge(&ctx.raag, &x, l);
            Ok(Outcome::Ok(hyperplane_doc(&ctx.raag, &h)))
        }),
        Command::Duals { graph, a, b } => with_graph("duals", graph, |ctx| {
            let a = ctx.raag.parse_element(a)?;
            let b = ctx.raag.parse_element(b)?;
            let list: Vec<Value> = geometry::dual_hyperplanes(&ctx.raag, &a, &b)
                .iter()
                .map(|h| hyperplane_doc(&ctx.raag, h))
                .collect();
            Ok(Outcome::Ok(json!({ "count": list.len(), "hyperplanes": list })))
        }),
        Command::Cross { graph, h, k } => with_graph("cross", graph, |ctx| {
            let h = parse_hyperplane_json(&ctx.raag, h)?;
            let k = parse_hyperplane_json(&ctx.raag, k)?;
            Ok(Outcome::Ok(json!({
                "cross": geometry::hyperplanes_cross(&ctx.raag, &h, &k),
                "contact": geometry::hyperplanes_contact(&ctx.raag, &h, &k),
            })))
        }),
        Command::ContactBall { graph, center, radius } => with_graph("contact-ball", graph, |ctx| {
            let c = ctx.raag.parse_element(center)?;
            let ball = geometry::contact_graph_ball(&ctx.raag, &c, *radius, config.ball_cap)?;
            Ok(Outcome::Ok(json!({
                "hyperplanes": ball.hyperplanes.iter().map(|h| hyperplane_doc(&ctx.raag, h)).collect::<Vec<_>>(),
                "edges": ball.edges,
            })))
        }),
        Command::Invariant { graph, seq } => with_graph("invariant", graph, |ctx| {
            let seq = load_hyperplane_seq(&ctx.raag, seq)?;
            let inv = invariants::classifying_invariant(&ctx.raag, &seq)?;
            Ok(Outcome::Ok(invariant_doc(&ctx.raag, &inv)))
        }),
        Command::OrbitEquiv { graph, seq1, seq2 } => with_graph("orbit-equiv", graph, |ctx| {
            let s1 = load_hyperplane_seq(&ctx.raag, seq1)?;
            let s2 = load_hyperplane_seq(&ctx.raag, seq2)?;
            let witness = invariants::decide_orbit_equiv(&ctx.raag, &s1, &s2)?;
            Ok(Outcome::Ok(json!({
                "equivalent": witness.is_some(),
                "witness": witness.map(|g| ctx.raag.format(&g)),
            })))
        }),
        Command::Act { graph, g, seq } => with_graph("act", graph, |ctx| {
            let g = ctx.raag.parse_element(g)?;
            let seq = load_hyperplane_seq(&ctx.raag, seq)?;
            let moved = invariants::act_seq(&ctx.raag, &g, &seq);
            Ok(Outcome::Ok(json!({
                "sequence": moved.iter().map(|h| hyperplane_doc(&ctx.raag, h)).collect::<Vec<_>>(),
            })))
        }),
        Command::TailEquiv { u, w } => tail_equiv_cmd(u, w),
        Command::FnEquiv { graph, alpha, beta, radius } => with_graph("fn-equiv", graph, |ctx| {
            let alpha = load_periodic_tuple(&ctx.raag, alpha)?;
            let beta = load_periodic_tuple(&ctx.raag, beta)?;
            let radius = radius.unwrap_or(config.search_radius);
            match invariants::decide_fn(&ctx.raag, &alpha, &beta, radius)? {
                FnVerdict::Witness(g) => Ok(Outcome::Ok(json!({
                    "verdict": "witness",
                    "witness": ctx.raag.format(&g),
                }))),
                FnVerdict::NoneWithinRadius(r) => Ok(Outcome::Indeterminate(json!({
                    "verdict": "noneWithinRadius",
                    "radius": r,
                }))),
            }
        }),
        Command::RayVertex { graph, ray, k } => with_graph("ray-vertex", graph, |ctx| {
            let ray = parse_ray(&ctx.raag, ray)?;
            let v = rays::ray_vertex(&ctx.raag, &ray, *k)?;
            Ok(Outcome::Ok(json!({ "vertex": ctx.raag.format(&v) })))
        }),
        Command::RayClasses { graph, ray } => with_graph("ray-classes", graph, |ctx| {
            let ray = parse_ray(&ctx.raag, ray)?;
            let classes = rays::infinite_label_classes(&ctx.raag, &ray)?;
            Ok(Outcome::Ok(json!({ "labels": names_of(&ctx.raag, classes) })))
        }),
        Command::Spectrum { graph, ray, at, label, count } => with_graph("spectrum", graph, |ctx| {
            let ray = parse_ray(&ctx.raag, ray)?;
            let x = ctx.raag.parse_element(at)?;
            let v = ctx.raag.graph().vertex(label)?;
            let spec = rays::label_spectrum(&ctx.raag, &ray, &x, v, *count, config.horizon)?;
            Ok(Outcome::Ok(json!({
                "label": label,
                "entries": spec.entries.iter().map(|(h, d)| {
                    json!({ "hyperplane": hyperplane_doc(&ctx.raag, h), "distance": d })
                }).collect::<Vec<_>>(),
            })))
        }),
        Command::OrderCheck { graph, ray, x, y, label, count } => {
            with_graph("order-check", graph, |ctx| {
                let ray = parse_ray(&ctx.raag, ray)?;
                let x = ctx.raag.parse_element(x)?;
                let y = ctx.raag.parse_element(y)?;
                let v = ctx.raag.graph().vertex(label)?;
                let ok =
                    rays::order_consistency_check(&ctx.raag, &ray, &x, &y, v, *count, config.horizon)?;
                Ok(Outcome::Ok(json!({ "consistent": ok })))
            })
        }
        Command::Separators { graph, rays: two } => with_graph("separators", graph, |ctx| {
            let (r1, r2) = parse_two_rays(&ctx.raag, two)?;
            match rays::separating_hyperplanes(&ctx.raag, &r1, &r2, config.horizon)? {
                SeparatorVerdict::Exact(list) => Ok(Outcome::Ok(json!({
                    "verdict": "exact",
                    "count": list.len(),
                    "separators": list.iter().map(|h| hyperplane_doc(&ctx.raag, h)).collect::<Vec<_>>(),
                }))),
                SeparatorVerdict::AtLeast(n) => Ok(Outcome::Indeterminate(json!({
                    "verdict": "atLeast",
                    "count": n,
                }))),
            }
        }),
        Command::RollerAdjacent { graph, rays: two } => {
            with_graph("roller-adjacent", graph, |ctx| {
                let (r1, r2) = parse_two_rays(&ctx.raag, two)?;
                let adjacent = rays::roller_adjacent(&ctx.raag, &r1, &r2, config.horizon)?;
                Ok(Outcome::Ok(json!({ "adjacent": adjacent })))
            })
        }
        Command::CheckSpecial { complex } => with_complex("check-special", complex, |ctx| {
            let report = complex::check_special(&ctx.complex)?;
            Ok(Outcome::Ok(serde_json::to_value(&report).expect("report serializes")))
        }),
        Command::CrossingGraph { complex } => with_complex("crossing-graph", complex, |ctx| {
            let g = complex::crossing_graph(&ctx.complex)?;
            Ok(Outcome::Ok(serde_json::to_value(g.description()).expect("graph serializes")))
        }),
        Command::SalvettiMap { complex } => with_complex("salvetti-map", complex, |ctx| {
            let smap = complex::salvetti_local_isometry(&ctx.complex)?;
            Ok(Outcome::Ok(json!({
                "crossingGraph": smap.graph.description(),
                "vertexMap": smap.map.vertex_map,
                "edgeMap": smap.map.edge_map,
                "verified": true,
            })))
        }),
        Command::Pi1Embed { complex, basepoint } => with_complex("pi1-embed", complex, |ctx| {
            let bp = resolve_basepoint(&ctx.complex, basepoint.as_deref())?;
            let smap = complex::salvetti_local_isometry(&ctx.complex)?;
            let raag = smap.raag();
            let emb = complex::pi1_embedding(&ctx.complex, &smap, &raag, bp)?;
            let images: Vec<Value> = emb
                .presentation_generators
                .iter()
                .zip(&emb.images)
                .map(|(&e, g)| {
                    json!({ "generator": ctx.complex.edge_id(e), "image": raag.format(g) })
                })
                .collect();
            Ok(Outcome::Ok(json!({ "generators": images })))
        }),
        Command::Develop { complex, path, basepoint } => with_complex("develop", complex, |ctx| {
            let bp = resolve_basepoint(&ctx.complex, basepoint.as_deref())?;
            let smap = complex::salvetti_local_isometry(&ctx.complex)?;
            let raag = smap.raag();
            let sides = parse_path(&ctx.complex, path)?;
            let g = complex::develop_path(&ctx.complex, &smap, &raag, bp, &sides)?;
            Ok(Outcome::Ok(json!({ "image": raag.format(&g), "length": g.len() })))
        }),
        Command::ConvexityProbe { complex, radius, basepoint } => {
            with_complex("convexity-probe", complex, |ctx| {
                let bp = resolve_basepoint(&ctx.complex, basepoint.as_deref())?;
                let smap = complex::salvetti_local_isometry(&ctx.complex)?;
                let raag = smap.raag();
                let ok = complex::convexity_probe(
                    &ctx.complex,
                    &smap,
                    &raag,
                    bp,
                    *radius,
                    config.ball_cap,
                )?;
                Ok(Outcome::Ok(json!({ "convex": ok })))
            })
        }
        Command::GromovProduct { graph, x, y, at } => with_graph("gromov-product", graph, |ctx| {
            let x = ctx.raag.parse_element(x)?;
            let y = ctx.raag.parse_element(y)?;
            let at = ctx.raag.parse_element(at)?;
            let p = bridge::gromov_product(&ctx.raag, &x, &y, &at);
            Ok(Outcome::Ok(json!({ "product": p.to_string(), "twice": p.twice })))
        }),
        Command::Delta { graph, center, radius } => with_graph("delta", graph, |ctx| {
            let c = ctx.raag.parse_element(center)?;
            let d = bridge::delta_estimate(&ctx.raag, &c, *radius, config.ball_cap)?;
            Ok(Outcome::Ok(json!({ "ballDelta": d.to_string(), "twice": d.twice })))
        }),
        Command::BoundaryEqual { graph, rays: two } => with_graph("boundary-equal", graph, |ctx| {
            let (r1, r2) = parse_two_rays(&ctx.raag, two)?;
            match bridge::gromov_boundary_equal(&ctx.raag, &r1, &r2, config.horizon)? {
                BoundaryVerdict::Equal => Ok(Outcome::Ok(json!({ "verdict": "equal" }))),
                BoundaryVerdict::Distinct { witnessed_bound } => Ok(Outcome::Ok(json!({
                    "verdict": "distinct",
                    "witnessedBound": witnessed_bound.to_string(),
                }))),
                BoundaryVerdict::Indeterminate => {
                    Ok(Outcome::Indeterminate(json!({ "verdict": "indeterminate" })))
                }
            }
        }),
        Command::FiberSample { graph, rays: file } => with_graph("fiber-sample", graph, |ctx| {
            let family = load_ray_family(&ctx.raag, file)?;
            let report = bridge::fiber_sample(&ctx.raag, &family, config.horizon)?;
            Ok(Outcome::Ok(json!({
                "classes": report.classes,
                "indeterminate": report.indeterminate,
                "maxClassSize": report.max_class_size,
                "classSizeBound": report.class_size_bound,
                "boundViolated": report.bound_violated,
            })))
        }),
    }
}

fn with_graph<F>(name: &'static str, arg: &GraphArg, f: F) -> (&'static str, Option<String>, Outcome)
where
    F: FnOnce(&GraphCtx) -> Result<Outcome, Error>,
{
    let ctx = ok_or_malformed!(load_graph(&arg.graph), name, None);
    let digest = Some(ctx.digest.clone());
    match f(&ctx) {
        Ok(outcome) => (name, digest, outcome),
        Err(e) => (name, digest, Outcome::Domain(e)),
    }
}

fn with_complex<F>(
    name: &'static str,
    arg: &ComplexArg,
    f: F,
) -> (&'static str, Option<String>, Outcome)
where
    F: FnOnce(&ComplexCtx) -> Result<Outcome, Error>,
{
    let ctx = ok_or_malformed!(load_complex(&arg.complex), name, None);
    let digest = Some(ctx.digest.clone());
    match f(&ctx) {
        Ok(outcome) => (name, digest, outcome),
        Err(e) => (name, digest, Outcome::Domain(e)),
    }
}

fn tail_equiv_cmd(u_path: &str, w_path: &str) -> (&'static str, Option<String>, Outcome) {
    let name = "tail-equiv";
    let u = ok_or_malformed!(load_symbol_seq(u_path), name, None);
    let w = ok_or_malformed!(load_symbol_seq(w_path), name, None);
    let digest = Some(hex_digest(&format!(
        "{}\n{}",
        serde_json::to_string(&u).expect("seq"),
        serde_json::to_string(&w).expect("seq"),
    )));
    let u = match EventuallyPeriodic::new(u.preperiod, u.period) {
        Ok(s) => s,
        Err(e) => return (name, digest, Outcome::Domain(e)),
    };
    let w = match EventuallyPeriodic::new(w.preperiod, w.period) {
        Ok(s) => s,
        Err(e) => return (name, digest, Outcome::Domain(e)),
    };
    let witness = invariants::tail_equivalent(&u, &w);
    (
        name,
        digest,
        Outcome::Ok(json!({
            "equivalent": witness.is_some(),
            "witness": witness.map(|(n, m)| vec![n, m]),
        })),
    )
}

fn resolve_basepoint(x: &CubeComplex, name: Option<&str>) -> Result<usize, Error> {
    match name {
        None => Ok(0),
        Some(n) => x.vertex_index(n),
    }
}

fn names_of(raag: &Raag, set: VertexSet) -> Vec<String> {
    raag.graph().set_names(set)
}
