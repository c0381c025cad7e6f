//! Command-line front end. [`run`] maps parsed arguments and the raw input
//! to an exit code and output text; `main` only does the I/O.

pub mod document;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use bucolic::corpus;
use bucolic::cover::{unfold, CoverLimit};
use bucolic::decompose::{decompose_bucolic_with, verify_decomposition, DEFAULT_SEPARATOR_BOUND};
use bucolic::generators;
use bucolic::hulls::{convex_hull, gated_hull, gated_hull_of_triangle, HullResult};
use bucolic::mooring::{mooring, verify_combing, CombingCheck, MooringMethod};
use bucolic::recognition::{classify, is_bucolic, Certificate, Class};
use bucolic::symmetry::{automorphisms, brute_force_invariant_prisms, fixed_prism, GroupAction, DEFAULT_GROUP_CAP};
use bucolic::{ConditionWitness, Graph, Vertex};

pub use document::{Format, GraphDocument, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Vertex budget for covers and brute-force searches unless overridden.
pub const DEFAULT_BUDGET: usize = 100_000;
/// Brute-force prism cross-checks run up to this many vertices.
pub const CROSS_CHECK_LIMIT: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "bucolic", version, about = "Weakly modular and bucolic graph toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Graph document path, or "-" for stdin.
    pub input: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    All,
    Bucolic,
    Bridged,
    WeaklyBridged,
    StronglyBucolic,
    PreMedian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HullKind {
    Convex,
    Gated,
    TriangleGated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Stats,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bfs,
    Lexbfs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Wheel,
    AlmostWheel,
    Hypercube,
    Cycle,
    Path,
    Complete,
    Hamming,
    Grid,
    Torus,
    CompleteBipartite,
    RandomTree,
    RandomConnected,
    RandomTwoTree,
    RandomWeaklyBridged,
    RandomBucolic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class membership with certificates.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ClassArg::Bucolic)]
        class: ClassArg,
        /// List every forbidden-pattern occurrence.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Convex, gated or triangle-gated hull of a vertex set.
    Hull {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex labels or ids.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        #[arg(long, value_enum, default_value_t = HullKind::Convex)]
        kind: HullKind,
    },
    /// Unfolds the universal cover of the triangle-square complex.
    Cover {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "0")]
        base: String,
        /// Stop after this many levels.
        #[arg(long)]
        radius: Option<usize>,
        /// Stop once the cover has more vertices than this.
        #[arg(long, env = "BUCOLIC_BUDGET")]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value_t = Emit::Stats)]
        emit: Emit,
    },
    /// Gated amalgam and product decomposition.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Largest order searched exhaustively for gated separators.
        #[arg(long, default_value_t = DEFAULT_SEPARATOR_BOUND)]
        bound: usize,
    },
    /// Father map onto a base vertex and the combing check.
    Moor {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "0")]
        base: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Lexbfs)]
        method: MethodArg,
    },
    /// Invariant prism of a group acting on a bucolic graph.
    Fixprism {
        #[command(flatten)]
        input: Input,
        /// Use the full automorphism group when the input lists no group.
        #[arg(long)]
        full_group: bool,
    },
    /// Emits a generated graph document.
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Comma-separated integer parameters, e.g. "5" or "3,2".
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced before formatting.
struct Report {
    code: i32,
    text: String,
    data: Value,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Library(#[from] bucolic::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

type CliResult<T> = Result<T, CliError>;

fn env_budget() -> usize {
    std::env::var("BUCOLIC_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Reads the input path, with "-" meaning `stdin`.
pub fn read_input(path: &str, stdin: &mut dyn Read) -> std::io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    if path == "-" {
        stdin.read_to_end(&mut buf)?;
    } else {
        buf = std::fs::read(path)?;
    }
    Ok(buf)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn names(g: &Graph, vs: impl IntoIterator<Item = Vertex>) -> String {
    format!(
        "{{{}}}",
        vs.into_iter().map(|v| g.label(v)).collect::<Vec<_>>().join(",")
    )
}

fn label_list(g: &Graph, vs: impl IntoIterator<Item = Vertex>) -> Vec<String> {
    vs.into_iter().map(|v| g.label(v).to_string()).collect()
}

pub fn describe_certificate(g: &Graph, c: &Certificate) -> String {
    match c {
        Certificate::Pattern { kind, vertices } => {
            format!(
                "induced {kind} at ({})",
                label_list(g, vertices.iter().copied()).join(",")
            )
        }
        Certificate::Condition(ConditionWitness::Violated {
            condition,
            basepoint,
            vertices,
        }) => {
            let name = match condition {
                bucolic::Condition::Triangle => "TC",
                bucolic::Condition::Quadrangle => "QC",
            };
            format!(
                "{name}({}) fails at ({})",
                g.label(*basepoint),
                label_list(g, vertices.iter().copied()).join(",")
            )
        }
        Certificate::Condition(ConditionWitness::Satisfied) => "none".into(),
    }
}

fn resolve(doc: &GraphDocument, token: &str) -> CliResult<Vertex> {
    doc.vertex(token.trim())
        .ok_or_else(|| CliError::Usage(format!("unknown vertex {token:?}")))
}

fn cmd_check(doc: &GraphDocument, class: ClassArg, exhaustive: bool) -> CliResult<Report> {
    let g = &doc.graph;
    let report = classify(g, exhaustive)?;
    let requested = match class {
        ClassArg::All => None,
        ClassArg::Bucolic => Some(Class::Bucolic),
        ClassArg::Bridged => Some(Class::Bridged),
        ClassArg::WeaklyBridged => Some(Class::WeaklyBridged),
        ClassArg::StronglyBucolic => Some(Class::StronglyBucolic),
        ClassArg::PreMedian => Some(Class::PreMedian),
    };
    let shown: Vec<Class> = requested.map_or(Class::ALL.to_vec(), |c| vec![c]);
    let mut text = format!(
        "vertices: {}, edges: {}, components: {}\nweakly modular: {}\n",
        report.vertex_count,
        report.edge_count,
        report.components,
        if report.weakly_modular { "yes" } else { "no" }
    );
    let mut classes = serde_json::Map::new();
    for &c in &shown {
        let member = report.flag(c);
        let certs = report.certificates.get(&c).cloned().unwrap_or_default();
        let _ = writeln!(text, "{c}: {}", if member { "yes" } else { "no" });
        for cert in &certs {
            let _ = writeln!(text, "  certificate: {}", describe_certificate(g, cert));
        }
        classes.insert(
            c.name().into(),
            json!({
                "member": member,
                "certificates": certs.iter().map(|cert| json!({
                    "description": describe_certificate(g, cert),
                    "vertices": label_list(g, cert.vertices()),
                    "replays": cert.replays(g),
                    "raw": cert,
                })).collect::<Vec<_>>(),
            }),
        );
    }
    let code = match requested {
        Some(c) if !report.flag(c) => EXIT_NEGATIVE,
        _ => EXIT_OK,
    };
    Ok(Report {
        code,
        text,
        data: json!({
            "vertex_count": report.vertex_count,
            "edge_count": report.edge_count,
            "components": report.components,
            "weakly_modular": report.weakly_modular,
            "classes": classes,
        }),
    })
}

fn cmd_hull(doc: &GraphDocument, set: &[String], kind: HullKind) -> CliResult<Report> {
    let g = &doc.graph;
    let seed: BTreeSet<Vertex> = set.iter().map(|t| resolve(doc, t)).collect::<CliResult<_>>()?;
    let hull: HullResult = match kind {
        HullKind::Convex => convex_hull(g, &seed)?,
        HullKind::Gated => gated_hull(g, &seed)?,
        HullKind::TriangleGated => {
            let t: Vec<Vertex> = seed.iter().copied().collect();
            let [a, b, c] = t[..] else {
                return Err(CliError::Usage(format!(
                    "triangle-gated needs 3 vertices, got {}",
                    t.len()
                )));
            };
            gated_hull_of_triangle(g, [a, b, c])?
        }
    };
    let mut text = format!("hull: {}\n", names(g, hull.vertices.iter().copied()));
    for r in &hull.trace {
        let added: Vec<String> = r.added.iter().map(|&v| format!("+{}", g.label(v))).collect();
        let _ = writeln!(text, "round {}: {}", r.round, added.join(" "));
    }
    Ok(Report {
        code: EXIT_OK,
        text,
        data: json!({
            "kind": format!("{kind:?}").to_lowercase(),
            "seed": label_list(g, seed.iter().copied()),
            "vertices": label_list(g, hull.vertices.iter().copied()),
            "trace": hull.trace.iter().map(|r| json!({"round": r.round, "added": label_list(g, r.added.iter().copied())})).collect::<Vec<_>>(),
        }),
    })
}

fn cmd_cover(
    doc: &GraphDocument,
    base: &str,
    radius: Option<usize>,
    budget: Option<usize>,
    emit: Emit,
) -> CliResult<Report> {
    let g = &doc.graph;
    let v = resolve(doc, base)?;
    g.require_connected()?;
    let x = doc.complex()?;
    let limit = match radius {
        Some(r) => CoverLimit::Radius(r),
        None => CoverLimit::VertexBudget(budget.unwrap_or_else(env_budget)),
    };
    let u = unfold(&x, v, limit)?;
    let row = g.distance_row(v);
    let base_ball = |r: usize| row.iter().filter(|&&d| (d as usize) <= r).count();
    let outgrown = u.growth.iter().enumerate().find(|&(r, &c)| c > base_ball(r));
    let (verdict, code) = match outgrown {
        Some(_) => ("not-simply-connected", EXIT_NEGATIVE),
        None if u.stabilized => ("simply-connected", EXIT_OK),
        None if u.budget_exhausted => ("budget-exceeded", EXIT_OK),
        None => ("undetermined", EXIT_OK),
    };
    let text = match emit {
        Emit::Dot => u.state.to_dot(),
        Emit::Stats => {
            let mut t = String::new();
            for (r, c) in u.growth.iter().enumerate() {
                let _ = writeln!(t, "r={r}: {c}");
            }
            let _ = write!(t, "verdict: {verdict}");
            if let Some((r, &c)) = outgrown {
                let _ = write!(t, " (cover ball {c} > base ball {} at r={r})", base_ball(r));
            }
            t.push('\n');
            let _ = writeln!(t, "cover vertices: {}", u.state.vertex_count());
            t
        }
    };
    Ok(Report {
        code,
        text,
        data: json!({
            "base": g.label(v),
            "growth": u.growth,
            "base_growth": (0..u.growth.len()).map(base_ball).collect::<Vec<_>>(),
            "verdict": verdict,
            "stabilized": u.stabilized,
            "budget_exhausted": u.budget_exhausted,
            "cover_vertices": u.state.vertex_count(),
            "dot": (emit == Emit::Dot).then(|| u.state.to_dot()),
        }),
    })
}

fn cmd_decompose(doc: &GraphDocument, bound: usize) -> CliResult<Report> {
    let g = &doc.graph;
    let m = is_bucolic(g)?;
    if !m.member {
        let cert = m.certificate.expect("non-members carry a certificate");
        return Ok(Report {
            code: EXIT_NEGATIVE,
            text: format!("not bucolic: {}\n", describe_certificate(g, &cert)),
            data: json!({"bucolic": false, "certificate": describe_certificate(g, &cert), "raw": cert}),
        });
    }
    let tree = decompose_bucolic_with(g, bound)?;
    let check = verify_decomposition(&tree, g);
    let mut text = tree.render();
    let _ = writeln!(text, "verification: {}", if check.ok { "ok" } else { "FAILED" });
    for d in &check.diagnostics {
        let _ = writeln!(text, "  {d}");
    }
    Ok(Report {
        code: if check.ok { EXIT_OK } else { EXIT_ERROR },
        text,
        data: json!({"bucolic": true, "tree": tree, "verification": check}),
    })
}

fn cmd_moor(doc: &GraphDocument, base: &str, method: MethodArg) -> CliResult<Report> {
    let g = &doc.graph;
    let u = resolve(doc, base)?;
    let method = match method {
        MethodArg::Bfs => MooringMethod::Bfs,
        MethodArg::Lexbfs => MooringMethod::Lexbfs,
    };
    let m = mooring(g, u, method)?;
    let check = verify_combing(g, &m);
    let mut text = format!("base: {}\n", g.label(u));
    for v in g.vertices().filter(|&v| v != u) {
        let _ = writeln!(text, "{} -> {}", g.label(v), g.label(m.father[v]));
    }
    let verdict = match check {
        CombingCheck::Holds => "combing: holds".to_string(),
        CombingCheck::Violated { edge: (a, b) } => {
            format!("combing: violated at edge {}-{}", g.label(a), g.label(b))
        }
        CombingCheck::InvalidMooring { vertex } => format!("combing: invalid father at {}", g.label(vertex)),
    };
    let _ = writeln!(text, "{verdict}");
    Ok(Report {
        code: if check.holds() { EXIT_OK } else { EXIT_NEGATIVE },
        text,
        data: json!({
            "base": g.label(u),
            "father": g.vertices().map(|v| (g.label(v).to_string(), Value::from(g.label(m.father[v])))).collect::<serde_json::Map<_, _>>(),
            "combing": check,
        }),
    })
}

fn cmd_fixprism(doc: &GraphDocument, full_group: bool) -> CliResult<Report> {
    let g = &doc.graph;
    let f = if !doc.group.is_empty() {
        GroupAction::generated_by(g, &doc.group, DEFAULT_GROUP_CAP)?
    } else if full_group {
        automorphisms(g, DEFAULT_GROUP_CAP)?
    } else {
        return Err(CliError::Usage(
            "input lists no group; add perm lines or pass --full-group".into(),
        ));
    };
    let fp = fixed_prism(&f)?;
    let cross_check = if g.vertex_count() <= CROSS_CHECK_LIMIT {
        let all = brute_force_invariant_prisms(&f, env_budget().max(1 << 12))?;
        Some(all.iter().any(|p| p.vertices == fp.prism.vertices))
    } else {
        None
    };
    let mut text = format!(
        "group order: {}\ninvariant subgraph: {}\ninvariant box: {}\nprism: {}\n",
        f.order(),
        names(g, fp.invariant_subgraph.iter().copied()),
        names(g, fp.invariant_box.iter().copied()),
        names(g, fp.prism.vertices.iter().copied()),
    );
    for (i, factor) in fp.prism.factors.iter().enumerate() {
        let _ = writeln!(text, "factor {}: {}", i + 1, names(g, factor.iter().copied()));
    }
    let _ = writeln!(
        text,
        "invariance: checked against all {} elements ({:?})",
        fp.prism.elements_checked, fp.prism.method
    );
    let _ = writeln!(
        text,
        "brute-force cross-check: {}",
        match cross_check {
            Some(true) => "confirmed",
            Some(false) => "MISMATCH",
            None => "skipped",
        }
    );
    Ok(Report {
        code: if cross_check == Some(false) {
            EXIT_ERROR
        } else {
            EXIT_OK
        },
        text,
        data: json!({
            "group_order": f.order(),
            "invariant_subgraph": label_list(g, fp.invariant_subgraph.iter().copied()),
            "invariant_box": label_list(g, fp.invariant_box.iter().copied()),
            "prism": label_list(g, fp.prism.vertices.iter().copied()),
            "factors": fp.prism.factors.iter().map(|s| label_list(g, s.iter().copied())).collect::<Vec<_>>(),
            "method": fp.prism.method,
            "elements_checked": fp.prism.elements_checked,
            "barycenter": fp.prism.barycenter().into_iter().map(|(v, w)| json!([g.label(v), w])).collect::<Vec<_>>(),
            "brute_force_confirmed": cross_check,
        }),
    })
}

/// Builds a generated graph from a family name and its parameters.
pub fn generate(family: Family, params: &[usize], seed: u64) -> Result<Graph, String> {
    let mut rng = corpus::rng(seed);
    let one = || match params {
        [k] => Ok(*k),
        _ => Err(format!("{family:?} takes one parameter")),
    };
    let two = || match params {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("{family:?} takes two parameters")),
    };
    let lib = |r: bucolic::Result<Graph>| r.map_err(|e| e.to_string());
    match family {
        Family::Wheel => lib(generators::wheel(one()?)),
        Family::AlmostWheel => lib(generators::almost_wheel(one()?)),
        Family::Hypercube => lib(generators::hypercube(one()?)),
        Family::Cycle => lib(generators::cycle(one()?)),
        Family::Path => lib(generators::path(one()?)),
        Family::Complete => lib(generators::complete(one()?)),
        Family::Hamming => lib(generators::hamming(params)),
        Family::Grid => {
            let (a, b) = two()?;
            lib(generators::grid(a, b))
        }
        Family::Torus => {
            let (a, b) = two()?;
            lib(generators::torus(a, b))
        }
        Family::CompleteBipartite => {
            let (a, b) = two()?;
            lib(generators::complete_bipartite(a, b))
        }
        Family::RandomTree => Ok(corpus::random_tree(&mut rng, one()?.max(1))),
        Family::RandomConnected => Ok(corpus::random_connected(&mut rng, one()?.max(1), 0.3)),
        Family::RandomTwoTree => Ok(corpus::random_two_tree(&mut rng, one()?)),
        Family::RandomWeaklyBridged => Ok(corpus::random_weakly_bridged(&mut rng, one()?.max(3))),
        Family::RandomBucolic => Ok(corpus::random_bucolic(&mut rng, one()?.max(2))),
    }
}

fn envelope(argv: &[String], input_hash: Option<&str>, command: &str, code: i32, result: Value) -> String {
    let v = json!({
        "tool": "bucolic",
        "version": env!("CARGO_PKG_VERSION"),
        "command_line": argv,
        "input_sha256": input_hash,
        "command": command,
        "exit_code": code,
        "result": result,
    });
    serde_json::to_string_pretty(&v).expect("serializable report") + "\n"
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Hull { .. } => "hull",
        Command::Cover { .. } => "cover",
        Command::Decompose { .. } => "decompose",
        Command::Moor { .. } => "moor",
        Command::Fixprism { .. } => "fixprism",
        Command::Gen { .. } => "gen",
    }
}

/// Runs one parsed command. `argv` is recorded in structured output.
pub fn run(cli: &Cli, argv: &[String], stdin: &mut dyn Read) -> Output {
    let name = command_name(&cli.command);
    if let Command::Gen { family, params, seed } = &cli.command {
        return run_gen(cli.format, *family, params, *seed);
    }
    let input = match &cli.command {
        Command::Check { input, .. }
        | Command::Hull { input, .. }
        | Command::Cover { input, .. }
        | Command::Decompose { input, .. }
        | Command::Moor { input, .. }
        | Command::Fixprism { input, .. } => input,
        Command::Gen { .. } => unreachable!("handled above"),
    };
    let bytes = match read_input(&input.input, stdin) {
        Ok(b) => b,
        Err(source) => {
            return failure(
                cli.format,
                argv,
                None,
                name,
                CliError::Io {
                    path: input.input.clone(),
                    source,
                },
            )
        }
    };
    let hash = sha256_hex(&bytes);
    let result = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::Usage(format!("input is not UTF-8: {e}")))
        .and_then(|text| Ok(GraphDocument::parse(text)?))
        .and_then(|doc| match &cli.command {
            Command::Check { class, exhaustive, .. } => cmd_check(&doc, *class, *exhaustive),
            Command::Hull { set, kind, .. } => cmd_hull(&doc, set, *kind),
            Command::Cover {
                base,
                radius,
                budget,
                emit,
                ..
            } => cmd_cover(&doc, base, *radius, *budget, *emit),
            Command::Decompose { bound, .. } => cmd_decompose(&doc, *bound),
            Command::Moor { base, method, .. } => cmd_moor(&doc, base, *method),
            Command::Fixprism { full_group, .. } => cmd_fixprism(&doc, *full_group),
            Command::Gen { .. } => unreachable!("handled above"),
        });
    match result {
        Ok(r) => Output {
            code: r.code,
            stdout: match cli.format {
                OutputFormat::Text => r.text,
                OutputFormat::Json => envelope(argv, Some(&hash), name, r.code, r.data),
            },
            stderr: String::new(),
        },
        Err(e) => failure(cli.format, argv, Some(&hash), name, e),
    }
}

fn failure(format: OutputFormat, argv: &[String], hash: Option<&str>, name: &str, e: CliError) -> Output {
    let message = format!("error: {e}\n");
    Output {
        code: EXIT_ERROR,
        stdout: match format {
            OutputFormat::Text => String::new(),
            OutputFormat::Json => envelope(argv, hash, name, EXIT_ERROR, json!({"error": e.to_string()})),
        },
        stderr: message,
    }
}

fn run_gen(format: OutputFormat, family: Family, params: &str, seed: u64) -> Output {
    let parsed: Result<Vec<usize>, String> = params
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("invalid parameter {p:?}")))
        .collect();
    match parsed.and_then(|ps| generate(family, &ps, seed)) {
        Ok(g) => Output {
            code: EXIT_OK,
            stdout: GraphDocument::new(g).serialize(match format {
                OutputFormat::Text => Format::EdgeList,
                OutputFormat::Json => Format::Record,
            }),
            stderr: String::new(),
        },
        Err(e) => Output {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
