use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use critgraph::chroma::Solver;
use critgraph::cograph::{cograph_color, find_anticomplete_pair, recognize};
use critgraph::construct::{bound_f, color_k3_free_with, color_kk_free_with};
use critgraph::critical::{certify_k_colorable, criticality_report, Certificate, CriticalDb};
use critgraph::enumerate::{enumerate_critical, enumerate_graphs};
use critgraph::patterns::{format_family, parse_family, Family};
use critgraph::{parse_graph6, to_graph6, Coloring, Error, Graph, PatternSpec, VertexSet};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "critgraph", version, about = "Vertex-critical graphs and certified colourings")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph in graph6, or `-` to read one graph per line from stdin.
    graph: String,
}

#[derive(Subcommand)]
enum Command {
    /// Test freeness of every listed pattern (exit 1 with an embedding if one occurs).
    Free {
        /// Pattern such as `P4`, `K3`, `P4+2P1`, `broom(3,2)`; repeatable or comma separated.
        #[arg(long = "pattern", required = true)]
        patterns: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Chromatic number, or a K-colourability decision with --k.
    Chi {
        #[arg(long)]
        k: Option<usize>,
        /// Search node budget.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        input: Input,
    },
    /// Criticality report; exit 0 iff the graph is k-vertex-critical.
    Critical {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Cotree of a P4-free graph.
    Cotree {
        #[command(flatten)]
        input: Input,
    },
    /// Anticomplete pair X, Y with common neighbourhood W in a connected, non-complete P4-free graph.
    Pair {
        #[command(flatten)]
        input: Input,
    },
    /// Constructive colouring of a (P4 + ell P1, K_k)-free graph.
    Color {
        #[arg(long)]
        ell: usize,
        /// Forbidden clique size; 3 when omitted.
        #[arg(long)]
        clique: Option<usize>,
        /// Skip the family membership check.
        #[arg(long)]
        no_verify: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Colour bound for (P4 + ell P1, K_k)-free graphs.
    Bound {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        k: u64,
    },
    /// Stream graphs on n vertices, or k-vertex-critical graphs on at most n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long = "free")]
        free: Vec<String>,
        #[arg(long)]
        critical: Option<usize>,
        #[arg(long)]
        connected: bool,
        /// Write the critical graphs as a database file (needs --critical).
        #[arg(long)]
        db: Option<PathBuf>,
    },
    /// Certified k-colourability against a critical-graph database.
    Certify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        db: PathBuf,
        #[command(flatten)]
        input: Input,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Free { .. } => "free",
            Command::Chi { .. } => "chi",
            Command::Critical { .. } => "critical",
            Command::Cotree { .. } => "cotree",
            Command::Pair { .. } => "pair",
            Command::Color { .. } => "color",
            Command::Bound { .. } => "bound",
            Command::Enumerate { .. } => "enumerate",
            Command::Certify { .. } => "certify",
        }
    }
}

/// Result of one subcommand on one input.
struct Outcome {
    code: u8,
    text: String,
    result: Value,
}

impl Outcome {
    fn new(code: u8, text: impl Into<String>, result: Value) -> Self {
        Outcome { code, text: text.into(), result }
    }
}

/// A failure that maps to exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Step = Result<Outcome, Failure>;

type GraphOp = Box<dyn Fn(&Graph) -> Step + Sync>;

fn set_json(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

fn coloring_text(c: &Coloring) -> String {
    c.colors().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn checked_coloring(g: &Graph, c: &Coloring, limit: Option<usize>) -> Result<(), Failure> {
    if !c.is_proper(g) || limit.is_some_and(|k| c.palette_size() > k) {
        return Err(Failure("internal check failed: colouring does not verify".into()));
    }
    Ok(())
}

fn parse_patterns(items: &[String]) -> Result<Vec<PatternSpec>, Failure> {
    let mut specs = Vec::new();
    for item in items {
        specs.extend(parse_family(item)?);
    }
    Ok(specs)
}

fn run_free(g: &Graph, family: &Family) -> Step {
    match family.first_violation(g) {
        None => Ok(Outcome::new(0, "free", json!({"free": true}))),
        Some(v) => {
            if !v.embedding.verify(g, &family.graphs()[v.index]) {
                return Err(Failure("internal check failed: embedding does not verify".into()));
            }
            Ok(Outcome::new(
                1,
                format!("contains {} at {:?}", v.spec, v.embedding.map),
                json!({"free": false, "pattern": v.spec.to_string(), "embedding": v.embedding.map}),
            ))
        }
    }
}

fn run_chi(g: &Graph, k: Option<usize>, budget: Option<u64>) -> Step {
    let mut solver = match budget {
        Some(b) => Solver::with_budget(b),
        None => Solver::new(),
    };
    match k {
        Some(k) => match solver.is_k_colorable(g, k)? {
            Some(c) => {
                checked_coloring(g, &c, Some(k))?;
                Ok(Outcome::new(
                    0,
                    format!("{k}-colourable: {}", coloring_text(&c)),
                    json!({"k": k, "colorable": true, "coloring": c.colors()}),
                ))
            }
            None => Ok(Outcome::new(1, format!("not {k}-colourable"), json!({"k": k, "colorable": false}))),
        },
        None => {
            let (chi, c) = solver.chromatic_number(g)?;
            checked_coloring(g, &c, Some(chi))?;
            Ok(Outcome::new(
                0,
                format!("chi = {chi}: {}", coloring_text(&c)),
                json!({"chi": chi, "coloring": c.colors()}),
            ))
        }
    }
}

fn run_critical(g: &Graph, k: usize) -> Step {
    let r = criticality_report(g, k)?;
    let text = format!(
        "chi = {}, chi(G - v) = {:?}: {}",
        r.chi,
        r.per_vertex,
        if r.verdict { format!("{k}-vertex-critical") } else { format!("not {k}-vertex-critical") }
    );
    Ok(Outcome::new(
        if r.verdict { 0 } else { 1 },
        text,
        json!({"k": r.k, "chi": r.chi, "per_vertex": r.per_vertex, "critical": r.verdict}),
    ))
}

/// Precondition failures of `cotree` and `pair` exit 1 with the reason.
fn precondition(e: Error) -> Step {
    match e {
        Error::HasInducedP4(_) | Error::Disconnected | Error::NoInducedP3 => {
            let witness = match &e {
                Error::HasInducedP4(p) => json!(p),
                _ => Value::Null,
            };
            Ok(Outcome::new(1, e.to_string(), json!({"error": e.to_string(), "p4": witness})))
        }
        other => Err(other.into()),
    }
}

fn run_cotree(g: &Graph) -> Step {
    match recognize(g) {
        Ok(tree) => {
            if tree.realize().as_ref() != Ok(g) || !tree.is_well_formed() {
                return Err(Failure("internal check failed: cotree does not rebuild the graph".into()));
            }
            let c = cograph_color(&tree);
            checked_coloring(g, &c, None)?;
            Ok(Outcome::new(
                0,
                tree.to_string(),
                json!({"cotree": tree.to_string(), "chi": c.palette_size(), "coloring": c.colors()}),
            ))
        }
        Err(e) => precondition(e),
    }
}

fn run_pair(g: &Graph) -> Step {
    match find_anticomplete_pair(g) {
        Ok(p) => {
            if !p.verify(g) {
                return Err(Failure("internal check failed: pair does not verify".into()));
            }
            Ok(Outcome::new(
                0,
                format!("X = {:?}, Y = {:?}, W = {:?}", p.x.to_vec(), p.y.to_vec(), p.w.to_vec()),
                json!({"x": set_json(&p.x), "y": set_json(&p.y), "w": set_json(&p.w)}),
            ))
        }
        Err(e) => precondition(e),
    }
}

fn run_color(g: &Graph, ell: usize, clique: Option<usize>, verify: bool) -> Step {
    let k = clique.unwrap_or(3);
    let (c, bound) = if k == 3 {
        (color_k3_free_with(g, ell, verify)?, ell as u64 + 2)
    } else {
        (color_kk_free_with(g, ell, k, verify)?, bound_f(k as u64, ell as u64)?)
    };
    checked_coloring(g, &c, None)?;
    let used = c.palette_size() as u64;
    let within = used <= bound;
    Ok(Outcome::new(
        if within { 0 } else { 1 },
        format!("{}\ncolours used {used}, bound {bound}: {}", coloring_text(&c), if within { "ok" } else { "exceeded" }),
        json!({"coloring": c.colors(), "colors": used, "bound": bound, "within_bound": within}),
    ))
}

fn run_certify(g: &Graph, k: usize, db: &CriticalDb) -> Step {
    let cert = certify_k_colorable(g, k, db)?;
    if !cert.verify(g, k) {
        return Err(Failure("internal check failed: certificate does not verify".into()));
    }
    Ok(match cert {
        Certificate::Colorable(c) => Outcome::new(
            0,
            format!("{k}-colourable: {}", coloring_text(&c)),
            json!({"colorable": true, "coloring": c.colors()}),
        ),
        Certificate::Obstruction { member, graph, embedding } => Outcome::new(
            1,
            format!("not {k}-colourable: contains {} at {:?}", to_graph6(&graph), embedding.map),
            json!({"colorable": false, "member": member, "witness": to_graph6(&graph), "embedding": embedding.map}),
        ),
    })
}

fn run_bound(ell: u64, k: u64) -> Step {
    let b = bound_f(k, ell)?;
    Ok(Outcome::new(0, b.to_string(), json!({"k": k, "ell": ell, "bound": b})))
}

fn run_enumerate(n: usize, free: &[String], critical: Option<usize>, connected: bool, db: Option<&PathBuf>) -> Step {
    let family = parse_patterns(free)?;
    let graphs: Vec<String> = match critical {
        Some(k) => {
            let found = enumerate_critical(k, n, &family)?;
            if let Some(path) = db {
                fs::write(path, found.to_text()).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?;
            }
            found.members
        }
        None => {
            if db.is_some() {
                return Err(Failure("--db needs --critical".into()));
            }
            enumerate_graphs(n, &family, connected)?.iter().map(to_graph6).collect()
        }
    };
    let mut result = json!({"count": graphs.len(), "graphs": graphs, "family": format_family(&family)});
    if let Some(path) = db {
        result["db"] = json!(path.display().to_string());
    }
    Ok(Outcome::new(0, graphs.join("\n"), result))
}

fn load_db(path: &PathBuf) -> Result<CriticalDb, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    Ok(CriticalDb::parse(&text)?)
}

/// Per-graph subcommand, prepared once so batch lines can share it.
fn graph_op(cmd: &Command) -> Result<(GraphOp, &Input), Failure> {
    Ok(match cmd {
        Command::Free { patterns, input } => {
            let family = Family::new(&parse_patterns(patterns)?)?;
            (Box::new(move |g| run_free(g, &family)), input)
        }
        Command::Chi { k, budget, input } => {
            let (k, budget) = (*k, *budget);
            (Box::new(move |g| run_chi(g, k, budget)), input)
        }
        Command::Critical { k, input } => {
            let k = *k;
            (Box::new(move |g| run_critical(g, k)), input)
        }
        Command::Cotree { input } => (Box::new(run_cotree), input),
        Command::Pair { input } => (Box::new(run_pair), input),
        Command::Color { ell, clique, no_verify, input } => {
            let (ell, clique, verify) = (*ell, *clique, !*no_verify);
            (Box::new(move |g| run_color(g, ell, clique, verify)), input)
        }
        Command::Certify { k, db, input } => {
            let k = *k;
            let db = load_db(db)?;
            (Box::new(move |g| run_certify(g, k, &db)), input)
        }
        Command::Bound { .. } | Command::Enumerate { .. } => unreachable!("no graph input"),
    })
}

/// One input line and what happened to it.
struct Record {
    input: String,
    outcome: Result<Outcome, Failure>,
}

fn apply(op: &(dyn Fn(&Graph) -> Step + Sync), text: &str) -> Step {
    let g = parse_graph6(text)?;
    op(&g)
}

fn read_stdin() -> Result<Vec<String>, Failure> {
    let mut lines = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line.map_err(|e| Failure(format!("cannot read stdin: {e}")))?;
        let line = line.trim_end();
        if !line.is_empty() {
            lines.push(line.to_string());
        }
    }
    Ok(lines)
}

fn records(cmd: &Command) -> (bool, Vec<Record>) {
    match cmd {
        Command::Bound { ell, k } => (false, vec![Record { input: String::new(), outcome: run_bound(*ell, *k) }]),
        Command::Enumerate { n, free, critical, connected, db } => (
            false,
            vec![Record { input: String::new(), outcome: run_enumerate(*n, free, *critical, *connected, db.as_ref()) }],
        ),
        _ => {
            let (op, input) = match graph_op(cmd) {
                Ok(x) => x,
                Err(e) => {
                    let input = match cmd {
                        Command::Free { input, .. }
                        | Command::Chi { input, .. }
                        | Command::Critical { input, .. }
                        | Command::Cotree { input }
                        | Command::Pair { input }
                        | Command::Color { input, .. }
                        | Command::Certify { input, .. } => input.graph.clone(),
                        _ => String::new(),
                    };
                    return (false, vec![Record { input, outcome: Err(e) }]);
                }
            };
            if input.graph != "-" {
                let outcome = apply(op.as_ref(), &input.graph);
                return (false, vec![Record { input: input.graph.clone(), outcome }]);
            }
            let lines = match read_stdin() {
                Ok(lines) => lines,
                Err(e) => return (true, vec![Record { input: "-".into(), outcome: Err(e) }]),
            };
            let recs =
                lines.into_par_iter().map(|line| Record { outcome: apply(op.as_ref(), &line), input: line }).collect();
            (true, recs)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let started = Instant::now();
    let (batch, recs) = records(&cli.command);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;

    let code = if recs.iter().any(|r| r.outcome.is_err()) {
        2
    } else {
        recs.iter().filter_map(|r| r.outcome.as_ref().ok()).map(|o| o.code).max().unwrap_or(0)
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if cli.json {
        let entry = |r: &Record| match &r.outcome {
            Ok(o) => json!({"exit": o.code, "value": o.result}),
            Err(Failure(msg)) => json!({"exit": 2, "error": msg}),
        };
        let (input, result) = if batch {
            (json!(recs.iter().map(|r| r.input.clone()).collect::<Vec<_>>()), json!(recs.iter().map(entry).collect::<Vec<_>>()))
        } else {
            let r = &recs[0];
            (if r.input.is_empty() { Value::Null } else { json!(r.input) }, entry(r))
        };
        let doc = json!({"command": cli.command.name(), "input": input, "result": result, "elapsed_ms": elapsed_ms});
        let _ = writeln!(out, "{doc}");
    } else {
        for r in &recs {
            match &r.outcome {
                Ok(o) if batch => {
                    let _ = writeln!(out, "{}\t{}", r.input, o.text.replace('\n', "\t"));
                }
                Ok(o) => {
                    if !o.text.is_empty() {
                        let _ = writeln!(out, "{}", o.text);
                    }
                }
                Err(Failure(msg)) if batch => eprintln!("{}: error: {msg}", r.input),
                Err(Failure(msg)) => eprintln!("error: {msg}"),
            }
        }
    }
    ExitCode::from(code)
}
