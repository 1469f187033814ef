use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kekule::builtins::{builtin, BUILTIN_NAMES};
use kekule::cell::{parity_space, Cell, Channel, PortSet};
use kekule::classify::{classify_cell, Classification};
use kekule::gf2::{enumerate_semi_kekule_with, hsk_basis};
use kekule::graph::{parse_graph, Graph, GraphDocument};
use kekule::kekule::{
    enumerate_kekule_states_with, is_perfect_matching, kekule_cell, kekule_states_for_with, port_assignment, port_set,
    Limits,
};
use kekule::omni::is_omniconjugated;
use kekule::transform::{self, RewriteReport};
use kekule::verify::{claim_names, run_suite, Mutant, VerifyOptions};

mod report;
mod simulate;

use report::{edge_text, Report};

#[derive(Parser)]
#[command(name = "kekulec", version, about = "Kekulé states, cells and switching cells of graphs")]
struct Cli {
    /// Output format for analysis commands.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Warn about nodes of degree above 4.
    #[arg(long, global = true)]
    lint: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GraphArg {
    /// Graph document (JSON).
    graph: PathBuf,
}

#[derive(Args)]
struct LimitArgs {
    /// Lift the cap on the cycle rank of enumerated graphs.
    #[arg(long)]
    unlimited: bool,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        if self.unlimited {
            Limits::unlimited()
        } else {
            Limits::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the Kekulé states of a graph.
    States {
        #[command(flatten)]
        input: GraphArg,
        /// Only states with exactly these ports on (comma separated).
        #[arg(long)]
        assignment: Option<String>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print the Kekulé cell.
    Cell {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Semi-Kekulé states for one port assignment.
    Semikekule {
        #[command(flatten)]
        input: GraphArg,
        /// Ports carrying a double bond (comma separated); defaults to the
        /// first assignment of the right parity.
        #[arg(long)]
        assignment: Option<String>,
        /// Also list every state.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Channel openness at every member of the cell.
    Channels {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Decide omniconjugation.
    Omni {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Classify the flexible cell of a graph, or a cell given directly.
    Classify {
        /// Graph document.
        graph: Option<PathBuf>,
        /// Cell document: {"ports": [...], "members": [[...], ...]}.
        #[arg(long, conflicts_with = "graph")]
        cell: Option<PathBuf>,
    },
    /// Rewrite a graph.
    Transform {
        #[command(flatten)]
        input: GraphArg,
        #[command(flatten)]
        op: TransformOp,
        /// Write the rewritten document here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Signal channels of a functional cell, interactively or from a script.
    Simulate {
        #[command(flatten)]
        input: GraphArg,
        /// Replay commands from a file and exit.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Print a builtin graph document; its checked counts go to stderr.
    Builtin {
        /// Builtin name; omit to list them.
        name: Option<String>,
    },
    /// Run the exhaustive claim suites over small graphs.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
        #[arg(long, default_value_t = 7)]
        max_nodes: usize,
        /// Run a single claim.
        #[arg(long)]
        claim: Option<String>,
        /// Inject a known bug to check that the suites notice.
        #[arg(long, value_enum)]
        mutant: Option<MutantArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MutantArg {
    CellMembership,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TransformOp {
    /// Remove degree-2 node and merge its neighbours.
    #[arg(long, value_name = "U0")]
    merge: Option<String>,
    /// Split `u` as `u:a,b/c,d`.
    #[arg(long, value_name = "U:PARTITION")]
    split: Option<String>,
    /// Subdivide the edge at a port.
    #[arg(long, value_name = "P")]
    subdivide: Option<String>,
    /// Subdivide the edges at several ports.
    #[arg(long, value_name = "P1,P2,...")]
    translate: Option<String>,
    /// Add an edge between two internal nodes.
    #[arg(long, value_name = "U,V")]
    add_edge: Option<String>,
    /// Glue port `p` of the input to port `q` of another graph.
    #[arg(long, value_name = "OTHER.json:P,Q")]
    glue: Option<String>,
    /// Keep only the flexible edges.
    #[arg(long)]
    flex: bool,
}

/// Exit status 2: bad invocation or unreadable input.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(anyhow::anyhow!(msg.into())).into()
}

fn read_file(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| UsageError(anyhow::anyhow!("cannot read {}: {e}", path.display())).into())
}

fn load(path: &Path, lint: bool) -> anyhow::Result<GraphDocument> {
    let text = read_file(path)?;
    let doc = parse_graph(&text).with_context(|| format!("in {}", path.display()))?;
    for w in &doc.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    if lint {
        let g = doc.graph();
        for v in 0..g.node_count() {
            if g.degree(v) > 4 {
                eprintln!("lint: node `{}` has degree {}", g.label(v), g.degree(v));
            }
        }
    }
    Ok(doc)
}

fn list(arg: &str) -> Vec<String> {
    arg.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn states(g: &Graph, assignment: Option<&str>, limits: Limits) -> anyhow::Result<Report> {
    let states = match assignment {
        Some(a) => kekule_states_for_with(g, &port_set(g).assignment(&list(a))?, limits)?,
        None => enumerate_kekule_states_with(g, limits)?,
    };
    let perfect = states.iter().filter(|w| is_perfect_matching(g, w)).count();
    let ports = port_set(g);
    let mut r = Report::new();
    r.line(format!("{} Kekulé states", states.len()));
    r.line(format!("{perfect} perfect matchings"));
    let mut items = Vec::new();
    for w in &states {
        let k = port_assignment(g, w);
        r.line(format!("{}  ports {}", edge_text(g, w), ports.format(&k)));
        items.push(json!({
            "edges": report::edge_pairs(g, w),
            "ports": ports.labels_of(&k),
        }));
    }
    r.json = json!({"count": states.len(), "perfect_matchings": perfect, "states": items});
    Ok(r)
}

fn cell_json(cell: &Cell) -> Value {
    json!({
        "ports": cell.ports().labels(),
        "members": cell.sorted_members().iter().map(|m| cell.ports().labels_of(m)).collect::<Vec<_>>(),
    })
}

fn cell_report(g: &Graph) -> anyhow::Result<Report> {
    let cell = kekule_cell(g)?;
    let mut r = Report::new();
    let ports = if cell.ports().is_empty() { "none".to_string() } else { cell.ports().labels().join(", ") };
    r.line(format!("{} members over ports {ports}", cell.len()));
    r.push(cell.to_text());
    r.json = cell_json(&cell);
    Ok(r)
}

fn semikekule(g: &Graph, assignment: Option<&str>, show: bool, limits: Limits) -> anyhow::Result<Report> {
    let ports = port_set(g);
    let class = parity_space(&ports, g.signature());
    let k = match assignment {
        Some(a) => ports.assignment(&list(a))?,
        None => class.sorted_members().first().map(|k| (*k).clone()).unwrap_or_else(|| ports.empty_assignment()),
    };
    let basis = hsk_basis(g)?;
    let states = enumerate_semi_kekule_with(g, &k, limits)?;
    let mut r = Report::new();
    r.line(format!("r = {}", basis.dimension()));
    for (i, c) in basis.cycles.iter().enumerate() {
        r.line(format!("cycle {i}: {}", edge_text(g, c)));
    }
    r.line(format!("{} semi-Kekulé states at {}", states.len(), ports.format(&k)));
    if show {
        for w in &states {
            r.line(edge_text(g, w));
        }
    }
    r.json = json!({
        "r": basis.dimension(),
        "basis": basis.cycles.iter().map(|c| edge_text(g, c)).collect::<Vec<_>>(),
        "assignment": ports.labels_of(&k),
        "count": states.len(),
        "states": if show { states.iter().map(|w| edge_text(g, w)).collect::<Vec<_>>() } else { Vec::new() },
    });
    Ok(r)
}

fn channels(g: &Graph) -> anyhow::Result<Report> {
    let cell = kekule_cell(g)?;
    let ports = cell.ports();
    let n = ports.len();
    let mut r = Report::new();
    let mut rows = Vec::new();
    for k in cell.sorted_members() {
        let mut open = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = Channel::new(n, i, j)?;
                if cell.is_open(k, &c)? {
                    open.push(format!("{}-{}", ports.labels()[i], ports.labels()[j]));
                }
            }
        }
        r.line(format!("{}: {}", cell.format(k), if open.is_empty() { "none".to_string() } else { open.join(" ") }));
        rows.push(json!({"state": ports.labels_of(k), "open": open}));
    }
    r.json = json!({"ports": ports.labels(), "members": rows});
    Ok(r)
}

fn omni(g: &Graph) -> anyhow::Result<Report> {
    let v = is_omniconjugated(g)?;
    let mut r = Report::new();
    r.line(format!("omniconjugated: {}", v.omniconjugated));
    r.line(format!("signature: {}", v.signature));
    r.line(format!("cell members: {}", v.cell_size));
    r.line(format!("parity class: {}", v.parity_size));
    if let Some(w) = v.witness_text() {
        r.line(format!("witness: {w}"));
    }
    r.json = json!({
        "omniconjugated": v.omniconjugated,
        "signature": v.signature,
        "cell_members": v.cell_size,
        "parity_class": v.parity_size,
        "witness": v.witness.as_ref().map(|w| v.ports.labels_of(w)),
    });
    Ok(r)
}

fn parse_cell(text: &str) -> anyhow::Result<Cell> {
    let root: Value = serde_json::from_str(text).context("cell document")?;
    let labels = |v: &Value, what: &str| -> anyhow::Result<Vec<String>> {
        v.as_array()
            .with_context(|| format!("{what} must be an array"))?
            .iter()
            .map(|x| x.as_str().map(String::from).with_context(|| format!("{what}: labels must be strings")))
            .collect()
    };
    let ports = PortSet::new(labels(root.get("ports").context("missing `ports`")?, "ports")?)?;
    let mut members = Vec::new();
    for m in root.get("members").and_then(Value::as_array).context("missing `members` array")? {
        members.push(ports.assignment(&labels(m, "member")?)?);
    }
    Ok(Cell::new(ports, members)?)
}

fn classify(cell: &Cell) -> anyhow::Result<Report> {
    let mut r = Report::new();
    match classify_cell(cell)? {
        Classification::NotKekule { reason } => {
            r.line("Kekulé: false");
            r.line(format!("reason: {reason}"));
            r.json = json!({"kekule": false, "reason": reason});
        }
        Classification::Kekule(k) => {
            let template = GraphDocument::from_graph(k.template.clone()).to_json();
            r.line("Kekulé: true");
            r.line(format!("class: {}", k.class));
            r.line(format!("translation: {}", cell.format(&k.translation)));
            r.line(format!("ordering: {}", k.ordering.join(", ")));
            r.line("template:");
            r.push(template.clone());
            r.json = json!({
                "kekule": true,
                "class": k.class.to_string(),
                "translation": cell.ports().labels_of(&k.translation),
                "ordering": k.ordering,
                "template": serde_json::from_str::<Value>(&template)?,
            });
        }
    }
    Ok(r)
}

fn transform(g: &Graph, op: &TransformOp, lint: bool) -> anyhow::Result<(String, Graph)> {
    let pair = |s: &str, what: &str| -> anyhow::Result<(String, String)> {
        match list(s).as_slice() {
            [a, b] => Ok((a.clone(), b.clone())),
            _ => Err(usage(format!("--{what} expects two comma separated labels"))),
        }
    };
    if let Some(u) = &op.merge {
        return Ok((format!("merge {u}"), transform::merge_node(g, u)?));
    }
    if let Some(s) = &op.split {
        let (u, rest) = s.split_once(':').ok_or_else(|| usage("--split expects u:a,b/c,d"))?;
        let (a, b) = rest.split_once('/').ok_or_else(|| usage("--split expects u:a,b/c,d"))?;
        let (a, b) = (list(a), list(b));
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let b: Vec<&str> = b.iter().map(String::as_str).collect();
        return Ok((format!("split {s}"), transform::split_node(g, u, &a, &b)?));
    }
    if let Some(p) = &op.subdivide {
        return Ok((format!("subdivide {p}"), transform::subdivide_port_edge(g, p)?));
    }
    if let Some(ps) = &op.translate {
        return Ok((format!("translate {ps}"), transform::translate_graph(g, &list(ps))?));
    }
    if let Some(e) = &op.add_edge {
        let (u, v) = pair(e, "add-edge")?;
        return Ok((format!("add-edge {u},{v}"), transform::add_internal_edge(g, &u, &v)?));
    }
    if let Some(arg) = &op.glue {
        let (file, ports) = arg.rsplit_once(':').ok_or_else(|| usage("--glue expects other.json:p,q"))?;
        let (p, q) = pair(ports, "glue")?;
        let other = load(Path::new(file), lint)?;
        return Ok((format!("glue {p} with {file}:{q}"), transform::glue_ports(g, &p, other.graph(), &q)?));
    }
    if op.flex {
        return Ok(("flex".into(), transform::flexible_subgraph(g)?));
    }
    Err(usage("no transformation given"))
}

fn rewrite_text(report: &RewriteReport) -> String {
    let mut out = format!("{}\n", report.op);
    let nodes = |v: &[String]| if v.is_empty() { "-".to_string() } else { v.join(" ") };
    let edges = |v: &[(String, String)]| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
        }
    };
    out.push_str(&format!("added nodes: {}\n", nodes(&report.added_nodes)));
    out.push_str(&format!("removed nodes: {}\n", nodes(&report.removed_nodes)));
    out.push_str(&format!("added edges: {}\n", edges(&report.added_edges)));
    out.push_str(&format!("removed edges: {}\n", edges(&report.removed_edges)));
    out
}

fn builtin_report(name: Option<&str>) -> anyhow::Result<Report> {
    let mut r = Report::new();
    let Some(name) = name else {
        for n in BUILTIN_NAMES {
            r.line(n);
        }
        r.json = json!(BUILTIN_NAMES);
        return Ok(r);
    };
    let b = builtin(name)?;
    let doc = b.document().to_json();
    for c in &b.checks {
        let status = if c.found == c.expected { "ok" } else { "MISMATCH" };
        r.note(format!("check {}: {} (expected {}) {status}", c.claim, c.found, c.expected));
    }
    r.push(doc.clone());
    r.json = json!({
        "name": b.name,
        "checks": b.checks.iter().map(|c| json!({"claim": c.claim, "expected": c.expected, "found": c.found})).collect::<Vec<_>>(),
        "document": serde_json::from_str::<Value>(&doc)?,
    });
    Ok(r)
}

fn verify(opts: VerifyOptions, claim: Option<&str>) -> anyhow::Result<(Report, bool)> {
    if let Some(c) = claim {
        if !claim_names().contains(&c) {
            return Err(usage(format!("unknown claim `{c}`; known: {}", claim_names().join(", "))));
        }
    }
    let results = run_suite(&opts, claim)?;
    let mut r = Report::new();
    let mut ok = true;
    let mut rows = Vec::new();
    for res in &results {
        let status = if res.passed() { "PASS" } else { "FAIL" };
        r.line(format!("{status} {} ({} graphs): {}", res.claim, res.graphs, res.statement));
        if let Some(c) = &res.counterexample {
            ok = false;
            r.line(format!("  counterexample: {}", c.detail));
            r.push(c.document());
        }
        rows.push(json!({
            "claim": res.claim,
            "passed": res.passed(),
            "graphs": res.graphs,
            "counterexample": res.counterexample.as_ref().map(|c| json!({
                "detail": c.detail,
                "document": serde_json::from_str::<Value>(&c.document()).unwrap_or(Value::Null),
            })),
        }));
    }
    r.json = json!({"max_edges": opts.max_edges, "max_nodes": opts.max_nodes, "claims": rows});
    Ok((r, ok))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let fmt = cli.format;
    let lint = cli.lint;
    let emit = |r: Report| {
        r.print(fmt == Format::Json);
        Ok(ExitCode::SUCCESS)
    };
    match cli.command {
        Command::States { input, assignment, limits } => {
            let doc = load(&input.graph, lint)?;
            emit(states(doc.graph(), assignment.as_deref(), limits.limits())?)
        }
        Command::Cell { input } => emit(cell_report(load(&input.graph, lint)?.graph())?),
        Command::Semikekule { input, assignment, list, limits } => {
            let doc = load(&input.graph, lint)?;
            emit(semikekule(doc.graph(), assignment.as_deref(), list, limits.limits())?)
        }
        Command::Channels { input } => emit(channels(load(&input.graph, lint)?.graph())?),
        Command::Omni { input } => emit(omni(load(&input.graph, lint)?.graph())?),
        Command::Classify { graph, cell } => {
            let cell = match (graph, cell) {
                (Some(g), None) => kekule_cell(load(&g, lint)?.graph())?.flex(),
                (None, Some(c)) => parse_cell(&read_file(&c)?)?,
                _ => return Err(usage("give a graph document or --cell")),
            };
            emit(classify(&cell)?)
        }
        Command::Transform { input, op, output } => {
            let doc = load(&input.graph, lint)?;
            let (name, out) = transform(doc.graph(), &op, lint)?;
            let report = RewriteReport::new(name, doc.graph(), &out);
            let text = GraphDocument::from_graph(out).to_json();
            match output {
                Some(path) => {
                    fs::write(&path, &text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                }
                None if fmt == Format::Text => print!("{text}"),
                None => {}
            }
            if fmt == Format::Json {
                let v = json!({
                    "op": report.op,
                    "document": serde_json::from_str::<Value>(&text)?,
                    "added_nodes": report.added_nodes,
                    "removed_nodes": report.removed_nodes,
                    "added_edges": report.added_edges,
                    "removed_edges": report.removed_edges,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                eprint!("{}", rewrite_text(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { input, script } => {
            let doc = load(&input.graph, lint)?;
            let fc = kekule::switch::FunctionalCell::from_document(&doc)?;
            match script {
                Some(path) => simulate::script(fc, &read_file(&path)?),
                None => simulate::repl(fc),
            }
        }
        Command::Builtin { name } => emit(builtin_report(name.as_deref())?),
        Command::Verify {
            max_edges,
            max_nodes,
            claim,
            mutant,
        } => {
            let opts = VerifyOptions {
                max_edges,
                max_nodes,
                mutant: mutant.map(|MutantArg::CellMembership| Mutant::CellMembership),
            };
            let (r, ok) = verify(opts, claim.as_deref())?;
            r.print(fmt == Format::Json);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
