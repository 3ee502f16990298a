//! `jsjtool`: inspect JSJ graphs of one-ended hyperbolic groups with
//! two-ended and hanging-Fuchsian vertex groups.
//!
//! Inputs are JSON graph documents (vertices, edges, optional Euler
//! characteristics) or matrix documents (a degree refinement given
//! directly). Reports are line-oriented text on stdout, mirrored as JSON
//! under `--json`; output is byte-identical across runs.
//!
//! Exit codes: 0 success / positive verdict; 1 negative verdict; 2 parse
//! error; 3 invalid input; 4 every comparison inapplicable; 5 `--verify`
//! mismatch; 6 resource guard.

mod dot;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use jsj_core::blocks::{
    augmented_graph_of_blocks, check_m1, check_m2, classify_torsion_qi, graph_of_blocks,
    TorsionQiVerdict,
};
use jsj_core::comm::{
    block_obstruction, genus_family, matching_vector, uniform_curve_degree, CommVerdict,
};
use jsj_core::doc::{parse_document, DocError, Document, GraphDoc};
use jsj_core::graph::validate_jsj_graph;
use jsj_core::pmanifold::PManifold;
use jsj_core::rational::{format_rational, Rational};
use jsj_core::refinement::{degree_refinement, is_quasi_isometric, DegreeRefinement};
use jsj_core::{BipartiteMultigraph, Error};

#[derive(Parser)]
#[command(name = "jsjtool", version, about = "JSJ graph invariants toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Re-check results against the brute-force oracles where size permits.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph document as a JSJ graph (or a matrix document as a
    /// well-formed refinement).
    Validate { input: PathBuf },
    /// Print the degree partition and degree refinement.
    Refine { input: PathBuf },
    /// Print the graph of blocks and the augmented graph of blocks.
    Blocks { input: PathBuf },
    /// Check conditions (M1) and (M2) and print witnesses on failure.
    Check { input: PathBuf },
    /// Classify quasi-isometry to a torsion-generated group; on YES write
    /// the witness JSJ tree to --out.
    Tree {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two JSJ graphs are quasi-isometric.
    Qi { a: PathBuf, b: PathBuf },
    /// Compare the commensurability invariants of two decorated graphs.
    Comm { a: PathBuf, b: PathBuf },
    /// Compute the matching Euler characteristic vector and layer trace.
    Matching { input: PathBuf },
    /// Replace one surface by a genus-g surface with the same boundary count
    /// and write the modified document to --out.
    Family {
        input: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the graph as DOT to --out.
    Dot {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failure carrying its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Parse { .. } | DocError::Semantic(_) => Failure::new(2, e.to_string()),
            DocError::Model(m) => m.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => 6,
            Error::Internal(_) => 70,
            Error::NoMatching { .. } => 1,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("jsjtool: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// One loaded input document.
enum Input {
    Graph {
        doc: GraphDoc,
        graph: BipartiteMultigraph,
    },
    Matrix {
        refinement: DegreeRefinement,
        name: String,
    },
}

impl Input {
    fn name(&self) -> &str {
        match self {
            Input::Graph { doc, .. } => &doc.name,
            Input::Matrix { name, .. } => name,
        }
    }

    /// The graph this input denotes: the graph itself, or the augmented
    /// graph of blocks of a directly supplied matrix.
    fn as_graph(&self) -> Result<BipartiteMultigraph, Failure> {
        match self {
            Input::Graph { graph, .. } => Ok(graph.clone()),
            Input::Matrix { refinement, .. } => Ok(augmented_graph_of_blocks(refinement)?),
        }
    }

    /// The refinement this input denotes: computed for graphs, as given for
    /// matrices.
    fn as_refinement(&self) -> Result<DegreeRefinement, Failure> {
        match self {
            Input::Graph { graph, .. } => Ok(degree_refinement(graph)?),
            Input::Matrix { refinement, .. } => Ok(refinement.clone()),
        }
    }
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
    match parse_document(&text)? {
        Document::Graph(doc) => {
            let graph = doc.to_graph()?;
            Ok(Input::Graph { doc, graph })
        }
        Document::Matrix(doc) => {
            let name = doc.name.clone();
            let refinement = doc.to_refinement()?;
            Ok(Input::Matrix { refinement, name })
        }
    }
}

fn write_out(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::new(70, format!("cannot write {}: {e}", path.display())))
}

/// Collects the text report and its JSON mirror side by side.
struct Report {
    lines: Vec<String>,
    json: serde_json::Map<String, serde_json::Value>,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            json: serde_json::Map::new(),
        }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn set(&mut self, key: &str, value: serde_json::Value) {
        self.json.insert(key.to_string(), value);
    }

    fn print(&self, as_json: bool) {
        if as_json {
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Object(self.json.clone()))
                    .expect("report serializes")
            );
        } else {
            for l in &self.lines {
                println!("{l}");
            }
        }
    }
}

fn fmt_vector(entries: &[Rational]) -> String {
    let cells: Vec<String> = entries.iter().map(format_rational).collect();
    format!("({})", cells.join(","))
}

fn json_vector(entries: &[Rational]) -> serde_json::Value {
    json!(entries.iter().map(format_rational).collect::<Vec<_>>())
}

/// Runs the oracle checks for `--verify`; a mismatch downgrades the whole
/// run to exit code 5.
fn run_verify(
    report: &mut Report,
    graphs: &[&BipartiteMultigraph],
    pmanifolds: &[&PManifold],
) -> Result<(), Failure> {
    use verify::VerifyOutcome;
    let mut notes = Vec::new();
    let mut outcomes = Vec::new();
    for g in graphs {
        outcomes.push(verify::verify_partition(g));
    }
    for p in pmanifolds {
        outcomes.push(verify::verify_matchings(p));
    }
    for outcome in outcomes {
        match outcome {
            VerifyOutcome::Agreed(msg) | VerifyOutcome::Skipped(msg) => {
                report.line(format!("verify: {msg}"));
                notes.push(msg);
            }
            VerifyOutcome::Mismatch(msg) => {
                return Err(Failure::new(5, format!("verify mismatch: {msg}")));
            }
        }
    }
    report.set("verify", json!(notes));
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Validate { input } => cmd_validate(cli, input),
        Command::Refine { input } => cmd_refine(cli, input),
        Command::Blocks { input } => cmd_blocks(cli, input),
        Command::Check { input } => cmd_check(cli, input),
        Command::Tree { input, out } => cmd_tree(cli, input, out.as_deref()),
        Command::Qi { a, b } => cmd_qi(cli, a, b),
        Command::Comm { a, b } => cmd_comm(cli, a, b),
        Command::Matching { input } => cmd_matching(cli, input),
        Command::Family {
            input,
            vertex,
            genus,
            out,
        } => cmd_family(cli, input, vertex, *genus, out),
        Command::Dot { input, out } => cmd_dot(cli, input, out),
    }
}

fn cmd_validate(cli: &Cli, input: &Path) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.set("document", json!(loaded.name()));
    let violations: Vec<String> = match &loaded {
        Input::Graph { graph, .. } => validate_jsj_graph(graph)
            .into_iter()
            .map(|v| v.to_string())
            .collect(),
        // matrix documents are validated for well-formedness at load time
        Input::Matrix { .. } => Vec::new(),
    };
    for v in &violations {
        report.line(format!("VIOLATION: {v}"));
    }
    let valid = violations.is_empty();
    if valid {
        report.line("VALID");
    }
    report.set("valid", json!(valid));
    report.set("violations", json!(violations));
    if cli.verify {
        if let Input::Graph { graph, .. } = &loaded {
            run_verify(&mut report, &[graph], &[])?;
        }
    }
    report.print(cli.json);
    Ok(if valid { 0 } else { 3 })
}

fn cmd_refine(cli: &Cli, input: &Path) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let graph = loaded.as_graph()?;
    let refinement = degree_refinement(&graph)?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.set("document", json!(loaded.name()));
    for line in refinement.to_text().lines() {
        report.line(line);
    }
    let partition = refinement.partition.as_ref().expect("computed refinement");
    let mut blocks_json = Vec::new();
    for (i, block) in partition.blocks.iter().enumerate() {
        report.line(format!(
            "block {}: {}",
            refinement.block_name(i),
            block.members.join(" ")
        ));
        blocks_json.push(json!({
            "name": refinement.block_name(i),
            "kind": block.kind.to_string(),
            "members": block.members,
        }));
    }
    report.set("matrix_text", json!(refinement.to_text()));
    report.set("blocks", json!(blocks_json));
    if cli.verify {
        run_verify(&mut report, &[&graph], &[])?;
    }
    report.print(cli.json);
    Ok(0)
}

fn cmd_blocks(cli: &Cli, input: &Path) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let refinement = loaded.as_refinement()?;
    let gb = graph_of_blocks(&refinement)?;
    let gamma0 = augmented_graph_of_blocks(&refinement)?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.set("document", json!(loaded.name()));
    report.line("graph of blocks:");
    let mut simple_json = Vec::new();
    for (a, b, _) in gb.edges() {
        report.line(format!("{} -- {}", gb.id(a), gb.id(b)));
        simple_json.push(json!([gb.id(a), gb.id(b)]));
    }
    report.line("augmented graph of blocks:");
    let mut multi_json = Vec::new();
    for (a, b, m) in gamma0.edges() {
        report.line(format!("{} -- {} x{m}", gamma0.id(a), gamma0.id(b)));
        multi_json.push(json!([gamma0.id(a), gamma0.id(b), m]));
    }
    report.set("graph_of_blocks", json!(simple_json));
    report.set("augmented_graph_of_blocks", json!(multi_json));
    if cli.verify {
        if let Input::Graph { graph, .. } = &loaded {
            run_verify(&mut report, &[graph], &[])?;
        }
    }
    report.print(cli.json);
    Ok(0)
}

fn m1_line(v: &jsj_core::blocks::M1Verdict) -> String {
    if v.is_tree {
        "M1: PASS".into()
    } else if let Some(cycle) = &v.cycle {
        format!("M1: FAIL cycle {}", cycle.join(" "))
    } else {
        "M1: FAIL disconnected".into()
    }
}

fn m2_line(v: &jsj_core::blocks::M2Verdict) -> String {
    match &v.witness {
        None => "M2: PASS".into(),
        Some(w) => format!(
            "M2: FAIL path {} pair {} {}",
            w.path.join(" "),
            w.offending_i,
            w.offending_j
        ),
    }
}

fn cmd_check(cli: &Cli, input: &Path) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let refinement = loaded.as_refinement()?;
    let m1 = check_m1(&refinement)?;
    let m2 = check_m2(&refinement)?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.set("document", json!(loaded.name()));
    report.line(m1_line(&m1));
    report.line(m2_line(&m2));
    report.set(
        "m1",
        json!({"pass": m1.is_tree, "cycle": m1.cycle, "connected": m1.connected}),
    );
    report.set(
        "m2",
        json!({
            "pass": m2.holds,
            "witness": m2.witness.as_ref().map(|w| json!({
                "path": w.path,
                "pair": [w.offending_i, w.offending_j],
            })),
        }),
    );
    if cli.verify {
        if let Input::Graph { graph, .. } = &loaded {
            run_verify(&mut report, &[graph], &[])?;
        }
    }
    report.print(cli.json);
    Ok(if m1.is_tree && m2.holds { 0 } else { 1 })
}

fn cmd_tree(cli: &Cli, input: &Path, out: Option<&Path>) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let graph = loaded.as_graph()?;
    let verdict = classify_torsion_qi(&graph)?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.set("document", json!(loaded.name()));
    let code = match &verdict {
        TorsionQiVerdict::Yes { tree, trace } => {
            report.line("verdict: YES");
            report.line(format!("splits: {}", trace.len()));
            for s in trace {
                report.line(format!("split: {} {} x{}", s.t, s.f, s.multiplicity));
            }
            report.line(format!("tree vertices: {}", tree.vertex_count()));
            report.set("verdict", json!("YES"));
            report.set(
                "splits",
                json!(trace
                    .iter()
                    .map(|s| json!([s.t, s.f, s.multiplicity]))
                    .collect::<Vec<_>>()),
            );
            report.set("tree_vertices", json!(tree.vertex_count()));
            if let Some(path) = out {
                let name = format!("{} tree", loaded.name());
                let doc = GraphDoc::from_graph(&name, tree, None);
                write_out(path, &doc.to_json())?;
            }
            0
        }
        TorsionQiVerdict::NoM1 { verdict } => {
            report.line("verdict: NO");
            report.line("failed: M1");
            report.line(m1_line(verdict));
            report.set("verdict", json!("NO"));
            report.set("failed", json!("M1"));
            report.set("cycle", json!(verdict.cycle));
            1
        }
        TorsionQiVerdict::NoM2 { witness } => {
            report.line("verdict: NO");
            report.line("failed: M2");
            report.line(format!(
                "M2: FAIL path {} pair {} {}",
                witness.path.join(" "),
                witness.offending_i,
                witness.offending_j
            ));
            report.set("verdict", json!("NO"));
            report.set("failed", json!("M2"));
            report.set("path", json!(witness.path));
            1
        }
    };
    if cli.verify {
        run_verify(&mut report, &[&graph], &[])?;
    }
    report.print(cli.json);
    Ok(code)
}

fn cmd_qi(cli: &Cli, a: &Path, b: &Path) -> Result<u8, Failure> {
    let la = load(a)?;
    let lb = load(b)?;
    let ga = la.as_graph()?;
    let gb = lb.as_graph()?;
    let verdict = is_quasi_isometric(&ga, &gb)?;
    let mut report = Report::new();
    report.line(format!("a: {}", la.name()));
    report.line(format!("b: {}", lb.name()));
    report.set("a", json!(la.name()));
    report.set("b", json!(lb.name()));
    let code = if verdict.equivalent {
        report.line("quasi-isometric: YES");
        let w = verdict
            .witness
            .as_ref()
            .expect("equivalent verdict has a witness");
        let mut cells = Vec::new();
        for (i, &j) in w.map.iter().enumerate() {
            cells.push(format!(
                "{}->{}",
                verdict.refinement_a.block_name(i),
                verdict.refinement_b.block_name(j)
            ));
        }
        report.line(format!("witness: {}", cells.join(" ")));
        report.set("quasi_isometric", json!(true));
        report.set("witness", json!(cells));
        0
    } else {
        report.line("quasi-isometric: NO");
        report.set("quasi_isometric", json!(false));
        1
    };
    if cli.verify {
        run_verify(&mut report, &[&ga, &gb], &[])?;
    }
    report.print(cli.json);
    Ok(code)
}

fn comm_verdict_lines(report: &mut Report, label: &str, verdict: &CommVerdict) {
    match verdict {
        CommVerdict::Obstructed { vector_a, vector_b } => {
            report.line(format!("{label}: OBSTRUCTED"));
            report.line(format!("{label} vector a: {}", fmt_vector(vector_a)));
            report.line(format!("{label} vector b: {}", fmt_vector(vector_b)));
            report.set(
                label,
                json!({
                    "verdict": "OBSTRUCTED",
                    "vector_a": json_vector(vector_a),
                    "vector_b": json_vector(vector_b),
                }),
            );
        }
        CommVerdict::NotObstructed {
            witness,
            vector_a,
            vector_b,
        } => {
            report.line(format!("{label}: NOT_OBSTRUCTED"));
            report.line(format!("{label} witness: K={} K'={}", witness.0, witness.1));
            report.line(format!("{label} vector a: {}", fmt_vector(vector_a)));
            report.line(format!("{label} vector b: {}", fmt_vector(vector_b)));
            report.set(
                label,
                json!({
                    "verdict": "NOT_OBSTRUCTED",
                    "witness": [witness.0.to_string(), witness.1.to_string()],
                    "vector_a": json_vector(vector_a),
                    "vector_b": json_vector(vector_b),
                }),
            );
        }
        CommVerdict::Inapplicable { reason } => {
            report.line(format!("{label}: INAPPLICABLE"));
            report.line(format!("{label} reason: {reason}"));
            report.set(label, json!({"verdict": "INAPPLICABLE", "reason": reason}));
        }
    }
}

fn cmd_comm(cli: &Cli, a: &Path, b: &Path) -> Result<u8, Failure> {
    let la = load(a)?;
    let lb = load(b)?;
    let mut report = Report::new();
    report.line(format!("a: {}", la.name()));
    report.line(format!("b: {}", lb.name()));
    report.set("a", json!(la.name()));
    report.set("b", json!(lb.name()));

    // block comparison needs decorated graph documents
    let block = match (&la, &lb) {
        (Input::Graph { doc: da, graph: ga }, Input::Graph { doc: db, graph: gb }) => {
            match block_obstruction(ga, &da.chi_decoration(), gb, &db.chi_decoration()) {
                Ok(v) => v,
                Err(Error::MissingChi(id)) => CommVerdict::Inapplicable {
                    reason: format!("missing chi for surface vertex `{id}`"),
                },
                Err(e) => return Err(e.into()),
            }
        }
        _ => CommVerdict::Inapplicable {
            reason: "matrix documents carry no Euler characteristics".into(),
        },
    };
    comm_verdict_lines(&mut report, "block", &block);

    // matching comparison needs P-manifolds (integer chi)
    let matching = match (&la, &lb) {
        (Input::Graph { doc: da, .. }, Input::Graph { doc: db, .. }) => {
            match (da.to_pmanifold(), db.to_pmanifold()) {
                (Ok(pa), Ok(pb)) => jsj_core::comm::matching_obstruction(&pa, &pb)?,
                (Err(e), _) | (_, Err(e)) => CommVerdict::Inapplicable {
                    reason: format!("not a P-manifold: {e}"),
                },
            }
        }
        _ => CommVerdict::Inapplicable {
            reason: "matrix documents carry no Euler characteristics".into(),
        },
    };
    comm_verdict_lines(&mut report, "matching", &matching);

    let obstructed = block.is_obstructed() || matching.is_obstructed();
    let any_conclusive = !matches!(block, CommVerdict::Inapplicable { .. })
        || !matches!(matching, CommVerdict::Inapplicable { .. });
    let (verdict, code) = if obstructed {
        ("OBSTRUCTED", 1)
    } else if any_conclusive {
        ("NOT_OBSTRUCTED", 0)
    } else {
        ("INAPPLICABLE", 4)
    };
    report.line(format!("verdict: {verdict}"));
    report.set("verdict", json!(verdict));

    if cli.verify {
        let mut graphs = Vec::new();
        if let Input::Graph { graph, .. } = &la {
            graphs.push(graph);
        }
        if let Input::Graph { graph, .. } = &lb {
            graphs.push(graph);
        }
        let graphs: Vec<&BipartiteMultigraph> = graphs.into_iter().collect();
        run_verify(&mut report, &graphs, &[])?;
    }
    report.print(cli.json);
    Ok(code)
}

fn cmd_matching(cli: &Cli, input: &Path) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let Input::Graph { doc, .. } = &loaded else {
        return Err(Failure::new(
            3,
            "the matching command needs a graph document with chi values",
        ));
    };
    let p = doc.to_pmanifold()?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.set("document", json!(loaded.name()));
    let degree = uniform_curve_degree(&p).ok_or_else(|| {
        Failure::from(Error::Precondition("curve degrees are not uniform".into()))
    })?;
    report.line(format!("degree: {degree}"));
    report.set("degree", json!(degree));

    match matching_vector(&p) {
        Ok((vector, layers)) => {
            let mut layers_json = Vec::new();
            for (ix, layer) in layers.iter().enumerate() {
                report.line(format!(
                    "layer {}: chi {} pieces {}",
                    ix + 1,
                    format_rational(&layer.chi),
                    layer.matching.chosen.join(" ")
                ));
                layers_json.push(json!({
                    "chi": format_rational(&layer.chi),
                    "pieces": layer.matching.chosen,
                }));
            }
            report.line(format!("vector: {}", fmt_vector(&vector.entries)));
            report.set("layers", json!(layers_json));
            report.set("vector", json_vector(&vector.entries));
            if cli.verify {
                run_verify(&mut report, &[p.graph()], &[&p])?;
            }
            report.print(cli.json);
            Ok(0)
        }
        Err(Error::NoMatching { layer }) => {
            report.line(format!("layer {layer}: NO MATCHING"));
            report.set("no_matching_at_layer", json!(layer));
            if cli.verify {
                run_verify(&mut report, &[p.graph()], &[&p])?;
            }
            report.print(cli.json);
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_family(
    cli: &Cli,
    input: &Path,
    vertex: &str,
    genus: u64,
    out: &Path,
) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let Input::Graph { doc, .. } = &loaded else {
        return Err(Failure::new(
            3,
            "the family command needs a graph document with chi values",
        ));
    };
    let p = doc.to_pmanifold()?;
    let replaced = genus_family(&p, vertex, genus)?;
    let out_doc = GraphDoc::from_pmanifold(&doc.name, &replaced);
    write_out(out, &out_doc.to_json())?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.line(format!("vertex: {vertex}"));
    report.line(format!("genus: {genus}"));
    let chi = replaced.chi_of(vertex).expect("vertex exists");
    report.line(format!("chi: {chi}"));
    report.set("document", json!(loaded.name()));
    report.set("vertex", json!(vertex));
    report.set("genus", json!(genus));
    report.set("chi", json!(chi));
    report.print(cli.json);
    Ok(0)
}

fn cmd_dot(cli: &Cli, input: &Path, out: &Path) -> Result<u8, Failure> {
    let loaded = load(input)?;
    let graph = loaded.as_graph()?;
    write_out(out, &dot::export_dot(&graph, loaded.name()))?;
    let mut report = Report::new();
    report.line(format!("document: {}", loaded.name()));
    report.set("document", json!(loaded.name()));
    report.set("vertices", json!(graph.vertex_count()));
    report.print(cli.json);
    Ok(0)
}
