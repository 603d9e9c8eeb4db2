use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use chroma_core::cayley::{build_cayley_capped, verify_distance_lemma, verify_power_multipartite, CayleyError};
use chroma_core::certify::recheck::{recheck, RecheckOutcome};
use chroma_core::certify::{
    build_adversarial_lists, build_h_capped, chi_certificate, composition_certificate, run_theorem_pipeline,
    structure_certificate, verify_counting_argument, verify_lexico_proposition, CertifyError, PipelineOptions,
    TheoremReport,
};
use chroma_core::coloring::{
    chromatic_number, find_bad_assignment, list_feasible, min_distinct_coloring, Budget, ColoringError, ListAssignment,
};
use chroma_core::graph::{
    cartesian_product, detect_format, export_graph, graph_power, import_graph, lexicographic_product, make_complete,
    make_complete_multipartite, Format,
};
use chroma_core::{Certificate, Graph, GraphError};

use crate::args::{Cli, Color, Command, Construct, GlobalOpts, OutFormat, ProductKind, Verify};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_INCONCLUSIVE: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;

/// Directory for pipeline checkpoints.
const CACHE_ENV: &str = "CHROMA_POWER_CACHE";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Capacity(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Capacity(_) => EXIT_CAPACITY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Capacity(m) => f.write_str(m),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Capacity { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::Capacity { .. } => CliError::Capacity(e.to_string()),
            CayleyError::Graph(g) => g.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::TooLarge { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Capacity { .. } => CliError::Capacity(e.to_string()),
            CertifyError::Graph(g) => g.into(),
            CertifyError::Cayley(c) => c.into(),
            CertifyError::Coloring(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult = Result<u8, CliError>;

pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Construct(c) => construct(&cli.global, c),
        Command::Verify(v) => verify(&cli.global, v),
        Command::Color(c) => color(&cli.global, c),
        Command::Recheck { certificate } => recheck_file(&cli.global, certificate),
    }
}

fn emit(global: &GlobalOpts, bytes: &[u8]) -> Result<(), CliError> {
    match &global.output {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Usage(format!("stdout: {e}")))
        }
    }
}

/// Diagnostics go to stdout when the result went to a file, else to stderr.
fn report(global: &GlobalOpts, line: &str) {
    if global.output.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn check_cap(global: &GlobalOpts, what: &str, vertices: Option<usize>) -> Result<usize, CliError> {
    match vertices {
        Some(v) if v <= global.max_vertices => Ok(v),
        Some(v) => Err(CliError::Capacity(format!(
            "{what} has {v} vertices, above --max-vertices {}",
            global.max_vertices
        ))),
        None => Err(CliError::Capacity(format!("{what} is too large to represent"))),
    }
}

fn pow3(e: usize) -> Option<usize> {
    3usize.checked_pow(u32::try_from(e).ok()?)
}

fn positive(name: &str, v: usize) -> Result<usize, CliError> {
    if v == 0 {
        Err(CliError::Usage(format!("--{name} must be positive")))
    } else {
        Ok(v)
    }
}

fn budget(global: &GlobalOpts) -> Result<Budget, CliError> {
    match global.time_budget {
        None => Ok(Budget::unlimited()),
        Some(s) => Duration::try_from_secs_f64(s)
            .map(Budget::with_time)
            .map_err(|_| CliError::Usage(format!("invalid --time-budget {s}"))),
    }
}

fn read_graph(global: &GlobalOpts, path: &Path) -> Result<Graph, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let g =
        import_graph(&bytes, detect_format(&bytes)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    check_cap(global, &path.display().to_string(), Some(g.vertex_count()))?;
    Ok(g)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn construct(global: &GlobalOpts, c: &Construct) -> CliResult {
    let format = match global.format.unwrap_or(OutFormat::Graph6) {
        OutFormat::Graph6 => Format::Graph6,
        OutFormat::Dimacs => Format::Dimacs,
        OutFormat::Json => Format::Json,
        OutFormat::Markdown => return Err(CliError::Usage("graphs cannot be written as markdown".into())),
    };
    let g = match c {
        Construct::Cayley { m } => {
            if *m < 2 {
                return Err(CliError::Usage("--m must be at least 2".into()));
            }
            check_cap(global, "G_m", pow3(m - 1))?;
            build_cayley_capped(*m, *m)?.into_graph()
        }
        Construct::H { n } => {
            positive("n", *n)?;
            check_cap(global, "H_3n", pow3(3 * n))?;
            build_h_capped(*n, global.max_vertices)?.graph().clone()
        }
        Construct::Power { k, input } => {
            positive("k", *k)?;
            graph_power(&read_graph(global, input)?, *k)?
        }
        Construct::Product { kind, left, right } => {
            let (l, r) = (read_graph(global, left)?, read_graph(global, right)?);
            check_cap(global, "product", l.vertex_count().checked_mul(r.vertex_count()))?;
            match kind {
                ProductKind::Cartesian => cartesian_product(&l, &r),
                ProductKind::Lexicographic => lexicographic_product(&l, &r),
            }
        }
        Construct::Multipartite { part, parts } => {
            positive("part", *part)?;
            positive("parts", *parts)?;
            check_cap(global, "multipartite graph", part.checked_mul(*parts))?;
            make_complete_multipartite(*part, *parts)?
        }
        Construct::Complete { n } => {
            positive("n", *n)?;
            check_cap(global, "complete graph", Some(*n))?;
            make_complete(*n)?
        }
    };
    emit(global, &export_graph(&g, format)?)?;
    report(
        global,
        &format!("vertices: {}, edges: {}", g.vertex_count(), g.edge_count()),
    );
    Ok(EXIT_OK)
}

fn write_certificate(global: &GlobalOpts, cert: &Certificate) -> CliResult {
    let text = match global.format.unwrap_or(OutFormat::Json) {
        OutFormat::Json => cert.to_json() + "\n",
        OutFormat::Markdown => cert.to_markdown(),
        other => return Err(CliError::Usage(format!("certificates cannot be written as {other:?}"))),
    };
    emit(global, text.as_bytes())?;
    report(global, &format!("{}: {}", cert.claim, cert.status));
    Ok(cert.status.exit_code() as u8)
}

fn write_report(global: &GlobalOpts, r: &TheoremReport) -> CliResult {
    let text = match global.format.unwrap_or(OutFormat::Json) {
        OutFormat::Json => r.to_json() + "\n",
        OutFormat::Markdown => r.to_markdown(),
        other => return Err(CliError::Usage(format!("reports cannot be written as {other:?}"))),
    };
    emit(global, text.as_bytes())?;
    let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    report(
        global,
        &format!(
            "theorem s={} k={}: {} (chi = {}, chi_l >= {})",
            r.s,
            r.k,
            r.status,
            show(r.chi),
            show(r.chi_l_lower)
        ),
    );
    Ok(r.status.exit_code() as u8)
}

fn write_value(global: &GlobalOpts, v: &Value) -> Result<(), CliError> {
    match global.format.unwrap_or(OutFormat::Json) {
        OutFormat::Json => {
            let text = serde_json::to_string_pretty(v).expect("values serialize") + "\n";
            emit(global, text.as_bytes())
        }
        other => Err(CliError::Usage(format!(
            "solver results cannot be written as {other:?}"
        ))),
    }
}

fn verify(global: &GlobalOpts, v: &Verify) -> CliResult {
    match v {
        Verify::DistanceLemma { n } | Verify::PowerMultipartite { n } => {
            positive("n", *n)?;
            check_cap(global, "G_3n", pow3(3 * n - 1))?;
            let bundle = build_cayley_capped(3 * n, 3 * n)?;
            let cert = if matches!(v, Verify::DistanceLemma { .. }) {
                verify_distance_lemma(&bundle)?
            } else {
                verify_power_multipartite(&bundle)?
            };
            write_certificate(global, &cert)
        }
        Verify::Structure { n } | Verify::ChiH { n } => {
            positive("n", *n)?;
            let h = build_h_capped(*n, global.max_vertices)?;
            let power = graph_power(h.graph(), 2 * n)?;
            let cert = if matches!(v, Verify::Structure { .. }) {
                structure_certificate(&h, &power)?
            } else {
                chi_certificate(&h, &power)?
            };
            write_certificate(global, &cert)
        }
        Verify::Composition { s, k } => {
            positive("s", *s)?;
            positive("k", *k)?;
            let n = s
                .checked_mul(*k)
                .ok_or_else(|| CliError::Capacity("s * k overflows".into()))?;
            let h = build_h_capped(n, global.max_vertices)?;
            let direct = graph_power(h.graph(), 2 * n)?;
            write_certificate(global, &composition_certificate(&h, *s, *k, &direct)?)
        }
        Verify::Counting { r, t } => {
            positive("r", *r)?;
            check_cap(global, "adversarial instance", r.checked_mul(9))?;
            let start = Instant::now();
            let inst = build_adversarial_lists(*r, *t)?;
            let cert = verify_counting_argument(&inst)?.to_certificate().timed(start);
            write_certificate(global, &cert)
        }
        Verify::Theorem { s, k } => {
            let options = PipelineOptions {
                vertex_cap: global.max_vertices,
                checkpoint_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            };
            let report = run_theorem_pipeline(*s, *k, &options)?;
            write_report(global, &report)
        }
        Verify::Lexico { g, h } => {
            let (g, h) = (read_graph(global, g)?, read_graph(global, h)?);
            check_cap(global, "G[H]", g.vertex_count().checked_mul(h.vertex_count()))?;
            write_certificate(global, &verify_lexico_proposition(&g, &h, budget(global)?)?)
        }
    }
}

fn color(global: &GlobalOpts, c: &Color) -> CliResult {
    match c {
        Color::Chromatic { graph } => {
            let g = read_graph(global, graph)?;
            match chromatic_number(&g, budget(global)?) {
                Ok(r) => {
                    write_value(
                        global,
                        &json!({ "chi": r.chi, "coloring": r.coloring, "clique": r.clique }),
                    )?;
                    report(global, &format!("chi = {}", r.chi));
                    Ok(EXIT_OK)
                }
                Err(ColoringError::BudgetExhausted { lower, upper }) => {
                    write_value(
                        global,
                        &json!({ "status": "BUDGET_EXHAUSTED", "lower": lower, "upper": upper }),
                    )?;
                    report(global, &format!("budget exhausted; chi in [{lower}, {upper}]"));
                    Ok(EXIT_BUDGET)
                }
                Err(e) => Err(e.into()),
            }
        }
        Color::ListFeasible { graph, lists } => {
            let g = read_graph(global, graph)?;
            let l: ListAssignment = read_json(lists)?;
            let out = list_feasible(&g, &l)?;
            write_value(
                global,
                &json!({
                    "feasible": out.is_feasible(),
                    "coloring": out.coloring,
                    "empty_list_vertex": out.empty_list_vertex,
                    "nodes": out.nodes,
                }),
            )?;
            report(global, if out.is_feasible() { "feasible" } else { "infeasible" });
            Ok(EXIT_OK)
        }
        Color::MinDistinct { graph, lists } => {
            let g = read_graph(global, graph)?;
            let l: ListAssignment = read_json(lists)?;
            match min_distinct_coloring(&g, &l) {
                Ok(c) => {
                    let k = c.distinct_colors();
                    write_value(global, &json!({ "min_distinct_colors": k, "coloring": c }))?;
                    report(global, &format!("min distinct colours = {k}"));
                    Ok(EXIT_OK)
                }
                Err(ColoringError::Infeasible) => {
                    write_value(global, &json!({ "feasible": false }))?;
                    report(global, "no proper colouring respects the lists");
                    Ok(EXIT_FAILED)
                }
                Err(e) => Err(e.into()),
            }
        }
        Color::BadAssignment { graph, t, universe } => {
            let g = read_graph(global, graph)?;
            let universe = universe.unwrap_or(t.saturating_mul(g.vertex_count().max(1)));
            match find_bad_assignment(&g, *t, universe, budget(global)?) {
                Ok(v) => {
                    write_value(global, &serde_json::to_value(&v).expect("verdicts serialize"))?;
                    report(global, &format!("{:?}", v.bound_type));
                    Ok(EXIT_OK)
                }
                Err(ColoringError::Inconclusive(stats)) => {
                    write_value(global, &json!({ "status": "BUDGET_EXHAUSTED", "search_stats": stats }))?;
                    report(global, "budget exhausted before the search finished");
                    Ok(EXIT_BUDGET)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn outcome_json(claim: &str, o: &RecheckOutcome) -> Value {
    let (outcome, detail) = match o {
        RecheckOutcome::Confirmed => ("CONFIRMED", None),
        RecheckOutcome::Refuted(m) => ("REFUTED", Some(m)),
        RecheckOutcome::Unsupported(m) => ("UNSUPPORTED", Some(m)),
    };
    json!({ "claim": claim, "outcome": outcome, "detail": detail })
}

fn recheck_file(global: &GlobalOpts, path: &PathBuf) -> CliResult {
    let value: Value = read_json(path)?;
    let certs: Vec<Certificate> = if value.get("stages").is_some() {
        let report: TheoremReport =
            serde_json::from_value(value).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        report.stages
    } else {
        vec![serde_json::from_value(value).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?]
    };
    let mut results = Vec::new();
    let (mut refuted, mut confirmed) = (false, 0);
    for cert in &certs {
        let o = recheck(cert)?;
        refuted |= matches!(o, RecheckOutcome::Refuted(_));
        confirmed += usize::from(o.is_confirmed());
        results.push(outcome_json(&cert.claim, &o));
    }
    write_value(global, &Value::Array(results))?;
    report(global, &format!("{confirmed} of {} claims confirmed", certs.len()));
    Ok(if refuted {
        EXIT_FAILED
    } else if confirmed == 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}
