//! End-to-end run: for `n = sk`, build `G_{3n}` and `H_{3n}`, verify every
//! structural fact about their powers, certify `χ(H^{2n}) = 3^{3n-1}`, and
//! certify that the adversarial lists of size `t` admit no colouring, so
//! `χ_l(H^{2n}) >= t + 1`.
//!
//! With a checkpoint directory, each finished stage writes its certificate
//! and the power graphs are stored as graph6; a rerun reuses successful
//! stages and stored powers instead of recomputing them.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::counting::counting_stage;
use super::structure::{chi_certificate, composition_certificate, structure_certificate};
use super::{adversarial_list_size, build_h_capped, h_vertex_count, pow3, CertifyError, HBundle, DEFAULT_VERTEX_CAP};
use crate::cayley::{build_cayley_capped, verify_distance_lemma, verify_power_multipartite};
use crate::certificate::{Certificate, Metadata, Status};
use crate::graph::{export_graph, graph_power, import_graph, Format, Graph};

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub vertex_cap: usize,
    pub checkpoint_dir: Option<PathBuf>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            vertex_cap: DEFAULT_VERTEX_CAP,
            checkpoint_dir: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub cayley_vertices: usize,
    pub cayley_edges: usize,
    pub h_vertices: usize,
    pub h_edges: usize,
    pub power_exponent: usize,
    pub power_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub s: usize,
    pub k: usize,
    pub n: usize,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<String>,
    /// `χ(G^k)`, present once verified.
    pub chi: Option<usize>,
    /// Certified lower bound on `χ_l(G^k)`, present once verified.
    pub chi_l_lower: Option<usize>,
    pub r: usize,
    pub t: usize,
    pub graph_stats: GraphStats,
    pub stages: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub resumed_stages: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl TheoremReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are always serializable")
    }

    /// Copy with all timing metadata removed.
    pub fn without_metadata(&self) -> Self {
        TheoremReport {
            metadata: None,
            stages: self.stages.iter().map(Certificate::without_metadata).collect(),
            ..self.clone()
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Graph power pipeline: s = {}, k = {}\n", self.s, self.k);
        let _ = writeln!(out, "Status: **{}**\n", self.status);
        if let Some(stage) = &self.failed_stage {
            let _ = writeln!(out, "Failed stage: `{stage}`\n");
        }
        let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(out, "| quantity | value |\n|---|---|");
        let _ = writeln!(out, "| n = sk | {} |", self.n);
        let _ = writeln!(out, "| vertices of H | {} |", self.graph_stats.h_vertices);
        let _ = writeln!(out, "| power exponent 2n | {} |", self.graph_stats.power_exponent);
        let _ = writeln!(out, "| edges of the power | {} |", self.graph_stats.power_edges);
        let _ = writeln!(out, "| chromatic number | {} |", show(self.chi));
        let _ = writeln!(out, "| list chromatic number at least | {} |", show(self.chi_l_lower));
        let _ = writeln!(out, "| blocks r | {} |", self.r);
        let _ = writeln!(out, "| list size t | {} |", self.t);
        let _ = writeln!(out, "\n## Stages\n\n| stage | status | ms |\n|---|---|---|");
        for c in &self.stages {
            let ms = c
                .metadata
                .as_ref()
                .map_or("-".to_string(), |m| m.elapsed_ms.to_string());
            let resumed = if self.resumed_stages.contains(&c.claim) {
                " (resumed)"
            } else {
                ""
            };
            let _ = writeln!(out, "| {}{resumed} | {} | {ms} |", c.claim, c.status);
        }
        out
    }
}

struct Checkpoint {
    dir: Option<PathBuf>,
    prefix: String,
}

impl Checkpoint {
    fn path(&self, name: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}-{name}", self.prefix)))
    }

    fn error(path: &Path, e: impl ToString) -> CertifyError {
        CertifyError::Checkpoint {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    /// A stored successful certificate for `stage`, if any.
    fn load_stage(&self, stage: &str) -> Result<Option<Certificate>, CertifyError> {
        let Some(path) = self.path(&format!("{stage}.json")) else {
            return Ok(None);
        };
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(|e| Self::error(&path, e))?;
        let cert: Certificate = serde_json::from_str(&text).map_err(|e| Self::error(&path, e))?;
        Ok((cert.claim == stage && cert.is_success()).then_some(cert))
    }

    fn store_stage(&self, cert: &Certificate) -> Result<(), CertifyError> {
        match self.path(&format!("{}.json", cert.claim)) {
            Some(path) => write_atomic(&path, cert.to_json().as_bytes()),
            None => Ok(()),
        }
    }

    /// `g^k`, read from the checkpoint when stored and computed otherwise.
    fn power(&self, g: &Graph, k: usize) -> Result<Graph, CertifyError> {
        let Some(path) = self.path(&format!("power-{k}.g6")) else {
            return Ok(graph_power(g, k)?);
        };
        if path.exists() {
            let bytes = fs::read(&path).map_err(|e| Self::error(&path, e))?;
            let stored = import_graph(&bytes, Format::Graph6).map_err(|e| Self::error(&path, e))?;
            if stored.vertex_count() == g.vertex_count() {
                return Ok(stored);
            }
        }
        let p = graph_power(g, k)?;
        write_atomic(&path, &export_graph(&p, Format::Graph6)?)?;
        Ok(p)
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CertifyError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Checkpoint::error(parent, e))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| Checkpoint::error(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Checkpoint::error(path, e))
}

/// Runs every stage for `n = sk` in order, stopping at the first failure.
///
/// `k = 1` is rejected: the construction needs `k >= 2`.
pub fn run_theorem_pipeline(s: usize, k: usize, options: &PipelineOptions) -> Result<TheoremReport, CertifyError> {
    let start = Instant::now();
    if s == 0 {
        return Err(CertifyError::InvalidArgument("s must be positive".into()));
    }
    if k < 2 {
        return Err(CertifyError::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    let n = s
        .checked_mul(k)
        .ok_or_else(|| CertifyError::InvalidArgument("s * k overflows".into()))?;
    let vertices = h_vertex_count(n, options.vertex_cap)?;
    let r = pow3(3 * n - 2).expect("bounded by the vertex count");
    let t = adversarial_list_size(n).expect("bounded by the vertex count");
    let ckpt = Checkpoint {
        dir: options.checkpoint_dir.clone(),
        prefix: format!("h{}", 3 * n),
    };
    let mut report = TheoremReport {
        s,
        k,
        n,
        status: Status::Verified,
        failed_stage: None,
        chi: None,
        chi_l_lower: None,
        r,
        t,
        graph_stats: GraphStats {
            h_vertices: vertices,
            power_exponent: 2 * n,
            ..GraphStats::default()
        },
        stages: Vec::new(),
        resumed_stages: Vec::new(),
        metadata: None,
    };

    let stage_start = Instant::now();
    let cayley = build_cayley_capped(3 * n, 3 * n)?;
    report.graph_stats.cayley_vertices = cayley.graph().vertex_count();
    report.graph_stats.cayley_edges = cayley.graph().edge_count();
    let mut built = Certificate::new("cayley_graph").param("m", 3 * n);
    built.stat("vertices", cayley.graph().vertex_count());
    built.stat("edges", cayley.graph().edge_count());
    built.stat("degree", cayley.graph().is_regular().unwrap_or(0));
    report.stages.push(built.timed(stage_start));

    let ok = run_stage(&mut report, &ckpt, "distance_lemma", || {
        Ok(verify_distance_lemma(&cayley)?)
    })? && run_stage(&mut report, &ckpt, "power_multipartite", || {
        Ok(verify_power_multipartite(&cayley)?)
    })?;
    if !ok {
        return Ok(finish(report, start));
    }

    let stage_start = Instant::now();
    let h: HBundle = build_h_capped(n, options.vertex_cap)?;
    report.graph_stats.h_edges = h.graph().edge_count();
    let mut built = Certificate::new("h_graph").param("n", n);
    built.stat("vertices", h.graph().vertex_count());
    built.stat("edges", h.graph().edge_count());
    built.stat("degree", h.graph().is_regular().unwrap_or(0));
    report.stages.push(built.timed(stage_start));

    let needs_power = ["structure_theorem", "power_composition", "chromatic_number"]
        .iter()
        .any(|stage| !matches!(ckpt.load_stage(stage), Ok(Some(_))));
    let power = if needs_power {
        let p = ckpt.power(h.graph(), 2 * n)?;
        report.graph_stats.power_edges = p.edge_count();
        Some(p)
    } else {
        None
    };
    let power_ref = || power.as_ref().expect("power computed when any stage needs it");

    let ok = run_stage(&mut report, &ckpt, "structure_theorem", || {
        structure_certificate(&h, power_ref())
    })? && run_stage(&mut report, &ckpt, "power_composition", || {
        composition_certificate(&h, s, k, power_ref())
    })? && run_stage(&mut report, &ckpt, "chromatic_number", || {
        chi_certificate(&h, power_ref())
    })?;
    if !ok {
        return Ok(finish(report, start));
    }
    if report.graph_stats.power_edges == 0 {
        if let Some(e) = report.stages.iter().find(|c| c.claim == "structure_theorem") {
            report.graph_stats.power_edges = e.stats.get("power_edges").and_then(|v| v.as_u64()).unwrap_or(0) as usize;
        }
    }

    let stage_start = Instant::now();
    let mut lists = Certificate::new("adversarial_lists").param("r", r).param("t", t);
    lists.stat("palette", 3 * t / 2);
    lists.stat("vertices", 9 * r);
    report.stages.push(lists.timed(stage_start));

    let ok = run_stage(&mut report, &ckpt, "counting_argument", || Ok(counting_stage(r, t)?.1))?;
    if ok {
        report.chi = Some(pow3(3 * n - 1).expect("bounded by the vertex count"));
        report.chi_l_lower = Some(t + 1);
    }
    Ok(finish(report, start))
}

fn run_stage<F>(report: &mut TheoremReport, ckpt: &Checkpoint, stage: &str, f: F) -> Result<bool, CertifyError>
where
    F: FnOnce() -> Result<Certificate, CertifyError>,
{
    let cert = match ckpt.load_stage(stage)? {
        Some(cert) => {
            report.resumed_stages.push(stage.to_string());
            cert
        }
        None => {
            let cert = f()?;
            if cert.is_success() {
                ckpt.store_stage(&cert)?;
            }
            cert
        }
    };
    let ok = cert.is_success();
    report.stages.push(cert);
    if !ok {
        report.status = Status::Failed;
        report.failed_stage = Some(stage.to_string());
    }
    Ok(ok)
}

fn finish(mut report: TheoremReport, start: Instant) -> TheoremReport {
    report.metadata = Some(Metadata {
        elapsed_ms: start.elapsed().as_millis(),
    });
    report
}
