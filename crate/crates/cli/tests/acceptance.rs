//! Acceptance suite: one PASS/FAIL line per criterion, each with a wall-clock
//! limit. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use chroma_core::cayley::{build_cayley, verify_power_multipartite};
use chroma_core::certify::{
    block_graph, build_adversarial_lists, run_theorem_pipeline, verify_chi_of_h, verify_counting_argument,
    verify_lexico_proposition, verify_power_composition, verify_structure_theorem, PipelineOptions,
};
use chroma_core::coloring::{find_bad_assignment, list_feasible, min_distinct_colors, BoundType, Budget};
use chroma_core::graph::{cartesian_product, make_complete, make_complete_multipartite, make_cycle};
use chroma_core::{Certificate, Graph, Status};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn stat(cert: &Certificate, key: &str) -> Option<u64> {
    cert.stats.get(key).and_then(Value::as_u64)
}

fn verified(cert: &Certificate) -> Result<(), String> {
    ensure(
        cert.status == Status::Verified,
        format!("{} is {}", cert.claim, cert.status),
    )
}

fn k3_box_k3() -> Graph {
    let k3 = make_complete(3).unwrap();
    cartesian_product(&k3, &k3)
}

fn distance_lemma() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_chroma"))
        .args(["verify", "distance-lemma", "--n", "2"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.code() == Some(0),
        format!("exit code {:?}", out.status.code()),
    )?;
    let cert: Certificate = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    verified(&cert)?;
    ensure(
        stat(&cert, "vertices_checked") == Some(243),
        "not all 243 vertices checked",
    )?;
    ensure(stat(&cert, "max_distance") == Some(4), "max distance differs from 4")?;
    Ok("243 vertices, max distance 4".into())
}

fn power_multipartite() -> Outcome {
    let cert = verify_power_multipartite(&build_cayley(6).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    verified(&cert)?;
    ensure(stat(&cert, "pairs_compared") == Some(243 * 242 / 2), "pair count")?;
    ensure(stat(&cert, "partite_sets") == Some(81), "partite set count")?;
    Ok("G6^3 = K_{3*81}, 29403 pairs compared".into())
}

fn structure() -> Outcome {
    let cert = verify_structure_theorem(2).map_err(|e| e.to_string())?;
    verified(&cert)?;
    ensure(stat(&cert, "blocks_checked") == Some(81), "block count")?;
    ensure(stat(&cert, "non_edges") == Some(81 * 18), "non-edge count")?;
    Ok("H6^4 = K81[K3 x K3], 81 blocks".into())
}

fn chromatic() -> Outcome {
    let cert = verify_chi_of_h(2).map_err(|e| e.to_string())?;
    verified(&cert)?;
    ensure(stat(&cert, "chi") == Some(243), "chi differs from 243")?;
    ensure(stat(&cert, "clique_size") == Some(243), "clique size")?;
    ensure(stat(&cert, "colors_used") == Some(243), "colours used")?;
    Ok("chi = 243".into())
}

fn counting_full_scale() -> Outcome {
    let cert = verify_counting_argument(&build_adversarial_lists(81, 268).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(
        cert.conclusion == Status::InfeasibleCertified,
        format!("conclusion {}", cert.conclusion),
    )?;
    ensure(
        (cert.pigeonhole.needed, cert.pigeonhole.available) == (405, 402),
        format!("pigeonhole {} vs {}", cert.pigeonhole.needed, cert.pigeonhole.available),
    )?;
    // (10/9) * 3^5 - 1
    let bound = 10 * 243 / 9 - 1;
    ensure(
        cert.chi_l_lower_bound() == Some(bound),
        format!("bound {:?}", cert.chi_l_lower_bound()),
    )?;
    Ok(format!("405 > 402, chi_l >= {bound}"))
}

fn counting_cross_check() -> Outcome {
    let inst = build_adversarial_lists(2, 6).map_err(|e| e.to_string())?;
    let cert = verify_counting_argument(&inst).map_err(|e| e.to_string())?;
    ensure(
        cert.conclusion == Status::InfeasibleCertified,
        format!("chain says {}", cert.conclusion),
    )?;
    let direct = list_feasible(&inst.graph, &inst.lists).map_err(|e| e.to_string())?;
    ensure(!direct.is_feasible(), "direct search found a colouring")?;
    Ok(format!("chain and direct search agree ({} nodes)", direct.nodes))
}

fn block_tightness() -> Outcome {
    let block = block_graph();
    for t in [4, 6, 8, 268] {
        let inst = build_adversarial_lists(1, t).map_err(|e| e.to_string())?;
        let k = min_distinct_colors(&block, &inst.lists).map_err(|e| e.to_string())?;
        ensure(k == 5, format!("t = {t}: {k} colours"))?;
    }
    Ok("5 colours for t in {4, 6, 8, 268}".into())
}

fn composition() -> Outcome {
    let cert = verify_power_composition(1, 2).map_err(|e| e.to_string())?;
    verified(&cert)?;
    Ok(format!(
        "(H6^2)^2 = H6^4, {} edges",
        stat(&cert, "direct_edges").unwrap_or(0)
    ))
}

fn lexico() -> Outcome {
    let (k2, c5, k3) = (
        make_complete(2).unwrap(),
        make_cycle(5).unwrap(),
        make_complete(3).unwrap(),
    );
    let pairs = [
        ("K2/C5", &k2, &c5, Some(6)),
        ("C5/K2", &c5, &k2, None),
        ("K3/K3xK3", &k3, &k3_box_k3(), Some(9)),
    ];
    let mut found = Vec::new();
    for (name, g, h, expect) in pairs {
        let cert = verify_lexico_proposition(g, h, Budget::unlimited()).map_err(|e| e.to_string())?;
        verified(&cert).map_err(|e| format!("{name}: {e}"))?;
        let chi = stat(&cert, "chi_g_h");
        ensure(chi == stat(&cert, "chi_g_kl"), format!("{name}: sides differ"))?;
        if let Some(e) = expect {
            ensure(chi == Some(e), format!("{name}: chi {chi:?}, expected {e}"))?;
        }
        found.push(format!("{name} {}", chi.unwrap_or(0)));
    }
    Ok(found.join(", "))
}

fn choosability() -> Outcome {
    let c4 = make_cycle(4).unwrap();
    let v = find_bad_assignment(&c4, 2, 8, Budget::unlimited()).map_err(|e| e.to_string())?;
    ensure(
        v.bound_type == BoundType::UpperBoundExhaustive,
        "C4 not certified 2-choosable",
    )?;

    let cases = [
        ("K33", make_complete_multipartite(3, 2).unwrap(), 2),
        ("K_{3*3}", make_complete_multipartite(3, 3).unwrap(), 3),
    ];
    for (name, g, t) in cases {
        let v = find_bad_assignment(&g, t, t * g.vertex_count(), Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure(
            v.bound_type == BoundType::LowerBoundWitness,
            format!("{name}: no bad assignment"),
        )?;
        let w = v.witness.ok_or(format!("{name}: witness missing"))?;
        ensure(w.min_list_len() == Some(t), format!("{name}: lists shorter than {t}"))?;
        ensure(
            !list_feasible(&g, &w).map_err(|e| e.to_string())?.is_feasible(),
            format!("{name}: witness is colourable"),
        )?;
    }
    Ok("C4 2-choosable; K33 not 2-choosable; K_{3*3} not 3-choosable".into())
}

fn pipeline_s1_k3() -> Outcome {
    let report = run_theorem_pipeline(1, 3, &PipelineOptions::default()).map_err(|e| e.to_string())?;
    ensure(
        report.status == Status::Verified,
        format!("status {} at {:?}", report.status, report.failed_stage),
    )?;
    ensure(report.graph_stats.h_vertices == 19683, "H9 size")?;
    ensure(report.chi == Some(6561), format!("chi {:?}", report.chi))?;
    // (10/9) * 6561 - 1
    let bound = 10 * 6561 / 9 - 1;
    ensure(
        report.chi_l_lower == Some(bound),
        format!("chi_l bound {:?}", report.chi_l_lower),
    )?;
    Ok(format!("chi = 6561, chi_l >= {bound}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("distance lemma n=2 (cli)", Duration::from_secs(1), distance_lemma),
        ("G6^3 = K_{3*81}", Duration::from_secs(5), power_multipartite),
        ("structure theorem n=2", Duration::from_secs(60), structure),
        ("chi(H6^4) = 243", Duration::from_secs(10), chromatic),
        ("counting r=81 t=268", Duration::from_secs(5), counting_full_scale),
        (
            "counting cross-check r=2 t=6",
            Duration::from_secs(60),
            counting_cross_check,
        ),
        ("block tightness", Duration::from_secs(1), block_tightness),
        ("(H6^2)^2 = H6^4", Duration::from_secs(90), composition),
        ("lexicographic chromatic pairs", Duration::from_secs(30), lexico),
        ("choosability oracle", Duration::from_secs(600), choosability),
        ("pipeline s=1 k=3", Duration::from_secs(1800), pipeline_s1_k3),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time limit")),
            Err(e) => ("FAIL", e),
        };
        failed += usize::from(verdict == "FAIL");
        println!(
            "{verdict} [{:>2}] {name}: {detail} ({:.2} s, limit {} s)",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
