//! Subcommand bodies. Each returns a [`CommandResult`] whose payload is a
//! deterministic JSON value; input problems surface as errors (exit 2).

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use f33_core::constructions::{
    check_identities, count_b, count_m, make_bipartite, make_complete, make_f33, make_m1, make_m2,
    make_m3_fourpart,
};
use f33_core::lemma::{max_feasible_edges, sample_feasible, verify_feasible, LemmaSearchConfig};
use f33_core::pattern::{find_t_triple, SearchMode};
use f33_core::turan::{
    audit_certificate, enumerate_extremal, exact_turan, theorem_value, TuranConfig,
};
use f33_core::{build_link, contains_f33, Multigraph, ThreeGraph};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Incomplete,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Incomplete => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Incomplete => "incomplete",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub schema: u32,
    pub command: &'static str,
    pub status: Status,
    pub payload: Value,
    /// Reported on stderr only, so stdout stays reproducible.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

fn result(command: &'static str, status: Status, payload: Value) -> Result<CommandResult> {
    Ok(CommandResult {
        schema: SCHEMA,
        command,
        status,
        payload,
        elapsed_ms: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Object {
    F33,
    Bipartite,
    Complete,
    M1,
    M2,
    M3,
}

enum Built {
    Graph(ThreeGraph),
    Multi(Multigraph),
}

fn build(object: Object, n: Option<usize>) -> Result<Built> {
    let need_n = || n.context("--n is required for this object");
    Ok(match object {
        Object::F33 => {
            if n.is_some_and(|n| n != 6) {
                bail!("F(3,3) has exactly 6 vertices");
            }
            Built::Graph(make_f33())
        }
        Object::Bipartite => Built::Graph(make_bipartite(need_n()?)),
        Object::Complete => Built::Graph(make_complete(need_n()?)),
        Object::M1 => Built::Multi(make_m1(need_n()?)),
        Object::M2 => Built::Multi(make_m2(need_n()?)),
        Object::M3 => Built::Multi(make_m3_fourpart(need_n()?)),
    })
}

pub fn construct_text(object: Object, n: Option<usize>) -> Result<String> {
    Ok(match build(object, n)? {
        Built::Graph(g) => g.to_string(),
        Built::Multi(m) => m.to_string(),
    })
}

pub fn construct(object: Object, n: Option<usize>) -> Result<CommandResult> {
    let name = format!("{object:?}").to_lowercase();
    let payload = match build(object, n)? {
        Built::Graph(g) => json!({
            "object": name,
            "n": g.n(),
            "edges": g.edge_count(),
            "format": "edge-list",
            "text": g.to_string(),
        }),
        Built::Multi(m) => {
            let triple = m
                .max_triple_sum()
                .ok()
                .map(|(s, t)| json!({"value": s, "triple": t}));
            json!({
                "object": name,
                "n": m.n(),
                "e": m.total(),
                "m_n": count_m(m.n() as u32) as i64,
                "max_triple_sum": triple,
                "format": "multigraph",
                "text": m.to_string(),
            })
        }
    };
    result("construct", Status::Pass, payload)
}

fn read_graph(path: &Path) -> Result<ThreeGraph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse::<ThreeGraph>()
        .with_context(|| format!("parsing {}", path.display()))
}

pub fn check_f33_free(input: &Path) -> Result<CommandResult> {
    let g = read_graph(input)?;
    let witness = contains_f33(&g, SearchMode::Deterministic);
    let payload = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "f33_free": witness.is_none(),
        "witness": witness.map(|w| json!({
            "abc": &w.map[..3],
            "xyz": &w.map[3..],
        })),
    });
    result(
        "check",
        Status::from_bool(payload["f33_free"] == true),
        payload,
    )
}

pub fn link(input: &Path, set: &[usize], colors: usize, threshold: u32) -> Result<CommandResult> {
    let g = read_graph(input)?;
    let c = build_link(&g, set)?;
    let m = c.multigraph();
    let triple = m
        .max_triple_sum()
        .ok()
        .map(|(s, t)| json!({"value": s, "triple": t}));
    let common = c.find_common_color_triangle(colors);
    let j = c.high_multiplicity_graph(threshold);
    let payload = json!({
        "link": c,
        "e": m.total(),
        "max_triple_sum": triple,
        "common_color_triangle": common.as_ref().map(|(t, cols)| json!({
            "triple": t,
            "host_triple": t.map(|x| c.host_vertex(x)),
            "colors": cols,
        })),
        "high_multiplicity": {
            "threshold": threshold,
            "pairs": j.pairs().collect::<Vec<_>>(),
            "clique_number": j.clique_number(),
        },
    });
    result("link", Status::from_bool(common.is_none()), payload)
}

pub fn lemma_max(
    n: usize,
    pair_cap: u32,
    triple_cap: u32,
    node_limit: Option<u64>,
    symmetry: bool,
    threads: usize,
) -> Result<CommandResult> {
    let cfg = LemmaSearchConfig {
        n,
        pair_cap,
        triple_cap,
        symmetry_reduction: symmetry,
        node_limit,
        threads,
    };
    let cert = max_feasible_edges(&cfg)?;
    let m_n = count_m(n as u32);
    let feasible = verify_feasible(&cert.maximizer, &cfg);
    let status = if !cert.proven_exhaustive {
        Status::Incomplete
    } else {
        Status::from_bool(feasible && cert.optimum as i128 == m_n)
    };
    let payload = json!({
        "certificate": cert,
        "m_n": m_n as i64,
        "matches_bound": cert.optimum as i128 == m_n,
        "maximizer_feasible": feasible,
    });
    result("lemma-max", status, payload)
}

pub fn lemma_sample(n: usize, trials: usize, seed: u64) -> Result<CommandResult> {
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    let cfg = LemmaSearchConfig::new(n);
    let m_n = count_m(n as u32);
    let mut max_e = 0;
    let mut all_feasible = true;
    let mut within = true;
    for m in sample_feasible(n, trials, seed) {
        all_feasible &= verify_feasible(&m, &cfg);
        within &= m.total() as i128 <= m_n;
        max_e = max_e.max(m.total());
    }
    let payload = json!({
        "n": n,
        "trials": trials,
        "seed": seed,
        "max_e": max_e,
        "m_n": m_n as i64,
        "all_feasible": all_feasible,
        "all_within_bound": within,
    });
    result(
        "lemma-sample",
        Status::from_bool(all_feasible && within),
        payload,
    )
}

pub fn turan(
    n: usize,
    enumerate: bool,
    node_limit: Option<u64>,
    threads: usize,
) -> Result<CommandResult> {
    let cert = exact_turan(&TuranConfig {
        n,
        node_limit,
        threads,
    })?;
    let audit = audit_certificate(&cert);
    let expected = theorem_value(n as u32);
    let extremal = if enumerate {
        let classes = enumerate_extremal(n)?;
        Some(classes.iter().map(ToString::to_string).collect::<Vec<_>>())
    } else {
        None
    };
    let status = match (cert.proven_exhaustive, &audit) {
        (false, _) => Status::Incomplete,
        (true, Ok(())) => Status::Pass,
        (true, Err(_)) => Status::Fail,
    };
    let payload = json!({
        "n": n,
        "optimum": cert.optimum,
        "b_n": count_b(n as u32) as i64,
        "matches_theorem": cert.proven_exhaustive && cert.optimum as i128 == expected,
        "witness": cert.witness.to_string(),
        "proven_exhaustive": cert.proven_exhaustive,
        "nodes_explored": cert.nodes_explored,
        "audit": match &audit {
            Ok(()) => "ok".to_string(),
            Err(e) => e.code().to_string(),
        },
        "extremal": extremal,
    });
    result("turan", status, payload)
}

pub fn identities(max_n: u32) -> Result<CommandResult> {
    let report = check_identities(max_n);
    result(
        "identities",
        Status::from_bool(report.passed()),
        serde_json::to_value(&report)?,
    )
}

pub fn t_triple(input: &Path) -> Result<CommandResult> {
    let g = read_graph(input)?;
    let found = find_t_triple(&g);
    let status = Status::from_bool(found.is_none());
    result("t-triple", status, json!({ "n": g.n(), "t_triple": found }))
}
