use std::sync::Arc;

use clap::ValueEnum;
use dualsep::bigraph::BipartiteGraph;
use dualsep::corpus::corpus_graph;
use dualsep::homology::{
    check_vs_duality, find_decider, kernel_basis, orientation_to_chain, DeciderCondition,
    DeciderOptions, DeciderReport, IndexedSystem, WeightConstraint,
};
use dualsep::order::{order, order_side_edge_form};
use dualsep::shift::{shift_between, Universe};
use dualsep::tangle::{build_system, enumerate_tangles, LowOrderSystem, OrientationDump, TangleKind};
use dualsep::verify::{verify_corpus, VerifyConfig};
use dualsep::{EnumCaps, HalfInt, Side};
use serde::Serialize;
use serde_json::{json, Value};

use crate::source::{parse_sep, sep_labels, UniverseArg};
use crate::{Caps, CliError, Command, KindArg, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionArg {
    Componentwise,
    Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintArg {
    Free,
    Nonnegative,
    Binary,
    SumOne,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn enum_caps(caps: &Caps) -> EnumCaps {
    EnumCaps {
        edges: caps.cap_edges,
        ..EnumCaps::default()
    }
}

fn kind(k: KindArg) -> TangleKind {
    match k {
        KindArg::Tangle => TangleKind::Tangle,
        KindArg::Profile => TangleKind::RegularProfile,
    }
}

fn system(g: &BipartiteGraph, u: Universe, k2: u64, caps: &Caps) -> Result<Arc<LowOrderSystem>, CliError> {
    Ok(Arc::new(build_system(g, u, HalfInt::from_doubled(k2), enum_caps(caps))?))
}

fn default_target(u: Universe) -> Universe {
    match u {
        Universe::SideX => Universe::SideY,
        Universe::SideY | Universe::Edges => Universe::SideX,
        Universe::PartitionsX => Universe::PartitionsY,
        Universe::PartitionsY => Universe::PartitionsX,
    }
}

fn report(result: Value, summary: Vec<(&str, String)>) -> Report {
    Report {
        result,
        summary: summary.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        artifact: None,
        failed: false,
    }
}

pub fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Ingest { source, .. } => {
            let g = source.load()?;
            let wf = g.check_duality_wellformedness();
            let dump = g.to_dump();
            let mut r = report(
                json!({
                    "x": g.x().len(),
                    "y": g.y().len(),
                    "edges": g.edge_count(),
                    "wellformedness": to_value(&wf),
                }),
                vec![
                    ("x", g.x().len().to_string()),
                    ("y", g.y().len().to_string()),
                    ("edges", g.edge_count().to_string()),
                    ("identical_classes", wf.identical.len().to_string()),
                    ("complementary_pairs", wf.complementary.len().to_string()),
                ],
            );
            let mut text = serde_json::to_string_pretty(&dump).expect("dump serializes");
            text.push('\n');
            r.artifact = Some(text);
            Ok(r)
        }
        Command::Enumerate {
            source,
            universe,
            k2,
            caps,
            ..
        } => {
            let g = source.load()?;
            let u = Universe::from(*universe);
            let sys = system(&g, u, *k2, caps)?;
            let members: Vec<Value> = sys
                .members()
                .iter()
                .map(|m| {
                    json!({
                        "separation": sep_labels(&g, u, &m.sep.canonical()),
                        "order_doubled": m.order.doubled(),
                        "order": m.order.to_string(),
                    })
                })
                .collect();
            Ok(report(
                json!({ "count": members.len(), "members": members }),
                vec![("count", members.len().to_string())],
            ))
        }
        Command::Order {
            source,
            universe,
            sep,
            ..
        } => {
            let g = source.load()?;
            let u = Universe::from(*universe);
            let s = parse_sep(&g, u, sep)?;
            let value = order(&g, u.order_kind(), &s)?;
            let mut result = json!({
                "separation": sep_labels(&g, u, &s),
                "order": value.to_string(),
                "order_doubled": value.doubled(),
            });
            let mut summary = vec![("order", value.to_string())];
            let mut failed = false;
            if let (UniverseArg::X | UniverseArg::Y, Some(side)) = (universe, u.side()) {
                let alt = order_side_edge_form(&g, side, &s)?;
                result["edge_form"] = json!(alt.to_string());
                summary.push(("edge_form", alt.to_string()));
                failed = alt != value;
            }
            let mut r = report(result, summary);
            r.failed = failed;
            Ok(r)
        }
        Command::Shift {
            source,
            universe,
            to,
            sep,
            ..
        } => {
            let g = source.load()?;
            let from = Universe::from(*universe);
            let to = to.map_or_else(|| default_target(from), Universe::from);
            let s = parse_sep(&g, from, sep)?;
            let t = shift_between(&g, from, to, &s)?;
            let (input, output) = (sep_labels(&g, from, &s), sep_labels(&g, to, &t));
            Ok(report(
                json!({
                    "from": from,
                    "to": to,
                    "input": input,
                    "output": output,
                }),
                vec![
                    ("from", from.name().to_string()),
                    ("to", to.name().to_string()),
                    ("output", format!("\"{}|{}\"", output[0].join(" "), output[1].join(" "))),
                ],
            ))
        }
        Command::Tangles {
            source,
            universe,
            k2,
            kind: k,
            caps,
            ..
        } => {
            let g = source.load()?;
            let sys = system(&g, Universe::from(*universe), *k2, caps)?;
            let found = enumerate_tangles(&sys, kind(*k), caps.cap_seps)?;
            let dumps: Vec<OrientationDump> = found.iter().map(|o| o.to_dump(&g)).collect();
            Ok(report(
                json!({
                    "members": sys.len(),
                    "count": dumps.len(),
                    "tangles": to_value(&dumps),
                }),
                vec![
                    ("members", sys.len().to_string()),
                    ("count", dumps.len().to_string()),
                ],
            ))
        }
        Command::Verify {
            seed,
            corpus_size,
            k_grid,
            ..
        } => {
            let seeds: Vec<u64> = (*seed..seed + corpus_size).collect();
            let graphs: Vec<_> = seeds.iter().map(|&s| corpus_graph(s)).collect();
            let config = VerifyConfig {
                seeds,
                k_grid_doubled: k_grid.clone(),
                ..VerifyConfig::default()
            };
            let rep = verify_corpus(&graphs, &config)?;
            let missing: Vec<&str> = rep.missing_instances().iter().map(|t| t.name()).collect();
            let mut summary = vec![
                ("cases", rep.cases.len().to_string()),
                ("counterexamples", rep.counterexamples().to_string()),
            ];
            for s in &rep.summary {
                summary.push((s.theorem.name(), format!(
                    "verified={} vacuous={} out_of_range={} counterexamples={}",
                    s.verified, s.vacuous, s.out_of_range, s.counterexamples
                )));
            }
            let mut r = report(
                json!({
                    "counterexamples": rep.counterexamples(),
                    "missing_instances": missing,
                    "summary": to_value(&rep.summary),
                    "cases": to_value(&rep.cases),
                }),
                summary,
            );
            r.failed = rep.counterexamples() > 0;
            Ok(r)
        }
        Command::Homology {
            source,
            universe,
            k2,
            sep,
            kind: k,
            bound,
            condition,
            constraint,
            caps,
            ..
        } => {
            let g = source.load()?;
            let u = Universe::from(*universe);
            let opts = DeciderOptions {
                condition: match condition {
                    ConditionArg::Componentwise => DeciderCondition::Componentwise,
                    ConditionArg::Scalar => DeciderCondition::Scalar,
                },
                constraint: match constraint {
                    ConstraintArg::Free => WeightConstraint::Free,
                    ConstraintArg::Nonnegative => WeightConstraint::NonNegative,
                    ConstraintArg::Binary => WeightConstraint::Binary,
                    ConstraintArg::SumOne => WeightConstraint::SumOne,
                },
                bound: *bound,
            };
            let ground = u.ground_len(&g);
            let (indexed, sys) = if sep.is_empty() {
                let sys = system(&g, u, *k2, caps)?;
                (IndexedSystem::from_system(&sys), Some(sys))
            } else {
                let seps = sep
                    .iter()
                    .map(|t| parse_sep(&g, u, t))
                    .collect::<Result<Vec<_>, _>>()?;
                (IndexedSystem::new(ground, seps)?, None)
            };
            let b = indexed.boundary_matrix();
            let vs = check_vs_duality(&indexed);
            let kernel = kernel_basis(&b);
            let mut orientations: Vec<Value> = Vec::new();
            if let Some(sys) = &sys {
                for o in enumerate_tangles(sys, kind(*k), caps.cap_seps)? {
                    let lambda = orientation_to_chain(&o, &indexed)?;
                    let cycle = b.apply(&lambda).is_zero();
                    let decider: DeciderReport = find_decider(&b, &lambda.coeffs, opts);
                    orientations.push(json!({ "cycle": cycle, "decider": to_value(&decider) }));
                }
            }
            let seps: Vec<[Vec<String>; 2]> =
                indexed.seps().iter().map(|s| sep_labels(&g, u, s)).collect();
            let labels: Vec<&str> = match u.side() {
                Some(Side::X) => g.x().labels().iter().map(String::as_str).collect(),
                Some(Side::Y) => g.y().labels().iter().map(String::as_str).collect(),
                None => g.edges().labels().iter().map(String::as_str).collect(),
            };
            let mut r = report(
                json!({
                    "ground": labels,
                    "separations": seps,
                    "matrix": to_value(&b),
                    "vs_duality": vs,
                    "rank": b.rank(),
                    "kernel_dim": kernel.len(),
                    "kernel_basis": kernel.iter().map(|c| &c.coeffs).collect::<Vec<_>>(),
                    "orientations": orientations,
                }),
                vec![
                    ("separations", indexed.len().to_string()),
                    ("vs_duality", vs.to_string()),
                    ("rank", b.rank().to_string()),
                    ("kernel_dim", kernel.len().to_string()),
                    ("orientations", orientations.len().to_string()),
                ],
            );
            r.failed = !vs;
            Ok(r)
        }
    }
}
