//! `pq` — terminal front end for the finite-algebra workbench.
//!
//! Exit codes: 0 on success, 1 when a verification that is expected to hold
//! fails, 2 on input errors (parse failures, invalid tables, size caps).

#![forbid(unsafe_code)]

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use pq_core::classify::{verify_abelian_classification, LFactor};
use pq_core::corpus::corpus_group_specs;
use pq_core::iso::find_isomorphism;
use pq_core::kernel::{
    class_equation, detect_chain, kernel_table, verify_properties, ClaimStatus, ClaimTier,
    PropertyReport,
};
use pq_core::magma::{normal_subgroup_magma, Law};
use pq_core::matrix::PqMatrix;
use pq_core::{Error, FiniteMagma, GroupTable, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "pq",
    version,
    about = "Finite groups, their normal-subgroup magmas, and quandle-axiom verification"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Truncation bound for gcd segments in classification output.
    #[arg(long, global = true, default_value_t = 30)]
    bound: usize,

    /// Group order cap (env PQ_MAX_ORDER overrides the default).
    #[arg(long, global = true)]
    max_order: Option<usize>,

    /// Normal-subgroup count cap.
    #[arg(long, global = true, default_value_t = 4096)]
    max_subgroups: usize,

    /// Magma size cap.
    #[arg(long, global = true, default_value_t = 4096)]
    max_magma: usize,

    /// Isomorphism search size cap.
    #[arg(long, global = true, default_value_t = 64)]
    max_iso: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and list its conjugacy classes and normal subgroups.
    Group { spec: String },
    /// Check the quandle axioms on a magma source.
    Axioms { source: String },
    /// Print the subscript matrix of a magma and its symmetry/trace report.
    Matrix { source: String },
    /// Print kernels, the ascending chain, and the class equation.
    Kernels { source: String },
    /// Run the kernel property suite on a source, or on the whole corpus.
    Verify { source: String },
    /// Verify the chain-product normal form of a finite abelian group.
    Classify { spec: String },
    /// Decide whether two magma sources are isomorphic.
    Iso { a: String, b: String },
}

fn main() {
    let cli = Cli::parse();
    let limits = resolve_limits(&cli);
    let mut out = String::new();
    let code = match run(&mut out, &cli, &limits) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    // Ignore a closed stdout (e.g. piping into `head`).
    let _ = std::io::Write::write_all(&mut std::io::stdout(), out.as_bytes());
    std::process::exit(code);
}

fn resolve_limits(cli: &Cli) -> Limits {
    let env_order = std::env::var("PQ_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok());
    Limits {
        max_order: cli.max_order.or(env_order).unwrap_or(256),
        max_subgroups: cli.max_subgroups,
        max_magma: cli.max_magma,
        max_iso: cli.max_iso,
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ClassificationViolation(_) => 1,
        _ => 2,
    }
}

fn run(out: &mut String, cli: &Cli, limits: &Limits) -> Result<i32, Error> {
    match &cli.command {
        Command::Group { spec } => cmd_group(out, spec, cli.format, limits),
        Command::Axioms { source } => cmd_axioms(out, source, cli.format, limits),
        Command::Matrix { source } => cmd_matrix(out, source, cli.format, limits),
        Command::Kernels { source } => cmd_kernels(out, source, cli.format, limits),
        Command::Verify { source } if source == "corpus" => {
            cmd_verify_corpus(out, cli.format, limits)
        }
        Command::Verify { source } => cmd_verify(out, source, cli.format, limits),
        Command::Classify { spec } => cmd_classify(out, spec, cli.bound, cli.format, limits),
        Command::Iso { a, b } => cmd_iso(out, a, b, cli.format, limits),
    }
}

fn subscript(i: usize) -> String {
    format!("x{}", i + 1)
}

fn one_based(set: &pq_core::IndexSet) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn magma_json(m: &FiniteMagma) -> serde_json::Value {
    let doc = m.to_doc();
    json!({ "size": doc.size, "labels": doc.labels, "op": doc.op })
}

fn cmd_group(out: &mut String, spec: &str, format: Format, limits: &Limits) -> Result<i32, Error> {
    let group = GroupTable::build_with(spec, limits)?;
    let classes = group.conjugacy_classes();
    let subs = group.normal_subgroups_with(limits)?;
    match format {
        Format::Text => {
            let _ = writeln!(out, "group {spec} — order {}", group.order());
            let rendered: Vec<String> = classes
                .blocks()
                .iter()
                .map(|b| {
                    let labels: Vec<&str> = b.iter().map(|i| group.label(i)).collect();
                    format!("{{{}}}", labels.join(","))
                })
                .collect();
            let _ = writeln!(
                out,
                "conjugacy classes ({}): {}",
                classes.len(),
                rendered.join(" ")
            );
            let _ = writeln!(out, "normal subgroups ({}):", subs.len());
            for (i, s) in subs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {} = {} (size {})",
                    subscript(i),
                    group.subgroup_label(s),
                    s.size()
                );
            }
        }
        Format::Json => {
            let value = json!({
                "spec": spec,
                "order": group.order(),
                "classes": classes.blocks().iter().map(one_based).collect::<Vec<_>>(),
                "normal_subgroups": subs.iter().enumerate().map(|(i, s)| json!({
                    "subscript": i + 1,
                    "size": s.size(),
                    "members": one_based(s.members()),
                    "label": group.subgroup_label(s),
                })).collect::<Vec<_>>(),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    Ok(0)
}

fn cmd_axioms(
    out: &mut String,
    source: &str,
    format: Format,
    limits: &Limits,
) -> Result<i32, Error> {
    let m = FiniteMagma::from_source(source, limits)?;
    let report = m.check_axioms();
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "axioms for {source} — size {} — classification: {}",
                m.size(),
                report.classification
            );
            let yesno = |b: bool| if b { "holds" } else { "fails" };
            let _ = writeln!(
                out,
                "  idempotence: {}{}",
                yesno(report.idempotent.holds),
                report
                    .idempotent
                    .counterexample
                    .map(|q| format!(" — {q} with {q}*{q} ≠ {q}", q = subscript(q)))
                    .unwrap_or_default()
            );
            let _ = writeln!(
                out,
                "  right self-distributivity: {}{}",
                yesno(report.right_self_distributive.holds),
                report
                    .right_self_distributive
                    .counterexample
                    .map(|(p, q, r)| format!(
                        " — at ({},{},{})",
                        subscript(p),
                        subscript(q),
                        subscript(r)
                    ))
                    .unwrap_or_default()
            );
            let _ = writeln!(
                out,
                "  left self-distributivity: {}{}",
                yesno(report.left_self_distributive.holds),
                report
                    .left_self_distributive
                    .counterexample
                    .map(|(p, q, r)| format!(
                        " — at ({},{},{})",
                        subscript(p),
                        subscript(q),
                        subscript(r)
                    ))
                    .unwrap_or_default()
            );
            let _ = writeln!(
                out,
                "  commutativity: {}{}",
                yesno(report.commutative.holds),
                report
                    .commutative
                    .counterexample
                    .map(|(p, q)| format!(" — at ({},{})", subscript(p), subscript(q)))
                    .unwrap_or_default()
            );
            let _ = writeln!(
                out,
                "  right translations bijective: {}{}",
                yesno(report.right_translations_bijective.holds),
                report
                    .right_translations_bijective
                    .counterexample
                    .map(|(p, q)| format!(
                        " — no unique r with {} = r*{}",
                        subscript(p),
                        subscript(q)
                    ))
                    .unwrap_or_default()
            );
        }
        Format::Json => {
            let bump1 = |law: &Law<usize>| {
                json!({
                    "holds": law.holds,
                    "counterexample": law.counterexample.map(|q| q + 1),
                })
            };
            let bump2 = |law: &Law<(usize, usize)>| {
                json!({
                    "holds": law.holds,
                    "counterexample": law.counterexample.map(|(p, q)| vec![p + 1, q + 1]),
                })
            };
            let bump3 = |law: &Law<(usize, usize, usize)>| {
                json!({
                    "holds": law.holds,
                    "counterexample": law.counterexample.map(|(p, q, r)| vec![p + 1, q + 1, r + 1]),
                })
            };
            let value = json!({
                "source": source,
                "size": m.size(),
                "classification": report.classification.to_string(),
                "laws": {
                    "idempotent": bump1(&report.idempotent),
                    "right_self_distributive": bump3(&report.right_self_distributive),
                    "left_self_distributive": bump3(&report.left_self_distributive),
                    "commutative": bump2(&report.commutative),
                    "right_translations_bijective": bump2(&report.right_translations_bijective),
                },
                "magma": magma_json(&m),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    Ok(0)
}

fn cmd_matrix(
    out: &mut String,
    source: &str,
    format: Format,
    limits: &Limits,
) -> Result<i32, Error> {
    let m = FiniteMagma::from_source(source, limits)?;
    let source_is_pg = source.trim().starts_with("pg:");
    let matrix = PqMatrix::from_magma(&m);
    let report = matrix.report(source_is_pg);
    match format {
        Format::Text => {
            let _ = writeln!(out, "matrix for {source} ({n}x{n}):", n = matrix.n());
            let _ = writeln!(out, "{}", matrix.render_text());
            let yesno = |b: bool| if b { "yes" } else { "no" };
            let _ = writeln!(
                out,
                "symmetric: {}; trace: {} (expected {}); simple form: {}",
                yesno(report.symmetric),
                report.trace,
                report.expected_trace,
                yesno(report.simple_form)
            );
            if let Some(ok) = report.pg_laws_ok {
                let _ = writeln!(out, "subgroup-magma laws (symmetry + trace): {}", yesno(ok));
            }
        }
        Format::Json => {
            let value = json!({
                "source": source,
                "n": matrix.n(),
                "entries": matrix.rows(),
                "report": {
                    "symmetric": report.symmetric,
                    "trace": report.trace,
                    "expected_trace": report.expected_trace,
                    "trace_ok": report.trace_ok,
                    "simple_form": report.simple_form,
                    "pg_laws_ok": report.pg_laws_ok,
                },
                "magma": magma_json(&m),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    if report.pg_laws_ok == Some(false) {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_kernels(
    out: &mut String,
    source: &str,
    format: Format,
    limits: &Limits,
) -> Result<i32, Error> {
    let m = FiniteMagma::from_source(source, limits)?;
    let kt = kernel_table(&m);
    let chain = detect_chain(&kt);
    let equation = class_equation(&m).ok();
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "kernels for {source} — size {}{}",
                m.size(),
                if kt.commutative_source() {
                    " (commutative)"
                } else {
                    ""
                }
            );
            for (p, ker) in kt.kernels().iter().enumerate() {
                let names: Vec<String> = ker.iter().map(subscript).collect();
                let _ = writeln!(out, "  ker({}) = {{{}}}", subscript(p), names.join(","));
            }
            match &chain.ordering {
                Some(ordering) => {
                    let names: Vec<String> = ordering.iter().map(|&p| subscript(p)).collect();
                    let _ = writeln!(out, "ascending chain: {}", names.join(" ⊆ "));
                }
                None => {
                    let _ = writeln!(out, "ascending chain: none");
                }
            }
            match &equation {
                Some(eq) => {
                    let parts: Vec<String> = std::iter::once(eq.base.to_string())
                        .chain(eq.increments.iter().map(|i| i.to_string()))
                        .collect();
                    let _ = writeln!(out, "class equation: {} = {}", eq.total, parts.join(" + "));
                }
                None => {
                    let _ = writeln!(out, "class equation: not applicable (no ascending chain)");
                }
            }
        }
        Format::Json => {
            let value = json!({
                "source": source,
                "size": m.size(),
                "commutative": kt.commutative_source(),
                "kernels": kt.kernels().iter().map(one_based).collect::<Vec<_>>(),
                "cokernels": kt.cokernels().iter().map(one_based).collect::<Vec<_>>(),
                "chain": {
                    "found": chain.chain_found,
                    "ordering": chain.ordering.as_ref().map(|o| o.iter().map(|&p| p + 1).collect::<Vec<_>>()),
                },
                "class_equation": equation.as_ref().map(|eq| json!({
                    "base": eq.base,
                    "increments": eq.increments,
                    "total": eq.total,
                })),
                "magma": magma_json(&m),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    Ok(0)
}

fn claims_json(report: &PropertyReport) -> serde_json::Value {
    json!(report
        .claims
        .iter()
        .map(|c| json!({
            "name": c.name,
            "tier": match c.tier {
                ClaimTier::Asserted => "asserted",
                ClaimTier::Empirical => "empirical",
            },
            "status": match c.status {
                ClaimStatus::Pass => "pass",
                ClaimStatus::Fail => "fail",
                ClaimStatus::Skipped => "skipped",
            },
            "detail": c.detail,
        }))
        .collect::<Vec<_>>())
}

fn render_claims_text(out: &mut String, report: &PropertyReport) {
    for c in &report.claims {
        let tier = match c.tier {
            ClaimTier::Asserted => "asserted ",
            ClaimTier::Empirical => "empirical",
        };
        let status = match c.status {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Skipped => "skipped",
        };
        let detail = c
            .detail
            .as_ref()
            .map(|d| format!(" — {d}"))
            .unwrap_or_default();
        let _ = writeln!(out, "  [{tier}] {:<22} {status}{detail}", c.name);
    }
}

fn cmd_verify(
    out: &mut String,
    source: &str,
    format: Format,
    limits: &Limits,
) -> Result<i32, Error> {
    let m = FiniteMagma::from_source(source, limits)?;
    let report = verify_properties(&m);
    let ok = report.all_asserted_pass();
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "properties of {source} (commutative: {})",
                if report.commutative_source {
                    "yes"
                } else {
                    "no"
                }
            );
            render_claims_text(out, &report);
            let _ = writeln!(
                out,
                "asserted claims: {}",
                if ok { "all pass" } else { "FAILURES" }
            );
        }
        Format::Json => {
            let value = json!({
                "source": source,
                "size": m.size(),
                "commutative": report.commutative_source,
                "claims": claims_json(&report),
                "all_asserted_pass": ok,
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_verify_corpus(out: &mut String, format: Format, limits: &Limits) -> Result<i32, Error> {
    let specs = corpus_group_specs();
    let results: Vec<(String, PropertyReport)> = specs
        .par_iter()
        .map(|spec| {
            let group = GroupTable::build_with(spec, limits).expect("corpus spec builds");
            let pg = normal_subgroup_magma(&group, limits).expect("corpus magma builds");
            (format!("pg:{spec}"), verify_properties(&pg))
        })
        .collect();
    let all_ok = results.iter().all(|(_, r)| r.all_asserted_pass());
    match format {
        Format::Text => {
            for (name, report) in &results {
                let asserted = report
                    .claims
                    .iter()
                    .filter(|c| c.tier == ClaimTier::Asserted)
                    .count();
                let failed: Vec<&str> = report
                    .claims
                    .iter()
                    .filter(|c| c.status == ClaimStatus::Fail)
                    .map(|c| c.name)
                    .collect();
                if failed.is_empty() {
                    let _ = writeln!(out, "{name}: {asserted} asserted claims pass");
                } else {
                    let _ = writeln!(out, "{name}: FAILURES in {}", failed.join(", "));
                }
            }
            let _ = writeln!(
                out,
                "corpus: {} structures, {}",
                results.len(),
                if all_ok {
                    "all asserted claims pass"
                } else {
                    "FAILURES present"
                }
            );
        }
        Format::Json => {
            let value = json!({
                "items": results.iter().map(|(name, report)| json!({
                    "source": name,
                    "commutative": report.commutative_source,
                    "claims": claims_json(report),
                    "all_asserted_pass": report.all_asserted_pass(),
                })).collect::<Vec<_>>(),
                "ok": all_ok,
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_classify(
    out: &mut String,
    spec: &str,
    bound: usize,
    format: Format,
    limits: &Limits,
) -> Result<i32, Error> {
    let outcome = verify_abelian_classification(spec, bound, limits)?;
    match format {
        Format::Text => {
            let primes: Vec<String> = outcome
                .decomposition
                .prime_powers
                .iter()
                .map(|(p, m)| {
                    if *m == 1 {
                        p.to_string()
                    } else {
                        format!("{p}^{m}")
                    }
                })
                .collect();
            let _ = writeln!(
                out,
                "{spec} ≅ {} — {} normal subgroups",
                outcome.normal_form,
                outcome.subgroup_magma.size()
            );
            if !primes.is_empty() {
                let _ = writeln!(out, "primary decomposition: {}", primes.join(" · "));
            }
            let mapping: Vec<String> = outcome
                .witness
                .mapping
                .iter()
                .enumerate()
                .map(|(x, &y)| format!("{}↦{}", subscript(x), subscript(y)))
                .collect();
            let _ = writeln!(out, "isomorphism: {}", mapping.join(" "));
        }
        Format::Json => {
            let value = json!({
                "spec": spec,
                "decomposition": {
                    "free_rank": outcome.decomposition.free_rank,
                    "prime_powers": outcome.decomposition.prime_powers,
                },
                "normal_form": {
                    "display": outcome.normal_form.to_string(),
                    "factors": outcome.normal_form.factors.iter().map(|f| match f {
                        LFactor::MaxChain { size } => json!({"kind": "max", "size": size}),
                        LFactor::GcdSegment { bound } => json!({"kind": "gcd", "bound": bound}),
                    }).collect::<Vec<_>>(),
                    "realized": magma_json(&outcome.normal_form.realized),
                },
                "size": outcome.subgroup_magma.size(),
                "witness": outcome.witness.mapping.iter().map(|&y| y + 1).collect::<Vec<_>>(),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    Ok(0)
}

fn cmd_iso(
    out: &mut String,
    a: &str,
    b: &str,
    format: Format,
    limits: &Limits,
) -> Result<i32, Error> {
    let ma = FiniteMagma::from_source(a, limits)?;
    let mb = FiniteMagma::from_source(b, limits)?;
    let witness = find_isomorphism(&ma, &mb, limits)?;
    match format {
        Format::Text => match &witness {
            Some(w) => {
                let mapping: Vec<String> = w
                    .mapping
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}↦{}", subscript(x), subscript(y)))
                    .collect();
                let _ = writeln!(out, "isomorphic: {}", mapping.join(" "));
            }
            None => {
                let _ = writeln!(out, "not isomorphic");
            }
        },
        Format::Json => {
            let value = json!({
                "a": a,
                "b": b,
                "isomorphic": witness.is_some(),
                "mapping": witness.as_ref().map(|w| {
                    w.mapping.iter().map(|&y| y + 1).collect::<Vec<_>>()
                }),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    Ok(0)
}
