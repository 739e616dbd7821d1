//! Corpus-wide property checks. Instances run in parallel; results are
//! reported in instance order.

use std::fs;
use std::path::Path;

use rayon::prelude::*;

use dissolab::approx::approx_dissociation_bipartite;
use dissolab::exact::{
    check_inequality_chain, diss_via_induced_matchings, dissociation_number_exact,
    independence_number_exact, is_dissociation_set, Cutoffs, ExactError,
};
use dissolab::extremal::{recognize_extremal, RecognitionOutcome};
use dissolab::format::parse_annotated;
use dissolab::generate::{
    connected_bipartite_catalog, connected_catalog, random_bipartite_corpus, random_graph_corpus,
};
use dissolab::graph::{bipartition, Graph};
use dissolab::matching::maximum_matching;
use dissolab::reductions::{check_predictions, GadgetError, GadgetInstance};

use crate::report::Report;
use crate::{CliError, Context};

const MAX_CATALOG: usize = 9;
const MAX_BIPARTITE_CATALOG: usize = 11;

enum Subject {
    /// Inequality chain, witnesses, and the induced-matching formula.
    Chain(Graph),
    /// Recognizer against the 3·diss = 4·α(G − M) test, and the
    /// approximation bounds.
    Bipartite(Graph),
    /// Both of the above when the graph is bipartite, else the chain only.
    Any(Graph),
    Gadget(Box<GadgetInstance>),
}

struct Instance {
    name: String,
    subject: Subject,
}

enum Status {
    Ok,
    Violation(String),
    TooLarge(String),
}

impl From<ExactError> for Status {
    fn from(e: ExactError) -> Self {
        Status::TooLarge(e.to_string())
    }
}

fn param(parts: &[&str], i: usize, default: usize) -> Result<usize, CliError> {
    match parts.get(i) {
        None => Ok(default),
        Some(s) => s
            .parse()
            .map_err(|_| CliError::Invalid(format!("bad generator parameter {s:?}"))),
    }
}

fn named(prefix: &str, graphs: Vec<Graph>, wrap: fn(Graph) -> Subject) -> Vec<Instance> {
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| Instance {
            name: format!("{prefix}#{i}"),
            subject: wrap(g),
        })
        .collect()
}

fn instances(target: &str, seed: u64) -> Result<Vec<Instance>, CliError> {
    let path = Path::new(target);
    if path.is_dir() {
        return directory(path);
    }
    let parts: Vec<&str> = target.split(':').collect();
    match parts[0] {
        "catalog" => {
            let n = param(&parts, 1, 9)?;
            if n > MAX_CATALOG {
                return Err(CliError::Invalid(format!("catalog supports n <= {MAX_CATALOG}")));
            }
            Ok(named("catalog", connected_catalog(n), Subject::Chain))
        }
        "bipartite-catalog" => {
            let n = param(&parts, 1, 10)?;
            if n > MAX_BIPARTITE_CATALOG {
                return Err(CliError::Invalid(format!(
                    "bipartite-catalog supports n <= {MAX_BIPARTITE_CATALOG}"
                )));
            }
            Ok(named("bipartite-catalog", connected_bipartite_catalog(n), Subject::Bipartite))
        }
        "random" => {
            let (count, max_n) = (param(&parts, 1, 500)?, param(&parts, 2, 14)?.max(1));
            Ok(random_graph_corpus(count, max_n, seed)
                .into_iter()
                .map(|(e, g)| Instance {
                    name: e.name(),
                    subject: Subject::Chain(g),
                })
                .collect())
        }
        "bipartite" => {
            let (count, max_n) = (param(&parts, 1, 300)?, param(&parts, 2, 14)?.max(1));
            Ok(random_bipartite_corpus(count, max_n, seed)
                .into_iter()
                .map(|(e, g)| Instance {
                    name: e.name(),
                    subject: Subject::Bipartite(g),
                })
                .collect())
        }
        _ => Err(CliError::Invalid(format!(
            "{target:?} is neither a directory nor a known generator"
        ))),
    }
}

/// Every regular file in `dir`, by name. Files with a `c kind` line are
/// gadget instances; other files are plain graphs.
fn directory(dir: &Path) -> Result<Vec<Instance>, CliError> {
    let io = |e: std::io::Error| CliError::Invalid(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    paths.retain(|p| p.is_file());
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for p in paths {
        let name = p
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = crate::commands::read(&p)?;
        let bad = |e: &dyn std::fmt::Display| CliError::Invalid(format!("{name}: {e}"));
        let (graph, comments) = parse_annotated(&text).map_err(|e| bad(&e))?;
        let subject = if comments.iter().any(|c| c.starts_with("kind ")) {
            Subject::Gadget(Box::new(GadgetInstance::parse(&text).map_err(|e| bad(&e))?))
        } else {
            Subject::Any(graph)
        };
        out.push(Instance { name, subject });
    }
    Ok(out)
}

fn chain(g: &Graph, cutoffs: &Cutoffs) -> Result<Status, ExactError> {
    let r = check_inequality_chain(g, cutoffs)?;
    if !r.witnesses_valid(g) {
        return Ok(Status::Violation("witness failed re-validation".into()));
    }
    if !r.chain_holds() {
        return Ok(Status::Violation(format!(
            "chain fails: diss={} alpha={} nu_s={}",
            r.diss, r.alpha, r.nu_s
        )));
    }
    let via = diss_via_induced_matchings(g, cutoffs)?;
    if via != r.diss {
        return Ok(Status::Violation(format!(
            "max alpha(G-M) over induced matchings is {via}, diss is {}",
            r.diss
        )));
    }
    Ok(Status::Ok)
}

fn bipartite_checks(g: &Graph, cutoffs: &Cutoffs) -> Result<Status, ExactError> {
    let Ok(b) = bipartition(g) else {
        return Ok(Status::Violation("not bipartite".into()));
    };
    let m = maximum_matching(g, &b).expect("bipartition is valid");
    let rest = g.remove_edges(m.edges()).expect("matching edges are edges");
    let (diss, _) = dissociation_number_exact(g, cutoffs)?;
    let (alpha_rest, _) = independence_number_exact(&rest, cutoffs)?;
    let outcome = match recognize_extremal(g, &m) {
        Ok(o) => o,
        Err(e) => return Ok(Status::Violation(format!("recognizer error: {e}"))),
    };
    let tight = 3 * diss == 4 * alpha_rest;
    if outcome.is_extremal() != tight {
        return Ok(Status::Violation(format!(
            "recognizer says {}, but diss={diss} alpha(G-M)={alpha_rest}",
            match &outcome {
                RecognitionOutcome::Extremal(_) => "Extremal".to_string(),
                RecognitionOutcome::NotExtremal(r) => r.to_string(),
            }
        )));
    }
    if let RecognitionOutcome::Extremal(cert) = &outcome {
        let set = &cert.max_dissociation_set;
        if !is_dissociation_set(g, set) || set.len() != diss {
            return Ok(Status::Violation("recognizer set is not maximum".into()));
        }
    }
    let approx = approx_dissociation_bipartite(g).expect("graph is bipartite");
    let size = approx.set.len();
    if !is_dissociation_set(g, &approx.set) || size > diss || 4 * size < 3 * diss {
        return Ok(Status::Violation(format!(
            "approximation returned {size} with diss={diss}"
        )));
    }
    Ok(Status::Ok)
}

fn gadget(inst: &GadgetInstance, cutoffs: &Cutoffs) -> Result<Status, ExactError> {
    let checks = match check_predictions(inst, cutoffs) {
        Ok(c) => c,
        Err(GadgetError::Exact(e)) => return Err(e),
        Err(e) => return Ok(Status::Violation(e.to_string())),
    };
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| c.ok == Some(false))
        .map(|c| format!("predicted {} but observed {}", c.prediction, c.observed))
        .collect();
    if failed.is_empty() {
        Ok(Status::Ok)
    } else {
        Ok(Status::Violation(failed.join("; ")))
    }
}

fn run_one(subject: &Subject, cutoffs: &Cutoffs) -> Status {
    let result = match subject {
        Subject::Chain(g) => chain(g, cutoffs),
        Subject::Bipartite(g) => bipartite_checks(g, cutoffs),
        Subject::Any(g) => chain(g, cutoffs).and_then(|s| match s {
            Status::Ok if bipartition(g).is_ok() => bipartite_checks(g, cutoffs),
            other => Ok(other),
        }),
        Subject::Gadget(inst) => gadget(inst, cutoffs),
    };
    result.unwrap_or_else(Status::from)
}

pub fn check(ctx: &Context, target: &str, seed: u64) -> Result<String, CliError> {
    let items = instances(target, seed)?;
    let statuses: Vec<Status> = items
        .par_iter()
        .map(|it| run_one(&it.subject, &ctx.cutoffs))
        .collect();

    let mut r = Report::new();
    let violations = statuses
        .iter()
        .filter(|s| matches!(s, Status::Violation(_)))
        .count();
    let skipped = statuses
        .iter()
        .filter(|s| matches!(s, Status::TooLarge(_)))
        .count();
    r.push("target", target)
        .push("seed", seed)
        .push("instances", items.len())
        .push("passed", items.len() - violations - skipped)
        .push("violations", violations)
        .push("skipped", skipped);
    for (it, s) in items.iter().zip(&statuses) {
        match s {
            Status::Ok => {}
            Status::Violation(why) => {
                r.push("violation", format!("{}: {why}", it.name));
            }
            Status::TooLarge(why) => {
                r.push("skip", format!("{}: {why}", it.name));
            }
        }
    }
    let text = r.render(ctx.json);
    if violations > 0 {
        Err(CliError::Violation(text))
    } else if skipped > 0 {
        Err(CliError::CutoffReport(text))
    } else {
        Ok(text)
    }
}
