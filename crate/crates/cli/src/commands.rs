use std::fs;
use std::path::Path;
use std::time::Instant;

use dissolab::approx::approx_dissociation_bipartite;
use dissolab::exact::{
    dissociation_number_exact, independence_number_exact, induced_matching_number_exact,
    is_dissociation_set, EqualityFlags,
};
use dissolab::extremal::{recognize_extremal, NotExtremalReason, RecognitionOutcome};
use dissolab::format::{parse_edge_list, parse_matching, to_dot, EdgeHighlight};
use dissolab::graph::{bipartition, Graph, GraphError};
use dissolab::matching::{is_induced_matching, maximum_matching, Matching};
use dissolab::reductions::{
    gadget_diss_2alpha, gadget_diss_alpha, gadget_diss_alpha_plus_nus_with, gadget_join_kn,
    CnfFormula, GadgetError, GadgetInstance,
};

use crate::report::{edges, vertices, Report};
use crate::{CliError, Context, GadgetArg};

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_edge_list(&read(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn timed<T>(timings: bool, report: &mut Report, key: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    if timings {
        report.push(format!("time_ms.{key}"), start.elapsed().as_millis() as u64);
    }
    out
}

pub fn solve(ctx: &Context, path: &Path, timings: bool) -> Result<Report, CliError> {
    let g = read_graph(path)?;
    let mut r = Report::new();
    r.push("n", g.order()).push("m", g.size());
    let (diss, diss_set) = timed(timings, &mut r, "diss", || {
        dissociation_number_exact(&g, &ctx.cutoffs)
    })?;
    let (alpha, alpha_set) = timed(timings, &mut r, "alpha", || {
        independence_number_exact(&g, &ctx.cutoffs)
    })?;
    let (nu_s, nu_s_matching) = timed(timings, &mut r, "nu_s", || {
        induced_matching_number_exact(&g, &ctx.cutoffs)
    })?;
    if !(is_dissociation_set(&g, &diss_set)
        && g.is_independent(&alpha_set)
        && is_induced_matching(&g, nu_s_matching.edges()))
    {
        return Err(CliError::Violation("witness failed re-validation\n".into()));
    }
    let flags = EqualityFlags::from_values(diss, alpha, nu_s);
    let tight: Vec<&str> = flags
        .named()
        .iter()
        .filter(|(_, holds)| *holds)
        .map(|(name, _)| *name)
        .collect();
    r.push("diss", diss)
        .push("alpha", alpha)
        .push("nu_s", nu_s)
        .push("diss_set", vertices(&diss_set))
        .push("alpha_set", vertices(&alpha_set))
        .push("nu_s_matching", edges(nu_s_matching.edges()))
        .push("equalities", if tight.is_empty() { "none".into() } else { tight.join(",") });
    Ok(r)
}

pub fn approx(path: &Path) -> Result<Report, CliError> {
    let g = read_graph(path)?;
    let res = approx_dissociation_bipartite(&g).map_err(graph_error)?;
    let rest = g
        .remove_edges(res.certificate.matching.edges())
        .map_err(invalid)?;
    if !(rest.is_independent(&res.set) && is_dissociation_set(&g, &res.set)) {
        return Err(CliError::Violation("approximate set failed re-validation\n".into()));
    }
    let mut r = Report::new();
    r.push("n", g.order())
        .push("m", g.size())
        .push("size", res.set.len())
        .push("set", vertices(&res.set))
        .push("matching", edges(res.certificate.matching.edges()));
    Ok(r)
}

pub fn recognize(path: &Path, matching: &str, dot: Option<&Path>) -> Result<Report, CliError> {
    let g = read_graph(path)?;
    let m = if matching == "auto" {
        match bipartition(&g) {
            Ok(b) => maximum_matching(&g, &b).map_err(invalid)?,
            // The recognizer reports the odd cycle itself.
            Err(GraphError::NotBipartite { .. }) => Matching::empty(),
            Err(e) => return Err(invalid(e)),
        }
    } else {
        let p = Path::new(matching);
        let pairs = parse_matching(&read(p)?, g.order())
            .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?;
        Matching::new(&g, pairs).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?
    };
    let outcome = recognize_extremal(&g, &m).map_err(invalid)?;

    let mut r = Report::new();
    r.push("n", g.order())
        .push("m", g.size())
        .push("matching_source", if matching == "auto" { "auto" } else { "file" })
        .push("matching", edges(m.edges()));
    let mut highlights = vec![EdgeHighlight {
        name: "M".into(),
        edges: m.edges().to_vec(),
    }];
    let mut labeling = None;
    match &outcome {
        RecognitionOutcome::Extremal(cert) => {
            let set = &cert.max_dissociation_set;
            if !is_dissociation_set(&g, set) || set.len() != 4 * cert.labeling.ell() {
                return Err(CliError::Violation("certificate failed re-validation\n".into()));
            }
            let labels: Vec<String> = (0..g.order())
                .map(|v| format!("{}:{}", v + 1, cert.labeling.class(v).expect("total labeling")))
                .collect();
            r.push("outcome", "Extremal")
                .push("ell", cert.labeling.ell())
                .push("size", set.len())
                .push("set", vertices(set))
                .push("m_prime", edges(cert.m_prime.edges()))
                .push("labels", labels);
            highlights.push(EdgeHighlight {
                name: "M'".into(),
                edges: cert.m_prime.edges().to_vec(),
            });
            labeling = Some(&cert.labeling);
        }
        RecognitionOutcome::NotExtremal(reason) => {
            r.push("outcome", "NotExtremal").push("reason", reason.code());
            reason_details(&mut r, reason);
        }
    }
    if let Some(p) = dot {
        write(p, &to_dot(&g, labeling, &highlights).map_err(invalid)?)?;
        r.push("dot", p.display().to_string());
    }
    Ok(r)
}

/// The reason's payload, 1-indexed like everything else in reports.
fn reason_details(r: &mut Report, reason: &NotExtremalReason) {
    match reason {
        NotExtremalReason::NotBipartite { odd_cycle } => {
            r.push("odd_cycle", vertices(odd_cycle));
        }
        NotExtremalReason::NotMaximumMatching { augmenting_path } => {
            r.push("augmenting_path", vertices(augmenting_path));
        }
        NotExtremalReason::MatchingSizeMismatch { m, m_prime } => {
            r.push("size_m", *m).push("size_m_prime", *m_prime);
        }
        NotExtremalReason::BadCycleLength {
            length, vertices: vs, ..
        }
        | NotExtremalReason::BadPathLength {
            length, vertices: vs, ..
        } => {
            r.push("component", vertices(vs)).push("length", *length);
        }
        NotExtremalReason::PathEdgeViolation { edge } => {
            r.push("edge", edges(&[*edge]));
        }
        NotExtremalReason::TwoSatUnsat => {}
    }
}

fn graph_error(e: GraphError) -> CliError {
    match e {
        GraphError::NotBipartite { cycle } => {
            let cycle: Vec<String> = cycle.iter().map(|v| (v + 1).to_string()).collect();
            CliError::Invalid(format!("NotBipartite: odd cycle {}", cycle.join(",")))
        }
        other => invalid(other),
    }
}

fn gadget_error(e: GadgetError) -> CliError {
    match e {
        GadgetError::Exact(e) => e.into(),
        other => invalid(other),
    }
}

pub fn gadget(
    ctx: &Context,
    kind: GadgetArg,
    input: &Path,
    k: Option<usize>,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let inst: GadgetInstance = match kind {
        GadgetArg::Clique | GadgetArg::Cocktail => {
            let f = CnfFormula::parse_dimacs(&read(input)?)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", input.display())))?;
            if kind == GadgetArg::Clique {
                gadget_diss_2alpha(&f)
            } else {
                gadget_diss_alpha(&f)
            }
        }
        GadgetArg::Is => {
            let k = k.ok_or_else(|| CliError::Invalid("gadget is needs -k".into()))?;
            gadget_diss_alpha_plus_nus_with(&read_graph(input)?, k, &ctx.cutoffs)
                .map_err(gadget_error)?
        }
        GadgetArg::Join => gadget_join_kn(&read_graph(input)?, &ctx.cutoffs)
            .map_err(gadget_error)?
            .0,
    };
    let text = inst.render();
    let Some(out) = out else {
        // The instance itself is the output.
        if !ctx.json {
            return Ok(text);
        }
        let mut r = Report::new();
        r.push("instance", text);
        return Ok(r.render(true));
    };
    write(out, &text)?;
    let mut r = Report::new();
    r.push("kind", inst.kind.name())
        .push("n", inst.graph.order())
        .push("m", inst.graph.size())
        .push(format!("source.{}", inst.source.name()), inst.source_answer)
        .push(
            "predictions",
            inst.predicted.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        )
        .push("out", out.display().to_string());
    Ok(r.render(ctx.json))
}
