use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use dhdecomp::audit::audit_lemma_properties;
use dhdecomp::decomp::{Subject, Verdict, Violation};
use dhdecomp::degeneracy::orientation_from_order;
use dhdecomp::discharge::{discharge, final_charge_report};
use dhdecomp::format::{
    decomposition_value, egf_value, parse_decomposition, parse_input, to_dot, FormatError, Input as Parsed, Labels,
};
use dhdecomp::generators::{generate, GeneratorSpec};
use dhdecomp::patterns::{
    find_cycle_of_length, find_light_3vertices, find_minor_3vertices, forbidden_catalog, forbidden_witness,
    match_pattern, reducible_catalog, DegreeConstraint,
};
use dhdecomp::reductions::{find_reduction, rule_by_id, solve_constructive, SolveError, SolveOptions, SCAN_ORDER};
use dhdecomp::{
    degeneracy, euler_characteristic, face_trace, solve_exact, verify_decomposition, Decomposition, EmbeddedGraph,
    Error as CoreError,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::render::Render;
use crate::{Command, Family, Input, Method};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    /// A well-formed input whose answer is negative; reported as JSON with exit status 2.
    #[error("{message}")]
    Domain { message: String, detail: Value },
    /// `--each` run where some file did not succeed; `results` is still printed.
    #[error("{failed} of the inputs did not succeed")]
    Batch { results: Value, failed: usize, code: u8 },
}

impl CliError {
    fn domain(message: impl Into<String>, detail: Value) -> Self {
        CliError::Domain { message: message.into(), detail }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain { .. } => 2,
            CliError::Batch { code, .. } => *code,
            _ => 1,
        }
    }
}

type Outcome = Result<Value, CliError>;

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Faces { input, dot } => per_input(input, |p| faces(p, dot.as_deref())),
        Command::Degeneracy { input } => per_input(input, degeneracy_cmd),
        Command::Decompose { input, d, h, method, trace, fallback_edges, no_fallback, dot } => {
            let options = SolveOptions { fallback_edge_limit: (!no_fallback).then_some(*fallback_edges) };
            per_input(input, |p| decompose(p, *d, *h, *method, *trace, options, dot.as_deref()))
        }
        Command::Verify { input, decomposition } => {
            let text = read_file(decomposition)?;
            per_input(input, |p| verify(p, &text))
        }
        Command::Detect { input, dot } => per_input(input, |p| detect(p, dot.as_deref())),
        Command::Member { input, i, j } => per_input(input, |p| member(p, *i, *j)),
        Command::Discharge { input } => per_input(input, discharge_cmd),
        Command::Audit { input } => per_input(input, audit),
        Command::Gen { family, m, n, avg_degree, seed } => gen(*family, *m, *n, *avg_degree, *seed),
        Command::Catalog { dump } => Ok(catalog(*dump)),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn read_source(file: Option<&Path>) -> Result<String, CliError> {
    match file {
        Some(p) if p != Path::new("-") => read_file(p),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(text)
        }
    }
}

/// Runs `f` on the single input, or on every regular file of `--each DIR` in
/// name order. A batch always prints its collected results; its exit status
/// is the worst of the per-file statuses.
fn per_input(input: &Input, f: impl Fn(&Parsed) -> Outcome) -> Outcome {
    let Some(dir) = &input.each else {
        let parsed = parse_input(&read_source(input.file.as_deref())?)?;
        return f(&parsed);
    };
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let mut files: Vec<PathBuf> = entries.filter_map(|e| e.ok()).map(|e| e.path()).filter(|p| p.is_file()).collect();
    files.sort();
    let mut results = Map::new();
    let mut worst = 0;
    let mut failed = 0;
    for path in files {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let outcome = read_file(&path).and_then(|text| Ok(parse_input(&text)?)).and_then(|p| f(&p));
        let entry = match outcome {
            Ok(value) => json!({ "status": 0, "result": value }),
            Err(e) => {
                worst = worst.max(e.exit_code());
                failed += 1;
                match e {
                    CliError::Domain { message, detail } => json!({ "status": 2, "error": message, "detail": detail }),
                    other => json!({ "status": other.exit_code(), "error": other.to_string() }),
                }
            }
        };
        results.insert(name, entry);
    }
    match failed {
        0 => Ok(Value::Object(results)),
        _ => Err(CliError::Batch { results: Value::Object(results), failed, code: worst }),
    }
}

fn embedding<'a>(p: &'a Parsed, command: &str) -> Result<&'a EmbeddedGraph, CliError> {
    p.embedding.as_ref().ok_or_else(|| {
        CliError::Usage(format!("{command} needs a rotation system; graph6 input has none, supply EGF instead"))
    })
}

fn write_dot(path: Option<&Path>, text: impl FnOnce() -> String) -> Result<(), CliError> {
    if let Some(path) = path {
        fs::write(path, text()).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    Ok(())
}

fn faces(p: &Parsed, dot: Option<&Path>) -> Outcome {
    let eg = embedding(p, "faces")?;
    let r = Render { labels: &p.labels };
    let faces = face_trace(eg);
    let chi = match euler_characteristic(eg) {
        Ok(chi) => Some(chi),
        Err(CoreError::Disconnected | CoreError::EmptyGraph) => None,
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    write_dot(dot, || to_dot(eg.graph(), &p.labels, None, &BTreeSet::new()))?;
    Ok(json!({
        "vertices": eg.graph().vertex_count(),
        "edges": eg.graph().edge_count(),
        "face_count": faces.len(),
        "faces": faces.iter().map(|f| r.face(f)).collect::<Vec<_>>(),
        "connected": chi.is_some(),
        "euler_characteristic": chi,
    }))
}

fn degeneracy_cmd(p: &Parsed) -> Outcome {
    let r = Render { labels: &p.labels };
    let (k, order) = degeneracy(&p.graph);
    let orientation = orientation_from_order(&p.graph, &order);
    Ok(json!({
        "degeneracy": k,
        "order": r.vertices(order.order.iter().copied()),
        "arcs": orientation.arcs().map(|a| json!([r.vertex(a.tail), r.vertex(a.head)])).collect::<Vec<_>>(),
        "max_out_degree": orientation.max_out_degree(),
    }))
}

fn decompose(
    p: &Parsed,
    d: usize,
    h: usize,
    method: Method,
    trace: bool,
    options: SolveOptions,
    dot: Option<&Path>,
) -> Outcome {
    let r = Render { labels: &p.labels };
    let (dec, extra) = match method {
        Method::Exact => {
            let dec = solve_exact(&p.graph, d, h).ok_or_else(|| {
                CliError::domain(format!("graph has no ({d},{h})-decomposition"), json!({ "decomposable": false, "d": d, "h": h }))
            })?;
            (dec, json!({ "method": "exact" }))
        }
        Method::Constructive => {
            if (d, h) != (2, 1) {
                return Err(CliError::Usage(format!(
                    "the constructive method builds (2,1)-decompositions only, got ({d},{h})"
                )));
            }
            let eg = embedding(p, "decompose --method constructive")?;
            let out = solve_constructive(eg, options).map_err(|e| solve_error(&r, e))?;
            if trace {
                let steps: Vec<Value> = out.trace.iter().map(|s| r.trace_step(s)).collect();
                eprintln!("{}", serde_json::to_string_pretty(&steps).expect("JSON output"));
            }
            let extra = json!({
                "method": "constructive",
                "steps": out.trace.len(),
                "used_fallback": out.used_fallback(),
            });
            (out.decomposition, extra)
        }
    };
    write_dot(dot, || to_dot(&p.graph, &p.labels, Some(&dec), &BTreeSet::new()))?;
    let mut value = decomposition_value(&dec, &p.labels);
    if let (Some(obj), Some(extra)) = (value.as_object_mut(), extra.as_object()) {
        obj.extend(extra.clone());
    }
    Ok(value)
}

fn solve_error(r: &Render, e: SolveError) -> CliError {
    let message = e.to_string();
    match e {
        SolveError::Forbidden(w) => {
            let detail = r.catalog_witness(&w, &forbidden_catalog()[w.index]);
            CliError::domain(message, json!({ "forbidden": detail }))
        }
        SolveError::Stuck(rest) | SolveError::NotDecomposable(rest) => {
            let remainder: Vec<Value> = rest.graph().edges().map(|e| r.edge(e)).collect();
            CliError::domain(message, json!({ "remainder_edges": remainder }))
        }
        SolveError::Core(e) => CliError::domain(message, json!({ "internal": e.to_string() })),
    }
}

fn violation(r: &Render, dec: &Decomposition, v: &Violation) -> Value {
    let (subject, detail) = match v.subject {
        Subject::Vertex(x) => {
            let label = p_label(r, x);
            let detail = match v.clause {
                dhdecomp::decomp::Clause::OutDegree => {
                    format!("vertex {label} has out-degree {}, limit {}", dec.orientation.out_degree(x), dec.d)
                }
                _ => {
                    let k = dec.h_edges.iter().filter(|e| e.lo() == x || e.hi() == x).count();
                    format!("vertex {label} has {k} H-edges, limit {}", dec.h)
                }
            };
            (json!({ "vertex": r.vertex(x) }), detail)
        }
        Subject::Edge(e) => {
            let name = format!("{}-{}", p_label(r, e.lo()), p_label(r, e.hi()));
            let detail = if dec.h_edges.contains(&e) {
                format!("edge {name} is both in H and oriented")
            } else {
                format!("edge {name} is neither in H nor oriented")
            };
            (json!({ "edge": r.edge(e) }), detail)
        }
        Subject::Orientation => (Value::Null, v.detail.clone()),
    };
    json!({ "clause": v.clause.to_string(), "subject": subject, "detail": detail })
}

fn p_label(r: &Render, v: dhdecomp::Vertex) -> String {
    r.labels.label(v).to_string()
}

fn verify(p: &Parsed, text: &str) -> Outcome {
    let r = Render { labels: &p.labels };
    let dec = parse_decomposition(text, &p.labels)?;
    let verdict: Verdict = verify_decomposition(&p.graph, &dec).map_err(|e| match e {
        CoreError::EdgeNotInGraph(edge) => CliError::domain(
            format!("edge {}-{} is not an edge of the graph", p_label(&r, edge.lo()), p_label(&r, edge.hi())),
            json!({ "valid": false }),
        ),
        other => CliError::Usage(other.to_string()),
    })?;
    let violations: Vec<Value> = verdict.violations.iter().map(|v| violation(&r, &dec, v)).collect();
    if verdict.is_valid() {
        Ok(json!({ "valid": true, "violations": violations }))
    } else {
        let first = violations[0]["clause"].as_str().unwrap_or_default().to_string();
        Err(CliError::domain(
            format!("decomposition violates the {first} clause"),
            json!({ "valid": false, "violations": violations }),
        ))
    }
}

fn detect(p: &Parsed, dot: Option<&Path>) -> Outcome {
    let r = Render { labels: &p.labels };
    let mut highlight = BTreeSet::new();
    let forbidden = forbidden_witness(&p.graph).map(|w| {
        highlight.extend(w.witness.mapping.iter().copied());
        r.catalog_witness(&w, &forbidden_catalog()[w.index])
    });
    let reducible: Vec<Value> = reducible_catalog()
        .iter()
        .filter_map(|pat| {
            match_pattern(&p.graph, pat)
                .map(|w| json!({ "configuration": pat.name, "mapping": r.mapping(&pat.labels, &w.mapping) }))
        })
        .collect();
    let mut value = json!({
        "forbidden_free": forbidden.is_none(),
        "forbidden": forbidden,
        "reducible": reducible,
    });
    if let Some(eg) = &p.embedding {
        let reduction = find_reduction(eg).map(|m| {
            json!({
                "rule": m.rule.to_string(),
                "recipe": m.recipe().name,
                "labeling": Value::Object(m.labeling.iter().map(|(l, v)| (l.to_string(), r.vertex(*v))).collect()),
            })
        });
        let obj = value.as_object_mut().expect("object");
        obj.insert("light_3vertices".into(), r.vertices(find_light_3vertices(eg)));
        obj.insert("minor_3vertices".into(), r.vertices(find_minor_3vertices(eg)));
        obj.insert("reduction".into(), reduction.unwrap_or(Value::Null));
    }
    write_dot(dot, || to_dot(&p.graph, &p.labels, None, &highlight))?;
    Ok(value)
}

fn member(p: &Parsed, i: usize, j: usize) -> Outcome {
    let r = Render { labels: &p.labels };
    let usage = |e: CoreError| CliError::Usage(e.to_string());
    let cycle = match find_cycle_of_length(&p.graph, i).map_err(usage)? {
        Some(c) => Some((i, c)),
        None => find_cycle_of_length(&p.graph, j).map_err(usage)?.map(|c| (j, c)),
    };
    Ok(json!({
        "member": cycle.is_none(),
        "i": i,
        "j": j,
        "cycle": cycle.map(|(k, c)| json!({ "length": k, "vertices": r.vertices(c) })),
    }))
}

fn discharge_cmd(p: &Parsed) -> Outcome {
    let eg = embedding(p, "discharge")?;
    let ledger = discharge(eg);
    let report = final_charge_report(&ledger);
    let mut value = Render { labels: &p.labels }.discharge(&ledger, &report);
    value["euler_characteristic"] = json!(euler_characteristic(eg).ok());
    Ok(value)
}

fn audit(p: &Parsed) -> Outcome {
    let eg = embedding(p, "audit")?;
    Ok(Render { labels: &p.labels }.audit(&audit_lemma_properties(eg)))
}

fn gen(family: Family, m: Option<usize>, n: Option<usize>, avg_degree: f64, seed: u64) -> Outcome {
    let need = |name: &str, x: Option<usize>| x.ok_or_else(|| CliError::Usage(format!("--{name} is required for this family")));
    let spec = match family {
        Family::TorusGrid => GeneratorSpec::TorusGrid { m: need("m", m)?, n: need("n", n)? },
        Family::HoneycombTorus => GeneratorSpec::HoneycombTorus { m: need("m", m)?, n: need("n", n)? },
        Family::RandomRotation => GeneratorSpec::RandomRotation { n: need("n", n)?, avg_degree, seed },
        Family::Cycle => GeneratorSpec::Cycle { n: need("n", n)? },
        Family::Complete => GeneratorSpec::Complete { n: need("n", n)? },
    };
    let eg = generate(&spec).map_err(|e| CliError::domain(e.to_string(), json!({ "generator": spec })))?;
    let mut value = egf_value(&eg, &Labels::numeric(eg.graph().vertex_count()));
    value["generator"] = serde_json::to_value(&spec).expect("spec serializes");
    value["seed"] = json!(seed);
    Ok(value)
}

fn constraint(c: DegreeConstraint) -> Value {
    match c {
        DegreeConstraint::Any => Value::Null,
        DegreeConstraint::Exact(k) => json!(k.to_string()),
        DegreeConstraint::AtLeast(k) => json!(format!(">={k}")),
        DegreeConstraint::AtMost(k) => json!(format!("<={k}")),
    }
}

fn catalog(dump: bool) -> Value {
    let pattern = |pat: &dhdecomp::patterns::Pattern| {
        let mut v = json!({ "name": pat.name, "vertices": pat.len(), "edges": pat.skeleton.edge_count() });
        if dump {
            let label = |x: dhdecomp::Vertex| pat.labels[x.0 as usize];
            v["labels"] = json!(pat.labels);
            v["skeleton"] = json!(pat.skeleton.edges().map(|e| [label(e.lo()), label(e.hi())]).collect::<Vec<_>>());
            v["degrees"] = Value::Object(
                pat.labels.iter().zip(&pat.constraints).map(|(l, c)| (l.to_string(), constraint(*c))).collect(),
            );
        }
        v
    };
    let rules: Vec<Value> = SCAN_ORDER
        .iter()
        .map(|&id| {
            let rule = rule_by_id(id);
            let recipes: Vec<Value> = rule
                .recipes
                .iter()
                .map(|rc| {
                    if !dump {
                        return json!(rc.name);
                    }
                    let pairs = |es: &[(usize, usize)]| es.iter().map(|&(a, b)| [rc.labels[a], rc.labels[b]]).collect::<Vec<_>>();
                    json!({
                        "name": rc.name,
                        "labels": rc.labels,
                        "roles": rc.roles,
                        "degrees": rc.degrees.iter().map(|c| constraint(*c)).collect::<Vec<_>>(),
                        "skeleton": pairs(&rc.skeleton),
                        "H": pairs(&rc.h_edges),
                        "arcs": pairs(&rc.arcs),
                    })
                })
                .collect();
            json!({ "rule": rule.id.to_string(), "recipes": recipes })
        })
        .collect();
    json!({
        "forbidden": forbidden_catalog().iter().map(&pattern).collect::<Vec<_>>(),
        "reducible": reducible_catalog().iter().map(&pattern).collect::<Vec<_>>(),
        "rules": rules,
    })
}
