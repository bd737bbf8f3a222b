use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{Command, ComplexArgs, Format, InputError, Report};
use crate::complex::{build_salvetti, check_special, DefiningGraph, QuotientComplex};
use crate::isometries::{
    build_a0, deck_generators, extract_portrait, fixes_ball, make_a_v_tau, peel, Isometry, PeelError,
};
use crate::labeling::{construct_labeling, verify_labeling, CandidateLabeling, LabelingError, Sym};
use crate::portraits::{
    enumerate_candidate_taus, extend_red_to_edge, solve_extension, validate_cubical, validate_red,
    CubicalPortrait, ExtendError, LocalMap, Obstruction, PortraitFile, Seed, SeedFile, SolveError,
    SolverOptions, ValueOrder,
};
use crate::selfsim::{build_edge_automaton, build_red_automaton, describe_red_state};
use crate::space::Space;
use crate::words::{classify_type, endpoint, normal_form, reduce, same_endpoint, VertexType, Word};

type CmdResult = Result<Report, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<QuotientComplex, InputError> {
    QuotientComplex::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_space(args: &ComplexArgs) -> Result<Arc<Space>, InputError> {
    let space = Space::new(load_complex(&args.complex)?)?;
    match &args.order {
        Some(order) => Ok(space.reordered(order)?),
        None => Ok(space),
    }
}

fn load_target(source: &Arc<Space>, target: &Option<std::path::PathBuf>) -> Result<Arc<Space>, InputError> {
    match target {
        Some(path) => Ok(Space::new(load_complex(path)?)?),
        None => Ok(source.clone()),
    }
}

fn load_portrait(source: &Arc<Space>, target: &Arc<Space>, path: &Path) -> Result<CubicalPortrait, InputError> {
    let file: PortraitFile = serde_json::from_str(&read(path)?)?;
    Ok(file.to_portrait(source, target)?)
}

fn portrait_json(p: &CubicalPortrait) -> Value {
    serde_json::to_value(PortraitFile::from_portrait(p)).expect("json")
}

fn pretty(v: &impl serde::Serialize) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json"))
}

fn obstruction_report(space: &Space, ob: &Obstruction) -> Report {
    let line = ob.describe(space);
    Report::finding(
        format!("obstruction: {line}\n"),
        json!({ "obstruction": { "kind": ob.kind.to_string(), "vertex": space.format_word(&ob.vertex), "detail": line } }),
    )
}

fn tau_pairs(space: &Space, tau: &LocalMap) -> Vec<[String; 2]> {
    let alpha = space.alphabet();
    tau.iter()
        .enumerate()
        .filter_map(|(k, t)| t.map(|t| [alpha.name(Sym(k as u8)).to_string(), alpha.name(t).to_string()]))
        .collect()
}

fn format_pairs(pairs: &[[String; 2]]) -> String {
    let parts: Vec<String> = pairs.iter().map(|[s, t]| format!("{s}->{t}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `s=t` pairs on top of the identity at the endpoint of `v`.
fn parse_tau(space: &Space, v: &[Sym], text: &str) -> Result<LocalMap, InputError> {
    let x = endpoint(space, v)?;
    let mut tau: LocalMap = vec![None; space.alphabet().len()];
    for s in space.sigma(x.quotient_vertex).iter() {
        tau[s.index()] = Some(s);
    }
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (s, t) = pair
            .split_once('=')
            .ok_or_else(|| InputError(format!("bad tau entry `{pair}`, expected s=t")))?;
        let s = space.parse_symbol(s.trim())?;
        if tau[s.index()].is_none() {
            return Err(InputError(format!("label `{}` does not leave the vertex", space.alphabet().name(s))));
        }
        tau[s.index()] = Some(space.parse_symbol(t.trim())?);
    }
    Ok(tau)
}

fn parse_search(text: &str) -> Result<ValueOrder, InputError> {
    match text {
        "canonical" => Ok(ValueOrder::Canonical),
        _ => text
            .strip_prefix("random:")
            .and_then(|n| n.parse().ok())
            .map(ValueOrder::Random)
            .ok_or_else(|| InputError(format!("bad search order `{text}`, expected canonical or random:<seed>"))),
    }
}

pub(super) fn execute(command: &Command) -> CmdResult {
    match command {
        Command::Validate(c) => validate(c),
        Command::Salvetti { graph } => salvetti(graph),
        Command::Special(c) => special(c),
        Command::Label { c, labeling, format } => label(c, labeling.as_deref(), *format),
        Command::AutomatonEdge { c, format } => automaton(c, false, *format),
        Command::AutomatonRed { c, format } => automaton(c, true, *format),
        Command::Enumerate { c, depth, edge } => enumerate(c, *depth, *edge),
        Command::Reduce { c, word } => word_op(c, word, WordOp::Reduce),
        Command::Nf { c, word } => word_op(c, word, WordOp::NormalForm),
        Command::Endpoint { c, word } => word_op(c, word, WordOp::Endpoint),
        Command::SameEndpoint { c, word, other } => same(c, word, other),
        Command::Type { c, v, w } => vertex_type(c, v, w),
        Command::Ball { c, depth } => ball(c, *depth),
        Command::PortraitValidate {
            c,
            portrait,
            target,
            depth,
            reduced,
        } => portrait_validate(c, portrait, target, *depth, *reduced),
        Command::PortraitExtend {
            c,
            portrait,
            target,
            depth,
        } => portrait_extend(c, portrait, target, *depth),
        Command::Solve {
            c,
            seed,
            target,
            depth,
            search,
        } => solve(c, seed.as_deref(), target, *depth, search),
        Command::Taus { c, v } => taus(c, v),
        Command::MakeA { c, v, tau, depth } => make_a(c, v, tau, *depth),
        Command::Peel { c, portrait, n, depth } => peel_cmd(c, portrait, *n, *depth),
        Command::Generators(c) => generators(c),
        Command::A0 { c, depth } => a0(c, *depth),
    }
}

fn validate(args: &ComplexArgs) -> CmdResult {
    let c = load_complex(&args.complex)?;
    let text = format!(
        "valid: true\nvertices: {}\noriented edges: {}\nsquares: {}\n",
        c.vertex_count(),
        c.edge_count(),
        c.square_count()
    );
    Ok(Report::ok(
        text,
        json!({ "valid": true, "vertices": c.vertex_count(), "oriented_edges": c.edge_count(), "squares": c.square_count() }),
    ))
}

fn salvetti(path: &Path) -> CmdResult {
    let graph = DefiningGraph::from_json(&read(path)?)?;
    let c = build_salvetti(&graph)?;
    let raw = c.to_raw();
    let mut text = raw.to_json();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Report::ok(text, serde_json::to_value(&raw)?))
}

fn special(args: &ComplexArgs) -> CmdResult {
    let c = load_complex(&args.complex)?;
    let report = check_special(&c);
    let witnesses = report.describe(&c);
    let mut text = format!("special: {}\n", report.is_special);
    for w in &witnesses {
        let _ = writeln!(text, "{w}");
    }
    let body = json!({ "special": report.is_special, "witnesses": witnesses });
    Ok(match report.is_special {
        true => Report::ok(text, body),
        false => Report::finding(text, body),
    })
}

fn label(args: &ComplexArgs, candidate: Option<&Path>, format: Format) -> CmdResult {
    let c = load_complex(&args.complex)?;
    if let Some(path) = candidate {
        let cand = CandidateLabeling::from_json(&c, &read(path)?)?;
        let report = verify_labeling(&c, &cand);
        return Ok(match report.first() {
            None => Report::ok("labeling: valid\n".into(), json!({ "valid": true })),
            Some(v) => {
                let line = v.describe(&c, &cand);
                Report::finding(
                    format!("labeling: invalid\n{line}\n"),
                    json!({ "valid": false, "property": v.property(), "violation": line }),
                )
            }
        });
    }
    let labeling = match construct_labeling(&c) {
        Ok(l) => l,
        Err(LabelingError::NotSpecial(report)) => {
            let witnesses = report.describe(&c);
            let mut text = String::from("labeling: none (complex is not special)\n");
            for w in &witnesses {
                let _ = writeln!(text, "{w}");
            }
            return Ok(Report::finding(text, json!({ "special": false, "witnesses": witnesses })));
        }
        Err(e) => return Err(e.into()),
    };
    let labeling = match &args.order {
        Some(order) => labeling.reordered(&c, order)?,
        None => labeling,
    };
    let text = match format {
        Format::Text => labeling.table(&c),
        Format::Dot => labeling.alphabet().commutation_dot(),
    };
    let cand = labeling.to_candidate();
    let edges: Vec<Value> = c
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| json!({ "edge": edge.id, "label": cand.symbols[cand.label[e]] }))
        .collect();
    Ok(Report::ok(text, json!({ "symbols": labeling.alphabet().names(), "edges": edges })))
}

fn automaton(args: &ComplexArgs, red: bool, format: Format) -> CmdResult {
    let space = load_space(args)?;
    let (text, states) = if red {
        let a = build_red_automaton(&space);
        let label = |st: &_| describe_red_state(&space, st);
        let text = match format {
            Format::Text => a.transition_dump(label),
            Format::Dot => a.to_dot("red", label),
        };
        (text, a.state_count())
    } else {
        let a = build_edge_automaton(&space);
        let label = |p: &usize| space.complex().vertex_name(*p).to_string();
        let text = match format {
            Format::Text => a.transition_dump(label),
            Format::Dot => a.to_dot("edge", label),
        };
        (text, a.state_count())
    };
    Ok(Report::ok(text.clone(), json!({ "states": states, "text": text })))
}

fn enumerate(args: &ComplexArgs, depth: usize, edge: bool) -> CmdResult {
    let space = load_space(args)?;
    let layers = match edge {
        true => build_edge_automaton(&space).enumerate_words(depth),
        false => build_red_automaton(&space).enumerate_words(depth),
    };
    let mut text = String::new();
    let mut body = Vec::new();
    for (n, words) in layers.iter().enumerate() {
        let names: Vec<String> = words.iter().map(|w| space.format_word(w)).collect();
        let _ = writeln!(text, "length {n}: {}", names.len());
        for w in &names {
            let _ = writeln!(text, "  {w}");
        }
        body.push(json!({ "length": n, "count": names.len(), "words": names }));
    }
    Ok(Report::ok(text, json!({ "layers": body })))
}

enum WordOp {
    Reduce,
    NormalForm,
    Endpoint,
}

fn word_op(args: &ComplexArgs, word: &str, op: WordOp) -> CmdResult {
    let space = load_space(args)?;
    let w = space.parse_word(word)?;
    let alpha = space.alphabet();
    Ok(match op {
        WordOp::Reduce => {
            let r = space.format_word(&reduce(alpha, &w));
            Report::ok(format!("{r}\n"), json!({ "reduced": r }))
        }
        WordOp::NormalForm => {
            let r = space.format_word(&normal_form(alpha, &w)?);
            Report::ok(format!("{r}\n"), json!({ "normal_form": r }))
        }
        WordOp::Endpoint => {
            let x = endpoint(&space, &w)?;
            let nf = space.format_word(&x.normal_form);
            let p = space.complex().vertex_name(x.quotient_vertex).to_string();
            Report::ok(
                format!("normal form: {nf}\nvertex: {p}\n"),
                json!({ "normal_form": nf, "vertex": p }),
            )
        }
    })
}

fn same(args: &ComplexArgs, word: &str, other: &str) -> CmdResult {
    let space = load_space(args)?;
    let same = same_endpoint(&space, &space.parse_word(word)?, &space.parse_word(other)?)?;
    Ok(Report::ok(format!("same endpoint: {same}\n"), json!({ "same_endpoint": same })))
}

fn vertex_type(args: &ComplexArgs, v: &str, w: &str) -> CmdResult {
    let space = load_space(args)?;
    let t = classify_type(&space, &space.parse_word(v)?, &space.parse_word(w)?)?;
    let n = match t {
        VertexType::Type1 => 1,
        VertexType::Type2 => 2,
        VertexType::Type3 => 3,
    };
    Ok(Report::ok(format!("type: {n}\n"), json!({ "type": n })))
}

fn ball(args: &ComplexArgs, depth: usize) -> CmdResult {
    let space = load_space(args)?;
    let b = space.ball(depth);
    let mut text = format!("vertices: {}\n", b.len());
    let mut rows = Vec::new();
    for (i, x) in b.vertices().iter().enumerate() {
        let nf = space.format_word(&x.normal_form);
        let p = space.complex().vertex_name(x.quotient_vertex).to_string();
        let red: Vec<&str> = b.red(i).iter().map(|s| space.alphabet().name(s)).collect();
        let _ = writeln!(text, "{}\t{nf}\t{p}\t{{{}}}", b.dist(i), red.join(", "));
        rows.push(json!({ "distance": b.dist(i), "normal_form": nf, "vertex": p, "red": red }));
    }
    Ok(Report::ok(text, json!({ "vertices": rows })))
}

fn portrait_validate(
    args: &ComplexArgs,
    path: &Path,
    target: &Option<std::path::PathBuf>,
    depth: usize,
    reduced: bool,
) -> CmdResult {
    let source = load_space(args)?;
    let target = load_target(&source, target)?;
    let p = load_portrait(&source, &target, path)?;
    let result = match reduced {
        true => validate_red(&p, depth),
        false => validate_cubical(&p, depth),
    };
    Ok(match result {
        Ok(()) => Report::ok("valid: true\n".into(), json!({ "valid": true })),
        Err(ob) => {
            let mut r = obstruction_report(&source, &ob);
            r.text = format!("valid: false\n{}", r.text);
            r.json["valid"] = json!(false);
            r
        }
    })
}

fn portrait_extend(
    args: &ComplexArgs,
    path: &Path,
    target: &Option<std::path::PathBuf>,
    depth: usize,
) -> CmdResult {
    let source = load_space(args)?;
    let target = load_target(&source, target)?;
    let p = load_portrait(&source, &target, path)?;
    Ok(match extend_red_to_edge(&p, depth) {
        Ok(q) => {
            let body = portrait_json(&q);
            Report::ok(pretty(&body), body)
        }
        Err(ExtendError::RedValidationFailed(ob)) | Err(ExtendError::EdgeValidationFailed(ob)) => {
            obstruction_report(&source, &ob)
        }
    })
}

fn solve(
    args: &ComplexArgs,
    seed: Option<&Path>,
    target: &Option<std::path::PathBuf>,
    depth: usize,
    search: &str,
) -> CmdResult {
    let source = load_space(args)?;
    let target = load_target(&source, target)?;
    let options = SolverOptions {
        order: parse_search(search)?,
        ..Default::default()
    };
    let (root, seed) = match seed {
        Some(path) => {
            let file: SeedFile = serde_json::from_str(&read(path)?)?;
            let root = match &file.root {
                Some(r) => endpoint(&target, &target.parse_word(r)?)?.normal_form,
                None => Word::empty(),
            };
            (root, file.to_seed(&source, &target)?)
        }
        None => (Word::empty(), Seed::default()),
    };
    match solve_extension(&source, &target, &root, &seed, depth, options) {
        Ok(p) => {
            let body = portrait_json(&p);
            Ok(Report::ok(pretty(&body), body))
        }
        Err(SolveError::Obstructed(ob)) => Ok(obstruction_report(&source, &ob)),
        Err(e @ SolveError::SearchBudgetExceeded { .. }) => Ok(Report::finding(
            format!("search: {e}\n"),
            json!({ "budget_exceeded": e.to_string() }),
        )),
        Err(e) => Err(e.into()),
    }
}

fn taus(args: &ComplexArgs, v: &str) -> CmdResult {
    let space = load_space(args)?;
    let taus = enumerate_candidate_taus(&space, &space.parse_word(v)?)?;
    let pairs: Vec<Vec<[String; 2]>> = taus.iter().map(|t| tau_pairs(&space, t)).collect();
    let mut text = format!("candidates: {}\n", pairs.len());
    for p in &pairs {
        let _ = writeln!(text, "{}", format_pairs(p));
    }
    Ok(Report::ok(text, json!({ "candidates": pairs })))
}

fn make_a(args: &ComplexArgs, v: &str, tau: &str, depth: usize) -> CmdResult {
    let space = load_space(args)?;
    let v = space.parse_word(v)?;
    let tau = parse_tau(&space, &v, tau)?;
    Ok(match make_a_v_tau(&space, &v, &tau, depth, SolverOptions::default()) {
        Ok(g) => {
            let body = portrait_json(&extract_portrait(&g, depth)?);
            Report::ok(pretty(&body), body)
        }
        Err(e) => Report::finding(format!("obstructed: {e}\n"), json!({ "obstructed": e.to_string() })),
    })
}

fn peel_cmd(args: &ComplexArgs, path: &Path, n: usize, depth: usize) -> CmdResult {
    let space = load_space(args)?;
    let g = Isometry::from_portrait(load_portrait(&space, &space, path)?);
    let peeled = match peel(&g, n, depth, SolverOptions::default()) {
        Ok(p) => p,
        Err(e @ (PeelError::NotFixing(_) | PeelError::GeneratorSynthesisFailed { .. })) => {
            return Ok(Report::finding(format!("peel failed: {e}\n"), json!({ "error": e.to_string() })))
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("factors: {}\n", peeled.factors.len());
    let mut factors = Vec::new();
    for (v, tau, _) in &peeled.factors {
        let pairs = tau_pairs(&space, tau);
        let _ = writeln!(text, "{}\t{}", space.format_word(v), format_pairs(&pairs));
        factors.push(json!({ "vertex": space.format_word(v), "tau": pairs }));
    }
    let fixes = fixes_ball(&peeled.residual, n + 1)?;
    let _ = writeln!(text, "residual fixes ball {}: {fixes}", n + 1);
    let body = json!({ "factors": factors, "residual_fixes_next_ball": fixes });
    Ok(match fixes {
        true => Report::ok(text, body),
        false => Report::finding(text, body),
    })
}

fn generators(args: &ComplexArgs) -> CmdResult {
    let space = load_space(args)?;
    let gens: Vec<String> = deck_generators(&space).iter().map(|u| space.format_word(u)).collect();
    let mut text = String::new();
    for g in &gens {
        let _ = writeln!(text, "{g}");
    }
    Ok(Report::ok(text, json!({ "deck_generators": gens })))
}

fn a0(args: &ComplexArgs, depth: usize) -> CmdResult {
    let space = load_space(args)?;
    let set = build_a0(&space, depth, SolverOptions::default());
    let body = serde_json::to_value(&set.manifest)?;
    Ok(Report::ok(pretty(&set.manifest), body))
}
