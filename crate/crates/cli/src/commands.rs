//! One function per subcommand, generic over the backend.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use relhom_core::axioms::theorems::verify_tablecat_corpus;
use relhom_core::axioms::{arrow_names, recheck, AxiomId, Outcome, Status, Universe, Verdict};
use relhom_core::eclass::EClass;
use relhom_core::finab::FinAb;
use relhom_core::fingrp::FinGrp;
use relhom_core::lemmas::{
    exactness, snake, three_by_three, Check, Direction, GridInput, SequenceSpec, SnakeInput, SnakeMode,
};
use relhom_core::pset::PSet;
use relhom_core::tablecat::TableCategory;

use crate::codec::{decode, encode, parse_class, Codec, CliError, CliResult, InputDocument, Shape};
use crate::{Backend, Command, Expect, GridDirection, Mode, Output, Target};

/// Binds `$cat` to the backend's category and evaluates `$body` once per arm.
macro_rules! with_cat {
    ($backend:expr, $table:expr, |$cat:ident| $body:expr) => {
        match $backend {
            Backend::Finab => {
                let $cat = &FinAb;
                $body
            }
            Backend::Fingrp => {
                let $cat = &FinGrp;
                $body
            }
            Backend::Pset => {
                let $cat = &PSet;
                $body
            }
            Backend::Tablecat => {
                let table: TableCategory = $table?;
                let $cat = &table;
                $body
            }
        }
    };
}

pub fn execute(cmd: &Command) -> CliResult<Output> {
    match cmd {
        Command::Check { target, axioms, expect } => {
            let ids = AxiomId::parse_list(axioms)?;
            with_cat!(target.backend, load_table(target), |cat| check(cat, target, &ids, Some(*expect)))
        }
        Command::Search { target, axiom } => {
            let id: AxiomId = axiom.parse()?;
            with_cat!(target.backend, load_table(target), |cat| check(cat, target, &[id], None))
        }
        Command::Snake { input, mode, class } => {
            let doc = load(input, Shape::Snake)?;
            with_cat!(Backend::parse(&doc.backend)?, doc.table(), |cat| run_snake(cat, &doc, class.as_deref(), *mode))
        }
        Command::Grid { input, direction, class } => {
            let doc = load(input, Shape::Grid)?;
            with_cat!(Backend::parse(&doc.backend)?, doc.table(), |cat| run_grid(cat, &doc, class.as_deref(), *direction))
        }
        Command::Exact { input, class } => {
            let doc = load(input, Shape::Sequence)?;
            with_cat!(Backend::parse(&doc.backend)?, doc.table(), |cat| run_exact(cat, &doc, class.as_deref()))
        }
        Command::VerifyTheorems { max_morphisms, .. } => verify_theorems(*max_morphisms),
        Command::Recheck { input } => {
            let doc = load(input, Shape::Witness)?;
            with_cat!(Backend::parse(&doc.backend)?, doc.table(), |cat| run_recheck(cat, &doc))
        }
    }
}

fn load(path: &Path, shape: Shape) -> CliResult<InputDocument> {
    let doc = InputDocument::load(path)?;
    doc.expect_shape(shape)?;
    Ok(doc)
}

fn load_table(target: &Target) -> CliResult<TableCategory> {
    let path = target
        .table
        .as_ref()
        .ok_or_else(|| CliError::input("--table is required for the tablecat backend"))?;
    load(path, Shape::CategoryTable)?.table()
}

fn document_class<C: Codec>(cat: &C, doc: &InputDocument, flag: Option<&str>) -> CliResult<(String, EClass<C>)> {
    let selector = flag.or(doc.class.as_deref()).unwrap_or("regular_epi").to_string();
    let class = parse_class(cat, &selector)?;
    Ok((selector, class))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_line(c: &Check) -> String {
    match &c.reason {
        None => yes_no(c.holds).to_string(),
        Some(r) => format!("{} ({r})", yes_no(c.holds)),
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

/// Re-loadable witness document for a failing configuration.
pub fn witness_document<C: Codec>(cat: &C, selector: &str, v: &Verdict<C::Mor>) -> Option<InputDocument> {
    let w = v.witness.as_ref()?;
    let mut doc = InputDocument::new(cat.backend(), Shape::Witness);
    doc.class = Some(selector.to_string());
    doc.axiom = Some(v.axiom.id().to_string());
    doc.status = Some(v.status.to_string());
    doc.reason = Some(w.reason.clone());
    encode(cat, &mut doc, &w.arrows);
    Some(doc)
}

fn witness_file_name(backend: &str, selector: &str, axiom: AxiomId) -> String {
    let class: String = selector
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '-' })
        .collect();
    format!("{backend}-{class}-{}.json", axiom.id())
}

fn describe_arrows(doc: &InputDocument, out: &mut String) {
    for (name, m) in &doc.morphisms {
        let _ = writeln!(
            out,
            "    {name}: {} -> {}  {}",
            doc.objects[&m.dom],
            doc.objects[&m.cod],
            Value::Object(m.payload.clone())
        );
    }
}

/// `check` (with an expectation) and `search` (without one).
fn check<C: Codec>(cat: &C, target: &Target, axioms: &[AxiomId], expect: Option<Expect>) -> CliResult<Output> {
    let class = parse_class(cat, &target.class)?;
    let universe = Universe::new(cat, &class, target.max_size)?;
    if let Some(dir) = &target.witness_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut text = String::new();
    let _ = writeln!(text, "backend {}, class {}, {}", cat.backend(), class.label(), universe.bound());
    let mut verdicts = vec![];
    let mut all_match = true;
    for &axiom in axioms {
        let v = universe.check(axiom)?;
        let doc = witness_document(cat, &target.class, &v);
        let mut entry = Map::new();
        entry.insert("axiom".into(), axiom.id().into());
        entry.insert("description".into(), axiom.description().into());
        entry.insert("status".into(), to_value(&v.status));
        entry.insert("instances-checked".into(), v.instances_checked.into());
        entry.insert("skipped".into(), v.skipped.into());
        entry.insert("bound".into(), v.bound.clone().into());
        let _ = write!(
            text,
            "{:<10} {:<18} {} instances, {} skipped",
            axiom.id(),
            v.status.to_string(),
            v.instances_checked,
            v.skipped
        );
        if let Some(expect) = expect {
            let matched = match expect {
                Expect::Holds => v.status == Status::HoldsUpToBound,
                Expect::Fails => v.status == Status::Fails,
            };
            all_match &= matched;
            entry.insert("matches-expectation".into(), matched.into());
            if !matched {
                text.push_str("  [unexpected]");
            }
        }
        text.push('\n');
        if let Some(doc) = &doc {
            let _ = writeln!(text, "  witness: {}", doc.reason.as_deref().unwrap_or(""));
            describe_arrows(doc, &mut text);
            if let Some(dir) = &target.witness_dir {
                let path = dir.join(witness_file_name(cat.backend(), &target.class, axiom));
                std::fs::write(&path, doc.to_json() + "\n")
                    .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
                let _ = writeln!(text, "  written to {}", path.display());
            }
            entry.insert("witness".into(), to_value(doc));
        } else if expect.is_none() {
            let _ = writeln!(text, "  none up to bound");
        }
        verdicts.push(Value::Object(entry));
    }
    let mut json = json!({
        "backend": cat.backend(),
        "class": target.class,
        "max-size": target.max_size,
        "verdicts": verdicts,
    });
    if let Some(expect) = expect {
        json["expect"] = format!("{expect:?}").to_lowercase().into();
    }
    Ok(Output {
        text,
        json,
        code: if all_match { 0 } else { 1 },
    })
}

fn run_recheck<C: Codec>(cat: &C, doc: &InputDocument) -> CliResult<Output> {
    let selector = doc
        .class
        .as_deref()
        .ok_or_else(|| CliError::input("class: required in witness documents"))?;
    let class = parse_class(cat, selector)?;
    let axiom: AxiomId = doc
        .axiom
        .as_deref()
        .ok_or_else(|| CliError::input("axiom: required in witness documents"))?
        .parse()?;
    let recorded = doc.status.as_deref().unwrap_or("fails");
    let decoded = decode(cat, doc)?;
    let arrows = arrow_names(axiom)
        .iter()
        .map(|n| decoded.get(n).cloned())
        .collect::<CliResult<Vec<_>>>()?;
    let outcome = recheck(cat, &class, axiom, &arrows)?;
    let (status, reason) = match &outcome {
        Outcome::Holds => ("holds", None),
        Outcome::Fails(r) => ("fails", Some(r.clone())),
        Outcome::Skipped(r) => ("skipped", Some(r.clone())),
        Outcome::Premise(r) => ("premise-not-met", Some(r.clone())),
    };
    let reproduced = status == recorded;
    let reason_matches = reason.as_deref() == doc.reason.as_deref();
    let mut text = format!("axiom {} on the witness: {status}", axiom.id());
    if let Some(r) = &reason {
        let _ = write!(text, " ({r})");
    }
    let _ = writeln!(text, "\nrecorded verdict {recorded}: {}", if reproduced { "reproduced" } else { "NOT reproduced" });
    let json = json!({
        "axiom": axiom.id(),
        "class": selector,
        "recorded": recorded,
        "status": status,
        "reason": reason,
        "reproduced": reproduced,
        "reason-matches": reason_matches,
    });
    Ok(Output {
        text,
        json,
        code: if reproduced { 0 } else { 1 },
    })
}

fn arrow_value<C: Codec>(cat: &C, f: &C::Mor) -> Value {
    let mut m = cat.encode_morphism(f);
    m.insert("dom".into(), cat.encode_object(&cat.dom(f)));
    m.insert("cod".into(), cat.encode_object(&cat.cod(f)));
    Value::Object(m)
}

fn run_snake<C: Codec>(cat: &C, doc: &InputDocument, class: Option<&str>, mode: Mode) -> CliResult<Output> {
    let (selector, class) = document_class(cat, doc, class)?;
    let d = decode(cat, doc)?;
    let s = SnakeInput {
        f: d.get("f")?.clone(),
        g: d.get("g")?.clone(),
        f2: d.get("f'")?.clone(),
        g2: d.get("g'")?.clone(),
        u: d.get("u")?.clone(),
        v: d.get("v")?.clone(),
        w: d.get("w")?.clone(),
    };
    let mode = match mode {
        Mode::Homological => SnakeMode::Homological,
        Mode::Weak => SnakeMode::Weak,
    };
    let r = snake(cat, &s, &class, mode)?;
    let h = &r.hypotheses;
    let mut text = String::new();
    let _ = writeln!(text, "class {}, {} mode", class.label(), to_value(&mode).as_str().unwrap_or(""));
    let _ = writeln!(
        text,
        "hypotheses: g' in E: {}; condition (a): {}; condition (b): {}",
        yes_no(h.g2_in_e),
        check_line(&h.condition_a),
        check_line(&h.condition_b)
    );
    let _ = writeln!(text, "d: Ker(w) -> Coker(u) = {}", cat.payload_text(&r.d));
    let _ = writeln!(text, "six-term sequence Ker(u) -> Ker(v) -> Ker(w) -> Coker(u) -> Coker(v) -> Coker(w):");
    for m in &r.six_term.arrows {
        let _ = writeln!(text, "  {}", arrow_value(cat, m));
    }
    for n in &r.nodes {
        let _ = writeln!(text, "exact at {}: {}", n.node, check_line(&n.check));
    }
    let failures = r.side_conditions.failures();
    if failures.is_empty() {
        let _ = writeln!(text, "side conditions: all hold");
    }
    for (name, why) in &failures {
        let _ = writeln!(text, "side condition {name} fails: {why}");
    }
    let _ = writeln!(text, "naturality of d: not verified");
    let json = json!({
        "class": selector,
        "mode": mode,
        "hypotheses": h,
        "d": arrow_value(cat, &r.d),
        "six-term": r.six_term.arrows.iter().map(|m| arrow_value(cat, m)).collect::<Vec<_>>(),
        "nodes": r.nodes,
        "exact-everywhere": r.exact_everywhere(),
        "side-conditions": r.side_conditions,
        "naturality": "unverified",
    });
    Ok(Output {
        text,
        json,
        code: if r.exact_everywhere() { 0 } else { 1 },
    })
}

fn run_grid<C: Codec>(cat: &C, doc: &InputDocument, class: Option<&str>, direction: GridDirection) -> CliResult<Output> {
    let (selector, class) = document_class(cat, doc, class)?;
    let d = decode(cat, doc)?;
    let get = |n: &str| d.get(n).cloned();
    let s = GridInput {
        f: get("f")?,
        g: get("g")?,
        f2: get("f'")?,
        g2: get("g'")?,
        f3: get("f''")?,
        g3: get("g''")?,
        u: get("u")?,
        u2: get("u'")?,
        v: get("v")?,
        v2: get("v'")?,
        w: get("w")?,
        w2: get("w'")?,
    };
    let direction = match direction {
        GridDirection::FirstFromLast => Direction::FirstFromLast,
        GridDirection::LastFromFirst => Direction::LastFromFirst,
        GridDirection::Both => Direction::Both,
    };
    let r = three_by_three(cat, &s, &class, direction)?;
    let mut text = String::new();
    let _ = writeln!(text, "class {}, direction {}", class.label(), to_value(&direction).as_str().unwrap_or(""));
    let _ = writeln!(text, "first row short E-exact: {}", check_line(&r.first_row));
    let _ = writeln!(text, "last row short E-exact: {}", check_line(&r.last_row));
    let _ = writeln!(text, "<v',g'> in E: {}", check_line(&r.pairing_in_e));
    let _ = writeln!(text, "implication holds: {}", yes_no(r.holds));
    let mut json = to_value(&r);
    json["class"] = selector.into();
    Ok(Output {
        text,
        json,
        code: if r.holds { 0 } else { 1 },
    })
}

fn run_exact<C: Codec>(cat: &C, doc: &InputDocument, class: Option<&str>) -> CliResult<Output> {
    let (selector, class) = document_class(cat, doc, class)?;
    let spec = doc
        .sequence
        .as_ref()
        .ok_or_else(|| CliError::input("sequence: required for shape sequence"))?;
    if spec.arrows.is_empty() {
        return Err(CliError::input("sequence.arrows: must not be empty"));
    }
    let d = decode(cat, doc)?;
    let mut arrows = vec![];
    let mut names = vec![];
    for (i, n) in spec.arrows.iter().enumerate() {
        let entry = doc
            .morphisms
            .get(n)
            .ok_or_else(|| CliError::input(format!("sequence.arrows[{i}]: unknown morphism `{n}`")))?;
        if i == 0 {
            names.push(entry.dom.clone());
        }
        names.push(entry.cod.clone());
        arrows.push(d.get(n)?.clone());
    }
    let zero = cat.zero_object();
    if spec.leading_zero {
        arrows.insert(0, cat.zero_morphism(&zero, &cat.dom(&arrows[0])));
        names.insert(0, "0".into());
    }
    if spec.trailing_zero {
        let last = cat.cod(arrows.last().expect("non-empty"));
        arrows.push(cat.zero_morphism(&last, &zero));
        names.push("0".into());
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let seq = SequenceSpec::named(arrows, &names);
    let nodes = exactness(cat, &seq, &class)?;
    let mut text = format!("class {}\n", class.label());
    for n in &nodes {
        let _ = writeln!(text, "exact at {}: {}", n.node, check_line(&n.check));
    }
    let exact = nodes.iter().all(|n| n.check.holds);
    let json = json!({ "class": selector, "nodes": nodes, "exact-everywhere": exact });
    Ok(Output {
        text,
        json,
        code: if exact { 0 } else { 1 },
    })
}

fn verify_theorems(max_morphisms: usize) -> CliResult<Output> {
    let report = verify_tablecat_corpus(max_morphisms)?;
    let mut text = format!(
        "{} categories with at most {max_morphisms} morphisms, {} with pullbacks, kernels and cokernels, {} (category, class) entries\n",
        report.categories, report.categories_with_limits, report.entries
    );
    for t in &report.tallies {
        let _ = writeln!(
            text,
            "{:<40} antecedent {:>5}  consequent {:>5}  violations {}",
            t.theorem.id(),
            t.antecedent_held,
            t.consequent_held,
            t.violations.len()
        );
        for v in &t.violations {
            let _ = writeln!(text, "  violation: {v}");
        }
    }
    let violations = report.violations();
    let _ = writeln!(text, "total violations: {violations}");
    let mut json = to_value(&report);
    json["violations"] = violations.into();
    Ok(Output {
        text,
        json,
        code: if violations == 0 { 0 } else { 1 },
    })
}
