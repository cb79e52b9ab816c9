use std::fs;
use std::io::Write;
use std::path::Path;

use conacc_core::decide::{
    conjecture_sweep, defines_property, distinguishing_formula, find_countermodel, sat_bounded, Report,
};
use conacc_core::kripke::io::{model_from_json, pointed_model_from_json, ModelFile};
use conacc_core::kripke::{eval, mirror_reduction, reflexive_closure, reflexivize_dead_ends, truth_set};
use conacc_core::proof::{builtin_corpus, check_proof, corpus_entry, Proof};
use conacc_core::suite::{run_suite, suite_passed};
use conacc_core::syntax::{atoms, desugar, metrics, parse, render, render_unicode, Formula};
use conacc_core::translate::{reduce_announcements, to_diamond};
use serde_json::{json, Value};

use super::{Command, FormulaInput, FrameOp};

/// Buffered output in either mode.
pub struct Output {
    machine: bool,
    buf: String,
}

impl Output {
    pub fn new(machine: bool) -> Output {
        Output {
            machine,
            buf: String::new(),
        }
    }

    fn emit(&mut self, human: impl FnOnce() -> String, machine: impl FnOnce() -> Value) {
        if self.machine {
            self.buf.push_str(&machine().to_string());
            self.buf.push('\n');
        } else {
            let text = human();
            self.buf.push_str(&text);
            if !text.ends_with('\n') {
                self.buf.push('\n');
            }
        }
    }

    fn report(&mut self, r: &Report) {
        self.emit(|| r.to_human(), || r.to_json());
    }

    pub fn flush_to(&mut self, w: &mut impl Write) {
        let _ = w.write_all(self.buf.as_bytes());
        self.buf.clear();
    }
}

pub type CliResult = Result<u8, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn formula(input: &FormulaInput) -> Result<Formula, String> {
    let text = match (&input.formula, &input.file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => read(path)?,
        _ => return Err("give a formula or --file".into()),
    };
    parse(text.trim()).map_err(|e| format!("cannot parse formula: {e}"))
}

fn verdict_code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

pub fn run(cmd: Command, out: &mut Output) -> CliResult {
    match cmd {
        Command::Parse { input, unicode } => {
            let f = formula(&input)?;
            let m = metrics(&f);
            out.emit(
                || if unicode { render_unicode(&f) } else { render(&f) },
                || {
                    json!({
                        "formula": render(&f),
                        "unicode": render_unicode(&f),
                        "desugared": render(&desugar(&f)),
                        "atoms": atoms(&f),
                        "size": m.size,
                        "modal_depth": m.modal_depth,
                        "announcement_depth": m.announcement_depth,
                    })
                },
            );
            Ok(0)
        }
        Command::Check { input, model, world } => {
            let f = formula(&input)?;
            let m = model_from_json(&read(&model)?).map_err(|e| e.to_string())?;
            match world {
                Some(name) => {
                    let w = m.frame.index_of(&name).map_err(|e| e.to_string())?;
                    let value = eval(&m, w, &f).map_err(|e| e.to_string())?;
                    out.emit(
                        || format!("{value} at {name}"),
                        || json!({"formula": render(&f), "world": name, "value": value}),
                    );
                    Ok(verdict_code(value))
                }
                None => {
                    let set = truth_set(&m, &f);
                    let names = |keep: bool| -> Vec<String> {
                        (0..m.len())
                            .filter(|&w| set.contains(w) == keep)
                            .map(|w| m.frame.name(w).to_string())
                            .collect()
                    };
                    let (yes, no) = (names(true), names(false));
                    out.emit(
                        || format!("true at {{{}}}\nfalse at {{{}}}", yes.join(","), no.join(",")),
                        || json!({"formula": render(&f), "true_at": yes, "false_at": no}),
                    );
                    Ok(verdict_code(no.is_empty()))
                }
            }
        }
        Command::Valid { input, bounds } => {
            let r = find_countermodel(&formula(&input)?, bounds.class, bounds.max_worlds).map_err(|e| e.to_string())?;
            out.report(&r);
            Ok(verdict_code(r.holds()))
        }
        Command::Sat { input, bounds } => {
            let r = sat_bounded(&formula(&input)?, bounds.class, bounds.max_worlds).map_err(|e| e.to_string())?;
            out.report(&r);
            Ok(verdict_code(r.holds()))
        }
        Command::Defines { input, bounds } => {
            let f = formula(&input)?;
            if f.has_announcement() {
                return Err("defines takes announcement-free formulas".into());
            }
            let r = defines_property(&f, bounds.class, bounds.max_worlds).map_err(|e| e.to_string())?;
            out.report(&r);
            Ok(verdict_code(r.holds()))
        }
        Command::Reduce { input, trace } => {
            let f = formula(&input)?;
            let r = reduce_announcements(&f);
            out.emit(
                || {
                    let mut s = render(&r.formula);
                    if trace {
                        s.push('\n');
                        s.push_str(&r.trace.to_text());
                    }
                    s
                },
                || {
                    let steps: Vec<Value> = r
                        .trace
                        .steps
                        .iter()
                        .map(|s| {
                            json!({
                                "axiom": s.axiom.name(),
                                "path": s.path,
                                "before": render(&s.before),
                                "after": render(&s.after),
                            })
                        })
                        .collect();
                    json!({"input": render(&f), "formula": render(&r.formula), "steps": steps})
                },
            );
            Ok(0)
        }
        Command::Translate { input } => {
            let f = formula(&input)?;
            let g = to_diamond(&f).map_err(|e| e.to_string())?;
            out.emit(|| render(&g), || json!({"input": render(&f), "formula": render(&g)}));
            Ok(0)
        }
        Command::Frame { op, path } => {
            let file: ModelFile =
                serde_json::from_str(&read(&path)?).map_err(|e| format!("malformed frame file: {e}"))?;
            let mut m = file.to_model().map_err(|e| e.to_string())?;
            m.frame = match op {
                FrameOp::Mirror => mirror_reduction(&m.frame),
                FrameOp::ReflClosure => reflexive_closure(&m.frame),
                FrameOp::DeadEnds => reflexivize_dead_ends(&m.frame),
                FrameOp::Serialize => m.frame.clone(),
            };
            let mut result = ModelFile::from_model(&m);
            if file.valuation.is_none() {
                result.valuation = None;
            }
            let text = serde_json::to_string(&result).expect("serializable");
            out.emit(|| text.clone(), || serde_json::from_str(&text).expect("valid json"));
            Ok(0)
        }
        Command::Distinguish {
            first,
            second,
            language,
            atoms,
            max_size,
        } => {
            let a = pointed_model_from_json(&read(&first)?).map_err(|e| e.to_string())?;
            let b = pointed_model_from_json(&read(&second)?).map_err(|e| e.to_string())?;
            if let Some(bad) = atoms.iter().find(|x| !conacc_core::syntax::is_atom_name(x)) {
                return Err(format!("`{bad}` is not an atom"));
            }
            let r = distinguishing_formula(&a, &b, language, &atoms, max_size).map_err(|e| e.to_string())?;
            out.report(&r);
            Ok(verdict_code(r.holds()))
        }
        Command::ProofCheck { path } => {
            let proof = Proof::from_json(&read(&path)?).map_err(|e| e.to_string())?;
            Ok(proof_report(out, None, &proof))
        }
        Command::Corpus { name, check } => corpus(out, name, check),
        Command::Conjectures { max_worlds, max_size } => {
            let reports = conjecture_sweep(max_worlds, max_size).map_err(|e| e.to_string())?;
            for r in &reports {
                out.report(r);
            }
            Ok(verdict_code(reports.iter().all(Report::holds)))
        }
        Command::PaperSuite { profile } => {
            let rows = run_suite(profile.into());
            for r in &rows {
                out.emit(
                    || format!("{}  {}  ({})", r.status(), r.key, first_line(&r.detail)),
                    || serde_json::to_value(r).expect("serializable"),
                );
            }
            let passed = suite_passed(&rows);
            let failed = rows.iter().filter(|r| r.status() == "FAIL").count();
            out.emit(
                || format!("{} fixtures, {failed} failed", rows.len()),
                || json!({"fixtures": rows.len(), "failed": failed, "passed": passed}),
            );
            Ok(verdict_code(passed))
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

fn proof_report(out: &mut Output, name: Option<&str>, proof: &Proof) -> u8 {
    let result = check_proof(proof);
    let conclusion = proof.conclusion().map(render);
    let errors: Vec<String> = match &result {
        Ok(()) => vec![],
        Err(errs) => errs.iter().map(|e| e.to_string()).collect(),
    };
    out.emit(
        || {
            let head = match name {
                Some(n) => format!("{n}: "),
                None => String::new(),
            };
            match &result {
                Ok(()) => format!(
                    "{head}OK ({} lines, {}) {}",
                    proof.lines.len(),
                    proof.system,
                    conclusion.clone().unwrap_or_default()
                ),
                Err(_) => format!("{head}FAILED\n  {}", errors.join("\n  ")),
            }
        },
        || {
            let mut v = json!({
                "ok": result.is_ok(),
                "system": proof.system.name(),
                "lines": proof.lines.len(),
                "conclusion": conclusion,
                "errors": errors,
            });
            if let Some(n) = name {
                v["name"] = json!(n);
            }
            v
        },
    );
    verdict_code(result.is_ok())
}

fn corpus(out: &mut Output, name: Option<String>, check: bool) -> CliResult {
    if let Some(n) = name {
        let e = corpus_entry(&n).ok_or_else(|| format!("no corpus entry `{n}`"))?;
        if check {
            return Ok(proof_report(out, Some(e.name), &e.proof));
        }
        out.emit(|| e.proof.to_text(), || e.proof.to_json());
        return Ok(0);
    }
    let mut code = 0;
    for e in builtin_corpus() {
        if check {
            code = code.max(proof_report(out, Some(e.name), &e.proof));
        } else {
            out.emit(
                || format!("{:<28} {:<6} {}", e.name, e.proof.system.name(), e.description),
                || json!({"name": e.name, "system": e.proof.system.name(), "description": e.description}),
            );
        }
    }
    Ok(code)
}
